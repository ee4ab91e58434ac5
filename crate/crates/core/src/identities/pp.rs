//! Potentials of (anti)symmetric double (p,p)-forms, Riemann candidates and
//! Weyl candidates, checked in reverse: random superpotential `T°`,
//! `T = bar Delta T°`, potentials from `T°`.

use super::{half, parity, rat, Ctx, Dense, IdentityCheck, Outcome, Suite};
use crate::error::Result;
use crate::jet::{Jet, Rational};
use crate::operators::{d, delta, lap_weighted};
use crate::tensor::RFoldTensor;

const S: Suite = Suite::PpSymmetric;

/// `(p, sign)` with `T° = sign tT°`.
const CASES: [(usize, i32); 3] = [(1, 1), (2, 1), (2, -1)];

pub(super) fn checks() -> Vec<IdentityCheck> {
    vec![
        IdentityCheck::new(
            "pp-potential-y",
            S,
            "Y_(2) = +-tY_(1) = (-1)^{p+1} Y with Y_{A,B b} = -(p+1) T°_{A[B;b]}",
            "random (anti)symmetric (p,p)-forms T°, p = 1, 2",
            3,
            potential_y,
        ),
        IdentityCheck::new(
            "pp-potential-z",
            S,
            "Z_(2) = +-tZ_(1) = (-1)^{p-1} Z, so Z_{A,B'} = (-1)^p T°_{A,cB'}^{;c}",
            "random (anti)symmetric (p,p)-forms T°, p = 1, 2",
            3,
            potential_z,
        ),
        IdentityCheck::new(
            "pp-potential-z-printed",
            S,
            "Z_{A,B'} = -T°_{A,cB'}^{;c} as the explicit Z of T = Y + Z",
            "random (anti)symmetric (p,p)-forms T°, p = 1, 2",
            3,
            potential_z_printed,
        ),
        IdentityCheck::new(
            "pp-antisymmetric-part",
            S,
            "A[Y_(2)] = 0 for T = tT with p odd and for T = -tT with p even",
            "random symmetric (1,1)- and antisymmetric (2,2)-forms T°",
            3,
            antisymmetric_part,
        ),
        IdentityCheck::new(
            "pp-reconstruction",
            S,
            "T = 1/2 [delta_(2)Y_(2) +- t(delta_(2)Y_(2)) + d_(2)Z_(2) +- t(d_(2)Z_(2))], \
             Y_(2) = d_(2)T°, Z_(2) = delta_(2)T°, T = bar Delta T°",
            "random (anti)symmetric (p,p)-forms T°, p = 1, 2",
            3,
            reconstruction,
        ),
        IdentityCheck::new(
            "pp-reconstruction-index",
            S,
            "T_{AB} = 1/2 (Y_{A,Bc}^{;c} +- Y_{B,Ac}^{;c} + p Z_{A,[b_1..b_{p-1};b_p]} \
             +- p Z_{B,[a_1..a_{p-1};a_p]})",
            "random (anti)symmetric (p,p)-forms T°, p = 1, 2",
            3,
            reconstruction_index,
        ),
        IdentityCheck::new(
            "pp-trace-coupling",
            S,
            "tr T° = 0 implies Z_(2) = -+tr(tY_(2)), i.e. Z_{A,B'} = -+Y_{cB'}^{c}_{A}",
            "random trace-free symmetric (1,1)-form and Weyl candidate T°",
            3,
            trace_coupling,
        ),
        IdentityCheck::new(
            "pp-double-trace",
            S,
            "tr T° = 0 implies tr(tr(Y_(2))) = 0",
            "random Weyl candidate T°",
            3,
            double_trace,
        ),
        IdentityCheck::new(
            "pp-traceless-reconstruction",
            S,
            "T = 1/2 (delta_(2)Y_(2) +- t(delta_(2)Y_(2)) - d_(1)tr(Y_(2)) -+ t(d_(1)tr(Y_(2)))) \
             for trace-free T°",
            "random trace-free symmetric (1,1)-form and Weyl candidate T°",
            3,
            traceless_reconstruction,
        ),
        IdentityCheck::new(
            "pp-traceless-reconstruction-index",
            S,
            "T_{AB} = 1/2 (Y_{A,Bc}^{;c} +- Y_{B,Ac}^{;c} - p Y^c_{[a_1..a_{p-1}|,cB|;a_p]} \
             -+ p Y^c_{[b_1..b_{p-1}|,cA|;b_p]})",
            "random trace-free symmetric (1,1)-form and Weyl candidate T°",
            3,
            traceless_reconstruction_index,
        ),
        IdentityCheck::new(
            "two-tensor-reconstruction",
            S,
            "T_ab = 1/2 (Y_{abc}^{;c} + Y_{bac}^{;c} + Z_{a;b} + Z_{b;a}) with Y_{[abc]} = 0",
            "random symmetric (1,1)-form T°",
            3,
            two_tensor,
        ),
        IdentityCheck::new(
            "two-tensor-traceless",
            S,
            "T_ab = 1/2 (Y_{abc}^{;c} + Y_{bac}^{;c} - Y^c_{ca;b} - Y^c_{cb;a}) with \
             Y_{[abc]} = 0, T trace-free",
            "random trace-free symmetric (1,1)-form T°",
            3,
            two_tensor_traceless,
        ),
        IdentityCheck::new(
            "riemann-potential-symmetries",
            S,
            "Y_{abcde} = -3 R°_{ab[cd;e]}, Z_{abc} = -R°_{abdc}^{;d} satisfy Y_{a[bcde]} = 0, \
             Z_{[abc]} = 0",
            "random Riemann candidate R°",
            3,
            riemann_symmetries,
        ),
        IdentityCheck::new(
            "riemann-potential-properties",
            S,
            "Y^e_{[bcd]e} = 0, Y_{[abcd]e} = 0, Y_{abcde} = 3Y_{[cde]ab} = 3Y_{a[cde]b}, \
             Y_{a[bc]de} = -Y_{a[de]bc}",
            "random Riemann candidate R°",
            3,
            riemann_properties,
        ),
        IdentityCheck::new(
            "riemann-reconstruction",
            S,
            "R_{abcd} = 1/2 (Y_{abcde}^{;e} + Y_{cdabe}^{;e} + 2Z_{ab[c;d]} + 2Z_{cd[a;b]}), \
             R = bar Delta R°, Y_{abcde} = -3R°_{ab[cd;e]}, Z_{abc} = R°_{abdc}^{;d}",
            "random Riemann candidate R°",
            3,
            riemann_reconstruction,
        ),
        IdentityCheck::new(
            "ricci-reconstruction",
            S,
            "R_ab = 1/2 (Y_{abe}^{;e} + Y_{bae}^{;e} + Z_{a;b} + Z_{b;a}) with \
             Y^c_{ab} = Y^{ec}_{eab} + Z_{ab}^c, Z_a = Z_{ea}^e, Y_{[abc]} = 0; these equal \
             the (1,1) potentials of tr R°",
            "random Riemann candidate R°",
            3,
            ricci_reconstruction,
        ),
        IdentityCheck::new(
            "traceless-ricci-reconstruction",
            S,
            "R^_ab = 1/2 (Y^_{abe}^{;e} + Y^_{bae}^{;e} - Y^c_{ca;b} - Y^c_{cb;a}) with \
             Y^^c_{ab} = Y^c_{ab} + (2/n) g_{c[a} Y^e_{b]e} - (2/n) g_{c[a} Z_{b]}",
            "random Riemann candidate R°",
            3,
            traceless_ricci_reconstruction,
        ),
        IdentityCheck::new(
            "ricci-relations-printed",
            S,
            "Y^c_{ab} = Y^{ec}_{eab} - Z_{ab}^c in the Ricci reconstruction and \
             Y^^c_{ab} = Y^c_{ab} + (2/n) g_{c[a} Y^e_{b]e} + (2/n) g_{c[a} Z_{b]} in the \
             traceless one",
            "random Riemann candidate R°",
            3,
            ricci_relations_printed,
        ),
        IdentityCheck::new(
            "weyl-potential-symmetries",
            S,
            "P_{abcde} = -3 C°_{ab[cd;e]} satisfies P_{a[bcde]} = 0, P^{ab}_{abc} = 0",
            "random Weyl candidate C°",
            3,
            weyl_symmetries,
        ),
        IdentityCheck::new(
            "weyl-potential-properties",
            S,
            "P^e_{[bcd]e} = 0, P_{[abcd]e} = 0, P^{ab}_{cde} = 3P_{[cde]}^{ab} = \
             3P^{[a}_{[cde]}^{b]}, P_{a[bc]de} = -P_{a[de]bc}",
            "random Weyl candidate C°",
            3,
            weyl_properties,
        ),
        IdentityCheck::new(
            "weyl-reconstruction",
            S,
            "C^{ab}_{cd} = 1/2 (P^{ab}_{cde}^{;e} + P_{cd}^{abe}_{;e} - 2P_e_{[c}^{abe}_{;d]} \
             - 2P^e^{[a}_{cde}^{;b]}), C = bar Delta C°",
            "random Weyl candidate C°",
            3,
            weyl_reconstruction,
        ),
        IdentityCheck::new(
            "weyl-reconstruction-alternatives",
            S,
            "C^{ab}_{cd} = P^{ab}_{cde}^{;e} + P^{e[ab]}_{cd;e} - P_e_{[c}^{abe}_{;d]} \
             - P^e^{[a}_{cde}^{;b]} = P^{ab}_{cde}^{;e} + P^{e[ab]}_{cd;e} \
             - P^e^{[a}_{cde}^{;b]} - 2P^{e[ab]}_{e[c;d]}",
            "random Weyl candidate C°",
            3,
            weyl_alternatives,
        ),
    ]
}

fn grad(cx: &Ctx, t: &RFoldTensor<Jet>) -> Result<Dense> {
    Dense::from_tensor(&cx.geom.nabla(t)?)
}

fn dense(t: &RFoldTensor<Jet>) -> Result<Dense> {
    Dense::from_tensor(t)
}

/// Slot map exchanging two leading groups of sizes `p` and `q`.
fn swap(p: usize, q: usize) -> Vec<usize> {
    (q..q + p).chain(0..q).collect()
}

fn signed(t: &RFoldTensor<Jet>, s: i64) -> RFoldTensor<Jet> {
    t.scale(&rat(s))
}

/// `a + sign tA` for a double form.
fn plus_transpose(a: &RFoldTensor<Jet>, sign: i32) -> Result<RFoldTensor<Jet>> {
    a.add(&signed(&a.transpose()?, sign as i64))
}

struct Potentials {
    sign: i32,
    t0: RFoldTensor<Jet>,
    t: RFoldTensor<Jet>,
    y2: RFoldTensor<Jet>,
    z2: RFoldTensor<Jet>,
}

impl Potentials {
    fn new(cx: &Ctx, t0: RFoldTensor<Jet>, sign: i32) -> Result<Potentials> {
        let g = cx.geom;
        Ok(Potentials {
            sign,
            t: lap_weighted(g, &t0)?,
            y2: d(g, &t0, 1)?,
            z2: delta(g, &t0, 1)?,
            t0,
        })
    }

    fn p(&self) -> usize {
        self.t0.shape().block_rank(0)
    }

    /// `Y = (-1)^{p+1} Y_(2)`.
    fn y(&self) -> RFoldTensor<Jet> {
        signed(&self.y2, parity(self.p() + 1))
    }

    /// `Z = (-1)^{p-1} Z_(2)`.
    fn z(&self) -> RFoldTensor<Jet> {
        signed(&self.z2, parity(self.p() + 1))
    }
}

fn symmetric_case(cx: &mut Ctx, p: usize, sign: i32) -> Result<Potentials> {
    let t0 = cx.rng.pp(p, sign)?;
    Potentials::new(cx, t0, sign)
}

/// Trace-free symmetric superpotentials: a (1,1)-form and, for n >= 4, a
/// Weyl candidate.
fn traceless_cases(cx: &mut Ctx) -> Result<Vec<Potentials>> {
    let m = cx.geom.metric();
    let h = cx.rng.traceless_symmetric(m)?;
    let mut out = vec![Potentials::new(cx, h, 1)?];
    if cx.n() >= 4 {
        let w = cx.rng.weyl_candidate(m)?;
        out.push(Potentials::new(cx, w, 1)?);
    }
    Ok(out)
}

fn each_case(cx: &mut Ctx, mut f: impl FnMut(&mut Ctx, &Potentials, String) -> Result<()>) -> Result<()> {
    let n = cx.n();
    for (p, sign) in CASES.into_iter().filter(|&(p, _)| 2 * p <= n) {
        for s in 0..cx.samples {
            let pot = symmetric_case(cx, p, sign)?;
            let label = format!("p={p} {} sample {s}", if sign > 0 { "sym" } else { "antisym" });
            f(cx, &pot, label)?;
        }
    }
    Ok(())
}

fn potential_y(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each_case(cx, |cx, pot, label| {
        let p = pot.p();
        let y1 = d(g, &pot.t0, 0)?;
        cx.compare(format!("transpose {label}"), &pot.y2, &signed(&y1.transpose()?, pot.sign as i64))?;
        let slots: Vec<usize> = (p..=2 * p).collect();
        let printed = grad(cx, &pot.t0)?
            .alternate(&slots)
            .scale(&rat(-(p as i64 + 1)));
        cx.compare_dense(format!("index {label}"), &dense(&pot.y())?, &printed)
    })?;
    Ok(Outcome::Checked)
}

fn potential_z(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each_case(cx, |cx, pot, label| {
        let p = pot.p();
        let z1 = delta(g, &pot.t0, 0)?;
        cx.compare(format!("transpose {label}"), &pot.z2, &signed(&z1.transpose()?, pot.sign as i64))?;
        let index = grad(cx, &pot.t0)?
            .contract(p, 2 * p, g.metric())?
            .scale(&rat(parity(p)));
        cx.compare_dense(format!("index {label}"), &dense(&pot.z())?, &index)
    })?;
    Ok(Outcome::Checked)
}

fn potential_z_printed(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each_case(cx, |cx, pot, label| {
        let printed = grad(cx, &pot.t0)?
            .contract(pot.p(), 2 * pot.p(), g.metric())?
            .scale(&rat(-1));
        cx.compare_dense(label, &dense(&pot.z())?, &printed)
    })?;
    Ok(Outcome::Checked)
}

fn antisymmetric_part(cx: &mut Ctx) -> Result<Outcome> {
    let n = cx.n();
    for (p, sign) in [(1, 1), (2, -1)].into_iter().filter(|&(p, _)| 2 * p < n) {
        for s in 0..cx.samples {
            let pot = symmetric_case(cx, p, sign)?;
            let a = pot.y2.antisymmetrize(0, 1)?;
            cx.record(format!("p={p} sample {s}"), &a);
        }
    }
    Ok(Outcome::Checked)
}

fn reconstruction(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each_case(cx, |cx, pot, label| {
        let a = plus_transpose(&delta(g, &pot.y2, 1)?, pot.sign)?;
        let b = plus_transpose(&d(g, &pot.z2, 1)?, pot.sign)?;
        let rhs = a.add(&b)?.scale(&half());
        cx.compare(label, &pot.t, &rhs)
    })?;
    Ok(Outcome::Checked)
}

/// `Y_{A,Bc}^{;c} + sign Y_{B,Ac}^{;c}` as a dense `(A,B)` array.
fn y_divergence(cx: &Ctx, y: &RFoldTensor<Jet>, p: usize, sign: i32) -> Result<Dense> {
    let div = grad(cx, y)?.contract(2 * p, 2 * p + 1, cx.geom.metric())?;
    div.add(&div.permuted(&swap(p, p)).scale(&rat(sign as i64)))
}

fn yz_index(cx: &Ctx, y: &RFoldTensor<Jet>, z: &RFoldTensor<Jet>, p: usize, sign: i32) -> Result<Dense> {
    let t1 = y_divergence(cx, y, p, sign)?;
    let slots: Vec<usize> = (p..2 * p).collect();
    let zd = grad(cx, z)?.alternate(&slots);
    let t2 = zd.add(&zd.permuted(&swap(p, p)).scale(&rat(sign as i64)))?;
    Ok(t1.add(&t2.scale(&rat(p as i64)))?.scale(&half()))
}

fn y_traceless_index(cx: &Ctx, y: &RFoldTensor<Jet>, p: usize, sign: i32) -> Result<Dense> {
    let t1 = y_divergence(cx, y, p, sign)?;
    // (A', B, e) from Y_{cA', dB; e} g^{cd}
    let w = grad(cx, y)?.contract(0, p, cx.geom.metric())?;
    let perm: Vec<usize> = (0..p - 1).chain(p..2 * p).chain([p - 1]).collect();
    let slots: Vec<usize> = (0..p).collect();
    let v = w.permuted(&perm).alternate(&slots);
    let t2 = v.add(&v.permuted(&swap(p, p)).scale(&rat(sign as i64)))?;
    Ok(t1.sub(&t2.scale(&rat(p as i64)))?.scale(&half()))
}

fn reconstruction_index(cx: &mut Ctx) -> Result<Outcome> {
    each_case(cx, |cx, pot, label| {
        let rhs = yz_index(cx, &pot.y(), &pot.z(), pot.p(), pot.sign)?;
        cx.compare_dense(label, &dense(&pot.t)?, &rhs)
    })?;
    Ok(Outcome::Checked)
}

fn trace_coupling(cx: &mut Ctx) -> Result<Outcome> {
    let m = cx.geom.metric();
    for pot in traceless_cases(cx)? {
        let p = pot.p();
        let block = m.trace(&pot.y2.transpose()?)?.scale(&rat(-pot.sign as i64));
        cx.compare(format!("p={p} block"), &pot.z2, &block)?;
        let perm: Vec<usize> = (p..2 * p - 1).chain(0..p).collect();
        let index = dense(&pot.y())?
            .contract(0, p, m)?
            .permuted(&perm)
            .scale(&rat(-pot.sign as i64));
        cx.compare_dense(format!("p={p} index"), &dense(&pot.z())?, &index)?;
    }
    Ok(Outcome::Checked)
}

fn double_trace(cx: &mut Ctx) -> Result<Outcome> {
    let m = cx.geom.metric();
    for pot in traceless_cases(cx)?.into_iter().filter(|p| p.p() >= 2) {
        let tt = m.trace(&m.trace(&pot.y2)?)?;
        cx.record(format!("p={}", pot.p()), &tt);
    }
    Ok(Outcome::Checked)
}

fn traceless_reconstruction(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    for pot in traceless_cases(cx)? {
        let a = plus_transpose(&delta(g, &pot.y2, 1)?, pot.sign)?;
        let b = plus_transpose(&d(g, &g.metric().trace(&pot.y2)?, 0)?, pot.sign)?;
        let rhs = a.sub(&b)?.scale(&half());
        cx.compare(format!("p={}", pot.p()), &pot.t, &rhs)?;
    }
    Ok(Outcome::Checked)
}

fn traceless_reconstruction_index(cx: &mut Ctx) -> Result<Outcome> {
    for pot in traceless_cases(cx)? {
        let rhs = y_traceless_index(cx, &pot.y(), pot.p(), pot.sign)?;
        cx.compare_dense(format!("p={}", pot.p()), &dense(&pot.t)?, &rhs)?;
    }
    Ok(Outcome::Checked)
}

fn two_tensor(cx: &mut Ctx) -> Result<Outcome> {
    for s in 0..cx.samples {
        let pot = symmetric_case(cx, 1, 1)?;
        let rhs = yz_index(cx, &pot.y(), &pot.z(), 1, 1)?;
        cx.compare_dense(format!("sample {s}"), &dense(&pot.t)?, &rhs)?;
        cx.record_dense(format!("Y_[abc] sample {s}"), &dense(&pot.y())?.alternate(&[0, 1, 2]));
    }
    Ok(Outcome::Checked)
}

fn two_tensor_traceless(cx: &mut Ctx) -> Result<Outcome> {
    let m = cx.geom.metric();
    for s in 0..cx.samples {
        let t0 = cx.rng.traceless_symmetric(m)?;
        let pot = Potentials::new(cx, t0, 1)?;
        let rhs = y_traceless_index(cx, &pot.y(), 1, 1)?;
        cx.compare_dense(format!("sample {s}"), &dense(&pot.t)?, &rhs)?;
        cx.record_dense(format!("Y_[abc] sample {s}"), &dense(&pot.y())?.alternate(&[0, 1, 2]));
    }
    Ok(Outcome::Checked)
}

/// Index-form potentials of a Riemann (or Weyl) candidate superpotential:
/// `Y_{abcde} = -3 R°_{ab[cd;e]}`, `Z_{abc} = R°_{abdc}^{;d}`.
struct CandidatePotentials {
    target: Dense,
    y: Dense,
    z: Dense,
    grad_y: Dense,
    grad_z: Dense,
}

fn candidate_potentials(cx: &Ctx, r0: &RFoldTensor<Jet>) -> Result<CandidatePotentials> {
    let g = cx.geom;
    let gr = grad(cx, r0)?;
    let y = gr.alternate(&[2, 3, 4]).scale(&rat(-3));
    let z = gr.contract(2, 4, g.metric())?;
    let y_t = RFoldTensor::from_indices(
        crate::tensor::BlockShape::new(cx.n(), &[2, 3])?,
        Jet::zero(cx.n()),
        |i| y.at(i).clone(),
    );
    let z_t = RFoldTensor::from_indices(
        crate::tensor::BlockShape::new(cx.n(), &[2, 1])?,
        Jet::zero(cx.n()),
        |i| z.at(i).clone(),
    );
    Ok(CandidatePotentials {
        target: dense(&lap_weighted(g, r0)?)?,
        grad_y: grad(cx, &y_t)?,
        grad_z: grad(cx, &z_t)?,
        y,
        z,
    })
}

fn riemann_case(cx: &mut Ctx) -> Result<CandidatePotentials> {
    let r0 = cx.rng.riemann_candidate()?;
    candidate_potentials(cx, &r0)
}

fn weyl_case(cx: &mut Ctx) -> Result<CandidatePotentials> {
    let c0 = cx.rng.weyl_candidate(cx.geom.metric())?;
    candidate_potentials(cx, &c0)
}

fn riemann_symmetries(cx: &mut Ctx) -> Result<Outcome> {
    for s in 0..cx.samples {
        let pot = riemann_case(cx)?;
        cx.record_dense(format!("Y_a[bcde] sample {s}"), &pot.y.alternate(&[1, 2, 3, 4]));
        cx.record_dense(format!("Z_[abc] sample {s}"), &pot.z.alternate(&[0, 1, 2]));
    }
    Ok(Outcome::Checked)
}

/// The consequences of `Y_{a[bcde]} = 0` shared by the Riemann and Weyl
/// potentials; `pair_alt` also alternates `[ab]` in the third relation.
fn five_slot_properties(cx: &mut Ctx, y: &Dense, label: &str, pair_alt: bool) -> Result<()> {
    let m = cx.geom.metric();
    cx.record_dense(
        format!("trace alternation {label}"),
        &y.contract(0, 4, m)?.alternate(&[0, 1, 2]),
    );
    cx.record_dense(format!("Y_[abcd]e {label}"), &y.alternate(&[0, 1, 2, 3]));
    let three = rat(3);
    let first = y.alternate(&[0, 1, 2]).permuted(&[2, 3, 4, 0, 1]).scale(&three);
    cx.compare_dense(format!("Y = 3Y_[cde]ab {label}"), y, &first)?;
    let mut second = y.alternate(&[1, 2, 3]).permuted(&[0, 2, 3, 4, 1]);
    if pair_alt {
        second = second.alternate(&[0, 1]);
    }
    cx.compare_dense(format!("Y = 3Y_a[cde]b {label}"), y, &second.scale(&three))?;
    let l = y.alternate(&[1, 2]);
    let r = l.permuted(&[0, 3, 4, 1, 2]).scale(&rat(-1));
    cx.compare_dense(format!("Y_a[bc]de = -Y_a[de]bc {label}"), &l, &r)
}

fn riemann_properties(cx: &mut Ctx) -> Result<Outcome> {
    for s in 0..cx.samples {
        let pot = riemann_case(cx)?;
        five_slot_properties(cx, &pot.y, &format!("sample {s}"), false)?;
    }
    Ok(Outcome::Checked)
}

fn riemann_reconstruction(cx: &mut Ctx) -> Result<Outcome> {
    let m = cx.geom.metric();
    for s in 0..cx.samples {
        let pot = riemann_case(cx)?;
        let ydiv = pot.grad_y.contract(4, 5, m)?;
        let zd = pot.grad_z.alternate(&[2, 3]);
        let rhs = ydiv
            .add(&ydiv.permuted(&[2, 3, 0, 1]))?
            .add(&zd.scale(&rat(2)))?
            .add(&zd.permuted(&[2, 3, 0, 1]).scale(&rat(2)))?
            .scale(&half());
        cx.compare_dense(format!("sample {s}"), &pot.target, &rhs)?;
    }
    Ok(Outcome::Checked)
}

/// Ricci-level potentials `Y_{c,ab} = g^{ef} Y_{ecfab} + z_sign Z_{abc}` and
/// `Z_a = g^{ef} Z_{eaf}` as double forms.
fn ricci_potentials(cx: &Ctx, pot: &CandidatePotentials, z_sign: i64) -> Result<(Dense, Dense)> {
    let m = cx.geom.metric();
    let y = pot
        .y
        .contract(0, 2, m)?
        .add(&pot.z.permuted(&[1, 2, 0]).scale(&rat(z_sign)))?;
    let z = pot.z.contract(0, 2, m)?;
    Ok((y, z))
}

fn dense_to_tensor(cx: &Ctx, d: &Dense, ranks: &[usize]) -> Result<RFoldTensor<Jet>> {
    let shape = crate::tensor::BlockShape::new(cx.n(), ranks)?;
    Ok(RFoldTensor::from_indices(shape, Jet::zero(cx.n()), |i| {
        d.at(i).clone()
    }))
}

/// Residuals of the Ricci and traceless Ricci reconstructions for one
/// sample, with `z_sign` in the Ricci relation and `hat_sign` on the `Z`
/// term of the traceless relation.
struct RicciSample {
    ricci: (Dense, Dense),
    traceless: (Dense, Dense),
    y: Dense,
    yhat: Dense,
}

fn ricci_sample(cx: &Ctx, pot: &CandidatePotentials, z_sign: i64, hat_sign: i64) -> Result<RicciSample> {
    let m = cx.geom.metric();
    let n = cx.n();
    let gl = m.g();
    let (y, z) = ricci_potentials(cx, pot, z_sign)?;
    let ric = m.trace(&dense_to_tensor(cx, &pot.target, &[2, 2])?)?;
    let yt = dense_to_tensor(cx, &y, &[1, 2])?;
    let zt = dense_to_tensor(cx, &z, &[1, 0])?;
    let ricci = (dense(&ric)?, yz_index(cx, &yt, &zt, 1, 1)?);
    let v = y.contract(0, 2, m)?.add(&z.scale(&rat(hat_sign)))?;
    let inv_n = Rational::new(1, n as i64);
    let yhat = Dense::from_fn(n, 3, |i| {
        let (c, a, b) = (i[0], i[1], i[2]);
        let corr = &(&gl[c][a] * v.at(&[b])) - &(&gl[c][b] * v.at(&[a]));
        y.at(i) + &corr.scale(&inv_n)
    });
    let scal = m.trace(&ric)?.data()[0].clone();
    let hat = ric.sub(&m.metric_tensor().times(&scal).scale(&inv_n))?;
    let yht = dense_to_tensor(cx, &yhat, &[1, 2])?;
    let traceless = (dense(&hat)?, y_traceless_index(cx, &yht, 1, 1)?);
    Ok(RicciSample {
        ricci,
        traceless,
        y,
        yhat,
    })
}

fn ricci_reconstruction(cx: &mut Ctx) -> Result<Outcome> {
    let m = cx.geom.metric();
    for s in 0..cx.samples {
        let r0 = cx.rng.riemann_candidate()?;
        let pot = candidate_potentials(cx, &r0)?;
        let rs = ricci_sample(cx, &pot, 1, -1)?;
        cx.compare_dense(format!("sample {s}"), &rs.ricci.0, &rs.ricci.1)?;
        cx.record_dense(format!("Y_[abc] sample {s}"), &rs.y.alternate(&[0, 1, 2]));
        // the same potentials straight from the (1,1) superpotential tr R°
        let g0 = grad(cx, &m.trace(&r0)?)?;
        let y_direct = g0.alternate(&[1, 2]).scale(&rat(-2));
        let z_direct = g0.contract(1, 2, m)?.scale(&rat(-1));
        let (y, z) = ricci_potentials(cx, &pot, 1)?;
        cx.compare_dense(format!("Y from tr R° sample {s}"), &y, &y_direct)?;
        cx.compare_dense(format!("Z from tr R° sample {s}"), &z, &z_direct)?;
    }
    Ok(Outcome::Checked)
}

fn traceless_ricci_reconstruction(cx: &mut Ctx) -> Result<Outcome> {
    for s in 0..cx.samples {
        let pot = riemann_case(cx)?;
        let rs = ricci_sample(cx, &pot, 1, -1)?;
        cx.compare_dense(format!("sample {s}"), &rs.traceless.0, &rs.traceless.1)?;
        cx.record_dense(format!("Y^_[abc] sample {s}"), &rs.yhat.alternate(&[0, 1, 2]));
    }
    Ok(Outcome::Checked)
}

fn ricci_relations_printed(cx: &mut Ctx) -> Result<Outcome> {
    for s in 0..cx.samples {
        let pot = riemann_case(cx)?;
        let rs = ricci_sample(cx, &pot, -1, 1)?;
        cx.compare_dense(format!("Ricci sample {s}"), &rs.ricci.0, &rs.ricci.1)?;
        cx.compare_dense(format!("traceless sample {s}"), &rs.traceless.0, &rs.traceless.1)?;
    }
    Ok(Outcome::Checked)
}

fn weyl_symmetries(cx: &mut Ctx) -> Result<Outcome> {
    let m = cx.geom.metric();
    for s in 0..cx.samples {
        let pot = weyl_case(cx)?;
        cx.record_dense(format!("P_a[bcde] sample {s}"), &pot.y.alternate(&[1, 2, 3, 4]));
        let tt = pot.y.contract(0, 2, m)?.contract(0, 1, m)?;
        cx.record_dense(format!("P^ab_abc sample {s}"), &tt);
    }
    Ok(Outcome::Checked)
}

fn weyl_properties(cx: &mut Ctx) -> Result<Outcome> {
    for s in 0..cx.samples {
        let pot = weyl_case(cx)?;
        five_slot_properties(cx, &pot.y, &format!("sample {s}"), true)?;
    }
    Ok(Outcome::Checked)
}

/// The terms of the three Weyl reconstruction forms, all indices lowered,
/// as `(abcd)` arrays.
struct WeylTerms {
    /// `P_{abcde}^{;e}`
    div: Dense,
    /// `P_{cdabe}^{;e}`
    div_swapped: Dense,
    /// `P^e_{[c|ab|e;d]}`
    x: Dense,
    /// `P^e_{[a|cde|;b]}`
    w: Dense,
    /// `P^e_{[ab]cd;e}`
    u: Dense,
    /// `P^e_{[ab]|e|[c;d]}`
    v: Dense,
}

fn weyl_terms(cx: &Ctx, pot: &CandidatePotentials) -> Result<WeylTerms> {
    let m = cx.geom.metric();
    let gp = &pot.grad_y;
    let div = gp.contract(4, 5, m)?;
    let div_swapped = div.permuted(&[2, 3, 0, 1]);
    // g^{ef} P_{e c a b f; d} over (c, a, b, d) -> (a, b, c, d)
    let x = gp
        .contract(0, 4, m)?
        .permuted(&[2, 0, 1, 3])
        .alternate(&[2, 3]);
    // g^{ef} P_{f a c d e; b} over (a, c, d, b) -> (a, b, c, d)
    let w = gp
        .contract(0, 4, m)?
        .permuted(&[0, 2, 3, 1])
        .alternate(&[0, 1]);
    // g^{ef} P_{e a b c d; f} over (a, b, c, d)
    let u = gp.contract(0, 5, m)?.alternate(&[0, 1]);
    // g^{ef} P_{e a b f c; d} over (a, b, c, d)
    let v = gp.contract(0, 3, m)?.alternate(&[0, 1]).alternate(&[2, 3]);
    Ok(WeylTerms {
        div,
        div_swapped,
        x,
        w,
        u,
        v,
    })
}

impl WeylTerms {
    fn form(&self) -> Result<Dense> {
        let two = rat(2);
        self.div
            .add(&self.div_swapped)?
            .sub(&self.x.scale(&two))?
            .sub(&self.w.scale(&two))
            .map(|s| s.scale(&half()))
    }

    fn form_prime(&self) -> Result<Dense> {
        self.div.add(&self.u)?.sub(&self.x)?.sub(&self.w)
    }

    fn form_double_prime(&self) -> Result<Dense> {
        self.div
            .add(&self.u)?
            .sub(&self.w)?
            .sub(&self.v.scale(&rat(2)))
    }
}

fn weyl_reconstruction(cx: &mut Ctx) -> Result<Outcome> {
    for s in 0..cx.samples {
        let pot = weyl_case(cx)?;
        let terms = weyl_terms(cx, &pot)?;
        cx.compare_dense(format!("sample {s}"), &pot.target, &terms.form()?)?;
    }
    Ok(Outcome::Checked)
}

fn weyl_alternatives(cx: &mut Ctx) -> Result<Outcome> {
    for s in 0..cx.samples {
        let pot = weyl_case(cx)?;
        let terms = weyl_terms(cx, &pot)?;
        let (f0, f1, f2) = (terms.form()?, terms.form_prime()?, terms.form_double_prime()?);
        cx.compare_dense(format!("primed sample {s}"), &pot.target, &f1)?;
        cx.compare_dense(format!("double primed sample {s}"), &pot.target, &f2)?;
        cx.compare_dense(format!("first vs primed sample {s}"), &f0, &f1)?;
        cx.compare_dense(format!("first vs double primed sample {s}"), &f0, &f2)?;
    }
    Ok(Outcome::Checked)
}
