//! Pair potentials of (anti)symmetric (p,p)-forms, the Riemann-candidate
//! pair `(Y, Z)` and the single Weyl potential `P`, with every index-form
//! reconstruction and symmetry property evaluated mode by mode.

use rayon::prelude::*;

use super::dense::{
    canonical_tuples, compose, identity_terms, relative, relative_size, CArray, Terms,
};
use super::{
    fourier_d_block, fourier_delta_block, solve_superpotential, FourierTensorField,
    WaveVector, C, TOLERANCE,
};
use crate::error::{Error, Result};
use crate::tensor::{project_riemann_candidate, project_weyl_candidate, BlockShape, MetricAlgebra, RFoldTensor};

/// A named relative residual; every one must stay within [`TOLERANCE`].
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub name: String,
    pub value: f64,
}

impl Residual {
    fn new(name: impl Into<String>, value: f64) -> Residual {
        Residual {
            name: name.into(),
            value,
        }
    }
}

fn worst(rs: &[Residual]) -> f64 {
    rs.iter().map(|r| r.value).fold(0.0, f64::max)
}

fn euclid(n: usize) -> MetricAlgebra<C> {
    MetricAlgebra::euclidean(n, C::new(1.0, 0.0))
}

fn parity(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Slot map exchanging two leading groups of sizes `p` and `q`.
fn swap(p: usize, q: usize) -> Vec<usize> {
    (q..q + p).chain(0..q).collect()
}

fn require_pp(f: &FourierTensorField) -> Result<usize> {
    let r = f.shape().ranks();
    if r.len() != 2 || r[0] != r[1] {
        return Err(Error::ShapeMismatch(format!(
            "expected a double (p,p)-form, got {}",
            f.shape()
        )));
    }
    Ok(r[0])
}

fn require_22(f: &FourierTensorField) -> Result<()> {
    if f.shape().ranks() != [2, 2] {
        return Err(Error::ShapeMismatch(format!(
            "expected a double (2,2)-form, got {}",
            f.shape()
        )));
    }
    Ok(())
}

/// Projects every mode and rejects inputs the projection changes.
fn project(
    f: &FourierTensorField,
    what: &str,
    op: impl Fn(&RFoldTensor<C>) -> Result<RFoldTensor<C>> + Sync,
) -> Result<FourierTensorField> {
    let p = f.map_modes(f.shape().clone(), |_, t| op(t))?;
    let change = f.residual(&p)?;
    if change > TOLERANCE {
        return Err(Error::InputContract(format!(
            "projection onto {what} changed the field by {change:e}"
        )));
    }
    Ok(p)
}

/// Maximum of each named residual over all modes, in parallel.
fn mode_residuals(
    f: &FourierTensorField,
    names: &[&str],
    op: impl Fn(&WaveVector, &RFoldTensor<C>) -> Result<Vec<f64>> + Sync,
) -> Result<Vec<Residual>> {
    let per_mode: Vec<Vec<f64>> = f
        .modes()
        .par_iter()
        .map(|(k, t)| op(k, t))
        .collect::<Result<_>>()?;
    Ok(names
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let v = per_mode.iter().map(|r| r[j]).fold(0.0, f64::max);
            Residual::new(*name, v)
        })
        .collect())
}

/// `F_k` off the constant mode, zero on it: what the potentials rebuild.
fn target(k: &WaveVector, t: &RFoldTensor<C>) -> CArray {
    if k.is_zero() {
        CArray::zeros(t.dim(), t.shape().total_rank())
    } else {
        CArray::from_tensor(t)
    }
}

fn transpose_field(f: &FourierTensorField) -> Result<FourierTensorField> {
    let r = f.shape().ranks();
    let empty = BlockShape::new(f.dim(), &[r[1], r[0]])?;
    f.map_modes(empty, |_, t| t.transpose())
}

fn trace_field(f: &FourierTensorField) -> Result<FourierTensorField> {
    let r = f.shape().ranks();
    let m = euclid(f.dim());
    let empty = BlockShape::new(f.dim(), &[r[0].saturating_sub(1), r[1].saturating_sub(1)])?;
    f.map_modes(empty, |_, t| m.trace(t))
}

/// `A + sign tA`.
fn plus_transpose(a: &FourierTensorField, sign: i32) -> Result<FourierTensorField> {
    a.add(&transpose_field(a)?.scale(sign as f64))
}

/// Potentials of an (anti)symmetric double (p,p)-form `F = sign tF`.
#[derive(Clone, Debug)]
pub struct PpDecomposition {
    pub p: usize,
    pub sign: i32,
    pub superpotential: FourierTensorField,
    pub harmonic: FourierTensorField,
    /// `Y_(2) = d_(2) T°`.
    pub y2: FourierTensorField,
    /// `Z_(2) = delta_(2) T°`.
    pub z2: FourierTensorField,
    /// Whether `tr F` vanished, enabling the single-potential form.
    pub traceless: bool,
    pub residuals: Vec<Residual>,
}

impl PpDecomposition {
    pub fn worst(&self) -> f64 {
        worst(&self.residuals)
    }

    /// `Y = (-1)^{p+1} Y_(2)`.
    pub fn y(&self) -> FourierTensorField {
        self.y2.scale(parity(self.p + 1))
    }

    /// `Z = (-1)^{p-1} Z_(2)`.
    pub fn z(&self) -> FourierTensorField {
        self.z2.scale(parity(self.p + 1))
    }
}

/// `1/2 (Y_{A,Bc}^{;c} + sign Y_{B,Ac}^{;c}) + p/2 (Z_{A,[B';b]} + sign swap)`
/// on one mode.
fn yz_index(y: &CArray, z: &CArray, sym: &[C], p: usize, sign: f64) -> CArray {
    let div = y.div(sym);
    let t1 = div.combo(&[(1.0, &(0..2 * p).collect::<Vec<_>>()), (sign, &swap(p, p))]);
    let slots: Vec<usize> = (p..2 * p).collect();
    let zd = z.grad(sym).alternate(&slots);
    let t2 = zd.combo(&[(1.0, &(0..2 * p).collect::<Vec<_>>()), (sign, &swap(p, p))]);
    t1.add(&t2.scale(p as f64)).scale(0.5)
}

/// Pair potentials `Y_(2) = d_(2) T°`, `Z_(2) = delta_(2) T°` of a double
/// (p,p)-form with `F = sign tF`.
pub fn decompose_pp_symmetric(f: &FourierTensorField, sign: i32) -> Result<PpDecomposition> {
    let p = require_pp(f)?;
    if sign != 1 && sign != -1 {
        return Err(Error::Unsupported(format!("transpose sign {sign}")));
    }
    let f = project(f, "(anti)symmetric double forms", |t| {
        Ok(t.add(&t.transpose()?.map(|z| z * sign as f64))?.map(|z| z * 0.5))
    })?;
    let sp = solve_superpotential(&f)?;
    let (y1, y2) = (fourier_d_block(&sp.t0, 0)?, fourier_d_block(&sp.t0, 1)?);
    let (z1, z2) = (fourier_delta_block(&sp.t0, 0)?, fourier_delta_block(&sp.t0, 1)?);
    let s = sign as f64;
    let mut rs = Vec::new();

    let a = plus_transpose(&fourier_delta_block(&y2, 1)?, sign)?;
    let b = if p > 0 {
        plus_transpose(&fourier_d_block(&z2, 1)?, sign)?
    } else {
        a.scale(0.0)
    };
    let rebuilt = a.add(&b)?.scale(0.5).add(&sp.harmonic)?;
    rs.push(Residual::new("reconstruction", f.residual(&rebuilt)?));
    rs.push(Residual::new(
        "Y_(2) = sign tY_(1)",
        y2.residual(&transpose_field(&y1)?.scale(s))?,
    ));
    if p > 0 {
        rs.push(Residual::new(
            "Z_(2) = sign tZ_(1)",
            z2.residual(&transpose_field(&z1)?.scale(s))?,
        ));
        let (ys, zs) = (parity(p + 1), parity(p + 1));
        let index = mode_residuals(&f, &["index reconstruction"], |k, t| {
            let sym = k.symbol();
            let y = CArray::from_tensor(&y2.amplitude(k)).scale(ys);
            let z = CArray::from_tensor(&z2.amplitude(k)).scale(zs);
            Ok(vec![relative(&target(k, t), &yz_index(&y, &z, &sym, p, s))])
        })?;
        rs.extend(index);
    }
    if p > 0 && ((sign > 0) == (p % 2 == 1)) {
        let a = y2.map_modes(y2.shape().clone(), |_, t| t.antisymmetrize(0, 1))?;
        rs.push(Residual::new(
            "completely antisymmetric part of Y_(2)",
            a.relative_size(&y2),
        ));
    }

    let traceless = p > 0 && trace_field(&f)?.relative_size(&f) <= TOLERANCE;
    if traceless {
        let tr_y = trace_field(&y2)?;
        let b = plus_transpose(&fourier_d_block(&tr_y, 0)?, sign)?;
        let rebuilt = a.sub(&b)?.scale(0.5).add(&sp.harmonic)?;
        rs.push(Residual::new("traceless reconstruction", f.residual(&rebuilt)?));
        let coupling = trace_field(&transpose_field(&y2)?)?.scale(-s);
        rs.push(Residual::new("Z_(2) = -sign tr(tY_(2))", z2.residual(&coupling)?));
        if p >= 2 {
            rs.push(Residual::new(
                "double trace of Y_(2)",
                trace_field(&trace_field(&y2)?)?.relative_size(&y2),
            ));
        }
    }
    Ok(PpDecomposition {
        p,
        sign,
        superpotential: sp.t0,
        harmonic: sp.harmonic,
        y2,
        z2,
        traceless,
        residuals: rs,
    })
}

fn terms(list: &[(f64, [usize; 5])]) -> Terms {
    list.iter().map(|(c, p)| (*c, p.to_vec())).collect()
}

/// `Y_{a[bcde]}` for `Y` antisymmetric in its last three slots.
fn bianchi_terms() -> Terms {
    terms(&[
        (0.25, [0, 1, 2, 3, 4]),
        (-0.25, [0, 2, 1, 3, 4]),
        (0.25, [0, 3, 1, 2, 4]),
        (-0.25, [0, 4, 1, 2, 3]),
    ])
}

/// Relabeling combinations behind the properties of a five-slot potential
/// `Y_{ab,cde}` with `Y_{a[bcde]} = 0`, each with the index tuples its
/// structural antisymmetries leave independent. The combinations use only
/// the block antisymmetry of `Y` in `(ab)` and `(cde)`.
pub(crate) struct FiveSlotPlan {
    bianchi: (Terms, Vec<Vec<usize>>),
    front: (Terms, Vec<Vec<usize>>),
    first: Terms,
    second: Terms,
    lhs_tuples: Vec<Vec<usize>>,
    pair: (Terms, Terms, Vec<Vec<usize>>),
}

impl FiveSlotPlan {
    pub(crate) fn new(n: usize, pair_alt: bool) -> FiveSlotPlan {
        let sixth = 1.0 / 6.0;
        // Y_{[abcd]e}
        let front = terms(&[
            (sixth, [0, 1, 2, 3, 4]),
            (-sixth, [0, 2, 1, 3, 4]),
            (sixth, [0, 3, 1, 2, 4]),
            (sixth, [1, 2, 0, 3, 4]),
            (-sixth, [1, 3, 0, 2, 4]),
            (sixth, [2, 3, 0, 1, 4]),
        ]);
        // 3 Y_{[cde]ab}
        let first = compose(
            &terms(&[(1.0, [2, 3, 4, 0, 1])]),
            &terms(&[(1.0, [0, 1, 2, 3, 4]), (1.0, [1, 2, 0, 3, 4]), (1.0, [2, 0, 1, 3, 4])]),
        );
        // 3 Y_{a[cde]b}, alternated over (ab) when asked
        let mut second = compose(
            &terms(&[(1.0, [0, 2, 3, 4, 1])]),
            &terms(&[(1.0, [0, 1, 2, 3, 4]), (1.0, [0, 2, 3, 1, 4]), (1.0, [0, 3, 1, 2, 4])]),
        );
        if pair_alt {
            second = compose(
                &terms(&[(0.5, [0, 1, 2, 3, 4]), (-0.5, [1, 0, 2, 3, 4])]),
                &second,
            );
        }
        // Y_{a[bc]de} and -Y_{a[de]bc}
        let l = terms(&[(0.5, [0, 1, 2, 3, 4]), (-0.5, [0, 2, 1, 3, 4])]);
        let r = compose(&terms(&[(-1.0, [0, 3, 4, 1, 2])]), &l);
        FiveSlotPlan {
            bianchi: (bianchi_terms(), canonical_tuples(n, &[1, 4])),
            front: (front, canonical_tuples(n, &[4, 1])),
            first,
            second,
            lhs_tuples: canonical_tuples(n, &[1, 1, 3]),
            pair: (l, r, canonical_tuples(n, &[1, 2, 2])),
        }
    }

    /// Relative residuals: `Y_{a[bcde]}`, `Y^e_{[bcd]e}`, `Y_{[abcd]e}`,
    /// `Y = 3Y_{[cde]ab}` with `Y = 3Y_{a[cde]b}`, and
    /// `Y_{a[bc]de} = -Y_{a[de]bc}`.
    pub(crate) fn residuals(&self, y: &CArray) -> [f64; 5] {
        let scale = y.max_norm();
        let size = |v: &[C]| max_abs(v) / if scale == 0.0 { 1.0 } else { scale };
        let third = 1.0 / 3.0;
        let tr_alt = y
            .contract(0, 4)
            .combo(&[(third, &[0, 1, 2]), (third, &[1, 2, 0]), (third, &[2, 0, 1])]);
        let lhs = y.combo_at(&identity_terms(5), &self.lhs_tuples);
        let first = y.combo_at(&self.first, &self.lhs_tuples);
        let second = y.combo_at(&self.second, &self.lhs_tuples);
        let (l, r, pair_tuples) = &self.pair;
        [
            size(&y.combo_at(&self.bianchi.0, &self.bianchi.1)),
            relative_size(&tr_alt, y),
            size(&y.combo_at(&self.front.0, &self.front.1)),
            relative_vec(&lhs, &first).max(relative_vec(&lhs, &second)),
            relative_vec(&y.combo_at(l, pair_tuples), &y.combo_at(r, pair_tuples)),
        ]
    }
}

fn max_abs(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max).sqrt()
}

fn relative_vec(a: &[C], b: &[C]) -> f64 {
    let scale = max_abs(a).max(max_abs(b));
    if scale == 0.0 {
        return 0.0;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .fold(0.0, f64::max)
        .sqrt()
        / scale
}

/// The single potential `P = -d_(2) C°` of a Weyl-candidate field.
#[derive(Clone, Debug)]
pub struct WeylPotential {
    pub superpotential: FourierTensorField,
    pub harmonic: FourierTensorField,
    /// `P_{ab,cde} = -3 C°_{ab[cd;e]}`, a double (2,3)-form.
    pub p: FourierTensorField,
    pub residuals: Vec<Residual>,
}

impl WeylPotential {
    pub fn worst(&self) -> f64 {
        worst(&self.residuals)
    }
}

/// The three index forms of the Weyl reconstruction on one mode.
struct WeylForms {
    form: CArray,
    prime: CArray,
    double_prime: CArray,
}

fn weyl_forms(p: &CArray, sym: &[C]) -> WeylForms {
    let n = p.dim();
    // P_{abcde}^{;e}
    let div = p.div(sym);
    let div_swapped = div.permuted(&[2, 3, 0, 1]);
    // t[c,a,b] = P^e_{cabe}, q[a,b,c] = P^e_{ab e c}
    let t = p.contract(0, 4);
    let q = p.contract(0, 3);
    // s[a,b,c,d] = P^e_{abcd} k_e
    let s = CArray::from_fn(n, 4, |i| {
        (0..n).map(|e| p.at(&[e, i[0], i[1], i[2], i[3]]) * sym[e]).sum()
    });
    // P^e_{[c|ab|e;d]}
    let x = CArray::from_fn(n, 4, |i| {
        let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
        0.5 * (t.at(&[c, a, b]) * sym[d] - t.at(&[d, a, b]) * sym[c])
    });
    // P^e_{[a|cde|;b]}
    let w = CArray::from_fn(n, 4, |i| {
        let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
        0.5 * (t.at(&[a, c, d]) * sym[b] - t.at(&[b, c, d]) * sym[a])
    });
    // P^e_{[ab]cd;e}
    let u = s.combo(&[(0.5, &[0, 1, 2, 3]), (-0.5, &[1, 0, 2, 3])]);
    // P^e_{[ab]|e|[c;d]}
    let v = CArray::from_fn(n, 4, |i| {
        let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
        0.25 * ((q.at(&[a, b, c]) - q.at(&[b, a, c])) * sym[d]
            - (q.at(&[a, b, d]) - q.at(&[b, a, d])) * sym[c])
    });
    WeylForms {
        form: div
            .add(&div_swapped)
            .sub(&x.scale(2.0))
            .sub(&w.scale(2.0))
            .scale(0.5),
        prime: div.add(&u).sub(&x).sub(&w),
        double_prime: div.add(&u).sub(&w).sub(&v.scale(2.0)),
    }
}

const WEYL_RESIDUALS: [&str; 11] = [
    "reconstruction (first form)",
    "reconstruction (primed form)",
    "reconstruction (double primed form)",
    "first vs primed form",
    "first vs double primed form",
    "P_a[bcde]",
    "P^ab_abc",
    "P^e_[bcd]e",
    "P_[abcd]e",
    "P = 3 P_[cde]ab = 3 P^[a_[cde]^b]",
    "P_a[bc]de = -P_a[de]bc",
];

/// Weyl potential `P = -d_(2) C°` of a field of Weyl candidates.
pub fn weyl_potential(f: &FourierTensorField) -> Result<WeylPotential> {
    require_22(f)?;
    let m = euclid(f.dim());
    let f = project(f, "Weyl candidates", |t| project_weyl_candidate(t, &m))?;
    let sp = solve_superpotential(&f)?;
    let p = fourier_d_block(&sp.t0, 1)?.scale(-1.0);
    let plan = FiveSlotPlan::new(f.dim(), true);
    let residuals = mode_residuals(&f, &WEYL_RESIDUALS, |k, t| {
        let sym = k.symbol();
        let pk = CArray::from_tensor(&p.amplitude(k));
        let goal = target(k, t);
        let forms = weyl_forms(&pk, &sym);
        let props = plan.residuals(&pk);
        let tt = pk.contract(0, 2).contract(0, 1);
        Ok(vec![
            relative(&goal, &forms.form),
            relative(&goal, &forms.prime),
            relative(&goal, &forms.double_prime),
            relative(&forms.form, &forms.prime),
            relative(&forms.form, &forms.double_prime),
            props[0],
            relative_size(&tt, &pk),
            props[1],
            props[2],
            props[3],
            props[4],
        ])
    })?;
    Ok(WeylPotential {
        superpotential: sp.t0,
        harmonic: sp.harmonic,
        p,
        residuals,
    })
}

/// Pair potentials of a Riemann-candidate field and the Ricci-level
/// potentials derived from them.
#[derive(Clone, Debug)]
pub struct RiemannPotentials {
    pub superpotential: FourierTensorField,
    pub harmonic: FourierTensorField,
    /// `Y_{ab,cde} = -3 R°_{ab[cd;e]}`.
    pub y: FourierTensorField,
    /// `Z_{ab,c} = R°_{abdc}^{;d}`.
    pub z: FourierTensorField,
    /// `Y^c_{ab} = Y^{ec}_{eab} + Z_{ab}^c`, as a double (1,2)-form.
    pub ricci_y: FourierTensorField,
    /// `Z_a = Z_{ea}^e`, as a double (1,0)-form.
    pub ricci_z: FourierTensorField,
    /// Direct pair potentials of `tr F`.
    pub ricci: PpDecomposition,
    pub residuals: Vec<Residual>,
}

impl RiemannPotentials {
    pub fn worst(&self) -> f64 {
        worst(&self.residuals)
    }
}

/// `1/2 (Y_{abcde}^{;e} + Y_{cdabe}^{;e} + 2 Z_{ab[c;d]} + 2 Z_{cd[a;b]})`.
fn riemann_form(y: &CArray, z: &CArray, sym: &[C]) -> CArray {
    let div = y.div(sym);
    let n = y.dim();
    let zd = CArray::from_fn(n, 4, |i| {
        let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
        z.at(&[a, b, c]) * sym[d] - z.at(&[a, b, d]) * sym[c]
    });
    div.add(&div.permuted(&[2, 3, 0, 1]))
        .add(&zd)
        .add(&zd.permuted(&[2, 3, 0, 1]))
        .scale(0.5)
}

/// `Y = -d_(2) R°`, `Z = -delta_(2) R°` for a field of Riemann candidates.
pub fn riemann_pair_potentials(f: &FourierTensorField) -> Result<RiemannPotentials> {
    require_22(f)?;
    let n = f.dim();
    let f = project(f, "Riemann candidates", project_riemann_candidate)?;
    let sp = solve_superpotential(&f)?;
    let y = fourier_d_block(&sp.t0, 1)?.scale(-1.0);
    let z = fourier_delta_block(&sp.t0, 1)?.scale(-1.0);
    let bianchi = (bianchi_terms(), canonical_tuples(n, &[1, 4]));
    let mut residuals = mode_residuals(
        &f,
        &["reconstruction", "Y_a[bcde]", "Z_[abc]"],
        |k, t| {
            let sym = k.symbol();
            let yk = CArray::from_tensor(&y.amplitude(k));
            let zk = CArray::from_tensor(&z.amplitude(k));
            let cyc = zk.combo(&[
                (1.0 / 3.0, &[0, 1, 2]),
                (1.0 / 3.0, &[1, 2, 0]),
                (1.0 / 3.0, &[2, 0, 1]),
            ]);
            Ok(vec![
                relative(&target(k, t), &riemann_form(&yk, &zk, &sym)),
                max_abs(&yk.combo_at(&bianchi.0, &bianchi.1)) / yk.max_norm().max(f64::MIN_POSITIVE),
                relative_size(&cyc, &zk),
            ])
        },
    )?;

    let ry_shape = BlockShape::new(n, &[1, 2])?;
    let rz_shape = BlockShape::new(n, &[1, 0])?;
    let ricci_y = y.map_modes(ry_shape.clone(), |k, t| {
        let yk = CArray::from_tensor(t);
        let zk = CArray::from_tensor(&z.amplitude(k));
        Ok(yk
            .contract(0, 2)
            .add(&zk.permuted(&[1, 2, 0]))
            .to_tensor(ry_shape.clone()))
    })?;
    let ricci_z = z.map_modes(rz_shape.clone(), |_, t| {
        Ok(CArray::from_tensor(t).contract(0, 2).to_tensor(rz_shape.clone()))
    })?;
    let ricci = decompose_pp_symmetric(&trace_field(&f)?, 1)?;
    residuals.push(Residual::new(
        "Ricci Y from the Riemann potentials",
        ricci_y.residual(&ricci.y())?,
    ));
    residuals.push(Residual::new(
        "Ricci Z from the Riemann potentials",
        ricci_z.residual(&ricci.z())?,
    ));
    residuals.push(Residual::new("Ricci reconstruction", ricci.worst()));
    Ok(RiemannPotentials {
        superpotential: sp.t0,
        harmonic: sp.harmonic,
        y,
        z,
        ricci_y,
        ricci_z,
        ricci,
        residuals,
    })
}

/// Random field of the requested symmetry type, already projected.
pub fn random_candidate(
    kind: CandidateKind,
    n: usize,
    bandlimit: u32,
    seed: u64,
) -> Result<FourierTensorField> {
    let (ranks, sign): (&[usize], i32) = match kind {
        CandidateKind::PpSymmetric(p) => (&[p, p][..], 1),
        CandidateKind::PpAntisymmetric(p) => (&[p, p][..], -1),
        CandidateKind::Riemann | CandidateKind::Weyl => (&[2, 2][..], 1),
    };
    let f = FourierTensorField::random(BlockShape::new(n, &[ranks[0], ranks[1]])?, bandlimit, seed, true);
    let m = euclid(n);
    f.map_modes(f.shape().clone(), |_, t| match kind {
        CandidateKind::Riemann => project_riemann_candidate(t),
        CandidateKind::Weyl => project_weyl_candidate(t, &m),
        _ => Ok(t.add(&t.transpose()?.map(|z| z * sign as f64))?.map(|z| z * 0.5)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateKind {
    PpSymmetric(usize),
    PpAntisymmetric(usize),
    Riemann,
    Weyl,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(rs: &[Residual]) {
        for r in rs {
            assert!(r.value <= TOLERANCE, "{}: {:e}", r.name, r.value);
        }
    }

    #[test]
    fn shuffle_formulas_match_full_alternation() {
        let t = FourierTensorField::random(BlockShape::new(4, &[2, 3]).unwrap(), 0, 3, false);
        let y = CArray::from_tensor(t.mode(&WaveVector::zero(4)).unwrap());
        let a = y.combo(&[
            (0.25, &[0, 1, 2, 3, 4]),
            (-0.25, &[0, 2, 1, 3, 4]),
            (0.25, &[0, 3, 1, 2, 4]),
            (-0.25, &[0, 4, 1, 2, 3]),
        ]);
        assert!(relative(&a, &y.alternate(&[1, 2, 3, 4])) <= 1e-14);
        let sixth = 1.0 / 6.0;
        let b = y.combo(&[
            (sixth, &[0, 1, 2, 3, 4]),
            (-sixth, &[0, 2, 1, 3, 4]),
            (sixth, &[0, 3, 1, 2, 4]),
            (sixth, &[1, 2, 0, 3, 4]),
            (-sixth, &[1, 3, 0, 2, 4]),
            (sixth, &[2, 3, 0, 1, 4]),
        ]);
        assert!(relative(&b, &y.alternate(&[0, 1, 2, 3])) <= 1e-14);
        let c = y.combo(&[(1.0, &[0, 1, 2, 3, 4]), (1.0, &[1, 2, 0, 3, 4]), (1.0, &[2, 0, 1, 3, 4])]);
        assert!(relative(&c, &y.alternate(&[0, 1, 2]).scale(3.0)) <= 1e-14);
        let d = y.combo(&[(1.0, &[0, 1, 2, 3, 4]), (1.0, &[0, 2, 3, 1, 4]), (1.0, &[0, 3, 1, 2, 4])]);
        assert!(relative(&d, &y.alternate(&[1, 2, 3]).scale(3.0)) <= 1e-14);
    }

    #[test]
    fn symmetric_two_tensor() {
        let f = random_candidate(CandidateKind::PpSymmetric(1), 3, 2, 1).unwrap();
        let dec = decompose_pp_symmetric(&f, 1).unwrap();
        check(&dec.residuals);
        assert!(dec.residuals.iter().any(|r| r.name == "index reconstruction"));
    }

    #[test]
    fn antisymmetric_and_symmetric_pp_forms() {
        for (kind, sign) in [(CandidateKind::PpSymmetric(2), 1), (CandidateKind::PpAntisymmetric(2), -1)] {
            let f = random_candidate(kind, 4, 1, 2).unwrap();
            check(&decompose_pp_symmetric(&f, sign).unwrap().residuals);
        }
    }

    #[test]
    fn traceless_weyl_field_has_a_single_potential() {
        let f = random_candidate(CandidateKind::Weyl, 4, 1, 4).unwrap();
        let dec = decompose_pp_symmetric(&f, 1).unwrap();
        assert!(dec.traceless);
        check(&dec.residuals);
        assert!(dec.residuals.iter().any(|r| r.name == "traceless reconstruction"));
    }

    #[test]
    fn unsymmetric_input_is_rejected() {
        let f = FourierTensorField::random(BlockShape::new(3, &[1, 1]).unwrap(), 1, 1, true);
        assert!(matches!(decompose_pp_symmetric(&f, 1), Err(Error::InputContract(_))));
    }

    #[test]
    fn zero_field_has_zero_potentials() {
        let f = FourierTensorField::new(BlockShape::new(4, &[2, 2]).unwrap(), 2);
        let w = weyl_potential(&f).unwrap();
        assert!(w.p.is_zero());
        let r = riemann_pair_potentials(&f).unwrap();
        assert!(r.y.is_zero() && r.z.is_zero());
        let pp = decompose_pp_symmetric(&f, 1).unwrap();
        assert!(pp.y2.is_zero() && pp.z2.is_zero());
    }

    #[test]
    fn weyl_potential_on_t4() {
        let f = random_candidate(CandidateKind::Weyl, 4, 1, 5).unwrap();
        check(&weyl_potential(&f).unwrap().residuals);
    }

    #[test]
    fn riemann_potentials_on_t4() {
        let f = random_candidate(CandidateKind::Riemann, 4, 1, 6).unwrap();
        check(&riemann_pair_potentials(&f).unwrap().residuals);
    }

    #[test]
    fn projection_commutes_with_decomposition() {
        let f = FourierTensorField::random(BlockShape::new(4, &[2, 2]).unwrap(), 1, 8, true);
        let proj = |g: &FourierTensorField| {
            g.map_modes(g.shape().clone(), |_, t| project_riemann_candidate(t))
                .unwrap()
        };
        let a = solve_superpotential(&proj(&f)).unwrap().t0;
        let b = proj(&solve_superpotential(&f).unwrap().t0);
        assert!(a.residual(&b).unwrap() <= TOLERANCE);
    }
}
