//! Bianchi identities and Laplace-like equations for the Riemann tensor,
//! its traces and its Weyl part.

use super::{half, rat, Ctx, Dense, IdentityCheck, Outcome, Suite};
use crate::error::Result;
use crate::jet::{Jet, Rational};
use crate::operators::{d, delta, lap_block, lap_weighted, lichnerowicz, weyl_part};
use crate::tensor::{riemann_candidate_defects, RFoldTensor};

const S: Suite = Suite::Curvature;

pub(super) fn checks() -> Vec<IdentityCheck> {
    vec![
        IdentityCheck::new(
            "bianchi-d2",
            S,
            "d_(2) Riem = 0, i.e. R_{ab[cd;e]} = 0",
            "Riemann tensor",
            3,
            bianchi_d2,
        ),
        IdentityCheck::new(
            "bianchi-d1",
            S,
            "d_(1) Riem = 0",
            "Riemann tensor",
            3,
            bianchi_d1,
        ),
        IdentityCheck::new(
            "contracted-bianchi",
            S,
            "delta_(1) Riem = -d_(2) Ric and delta_(2) Riem = -d_(1) Ric",
            "Riemann and Ricci tensors",
            3,
            contracted_bianchi,
        ),
        IdentityCheck::new(
            "contracted-bianchi-index",
            S,
            "R_{abcd}^{;a} = -2 R_{b[c;d]}",
            "Riemann and Ricci tensors",
            3,
            contracted_bianchi_index,
        ),
        IdentityCheck::new(
            "twice-contracted-bianchi",
            S,
            "delta_(1) Ric = -1/2 d_(2) R, with R a double (0,0)-form",
            "Ricci tensor and scalar curvature",
            3,
            twice_contracted,
        ),
        IdentityCheck::new(
            "riemann-wave-block2",
            S,
            "Delta_(2) Riem = -d_(2) d_(1) Ric",
            "Riemann and Ricci tensors",
            4,
            wave_block2,
        ),
        IdentityCheck::new(
            "riemann-wave-block1",
            S,
            "Delta_(1) Riem = -d_(1) d_(2) Ric",
            "Riemann and Ricci tensors",
            4,
            wave_block1,
        ),
        IdentityCheck::new(
            "riemann-wave-weighted",
            S,
            "bar Delta Riem = -1/2 (d_(1) d_(2) + d_(2) d_(1)) Ric",
            "Riemann and Ricci tensors",
            4,
            wave_weighted,
        ),
        IdentityCheck::new(
            "riemann-wave-index",
            S,
            "nabla^e nabla_e R^{ab}_{cd} + 4R^{[a}_{ef[c} R^{b]ef}_{d]} + R^{abef} R_{efcd} \
             + 2R^{ab}_{e[c} R^e_{d]} = 4R^{[a}_{[c;}^{b]}_{d]}, the index form of \
             Delta_(2) Riem = -d_(2) d_(1) Ric",
            "Riemann and Ricci tensors",
            4,
            wave_index,
        ),
        IdentityCheck::new(
            "riemann-wave-index-printed",
            S,
            "nabla^e nabla_e R^{ab}_{cd} + 4R^{[a}_{ef[c} R^{b]ef}_{d]} + R^{abef} R_{efcd} \
             - 2R^{ab}_{e[c} R^e_{d]} = 4R^{[a}_{[c;}^{b]}_{d]}",
            "Riemann and Ricci tensors",
            4,
            wave_index_printed,
        ),
        IdentityCheck::new(
            "riemann-wave-weighted-index",
            S,
            "nabla^e nabla_e R^{ab}_{cd} + 4R^{[a}_{ef[c} R^{b]ef}_{d]} + R^{abef} R_{efcd} \
             + R^{ab}_{e[c} R^e_{d]} + R_{cd}^{e[a} R_e^{b]} \
             = 2R^{[a}_{[c}^{;b]}_{d]} + 2R_{[c}^{[a}_{;d]}^{b]}",
            "Riemann and Ricci tensors",
            4,
            wave_weighted_index,
        ),
        IdentityCheck::new(
            "ricci-wave-block1",
            S,
            "Delta_(1) Ric = -delta_(1) delta_(2) Riem - 1/2 d_(1) d_(2) R",
            "Riemann, Ricci and scalar curvature",
            4,
            ricci_block1,
        ),
        IdentityCheck::new(
            "ricci-wave-block2",
            S,
            "Delta_(2) Ric = -delta_(2) delta_(1) Riem - 1/2 d_(2) d_(1) R",
            "Riemann, Ricci and scalar curvature",
            4,
            ricci_block2,
        ),
        IdentityCheck::new(
            "ricci-wave-weighted",
            S,
            "bar Delta Ric = -1/2 (delta_(1) delta_(2) + delta_(2) delta_(1)) Riem \
             - 1/4 (d_(1) d_(2) + d_(2) d_(1)) R",
            "Riemann, Ricci and scalar curvature",
            4,
            ricci_weighted,
        ),
        IdentityCheck::new(
            "ricci-wave-index",
            S,
            "nabla^e nabla_e R_ab - 1/2 nabla_a nabla_b R - R_a^c R_bc - R_{aefb} R^{ef} \
             = nabla_e nabla_f R^e_(a^f_b)",
            "Riemann, Ricci and scalar curvature",
            4,
            ricci_index,
        ),
        IdentityCheck::new(
            "scalar-wave",
            S,
            "1/2 bar Delta R = -delta_(1) delta_(2) Ric = -1/2 (delta_(1) delta_(2) \
             + delta_(2) delta_(1)) Ric",
            "Ricci tensor and scalar curvature",
            4,
            scalar_wave,
        ),
        IdentityCheck::new(
            "scalar-wave-index",
            S,
            "1/2 nabla^e nabla_e R = nabla_e nabla_f R^{ef}",
            "Ricci tensor and scalar curvature",
            4,
            scalar_index,
        ),
        IdentityCheck::new(
            "weyl-part-riemann",
            S,
            "W{Riem} = C, the Weyl tensor",
            "Riemann and Weyl tensors",
            2,
            weyl_of_riemann,
        ),
        IdentityCheck::new(
            "weyl-part-commutes",
            S,
            "W{bar Delta Riem} = bar Delta C = -1/2 W{(d_(1) d_(2) + d_(2) d_(1)) Ric}",
            "Riemann, Ricci and Weyl tensors",
            4,
            weyl_commutes,
        ),
        IdentityCheck::new(
            "weighted-preserves-symmetry",
            S,
            "(bar Delta Riem)_{a[bcd]} = 0 and bar Delta Riem = t(bar Delta Riem)",
            "Riemann tensor",
            4,
            weighted_symmetry,
        ),
        IdentityCheck::new(
            "weighted-commutes-trace",
            S,
            "tr(bar Delta Riem) = bar Delta Ric",
            "Riemann and Ricci tensors",
            4,
            weighted_trace,
        ),
        IdentityCheck::new(
            "delta2-bianchi-failure",
            S,
            "(Delta_(2) Riem)_{a[bcd]} != 0 when d_(1) Ric != 0",
            "Riemann tensor",
            4,
            block2_bianchi_failure,
        )
        .witness(),
        IdentityCheck::new(
            "delta2-trace-failure",
            S,
            "tr(Delta_(2) Riem) != Delta_(2) Ric when d_(1) Ric != 0",
            "Riemann and Ricci tensors",
            4,
            block2_trace_failure,
        )
        .witness(),
        IdentityCheck::new(
            "delta2-trace-generic",
            S,
            "tr(Delta_(2) T) - Delta_(2) tr T = delta_(2) delta_(1) T - delta_(1) delta_(2) T != 0 \
             for a Riemann candidate T, on a geometry with d_(1) Ric != 0",
            "random Riemann candidate",
            2,
            generic_trace_failure,
        )
        .witness(),
        IdentityCheck::new(
            "weighted-harmonic",
            S,
            "d_(1) Ric = 0 implies bar Delta Riem = 0",
            "Riemann and Ricci tensors",
            4,
            weighted_harmonic,
        ),
        IdentityCheck::new(
            "block2-harmonic",
            S,
            "d_(1) Ric = 0 implies Delta_(2) Riem = 0",
            "Riemann and Ricci tensors",
            4,
            block2_harmonic,
        ),
        IdentityCheck::new(
            "lichnerowicz-not-harmonic",
            S,
            "Delta_L Riem != 0 for a curved metric, Einstein or Ricci-flat included",
            "Riemann tensor",
            4,
            lichnerowicz_not_harmonic,
        )
        .witness(),
    ]
}

fn riem<'a>(cx: &Ctx<'a>) -> &'a RFoldTensor<Jet> {
    cx.geom.riemann()
}

fn ric<'a>(cx: &Ctx<'a>) -> &'a RFoldTensor<Jet> {
    cx.geom.ricci()
}

fn array4(n: usize, a: &[Jet]) -> Dense {
    Dense::from_fn(n, 4, |i| a[((i[0] * n + i[1]) * n + i[2]) * n + i[3]].clone())
}

/// `(d_(1) d_(2) + d_(2) d_(1)) Ric`.
fn ddric(cx: &Ctx) -> Result<RFoldTensor<Jet>> {
    let g = cx.geom;
    d(g, &d(g, ric(cx), 1)?, 0)?.add(&d(g, &d(g, ric(cx), 0)?, 1)?)
}

fn ricci_closed(cx: &Ctx) -> Result<bool> {
    Ok(d(cx.geom, ric(cx), 0)?.is_zero())
}

fn bianchi_d2(cx: &mut Ctx) -> Result<Outcome> {
    let x = d(cx.geom, riem(cx), 1)?;
    cx.record("d_(2) Riem", &x);
    Ok(Outcome::Checked)
}

fn bianchi_d1(cx: &mut Ctx) -> Result<Outcome> {
    let x = d(cx.geom, riem(cx), 0)?;
    cx.record("d_(1) Riem", &x);
    Ok(Outcome::Checked)
}

fn contracted_bianchi(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let a = delta(g, riem(cx), 0)?;
    let b = d(g, ric(cx), 1)?.neg();
    cx.compare("block 1", &a, &b)?;
    let a = delta(g, riem(cx), 1)?;
    let b = d(g, ric(cx), 0)?.neg();
    cx.compare("block 2", &a, &b)?;
    Ok(Outcome::Checked)
}

fn contracted_bianchi_index(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let lhs = Dense::from_tensor(&g.nabla(riem(cx))?)?.contract(0, 4, g.metric())?;
    let dr = Dense::from_tensor(&g.nabla(ric(cx))?)?;
    let rhs = dr.sub(&dr.permuted(&[0, 2, 1]))?.scale(&rat(-1));
    cx.compare_dense("divergence", &lhs, &rhs)?;
    Ok(Outcome::Checked)
}

fn twice_contracted(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let a = delta(g, ric(cx), 0)?;
    let b = d(g, &g.scalar_form(), 1)?.scale(&Rational::new(-1, 2));
    cx.compare("delta_(1) Ric", &a, &b)?;
    Ok(Outcome::Checked)
}

fn wave_block2(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let a = lap_block(g, riem(cx), 1)?;
    let b = d(g, &d(g, ric(cx), 0)?, 1)?.neg();
    cx.compare("Delta_(2) Riem", &a, &b)?;
    Ok(Outcome::Checked)
}

fn wave_block1(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let a = lap_block(g, riem(cx), 0)?;
    let b = d(g, &d(g, ric(cx), 1)?, 0)?.neg();
    cx.compare("Delta_(1) Riem", &a, &b)?;
    Ok(Outcome::Checked)
}

fn wave_weighted(cx: &mut Ctx) -> Result<Outcome> {
    let a = lap_weighted(cx.geom, riem(cx))?;
    let b = ddric(cx)?.scale(&Rational::new(-1, 2));
    cx.compare("bar Delta Riem", &a, &b)?;
    Ok(Outcome::Checked)
}

/// Pieces shared by the two index forms of the Riemann wave equation, with
/// all indices lowered, as `(abcd)` arrays.
struct WaveTerms {
    /// `nabla^e nabla_e R_{abcd}`
    rough: Dense,
    /// `4 R_{[a|ef|[c} R_{b]}^{ef}_{d]}`
    quad: Dense,
    /// `R_{ab}^{ef} R_{efcd}`
    pair: Dense,
    /// `R_{abe[c} R^e_{d]}`
    ric_cd: Dense,
    /// `R_{cde[a} R^e_{b]}`
    ric_ab: Dense,
    /// `R_{a[c;|b|d]}` alternated in `[ab]`, derivative order `;b;d`
    hess_bd: Dense,
    /// the same with derivative order `;d;b`
    hess_db: Dense,
}

fn wave_terms(cx: &Ctx) -> Result<WaveTerms> {
    let g = cx.geom;
    let n = g.dim();
    let m = g.metric();
    let rough = Dense::from_tensor(&g.nabla(&g.nabla(riem(cx))?)?)?.contract(4, 5, m)?;
    let r0 = array4(n, g.riemann_array(0));
    let r6 = array4(n, g.riemann_array(6));
    let r12 = array4(n, g.riemann_array(12));
    let ric1 = g.ricci_array(1);
    let sum2 = |f: &dyn Fn(usize, usize) -> Jet| {
        let mut acc = Jet::zero(n);
        for e in 0..n {
            for h in 0..n {
                acc = &acc + &f(e, h);
            }
        }
        acc
    };
    let q = Dense::from_fn(n, 4, |i| {
        let (a, b, c, dd) = (i[0], i[1], i[2], i[3]);
        sum2(&|e, h| r0.at(&[a, e, h, c]) * r6.at(&[b, e, h, dd]))
    });
    let quad = q.alternate(&[0, 1]).alternate(&[2, 3]).scale(&rat(4));
    let pair = Dense::from_fn(n, 4, |i| {
        let (a, b, c, dd) = (i[0], i[1], i[2], i[3]);
        sum2(&|e, h| r12.at(&[a, b, e, h]) * r0.at(&[e, h, c, dd]))
    });
    let w = Dense::from_fn(n, 4, |i| {
        let mut acc = Jet::zero(n);
        for e in 0..n {
            acc = &acc + &(r0.at(&[i[0], i[1], e, i[2]]) * &ric1[e * n + i[3]]);
        }
        acc
    });
    let ric_cd = w.alternate(&[2, 3]);
    let ric_ab = ric_cd.permuted(&[2, 3, 0, 1]);
    // (x, y, u, v) = Ric_{xy;u;v}
    let h = Dense::from_tensor(&g.nabla(&g.nabla(ric(cx))?)?)?;
    let hess_bd = h.permuted(&[0, 2, 1, 3]).alternate(&[0, 1]).alternate(&[2, 3]);
    let hess_db = h.permuted(&[0, 2, 3, 1]).alternate(&[0, 1]).alternate(&[2, 3]);
    Ok(WaveTerms {
        rough,
        quad,
        pair,
        ric_cd,
        ric_ab,
        hess_bd,
        hess_db,
    })
}

/// Index form of `Delta_(2) Riem = -d_(2) d_(1) Ric` with coefficient
/// `ricci_coef` on `R_{abe[c} R^e_{d]}`.
fn block2_index(cx: &mut Ctx, ricci_coef: i64) -> Result<Outcome> {
    let t = wave_terms(cx)?;
    let lhs = t
        .rough
        .add(&t.quad)?
        .add(&t.pair)?
        .add(&t.ric_cd.scale(&rat(ricci_coef)))?;
    let rhs = t.hess_bd.scale(&rat(4));
    cx.compare_dense("index form", &lhs, &rhs)?;
    Ok(Outcome::Checked)
}

fn wave_index(cx: &mut Ctx) -> Result<Outcome> {
    block2_index(cx, 2)
}

fn wave_index_printed(cx: &mut Ctx) -> Result<Outcome> {
    block2_index(cx, -2)
}

fn wave_weighted_index(cx: &mut Ctx) -> Result<Outcome> {
    let t = wave_terms(cx)?;
    let lhs = t
        .rough
        .add(&t.quad)?
        .add(&t.pair)?
        .add(&t.ric_cd)?
        .add(&t.ric_ab)?;
    let rhs = t.hess_bd.add(&t.hess_db)?.scale(&rat(2));
    cx.compare_dense("index form", &lhs, &rhs)?;
    Ok(Outcome::Checked)
}

fn ricci_block1(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let a = lap_block(g, ric(cx), 0)?;
    let r = g.scalar_form();
    let b = delta(g, &delta(g, riem(cx), 1)?, 0)?
        .add(&d(g, &d(g, &r, 1)?, 0)?.scale(&half()))?
        .neg();
    cx.compare("Delta_(1) Ric", &a, &b)?;
    Ok(Outcome::Checked)
}

fn ricci_block2(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let a = lap_block(g, ric(cx), 1)?;
    let r = g.scalar_form();
    let b = delta(g, &delta(g, riem(cx), 0)?, 1)?
        .add(&d(g, &d(g, &r, 0)?, 1)?.scale(&half()))?
        .neg();
    cx.compare("Delta_(2) Ric", &a, &b)?;
    Ok(Outcome::Checked)
}

fn ricci_weighted(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let a = lap_weighted(g, ric(cx))?;
    let rm = riem(cx);
    let r = g.scalar_form();
    let dd = delta(g, &delta(g, rm, 1)?, 0)?.add(&delta(g, &delta(g, rm, 0)?, 1)?)?;
    let ee = d(g, &d(g, &r, 1)?, 0)?.add(&d(g, &d(g, &r, 0)?, 1)?)?;
    let b = dd
        .scale(&Rational::new(-1, 2))
        .sub(&ee.scale(&Rational::new(1, 4)))?;
    cx.compare("bar Delta Ric", &a, &b)?;
    Ok(Outcome::Checked)
}

fn ricci_index(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let n = g.dim();
    let m = g.metric();
    let lap = Dense::from_tensor(&g.nabla(&g.nabla(ric(cx))?)?)?.contract(2, 3, m)?;
    let hr = Dense::from_tensor(&g.nabla(&g.nabla(&g.scalar_form())?)?)?;
    let ric0 = g.ricci_array(0);
    let ric1 = g.ricci_array(1);
    let ric3 = g.ricci_array(3);
    let r0 = array4(n, g.riemann_array(0));
    let quad = Dense::from_fn(n, 2, |i| {
        let (a, b) = (i[0], i[1]);
        let mut acc = Jet::zero(n);
        for c in 0..n {
            acc = &acc + &(&ric1[c * n + a] * &ric0[b * n + c]);
            for f in 0..n {
                acc = &acc + &(r0.at(&[a, c, f, b]) * &ric3[c * n + f]);
            }
        }
        acc
    });
    let lhs = lap
        .sub(&hr.permuted(&[1, 0]).scale(&half()))?
        .sub(&quad)?;
    // (e', a, f', b, f, e): R_{e'af'b;f;e}
    let nn = Dense::from_tensor(&g.nabla(&g.nabla(riem(cx))?)?)?;
    let k = nn.contract(2, 4, m)?.contract(0, 3, m)?;
    let rhs = k.add(&k.permuted(&[1, 0]))?.scale(&half());
    cx.compare_dense("index form", &lhs, &rhs)?;
    Ok(Outcome::Checked)
}

fn scalar_wave(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let r = g.scalar_form();
    let a = lap_weighted(g, &r)?.scale(&half());
    let b = delta(g, &delta(g, ric(cx), 1)?, 0)?.neg();
    cx.compare("1/2 bar Delta R", &a, &b)?;
    let c = delta(g, &delta(g, ric(cx), 0)?, 1)?.neg();
    cx.compare("symmetrized", &a, &b.add(&c)?.scale(&half()))?;
    Ok(Outcome::Checked)
}

fn scalar_index(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let m = g.metric();
    let lap = Dense::from_tensor(&g.nabla(&g.nabla(&g.scalar_form())?)?)?
        .contract(0, 1, m)?
        .scale(&half());
    let rhs = Dense::from_tensor(&g.nabla(&g.nabla(ric(cx))?)?)?
        .contract(1, 2, m)?
        .contract(0, 1, m)?;
    cx.compare_dense("index form", &lap, &rhs)?;
    Ok(Outcome::Checked)
}

fn weyl_of_riemann(cx: &mut Ctx) -> Result<Outcome> {
    let w = weyl_part(riem(cx), cx.geom)?;
    cx.compare("W{Riem} - C", &w, cx.geom.weyl())?;
    Ok(Outcome::Checked)
}

fn weyl_commutes(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let lap_c = lap_weighted(g, g.weyl())?;
    let w = weyl_part(&lap_weighted(g, riem(cx))?, g)?;
    cx.compare("W{bar Delta Riem}", &w, &lap_c)?;
    let rhs = weyl_part(&ddric(cx)?, g)?.scale(&Rational::new(-1, 2));
    cx.compare("-1/2 W{dd Ric}", &lap_c, &rhs)?;
    Ok(Outcome::Checked)
}

fn weighted_symmetry(cx: &mut Ctx) -> Result<Outcome> {
    let l = lap_weighted(cx.geom, riem(cx))?;
    let (pair, bianchi) = riemann_candidate_defects(&l)?;
    cx.record("pair exchange", &pair);
    cx.record("first Bianchi", &bianchi);
    Ok(Outcome::Checked)
}

fn weighted_trace(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let a = g.metric().trace(&lap_weighted(g, riem(cx))?)?;
    let b = lap_weighted(g, ric(cx))?;
    cx.compare("tr(bar Delta Riem) - bar Delta Ric", &a, &b)?;
    Ok(Outcome::Checked)
}

fn block2_bianchi_failure(cx: &mut Ctx) -> Result<Outcome> {
    if ricci_closed(cx)? {
        return Ok(Outcome::Skipped("d_(1) Ric = 0 on this geometry".into()));
    }
    let l = lap_block(cx.geom, riem(cx), 1)?;
    let (_, bianchi) = riemann_candidate_defects(&l)?;
    cx.record("(Delta_(2) Riem)_{a[bcd]}", &bianchi);
    Ok(Outcome::Checked)
}

fn block2_trace_failure(cx: &mut Ctx) -> Result<Outcome> {
    if ricci_closed(cx)? {
        return Ok(Outcome::Skipped("d_(1) Ric = 0 on this geometry".into()));
    }
    let g = cx.geom;
    let a = g.metric().trace(&lap_block(g, riem(cx), 1)?)?;
    let b = lap_block(g, ric(cx), 1)?;
    cx.compare("tr(Delta_(2) Riem) - Delta_(2) Ric", &a, &b)?;
    Ok(Outcome::Checked)
}

fn generic_trace_failure(cx: &mut Ctx) -> Result<Outcome> {
    if ricci_closed(cx)? {
        return Ok(Outcome::Skipped("d_(1) Ric = 0 on this geometry".into()));
    }
    let g = cx.geom;
    let t = cx.rng.riemann_candidate()?;
    let a = g.metric().trace(&lap_block(g, &t, 1)?)?;
    let b = lap_block(g, &g.metric().trace(&t)?, 1)?;
    cx.compare("tr(Delta_(2) T) - Delta_(2) tr T", &a, &b)?;
    let c = delta(g, &delta(g, &t, 0)?, 1)?.sub(&delta(g, &delta(g, &t, 1)?, 0)?)?;
    cx.record("delta_(2) delta_(1) T - delta_(1) delta_(2) T", &c);
    Ok(Outcome::Checked)
}

fn weighted_harmonic(cx: &mut Ctx) -> Result<Outcome> {
    if !ricci_closed(cx)? {
        return Ok(Outcome::Skipped("d_(1) Ric != 0 on this geometry".into()));
    }
    let l = lap_weighted(cx.geom, riem(cx))?;
    cx.record("bar Delta Riem", &l);
    Ok(Outcome::Checked)
}

fn block2_harmonic(cx: &mut Ctx) -> Result<Outcome> {
    if !ricci_closed(cx)? {
        return Ok(Outcome::Skipped("d_(1) Ric != 0 on this geometry".into()));
    }
    let l = lap_block(cx.geom, riem(cx), 1)?;
    cx.record("Delta_(2) Riem", &l);
    Ok(Outcome::Checked)
}

fn lichnerowicz_not_harmonic(cx: &mut Ctx) -> Result<Outcome> {
    if riem(cx).is_zero() {
        return Ok(Outcome::Skipped("flat metric".into()));
    }
    let l = lichnerowicz(cx.geom, riem(cx))?;
    cx.record("Delta_L Riem", &l);
    Ok(Outcome::Checked)
}
