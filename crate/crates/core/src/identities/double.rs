//! Double forms: closed formulas for the block Laplacians, trace and
//! transpose rules, and the mixed commutators.

use super::rfold::fits;
use super::{Ctx, IdentityCheck, Outcome, Suite};
use crate::error::Result;
use crate::jet::Jet;
use crate::operators::{
    commutator_d1_d2_printed, commutator_d1_delta2_derived, commutator_d1_delta2_printed,
    commutator_delta1_delta2_printed, d, delta, double_form_laplacian, five_case_laplacian,
    lap_block, lap_difference_explicit, lap_weighted, CrossTerm, Which,
};
use crate::tensor::RFoldTensor;

const S: Suite = Suite::DoubleForms;

const SHAPES: [(usize, usize); 7] = [(1, 1), (2, 1), (1, 2), (2, 2), (2, 3), (3, 2), (2, 4)];

/// Shapes with a tabulated closed formula for `bar Delta`.
pub(crate) const FIVE_CASES: [(usize, usize); 5] = [(1, 1), (2, 1), (2, 2), (2, 3), (2, 4)];

pub(super) fn checks() -> Vec<IdentityCheck> {
    vec![
        IdentityCheck::new(
            "double-laplacian-block1",
            S,
            "Delta_(1) T = -nabla^2 T + q R^c_{[a_1} T_{|c|a_2..a_q]B} - C(q,2) R^{cd}_{[a_1a_2} \
             T_{|cd|a_3..a_q]B} - qp R^{[a_1}_{cd[b_1} T^{a_2..a_q]cd}_{b_2..b_p]}, as printed",
            "random double (q,p)-forms",
            2,
            block1_printed,
        ),
        IdentityCheck::new(
            "double-laplacian-block2",
            S,
            "Delta_(2) T: the closed formula with the roles of the blocks exchanged, as printed",
            "random double (q,p)-forms",
            2,
            block2_printed,
        ),
        IdentityCheck::new(
            "double-laplacian-weighted",
            S,
            "bar Delta T = -nabla^2 T + half the Ricci and Riemann terms of both blocks \
             - qp mixed term, as printed",
            "random double (q,p)-forms",
            2,
            weighted_printed,
        ),
        IdentityCheck::new(
            "double-laplacian-cases",
            S,
            "bar Delta on (1,1), (2,1), (2,2), (2,3), (2,4)-forms by the tabulated formulas",
            "random double forms of the five tabulated shapes",
            2,
            five_cases_printed,
        ),
        IdentityCheck::new(
            "double-laplacian-in-place",
            S,
            "Delta_(1), Delta_(2), bar Delta and the five cases with the mixed term's \
             contracted index in the slot vacated by a_1",
            "random double (q,p)-forms",
            2,
            in_place,
        ),
        IdentityCheck::new(
            "laplacian-difference",
            S,
            "Delta_(1) T - Delta_(2) T = Ricci and Riemann terms of block 1 minus those of block 2",
            "random double (q,p)-forms",
            2,
            difference,
        ),
        IdentityCheck::new(
            "trace-d",
            S,
            "tr(d_(1) T) = -d_(1) tr T - delta_(2) T and tr(d_(2) T) = -d_(2) tr T - delta_(1) T",
            "random double (q,p)-forms",
            2,
            trace_d,
        ),
        IdentityCheck::new(
            "trace-delta",
            S,
            "tr(delta_(1) T) = -delta_(1) tr T for q >= 2 and tr(delta_(2) T) = -delta_(2) tr T \
             for p >= 2",
            "random double (q,p)-forms",
            2,
            trace_delta,
        ),
        IdentityCheck::new(
            "transpose-d-delta",
            S,
            "d_(2) tT = t(d_(1) T) and delta_(2) tT = t(delta_(1) T)",
            "random double (q,p)-forms",
            2,
            transpose_rules,
        ),
        IdentityCheck::new(
            "commutator-d1-d2",
            S,
            "[d_(1), d_(2)] T = Riemann terms (-1)^{p+q} R_{a_i b_j}^{..} alternated over A and B",
            "random double (q,p)-forms",
            2,
            comm_d1_d2,
        ),
        IdentityCheck::new(
            "commutator-d1-delta2",
            S,
            "[d_(1), delta_(2)] T = -sum_j (-1)^j nabla^c [nabla_{a_j}, nabla_c] T_{A\\a_j, cB}, \
             by the Ricci identity",
            "random double (q,p)-forms",
            2,
            comm_d1_delta2,
        ),
        IdentityCheck::new(
            "commutator-d1-delta2-printed",
            S,
            "[d_(1), delta_(2)] T equals the printed three-term curvature expression",
            "random double (q,p)-forms; also compared with the Ricci-identity form",
            2,
            comm_d1_delta2_printed,
        ),
        IdentityCheck::new(
            "commutator-delta1-delta2",
            S,
            "[delta_(1), delta_(2)] T = 1/2 R^{..} contracted with T over a pair from each block",
            "random double (q,p)-forms, q, p >= 1",
            2,
            comm_delta1_delta2,
        ),
    ]
}

fn each(
    cx: &mut Ctx,
    shapes: &[(usize, usize)],
    mut f: impl FnMut(&mut Ctx, &RFoldTensor<Jet>, String) -> Result<()>,
) -> Result<()> {
    let n = cx.n();
    for &(q, p) in shapes.iter().filter(|(q, p)| fits(n, &[*q, *p])) {
        for s in 0..cx.samples {
            let t = cx.rng.tensor(&[q, p])?;
            f(cx, &t, format!("({q},{p}) sample {s}"))?;
        }
    }
    Ok(())
}

fn block1_printed(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &SHAPES, |cx, t, label| {
        let a = lap_block(g, t, 0)?;
        let b = double_form_laplacian(g, t, Which::Block1, CrossTerm::Printed)?;
        cx.compare(label, &a, &b)
    })?;
    Ok(Outcome::Checked)
}

fn block2_printed(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &SHAPES, |cx, t, label| {
        let a = lap_block(g, t, 1)?;
        let b = double_form_laplacian(g, t, Which::Block2, CrossTerm::Printed)?;
        cx.compare(label, &a, &b)
    })?;
    Ok(Outcome::Checked)
}

fn weighted_printed(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &SHAPES, |cx, t, label| {
        let a = lap_weighted(g, t)?;
        let b = double_form_laplacian(g, t, Which::Weighted, CrossTerm::Printed)?;
        cx.compare(label, &a, &b)
    })?;
    Ok(Outcome::Checked)
}

fn five_cases_printed(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &FIVE_CASES, |cx, t, label| {
        let a = lap_weighted(g, t)?;
        let b = five_case_laplacian(g, t, CrossTerm::Printed)?;
        cx.compare(label, &a, &b)
    })?;
    Ok(Outcome::Checked)
}

fn in_place(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let ct = CrossTerm::InPlace;
    each(cx, &SHAPES, |cx, t, label| {
        let w = lap_weighted(g, t)?;
        let l1 = lap_block(g, t, 0)?;
        let l2 = lap_block(g, t, 1)?;
        cx.compare(
            format!("block1 {label}"),
            &l1,
            &double_form_laplacian(g, t, Which::Block1, ct)?,
        )?;
        cx.compare(
            format!("block2 {label}"),
            &l2,
            &double_form_laplacian(g, t, Which::Block2, ct)?,
        )?;
        cx.compare(
            format!("weighted {label}"),
            &w,
            &double_form_laplacian(g, t, Which::Weighted, ct)?,
        )?;
        let shape = (t.shape().block_rank(0), t.shape().block_rank(1));
        if FIVE_CASES.contains(&shape) {
            cx.compare(
                format!("case {label}"),
                &w,
                &five_case_laplacian(g, t, ct)?,
            )?;
        }
        Ok(())
    })?;
    Ok(Outcome::Checked)
}

fn difference(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &SHAPES, |cx, t, label| {
        let a = lap_block(g, t, 0)?.sub(&lap_block(g, t, 1)?)?;
        cx.compare(label, &a, &lap_difference_explicit(g, t)?)
    })?;
    Ok(Outcome::Checked)
}

fn trace_d(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let m = g.metric();
    each(cx, &SHAPES, |cx, t, label| {
        let tr = m.trace(t)?;
        let a = m.trace(&d(g, t, 0)?)?;
        let b = d(g, &tr, 0)?.add(&delta(g, t, 1)?)?.neg();
        cx.compare(format!("block1 {label}"), &a, &b)?;
        let a = m.trace(&d(g, t, 1)?)?;
        let b = d(g, &tr, 1)?.add(&delta(g, t, 0)?)?.neg();
        cx.compare(format!("block2 {label}"), &a, &b)
    })?;
    Ok(Outcome::Checked)
}

fn trace_delta(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let m = g.metric();
    each(cx, &SHAPES, |cx, t, label| {
        let (q, p) = (t.shape().block_rank(0), t.shape().block_rank(1));
        let tr = m.trace(t)?;
        if q >= 2 {
            let a = m.trace(&delta(g, t, 0)?)?;
            cx.compare(format!("block1 {label}"), &a, &delta(g, &tr, 0)?.neg())?;
        }
        if p >= 2 {
            let a = m.trace(&delta(g, t, 1)?)?;
            cx.compare(format!("block2 {label}"), &a, &delta(g, &tr, 1)?.neg())?;
        }
        Ok(())
    })?;
    Ok(Outcome::Checked)
}

fn transpose_rules(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &SHAPES, |cx, t, label| {
        let tt = t.transpose()?;
        let a = d(g, &tt, 1)?;
        cx.compare(format!("d {label}"), &a, &d(g, t, 0)?.transpose()?)?;
        let a = delta(g, &tt, 1)?;
        cx.compare(format!("delta {label}"), &a, &delta(g, t, 0)?.transpose()?)
    })?;
    Ok(Outcome::Checked)
}

fn comm_d1_d2(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &SHAPES, |cx, t, label| {
        let c = d(g, &d(g, t, 1)?, 0)?.sub(&d(g, &d(g, t, 0)?, 1)?)?;
        cx.compare(label, &c, &commutator_d1_d2_printed(g, t)?)
    })?;
    Ok(Outcome::Checked)
}

fn d1_delta2(cx: &Ctx, t: &RFoldTensor<Jet>) -> Result<RFoldTensor<Jet>> {
    let g = cx.geom;
    d(g, &delta(g, t, 1)?, 0)?.sub(&delta(g, &d(g, t, 0)?, 1)?)
}

fn comm_d1_delta2(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &SHAPES, |cx, t, label| {
        let c = d1_delta2(cx, t)?;
        cx.compare(label, &c, &commutator_d1_delta2_derived(g, t)?)
    })?;
    Ok(Outcome::Checked)
}

fn comm_d1_delta2_printed(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &SHAPES, |cx, t, label| {
        let c = d1_delta2(cx, t)?;
        let printed = commutator_d1_delta2_printed(g, t)?;
        cx.compare(format!("composition {label}"), &c, &printed)?;
        cx.compare(
            format!("derived {label}"),
            &commutator_d1_delta2_derived(g, t)?,
            &printed,
        )
    })?;
    Ok(Outcome::Checked)
}

fn comm_delta1_delta2(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each(cx, &SHAPES, |cx, t, label| {
        let c = delta(g, &delta(g, t, 1)?, 0)?.sub(&delta(g, &delta(g, t, 0)?, 1)?)?;
        cx.compare(label, &c, &commutator_delta1_delta2_printed(g, t)?)
    })?;
    Ok(Outcome::Checked)
}
