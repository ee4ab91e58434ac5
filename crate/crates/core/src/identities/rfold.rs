//! General r-fold forms: second powers of the block operators, nilpotency,
//! commutators with the block Laplacians, duality and the weighted operator.

use super::{Ctx, IdentityCheck, Outcome, Suite};
use crate::error::Result;
use crate::operators::{
    d, d2_curvature, d_power, delta, delta2_curvature, delta_power, hodge, lap_block,
    lap_block_explicit, lap_weighted, lap_weighted_relation, lichnerowicz,
};
use crate::tensor::riemann_candidate_defects;

const S: Suite = Suite::RfoldCalculus;

/// Block-rank patterns used by the generic checks.
const SHAPES: [&[usize]; 4] = [&[1, 1], &[2, 1], &[2, 2], &[1, 2, 1]];

/// Shapes of the explicit block-Laplacian comparison.
pub(crate) const LAPLACIAN_SHAPES: [&[usize]; 6] =
    [&[1, 1], &[2, 1], &[2, 2], &[2, 3], &[2, 4], &[1, 2, 1]];

pub(super) fn fits(n: usize, ranks: &[usize]) -> bool {
    ranks.iter().all(|&k| k <= n)
}

pub(super) fn checks() -> Vec<IdentityCheck> {
    vec![
        IdentityCheck::new(
            "d2-curvature",
            S,
            "d_(i)^2 T equals the Ricci-identity sum of R^c_{a b_0 b_1} over the other \
             slots, alternated over the new pair",
            "random r-fold forms, every block",
            2,
            d2_check,
        ),
        IdentityCheck::new(
            "delta2-curvature",
            S,
            "delta_(i)^2 T equals its curvature expression from the Ricci identity",
            "random r-fold forms, every block",
            2,
            delta2_check,
        ),
        IdentityCheck::new(
            "d-nilpotency",
            S,
            "d_(i)^m T = 0 for m > n - n_i",
            "random double forms with n_i in {1, 2, n-1}",
            3,
            d_nilpotency,
        ),
        IdentityCheck::new(
            "delta-nilpotency",
            S,
            "delta_(i)^m T = 0 for m > n_i",
            "random double forms with n_i in {1, 2}",
            3,
            delta_nilpotency,
        ),
        IdentityCheck::new(
            "laplacian-commutes-d",
            S,
            "d_(i) Delta_(i) - Delta_(i) d_(i) = d_(i)^2 delta_(i) - delta_(i) d_(i)^2",
            "random r-fold forms, every block; both sides from the closed curvature forms",
            3,
            comm_d,
        ),
        IdentityCheck::new(
            "laplacian-commutes-delta",
            S,
            "delta_(i) Delta_(i) - Delta_(i) delta_(i) = delta_(i)^2 d_(i) - d_(i) delta_(i)^2",
            "random r-fold forms, every block; both sides from the closed curvature forms",
            3,
            comm_delta,
        ),
        IdentityCheck::new(
            "dual-commutation",
            S,
            "*_(j) Delta_(i) = Delta_(i) *_(j)",
            "random r-fold forms, every pair of blocks",
            2,
            dual_commutation,
        ),
        IdentityCheck::new(
            "block-laplacian-explicit",
            S,
            "Delta_(i) T = -nabla^2 T + n_i Ricci term - C(n_i,2) Riemann term \
             - mixed Riemann terms with every other block",
            "random r-fold forms, every block and the extra block",
            2,
            block_laplacian_explicit,
        ),
        IdentityCheck::new(
            "weighted-relation",
            S,
            "bar Delta = Delta_L / r - ((r-1)/r) nabla^2",
            "random r-fold forms",
            2,
            weighted_relation,
        ),
        IdentityCheck::new(
            "lichnerowicz-symmetry",
            S,
            "Delta_L maps Riemann candidates to Riemann candidates and symmetric \
             2-tensors to symmetric 2-tensors",
            "random Riemann candidate, random symmetric double (1,1)-form",
            2,
            lichnerowicz_symmetry,
        ),
        IdentityCheck::new(
            "lichnerowicz-trace",
            S,
            "tr(Delta_L T) = Delta_L tr(T)",
            "random double (2,2)- and (2,1)-forms",
            2,
            lichnerowicz_trace,
        ),
    ]
}

fn each_shape(
    cx: &mut Ctx,
    shapes: &[&[usize]],
    mut f: impl FnMut(&mut Ctx, &[usize], usize) -> Result<()>,
) -> Result<()> {
    let n = cx.n();
    for ranks in shapes.iter().filter(|r| fits(n, r)) {
        for s in 0..cx.samples {
            f(cx, ranks, s)?;
        }
    }
    Ok(())
}

fn d2_check(cx: &mut Ctx) -> Result<Outcome> {
    each_shape(cx, &SHAPES, |cx, ranks, s| {
        let t = cx.rng.tensor(ranks)?;
        for i in 0..ranks.len() {
            let a = d_power(cx.geom, &t, i, 2)?;
            let b = d2_curvature(cx.geom, &t, i)?;
            cx.compare(format!("{ranks:?} block {i} sample {s}"), &a, &b)?;
        }
        Ok(())
    })?;
    Ok(Outcome::Checked)
}

fn delta2_check(cx: &mut Ctx) -> Result<Outcome> {
    each_shape(cx, &SHAPES, |cx, ranks, s| {
        let t = cx.rng.tensor(ranks)?;
        for i in 0..ranks.len() {
            let a = delta_power(cx.geom, &t, i, 2)?;
            let b = delta2_curvature(cx.geom, &t, i)?;
            cx.compare(format!("{ranks:?} block {i} sample {s}"), &a, &b)?;
        }
        Ok(())
    })?;
    Ok(Outcome::Checked)
}

fn d_nilpotency(cx: &mut Ctx) -> Result<Outcome> {
    let n = cx.n();
    let room = cx.geom.order() as usize;
    let mut ks = vec![1, 2, n.saturating_sub(1)];
    ks.sort_unstable();
    ks.dedup();
    for k in ks.into_iter().filter(|&k| k >= 1 && k < n) {
        let m = n - k + 1;
        // the last application lands on an empty block and consumes nothing
        if m - 1 >= room {
            continue;
        }
        let t = cx.rng.tensor(&[k, 1])?;
        let out = d_power(cx.geom, &t, 0, m)?;
        cx.record(format!("n_i={k} m={m}"), &out);
    }
    Ok(Outcome::Checked)
}

fn delta_nilpotency(cx: &mut Ctx) -> Result<Outcome> {
    let n = cx.n();
    let room = cx.geom.order() as usize;
    for k in [1, 2].into_iter().filter(|&k| k <= n && k < room) {
        let t = cx.rng.tensor(&[k, 1])?;
        let out = delta_power(cx.geom, &t, 0, k + 1)?;
        cx.record(format!("n_i={k} m={}", k + 1), &out);
    }
    Ok(Outcome::Checked)
}

fn comm_d(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each_shape(cx, &SHAPES[..2], |cx, ranks, s| {
        let t = cx.rng.tensor(ranks)?;
        for i in 0..ranks.len() {
            let lhs = d(g, &lap_block_explicit(g, &t, i)?, i)?
                .sub(&lap_block_explicit(g, &d(g, &t, i)?, i)?)?;
            let rhs = d2_curvature(g, &delta(g, &t, i)?, i)?
                .sub(&delta(g, &d2_curvature(g, &t, i)?, i)?)?;
            cx.compare(format!("{ranks:?} block {i} sample {s}"), &lhs, &rhs)?;
        }
        Ok(())
    })?;
    Ok(Outcome::Checked)
}

fn comm_delta(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each_shape(cx, &SHAPES[..2], |cx, ranks, s| {
        let t = cx.rng.tensor(ranks)?;
        for i in 0..ranks.len() {
            let lhs = delta(g, &lap_block_explicit(g, &t, i)?, i)?
                .sub(&lap_block_explicit(g, &delta(g, &t, i)?, i)?)?;
            let mut rhs = delta2_curvature(g, &d(g, &t, i)?, i)?;
            // delta_(i)^2 vanishes identically below rank 2
            if ranks[i] >= 2 {
                rhs = rhs.sub(&d(g, &delta2_curvature(g, &t, i)?, i)?)?;
            }
            cx.compare(format!("{ranks:?} block {i} sample {s}"), &lhs, &rhs)?;
        }
        Ok(())
    })?;
    Ok(Outcome::Checked)
}

fn dual_commutation(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each_shape(cx, &[&[2, 1], &[1, 2, 1]], |cx, ranks, s| {
        let t = cx.rng.tensor(ranks)?;
        for i in 0..ranks.len() {
            for j in 0..ranks.len() {
                let a = hodge(g, &lap_block(g, &t, i)?, j)?;
                let b = lap_block(g, &hodge(g, &t, j)?, i)?;
                cx.compare(format!("{ranks:?} i={i} j={j} sample {s}"), &a, &b)?;
            }
        }
        Ok(())
    })?;
    Ok(Outcome::Checked)
}

fn block_laplacian_explicit(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each_shape(cx, &LAPLACIAN_SHAPES, |cx, ranks, s| {
        let t = cx.rng.tensor(ranks)?;
        for i in 0..=ranks.len() {
            let a = lap_block(g, &t, i)?;
            let b = lap_block_explicit(g, &t, i)?;
            cx.compare(format!("{ranks:?} block {i} sample {s}"), &a, &b)?;
        }
        Ok(())
    })?;
    Ok(Outcome::Checked)
}

fn weighted_relation(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    each_shape(cx, &LAPLACIAN_SHAPES, |cx, ranks, s| {
        let t = cx.rng.tensor(ranks)?;
        let a = lap_weighted(g, &t)?;
        let b = lap_weighted_relation(g, &t)?;
        cx.compare(format!("{ranks:?} sample {s}"), &a, &b)
    })?;
    Ok(Outcome::Checked)
}

fn lichnerowicz_symmetry(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    if cx.n() >= 2 {
        let r = cx.rng.riemann_candidate()?;
        let (pair, bianchi) = riemann_candidate_defects(&lichnerowicz(g, &r)?)?;
        cx.record("pair exchange", &pair);
        cx.record("first Bianchi", &bianchi);
    }
    let h = cx.rng.pp(1, 1)?;
    let l = lichnerowicz(g, &h)?;
    cx.compare("symmetric 2-tensor", &l, &l.transpose()?)?;
    Ok(Outcome::Checked)
}

fn lichnerowicz_trace(cx: &mut Ctx) -> Result<Outcome> {
    let g = cx.geom;
    let metric = g.metric();
    each_shape(cx, &[&[2, 2], &[2, 1]], |cx, ranks, s| {
        let t = cx.rng.tensor(ranks)?;
        let a = metric.trace(&lichnerowicz(g, &t)?)?;
        let b = lichnerowicz(g, &metric.trace(&t)?)?;
        cx.compare(format!("{ranks:?} sample {s}"), &a, &b)
    })?;
    Ok(Outcome::Checked)
}
