//! Ordinary differential forms: Hodge duality, the codifferential and the
//! Weitzenboeck form of the de Rham Laplacian.

use super::{parity, rat, Ctx, Dense, IdentityCheck, Outcome, Suite};
use crate::error::Result;
use crate::jet::{Jet, Rational};
use crate::operators::{d, delta, delta_via_dual, hodge, lap_block, lichnerowicz};

const S: Suite = Suite::SingleForms;

pub(super) fn checks() -> Vec<IdentityCheck> {
    vec![
        IdentityCheck::new(
            "hodge-double-dual",
            S,
            "** T = eps (-1)^{k(n-k)} T for a k-form T, eps the sign of det g",
            "random k-forms, k = 0..n",
            2,
            hodge_double_dual,
        ),
        IdentityCheck::new(
            "codifferential-scalar",
            S,
            "delta f = 0 for a function f, also via delta = eps (-1)^{(n-p)(p-1)+1} * d *",
            "random scalar",
            3,
            codifferential_scalar,
        ),
        IdentityCheck::new(
            "exterior-top-form",
            S,
            "d alpha = 0 for an n-form alpha",
            "random n-form",
            3,
            exterior_top_form,
        ),
        IdentityCheck::new(
            "codifferential-dual",
            S,
            "delta T = -nabla^c T_{c..} equals eps (-1)^{(n-p)(p-1)+1} * d * T",
            "random p-forms, p = 0..n, and a random (2,2)-form on both blocks",
            3,
            codifferential_dual,
        ),
        IdentityCheck::new(
            "de-rham-index-form",
            S,
            "Delta alpha = -nabla^2 alpha + p R_{c[a_1} alpha^c_{a_2..a_p]} \
             - p(p-1)/2 R_{cd[a_1 a_2} alpha^{cd}_{a_3..a_p]}",
            "random p-forms, p = 1..min(n,3)",
            4,
            de_rham_index_form,
        ),
        IdentityCheck::new(
            "lichnerowicz-de-rham",
            S,
            "Delta_L alpha = (d delta + delta d) alpha on p-forms",
            "random p-forms, p = 0..n",
            4,
            lichnerowicz_de_rham,
        ),
        IdentityCheck::new(
            "exterior-nilpotent",
            S,
            "d d alpha = 0 and delta delta alpha = 0 on p-forms",
            "random p-forms, p = 0..n",
            4,
            exterior_nilpotent,
        ),
    ]
}

fn hodge_double_dual(cx: &mut Ctx) -> Result<Outcome> {
    let n = cx.n();
    let eps = cx.geom.signature_sign() as i64;
    for k in 0..=n {
        let t = cx.rng.tensor(&[k])?;
        let hh = hodge(cx.geom, &hodge(cx.geom, &t, 0)?, 0)?;
        let expected = t.scale(&rat(eps * parity(k * (n - k))));
        cx.compare(format!("k={k}"), &hh, &expected)?;
    }
    Ok(Outcome::Checked)
}

fn codifferential_scalar(cx: &mut Ctx) -> Result<Outcome> {
    let f = cx.rng.scalar()?;
    let a = delta(cx.geom, &f, 0)?;
    cx.record("delta f", &a);
    let b = delta_via_dual(cx.geom, &f, 0)?;
    cx.record("eps * d * f", &b);
    Ok(Outcome::Checked)
}

fn exterior_top_form(cx: &mut Ctx) -> Result<Outcome> {
    let n = cx.n();
    let t = cx.rng.tensor(&[n])?;
    let dt = d(cx.geom, &t, 0)?;
    cx.record(format!("d of {n}-form"), &dt);
    Ok(Outcome::Checked)
}

fn codifferential_dual(cx: &mut Ctx) -> Result<Outcome> {
    let n = cx.n();
    for k in 0..=n {
        let t = cx.rng.tensor(&[k])?;
        let a = delta(cx.geom, &t, 0)?;
        let b = delta_via_dual(cx.geom, &t, 0)?;
        cx.compare(format!("k={k}"), &a, &b)?;
    }
    if n >= 2 {
        let t = cx.rng.tensor(&[2, 2])?;
        for i in 0..2 {
            let a = delta(cx.geom, &t, i)?;
            let b = delta_via_dual(cx.geom, &t, i)?;
            cx.compare(format!("(2,2) block {i}"), &a, &b)?;
        }
    }
    Ok(Outcome::Checked)
}

/// Right-hand side of the Weitzenboeck formula on a p-form, in index form.
pub(super) fn weitzenboeck(cx: &Ctx, alpha: &crate::tensor::RFoldTensor<Jet>) -> Result<Dense> {
    let g = cx.geom;
    let n = g.dim();
    let p = alpha.shape().total_rank();
    let nn = g.nabla(&g.nabla(alpha)?)?;
    let rough = Dense::from_tensor(&nn)?
        .contract(p, p + 1, g.metric())?
        .scale(&rat(-1));
    let a = Dense::from_tensor(alpha)?;
    if p == 0 {
        return Ok(rough);
    }
    let ric_up = g.ricci_array(1);
    let mut src = vec![0; p];
    let u1 = Dense::from_fn(n, p, |idx| {
        let mut acc = Jet::zero(n);
        src.copy_from_slice(idx);
        for c in 0..n {
            let r = &ric_up[c * n + idx[0]];
            if r.is_zero() {
                continue;
            }
            src[0] = c;
            acc.add_product(r, a.at(&src), false);
        }
        acc
    });
    let slots: Vec<usize> = (0..p).collect();
    let mut out = rough.add(&u1.alternate(&slots).scale(&rat(p as i64)))?;
    if p >= 2 {
        let r_up = g.riemann_array(3);
        let u2 = Dense::from_fn(n, p, |idx| {
            let mut acc = Jet::zero(n);
            src.copy_from_slice(idx);
            for c in 0..n {
                for e in 0..n {
                    let r = &r_up[((c * n + e) * n + idx[0]) * n + idx[1]];
                    if r.is_zero() {
                        continue;
                    }
                    src[0] = c;
                    src[1] = e;
                    acc.add_product(r, a.at(&src), false);
                }
            }
            acc
        });
        let coef = Rational::new((p * (p - 1) / 2) as i64, 1);
        out = out.sub(&u2.alternate(&slots).scale(&coef))?;
    }
    Ok(out)
}

fn de_rham_index_form(cx: &mut Ctx) -> Result<Outcome> {
    let n = cx.n();
    for p in 1..=n.min(3) {
        let t = cx.rng.tensor(&[p])?;
        let lhs = Dense::from_tensor(&lap_block(cx.geom, &t, 0)?)?;
        let rhs = weitzenboeck(cx, &t)?;
        cx.compare_dense(format!("p={p}"), &lhs, &rhs)?;
    }
    Ok(Outcome::Checked)
}

fn lichnerowicz_de_rham(cx: &mut Ctx) -> Result<Outcome> {
    let n = cx.n();
    for p in 0..=n {
        let t = cx.rng.tensor(&[p])?;
        let a = lichnerowicz(cx.geom, &t)?;
        let b = lap_block(cx.geom, &t, 0)?;
        cx.compare(format!("p={p}"), &a, &b)?;
    }
    Ok(Outcome::Checked)
}

fn exterior_nilpotent(cx: &mut Ctx) -> Result<Outcome> {
    let n = cx.n();
    for p in 0..=n {
        let t = cx.rng.tensor(&[p])?;
        let dd = d(cx.geom, &d(cx.geom, &t, 0)?, 0)?;
        cx.record(format!("dd p={p}"), &dd);
        let ee = delta(cx.geom, &delta(cx.geom, &t, 0)?, 0)?;
        cx.record(format!("delta delta p={p}"), &ee);
    }
    Ok(Outcome::Checked)
}
