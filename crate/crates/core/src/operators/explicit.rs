//! Closed curvature formulas for the block Laplacians and related
//! identities, evaluated directly from the Riemann tensor and `nabla nabla T`.
//! They serve as independent cross-checks of the composed operators.
//!
//! Riemann arrays are addressed by raised-slot bit patterns (see
//! [`Geometry::riemann_array`]): e.g. pattern `5` is `R^c_a^d_b`.

use super::block::{lap_block, lap_rough};
use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::jet::{Jet, Rational};
use crate::tensor::shape::sort_sign;
use crate::tensor::{BlockShape, Masks, RFoldTensor, Scalar};

struct Ctx<'a> {
    n: usize,
    g: &'a Geometry,
}

impl Ctx<'_> {
    #[inline]
    fn riem(&self, pattern: u8, a: usize, b: usize, c: usize, d: usize) -> &Jet {
        let n = self.n;
        &self.g.riemann_array(pattern)[((a * n + b) * n + c) * n + d]
    }

    #[inline]
    fn ric(&self, pattern: u8, a: usize, b: usize) -> &Jet {
        &self.g.ricci_array(pattern)[a * self.n + b]
    }
}

/// Adds `sign * coef * T(idx)` to `acc`.
#[inline]
fn acc_term(acc: &mut Jet, coef: &Jet, t: &RFoldTensor<Jet>, idx: &[usize], sign: i32) {
    if coef.is_zero() {
        return;
    }
    if let Some((v, s)) = t.lookup(idx) {
        if !v.is_zero() {
            acc.mul_acc(coef, v, s * sign < 0);
        }
    }
}

#[inline]
fn parity(k: usize) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Calls `f(seq, sign)` for every way of distributing the (increasing)
/// labels into consecutive groups of the given sizes, each group increasing;
/// `seq` is the concatenation and `sign` its permutation sign.
fn for_splits(labels: &[usize], sizes: &[usize], f: &mut impl FnMut(&[usize], i32)) {
    fn go(
        rest: &[usize],
        sizes: &[usize],
        seq: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize], i32),
    ) {
        let Some((&k, more)) = sizes.split_first() else {
            let (_, s) = sort_sign(seq);
            f(seq, s);
            return;
        };
        let m = rest.len();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let base = seq.len();
            let mut left = Vec::with_capacity(m - k);
            for (j, &x) in rest.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    seq.push(x);
                } else {
                    left.push(x);
                }
            }
            go(&left, more, seq, f);
            seq.truncate(base);
        }
    }
    debug_assert_eq!(sizes.iter().sum::<usize>(), labels.len());
    let mut seq = Vec::with_capacity(labels.len());
    go(labels, sizes, &mut seq, f);
}

fn block_start(shape: &BlockShape, i: usize) -> usize {
    shape.ranks()[..i].iter().sum()
}

/// Builds a tensor whose canonical components are `base + f(idx)`.
fn build(
    shape: BlockShape,
    zero: &Jet,
    base: Option<&RFoldTensor<Jet>>,
    mut f: impl FnMut(&[usize], &mut Jet),
) -> RFoldTensor<Jet> {
    let s2 = shape.clone();
    RFoldTensor::from_fn(shape, zero.clone(), |key: &Masks| {
        let idx = s2.indices(key);
        let mut acc = match base {
            Some(b) => b.get(key).clone(),
            None => zero.clone(),
        };
        f(&idx, &mut acc);
        acc
    })
}

fn require_double(t: &RFoldTensor<Jet>) -> Result<(usize, usize)> {
    if t.r() != 2 {
        return Err(Error::ShapeMismatch(format!(
            "expected a double form, got {}",
            t.shape()
        )));
    }
    Ok((t.shape().block_rank(0), t.shape().block_rank(1)))
}

/// Lichnerowicz operator `-nabla^2 T + sum_s R^c_{a_s} T_{..c..}
/// - sum_{s != t} R^c_{a_s}^d_{a_t} T_{..c..d..}`, slots taken in order.
pub fn lichnerowicz(geom: &Geometry, t: &RFoldTensor<Jet>) -> Result<RFoldTensor<Jet>> {
    let rough = lap_rough(geom, t)?;
    let cx = Ctx {
        n: geom.dim(),
        g: geom,
    };
    let n = cx.n;
    Ok(build(
        t.shape().clone(),
        t.zero_scalar(),
        Some(&rough),
        |idx, acc| {
            let m = idx.len();
            let mut buf = idx.to_vec();
            for s in 0..m {
                for c in 0..n {
                    buf[s] = c;
                    acc_term(acc, cx.ric(1, c, idx[s]), t, &buf, 1);
                }
                buf[s] = idx[s];
            }
            for s in 0..m {
                for u in 0..m {
                    if s == u {
                        continue;
                    }
                    for c in 0..n {
                        buf[s] = c;
                        for dd in 0..n {
                            buf[u] = dd;
                            acc_term(acc, cx.riem(5, c, idx[s], dd, idx[u]), t, &buf, -1);
                        }
                    }
                    buf[s] = idx[s];
                    buf[u] = idx[u];
                }
            }
        },
    ))
}

/// `Delta_(i)` from its curvature expansion: `-nabla^2 T`, Ricci terms on the
/// block, Riemann terms on pairs inside the block, and Riemann terms coupling
/// the block to every other slot.
pub fn lap_block_explicit(
    geom: &Geometry,
    t: &RFoldTensor<Jet>,
    i: usize,
) -> Result<RFoldTensor<Jet>> {
    let shape = t.shape().clone();
    let rough = lap_rough(geom, t)?;
    if i >= shape.r() {
        return Ok(rough);
    }
    let cx = Ctx {
        n: geom.dim(),
        g: geom,
    };
    let n = cx.n;
    let st = block_start(&shape, i);
    let p = shape.block_rank(i);
    Ok(build(shape, t.zero_scalar(), Some(&rough), |idx, acc| {
        let b: Vec<usize> = idx[st..st + p].to_vec();
        let mut buf = idx.to_vec();
        // block i rewritten as (x, y, rest) or (x, rest)
        let set_block = |buf: &mut Vec<usize>, front: &[usize], skip: &[usize]| {
            let mut at = st;
            for &x in front {
                buf[at] = x;
                at += 1;
            }
            for (j, &x) in b.iter().enumerate() {
                if !skip.contains(&j) {
                    buf[at] = x;
                    at += 1;
                }
            }
        };
        for j in 0..p {
            for c in 0..n {
                set_block(&mut buf, &[c], &[j]);
                acc_term(acc, cx.ric(1, c, b[j]), t, &buf, parity(j));
            }
        }
        for j in 0..p {
            for k in j + 1..p {
                for c in 0..n {
                    for dd in 0..n {
                        set_block(&mut buf, &[c, dd], &[j, k]);
                        acc_term(
                            acc,
                            cx.riem(3, c, dd, b[j], b[k]),
                            t,
                            &buf,
                            -parity(j + k + 1),
                        );
                    }
                }
            }
        }
        for s in (0..idx.len()).filter(|&s| s < st || s >= st + p) {
            for j in 0..p {
                for c in 0..n {
                    for dd in 0..n {
                        set_block(&mut buf, &[dd], &[j]);
                        buf[s] = c;
                        acc_term(acc, cx.riem(5, c, idx[s], dd, b[j]), t, &buf, -parity(j));
                    }
                }
                buf[s] = idx[s];
            }
        }
    }))
}

/// `Delta_(i)` by composition, cross-checked against [`lap_block_explicit`].
pub fn lap_block_checked(
    geom: &Geometry,
    t: &RFoldTensor<Jet>,
    i: usize,
) -> Result<RFoldTensor<Jet>> {
    let composed = lap_block(geom, t, i)?;
    let explicit = lap_block_explicit(geom, t, i)?;
    let diff = composed.sub(&explicit)?;
    if let Some((idx, _)) = diff.first_nonzero() {
        return Err(Error::Inconsistent(format!(
            "block Laplacian on block {i} of {}: composition and curvature formula differ at {idx:?}",
            t.shape()
        )));
    }
    Ok(composed)
}

/// `(1/r) Delta_L T + ((r-1)/r)(-nabla^2 T)`.
pub fn lap_weighted_relation(geom: &Geometry, t: &RFoldTensor<Jet>) -> Result<RFoldTensor<Jet>> {
    let r = t.r().max(1) as i64;
    let l = lichnerowicz(geom, t)?.scale(&Rational::new(1, r));
    let rough = lap_rough(geom, t)?.scale(&Rational::new(r - 1, r));
    l.add(&rough)
}

/// Right-hand side of the `d_(i)^2` curvature identity:
/// `(1/2)(k+1)(k+2) sum_s R^{a_s}_{c[b_{k+1} b_{k+2}} T^{..c..}_{b_1..b_k]}`,
/// the sum running over the slots outside block `i`.
pub fn d2_curvature(geom: &Geometry, t: &RFoldTensor<Jet>, i: usize) -> Result<RFoldTensor<Jet>> {
    let shape = t.shape();
    shape.check_block(i)?;
    let k = shape.block_rank(i);
    let out = shape.with_rank(i, k + 2)?;
    let cx = Ctx {
        n: geom.dim(),
        g: geom,
    };
    let n = cx.n;
    let st = block_start(shape, i);
    let zero = t.zero_scalar().clone();
    Ok(build(out, &zero, None, |idx, acc| {
        let labels: Vec<usize> = idx[st..st + k + 2].to_vec();
        let mut buf: Vec<usize> = idx[..st]
            .iter()
            .chain(&labels[..k])
            .chain(&idx[st + k + 2..])
            .copied()
            .collect();
        for_splits(&labels, &[k, 2], &mut |seq, sign| {
            buf[st..st + k].copy_from_slice(&seq[..k]);
            let (x, y) = (seq[k], seq[k + 1]);
            for s in (0..buf.len()).filter(|&s| s < st || s >= st + k) {
                let a = buf[s];
                for c in 0..n {
                    buf[s] = c;
                    // R_{a_s}^c_{xy} = -R^c_{a_s xy}
                    acc_term(acc, cx.riem(1, c, a, x, y), t, &buf, -sign);
                }
                buf[s] = a;
            }
        });
    }))
}

/// Right-hand side of the `delta_(i)^2` curvature identity:
/// `-(1/2) sum_s R^{a_s}_c^{de} T^{..c..}_{d e b_1..b_{k-2}}`.
pub fn delta2_curvature(
    geom: &Geometry,
    t: &RFoldTensor<Jet>,
    i: usize,
) -> Result<RFoldTensor<Jet>> {
    let shape = t.shape();
    shape.check_block(i)?;
    let k = shape.block_rank(i);
    if k < 2 {
        return Ok(RFoldTensor::zeros(
            shape.with_rank(i, 0)?,
            t.zero_scalar().clone(),
        ));
    }
    let out = shape.with_rank(i, k - 2)?;
    let cx = Ctx {
        n: geom.dim(),
        g: geom,
    };
    let n = cx.n;
    let st = block_start(shape, i);
    let zero = t.zero_scalar().clone();
    Ok(build(out, &zero, None, |idx, acc| {
        let mut buf: Vec<usize> = idx[..st]
            .iter()
            .chain(&[0, 0])
            .chain(&idx[st..])
            .copied()
            .collect();
        let m = buf.len();
        for s in (0..m).filter(|&s| s < st || s >= st + k) {
            let a = buf[s];
            for c in 0..n {
                buf[s] = c;
                for dd in 0..n {
                    for e in dd + 1..n {
                        buf[st] = dd;
                        buf[st + 1] = e;
                        // (1/2) sum over ordered (d, e) = sum over d < e
                        acc_term(acc, cx.riem(14, a, c, dd, e), t, &buf, -1);
                    }
                }
            }
            buf[s] = a;
        }
    }))
}

/// Which double-form Laplacian to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Block1,
    Block2,
    Weighted,
}

/// How to read the mixed curvature term `R^{[a_1}_{cd[b_1} T^{a_2..a_q]cd}_{b_2..b_p]}`
/// of the double-form formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossTerm {
    /// `c` written after `a_2..a_q`, as the formula is printed.
    Printed,
    /// `c` in the slot vacated by `a_1`, as obtained from the Lichnerowicz
    /// operator; differs from `Printed` by `(-1)^(q-1)`.
    InPlace,
}

impl CrossTerm {
    fn sign(self, q: usize) -> i64 {
        match self {
            CrossTerm::Printed => 1,
            CrossTerm::InPlace => parity(q.saturating_sub(1)) as i64,
        }
    }
}

/// The five curvature contractions appearing in the double-form formulas,
/// each written as a plain signed sum over splittings of the labels.
struct DoubleTerms {
    ric1: Jet,
    ric2: Jet,
    pair1: Jet,
    pair2: Jet,
    cross: Jet,
}

fn double_terms(cx: &Ctx, t: &RFoldTensor<Jet>, idx: &[usize], q: usize, p: usize) -> DoubleTerms {
    let n = cx.n;
    let zero = t.zero_scalar();
    let a = &idx[..q];
    let b = &idx[q..];
    let mut out = DoubleTerms {
        ric1: zero.clone(),
        ric2: zero.clone(),
        pair1: zero.clone(),
        pair2: zero.clone(),
        cross: zero.clone(),
    };
    let mut buf = vec![0; q + p];
    // q R^{c[a_1} T_c^{a_2..a_q]}
    if q > 0 {
        for_splits(a, &[1, q - 1], &mut |seq, sign| {
            buf[1..q].copy_from_slice(&seq[1..]);
            buf[q..].copy_from_slice(b);
            for c in 0..n {
                buf[0] = c;
                acc_term(&mut out.ric1, cx.ric(1, c, seq[0]), t, &buf, sign);
            }
        });
    }
    // p R_{c[b_1} T^{..c}_{b_2..b_p]}
    if p > 0 {
        for_splits(b, &[1, p - 1], &mut |seq, sign| {
            buf[..q].copy_from_slice(a);
            buf[q + 1..].copy_from_slice(&seq[1..]);
            for c in 0..n {
                buf[q] = c;
                acc_term(&mut out.ric2, cx.ric(1, c, seq[0]), t, &buf, sign);
            }
        });
    }
    // q(q-1)/2 R^{cd[a_1 a_2} T_{cd}^{a_3..a_q]}
    if q >= 2 {
        for_splits(a, &[2, q - 2], &mut |seq, sign| {
            buf[2..q].copy_from_slice(&seq[2..]);
            buf[q..].copy_from_slice(b);
            for c in 0..n {
                for dd in 0..n {
                    buf[0] = c;
                    buf[1] = dd;
                    acc_term(
                        &mut out.pair1,
                        cx.riem(3, c, dd, seq[0], seq[1]),
                        t,
                        &buf,
                        sign,
                    );
                }
            }
        });
    }
    if p >= 2 {
        for_splits(b, &[2, p - 2], &mut |seq, sign| {
            buf[..q].copy_from_slice(a);
            buf[q + 2..].copy_from_slice(&seq[2..]);
            for c in 0..n {
                for dd in 0..n {
                    buf[q] = c;
                    buf[q + 1] = dd;
                    acc_term(
                        &mut out.pair2,
                        cx.riem(3, c, dd, seq[0], seq[1]),
                        t,
                        &buf,
                        sign,
                    );
                }
            }
        });
    }
    // qp R^{[a_1}_{cd[b_1} T^{a_2..a_q]cd}_{b_2..b_p]}
    if q >= 1 && p >= 1 {
        for_splits(a, &[1, q - 1], &mut |sa, s1| {
            for_splits(b, &[1, p - 1], &mut |sb, s2| {
                buf[..q - 1].copy_from_slice(&sa[1..]);
                buf[q + 1..].copy_from_slice(&sb[1..]);
                for c in 0..n {
                    for dd in 0..n {
                        buf[q - 1] = c;
                        buf[q] = dd;
                        acc_term(
                            &mut out.cross,
                            cx.riem(6, sa[0], c, dd, sb[0]),
                            t,
                            &buf,
                            s1 * s2,
                        );
                    }
                }
            });
        });
    }
    out
}

fn combine(acc: &mut Jet, terms: &DoubleTerms, coefs: [Rational; 5]) {
    for (x, c) in [
        &terms.ric1,
        &terms.ric2,
        &terms.pair1,
        &terms.pair2,
        &terms.cross,
    ]
    .into_iter()
    .zip(coefs)
    {
        if !c.is_zero() {
            acc.add_assign(&x.scale(&c));
        }
    }
}

fn double_formula(
    geom: &Geometry,
    t: &RFoldTensor<Jet>,
    with_rough: bool,
    coefs: impl Fn(usize, usize) -> [Rational; 5],
) -> Result<RFoldTensor<Jet>> {
    let (q, p) = require_double(t)?;
    let base = if with_rough {
        Some(lap_rough(geom, t)?)
    } else {
        None
    };
    let cx = Ctx {
        n: geom.dim(),
        g: geom,
    };
    let c = coefs(q, p);
    Ok(build(
        t.shape().clone(),
        t.zero_scalar(),
        base.as_ref(),
        |idx, acc| {
            let terms = double_terms(&cx, t, idx, q, p);
            combine(acc, &terms, c.clone());
        },
    ))
}

fn r(x: i64) -> Rational {
    Rational::integer(x)
}

/// The closed formulas for `Delta_(1)`, `Delta_(2)` and the weighted
/// operator on a double `(q,p)`-form.
pub fn double_form_laplacian(
    geom: &Geometry,
    t: &RFoldTensor<Jet>,
    which: Which,
    cross: CrossTerm,
) -> Result<RFoldTensor<Jet>> {
    let half = Rational::new(1, 2);
    double_formula(geom, t, true, |q, _| {
        let x = r(cross.sign(q));
        match which {
            Which::Block1 => [r(1), r(0), r(-1), r(0), x],
            Which::Block2 => [r(0), r(1), r(0), r(-1), x],
            Which::Weighted => [half.clone(), half.clone(), -&half, -&half, x],
        }
    })
}

/// The weighted operator on the five tabulated double-form shapes
/// `(1,1)`, `(2,1)`, `(2,2)`, `(2,3)`, `(2,4)`, with coefficients as
/// tabulated for `-(bar Delta T)` against the antisymmetrized products.
pub fn five_case_laplacian(
    geom: &Geometry,
    t: &RFoldTensor<Jet>,
    cross: CrossTerm,
) -> Result<RFoldTensor<Jet>> {
    let (q, p) = require_double(t)?;
    // coefficients of R^{c[a}T_c.., R_{c[b}T..c.., R^{cd[aa}T_cd.., R_{cd[bb}T..cd.., R^{[a}_{cd[b}T..cd..
    let half = |x: i64| Rational::new(x, 2);
    #[rustfmt::skip]
    let printed: [Rational; 5] = match (q, p) {
        (1, 1) => [half(-1), half(-1), r(0), r(0), r(-1)],
        (2, 1) => [r(-1), half(-1), half(1), r(0), r(-2)],
        (2, 2) => [r(-1), r(-1), half(1), half(1), r(-4)],
        (2, 3) => [r(-1), half(-3), half(1), half(3), r(-6)],
        (2, 4) => [r(-1), r(-2), half(1), r(3), r(-8)],
        _ => {
            return Err(Error::ShapeMismatch(format!(
                "no tabulated case for a ({q},{p})-form"
            )))
        }
    };
    // each antisymmetrized product is the plain split sum over its count of splittings
    let norms = [
        q,
        p,
        q * q.saturating_sub(1) / 2,
        p * p.saturating_sub(1) / 2,
        q * p,
    ];
    let coefs: Vec<Rational> = printed
        .iter()
        .zip(norms)
        .map(|(c, m)| {
            if c.is_zero() {
                r(0)
            } else {
                -&(c / &r(m as i64))
            }
        })
        .collect();
    let mut coefs: [Rational; 5] = coefs.try_into().expect("five");
    coefs[4] = &coefs[4] * &r(cross.sign(q));
    double_formula(geom, t, true, |_, _| coefs.clone())
}

/// Closed formula for `Delta_(1) T - Delta_(2) T` on a double form.
pub fn lap_difference_explicit(geom: &Geometry, t: &RFoldTensor<Jet>) -> Result<RFoldTensor<Jet>> {
    double_formula(geom, t, false, |_, _| [r(1), r(-1), r(-1), r(1), r(0)])
}

fn double_out(t: &RFoldTensor<Jet>, dq: isize, dp: isize) -> Result<(usize, usize, BlockShape)> {
    let (q, p) = require_double(t)?;
    let (nq, np) = (q as isize + dq, p as isize + dp);
    if nq < 0 || np < 0 {
        return Err(Error::ShapeMismatch(format!(
            "commutator undefined on a ({q},{p})-form"
        )));
    }
    Ok((q, p, BlockShape::new(t.dim(), &[nq as usize, np as usize])?))
}

/// Printed right-hand side for `[d_(1), d_(2)] T` on a double `(q,p)`-form.
pub fn commutator_d1_d2_printed(geom: &Geometry, t: &RFoldTensor<Jet>) -> Result<RFoldTensor<Jet>> {
    let (q, p, out) = double_out(t, 1, 1)?;
    let cx = Ctx {
        n: geom.dim(),
        g: geom,
    };
    let n = cx.n;
    let sign = parity(p + q);
    let zero = t.zero_scalar().clone();
    Ok(build(out, &zero, None, |idx, acc| {
        let a = &idx[..q + 1];
        let b = &idx[q + 1..];
        let mut buf = vec![0; q + p];
        // q R_{c[b_{p+1}}^{[a_q a_{q+1}} T^{a_1..a_{q-1}]c}_{b_1..b_p]}
        if q >= 1 {
            for_splits(a, &[q - 1, 2], &mut |sa, s1| {
                for_splits(b, &[p, 1], &mut |sb, s2| {
                    buf[..q - 1].copy_from_slice(&sa[..q - 1]);
                    buf[q..].copy_from_slice(&sb[..p]);
                    for c in 0..n {
                        buf[q - 1] = c;
                        acc_term(
                            acc,
                            cx.riem(1, c, sb[p], sa[q - 1], sa[q]),
                            t,
                            &buf,
                            sign * s1 * s2,
                        );
                    }
                });
            });
        }
        // -p R^{c[a_{q+1}}_{[b_p b_{p+1}} T^{a_1..a_q]}_{b_1..b_{p-1}]c}
        if p >= 1 {
            for_splits(a, &[q, 1], &mut |sa, s1| {
                for_splits(b, &[p - 1, 2], &mut |sb, s2| {
                    buf[..q].copy_from_slice(&sa[..q]);
                    buf[q..q + p - 1].copy_from_slice(&sb[..p - 1]);
                    for c in 0..n {
                        buf[q + p - 1] = c;
                        acc_term(
                            acc,
                            cx.riem(1, c, sa[q], sb[p - 1], sb[p]),
                            t,
                            &buf,
                            -sign * s1 * s2,
                        );
                    }
                });
            });
        }
    }))
}

/// Printed right-hand side for `[d_(1), delta_(2)] T` on a double
/// `(q,p)`-form, read with the free indices lowered in place.
pub fn commutator_d1_delta2_printed(
    geom: &Geometry,
    t: &RFoldTensor<Jet>,
) -> Result<RFoldTensor<Jet>> {
    let (q, p, out) = double_out(t, 1, -1)?;
    let cx = Ctx {
        n: geom.dim(),
        g: geom,
    };
    let n = cx.n;
    let sign = parity(q);
    let half = Rational::new(1, 2);
    let zero = t.zero_scalar().clone();
    Ok(build(out, &zero, None, |idx, acc| {
        let a = &idx[..q + 1];
        let b = &idx[q + 1..];
        let mut buf = vec![0; q + p];
        // (q/2) R^c_d^{[a_q a_{q+1}} T^{a_1..a_{q-1}]d}_{c b_1..b_{p-1}}
        if q >= 1 {
            for_splits(a, &[q - 1, 2], &mut |sa, s1| {
                buf[..q - 1].copy_from_slice(&sa[..q - 1]);
                buf[q + 1..].copy_from_slice(b);
                for c in 0..n {
                    for dd in 0..n {
                        buf[q - 1] = dd;
                        buf[q] = c;
                        acc_term(acc, cx.riem(3, c, dd, sa[q - 1], sa[q]), t, &buf, sign * s1);
                    }
                }
            });
        }
        // ((p-1)/2) R^{cd}_{[b_1}^{[a_{q+1}} T^{a_1..a_q]}_{b_2..b_{p-1}]cd}
        if p >= 2 {
            let mut part = zero.clone();
            for_splits(a, &[q, 1], &mut |sa, s1| {
                for_splits(b, &[1, p - 2], &mut |sb, s2| {
                    buf[..q].copy_from_slice(&sa[..q]);
                    buf[q..q + p - 2].copy_from_slice(&sb[1..]);
                    for c in 0..n {
                        for dd in 0..n {
                            buf[q + p - 2] = c;
                            buf[q + p - 1] = dd;
                            acc_term(
                                &mut part,
                                cx.riem(3, c, dd, sb[0], sa[q]),
                                t,
                                &buf,
                                sign * s1 * s2,
                            );
                        }
                    }
                });
            });
            acc.add_assign(&part.scale(&half));
        }
        // R^{d[a_{q+1}} T^{a_1..a_q]}_{d b_1..b_{p-1}}
        for_splits(a, &[q, 1], &mut |sa, s1| {
            buf[..q].copy_from_slice(&sa[..q]);
            buf[q + 1..].copy_from_slice(b);
            for dd in 0..n {
                buf[q] = dd;
                acc_term(acc, cx.ric(1, dd, sa[q]), t, &buf, sign * s1);
            }
        });
    }))
}

/// `[d_(1), delta_(2)] T` derived from the Ricci identity:
/// `-sum_j (-1)^j g^{cc'} ([nabla_{a_j}, nabla_{c'}] T)_{A\a_j, c B}` with
/// `[nabla_x, nabla_y] T = sum_s R^d_{u_s y x} T_{..d..}`.
pub fn commutator_d1_delta2_derived(
    geom: &Geometry,
    t: &RFoldTensor<Jet>,
) -> Result<RFoldTensor<Jet>> {
    let (q, _, out) = double_out(t, 1, -1)?;
    let cx = Ctx {
        n: geom.dim(),
        g: geom,
    };
    let n = cx.n;
    let zero = t.zero_scalar().clone();
    Ok(build(out, &zero, None, |idx, acc| {
        let a = &idx[..q + 1];
        let b = &idx[q + 1..];
        for j in 0..=q {
            let mut u: Vec<usize> = a
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != j)
                .map(|(_, &x)| x)
                .collect();
            u.push(0);
            u.extend_from_slice(b);
            for c in 0..n {
                u[q] = c;
                let mut buf = u.clone();
                for s in 0..u.len() {
                    for dd in 0..n {
                        buf[s] = dd;
                        acc_term(acc, cx.riem(5, dd, u[s], c, a[j]), t, &buf, -parity(j));
                    }
                    buf[s] = u[s];
                }
            }
        }
    }))
}

/// Printed right-hand side for `[delta_(1), delta_(2)] T` on a double form.
pub fn commutator_delta1_delta2_printed(
    geom: &Geometry,
    t: &RFoldTensor<Jet>,
) -> Result<RFoldTensor<Jet>> {
    let (q, p, out) = double_out(t, -1, -1)?;
    let cx = Ctx {
        n: geom.dim(),
        g: geom,
    };
    let n = cx.n;
    let half = Rational::new(1, 2);
    let zero = t.zero_scalar().clone();
    Ok(build(out, &zero, None, |idx, acc| {
        let a = &idx[..q - 1];
        let b = &idx[q - 1..];
        let mut buf = vec![0; q + p];
        let mut part = zero.clone();
        // ((p-1)/2) R^{ce}_{d[b_1} T^{d a_1..a_{q-1}}_{b_2..b_{p-1}]ce}
        if p >= 2 {
            for_splits(b, &[1, p - 2], &mut |sb, s2| {
                buf[1..q].copy_from_slice(a);
                buf[q..q + p - 2].copy_from_slice(&sb[1..]);
                for c in 0..n {
                    for e in 0..n {
                        for dd in 0..n {
                            buf[0] = dd;
                            buf[q + p - 2] = c;
                            buf[q + p - 1] = e;
                            acc_term(&mut part, cx.riem(7, c, e, dd, sb[0]), t, &buf, s2);
                        }
                    }
                }
            });
        }
        // -((q-1)/2) R_{ce}^{d[a_1} T^{a_2..a_{q-1}]ce}_{d b_1..b_{p-1}}
        if q >= 2 {
            for_splits(a, &[1, q - 2], &mut |sa, s1| {
                buf[..q - 2].copy_from_slice(&sa[1..]);
                buf[q + 1..].copy_from_slice(b);
                for c in 0..n {
                    for e in 0..n {
                        for dd in 0..n {
                            buf[q - 2] = c;
                            buf[q - 1] = e;
                            buf[q] = dd;
                            acc_term(&mut part, cx.riem(7, c, e, dd, sa[0]), t, &buf, -s1);
                        }
                    }
                }
            });
        }
        acc.add_assign(&part.scale(&half));
    }))
}
