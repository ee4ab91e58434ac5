//! `d_(i)`, `delta_(i)`, `Delta_(i)`, the weighted operator and the block Hodge
//! dual, built from the covariant derivative.
//!
//! Block indices are 0-based. Index `r` (one past the last block) is the
//! extra block: `d_(r)` is the covariant derivative with its slot appended,
//! `delta_(l)` vanishes for every `l >= r`.

use super::Background;
use crate::error::{Error, Result};
use crate::jet::Rational;
use crate::tensor::shape::{indices_of, shuffle_sign, MAX_BLOCKS};
use crate::tensor::{RFoldTensor, Scalar};

fn zeros_like<S: Scalar>(t: &RFoldTensor<S>, shape: crate::tensor::BlockShape) -> RFoldTensor<S> {
    RFoldTensor::zeros(shape, t.zero_scalar().clone())
}

/// `(d_(i) T)_{..b_0..b_k..} = sum_j (-1)^j nabla_{b_j} T_{..b_0..^b_j..b_k..}`.
/// Consumes one jet order. Zero (with an empty block) when the block
/// already has full rank.
pub fn d<B: Background>(bg: &B, t: &RFoldTensor<B::S>, i: usize) -> Result<RFoldTensor<B::S>> {
    let shape = t.shape();
    let r = shape.r();
    if i == r {
        return bg.nabla(t);
    }
    shape.check_block(i)?;
    let out = shape.with_rank(i, shape.block_rank(i) + 1)?;
    if out.is_empty() {
        return Ok(zeros_like(t, out));
    }
    let nt = bg.nabla(t)?;
    Ok(RFoldTensor::from_fn(out, t.zero_scalar().clone(), |key| {
        let mut src = [0u16; MAX_BLOCKS];
        src[..r].copy_from_slice(&key[..r]);
        let mut acc = t.zero_scalar().clone();
        for (j, b) in indices_of(key[i]).enumerate() {
            src[i] = key[i] & !(1 << b);
            src[r] = 1 << b;
            acc.add_signed(nt.get(&src), if j % 2 == 0 { 1 } else { -1 });
        }
        acc
    }))
}

/// `(delta_(i) T)_{..b_2..b_k..} = -nabla^c T_{..c b_2..b_k..}`. Rank-zero
/// and extra blocks give zero of the input shape. Consumes one jet order.
pub fn delta<B: Background>(bg: &B, t: &RFoldTensor<B::S>, i: usize) -> Result<RFoldTensor<B::S>> {
    let shape = t.shape();
    let r = shape.r();
    if i >= r || shape.block_rank(i) == 0 {
        return Ok(zeros_like(t, shape.clone()));
    }
    let nt = bg.nabla(t)?;
    let c = bg.metric().contract(&nt, (i, 0), (r, 0))?;
    Ok(c.reshaped(shape.with_rank(i, shape.block_rank(i) - 1)?)?
        .neg())
}

/// `d_(i)` applied `m` times.
pub fn d_power<B: Background>(
    bg: &B,
    t: &RFoldTensor<B::S>,
    i: usize,
    m: usize,
) -> Result<RFoldTensor<B::S>> {
    (0..m).try_fold(t.clone(), |acc, _| d(bg, &acc, i))
}

/// `delta_(i)` applied `m` times.
pub fn delta_power<B: Background>(
    bg: &B,
    t: &RFoldTensor<B::S>,
    i: usize,
    m: usize,
) -> Result<RFoldTensor<B::S>> {
    (0..m).try_fold(t.clone(), |acc, _| delta(bg, &acc, i))
}

/// Rough Laplacian `-nabla^c nabla_c T`.
pub fn lap_rough<B: Background>(bg: &B, t: &RFoldTensor<B::S>) -> Result<RFoldTensor<B::S>> {
    let r = t.r();
    delta(bg, &d(bg, t, r)?, r)?.reshaped(t.shape().clone())
}

/// `Delta_(i) = d_(i) delta_(i) + delta_(i) d_(i)` by composition; the rough
/// Laplacian for an extra block. Consumes two jet orders.
pub fn lap_block<B: Background>(
    bg: &B,
    t: &RFoldTensor<B::S>,
    i: usize,
) -> Result<RFoldTensor<B::S>> {
    let r = t.r();
    if i >= r {
        return lap_rough(bg, t);
    }
    let mut out = delta(bg, &d(bg, t, i)?, i)?;
    if t.shape().block_rank(i) > 0 {
        out.add_assign(&d(bg, &delta(bg, t, i)?, i)?)?;
    }
    Ok(out)
}

/// Weighted de Rham operator `(1/r) sum_i Delta_(i)`, collapsed blocks
/// included; the rough Laplacian when there are no blocks.
pub fn lap_weighted<B: Background>(bg: &B, t: &RFoldTensor<B::S>) -> Result<RFoldTensor<B::S>> {
    let r = t.r();
    if r == 0 {
        return lap_rough(bg, t);
    }
    let mut acc = lap_block(bg, t, 0)?;
    for i in 1..r {
        acc.add_assign(&lap_block(bg, t, i)?)?;
    }
    Ok(acc.scale(&Rational::new(1, r as i64)))
}

/// Hodge dual on block `i`: `(*_(i) T)_{..C..} = (1/k!) eta_{B C} T^{..B..}`.
/// The block keeps its position and gets rank `n - k`.
pub fn hodge<B: Background>(bg: &B, t: &RFoldTensor<B::S>, i: usize) -> Result<RFoldTensor<B::S>> {
    let shape = t.shape();
    shape.check_block(i)?;
    let n = shape.dim();
    let k = shape.block_rank(i);
    if k > n {
        return Err(Error::ShapeMismatch(format!(
            "block {i} of rank {k} exceeds dimension {n}"
        )));
    }
    let raised = bg.metric().raise_block(t, i)?;
    let full = ((1u32 << n) - 1) as u16;
    let vol = bg.volume();
    Ok(RFoldTensor::from_fn(
        shape.with_rank(i, n - k)?,
        t.zero_scalar().clone(),
        |key| {
            let mut src = *key;
            src[i] = full & !key[i];
            let v = raised.get(&src);
            if v.is_zero() {
                return t.zero_scalar().clone();
            }
            vol.mul(v).signed(shuffle_sign(src[i], key[i]))
        },
    ))
}

/// Inverse of [`hodge`] on block `i`.
pub fn hodge_inverse<B: Background>(
    bg: &B,
    t: &RFoldTensor<B::S>,
    i: usize,
) -> Result<RFoldTensor<B::S>> {
    t.shape().check_block(i)?;
    let n = t.dim();
    let m = t.shape().block_rank(i);
    let k = n.saturating_sub(m);
    let sign = bg.signature_sign() * if (k * m) % 2 == 0 { 1 } else { -1 };
    Ok(hodge(bg, t, i)?.scale(&Rational::integer(sign as i64)))
}

/// `delta_(i) = eps (-1)^{(n-k)(k-1)+1} *_(i) d_(i) *_(i)` on a block of rank `k`.
pub fn delta_via_dual<B: Background>(
    bg: &B,
    t: &RFoldTensor<B::S>,
    i: usize,
) -> Result<RFoldTensor<B::S>> {
    let shape = t.shape();
    shape.check_block(i)?;
    let n = shape.dim() as i64;
    let k = shape.block_rank(i) as i64;
    if k == 0 {
        return Ok(zeros_like(t, shape.clone()));
    }
    let inner = d(bg, &hodge(bg, t, i)?, i)?;
    let out = hodge(bg, &inner, i)?;
    let exp = (n - k) * (k - 1) + 1;
    let sign = bg.signature_sign() as i64 * if exp % 2 == 0 { 1 } else { -1 };
    Ok(out.scale(&Rational::integer(sign)))
}
