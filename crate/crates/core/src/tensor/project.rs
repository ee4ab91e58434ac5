//! Algebraic projectors onto Riemann-candidate and Weyl-candidate tensors.

use super::shape::{indices_of, sort_sign, BlockShape, Masks, MAX_BLOCKS};
use super::{MetricAlgebra, RFoldTensor, Scalar};
use crate::error::{Error, Result};
use crate::jet::Rational;

fn require_22<S: Scalar>(t: &RFoldTensor<S>) -> Result<()> {
    if t.shape().ranks() != [2, 2] {
        return Err(Error::ShapeMismatch(format!(
            "expected a double (2,2)-form, got {}",
            t.shape()
        )));
    }
    Ok(())
}

fn key22(a: u16, b: u16) -> Masks {
    let mut k = [0; MAX_BLOCKS];
    k[0] = a;
    k[1] = b;
    k
}

/// Orthogonal projection onto tensors with `R_{abcd} = R_{[ab][cd]} =
/// R_{cdab}` and `R_{a[bcd]} = 0`: symmetrize the pairs, then remove the
/// totally antisymmetric part.
pub fn project_riemann_candidate<S: Scalar>(t: &RFoldTensor<S>) -> Result<RFoldTensor<S>> {
    require_22(t)?;
    let half = Rational::new(1, 2);
    let sym = RFoldTensor::from_fn(t.shape().clone(), t.zero_scalar().clone(), |k| {
        t.get(k).add(t.get(&key22(k[1], k[0]))).scale(&half)
    });
    let third = Rational::new(1, 3);
    Ok(RFoldTensor::from_fn(
        t.shape().clone(),
        t.zero_scalar().clone(),
        |k| {
            let s = sym.get(k).clone();
            if k[0] & k[1] != 0 {
                return s;
            }
            let idx: Vec<usize> = indices_of(k[0]).chain(indices_of(k[1])).collect();
            let (_, sign) = sort_sign(&idx);
            let mut u: Vec<usize> = idx.clone();
            u.sort_unstable();
            let m = |a: usize, b: usize, c: usize, d: usize| {
                sym.component(&[a, b, c, d]).expect("valid")
            };
            let alt = m(u[0], u[1], u[2], u[3])
                .sub(&m(u[0], u[2], u[1], u[3]))
                .add(&m(u[0], u[3], u[1], u[2]))
                .scale(&third);
            s.sub(&alt.signed(sign))
        },
    ))
}

/// Pair-exchange defect `T - tT` and first-Bianchi sums
/// `T_{abcd} + T_{acdb} + T_{adbc}` (as a (1,3)-form) of a double (2,2)-form.
pub fn riemann_candidate_defects<S: Scalar>(
    t: &RFoldTensor<S>,
) -> Result<(RFoldTensor<S>, RFoldTensor<S>)> {
    require_22(t)?;
    let pair = t.sub(&t.transpose()?)?;
    let shape = BlockShape::new(t.dim(), &[1, 3])?;
    let bianchi = RFoldTensor::from_indices(shape, t.zero_scalar().clone(), |i| {
        let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
        let v = |x: [usize; 4]| t.component(&x).expect("valid");
        v([a, b, c, d]).add(&v([a, c, d, b])).add(&v([a, d, b, c]))
    });
    Ok((pair, bianchi))
}

/// `(h o k)_{abcd} = h_ac k_bd + h_bd k_ac - h_ad k_bc - h_bc k_ad` for double
/// (1,1)-forms.
pub fn kulkarni_nomizu<S: Scalar>(
    h: &RFoldTensor<S>,
    k: &RFoldTensor<S>,
) -> Result<RFoldTensor<S>> {
    for x in [h, k] {
        if x.shape().ranks() != [1, 1] {
            return Err(Error::ShapeMismatch(format!(
                "expected a double (1,1)-form, got {}",
                x.shape()
            )));
        }
    }
    let shape = BlockShape::new(h.dim(), &[2, 2])?;
    let hh = |a: usize, b: usize| h.component(&[a, b]).expect("valid");
    let kk = |a: usize, b: usize| k.component(&[a, b]).expect("valid");
    Ok(RFoldTensor::from_indices(
        shape,
        h.zero_scalar().clone(),
        |i| {
            let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
            let mut acc = h.zero_scalar().clone();
            acc.mul_acc(&hh(a, c), &kk(b, d), false);
            acc.mul_acc(&hh(b, d), &kk(a, c), false);
            acc.mul_acc(&hh(a, d), &kk(b, c), true);
            acc.mul_acc(&hh(b, c), &kk(a, d), true);
            acc
        },
    ))
}

/// Weyl part of a Riemann candidate: the trace-free remainder after removing
/// the Ricci and scalar parts. Zero in dimension two or less.
pub fn weyl_part<S: Scalar>(
    r: &RFoldTensor<S>,
    metric: &MetricAlgebra<S>,
) -> Result<RFoldTensor<S>> {
    require_22(r)?;
    let n = r.dim() as i64;
    if n <= 2 {
        return Ok(RFoldTensor::zeros(
            r.shape().clone(),
            r.zero_scalar().clone(),
        ));
    }
    let ric = metric.trace(r)?;
    let scal = metric.trace(&ric)?.data()[0].clone();
    let g = metric.metric_tensor();
    let g_ric = kulkarni_nomizu(&g, &ric)?;
    let g_g = kulkarni_nomizu(&g, &g)?;
    let c1 = Rational::new(1, n - 2);
    let c2 = Rational::new(1, 2 * (n - 1) * (n - 2));
    let scal_part = g_g.times(&scal).scale(&c2);
    r.sub(&g_ric.scale(&c1))?.add(&scal_part)
}

/// Projection onto Weyl candidates: Riemann-candidate projection followed by
/// trace removal.
pub fn project_weyl_candidate<S: Scalar>(
    t: &RFoldTensor<S>,
    metric: &MetricAlgebra<S>,
) -> Result<RFoldTensor<S>> {
    weyl_part(&project_riemann_candidate(t)?, metric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    fn c(v: Rational) -> Jet {
        Jet::constant(1, v)
    }

    fn euclid(n: usize) -> MetricAlgebra<Jet> {
        MetricAlgebra::euclidean(n, c(Rational::ONE))
    }

    fn sample(n: usize) -> RFoldTensor<Jet> {
        let shape = BlockShape::new(n, &[2, 2]).unwrap();
        RFoldTensor::from_indices(shape, c(Rational::ZERO), |i| {
            c(Rational::integer(
                ((i[0] * 5 + i[1] * 3 + i[2] * i[3] * 7 + i[3]) % 11) as i64 - 5,
            ))
        })
    }

    #[test]
    fn riemann_projection_is_idempotent_and_satisfies_bianchi() {
        let t = sample(4);
        let p = project_riemann_candidate(&t).unwrap();
        let (pair, bianchi) = riemann_candidate_defects(&p).unwrap();
        assert!(pair.is_zero() && bianchi.is_zero());
        assert_eq!(project_riemann_candidate(&p).unwrap().data(), p.data());
        let zero = RFoldTensor::zeros(t.shape().clone(), c(Rational::ZERO));
        assert!(project_riemann_candidate(&zero).unwrap().is_zero());
    }

    #[test]
    fn metric_product_projects_to_half_the_constant_curvature_form() {
        let n = 4;
        let m = euclid(n);
        let g = m.metric_tensor();
        // g_ac g_bd as a general rank-4 tensor, antisymmetrized in each pair
        let general =
            RFoldTensor::from_indices(BlockShape::general(n, 4).unwrap(), c(Rational::ZERO), |i| {
                g.component(&[i[0], i[2]])
                    .unwrap()
                    .mul(&g.component(&[i[1], i[3]]).unwrap())
            });
        let t = general
            .antisymmetrize(0, 1)
            .unwrap()
            .antisymmetrize(1, 2)
            .unwrap();
        let p = project_riemann_candidate(&t).unwrap();
        let half_gg = kulkarni_nomizu(&g, &g).unwrap().scale(&Rational::new(1, 4));
        assert_eq!(p.data(), half_gg.data());
        let (_, bianchi) = riemann_candidate_defects(&p).unwrap();
        assert!(bianchi.is_zero());
        // constant-curvature form is conformally flat
        assert!(project_weyl_candidate(&p, &m).unwrap().is_zero());
    }

    #[test]
    fn weyl_projection_is_trace_free_and_idempotent() {
        for n in [3, 4, 5] {
            let m = euclid(n);
            let w = project_weyl_candidate(&sample(n), &m).unwrap();
            assert!(m.trace(&w).unwrap().is_zero());
            assert_eq!(project_weyl_candidate(&w, &m).unwrap().data(), w.data());
        }
    }
}
