//! Index raising and contraction with a metric at a point (a jet metric, or
//! the flat Euclidean metric on torus modes).

use super::shape::{indices_of, insert_at, shape_table_masks, BlockShape, Masks};
use super::{RFoldTensor, Scalar};
use crate::error::{Error, Result};
use crate::jet::Rational;

#[derive(Clone, Debug)]
pub struct MetricAlgebra<S> {
    dim: usize,
    g: Vec<Vec<S>>,
    ginv: Vec<Vec<S>>,
    /// `lambda[k][A][B]`: the `k x k` minor of the inverse metric on rows `A`,
    /// columns `B` (canonical `k`-subsets). Raising a whole rank-`k` block
    /// is multiplication by this matrix.
    lambda: Vec<Vec<Vec<S>>>,
    identity: bool,
    zero: S,
}

fn minor<S: Scalar>(m: &[Vec<S>], rows: &[usize], cols: &[usize], zero: &S) -> S {
    match rows.len() {
        0 => unreachable!("rank-zero minors are handled by the caller"),
        1 => m[rows[0]][cols[0]].clone(),
        k => {
            // Laplace expansion along the first row
            let mut acc = zero.clone();
            for j in 0..k {
                let a = &m[rows[0]][cols[j]];
                if a.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, &c)| c)
                    .collect();
                let sub = minor(m, &rows[1..], &sub_cols, zero);
                acc.mul_acc(a, &sub, j % 2 == 1);
            }
            acc
        }
    }
}

impl<S: Scalar> MetricAlgebra<S> {
    /// `one` is the unit scalar (used for rank-zero blocks).
    pub fn new(g: Vec<Vec<S>>, ginv: Vec<Vec<S>>, one: S) -> MetricAlgebra<S> {
        let dim = g.len();
        let zero = one.zero_like();
        let lambda = (0..=dim)
            .map(|k| {
                let subsets = shape_table_masks(dim, k);
                subsets
                    .iter()
                    .map(|&a| {
                        let rows: Vec<usize> = indices_of(a).collect();
                        subsets
                            .iter()
                            .map(|&b| {
                                if k == 0 {
                                    return one.clone();
                                }
                                let cols: Vec<usize> = indices_of(b).collect();
                                minor(&ginv, &rows, &cols, &zero)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        MetricAlgebra {
            dim,
            g,
            ginv,
            lambda,
            identity: false,
            zero,
        }
    }

    /// The flat Euclidean metric `delta_ab`.
    pub fn euclidean(dim: usize, one: S) -> MetricAlgebra<S> {
        let zero = one.zero_like();
        let eye: Vec<Vec<S>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        MetricAlgebra {
            dim,
            g: eye.clone(),
            ginv: eye,
            lambda: Vec::new(),
            identity: true,
            zero,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn g(&self) -> &[Vec<S>] {
        &self.g
    }

    pub fn ginv(&self) -> &[Vec<S>] {
        &self.ginv
    }

    pub fn zero(&self) -> &S {
        &self.zero
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    /// Components of `T` with every slot of block `i` raised. The result is
    /// stored in the same layout; its block `i` is contravariant.
    pub fn raise_block(&self, t: &RFoldTensor<S>, i: usize) -> Result<RFoldTensor<S>> {
        t.shape().check_block(i)?;
        if self.identity || t.shape().block_rank(i) == 0 {
            return Ok(t.clone());
        }
        let k = t.shape().block_rank(i);
        let subsets = shape_table_masks(self.dim, k);
        let lam = &self.lambda[k];
        Ok(RFoldTensor::from_fn(
            t.shape().clone(),
            t.zero_scalar().clone(),
            |key| {
                let a = super::shape::table(self.dim, k).rank[key[i] as usize] as usize;
                let mut acc = self.zero.clone();
                let mut src = *key;
                for (b, &mb) in subsets.iter().enumerate() {
                    let m = &lam[a][b];
                    if m.is_zero() {
                        continue;
                    }
                    src[i] = mb;
                    let v = t.get(&src);
                    if !v.is_zero() {
                        acc.mul_acc(m, v, false);
                    }
                }
                acc
            },
        ))
    }

    /// Every slot raised.
    pub fn raise_all(&self, t: &RFoldTensor<S>) -> Result<RFoldTensor<S>> {
        let mut out = t.clone();
        for i in 0..t.r() {
            out = self.raise_block(&out, i)?;
        }
        Ok(out)
    }

    /// Contracts slot `pa` of block `ba` with slot `pb` of block `bb` through
    /// the inverse metric. Both blocks lose one rank (zero-rank blocks are
    /// kept). Slots of the same block contract to zero.
    pub fn contract(
        &self,
        t: &RFoldTensor<S>,
        (ba, pa): (usize, usize),
        (bb, pb): (usize, usize),
    ) -> Result<RFoldTensor<S>> {
        let shape = t.shape();
        shape.check_block(ba)?;
        shape.check_block(bb)?;
        for (b, p) in [(ba, pa), (bb, pb)] {
            if p >= shape.block_rank(b) {
                return Err(Error::InvalidSlot {
                    slot: p,
                    rank: shape.block_rank(b),
                });
            }
        }
        if ba == bb {
            if pa == pb {
                return Err(Error::Contract("cannot contract a slot with itself".into()));
            }
            let out = shape.with_rank(ba, shape.block_rank(ba) - 2)?;
            return Ok(RFoldTensor::zeros(out, t.zero_scalar().clone()));
        }
        let out = shape
            .with_rank(ba, shape.block_rank(ba) - 1)?
            .with_rank(bb, shape.block_rank(bb) - 1)?;
        let n = self.dim;
        Ok(RFoldTensor::from_fn(out, t.zero_scalar().clone(), |key| {
            let mut acc = self.zero.clone();
            for c in 0..n {
                let Some((ma, sa)) = insert_at(key[ba], pa, c) else {
                    continue;
                };
                for e in 0..n {
                    let h = &self.ginv[c][e];
                    if h.is_zero() {
                        continue;
                    }
                    let Some((mb, sb)) = insert_at(key[bb], pb, e) else {
                        continue;
                    };
                    let mut src: Masks = *key;
                    src[ba] = ma;
                    src[bb] = mb;
                    let v = t.get(&src);
                    if !v.is_zero() {
                        acc.mul_acc(h, v, sa * sb < 0);
                    }
                }
            }
            acc
        }))
    }

    /// Trace of a double `(q,p)`-form: contraction of the leading slot of each
    /// block. Emptied blocks remain as zero-rank blocks.
    pub fn trace(&self, t: &RFoldTensor<S>) -> Result<RFoldTensor<S>> {
        if t.r() != 2 {
            return Err(Error::ShapeMismatch(format!(
                "trace needs a double form, got {}",
                t.shape()
            )));
        }
        if t.shape().block_rank(0) == 0 || t.shape().block_rank(1) == 0 {
            return Err(Error::ShapeMismatch(format!(
                "trace of a {} form",
                t.shape()
            )));
        }
        self.contract(t, (0, 0), (1, 0))
    }

    /// Full contraction `T_{a...} S^{a...}` over all index tuples.
    pub fn pointwise_product(&self, t: &RFoldTensor<S>, s: &RFoldTensor<S>) -> Result<S> {
        let weight: i64 = t
            .shape()
            .ranks()
            .iter()
            .map(|&k| (1..=k as i64).product::<i64>())
            .product();
        Ok(self
            .canonical_product(t, s)?
            .scale(&Rational::integer(weight)))
    }

    /// Contraction over canonical tuples only: the full contraction divided
    /// by the product of the block factorials.
    pub fn canonical_product(&self, t: &RFoldTensor<S>, s: &RFoldTensor<S>) -> Result<S> {
        if t.shape() != s.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{} vs {}",
                t.shape(),
                s.shape()
            )));
        }
        let raised = self.raise_all(s)?;
        let mut acc = self.zero.clone();
        for (a, b) in t.data().iter().zip(raised.data()) {
            if !a.is_zero() && !b.is_zero() {
                acc.mul_acc(a, b, false);
            }
        }
        Ok(acc)
    }

    /// The metric as a double (1,1)-form.
    pub fn metric_tensor(&self) -> RFoldTensor<S> {
        let shape = BlockShape::new(self.dim, &[1, 1]).expect("metric shape");
        RFoldTensor::from_indices(shape, self.zero.clone(), |i| self.g[i[0]][i[1]].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    fn c(v: i64) -> Jet {
        Jet::constant(2, Rational::integer(v))
    }

    fn lorentz(n: usize) -> MetricAlgebra<Jet> {
        let g: Vec<Vec<Jet>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i != j {
                            c(0)
                        } else if i == 0 {
                            c(-1)
                        } else {
                            c(1)
                        }
                    })
                    .collect()
            })
            .collect();
        MetricAlgebra::new(g.clone(), g, c(1))
    }

    #[test]
    fn metric_traces_to_dimension() {
        for n in 1..=5 {
            let m = lorentz(n);
            let g = m.metric_tensor();
            assert_eq!(m.trace(&g).unwrap().data()[0], c(n as i64));
            assert_eq!(m.pointwise_product(&g, &g).unwrap(), c(n as i64));
        }
    }

    #[test]
    fn contracting_an_antisymmetric_pair_gives_zero() {
        let m = lorentz(3);
        let f = RFoldTensor::from_indices(BlockShape::new(3, &[2]).unwrap(), c(0), |i| {
            c((i[0] + 2 * i[1]) as i64)
        });
        let z = m.contract(&f, (0, 0), (0, 1)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.shape().ranks(), &[0]);
    }

    #[test]
    fn two_form_product_matches_brute_force() {
        // F = dx ^ dy stored with F_{01} = 1/2, F_{10} = -1/2
        let m = MetricAlgebra::euclidean(3, c(1));
        let f = RFoldTensor::from_indices(BlockShape::new(3, &[2]).unwrap(), c(0), |i| {
            if i == [0, 1] {
                Jet::constant(2, Rational::new(1, 2))
            } else {
                c(0)
            }
        });
        let mut brute = c(0);
        for a in 0..3 {
            for b in 0..3 {
                let v = f.component(&[a, b]).unwrap();
                brute = &brute + &(&v * &v);
            }
        }
        assert_eq!(m.pointwise_product(&f, &f).unwrap(), brute);
        assert_eq!(brute, Jet::constant(2, Rational::new(1, 2)));
        let zero = RFoldTensor::zeros(f.shape().clone(), c(0));
        assert!(m.pointwise_product(&f, &zero).unwrap().is_zero());
    }

    #[test]
    fn raising_a_block_uses_minors() {
        let m = lorentz(4);
        let shape = BlockShape::new(4, &[2, 1]).unwrap();
        let t =
            RFoldTensor::from_indices(shape, c(0), |i| c((1 + i[0] + 3 * i[1] + 7 * i[2]) as i64));
        let up = m.raise_block(&t, 0).unwrap();
        // raising (0,1) flips the sign once, (1,2) not at all
        assert_eq!(
            up.component(&[0, 1, 3]).unwrap(),
            -&t.component(&[0, 1, 3]).unwrap()
        );
        assert_eq!(
            up.component(&[1, 2, 3]).unwrap(),
            t.component(&[1, 2, 3]).unwrap()
        );
    }
}
