//! Dense all-slot component arrays for checking identities written in index
//! notation: every index tuple is stored, all slots covariant.

use crate::error::{Error, Result};
use crate::jet::{Jet, Rational};
use crate::tensor::shape::sort_sign;
use crate::tensor::{MetricAlgebra, RFoldTensor};

#[derive(Clone, Debug)]
pub struct Dense {
    n: usize,
    rank: usize,
    data: Vec<Jet>,
}

fn unflatten(n: usize, rank: usize, mut o: usize, idx: &mut [usize]) {
    for slot in (0..rank).rev() {
        idx[slot] = o % n;
        o /= n;
    }
}

impl Dense {
    pub fn from_fn(n: usize, rank: usize, mut f: impl FnMut(&[usize]) -> Jet) -> Dense {
        let len = n.pow(rank as u32);
        let mut idx = vec![0; rank];
        let data = (0..len)
            .map(|o| {
                unflatten(n, rank, o, &mut idx);
                f(&idx)
            })
            .collect();
        Dense { n, rank, data }
    }

    pub fn from_tensor(t: &RFoldTensor<Jet>) -> Result<Dense> {
        let m = t.shape().total_rank();
        let mut err = None;
        let out = Dense::from_fn(t.dim(), m, |idx| match t.component(idx) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                Jet::zero(idx.len())
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |o, &i| o * self.n + i)
    }

    pub fn at(&self, idx: &[usize]) -> &Jet {
        &self.data[self.offset(idx)]
    }

    /// Contracts slots `s` and `t` through the inverse metric.
    pub fn contract(&self, s: usize, t: usize, metric: &MetricAlgebra<Jet>) -> Result<Dense> {
        if s == t || s >= self.rank || t >= self.rank {
            return Err(Error::Contract(format!(
                "slots {s} and {t} of a rank-{} array",
                self.rank
            )));
        }
        let ginv = metric.ginv();
        let n = self.n;
        let (lo, hi) = (s.min(t), s.max(t));
        let mut full = vec![0; self.rank];
        Ok(Dense::from_fn(n, self.rank - 2, |idx| {
            let mut acc = Jet::zero(n);
            let mut k = 0;
            for (slot, v) in full.iter_mut().enumerate() {
                if slot != lo && slot != hi {
                    *v = idx[k];
                    k += 1;
                }
            }
            for e in 0..n {
                for f in 0..n {
                    let h = &ginv[e][f];
                    if h.is_zero() {
                        continue;
                    }
                    full[s] = e;
                    full[t] = f;
                    let v = self.at(&full);
                    if !v.is_zero() {
                        acc.add_product(h, v, false);
                    }
                }
            }
            acc
        }))
    }

    /// Relabels slots: `out[i_0..] = self[i_perm[0]..]`, i.e. slot `k` of the
    /// source receives output index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Dense {
        let mut src = vec![0; self.rank];
        Dense::from_fn(self.n, self.rank, |idx| {
            for (k, &p) in perm.iter().enumerate() {
                src[k] = idx[p];
            }
            self.at(&src).clone()
        })
    }

    /// Alternation over the listed slots with weight `1/k!`.
    pub fn alternate(&self, slots: &[usize]) -> Dense {
        let k = slots.len();
        let perms = permutations(k);
        let weight = Rational::new(1, perms.len() as i64);
        let mut src = vec![0; self.rank];
        Dense::from_fn(self.n, self.rank, |idx| {
            let mut acc = Jet::zero(self.n);
            for (perm, sign) in &perms {
                src.copy_from_slice(idx);
                for (j, &p) in perm.iter().enumerate() {
                    src[slots[j]] = idx[slots[p]];
                }
                let v = self.at(&src);
                if !v.is_zero() {
                    if *sign > 0 {
                        acc = &acc + v;
                    } else {
                        acc = &acc - v;
                    }
                }
            }
            acc.scale(&weight)
        })
    }

    pub fn combine(&self, other: &Dense, f: impl Fn(&Jet, &Jet) -> Jet) -> Result<Dense> {
        if self.n != other.n || self.rank != other.rank {
            return Err(Error::ShapeMismatch(format!(
                "dense rank {} vs {}",
                self.rank, other.rank
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Dense {
            n: self.n,
            rank: self.rank,
            data,
        })
    }

    pub fn add(&self, other: &Dense) -> Result<Dense> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Dense) -> Result<Dense> {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, r: &Rational) -> Dense {
        Dense {
            n: self.n,
            rank: self.rank,
            data: self.data.iter().map(|x| x.scale(r)).collect(),
        }
    }

    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .map(Jet::max_abs)
            .max()
            .unwrap_or(Rational::ZERO)
    }

    pub fn first_nonzero(&self) -> Option<Vec<usize>> {
        let o = self.data.iter().position(|x| !x.is_zero())?;
        let mut idx = vec![0; self.rank];
        unflatten(self.n, self.rank, o, &mut idx);
        Some(idx)
    }
}

/// All permutations of `0..k` with their signs.
fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    fn extend(k: usize, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i32)>) {
        if cur.len() == k {
            let (_, s) = sort_sign(cur);
            out.push((cur.clone(), s));
            return;
        }
        for i in 0..k {
            if !cur.contains(&i) {
                cur.push(i);
                extend(k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_complete() {
        let p = permutations(4);
        assert_eq!(p.len(), 24);
        assert_eq!(p.iter().filter(|(_, s)| *s > 0).count(), 12);
    }

    #[test]
    fn alternation_is_idempotent() {
        let n = 3;
        let d = Dense::from_fn(n, 3, |i| {
            Jet::constant(n, Rational::integer((i[0] * 9 + i[1] * 3 + i[2]) as i64))
        });
        let a = d.alternate(&[0, 1, 2]);
        let aa = a.alternate(&[0, 1, 2]);
        assert!(a.sub(&aa).unwrap().max_abs().is_zero());
        assert_eq!(a.at(&[0, 1, 2]), &a.at(&[1, 0, 2]).scale(&Rational::integer(-1)));
    }
}
