//! Metric-free structural operations: block merging (antisymmetrization),
//! slot permutation and the transpose of double forms.

use super::shape::{indices_of, sort_sign, BlockShape, Masks, MAX_BLOCKS};
use super::{RFoldTensor, Scalar};
use crate::error::{Error, Result};
use crate::jet::Rational;

/// A relabeling of slots: new slot `j` takes the index that old slot
/// `self.0[j]` carried, i.e. `T'(i_0, ..., i_{m-1}) = T(t)` with
/// `t[self.0[j]] = i_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotPermutation(Vec<usize>);

impl SlotPermutation {
    pub fn new(map: Vec<usize>) -> Result<SlotPermutation> {
        let mut seen = vec![false; map.len()];
        for &j in &map {
            if j >= map.len() || seen[j] {
                return Err(Error::Contract(format!("{map:?} is not a permutation")));
            }
            seen[j] = true;
        }
        Ok(SlotPermutation(map))
    }

    pub fn identity(m: usize) -> SlotPermutation {
        SlotPermutation((0..m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Enumerates ordered splittings of `mask` into subsets of the given sizes.
fn splittings(mask: u16, sizes: &[usize], acc: &mut Vec<u16>, f: &mut impl FnMut(&[u16])) {
    let Some((&k, rest)) = sizes.split_first() else {
        f(acc);
        return;
    };
    // iterate submasks of `mask` with popcount k
    let mut sub = mask;
    loop {
        if sub.count_ones() as usize == k {
            acc.push(sub);
            splittings(mask & !sub, rest, acc, f);
            acc.pop();
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
}

impl<S: Scalar> RFoldTensor<S> {
    /// Merges the consecutive blocks `first..=last` into one antisymmetric
    /// block by alternation with weight `1/k!` (bracket convention). On a
    /// single block this is the identity, since blocks are stored
    /// antisymmetric.
    pub fn antisymmetrize(&self, first: usize, last: usize) -> Result<RFoldTensor<S>> {
        self.shape.check_block(last)?;
        if first > last {
            return Err(Error::InvalidBlock {
                block: first,
                shape: self.shape.to_string(),
            });
        }
        let sizes: Vec<usize> = self.shape.ranks()[first..=last].to_vec();
        let k: usize = sizes.iter().sum();
        let mut ranks: Vec<usize> = self.shape.ranks()[..first].to_vec();
        ranks.push(k);
        ranks.extend_from_slice(&self.shape.ranks()[last + 1..]);
        let shape = BlockShape::new(self.dim(), &ranks)?;
        let weight = Rational::new(sizes.iter().map(|&s| factorial(s)).product(), factorial(k));
        let tail = self.r() - last - 1;
        Ok(RFoldTensor::from_fn(shape, self.zero.clone(), |key| {
            let mut acc = self.zero.clone();
            let mut old: Masks = [0; MAX_BLOCKS];
            old[..first].copy_from_slice(&key[..first]);
            old[last + 1..last + 1 + tail].copy_from_slice(&key[first + 1..first + 1 + tail]);
            let mut parts = Vec::new();
            splittings(key[first], &sizes, &mut parts, &mut |parts| {
                let concat: Vec<usize> = parts.iter().flat_map(|&m| indices_of(m)).collect();
                let (_, sign) = sort_sign(&concat);
                old[first..=last].copy_from_slice(parts);
                acc.add_signed(self.get(&old), sign);
            });
            acc.scale(&weight)
        }))
    }

    /// Relabels slots. The result must be antisymmetric within each block of
    /// `shape`; otherwise an error is returned, unless `reproject` asks for
    /// the block alternation of the relabeled components instead.
    pub fn permute_slots(
        &self,
        perm: &SlotPermutation,
        shape: BlockShape,
        reproject: bool,
    ) -> Result<RFoldTensor<S>> {
        let m = self.shape.total_rank();
        if perm.len() != m || shape.total_rank() != m || shape.dim() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "permutation of {} slots from {} to {shape}",
                perm.len(),
                self.shape
            )));
        }
        let raw = |new_idx: &[usize]| -> S {
            let mut old = vec![0; m];
            for (j, &i) in new_idx.iter().enumerate() {
                old[perm.0[j]] = i;
            }
            self.component(&old).expect("valid tuple")
        };
        if reproject {
            let ranks = shape.ranks().to_vec();
            let mut general = RFoldTensor::from_indices(
                BlockShape::general(self.dim(), m)?,
                self.zero.clone(),
                raw,
            );
            let mut at = 0;
            for &k in &ranks {
                if k == 0 {
                    let mut r = general.shape.ranks().to_vec();
                    r.insert(at, 0);
                    general = general.reshaped(BlockShape::new(self.dim(), &r)?)?;
                } else {
                    general = general.antisymmetrize(at, at + k - 1)?;
                }
                at += 1;
            }
            return Ok(general);
        }
        let n = self.dim();
        let out = RFoldTensor::from_indices(shape.clone(), self.zero.clone(), &raw);
        let mut idx = vec![0usize; m];
        for _ in 0..n.pow(m as u32) {
            let (key, sign) = shape.canonicalize(&idx)?;
            let expected = if sign == 0 {
                self.zero.clone()
            } else {
                out.get(&key).signed(sign)
            };
            if !raw(&idx).sub(&expected).is_zero() {
                return Err(Error::AntisymmetryViolated(format!(
                    "component {idx:?} under {shape}"
                )));
            }
            for slot in (0..m).rev() {
                idx[slot] += 1;
                if idx[slot] < n {
                    break;
                }
                idx[slot] = 0;
            }
        }
        Ok(out)
    }

    /// Interchanges the two blocks of a double form.
    pub fn transpose(&self) -> Result<RFoldTensor<S>> {
        if self.r() != 2 {
            return Err(Error::ShapeMismatch(format!(
                "transpose needs a double form, got {}",
                self.shape
            )));
        }
        let ranks = self.shape.ranks();
        let shape = BlockShape::new(self.dim(), &[ranks[1], ranks[0]])?;
        Ok(RFoldTensor::from_fn(shape, self.zero.clone(), |key| {
            let mut old = *key;
            old.swap(0, 1);
            self.get(&old).clone()
        }))
    }

    /// Moves block `from` to position `to`, shifting the blocks in between.
    pub fn move_block(&self, from: usize, to: usize) -> Result<RFoldTensor<S>> {
        self.shape.check_block(from)?;
        self.shape.check_block(to)?;
        let mut order: Vec<usize> = (0..self.r()).collect();
        let b = order.remove(from);
        order.insert(to, b);
        let ranks: Vec<usize> = order.iter().map(|&i| self.shape.block_rank(i)).collect();
        let shape = BlockShape::new(self.dim(), &ranks)?;
        Ok(RFoldTensor::from_fn(shape, self.zero.clone(), |key| {
            let mut old: Masks = [0; MAX_BLOCKS];
            for (new_pos, &old_pos) in order.iter().enumerate() {
                old[old_pos] = key[new_pos];
            }
            self.get(&old).clone()
        }))
    }

    /// Tensor product, blocks of `self` first.
    pub fn outer(&self, other: &RFoldTensor<S>) -> Result<RFoldTensor<S>> {
        let mut ranks = self.shape.ranks().to_vec();
        ranks.extend_from_slice(other.shape.ranks());
        let shape = BlockShape::new(self.dim(), &ranks)?;
        let r = self.r();
        Ok(RFoldTensor::from_fn(shape, self.zero.clone(), |key| {
            let a = self.get(key);
            if a.is_zero() {
                return a.clone();
            }
            let mut kb: Masks = [0; MAX_BLOCKS];
            kb[..other.r()].copy_from_slice(&key[r..r + other.r()]);
            a.mul(other.get(&kb))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    fn c(v: i64) -> Jet {
        Jet::constant(1, Rational::integer(v))
    }

    fn general2(n: usize, f: impl Fn(usize, usize) -> i64) -> RFoldTensor<Jet> {
        RFoldTensor::from_indices(BlockShape::general(n, 2).unwrap(), Jet::zero(1), |i| {
            c(f(i[0], i[1]))
        })
    }

    #[test]
    fn antisymmetrize_two_slots_is_half_difference() {
        let a = general2(3, |i, j| (3 * i + j * j) as i64);
        let alt = a.antisymmetrize(0, 1).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = Jet::constant(
                    1,
                    Rational::new((3 * i + j * j) as i64 - (3 * j + i * i) as i64, 2),
                );
                assert_eq!(alt.component(&[i, j]).unwrap(), expected);
            }
        }
        let sym = general2(3, |i, j| (i + j) as i64);
        assert!(sym.antisymmetrize(0, 1).unwrap().is_zero());
        assert_eq!(alt.antisymmetrize(0, 0).unwrap().data(), alt.data());
    }

    #[test]
    fn permute_slots_reorders_into_a_two_one_form() {
        // A_{abc} = -A_{cba}; the relabeling A~_{abc} = A_{acb} is a (2,1)-form.
        let n = 3;
        let general = BlockShape::general(n, 3).unwrap();
        let raw = |i: usize, j: usize, k: usize| {
            (i * i + 2 * j + 5 * k * k) as i64 - (k * k + 2 * j + 5 * i * i) as i64
        };
        let a = RFoldTensor::from_indices(general, Jet::zero(1), |t| c(raw(t[0], t[1], t[2])));
        let shape = BlockShape::new(n, &[2, 1]).unwrap();
        let perm = SlotPermutation::new(vec![0, 2, 1]).unwrap();
        let at = a.permute_slots(&perm, shape.clone(), false).unwrap();
        assert_eq!(
            at.component(&[0, 2, 1]).unwrap(),
            a.component(&[0, 1, 2]).unwrap()
        );
        let identity = a
            .permute_slots(
                &SlotPermutation::identity(3),
                BlockShape::general(n, 3).unwrap(),
                false,
            )
            .unwrap();
        assert_eq!(identity.data(), a.data());
        // without the antisymmetry in (a, c) the check fails
        let b = RFoldTensor::from_indices(BlockShape::general(n, 3).unwrap(), Jet::zero(1), |t| {
            c((t[0] + 2 * t[2]) as i64)
        });
        assert!(matches!(
            b.permute_slots(&perm, shape.clone(), false),
            Err(Error::AntisymmetryViolated(_))
        ));
        assert!(b.permute_slots(&perm, shape, true).is_ok());
    }

    #[test]
    fn transpose_is_an_involution() {
        let shape = BlockShape::new(4, &[2, 1]).unwrap();
        let t = RFoldTensor::from_indices(shape, Jet::zero(1), |i| {
            c((i[0] * 7 + i[1] * 3 + i[2]) as i64)
        });
        let tt = t.transpose().unwrap();
        assert_eq!(tt.shape().ranks(), &[1, 2]);
        assert_eq!(
            tt.component(&[3, 0, 2]).unwrap(),
            t.component(&[0, 2, 3]).unwrap()
        );
        assert_eq!(tt.transpose().unwrap().data(), t.data());
    }
}
