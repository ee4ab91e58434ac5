//! Block shapes and the packed index layout.
//!
//! A block of rank `k` over dimension `n` stores one component per strictly
//! increasing `k`-tuple, encoded as a bitmask. Combination tables map masks to
//! dense offsets; the overall layout is row-major over blocks.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported dimension (bitmasks are `u16`, tables are `2^n` wide).
pub const MAX_DIM: usize = 8;

/// Largest number of blocks a tensor may carry, including transient
/// derivative blocks.
pub const MAX_BLOCKS: usize = 8;

/// Largest block rank. Ranks above the dimension are allowed and give an
/// empty block (no components), so e.g. `d` of an `n`-form is structurally
/// zero.
pub const MAX_RANK: usize = 16;

/// One bitmask per block; entries past the block count are unused.
pub type Masks = [u16; MAX_BLOCKS];

pub(crate) struct ComboTable {
    /// Masks of the `k`-subsets in lexicographic order of their sorted tuples.
    pub masks: Vec<u16>,
    /// Offset of each mask of popcount `k`; `u32::MAX` elsewhere.
    pub rank: Vec<u32>,
}

fn build_table(n: usize, k: usize) -> ComboTable {
    let mut masks: Vec<u16> = (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| m as u16)
        .collect();
    masks.sort_by_key(|&m| indices_of(m).collect::<Vec<_>>());
    let mut rank = vec![u32::MAX; 1 << n];
    for (pos, &m) in masks.iter().enumerate() {
        rank[m as usize] = pos as u32;
    }
    ComboTable { masks, rank }
}

pub(crate) fn table(n: usize, k: usize) -> &'static ComboTable {
    static TABLES: OnceLock<Vec<Vec<ComboTable>>> = OnceLock::new();
    let all = TABLES.get_or_init(|| {
        (0..=MAX_DIM)
            .map(|n| (0..=MAX_RANK).map(|k| build_table(n, k)).collect())
            .collect()
    });
    &all[n][k]
}

pub(crate) fn shape_table_masks(n: usize, k: usize) -> &'static [u16] {
    &table(n, k).masks
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[inline]
pub fn mask_of(indices: &[usize]) -> u16 {
    indices.iter().fold(0u16, |m, &i| m | (1 << i))
}

/// Sorted indices of a mask.
pub fn indices_of(mask: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |i| mask & (1 << i) != 0)
}

#[inline]
fn below(i: usize) -> u16 {
    ((1u32 << i) - 1) as u16
}

/// Sign of placing `c` in front of the sorted indices of `mask`, or `None`
/// when `c` is already present.
#[inline]
pub fn insert_front(mask: u16, c: usize) -> Option<(u16, i32)> {
    if mask & (1 << c) != 0 {
        return None;
    }
    let sign = if (mask & below(c)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    };
    Some((mask | (1 << c), sign))
}

/// Sign of inserting `c` at position `pos` of the sorted tuple of `mask`.
#[inline]
pub fn insert_at(mask: u16, pos: usize, c: usize) -> Option<(u16, i32)> {
    if mask & (1 << c) != 0 {
        return None;
    }
    let q = (mask & below(c)).count_ones() as usize;
    let sign = if q.abs_diff(pos) % 2 == 0 { 1 } else { -1 };
    Some((mask | (1 << c), sign))
}

/// Replaces index `a` (present in `mask`) by `c`, keeping `c` in `a`'s
/// position, and returns the sign of the sort back to increasing order.
#[inline]
pub fn replace(mask: u16, a: usize, c: usize) -> Option<(u16, i32)> {
    if a == c {
        return Some((mask, 1));
    }
    if mask & (1 << c) != 0 {
        return None;
    }
    let rest = mask & !(1 << a);
    let p = (rest & below(a)).count_ones();
    let q = (rest & below(c)).count_ones();
    let sign = if p.abs_diff(q) % 2 == 0 { 1 } else { -1 };
    Some((rest | (1 << c), sign))
}

/// Position of `a` within the sorted tuple of `mask`.
#[inline]
pub fn position(mask: u16, a: usize) -> usize {
    (mask & below(a)).count_ones() as usize
}

/// Sign of the permutation that sorts `idx`, or 0 if an index repeats.
pub fn sort_sign(idx: &[usize]) -> (u16, i32) {
    let mut mask = 0u16;
    let mut sign = 1;
    for &i in idx {
        if mask & (1 << i) != 0 {
            return (0, 0);
        }
        // each earlier index larger than i is one inversion
        if (mask & !below(i + 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        mask |= 1 << i;
    }
    (mask, sign)
}

/// Sign of concatenating the sorted tuples of two disjoint masks.
#[inline]
pub fn shuffle_sign(first: u16, second: u16) -> i32 {
    let mut inversions = 0;
    for b in indices_of(first) {
        inversions += (second & below(b)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockShape {
    dim: usize,
    ranks: Vec<usize>,
}

impl BlockShape {
    pub fn new(dim: usize, ranks: &[usize]) -> Result<BlockShape> {
        if dim > MAX_DIM {
            return Err(Error::Unsupported(format!(
                "dimension {dim} exceeds {MAX_DIM}"
            )));
        }
        if ranks.len() > MAX_BLOCKS {
            return Err(Error::Unsupported(format!(
                "{} blocks exceed {MAX_BLOCKS}",
                ranks.len()
            )));
        }
        if let Some(&k) = ranks.iter().find(|&&k| k > MAX_RANK) {
            return Err(Error::Unsupported(format!(
                "block rank {k} exceeds {MAX_RANK}"
            )));
        }
        Ok(BlockShape {
            dim,
            ranks: ranks.to_vec(),
        })
    }

    /// A general rank-`m` tensor: `m` blocks of rank one.
    pub fn general(dim: usize, m: usize) -> Result<BlockShape> {
        BlockShape::new(dim, &vec![1; m])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Form-structure number (count of blocks, collapsed ones included).
    pub fn r(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn block_rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.ranks.iter().map(|&k| binomial(self.dim, k)).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check_block(&self, i: usize) -> Result<()> {
        if i >= self.r() {
            return Err(Error::InvalidBlock {
                block: i,
                shape: self.to_string(),
            });
        }
        Ok(())
    }

    pub fn with_rank(&self, i: usize, k: usize) -> Result<BlockShape> {
        let mut ranks = self.ranks.clone();
        ranks[i] = k;
        BlockShape::new(self.dim, &ranks)
    }

    pub fn appended(&self, k: usize) -> Result<BlockShape> {
        let mut ranks = self.ranks.clone();
        ranks.push(k);
        BlockShape::new(self.dim, &ranks)
    }

    /// Drops blocks of rank zero, returning the positions removed.
    pub fn collapsed(&self) -> (BlockShape, Vec<usize>) {
        let removed: Vec<usize> = (0..self.r()).filter(|&i| self.ranks[i] == 0).collect();
        let ranks: Vec<usize> = self.ranks.iter().copied().filter(|&k| k > 0).collect();
        (
            BlockShape {
                dim: self.dim,
                ranks,
            },
            removed,
        )
    }

    #[inline]
    pub fn offset(&self, masks: &Masks) -> Option<usize> {
        let mut off = 0usize;
        for (i, &k) in self.ranks.iter().enumerate() {
            let t = table(self.dim, k);
            let r = t.rank[masks[i] as usize];
            if r == u32::MAX {
                return None;
            }
            off = off * t.masks.len() + r as usize;
        }
        Some(off)
    }

    pub fn masks_at(&self, mut offset: usize) -> Masks {
        let mut masks = [0u16; MAX_BLOCKS];
        for i in (0..self.r()).rev() {
            let t = table(self.dim, self.ranks[i]);
            let len = t.masks.len();
            masks[i] = t.masks[offset % len];
            offset /= len;
        }
        masks
    }

    /// Canonical component keys in storage order.
    pub fn keys(&self) -> impl Iterator<Item = Masks> + '_ {
        (0..self.len()).map(|o| self.masks_at(o))
    }

    /// Canonical masks of an arbitrary index tuple together with the sign of
    /// the in-block sorts; sign 0 when a block repeats an index.
    pub fn canonicalize(&self, idx: &[usize]) -> Result<(Masks, i32)> {
        if idx.len() != self.total_rank() {
            return Err(Error::ShapeMismatch(format!(
                "index tuple of length {} for shape {self}",
                idx.len()
            )));
        }
        if let Some(&i) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(Error::InvalidSlot {
                slot: i,
                rank: self.dim,
            });
        }
        let mut masks = [0u16; MAX_BLOCKS];
        let mut sign = 1;
        let mut at = 0;
        for (b, &k) in self.ranks.iter().enumerate() {
            let (m, s) = sort_sign(&idx[at..at + k]);
            if s == 0 {
                return Ok((masks, 0));
            }
            masks[b] = m;
            sign *= s;
            at += k;
        }
        Ok((masks, sign))
    }

    /// Full sorted index tuple of a canonical key.
    pub fn indices(&self, masks: &Masks) -> Vec<usize> {
        (0..self.r()).flat_map(|b| indices_of(masks[b])).collect()
    }

    /// Block and in-block position of a slot of the full tuple.
    pub fn locate_slot(&self, slot: usize) -> Result<(usize, usize)> {
        let mut at = 0;
        for (b, &k) in self.ranks.iter().enumerate() {
            if slot < at + k {
                return Ok((b, slot - at));
            }
            at += k;
        }
        Err(Error::InvalidSlot {
            slot,
            rank: self.total_rank(),
        })
    }
}

impl fmt::Display for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.ranks.iter().map(usize::to_string).collect();
        write!(f, "{}:[{}]", self.r(), ranks.join(","))
    }
}

impl fmt::Debug for BlockShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockShape(n={}, {self})", self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_tables_are_lexicographic() {
        let t = table(4, 2);
        let tuples: Vec<Vec<usize>> = t.masks.iter().map(|&m| indices_of(m).collect()).collect();
        assert_eq!(
            tuples,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(table(4, 0).masks, vec![0]);
        assert_eq!(table(4, 4).masks, vec![0b1111]);
        for n in 0..=MAX_DIM {
            for k in 0..=n {
                assert_eq!(table(n, k).masks.len(), binomial(n, k));
            }
        }
    }

    #[test]
    fn sort_sign_counts_inversions() {
        assert_eq!(sort_sign(&[0, 1, 2]), (0b111, 1));
        assert_eq!(sort_sign(&[1, 0, 2]), (0b111, -1));
        assert_eq!(sort_sign(&[2, 0, 1]), (0b111, 1));
        assert_eq!(sort_sign(&[2, 1, 0]).1, -1);
        assert_eq!(sort_sign(&[1, 1]).1, 0);
    }

    #[test]
    fn replace_and_insert_match_sorting() {
        let mask = mask_of(&[0, 2, 4]);
        // (0,2,4) with 2 -> 5 gives (0,5,4), one swap from (0,4,5)
        assert_eq!(replace(mask, 2, 5), Some((mask_of(&[0, 4, 5]), -1)));
        assert_eq!(replace(mask, 2, 4), None);
        assert_eq!(insert_front(mask, 3), Some((mask_of(&[0, 2, 3, 4]), 1)));
        assert_eq!(insert_front(mask, 1), Some((mask_of(&[0, 1, 2, 4]), -1)));
        assert_eq!(insert_at(mask, 3, 1), Some((mask_of(&[0, 1, 2, 4]), 1)));
        assert_eq!(shuffle_sign(mask_of(&[1, 3]), mask_of(&[0, 2])), -1);
    }

    #[test]
    fn offsets_round_trip() {
        let s = BlockShape::new(4, &[2, 0, 3]).unwrap();
        assert_eq!(s.len(), 6 * 1 * 4);
        for o in 0..s.len() {
            assert_eq!(s.offset(&s.masks_at(o)), Some(o));
        }
        let (m, sign) = s.canonicalize(&[3, 1, 0, 2, 1]).unwrap();
        assert_eq!(sign, -1 * -1);
        assert_eq!(s.indices(&m), vec![1, 3, 0, 1, 2]);
    }
}
