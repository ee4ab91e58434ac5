//! Dense complex arrays over all index tuples, all slots covariant, for the
//! index-notation formulas of the torus potentials. Slot relabelings and
//! conversions from packed tensors go through cached gather tables, so a
//! relabeling costs one pass over the array.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::tensor::{BlockShape, RFoldTensor};

type C = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct CArray {
    n: usize,
    rank: usize,
    data: Vec<C>,
}

fn unflatten(n: usize, mut o: usize, idx: &mut [usize]) {
    for slot in (0..idx.len()).rev() {
        idx[slot] = o % n;
        o /= n;
    }
}

fn flatten(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |o, &i| o * n + i)
}

type PermKey = (usize, Vec<usize>);
type ShapeTable = Arc<Vec<(u32, i8)>>;

fn perm_tables() -> &'static Mutex<HashMap<PermKey, Arc<Vec<u32>>>> {
    static T: OnceLock<Mutex<HashMap<PermKey, Arc<Vec<u32>>>>> = OnceLock::new();
    T.get_or_init(Default::default)
}

fn shape_tables() -> &'static Mutex<HashMap<BlockShape, ShapeTable>> {
    static T: OnceLock<Mutex<HashMap<BlockShape, ShapeTable>>> = OnceLock::new();
    T.get_or_init(Default::default)
}

/// `table[o]` is the source offset of output offset `o` under `perm`.
fn perm_table(n: usize, perm: &[usize]) -> Arc<Vec<u32>> {
    let key = (n, perm.to_vec());
    if let Some(t) = perm_tables().lock().unwrap().get(&key) {
        return t.clone();
    }
    let m = perm.len();
    let mut idx = vec![0; m];
    let mut src = vec![0; m];
    let table: Vec<u32> = (0..n.pow(m as u32))
        .map(|o| {
            unflatten(n, o, &mut idx);
            for (k, &p) in perm.iter().enumerate() {
                src[k] = idx[p];
            }
            flatten(n, &src) as u32
        })
        .collect();
    let table = Arc::new(table);
    perm_tables().lock().unwrap().insert(key, table.clone());
    table
}

/// Packed offset and block sign of every dense index tuple; sign 0 when a
/// block repeats an index.
fn shape_table(shape: &BlockShape) -> ShapeTable {
    if let Some(t) = shape_tables().lock().unwrap().get(shape) {
        return t.clone();
    }
    let n = shape.dim();
    let m = shape.total_rank();
    let mut idx = vec![0; m];
    let table: Vec<(u32, i8)> = (0..n.pow(m as u32))
        .map(|o| {
            unflatten(n, o, &mut idx);
            match shape.canonicalize(&idx) {
                Ok((key, s)) if s != 0 => (shape.offset(&key).unwrap_or(0) as u32, s as i8),
                _ => (0, 0),
            }
        })
        .collect();
    let table = Arc::new(table);
    shape_tables()
        .lock()
        .unwrap()
        .insert(shape.clone(), table.clone());
    table
}

impl CArray {
    pub fn zeros(n: usize, rank: usize) -> CArray {
        CArray {
            n,
            rank,
            data: vec![C::new(0.0, 0.0); n.pow(rank as u32)],
        }
    }

    pub fn from_fn(n: usize, rank: usize, mut f: impl FnMut(&[usize]) -> C) -> CArray {
        let mut idx = vec![0; rank];
        let data = (0..n.pow(rank as u32))
            .map(|o| {
                unflatten(n, o, &mut idx);
                f(&idx)
            })
            .collect();
        CArray { n, rank, data }
    }

    pub fn from_tensor(t: &RFoldTensor<C>) -> CArray {
        let table = shape_table(t.shape());
        let src = t.data();
        let data = table
            .iter()
            .map(|&(o, s)| match s {
                0 => C::new(0.0, 0.0),
                1 => src[o as usize],
                _ => -src[o as usize],
            })
            .collect();
        CArray {
            n: t.dim(),
            rank: t.shape().total_rank(),
            data,
        }
    }

    /// Reads the canonical components into a packed tensor; the caller
    /// asserts the block antisymmetry.
    pub fn to_tensor(&self, shape: BlockShape) -> RFoldTensor<C> {
        let n = self.n;
        RFoldTensor::from_indices(shape, C::new(0.0, 0.0), |i| self.data[flatten(n, i)])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn data(&self) -> &[C] {
        &self.data
    }

    pub fn at(&self, idx: &[usize]) -> C {
        self.data[flatten(self.n, idx)]
    }

    /// `out[i_0..] = self[i_perm[0]..]`, as for the exact dense arrays.
    pub fn permuted(&self, perm: &[usize]) -> CArray {
        self.combo(&[(1.0, perm)])
    }

    /// `sum_j c_j * self.permuted(perm_j)`.
    pub fn combo(&self, terms: &[(f64, &[usize])]) -> CArray {
        let mut data = vec![C::new(0.0, 0.0); self.data.len()];
        for &(c, perm) in terms {
            debug_assert_eq!(perm.len(), self.rank);
            let table = perm_table(self.n, perm);
            for (out, &s) in data.iter_mut().zip(table.iter()) {
                *out += self.data[s as usize] * c;
            }
        }
        CArray {
            n: self.n,
            rank: self.rank,
            data,
        }
    }

    /// [`CArray::combo`] evaluated at the listed index tuples only.
    pub fn combo_at(&self, terms: &Terms, tuples: &[Vec<usize>]) -> Vec<C> {
        let mut src = vec![0; self.rank];
        tuples
            .iter()
            .map(|idx| {
                let mut acc = C::new(0.0, 0.0);
                for (c, perm) in terms {
                    for (k, &p) in perm.iter().enumerate() {
                        src[k] = idx[p];
                    }
                    acc += self.data[flatten(self.n, &src)] * *c;
                }
                acc
            })
            .collect()
    }

    /// Alternation over the listed slots with weight `1/k!`.
    pub fn alternate(&self, slots: &[usize]) -> CArray {
        let perms = permutations(slots.len());
        let w = 1.0 / perms.len() as f64;
        let full: Vec<(f64, Vec<usize>)> = perms
            .iter()
            .map(|(sigma, sign)| {
                let mut p: Vec<usize> = (0..self.rank).collect();
                for (j, &s) in sigma.iter().enumerate() {
                    p[slots[j]] = slots[s];
                }
                (w * *sign as f64, p)
            })
            .collect();
        let terms: Vec<(f64, &[usize])> = full.iter().map(|(c, p)| (*c, p.as_slice())).collect();
        self.combo(&terms)
    }

    /// `out[.., f] = self[..] * sym[f]`: the derivative of a mode with
    /// symbol `sym = i k`.
    pub fn grad(&self, sym: &[C]) -> CArray {
        let n = self.n;
        let mut data = Vec::with_capacity(self.data.len() * n);
        for &a in &self.data {
            data.extend(sym.iter().map(|&s| a * s));
        }
        CArray {
            n,
            rank: self.rank + 1,
            data,
        }
    }

    /// `out[..] = sum_e self[.., e] * sym[e]`: the divergence on the last slot.
    pub fn div(&self, sym: &[C]) -> CArray {
        let n = self.n;
        CArray {
            n,
            rank: self.rank - 1,
            data: self
                .data
                .chunks(n)
                .map(|c| c.iter().zip(sym).map(|(&a, &s)| a * s).sum())
                .collect(),
        }
    }

    /// Euclidean contraction of slots `s < t`.
    pub fn contract(&self, s: usize, t: usize) -> CArray {
        assert!(s < t && t < self.rank, "contract slots {s}, {t}");
        let n = self.n;
        let mut full = vec![0; self.rank];
        CArray::from_fn(n, self.rank - 2, |idx| {
            let mut k = 0;
            for (slot, v) in full.iter_mut().enumerate() {
                if slot != s && slot != t {
                    *v = idx[k];
                    k += 1;
                }
            }
            (0..n)
                .map(|e| {
                    full[s] = e;
                    full[t] = e;
                    self.data[flatten(n, &full)]
                })
                .sum()
        })
    }

    fn zip(&self, other: &CArray, f: impl Fn(C, C) -> C) -> CArray {
        assert_eq!((self.n, self.rank), (other.n, other.rank), "array shapes");
        CArray {
            n: self.n,
            rank: self.rank,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &CArray) -> CArray {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CArray) -> CArray {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> CArray {
        CArray {
            n: self.n,
            rank: self.rank,
            data: self.data.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max).sqrt()
    }
}

/// A linear combination of slot relabelings `sum_j c_j X[i o p_j]`, in the
/// convention of [`CArray::permuted`].
pub type Terms = Vec<(f64, Vec<usize>)>;

pub fn identity_terms(m: usize) -> Terms {
    vec![(1.0, (0..m).collect())]
}

/// `outer` applied to the result of `inner`: relabelings compose as
/// `r[k] = p[q[k]]` with `p` from `outer` and `q` from `inner`.
pub fn compose(outer: &Terms, inner: &Terms) -> Terms {
    let mut out = Vec::with_capacity(outer.len() * inner.len());
    for (c, p) in outer {
        for (d, q) in inner {
            out.push((c * d, q.iter().map(|&k| p[k]).collect()));
        }
    }
    out
}

/// Index tuples increasing within each consecutive group of the given
/// sizes: the independent components of an array antisymmetric in those
/// groups.
pub fn canonical_tuples(n: usize, groups: &[usize]) -> Vec<Vec<usize>> {
    let shape = BlockShape::new(n, groups).expect("group sizes");
    shape.keys().map(|k| shape.indices(&k)).collect()
}

/// All permutations of `0..k` with their signs.
fn permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // moving the new largest element left past `k - 1 - pos` entries
            let sign = if (k - 1 - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Relative distance `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative(a: &CArray, b: &CArray) -> f64 {
    let scale = a.max_norm().max(b.max_norm());
    if scale == 0.0 {
        0.0
    } else {
        a.sub(b).max_norm() / scale
    }
}

/// `|a| / |reference|`, for arrays that should vanish.
pub fn relative_size(a: &CArray, reference: &CArray) -> f64 {
    let scale = reference.max_norm();
    if scale == 0.0 {
        a.max_norm()
    } else {
        a.max_norm() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C {
        C::new(re, 0.0)
    }

    #[test]
    fn permuted_relabels_slots() {
        let a = CArray::from_fn(3, 3, |i| c((i[0] * 9 + i[1] * 3 + i[2]) as f64));
        let p = a.permuted(&[2, 0, 1]);
        assert_eq!(p.at(&[0, 1, 2]), a.at(&[2, 0, 1]));
    }

    #[test]
    fn dense_round_trip_keeps_signs() {
        let shape = BlockShape::new(3, &[2, 1]).unwrap();
        let t = RFoldTensor::from_indices(shape.clone(), c(0.0), |i| {
            c((i[0] + 2 * i[1] + 5 * i[2]) as f64)
        });
        let d = CArray::from_tensor(&t);
        assert_eq!(d.at(&[1, 0, 2]), -d.at(&[0, 1, 2]));
        assert_eq!(d.at(&[1, 1, 2]), c(0.0));
        assert_eq!(d.to_tensor(shape).data(), t.data());
    }

    #[test]
    fn alternation_signs() {
        let a = CArray::from_fn(3, 3, |i| c((i[0] * i[0] * 9 + i[1] * 3 + i[2] * i[1]) as f64));
        let alt = a.alternate(&[0, 1, 2]);
        assert_eq!(alt.at(&[0, 1, 2]), -alt.at(&[1, 0, 2]));
        assert_eq!(alt.at(&[0, 1, 2]), alt.at(&[1, 2, 0]));
        let perms = permutations(3);
        assert_eq!(perms.iter().map(|p| p.1).sum::<i32>(), 0);
    }

    #[test]
    fn composed_relabelings_match_sequential_ones() {
        let a = CArray::from_fn(3, 3, |i| c((i[0] * i[0] * 9 + i[1] * 3 + i[2] * i[1]) as f64));
        let inner: Terms = vec![(1.0, vec![1, 2, 0]), (-2.0, vec![0, 2, 1])];
        let outer: Terms = vec![(0.5, vec![2, 0, 1])];
        let seq = a
            .combo(&[(1.0, &[1, 2, 0]), (-2.0, &[0, 2, 1])])
            .combo(&[(0.5, &[2, 0, 1])]);
        let all = canonical_tuples(3, &[1, 1, 1]);
        let direct = a.combo_at(&compose(&outer, &inner), &all);
        assert_eq!(direct, seq.data());
    }

    #[test]
    fn contraction_sums_the_diagonal() {
        let a = CArray::from_fn(2, 2, |i| c((i[0] * 2 + i[1] + 1) as f64));
        assert_eq!(a.contract(0, 1).data(), &[c(5.0)]);
    }
}
