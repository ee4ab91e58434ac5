//! Dense curvature arrays with any subset of indices raised, built on demand.

use std::sync::OnceLock;

use super::Geometry;
use crate::jet::Jet;

#[derive(Default)]
pub(crate) struct CurvatureArrays {
    riemann: [OnceLock<Vec<Jet>>; 16],
    ricci: [OnceLock<Vec<Jet>>; 4],
}

/// Raises slot `slot` (of `rank` slots) of a dense array.
fn raise(base: &[Jet], n: usize, rank: usize, slot: usize, ginv: &[Vec<Jet>]) -> Vec<Jet> {
    let stride = n.pow((rank - 1 - slot) as u32);
    (0..base.len())
        .map(|flat| {
            let x = (flat / stride) % n;
            let rest = flat - x * stride;
            let mut acc = Jet::zero(n);
            for (e, h) in ginv[x].iter().enumerate() {
                let v = &base[rest + e * stride];
                if !h.is_zero() && !v.is_zero() {
                    acc.add_product(h, v, false);
                }
            }
            acc
        })
        .collect()
}

impl Geometry {
    /// `R` with slot `k` raised when bit `k` of `raised` is set (slot 0 is
    /// the first index), flattened row-major.
    pub fn riemann_array(&self, raised: u8) -> &[Jet] {
        let raised = raised & 15;
        self.arrays.riemann[raised as usize].get_or_init(|| {
            let n = self.dim();
            if raised == 0 {
                let mut out = Vec::with_capacity(n.pow(4));
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            for d in 0..n {
                                out.push(
                                    self.riemann().component(&[a, b, c, d]).expect("in range"),
                                );
                            }
                        }
                    }
                }
                return out;
            }
            let slot = 7 - raised.leading_zeros() as usize;
            let base = self.riemann_array(raised & !(1 << slot));
            raise(base, n, 4, slot, self.metric().ginv())
        })
    }

    /// Ricci tensor with slot `k` raised when bit `k` is set.
    pub fn ricci_array(&self, raised: u8) -> &[Jet] {
        let raised = raised & 3;
        self.arrays.ricci[raised as usize].get_or_init(|| {
            let n = self.dim();
            if raised == 0 {
                let mut out = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        out.push(self.ricci().component(&[a, b]).expect("in range"));
                    }
                }
                return out;
            }
            let slot = 7 - raised.leading_zeros() as usize;
            let base = self.ricci_array(raised & !(1 << slot));
            raise(base, n, 2, slot, self.metric().ginv())
        })
    }
}
