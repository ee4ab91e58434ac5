//! Seeded random inputs: block tensors with polynomial components and their
//! symmetry projections.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::jet::{Jet, Rational, EXACT};
use crate::tensor::{project_riemann_candidate, project_weyl_candidate, BlockShape, MetricAlgebra};
use crate::tensor::RFoldTensor;

/// FNV-1a; stable across platforms and releases, unlike `DefaultHasher`.
fn stream_of(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Random source for one check: the run seed and the check id select an
/// independent ChaCha stream, so checks can run in any order.
pub struct Sampler {
    rng: ChaCha8Rng,
    n: usize,
}

impl Sampler {
    pub fn new(seed: u64, label: &str, n: usize) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_of(label));
        Sampler { rng, n }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Exact polynomial of degree at most two with small integer
    /// coefficients.
    pub fn jet(&mut self) -> Jet {
        let n = self.n;
        let mut terms = Vec::new();
        let mut push = |rng: &mut ChaCha8Rng, e: Vec<u32>| {
            if rng.gen_bool(0.5) {
                let c = rng.gen_range(-3..=3);
                if c != 0 {
                    terms.push((e, Rational::integer(c)));
                }
            }
        };
        push(&mut self.rng, vec![0; n]);
        for a in 0..n {
            let mut e = vec![0; n];
            e[a] = 1;
            push(&mut self.rng, e.clone());
            for b in a..n {
                let mut f = e.clone();
                f[b] += 1;
                push(&mut self.rng, f);
            }
        }
        if terms.is_empty() {
            terms.push((vec![0; n], Rational::integer(self.rng.gen_range(1..=3))));
        }
        Jet::from_terms(n, EXACT, terms).expect("valid exponents")
    }

    pub fn tensor(&mut self, ranks: &[usize]) -> Result<RFoldTensor<Jet>> {
        let shape = BlockShape::new(self.n, ranks)?;
        Ok(RFoldTensor::from_fn(shape, Jet::zero(self.n), |_| {
            self.jet()
        }))
    }

    /// `(T + sign tT)/2` for a random `(p,p)`-form.
    pub fn pp(&mut self, p: usize, sign: i32) -> Result<RFoldTensor<Jet>> {
        let t = self.tensor(&[p, p])?;
        let tt = t.transpose()?;
        let s = if sign > 0 { t.add(&tt)? } else { t.sub(&tt)? };
        Ok(s.scale(&Rational::new(1, 2)))
    }

    /// Symmetric trace-free double (1,1)-form for the given metric.
    pub fn traceless_symmetric(&mut self, metric: &MetricAlgebra<Jet>) -> Result<RFoldTensor<Jet>> {
        let s = self.pp(1, 1)?;
        let tr = metric.trace(&s)?.data()[0].clone();
        let coef = Rational::new(1, self.n as i64);
        let g = metric.metric_tensor();
        s.sub(&g.times(&tr).scale(&coef))
    }

    pub fn riemann_candidate(&mut self) -> Result<RFoldTensor<Jet>> {
        project_riemann_candidate(&self.tensor(&[2, 2])?)
    }

    pub fn weyl_candidate(&mut self, metric: &MetricAlgebra<Jet>) -> Result<RFoldTensor<Jet>> {
        project_weyl_candidate(&self.tensor(&[2, 2])?, metric)
    }

    /// Random scalar field as a single 0-form.
    pub fn scalar(&mut self) -> Result<RFoldTensor<Jet>> {
        self.tensor(&[0])
    }
}
