//! Spectral potentials on the flat n-torus.
//!
//! A field is a finite sum of Fourier modes `F_k e^{i k.x}` with complex
//! block-antisymmetric amplitudes. On a mode the covariant derivative is
//! multiplication by `i k`, so the generic block operators act mode by mode
//! through [`ModeBackground`], and the weighted operator is `|k|^2`. The
//! constant mode is reported as the harmonic part.

pub mod analysis;
pub mod dense;
pub mod potentials;
pub mod text;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operators::{self, Background};
use crate::tensor::{BlockShape, MetricAlgebra, RFoldTensor};

pub use analysis::{
    adjointness, bar_identity, closedness_witness, harmonic_modes, inner_product, HarmonicReport,
};
pub use potentials::{
    decompose_pp_symmetric, riemann_pair_potentials, weyl_potential, PpDecomposition,
    RiemannPotentials, WeylPotential,
};

pub type C = Complex64;

/// Relative per-mode tolerance of every torus comparison.
pub const TOLERANCE: f64 = 1e-12;

pub(crate) fn czero() -> C {
    C::new(0.0, 0.0)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WaveVector(pub Vec<i32>);

impl WaveVector {
    pub fn zero(n: usize) -> WaveVector {
        WaveVector(vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm2(&self) -> i64 {
        self.0.iter().map(|&k| (k as i64) * (k as i64)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn neg(&self) -> WaveVector {
        WaveVector(self.0.iter().map(|&k| -k).collect())
    }

    pub fn max_abs(&self) -> u32 {
        self.0.iter().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    /// `i k_a`, the symbol of the derivative.
    pub fn symbol(&self) -> Vec<C> {
        self.0.iter().map(|&k| C::new(0.0, k as f64)).collect()
    }

    /// Every wave vector with `max |k_i| <= bandlimit`, in increasing order.
    pub fn cube(n: usize, bandlimit: u32) -> Vec<WaveVector> {
        let b = bandlimit as i32;
        let side = (2 * b + 1) as usize;
        (0..side.pow(n as u32))
            .map(|mut o| {
                let mut k = vec![0; n];
                for slot in (0..n).rev() {
                    k[slot] = (o % side) as i32 - b;
                    o /= side;
                }
                WaveVector(k)
            })
            .collect()
    }
}

impl fmt::Display for WaveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Signature of the flat torus metric; only the Euclidean one is solvable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusMetric {
    Euclidean,
    Lorentzian,
}

impl TorusMetric {
    pub fn name(self) -> &'static str {
        match self {
            TorusMetric::Euclidean => "euclidean",
            TorusMetric::Lorentzian => "lorentzian",
        }
    }

    pub fn require_euclidean(self) -> Result<()> {
        match self {
            TorusMetric::Euclidean => Ok(()),
            TorusMetric::Lorentzian => Err(Error::IndefiniteTorus(
                "with Lorentzian signature k.k vanishes on null wave vectors, so the \
                 weighted operator is not invertible off the constant mode"
                    .into(),
            )),
        }
    }
}

/// One Fourier mode as a background: flat Euclidean metric, derivative `i k`.
pub struct ModeBackground {
    symbol: RFoldTensor<C>,
    metric: MetricAlgebra<C>,
    one: C,
}

impl ModeBackground {
    pub fn new(k: &WaveVector) -> Result<ModeBackground> {
        let n = k.dim();
        let sym = k.symbol();
        Ok(ModeBackground {
            symbol: RFoldTensor::from_indices(BlockShape::new(n, &[1])?, czero(), |i| sym[i[0]]),
            metric: MetricAlgebra::euclidean(n, C::new(1.0, 0.0)),
            one: C::new(1.0, 0.0),
        })
    }
}

impl Background for ModeBackground {
    type S = C;

    fn metric(&self) -> &MetricAlgebra<C> {
        &self.metric
    }

    fn volume(&self) -> &C {
        &self.one
    }

    fn signature_sign(&self) -> i32 {
        1
    }

    fn nabla(&self, t: &RFoldTensor<C>) -> Result<RFoldTensor<C>> {
        t.outer(&self.symbol)
    }
}

/// Relative distance of two amplitudes: `|a - b|_max / max(|a|_max, |b|_max)`,
/// zero when both vanish.
pub fn relative(a: &RFoldTensor<C>, b: &RFoldTensor<C>) -> Result<f64> {
    let scale = a.max_norm().max(b.max_norm());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(a.sub(b)?.max_norm() / scale)
}

#[derive(Clone, Debug)]
pub struct FourierTensorField {
    shape: BlockShape,
    bandlimit: u32,
    metric: TorusMetric,
    modes: BTreeMap<WaveVector, RFoldTensor<C>>,
}

impl FourierTensorField {
    pub fn new(shape: BlockShape, bandlimit: u32) -> FourierTensorField {
        FourierTensorField {
            shape,
            bandlimit,
            metric: TorusMetric::Euclidean,
            modes: BTreeMap::new(),
        }
    }

    pub fn with_metric(mut self, metric: TorusMetric) -> FourierTensorField {
        self.metric = metric;
        self
    }

    /// Seeded field with every mode of the bandlimit cube filled by
    /// amplitudes uniform in `[-1, 1] + i[-1, 1]`; `real` imposes
    /// `F_{-k} = conj(F_k)`.
    pub fn random(shape: BlockShape, bandlimit: u32, seed: u64, real: bool) -> FourierTensorField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = FourierTensorField::new(shape.clone(), bandlimit);
        for k in WaveVector::cube(shape.dim(), bandlimit) {
            if real {
                if let Some(m) = f.modes.get(&k.neg()) {
                    let c = m.conj();
                    f.modes.insert(k, c);
                    continue;
                }
            }
            let zero_real = real && k.is_zero();
            let t = RFoldTensor::from_fn(shape.clone(), czero(), |_| {
                let re = rng.gen_range(-1.0..=1.0);
                let im = if zero_real { 0.0 } else { rng.gen_range(-1.0..=1.0) };
                C::new(re, im)
            });
            f.modes.insert(k, t);
        }
        f
    }

    /// A single mode `amplitude e^{i k.x}`.
    pub fn single(k: WaveVector, amplitude: RFoldTensor<C>, bandlimit: u32) -> Result<Self> {
        let mut f = FourierTensorField::new(amplitude.shape().clone(), bandlimit);
        f.insert(k, amplitude)?;
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn bandlimit(&self) -> u32 {
        self.bandlimit
    }

    pub fn metric(&self) -> TorusMetric {
        self.metric
    }

    pub fn modes(&self) -> &BTreeMap<WaveVector, RFoldTensor<C>> {
        &self.modes
    }

    pub fn mode(&self, k: &WaveVector) -> Option<&RFoldTensor<C>> {
        self.modes.get(k)
    }

    /// Amplitude at `k`, zero when the mode is absent.
    pub fn amplitude(&self, k: &WaveVector) -> RFoldTensor<C> {
        self.modes
            .get(k)
            .cloned()
            .unwrap_or_else(|| RFoldTensor::zeros(self.shape.clone(), czero()))
    }

    pub fn insert(&mut self, k: WaveVector, t: RFoldTensor<C>) -> Result<()> {
        if k.dim() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "wave vector {k} in dimension {}",
                self.dim()
            )));
        }
        if k.max_abs() > self.bandlimit {
            return Err(Error::ShapeMismatch(format!(
                "wave vector {k} exceeds bandlimit {}",
                self.bandlimit
            )));
        }
        if t.shape() != &self.shape {
            return Err(Error::ShapeMismatch(format!(
                "mode of shape {} in a field of shape {}",
                t.shape(),
                self.shape
            )));
        }
        self.modes.insert(k, t);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.modes.values().all(|t| t.is_zero())
    }

    pub fn max_norm(&self) -> f64 {
        self.modes.values().map(|t| t.max_norm()).fold(0.0, f64::max)
    }

    /// `max_k |F_{-k} - conj(F_k)|`; zero for real-valued fields.
    pub fn reality_defect(&self) -> f64 {
        self.modes
            .iter()
            .map(|(k, t)| {
                let m = self.amplitude(&k.neg());
                m.sub(&t.conj()).map(|d| d.max_norm()).unwrap_or(f64::INFINITY)
            })
            .fold(0.0, f64::max)
    }

    /// Applies `op` to every mode in parallel; results keep wave-vector
    /// order. The output shape comes from the operator, or from `empty`
    /// when the field has no modes.
    pub fn map_modes(
        &self,
        empty: BlockShape,
        op: impl Fn(&WaveVector, &RFoldTensor<C>) -> Result<RFoldTensor<C>> + Sync,
    ) -> Result<FourierTensorField> {
        let out: Vec<(WaveVector, RFoldTensor<C>)> = self
            .modes
            .par_iter()
            .map(|(k, t)| Ok((k.clone(), op(k, t)?)))
            .collect::<Result<_>>()?;
        let shape = out.first().map(|(_, t)| t.shape().clone()).unwrap_or(empty);
        Ok(FourierTensorField {
            shape,
            bandlimit: self.bandlimit,
            metric: self.metric,
            modes: out.into_iter().collect(),
        })
    }

    /// Applies a block operator on every mode.
    pub fn map_operator(
        &self,
        empty: BlockShape,
        op: impl Fn(&ModeBackground, &RFoldTensor<C>) -> Result<RFoldTensor<C>> + Sync,
    ) -> Result<FourierTensorField> {
        self.metric.require_euclidean()?;
        self.map_modes(empty, |k, t| op(&ModeBackground::new(k)?, t))
    }

    fn combine(&self, other: &Self, f: impl Fn(&RFoldTensor<C>, &RFoldTensor<C>) -> Result<RFoldTensor<C>>) -> Result<Self> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "fields of shape {} and {}",
                self.shape, other.shape
            )));
        }
        let mut out = FourierTensorField {
            shape: self.shape.clone(),
            bandlimit: self.bandlimit.max(other.bandlimit),
            metric: self.metric,
            modes: BTreeMap::new(),
        };
        for k in self.modes.keys().chain(other.modes.keys()) {
            if !out.modes.contains_key(k) {
                let t = f(&self.amplitude(k), &other.amplitude(k))?;
                out.modes.insert(k.clone(), t);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a.sub(b))
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut out = self.clone();
        for t in out.modes.values_mut() {
            *t = t.map(|z| z * c);
        }
        out
    }

    /// Mode-wise relative distance: the largest [`relative`] over all modes
    /// present in either field.
    pub fn residual(&self, other: &Self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for k in self.modes.keys().chain(other.modes.keys()) {
            worst = worst.max(relative(&self.amplitude(k), &other.amplitude(k))?);
        }
        Ok(worst)
    }

    /// `max |self| / max |reference|`, for quantities that should vanish.
    pub fn relative_size(&self, reference: &Self) -> f64 {
        let scale = reference.max_norm();
        if scale == 0.0 {
            return self.max_norm();
        }
        self.max_norm() / scale
    }

    /// The constant mode as a field of its own.
    pub fn zero_mode(&self) -> FourierTensorField {
        let mut out = FourierTensorField::new(self.shape.clone(), self.bandlimit)
            .with_metric(self.metric);
        let k0 = WaveVector::zero(self.dim());
        if let Some(t) = self.modes.get(&k0) {
            out.modes.insert(k0, t.clone());
        }
        out
    }
}

/// `d_(i) F` mode by mode.
pub fn fourier_d_block(f: &FourierTensorField, i: usize) -> Result<FourierTensorField> {
    let empty = if i < f.shape().r() {
        f.shape().with_rank(i, f.shape().block_rank(i) + 1)?
    } else {
        f.shape().appended(1)?
    };
    f.map_operator(empty, |bg, t| operators::d(bg, t, i))
}

/// `delta_(i) F` mode by mode.
pub fn fourier_delta_block(f: &FourierTensorField, i: usize) -> Result<FourierTensorField> {
    let s = f.shape();
    let empty = if i < s.r() && s.block_rank(i) > 0 {
        s.with_rank(i, s.block_rank(i) - 1)?
    } else {
        s.clone()
    };
    f.map_operator(empty, |bg, t| operators::delta(bg, t, i))
}

/// `Delta_(i) F` mode by mode.
pub fn fourier_lap_block(f: &FourierTensorField, i: usize) -> Result<FourierTensorField> {
    f.map_operator(f.shape().clone(), |bg, t| operators::lap_block(bg, t, i))
}

/// Weighted operator `bar Delta F` mode by mode.
pub fn fourier_lap_weighted(f: &FourierTensorField) -> Result<FourierTensorField> {
    f.map_operator(f.shape().clone(), |bg, t| operators::lap_weighted(bg, t))
}

/// Superpotential `T°` with `bar Delta T° = F - H`, and the harmonic part `H`.
#[derive(Clone, Debug)]
pub struct Superpotential {
    pub t0: FourierTensorField,
    pub harmonic: FourierTensorField,
}

/// `T°_k = F_k / |k|^2` off the constant mode; the constant mode becomes
/// the harmonic part.
pub fn solve_superpotential(f: &FourierTensorField) -> Result<Superpotential> {
    f.metric().require_euclidean()?;
    let k0 = WaveVector::zero(f.dim());
    let mut t0 = FourierTensorField::new(f.shape().clone(), f.bandlimit()).with_metric(f.metric());
    for (k, t) in f.modes() {
        if *k != k0 {
            let inv = 1.0 / k.norm2() as f64;
            t0.modes.insert(k.clone(), t.map(|z| z * inv));
        }
    }
    Ok(Superpotential {
        t0,
        harmonic: f.zero_mode(),
    })
}

/// The `2r` potentials of a field and the residual of
/// `F = (1/r) sum_i (delta_(i) Y_(i) + d_(i) Z_(i)) + H`.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub superpotential: FourierTensorField,
    pub harmonic: FourierTensorField,
    pub y: Vec<FourierTensorField>,
    pub z: Vec<FourierTensorField>,
    pub residual: f64,
}

/// `Y_(i) = d_(i) T°`, `Z_(i) = delta_(i) T°` for every block.
pub fn decompose(f: &FourierTensorField) -> Result<DecompositionResult> {
    let r = f.shape().r();
    if r == 0 {
        return Err(Error::Unsupported(
            "decomposition needs at least one block".into(),
        ));
    }
    let sp = solve_superpotential(f)?;
    let mut y = Vec::with_capacity(r);
    let mut z = Vec::with_capacity(r);
    for i in 0..r {
        y.push(fourier_d_block(&sp.t0, i)?);
        z.push(fourier_delta_block(&sp.t0, i)?);
    }
    let rebuilt = reconstruct(f.shape(), &y, &z, &sp.harmonic)?;
    Ok(DecompositionResult {
        residual: f.residual(&rebuilt)?,
        superpotential: sp.t0,
        harmonic: sp.harmonic,
        y,
        z,
    })
}

/// `(1/r) sum_i (delta_(i) Y_(i) + d_(i) Z_(i)) + H`; blocks of rank zero
/// carry no `Z` term.
pub fn reconstruct(
    shape: &BlockShape,
    y: &[FourierTensorField],
    z: &[FourierTensorField],
    harmonic: &FourierTensorField,
) -> Result<FourierTensorField> {
    let r = shape.r();
    let mut acc = FourierTensorField::new(shape.clone(), harmonic.bandlimit());
    for i in 0..r {
        acc = acc.add(&fourier_delta_block(&y[i], i)?)?;
        if shape.block_rank(i) > 0 {
            acc = acc.add(&fourier_d_block(&z[i], i)?)?;
        }
    }
    acc.scale(1.0 / r as f64).add(harmonic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(n: usize, ranks: &[usize]) -> BlockShape {
        BlockShape::new(n, ranks).unwrap()
    }

    fn unit(s: &BlockShape) -> RFoldTensor<C> {
        let mut first = true;
        RFoldTensor::from_fn(s.clone(), czero(), |_| {
            let v = if first { 1.0 } else { 0.0 };
            first = false;
            C::new(v, 0.0)
        })
    }

    #[test]
    fn cube_has_every_mode_in_order() {
        let c = WaveVector::cube(2, 1);
        assert_eq!(c.len(), 9);
        assert_eq!(c[0], WaveVector(vec![-1, -1]));
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn gradient_of_an_exponential() {
        let s = shape(3, &[0]);
        let k = WaveVector(vec![1, -2, 0]);
        let f = FourierTensorField::single(k.clone(), unit(&s), 2).unwrap();
        let g = fourier_d_block(&f, 0).unwrap();
        let m = g.mode(&k).unwrap();
        assert_eq!(m.data(), &[C::new(0.0, 1.0), C::new(0.0, -2.0), czero()]);
    }

    #[test]
    fn d_squared_vanishes() {
        let f = FourierTensorField::random(shape(4, &[1, 2]), 1, 3, false);
        for i in 0..2 {
            let dd = fourier_d_block(&fourier_d_block(&f, i).unwrap(), i).unwrap();
            assert!(dd.relative_size(&f) <= 1e-13);
            let ee = fourier_delta_block(&fourier_delta_block(&f, i).unwrap(), i).unwrap();
            assert!(ee.relative_size(&f) <= 1e-13);
        }
    }

    #[test]
    fn delta_of_the_constant_mode_is_zero() {
        let s = shape(3, &[2]);
        let f = FourierTensorField::single(WaveVector::zero(3), unit(&s), 1).unwrap();
        assert!(fourier_delta_block(&f, 0).unwrap().is_zero());
    }

    #[test]
    fn single_unit_mode_superpotential() {
        let s = shape(4, &[2, 2]);
        let k = WaveVector(vec![1, 0, 0, 0]);
        let f = FourierTensorField::single(k.clone(), unit(&s), 2).unwrap();
        let sp = solve_superpotential(&f).unwrap();
        assert_eq!(sp.t0.mode(&k).unwrap().data(), f.mode(&k).unwrap().data());
        assert!(sp.harmonic.is_zero());
    }

    #[test]
    fn constant_field_is_harmonic() {
        let s = shape(3, &[1, 1]);
        let f = FourierTensorField::single(WaveVector::zero(3), unit(&s), 1).unwrap();
        let dec = decompose(&f).unwrap();
        assert!(dec.superpotential.is_zero());
        assert!(dec.y.iter().chain(&dec.z).all(|p| p.is_zero()));
        assert_eq!(dec.harmonic.residual(&f).unwrap(), 0.0);
        assert_eq!(dec.residual, 0.0);
    }

    #[test]
    fn weighted_operator_inverts_the_solve() {
        let f = FourierTensorField::random(shape(4, &[2, 2]), 2, 11, true);
        let sp = solve_superpotential(&f).unwrap();
        let back = fourier_lap_weighted(&sp.t0).unwrap().add(&sp.harmonic).unwrap();
        assert!(f.residual(&back).unwrap() <= TOLERANCE);
    }

    #[test]
    fn decompositions_reconstruct() {
        for (n, ranks, seed) in [(3, &[2][..], 1), (4, &[2, 2][..], 2), (3, &[1, 2, 1][..], 3)] {
            let f = FourierTensorField::random(shape(n, ranks), 2, seed, true);
            let dec = decompose(&f).unwrap();
            assert!(dec.residual <= TOLERANCE, "{ranks:?}: {}", dec.residual);
        }
    }

    #[test]
    fn exact_one_form_lives_in_the_z_part() {
        let phi = FourierTensorField::random(shape(3, &[0]), 2, 5, true);
        let f = fourier_d_block(&phi, 0).unwrap();
        let dec = decompose(&f).unwrap();
        let z_part = fourier_d_block(&dec.z[0], 0).unwrap();
        let y_part = fourier_delta_block(&dec.y[0], 0).unwrap();
        assert!(f.residual(&z_part).unwrap() <= TOLERANCE);
        assert!(y_part.relative_size(&f) <= TOLERANCE);
    }

    #[test]
    fn random_real_fields_are_conjugate_symmetric() {
        let f = FourierTensorField::random(shape(3, &[1, 1]), 1, 9, true);
        assert_eq!(f.reality_defect(), 0.0);
        assert!(FourierTensorField::random(shape(3, &[1]), 1, 9, false).reality_defect() > 0.0);
    }

    #[test]
    fn lorentzian_requests_are_rejected() {
        let f = FourierTensorField::random(shape(3, &[1]), 1, 1, true)
            .with_metric(TorusMetric::Lorentzian);
        assert!(matches!(decompose(&f), Err(Error::IndefiniteTorus(_))));
        assert!(matches!(fourier_d_block(&f, 0), Err(Error::IndefiniteTorus(_))));
    }
}
