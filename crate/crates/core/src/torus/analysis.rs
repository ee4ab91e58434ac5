//! Parseval inner product, adjointness of the block operators, the
//! positivity identity of the weighted operator and harmonicity witnesses.

use super::{
    fourier_d_block, fourier_delta_block, fourier_lap_block, fourier_lap_weighted, czero,
    FourierTensorField, WaveVector, C,
};
use crate::error::{Error, Result};
use crate::tensor::MetricAlgebra;

/// `<F, G> = sum_k (F_k, conj G_k)`, the pointwise product normalized by
/// the block factorials so that `d_(i)` and `delta_(i)` are adjoint.
pub fn inner_product(f: &FourierTensorField, g: &FourierTensorField) -> Result<C> {
    if f.shape() != g.shape() {
        return Err(Error::ShapeMismatch(format!(
            "inner product of shapes {} and {}",
            f.shape(),
            g.shape()
        )));
    }
    f.metric().require_euclidean()?;
    let m = MetricAlgebra::euclidean(f.dim(), C::new(1.0, 0.0));
    let mut acc = czero();
    for (k, a) in f.modes() {
        if let Some(b) = g.mode(k) {
            acc += m.canonical_product(a, &b.conj())?;
        }
    }
    Ok(acc)
}

/// `(<d_(i) T, U>, <T, delta_(i) U>)`; `U` has the shape of `d_(i) T`.
pub fn adjointness(t: &FourierTensorField, u: &FourierTensorField, i: usize) -> Result<(C, C)> {
    Ok((
        inner_product(&fourier_d_block(t, i)?, u)?,
        inner_product(t, &fourier_delta_block(u, i)?)?,
    ))
}

/// `(<T, bar Delta T>, (1/r) sum_i (<d_(i) T, d_(i) T> + <delta_(i) T, delta_(i) T>))`.
pub fn bar_identity(t: &FourierTensorField) -> Result<(C, C)> {
    let r = t.shape().r();
    let lhs = inner_product(t, &fourier_lap_weighted(t)?)?;
    let mut rhs = czero();
    for i in 0..r {
        let dt = fourier_d_block(t, i)?;
        rhs += inner_product(&dt, &dt)?;
        if t.shape().block_rank(i) > 0 {
            let et = fourier_delta_block(t, i)?;
            rhs += inner_product(&et, &et)?;
        }
    }
    Ok((lhs, rhs / r as f64))
}

/// Per-mode harmonicity: `bar Delta F_k = 0` against `d_(i) F_k =
/// delta_(i) F_k = 0` for every block.
#[derive(Clone, Debug)]
pub struct HarmonicReport {
    /// Modes with `bar Delta F_k = 0`, relative to `|F_k|`.
    pub harmonic: Vec<WaveVector>,
    /// Modes annihilated by every `d_(i)`, `delta_(i)` and `Delta_(i)`.
    pub fully_harmonic: Vec<WaveVector>,
    /// Nonzero modes of the field.
    pub nonzero: Vec<WaveVector>,
}

impl HarmonicReport {
    /// Harmonic, fully harmonic and constant modes coincide.
    pub fn consistent(&self) -> bool {
        let constant: Vec<WaveVector> = self
            .nonzero
            .iter()
            .filter(|k| k.is_zero())
            .cloned()
            .collect();
        self.harmonic == self.fully_harmonic && self.harmonic == constant
    }
}

pub fn harmonic_modes(f: &FourierTensorField, tol: f64) -> Result<HarmonicReport> {
    let r = f.shape().r();
    let lap = fourier_lap_weighted(f)?;
    let mut ds = Vec::new();
    for i in 0..r {
        ds.push(fourier_d_block(f, i)?);
        ds.push(fourier_delta_block(f, i)?);
        ds.push(fourier_lap_block(f, i)?);
    }
    let mut report = HarmonicReport {
        harmonic: Vec::new(),
        fully_harmonic: Vec::new(),
        nonzero: Vec::new(),
    };
    for (k, t) in f.modes() {
        let scale = t.max_norm();
        if scale == 0.0 {
            continue;
        }
        report.nonzero.push(k.clone());
        let small = |g: &FourierTensorField| g.amplitude(k).max_norm() <= tol * scale;
        if small(&lap) {
            report.harmonic.push(k.clone());
        }
        if ds.iter().all(small) {
            report.fully_harmonic.push(k.clone());
        }
    }
    Ok(report)
}

/// Witnesses for "closed implies exact" in block `i`: the size of `d_(i) F`
/// relative to `F`, and the relative residual of `F - H = d_(i) delta_(i) G`
/// with `Delta_(i) G = F - H`. No general statement is asserted; on the flat
/// torus the block Laplacian is `|k|^2`, so closed fields are exact here.
pub fn closedness_witness(f: &FourierTensorField, i: usize) -> Result<(f64, f64)> {
    let closed = fourier_d_block(f, i)?.relative_size(f);
    let sp = super::solve_superpotential(f)?;
    let exact = fourier_d_block(&fourier_delta_block(&sp.t0, i)?, i)?;
    let target = f.sub(&sp.harmonic)?;
    Ok((closed, target.residual(&exact)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::BlockShape;
    use crate::torus::TOLERANCE;

    fn field(n: usize, ranks: &[usize], seed: u64) -> FourierTensorField {
        FourierTensorField::random(BlockShape::new(n, ranks).unwrap(), 2, seed, true)
    }

    #[test]
    fn block_operators_are_adjoint() {
        let t = field(3, &[1, 2], 1);
        for i in 0..2 {
            let u = FourierTensorField::random(fourier_d_block(&t, i).unwrap().shape().clone(), 2, 7 + i as u64, false);
            let (a, b) = adjointness(&t, &u, i).unwrap();
            assert!((a - b).norm() <= TOLERANCE * a.norm().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn weighted_operator_is_positive() {
        let t = field(4, &[2, 1], 2);
        let (a, b) = bar_identity(&t).unwrap();
        assert!((a - b).norm() <= TOLERANCE * a.norm());
        assert!(a.re > 0.0 && a.im.abs() <= TOLERANCE * a.re);
    }

    #[test]
    fn harmonic_modes_are_the_constant_mode() {
        let rep = harmonic_modes(&field(3, &[1, 1], 3), TOLERANCE).unwrap();
        assert_eq!(rep.harmonic, vec![WaveVector::zero(3)]);
        assert!(rep.consistent());
    }

    #[test]
    fn exact_fields_are_closed_and_exact() {
        let f = fourier_d_block(&field(3, &[1], 4), 0).unwrap();
        let (closed, exact) = closedness_witness(&f, 0).unwrap();
        assert!(closed <= TOLERANCE && exact <= TOLERANCE);
        let (closed, _) = closedness_witness(&field(3, &[1], 5), 0).unwrap();
        assert!(closed > 0.1);
    }
}
