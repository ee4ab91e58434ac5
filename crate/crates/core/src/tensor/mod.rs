//! r-fold forms: tensors whose slots split into blocks, each block totally
//! antisymmetric. All slots are covariant.

mod metric;
mod ops;
mod project;
mod scalar;
pub mod shape;
pub mod text;

pub use metric::MetricAlgebra;
pub use ops::SlotPermutation;
pub use project::{
    kulkarni_nomizu, project_riemann_candidate, project_weyl_candidate, riemann_candidate_defects,
    weyl_part,
};
pub use scalar::Scalar;
pub use shape::{BlockShape, Masks, MAX_BLOCKS, MAX_DIM, MAX_RANK};

use crate::error::{Error, Result};
use crate::jet::{Jet, Rational};

#[derive(Clone, Debug)]
pub struct RFoldTensor<S> {
    shape: BlockShape,
    data: Vec<S>,
    zero: S,
}

impl<S: Scalar> RFoldTensor<S> {
    pub fn zeros(shape: BlockShape, zero: S) -> RFoldTensor<S> {
        let data = vec![zero.clone(); shape.len()];
        RFoldTensor { shape, data, zero }
    }

    /// Builds a tensor from its canonical components (strictly increasing
    /// indices within every block).
    pub fn from_fn(shape: BlockShape, zero: S, mut f: impl FnMut(&Masks) -> S) -> RFoldTensor<S> {
        let data = shape.keys().map(|k| f(&k)).collect();
        RFoldTensor { shape, data, zero }
    }

    /// Like [`RFoldTensor::from_fn`], with the canonical index tuple as input.
    pub fn from_indices(
        shape: BlockShape,
        zero: S,
        mut f: impl FnMut(&[usize]) -> S,
    ) -> RFoldTensor<S> {
        let data = shape.keys().map(|k| f(&shape.indices(&k))).collect();
        RFoldTensor { shape, data, zero }
    }

    pub fn from_data(shape: BlockShape, zero: S, data: Vec<S>) -> Result<RFoldTensor<S>> {
        if data.len() != shape.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} components supplied for shape {shape} of length {}",
                data.len(),
                shape.len()
            )));
        }
        Ok(RFoldTensor { shape, data, zero })
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn r(&self) -> usize {
        self.shape.r()
    }

    pub fn zero_scalar(&self) -> &S {
        &self.zero
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    /// Component at a canonical key.
    #[inline]
    pub fn get(&self, key: &Masks) -> &S {
        match self.shape.offset(key) {
            Some(o) => &self.data[o],
            None => panic!("non-canonical key {key:?} for shape {}", self.shape),
        }
    }

    pub fn get_mut(&mut self, key: &Masks) -> &mut S {
        let o = self.shape.offset(key).expect("canonical key");
        &mut self.data[o]
    }

    /// Component at an arbitrary index tuple (in slot order), with the sign
    /// induced by block antisymmetry.
    pub fn component(&self, idx: &[usize]) -> Result<S> {
        let (key, sign) = self.shape.canonicalize(idx)?;
        if sign == 0 {
            return Ok(self.zero.clone());
        }
        Ok(self.get(&key).signed(sign))
    }

    /// Component at an index tuple known to be in range, as a reference and
    /// sign; `None` when a block repeats an index.
    #[inline]
    pub fn lookup(&self, idx: &[usize]) -> Option<(&S, i32)> {
        let mut key = [0u16; shape::MAX_BLOCKS];
        let mut sign = 1;
        let mut at = 0;
        for (b, &k) in self.shape.ranks().iter().enumerate() {
            let (m, s) = shape::sort_sign(&idx[at..at + k]);
            if s == 0 {
                return None;
            }
            key[b] = m;
            sign *= s;
            at += k;
        }
        Some((self.get(&key), sign))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Masks, &S)> + '_ {
        self.data
            .iter()
            .enumerate()
            .map(|(o, s)| (self.shape.masks_at(o), s))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// First nonzero component in storage order, as a full index tuple.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, &S)> {
        self.data
            .iter()
            .position(|s| !s.is_zero())
            .map(|o| (self.shape.indices(&self.shape.masks_at(o)), &self.data[o]))
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> RFoldTensor<S> {
        RFoldTensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(f).collect(),
            zero: self.zero.clone(),
        }
    }

    fn check_same_shape(&self, other: &RFoldTensor<S>) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!(
                "{} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn zip_with(
        &self,
        other: &RFoldTensor<S>,
        f: impl Fn(&S, &S) -> S,
    ) -> Result<RFoldTensor<S>> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(RFoldTensor {
            shape: self.shape.clone(),
            data,
            zero: self.zero.clone(),
        })
    }

    pub fn add(&self, other: &RFoldTensor<S>) -> Result<RFoldTensor<S>> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &RFoldTensor<S>) -> Result<RFoldTensor<S>> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn add_assign(&mut self, other: &RFoldTensor<S>) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.add_assign(b);
        }
        Ok(())
    }

    pub fn neg(&self) -> RFoldTensor<S> {
        self.map(Scalar::neg)
    }

    pub fn scale(&self, r: &Rational) -> RFoldTensor<S> {
        if r.is_zero() {
            return RFoldTensor::zeros(self.shape.clone(), self.zero.clone());
        }
        self.map(|s| s.scale(r))
    }

    /// Multiplies every component by a scalar field.
    pub fn times(&self, f: &S) -> RFoldTensor<S> {
        self.map(|s| if s.is_zero() { s.clone() } else { s.mul(f) })
    }

    /// Drops zero-rank blocks; the second value lists the positions removed.
    pub fn collapsed(&self) -> (RFoldTensor<S>, Vec<usize>) {
        let (shape, removed) = self.shape.collapsed();
        (
            RFoldTensor {
                shape,
                data: self.data.clone(),
                zero: self.zero.clone(),
            },
            removed,
        )
    }

    /// Reinterprets the same components under a shape that differs only in
    /// zero-rank blocks (inserting or removing collapsed blocks).
    pub fn reshaped(&self, shape: BlockShape) -> Result<RFoldTensor<S>> {
        if shape.collapsed().0 != self.shape.collapsed().0 {
            return Err(Error::ShapeMismatch(format!(
                "cannot reshape {} to {shape}",
                self.shape
            )));
        }
        Ok(RFoldTensor {
            shape,
            data: self.data.clone(),
            zero: self.zero.clone(),
        })
    }
}

impl RFoldTensor<Jet> {
    /// Largest absolute jet coefficient over all components.
    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .map(Jet::max_abs)
            .max()
            .unwrap_or(Rational::ZERO)
    }

    /// Smallest truncation order among the components.
    pub fn order(&self) -> u32 {
        self.data
            .iter()
            .map(Jet::order)
            .min()
            .unwrap_or(crate::jet::EXACT)
    }

    pub fn truncate(&self, order: u32) -> RFoldTensor<Jet> {
        self.map(|j| j.truncate(order))
    }
}

impl RFoldTensor<num_complex::Complex64> {
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max).sqrt()
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_applies_block_signs() {
        let shape = BlockShape::new(3, &[2, 1]).unwrap();
        let t = RFoldTensor::from_indices(shape, Jet::zero(1), |idx| {
            Jet::constant(
                1,
                Rational::integer((idx[0] * 100 + idx[1] * 10 + idx[2]) as i64),
            )
        });
        assert_eq!(
            t.component(&[0, 1, 2]).unwrap(),
            Jet::constant(1, Rational::integer(12))
        );
        assert_eq!(
            t.component(&[1, 0, 2]).unwrap(),
            Jet::constant(1, Rational::integer(-12))
        );
        assert!(t.component(&[1, 1, 2]).unwrap().is_zero());
    }
}
