//! Block differential operators on r-fold forms.
//!
//! The generic operators in [`block`] only need a metric, a volume element
//! and a covariant derivative, so they run on jet geometries and on single
//! Fourier modes of the flat torus alike. The closed curvature formulas in
//! [`explicit`] need the Riemann tensor and are specific to [`Geometry`].

pub mod block;
pub mod explicit;

pub use block::{
    d, d_power, delta, delta_power, delta_via_dual, hodge, hodge_inverse, lap_block, lap_rough,
    lap_weighted,
};
pub use explicit::{
    commutator_d1_d2_printed, commutator_d1_delta2_derived, commutator_d1_delta2_printed,
    commutator_delta1_delta2_printed, d2_curvature, delta2_curvature, double_form_laplacian,
    five_case_laplacian, lap_block_checked, lap_block_explicit, lap_difference_explicit,
    lap_weighted_relation, lichnerowicz, CrossTerm, Which,
};

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::jet::Jet;
use crate::tensor::{riemann_candidate_defects, MetricAlgebra, RFoldTensor, Scalar};

/// What the block operators need from the underlying space.
pub trait Background: Sync {
    type S: Scalar;
    fn metric(&self) -> &MetricAlgebra<Self::S>;
    /// `sqrt|det g|`.
    fn volume(&self) -> &Self::S;
    /// Sign of `det g`.
    fn signature_sign(&self) -> i32;
    /// Covariant derivative, new slot appended as a rank-1 block.
    fn nabla(&self, t: &RFoldTensor<Self::S>) -> Result<RFoldTensor<Self::S>>;
}

impl Background for Geometry {
    type S = Jet;

    fn metric(&self) -> &MetricAlgebra<Jet> {
        Geometry::metric(self)
    }

    fn volume(&self) -> &Jet {
        Geometry::volume(self)
    }

    fn signature_sign(&self) -> i32 {
        Geometry::signature_sign(self)
    }

    fn nabla(&self, t: &RFoldTensor<Jet>) -> Result<RFoldTensor<Jet>> {
        Geometry::nabla(self, t)
    }
}

/// Weyl part `W{R}` of a Riemann candidate; rejects inputs violating pair
/// symmetry or the first Bianchi identity.
pub fn weyl_part(r: &RFoldTensor<Jet>, geom: &Geometry) -> Result<RFoldTensor<Jet>> {
    let (pair, bianchi) = riemann_candidate_defects(r)?;
    if let Some((idx, _)) = pair.first_nonzero().or_else(|| bianchi.first_nonzero()) {
        return Err(Error::NotRiemannCandidate(format!(
            "symmetry defect at {idx:?}"
        )));
    }
    crate::tensor::weyl_part(r, geom.metric())
}
