//! Levi-Civita connection and curvature of a metric given as jets.
//!
//! Conventions: `Gamma^a_{bc} = 1/2 g^{ad}(d_b g_dc + d_c g_db - d_d g_bc)`,
//! `R^d_{abc} = d_b Gamma^d_{ac} - d_c Gamma^d_{ab} + Gamma^d_{be} Gamma^e_{ac}
//! - Gamma^d_{ce} Gamma^e_{ab}`, so that `v_{a;bc} - v_{a;cb} = R^d_{abc} v_d`;
//! `R_{abcd} = g_{ae} R^e_{bcd}` and `R_{ab} = R^c_{acb}`.

mod arrays;
mod catalog;

pub use catalog::{catalog_entries, parse_geometry, CatalogEntry};

use crate::error::{Error, Result};
use crate::jet::{determinant, invert_matrix, Jet, Rational, EXACT};
use crate::tensor::shape::{indices_of, replace, BlockShape, Masks};
use crate::tensor::{weyl_part, MetricAlgebra, RFoldTensor, Scalar};

pub struct Geometry {
    name: String,
    order: u32,
    metric: MetricAlgebra<Jet>,
    /// `gamma[a][b][c] = Gamma^a_{bc}`.
    gamma: Vec<Vec<Vec<Jet>>>,
    riemann: RFoldTensor<Jet>,
    ricci: RFoldTensor<Jet>,
    scalar: Jet,
    weyl: RFoldTensor<Jet>,
    volume: Jet,
    signature: i32,
    arrays: arrays::CurvatureArrays,
}

impl Geometry {
    /// Builds all derived quantities from metric jets. `order` is the jet order
    /// of the metric; curvature is valid to `order - 2`.
    pub fn from_metric(name: impl Into<String>, g: Vec<Vec<Jet>>, order: u32) -> Result<Geometry> {
        let n = g.len();
        if n == 0 {
            return Err(Error::InvalidGeometry("empty metric".into()));
        }
        if order < 2 {
            return Err(Error::InsufficientOrder {
                needed: 2,
                have: order,
            });
        }
        for (a, row) in g.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGeometry("metric is not square".into()));
            }
            for (b, x) in row.iter().enumerate() {
                if x.nvars() != n && !x.is_zero() {
                    return Err(Error::DimensionMismatch(x.nvars(), n));
                }
                if !(x - &g[b][a]).is_zero() {
                    return Err(Error::InvalidGeometry(format!(
                        "metric is not symmetric at ({a},{b})"
                    )));
                }
            }
        }
        let g: Vec<Vec<Jet>> = g
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.truncate(order)).collect())
            .collect();
        let ginv = invert_matrix(&g)?;
        let det = determinant(&g)?;
        let signature = det.constant_term().signum();
        if signature == 0 {
            return Err(Error::DegenerateMetric);
        }
        let abs_det = if signature < 0 { -&det } else { det };
        let volume = abs_det.truncate(order).sqrt().map_err(|e| {
            Error::InvalidGeometry(format!("volume element is not an exact rational jet ({e})"))
        })?;

        // dg[c][a][b] = d_c g_ab
        let dg: Vec<Vec<Vec<Jet>>> = (0..n)
            .map(|c| {
                (0..n)
                    .map(|a| (0..n).map(|b| g[a][b].partial(c)).collect::<Result<_>>())
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let half = Rational::new(1, 2);
        let mut gamma = vec![vec![vec![Jet::zero(n); n]; n]; n];
        for b in 0..n {
            for c in b..n {
                // lowered: Gamma_{d bc}
                let low: Vec<Jet> = (0..n)
                    .map(|d| &(&dg[b][d][c] + &dg[c][d][b]) - &dg[d][b][c])
                    .collect();
                for a in 0..n {
                    let mut acc = Jet::zero(n);
                    for (d, l) in low.iter().enumerate() {
                        if !l.is_zero() {
                            acc.add_product(&ginv[a][d], l, false);
                        }
                    }
                    let v = acc.scale(&half).truncate(order - 1);
                    gamma[a][b][c] = v.clone();
                    gamma[a][c][b] = v;
                }
            }
        }

        // dgamma[e][a][b][c] = d_e Gamma^a_{bc}
        let dgamma: Vec<Vec<Vec<Vec<Jet>>>> = (0..n)
            .map(|e| {
                (0..n)
                    .map(|a| {
                        (0..n)
                            .map(|b| {
                                (0..n)
                                    .map(|c| gamma[a][b][c].partial(e))
                                    .collect::<Result<_>>()
                            })
                            .collect::<Result<_>>()
                    })
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        // up[d][a][b][c] = R^d_{abc}, for b < c
        let mut up = vec![vec![vec![vec![Jet::zero(n); n]; n]; n]; n];
        for d in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for c in b + 1..n {
                        let mut acc = &dgamma[b][d][a][c] - &dgamma[c][d][a][b];
                        for e in 0..n {
                            acc.add_product(&gamma[d][b][e], &gamma[e][a][c], false);
                            acc.add_product(&gamma[d][c][e], &gamma[e][a][b], true);
                        }
                        up[d][a][b][c] = acc;
                    }
                }
            }
        }
        let shape22 = BlockShape::new(n, &[2, 2])?;
        let riemann = RFoldTensor::from_indices(shape22, Jet::zero(n), |i| {
            let (a, b, c, d) = (i[0], i[1], i[2], i[3]);
            let mut acc = Jet::zero(n);
            for e in 0..n {
                acc.add_product(&g[a][e], &up[e][b][c][d], false);
            }
            acc.truncate(order - 2)
        });
        let metric = MetricAlgebra::new(g, ginv, Jet::one(n));
        let ricci = metric
            .trace(&riemann)?
            .reshaped(BlockShape::new(n, &[1, 1])?)?;
        let scalar = metric.trace(&ricci)?.data()[0].clone();
        let weyl = weyl_part(&riemann, &metric)?;
        Ok(Geometry {
            name: name.into(),
            order,
            metric,
            gamma,
            riemann,
            ricci,
            scalar,
            weyl,
            volume,
            signature,
            arrays: Default::default(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    /// Jet order of the metric.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn metric(&self) -> &MetricAlgebra<Jet> {
        &self.metric
    }

    pub fn christoffel(&self, a: usize, b: usize, c: usize) -> &Jet {
        &self.gamma[a][b][c]
    }

    /// `R_{abcd}` as a double (2,2)-form.
    pub fn riemann(&self) -> &RFoldTensor<Jet> {
        &self.riemann
    }

    /// `R_{ab}` as a double (1,1)-form.
    pub fn ricci(&self) -> &RFoldTensor<Jet> {
        &self.ricci
    }

    pub fn scalar_curvature(&self) -> &Jet {
        &self.scalar
    }

    /// The scalar curvature as a double (0,0)-form.
    pub fn scalar_form(&self) -> RFoldTensor<Jet> {
        let shape = BlockShape::new(self.dim(), &[0, 0]).expect("shape");
        RFoldTensor::from_fn(shape, Jet::zero(self.dim()), |_| self.scalar.clone())
    }

    pub fn weyl(&self) -> &RFoldTensor<Jet> {
        &self.weyl
    }

    /// `sqrt|det g|`, the only nonzero component of the volume form.
    pub fn volume(&self) -> &Jet {
        &self.volume
    }

    /// Sign of `det g` at the base point.
    pub fn signature_sign(&self) -> i32 {
        self.signature
    }

    /// The volume form as an n-form.
    pub fn eta(&self) -> RFoldTensor<Jet> {
        let n = self.dim();
        RFoldTensor::from_fn(
            BlockShape::new(n, &[n]).expect("shape"),
            Jet::zero(n),
            |_| self.volume.clone(),
        )
    }

    /// Covariant derivative; the new slot is appended as a rank-1 block.
    /// Consumes one jet order.
    pub fn nabla(&self, t: &RFoldTensor<Jet>) -> Result<RFoldTensor<Jet>> {
        let n = self.dim();
        if t.dim() != n {
            return Err(Error::ShapeMismatch(format!(
                "tensor of dimension {} on {n}-dimensional geometry",
                t.dim()
            )));
        }
        let partials: Vec<Vec<Jet>> = t
            .data()
            .iter()
            .map(|x| (0..n).map(|c| x.partial(c)).collect())
            .collect::<Result<_>>()?;
        let shape = t.shape();
        let r = shape.r();
        let out = shape.appended(1)?;
        Ok(RFoldTensor::from_fn(out, t.zero_scalar().clone(), |key| {
            let c = key[r].trailing_zeros() as usize;
            let mut base: Masks = *key;
            base[r] = 0;
            let mut acc = partials[shape.offset(&base).expect("canonical")][c].clone();
            for b in 0..r {
                for a in indices_of(base[b]) {
                    for e in 0..n {
                        let gam = &self.gamma[e][c][a];
                        if gam.is_zero() {
                            continue;
                        }
                        let Some((m, s)) = replace(base[b], a, e) else {
                            continue;
                        };
                        let mut src = base;
                        src[b] = m;
                        let v = t.get(&src);
                        if v.is_zero() {
                            if !v.is_exact() {
                                acc = acc.truncate(v.order());
                            }
                            continue;
                        }
                        acc.mul_acc(gam, v, s > 0);
                    }
                }
            }
            // Christoffel symbols carry one order less than the metric.
            acc.truncate(self.order.saturating_sub(1))
        }))
    }

    /// Lowest jet order among the curvature components.
    pub fn curvature_order(&self) -> u32 {
        if self.order == EXACT {
            EXACT
        } else {
            self.order - 2
        }
    }
}

impl std::fmt::Debug for Geometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Geometry({}, n={}, order={})",
            self.name,
            self.dim(),
            self.order
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_euclidean_is_flat() {
        let g = parse_geometry("flat-euclidean", Some(3), 3).unwrap();
        assert!(g.riemann().is_zero());
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert!(g.christoffel(a, b, c).is_zero());
                }
            }
        }
        assert_eq!(g.volume(), &Jet::one(3));
        assert_eq!(g.signature_sign(), 1);
    }
}
