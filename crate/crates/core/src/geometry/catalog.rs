//! Built-in geometries, all expanded as jets about a base point.

use super::Geometry;
use crate::error::{Error, Result};
use crate::jet::{Jet, Rational};
use crate::tensor::text::read_jet_tensor;

pub struct CatalogEntry {
    pub pattern: &'static str,
    pub description: &'static str,
    /// Default jet order of the metric.
    pub default_order: u32,
}

pub fn catalog_entries() -> &'static [CatalogEntry] {
    &[
        CatalogEntry {
            pattern: "flat-euclidean",
            description: "flat Euclidean metric, dimension from --dim (default 4)",
            default_order: 4,
        },
        CatalogEntry {
            pattern: "flat-lorentzian",
            description: "flat metric diag(-1, 1, ..., 1), dimension from --dim (default 4)",
            default_order: 4,
        },
        CatalogEntry {
            pattern: "constcurv:K",
            description: "constant curvature K, conformal chart delta/(1 + K|x|^2/4)^2 about the origin",
            default_order: 5,
        },
        CatalogEntry {
            pattern: "schwarzschild:M:r0",
            description: "Schwarzschild mass M in coordinates (t, r, theta, phi) about (0, r0, pi/2, 0), r0 > 2M",
            default_order: 5,
        },
        CatalogEntry {
            pattern: "flrw:c0,c1,...",
            description: "spatially flat FLRW, scale factor a(t) = c0 + c1 t + ... about t = 0",
            default_order: 6,
        },
    ]
}

fn rational(s: &str, what: &str) -> Result<Rational> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidGeometry(format!("bad {what} `{s}`")))
}

fn fixed_dim(name: &str, dim: Option<usize>, n: usize) -> Result<()> {
    match dim {
        Some(d) if d != n => Err(Error::InvalidGeometry(format!(
            "{name} is {n}-dimensional, --dim {d} requested"
        ))),
        _ => Ok(()),
    }
}

fn diagonal(entries: Vec<Jet>) -> Vec<Vec<Jet>> {
    let n = entries.len();
    entries
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            (0..n)
                .map(|j| if i == j { d.clone() } else { Jet::zero(n) })
                .collect()
        })
        .collect()
}

/// `cos^2(x_var)` as a series, `1 + sum_k (-1)^k 2^(2k-1) x^(2k) / (2k)!`.
fn cos_squared(nvars: usize, var: usize, order: u32) -> Result<Jet> {
    let mut terms = vec![(vec![0; nvars], Rational::ONE)];
    let mut k = 1u32;
    while 2 * k <= order {
        let fact: Rational =
            (1..=2 * k as i64).fold(Rational::ONE, |acc, i| &acc * &Rational::integer(i));
        let c = &Rational::integer(if k % 2 == 0 { 1 } else { -1 })
            * &(&Rational::integer(2).pow(2 * k - 1) / &fact);
        let mut e = vec![0; nvars];
        e[var] = 2 * k;
        terms.push((e, c));
        k += 1;
    }
    Jet::from_terms(nvars, order, terms)
}

/// Resolves a catalog name (or `@path` to a geometry file) into a geometry
/// with metric jets of the given order.
pub fn parse_geometry(spec: &str, dim: Option<usize>, order: u32) -> Result<Geometry> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidGeometry(format!("cannot read geometry file `{path}`: {e}"))
        })?;
        return parse_geometry_text(&text, dim, order);
    }
    let (head, args) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    match (head, args) {
        ("flat-euclidean", None) | ("flat-lorentzian", None) => {
            let n = dim.unwrap_or(4);
            if n == 0 || n > crate::jet::MAX_VARS {
                return Err(Error::InvalidGeometry(format!("unsupported dimension {n}")));
            }
            let entries = (0..n)
                .map(|i| {
                    let s = if head == "flat-lorentzian" && i == 0 {
                        -1
                    } else {
                        1
                    };
                    Jet::constant(n, Rational::integer(s))
                })
                .collect();
            Geometry::from_metric(spec, diagonal(entries), order)
        }
        ("constcurv", Some(k)) => {
            let k = rational(k, "curvature")?;
            let n = dim.unwrap_or(4);
            if n < 2 || n > crate::jet::MAX_VARS {
                return Err(Error::InvalidGeometry(format!("unsupported dimension {n}")));
            }
            let quarter_k = &k * &Rational::new(1, 4);
            let mut q = Jet::one(n).truncate(order);
            for i in 0..n {
                let x = Jet::variable(n, i);
                q = &q + &(&x * &x).scale(&quarter_k);
            }
            let inv = q.invert()?;
            let factor = &inv * &inv;
            Geometry::from_metric(spec, diagonal(vec![factor; n]), order)
        }
        ("schwarzschild", Some(rest)) => {
            fixed_dim("schwarzschild", dim, 4)?;
            let (m, r0) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidGeometry("expected schwarzschild:M:r0".into()))?;
            let m = rational(m, "mass")?;
            let r0 = rational(r0, "radius")?;
            if r0.signum() <= 0 || (&r0 - &(&m * &Rational::integer(2))).signum() <= 0 {
                return Err(Error::InvalidGeometry(format!(
                    "base radius {r0} is not exterior to 2M = {}",
                    &m * &Rational::integer(2)
                )));
            }
            let n = 4;
            let r = &Jet::constant(n, r0).truncate(order) + &Jet::variable(n, 1);
            let r_minus = &r - &Jet::constant(n, &m * &Rational::integer(2));
            // f = 1 - 2M/r = (r - 2M)/r
            let f = &r_minus * &r.invert()?;
            let g_tt = -&f;
            let g_rr = &r * &r_minus.invert()?;
            let r2 = &r * &r;
            let g_pp = &r2 * &cos_squared(n, 2, order)?;
            Geometry::from_metric(spec, diagonal(vec![g_tt, g_rr, r2, g_pp]), order)
        }
        ("flrw", Some(coeffs)) => {
            fixed_dim("flrw", dim, 4)?;
            let cs: Vec<Rational> = coeffs
                .split(',')
                .map(|c| rational(c, "scale-factor coefficient"))
                .collect::<Result<_>>()?;
            if cs.first().map_or(true, Rational::is_zero) {
                return Err(Error::InvalidGeometry(
                    "scale factor must be nonzero at t = 0".into(),
                ));
            }
            let n = 4;
            let terms = cs
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32, 0, 0, 0], c.clone()));
            let a = Jet::from_terms(n, order, terms)?;
            let a2 = &a * &a;
            let minus = Jet::constant(n, Rational::integer(-1));
            Geometry::from_metric(
                spec,
                diagonal(vec![minus, a2.clone(), a2.clone(), a2]),
                order,
            )
        }
        _ => Err(Error::UnknownGeometry(spec.to_string())),
    }
}

/// A geometry file holds either `geometry <catalog-name>` or a metric written
/// as a jet tensor of shape `2:[1,1]`.
fn parse_geometry_text(text: &str, dim: Option<usize>, order: u32) -> Result<Geometry> {
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix("geometry ") {
            return parse_geometry(name.trim(), dim, order);
        }
        break;
    }
    let (t, file_order) = read_jet_tensor(text)?;
    if t.shape().ranks() != [1, 1] {
        return Err(Error::InvalidGeometry(format!(
            "metric must have shape 2:[1,1], got {}",
            t.shape()
        )));
    }
    let n = t.dim();
    if let Some(d) = dim {
        fixed_dim("geometry file", Some(d), n)?;
    }
    let g: Vec<Vec<Jet>> = (0..n)
        .map(|a| (0..n).map(|b| t.component(&[a, b])).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Geometry::from_metric("file", g, order.min(file_order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_squared_series() {
        let c = cos_squared(1, 0, 6).unwrap();
        let expected = Jet::from_terms(
            1,
            6,
            vec![
                (vec![0], Rational::ONE),
                (vec![2], Rational::integer(-1)),
                (vec![4], Rational::new(1, 3)),
                (vec![6], Rational::new(-2, 45)),
            ],
        )
        .unwrap();
        assert_eq!(c, expected);
    }

    #[test]
    fn unknown_and_invalid_names() {
        assert!(matches!(
            parse_geometry("nosuch", None, 4),
            Err(Error::UnknownGeometry(_))
        ));
        assert!(matches!(
            parse_geometry("schwarzschild:1:2", None, 4),
            Err(Error::InvalidGeometry(_))
        ));
        assert!(matches!(
            parse_geometry("flrw:0,1", None, 4),
            Err(Error::InvalidGeometry(_))
        ));
    }
}
