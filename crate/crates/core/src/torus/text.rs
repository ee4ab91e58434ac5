//! Text format for Fourier fields:
//!
//! ```text
//! dim 3
//! shape 1:[2]
//! bandlimit 2
//! kind fourier
//! metric euclidean
//! 1 0 -1 : 0 2 : 0.5 -0.25
//! ```
//!
//! One line per nonzero canonical component: the wave vector, the index
//! tuple (increasing within each block), then the real and imaginary parts.
//! Modes without lines are zero.

use std::fmt::Write;

use super::{czero, FourierTensorField, TorusMetric, WaveVector, C};
use crate::error::{Error, Result};
use crate::tensor::text::parse_header;
use crate::tensor::RFoldTensor;

pub fn write_field(f: &FourierTensorField) -> String {
    let mut out = String::new();
    writeln!(out, "dim {}", f.dim()).unwrap();
    writeln!(out, "shape {}", f.shape()).unwrap();
    writeln!(out, "bandlimit {}", f.bandlimit()).unwrap();
    writeln!(out, "kind fourier").unwrap();
    writeln!(out, "metric {}", f.metric().name()).unwrap();
    for (k, t) in f.modes() {
        let kk: Vec<String> = k.0.iter().map(i32::to_string).collect();
        for (key, z) in t.iter() {
            if *z == czero() {
                continue;
            }
            let idx: Vec<String> = f
                .shape()
                .indices(&key)
                .iter()
                .map(usize::to_string)
                .collect();
            writeln!(out, "{} : {} : {:?} {:?}", kk.join(" "), idx.join(" "), z.re, z.im).unwrap();
        }
    }
    out
}

fn numbers<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<Vec<T>> {
    s.split_whitespace()
        .map(|x| {
            x.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad {what} `{x}`"),
            })
        })
        .collect()
}

pub fn read_field(text: &str) -> Result<FourierTensorField> {
    let header = parse_header(text, &["bandlimit", "kind"])?;
    if header.field("kind") != Some("fourier") {
        return Err(Error::Parse {
            line: 1,
            msg: format!(
                "expected `kind fourier`, got `{}`",
                header.field("kind").unwrap_or("")
            ),
        });
    }
    let b = header.field("bandlimit").unwrap();
    let bandlimit: u32 = b.parse().map_err(|_| Error::Parse {
        line: 1,
        msg: format!("bad bandlimit `{b}`"),
    })?;
    let metric = match header.field("metric").unwrap_or("euclidean") {
        "euclidean" => TorusMetric::Euclidean,
        "lorentzian" => TorusMetric::Lorentzian,
        m => {
            return Err(Error::Parse {
                line: 1,
                msg: format!("unknown metric `{m}`"),
            })
        }
    };
    let n = header.dim;
    let shape = header.shape.clone();
    let mut f = FourierTensorField::new(shape.clone(), bandlimit).with_metric(metric);
    for (i, raw) in text.lines().enumerate().skip(header.consumed) {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let l = i + 1;
        let parts: Vec<&str> = line.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                line: l,
                msg: "expected `k_1 .. k_n : indices : re im`".into(),
            });
        }
        let k: Vec<i32> = numbers(parts[0], l, "wave vector entry")?;
        if k.len() != n {
            return Err(Error::Parse {
                line: l,
                msg: format!("wave vector of length {} in dimension {n}", k.len()),
            });
        }
        let idx: Vec<usize> = numbers(parts[1], l, "index")?;
        let v: Vec<f64> = numbers(parts[2], l, "amplitude")?;
        if v.len() != 2 {
            return Err(Error::Parse {
                line: l,
                msg: "expected `re im`".into(),
            });
        }
        let (key, sign) = shape.canonicalize(&idx).map_err(|e| Error::Parse {
            line: l,
            msg: e.to_string(),
        })?;
        if sign != 1 {
            return Err(Error::Parse {
                line: l,
                msg: format!("component {idx:?} is not in canonical order"),
            });
        }
        let k = WaveVector(k);
        let mut t = f
            .mode(&k)
            .cloned()
            .unwrap_or_else(|| RFoldTensor::zeros(shape.clone(), czero()));
        *t.get_mut(&key) = C::new(v[0], v[1]);
        f.insert(k, t).map_err(|e| Error::Parse {
            line: l,
            msg: e.to_string(),
        })?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::BlockShape;

    #[test]
    fn field_round_trip_is_exact() {
        let f = FourierTensorField::random(BlockShape::new(3, &[2, 1]).unwrap(), 1, 4, true);
        let text = write_field(&f);
        let back = read_field(&text).unwrap();
        assert_eq!(back.residual(&f).unwrap(), 0.0);
        assert_eq!(write_field(&back), text);
    }

    #[test]
    fn reads_a_single_mode() {
        let text = "dim 3\nshape 1:[2]\nbandlimit 1\nkind fourier\n1 0 0 : 1 2 : 1 0\n";
        let f = read_field(text).unwrap();
        let k = WaveVector(vec![1, 0, 0]);
        assert_eq!(f.mode(&k).unwrap().component(&[2, 1]).unwrap(), C::new(-1.0, 0.0));
    }

    #[test]
    fn rejects_modes_beyond_the_bandlimit() {
        let text = "dim 2\nshape 1:[1]\nbandlimit 1\nkind fourier\n2 0 : 1 : 1 0\n";
        assert!(matches!(read_field(text), Err(Error::Parse { line: 5, .. })));
    }
}
