//! Text format for jet-valued tensors:
//!
//! ```text
//! dim 4
//! shape 2:[1,1]
//! order 4
//! kind jet
//! component 0 0
//! 0 0 0 0 : -1
//! ```
//!
//! One `component` line per nonzero canonical component (indices in slot
//! order, increasing within each block), followed by its jet lines.

use std::fmt::Write;

use super::{BlockShape, RFoldTensor};
use crate::error::{Error, Result};
use crate::jet::{Jet, EXACT};

/// Writes the tensor truncated to its lowest component order.
pub fn write_jet_tensor(t: &RFoldTensor<Jet>) -> String {
    let order = t.order();
    let mut out = String::new();
    writeln!(out, "dim {}", t.dim()).unwrap();
    writeln!(out, "shape {}", t.shape()).unwrap();
    if order == EXACT {
        writeln!(out, "order exact").unwrap();
    } else {
        writeln!(out, "order {order}").unwrap();
    }
    writeln!(out, "kind jet").unwrap();
    for (key, x) in t.iter() {
        let x = x.truncate(order);
        if x.is_zero() {
            continue;
        }
        let idx: Vec<String> = t
            .shape()
            .indices(&key)
            .iter()
            .map(usize::to_string)
            .collect();
        writeln!(out, "component {}", idx.join(" ")).unwrap();
        out.push_str(&x.to_text());
    }
    out
}

pub(crate) fn parse_shape(s: &str, dim: usize, line: usize) -> Result<BlockShape> {
    let err = || Error::Parse {
        line,
        msg: format!("bad shape `{s}`, expected r:[n1,...,nr]"),
    };
    let (r, ranks) = s.split_once(':').ok_or_else(err)?;
    let r: usize = r.trim().parse().map_err(|_| err())?;
    let ranks = ranks
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(err)?;
    let ranks: Vec<usize> = if ranks.trim().is_empty() {
        Vec::new()
    } else {
        ranks
            .split(',')
            .map(|k| k.trim().parse().map_err(|_| err()))
            .collect::<Result<_>>()?
    };
    if ranks.len() != r {
        return Err(Error::Parse {
            line,
            msg: format!("shape lists {} ranks for r = {r}", ranks.len()),
        });
    }
    BlockShape::new(dim, &ranks).map_err(|e| Error::Parse {
        line,
        msg: e.to_string(),
    })
}

/// Header fields shared by the jet and Fourier formats.
pub(crate) struct Header {
    pub dim: usize,
    pub shape: BlockShape,
    pub fields: Vec<(String, String)>,
    /// Number of lines consumed (body starts after them).
    pub consumed: usize,
}

pub(crate) fn parse_header(text: &str, required: &[&str]) -> Result<Header> {
    let mut dim = None;
    let mut shape_str = None;
    let mut fields = Vec::new();
    let mut consumed = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            consumed = i + 1;
            continue;
        }
        let Some((key, value)) = line.split_once(' ') else {
            break;
        };
        match key {
            "dim" => {
                dim = Some(value.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("bad dim `{value}`"),
                })?)
            }
            "shape" => shape_str = Some((value.trim().to_string(), i + 1)),
            "order" | "kind" | "bandlimit" | "metric" => {
                fields.push((key.to_string(), value.trim().to_string()))
            }
            _ => break,
        }
        consumed = i + 1;
    }
    let dim = dim.ok_or(Error::Parse {
        line: consumed + 1,
        msg: "missing `dim` header".into(),
    })?;
    let (s, l) = shape_str.ok_or(Error::Parse {
        line: consumed + 1,
        msg: "missing `shape` header".into(),
    })?;
    let shape = parse_shape(&s, dim, l)?;
    for r in required {
        if !fields.iter().any(|(k, _)| k == r) {
            return Err(Error::Parse {
                line: consumed + 1,
                msg: format!("missing `{r}` header"),
            });
        }
    }
    Ok(Header {
        dim,
        shape,
        fields,
        consumed,
    })
}

impl Header {
    pub fn field(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Parses the jet tensor format; returns the tensor and its declared order.
pub fn read_jet_tensor(text: &str) -> Result<(RFoldTensor<Jet>, u32)> {
    let header = parse_header(text, &["order", "kind"])?;
    if header.field("kind") != Some("jet") {
        return Err(Error::Parse {
            line: 1,
            msg: format!(
                "expected `kind jet`, got `{}`",
                header.field("kind").unwrap_or("")
            ),
        });
    }
    let order = match header.field("order").unwrap() {
        "exact" => EXACT,
        o => o.parse().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("bad order `{o}`"),
        })?,
    };
    let n = header.dim;
    let shape = header.shape.clone();
    let mut t = RFoldTensor::zeros(shape.clone(), Jet::zero(n).truncate(order));
    let lines: Vec<&str> = text.lines().collect();
    let mut i = header.consumed;
    while i < lines.len() {
        let line = lines[i].trim();
        if line.is_empty() || line.starts_with('#') {
            i += 1;
            continue;
        }
        let idx = line.strip_prefix("component").ok_or(Error::Parse {
            line: i + 1,
            msg: format!("expected `component`, got `{line}`"),
        })?;
        let idx: Vec<usize> = idx
            .split_whitespace()
            .map(|x| {
                x.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("bad index `{x}`"),
                })
            })
            .collect::<Result<_>>()?;
        let (key, sign) = shape.canonicalize(&idx).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        if sign != 1 {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("component {idx:?} is not in canonical order"),
            });
        }
        let start = i + 1;
        let mut end = start;
        while end < lines.len() && !lines[end].trim_start().starts_with("component") {
            end += 1;
        }
        let body = lines[start..end].join("\n");
        *t.get_mut(&key) = Jet::from_text(n, order, &body, start + 1)?;
        i = end;
    }
    Ok((t, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Rational;

    #[test]
    fn jet_tensor_round_trip() {
        let shape = BlockShape::new(3, &[2, 1]).unwrap();
        let t = RFoldTensor::from_indices(shape, Jet::zero(3), |i| {
            Jet::from_terms(
                3,
                2,
                vec![
                    (vec![0, 0, 0], Rational::new(i[0] as i64 - 1, 3)),
                    (vec![i[2] as u32, 0, 1], Rational::integer(i[1] as i64)),
                ],
            )
            .unwrap()
        });
        let text = write_jet_tensor(&t);
        let (back, order) = read_jet_tensor(&text).unwrap();
        assert_eq!(order, 2);
        assert_eq!(back.shape(), t.shape());
        for (a, b) in back.data().iter().zip(t.data()) {
            assert_eq!(a.terms(), b.terms());
        }
    }

    #[test]
    fn rejects_non_canonical_components() {
        let text = "dim 2\nshape 1:[2]\norder 1\nkind jet\ncomponent 1 0\n0 0 : 1\n";
        assert!(matches!(
            read_jet_tensor(text),
            Err(Error::Parse { line: 5, .. })
        ));
    }
}
