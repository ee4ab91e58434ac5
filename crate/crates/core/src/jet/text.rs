//! Line-oriented jet serialization: one `e1 e2 ... en : num/den` line per
//! nonzero coefficient, in graded-lex order. The truncation order is carried
//! by the enclosing document.

use std::fmt::Write;

use super::{Jet, Rational};
use crate::error::{Error, Result};

impl Jet {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.terms() {
            let exps: Vec<String> = k
                .exponents(self.nvars())
                .iter()
                .map(u32::to_string)
                .collect();
            writeln!(out, "{} : {c}", exps.join(" ")).unwrap();
        }
        out
    }

    /// Parses coefficient lines; blank lines and `#` comments are skipped.
    /// `first_line` is used to number errors within a larger document.
    pub fn from_text(nvars: usize, order: u32, text: &str, first_line: usize) -> Result<Jet> {
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            terms.push(parse_term(nvars, line).map_err(|msg| Error::Parse {
                line: first_line + i,
                msg,
            })?);
        }
        Jet::from_terms(nvars, order, terms)
    }
}

pub(crate) fn parse_term(
    nvars: usize,
    line: &str,
) -> std::result::Result<(Vec<u32>, Rational), String> {
    let (lhs, rhs) = line
        .split_once(':')
        .ok_or_else(|| format!("expected `exponents : coefficient`, got `{line}`"))?;
    let exps: Vec<u32> = lhs
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| format!("bad exponent `{t}`")))
        .collect::<std::result::Result<_, _>>()?;
    if exps.len() != nvars {
        return Err(format!("expected {nvars} exponents, got {}", exps.len()));
    }
    let c: Rational = rhs.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((exps, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_graded_lex_and_skips_zeros() {
        let j = Jet::from_terms(
            2,
            3,
            vec![
                (vec![0, 2], Rational::new(-1, 3)),
                (vec![0, 0], Rational::integer(1)),
                (vec![1, 0], Rational::ZERO),
                (vec![2, 0], Rational::new(5, 2)),
            ],
        )
        .unwrap();
        assert_eq!(j.to_text(), "0 0 : 1\n0 2 : -1/3\n2 0 : 5/2\n");
        assert_eq!(
            Jet::from_text(2, 3, &j.to_text(), 1).unwrap().terms(),
            j.terms()
        );
    }

    #[test]
    fn reports_line_numbers() {
        let err = Jet::from_text(2, 2, "0 0 : 1\n1 : 2\n", 10).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 11, .. }));
    }
}
