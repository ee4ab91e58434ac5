use super::{Jet, Rational, EXACT};
use crate::error::{Error, Result};

fn check_square(m: &[Vec<Jet>]) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "matrix row of length {} in {n}x{n} matrix",
                row.len()
            )));
        }
    }
    Ok(n)
}

/// Exact inverse of a rational matrix by Gauss-Jordan elimination.
fn invert_rational(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::ONE
                    } else {
                        Rational::ZERO
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col].recip();
        for j in 0..n {
            m[col][j] = &m[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let t = &m[col][j] * &f;
                m[r][j] -= &t;
                let t = &inv[col][j] * &f;
                inv[r][j] -= &t;
            }
        }
    }
    Some(inv)
}

fn mat_mul(a: &[Vec<Jet>], b: &[Vec<Jet>], nvars: usize) -> Vec<Vec<Jet>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Jet::zero(nvars);
                    for k in 0..n {
                        acc.add_product(&a[i][k], &b[k][j], false);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Inverse of a matrix of jets: the constant part is inverted exactly, then
/// the higher-degree part is folded in by a Neumann series that terminates at
/// the truncation order.
pub fn invert_matrix(m: &[Vec<Jet>]) -> Result<Vec<Vec<Jet>>> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let nvars = m[0][0].nvars();
    let order = m.iter().flatten().map(Jet::order).min().unwrap_or(EXACT);
    let a0: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(Jet::constant_term).collect())
        .collect();
    let n0 = invert_rational(&a0).ok_or(Error::DegenerateMetric)?;
    let n0_jets: Vec<Vec<Jet>> = n0
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| Jet::constant(nvars, c.clone()).truncate(order))
                .collect()
        })
        .collect();
    // E = -N0 * (M - M0), whose entries have no constant term.
    let a1: Vec<Vec<Jet>> = m
        .iter()
        .zip(&a0)
        .map(|(row, row0)| {
            row.iter()
                .zip(row0)
                .map(|(x, c)| x - &Jet::constant(nvars, c.clone()))
                .collect()
        })
        .collect();
    if a1.iter().flatten().all(Jet::is_zero) {
        return Ok(n0_jets);
    }
    if order == EXACT {
        return Err(Error::Unsupported(
            "inverse of a non-constant exact matrix needs a truncation order".into(),
        ));
    }
    let e: Vec<Vec<Jet>> = mat_mul(&n0_jets, &a1, nvars)
        .into_iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .collect();
    // N = sum_{k=0}^{order} E^k N0
    let mut term = n0_jets.clone();
    let mut sum = n0_jets;
    for _ in 0..order {
        term = mat_mul(&e, &term, nvars);
        if term.iter().flatten().all(Jet::is_zero) {
            break;
        }
        for (srow, trow) in sum.iter_mut().zip(&term) {
            for (s, t) in srow.iter_mut().zip(trow) {
                *s = &*s + t;
            }
        }
    }
    Ok(sum)
}

/// Determinant by the Leibniz expansion (dimensions here are at most seven).
pub fn determinant(m: &[Vec<Jet>]) -> Result<Jet> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(Jet::one(0));
    }
    let nvars = m[0][0].nvars();
    let mut total = Jet::zero(nvars);
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, false, &mut |p, odd| {
        let mut prod = Jet::one(nvars);
        for (i, &j) in p.iter().enumerate() {
            if m[i][j].is_zero() {
                return;
            }
            prod = &prod * &m[i][j];
        }
        total = if odd { &total - &prod } else { &total + &prod };
    });
    // Keep the combined order even when every product vanished.
    let order = m.iter().flatten().map(Jet::order).min().unwrap_or(EXACT);
    Ok(total.truncate(order))
}

fn permute(p: &mut Vec<usize>, k: usize, odd: bool, f: &mut impl FnMut(&[usize], bool)) {
    if k == p.len() {
        f(p, odd);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, odd ^ (i != k), f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(entries: Vec<Jet>) -> Vec<Vec<Jet>> {
        let n = entries.len();
        let nvars = entries[0].nvars();
        entries
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                (0..n)
                    .map(|j| if i == j { d.clone() } else { Jet::zero(nvars) })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn identity_inverts_to_identity() {
        let id = diag(vec![Jet::one(3); 3]);
        assert_eq!(invert_matrix(&id).unwrap(), id);
    }

    #[test]
    fn diagonal_inverse_matches_scalar_inverse() {
        let one_plus_x = &Jet::one(1).truncate(2) + &Jet::variable(1, 0);
        let m = diag(vec![one_plus_x.clone(), Jet::one(1).truncate(2)]);
        let inv = invert_matrix(&m).unwrap();
        assert_eq!(inv[0][0], one_plus_x.invert().unwrap());
        assert_eq!(inv[1][1], Jet::one(1));
        assert!(inv[0][1].is_zero() && inv[1][0].is_zero());
    }

    #[test]
    fn lorentzian_flat_is_its_own_inverse() {
        let minus = Jet::constant(4, Rational::integer(-1));
        let m = diag(vec![minus, Jet::one(4), Jet::one(4), Jet::one(4)]);
        assert_eq!(invert_matrix(&m).unwrap(), m);
        assert_eq!(
            determinant(&m).unwrap(),
            Jet::constant(4, Rational::integer(-1))
        );
    }

    #[test]
    fn singular_constant_part_is_degenerate() {
        let x = Jet::variable(2, 0).truncate(3);
        let m = vec![vec![x.clone(), Jet::one(2)], vec![Jet::zero(2), x]];
        assert_eq!(invert_matrix(&m).unwrap_err(), Error::DegenerateMetric);
    }

    #[test]
    fn full_matrix_inverse_is_two_sided() {
        let x = Jet::variable(2, 0);
        let y = Jet::variable(2, 1);
        let one = Jet::one(2);
        let two = Jet::constant(2, Rational::integer(2));
        let m = vec![
            vec![(&two + &x).truncate(4), (&one + &(&x * &y)).truncate(4)],
            vec![(&one - &y).truncate(4), (&one + &(&y * &y)).truncate(4)],
        ];
        let inv = invert_matrix(&m).unwrap();
        let id = diag(vec![one.truncate(4), one.truncate(4)]);
        assert_eq!(mat_mul(&m, &inv, 2), id);
        assert_eq!(mat_mul(&inv, &m, 2), id);
        let det = determinant(&m).unwrap();
        let expected = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        assert_eq!(det, expected);
    }
}
