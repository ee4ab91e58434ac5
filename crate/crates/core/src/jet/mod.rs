//! Truncated multivariate power series ("jets") with exact rational
//! coefficients, expanded about a fixed base point.
//!
//! A jet of order `K` knows its coefficients for every monomial of total
//! degree `<= K`; higher coefficients are unknown. Arithmetic propagates the
//! order (products and sums take the minimum, a partial derivative lowers it by
//! one), so a residual computed from jets is valid to exactly the order it
//! reports. Exactly known polynomials carry the order [`EXACT`].

mod matrix;
pub mod rational;
mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use matrix::{determinant, invert_matrix};
pub use rational::Rational;

use crate::error::{Error, Result};

/// Order marker for jets whose coefficients are known to all degrees.
pub const EXACT: u32 = u32::MAX;

/// Largest supported number of variables (the packed key holds seven bytes).
pub const MAX_VARS: usize = 7;

/// Exponent vector packed as `degree << 56 | e0 << 48 | e1 << 40 | ...`.
///
/// Integer order on the packed key is graded lexicographic order, and
/// multiplying monomials is key addition.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(u64);

impl MultiIndex {
    pub const ONE: MultiIndex = MultiIndex(0);

    pub fn new(exponents: &[u32]) -> Result<MultiIndex> {
        if exponents.len() > MAX_VARS {
            return Err(Error::Unsupported(format!(
                "at most {MAX_VARS} variables, got {}",
                exponents.len()
            )));
        }
        let degree: u32 = exponents.iter().sum();
        if degree > 255 {
            return Err(Error::Unsupported(format!(
                "monomial degree {degree} exceeds 255"
            )));
        }
        let mut key = (degree as u64) << 56;
        for (i, &e) in exponents.iter().enumerate() {
            key |= (e as u64) << (48 - 8 * i);
        }
        Ok(MultiIndex(key))
    }

    pub fn unit(var: usize) -> MultiIndex {
        debug_assert!(var < MAX_VARS);
        MultiIndex((1u64 << 56) | (1u64 << (48 - 8 * var)))
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0 >> 56) as u32
    }

    #[inline]
    pub fn exponent(self, var: usize) -> u32 {
        ((self.0 >> (48 - 8 * var)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    fn times(self, other: MultiIndex) -> MultiIndex {
        MultiIndex(self.0 + other.0)
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

type Terms = Vec<(MultiIndex, Rational)>;

#[derive(Clone)]
pub struct Jet {
    nvars: u8,
    order: u32,
    /// Sorted by key, no zero coefficients, no degree above `order`.
    terms: Terms,
}

impl Jet {
    pub fn zero(nvars: usize) -> Jet {
        Jet {
            nvars: nvars as u8,
            order: EXACT,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Jet {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(MultiIndex::ONE, c)]
        };
        Jet {
            nvars: nvars as u8,
            order: EXACT,
            terms,
        }
    }

    pub fn one(nvars: usize) -> Jet {
        Jet::constant(nvars, Rational::ONE)
    }

    /// The coordinate function `x_var` (displacement from the base point).
    pub fn variable(nvars: usize, var: usize) -> Jet {
        assert!(var < nvars, "variable index out of range");
        Jet {
            nvars: nvars as u8,
            order: EXACT,
            terms: vec![(MultiIndex::unit(var), Rational::ONE)],
        }
    }

    pub fn from_terms<I>(nvars: usize, order: u32, terms: I) -> Result<Jet>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut out = Vec::new();
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch(exps.len(), nvars));
            }
            let mi = MultiIndex::new(&exps)?;
            if mi.degree() <= order {
                out.push((mi, c));
            }
        }
        normalize(&mut out);
        Ok(Jet {
            nvars: nvars as u8,
            order,
            terms: out,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT
    }

    pub fn terms(&self) -> &[(MultiIndex, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mi: MultiIndex) -> Rational {
        match self.terms.binary_search_by_key(&mi, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.first() {
            Some((k, c)) if *k == MultiIndex::ONE => c.clone(),
            _ => Rational::ZERO,
        }
    }

    /// Drop everything above `order` (no-op if already lower).
    pub fn truncate(&self, order: u32) -> Jet {
        let order = order.min(self.order);
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.degree() <= order)
            .cloned()
            .collect();
        Jet {
            nvars: self.nvars,
            order,
            terms,
        }
    }

    /// Largest absolute coefficient; zero for the zero jet.
    pub fn max_abs(&self) -> Rational {
        self.terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or(Rational::ZERO)
    }

    /// Equality of all coefficients up to the smaller of the two orders.
    pub fn eq_to_order(&self, other: &Jet) -> bool {
        self.nvars == other.nvars && (self - other).is_zero()
    }

    fn check_dims(&self, other: &Jet) -> Result<()> {
        if self.nvars != other.nvars && !self.is_zero() && !other.is_zero() {
            return Err(Error::DimensionMismatch(self.nvars(), other.nvars()));
        }
        Ok(())
    }

    fn joint_nvars(&self, other: &Jet) -> u8 {
        if self.is_zero() && self.is_exact() {
            other.nvars
        } else {
            self.nvars
        }
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet> {
        self.check_dims(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet> {
        self.check_dims(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &Jet) -> Result<Jet> {
        self.check_dims(other)?;
        let order = self.order.min(other.order);
        let mut out = Vec::new();
        product_terms(&self.terms, &other.terms, order, &mut out);
        normalize(&mut out);
        Ok(Jet {
            nvars: self.joint_nvars(other),
            order,
            terms: out,
        })
    }

    fn combine(&self, other: &Jet, negate: bool) -> Jet {
        let order = self.order.min(other.order);
        let terms = merge(&self.terms, &other.terms, negate, order);
        Jet {
            nvars: self.joint_nvars(other),
            order,
            terms,
        }
    }

    /// `self += sign * a * b`, without materializing the intermediate product
    /// as a jet.
    pub fn add_product(&mut self, a: &Jet, b: &Jet, negate: bool) {
        debug_assert!(a.check_dims(b).is_ok() && self.check_dims(a).is_ok());
        if a.is_zero() || b.is_zero() {
            self.order = self.order.min(a.order).min(b.order);
            if self.order != EXACT {
                self.terms.retain(|(k, _)| k.degree() <= self.order);
            }
            return;
        }
        let order = self.order.min(a.order).min(b.order);
        let mut prod = Vec::new();
        product_terms(&a.terms, &b.terms, order, &mut prod);
        normalize(&mut prod);
        self.terms = merge(&self.terms, &prod, negate, order);
        if self.is_zero() && self.is_exact() {
            self.nvars = a.nvars;
        }
        self.order = order;
    }

    pub fn scale(&self, r: &Rational) -> Jet {
        if r.is_zero() {
            return Jet {
                nvars: self.nvars,
                order: self.order,
                terms: Vec::new(),
            };
        }
        let terms = self.terms.iter().map(|(k, c)| (*k, c * r)).collect();
        Jet {
            nvars: self.nvars,
            order: self.order,
            terms,
        }
    }

    /// Formal partial derivative along coordinate `var`; lowers the order by one.
    pub fn partial(&self, var: usize) -> Result<Jet> {
        if var >= self.nvars() {
            return Err(Error::InvalidSlot {
                slot: var,
                rank: self.nvars(),
            });
        }
        if self.order == 0 {
            return Err(Error::OrderExhausted);
        }
        let order = if self.is_exact() {
            EXACT
        } else {
            self.order - 1
        };
        let unit = MultiIndex::unit(var);
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, c)| {
                let e = k.exponent(var);
                (e > 0).then(|| (MultiIndex(k.0 - unit.0), c * &Rational::integer(e as i64)))
            })
            .collect();
        Ok(Jet {
            nvars: self.nvars,
            order,
            terms,
        })
    }

    /// Multiplicative inverse by order-by-order long division.
    pub fn invert(&self) -> Result<Jet> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NonInvertibleJet);
        }
        let inv0 = a0.recip();
        if self.terms.len() == 1 {
            return Ok(Jet {
                nvars: self.nvars,
                order: self.order,
                terms: vec![(MultiIndex::ONE, inv0)],
            });
        }
        if self.is_exact() {
            return Err(Error::Unsupported(
                "inverse of a non-constant exact polynomial needs a truncation order".into(),
            ));
        }
        let mut b: Terms = vec![(MultiIndex::ONE, inv0.clone())];
        for d in 1..=self.order {
            // Degree-d part of a*b using the coefficients of b found so far.
            let mut acc: Terms = Vec::new();
            for (ka, ca) in self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() >= 1 && k.degree() <= d)
            {
                for (kb, cb) in b.iter().filter(|(k, _)| k.degree() + ka.degree() == d) {
                    acc.push((ka.times(*kb), ca * cb));
                }
            }
            normalize(&mut acc);
            b.extend(acc.into_iter().map(|(k, c)| (k, -(&c * &inv0))));
        }
        normalize(&mut b);
        Ok(Jet {
            nvars: self.nvars,
            order: self.order,
            terms: b,
        })
    }

    /// Square root with positive constant term; the constant term must be
    /// the square of a rational.
    pub fn sqrt(&self) -> Result<Jet> {
        let a0 = self.constant_term();
        if a0.signum() <= 0 {
            return Err(Error::NoExactSqrt(format!(
                "constant term {a0} is not positive"
            )));
        }
        let b0 = a0.sqrt_exact().ok_or_else(|| {
            Error::NoExactSqrt(format!("constant term {a0} is not a rational square"))
        })?;
        if self.terms.len() == 1 {
            return Ok(Jet {
                nvars: self.nvars,
                order: self.order,
                terms: vec![(MultiIndex::ONE, b0)],
            });
        }
        if self.is_exact() {
            return Err(Error::Unsupported(
                "square root of a non-constant exact polynomial needs a truncation order".into(),
            ));
        }
        let inv_2b0 = (&b0 * &Rational::integer(2)).recip();
        let mut b: Terms = vec![(MultiIndex::ONE, b0)];
        for d in 1..=self.order {
            // b_d = (a_d - sum_{0<i<d} b_i b_{d-i}) / (2 b_0)
            let mut acc: Terms = self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == d)
                .cloned()
                .collect();
            for (k1, c1) in b.iter().filter(|(k, _)| k.degree() >= 1) {
                for (k2, c2) in b
                    .iter()
                    .filter(|(k, _)| k.degree() >= 1 && k.degree() + k1.degree() == d)
                {
                    acc.push((k1.times(*k2), -(c1 * c2)));
                }
            }
            normalize(&mut acc);
            b.extend(acc.into_iter().map(|(k, c)| (k, &c * &inv_2b0)));
        }
        normalize(&mut b);
        Ok(Jet {
            nvars: self.nvars,
            order: self.order,
            terms: b,
        })
    }

    pub fn pow(&self, e: u32) -> Jet {
        let mut acc = Jet::one(self.nvars());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn product_terms(
    a: &[(MultiIndex, Rational)],
    b: &[(MultiIndex, Rational)],
    order: u32,
    out: &mut Terms,
) {
    for (ka, ca) in a {
        let da = ka.degree();
        if da > order {
            break;
        }
        let room = order - da;
        for (kb, cb) in b {
            if kb.degree() > room {
                break;
            }
            out.push((ka.times(*kb), ca * cb));
        }
    }
}

/// Sort by key, sum duplicates, drop zeros.
fn normalize(terms: &mut Terms) {
    if terms.len() <= 1 {
        terms.retain(|(_, c)| !c.is_zero());
        return;
    }
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Terms = Vec::with_capacity(terms.len());
    for (k, c) in terms.drain(..) {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    *terms = out;
}

fn merge(
    a: &[(MultiIndex, Rational)],
    b: &[(MultiIndex, Rational)],
    negate: bool,
    order: u32,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &Rational| if negate { -c } else { c.clone() };
    while i < a.len() || j < b.len() {
        let pick = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        let (k, c) = match pick {
            std::cmp::Ordering::Less => {
                i += 1;
                (a[i - 1].0, a[i - 1].1.clone())
            }
            std::cmp::Ordering::Greater => {
                j += 1;
                (b[j - 1].0, sign(&b[j - 1].1))
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
                let c = if negate {
                    &a[i - 1].1 - &b[j - 1].1
                } else {
                    &a[i - 1].1 + &b[j - 1].1
                };
                (a[i - 1].0, c)
            }
        };
        if k.degree() > order {
            break;
        }
        if !c.is_zero() {
            out.push((k, c));
        }
    }
    out
}

impl PartialEq for Jet {
    fn eq(&self, other: &Jet) -> bool {
        self.eq_to_order(other)
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, rhs: &'a Jet) -> Jet {
        self.try_add(rhs).expect("jet addition")
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, rhs: &'a Jet) -> Jet {
        self.try_sub(rhs).expect("jet subtraction")
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, rhs: &'a Jet) -> Jet {
        self.try_mul(rhs).expect("jet multiplication")
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = if self.is_exact() {
            "exact".to_string()
        } else {
            self.order.to_string()
        };
        write!(f, "Jet[n={}, K={}](", self.nvars, order)?;
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{:?}", k.exponents(self.nvars()))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(nvars: usize, order: u32, terms: &[(&[u32], i64, i64)]) -> Jet {
        Jet::from_terms(
            nvars,
            order,
            terms.iter().map(|(e, n, d)| (e.to_vec(), q(*n, *d))),
        )
        .unwrap()
    }

    #[test]
    fn one_plus_x_times_one_minus_x() {
        let a = poly(1, 2, &[(&[0], 1, 1), (&[1], 1, 1)]);
        let b = poly(1, 2, &[(&[0], 1, 1), (&[1], -1, 1)]);
        assert_eq!(&a * &b, poly(1, 2, &[(&[0], 1, 1), (&[2], -1, 1)]));
    }

    #[test]
    fn additive_identity() {
        let a = poly(2, 3, &[(&[0, 0], 3, 2), (&[1, 2], -1, 5)]);
        assert_eq!(&a + &Jet::zero(2), a);
        assert_eq!((&a + &Jet::zero(2)).order(), 3);
    }

    #[test]
    fn square_of_one_plus_x_plus_y_matches_convolution() {
        let a = poly(2, 2, &[(&[0, 0], 1, 1), (&[1, 0], 1, 1), (&[0, 1], 1, 1)]);
        // brute-force convolution of coefficient arrays
        let coef = |i: usize, j: usize| -> i64 {
            if i + j <= 1 {
                1
            } else {
                0
            }
        };
        let mut expected = Vec::new();
        for i in 0..=2usize {
            for j in 0..=(2 - i) {
                let mut s = 0;
                for a1 in 0..=i {
                    for b1 in 0..=j {
                        s += coef(a1, b1) * coef(i - a1, j - b1);
                    }
                }
                expected.push((vec![i as u32, j as u32], Rational::integer(s)));
            }
        }
        let expected = Jet::from_terms(2, 2, expected).unwrap();
        assert_eq!(&a * &a, expected);
        assert_eq!(
            expected,
            poly(
                2,
                2,
                &[
                    (&[0, 0], 1, 1),
                    (&[1, 0], 2, 1),
                    (&[0, 1], 2, 1),
                    (&[2, 0], 1, 1),
                    (&[1, 1], 2, 1),
                    (&[0, 2], 1, 1)
                ]
            )
        );
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Jet::variable(2, 0);
        let b = Jet::variable(3, 0);
        assert_eq!(a.try_mul(&b).unwrap_err(), Error::DimensionMismatch(2, 3));
        assert_eq!(a.try_add(&b).unwrap_err(), Error::DimensionMismatch(2, 3));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(Jet::one(3).invert().unwrap(), Jet::one(3));
        let a = poly(1, 2, &[(&[0], 1, 1), (&[1], 1, 1)]);
        let inv = a.invert().unwrap();
        assert_eq!(
            inv,
            poly(1, 2, &[(&[0], 1, 1), (&[1], -1, 1), (&[2], 1, 1)])
        );
        // geometric-series oracle
        assert_eq!(&a * &inv, Jet::one(1).truncate(2));
        let two = Jet::constant(2, q(2, 1)).truncate(4);
        assert_eq!(two.invert().unwrap(), Jet::constant(2, q(1, 2)));
        assert_eq!(
            poly(1, 2, &[(&[1], 1, 1)]).invert().unwrap_err(),
            Error::NonInvertibleJet
        );
    }

    #[test]
    fn partial_derivative_examples() {
        let x2y = poly(2, 4, &[(&[2, 1], 1, 1)]);
        assert_eq!(x2y.partial(0).unwrap(), poly(2, 3, &[(&[1, 1], 2, 1)]));
        assert_eq!(x2y.partial(0).unwrap().order(), 3);
        assert!(Jet::constant(2, q(5, 1)).partial(1).unwrap().is_zero());
        let p = poly(1, 2, &[(&[0], 1, 1), (&[1], -1, 1), (&[2], 1, 1)]);
        assert_eq!(
            p.partial(0).unwrap(),
            poly(1, 1, &[(&[0], -1, 1), (&[1], 2, 1)])
        );
        assert_eq!(
            poly(1, 0, &[(&[0], 1, 1)]).partial(0).unwrap_err(),
            Error::OrderExhausted
        );
    }

    #[test]
    fn sqrt_of_perfect_square_series() {
        let a = poly(2, 4, &[(&[0, 0], 9, 4), (&[1, 0], 3, 1), (&[0, 2], 1, 1)]);
        let s = a.sqrt().unwrap();
        assert_eq!(s.constant_term(), q(3, 2));
        assert_eq!(&s * &s, a);
        assert!(poly(1, 3, &[(&[0], 2, 1), (&[1], 1, 1)]).sqrt().is_err());
    }

    #[test]
    fn truncation_respects_order_in_products() {
        let a = poly(1, 3, &[(&[1], 1, 1)]);
        let b = poly(1, 1, &[(&[0], 1, 1), (&[1], 1, 1)]);
        let p = &a * &b;
        assert_eq!(p.order(), 1);
        assert_eq!(p, poly(1, 1, &[(&[1], 1, 1)]));
    }

    #[test]
    fn add_product_matches_mul_then_add() {
        let a = poly(2, 3, &[(&[0, 0], 1, 2), (&[1, 0], 3, 1), (&[1, 1], -2, 7)]);
        let b = poly(2, 2, &[(&[0, 0], 2, 1), (&[0, 1], -1, 3)]);
        let mut acc = poly(2, 3, &[(&[2, 0], 1, 1)]);
        let expected = &acc - &(&a * &b);
        acc.add_product(&a, &b, true);
        assert_eq!(acc, expected);
        assert_eq!(acc.order(), 2);
    }
}
