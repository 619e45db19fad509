use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact power series in x kept modulo x^{N+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    /// Series with coefficients `c_0..c_N`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least c_0");
        Self { coeffs }
    }

    pub fn from_integers(order: usize, values: &[i64]) -> Self {
        let mut s = Self::zero(order);
        for (k, &v) in values.iter().enumerate().take(order + 1) {
            s.coeffs[k] = rational(v);
        }
        s
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    /// x^k, or the zero series when k exceeds the order.
    pub fn monomial(order: usize, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = BigRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// Index of the first nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::InsufficientOrder {
                needed: order as i64 + 1,
                available: self.order() as i64 + 1,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self {
            coeffs: convolve(&self.coeffs, &other.coeffs, self.coeffs.len()),
        })
    }

    /// Quotient with common powers of x cancelled.
    ///
    /// If the divisor has valuation k, both operands are shifted down by k
    /// and the quotient is known only through x^{N-k}, so the result has
    /// order N - k.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order();
        let k = other
            .valuation()
            .ok_or(Error::DivisionByZero { order: n })?;
        if let Some(va) = self.valuation() {
            if va < k {
                return Err(Error::NegativeValuation {
                    numerator: va,
                    denominator: k,
                });
            }
        }
        let len = n + 1 - k;
        let inv = invert_unit(&other.coeffs[k..], len);
        Ok(Self {
            coeffs: convolve(&self.coeffs[k..], &inv, len),
        })
    }

    pub fn arith(&self, other: &Self, kind: ArithKind) -> Result<Self> {
        match kind {
            ArithKind::Add => self.add(other),
            ArithKind::Sub => self.sub(other),
            ArithKind::Mul => self.mul(other),
            ArithKind::Div => self.div(other),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// x · self, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= self.order() {
                s.coeffs[i + k] = c.clone();
            }
        }
        s
    }

    /// All coefficients as non-negative integers, or the first index that
    /// is fractional or negative.
    pub fn to_naturals(&self) -> std::result::Result<Vec<BigUint>, usize> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if c.is_integer() && !c.is_negative() {
                    Ok(c.to_integer().to_biguint().expect("non-negative"))
                } else {
                    Err(k)
                }
            })
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    /// Comma-separated coefficients in lowest terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Free-function form of the four operations.
pub fn series_arith(a: &TruncatedSeries, b: &TruncatedSeries, kind: ArithKind) -> Result<TruncatedSeries> {
    a.arith(b, kind)
}

/// First `len` coefficients of the product of two coefficient slices.
fn convolve(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// First `len` coefficients of 1/u for u with nonzero constant term.
fn invert_unit(u: &[BigRational], len: usize) -> Vec<BigRational> {
    let c0 = u[0].recip();
    let mut inv: Vec<BigRational> = Vec::with_capacity(len);
    if len == 0 {
        return inv;
    }
    inv.push(c0.clone());
    for k in 1..len {
        let mut acc = BigRational::zero();
        for i in 1..=k.min(u.len() - 1) {
            if !u[i].is_zero() {
                acc += &u[i] * &inv[k - i];
            }
        }
        inv.push(-(acc * &c0));
    }
    inv
}

/// Expands numer/denom (polynomials in x, low degree first) through x^order.
///
/// Polynomials are exact, so a denominator of valuation k is handled by
/// expanding both to order + k before the valuation-aware division.
pub fn expand_rational(numer: &[BigRational], denom: &[BigRational], order: usize) -> Result<TruncatedSeries> {
    let k = denom
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::DivisionByZero { order })?;
    let work = order + k;
    let pad = |p: &[BigRational]| {
        let mut s = TruncatedSeries::zero(work);
        for (i, c) in p.iter().enumerate().take(work + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    };
    pad(numer).div(&pad(denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    fn r(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    #[test]
    fn geometric_series() {
        let one = TruncatedSeries::one(5);
        let d = TruncatedSeries::from_integers(5, &[1, -1]);
        assert_eq!(ints(&one.div(&d).unwrap()), [1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn monomial_cancellation_reduces_order() {
        let a = TruncatedSeries::monomial(4, 2);
        let b = TruncatedSeries::monomial(4, 1);
        let q = a.div(&b).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(ints(&q), [0, 1, 0, 0]);
    }

    #[test]
    fn division_errors() {
        let z = TruncatedSeries::zero(3);
        let x = TruncatedSeries::monomial(3, 1);
        let one = TruncatedSeries::one(3);
        assert!(matches!(one.div(&z), Err(Error::DivisionByZero { .. })));
        assert!(matches!(one.div(&x), Err(Error::NegativeValuation { .. })));
        assert!(matches!(
            one.add(&TruncatedSeries::one(4)),
            Err(Error::OrderMismatch { .. })
        ));
        assert_eq!(z.div(&x).unwrap(), TruncatedSeries::zero(2));
    }

    #[test]
    fn rational_expansions() {
        assert_eq!(ints(&expand_rational(&r(&[0, 1]), &r(&[1, -1]), 4).unwrap()), [0, 1, 1, 1, 1]);
        assert_eq!(ints(&expand_rational(&r(&[1]), &r(&[1, -2]), 3).unwrap()), [1, 2, 4, 8]);
        assert_eq!(ints(&expand_rational(&r(&[1, -1]), &r(&[1, -3]), 3).unwrap()), [1, 2, 6, 18]);
        // x^2 / (x - x^2) = x / (1 - x), kept at the requested order
        let q = expand_rational(&r(&[0, 0, 1]), &r(&[0, 1, -1]), 4).unwrap();
        assert_eq!(ints(&q), [0, 1, 1, 1, 1]);
    }

    #[test]
    fn arith_dispatch() {
        let a = TruncatedSeries::from_integers(3, &[1, 2]);
        let b = TruncatedSeries::from_integers(3, &[1, -1]);
        assert_eq!(ints(&series_arith(&a, &b, ArithKind::Add).unwrap()), [2, 1, 0, 0]);
        assert_eq!(ints(&series_arith(&a, &b, ArithKind::Sub).unwrap()), [0, 3, 0, 0]);
        assert_eq!(ints(&series_arith(&a, &b, ArithKind::Mul).unwrap()), [1, 1, -2, 0]);
        assert_eq!(ints(&series_arith(&a, &b, ArithKind::Div).unwrap()), [1, 3, 3, 3]);
    }

    #[test]
    fn display_is_exact() {
        let s = TruncatedSeries::new(vec![rational(1), BigRational::new(3.into(), 6.into())]);
        assert_eq!(s.to_string(), "1,1/2");
    }
}
