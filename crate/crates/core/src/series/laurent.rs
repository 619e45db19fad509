//! Laurent series with explicit precision, used to evaluate the
//! generating-function formulas.
//!
//! A value is `x^val · (c_0 + c_1 x + … + c_{r-1} x^{r-1}) + O(x^{val + r})`
//! with `c_0 ≠ 0`. Precision is tracked per value: sums keep the smaller
//! absolute precision, products keep the smaller relative precision, and
//! cancellation of leading terms costs relative precision. Negative
//! valuations are allowed in intermediates (a kernel factor such as
//! `1 - u + ux` at `u = 1` is just `x`), and only the final conversion to a
//! [`TruncatedSeries`] insists on a genuine power series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::truncated::TruncatedSeries;
use crate::error::{Error, Result};

/// Coefficients are `num[k] / den` with `den > 0` and no common factor, so
/// equal values have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Laurent {
    /// Exponent of `num[0]`; for a zero value, its absolute precision.
    val: i64,
    num: Vec<BigInt>,
    den: BigInt,
}

fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
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

impl Laurent {
    /// `O(x^prec)`.
    pub fn zero(prec: i64) -> Self {
        Self {
            val: prec,
            num: Vec::new(),
            den: BigInt::one(),
        }
    }

    /// `x^val · (coeffs) + O(x^{val + coeffs.len()})`.
    pub fn from_parts(val: i64, coeffs: Vec<BigRational>) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self { val, num, den }.normalized()
    }

    /// An exact polynomial, carried with `rel` coefficients after its
    /// leading term.
    pub fn polynomial(coeffs: &[BigRational], rel: usize) -> Self {
        let Some(lead) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero(rel as i64);
        };
        let mut body = vec![BigRational::zero(); rel];
        for (k, c) in coeffs[lead..].iter().enumerate().take(rel) {
            body[k] = c.clone();
        }
        Self::from_parts(lead as i64, body)
    }

    pub fn scalar(c: &BigRational, rel: usize) -> Self {
        Self::polynomial(std::slice::from_ref(c), rel)
    }

    pub fn from_truncated(s: &TruncatedSeries) -> Self {
        Self::from_parts(0, s.coeffs().to_vec())
    }

    fn normalized(mut self) -> Self {
        let lead = self
            .num
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.num.len());
        if lead > 0 {
            self.num.drain(..lead);
            self.val += lead as i64;
        }
        if self.num.is_empty() {
            self.den = BigInt::one();
            return self;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if !self.den.is_one() {
            let mut g = self.den.clone();
            for c in &self.num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                self.den /= &g;
                for c in &mut self.num {
                    *c /= &g;
                }
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Equal to 1 through its precision.
    pub fn is_one(&self) -> bool {
        self.val == 0
            && self.den.is_one()
            && self.num.first().is_some_and(One::is_one)
            && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Valuation; for a zero value this is its precision, which is still a
    /// valid lower bound.
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.val + self.num.len() as i64
    }

    /// Coefficient of x^e; `e` must lie below the precision.
    pub fn coeff(&self, e: i64) -> BigRational {
        debug_assert!(e < self.prec());
        if e < self.val {
            BigRational::zero()
        } else {
            BigRational::new(self.num[(e - self.val) as usize].clone(), self.den.clone())
        }
    }

    /// Forgets everything from x^prec on.
    pub fn truncate_prec(mut self, prec: i64) -> Self {
        if prec >= self.prec() {
            return self;
        }
        if prec <= self.val {
            return Self::zero(prec);
        }
        self.num.truncate((prec - self.val) as usize);
        self.normalized()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let prec = self.prec().min(other.prec());
        let val = self.val.min(other.val).min(prec);
        let g = self.den.gcd(&other.den);
        let ma = &other.den / &g;
        let mb = &self.den / &g;
        let den = &self.den * &ma;
        let mut num = vec![BigInt::zero(); (prec - val) as usize];
        for (k, c) in self.num.iter().enumerate() {
            let e = self.val + k as i64;
            if e >= prec {
                break;
            }
            if !c.is_zero() {
                num[(e - val) as usize] += c * &ma;
            }
        }
        for (k, c) in other.num.iter().enumerate() {
            let e = other.val + k as i64;
            if e >= prec {
                break;
            }
            if c.is_zero() {
                continue;
            }
            let slot = &mut num[(e - val) as usize];
            if negate {
                *slot -= c * &mb;
            } else {
                *slot += c * &mb;
            }
        }
        Self { val, num, den }.normalized()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.val + other.val);
        }
        let rel = self.num.len().min(other.num.len());
        Self {
            val: self.val + other.val,
            num: convolve(&self.num, &other.num, rel),
            den: &self.den * &other.den,
        }
        .normalized()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.prec());
        }
        Self {
            val: self.val,
            num: self.num.iter().map(|a| a * c.numer()).collect(),
            den: &self.den * c.denom(),
        }
        .normalized()
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn neg(&self) -> Self {
        self.scale_int(-1)
    }

    /// x^k · self.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            val: self.val + k,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::KernelDegenerate(format!(
                "divisor vanishes through x^{}",
                self.prec() - 1
            )));
        }
        // 1/U = sum W_k x^k / c^{k+1} with integer W_k.
        let u = &self.num;
        let len = u.len();
        let c = &u[0];
        let mut cpow = vec![BigInt::one()];
        for _ in 1..len {
            let next = cpow.last().expect("nonempty") * c;
            cpow.push(next);
        }
        let mut w: Vec<BigInt> = Vec::with_capacity(len);
        w.push(BigInt::one());
        for k in 1..len {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                if !u[i].is_zero() && !w[k - i].is_zero() {
                    acc += &u[i] * &w[k - i] * &cpow[i - 1];
                }
            }
            w.push(-acc);
        }
        let num = w
            .into_iter()
            .enumerate()
            .map(|(k, wk)| wk * &cpow[len - 1 - k] * &self.den)
            .collect();
        Ok(Self {
            val: -self.val,
            num,
            den: &cpow[len - 1] * c,
        }
        .normalized())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// The coefficients of x^0..x^order, provided they are all known and no
    /// negative power survives.
    pub fn to_truncated(&self, order: usize) -> Result<TruncatedSeries> {
        if self.prec() < order as i64 + 1 {
            return Err(Error::InsufficientOrder {
                needed: order as i64 + 1,
                available: self.prec(),
            });
        }
        if self.val < 0 {
            return Err(Error::KernelDegenerate(format!(
                "result has a nonzero coefficient at x^{}",
                self.val
            )));
        }
        Ok(TruncatedSeries::new(
            (0..=order as i64).map(|e| self.coeff(e)).collect(),
        ))
    }
}
