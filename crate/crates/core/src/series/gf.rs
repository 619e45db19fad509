//! Closed-form generating functions, evaluated as truncated series.
//!
//! Every infinite sum is cut off once the remaining terms provably start
//! at or above the working precision, and the result is checked to be
//! known through the requested order. If cancellation ate too much
//! precision the evaluation is repeated with a wider margin.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::laurent::Laurent;
use super::truncated::{rational, TruncatedSeries};
use crate::error::{Error, Result};

/// Value substituted for a catalytic variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Argument {
    Scalar(BigRational),
    /// `numer(x) / denom(x)`, coefficients lowest degree first.
    Rational {
        numer: Vec<BigRational>,
        denom: Vec<BigRational>,
    },
    /// A series known through its order. Cancellation inside the kernel
    /// factors costs a few orders, so supply more terms than requested.
    Series(TruncatedSeries),
}

impl Argument {
    pub fn int(c: i64) -> Self {
        Self::Scalar(rational(c))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `c / (1 - k x)`.
    pub fn geometric(c: i64, k: i64) -> Self {
        Self::Rational {
            numer: vec![rational(c)],
            denom: vec![rational(1), rational(-k)],
        }
    }
}

impl From<BigRational> for Argument {
    fn from(c: BigRational) -> Self {
        Self::Scalar(c)
    }
}

impl From<TruncatedSeries> for Argument {
    fn from(s: TruncatedSeries) -> Self {
        Self::Series(s)
    }
}

type Cell = OnceLock<Result<Laurent>>;

struct Ctx {
    rel: usize,
    cut: i64,
    v0: Cell,
    v1: Cell,
    c11: Cell,
    b11: Cell,
    c_cache: Mutex<HashMap<Laurent, Laurent>>,
}

#[derive(Default)]
struct Accum(Option<Laurent>);

impl Accum {
    fn push(&mut self, t: Laurent) {
        self.0 = Some(match self.0.take() {
            None => t,
            Some(s) => s.add(&t),
        });
    }

    fn finish(self, cut: i64) -> Laurent {
        match self.0 {
            None => Laurent::zero(cut),
            Some(s) => s.truncate_prec(cut),
        }
    }
}

fn check_term(what: &str, j: i64, num_val: i64, den_val: i64) -> Result<()> {
    if num_val < den_val {
        return Err(Error::KernelDegenerate(format!(
            "term {j} of {what} has a pole of order {}",
            den_val - num_val
        )));
    }
    Ok(())
}

fn sign(j: i64) -> i64 {
    if j % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Ctx {
    fn new(cut: i64) -> Self {
        Self {
            rel: cut as usize + 4,
            cut,
            v0: OnceLock::new(),
            v1: OnceLock::new(),
            c11: OnceLock::new(),
            b11: OnceLock::new(),
            c_cache: Mutex::new(HashMap::new()),
        }
    }

    fn int(&self, c: i64) -> Laurent {
        Laurent::scalar(&rational(c), self.rel)
    }

    fn poly(&self, c: &[i64]) -> Laurent {
        let c: Vec<BigRational> = c.iter().map(|&k| rational(k)).collect();
        Laurent::polynomial(&c, self.rel)
    }

    fn x(&self) -> Laurent {
        self.poly(&[0, 1])
    }

    fn lift(&self, a: &Argument) -> Result<Laurent> {
        match a {
            Argument::Scalar(c) => Ok(Laurent::scalar(c, self.rel)),
            Argument::Rational { numer, denom } => {
                Laurent::polynomial(numer, self.rel).div(&Laurent::polynomial(denom, self.rel))
            }
            Argument::Series(s) => Ok(Laurent::from_truncated(s)),
        }
    }

    /// `∏_{i=1}^{k} (1 - i x)` for k = 0..=max.
    fn falling_products(&self, max: usize) -> Vec<Laurent> {
        let mut out = vec![self.int(1)];
        for i in 1..=max as i64 {
            let next = out.last().expect("nonempty").mul(&self.poly(&[1, -i]));
            out.push(next);
        }
        out
    }

    fn factorials(&self, max: usize) -> Vec<BigRational> {
        let mut out = vec![BigRational::one()];
        for i in 1..=max {
            let next = out.last().expect("nonempty") * rational(i as i64);
            out.push(next);
        }
        out
    }

    fn v0(&self) -> Result<Laurent> {
        self.v0.get_or_init(|| self.v0_uncached()).clone()
    }

    fn v1(&self) -> Result<Laurent> {
        self.v1
            .get_or_init(|| {
                self.v0()?;
                self.v(&self.int(1))
            })
            .clone()
    }

    fn c11(&self) -> Result<Laurent> {
        self.c11.get_or_init(|| self.c11_uncached()).clone()
    }

    fn b11(&self) -> Result<Laurent> {
        self.b11.get_or_init(|| self.b11_uncached()).clone()
    }

    fn v0_uncached(&self) -> Result<Laurent> {
        let cut = self.cut;
        let n = cut.max(2) as usize;
        let prods = self.falling_products(n + 1);
        let fact = self.factorials(n + 1);
        let mut num = Accum::default();
        let mut den = Accum::default();
        for j in 1..=n as i64 {
            let ju = j as usize;
            let inv_fact = fact[ju + 1].recip();
            if j + 1 < cut + 1 {
                let p = self.poly(&[j + 1, -(j * j + j + 1)]).shift(j + 1);
                num.push(p.div(&prods[ju + 1])?.scale(&inv_fact));
            }
            if j < cut {
                let p = self.poly(&[j + 1, -j * j]).shift(j);
                den.push(p.div(&prods[ju])?.scale(&inv_fact));
            }
        }
        num.finish(cut + 1).div(&den.finish(cut))
    }

    /// V(x, p).
    fn v(&self, p: &Laurent) -> Result<Laurent> {
        let cut = self.cut;
        let v0 = self.v0()?;
        let one = self.int(1);
        let x = self.x();
        let px = p.mul(&x);
        let p2 = p.mul(p);
        let p2x = p2.mul(&x);
        let p2x2 = p2x.mul(&x);
        let one_minus_p = one.sub(p);
        let base = one_minus_p.add(&px);
        let vp = p.val();
        let cut2 = cut - v0.val();
        let mut s1 = Accum::default();
        let mut s2 = Accum::default();
        let mut prod_ipx = one.clone();
        let mut prod_pipx = one.clone();
        let mut p_odd = p.clone();
        let mut p_even = one.clone();
        for j in 0i64.. {
            let next_ipx = prod_ipx.mul(&one.sub(&px.scale_int(j + 1)));
            let next_pipx = prod_pipx.mul(&one_minus_p.sub(&px.scale_int(j + 1)));
            let d1 = base.mul(&next_ipx).mul(&next_pipx);
            let d2 = base.mul(&prod_ipx).mul(&next_pipx);
            let live1 = (2 * j + 1) * (1 + vp) - d1.val() < cut;
            let live2 = 2 * j * (1 + vp) - d2.val() < cut2;
            if !live1 && !live2 {
                break;
            }
            if live1 {
                let poly = p
                    .sub(&one)
                    .sub(&p2x.scale_int(j))
                    .add(&px.scale_int(2 * j + 1))
                    .sub(&p2x2.scale_int(j * j + j + 1));
                let num = poly.mul(&p_odd).shift(2 * j + 1);
                check_term("V, first sum", j, num.val(), d1.val())?;
                s1.push(num.div(&d1)?.scale_int(sign(j)));
            }
            if live2 {
                let t = one.sub(&px.scale_int(j));
                let poly = t.mul(&t).sub(p).add(&p2x.scale_int(j - 1));
                let num = poly.mul(&p_even).shift(2 * j);
                check_term("V, second sum", j, num.val() + v0.val(), d2.val())?;
                s2.push(num.div(&d2)?.scale_int(sign(j)));
            }
            prod_ipx = next_ipx;
            prod_pipx = next_pipx;
            p_odd = p_odd.mul(&p2);
            p_even = p_even.mul(&p2);
        }
        Ok(s1.finish(cut).add(&v0.mul(&s2.finish(cut2))))
    }

    fn c11_uncached(&self) -> Result<Laurent> {
        let v1 = self.v1()?;
        let p = self.int(1).div(&self.poly(&[1, -3]))?;
        let vp = self.v(&p)?;
        let num = self
            .poly(&[1, -1])
            .mul(&vp)
            .sub(&self.poly(&[1, -4, 3]).mul(&v1))
            .add(&self.poly(&[3, -6, -3]))
            .shift(3);
        num.div(&self.poly(&[3, -15, 18]))
    }

    /// C(x, 1, u).
    fn c1u(&self, u: &Laurent) -> Result<Laurent> {
        if let Some(hit) = self.c_cache.lock().expect("cache lock").get(u) {
            return Ok(hit.clone());
        }
        let r = self.c1u_uncached(u)?;
        self.c_cache.lock().expect("cache lock").insert(u.clone(), r.clone());
        Ok(r)
    }

    fn c1u_uncached(&self, u: &Laurent) -> Result<Laurent> {
        let c11 = self.c11()?;
        let v1 = self.v1()?;
        let one = self.int(1);
        let one_minus_x = self.poly(&[1, -1]);
        let ux = u.mul(&self.x());
        let omu = one.sub(u);
        let base = omu.add(&ux);
        let k2 = omu.sub(&ux.scale_int(2));
        let t2 = one.sub(&ux.scale_int(2));
        let vq = if omu.is_zero() {
            Laurent::zero(1)
        } else {
            self.v(&u.div(&t2)?)?
        };
        let a1 = one
            .sub(&ux)
            .mul(&c11)
            .shift(1)
            .div(&one_minus_x.mul(&base))?;
        let a2 = omu.mul(u).mul(&v1).shift(4).div(&base.mul(&k2))?;
        let a3 = omu
            .mul(&u.mul(u))
            .mul(&vq)
            .shift(4)
            .div(&base.mul(&k2).mul(&t2))?;
        let a4 = omu
            .mul(&one.sub(&ux).sub(&ux.shift(1)))
            .shift(3)
            .div(&one_minus_x.mul(&base).mul(&t2))?;
        Ok(a1.add(&a2).sub(&a3).add(&a4))
    }

    fn b11_uncached(&self) -> Result<Laurent> {
        let cut = self.cut;
        let c11 = self.c11()?;
        let n = cut.max(2) as usize;
        let prods = self.falling_products(n + 2);
        let fact = self.factorials(n + 1);
        let cut_a = cut - c11.val();
        let mut sa = Accum::default();
        let mut sc = Accum::default();
        let mut den = Accum::default();
        let mut pending = Vec::new();
        for j in 1..=n as i64 {
            let ju = j as usize;
            let inv_fact = fact[ju + 1].recip();
            if j + 1 < cut_a {
                let t = self.int(j * j).shift(j + 1);
                sa.push(t.div(&prods[ju])?.scale(&inv_fact));
            }
            if j + 4 < cut {
                let coef = self.int(j).shift(j + 1).div(&prods[ju + 2])?.scale(&inv_fact);
                let arg = self.int(1).div(&self.poly(&[1, -(j + 1)]))?;
                pending.push((coef, arg));
            }
            if j + 2 < cut {
                let t = self.poly(&[1, -(j + 1)]);
                let num = t.mul(&t).shift(j + 2);
                sc.push(num.div(&prods[ju + 2])?.scale(&fact[ju - 1].recip()));
            }
            if j < cut {
                let t = self.poly(&[-j - 1, j * j]).shift(j);
                den.push(t.div(&prods[ju])?.scale(&inv_fact));
            }
        }
        let mut sb = Accum::default();
        for t in self.with_c1u(&pending)? {
            sb.push(t);
        }
        let one_minus_x = self.poly(&[1, -1]);
        let num = c11
            .mul(&sa.finish(cut_a))
            .add(&sc.finish(cut))
            .div(&one_minus_x)?
            .add(&sb.finish(cut));
        Ok(num.div(&den.finish(cut))?.neg())
    }

    /// `coef · C(x, 1, arg)` for each pair, in parallel.
    fn with_c1u(&self, pending: &[(Laurent, Laurent)]) -> Result<Vec<Laurent>> {
        pending
            .par_iter()
            .map(|(coef, arg)| {
                if coef.is_zero() {
                    Ok(coef.mul(&Laurent::zero(3)))
                } else {
                    Ok(self.c1u(arg)?.mul(coef))
                }
            })
            .collect()
    }

    /// B(x, 1, u).
    fn b1u(&self, u: &Laurent) -> Result<Laurent> {
        let cut = self.cut;
        let b11 = self.b11()?;
        let c11 = self.c11()?;
        self.v1()?;
        let one = self.int(1);
        let x = self.x();
        let one_minus_x = self.poly(&[1, -1]);
        let ux = u.mul(&x);
        let u2 = u.mul(u);
        let u3 = u2.mul(u);
        let u2x = u2.mul(&x);
        let omu = one.sub(u);
        let base = omu.add(&ux);
        let vu = u.val();
        let cut1 = cut - b11.val();
        let cut2 = cut - c11.val();
        let mut piux = vec![one.clone()];
        let mut puiux = vec![one.clone()];
        let mut u2j = one.clone();
        let mut s1 = Accum::default();
        let mut s2 = Accum::default();
        let mut s4 = Accum::default();
        let mut pending = Vec::new();
        for j in 0i64.. {
            let ju = j as usize;
            while piux.len() < ju + 3 {
                let k = piux.len() as i64;
                let next = piux.last().expect("nonempty").mul(&one.sub(&ux.scale_int(k)));
                piux.push(next);
            }
            while puiux.len() < ju + 2 {
                let k = puiux.len() as i64;
                let next = puiux.last().expect("nonempty").mul(&omu.sub(&ux.scale_int(k)));
                puiux.push(next);
            }
            let d1 = base.mul(&piux[ju]).mul(&puiux[ju + 1]);
            let d2 = d1.mul(&one_minus_x);
            let d3 = base.mul(&piux[ju + 2]).mul(&puiux[ju + 1]);
            let d4 = one_minus_x.mul(&base).mul(&piux[ju + 2]).mul(&puiux[ju]);
            let uval = 2 * j * vu;
            let live1 = 2 * j + 1 + uval - d1.val() < cut1;
            let live2 = 2 * j + 1 + uval - d2.val() < cut2;
            let live3 = 2 * j + 2 + uval + 3 * vu + 3 - d3.val() < cut;
            let live4 = 2 * j + 2 + uval - d4.val() < cut;
            if !(live1 || live2 || live3 || live4) {
                break;
            }
            let ujx = ux.scale_int(j);
            let k1 = omu.sub(&ujx);
            if live1 {
                let t = one.sub(&ujx);
                let poly = t.mul(&t).add(&u2x.scale_int(j - 1)).sub(u);
                let num = poly.mul(&u2j).shift(2 * j + 1);
                check_term("B(x,1,u), first sum", j, num.val() + b11.val(), d1.val())?;
                s1.push(num.div(&d1)?.scale_int(sign(j)));
            }
            if live2 {
                let num = k1.mul(&k1).mul(&u2j).shift(2 * j + 1);
                check_term("B(x,1,u), second sum", j, num.val() + c11.val(), d2.val())?;
                s2.push(num.div(&d2)?.scale_int(sign(j)));
            }
            if live3 {
                let num = k1.mul(&u2j).mul(&u3).shift(2 * j + 2);
                check_term("B(x,1,u), third sum", j, num.val() + 3, d3.val())?;
                let coef = num.div(&d3)?.scale_int(sign(j));
                let arg = u.div(&one.sub(&ux.scale_int(j + 1)))?;
                pending.push((coef, arg));
            }
            if live4 {
                let t = one.sub(&ux.scale_int(j + 1));
                let num = t.mul(&t).mul(&k1).mul(&u2j).shift(2 * j + 2);
                check_term("B(x,1,u), fourth sum", j, num.val(), d4.val())?;
                s4.push(num.div(&d4)?.scale_int(sign(j)));
            }
            u2j = u2j.mul(&u2);
        }
        let mut s3 = Accum::default();
        for t in self.with_c1u(&pending)? {
            s3.push(t);
        }
        Ok(b11
            .mul(&s1.finish(cut1))
            .add(&c11.mul(&s2.finish(cut2)))
            .sub(&s3.finish(cut))
            .add(&s4.finish(cut)))
    }

    fn c1(&self, w: &Laurent) -> Result<Laurent> {
        if w.is_one() {
            Ok(self.c11()?.truncate_prec(w.prec()))
        } else {
            self.c1u(w)
        }
    }

    fn b1(&self, w: &Laurent) -> Result<Laurent> {
        if w.is_one() {
            Ok(self.b11()?.truncate_prec(w.prec()))
        } else {
            self.b1u(w)
        }
    }

    fn a(&self) -> Result<Laurent> {
        let x = self.x();
        let one_minus_x = self.poly(&[1, -1]);
        let b11 = self.b11()?;
        let c11 = self.c11()?;
        x.add(&x.mul(&c11))
            .div(&one_minus_x)
            .map(|t| t.add(&x.mul(&b11)))
    }

    /// A(x, v, u).
    fn a_vu(&self, v: &Laurent, u: &Laurent) -> Result<Laurent> {
        let one = self.int(1);
        let x = self.x();
        let one_minus_x = self.poly(&[1, -1]);
        if v.is_one() && u.is_one() {
            self.c11()?;
            self.b11()?;
            let b = self.b1u(u)?;
            let c = self.c1u(u)?;
            return Ok(x.add(&x.mul(&c)).div(&one_minus_x)?.add(&x.mul(&b)));
        }
        let omu = one.sub(u);
        if omu.is_zero() {
            return Err(Error::KernelDegenerate(
                "u = 1 is a pole of the kernel unless v = 1".into(),
            ));
        }
        let c11 = self.c11()?;
        let b11 = self.b11()?;
        let v1 = self.v1()?;
        let ux = u.mul(&x);
        let vx = v.mul(&x);
        let uv = u.mul(v);
        let t2 = one.sub(&ux.scale_int(2));
        let one_minus_ux = one.sub(&ux);
        let one_minus_vx = one.sub(&vx);
        let c1v = self.c1(v)?;
        let c1uv = self.c1(&uv)?;

        let k2 = omu.sub(&ux.scale_int(2));
        let vq = if u.is_zero() {
            Laurent::zero(1)
        } else {
            self.v(&u.div(&t2)?)?
        };
        let c_tot = u
            .shift(4)
            .mul(&v1.sub(&u.mul(&vq).div(&t2)?))
            .div(&k2)?
            .add(&u.shift(4).div(&t2)?)
            .add(&uv.shift(1).mul(&c1v.sub(&c1uv)).div(&omu)?)
            .add(&v.shift(1).mul(&c1v).add(&v.shift(3)).div(&one_minus_vx)?);

        let r = u.div(&one_minus_ux)?;
        let k3 = omu.sub(&ux);
        let b1r = self.b1(&r)?;
        let c1r = self.c1(&r)?;
        let b1v = self.b1(v)?;
        let b1uv = self.b1(&uv)?;
        let b_tot = u
            .shift(3)
            .div(&one_minus_x.mul(&t2))?
            .add(
                &u.shift(2)
                    .mul(
                        &b11.sub(&r.mul(&b1r))
                            .add(&c11.div(&one_minus_x)?)
                            .sub(&u.mul(u).mul(&c1r).div(&one_minus_ux.mul(&t2))?),
                    )
                    .div(&k3)?,
            )
            .add(&v.shift(1).mul(&b1v.sub(&u.mul(&b1uv))).div(&omu)?)
            .add(&v.mul(v).shift(1).mul(&c1v).add(&v.shift(2)).div(&one_minus_vx)?);

        let head = x.add(&omu.shift(2)).div(&one_minus_ux)?;
        let tail = uv.shift(1).mul(&c_tot).div(&one.sub(&uv.shift(1)))?;
        Ok(head.add(&x.mul(&b_tot)).add(&tail))
    }
}

fn evaluate<T>(order: usize, f: impl Fn(&Ctx) -> Result<T>) -> Result<T> {
    let mut margin = 6i64;
    loop {
        let ctx = Ctx::new(order as i64 + 1 + margin);
        match f(&ctx) {
            Err(Error::InsufficientOrder { .. }) if margin < 4 * (order as i64 + 8) => margin *= 2,
            other => return other,
        }
    }
}

fn single(order: usize, f: impl Fn(&Ctx) -> Result<Laurent>) -> Result<TruncatedSeries> {
    evaluate(order, |ctx| f(ctx)?.to_truncated(order))
}

/// V(x, p).
pub fn v_series(p: &Argument, order: usize) -> Result<TruncatedSeries> {
    single(order, |ctx| ctx.v(&ctx.lift(p)?))
}

/// V(x, 0).
pub fn v0_series(order: usize) -> Result<TruncatedSeries> {
    single(order, Ctx::v0)
}

/// C(x, 1, 1).
pub fn c11_series(order: usize) -> Result<TruncatedSeries> {
    single(order, Ctx::c11)
}

/// C(x, 1, u).
pub fn c1u_series(u: &Argument, order: usize) -> Result<TruncatedSeries> {
    single(order, |ctx| ctx.c1u(&ctx.lift(u)?))
}

/// B(x, 1, 1).
pub fn b11_series(order: usize) -> Result<TruncatedSeries> {
    single(order, Ctx::b11)
}

/// B(x, 1, u).
pub fn b1u_series(u: &Argument, order: usize) -> Result<TruncatedSeries> {
    single(order, |ctx| ctx.b1u(&ctx.lift(u)?))
}

/// A(x) = Σ |A_n| x^n.
pub fn a_series(order: usize) -> Result<TruncatedSeries> {
    single(order, Ctx::a)
}

/// A(x, v, u).
pub fn a_vu_series(v: &Argument, u: &Argument, order: usize) -> Result<TruncatedSeries> {
    single(order, |ctx| ctx.a_vu(&ctx.lift(v)?, &ctx.lift(u)?))
}

/// The main generating functions at a common order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfBundle {
    pub order: usize,
    pub v1: TruncatedSeries,
    pub v0: TruncatedSeries,
    pub c11: TruncatedSeries,
    pub b11: TruncatedSeries,
    pub a: TruncatedSeries,
}

impl GfBundle {
    pub fn compute(order: usize) -> Result<Self> {
        evaluate(order, |ctx| {
            Ok(Self {
                order,
                v1: ctx.v1()?.to_truncated(order)?,
                v0: ctx.v0()?.to_truncated(order)?,
                c11: ctx.c11()?.to_truncated(order)?,
                b11: ctx.b11()?.to_truncated(order)?,
                a: ctx.a()?.to_truncated(order)?,
            })
        })
    }

    pub fn get(&self, name: &str) -> Option<&TruncatedSeries> {
        match name {
            "V1" => Some(&self.v1),
            "V0" => Some(&self.v0),
            "C11" => Some(&self.c11),
            "B11" => Some(&self.b11),
            "A" => Some(&self.a),
            _ => None,
        }
    }
}

/// Integer coefficients of a series, for comparison with counting tables.
pub fn integer_coeffs(s: &TruncatedSeries) -> Option<Vec<BigInt>> {
    s.coeffs()
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::Recurrences;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        integer_coeffs(s)
            .expect("integral")
            .into_iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn v0_is_x_plus_x_v1() {
        let n = 20;
        let v0 = v0_series(n).unwrap();
        let v1 = v_series(&Argument::one(), n).unwrap();
        let rhs = v1.shift_up(1).add(&TruncatedSeries::monomial(n, 1)).unwrap();
        assert_eq!(v0, rhs);
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(ints(&c11_series(5).unwrap()), [0, 0, 0, 1, 3, 9]);
        assert_eq!(ints(&b11_series(4).unwrap()), [0, 0, 1, 3, 10]);
        assert_eq!(ints(&a_series(10).unwrap()), [0, 1, 1, 2, 5, 15, 50, 180, 690, 2792, 11857]);
    }

    #[test]
    fn specialization_at_one() {
        let n = 10;
        assert_eq!(c1u_series(&Argument::one(), n).unwrap(), c11_series(n).unwrap());
        assert_eq!(b1u_series(&Argument::one(), n).unwrap(), b11_series(n).unwrap());
        assert_eq!(
            a_vu_series(&Argument::one(), &Argument::one(), n).unwrap(),
            a_series(n).unwrap()
        );
    }

    #[test]
    fn c_at_zero_is_the_second_column() {
        let n = 10;
        let r = Recurrences::compute(n);
        let s = ints(&c1u_series(&Argument::int(0), n).unwrap());
        for m in 3..=n {
            let col: u64 = (3..=m).map(|i| u64::try_from(r.c.get(m, i, 2)).unwrap()).sum();
            assert_eq!(s[m], col as i64, "n = {m}");
        }
    }

    #[test]
    fn series_argument_matches_rational_argument() {
        let n = 10;
        assert!(matches!(
            v_series(&Argument::Series(expand_geometric(3, n)), n),
            Err(Error::InsufficientOrder { .. })
        ));
        let p = expand_geometric(3, n + 4);
        assert_eq!(
            v_series(&Argument::Series(p), n).unwrap(),
            v_series(&Argument::geometric(1, 3), n).unwrap()
        );
    }

    fn expand_geometric(k: i64, n: usize) -> TruncatedSeries {
        super::super::expand_rational(&[rational(1)], &[rational(1), rational(-k)], n).unwrap()
    }

    #[test]
    fn truncation_is_stable() {
        let small = a_series(12).unwrap();
        let big = a_series(17).unwrap();
        assert_eq!(big.truncate(12).unwrap(), small);
    }

    #[test]
    fn degenerate_kernel_is_reported() {
        let err = a_vu_series(&Argument::int(2), &Argument::one(), 6).unwrap_err();
        assert!(matches!(err, Error::KernelDegenerate(_)));
    }

    #[test]
    fn bivariate_first_coefficient() {
        for (v, u) in [(2, 3), (0, 5), (3, 0)] {
            let s = a_vu_series(&Argument::int(v), &Argument::int(u), 4).unwrap();
            assert_eq!(s.coeff(1), &rational(1));
        }
    }

    #[test]
    fn bundle_agrees_with_single_calls() {
        let b = GfBundle::compute(8).unwrap();
        assert_eq!(b.a, a_series(8).unwrap());
        assert_eq!(b.get("V1").unwrap(), &v_series(&Argument::one(), 8).unwrap());
        assert!(b.get("X").is_none());
    }
}
