//! Finite and infinite q-Pochhammer symbols, q-brackets, q-factorials,
//! Gaussian binomials and the q-Gamma function.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bigfloat::{BigFloat, PrecisionContext};
use crate::algebra::{Exps, LaurentPoly};
use crate::error::{Error, Result};

/// The operations the q-functions need, shared by exact and numeric values.
pub trait QScalar: Clone {
    fn unit_like(&self) -> Self;
    fn int_like(&self, v: &BigInt) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn over(&self, o: &Self) -> Result<Self>;
    fn is_zero_value(&self) -> bool;
}

impl QScalar for BigRational {
    fn unit_like(&self) -> Self {
        BigRational::one()
    }
    fn int_like(&self, v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn over(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DomainError("division by zero".into()));
        }
        Ok(self / o)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl QScalar for BigFloat {
    fn unit_like(&self) -> Self {
        BigFloat::one(self.prec())
    }
    fn int_like(&self, v: &BigInt) -> Self {
        BigFloat::from_bigint(v.clone(), self.prec())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn over(&self, o: &Self) -> Result<Self> {
        self.div(o)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// `(a; q)_n = (1 - a)(1 - a q) ... (1 - a q^{n-1})`.
pub fn qpoch<S: QScalar>(a: &S, q: &S, n: u32) -> S {
    let one = a.unit_like();
    let mut r = one.clone();
    let mut x = a.clone();
    for _ in 0..n {
        r = r.times(&one.minus(&x));
        x = x.times(q);
    }
    r
}

/// `[n]_q = 1 + q + ... + q^{n-1}` (so `[0]_q = 0`, and `[n]_1 = n`).
pub fn qbracket<S: QScalar>(n: u32, q: &S) -> S {
    let one = q.unit_like();
    let zero = one.minus(&one);
    let mut sum = zero;
    let mut pw = one;
    for _ in 0..n {
        sum = sum.plus(&pw);
        pw = pw.times(q);
    }
    sum
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn qfactorial<S: QScalar>(n: u32, q: &S) -> S {
    let mut r = q.unit_like();
    for i in 1..=n {
        r = r.times(&qbracket(i, q));
    }
    r
}

/// Gaussian binomial evaluated at `q`, via its polynomial form.
pub fn qbinomial<S: QScalar>(n: u32, k: u32, q: &S) -> Result<S> {
    let coeffs = qbinomial_coeffs(n, k)?;
    let mut acc = q.int_like(&BigInt::zero());
    for c in coeffs.iter().rev() {
        acc = acc.times(q).plus(&q.int_like(c));
    }
    Ok(acc)
}

/// Coefficients (constant term first) of the Gaussian binomial polynomial.
pub fn qbinomial_coeffs(n: u32, k: u32) -> Result<Vec<BigInt>> {
    if k > n {
        return Err(Error::IndexError(format!("k = {} exceeds n = {}", k, n)));
    }
    // q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    let k = k.min(n - k) as usize;
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]; k + 1];
    for j in 1..=k {
        row[j] = vec![];
    }
    for m in 1..=n as usize {
        for j in (1..=k.min(m)).rev() {
            let mut v = vec![BigInt::zero(); (j * (m - j) + 1).max(1)];
            for (i, c) in row[j - 1].iter().enumerate() {
                v[i] += c;
            }
            for (i, c) in row[j].iter().enumerate() {
                v[i + j] += c;
            }
            row[j] = v;
        }
    }
    Ok(row[k].clone())
}

/// The Gaussian binomial as an exact polynomial in `t = q`.
pub fn qbinomial_poly(n: u32, k: u32) -> Result<LaurentPoly> {
    let c = qbinomial_coeffs(n, k)?;
    Ok(LaurentPoly::from_terms(c.into_iter().enumerate().map(|(i, v)| {
        (Exps::new(i as i32, 0, 0), BigRational::from_integer(v))
    })))
}

fn check_inside_unit(q: &BigFloat) -> Result<()> {
    if q.abs().cmp(&BigFloat::one(q.prec())) != Ordering::Less {
        return Err(Error::DomainError("|q| must be below 1".into()));
    }
    Ok(())
}

/// `(a; q)_inf`, truncated once the remaining factors are within the budget.
pub fn qpoch_infinite(a: &BigFloat, q: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat> {
    check_inside_unit(q)?;
    let bits = ctx.bits();
    let a = a.with_prec(bits);
    let q = q.with_prec(bits);
    let one = BigFloat::one(bits);
    if a.is_zero() {
        return Ok(one);
    }
    let eps = ctx.epsilon();
    let mut r = one.clone();
    let mut x = a;
    // |log prod_{i>=m}(1 - a q^i)| <= 2|a q^m|/(1-|q|) once |a q^m| < 1/2
    let gap = one.sub(&q.abs());
    let mut guard = 0u64;
    loop {
        r = r.mul(&one.sub(&x));
        x = x.mul(&q);
        let bound = x.abs().mul_int(2).div(&gap)?;
        if bound.cmp(&eps.mul(&r.abs().max_with_tiny())) == Ordering::Less {
            break;
        }
        guard += 1;
        if guard > 10_000_000 {
            return Err(Error::Divergent("infinite product did not settle".into()));
        }
        if r.is_zero() {
            break;
        }
    }
    Ok(r.with_prec(ctx.bits()))
}

trait TinyFloor {
    fn max_with_tiny(&self) -> BigFloat;
}

impl TinyFloor for BigFloat {
    fn max_with_tiny(&self) -> BigFloat {
        if self.is_zero() {
            BigFloat::one(self.prec()).mul_pow2(-(self.prec() as i64))
        } else {
            self.clone()
        }
    }
}

/// `Gamma_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^{1-x}` for `0 < q < 1`.
pub fn qgamma(x: &BigFloat, q: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat> {
    check_inside_unit(q)?;
    if q.signum() <= 0 {
        return Err(Error::DomainError("q-Gamma needs 0 < q < 1".into()));
    }
    let bits = ctx.bits();
    let xr = x.to_rational();
    if xr <= BigRational::zero() && xr.is_integer() {
        return Err(Error::DomainError("pole of q-Gamma".into()));
    }
    let wide = PrecisionContext::with_guard(ctx.digits, ctx.tail_guard + 10);
    let q = q.with_prec(wide.bits());
    let x = x.with_prec(wide.bits());
    let one = BigFloat::one(wide.bits());
    let qx = q.powf(&x)?;
    let num = qpoch_infinite(&q, &q, &wide)?;
    let den = qpoch_infinite(&qx, &q, &wide)?;
    if den.is_zero() {
        return Err(Error::DomainError("pole of q-Gamma".into()));
    }
    let pre = one.sub(&q).powf(&one.sub(&x))?;
    Ok(num.div(&den)?.mul(&pre).with_prec(bits))
}

/// Classical rising factorial `(a)_n`.
pub fn rising<S: QScalar>(a: &S, n: u32) -> S {
    let one = a.unit_like();
    let mut r = one.clone();
    let mut x = a.clone();
    for _ in 0..n {
        r = r.times(&x);
        x = x.plus(&one);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn qpoch_small_values() {
        let h = rat(1, 2);
        assert_eq!(qpoch(&h, &h, 3), rat(21, 64));
        assert_eq!(qpoch(&rat(3, 7), &h, 0), rat(1, 1));
    }

    #[test]
    fn brackets_and_factorials() {
        assert_eq!(qbracket(3, &rat(2, 1)), rat(7, 1));
        assert_eq!(qbracket(0, &rat(2, 1)), rat(0, 1));
        assert_eq!(qfactorial(2, &rat(1, 2)), rat(3, 2));
        assert_eq!(qbinomial(4, 2, &rat(1, 1)).unwrap(), rat(6, 1));
        assert_eq!(rising(&rat(1, 2), 3), rat(15, 8));
    }

    #[test]
    fn gaussian_binomial_polynomial() {
        let c: Vec<i64> = qbinomial_coeffs(4, 2)
            .unwrap()
            .iter()
            .map(|v| v.try_into().unwrap())
            .collect();
        assert_eq!(c, vec![1, 1, 2, 1, 1]);
        assert!(matches!(qbinomial_coeffs(2, 3), Err(Error::IndexError(_))));
        assert_eq!(qbinomial_coeffs(5, 0).unwrap().len(), 1);
    }

    #[test]
    fn infinite_product_domain() {
        let ctx = PrecisionContext::new(20);
        let q = BigFloat::parse("1.5", ctx.bits()).unwrap();
        assert!(qpoch_infinite(&BigFloat::one(ctx.bits()), &q, &ctx).is_err());
        let z = BigFloat::zero(ctx.bits());
        let h = BigFloat::parse("0.5", ctx.bits()).unwrap();
        assert_eq!(qpoch_infinite(&z, &h, &ctx).unwrap().to_decimal(5), "1.0000e0");
    }
}
