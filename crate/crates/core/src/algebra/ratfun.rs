//! Rational functions over Q in (t, X, K) with a canonical normal form.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Exps, LaurentPoly};
use super::zpoly::{gcd_z, ZPoly};
use crate::error::{Error, Result};

/// `num / den` in canonical form: gcd-reduced, `den` a polynomial without
/// monomial content whose graded-lex leading coefficient is 1, all negative
/// exponents carried by `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (cn, sn, a) = ZPoly::from_laurent_parts(&num);
        let (cd, sd, b) = ZPoly::from_laurent_parts(&den);
        let g = gcd_z(&a, &b);
        let a = a.exact_div(&g).expect("gcd divides numerator");
        let b = b.exact_div(&g).expect("gcd divides denominator");
        let lb = BigRational::from_integer(b.leading_coeff());
        let scale = cn / (cd * &lb);
        let num = a.to_laurent().mul_monomial(&scale, &sn.sub(&sd));
        let den = b.to_laurent().scale(&lb.recip());
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn monomial(c: BigRational, e: Exps) -> Self {
        Self::from_poly(LaurentPoly::monomial(c, e))
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn into_parts(self) -> (LaurentPoly, LaurentPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .unwrap()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(n),
            den: base.den.pow(n),
        }
        .renormalize())
    }

    fn renormalize(self) -> Self {
        Self::new(self.num, self.den).unwrap()
    }

    /// `var -> t^s var` (q-shift when s = L).
    pub fn scale_var(&self, var: usize, s: i32) -> Self {
        Self::new(self.num.scale_var(var, s), self.den.scale_var(var, s)).unwrap()
    }

    /// Substitute `var -> c * t^e`.
    pub fn subs_var(&self, var: usize, c: &BigRational, t_exp: i32) -> Result<Self> {
        Self::new(self.num.subs_var(var, c, t_exp), self.den.subs_var(var, c, t_exp))
    }

    pub fn subs_monomial(&self, var: usize, c: &BigRational, m: &Exps) -> Result<Self> {
        Self::new(self.num.subs_monomial(var, c, m), self.den.subs_monomial(var, c, m))
    }

    /// The constant value when this is a rational number.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    /// The monomial `c * t^a X^b K^c` when this is one.
    pub fn as_monomial(&self) -> Option<(BigRational, Exps)> {
        if self.den.is_one() && self.num.is_monomial() {
            let (e, c) = self.num.leading().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }
}

/// Equality of the represented functions, by cross multiplication.
pub fn rf_equal(f: &RationalFunction, g: &RationalFunction) -> bool {
    f.num().mul(g.den()) == g.num().mul(f.den())
}

/// Canonical representative of `num/den`.
pub fn rf_normalize(num: &LaurentPoly, den: &LaurentPoly) -> Result<RationalFunction> {
    RationalFunction::new(num.clone(), den.clone())
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl std::ops::Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: Self) -> Self {
        RationalFunction::mul(&self, &o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{int, T, X};

    fn var(v: usize) -> LaurentPoly {
        LaurentPoly::var(v)
    }

    #[test]
    fn common_factor_cancels() {
        let x = var(X);
        let one = LaurentPoly::one();
        let f = RationalFunction::new(x.mul(&x).sub(&one), x.sub(&one)).unwrap();
        assert_eq!(f.to_string(), "X + 1");
    }

    #[test]
    fn monomial_content_moves_to_numerator() {
        let t = var(T);
        let x = var(X);
        let num = t.mul(&t).mul(&x).sub(&t.mul(&x));
        let den = t.sub(&LaurentPoly::one());
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f.to_string(), "t*X");
        let g = RationalFunction::new(LaurentPoly::one(), x.scale(&int(2))).unwrap();
        assert_eq!(g.to_string(), "1/2*X^-1");
    }

    #[test]
    fn denominator_is_monic() {
        let x = var(X);
        let f = RationalFunction::new(LaurentPoly::one(), x.scale(&int(-3)).add(&LaurentPoly::one()))
            .unwrap();
        assert_eq!(f.den().leading_coeff(), int(1));
        assert_eq!(f.to_string(), "(-1/3)/(X - 1/3)");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let x = var(X);
        let one = LaurentPoly::one();
        let f = RationalFunction::from_poly(x.clone());
        let g = RationalFunction::from_poly(x.add(&one));
        assert!(!rf_equal(&f, &g));
        assert!(rf_equal(&f, &f));
    }
}
