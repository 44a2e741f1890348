//! Rational functions kept as products of q-linear binomials
//! `(1 - c t^i X^j K^m)^e` times a monomial. Shift quotients live here.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{fmt_rational, Exps, LaurentPoly, K, T, X};
use super::ratfun::RationalFunction;
use crate::error::{Error, Result};

/// The binomial `1 - coef * t^e0 X^e1 K^e2`, oriented so that the exponent
/// vector read in the order (K, X, t) is lexicographically positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QLinear {
    pub coef: BigRational,
    pub exps: Exps,
}

impl QLinear {
    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::binomial(&self.coef, self.exps)
    }

    pub fn k_degree(&self) -> i32 {
        self.exps.0[K]
    }
}

fn orientation_key(e: &Exps) -> (i32, i32, i32) {
    (e.0[K], e.0[X], e.0[T])
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProductForm {
    pub coef: BigRational,
    pub mono: Exps,
    pub factors: BTreeMap<QLinear, i32>,
}

impl Default for ProductForm {
    fn default() -> Self {
        Self::one()
    }
}

impl ProductForm {
    pub fn one() -> Self {
        ProductForm {
            coef: BigRational::one(),
            mono: Exps::ZERO,
            factors: BTreeMap::new(),
        }
    }

    pub fn monomial(c: BigRational, e: Exps) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::VanishingFactor("zero monomial".into()));
        }
        Ok(ProductForm {
            coef: c,
            mono: e,
            factors: BTreeMap::new(),
        })
    }

    pub fn is_one(&self) -> bool {
        self.coef.is_one() && self.mono.is_zero() && self.factors.is_empty()
    }

    /// Multiply by `(1 - c * m)^mult`.
    pub fn mul_linear(&mut self, c: &BigRational, m: Exps, mult: i32) -> Result<()> {
        if mult == 0 || c.is_zero() {
            return Ok(());
        }
        let key = orientation_key(&m);
        if key == (0, 0, 0) {
            let v = BigRational::one() - c;
            if v.is_zero() {
                return Err(Error::VanishingFactor(format!(
                    "(1 - {}) raised to {}",
                    fmt_rational(c),
                    mult
                )));
            }
            self.coef *= super::poly::rat_pow(&v, mult);
            return Ok(());
        }
        let (c, m) = if key > (0, 0, 0) {
            (c.clone(), m)
        } else {
            // 1 - c m = (-c m) (1 - c^{-1} m^{-1})
            let u = -c.clone();
            self.coef *= super::poly::rat_pow(&u, mult);
            self.mono = self.mono.add(&m.scale(mult));
            (c.recip(), m.neg())
        };
        let q = QLinear { coef: c, exps: m };
        let e = self.factors.entry(q.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.factors.remove(&q);
        }
        Ok(())
    }

    pub fn mul_monomial(&mut self, c: &BigRational, e: &Exps) {
        self.coef *= c;
        self.mono = self.mono.add(e);
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.coef *= &o.coef;
        r.mono = r.mono.add(&o.mono);
        for (q, e) in &o.factors {
            r.mul_linear(&q.coef, q.exps, *e).expect("oriented factors stay nonconstant");
        }
        r
    }

    pub fn pow(&self, n: i32) -> Self {
        ProductForm {
            coef: super::poly::rat_pow(&self.coef, n),
            mono: self.mono.scale(n),
            factors: if n == 0 {
                BTreeMap::new()
            } else {
                self.factors.iter().map(|(q, e)| (q.clone(), e * n)).collect()
            },
        }
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    /// Substitute `var -> t^s var`.
    pub fn scale_var(&self, var: usize, s: i32) -> Self {
        let shift = |e: &Exps| {
            let mut n = *e;
            n.0[T] += s * e.0[var];
            n
        };
        let mut r = ProductForm {
            coef: self.coef.clone(),
            mono: shift(&self.mono),
            factors: BTreeMap::new(),
        };
        for (q, e) in &self.factors {
            r.mul_linear(&q.coef, shift(&q.exps), *e)
                .expect("shift keeps orientation");
        }
        r
    }

    /// Substitute `var -> t^texp`, removing the variable.
    pub fn subs_tpow(&self, var: usize, texp: i32) -> Result<Self> {
        let sub = |e: &Exps| {
            let mut n = *e;
            n.0[T] += texp * e.0[var];
            n.0[var] = 0;
            n
        };
        let mut r = ProductForm {
            coef: self.coef.clone(),
            mono: sub(&self.mono),
            factors: BTreeMap::new(),
        };
        for (q, e) in &self.factors {
            r.mul_linear(&q.coef, sub(&q.exps), *e)?;
        }
        Ok(r)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.mono.0[v] != 0 || self.factors.keys().any(|q| q.exps.0[v] != 0)
    }

    /// Numerator and denominator polynomials (not gcd-reduced).
    pub fn to_parts(&self) -> (LaurentPoly, LaurentPoly) {
        let mut num = LaurentPoly::monomial(self.coef.clone(), self.mono);
        let mut den = LaurentPoly::one();
        for (q, e) in &self.factors {
            let p = q.to_poly().pow(e.unsigned_abs());
            if *e > 0 {
                num = num.mul(&p);
            } else {
                den = den.mul(&p);
            }
        }
        (num, den)
    }

    pub fn to_rf(&self) -> RationalFunction {
        let (n, d) = self.to_parts();
        RationalFunction::new(n, d).expect("product of nonzero binomials")
    }

    /// Split into (part free of `var`, part involving `var`); the monomial's
    /// `var` power goes to the second part.
    pub fn split_by(&self, var: usize) -> (ProductForm, ProductForm) {
        let mut free = ProductForm::one();
        let mut dep = ProductForm::one();
        let mut m_free = self.mono;
        m_free.0[var] = 0;
        free.coef = self.coef.clone();
        free.mono = m_free;
        dep.mono = Exps::var(var, self.mono.0[var]);
        for (q, e) in &self.factors {
            if q.exps.0[var] != 0 {
                dep.factors.insert(q.clone(), *e);
            } else {
                free.factors.insert(q.clone(), *e);
            }
        }
        (free, dep)
    }

    /// Factors with positive (numerator) and negative (denominator) multiplicity.
    pub fn numerator_factors(&self) -> impl Iterator<Item = (&QLinear, i32)> {
        self.factors.iter().filter(|(_, e)| **e > 0).map(|(q, e)| (q, *e))
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = (&QLinear, i32)> {
        self.factors.iter().filter(|(_, e)| **e < 0).map(|(q, e)| (q, -*e))
    }
}

/// Symbolic finite q-Pochhammer `(c m; t^p)_len` as a product of binomials;
/// negative lengths follow `(y;p)_{-r} = 1 / prod_{i=1..r} (1 - y p^{-i})`.
pub fn poch_product(c: &BigRational, m: Exps, base_texp: i32, len: i64) -> Result<ProductForm> {
    let mut r = ProductForm::one();
    if len >= 0 {
        for i in 0..len {
            let mut e = m;
            e.0[T] += base_texp * i as i32;
            r.mul_linear(c, e, 1)?;
        }
    } else {
        for i in 1..=(-len) {
            let mut e = m;
            e.0[T] -= base_texp * i as i32;
            r.mul_linear(c, e, -1)?;
        }
    }
    Ok(r)
}

impl fmt::Display for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            LaurentPoly::monomial(self.coef.clone(), self.mono)
        )?;
        for (q, e) in &self.factors {
            write!(f, " * ({})", q.to_poly())?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::int;
    use crate::algebra::ratfun::rf_equal;

    #[test]
    fn orientation_is_canonical() {
        let mut a = ProductForm::one();
        a.mul_linear(&int(2), Exps::new(1, -1, 0), 1).unwrap();
        // 1 - 2 t X^-1 = (-2 t X^-1)(1 - 1/2 t^-1 X)
        assert_eq!(a.mono, Exps::new(1, -1, 0));
        assert_eq!(a.coef, int(-2));
        let (q, e) = a.factors.iter().next().unwrap();
        assert_eq!(*e, 1);
        assert_eq!(q.exps, Exps::new(-1, 1, 0));
        let direct = RationalFunction::from_poly(LaurentPoly::binomial(&int(2), Exps::new(1, -1, 0)));
        assert!(rf_equal(&a.to_rf(), &direct));
    }

    #[test]
    fn constant_unit_factor_is_rejected() {
        let mut a = ProductForm::one();
        assert!(a.mul_linear(&int(1), Exps::ZERO, 1).is_err());
    }

    #[test]
    fn pochhammer_splitting_symbolic() {
        let y = Exps::new(1, 1, 0);
        let a = poch_product(&int(1), y, 2, 5).unwrap();
        let b = poch_product(&int(1), y, 2, 2).unwrap();
        let c = poch_product(&int(1), Exps::new(5, 1, 0), 2, 3).unwrap();
        assert_eq!(a, b.mul(&c));
        let neg = poch_product(&int(1), y, 2, -2).unwrap();
        let back = poch_product(&int(1), Exps::new(-3, 1, 0), 2, 2).unwrap();
        assert_eq!(neg.mul(&back), ProductForm::one());
    }
}
