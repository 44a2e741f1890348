//! Sparse multivariate Laurent polynomials over Q in the variables (t, X, K).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const T: usize = 0;
pub const X: usize = 1;
pub const K: usize = 2;

pub const VAR_NAMES: [&str; 3] = ["t", "X", "K"];

/// Exponent triple for (t, X, K), ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Exps(pub [i32; 3]);

impl Exps {
    pub const ZERO: Exps = Exps([0, 0, 0]);

    pub fn new(t: i32, x: i32, k: i32) -> Self {
        Exps([t, x, k])
    }

    pub fn var(v: usize, e: i32) -> Self {
        let mut a = [0; 3];
        a[v] = e;
        Exps(a)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn add(&self, o: &Exps) -> Exps {
        Exps([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn sub(&self, o: &Exps) -> Exps {
        Exps([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    pub fn neg(&self) -> Exps {
        Exps([-self.0[0], -self.0[1], -self.0[2]])
    }

    pub fn scale(&self, m: i32) -> Exps {
        Exps([self.0[0] * m, self.0[1] * m, self.0[2] * m])
    }

    pub fn meet(&self, o: &Exps) -> Exps {
        Exps([self.0[0].min(o.0[0]), self.0[1].min(o.0[1]), self.0[2].min(o.0[2])])
    }

    pub fn divides(&self, o: &Exps) -> bool {
        (0..3).all(|i| self.0[i] <= o.0[i])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }
}

impl Ord for Exps {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Laurent polynomial; terms with zero coefficient are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exps, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Exps::ZERO)
    }

    pub fn monomial(c: BigRational, e: Exps) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(v: usize) -> Self {
        Self::monomial(BigRational::one(), Exps::var(v, 1))
    }

    /// `1 - c * t^e0 X^e1 K^e2`
    pub fn binomial(c: &BigRational, e: Exps) -> Self {
        let mut p = Self::one();
        p.add_term(e, -c.clone());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Exps::ZERO).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Exps::ZERO))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exps) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Exps::ZERO)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Exps, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e.0[v] != 0)
    }

    pub fn max_exp(&self, v: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.0[v]).max()
    }

    pub fn min_exp(&self, v: usize) -> Option<i32> {
        self.terms.keys().map(|e| e.0[v]).min()
    }

    /// Componentwise minimum exponent (the monomial content).
    pub fn min_exps(&self) -> Exps {
        let mut it = self.terms.keys();
        match it.next() {
            None => Exps::ZERO,
            Some(first) => it.fold(*first, |acc, e| acc.meet(e)),
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut acc: BTreeMap<Exps, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.add(e2);
                let p = c1 * c2;
                match acc.get_mut(&e) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = r.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &BigRational, m: &Exps) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (e.add(m), v * c)).collect(),
        }
    }

    /// Substitute `var -> t^s * var`, i.e. each term gains t^(s * exponent of var).
    /// With s = L this is the q-shift X -> qX or K -> qK.
    pub fn scale_var(&self, var: usize, s: i32) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut ne = *e;
            ne.0[T] += s * e.0[var];
            (ne, c.clone())
        }))
    }

    /// Substitute `var -> c * t^e` (a constant times a power of t); removes `var`.
    pub fn subs_var(&self, var: usize, c: &BigRational, t_exp: i32) -> Self {
        let mut r = Self::zero();
        for (e, v) in &self.terms {
            let k = e.0[var];
            let mut ne = *e;
            ne.0[var] = 0;
            ne.0[T] += t_exp * k;
            r.add_term(ne, v * rat_pow(c, k));
        }
        r
    }

    /// Replace exponent of `var` by a monomial in the other variables, e.g. X -> t^a K^b.
    pub fn subs_monomial(&self, var: usize, c: &BigRational, m: &Exps) -> Self {
        let mut r = Self::zero();
        for (e, v) in &self.terms {
            let k = e.0[var];
            let mut ne = *e;
            ne.0[var] = 0;
            let ne = ne.add(&m.scale(k));
            r.add_term(ne, v * rat_pow(c, k));
        }
        r
    }

    /// Coefficients with respect to one variable: exponent -> polynomial in the rest.
    pub fn coeffs_in(&self, var: usize) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne.0[var] = 0;
            out.entry(e.0[var]).or_default().add_term(ne, c.clone());
        }
        out
    }

    pub fn map_exps<F: Fn(&Exps) -> Exps>(&self, f: F) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators once all denominators are cleared by `denominator_lcm`.
    pub fn integer_content(&self) -> BigRational {
        let l = self.denominator_lcm();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let v = c.numer() * (&l / c.denom());
            g = g.gcd(&v);
        }
        BigRational::new(g, l)
    }

    /// Exact evaluation at rational point (all exponents must be admissible).
    pub fn eval_rational(&self, vals: &[BigRational; 3]) -> BigRational {
        let mut s = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for i in 0..3 {
                v *= rat_pow(&vals[i], e.0[i]);
            }
            s += v;
        }
        s
    }

    pub fn total_degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e.degree());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

pub fn rat_pow(c: &BigRational, k: i32) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    let p = num_traits::pow(c.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(e: &Exps) -> String {
    let mut parts = Vec::new();
    for (i, name) in VAR_NAMES.iter().enumerate() {
        match e.0[i] {
            0 => {}
            1 => parts.push(name.to_string()),
            k => parts.push(format!("{}^{}", name, k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    /// Canonical text: terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = fmt_monomial(e);
            let body = if mono.is_empty() {
                fmt_rational(&a)
            } else if a.is_one() {
                mono
            } else {
                format!("{}*{}", fmt_rational(&a), mono)
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                write!(f, "{}", body)?;
                first = false;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentPoly {
        LaurentPoly::var(X)
    }

    #[test]
    fn grlex_order_puts_higher_degree_last() {
        assert!(Exps::new(0, 0, 2) > Exps::new(1, 0, 0));
        assert!(Exps::new(1, 0, 0) > Exps::new(0, 1, 0));
        assert!(Exps::new(0, -1, 0) < Exps::ZERO);
    }

    #[test]
    fn arithmetic_and_display() {
        let p = x().sub(&LaurentPoly::one());
        let q = x().add(&LaurentPoly::one());
        assert_eq!(p.mul(&q).to_string(), "X^2 - 1");
        let m = LaurentPoly::monomial(rat(-3, 2), Exps::new(2, -1, 1));
        assert_eq!(m.to_string(), "-3/2*t^2*X^-1*K");
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn q_shift_of_variable() {
        // (1 - X) with X -> t^2 X gives 1 - t^2 X
        let p = LaurentPoly::binomial(&int(1), Exps::new(0, 1, 0));
        assert_eq!(p.scale_var(X, 2).to_string(), "-t^2*X + 1");
    }

    #[test]
    fn substitution_removes_variable() {
        let p = LaurentPoly::from_terms([(Exps::new(1, 2, 0), int(1)), (Exps::ZERO, int(-1))]);
        let s = p.subs_var(X, &int(2), 3);
        assert_eq!(s.to_string(), "4*t^7 - 1");
    }
}
