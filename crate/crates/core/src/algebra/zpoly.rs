//! Integer polynomials with nonnegative exponents: the workhorse behind
//! exact division and multivariate gcd.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Exps, LaurentPoly};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub(crate) struct ZPoly {
    terms: BTreeMap<Exps, BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(Exps::ZERO, c);
        p
    }

    fn add_term(&mut self, e: Exps, c: BigInt) {
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

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    fn leading(&self) -> Option<(&Exps, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn vars_used(&self) -> Vec<usize> {
        (0..3).filter(|&v| self.terms.keys().any(|e| e.0[v] != 0)).collect()
    }

    fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e.0[v]).max().unwrap_or(0)
    }

    fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    fn div_scalar(&self, c: &BigInt) -> Self {
        ZPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v / c)).collect(),
        }
    }

    /// Divide out the integer content and make the leading coefficient positive.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    fn normalize_sign(self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.scale(&BigInt::from(-1)),
            _ => self,
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
        let mut acc: BTreeMap<Exps, BigInt> = BTreeMap::new();
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
        ZPoly { terms: acc }
    }

    fn mul_term(&self, m: &Exps, c: &BigInt) -> Self {
        ZPoly {
            terms: self.terms.iter().map(|(e, v)| (e.add(m), v * c)).collect(),
        }
    }

    fn eval_var(&self, v: usize, x: &BigInt) -> Self {
        let mut powers: Vec<BigInt> = vec![BigInt::one()];
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            let k = e.0[v] as usize;
            while powers.len() <= k {
                let last = powers.last().unwrap() * x;
                powers.push(last);
            }
            let mut ne = *e;
            ne.0[v] = 0;
            r.add_term(ne, c * &powers[k]);
        }
        r
    }

    fn coeffs_in(&self, v: usize) -> BTreeMap<i32, ZPoly> {
        let mut out: BTreeMap<i32, ZPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = *e;
            ne.0[v] = 0;
            out.entry(e.0[v]).or_default().add_term(ne, c.clone());
        }
        out
    }

    fn from_coeffs_in(v: usize, cs: &BTreeMap<i32, ZPoly>) -> Self {
        let mut r = Self::zero();
        for (k, p) in cs {
            for (e, c) in &p.terms {
                let mut ne = *e;
                ne.0[v] += *k;
                r.add_term(ne, c.clone());
            }
        }
        r
    }

    /// Exact quotient `self / d`, or None if `d` does not divide `self`.
    pub fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        let (eb, cb) = d.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        for v in 0..3 {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (eb, cb) = (*eb, cb.clone());
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((er, cr)) = r.leading() {
            if !eb.divides(er) {
                return None;
            }
            let (qc, rem) = cr.div_rem(&cb);
            if !rem.is_zero() {
                return None;
            }
            let m = er.sub(&eb);
            for (e, c) in &d.terms {
                r.add_term(e.add(&m), -(c * &qc));
            }
            q.add_term(m, qc);
        }
        Some(q)
    }

    pub fn from_laurent_parts(p: &LaurentPoly) -> (BigRational, Exps, ZPoly) {
        let shift = p.min_exps();
        let l = p.denominator_lcm();
        let mut z = ZPoly::zero();
        for (e, c) in p.terms() {
            z.add_term(e.sub(&shift), c.numer() * (&l / c.denom()));
        }
        let mut cont = z.content();
        if z.leading().is_some_and(|(_, c)| c.is_negative()) {
            cont = -cont;
        }
        let z = z.div_scalar(&cont);
        (BigRational::new(cont, l), shift, z)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (*e, BigRational::from_integer(c.clone()))),
        )
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
    }
}

fn union_vars(a: &ZPoly, b: &ZPoly) -> Vec<usize> {
    let mut v = a.vars_used();
    for x in b.vars_used() {
        if !v.contains(&x) {
            v.push(x);
        }
    }
    v.sort_unstable();
    v
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn xi_adic_lift(gam: &ZPoly, v: usize, xi: &BigInt) -> ZPoly {
    let mut g = ZPoly::zero();
    let mut rest = gam.clone();
    let mut i = 0;
    while !rest.is_zero() {
        let e = ZPoly {
            terms: rest
                .terms
                .iter()
                .map(|(k, c)| (*k, symmetric_mod(c, xi)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        };
        g = g.add(&e.mul_term(&Exps::var(v, i), &BigInt::one()));
        rest = rest.sub(&e).div_scalar(xi);
        i += 1;
    }
    g
}

/// Heuristic gcd: evaluate, take the gcd of the images recursively, lift
/// xi-adically and confirm by trial division.
fn gcd_heuristic(a: &ZPoly, b: &ZPoly, depth: usize) -> Option<ZPoly> {
    let vars = union_vars(a, b);
    let ca = a.content();
    let cb = b.content();
    let g0 = ca.gcd(&cb);
    if vars.is_empty() {
        return Some(ZPoly::constant(g0));
    }
    let a = a.div_scalar(&ca);
    let b = b.div_scalar(&cb);
    let v = *vars.last().unwrap();
    let mut xi: BigInt = a.norm().min(b.norm()) * 2 + 29;
    for _ in 0..6 {
        let av = a.eval_var(v, &xi);
        let bv = b.eval_var(v, &xi);
        if !av.is_zero() && !bv.is_zero() && depth < 8 {
            if let Some(gam) = gcd_heuristic(&av, &bv, depth + 1) {
                let g = xi_adic_lift(&gam, v, &xi).primitive();
                if !g.is_zero() && a.exact_div(&g).is_some() && b.exact_div(&g).is_some() {
                    return Some(g.scale(&g0));
                }
            }
        }
        xi = xi * 73794 / 27011 + 1;
    }
    None
}

fn content_in(p: &ZPoly, v: usize) -> ZPoly {
    let mut g = ZPoly::zero();
    for c in p.coeffs_in(v).values() {
        g = if g.is_zero() { c.clone().normalize_sign() } else { gcd_z(&g, c) };
    }
    g
}

fn pseudo_rem(a: &ZPoly, b: &ZPoly, v: usize) -> ZPoly {
    let db = b.degree_in(v);
    let bc = b.coeffs_in(v);
    let lb = bc.get(&db).cloned().unwrap_or_default();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coeffs_in(v).remove(&dr).unwrap();
        let mut shifted: BTreeMap<i32, ZPoly> = BTreeMap::new();
        shifted.insert(dr - db, lr);
        let t = ZPoly::from_coeffs_in(v, &shifted);
        r = r.mul(&lb).sub(&t.mul(b));
    }
    r
}

fn primitive_in(p: &ZPoly, v: usize) -> ZPoly {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").normalize_sign()
}

/// Primitive polynomial remainder sequence; slow but unconditional.
fn gcd_prs(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let vars = union_vars(a, b);
    if vars.is_empty() {
        return ZPoly::constant(a.content().gcd(&b.content()));
    }
    let v = *vars.last().unwrap();
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_z(&ca, &cb);
    let mut pa = a.exact_div(&ca).unwrap();
    let mut pb = b.exact_div(&cb).unwrap();
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    while !pb.is_zero() {
        let r = pseudo_rem(&pa, &pb, v);
        pa = pb;
        pb = if r.is_zero() { ZPoly::zero() } else { primitive_in(&r, v) };
    }
    let g = if pa.degree_in(v) == 0 {
        ZPoly::constant(BigInt::one())
    } else {
        primitive_in(&pa, v)
    };
    c.mul(&g).normalize_sign()
}

/// Gcd with positive leading coefficient; gcd(0, 0) = 0.
pub(crate) fn gcd_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a.is_constant() || b.is_constant() {
        return ZPoly::constant(a.content().gcd(&b.content()));
    }
    match gcd_heuristic(a, b, 0) {
        Some(g) => g.normalize_sign(),
        None => gcd_prs(a, b),
    }
}

/// Primitive gcd of two Laurent polynomials, ignoring monomial and
/// rational content.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (_, _, za) = ZPoly::from_laurent_parts(a);
    let (_, _, zb) = ZPoly::from_laurent_parts(b);
    gcd_z(&za, &zb).primitive().to_laurent()
}

/// Exact division of Laurent polynomials, None when not exact.
pub fn poly_exact_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let (ca, sa, za) = ZPoly::from_laurent_parts(a);
    let (cb, sb, zb) = ZPoly::from_laurent_parts(b);
    let q = za.exact_div(&zb)?;
    Some(q.to_laurent().mul_monomial(&(ca / cb), &sa.sub(&sb)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{int, K, T, X};

    fn p(terms: &[((i32, i32, i32), i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            terms
                .iter()
                .map(|&((a, b, c), v)| (Exps::new(a, b, c), int(v))),
        )
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let f = p(&[((1, 1, 0), 1), ((0, 0, 0), -1)]); // tX - 1
        let g = p(&[((0, 2, 1), 3), ((2, 0, 0), 1), ((0, 0, 0), 5)]);
        let h = p(&[((0, 0, 1), 1), ((1, 0, 0), -2)]);
        let a = f.mul(&g);
        let b = f.mul(&h).mul(&f);
        let gg = poly_gcd(&a, &b);
        assert_eq!(gg, f);
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let f = p(&[((3, 1, 0), 2), ((0, 1, 1), -1), ((0, 0, 0), 7)]);
        let g = p(&[((1, 0, 2), 1), ((0, 0, 0), -4)]);
        let h = p(&[((0, 3, 0), 1), ((1, 0, 0), 1)]);
        let a = f.mul(&g);
        let b = f.mul(&h);
        let (_, _, za) = ZPoly::from_laurent_parts(&a);
        let (_, _, zb) = ZPoly::from_laurent_parts(&b);
        let g1 = gcd_z(&za, &zb).primitive();
        let g2 = gcd_prs(&za, &zb).primitive();
        assert_eq!(g1, g2);
        assert_eq!(g1.to_laurent(), f);
    }

    #[test]
    fn exact_division_detects_non_divisibility() {
        let a = p(&[((0, 2, 0), 1), ((0, 0, 0), -1)]);
        let b = p(&[((0, 1, 0), 1), ((0, 0, 0), -1)]);
        let q = poly_exact_div(&a, &b).unwrap();
        assert_eq!(q.to_string(), "X + 1");
        let c = p(&[((0, 1, 0), 1), ((0, 0, 0), -2)]);
        assert!(poly_exact_div(&a, &c).is_none());
        let _ = (T, X, K);
    }
}
