//! Extraction of q-linear binomial factors `(1 - c t^i X^j)`.
//!
//! Candidate binomials come from edges of the lower Newton polygon in the
//! (X-exponent, t-exponent) plane; each candidate coefficient is a rational
//! root of the edge polynomial and is confirmed by exact division.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{Exps, LaurentPoly, T, X};
use super::product::{ProductForm, QLinear};
use super::zpoly::{poly_exact_div, ZPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct QLinearFactorization {
    /// Rational unit times monomial pulled out first.
    pub unit: (BigRational, Exps),
    /// Binomials `(1 - c t^i X^j)` with multiplicities.
    pub factors: Vec<(QLinear, u32)>,
    /// What is left; a polynomial with no binomial factor found.
    pub remainder: LaurentPoly,
}

impl QLinearFactorization {
    pub fn is_complete(&self) -> bool {
        self.remainder.is_constant()
    }

    /// Product form of the fully factored input, if the remainder is constant.
    pub fn to_product(&self) -> Option<ProductForm> {
        if !self.is_complete() {
            return None;
        }
        let mut p = ProductForm::monomial(
            self.unit.0.clone() * self.remainder.constant_term(),
            self.unit.1,
        )
        .ok()?;
        for (q, m) in &self.factors {
            p.mul_linear(&q.coef, q.exps, *m as i32).ok()?;
        }
        Some(p)
    }

    pub fn expand(&self) -> LaurentPoly {
        let mut p = self
            .remainder
            .mul_monomial(&self.unit.0, &self.unit.1);
        for (q, m) in &self.factors {
            p = p.mul(&q.to_poly().pow(*m));
        }
        p
    }
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

/// Does `(1 - c Y^d)` divide `sum_s e[s] Y^s`?  Reduce with `Y^d = 1/c`.
fn edge_divisible(e: &[BigRational], c: &BigRational, d: usize) -> bool {
    let cinv = c.recip();
    for r in 0..d {
        let mut acc = BigRational::zero();
        let mut pw = BigRational::one();
        let mut s = r;
        while s < e.len() {
            acc += &e[s] * &pw;
            pw *= &cinv;
            s += d;
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

/// Candidate binomials `(1 - c t^{d*dt} X^{d*dx})` for one edge polynomial.
fn edge_candidates(e: &[BigRational], dx: i32, dt: i32) -> Vec<(BigRational, Exps)> {
    let g = e.len() - 1;
    let mut out = Vec::new();
    let l = e.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let e0 = e[0].numer() * (&l / e[0].denom());
    let eg = e[g].numer() * (&l / e[g].denom());
    let (Some(dv), Some(du)) = (divisors(&e0), divisors(&eg)) else {
        return out;
    };
    // Coarsest binomials first, so 1 - t^2 X^2 stays whole.
    for d in (1..=g).rev() {
        if !g.is_multiple_of(d) {
            continue;
        }
        for u in &du {
            for v in &dv {
                for sign in [1, -1] {
                    let c = BigRational::new(u * sign, v.clone());
                    if edge_divisible(e, &c, d) {
                        out.push((c, Exps::new(dt * d as i32, dx * d as i32, 0)));
                    }
                }
            }
        }
    }
    out
}

/// Lower convex hull of the support in the (X, t) plane, left to right.
fn lower_hull(points: &[(i32, i32)]) -> Vec<(i32, i32)> {
    let mut hull: Vec<(i32, i32)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) as i64 * (p.1 - a.1) as i64 - (b.1 - a.1) as i64 * (p.0 - a.0) as i64;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn find_binomial(p: &LaurentPoly) -> Option<(BigRational, Exps, LaurentPoly)> {
    // X-carrying binomials: edges of the lower hull.
    let mut min_t: BTreeMap<i32, i32> = BTreeMap::new();
    for (e, _) in p.terms() {
        let v = min_t.entry(e.0[X]).or_insert(e.0[T]);
        if e.0[T] < *v {
            *v = e.0[T];
        }
    }
    let pts: Vec<(i32, i32)> = min_t.into_iter().collect();
    let hull = lower_hull(&pts);
    for w in hull.windows(2) {
        let (x0, t0) = w[0];
        let (x1, t1) = w[1];
        let g = (x1 - x0).gcd(&(t1 - t0).abs());
        let (dx, dt) = ((x1 - x0) / g, (t1 - t0) / g);
        let coeffs: Vec<BigRational> = (0..=g)
            .map(|s| p.coeff(&Exps::new(t0 + s * dt, x0 + s * dx, 0)))
            .collect();
        for (c, m) in edge_candidates(&coeffs, dx, dt) {
            let b = LaurentPoly::binomial(&c, m);
            if let Some(q) = poly_exact_div(p, &b) {
                return Some((c, m, q));
            }
        }
    }
    // Pure t binomials: factors of the t-content.
    let cs = p.coeffs_in(X);
    let mut content: Option<ZPoly> = None;
    for c in cs.values() {
        let (_, _, z) = ZPoly::from_laurent_parts(c);
        content = Some(match content {
            None => z,
            Some(g) => super::zpoly::gcd_z(&g, &z),
        });
    }
    let content = content?.to_laurent();
    let lo = content.min_exp(T)?;
    let hi = content.max_exp(T)?;
    if hi > lo {
        let coeffs: Vec<BigRational> = (lo..=hi)
            .map(|s| content.coeff(&Exps::new(s, 0, 0)))
            .collect();
        for (c, m) in edge_candidates(&coeffs, 0, 1) {
            let b = LaurentPoly::binomial(&c, m);
            if let Some(q) = poly_exact_div(p, &b) {
                return Some((c, m, q));
            }
        }
    }
    None
}

/// Factor out binomials `(1 - c t^i X^j)`; the remainder is returned verbatim
/// once no further binomial divides it.
pub fn factor_q_linear(p: &LaurentPoly) -> QLinearFactorization {
    if p.is_zero() {
        return QLinearFactorization {
            unit: (BigRational::one(), Exps::ZERO),
            factors: Vec::new(),
            remainder: LaurentPoly::zero(),
        };
    }
    let (c, shift, z) = ZPoly::from_laurent_parts(p);
    let mut work = z.to_laurent();
    let mut unit = (c, shift);
    let mut found: BTreeMap<QLinear, u32> = BTreeMap::new();
    if !work.uses_var(super::poly::K) {
        while !work.is_constant() {
            let Some((c, m, q)) = find_binomial(&work) else {
                break;
            };
            // Orient as in ProductForm so equal binomials merge.
            let mut pf = ProductForm::one();
            pf.mul_linear(&c, m, 1).expect("nonconstant binomial");
            unit.0 *= &pf.coef;
            unit.1 = unit.1.add(&pf.mono);
            let (ql, _) = pf.factors.into_iter().next().unwrap();
            *found.entry(ql).or_insert(0) += 1;
            // Keep the quotient as a polynomial without monomial content.
            let (qc, qs, qz) = ZPoly::from_laurent_parts(&q);
            unit.0 *= qc;
            unit.1 = unit.1.add(&qs);
            work = qz.to_laurent();
        }
    }
    QLinearFactorization {
        unit,
        factors: found.into_iter().collect(),
        remainder: work,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::int;

    fn bin(c: i64, t: i32, x: i32) -> LaurentPoly {
        LaurentPoly::binomial(&int(c), Exps::new(t, x, 0))
    }

    #[test]
    fn recovers_two_linear_factors() {
        let p = bin(1, 1, 1).mul(&bin(1, 3, 1));
        let f = factor_q_linear(&p);
        assert!(f.is_complete());
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn keeps_quadratic_binomial_whole() {
        let p = bin(1, 2, 2);
        let f = factor_q_linear(&p);
        assert_eq!(f.expand(), p);
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].0.exps, Exps::new(2, 2, 0));
    }

    #[test]
    fn remainder_returned_verbatim() {
        // 1 + X + X^2 has no rational binomial factor
        let p = LaurentPoly::from_terms([
            (Exps::ZERO, int(1)),
            (Exps::new(0, 1, 0), int(1)),
            (Exps::new(0, 2, 0), int(1)),
        ]);
        let g = p.mul(&bin(-2, 1, 1)).mul(&bin(1, 4, 0));
        let f = factor_q_linear(&g);
        assert!(!f.is_complete());
        assert_eq!(f.remainder, p);
        assert_eq!(f.expand(), g);
    }

    #[test]
    fn negative_t_exponent_binomial() {
        // t^3 - 5 X = t^3 (1 - 5 t^-3 X)
        let p = LaurentPoly::from_terms([(Exps::new(3, 0, 0), int(1)), (Exps::new(0, 1, 0), int(-5))]);
        let f = factor_q_linear(&p);
        assert!(f.is_complete());
        assert_eq!(f.expand(), p);
    }
}
