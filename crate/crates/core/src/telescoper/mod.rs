//! First-order q-Zeilberger recurrences, their q-WZ normalization and exact
//! certification.
//!
//! A recurrence `p1(X) F(n+1,k) - p2(X) F(n,k) = G(n,k+1) - G(n,k)` with
//! `G = R(X,K) F` is found by parameterized q-Gosper. The normalized term
//! `Fbar(n,k) = prod_{i=j}^{n-1} p1(q^i)/p2(q^i) * F(n,k)` then satisfies the
//! q-WZ equation `Fbar(n+1,k) - Fbar(n,k) = Gbar(n,k+1) - Gbar(n,k)` with
//! `Gbar = Rbar Fbar`.

mod gosper;
mod linsolve;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use gosper::{gp_form, q_gosper, GosperPetkovsek};

use crate::algebra::{
    factor_q_linear, poly_exact_div, poly_gcd, Exps, LaurentPoly, ProductForm, RationalFunction, RootScale, K, T, X,
};
use crate::error::{Error, Result};
use crate::qterm::{Direction, PochFactor, QProperTerm};
use crate::special::{BigFloat, PrecisionContext};

/// `p1(X) F(n+1,k) - p2(X) F(n,k) = G(n,k+1) - G(n,k)`, `G = R F`.
#[derive(Clone, Debug, PartialEq)]
pub struct Recurrence {
    pub p1: LaurentPoly,
    pub p2: LaurentPoly,
    pub r: RationalFunction,
    pub scale: RootScale,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeilbergerConfig {
    /// Largest accepted X-degree of `p1` and `p2`.
    pub degree_cap: i32,
    /// Largest accepted span of the Gosper polynomial in K.
    pub span_cap: i32,
}

impl Default for ZeilbergerConfig {
    fn default() -> Self {
        ZeilbergerConfig { degree_cap: 24, span_cap: 60 }
    }
}

/// The normalized term, in closed form when `p1` and `p2` split into
/// q-linear binomials, otherwise as a running product over `F`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fbar {
    Closed { term: QProperTerm },
    Closure { base: QProperTerm, p1: String, p2: String, j: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QWZPair {
    pub fbar: Fbar,
    pub rbar: RationalFunction,
    pub origin: Recurrence,
    pub j: u32,
    pub scale: RootScale,
}

struct Pieces {
    kappa: RationalFunction,
    u: LaurentPoly,
    v: LaurentPoly,
    gp: GosperPetkovsek,
    rn: RationalFunction,
    rk: RationalFunction,
}

fn prepare(f: &QProperTerm, l: RootScale) -> Result<Pieces> {
    let rn = f.shift_quotient_product(Direction::N, l)?;
    let rk = f.shift_quotient_product(Direction::K, l)?;
    let (free, dep) = rn.split_by(K);
    let s = dep.mono.0[K];
    let mut upf = ProductForm::one();
    let mut vpf = ProductForm::one();
    for (q, e) in dep.numerator_factors() {
        upf.mul_linear(&q.coef, q.exps, e)?;
    }
    for (q, e) in dep.denominator_factors() {
        vpf.mul_linear(&q.coef, q.exps, e)?;
    }
    upf.mul_monomial(&BigRational::one(), &Exps::var(K, s.max(0)));
    vpf.mul_monomial(&BigRational::one(), &Exps::var(K, (-s).max(0)));
    let u = upf.to_parts().0;
    let v = vpf.to_parts().0;
    let rho = rk.mul(&vpf).div(&vpf.scale_var(K, l.li()));
    let gp = gp_form(&rho, &LaurentPoly::one(), &LaurentPoly::one(), l);
    Ok(Pieces {
        kappa: free.to_rf(),
        u,
        v,
        gp,
        rn: rn.to_rf(),
        rk: rk.to_rf(),
    })
}

fn x_degree(p: &LaurentPoly) -> i32 {
    match (p.max_exp(X), p.min_exp(X)) {
        (Some(a), Some(b)) => a - b,
        _ => 0,
    }
}

/// Scale `(p1, p2)` to coprime polynomials with integer coefficients, no
/// monomial content and positive leading coefficient of `p2`; returns the
/// polynomials and the scalar `lambda` with `p_i = lambda * input_i`.
fn normalize_pair(e1: &RationalFunction, e2: &RationalFunction) -> Result<(LaurentPoly, LaurentPoly, RationalFunction)> {
    let (n1, d1) = (e1.num().clone(), e1.den().clone());
    let (n2, d2) = (e2.num().clone(), e2.den().clone());
    let g = poly_gcd(&d1, &d2);
    let l1 = poly_exact_div(&d2, &g).expect("gcd divides");
    let l2 = poly_exact_div(&d1, &g).expect("gcd divides");
    let mut p1 = n1.mul(&l1);
    let mut p2 = n2.mul(&l2);
    let g = if p1.is_zero() {
        p2.clone()
    } else if p2.is_zero() {
        p1.clone()
    } else {
        poly_gcd(&p1, &p2)
    };
    if !g.is_constant() {
        p1 = poly_exact_div(&p1, &g).expect("gcd divides");
        p2 = poly_exact_div(&p2, &g).expect("gcd divides");
    }
    let m = if p1.is_zero() {
        p2.min_exps()
    } else if p2.is_zero() {
        p1.min_exps()
    } else {
        p1.min_exps().meet(&p2.min_exps())
    };
    let neg = m.neg();
    p1 = p1.mul_monomial(&BigRational::one(), &neg);
    p2 = p2.mul_monomial(&BigRational::one(), &neg);
    let den = p1.denominator_lcm().lcm(&p2.denominator_lcm());
    let cnt = p1.scale(&BigRational::from_integer(den.clone())).integer_content();
    let cnt2 = p2.scale(&BigRational::from_integer(den.clone())).integer_content();
    let num = if cnt.is_zero() {
        cnt2.to_integer()
    } else if cnt2.is_zero() {
        cnt.to_integer()
    } else {
        cnt.to_integer().gcd(&cnt2.to_integer())
    };
    let mut c = BigRational::new(den, num);
    let lead = if p2.is_zero() { p1.leading_coeff() } else { p2.leading_coeff() };
    if (lead * &c).is_negative() {
        c = -c;
    }
    p1 = p1.scale(&c);
    p2 = p2.scale(&c);
    let lambda = if !e2.is_zero() {
        RationalFunction::from_poly(p2.clone()).div(e2)?
    } else {
        RationalFunction::from_poly(p1.clone()).div(e1)?
    };
    Ok((p1, p2, lambda))
}

/// First-order recurrence in `n` for `sum_k F(n, k)`.
pub fn zeilberger_first_order(f: &QProperTerm, cfg: &ZeilbergerConfig) -> Result<Recurrence> {
    let l = f.root_scale();
    let pc = prepare(f, l)?;
    let cols = [pc.u.clone(), pc.v.neg()];
    let sol = gosper::solve(&pc.gp, &cols, l, cfg.span_cap)?
        .ok_or_else(|| Error::NoFirstOrder("parameterized Gosper equation has no solution".into()))?;
    let e1 = sol.eta[0].div(&pc.kappa)?;
    let e2 = sol.eta[1].clone();
    let (p1, p2, lambda) = normalize_pair(&e1, &e2)?;
    if p1.is_zero() || p2.is_zero() {
        return Err(Error::NoFirstOrder("recurrence degenerates to a telescoping term".into()));
    }
    let deg = x_degree(&p1).max(x_degree(&p2));
    if deg > cfg.degree_cap {
        return Err(Error::NoFirstOrder(format!("X-degree {} exceeds the cap {}", deg, cfg.degree_cap)));
    }
    let r = sol.s.div(&RationalFunction::from_poly(pc.v.clone()))?.mul(&lambda);
    let rec = Recurrence { p1, p2, r, scale: l };
    let res = recurrence_residual(&rec, &pc.rn, &pc.rk);
    if !res.is_zero() {
        return Err(Error::CertificationFailed(format!("recurrence residual {}", res)));
    }
    Ok(rec)
}

/// `p1 r_n - p2 - (R(X,qK) r_k - R(X,K))`.
fn recurrence_residual(rec: &Recurrence, rn: &RationalFunction, rk: &RationalFunction) -> RationalFunction {
    let l = rec.scale.li();
    let p1 = RationalFunction::from_poly(rec.p1.clone());
    let p2 = RationalFunction::from_poly(rec.p2.clone());
    p1.mul(rn)
        .sub(&p2)
        .sub(&rec.r.scale_var(K, l).mul(rk))
        .add(&rec.r)
}

/// Smallest `j >= 0` such that `p2(q^i) != 0` for every `i >= j`.
pub fn first_regular_index(p2: &LaurentPoly, l: RootScale) -> u32 {
    let f = factor_q_linear(p2);
    let mut j = 0u32;
    for (q, _) in &f.factors {
        let (e, xe) = (q.exps.0[T], q.exps.0[X]);
        if q.coef.is_one() && xe > 0 && (-e) % (l.li() * xe) == 0 && -e >= 0 {
            j = j.max((-e / (l.li() * xe)) as u32 + 1);
        }
    }
    if !f.remainder.is_constant() {
        for i in 0..256u32 {
            let v = f.remainder.subs_var(X, &BigRational::one(), l.li() * i as i32);
            if v.is_zero() {
                j = j.max(i + 1);
            }
        }
    }
    j
}

/// Fold `prod_{i=j}^{n-1} (unit * prod binomials)^sign` into `term`.
fn absorb(term: &mut QProperTerm, p: &LaurentPoly, sign: i32, j: u32, l: RootScale) -> bool {
    let f = factor_q_linear(p);
    if !f.is_complete() {
        return false;
    }
    let lr = BigRational::from_integer(BigInt::from(l.l()));
    let jr = BigRational::from_integer(BigInt::from(j));
    let two = BigRational::from_integer(BigInt::from(2));
    let sr = BigRational::from_integer(BigInt::from(sign));
    let c = &f.unit.0 * f.remainder.constant_term();
    let (e, xe) = (
        BigRational::from_integer(BigInt::from(f.unit.1 .0[T])) / &lr,
        BigRational::from_integer(BigInt::from(f.unit.1 .0[X])),
    );
    // prod_{i=j}^{n-1} c q^{e + xe i}
    let cs = crate::algebra::rat_pow(&c, sign);
    term.rate_n *= &cs;
    term.scale *= crate::algebra::rat_pow(&cs, -(j as i32));
    term.qpower.nn += &sr * &xe / &two;
    term.qpower.n += &sr * (&e - &xe / &two);
    term.qpower.c -= &sr * (&e * &jr + &xe * (&jr * &jr - &jr) / &two);
    for (q, m) in &f.factors {
        let te = BigRational::from_integer(BigInt::from(q.exps.0[T])) / &lr;
        let s = BigRational::from_integer(BigInt::from(q.exps.0[X]));
        term.factors.push(PochFactor {
            coef: q.coef.clone(),
            u: BigRational::zero(),
            v: BigRational::zero(),
            w: te + &s * &jr,
            s,
            mu: 1,
            nu: 0,
            lambda: -(j as i64),
            power: sign * *m as i32,
        });
    }
    true
}

impl Fbar {
    pub fn new(f: &QProperTerm, rec: &Recurrence, j: u32) -> Fbar {
        let mut t = f.clone();
        if absorb(&mut t, &rec.p1, 1, j, rec.scale) && absorb(&mut t, &rec.p2, -1, j, rec.scale) {
            Fbar::Closed { term: t }
        } else {
            Fbar::Closure {
                base: f.clone(),
                p1: rec.p1.to_string(),
                p2: rec.p2.to_string(),
                j,
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Fbar::Closed { .. })
    }

    pub fn base(&self) -> &QProperTerm {
        match self {
            Fbar::Closed { term } => term,
            Fbar::Closure { base, .. } => base,
        }
    }

    fn closure_polys(&self) -> Result<Option<(LaurentPoly, LaurentPoly, u32)>> {
        match self {
            Fbar::Closed { .. } => Ok(None),
            Fbar::Closure { p1, p2, j, .. } => Ok(Some((
                crate::algebra::parse_poly(p1)?,
                crate::algebra::parse_poly(p2)?,
                *j,
            ))),
        }
    }

    /// Shift quotients `(n, k)` as rational functions under scale `l`.
    pub fn shift_quotients(&self, l: RootScale) -> Result<(RationalFunction, RationalFunction)> {
        let b = self.base();
        let rn = b.shift_quotient_n(l)?;
        let rk = b.shift_quotient_k(l)?;
        match self.closure_polys()? {
            None => Ok((rn, rk)),
            Some((p1, p2, _)) => {
                let w = RationalFunction::new(p1, p2)?;
                Ok((rn.mul(&w), rk))
            }
        }
    }

    /// Numeric value at `(n, k)`, `n >= j`.
    pub fn eval(&self, n: i64, k: i64, q: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat> {
        let b = self.base();
        let v = b.term_eval(n, k, q, ctx)?;
        let Some((p1, p2, j)) = self.closure_polys()? else {
            return Ok(v);
        };
        let l = b.root_scale();
        let bits = ctx.bits() + 16;
        let t = if l.l() == 1 { q.with_prec(bits) } else { q.with_prec(bits).nth_root(l.l())? };
        let qq = q.with_prec(bits);
        let mut acc = v.with_prec(bits);
        let mut x = qq.powi(j as i64);
        for _ in (j as i64)..n {
            let a = eval_tx(&p1, &t, &x)?;
            let d = eval_tx(&p2, &t, &x)?;
            acc = acc.mul(&a).div(&d)?;
            x = x.mul(&qq);
        }
        Ok(acc.with_prec(ctx.bits()))
    }
}

/// Numeric value of a polynomial in `(t, X)`.
pub fn eval_tx(p: &LaurentPoly, t: &BigFloat, x: &BigFloat) -> Result<BigFloat> {
    let bits = t.prec();
    let mut s = BigFloat::zero(bits);
    for (e, c) in p.terms() {
        let term = BigFloat::from_rational(c, bits)
            .mul(&t.powi(e.0[T] as i64))
            .mul(&x.powi(e.0[X] as i64));
        s = s.add(&term);
    }
    Ok(s)
}

/// q-WZ normalization of a first-order recurrence for `F`.
pub fn ekhad_normalize(f: &QProperTerm, rec: &Recurrence, cfg: &ZeilbergerConfig) -> Result<QWZPair> {
    let l = rec.scale;
    let j = first_regular_index(&rec.p2, l);
    let fbar = Fbar::new(f, rec, j);
    let pc = prepare(f, l)?;
    // fresh certificate for Fbar: Gosper on (kappa p1/p2 U - V) F / V
    let kb = pc.kappa.mul(&RationalFunction::new(rec.p1.clone(), rec.p2.clone())?);
    let col = kb.num().mul(&pc.u).sub(&kb.den().mul(&pc.v));
    let fresh = gosper::solve(&pc.gp, &[col], l, cfg.span_cap)?.and_then(|s| {
        let d = RationalFunction::from_poly(pc.v.mul(kb.den()));
        s.s.div(&s.eta[0]).ok()?.div(&d).ok()
    });
    let from_rec = rec.r.div(&RationalFunction::from_poly(rec.p2.clone()))?;
    let rbar = match fresh {
        Some(r) => r,
        None => from_rec,
    };
    let pair = QWZPair { fbar, rbar, origin: rec.clone(), j, scale: l };
    let res = certify_wz(&pair)?;
    if !res.is_zero() {
        return Err(Error::CertificationFailed(format!("WZ residual {}", res)));
    }
    Ok(pair)
}

/// `r_n - 1 - Rbar(X,qK) r_k + Rbar(X,K)` for the normalized term; zero
/// exactly when the pair satisfies the q-WZ equation.
pub fn certify_wz(pair: &QWZPair) -> Result<RationalFunction> {
    let l = pair.scale;
    let (rn, rk) = pair.fbar.shift_quotients(l)?;
    Ok(rn
        .sub(&RationalFunction::one())
        .sub(&pair.rbar.scale_var(K, l.li()).mul(&rk))
        .add(&pair.rbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn quarter(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> QProperTerm {
        let mut f = QProperTerm::one();
        f.qpower.k = rat(1, 1);
        f.with_factor(PochFactor::simple(0, 0, a, (0, 1, 0), 1))
            .with_factor(PochFactor::simple(0, 0, b, (0, 1, 0), 1))
            .with_factor(PochFactor::simple(1, 0, c, (0, 1, 0), -1))
            .with_factor(PochFactor::simple(1, 0, d, (0, 1, 0), -1))
    }

    #[test]
    fn n_free_term_has_trivial_recurrence() {
        let f = QProperTerm::one().with_factor(PochFactor::simple(0, 0, rat(1, 2), (0, 1, 0), 1));
        let rec = zeilberger_first_order(&f, &ZeilbergerConfig::default()).unwrap();
        assert!(rec.p1.is_one() && rec.p2.is_one() && rec.r.is_zero());
    }

    #[test]
    fn quarter_recurrence_certifies() {
        let f = quarter(rat(1, 2), rat(1, 2), rat(2, 1), rat(2, 1));
        let cfg = ZeilbergerConfig::default();
        let rec = zeilberger_first_order(&f, &cfg).unwrap();
        let pair = ekhad_normalize(&f, &rec, &cfg).unwrap();
        assert!(certify_wz(&pair).unwrap().is_zero());
        assert_eq!(pair.j, 0);
        let mut bad = pair.clone();
        bad.rbar = bad.rbar.add(&RationalFunction::one());
        assert!(!certify_wz(&bad).unwrap().is_zero());
    }
}
