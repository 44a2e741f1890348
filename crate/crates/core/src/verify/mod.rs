//! Two-sided numeric verification of identities, classical limits, fixture
//! identities and convergence tables.

mod fixtures;
mod limit;

use std::time::Instant;

use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

pub use fixtures::{jackson_check, thomae_check, FixtureReport};
pub use limit::{classical_limit_check, classical_limit_check_with, classical_series, ClassicalSeries, LimitReport};

use crate::algebra::{LaurentPoly, RationalFunction, RootScale, K, T, X};
use crate::error::{Error, Result};
use crate::identity::Identity;
use crate::special::{phi_eval, BigFloat, PhiArg, PrecisionContext, SeriesValue};

/// Default cap on the number of terms summed per side.
pub const DEFAULT_TERMS: usize = 1000;

const WINDOW: usize = 8;

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub tag: String,
    pub q: BigFloat,
    pub digits: u32,
    pub lhs: BigFloat,
    pub rhs: BigFloat,
    pub diff: BigFloat,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub lhs_tail: BigFloat,
    pub rhs_tail: BigFloat,
    /// Every term ratio past these indices has modulus below 1.
    pub lhs_burn_in: usize,
    pub rhs_burn_in: usize,
    pub pass: bool,
    pub wall_seconds: f64,
}

fn dec(x: &BigFloat, digits: u32) -> String {
    x.to_decimal(digits as usize)
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        let d = self.digits + 5;
        json!({
            "tag": self.tag,
            "q": dec(&self.q, 20),
            "digits": self.digits,
            "lhs": dec(&self.lhs, d),
            "rhs": dec(&self.rhs, d),
            "diff": dec(&self.diff, 6),
            "terms": { "lhs": self.lhs_terms, "rhs": self.rhs_terms },
            "tail": { "lhs": dec(&self.lhs_tail, 6), "rhs": dec(&self.rhs_tail, 6) },
            "burn_in": { "lhs": self.lhs_burn_in, "rhs": self.rhs_burn_in },
            "verdict": if self.pass { "pass" } else { "fail" },
            "wall_seconds": self.wall_seconds,
        })
    }
}

/// Numeric value of a polynomial in `(t, X, K)`.
pub fn eval_txk(p: &LaurentPoly, t: &BigFloat, x: &BigFloat, k: &BigFloat) -> BigFloat {
    let bits = t.prec();
    let mut s = BigFloat::zero(bits);
    for (e, c) in p.terms() {
        let term = BigFloat::from_rational(c, bits)
            .mul(&t.powi(e.0[T] as i64))
            .mul(&x.powi(e.0[X] as i64))
            .mul(&k.powi(e.0[K] as i64));
        s = s.add(&term);
    }
    s
}

pub fn eval_rf(r: &RationalFunction, t: &BigFloat, x: &BigFloat, k: &BigFloat) -> Result<BigFloat> {
    let d = eval_txk(r.den(), t, x, k);
    if d.is_zero() {
        return Err(Error::DomainError("rational function has a pole".into()));
    }
    eval_txk(r.num(), t, x, k).div(&d)
}

fn root(q: &BigFloat, l: RootScale) -> Result<BigFloat> {
    if l.l() == 1 {
        Ok(q.clone())
    } else {
        q.nth_root(l.l())
    }
}

/// Working context: ten extra digits over the requested budget.
fn working(ctx: &PrecisionContext) -> PrecisionContext {
    PrecisionContext::with_guard(ctx.digits + 10, ctx.tail_guard)
}

fn check_condition(id: &Identity, q: &BigFloat) -> Result<()> {
    let one = BigFloat::one(q.prec());
    if q.abs() <= one {
        return Err(Error::ConditionViolated(format!(
            "{} fails at q = {}",
            id.condition_text(),
            q.to_decimal(12)
        )));
    }
    if q.is_negative() {
        return Err(Error::DomainError("verification needs real q > 1".into()));
    }
    Ok(())
}

/// `prefactor(q) * 3phi2(...)` summed to the context budget.
pub fn lhs_value(id: &Identity, q: &BigFloat, ctx: &PrecisionContext, max_terms: usize) -> Result<SeriesValue> {
    check_condition(id, q)?;
    let bits = ctx.bits() + 32;
    let q = q.with_prec(bits);
    let t = root(&q, id.scale)?;
    let one = BigFloat::one(bits);
    let pre = eval_txk(&id.lhs.prefactor, &t, &one, &one);
    let spec = id.lhs.phi.with_base(PhiArg::Numeric(q));
    let mut v = phi_eval(&spec, max_terms, ctx)?;
    v.value = v.value.with_prec(bits).mul(&pre).with_prec(ctx.bits());
    v.tail_bound = v.tail_bound.with_prec(bits).mul(&pre.abs()).with_prec(ctx.bits());
    Ok(v)
}

/// Limit of the RHS term ratio as `X = q^n -> infinity`.
fn rhs_ratio_limit(rho: &RationalFunction, t: &BigFloat) -> Result<BigFloat> {
    let (dn, dd) = (rho.num().max_exp(X).unwrap_or(0), rho.den().max_exp(X).unwrap_or(0));
    if dn < dd {
        return Ok(BigFloat::zero(t.prec()));
    }
    if dn > dd {
        return Err(Error::Divergent("RHS term ratio grows with q^n".into()));
    }
    let one = BigFloat::one(t.prec());
    let lead = |p: &LaurentPoly, d: i32| p.coeffs_in(X).remove(&d).unwrap_or_else(LaurentPoly::zero);
    let a = eval_txk(&lead(rho.num(), dn), t, &one, &one);
    let b = eval_txk(&lead(rho.den(), dd), t, &one, &one);
    Ok(a.div(&b)?.abs())
}

/// `sum_n weight(t, q^n) * Fbar(n, 0)` summed to the context budget.
pub fn rhs_value(id: &Identity, q: &BigFloat, ctx: &PrecisionContext, max_terms: usize) -> Result<SeriesValue> {
    check_condition(id, q)?;
    let bits = ctx.bits() + 32;
    let l = id.scale;
    let q = q.with_prec(bits);
    let t = root(&q, l)?;
    let one = BigFloat::one(bits);
    let eps = ctx.epsilon().with_prec(bits);
    let rn = id.rhs.term.shift_quotients(l)?.0.subs_var(K, &BigRational::one(), 0)?;
    let w = &id.rhs.weight;
    let rho = rn.mul(&w.scale_var(X, l.li())).div(w)?;
    let limit = rhs_ratio_limit(&rho, &t)?;
    if limit >= one {
        return Err(Error::Divergent("RHS term ratio does not tend below 1".into()));
    }
    let mut fbar = one.clone();
    let mut x = one.clone();
    let mut sum = BigFloat::zero(bits);
    let mut prev: Option<BigFloat> = None;
    let mut ratios: Vec<BigFloat> = Vec::new();
    let mut burn_in = 0usize;
    let mut n = 0usize;
    loop {
        let u = eval_rf(w, &t, &x, &one)?.mul(&fbar);
        sum = sum.add(&u);
        let ua = u.abs();
        if let Some(p) = &prev {
            if !p.is_zero() {
                let r = ua.div(p)?;
                if r >= one {
                    burn_in = n;
                }
                ratios.push(r);
            }
        }
        n += 1;
        fbar = fbar.mul(&eval_rf(&rn, &t, &x, &one)?);
        x = x.mul(&q);
        if fbar.is_zero() {
            return Ok(SeriesValue {
                value: sum.with_prec(ctx.bits()),
                tail_bound: BigFloat::zero(ctx.bits()),
                terms: n,
                burn_in,
                accelerated: false,
                terminated: true,
            });
        }
        let r = match ratios.iter().rev().take(WINDOW).max() {
            Some(o) => BigFloat::max_abs(o, &limit),
            None => limit.clone(),
        };
        let tail = if r < one && ratios.len() >= WINDOW.min(2) {
            Some(ua.mul(&r).div(&one.sub(&r))?)
        } else {
            None
        };
        let scale = if sum.is_zero() { one.clone() } else { sum.abs() };
        let done = matches!(&tail, Some(tb) if *tb <= eps.mul(&scale));
        if done || n >= max_terms {
            let tail = tail.ok_or_else(|| Error::Divergent(format!("no geometric decay after {} terms", n)))?;
            return Ok(SeriesValue {
                value: sum.with_prec(ctx.bits()),
                tail_bound: tail.with_prec(ctx.bits()),
                terms: n,
                burn_in,
                accelerated: false,
                terminated: false,
            });
        }
        prev = Some(ua);
    }
}

pub fn verify_identity(id: &Identity, q: &BigFloat, ctx: &PrecisionContext) -> Result<VerificationReport> {
    verify_identity_with(id, q, ctx, DEFAULT_TERMS)
}

/// Both sides at `q` to `ctx.digits`; passes when `|lhs - rhs|` and both
/// tails are below `10^-(digits - 5)`.
pub fn verify_identity_with(
    id: &Identity,
    q: &BigFloat,
    ctx: &PrecisionContext,
    max_terms: usize,
) -> Result<VerificationReport> {
    let start = Instant::now();
    check_condition(id, q)?;
    let w = working(ctx);
    let lhs = lhs_value(id, q, &w, max_terms)?;
    let rhs = rhs_value(id, q, &w, max_terms)?;
    let diff = lhs.value.sub(&rhs.value).abs();
    let thr = ctx.tolerance(ctx.digits.saturating_sub(5)).with_prec(w.bits());
    let pass = diff < thr && lhs.tail_bound < thr && rhs.tail_bound < thr;
    Ok(VerificationReport {
        tag: id.label(),
        q: q.clone(),
        digits: ctx.digits,
        lhs: lhs.value,
        rhs: rhs.value,
        diff,
        lhs_terms: lhs.terms,
        rhs_terms: rhs.terms,
        lhs_tail: lhs.tail_bound,
        rhs_tail: rhs.tail_bound,
        lhs_burn_in: lhs.burn_in,
        rhs_burn_in: rhs.burn_in,
        pass,
        wall_seconds: start.elapsed().as_secs_f64(),
    })
}

/// One row of a convergence table: terms each side needs for `digits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub digits: u32,
    pub lhs_terms: Option<usize>,
    pub rhs_terms: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct ConvergenceTable {
    pub tag: String,
    pub q: BigFloat,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({ "digits": r.digits, "lhs_terms": r.lhs_terms, "rhs_terms": r.rhs_terms }))
            .collect();
        json!({ "tag": self.tag, "q": dec(&self.q, 20), "rows": rows })
    }
}

/// Terms needed per side for 10, 20, ... up to `target_digits` at `q`.
/// Measured only; no ordering between the sides is asserted.
pub fn convergence_report(id: &Identity, q: &BigFloat, target_digits: u32) -> Result<ConvergenceTable> {
    check_condition(id, q)?;
    let target = target_digits.max(10);
    let mut levels: Vec<u32> = (1..).map(|i| 10 * i).take_while(|d| *d < target).collect();
    levels.push(target);
    let cap = 20 * DEFAULT_TERMS;
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    let (mut lmax, mut rmax) = (0usize, 0usize);
    for d in levels {
        let ctx = PrecisionContext::with_guard(d, 1);
        let lt = lhs_value(id, q, &ctx, cap).ok().filter(|v| v.tail_bound < ctx.tolerance(d)).map(|v| v.terms);
        let rt = rhs_value(id, q, &ctx, cap).ok().filter(|v| v.tail_bound < ctx.tolerance(d)).map(|v| v.terms);
        // keep the table monotone when a lower budget stopped late
        let lt = lt.map(|v| {
            lmax = lmax.max(v);
            lmax
        });
        let rt = rt.map(|v| {
            rmax = rmax.max(v);
            rmax
        });
        rows.push(ConvergenceRow { digits: d, lhs_terms: lt, rhs_terms: rt });
    }
    Ok(ConvergenceTable { tag: id.label(), q: q.clone(), rows })
}

#[derive(Clone, Debug)]
pub struct TelescopeReport {
    pub n: i64,
    pub kbar: i64,
    pub lhs: BigFloat,
    pub rhs: BigFloat,
    pub diff: BigFloat,
    /// Largest modulus among the summed terms.
    pub scale: BigFloat,
    pub pass: bool,
}

/// The finite identity `sum_{k<kbar} (Fbar(N,k) - Fbar(0,k)) =
/// sum_{n<N} (Gbar(n,kbar) - Gbar(n,0))` at `q`, relative to the largest term.
pub fn telescoping_check(id: &Identity, n_top: i64, kbar: i64, q: &BigFloat, ctx: &PrecisionContext) -> Result<TelescopeReport> {
    let w = working(ctx);
    let bits = w.bits();
    let q = q.with_prec(bits);
    let t = root(&q, id.scale)?;
    let fbar = &id.rhs.term;
    let rbar = &id.certificate.rbar;
    let mut scale = BigFloat::zero(bits);
    let mut track = |v: &BigFloat| {
        scale = BigFloat::max_abs(&scale, v);
    };
    let mut lhs = BigFloat::zero(bits);
    for k in 0..kbar {
        let a = fbar.eval(n_top, k, &q, &w)?.with_prec(bits);
        let b = fbar.eval(0, k, &q, &w)?.with_prec(bits);
        track(&a);
        track(&b);
        lhs = lhs.add(&a.sub(&b));
    }
    let gbar = |n: i64, k: i64| -> Result<BigFloat> {
        let f = fbar.eval(n, k, &q, &w)?.with_prec(bits);
        let r = eval_rf(rbar, &t, &q.powi(n), &q.powi(k))?;
        Ok(r.mul(&f))
    };
    let mut rhs = BigFloat::zero(bits);
    for n in 0..n_top {
        let a = gbar(n, kbar)?;
        let b = gbar(n, 0)?;
        track(&a);
        track(&b);
        rhs = rhs.add(&a.sub(&b));
    }
    let diff = lhs.sub(&rhs).abs();
    let pass = diff <= ctx.tolerance(ctx.digits).with_prec(bits).mul(&scale);
    Ok(TelescopeReport { n: n_top, kbar, lhs, rhs, diff, scale, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::identity::{build_identity, catalog_lookup, Family};

    fn bf(n: i64, d: i64, ctx: &PrecisionContext) -> BigFloat {
        BigFloat::from_rational(&rat(n, d), ctx.bits())
    }

    #[test]
    fn ramanujan_analogue_at_two() {
        let ctx = PrecisionContext::new(60);
        let id = build_identity(Family::Quarter, &[rat(1, 2), rat(1, 2), rat(2, 1), rat(2, 1)]).unwrap();
        let r = verify_identity(&id, &bf(2, 1, &ctx), &ctx).unwrap();
        assert!(r.pass, "{:?}", r);
        assert!(r.diff.log10_abs() < -50.0);
        let r = verify_identity(&id, &bf(5, 4, &ctx), &ctx).unwrap();
        assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn inside_unit_disc_is_a_violation() {
        let ctx = PrecisionContext::new(30);
        let id = build_identity(Family::Quarter, &[rat(1, 2), rat(1, 2), rat(2, 1), rat(2, 1)]).unwrap();
        let e = verify_identity(&id, &bf(1, 2, &ctx), &ctx).unwrap_err();
        assert!(matches!(e, Error::ConditionViolated(_)));
    }

    #[test]
    fn telescoping_chain_holds() {
        let ctx = PrecisionContext::new(40);
        let q = bf(2, 1, &ctx);
        for tag in ["apery", "neg-quarter-2pi2-3", "neg27-15pi-8"] {
            let id = &catalog_lookup(tag).unwrap().identity;
            let r = telescoping_check(id, 8, 3, &q, &ctx).unwrap();
            assert!(r.pass, "{}: {:?}", tag, r);
        }
    }

    #[test]
    fn convergence_table_is_monotone() {
        let ctx = PrecisionContext::new(20);
        let id = &catalog_lookup("apery").unwrap().identity;
        let t = convergence_report(id, &bf(3, 2, &ctx), 40).unwrap();
        assert_eq!(t.rows.len(), 4);
        for w in t.rows.windows(2) {
            assert!(w[0].lhs_terms <= w[1].lhs_terms && w[0].rhs_terms <= w[1].rhs_terms);
        }
        assert!(t.rows.iter().all(|r| r.lhs_terms.is_some() && r.rhs_terms.is_some()));
    }
}
