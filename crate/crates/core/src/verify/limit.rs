//! The `q -> 1` limit of the RHS as a classical series, matched against the
//! catalog display and summed against the classical target.
//!
//! With `t = e^(eps/L)` and `X = e^(n eps)` a polynomial `P(t, X)` behaves as
//! `eps^m / m! * P_m(n)` for its lowest nonvanishing order `m`, so the weight
//! tends to a rational function of `n` times a power of `eps` that does not
//! depend on `n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{fmt_rational, parse_poly, LaurentPoly, RootScale, T, X};
use crate::error::{Error, Result};
use crate::identity::{CatalogEntry, Identity};
use crate::qterm::Direction;
use crate::special::{BigFloat, HyperSeriesSpec, PrecisionContext};
use crate::telescoper::Fbar;

/// Polynomial in `n`, constant coefficient first.
type NPoly = Vec<BigRational>;

fn trim(mut p: NPoly) -> NPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn pmul(p: &[BigRational], q: &[BigRational]) -> NPoly {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

fn padd(p: &[BigRational], q: &[BigRational]) -> NPoly {
    let mut out = vec![BigRational::zero(); p.len().max(q.len())];
    for (i, a) in p.iter().enumerate() {
        out[i] += a;
    }
    for (i, b) in q.iter().enumerate() {
        out[i] += b;
    }
    trim(out)
}

fn psub(p: &[BigRational], q: &[BigRational]) -> NPoly {
    let mut out = vec![BigRational::zero(); p.len().max(q.len())];
    for (i, a) in p.iter().enumerate() {
        out[i] += a;
    }
    for (i, b) in q.iter().enumerate() {
        out[i] -= b;
    }
    trim(out)
}

fn peval(p: &[BigRational], n: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * n + c)
}

/// `p(n + s)`.
fn pshift(p: &[BigRational], s: i64) -> NPoly {
    let lin = vec![BigRational::from_integer(s.into()), BigRational::one()];
    let mut out: NPoly = Vec::new();
    let mut pw: NPoly = vec![BigRational::one()];
    for c in p {
        let term: NPoly = pw.iter().map(|x| x * c).collect();
        out = padd(&out, &term);
        pw = pmul(&pw, &lin);
    }
    trim(out)
}

fn factorial(m: u32) -> BigRational {
    BigRational::from_integer((1..=m).fold(BigInt::one(), |a, i| a * BigInt::from(i)))
}

/// Lowest order `m` and coefficient polynomial `P_m(n)` of `P(t, X)`.
fn eps_leading(p: &LaurentPoly, l: RootScale) -> Result<(u32, NPoly)> {
    if p.is_zero() {
        return Err(Error::DomainError("zero polynomial has no classical limit".into()));
    }
    let lr = BigRational::from_integer(l.l().into());
    let forms: Vec<(NPoly, BigRational)> = p
        .terms()
        .map(|(e, c)| {
            let f = vec![BigRational::from_integer(e.0[T].into()) / &lr, BigRational::from_integer(e.0[X].into())];
            (f, c.clone())
        })
        .collect();
    let mut pows: Vec<NPoly> = vec![vec![BigRational::one()]; forms.len()];
    for m in 0..=(forms.len() as u32 + 1) {
        let mut acc: NPoly = Vec::new();
        for ((_, c), pw) in forms.iter().zip(pows.iter()) {
            let term: NPoly = pw.iter().map(|x| x * c).collect();
            acc = padd(&acc, &term);
        }
        if !acc.is_empty() {
            return Ok((m, acc));
        }
        for ((f, _), pw) in forms.iter().zip(pows.iter_mut()) {
            *pw = pmul(pw, f);
        }
    }
    Err(Error::DomainError("no nonvanishing order in the eps expansion".into()))
}

/// The classical series `sum_n g(n)`, `g(n) = w(n) f(n)`, with `f(0) = 1`,
/// `f(n+1)/f(n) = f_num(n)/f_den(n)` and `w(n) = w_scale w_num(n)/w_den(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalSeries {
    pub f_num: NPoly,
    pub f_den: NPoly,
    pub w_num: NPoly,
    pub w_den: NPoly,
    pub w_scale: BigRational,
}

/// The `q -> 1` limit of `weight(t, q^n) Fbar(n, 0)`, up to a power of `1 - q`.
pub fn classical_series(id: &Identity) -> Result<ClassicalSeries> {
    let l = id.scale;
    let base = id.rhs.term.base();
    let cr = base.classical_limit_ratio(Direction::N)?;
    let lin = |f: &crate::qterm::LinForm| vec![f.c.clone(), f.n.clone()];
    let mut f_num: NPoly = vec![cr.constant.clone()];
    let mut f_den: NPoly = vec![BigRational::one()];
    for f in &cr.num {
        f_num = pmul(&f_num, &lin(f));
    }
    for f in &cr.den {
        f_den = pmul(&f_den, &lin(f));
    }
    if let Fbar::Closure { p1, p2, .. } = &id.rhs.term {
        let (m1, a) = eps_leading(&parse_poly(p1)?, l)?;
        let (m2, b) = eps_leading(&parse_poly(p2)?, l)?;
        if m1 != m2 {
            return Err(Error::UnbalancedLimit(format!(
                "p1 and p2 vanish to orders {} and {} at q = 1",
                m1, m2
            )));
        }
        f_num = pmul(&f_num, &a);
        f_den = pmul(&f_den, &b);
    }
    let (mn, w_num) = eps_leading(id.rhs.weight.num(), l)?;
    let (md, w_den) = eps_leading(id.rhs.weight.den(), l)?;
    Ok(ClassicalSeries { f_num, f_den, w_num, w_den, w_scale: factorial(md) / factorial(mn) })
}

impl ClassicalSeries {
    fn weight(&self, n: &BigRational) -> Option<BigRational> {
        let d = peval(&self.w_den, n);
        if d.is_zero() {
            return None;
        }
        Some(&self.w_scale * peval(&self.w_num, n) / d)
    }

    /// `g(n+1)/g(n)` as numerator and denominator polynomials.
    pub fn ratio_polys(&self) -> (NPoly, NPoly) {
        let num = pmul(&pmul(&self.f_num, &pshift(&self.w_num, 1)), &self.w_den);
        let den = pmul(&pmul(&self.f_den, &self.w_num), &pshift(&self.w_den, 1));
        (num, den)
    }

    /// Exact `g(n)`.
    pub fn term(&self, n: u32) -> Option<BigRational> {
        let mut f = BigRational::one();
        for i in 0..n {
            let x = BigRational::from_integer(i.into());
            let d = peval(&self.f_den, &x);
            if d.is_zero() {
                return None;
            }
            f *= peval(&self.f_num, &x) / d;
        }
        Some(self.weight(&BigRational::from_integer(n.into()))? * f)
    }

    /// Limit of `|g(n+1)/g(n)|`.
    pub fn rate(&self) -> Result<BigRational> {
        let (num, den) = self.ratio_polys();
        match num.len().cmp(&den.len()) {
            std::cmp::Ordering::Less => Ok(BigRational::zero()),
            std::cmp::Ordering::Greater => Err(Error::Divergent("classical term ratio grows".into())),
            std::cmp::Ordering::Equal => Ok((num.last().unwrap() / den.last().unwrap()).abs()),
        }
    }

    /// Shift `s` with `g(n+1)/g(n) = h(n+s+1)/h(n+s)` for the display `h`.
    pub fn display_shift(&self, display: &HyperSeriesSpec) -> Option<i64> {
        let (gn, gd) = self.ratio_polys();
        let (hn, hd) = display.ratio_polys();
        [0, 1, 2, 3, -1, -2, -3]
            .into_iter()
            .find(|&s| psub(&pmul(&gn, &pshift(&hd, s)), &pmul(&gd, &pshift(&hn, s))).is_empty())
    }

    /// Sum `g(from..)` numerically; returns the sum, its tail bound and the
    /// number of terms.
    fn sum_from(&self, from: u32, ctx: &PrecisionContext, max_terms: usize) -> Result<(BigFloat, BigFloat, usize)> {
        let bits = ctx.bits() + 32;
        let one = BigFloat::one(bits);
        let eps = ctx.epsilon().with_prec(bits);
        let limit = BigFloat::from_rational(&self.rate()?, bits);
        if limit >= one {
            return Err(Error::Divergent("classical series ratio does not tend below 1".into()));
        }
        let (rn, rd) = self.ratio_polys();
        let mut u = BigFloat::from_rational(
            &self.term(from).ok_or_else(|| Error::DomainError("classical term has a pole".into()))?,
            bits,
        );
        let mut sum = BigFloat::zero(bits);
        let mut ratios: Vec<BigFloat> = Vec::new();
        let mut n = from;
        loop {
            sum = sum.add(&u);
            let x = BigRational::from_integer(n.into());
            let d = peval(&rd, &x);
            let next = if d.is_zero() {
                // the weight vanishes at n; restart from the exact term
                BigFloat::from_rational(&self.term(n + 1).unwrap_or_else(BigRational::zero), bits)
            } else {
                u.mul(&BigFloat::from_rational(&(peval(&rn, &x) / d), bits))
            };
            if !u.is_zero() {
                ratios.push(next.abs().div(&u.abs())?);
            }
            n += 1;
            u = next;
            let used = (n - from) as usize;
            let r = match ratios.iter().rev().take(8).max() {
                Some(o) => BigFloat::max_abs(o, &limit),
                None => limit.clone(),
            };
            let tail = if r < one && ratios.len() >= 2 {
                Some(u.abs().div(&one.sub(&r))?)
            } else {
                None
            };
            let scale = if sum.is_zero() { one.clone() } else { sum.abs() };
            let done = matches!(&tail, Some(t) if *t <= eps.mul(&scale)) || (u.is_zero() && used > 8);
            if done || used >= max_terms {
                let tail = if u.is_zero() { BigFloat::zero(bits) } else { tail.unwrap_or_else(|| u.abs()) };
                return Ok((sum, tail, used));
            }
        }
    }

    /// Measured `(log10|g(from)| - log10|g(to)|) / (to - from)`.
    pub fn digits_per_term(&self, from: u32, to: u32) -> Result<f64> {
        let bits = 128;
        let (rn, rd) = self.ratio_polys();
        let mut u = BigFloat::from_rational(
            &self.term(from).ok_or_else(|| Error::DomainError("classical term has a pole".into()))?,
            bits,
        );
        let a = u.log10_abs();
        for n in from..to {
            let x = BigRational::from_integer(n.into());
            let d = peval(&rd, &x);
            if d.is_zero() {
                return Err(Error::DomainError("classical ratio has a pole".into()));
            }
            u = u.mul(&BigFloat::from_rational(&(peval(&rn, &x) / d), bits));
        }
        Ok((a - u.log10_abs()) / (to - from) as f64)
    }
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub tag: String,
    pub digits: u32,
    pub value: BigFloat,
    pub target: BigFloat,
    pub diff: BigFloat,
    pub tail: BigFloat,
    pub terms: usize,
    /// `g(n) = lambda h(n + shift)` against the display `h`.
    pub shift: i64,
    pub lambda: BigRational,
    pub pass: bool,
}

impl LimitReport {
    /// Correct significant digits, relative to the target.
    pub fn matched_digits(&self) -> f64 {
        if self.diff.is_zero() {
            return f64::INFINITY;
        }
        self.target.log10_abs() - self.diff.log10_abs()
    }

    pub fn to_json(&self) -> Value {
        let d = self.digits as usize + 5;
        json!({
            "tag": self.tag,
            "digits": self.digits,
            "classical": self.value.to_decimal(d),
            "target": self.target.to_decimal(d),
            "diff": self.diff.to_decimal(6),
            "tail": self.tail.to_decimal(6),
            "terms": self.terms,
            "shift": self.shift,
            "lambda": fmt_rational(&self.lambda),
            "verdict": if self.pass { "pass" } else { "fail" },
        })
    }
}

pub fn classical_limit_check(entry: &CatalogEntry, ctx: &PrecisionContext) -> Result<LimitReport> {
    classical_limit_check_with(entry, ctx, 4 * super::DEFAULT_TERMS)
}

/// Sum the classical limit of the entry's RHS and compare with its target.
/// The normalization `lambda` between the limit and the display is exact,
/// read off the first matching term.
pub fn classical_limit_check_with(entry: &CatalogEntry, ctx: &PrecisionContext, max_terms: usize) -> Result<LimitReport> {
    let series = classical_series(&entry.identity)?;
    let s = series.display_shift(&entry.display).ok_or_else(|| {
        Error::InvalidTerm(format!(
            "classical limit of {} does not match its display up to shift",
            entry.tag()
        ))
    })?;
    let work = PrecisionContext::with_guard(ctx.digits + 10, ctx.tail_guard);
    let bits = work.bits() + 32;
    let (g_from, h_at) = if s >= 0 { (0u32, s as u32) } else { ((-s) as u32, 0u32) };
    for n in 0..g_from {
        if series.term(n).is_none_or(|v| !v.is_zero()) {
            return Err(Error::InvalidTerm("classical limit has terms before the display starts".into()));
        }
    }
    let g0 = series.term(g_from).ok_or_else(|| Error::DomainError("classical term has a pole".into()))?;
    let h0 = entry.display.term(h_at).ok_or_else(|| Error::DomainError("display term has a pole".into()))?;
    if g0.is_zero() || h0.is_zero() {
        return Err(Error::DomainError("cannot normalize against a vanishing term".into()));
    }
    let lambda = &g0 / &h0;
    let (sum, tail, terms) = series.sum_from(g_from, &work, max_terms)?;
    let mut head = BigRational::zero();
    for m in 0..h_at {
        head += entry.display.term(m).ok_or_else(|| Error::DomainError("display term has a pole".into()))?;
    }
    let lam = BigFloat::from_rational(&lambda, bits);
    let value = BigFloat::from_rational(&head, bits).add(&sum.with_prec(bits).div(&lam)?);
    let tail = tail.with_prec(bits).div(&lam.abs())?;
    let target = entry.classical_target.eval(bits)?;
    let diff = value.sub(&target).abs();
    let thr = ctx.tolerance(ctx.digits.saturating_sub(5)).with_prec(bits);
    let pass = diff < thr && tail < thr;
    Ok(LimitReport {
        tag: entry.tag().to_string(),
        digits: ctx.digits,
        value: value.with_prec(work.bits()),
        target: target.with_prec(work.bits()),
        diff: diff.with_prec(work.bits()),
        tail: tail.with_prec(work.bits()),
        terms,
        shift: s,
        lambda,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};
    use crate::identity::catalog_lookup;

    #[test]
    fn eps_expansion_orders() {
        // 1 - t^2 X = -(2/L + n) eps + ...
        let p = parse_poly("1 - t^2*X").unwrap();
        let (m, c) = eps_leading(&p, RootScale::new(2)).unwrap();
        assert_eq!(m, 1);
        assert_eq!(c, vec![rat(-1, 1), rat(-1, 1)]);
        let p = parse_poly("1 - 2*t + t^2").unwrap();
        let (m, c) = eps_leading(&p, RootScale::new(1)).unwrap();
        assert_eq!(m, 2);
        assert_eq!(c, vec![rat(2, 1)]);
    }

    #[test]
    fn shifts_compose() {
        let p = vec![rat(1, 1), rat(2, 1), rat(1, 1)];
        assert_eq!(pshift(&p, 1), vec![rat(4, 1), rat(4, 1), rat(1, 1)]);
        assert_eq!(pshift(&pshift(&p, 3), -3), p);
    }

    #[test]
    fn apery_limit() {
        let e = catalog_lookup("apery").unwrap();
        let r = classical_limit_check_with(e, &PrecisionContext::new(55), 200).unwrap();
        assert!(r.pass, "{:?}", r);
        assert!(r.matched_digits() >= 50.0);
        assert!(r.terms <= 200);
    }

    #[test]
    fn zeilberger_limit() {
        let e = catalog_lookup("zeilberger64").unwrap();
        let r = classical_limit_check_with(e, &PrecisionContext::new(55), 80).unwrap();
        assert!(r.pass, "{:?}", r);
        assert!(r.terms <= 80);
    }

    #[test]
    fn catalan_limit() {
        let e = catalog_lookup("quarter-6g").unwrap();
        let r = classical_limit_check(e, &PrecisionContext::new(45)).unwrap();
        assert!(r.pass && r.matched_digits() >= 40.0, "{:?}", r);
    }
}
