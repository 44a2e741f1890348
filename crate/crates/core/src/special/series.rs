//! Partial-sum evaluation of basic hypergeometric series `jφk` and of
//! classical hypergeometric-type series, with tail bounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::bigfloat::{parse_decimal_rational, BigFloat, PrecisionContext};
use crate::algebra::fmt_rational;
use crate::error::{Error, Result};

/// One argument of a `jφk` series.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiArg {
    Numeric(BigFloat),
    Exact(BigRational),
    /// `coef * base^exp`; as the base itself, the unbound symbol `q`.
    QPower { coef: BigRational, exp: BigRational },
}

impl PhiArg {
    pub fn q_power(exp: BigRational) -> Self {
        PhiArg::QPower { coef: BigRational::one(), exp }
    }

    /// The symbolic base `q`.
    pub fn symbol() -> Self {
        Self::q_power(BigRational::one())
    }

    pub fn exact(v: BigRational) -> Self {
        PhiArg::Exact(v)
    }
}

impl fmt::Display for PhiArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiArg::Numeric(v) => write!(f, "{}", v.to_decimal(40)),
            PhiArg::Exact(r) => write!(f, "{}", fmt_rational(r)),
            PhiArg::QPower { coef, exp } => {
                if !coef.is_one() {
                    write!(f, "{}*", fmt_rational(coef))?;
                }
                if exp.is_one() {
                    write!(f, "q")
                } else {
                    write!(f, "q^({})", fmt_rational(exp))
                }
            }
        }
    }
}

impl std::str::FromStr for PhiArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(i) = s.find('q') {
            let (coef, rest) = if i == 0 {
                (BigRational::one(), s)
            } else {
                let c = s[..i]
                    .strip_suffix('*')
                    .ok_or_else(|| Error::Parse(format!("bad q-power {:?}", s)))?;
                (parse_decimal_rational(c)?, &s[i..])
            };
            let exp = if rest == "q" {
                BigRational::one()
            } else {
                let e = rest
                    .strip_prefix("q^(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("bad q-power {:?}", s)))?;
                parse_decimal_rational(e)?
            };
            return Ok(PhiArg::QPower { coef, exp });
        }
        if s.contains(['.', 'e', 'E']) {
            let r = parse_decimal_rational(s)?;
            let bits = (s.len() as f64 * 3.33) as u32 + 64;
            return Ok(PhiArg::Numeric(BigFloat::from_rational(&r, bits)));
        }
        Ok(PhiArg::Exact(parse_decimal_rational(s)?))
    }
}

impl Serialize for PhiArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PhiArg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `jφk[upper; lower | base; argument]` with the `((-1)^n q^{n(n-1)/2})^{1+k-j}`
/// correction of the unilateral definition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiSeriesSpec {
    pub upper: Vec<PhiArg>,
    pub lower: Vec<PhiArg>,
    pub base: PhiArg,
    pub argument: PhiArg,
}

/// A numeric partial sum with its tail bound.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: BigFloat,
    pub tail_bound: BigFloat,
    /// Terms summed explicitly.
    pub terms: usize,
    /// Every observed term ratio from this index on has modulus below 1.
    pub burn_in: usize,
    pub accelerated: bool,
    pub terminated: bool,
}

struct Resolved {
    value: BigFloat,
    exact: Option<BigRational>,
}

impl PhiSeriesSpec {
    pub fn new(upper: Vec<PhiArg>, lower: Vec<PhiArg>, base: PhiArg, argument: PhiArg) -> Self {
        PhiSeriesSpec { upper, lower, base, argument }
    }

    pub fn j(&self) -> usize {
        self.upper.len()
    }

    pub fn k(&self) -> usize {
        self.lower.len()
    }

    /// Replace a symbolic base by a concrete value.
    pub fn with_base(&self, q: PhiArg) -> Self {
        let mut s = self.clone();
        s.base = q;
        s
    }

    fn resolve_base(&self, bits: u32) -> Result<Resolved> {
        match &self.base {
            PhiArg::Numeric(v) => Ok(Resolved { value: v.with_prec(bits), exact: None }),
            PhiArg::Exact(r) => Ok(Resolved {
                value: BigFloat::from_rational(r, bits),
                exact: Some(r.clone()),
            }),
            _ => Err(Error::InvalidTerm("series base must be a concrete number".into())),
        }
    }

    fn resolve(&self, arg: &PhiArg, q: &Resolved, bits: u32) -> Result<Resolved> {
        match arg {
            PhiArg::Numeric(v) => Ok(Resolved { value: v.with_prec(bits), exact: None }),
            PhiArg::Exact(r) => Ok(Resolved {
                value: BigFloat::from_rational(r, bits),
                exact: Some(r.clone()),
            }),
            PhiArg::QPower { coef, exp } => {
                if exp.is_integer() {
                    let e = exp.to_integer().to_i64().ok_or_else(|| Error::DomainError("exponent".into()))?;
                    if let Some(qe) = &q.exact {
                        if qe.is_zero() && e < 0 {
                            return Err(Error::DomainError("negative power of zero".into()));
                        }
                        let v = coef * crate::algebra::rat_pow(qe, e as i32);
                        return Ok(Resolved { value: BigFloat::from_rational(&v, bits), exact: Some(v) });
                    }
                    let v = q.value.powi(e).mul(&BigFloat::from_rational(coef, bits));
                    return Ok(Resolved { value: v, exact: None });
                }
                let v = q.value.pow_rational(exp)?.mul(&BigFloat::from_rational(coef, bits));
                Ok(Resolved { value: v, exact: None })
            }
        }
    }
}

const WINDOW: usize = 8;

fn first_exact_hit(a: &Option<BigRational>, q: &Option<BigRational>, limit: usize) -> Option<usize> {
    // smallest m with a q^m = 1; |a q^m| is monotone in m
    let (a, q) = (a.as_ref()?, q.as_ref()?);
    if a.is_zero() {
        return None;
    }
    let one = BigRational::one();
    let growing = q.abs() > one;
    let mut x = a.clone();
    for m in 0..=limit {
        if x == one {
            return Some(m);
        }
        if (growing && x.abs() > one) || (!growing && x.abs() < one) {
            return None;
        }
        x *= q;
    }
    None
}

fn one_minus(x: &BigFloat) -> BigFloat {
    BigFloat::one(x.prec()).sub(x)
}

/// Evaluate a `jφk` series, summing at most `terms` terms.
pub fn phi_eval(spec: &PhiSeriesSpec, terms: usize, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let bits = ctx.bits() + 32;
    let q = spec.resolve_base(bits)?;
    let one = BigFloat::one(bits);
    let qabs_cmp = q.value.abs().cmp(&one);
    if qabs_cmp == Ordering::Equal || q.value.is_zero() {
        return Err(Error::DomainError("series base must satisfy 0 < |q| != 1".into()));
    }
    let ups: Vec<Resolved> = spec.upper.iter().map(|a| spec.resolve(a, &q, bits)).collect::<Result<_>>()?;
    let lows: Vec<Resolved> = spec.lower.iter().map(|a| spec.resolve(a, &q, bits)).collect::<Result<_>>()?;
    let z = spec.resolve(&spec.argument, &q, bits)?;
    let j = ups.len() as i64;
    let k = lows.len() as i64;
    let corr = 1 + k - j;

    // exact termination and poles
    let scan = terms.max(1);
    // a q^m = 1 zeroes every term from index m + 1 on
    let stop_at = ups.iter().filter_map(|a| first_exact_hit(&a.exact, &q.exact, scan)).min().map(|m| m + 1);
    for b in &lows {
        if let Some(m) = first_exact_hit(&b.exact, &q.exact, scan) {
            if stop_at.is_none_or(|s| m + 1 < s) {
                return Err(Error::DomainError("lower parameter hits a pole".into()));
            }
        }
    }

    let big_q = qabs_cmp == Ordering::Greater;
    let eps = ctx.epsilon().with_prec(bits);
    let all_nonzero = ups.iter().chain(lows.iter()).all(|r| !r.value.is_zero());
    let pinv = if big_q { Some(q.value.recip()?) } else { None };

    // |Z| for |q| > 1; ratio limit for |q| < 1
    let big_z = if big_q && all_nonzero {
        let mut zz = z.value.clone();
        for a in &ups {
            zz = zz.mul(&a.value);
        }
        for b in &lows {
            zz = zz.div(&b.value)?;
        }
        Some(zz.div(&q.value)?)
    } else {
        None
    };
    if stop_at.is_none() {
        let limit_ok = if big_q {
            match &big_z {
                Some(zz) => zz.abs() < one,
                None => true,
            }
        } else {
            corr > 0 || (corr == 0 && z.value.abs() < one)
        };
        if !limit_ok {
            return Err(Error::Divergent("term ratio does not tend below 1".into()));
        }
    }

    // rigorous decreasing bound on |ratio(n)| for n >= m
    let ratio_bound = |m: usize| -> Option<BigFloat> {
        if big_q {
            let zz = big_z.as_ref()?;
            let p = pinv.as_ref()?.abs();
            let pm = p.powi(m as i64);
            let mut r = zz.abs();
            for a in &ups {
                r = r.mul(&one.add(&pm.div(&a.value.abs()).ok()?));
            }
            let mut dens: Vec<BigFloat> = lows.iter().map(|b| pm.div(&b.value.abs()).unwrap()).collect();
            dens.push(pm.mul(&p));
            for d in dens {
                let f = one_minus(&d);
                if f.signum() <= 0 {
                    return None;
                }
                r = r.div(&f).ok()?;
            }
            Some(r)
        } else {
            if corr < 0 {
                return None;
            }
            let qa = q.value.abs();
            let qm = qa.powi(m as i64);
            let mut r = z.value.abs().mul(&qm.powi(corr));
            for a in &ups {
                r = r.mul(&one.add(&a.value.abs().mul(&qm)));
            }
            let mut dens: Vec<BigFloat> = lows.iter().map(|b| b.value.abs().mul(&qm)).collect();
            dens.push(qm.mul(&qa));
            for d in dens {
                let f = one_minus(&d);
                if f.signum() <= 0 {
                    return None;
                }
                r = r.div(&f).ok()?;
            }
            Some(r)
        }
    };

    let mut sum = BigFloat::zero(bits);
    let mut u = one.clone();
    let mut qn = one.clone();
    let mut ratios: Vec<BigFloat> = Vec::new();
    let mut burn_in = 0usize;
    let mut n = 0usize;
    let accel_target = BigFloat::from_int(1, bits).div_int(1_000_000);
    let rho = if big_q && all_nonzero {
        let p = pinv.as_ref().unwrap().abs();
        let mut m = p.clone();
        for r in ups.iter().chain(lows.iter()) {
            m = BigFloat::max_abs(&m, &r.value.recip()?);
        }
        Some(m)
    } else {
        None
    };
    loop {
        if stop_at == Some(n) {
            return Ok(SeriesValue {
                value: sum.with_prec(ctx.bits()),
                tail_bound: BigFloat::zero(ctx.bits()),
                terms: n,
                burn_in,
                accelerated: false,
                terminated: true,
            });
        }
        // analytic tail once p^n is small against every 1/arg
        if let (Some(rho), Some(zz)) = (&rho, &big_z) {
            let p = pinv.as_ref().unwrap();
            let pn = p.powi(n as i64);
            if n >= WINDOW && pn.abs().mul(rho) < accel_target {
                let (tail, err) = accelerated_tail(&u, &pn, p, zz, &ups, &lows, &eps)?;
                let value = sum.add(&tail);
                let tail_bound = err.add(&eps.mul(&value.abs()));
                return Ok(SeriesValue {
                    value: value.with_prec(ctx.bits()),
                    tail_bound: tail_bound.with_prec(ctx.bits()),
                    terms: n,
                    burn_in,
                    accelerated: true,
                    terminated: false,
                });
            }
        }
        sum = sum.add(&u);
        // ratio u_{n+1}/u_n
        let mut r = z.value.clone();
        for a in &ups {
            r = r.mul(&one_minus(&a.value.mul(&qn)));
        }
        let mut den = one_minus(&qn.mul(&q.value));
        for b in &lows {
            den = den.mul(&one_minus(&b.value.mul(&qn)));
        }
        if den.is_zero() {
            return Err(Error::DomainError("lower parameter hits a pole".into()));
        }
        r = r.div(&den)?;
        if corr != 0 {
            let f = qn.neg().powi(corr);
            r = r.mul(&f);
        }
        let ra = r.abs();
        if ra >= one {
            burn_in = n + 1;
        }
        ratios.push(ra);
        let next = u.mul(&r);
        n += 1;
        qn = qn.mul(&q.value);
        // stopping test on the freshly computed term
        let observed = ratios.iter().rev().take(WINDOW).max().cloned().unwrap();
        let rb = ratio_bound(n - 1);
        let rr = match &rb {
            Some(b) => BigFloat::max_abs(b, &observed),
            None => observed,
        };
        let tail = if rr < one {
            Some(next.abs().mul(&one.div(&one_minus(&rr))?))
        } else {
            None
        };
        let scale = if sum.is_zero() { one.clone() } else { sum.abs() };
        if let Some(t) = &tail {
            if n >= WINDOW.min(4) && t <= &eps.mul(&scale) {
                return Ok(SeriesValue {
                    value: sum.with_prec(ctx.bits()),
                    tail_bound: t.with_prec(ctx.bits()),
                    terms: n,
                    burn_in,
                    accelerated: false,
                    terminated: next.is_zero(),
                });
            }
        }
        if n >= terms {
            return match tail {
                Some(t) => Ok(SeriesValue {
                    value: sum.with_prec(ctx.bits()),
                    tail_bound: t.with_prec(ctx.bits()),
                    terms: n,
                    burn_in,
                    accelerated: false,
                    terminated: false,
                }),
                None => Err(Error::Divergent(format!(
                    "term ratio modulus still >= 1 after {} terms",
                    n
                ))),
            };
        }
        u = next;
    }
}

/// Tail `sum_{m >= N} u_m` for `|q| > 1` from the product expansion of the
/// term ratio in powers of `p = 1/q`. Returns the tail and an error estimate.
fn accelerated_tail(
    u_n: &BigFloat,
    pn: &BigFloat,
    p: &BigFloat,
    zz: &BigFloat,
    ups: &[Resolved],
    lows: &[Resolved],
    eps: &BigFloat,
) -> Result<(BigFloat, BigFloat)> {
    let bits = u_n.prec();
    let one = BigFloat::one(bits);
    // scaled generators A y0 and B y0
    let a_s: Vec<BigFloat> = ups.iter().map(|a| pn.div(&a.value)).collect::<Result<_>>()?;
    let mut b_s: Vec<BigFloat> = lows.iter().map(|b| pn.div(&b.value)).collect::<Result<_>>()?;
    b_s.push(pn.mul(p));
    let mut sigma: Vec<BigFloat> = vec![BigFloat::zero(bits)];
    let mut apow = a_s.clone();
    let mut bpow = b_s.clone();
    let mut ppow = p.clone();
    let mut v: Vec<BigFloat> = vec![one.clone()];
    let mut num = one.div(&one_minus(zz))?;
    let mut den = one.clone();
    let mut small_run = 0;
    let mut last = one.clone();
    let mut zp = zz.clone();
    let tiny = eps.mul_pow2(-8);
    for m in 1..400usize {
        let mut s = BigFloat::zero(bits);
        for x in &apow {
            s = s.add(x);
        }
        for x in &bpow {
            s = s.sub(x);
        }
        sigma.push(s.div(&one_minus(&ppow))?);
        for x in apow.iter_mut().zip(a_s.iter()) {
            *x.0 = x.0.mul(x.1);
        }
        for x in bpow.iter_mut().zip(b_s.iter()) {
            *x.0 = x.0.mul(x.1);
        }
        ppow = ppow.mul(p);
        let mut acc = BigFloat::zero(bits);
        for r in 1..=m {
            acc = acc.add(&sigma[r].mul(&v[m - r]));
        }
        let vm = acc.div_int(m as i64);
        zp = zp.mul(p);
        num = num.add(&vm.div(&one_minus(&zp))?);
        den = den.add(&vm);
        last = vm.abs();
        v.push(vm);
        if last < tiny {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    let tail = u_n.mul(&num).div(&den)?;
    let err = u_n.abs().mul(&last.mul_int(8)).div(&den.abs())?;
    Ok((tail, err))
}

/// Classical series `sum_n z^n prod (a_i)_n / prod (b_j)_n * P(n)/Q(n)`.
/// `lower` lists every denominator Pochhammer explicitly, including the 1
/// that stands for `n!` in `rFs`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperSeriesSpec {
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
    pub z: BigRational,
    /// Polynomial weight numerator, constant coefficient first.
    pub weight_num: Vec<BigRational>,
    pub weight_den: Vec<BigRational>,
}

impl HyperSeriesSpec {
    /// Plain `rFs(upper; lower; z)` with its implicit `n!`.
    pub fn pfq(upper: Vec<BigRational>, mut lower: Vec<BigRational>, z: BigRational) -> Self {
        lower.push(BigRational::one());
        HyperSeriesSpec {
            upper,
            lower,
            z,
            weight_num: vec![BigRational::one()],
            weight_den: vec![BigRational::one()],
        }
    }

    pub fn weighted(
        upper: Vec<BigRational>,
        lower: Vec<BigRational>,
        z: BigRational,
        weight_num: Vec<BigRational>,
        weight_den: Vec<BigRational>,
    ) -> Self {
        HyperSeriesSpec { upper, lower, z, weight_num, weight_den }
    }

    pub fn weight(&self, n: &BigRational) -> Option<BigRational> {
        let ev = |c: &[BigRational]| c.iter().rev().fold(BigRational::zero(), |acc, x| acc * n + x);
        let d = ev(&self.weight_den);
        if d.is_zero() {
            None
        } else {
            Some(ev(&self.weight_num) / d)
        }
    }

    /// Exact term `h(n)`.
    pub fn term(&self, n: u32) -> Option<BigRational> {
        let mut r = crate::algebra::rat_pow(&self.z, n as i32);
        for a in &self.upper {
            r *= super::qfunc::rising(a, n);
        }
        for b in &self.lower {
            let v = super::qfunc::rising(b, n);
            if v.is_zero() {
                return None;
            }
            r /= v;
        }
        Some(r * self.weight(&BigRational::from_integer(BigInt::from(n)))?)
    }

    /// `h(n+1)/h(n)` as a rational function of `n`, numerator and denominator
    /// as coefficient lists (constant first).
    pub fn ratio_polys(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        let mul = |p: &[BigRational], q: &[BigRational]| {
            let mut out = vec![BigRational::zero(); p.len() + q.len() - 1];
            for (i, a) in p.iter().enumerate() {
                for (j, b) in q.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            out
        };
        let shift = |p: &[BigRational]| {
            // p(n + 1)
            let mut out = vec![BigRational::zero(); p.len()];
            for (i, c) in p.iter().enumerate() {
                let mut binom = BigInt::one();
                for k in 0..=i {
                    out[k] += c * BigRational::from_integer(binom.clone());
                    binom = binom * BigInt::from(i - k) / BigInt::from(k + 1);
                }
            }
            out
        };
        let mut num = vec![self.z.clone()];
        let mut den = vec![BigRational::one()];
        for a in &self.upper {
            num = mul(&num, &[a.clone(), BigRational::one()]);
        }
        for b in &self.lower {
            den = mul(&den, &[b.clone(), BigRational::one()]);
        }
        num = mul(&num, &shift(&self.weight_num));
        num = mul(&num, &self.weight_den);
        den = mul(&den, &self.weight_num);
        den = mul(&den, &shift(&self.weight_den));
        (num, den)
    }
}

/// Evaluate a classical series to the context budget, summing at most `terms` terms.
pub fn hyper_eval(spec: &HyperSeriesSpec, terms: usize, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let bits = ctx.bits() + 32;
    let one = BigFloat::one(bits);
    let eps = ctx.epsilon().with_prec(bits);
    let terminating = spec.upper.iter().any(|a| !a.is_positive() && a.is_integer());
    // polynomial weights do not change the limiting term ratio
    let balance = spec.upper.len() as i64 - spec.lower.len() as i64;
    if !terminating && !spec.z.is_zero() && (balance > 0 || (balance == 0 && spec.z.abs() >= BigRational::one())) {
        return Err(Error::Divergent("classical series ratio does not tend below 1".into()));
    }
    let limit = if balance == 0 {
        BigFloat::from_rational(&spec.z.abs(), bits)
    } else {
        BigFloat::zero(bits)
    };
    let zf = BigFloat::from_rational(&spec.z, bits);
    let upf: Vec<BigFloat> = spec.upper.iter().map(|a| BigFloat::from_rational(a, bits)).collect();
    let lowf: Vec<BigFloat> = spec.lower.iter().map(|a| BigFloat::from_rational(a, bits)).collect();
    let weight = |n: usize| -> Result<BigFloat> {
        let w = spec
            .weight(&BigRational::from_integer(BigInt::from(n)))
            .ok_or_else(|| Error::DomainError("weight has a pole".into()))?;
        Ok(BigFloat::from_rational(&w, bits))
    };
    let mut base = one.clone();
    let mut sum = BigFloat::zero(bits);
    let mut prev_abs: Option<BigFloat> = None;
    let mut ratios: Vec<BigFloat> = Vec::new();
    let mut burn_in = 0;
    let mut n = 0usize;
    loop {
        let u = base.mul(&weight(n)?);
        sum = sum.add(&u);
        let ua = u.abs();
        if let Some(pa) = &prev_abs {
            if !pa.is_zero() {
                let r = ua.div(pa)?;
                if r >= one {
                    burn_in = n;
                }
                ratios.push(r);
            }
        }
        prev_abs = Some(ua.clone());
        // base ratio
        let nf = BigFloat::from_int(n as i64, bits);
        let mut r = zf.clone();
        for a in &upf {
            r = r.mul(&a.add(&nf));
        }
        for b in &lowf {
            let d = b.add(&nf);
            if d.is_zero() {
                return Err(Error::DomainError("lower parameter hits a pole".into()));
            }
            r = r.div(&d)?;
        }
        base = base.mul(&r);
        n += 1;
        if base.is_zero() {
            return Ok(SeriesValue {
                value: sum.with_prec(ctx.bits()),
                tail_bound: BigFloat::zero(ctx.bits()),
                terms: n,
                burn_in,
                accelerated: false,
                terminated: true,
            });
        }
        let observed = ratios.iter().rev().take(WINDOW).max().cloned();
        let rr = match observed {
            Some(o) => BigFloat::max_abs(&o, &limit),
            None => limit.clone(),
        };
        let tail = if rr < one && n > WINDOW {
            Some(ua.mul(&rr).div(&one_minus(&rr))?)
        } else {
            None
        };
        let scale = if sum.is_zero() { one.clone() } else { sum.abs() };
        if let Some(t) = &tail {
            if t <= &eps.mul(&scale) {
                return Ok(SeriesValue {
                    value: sum.with_prec(ctx.bits()),
                    tail_bound: t.with_prec(ctx.bits()),
                    terms: n,
                    burn_in,
                    accelerated: false,
                    terminated: false,
                });
            }
        }
        if n >= terms {
            return match tail {
                Some(t) => Ok(SeriesValue {
                    value: sum.with_prec(ctx.bits()),
                    tail_bound: t.with_prec(ctx.bits()),
                    terms: n,
                    burn_in,
                    accelerated: false,
                    terminated: false,
                }),
                None => Err(Error::Divergent(format!("no geometric decay after {} terms", n))),
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn arg_text_round_trip() {
        for s in ["q", "q^(1/2)", "3/4*q^(-2)", "5/7", "-2"] {
            let a: PhiArg = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
        }
    }

    #[test]
    fn unit_numerator_argument_truncates() {
        let ctx = PrecisionContext::new(30);
        let spec = PhiSeriesSpec::new(
            vec![PhiArg::q_power(rat(0, 1)), PhiArg::exact(rat(1, 3)), PhiArg::exact(rat(1, 5))],
            vec![PhiArg::exact(rat(1, 7)), PhiArg::exact(rat(2, 7))],
            PhiArg::exact(rat(1, 2)),
            PhiArg::exact(rat(1, 2)),
        );
        let v = phi_eval(&spec, 100, &ctx).unwrap();
        assert!(v.terminated);
        assert_eq!(v.value.to_decimal(10), "1.000000000e0");
    }

    #[test]
    fn zero_argument_hypergeometric_is_one() {
        let ctx = PrecisionContext::new(20);
        let spec = HyperSeriesSpec::pfq(vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4)], rat(0, 1));
        let v = hyper_eval(&spec, 10, &ctx).unwrap();
        assert_eq!(v.value.to_decimal(8), "1.0000000e0");
    }

    #[test]
    fn geometric_q_series() {
        // 1phi0(0;;q,z) = 1/(z;q)_inf; with a single upper 0 and no lower
        // at |q|<1 it's a known product; here just check plain 2phi1 against
        // its defining sum computed exactly
        let ctx = PrecisionContext::new(30);
        let spec = PhiSeriesSpec::new(
            vec![PhiArg::exact(rat(1, 3)), PhiArg::exact(rat(2, 5))],
            vec![PhiArg::exact(rat(1, 7))],
            PhiArg::exact(rat(1, 2)),
            PhiArg::exact(rat(1, 3)),
        );
        let v = phi_eval(&spec, 500, &ctx).unwrap();
        let mut exact = BigRational::zero();
        let mut u = BigRational::one();
        let q = rat(1, 2);
        let mut qn = BigRational::one();
        for _ in 0..120 {
            exact += &u;
            u = u * (BigRational::one() - rat(1, 3) * &qn) * (BigRational::one() - rat(2, 5) * &qn)
                / ((BigRational::one() - rat(1, 7) * &qn) * (BigRational::one() - &q * &qn))
                * rat(1, 3);
            qn *= &q;
        }
        let d = v.value.sub(&BigFloat::from_rational(&exact, 300)).abs();
        assert!(d.log10_abs() < -30.0);
    }
}
