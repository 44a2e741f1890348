//! Arbitrary-precision binary floating point: `mantissa * 2^exponent` with an
//! unbounded exponent, rounded to nearest at a fixed number of bits.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Working precision expressed in decimal digits plus guard digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    pub digits: u32,
    pub tail_guard: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Self {
        Self::with_guard(digits, 10)
    }

    pub fn with_guard(digits: u32, tail_guard: u32) -> Self {
        assert!(digits >= 10, "at least 10 digits");
        assert!(tail_guard >= 1);
        PrecisionContext { digits, tail_guard }
    }

    /// Mantissa bits carried by values created under this context.
    pub fn bits(&self) -> u32 {
        ((self.digits + self.tail_guard) as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
    }

    /// The truncation threshold 10^-(digits + tail_guard).
    pub fn epsilon(&self) -> BigFloat {
        BigFloat::from_int(10, self.bits())
            .powi(-((self.digits + self.tail_guard) as i64))
    }

    pub fn tolerance(&self, digits: u32) -> BigFloat {
        BigFloat::from_int(10, self.bits()).powi(-(digits as i64))
    }
}

#[derive(Clone)]
pub struct BigFloat {
    m: BigInt,
    e: i64,
    prec: u32,
}

fn shift_round(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let neg = m.is_negative();
    let a = m.abs();
    let half = BigInt::one() << (s - 1);
    let r = (a + half) >> s;
    if neg {
        -r
    } else {
        r
    }
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { m: BigInt::zero(), e: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: BigInt, prec: u32) -> Self {
        Self::from_parts(v, 0, prec)
    }

    /// `m * 2^e` rounded to `prec` bits.
    pub fn from_parts(m: BigInt, e: i64, prec: u32) -> Self {
        let mut x = BigFloat { m, e, prec };
        x.normalize();
        x
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        let n = r.numer();
        let d = r.denom();
        let s = (prec as i64 + 2 + d.bits() as i64 - n.bits() as i64).max(0) as u64;
        let q = (n << s) / d;
        Self::from_parts(q, -(s as i64), prec)
    }

    /// Parses decimals like `-1.25e-3` and fractions like `5/4`.
    pub fn parse(s: &str, prec: u32) -> Result<Self> {
        Ok(Self::from_rational(&parse_decimal_rational(s)?, prec))
    }

    fn normalize(&mut self) {
        if self.m.is_zero() {
            self.e = 0;
            return;
        }
        let bits = self.m.bits();
        if bits > self.prec as u64 {
            let s = bits - self.prec as u64;
            self.m = shift_round(&self.m, s);
            self.e += s as i64;
        }
        let tz = self.m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.m >>= tz;
            self.e += tz as i64;
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_parts(self.m.clone(), self.e, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat { m: -self.m.clone(), e: self.e, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigFloat { m: self.m.abs(), e: self.e, prec: self.prec }
    }

    /// Position of the highest set bit: |x| lies in [2^(top-1), 2^top).
    fn top(&self) -> i64 {
        self.e + self.m.bits() as i64
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return o.with_prec(prec);
        }
        if o.is_zero() {
            return self.with_prec(prec);
        }
        let gap = prec as i64 + 4;
        if self.top() - o.top() > gap {
            return self.with_prec(prec);
        }
        if o.top() - self.top() > gap {
            return o.with_prec(prec);
        }
        let e = self.e.min(o.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &o.m << (o.e - e) as u64;
        Self::from_parts(a + b, e, prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        Self::from_parts(&self.m * &o.m, self.e + o.e, prec)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self::from_parts(&self.m * BigInt::from(k), self.e, self.prec)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DomainError("division by zero".into()));
        }
        let prec = self.prec.max(o.prec);
        if self.is_zero() {
            return Ok(Self::zero(prec));
        }
        let s = (prec as i64 + 4 + o.m.bits() as i64 - self.m.bits() as i64).max(0) as u64;
        let q = (&self.m << s) / &o.m;
        Ok(Self::from_parts(q, self.e - o.e - s as i64, prec))
    }

    pub fn div_int(&self, k: i64) -> Self {
        self.div(&Self::from_int(k, self.prec)).expect("nonzero divisor")
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.prec).div(self)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat { m: self.m.clone(), e: self.e + k, prec: self.prec }
    }

    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip().expect("nonzero base for negative power");
        }
        let mut r = Self::one(self.prec);
        let mut b = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.nth_root(2)
    }

    /// Real n-th root of a nonnegative value (odd n also accepts negatives).
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_negative() {
            if n % 2 == 1 {
                return Ok(self.neg().nth_root(n)?.neg());
            }
            return Err(Error::DomainError("even root of negative value".into()));
        }
        let n64 = n as i64;
        // choose shift s so (e - s) divisible by n and mantissa has ~ n*prec bits
        let want = (n as i64) * (self.prec as i64 + 8);
        let mut s = (want - self.m.bits() as i64).max(0);
        while (self.e - s).rem_euclid(n64) != 0 {
            s += 1;
        }
        let m = &self.m << s as u64;
        let r = m.nth_root(n);
        Ok(Self::from_parts(r, (self.e - s) / n64, self.prec))
    }

    pub fn cmp_abs(&self, o: &Self) -> Ordering {
        self.abs().cmp(&o.abs())
    }

    pub fn max_abs(a: &Self, b: &Self) -> Self {
        if a.cmp_abs(b) == Ordering::Less {
            b.abs()
        } else {
            a.abs()
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << self.e as u64)
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << (-self.e) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits() as i64;
        let s = (bits - 60).max(0);
        let top = (&self.m >> s as u64).to_f64().unwrap_or(0.0);
        let exp = self.e + s;
        if exp > 1000 {
            return top.signum() * f64::INFINITY;
        }
        if exp < -1100 {
            return 0.0;
        }
        top * 2f64.powi(exp as i32)
    }

    /// log10 |x| to double accuracy; -inf for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.m.bits() as i64;
        let s = (bits - 60).max(0);
        let top = (&self.m >> s as u64).to_f64().unwrap().abs();
        top.log10() + (self.e + s) as f64 * std::f64::consts::LOG10_2
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let x = self.to_rational().abs();
        let mut d = self.log10_abs().floor() as i64;
        let scaled = |d: i64| -> BigInt {
            let p = digits as i64 - 1 - d;
            let ten = BigInt::from(10);
            let v = if p >= 0 {
                &x * BigRational::from_integer(num_traits::pow(ten, p as usize))
            } else {
                &x / BigRational::from_integer(num_traits::pow(ten, (-p) as usize))
            };
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            (v + half).floor().to_integer()
        };
        let mut n = scaled(d);
        let limit = num_traits::pow(BigInt::from(10), digits);
        if n >= limit {
            d += 1;
            n = scaled(d);
        } else if n < &limit / BigInt::from(10) {
            d -= 1;
            n = scaled(d);
        }
        let s = n.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{}{}e{}", sign, head, d)
        } else {
            format!("{}{}.{}e{}", sign, head, tail, d)
        }
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec;
        let wp = prec + 32;
        let x = self.with_prec(wp);
        if x.is_zero() {
            return Self::one(prec);
        }
        let ln2 = ln2(wp);
        let k = x.div(&ln2).unwrap().to_f64().round() as i64;
        let r = x.sub(&ln2.mul_int(k));
        let s: i64 = 24;
        let r = r.mul_pow2(-s);
        let eps = Self::one(wp).mul_pow2(-(wp as i64) - 4);
        let mut term = Self::one(wp);
        let mut sum = Self::one(wp);
        let mut i = 1;
        loop {
            term = term.mul(&r).div_int(i);
            sum = sum.add(&term);
            if term.cmp_abs(&eps) == Ordering::Less {
                break;
            }
            i += 1;
        }
        for _ in 0..s {
            sum = sum.mul(&sum);
        }
        sum.mul_pow2(k).with_prec(prec)
    }

    pub fn ln(&self) -> Result<Self> {
        if self.signum() <= 0 {
            return Err(Error::DomainError("log of nonpositive value".into()));
        }
        let prec = self.prec;
        let wp = prec + 32;
        // x = y * 2^k with y in [1/2, 1)
        let k = self.top();
        let y = BigFloat { m: self.m.clone(), e: self.e - k, prec: wp };
        let one = Self::one(wp);
        let z = y.sub(&one).div(&y.add(&one))?;
        let z2 = z.mul(&z);
        let eps = Self::one(wp).mul_pow2(-(wp as i64) - 4);
        let mut pw = z.clone();
        let mut sum = z.clone();
        let mut i = 3;
        loop {
            pw = pw.mul(&z2);
            let t = pw.div_int(i);
            sum = sum.add(&t);
            if t.cmp_abs(&eps) == Ordering::Less {
                break;
            }
            i += 2;
        }
        Ok(sum.mul_int(2).add(&ln2(wp).mul_int(k)).with_prec(prec))
    }

    /// x^y for x > 0.
    pub fn powf(&self, y: &Self) -> Result<Self> {
        Ok(self.ln()?.mul(y).exp())
    }

    /// x^(p/q) for exact rational exponent; x > 0 unless q is odd.
    pub fn pow_rational(&self, r: &BigRational) -> Result<Self> {
        let q = r.denom().to_u32().ok_or_else(|| Error::DomainError("exponent".into()))?;
        let p = r.numer().to_i64().ok_or_else(|| Error::DomainError("exponent".into()))?;
        let root = if q == 1 { self.clone() } else { self.nth_root(q)? };
        Ok(root.powi(p))
    }
}

/// atanh(1/n) by its Taylor series.
pub(crate) fn atanh_inv(n: u64, prec: u32) -> BigFloat {
    let wp = prec + 16;
    let nn = BigFloat::from_int(n as i64, wp);
    let n2 = nn.mul(&nn);
    let eps = BigFloat::one(wp).mul_pow2(-(wp as i64) - 4);
    let mut pw = nn.recip().unwrap();
    let mut sum = pw.clone();
    let mut k = 1i64;
    loop {
        pw = pw.div(&n2).unwrap();
        let t = pw.div_int(2 * k + 1);
        sum = sum.add(&t);
        if t.cmp_abs(&eps) == Ordering::Less {
            break;
        }
        k += 1;
    }
    sum.with_prec(prec)
}

/// log 2 = 18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749).
pub(crate) fn ln2(prec: u32) -> BigFloat {
    let wp = prec + 16;
    atanh_inv(26, wp)
        .mul_int(18)
        .sub(&atanh_inv(4801, wp).mul_int(2))
        .add(&atanh_inv(8749, wp).mul_int(8))
        .with_prec(prec)
}

pub fn parse_decimal_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a number: {:?}", s));
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| bad())?;
        let d: BigInt = b.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches(['-', '+']);
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{}{}", ip, fp).parse().map_err(|_| bad())?;
    let scale = exp - fp.len() as i64;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.m == o.m && (self.m.is_zero() || self.e == o.e)
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, o: &Self) -> Ordering {
        // rounding never turns a nonzero difference into zero
        self.sub(o).m.sign().cmp(&Sign::NoSign)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.prec as f64) / std::f64::consts::LOG2_10) as usize);
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    #[test]
    fn rational_round_trip() {
        let x = BigFloat::parse("5/4", P).unwrap();
        assert_eq!(x.to_rational(), BigRational::new(5.into(), 4.into()));
        assert_eq!(BigFloat::parse("-1.25e-1", P).unwrap().to_decimal(5), "-1.2500e-1");
    }

    #[test]
    fn division_and_roots() {
        let two = BigFloat::from_int(2, P);
        let r = two.sqrt().unwrap();
        let back = r.mul(&r).sub(&two).abs();
        assert!(back.log10_abs() < -70.0);
        let c = two.nth_root(3).unwrap();
        assert!(c.powi(3).sub(&two).abs().log10_abs() < -70.0);
        let third = BigFloat::from_int(1, P).div_int(3);
        assert_eq!(third.to_decimal(10), "3.333333333e-1");
    }

    #[test]
    fn exp_and_log_are_inverse() {
        let x = BigFloat::parse("3.75", P).unwrap();
        let y = x.ln().unwrap().exp();
        assert!(y.sub(&x).abs().log10_abs() < -70.0);
        let l2 = ln2(P);
        assert!(l2.to_decimal(20).starts_with("6.931471805599453094"));
    }

    #[test]
    fn huge_exponents_do_not_overflow() {
        let q = BigFloat::from_int(2, P);
        let big = q.powi(100_000);
        let small = q.powi(-100_000);
        let one = big.mul(&small);
        assert_eq!(one.to_decimal(5), "1.0000e0");
        assert!((big.log10_abs() - 100_000.0 * std::f64::consts::LOG10_2).abs() < 1e-6);
    }
}
