//! q-proper hypergeometric terms `F(n, k)` and their shift quotients.
//!
//! A term is a product of a sign, geometric rates, a constant, `q` raised to a
//! quadratic form in `(n, k)`, and q-Pochhammer factors
//! `(c q^{u n + v k + w}; q^s)_{mu n + nu k + lambda}` raised to integer powers.
//! With `q = t^L`, `X = q^n` and `K = q^k` the shift quotients are rational
//! functions of `(t, X, K)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{fmt_rational, rat_pow, Exps, ProductForm, RationalFunction, RootScale};
use crate::error::{Error, Result};
use crate::special::{BigFloat, PrecisionContext};

/// `alpha n^2 + beta n k + gamma k^2 + delta n + epsilon k + zeta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadForm {
    #[serde(with = "crate::serde_util")]
    pub nn: BigRational,
    #[serde(with = "crate::serde_util")]
    pub nk: BigRational,
    #[serde(with = "crate::serde_util")]
    pub kk: BigRational,
    #[serde(with = "crate::serde_util")]
    pub n: BigRational,
    #[serde(with = "crate::serde_util")]
    pub k: BigRational,
    #[serde(with = "crate::serde_util")]
    pub c: BigRational,
}

impl QuadForm {
    pub fn zero() -> Self {
        let z = BigRational::zero;
        QuadForm { nn: z(), nk: z(), kk: z(), n: z(), k: z(), c: z() }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    pub fn eval(&self, n: i64, k: i64) -> BigRational {
        let n = BigRational::from_integer(BigInt::from(n));
        let k = BigRational::from_integer(BigInt::from(k));
        &self.nn * &n * &n + &self.nk * &n * &k + &self.kk * &k * &k + &self.n * &n + &self.k * &k + &self.c
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadForm {
            nn: &self.nn + &o.nn,
            nk: &self.nk + &o.nk,
            kk: &self.kk + &o.kk,
            n: &self.n + &o.n,
            k: &self.k + &o.k,
            c: &self.c + &o.c,
        }
    }
}

/// `(coef q^{u n + v k + w}; q^s)_{mu n + nu k + lambda}^power`; `s = 0` is
/// allowed when the argument is constant and means a plain power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PochFactor {
    #[serde(with = "crate::serde_util")]
    pub coef: BigRational,
    #[serde(with = "crate::serde_util")]
    pub u: BigRational,
    #[serde(with = "crate::serde_util")]
    pub v: BigRational,
    #[serde(with = "crate::serde_util")]
    pub w: BigRational,
    #[serde(with = "crate::serde_util")]
    pub s: BigRational,
    pub mu: i64,
    pub nu: i64,
    pub lambda: i64,
    pub power: i32,
}

impl PochFactor {
    /// `(q^{u n + v k + w}; q)_{mu n + nu k + lambda}^power`.
    pub fn simple(u: i64, v: i64, w: BigRational, len: (i64, i64, i64), power: i32) -> Self {
        PochFactor {
            coef: BigRational::one(),
            u: BigRational::from_integer(u.into()),
            v: BigRational::from_integer(v.into()),
            w,
            s: BigRational::one(),
            mu: len.0,
            nu: len.1,
            lambda: len.2,
            power,
        }
    }

    fn length(&self, n: i64, k: i64) -> i64 {
        self.mu * n + self.nu * k + self.lambda
    }
}

/// q-exponent `a n + b k + c` of a binomial `1 - coef q^{...}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinForm {
    pub n: BigRational,
    pub k: BigRational,
    pub c: BigRational,
}

impl LinForm {
    pub fn eval(&self, n: &BigRational, k: &BigRational) -> BigRational {
        &self.n * n + &self.k * k + &self.c
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*n + {}*k + {}", fmt_rational(&self.n), fmt_rational(&self.k), fmt_rational(&self.c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QProperTerm {
    /// Exponent of `(-1)` per unit of `n` and of `k`.
    pub sign_n: i64,
    pub sign_k: i64,
    #[serde(with = "crate::serde_util")]
    pub rate_n: BigRational,
    #[serde(with = "crate::serde_util")]
    pub rate_k: BigRational,
    #[serde(with = "crate::serde_util")]
    pub scale: BigRational,
    pub qpower: QuadForm,
    pub factors: Vec<PochFactor>,
}

/// A binomial `(1 - coef q^{form})^power`.
struct Piece {
    coef: BigRational,
    form: LinForm,
    power: i32,
}

/// Binomials of `(coef q^{x}; q^s)_len` with `len` a fixed integer.
fn poch_pieces(coef: &BigRational, x: &LinForm, s: &BigRational, len: i64, power: i32, out: &mut Vec<Piece>) {
    if len >= 0 {
        for i in 0..len {
            let mut f = x.clone();
            f.c += s * BigRational::from_integer(i.into());
            out.push(Piece { coef: coef.clone(), form: f, power });
        }
    } else {
        for i in 1..=(-len) {
            let mut f = x.clone();
            f.c -= s * BigRational::from_integer(i.into());
            out.push(Piece { coef: coef.clone(), form: f, power: -power });
        }
    }
}

fn integral(r: &BigRational, what: &str) -> Result<i32> {
    if !r.is_integer() {
        return Err(Error::NotProper(format!("{} = {} is not an integer", what, fmt_rational(r))));
    }
    r.to_integer()
        .to_i32()
        .ok_or_else(|| Error::NotProper(format!("{} out of range", what)))
}

/// Classical term ratio: `constant * prod num / prod den` of linear forms in `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalRatio {
    pub constant: BigRational,
    pub num: Vec<LinForm>,
    pub den: Vec<LinForm>,
}

impl ClassicalRatio {
    pub fn eval(&self, n: &BigRational, k: &BigRational) -> Option<BigRational> {
        let mut r = self.constant.clone();
        for f in &self.num {
            r *= f.eval(n, k);
        }
        for f in &self.den {
            let d = f.eval(n, k);
            if d.is_zero() {
                return None;
            }
            r /= d;
        }
        Some(r)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    N,
    K,
}

impl QProperTerm {
    pub fn one() -> Self {
        QProperTerm {
            sign_n: 0,
            sign_k: 0,
            rate_n: BigRational::one(),
            rate_k: BigRational::one(),
            scale: BigRational::one(),
            qpower: QuadForm::zero(),
            factors: Vec::new(),
        }
    }

    pub fn with_factor(mut self, f: PochFactor) -> Self {
        self.factors.push(f);
        self
    }

    /// Smallest root scale making every q-exponent an integer power of `t`.
    pub fn root_scale(&self) -> RootScale {
        let q = &self.qpower;
        let mut all: Vec<BigRational> = vec![q.nn.clone(), q.nk.clone(), q.kk.clone(), q.n.clone(), q.k.clone(), q.c.clone()];
        for f in &self.factors {
            all.extend([f.u.clone(), f.v.clone(), f.w.clone(), f.s.clone()]);
        }
        RootScale::for_rationals(all.iter())
    }

    /// Binomial pieces of the shift quotient in direction `dir`, plus the
    /// monomial part `(coef, q-exponent form)`.
    fn shift_pieces(&self, dir: Direction) -> Result<(BigRational, LinForm, Vec<Piece>)> {
        let q = &self.qpower;
        let two = BigRational::from_integer(2.into());
        let (coef, mono) = match dir {
            Direction::N => (
                rat_pow(&BigRational::from_integer((-1).into()), (self.sign_n.rem_euclid(2)) as i32) * &self.rate_n,
                LinForm { n: &two * &q.nn, k: q.nk.clone(), c: &q.nn + &q.n },
            ),
            Direction::K => (
                rat_pow(&BigRational::from_integer((-1).into()), (self.sign_k.rem_euclid(2)) as i32) * &self.rate_k,
                LinForm { n: q.nk.clone(), k: &two * &q.kk, c: &q.kk + &q.k },
            ),
        };
        let mut pieces = Vec::new();
        for f in &self.factors {
            let constant_arg = f.u.is_zero() && f.v.is_zero();
            if f.s.is_negative() || (f.s.is_zero() && !constant_arg) {
                return Err(Error::NotProper("Pochhammer base exponent must be positive".into()));
            }
            let (inc, dlen) = match dir {
                Direction::N => (&f.u, f.mu),
                Direction::K => (&f.v, f.nu),
            };
            let jr = if inc.is_zero() { BigRational::zero() } else { inc / &f.s };
            if !jr.is_integer() {
                return Err(Error::NotProper(format!(
                    "argument increment {} is not a multiple of the base {}",
                    fmt_rational(inc),
                    fmt_rational(&f.s)
                )));
            }
            let j = jr.to_integer().to_i64().ok_or_else(|| Error::NotProper("shift too large".into()))?;
            let s = &f.s;
            let mu = BigRational::from_integer(f.mu.into());
            let nu = BigRational::from_integer(f.nu.into());
            let lam = BigRational::from_integer(f.lambda.into());
            let top = LinForm { n: &f.u + s * &mu, k: &f.v + s * &nu, c: &f.w + s * &lam };
            let x = LinForm { n: f.u.clone(), k: f.v.clone(), c: f.w.clone() };
            poch_pieces(&f.coef, &top, s, dlen + j, f.power, &mut pieces);
            poch_pieces(&f.coef, &x, s, j, -f.power, &mut pieces);
        }
        Ok((coef, mono, pieces))
    }

    fn to_exps(form: &LinForm, l: RootScale) -> Result<Exps> {
        let lr = BigRational::from_integer(BigInt::from(l.l()));
        Ok(Exps::new(
            integral(&(&form.c * &lr), "t-exponent")?,
            integral(&form.n, "X-exponent")?,
            integral(&form.k, "K-exponent")?,
        ))
    }

    /// Shift quotient as a product of binomials in `(t, X, K)` under scale `l`.
    pub fn shift_quotient_product(&self, dir: Direction, l: RootScale) -> Result<ProductForm> {
        let (coef, mono, pieces) = self.shift_pieces(dir)?;
        let mut p = ProductForm::monomial(coef, Self::to_exps(&mono, l)?)?;
        for pc in pieces {
            let e = Self::to_exps(&pc.form, l)?;
            p.mul_linear(&pc.coef, e, pc.power)
                .map_err(|_| Error::NotProper("shift quotient has a vanishing factor".into()))?;
        }
        Ok(p)
    }

    pub fn shift_quotient_n(&self, l: RootScale) -> Result<RationalFunction> {
        Ok(self.shift_quotient_product(Direction::N, l)?.to_rf())
    }

    pub fn shift_quotient_k(&self, l: RootScale) -> Result<RationalFunction> {
        Ok(self.shift_quotient_product(Direction::K, l)?.to_rf())
    }

    /// Exact value at `(n, k)` as a product over binomials in `t`;
    /// `None` when a numerator factor vanishes.
    pub fn eval_symbolic(&self, n: i64, k: i64, l: RootScale) -> Result<Option<ProductForm>> {
        let lr = BigRational::from_integer(BigInt::from(l.l()));
        let sign = (self.sign_n * n + self.sign_k * k).rem_euclid(2);
        let mut coef = self.scale.clone();
        if sign == 1 {
            coef = -coef;
        }
        coef *= rat_pow(&self.rate_n, n as i32) * rat_pow(&self.rate_k, k as i32);
        if coef.is_zero() {
            return Ok(None);
        }
        let te = integral(&(self.qpower.eval(n, k) * &lr), "t-exponent")?;
        let mut p = ProductForm::monomial(coef, Exps::new(te, 0, 0))?;
        let nr = BigRational::from_integer(n.into());
        let kr = BigRational::from_integer(k.into());
        for f in &self.factors {
            let x = LinForm { n: f.u.clone(), k: f.v.clone(), c: f.w.clone() };
            let x0 = LinForm { n: BigRational::zero(), k: BigRational::zero(), c: x.eval(&nr, &kr) };
            let mut pieces = Vec::new();
            poch_pieces(&f.coef, &x0, &f.s, f.length(n, k), f.power, &mut pieces);
            for pc in pieces {
                let e = integral(&(&pc.form.c * &lr), "t-exponent")?;
                if p.mul_linear(&pc.coef, Exps::new(e, 0, 0), pc.power).is_err() {
                    if pc.power > 0 {
                        return Ok(None);
                    }
                    return Err(Error::DomainError("term has a pole".into()));
                }
            }
        }
        Ok(Some(p))
    }

    /// Numeric value at `(n, k)` for real `q > 0`.
    pub fn term_eval(&self, n: i64, k: i64, q: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat> {
        let l = self.root_scale();
        let bits = ctx.bits() + 16;
        let q = q.with_prec(bits);
        if q.signum() <= 0 {
            return Err(Error::DomainError("term evaluation needs q > 0".into()));
        }
        let t = if l.l() == 1 { q.clone() } else { q.nth_root(l.l())? };
        let lr = BigRational::from_integer(BigInt::from(l.l()));
        let one = BigFloat::one(bits);
        let sign = (self.sign_n * n + self.sign_k * k).rem_euclid(2);
        let mut v = BigFloat::from_rational(&self.scale, bits);
        if sign == 1 {
            v = v.neg();
        }
        v = v
            .mul(&BigFloat::from_rational(&self.rate_n, bits).powi(n))
            .mul(&BigFloat::from_rational(&self.rate_k, bits).powi(k));
        let te = integral(&(self.qpower.eval(n, k) * &lr), "t-exponent")?;
        v = v.mul(&t.powi(te as i64));
        let nr = BigRational::from_integer(n.into());
        let kr = BigRational::from_integer(k.into());
        for f in &self.factors {
            let x = &f.u * &nr + &f.v * &kr + &f.w;
            let e0 = integral(&(x * &lr), "t-exponent")? as i64;
            let step = integral(&(&f.s * &lr), "t-exponent")? as i64;
            let c = BigFloat::from_rational(&f.coef, bits);
            let m = f.length(n, k);
            let mut prod = one.clone();
            if m >= 0 {
                let mut a = c.mul(&t.powi(e0));
                let ts = t.powi(step);
                for _ in 0..m {
                    prod = prod.mul(&one.sub(&a));
                    a = a.mul(&ts);
                }
            } else {
                let ts = t.powi(-step);
                let mut a = c.mul(&t.powi(e0 - step));
                for _ in 0..(-m) {
                    prod = prod.mul(&one.sub(&a));
                    a = a.mul(&ts);
                }
                prod = prod.recip()?;
            }
            if f.power >= 0 {
                v = v.mul(&prod.powi(f.power as i64));
            } else {
                if prod.is_zero() {
                    return Err(Error::DomainError("term has a pole".into()));
                }
                v = v.div(&prod.powi(-f.power as i64))?;
            }
        }
        Ok(v.with_prec(ctx.bits()))
    }

    /// The `q -> 1` limit of the shift quotient in direction `dir`.
    pub fn classical_limit_ratio(&self, dir: Direction) -> Result<ClassicalRatio> {
        let (coef, _, pieces) = self.shift_pieces(dir)?;
        let mut balance = 0i64;
        let mut out = ClassicalRatio { constant: coef, num: Vec::new(), den: Vec::new() };
        for pc in pieces {
            if pc.coef.is_one() {
                balance += pc.power as i64;
                let list = if pc.power > 0 { &mut out.num } else { &mut out.den };
                for _ in 0..pc.power.unsigned_abs() {
                    list.push(pc.form.clone());
                }
            } else {
                let v = BigRational::one() - &pc.coef;
                out.constant *= rat_pow(&v, pc.power);
            }
        }
        if balance != 0 {
            return Err(Error::UnbalancedLimit(format!(
                "{} net factors of (1 - q) per shift",
                balance
            )));
        }
        // cancel identical forms
        let mut i = 0;
        while i < out.num.len() {
            if let Some(j) = out.den.iter().position(|d| *d == out.num[i]) {
                out.den.remove(j);
                out.num.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(out)
    }
}

impl Default for QProperTerm {
    fn default() -> Self {
        Self::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_rf, rat, rf_equal};

    fn quarter(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> QProperTerm {
        let mut f = QProperTerm::one();
        f.qpower.k = rat(1, 1);
        f.with_factor(PochFactor::simple(0, 0, a, (0, 1, 0), 1))
            .with_factor(PochFactor::simple(0, 0, b, (0, 1, 0), 1))
            .with_factor(PochFactor::simple(1, 0, c, (0, 1, 0), -1))
            .with_factor(PochFactor::simple(1, 0, d, (0, 1, 0), -1))
    }

    #[test]
    fn quadratic_power_quotient() {
        let mut f = QProperTerm::one();
        f.qpower.nn = rat(1, 1);
        let r = f.shift_quotient_n(RootScale::new(1)).unwrap();
        assert_eq!(r.to_string(), "t*X^2");
        let mut g = QProperTerm::one();
        g.sign_n = 1;
        g.qpower.nn = rat(-1, 2);
        g.qpower.n = rat(1, 2);
        let r = g.shift_quotient_n(RootScale::new(1)).unwrap();
        assert_eq!(r.to_string(), "-X^-1");
    }

    #[test]
    fn k_quotient_of_quarter_family() {
        let f = quarter(rat(1, 2), rat(1, 2), rat(2, 1), rat(2, 1));
        let l = f.root_scale();
        assert_eq!(l.l(), 2);
        let r = f.shift_quotient_k(l).unwrap();
        // q (1 - q^{1/2} K)^2 / (1 - q^2 X K)^2 with q = t^2
        let want = parse_rf("(t^2 - 2*t^3*K + t^4*K^2)/(1 - 2*t^4*X*K + t^8*X^2*K^2)").unwrap();
        assert!(rf_equal(&r, &want), "{}", r);
    }

    #[test]
    fn non_multiple_increment_is_not_proper() {
        let f = QProperTerm::one().with_factor(PochFactor {
            coef: rat(1, 1),
            u: rat(1, 1),
            v: rat(0, 1),
            w: rat(0, 1),
            s: rat(2, 1),
            mu: 1,
            nu: 0,
            lambda: 0,
            power: 1,
        });
        assert!(matches!(f.shift_quotient_n(RootScale::new(1)), Err(Error::NotProper(_))));
    }

    #[test]
    fn unbalanced_limit_detected() {
        let f = QProperTerm::one().with_factor(PochFactor::simple(0, 0, rat(1, 1), (0, 1, 0), -1));
        assert!(matches!(f.classical_limit_ratio(Direction::K), Err(Error::UnbalancedLimit(_))));
        let g = quarter(rat(1, 2), rat(1, 2), rat(2, 1), rat(2, 1));
        let r = g.classical_limit_ratio(Direction::K).unwrap();
        // (1/2 + k)^2 / (n + k + 2)^2
        let v = r.eval(&rat(0, 1), &rat(0, 1)).unwrap();
        assert_eq!(v, rat(1, 16));
    }

    #[test]
    fn empty_term_is_one() {
        let ctx = PrecisionContext::new(20);
        let q = BigFloat::from_int(2, ctx.bits());
        let f = quarter(rat(1, 2), rat(1, 3), rat(2, 1), rat(5, 2));
        assert_eq!(f.term_eval(0, 0, &q, &ctx).unwrap().to_decimal(5), "1.0000e0");
        assert!(f.shift_quotient_k(f.root_scale()).is_ok());
    }
}
