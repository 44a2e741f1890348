//! Named constants with embedded 130-digit literals, each audited against two
//! independent in-repo algorithms, and monomial expressions over them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bigfloat::{ln2, parse_decimal_rational, BigFloat};
use crate::algebra::fmt_rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstId {
    Pi,
    Catalan,
    Log2,
    Sqrt2,
    Sqrt3,
    Cbrt2,
    Root4Of2,
    Gamma13,
    Gamma14,
    Gamma16,
}

pub struct NamedConstant {
    pub id: ConstId,
    pub name: &'static str,
    pub literal: &'static str,
    pub provenance: &'static str,
    pub first: &'static str,
    pub second: &'static str,
}

const LITERAL_DIGITS: u32 = 128;

static TABLE: [NamedConstant; 10] = [
    NamedConstant {
        id: ConstId::Pi,
        name: "pi",
        literal: "3.141592653589793238462643383279502884197169399375105820974944592307816406286208998628034825342117067982148086513282306647093844610",
        provenance: "mpmath 1.3 at 140 digits",
        first: "Gauss-Legendre AGM iteration",
        second: "Machin formula 16 atan(1/5) - 4 atan(1/239)",
    },
    NamedConstant {
        id: ConstId::Catalan,
        name: "catalan",
        literal: "0.9159655941772190150546035149323841107741493742816721342664981196217630197762547694793565129261151062485744226191961995790358988033",
        provenance: "mpmath 1.3 at 140 digits",
        first: "Ramanujan: (pi/8) log(2+sqrt 3) + (3/8) sum (n!)^2/((2n)!(2n+1)^2)",
        second: "Cohen-Villegas-Zagier acceleration of sum (-1)^k/(2k+1)^2",
    },
    NamedConstant {
        id: ConstId::Log2,
        name: "log2",
        literal: "0.6931471805599453094172321214581765680755001343602552541206800094933936219696947156058633269964186875420014810205706857336855202358",
        provenance: "mpmath 1.3 at 140 digits",
        first: "sum 1/(k 2^k)",
        second: "18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749)",
    },
    NamedConstant {
        id: ConstId::Sqrt2,
        name: "sqrt2",
        literal: "1.414213562373095048801688724209698078569671875376948073176679737990732478462107038850387534327641572735013846230912297024924836056",
        provenance: "mpmath 1.3 at 140 digits",
        first: "integer square root",
        second: "Newton iteration",
    },
    NamedConstant {
        id: ConstId::Sqrt3,
        name: "sqrt3",
        literal: "1.732050807568877293527446341505872366942805253810380628055806979451933016908800037081146186757248575675626141415406703029969945095",
        provenance: "mpmath 1.3 at 140 digits",
        first: "integer square root",
        second: "Newton iteration",
    },
    NamedConstant {
        id: ConstId::Cbrt2,
        name: "cbrt2",
        literal: "1.259921049894873164767210607278228350570251464701507980081975112155299676513959483729396562436255094154310256035615665259399024041",
        provenance: "mpmath 1.3 at 140 digits",
        first: "integer cube root",
        second: "Newton iteration",
    },
    NamedConstant {
        id: ConstId::Root4Of2,
        name: "root4_2",
        literal: "1.189207115002721066717499970560475915292972092463817413019002224719466668226917159870781344538137673716037394774769213186063726362",
        provenance: "mpmath 1.3 at 140 digits",
        first: "integer fourth root",
        second: "Newton iteration",
    },
    NamedConstant {
        id: ConstId::Gamma13,
        name: "gamma13",
        literal: "2.678938534707747633655692940974677644128689377957301100950428327590417610167743819540982889041188789419159049200072263335719084570",
        provenance: "mpmath 1.3 at 140 digits",
        first: "Gamma(1/3)^3 = 2^(4/3) pi^2 / (3^(1/4) AGM(1, (sqrt 6 + sqrt 2)/4))",
        second: "Stirling series after upward recurrence",
    },
    NamedConstant {
        id: ConstId::Gamma14,
        name: "gamma14",
        literal: "3.625609908221908311930685155867672002995167682880065467433377999569919243538729121618360136723384300361471751392420719965891524094",
        provenance: "mpmath 1.3 at 140 digits",
        first: "Gamma(1/4)^2 = (2 pi)^(3/2) / AGM(1, sqrt 2)",
        second: "Stirling series after upward recurrence",
    },
    NamedConstant {
        id: ConstId::Gamma16,
        name: "gamma16",
        literal: "5.566316001780235204250096895207726111398799114872853461616744626322907502817802305503389653621021754659819633338468834777657692880",
        provenance: "mpmath 1.3 at 140 digits",
        first: "Gamma(1/6) = 2^(-1/3) sqrt 3 Gamma(1/3)^2 / sqrt pi",
        second: "Stirling series after upward recurrence",
    },
];

fn agm(a: &BigFloat, b: &BigFloat) -> BigFloat {
    let mut a = a.clone();
    let mut b = b.clone();
    let tol = BigFloat::one(a.prec()).mul_pow2(-(a.prec() as i64) + 4);
    loop {
        let an = a.add(&b).mul_pow2(-1);
        let bn = a.mul(&b).sqrt().unwrap();
        let done = an.sub(&bn).abs() <= tol.mul(&an);
        a = an;
        b = bn;
        if done {
            return a;
        }
    }
}

fn pi_agm(prec: u32) -> BigFloat {
    let wp = prec + 32;
    let one = BigFloat::one(wp);
    let mut a = one.clone();
    let mut b = BigFloat::from_int(2, wp).sqrt().unwrap().recip().unwrap();
    let mut t = one.mul_pow2(-2);
    let mut p = one.clone();
    let tol = one.mul_pow2(-(wp as i64) + 8);
    loop {
        let an = a.add(&b).mul_pow2(-1);
        let bn = a.mul(&b).sqrt().unwrap();
        let d = a.sub(&an);
        t = t.sub(&p.mul(&d).mul(&d));
        p = p.mul_int(2);
        let done = an.sub(&bn).abs() <= tol;
        a = an;
        b = bn;
        if done {
            break;
        }
    }
    let s = a.add(&b);
    s.mul(&s).div(&t.mul_int(4)).unwrap().with_prec(prec)
}

fn atan_inv(n: i64, prec: u32) -> BigFloat {
    let wp = prec + 16;
    let nn = BigFloat::from_int(n, wp);
    let n2 = nn.mul(&nn);
    let eps = BigFloat::one(wp).mul_pow2(-(wp as i64) - 4);
    let mut pw = nn.recip().unwrap();
    let mut sum = pw.clone();
    let mut k = 1i64;
    loop {
        pw = pw.div(&n2).unwrap().neg();
        let t = pw.div_int(2 * k + 1);
        sum = sum.add(&t);
        if t.abs() < eps {
            break;
        }
        k += 1;
    }
    sum.with_prec(prec)
}

fn pi_machin(prec: u32) -> BigFloat {
    let wp = prec + 16;
    atan_inv(5, wp)
        .mul_int(16)
        .sub(&atan_inv(239, wp).mul_int(4))
        .with_prec(prec)
}

fn catalan_ramanujan(prec: u32) -> BigFloat {
    let wp = prec + 32;
    let one = BigFloat::one(wp);
    let eps = one.mul_pow2(-(wp as i64) - 4);
    // a_n = (n!)^2/(2n)!, a_{n+1} = a_n (n+1)/(2(2n+1))
    let mut a = one.clone();
    let mut sum = BigFloat::zero(wp);
    let mut n = 0i64;
    loop {
        let t = a.div_int((2 * n + 1) * (2 * n + 1));
        sum = sum.add(&t);
        if t < eps {
            break;
        }
        a = a.mul_int(n + 1).div_int(2 * (2 * n + 1));
        n += 1;
    }
    let sqrt3 = BigFloat::from_int(3, wp).sqrt().unwrap();
    let lg = BigFloat::from_int(2, wp).add(&sqrt3).ln().unwrap();
    pi_agm(wp)
        .mul(&lg)
        .mul_pow2(-3)
        .add(&sum.mul_int(3).mul_pow2(-3))
        .with_prec(prec)
}

fn catalan_cvz(prec: u32) -> BigFloat {
    let wp = prec + 32;
    let n = (prec as f64 * std::f64::consts::LN_2 / (3.0 + 8f64.sqrt()).ln()).ceil() as i64 + 4;
    let one = BigFloat::one(wp);
    let base = BigFloat::from_int(3, wp).add(&BigFloat::from_int(8, wp).sqrt().unwrap());
    let d0 = base.powi(n);
    let d = d0.add(&d0.recip().unwrap()).mul_pow2(-1);
    let mut b = one.neg();
    let mut c = d.neg();
    let mut s = BigFloat::zero(wp);
    for k in 0..n {
        c = b.sub(&c);
        s = s.add(&c.div_int((2 * k + 1) * (2 * k + 1)));
        // b <- (k+n)(k-n) b / ((k+1/2)(k+1))
        b = b.mul_int((k + n) * (k - n) * 2).div_int((2 * k + 1) * (k + 1));
    }
    s.div(&d).unwrap().with_prec(prec)
}

fn log2_series(prec: u32) -> BigFloat {
    let wp = prec + 16;
    let eps = BigFloat::one(wp).mul_pow2(-(wp as i64) - 4);
    let mut pw = BigFloat::one(wp);
    let mut sum = BigFloat::zero(wp);
    let mut k = 1i64;
    loop {
        pw = pw.mul_pow2(-1);
        let t = pw.div_int(k);
        sum = sum.add(&t);
        if t < eps {
            break;
        }
        k += 1;
    }
    sum.with_prec(prec)
}

fn newton_root(a: i64, n: i64, prec: u32) -> BigFloat {
    let wp = prec + 16;
    let af = BigFloat::from_int(a, wp);
    let seed = (a as f64).powf(1.0 / n as f64);
    let mut x = BigFloat::parse(&format!("{:.15e}", seed), wp).unwrap();
    let tol = BigFloat::one(wp).mul_pow2(-(wp as i64) + 6);
    loop {
        let xn = x.mul_int(n - 1).add(&af.div(&x.powi(n - 1)).unwrap()).div_int(n);
        let done = xn.sub(&x).abs() <= tol;
        x = xn;
        if done {
            return x.with_prec(prec);
        }
    }
}

fn bernoulli_even(count: usize) -> Vec<BigRational> {
    // B_0..B_{2 count}
    let m_max = 2 * count;
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=m_max {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, k)
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Gamma(p/q) for 0 < p/q < 1 by Stirling's series at p/q + N.
fn gamma_stirling(p: i64, q: i64, prec: u32) -> BigFloat {
    let wp = prec + 48;
    let digits = prec as f64 / std::f64::consts::LOG2_10;
    let n_shift = (digits * 1.1) as i64 + 20;
    let terms = (digits * 0.5) as usize + 10;
    let x = BigFloat::from_int(p, wp).div_int(q);
    let z = x.add(&BigFloat::from_int(n_shift, wp));
    let bern = bernoulli_even(terms);
    let half = BigFloat::one(wp).mul_pow2(-1);
    let two_pi = pi_machin(wp).mul_int(2);
    let mut lg = z
        .sub(&half)
        .mul(&z.ln().unwrap())
        .sub(&z)
        .add(&two_pi.ln().unwrap().mul_pow2(-1));
    let z2 = z.mul(&z);
    let mut zpow = z.clone();
    for k in 1..=terms {
        let b = BigFloat::from_rational(&bern[2 * k], wp);
        let d = (2 * k * (2 * k - 1)) as i64;
        lg = lg.add(&b.div(&zpow.mul_int(d)).unwrap());
        zpow = zpow.mul(&z2);
    }
    let mut g = lg.exp();
    for i in 0..n_shift {
        g = g.div(&x.add(&BigFloat::from_int(i, wp))).unwrap();
    }
    g.with_prec(prec)
}

fn gamma14_agm(prec: u32) -> BigFloat {
    let wp = prec + 32;
    let pi = pi_agm(wp);
    let s2 = BigFloat::from_int(2, wp).sqrt().unwrap();
    let m = agm(&BigFloat::one(wp), &s2);
    pi.mul_int(2).powi(3).sqrt().unwrap().div(&m).unwrap().sqrt().unwrap().with_prec(prec)
}

fn gamma13_agm(prec: u32) -> BigFloat {
    let wp = prec + 32;
    let pi = pi_agm(wp);
    let s6 = BigFloat::from_int(6, wp).sqrt().unwrap();
    let s2 = BigFloat::from_int(2, wp).sqrt().unwrap();
    let m = agm(&BigFloat::one(wp), &s6.add(&s2).mul_pow2(-2));
    let two43 = BigFloat::from_int(16, wp).nth_root(3).unwrap();
    let three14 = BigFloat::from_int(3, wp).nth_root(4).unwrap();
    let cube = two43.mul(&pi).mul(&pi).div(&three14.mul(&m)).unwrap();
    cube.nth_root(3).unwrap().with_prec(prec)
}

fn gamma16_dup(prec: u32) -> BigFloat {
    let wp = prec + 32;
    let g3 = gamma13_agm(wp);
    let s3 = BigFloat::from_int(3, wp).sqrt().unwrap();
    let c2 = BigFloat::from_int(2, wp).nth_root(3).unwrap();
    let sp = pi_agm(wp).sqrt().unwrap();
    s3.mul(&g3).mul(&g3).div(&c2.mul(&sp)).unwrap().with_prec(prec)
}

fn compute(id: ConstId, which: u8, prec: u32) -> BigFloat {
    use ConstId::*;
    match (id, which) {
        (Pi, 0) => pi_agm(prec),
        (Pi, _) => pi_machin(prec),
        (Catalan, 0) => catalan_ramanujan(prec),
        (Catalan, _) => catalan_cvz(prec),
        (Log2, 0) => log2_series(prec),
        (Log2, _) => ln2(prec),
        (Sqrt2, 0) => BigFloat::from_int(2, prec).sqrt().unwrap(),
        (Sqrt2, _) => newton_root(2, 2, prec),
        (Sqrt3, 0) => BigFloat::from_int(3, prec).sqrt().unwrap(),
        (Sqrt3, _) => newton_root(3, 2, prec),
        (Cbrt2, 0) => BigFloat::from_int(2, prec).nth_root(3).unwrap(),
        (Cbrt2, _) => newton_root(2, 3, prec),
        (Root4Of2, 0) => BigFloat::from_int(2, prec).nth_root(4).unwrap(),
        (Root4Of2, _) => newton_root(2, 4, prec),
        (Gamma13, 0) => gamma13_agm(prec),
        (Gamma13, _) => gamma_stirling(1, 3, prec),
        (Gamma14, 0) => gamma14_agm(prec),
        (Gamma14, _) => gamma_stirling(1, 4, prec),
        (Gamma16, 0) => gamma16_dup(prec),
        (Gamma16, _) => gamma_stirling(1, 6, prec),
    }
}

/// Result of checking one constant.
#[derive(Clone, Debug)]
pub struct AuditLine {
    pub name: &'static str,
    /// Decimal digits on which literal and both algorithms agree.
    pub agreement_digits: f64,
    pub passed: bool,
}

pub struct ConstantsCatalog {
    audit: Vec<AuditLine>,
}

static CATALOG: OnceLock<ConstantsCatalog> = OnceLock::new();

fn agreement(a: &BigFloat, b: &BigFloat) -> f64 {
    let d = a.sub(b).abs();
    if d.is_zero() {
        return f64::INFINITY;
    }
    a.log10_abs() - d.log10_abs()
}

impl ConstantsCatalog {
    pub const AUDIT_DIGITS: f64 = 100.0;

    /// The shared catalog; the audit runs on first use.
    pub fn get() -> &'static ConstantsCatalog {
        CATALOG.get_or_init(|| {
            let bits = (110.0 * std::f64::consts::LOG2_10) as u32;
            let audit = TABLE
                .iter()
                .map(|c| {
                    let lit = BigFloat::parse(c.literal, bits + 64).unwrap().with_prec(bits);
                    let a = compute(c.id, 0, bits);
                    let b = compute(c.id, 1, bits);
                    let agree = agreement(&lit, &a).min(agreement(&lit, &b)).min(agreement(&a, &b));
                    AuditLine {
                        name: c.name,
                        agreement_digits: agree,
                        passed: agree >= Self::AUDIT_DIGITS,
                    }
                })
                .collect();
            ConstantsCatalog { audit }
        })
    }

    pub fn entries() -> &'static [NamedConstant] {
        &TABLE
    }

    pub fn audit(&self) -> &[AuditLine] {
        &self.audit
    }

    pub fn all_passed(&self) -> bool {
        self.audit.iter().all(|a| a.passed)
    }

    pub fn lookup(name: &str) -> Option<&'static NamedConstant> {
        TABLE.iter().find(|c| c.name == name)
    }

    /// Value with `bits` of precision: the literal when it suffices,
    /// otherwise the first algorithm.
    pub fn value(&self, id: ConstId, bits: u32) -> Result<BigFloat> {
        let c = TABLE.iter().find(|c| c.id == id).unwrap();
        let line = self.audit.iter().find(|a| a.name == c.name).unwrap();
        if !line.passed {
            return Err(Error::DomainError(format!("constant {} failed its audit", c.name)));
        }
        if (bits as f64) < (LITERAL_DIGITS as f64 - 4.0) * std::f64::consts::LOG2_10 {
            Ok(BigFloat::parse(c.literal, bits + 64)?.with_prec(bits))
        } else {
            Ok(compute(id, 0, bits))
        }
    }
}

/// Factor bases of a constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConstBase {
    Int(u32),
    Named(ConstId),
}

/// `coef * prod base^exp` with rational exponents, e.g.
/// `-1 * 2^(-14/3) * 3^(1/2) * pi^(-3) * gamma13^6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstExpr {
    pub coef: BigRational,
    pub factors: BTreeMap<ConstBase, BigRational>,
}

fn base_name(b: &ConstBase) -> String {
    match b {
        ConstBase::Int(n) => n.to_string(),
        ConstBase::Named(id) => TABLE.iter().find(|c| c.id == *id).unwrap().name.to_string(),
    }
}

impl ConstExpr {
    pub fn rational(c: BigRational) -> Self {
        ConstExpr { coef: c, factors: BTreeMap::new() }
    }

    pub fn times(mut self, b: ConstBase, e: BigRational) -> Self {
        let mut b = b;
        let mut e = e;
        if let ConstBase::Int(n) = b {
            // pull integral powers of integers into the coefficient
            let whole = e.floor();
            let wi = whole.to_integer().to_i32().unwrap();
            self.coef *= crate::algebra::rat_pow(&BigRational::from_integer(BigInt::from(n)), wi);
            e -= whole;
            b = ConstBase::Int(n);
            if e.is_zero() {
                return self;
            }
        }
        let slot = self.factors.entry(b.clone()).or_insert_with(BigRational::zero);
        *slot += e;
        if slot.is_zero() {
            self.factors.remove(&b);
        }
        self
    }

    pub fn named(self, id: ConstId, e: i64) -> Self {
        self.times(ConstBase::Named(id), BigRational::from_integer(BigInt::from(e)))
    }

    pub fn int_root(self, n: u32, num: i64, den: i64) -> Self {
        self.times(ConstBase::Int(n), BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn eval(&self, bits: u32) -> Result<BigFloat> {
        let cat = ConstantsCatalog::get();
        let wp = bits + 32;
        let mut v = BigFloat::from_rational(&self.coef, wp);
        for (b, e) in &self.factors {
            let f = match b {
                ConstBase::Named(id) => {
                    let x = cat.value(*id, wp)?;
                    x.pow_rational(e)?
                }
                ConstBase::Int(n) => {
                    let den = e.denom().to_i64().unwrap();
                    let num = e.numer().to_i64().unwrap();
                    let root = match (n, den) {
                        (2, 2) => Some(cat.value(ConstId::Sqrt2, wp)?),
                        (3, 2) => Some(cat.value(ConstId::Sqrt3, wp)?),
                        (2, 3) => Some(cat.value(ConstId::Cbrt2, wp)?),
                        (2, 4) => Some(cat.value(ConstId::Root4Of2, wp)?),
                        _ => None,
                    };
                    match root {
                        Some(r) => r.powi(num),
                        None => BigFloat::from_int(*n as i64, wp).pow_rational(e)?,
                    }
                }
            };
            v = v.mul(&f);
        }
        Ok(v.with_prec(bits))
    }

    pub fn to_latex(&self) -> String {
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        let c = &self.coef;
        let sign = if c.is_negative() { "-" } else { "" };
        let cn = c.numer().abs();
        let cd = c.denom().clone();
        if !cn.is_one() {
            num.push(cn.to_string());
        }
        if !cd.is_one() {
            den.push(cd.to_string());
        }
        for (b, e) in &self.factors {
            let base = match b {
                ConstBase::Int(n) => n.to_string(),
                ConstBase::Named(ConstId::Pi) => "\\pi".into(),
                ConstBase::Named(ConstId::Catalan) => "G".into(),
                ConstBase::Named(ConstId::Log2) => "\\log 2".into(),
                ConstBase::Named(ConstId::Sqrt2) => "\\sqrt{2}".into(),
                ConstBase::Named(ConstId::Sqrt3) => "\\sqrt{3}".into(),
                ConstBase::Named(ConstId::Cbrt2) => "2^{1/3}".into(),
                ConstBase::Named(ConstId::Root4Of2) => "2^{1/4}".into(),
                ConstBase::Named(ConstId::Gamma13) => "\\Gamma(1/3)".into(),
                ConstBase::Named(ConstId::Gamma14) => "\\Gamma(1/4)".into(),
                ConstBase::Named(ConstId::Gamma16) => "\\Gamma(1/6)".into(),
            };
            let ea = e.abs();
            let s = if ea.is_one() {
                base
            } else if matches!(b, ConstBase::Int(_)) && ea == BigRational::new(1.into(), 2.into()) {
                format!("\\sqrt{{{}}}", base)
            } else if ea.is_integer() {
                if let Some(rest) = base.strip_prefix("\\Gamma") {
                    format!("\\Gamma^{{{}}}{}", ea, rest)
                } else {
                    format!("{}^{{{}}}", base, ea)
                }
            } else {
                format!("{}^{{{}}}", base, fmt_rational(&ea))
            };
            if e.is_negative() {
                den.push(s);
            } else {
                num.push(s);
            }
        }
        let n = if num.is_empty() { "1".to_string() } else { num.join(" ") };
        if den.is_empty() {
            format!("{}{}", sign, n)
        } else {
            format!("{}\\frac{{{}}}{{{}}}", sign, n, den.join(" "))
        }
    }
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.coef))?;
        for (b, e) in &self.factors {
            if e.is_one() {
                write!(f, "*{}", base_name(b))?;
            } else {
                write!(f, "*{}^({})", base_name(b), fmt_rational(e))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for ConstExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('*');
        let coef = parse_decimal_rational(parts.next().unwrap_or(""))?;
        let mut e = ConstExpr::rational(coef);
        for p in parts {
            let (name, exp) = match p.split_once('^') {
                Some((n, x)) => {
                    let x = x.trim_start_matches('(').trim_end_matches(')');
                    (n, parse_decimal_rational(x)?)
                }
                None => (p, BigRational::one()),
            };
            let base = if let Ok(n) = name.parse::<u32>() {
                ConstBase::Int(n)
            } else {
                let c = ConstantsCatalog::lookup(name)
                    .ok_or_else(|| Error::Parse(format!("unknown constant {:?}", name)))?;
                ConstBase::Named(c.id)
            };
            e = e.times(base, exp);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn every_constant_passes_its_audit() {
        let c = ConstantsCatalog::get();
        for line in c.audit() {
            assert!(line.passed, "{} agreed to {} digits", line.name, line.agreement_digits);
        }
    }

    #[test]
    fn log2_two_ways() {
        let a = super::super::bigfloat::atanh_inv(3, 400).mul_int(2);
        let b = log2_series(400);
        assert!(agreement(&a, &b) > 110.0);
    }

    #[test]
    fn expression_text_round_trip() {
        let e = ConstExpr::rational(rat(-1, 1))
            .int_root(3, 1, 2)
            .named(ConstId::Gamma13, 6)
            .int_root(2, -14, 3)
            .named(ConstId::Pi, -3);
        let s = e.to_string();
        assert_eq!(s, "-1/32*2^(1/3)*3^(1/2)*pi^(-3)*gamma13^(6)");
        let back: ConstExpr = s.parse().unwrap();
        assert_eq!(back, e);
        let v = e.eval(300).unwrap();
        // -sqrt3 Gamma(1/3)^6 / (2^(14/3) pi^3)
        assert!(v.to_decimal(12).starts_with("-8.12981866378"), "{}", v.to_decimal(12));
    }
}
