//! Acceleration identities `prefactor * 3phi2[q^a, q^b, q; q^c, q^d | q; q] =
//! sum_n Gbar(n, 0)` built from certified q-WZ pairs.

pub mod catalog;
pub mod family;
mod latex;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use catalog::{catalog, catalog_lookup, CatalogEntry};
pub use family::{condition_exponent, degeneracy, family_instantiate, fmt_params, parse_params, Family, ALL_FAMILIES};

use crate::algebra::{fmt_rational, parse_poly, parse_rf, rf_equal, Exps, LaurentPoly, RationalFunction, RootScale, K, X};
use crate::error::{Error, Result};
use crate::qterm::{PochFactor, QProperTerm};
use crate::special::{parse_decimal_rational, ConstExpr, PhiArg, PhiSeriesSpec};
use crate::telescoper::{certify_wz, ekhad_normalize, zeilberger_first_order, Fbar, QWZPair, Recurrence, ZeilbergerConfig};

/// `prefactor(q) * 3phi2[q^a, q^b, q; q^c, q^d | q; q]`; the prefactor is a
/// polynomial in `t = q^(1/L)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lhs {
    pub prefactor: LaurentPoly,
    pub phi: PhiSeriesSpec,
}

/// `sum_n weight(t, q^n) * Fbar(n, 0)`, where `weight = prefactor * Rbar(X, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rhs {
    pub weight: RationalFunction,
    pub term: Fbar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub p1: LaurentPoly,
    pub p2: LaurentPoly,
    pub r: RationalFunction,
    pub rbar: RationalFunction,
    pub j: u32,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Provenance {
    pub tag: String,
    pub source: String,
    pub classical_target: Option<ConstExpr>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub family: Family,
    pub params: [BigRational; 4],
    pub scale: RootScale,
    pub lhs: Lhs,
    pub rhs: Rhs,
    /// The identity holds for `|q^e| < 1 < |q|` with this `e`.
    pub condition_exponent: BigRational,
    pub certificate: Certificate,
    pub provenance: Provenance,
}

fn qmono(c: i64, alpha: &BigRational, beta: i32, l: RootScale) -> Result<LaurentPoly> {
    let e = l
        .t_exp(alpha)
        .ok_or_else(|| Error::InvalidTerm(format!("q^{} is not a power of q^(1/{})", fmt_rational(alpha), l.l())))?;
    Ok(LaurentPoly::monomial(BigRational::from_integer(c.into()), Exps::new(e, beta, 0)))
}

/// Primitive integer form with positive leading coefficient and no monomial content.
fn primitive(p: &LaurentPoly) -> LaurentPoly {
    let m = p.min_exps();
    let mut q = p.mul_monomial(&BigRational::one(), &m.neg());
    let c = q.integer_content();
    if !c.is_zero() {
        q = q.scale(&c.recip());
    }
    if q.leading_coeff().is_negative() {
        q = q.neg();
    }
    q
}

fn closed_prefactor(family: Family, p: &[BigRational; 4], l: RootScale) -> Result<Option<LaurentPoly>> {
    let [a, b, c, d] = p;
    let one = BigRational::one();
    let ab = a + b;
    let cd = c + d;
    let f1 = qmono(1, &ab, 0, l)?.sub(&qmono(1, &cd, 0, l)?);
    let f2 = qmono(1, &(&ab + &one), 0, l)?.sub(&qmono(1, &cd, 0, l)?);
    Ok(match family {
        Family::Quarter => Some(f1.mul(&f2)),
        Family::NegQuarter => {
            let g = LaurentPoly::one().sub(&qmono(1, d, 0, l)?);
            Some(g.mul(&f1.neg()).mul(&f2.neg()))
        }
        _ => None,
    })
}

/// Whether the LHS prefactor of `family` at `params` vanishes identically.
pub fn prefactor_vanishes(family: Family, params: &[BigRational; 4]) -> bool {
    let l = RootScale::for_rationals(params.iter());
    matches!(closed_prefactor(family, params, l), Ok(Some(p)) if p.is_zero())
}

fn phi_spec(p: &[BigRational; 4]) -> PhiSeriesSpec {
    let qp = |e: &BigRational| PhiArg::q_power(e.clone());
    PhiSeriesSpec::new(
        vec![qp(&p[0]), qp(&p[1]), PhiArg::symbol()],
        vec![qp(&p[2]), qp(&p[3])],
        PhiArg::symbol(),
        PhiArg::symbol(),
    )
}

pub fn build_identity(family: Family, params: &[BigRational; 4]) -> Result<Identity> {
    build_identity_with(family, params, &ZeilbergerConfig::default())
}

/// Derive, normalize and certify the q-WZ pair of `family` at `params` and
/// assemble the identity.
pub fn build_identity_with(family: Family, params: &[BigRational; 4], cfg: &ZeilbergerConfig) -> Result<Identity> {
    let f = family_instantiate(family, params)?;
    let e = condition_exponent(params);
    if !e.is_negative() {
        return Err(Error::ConditionUnsatisfiable(format!(
            "a+b+1-c-d = {} must be negative",
            fmt_rational(&e)
        )));
    }
    let rec = zeilberger_first_order(&f, cfg)?;
    let pair = ekhad_normalize(&f, &rec, cfg)?;
    if pair.j > 0 {
        return Err(Error::DegenerateParameters(format!(
            "p2 vanishes on the index ray below n = {}",
            pair.j
        )));
    }
    let l = pair.scale;
    let r1 = pair.rbar.subs_var(K, &BigRational::one(), 0)?;
    let prefactor = match closed_prefactor(family, params, l)? {
        Some(p) => p,
        None => {
            let at1 = r1.subs_var(X, &BigRational::one(), 0)?;
            primitive(at1.den())
        }
    };
    if prefactor.is_zero() {
        return Err(Error::DegenerateParameters("the LHS prefactor vanishes".into()));
    }
    let weight = r1.mul(&RationalFunction::from_poly(prefactor.clone()));
    Ok(Identity {
        family,
        params: params.clone(),
        scale: l,
        lhs: Lhs { prefactor, phi: phi_spec(params) },
        rhs: Rhs { weight, term: pair.fbar },
        condition_exponent: e,
        certificate: Certificate {
            p1: rec.p1.clone(),
            p2: rec.p2.clone(),
            r: rec.r.clone(),
            rbar: pair.rbar,
            j: pair.j,
        },
        provenance: Provenance::default(),
    })
}

impl Identity {
    pub fn pair(&self) -> QWZPair {
        let c = &self.certificate;
        QWZPair {
            fbar: self.rhs.term.clone(),
            rbar: c.rbar.clone(),
            origin: Recurrence { p1: c.p1.clone(), p2: c.p2.clone(), r: c.r.clone(), scale: self.scale },
            j: c.j,
            scale: self.scale,
        }
    }

    /// Exact WZ residual of the certificate; zero for a valid identity.
    pub fn residual(&self) -> Result<RationalFunction> {
        certify_wz(&self.pair())
    }

    pub fn tag(&self) -> &str {
        &self.provenance.tag
    }

    /// Display label: the tag, or family and parameters.
    pub fn label(&self) -> String {
        if self.provenance.tag.is_empty() {
            format!("{}({})", self.family.flag(), fmt_params(&self.params))
        } else {
            self.provenance.tag.clone()
        }
    }

    pub fn condition_text(&self) -> String {
        format!("|q^({})| < 1 < |q|", fmt_rational(&self.condition_exponent))
    }

    /// Exact `weight(t, q^n) * Fbar(n, 0)` as a rational function of `t`.
    pub fn rhs_term_exact(&self, n: i64) -> Result<RationalFunction> {
        let l = self.scale;
        let w = self.rhs.weight.subs_var(X, &BigRational::one(), l.li() * n as i32)?;
        let base = self.rhs.term.base();
        let Some(pf) = base.eval_symbolic(n, 0, l)? else {
            return Ok(RationalFunction::zero());
        };
        let mut v = pf.to_rf();
        if let Fbar::Closure { p1, p2, j, .. } = &self.rhs.term {
            let (p1, p2) = (parse_poly(p1)?, parse_poly(p2)?);
            for i in (*j as i64)..n {
                let te = l.li() * i as i32;
                let a = RationalFunction::from_poly(p1.clone()).subs_var(X, &BigRational::one(), te)?;
                let b = RationalFunction::from_poly(p2.clone()).subs_var(X, &BigRational::one(), te)?;
                v = v.mul(&a).div(&b)?;
            }
        }
        Ok(v.mul(&w))
    }

    pub fn to_latex(&self) -> String {
        latex::identity_latex(self)
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = Doc::from_identity(self);
        let v = serde_json::to_value(&doc).map_err(|e| Error::Schema(e.to_string()))?;
        let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Schema(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// Parse an identity file and re-certify it.
    pub fn from_json(s: &str) -> Result<Identity> {
        let doc: Doc = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        let id = doc.into_identity().map_err(|e| match e {
            Error::Schema(_) => e,
            other => Error::Schema(other.to_string()),
        })?;
        if !id.residual()?.is_zero() {
            return Err(Error::CertificationFailed("stored certificate does not satisfy the WZ equation".into()));
        }
        Ok(id)
    }
}

const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    schema: u32,
    family: Family,
    params: Vec<String>,
    scale: u32,
    condition: CondDoc,
    lhs: LhsDoc,
    rhs: RhsDoc,
    certificate: CertDoc,
    provenance: ProvDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CondDoc {
    exponent: String,
    text: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LhsDoc {
    prefactor: String,
    phi: PhiSeriesSpec,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RhsDoc {
    weight: String,
    term: Fbar,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertDoc {
    p1: String,
    p2: String,
    #[serde(rename = "R")]
    r: String,
    rbar: String,
    j: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProvDoc {
    tag: String,
    source: String,
    classical_target: Option<String>,
}

fn schema<T>(what: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Schema(format!("{}: {}", what, e)))
}

impl Doc {
    fn from_identity(id: &Identity) -> Doc {
        let c = &id.certificate;
        Doc {
            schema: SCHEMA_VERSION,
            family: id.family,
            params: id.params.iter().map(fmt_rational).collect(),
            scale: id.scale.l(),
            condition: CondDoc { exponent: fmt_rational(&id.condition_exponent), text: id.condition_text() },
            lhs: LhsDoc { prefactor: id.lhs.prefactor.to_string(), phi: id.lhs.phi.clone() },
            rhs: RhsDoc { weight: id.rhs.weight.to_string(), term: id.rhs.term.clone() },
            certificate: CertDoc {
                p1: c.p1.to_string(),
                p2: c.p2.to_string(),
                r: c.r.to_string(),
                rbar: c.rbar.to_string(),
                j: c.j,
            },
            provenance: ProvDoc {
                tag: id.provenance.tag.clone(),
                source: id.provenance.source.clone(),
                classical_target: id.provenance.classical_target.as_ref().map(|t| t.to_string()),
            },
        }
    }

    fn into_identity(self) -> Result<Identity> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Schema(format!("unsupported schema version {}", self.schema)));
        }
        let params: Vec<BigRational> = self
            .params
            .iter()
            .map(|s| schema("params", parse_decimal_rational(s)))
            .collect::<Result<_>>()?;
        let params: [BigRational; 4] = params
            .try_into()
            .map_err(|_| Error::Schema("params must have four entries".into()))?;
        if self.scale == 0 || RootScale::for_rationals(params.iter()).l() > self.scale {
            return Err(Error::Schema("scale does not cover the parameters".into()));
        }
        let exponent = schema("condition", parse_decimal_rational(&self.condition.exponent))?;
        if exponent != condition_exponent(&params) {
            return Err(Error::Schema("condition exponent does not match the parameters".into()));
        }
        let id = Identity {
            family: self.family,
            scale: RootScale::new(self.scale),
            lhs: Lhs { prefactor: schema("prefactor", parse_poly(&self.lhs.prefactor))?, phi: self.lhs.phi },
            rhs: Rhs { weight: schema("weight", parse_rf(&self.rhs.weight))?, term: self.rhs.term },
            condition_exponent: exponent,
            certificate: Certificate {
                p1: schema("p1", parse_poly(&self.certificate.p1))?,
                p2: schema("p2", parse_poly(&self.certificate.p2))?,
                r: schema("R", parse_rf(&self.certificate.r))?,
                rbar: schema("rbar", parse_rf(&self.certificate.rbar))?,
                j: self.certificate.j,
            },
            provenance: Provenance {
                tag: self.provenance.tag,
                source: self.provenance.source,
                classical_target: match self.provenance.classical_target {
                    Some(s) => Some(schema("classical_target", s.parse())?),
                    None => None,
                },
            },
            params,
        };
        if id.condition_text() != self.condition.text {
            return Err(Error::Schema("condition text does not match its exponent".into()));
        }
        if id.lhs.phi != phi_spec(&id.params) {
            return Err(Error::Schema("phi series does not match the parameters".into()));
        }
        if *id.rhs.term.base() != family_instantiate(id.family, &id.params)? && !id.rhs.term.is_closed() {
            return Err(Error::Schema("running-product base is not the family term".into()));
        }
        Ok(id)
    }
}

/// The printed summand `T(n) * p(n)` of the rate 1/4 and -1/4 theorems, as a
/// q-proper term in `n` and a polynomial in `(t, X = q^n)`.
pub fn theorem_form(family: Family, params: &[BigRational; 4], l: RootScale) -> Result<(QProperTerm, LaurentPoly)> {
    let [a, b, c, d] = params;
    let one = BigRational::one();
    let r = |n: i64| BigRational::from_integer(n.into());
    let poch = |w: BigRational, s: i64, power: i32| PochFactor {
        coef: BigRational::one(),
        u: BigRational::zero(),
        v: BigRational::zero(),
        w,
        s: r(s),
        mu: 1,
        nu: 0,
        lambda: 0,
        power,
    };
    let poly = |terms: &[(i64, BigRational, i32)]| -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for (cf, al, be) in terms {
            p = p.add(&qmono(*cf, al, *be, l)?);
        }
        Ok(p)
    };
    match family {
        Family::Quarter => {
            let mut t = QProperTerm::one();
            t.qpower.n = one.clone();
            let e = c + d - a - b;
            for w in [c - a, c - b, d - a, d - b] {
                t = t.with_factor(poch(w, 1, 1));
            }
            for w in [c.clone(), d.clone()] {
                t = t.with_factor(poch(w, 1, -1));
            }
            t = t.with_factor(poch(&e + &one, 2, -1)).with_factor(poch(&e + r(2), 2, -1));
            let p = poly(&[
                (1, a + b + c + &one, 0),
                (-1, a + b + c + d, 1),
                (1, a + b + d + &one, 0),
                (-1, a + c + d + &one, 1),
                (-1, b + c + d + &one, 1),
                (1, r(2) * c + r(2) * d, 3),
            ])?;
            Ok((t, p))
        }
        Family::NegQuarter => {
            let mut t = QProperTerm::one();
            t.sign_n = 1;
            t.qpower.nn = BigRational::new((-1).into(), 2.into());
            t.qpower.n = BigRational::new(1.into(), 2.into()) + a - b - &one;
            let e = c + d - a - b;
            for w in [d - a, d - a + &one] {
                t = t.with_factor(poch(w, 2, 1));
            }
            for w in [d + &one, d + r(2), &e + &one, &e + r(2)] {
                t = t.with_factor(poch(w, 2, -1));
            }
            for w in [b.clone(), c - a, d - b] {
                t = t.with_factor(poch(w, 1, 1));
            }
            t = t.with_factor(poch(c.clone(), 1, -1));
            let s = a + b + c + d;
            let p = poly(&[
                (-1, s.clone(), 3),
                (-1, &s + &one, 3),
                (1, &s + d, 5),
                (-1, a + b + r(2) * d + &one, 4),
                (1, r(2) * a + b + &one, 0),
                (1, a + c + r(2) * d + &one, 4),
                (-1, r(2) * a + d + &one, 1),
                (1, a + r(2) * d + &one, 3),
                (1, b + c + r(2) * d + &one, 5),
                (-1, c + r(2) * d + &one, 4),
                (1, r(2) * c + r(2) * d, 5),
                (-1, r(2) * c + r(3) * d, 7),
            ])?;
            Ok((t, p))
        }
        _ => Err(Error::InvalidTerm(format!("no printed theorem form for {}", family))),
    }
}

/// Whether the identity's summand equals the printed theorem summand: exact
/// term values for `n = 0..15` and equal shift quotients.
pub fn theorem_form_check(id: &Identity) -> Result<bool> {
    let (t, p) = theorem_form(id.family, &id.params, id.scale)?;
    theorem_form_matches(id, &t, &p)
}

/// Compare the identity's summand against `t(n) * p(t, q^n)`.
pub fn theorem_form_matches(id: &Identity, t: &QProperTerm, p: &LaurentPoly) -> Result<bool> {
    let l = id.scale;
    let Fbar::Closed { term } = &id.rhs.term else {
        return Ok(false);
    };
    for n in 0..=15i64 {
        let te = l.li() * n as i32;
        let w = id.rhs.weight.subs_var(X, &BigRational::one(), te)?;
        let pn = RationalFunction::from_poly(p.subs_var(X, &BigRational::one(), te));
        let (Some(ef), Some(pt)) = (term.eval_symbolic(n, 0, l)?, t.eval_symbolic(n, 0, l)?) else {
            let zero_e = term.eval_symbolic(n, 0, l)?.is_none() || w.is_zero();
            let zero_p = t.eval_symbolic(n, 0, l)?.is_none() || pn.is_zero();
            if zero_e != zero_p {
                return Ok(false);
            }
            continue;
        };
        if !rf_equal(&ef.div(&pt).to_rf().mul(&w), &pn) {
            return Ok(false);
        }
    }
    let one = BigRational::one();
    let shift = |r: &RationalFunction| r.subs_var(K, &one, 0);
    let wq = id.rhs.weight.scale_var(X, l.li()).div(&id.rhs.weight)?;
    let engine = shift(&term.shift_quotient_n(l)?)?.mul(&wq);
    let pr = RationalFunction::from_poly(p.clone());
    let printed = shift(&t.shift_quotient_n(l)?)?.mul(&pr.scale_var(X, l.li()).div(&pr)?);
    Ok(rf_equal(&engine, &printed))
}

/// The certificate printed for the rate 1/4 family:
/// `Rbar = X/K (-abgd K X + abg q + abd q - agd X q - bgd X q + g^2 d^2 X^3 K)
/// / ((ab - gd X^2)(ab q - gd X^2))` with `a = q^a, ..., d = q^d`.
pub fn printed_quarter_rbar(params: &[BigRational; 4], l: RootScale) -> Result<RationalFunction> {
    let [a, b, c, d] = params;
    let one = BigRational::one();
    let m = |coef: i64, e: BigRational, x: i32, k: i32| -> Result<LaurentPoly> {
        let te = l.t_exp(&e).ok_or_else(|| Error::InvalidTerm("exponent off the root scale".into()))?;
        Ok(LaurentPoly::monomial(BigRational::from_integer(coef.into()), Exps::new(te, x, k)))
    };
    let s = a + b + c + d;
    let mut num = LaurentPoly::zero();
    for term in [
        m(-1, s.clone(), 1, 1)?,
        m(1, a + b + c + &one, 0, 0)?,
        m(1, a + b + d + &one, 0, 0)?,
        m(-1, a + c + d + &one, 1, 0)?,
        m(-1, b + c + d + &one, 1, 0)?,
        m(1, BigRational::from_integer(2.into()) * (c + d), 3, 1)?,
    ] {
        num = num.add(&term);
    }
    num = num.mul(&m(1, BigRational::zero(), 1, -1)?);
    let d1 = m(1, a + b, 0, 0)?.sub(&m(1, c + d, 2, 0)?);
    let d2 = m(1, a + b + &one, 0, 0)?.sub(&m(1, c + d, 2, 0)?);
    RationalFunction::new(num, d1.mul(&d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn quarter_half() -> Identity {
        build_identity(Family::Quarter, &[rat(1, 2), rat(1, 2), rat(2, 1), rat(2, 1)]).unwrap()
    }

    #[test]
    fn quarter_identity_certifies() {
        let id = quarter_half();
        assert!(id.residual().unwrap().is_zero());
        assert_eq!(id.scale.l(), 2);
        assert_eq!(id.condition_exponent, rat(-2, 1));
    }

    #[test]
    fn printed_rbar_agrees() {
        let id = quarter_half();
        let printed = printed_quarter_rbar(&id.params, id.scale).unwrap();
        assert!(rf_equal(&printed, &id.certificate.rbar), "{} vs {}", printed, id.certificate.rbar);
    }

    #[test]
    fn theorem_forms_agree() {
        let id = quarter_half();
        assert!(theorem_form_check(&id).unwrap());
        let id = build_identity(Family::NegQuarter, &[rat(1, 1), rat(1, 1), rat(2, 1), rat(2, 1)]).unwrap();
        assert!(theorem_form_check(&id).unwrap());
    }

    #[test]
    fn tampered_weight_fails_theorem_check() {
        let id = quarter_half();
        let (t, p) = theorem_form(id.family, &id.params, id.scale).unwrap();
        let bumped = p.add(&LaurentPoly::monomial(rat(1, 1), Exps::new(0, 2, 0)));
        assert!(!theorem_form_matches(&id, &t, &bumped).unwrap());
        let mut t2 = t.clone();
        t2.factors[0].w += rat(1, 1);
        assert!(!theorem_form_matches(&id, &t2, &p).unwrap());
    }

    #[test]
    fn unsatisfiable_condition() {
        let r = build_identity(Family::Quarter, &[rat(2, 1), rat(2, 1), rat(1, 1), rat(1, 1)]);
        assert!(matches!(r, Err(Error::ConditionUnsatisfiable(_))), "{:?}", r);
    }

    #[test]
    fn vanishing_prefactor_is_degenerate() {
        let p = [rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)];
        assert!(prefactor_vanishes(Family::Quarter, &p));
        assert!(matches!(build_identity(Family::Quarter, &p), Err(Error::DegenerateParameters(_))));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let id = quarter_half();
        let s = id.to_json().unwrap();
        let back = Identity::from_json(&s).unwrap();
        assert_eq!(back, id);
        assert_eq!(back.to_json().unwrap(), s);
    }

    #[test]
    fn json_rejects_tampering() {
        let s = quarter_half().to_json().unwrap();
        let bad = s.replacen("\"schema\": 1", "\"schema\": 7", 1);
        assert!(matches!(Identity::from_json(&bad), Err(Error::Schema(_))));
        assert!(matches!(Identity::from_json("{}"), Err(Error::Schema(_))));
    }
}
