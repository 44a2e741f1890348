//! Randomized property suites shared by `properties` and `acceptance`.
#![allow(dead_code)]

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use qwz_core::algebra::{
    factor_q_linear, rat, rf_equal, rf_normalize, BigRational, Exps, LaurentPoly, RationalFunction, RootScale, K, X,
};
use qwz_core::identity::{catalog, degeneracy, family_instantiate, prefactor_vanishes, Family, ALL_FAMILIES};
use qwz_core::qterm::{PochFactor, QProperTerm};
use qwz_core::special::{qbinomial, qpoch, BigFloat, PrecisionContext};
use qwz_core::telescoper::q_gosper;
use qwz_core::verify::{lhs_value, rhs_value};

pub const CASES: u32 = 100;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

/// `(a;q)_{m+n} = (a;q)_m (a q^m;q)_n` over Q.
pub fn pochhammer_splitting(cases: u32) -> Result<(), String> {
    let q = nonzero_rational().prop_filter("q != 1", |q| !q.is_one());
    run(cases, (small_rational(), q, 0u32..=10, 0u32..=10), |(a, q, m, n)| {
        let whole = qpoch(&a, &q, m + n);
        let shifted = &a * pow_u(&q, m);
        let split = qpoch(&a, &q, m) * qpoch(&shifted, &q, n);
        prop_assert_eq!(whole, split);
        Ok(())
    })
}

fn pow_u(q: &BigRational, m: u32) -> BigRational {
    (0..m).fold(BigRational::one(), |acc, _| acc * q)
}

/// A random proper term: a family template plus one extra Pochhammer block and
/// a quadratic q-power.
pub fn proper_term() -> impl Strategy<Value = QProperTerm> {
    let param = (1i64..=9, 1i64..=3).prop_map(|(n, d)| rat(n, d));
    let params = [param.clone(), param.clone(), param.clone(), param];
    let extra = (-2i64..=2, -2i64..=2, -4i64..=4, 0i64..=2, 0i64..=2, 0i64..=1, prop::bool::ANY);
    let quad = (-1i64..=1, -1i64..=1, -1i64..=1, -2i64..=2, -2i64..=2);
    (0usize..ALL_FAMILIES.len(), params, extra, quad, 0i64..=1, 0i64..=1)
        .prop_filter("nondegenerate", |(f, p, ..)| degeneracy(ALL_FAMILIES[*f], p).is_none())
        .prop_map(|(f, p, (u, v, w, mu, nu, lam, num), (nn, nk, kk, dn, dk), sn, sk)| {
            let mut t = family_instantiate(ALL_FAMILIES[f], &p).expect("nondegenerate template");
            t.sign_n = sn;
            t.sign_k = sk;
            t.qpower.nn += rat(nn, 1);
            t.qpower.nk += rat(nk, 1);
            t.qpower.kk += rat(kk, 1);
            t.qpower.n += rat(dn, 2);
            t.qpower.k += rat(dk, 2);
            t.with_factor(PochFactor::simple(u, v, rat(w, 2), (mu, nu, lam), if num { 1 } else { -1 }))
        })
}

/// `rn(X, qK) rk(X, K) = rk(qX, K) rn(X, K)`: both equal `F(n+1,k+1)/F(n,k)`.
pub fn shift_commutation(cases: u32) -> Result<(), String> {
    run(cases, proper_term(), |f| {
        let l = f.root_scale();
        let rn = f.shift_quotient_n(l).map_err(|e| fail(e.to_string()))?;
        let rk = f.shift_quotient_k(l).map_err(|e| fail(e.to_string()))?;
        let left = rn.scale_var(K, l.li()).mul(&rk);
        let right = rk.scale_var(X, l.li()).mul(&rn);
        prop_assert!(rf_equal(&left, &right), "{} vs {}", left, right);
        Ok(())
    })
}

pub fn laurent_poly() -> impl Strategy<Value = LaurentPoly> {
    let term = (-2i32..=3, -1i32..=3, -1i32..=3, -5i64..=5);
    prop::collection::vec(term, 1..5).prop_map(|ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|(a, b, c, v)| (Exps::new(a, b, c), rat(v, 1))))
    })
}

pub fn nonzero_laurent_poly() -> impl Strategy<Value = LaurentPoly> {
    laurent_poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Normalizing a normal form changes nothing; the common factor `C` cancels.
pub fn normalize_idempotence(cases: u32) -> Result<(), String> {
    run(cases, (laurent_poly(), nonzero_laurent_poly(), nonzero_laurent_poly()), |(a, b, c)| {
        let r = rf_normalize(&a.mul(&c), &b.mul(&c)).map_err(|e| fail(e.to_string()))?;
        let again = rf_normalize(r.num(), r.den()).map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(&again, &r);
        let plain = rf_normalize(&a, &b).map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(&plain, &r);
        Ok(())
    })
}

fn eval_rf(r: &RationalFunction, t: &BigRational, x: &BigRational, k: &BigRational) -> Option<BigRational> {
    let vals = [t.clone(), x.clone(), k.clone()];
    let d = r.den().eval_rational(&vals);
    if d.is_zero() {
        None
    } else {
        Some(r.num().eval_rational(&vals) / d)
    }
}

fn binomial_k(c: &BigRational, i: i32) -> LaurentPoly {
    LaurentPoly::one().sub(&LaurentPoly::monomial(c.clone(), Exps::new(i, 0, 1)))
}

/// Shift quotient of `a(k) = b(k+1) - b(k)` where `b(k+1)/b(k) = (1 - alpha K)/(1 - beta K)`:
/// Gosper-summable by construction.
fn summable_ratio(alpha: &(BigRational, i32), beta: &(BigRational, i32)) -> Option<RationalFunction> {
    let rho = RationalFunction::new(binomial_k(&alpha.0, alpha.1), binomial_k(&beta.0, beta.1)).ok()?;
    let one = RationalFunction::one();
    let up = rho.scale_var(K, 1).sub(&one);
    let down = rho.sub(&one);
    if down.is_zero() {
        return None;
    }
    rho.mul(&up).div(&down).ok()
}

/// A generic ratio of binomials in K; usually not summable.
fn generic_ratio(num: &[(BigRational, i32)], den: &[(BigRational, i32)], c: &BigRational) -> Option<RationalFunction> {
    let p = num.iter().fold(LaurentPoly::constant(c.clone()), |acc, (a, i)| acc.mul(&binomial_k(a, *i)));
    let d = den.iter().fold(LaurentPoly::one(), |acc, (a, i)| acc.mul(&binomial_k(a, *i)));
    let r = RationalFunction::new(p, d).ok()?;
    (!r.is_zero()).then_some(r)
}

/// `S(qK) r(K) - S(K) = 1` exactly, and `G(k+1) - G(k) = a(k)` for
/// `G(k) = S(q^k) a(k)` at `q = 2`, `k < 8`.
fn gosper_contract_holds(r: &RationalFunction, s: &RationalFunction) -> Result<(), TestCaseError> {
    let check = s.scale_var(K, 1).mul(r).sub(s);
    prop_assert!(check.is_one(), "S(qK) r - S = {}", check);
    let t = rat(2, 1);
    let one = BigRational::one();
    let mut a = one.clone();
    let mut kq = one.clone();
    for _ in 0..8 {
        let next_kq = &kq * &t;
        let (Some(rk), Some(s0), Some(s1)) = (eval_rf(r, &t, &one, &kq), eval_rf(s, &t, &one, &kq), eval_rf(s, &t, &one, &next_kq))
        else {
            break;
        };
        let a_next = &a * rk;
        let diff = &s1 * &a_next - &s0 * &a;
        prop_assert_eq!(diff, a.clone());
        a = a_next;
        kq = next_kq;
    }
    Ok(())
}

pub fn gosper_contract(cases: u32) -> Result<(), String> {
    let lin = || (nonzero_rational(), -2i32..=2);
    let summable = (lin(), lin()).prop_filter_map("degenerate", |(a, b)| {
        let r = summable_ratio(&a, &b)?;
        Some((r, true))
    });
    let generic = (prop::collection::vec(lin(), 0..3), prop::collection::vec(lin(), 0..3), nonzero_rational())
        .prop_filter_map("zero ratio", |(n, d, c)| Some((generic_ratio(&n, &d, &c)?, false)));
    run(cases, prop_oneof![3 => summable, 1 => generic], |(r, must)| {
        match q_gosper(&r, RootScale::new(1)) {
            Ok(s) => gosper_contract_holds(&r, &s),
            Err(e) => {
                prop_assert!(!must, "summable ratio {} rejected: {}", r, e);
                Ok(())
            }
        }
    })
}

/// Doubling the term cap moves each side by less than the tail reported at
/// the smaller cap (plus one unit of working precision for rounding). Caps
/// start at the first one for which the side states a tail at all.
pub fn tail_honesty(cases: u32) -> Result<(), String> {
    let entries = catalog().map_err(|e| e.to_string())?;
    let qs = [rat(2, 1), rat(3, 1), rat(5, 4), rat(3, 2), rat(7, 4)];
    run(cases, (0..entries.len(), 0..qs.len(), 0usize..=30), |(i, qi, extra)| {
        let id = &entries[i].identity;
        let ctx = PrecisionContext::new(40);
        let q = BigFloat::from_rational(&qs[qi], ctx.bits());
        for (side, f) in [("lhs", lhs_value as SideFn), ("rhs", rhs_value as SideFn)] {
            let first = (1..=1000).find(|&c| f(id, &q, &ctx, c).is_ok());
            let cap = first.ok_or_else(|| fail(format!("{} {}: no tail within 1000 terms", id.tag(), side)))? + extra;
            let small = f(id, &q, &ctx, cap).map_err(|e| fail(format!("{} {}: {}", id.tag(), side, e)))?;
            let large = f(id, &q, &ctx, 2 * cap).map_err(|e| fail(format!("{} {}: {}", id.tag(), side, e)))?;
            let moved = large.value.sub(&small.value).abs();
            let scale = BigFloat::max_abs(&BigFloat::one(ctx.bits()), &small.value);
            let slack = ctx.epsilon().mul(&scale);
            prop_assert!(
                moved <= small.tail_bound.add(&slack),
                "{} {} cap {}: moved {} tail {}",
                id.tag(),
                side,
                cap,
                moved.to_decimal(6),
                small.tail_bound.to_decimal(6)
            );
        }
        Ok(())
    })
}

type SideFn = fn(
    &qwz_core::identity::Identity,
    &BigFloat,
    &PrecisionContext,
    usize,
) -> qwz_core::error::Result<qwz_core::special::SeriesValue>;

/// `rf_equal(f g / g, f)`, associativity of `+`, distributivity.
pub fn field_axioms(cases: u32) -> Result<(), String> {
    let rf = || {
        (laurent_poly(), nonzero_laurent_poly()).prop_map(|(a, b)| RationalFunction::new(a, b).expect("nonzero denominator"))
    };
    run(cases, (rf(), rf(), rf()), |(f, g, h)| {
        if !g.is_zero() {
            let back = f.mul(&g).div(&g).map_err(|e| fail(e.to_string()))?;
            prop_assert!(rf_equal(&back, &f));
        }
        prop_assert!(rf_equal(&f.add(&g).add(&h), &f.add(&g.add(&h))));
        prop_assert!(rf_equal(&f.mul(&g.add(&h)), &f.mul(&g).add(&f.mul(&h))));
        Ok(())
    })
}

/// Factors times remainder reproduce the input.
pub fn factorization_reconstructs(cases: u32) -> Result<(), String> {
    let binomial = (nonzero_rational(), 0i32..=3, 1i32..=2);
    run(cases, (prop::collection::vec(binomial, 1..4), laurent_poly()), |(bs, extra)| {
        let mut p = bs.iter().fold(LaurentPoly::one(), |acc, (c, i, j)| {
            acc.mul(&LaurentPoly::one().sub(&LaurentPoly::monomial(c.clone(), Exps::new(*i, *j, 0))))
        });
        let extra = LaurentPoly::from_terms(extra.terms().map(|(e, c)| (Exps::new(e.0[0], e.0[1], 0), c.clone())));
        if !extra.is_zero() {
            p = p.mul(&extra);
        }
        let f = factor_q_linear(&p);
        prop_assert_eq!(f.expand(), p);
        Ok(())
    })
}

/// `[n k]_q = [n n-k]_q` exactly.
pub fn gaussian_symmetry(cases: u32) -> Result<(), String> {
    run(cases, (0u32..=15, 0u32..=15, nonzero_rational()), |(n, k, q)| {
        let k = k.min(n);
        let a = qbinomial(n, k, &q).map_err(|e| fail(e.to_string()))?;
        let b = qbinomial(n, n - k, &q).map_err(|e| fail(e.to_string()))?;
        prop_assert_eq!(a, b);
        Ok(())
    })
}

/// For positive parameters of the theorem families, the LHS prefactor
/// vanishes exactly when the tuple is flagged degenerate.
pub fn prefactor_iff_degenerate(cases: u32) -> Result<(), String> {
    let param = (1i64..=8, 1i64..=2).prop_map(|(n, d)| rat(n, d));
    let fam = prop::sample::select(vec![Family::Quarter, Family::NegQuarter]);
    run(cases, (fam, [param.clone(), param.clone(), param.clone(), param]), |(f, p)| {
        prop_assert_eq!(prefactor_vanishes(f, &p), degeneracy(f, &p).is_some(), "{:?} {:?}", f, p);
        Ok(())
    })
}
