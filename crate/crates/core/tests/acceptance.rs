//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::thread;

use proptest::prelude::Rng;
use proptest::test_runner::{RngAlgorithm, TestRng};

use qwz_core::algebra::{rat, rf_equal, BigRational};
use qwz_core::identity::{build_identity, catalog, printed_quarter_rbar, theorem_form_check, CatalogEntry, Family};
use qwz_core::special::{BigFloat, PrecisionContext};
use qwz_core::verify::{
    classical_limit_check, classical_series, jackson_check, telescoping_check, thomae_check, verify_identity,
    DEFAULT_TERMS,
};

type Suite = fn(u32) -> Result<(), String>;
type Criterion = Box<dyn FnOnce(&mut TestRng) -> Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Map over the catalog on all cores, keeping order.
fn par_map<T: Send>(entries: &'static [CatalogEntry], f: impl Fn(&'static CatalogEntry) -> T + Sync) -> Vec<T> {
    let workers = thread::available_parallelism().map_or(4, |n| n.get());
    let chunk = entries.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = entries.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<T>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn failures(list: Vec<String>) -> String {
    if list.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", list.join(", "))
    }
}

fn exact_certification(entries: &'static [CatalogEntry]) -> Outcome {
    let bad: Vec<String> = entries
        .iter()
        .filter(|e| !matches!(e.identity.residual(), Ok(r) if r.is_zero()))
        .map(|e| e.tag().to_string())
        .collect();
    let ok = entries.len() - bad.len();
    outcome(
        bad.is_empty() && ok >= 30,
        format!("{}/{} entries certify with residual 0{}", ok, entries.len(), failures(bad)),
    )
}

fn theorem_fidelity(entries: &'static [CatalogEntry]) -> Outcome {
    let theorem: Vec<&CatalogEntry> = entries
        .iter()
        .filter(|e| matches!(e.identity.family, Family::Quarter | Family::NegQuarter))
        .collect();
    let bad: Vec<String> = theorem
        .iter()
        .filter(|e| !matches!(theorem_form_check(&e.identity), Ok(true)))
        .map(|e| e.tag().to_string())
        .collect();
    let printed = build_identity(Family::Quarter, &[rat(1, 2), rat(1, 2), rat(2, 1), rat(2, 1)])
        .and_then(|id| Ok(rf_equal(&printed_quarter_rbar(&id.params, id.scale)?, &id.certificate.rbar)))
        .unwrap_or(false);
    outcome(
        bad.is_empty() && printed,
        format!(
            "{}/{} QUARTER/NEG_QUARTER entries match the theorem form; printed Rbar at (1/2,1/2,2,2) {}{}",
            theorem.len() - bad.len(),
            theorem.len(),
            if printed { "agrees" } else { "DISAGREES" },
            failures(bad)
        ),
    )
}

fn two_sided(entries: &'static [CatalogEntry]) -> Outcome {
    let ctx = PrecisionContext::new(60);
    let qs = [rat(2, 1), rat(5, 4)];
    let limit = BigFloat::parse("1e-50", ctx.bits()).unwrap();
    let rows = par_map(entries, |e| {
        let mut worst = f64::NEG_INFINITY;
        let mut terms = 0usize;
        let mut bad = Vec::new();
        for q in &qs {
            let qf = BigFloat::from_rational(q, ctx.bits());
            match verify_identity(&e.identity, &qf, &ctx) {
                Ok(r) => {
                    terms = terms.max(r.lhs_terms).max(r.rhs_terms);
                    if !r.diff.is_zero() {
                        worst = worst.max(r.diff.log10_abs());
                    }
                    if !(r.pass && r.diff < limit && r.lhs_terms <= DEFAULT_TERMS && r.rhs_terms <= DEFAULT_TERMS) {
                        bad.push(format!("{}@q={}", e.tag(), q));
                    }
                }
                Err(err) => bad.push(format!("{}@q={} ({})", e.tag(), q, err)),
            }
        }
        (worst, terms, bad)
    });
    let worst = rows.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let terms = rows.iter().map(|r| r.1).max().unwrap_or(0);
    let bad: Vec<String> = rows.into_iter().flat_map(|r| r.2).collect();
    outcome(
        bad.is_empty(),
        format!(
            "{} checks at q = 2 and 5/4, worst |diff| = 1e{:.0}, at most {} terms per side{}",
            2 * entries.len(),
            worst,
            terms,
            failures(bad)
        ),
    )
}

fn classical_limits(entries: &'static [CatalogEntry]) -> Outcome {
    let ctx = PrecisionContext::new(45);
    let rows = par_map(entries, |e| match classical_limit_check(e, &ctx) {
        Ok(r) => (r.matched_digits(), (!(r.pass && r.matched_digits() >= 40.0)).then(|| e.tag().to_string())),
        Err(err) => (0.0, Some(format!("{} ({})", e.tag(), err))),
    });
    let least = rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let bad: Vec<String> = rows.into_iter().filter_map(|r| r.1).collect();
    outcome(
        bad.is_empty(),
        format!(
            "{}/{} targets reproduced, fewest matching digits {:.1}{}",
            entries.len() - bad.len(),
            entries.len(),
            least,
            failures(bad)
        ),
    )
}

fn pick(rng: &mut TestRng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

fn telescoping(entries: &'static [CatalogEntry], rng: &mut TestRng) -> Outcome {
    let mut chosen: Vec<usize> = Vec::new();
    while chosen.len() < 10 {
        let i = pick(rng, entries.len());
        if !chosen.contains(&i) {
            chosen.push(i);
        }
    }
    let ctx = PrecisionContext::new(40);
    let q = BigFloat::from_int(2, ctx.bits());
    let sizes = [3i64, 8, 12];
    let mut bad = Vec::new();
    let mut tags = Vec::new();
    for &i in &chosen {
        let e = &entries[i];
        tags.push(e.tag().to_string());
        for &n in &sizes {
            for &kbar in &sizes {
                match telescoping_check(&e.identity, n, kbar, &q, &ctx) {
                    Ok(r) if r.pass => {}
                    Ok(_) => bad.push(format!("{}(N={},kbar={})", e.tag(), n, kbar)),
                    Err(err) => bad.push(format!("{}(N={},kbar={}: {})", e.tag(), n, kbar, err)),
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} chains on [{}]{}", chosen.len() * 9, tags.join(", "), failures(bad)),
    )
}

fn random_rational(rng: &mut TestRng, num: (i64, i64), den: i64) -> BigRational {
    let span = (num.1 - num.0 + 1) as u64;
    let n = num.0 + (rng.next_u64() % span) as i64;
    let d = 1 + (rng.next_u64() % den as u64) as i64;
    rat(n, d)
}

fn fixtures(rng: &mut TestRng) -> Outcome {
    let ctx = PrecisionContext::new(30);
    let q = rat(1, 2);
    let mut bad = Vec::new();
    let mut jackson = 0;
    let mut attempts = 0;
    while jackson < 5 && attempts < 200 {
        attempts += 1;
        let a = random_rational(rng, (-9, 9), 9);
        let b = random_rational(rng, (-9, 9), 9);
        let c = random_rational(rng, (-9, 9), 9);
        let n = 1 + (rng.next_u32() % 8);
        if a == rat(0, 1) || b == rat(0, 1) || c == rat(0, 1) {
            continue;
        }
        match jackson_check(&a, &b, &c, n, &q, &ctx) {
            Ok(r) => {
                jackson += 1;
                if !r.pass {
                    bad.push(r.name);
                }
            }
            Err(_) => continue,
        }
    }
    let mut thomae = 0;
    attempts = 0;
    while thomae < 5 && attempts < 200 {
        attempts += 1;
        let p = [
            random_rational(rng, (1, 8), 9),
            random_rational(rng, (1, 8), 9),
            random_rational(rng, (1, 8), 9),
            random_rational(rng, (1, 12), 4),
            random_rational(rng, (1, 12), 4),
        ];
        match thomae_check(&p, &q, &ctx) {
            Ok(r) => {
                thomae += 1;
                if !r.pass {
                    bad.push(r.name);
                }
            }
            Err(_) => continue,
        }
    }
    outcome(
        bad.is_empty() && jackson == 5 && thomae == 5,
        format!("{} Jackson and {} q-Thomae tuples at q = 1/2, 30 digits{}", jackson, thomae, failures(bad)),
    )
}

fn property_suites() -> Outcome {
    let suites: [(&str, Suite); 5] = [
        ("Pochhammer splitting", common::pochhammer_splitting),
        ("shift commutation", common::shift_commutation),
        ("rf_normalize idempotence", common::normalize_idempotence),
        ("Gosper contract", common::gosper_contract),
        ("tail honesty", common::tail_honesty),
    ];
    let results: Vec<(&str, Result<(), String>)> = thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|(name, f)| (*name, s.spawn(move || f(common::CASES)))).collect();
        handles.into_iter().map(|(n, h)| (n, h.join().unwrap_or_else(|_| Err("panicked".into())))).collect()
    });
    let bad: Vec<String> = results
        .iter()
        .filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{} ({})", n, e.lines().next().unwrap_or(""))))
        .collect();
    outcome(
        bad.is_empty(),
        format!("{} suites x {} cases{}", suites.len(), common::CASES, failures(bad)),
    )
}

fn convergence_rates(entries: &'static [CatalogEntry]) -> Outcome {
    let expected = |f: Family| match f {
        Family::Rate64 => Some(64f64.log10()),
        Family::Quarter => Some(4f64.log10()),
        Family::Neg27 => Some(27f64.log10()),
        _ => None,
    };
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for e in entries {
        let Some(want) = expected(e.identity.family) else { continue };
        match classical_series(&e.identity).and_then(|s| s.digits_per_term(50, 150)) {
            Ok(got) => {
                seen.push(got);
                if ((got - want) / want).abs() > 0.10 {
                    bad.push(format!("{} ({:.3} vs {:.3})", e.tag(), got, want));
                }
            }
            Err(err) => bad.push(format!("{} ({})", e.tag(), err)),
        }
    }
    let fmt = |f: Family| {
        let v: Vec<String> = entries
            .iter()
            .filter(|e| e.identity.family == f)
            .filter_map(|e| classical_series(&e.identity).and_then(|s| s.digits_per_term(50, 150)).ok())
            .map(|d| format!("{:.3}", d))
            .collect();
        v.first().cloned().unwrap_or_else(|| "-".into())
    };
    outcome(
        bad.is_empty() && !seen.is_empty(),
        format!(
            "{} series; RATE64 {} (log10 64 = {:.3}), QUARTER {} (log10 4 = {:.3}), NEG27 {} (log10 27 = {:.3}){}",
            seen.len(),
            fmt(Family::Rate64),
            64f64.log10(),
            fmt(Family::Quarter),
            4f64.log10(),
            fmt(Family::Neg27),
            27f64.log10(),
            failures(bad)
        ),
    )
}

fn main() {
    let entries = match catalog() {
        Ok(c) => c,
        Err(e) => {
            println!("catalog failed to build: {}", e);
            std::process::exit(1);
        }
    };
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("exact certification", Box::new(|_| exact_certification(entries))),
        ("theorem fidelity", Box::new(|_| theorem_fidelity(entries))),
        ("two-sided numeric verification", Box::new(|_| two_sided(entries))),
        ("classical limits", Box::new(|_| classical_limits(entries))),
        ("telescoping chain", Box::new(|r| telescoping(entries, r))),
        ("fixture identities", Box::new(fixtures)),
        ("property suites", Box::new(|_| property_suites())),
        ("convergence rates", Box::new(|_| convergence_rates(entries))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let o = run(&mut rng);
        if !o.pass {
            failed += 1;
        }
        println!("criterion {} [{}] {}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    if failed > 0 {
        println!("{} of 8 criteria failed", failed);
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
