//! Plain-text and JSON renderings of identities and reports.

use std::fmt::Write;

use serde_json::{json, Value};

use qwz_core::algebra::{fmt_rational, RationalFunction};
use qwz_core::identity::{fmt_params, CatalogEntry, Identity};
use qwz_core::special::ConstantsCatalog;
use qwz_core::verify::{ConvergenceTable, LimitReport, VerificationReport};

pub fn identity_text(id: &Identity, residual: &RationalFunction) -> String {
    let c = &id.certificate;
    let rows = [
        ("identity", id.label()),
        ("family", id.family.to_string()),
        ("params", fmt_params(&id.params)),
        ("scale", format!("q = t^{}", id.scale.l())),
        ("condition", id.condition_text()),
        ("prefactor", id.lhs.prefactor.to_string()),
        ("p1", c.p1.to_string()),
        ("p2", c.p2.to_string()),
        ("R", c.r.to_string()),
        ("Rbar", c.rbar.to_string()),
        ("j", c.j.to_string()),
        ("weight", id.rhs.weight.to_string()),
        ("residual", residual.to_string()),
    ];
    let mut s = String::new();
    for (k, v) in rows {
        let _ = writeln!(s, "{:<10} {}", k, v);
    }
    s
}

pub fn verify_text(r: &VerificationReport) -> String {
    let d = r.digits as usize;
    let mut s = String::new();
    let _ = writeln!(s, "identity  {}", r.tag);
    let _ = writeln!(s, "q         {}", r.q.to_decimal(20));
    let _ = writeln!(s, "digits    {}", r.digits);
    let _ = writeln!(s, "lhs       {}", r.lhs.to_decimal(d));
    let _ = writeln!(s, "rhs       {}", r.rhs.to_decimal(d));
    let _ = writeln!(s, "diff      {}", r.diff.to_decimal(6));
    let _ = writeln!(s, "          {:>8} {:>14} {:>8}", "terms", "tail", "burn-in");
    let _ = writeln!(s, "lhs       {:>8} {:>14} {:>8}", r.lhs_terms, r.lhs_tail.to_decimal(4), r.lhs_burn_in);
    let _ = writeln!(s, "rhs       {:>8} {:>14} {:>8}", r.rhs_terms, r.rhs_tail.to_decimal(4), r.rhs_burn_in);
    let _ = writeln!(s, "verdict   {}", if r.pass { "pass" } else { "fail" });
    s
}

pub fn convergence_text(t: &ConvergenceTable) -> String {
    let cell = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |n| n.to_string());
    let mut s = String::new();
    let _ = writeln!(s, "{:>8} {:>10} {:>10}", "digits", "lhs terms", "rhs terms");
    for r in &t.rows {
        let _ = writeln!(s, "{:>8} {:>10} {:>10}", r.digits, cell(r.lhs_terms), cell(r.rhs_terms));
    }
    s
}

pub fn limit_text(r: &LimitReport) -> String {
    let d = r.digits as usize;
    let mut s = String::new();
    let _ = writeln!(s, "identity  {}", r.tag);
    let _ = writeln!(s, "classical {}", r.value.to_decimal(d));
    let _ = writeln!(s, "target    {}", r.target.to_decimal(d));
    let _ = writeln!(s, "diff      {}", r.diff.to_decimal(6));
    let _ = writeln!(s, "matched   {:.1} digits", r.matched_digits());
    let _ = writeln!(s, "terms     {}", r.terms);
    let _ = writeln!(s, "lambda    {} (shift {})", fmt_rational(&r.lambda), r.shift);
    let _ = writeln!(s, "verdict   {}", if r.pass { "pass" } else { "fail" });
    s
}

pub fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "tag": e.tag(),
        "family": e.identity.family.id(),
        "params": fmt_params(&e.identity.params),
        "target": e.classical_target.to_string(),
        "source": e.source,
    })
}

pub fn catalog_table(entries: &[CatalogEntry]) -> String {
    let w = entries.iter().map(|e| e.tag().len()).max().unwrap_or(3).max(3);
    let mut s = String::new();
    let _ = writeln!(s, "{:<w$}  {:<11}  {:<18}  target", "tag", "family", "params");
    for e in entries {
        let _ = writeln!(
            s,
            "{:<w$}  {:<11}  {:<18}  {}",
            e.tag(),
            e.identity.family.id(),
            fmt_params(&e.identity.params),
            e.classical_target
        );
    }
    s
}

/// One entry of `catalog run`.
pub struct RunRow {
    pub tag: String,
    pub certified: Result<bool, String>,
    pub verify: Result<VerificationReport, String>,
    pub limit: Option<Result<LimitReport, String>>,
}

impl RunRow {
    pub fn pass(&self) -> bool {
        matches!(self.certified, Ok(true))
            && matches!(&self.verify, Ok(r) if r.pass)
            && self.limit.as_ref().is_none_or(|l| matches!(l, Ok(r) if r.pass))
    }

    pub fn text(&self) -> String {
        let cert = match &self.certified {
            Ok(true) => "certified".to_string(),
            Ok(false) => "residual nonzero".to_string(),
            Err(e) => format!("certify error: {}", e),
        };
        let ver = match &self.verify {
            Ok(r) => format!(
                "verify {} diff {} terms {}/{}",
                if r.pass { "pass" } else { "FAIL" },
                r.diff.to_decimal(3),
                r.lhs_terms,
                r.rhs_terms
            ),
            Err(e) => format!("verify error: {}", e),
        };
        let lim = match &self.limit {
            None => String::new(),
            Some(Ok(r)) => format!("  limit {} {:.1} digits", if r.pass { "pass" } else { "FAIL" }, r.matched_digits()),
            Some(Err(e)) => format!("  limit error: {}", e),
        };
        format!("{:<4} {:<28} {}  {}{}", if self.pass() { "ok" } else { "FAIL" }, self.tag, cert, ver, lim)
    }

    pub fn to_json(&self) -> Value {
        let err = |e: &String| json!({ "error": e });
        json!({
            "tag": self.tag,
            "certified": match &self.certified { Ok(b) => json!(b), Err(e) => err(e) },
            "verify": match &self.verify { Ok(r) => r.to_json(), Err(e) => err(e) },
            "limit": match &self.limit {
                None => Value::Null,
                Some(Ok(r)) => r.to_json(),
                Some(Err(e)) => err(e),
            },
            "verdict": if self.pass() { "pass" } else { "fail" },
        })
    }
}

/// Agreement digits; `all` when the values coincide at the audit precision.
fn agreement(d: f64) -> String {
    if d.is_finite() {
        format!("{:.1}", d)
    } else {
        "all".into()
    }
}

pub fn constants_json(c: &ConstantsCatalog) -> Value {
    let rows: Vec<Value> = ConstantsCatalog::entries()
        .iter()
        .zip(c.audit())
        .map(|(n, a)| {
            json!({
                "name": n.name,
                "value": n.literal,
                "provenance": n.provenance,
                "algorithms": [n.first, n.second],
                "agreement_digits": agreement(a.agreement_digits),
                "audit": if a.passed { "pass" } else { "fail" },
            })
        })
        .collect();
    Value::Array(rows)
}

pub fn constants_text(c: &ConstantsCatalog) -> String {
    let mut s = String::new();
    for (n, a) in ConstantsCatalog::entries().iter().zip(c.audit()) {
        let head: String = n.literal.chars().take(42).collect();
        let _ = writeln!(
            s,
            "{:<10} {}...  {:>6} digits  {}  ({}; {} / {})",
            n.name,
            head,
            agreement(a.agreement_digits),
            if a.passed { "pass" } else { "FAIL" },
            n.provenance,
            n.first,
            n.second
        );
    }
    s
}
