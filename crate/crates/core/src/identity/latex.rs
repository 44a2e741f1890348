//! LaTeX rendering in bracket notation
//! `[a_1, ..., a_r; b_1, ..., b_s | q]_n = (a_1;q)_n ... / (b_1;q)_n ...`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Identity;
use crate::algebra::{fmt_rational, LaurentPoly, RootScale, T, X};
use crate::qterm::{PochFactor, QProperTerm};
use crate::special::{HyperSeriesSpec, PhiArg};
use crate::telescoper::Fbar;

fn frac(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{}\\frac{{{}}}{{{}}}", sign, r.numer().abs(), r.denom())
    }
}

/// `a n + c` as an exponent.
fn lin(a: &BigRational, var: &str, c: &BigRational) -> String {
    let mut s = String::new();
    if !a.is_zero() {
        if a.is_one() {
            s.push_str(var);
        } else if *a == -BigRational::one() {
            s.push('-');
            s.push_str(var);
        } else {
            s.push_str(&format!("{}{}", frac(a), var));
        }
    }
    if !c.is_zero() || s.is_empty() {
        if !s.is_empty() && c.is_positive() {
            s.push('+');
        }
        s.push_str(&frac(c));
    }
    s
}

fn qpow(e: &str) -> String {
    match e {
        "0" => "1".into(),
        "1" => "q".into(),
        _ => format!("q^{{{}}}", e),
    }
}

fn coef_qpow(c: &BigRational, e: &str) -> String {
    let q = qpow(e);
    if c.is_one() {
        q
    } else if *c == -BigRational::one() {
        format!("-{}", q)
    } else if q == "1" {
        frac(c)
    } else {
        format!("{} {}", frac(c), q)
    }
}

/// A polynomial in `t = q^(1/L)` and `X = q^var`.
pub(super) fn poly_latex(p: &LaurentPoly, l: RootScale, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let lr = BigRational::from_integer(l.l().into());
    let mut out = String::new();
    for (i, (e, c)) in p.terms().rev().enumerate() {
        let a = BigRational::from_integer(e.0[X].into());
        let ce = BigRational::from_integer(e.0[T].into()) / &lr;
        let q = qpow(&lin(&a, var, &ce));
        let mag = c.abs();
        let body = if q == "1" {
            frac(&mag)
        } else if mag.is_one() {
            q
        } else {
            format!("{} {}", frac(&mag), q)
        };
        if c.is_negative() {
            out.push_str(if i == 0 { "-" } else { " - " });
        } else if i > 0 {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

fn phi_arg(a: &PhiArg) -> String {
    match a {
        PhiArg::QPower { coef, exp } => coef_qpow(coef, &frac(exp)),
        other => other.to_string(),
    }
}

fn factor_arg(f: &PochFactor) -> String {
    coef_qpow(&f.coef, &lin(&f.u, "n", &f.w))
}

/// The closed term at `k = 0` as a product in bracket notation.
fn term_latex(t: &QProperTerm) -> String {
    let mut parts: Vec<String> = Vec::new();
    if t.sign_n.rem_euclid(2) == 1 {
        parts.push("(-1)^{n}".into());
    }
    if !t.scale.is_one() {
        parts.push(frac(&t.scale));
    }
    if !t.rate_n.is_one() {
        parts.push(format!("\\left({}\\right)^{{n}}", frac(&t.rate_n)));
    }
    let q = &t.qpower;
    if !q.nn.is_zero() || !q.n.is_zero() || !q.c.is_zero() {
        let mut e = String::new();
        if !q.nn.is_zero() {
            e = lin(&q.nn, "n^2", &BigRational::zero());
        }
        let rest = lin(&q.n, "n", &q.c);
        if rest != "0" {
            if !e.is_empty() && !rest.starts_with('-') {
                e.push('+');
            }
            e.push_str(&rest);
        }
        parts.push(qpow(&e));
    }
    // bracket groups by base for factors of length n; the rest explicitly
    let mut groups: BTreeMap<BigRational, (Vec<String>, Vec<String>)> = BTreeMap::new();
    let mut num: Vec<String> = Vec::new();
    let mut den: Vec<String> = Vec::new();
    for f in &t.factors {
        if f.mu == 0 && f.lambda == 0 {
            continue;
        }
        let arg = factor_arg(f);
        let reps = f.power.unsigned_abs() as usize;
        if f.mu == 1 && f.lambda == 0 {
            let g = groups.entry(f.s.clone()).or_default();
            let list = if f.power > 0 { &mut g.0 } else { &mut g.1 };
            list.extend(std::iter::repeat_n(arg, reps));
        } else {
            let len = lin(
                &BigRational::from_integer(f.mu.into()),
                "n",
                &BigRational::from_integer(f.lambda.into()),
            );
            let s = format!("({}; {})_{{{}}}", arg, qpow(&frac(&f.s)), len);
            let list = if f.power > 0 { &mut num } else { &mut den };
            list.extend(std::iter::repeat_n(s, reps));
        }
    }
    for (s, (up, lo)) in groups {
        let up = if up.is_empty() { "-".to_string() } else { up.join(", ") };
        let lo = if lo.is_empty() { "-".to_string() } else { lo.join(", ") };
        parts.push(format!(
            "\\left[\\begin{{matrix}} {} \\\\ {} \\end{{matrix}} \\,\\middle|\\, {}\\right]_{{n}}",
            up,
            lo,
            qpow(&frac(&s))
        ));
    }
    if !num.is_empty() || !den.is_empty() {
        let n = if num.is_empty() { "1".to_string() } else { num.join(" ") };
        if den.is_empty() {
            parts.push(n);
        } else {
            parts.push(format!("\\frac{{{}}}{{{}}}", n, den.join(" ")));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

pub(super) fn identity_latex(id: &Identity) -> String {
    let l = id.scale;
    let phi = &id.lhs.phi;
    let up: Vec<String> = phi.upper.iter().map(phi_arg).collect();
    let lo: Vec<String> = phi.lower.iter().map(phi_arg).collect();
    let lhs = format!(
        "\\left({}\\right) {{}}_{{{}}}\\phi_{{{}}}\\!\\left[\\begin{{matrix}} {} \\\\ {} \\end{{matrix}} \\,\\middle|\\, {}; {}\\right]",
        poly_latex(&id.lhs.prefactor, l, "n"),
        up.len(),
        lo.len(),
        up.join(", "),
        lo.join(", "),
        phi_arg(&phi.base),
        phi_arg(&phi.argument)
    );
    let w = &id.rhs.weight;
    let weight = format!(
        "\\frac{{{}}}{{{}}}",
        poly_latex(w.num(), l, "n"),
        poly_latex(w.den(), l, "n")
    );
    let summand = match &id.rhs.term {
        Fbar::Closed { term } => term_latex(term),
        Fbar::Closure { base, p1, p2, j } => {
            let p1 = crate::algebra::parse_poly(p1).map(|p| poly_latex(&p, l, "i")).unwrap_or_default();
            let p2 = crate::algebra::parse_poly(p2).map(|p| poly_latex(&p, l, "i")).unwrap_or_default();
            format!(
                "{} \\prod_{{i={}}}^{{n-1}} \\frac{{{}}}{{{}}}",
                term_latex(base),
                j,
                p1,
                p2
            )
        }
    };
    let mut s = String::new();
    s.push_str("\\begin{multline*}\n");
    s.push_str(&format!("  {} \\\\\n", lhs));
    s.push_str(&format!("  = \\sum_{{n=0}}^{{\\infty}} {} \\, {}\n", summand, weight));
    s.push_str("\\end{multline*}\n");
    s.push_str(&format!(
        "valid for $|q^{{{}}}| < 1 < |q|$.\n",
        fmt_rational(&id.condition_exponent)
    ));
    if let Some(t) = &id.provenance.classical_target {
        s.push_str(&format!("Classical limit: ${}$.\n", t.to_latex()));
    }
    s
}

/// Polynomial in `n`, constant coefficient first.
fn npoly_latex(c: &[BigRational]) -> String {
    let mut s = String::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "n".into(),
            _ => format!("n^{{{}}}", i),
        };
        let mag = a.abs();
        let body = if mono.is_empty() {
            frac(&mag)
        } else if mag.is_one() {
            mono
        } else {
            format!("{}{}", frac(&mag), mono)
        };
        if s.is_empty() {
            s = if a.is_negative() { format!("-{}", body) } else { body };
        } else {
            s.push_str(if a.is_negative() { " - " } else { " + " });
            s.push_str(&body);
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// `target = sum_n z^n [upper; lower]_n P(n)/Q(n)` with common entries cancelled.
pub(super) fn classical_latex(target: &str, h: &HyperSeriesSpec) -> String {
    let mut lower = h.lower.clone();
    let mut upper = Vec::new();
    for a in &h.upper {
        match lower.iter().position(|b| b == a) {
            Some(i) => {
                lower.remove(i);
            }
            None => upper.push(a.clone()),
        }
    }
    let side = |v: &[BigRational]| {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.iter().map(frac).collect::<Vec<_>>().join(", ")
        }
    };
    let z = if h.z.is_one() {
        String::new()
    } else {
        format!("\\left({}\\right)^{{n}} ", frac(&h.z))
    };
    let one = [BigRational::one()];
    let weight = match (h.weight_num.as_slice() == one, h.weight_den.as_slice() == one) {
        (true, true) => String::new(),
        (false, true) => format!(" \\left({}\\right)", npoly_latex(&h.weight_num)),
        _ => format!(" \\frac{{{}}}{{{}}}", npoly_latex(&h.weight_num), npoly_latex(&h.weight_den)),
    };
    format!(
        "{} = \\sum_{{n=0}}^{{\\infty}} {}\\left[\\begin{{matrix}} {} \\\\ {} \\end{{matrix}}\\right]_{{n}}{}",
        target,
        z,
        side(&upper),
        side(&lower),
        weight
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};

    #[test]
    fn classical_display_cancels_common_entries() {
        let h = HyperSeriesSpec::weighted(vec![rat(1, 1), rat(1, 1)], vec![rat(3, 2), rat(1, 1)], rat(1, 4), vec![rat(1, 1)], vec![rat(1, 1), rat(1, 1)]);
        let s = classical_latex("\\frac{\\pi^{2}}{9}", &h);
        assert_eq!(
            s,
            "\\frac{\\pi^{2}}{9} = \\sum_{n=0}^{\\infty} \\left(\\frac{1}{4}\\right)^{n} \\left[\\begin{matrix} 1 \\\\ \\frac{3}{2} \\end{matrix}\\right]_{n} \\frac{1}{n + 1}"
        );
    }

    #[test]
    fn exponents_render() {
        assert_eq!(lin(&rat(2, 1), "n", &rat(1, 2)), "2n+\\frac{1}{2}");
        assert_eq!(lin(&rat(0, 1), "n", &rat(0, 1)), "0");
        assert_eq!(lin(&rat(-1, 1), "n", &rat(-3, 1)), "-n-3");
        let p = parse_poly("t^3*X^2 - 2*t + 1").unwrap();
        assert_eq!(poly_latex(&p, RootScale::new(2), "n"), "q^{2n+\\frac{3}{2}} - 2 q^{\\frac{1}{2}} + 1");
    }
}
