//! Classical 3phi2 identities evaluated on both sides: Jackson's terminating
//! q-Pfaff-Saalschutz sum and the q-Thomae transformation.

use num_rational::BigRational;
use num_traits::Signed;

use crate::algebra::{fmt_rational, rat_pow};
use crate::error::{Error, Result};
use crate::special::{phi_eval, qgamma, qpoch, BigFloat, PhiArg, PhiSeriesSpec, PrecisionContext};

#[derive(Clone, Debug)]
pub struct FixtureReport {
    pub name: String,
    pub lhs: BigFloat,
    pub rhs: BigFloat,
    pub diff: BigFloat,
    pub pass: bool,
}

fn report(name: String, lhs: BigFloat, rhs: BigFloat, ctx: &PrecisionContext) -> FixtureReport {
    let diff = lhs.sub(&rhs).abs();
    let one = BigFloat::one(lhs.prec());
    let scale = BigFloat::max_abs(&one, &rhs);
    let pass = diff <= ctx.tolerance(ctx.digits).mul(&scale);
    FixtureReport { name, lhs, rhs, diff, pass }
}

/// `3phi2[q^-n, a, b; c, ab q^(1-n)/c | q; q] = [c/a, c/b; c, c/(ab) | q]_n`.
pub fn jackson_check(a: &BigRational, b: &BigRational, c: &BigRational, n: u32, q: &BigRational, ctx: &PrecisionContext) -> Result<FixtureReport> {
    let lower2 = a * b * rat_pow(q, 1 - n as i32) / c;
    let spec = PhiSeriesSpec::new(
        vec![PhiArg::Exact(rat_pow(q, -(n as i32))), PhiArg::Exact(a.clone()), PhiArg::Exact(b.clone())],
        vec![PhiArg::Exact(c.clone()), PhiArg::Exact(lower2)],
        PhiArg::Exact(q.clone()),
        PhiArg::Exact(q.clone()),
    );
    let work = PrecisionContext::with_guard(ctx.digits + 10, ctx.tail_guard);
    let lhs = phi_eval(&spec, n as usize + 2, &work)?;
    let num = qpoch(&(c / a), q, n) * qpoch(&(c / b), q, n);
    let den = qpoch(c, q, n) * qpoch(&(c / (a * b)), q, n);
    if den == BigRational::from_integer(0.into()) {
        return Err(Error::DomainError("Jackson quotient has a pole".into()));
    }
    let rhs = BigFloat::from_rational(&(num / den), work.bits());
    let name = format!(
        "jackson(a={}, b={}, c={}, n={}, q={})",
        fmt_rational(a),
        fmt_rational(b),
        fmt_rational(c),
        n,
        fmt_rational(q)
    );
    Ok(report(name, lhs.value, rhs, ctx))
}

/// `3phi2[q^a, q^b, q^c; q^d, q^e | q; q^(d+e-a-b-c)] =
/// Gamma_q[e, d+e-a-b-c; e-a, d+e-b-c] 3phi2[q^a, q^(d-b), q^(d-c); q^d, q^(d+e-b-c) | q; q^(e-a)]`
/// for `0 < q < 1`.
pub fn thomae_check(p: &[BigRational; 5], q: &BigRational, ctx: &PrecisionContext) -> Result<FixtureReport> {
    let [a, b, c, d, e] = p;
    let s = d + e - a - b - c;
    if !s.is_positive() || !(e - a).is_positive() {
        return Err(Error::Divergent("q-Thomae needs d+e-a-b-c > 0 and e-a > 0".into()));
    }
    let qp = |x: &BigRational| PhiArg::q_power(x.clone());
    let base = PhiArg::Exact(q.clone());
    let work = PrecisionContext::with_guard(ctx.digits + 10, ctx.tail_guard);
    let bits = work.bits();
    let terms = 20_000;
    let left = PhiSeriesSpec::new(vec![qp(a), qp(b), qp(c)], vec![qp(d), qp(e)], base.clone(), qp(&s));
    let right = PhiSeriesSpec::new(
        vec![qp(a), qp(&(d - b)), qp(&(d - c))],
        vec![qp(d), qp(&(d + e - b - c))],
        base,
        qp(&(e - a)),
    );
    let lhs = phi_eval(&left, terms, &work)?.value;
    let qf = BigFloat::from_rational(q, bits);
    let g = |x: BigRational| qgamma(&BigFloat::from_rational(&x, bits), &qf, &work);
    let gamma = g(e.clone())?
        .mul(&g(s.clone())?)
        .div(&g(e - a)?)?
        .div(&g(d + e - b - c)?)?;
    let rhs = gamma.mul(&phi_eval(&right, terms, &work)?.value);
    let name = format!(
        "thomae(a={}, b={}, c={}, d={}, e={}, q={})",
        fmt_rational(a),
        fmt_rational(b),
        fmt_rational(c),
        fmt_rational(d),
        fmt_rational(e),
        fmt_rational(q)
    );
    Ok(report(name, lhs, rhs, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn jackson_at_half() {
        // both sides 0.3637941006362058993637941006362058993637941 (mpmath)
        let ctx = PrecisionContext::new(30);
        let r = jackson_check(&rat(1, 4), &rat(1, 3), &rat(1, 5), 4, &rat(1, 2), &ctx).unwrap();
        assert!(r.pass, "{:?}", r);
        let want = BigFloat::parse("0.363794100636205899363794100636205899363794100636", ctx.bits()).unwrap();
        assert!(r.lhs.sub(&want).abs().log10_abs() < -40.0);
    }

    #[test]
    fn thomae_at_half() {
        let ctx = PrecisionContext::new(30);
        let p = [rat(1, 7), rat(2, 7), rat(3, 7), rat(2, 1), rat(3, 1)];
        let r = thomae_check(&p, &rat(1, 2), &ctx).unwrap();
        assert!(r.pass, "{:?}", r);
        // mpmath, 50 digits
        let want = BigFloat::parse("1.0007655389544838660176555267703059346510920360515", ctx.bits()).unwrap();
        assert!(r.lhs.sub(&want).abs().log10_abs() < -35.0, "{}", r.lhs);
    }
}
