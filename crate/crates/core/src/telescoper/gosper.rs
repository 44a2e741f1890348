//! Parameterized q-Gosper algorithm over Q(t, X).
//!
//! For a term `h_k` with `h_{k+1}/h_k = rho(K)` and unknown combination
//! `P(K) = sum_i eta_i P_i(K)`, find `x(K)` and `eta` with
//! `a(K) x(qK) - b(K/q) x(K) = P(K) c(K)`, where `rho = a/b * c(qK)/c(K)`.
//! Then `G_k = b(K/q) x(K) / c(K) * h_k` telescopes `P(K) h_k`.

use num_traits::One;

use super::linsolve::nullspace;
use crate::algebra::{
    factor_q_linear, Exps, LaurentPoly, ProductForm, QLinear, RationalFunction, RootScale, K, T, X,
};
use crate::error::{Error, Result};

/// `rho = a(K)/b(K) * c(qK)/c(K)` with `gcd(a(K), b(q^h K)) = 1` for `h >= 0`.
#[derive(Clone, Debug)]
pub struct GosperPetkovsek {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
}

fn expand(list: &[QLinear]) -> LaurentPoly {
    list.iter().fold(LaurentPoly::one(), |p, q| p.mul(&q.to_poly()))
}

/// Split `rho * extra_num / extra_den` into Gosper-Petkovsek form. The extra
/// polynomials are taken as they are and never paired.
pub fn gp_form(rho: &ProductForm, extra_num: &LaurentPoly, extra_den: &LaurentPoly, l: RootScale) -> GosperPetkovsek {
    let (free, dep) = rho.split_by(K);
    let (fa, fb) = free.to_parts();
    let mut na: Vec<QLinear> = Vec::new();
    let mut nb: Vec<QLinear> = Vec::new();
    for (q, e) in dep.numerator_factors() {
        na.extend(std::iter::repeat_n(q.clone(), e as usize));
    }
    for (q, e) in dep.denominator_factors() {
        nb.extend(std::iter::repeat_n(q.clone(), e as usize));
    }
    let mut c = LaurentPoly::one();
    loop {
        let mut hit = None;
        'outer: for (i, qa) in na.iter().enumerate() {
            for (j, qb) in nb.iter().enumerate() {
                let (ea, eb) = (qa.exps.0, qb.exps.0);
                if qa.coef != qb.coef || ea[X] != eb[X] || ea[K] != eb[K] {
                    continue;
                }
                let step = l.li() * ea[K];
                let d = ea[T] - eb[T];
                if d > 0 && d % step == 0 {
                    hit = Some((i, j, d / step));
                    break 'outer;
                }
            }
        }
        let Some((i, j, h)) = hit else { break };
        let qb = nb.remove(j);
        na.remove(i);
        // a(K)/b(K) = B(q^h K)/B(K) = c(qK)/c(K) with c = prod_{i<h} B(q^i K)
        for s in 0..h {
            let mut e = qb.exps;
            e.0[T] += s * l.li() * qb.exps.0[K];
            c = c.mul(&LaurentPoly::binomial(&qb.coef, e));
        }
    }
    let s = dep.mono.0[K];
    let kpow = |e: i32| LaurentPoly::monomial(num_rational::BigRational::one(), Exps::var(K, e));
    let mut a = fa.mul(&expand(&na)).mul(extra_num);
    let mut b = fb.mul(&expand(&nb)).mul(extra_den);
    if s > 0 {
        a = a.mul(&kpow(s));
    } else if s < 0 {
        b = b.mul(&kpow(-s));
    }
    GosperPetkovsek { a, b, c }
}

/// Solution of the parameterized Gosper equation.
#[derive(Clone, Debug)]
pub struct GosperSolution {
    pub eta: Vec<RationalFunction>,
    /// `b(K/q) x(K) / c(K)`.
    pub s: RationalFunction,
}

fn ratio_power(num: &LaurentPoly, den: &LaurentPoly, l: RootScale) -> Option<i32> {
    let r = RationalFunction::new(num.clone(), den.clone()).ok()?;
    let (c, e) = r.as_monomial()?;
    if !c.is_one() || e.0[X] != 0 || e.0[K] != 0 || e.0[T] % l.li() != 0 {
        return None;
    }
    Some(e.0[T] / l.li())
}

/// Solve `a x(qK) - b(K/q) x(K) = sum_i eta_i cols_i c` for a solution with
/// some `eta_i != 0`. `Ok(None)` when there is none.
pub fn solve(gp: &GosperPetkovsek, cols: &[LaurentPoly], l: RootScale, span_cap: i32) -> Result<Option<GosperSolution>> {
    let a = &gp.a;
    let bq = gp.b.scale_var(K, -l.li());
    let rhs: Vec<LaurentPoly> = cols.iter().map(|p| p.mul(&gp.c)).collect();
    let live: Vec<&LaurentPoly> = rhs.iter().filter(|p| !p.is_zero()).collect();
    if live.is_empty() {
        return Ok(None);
    }
    let dc = live.iter().map(|p| p.max_exp(K).unwrap()).max().unwrap();
    let ldc = live.iter().map(|p| p.min_exp(K).unwrap()).min().unwrap();
    let (da, db) = (a.max_exp(K).unwrap(), bq.max_exp(K).unwrap());
    let (la, lb) = (a.min_exp(K).unwrap(), bq.min_exp(K).unwrap());
    let ca = a.coeffs_in(K);
    let cb = bq.coeffs_in(K);
    let mut hi = dc - da.max(db);
    if da == db {
        if let Some(d) = ratio_power(&cb[&db], &ca[&da], l) {
            hi = hi.max(d);
        }
    }
    let mut lo = ldc - la.min(lb);
    if la == lb {
        if let Some(d) = ratio_power(&cb[&lb], &ca[&la], l) {
            lo = lo.min(d);
        }
    }
    if hi - lo > span_cap {
        return Err(Error::NoFirstOrder(format!(
            "Gosper degree span {} exceeds the cap {}",
            hi - lo,
            span_cap
        )));
    }
    let nx = if hi >= lo { (hi - lo + 1) as usize } else { 0 };
    let mut columns: Vec<LaurentPoly> = Vec::with_capacity(nx + cols.len());
    for i in 0..nx {
        let j = lo + i as i32;
        let kj = Exps::new(l.li() * j, 0, j);
        let left = a.mul_monomial(&num_rational::BigRational::one(), &kj);
        let right = bq.mul_monomial(&num_rational::BigRational::one(), &Exps::var(K, j));
        columns.push(left.sub(&right));
    }
    for p in &rhs {
        columns.push(p.neg());
    }
    let ncols = columns.len();
    let split: Vec<_> = columns.iter().map(|p| p.coeffs_in(K)).collect();
    let mut exps: Vec<i32> = split.iter().flat_map(|m| m.keys().copied()).collect();
    exps.sort_unstable();
    exps.dedup();
    let matrix: Vec<Vec<RationalFunction>> = exps
        .iter()
        .map(|e| {
            split
                .iter()
                .map(|m| m.get(e).map_or_else(RationalFunction::zero, |p| RationalFunction::from_poly(p.clone())))
                .collect()
        })
        .collect();
    let basis = nullspace(matrix, ncols);
    let Some(v) = basis.into_iter().find(|v| v[nx..].iter().any(|e| !e.is_zero())) else {
        return Ok(None);
    };
    let mut x = RationalFunction::zero();
    for (i, xi) in v[..nx].iter().enumerate() {
        if !xi.is_zero() {
            let kj = RationalFunction::monomial(num_rational::BigRational::one(), Exps::var(K, lo + i as i32));
            x = x.add(&kj.mul(xi));
        }
    }
    let s = RationalFunction::from_poly(bq).mul(&x).div(&RationalFunction::from_poly(gp.c.clone()))?;
    Ok(Some(GosperSolution { eta: v[nx..].to_vec(), s }))
}

fn swap_xk(p: &LaurentPoly) -> LaurentPoly {
    p.map_exps(|e| {
        let mut n = *e;
        n.0.swap(X, K);
        n
    })
}

/// Binomial factorization of a polynomial in `(t, K)`; what does not split
/// is returned separately.
fn factor_in_k(p: &LaurentPoly) -> Result<(ProductForm, LaurentPoly)> {
    let f = factor_q_linear(&swap_xk(p));
    let mut pf = ProductForm::monomial(f.unit.0.clone(), swap_exps(&f.unit.1))?;
    for (q, m) in &f.factors {
        pf.mul_linear(&q.coef, swap_exps(&q.exps), *m as i32)?;
    }
    Ok((pf, swap_xk(&f.remainder)))
}

fn swap_exps(e: &Exps) -> Exps {
    let mut n = *e;
    n.0.swap(X, K);
    n
}

/// q-Gosper: given the shift quotient `r(K) = a_{k+1}/a_k` over Q(t), return
/// `S(K)` with `S(qK) r(K) - S(K) = 1`, so that `a_k S(q^k)` telescopes `a_k`.
pub fn q_gosper(r: &RationalFunction, l: RootScale) -> Result<RationalFunction> {
    if r.is_zero() {
        return Err(Error::InvalidTerm("zero shift quotient".into()));
    }
    if r.uses_var(X) {
        return Err(Error::InvalidTerm("shift quotient may only involve t and K".into()));
    }
    let (pn, rn) = factor_in_k(r.num())?;
    let (pd, rd) = factor_in_k(r.den())?;
    let rho = pn.div(&pd);
    let gp = gp_form(&rho, &rn, &rd, l);
    let sol = solve(&gp, &[LaurentPoly::one()], l, 200)?.ok_or(Error::NotSummable)?;
    let s = sol.s.div(&sol.eta[0])?;
    let check = s.scale_var(K, l.li()).mul(r).sub(&s);
    if !check.is_one() {
        return Err(Error::NotSummable);
    }
    Ok(s)
}
