//! The five input families `F(n,k) = q^k [upper; lower | q]_k`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::fmt_rational;
use crate::error::{Error, Result};
use crate::qterm::{PochFactor, QProperTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `[q^a, q^b; q^{n+c}, q^{n+d}]`, rate 1/4.
    Quarter,
    /// `[q^a, q^{n+b}; q^{n+c}, q^{2n+d}]`, rate -1/4.
    NegQuarter,
    /// `[q^{n+a}, q^{n+b}; q^{n+c}, q^{2n+d}]`, rate 1/4.
    Quarter2,
    /// `[q^{n+a}, q^{n+b}; q^{2n+c}, q^{2n+d}]`, rate 1/64.
    Rate64,
    /// `[q^a, q^{n+b}; q^{2n+c}, q^{2n+d}]`, rate -1/27.
    Neg27,
}

pub const ALL_FAMILIES: [Family; 5] = [
    Family::Quarter,
    Family::NegQuarter,
    Family::Quarter2,
    Family::Rate64,
    Family::Neg27,
];

impl Family {
    pub fn id(&self) -> &'static str {
        match self {
            Family::Quarter => "QUARTER",
            Family::NegQuarter => "NEG_QUARTER",
            Family::Quarter2 => "QUARTER2",
            Family::Rate64 => "RATE64",
            Family::Neg27 => "NEG27",
        }
    }

    /// Command-line spelling.
    pub fn flag(&self) -> &'static str {
        match self {
            Family::Quarter => "quarter",
            Family::NegQuarter => "neg-quarter",
            Family::Quarter2 => "quarter2",
            Family::Rate64 => "rate64",
            Family::Neg27 => "neg27",
        }
    }

    /// Classical convergence rate of the accelerated series.
    pub fn rate(&self) -> BigRational {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        match self {
            Family::Quarter | Family::Quarter2 => r(1, 4),
            Family::NegQuarter => r(-1, 4),
            Family::Rate64 => r(1, 64),
            Family::Neg27 => r(-1, 27),
        }
    }

    /// `(n-coefficient, parameter index)` of the upper and lower arguments.
    fn layout(&self) -> ([(i64, usize); 2], [(i64, usize); 2]) {
        match self {
            Family::Quarter => ([(0, 0), (0, 1)], [(1, 2), (1, 3)]),
            Family::NegQuarter => ([(0, 0), (1, 1)], [(1, 2), (2, 3)]),
            Family::Quarter2 => ([(1, 0), (1, 1)], [(1, 2), (2, 3)]),
            Family::Rate64 => ([(1, 0), (1, 1)], [(2, 2), (2, 3)]),
            Family::Neg27 => ([(0, 0), (1, 1)], [(2, 2), (2, 3)]),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        ALL_FAMILIES
            .iter()
            .find(|f| f.flag() == key)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown family {:?}", s)))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn nonpositive_integer(r: &BigRational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Why the parameters are degenerate, if they are: a terminating upper
/// argument, a pole in a lower one, or a vanishing LHS prefactor.
pub fn degeneracy(family: Family, p: &[BigRational; 4]) -> Option<String> {
    let [a, b, c, d] = p;
    if nonpositive_integer(a) || nonpositive_integer(b) {
        return Some("an upper parameter is a nonpositive integer; the series terminates".into());
    }
    if nonpositive_integer(c) || nonpositive_integer(d) {
        return Some("a lower parameter is a nonpositive integer".into());
    }
    match family {
        Family::Quarter | Family::NegQuarter => {
            let ab = a + b;
            let cd = c + d;
            if ab == cd || &ab + BigRational::one() == cd {
                return Some("the prefactor q^(a+b) - q^(c+d) or q^(a+b+1) - q^(c+d) vanishes".into());
            }
            if family == Family::NegQuarter && d.is_zero() {
                return Some("the prefactor 1 - q^d vanishes".into());
            }
        }
        _ => {}
    }
    None
}

/// Exponent `a + b + 1 - c - d` of the convergence condition
/// `|q^(a+b+1-c-d)| < 1 < |q|`.
pub fn condition_exponent(p: &[BigRational; 4]) -> BigRational {
    &p[0] + &p[1] + BigRational::one() - &p[2] - &p[3]
}

/// The input term `F(n,k)` of `family` at `(a, b, c, d)`.
pub fn family_instantiate(family: Family, params: &[BigRational; 4]) -> Result<QProperTerm> {
    if let Some(why) = degeneracy(family, params) {
        return Err(Error::DegenerateParameters(why));
    }
    let (up, lo) = family.layout();
    let mut f = QProperTerm::one();
    f.qpower.k = BigRational::one();
    for (u, i) in up {
        f = f.with_factor(PochFactor::simple(u, 0, params[i].clone(), (0, 1, 0), 1));
    }
    for (u, i) in lo {
        f = f.with_factor(PochFactor::simple(u, 0, params[i].clone(), (0, 1, 0), -1));
    }
    Ok(f)
}

/// `"a,b,c,d"` with rational entries.
pub fn parse_params(s: &str) -> Result<[BigRational; 4]> {
    let v: Vec<BigRational> = s
        .split(',')
        .map(|x| crate::special::parse_decimal_rational(x.trim()))
        .collect::<Result<_>>()?;
    v.try_into()
        .map_err(|v: Vec<BigRational>| Error::Parse(format!("expected 4 parameters, got {}", v.len())))
}

pub fn fmt_params(p: &[BigRational; 4]) -> String {
    p.iter().map(fmt_rational).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn names_round_trip() {
        for f in ALL_FAMILIES {
            assert_eq!(f.flag().parse::<Family>().unwrap(), f);
            assert_eq!(f.id().parse::<Family>().unwrap(), f);
        }
        assert!("quartr".parse::<Family>().is_err());
    }

    #[test]
    fn zero_upper_parameter_is_degenerate() {
        let p = [rat(0, 1), rat(1, 2), rat(2, 1), rat(2, 1)];
        assert!(matches!(family_instantiate(Family::Quarter, &p), Err(Error::DegenerateParameters(_))));
        let p = [rat(1, 2), rat(1, 2), rat(1, 1), rat(0, 1)];
        assert!(family_instantiate(Family::NegQuarter, &p).is_err());
    }

    #[test]
    fn params_parse() {
        let p = parse_params("1/2, 1/2,2,2").unwrap();
        assert_eq!(p[0], rat(1, 2));
        assert_eq!(fmt_params(&p), "1/2,1/2,2,2");
        assert!(parse_params("1,2,3").is_err());
    }
}
