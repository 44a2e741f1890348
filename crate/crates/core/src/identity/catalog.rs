//! Parameter choices whose identities are q-analogues of known accelerated
//! series, with the classical series and its closed-form value.

use std::sync::OnceLock;

use num_rational::BigRational;

use super::{build_identity, parse_params, Family, Identity, Provenance};
use crate::error::{Error, Result};
use crate::special::{parse_decimal_rational, ConstExpr, HyperSeriesSpec};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub identity: Identity,
    pub classical_target: ConstExpr,
    /// The classical accelerated series `sum_n h(n)` equal to the target.
    pub display: HyperSeriesSpec,
    pub source: String,
}

impl CatalogEntry {
    pub fn tag(&self) -> &str {
        &self.identity.provenance.tag
    }

    /// The q-identity followed by its classical display.
    pub fn to_latex(&self) -> String {
        format!(
            "{}\\[\n  {}\n\\]\n",
            self.identity.to_latex(),
            super::latex::classical_latex(&self.classical_target.to_latex(), &self.display)
        )
    }
}

struct Raw {
    tag: &'static str,
    family: Family,
    params: &'static str,
    target: &'static str,
    z: &'static str,
    upper: &'static str,
    lower: &'static str,
    weight_num: &'static [i64],
    weight_den: &'static [i64],
    source: &'static str,
}

macro_rules! entry {
    ($tag:expr, $fam:ident, $p:expr, $target:expr, $z:expr, [$up:expr; $lo:expr], $wn:expr, $wd:expr, $src:expr) => {
        Raw {
            tag: $tag,
            family: Family::$fam,
            params: $p,
            target: $target,
            z: $z,
            upper: $up,
            lower: $lo,
            weight_num: &$wn,
            weight_den: &$wd,
            source: $src,
        }
    };
}

const RAMANUJAN: &str = "Ramanujan-type series";
const CHU_ZHANG: &str = "Chu-Zhang accelerated series";

#[rustfmt::skip]
const RAW: &[Raw] = &[
    entry!("ramanujan-4-over-pi", Quarter, "1/2,1/2,2,2", "4*pi^(-1)", "1/4", ["1/2,1/2,1/2"; "1,1,1"], [1, 6], [1], "Ramanujan"),
    entry!("fabry-guillera", Quarter, "1/2,1/2,3/2,3/2", "1/4*pi^(2)", "1/4", ["1,1,1"; "3/2,3/2,3/2"], [2, 3], [1], "Fabry-Guillera"),
    entry!("apery", Quarter, "1,1,2,2", "1/9*pi^(2)", "1/4", ["1"; "3/2"], [1], [1, 1], "Apery"),
    entry!("quarter-6g", Quarter, "1/2,1,3/2,3/2", "6*catalan", "1/4", ["1,1"; "5/4,7/4"], [5, 6], [1, 2], CHU_ZHANG),
    entry!("quarter-8sqrt3-3", Quarter, "-1/2,1/6,1/3,1", "8/3*3^(1/2)", "1/4", ["1/6,5/6,3/2"; "1/3,1,4/3"], [1, 18], [1], RAMANUJAN),
    entry!("quarter-gamma13-a", Quarter, "1/3,1/3,1,1", "3/2*pi^(-2)*gamma13^(3)", "1/4", ["2/3,2/3,2/3"; "1,1,7/6"], [2, 9], [1], RAMANUJAN),
    entry!("quarter-gamma13-b", Quarter, "1/6,1/6,1,1", "1*2^(4/3)*3^(1/2)*pi^(-2)*gamma13^(3)", "1/4", ["5/6,5/6,5/6"; "1,1,4/3"], [5, 18], [1], RAMANUJAN),
    entry!("quarter-gamma16", Quarter, "1/3,-1/2,1,1/6", "-1/3*2^(-2/3)*pi^(-3/2)*gamma16^(3)", "1/4", ["-1/6,2/3,3/2"; "1/6,1,7/6"], [-1, 18], [1], RAMANUJAN),

    entry!("neg-quarter-18g", NegQuarter, "1/2,1,3/2,3/2", "18*catalan", "-1/4", ["1/2,1,1,1"; "5/4,5/4,7/4,7/4"], [19, 56, 40], [1], CHU_ZHANG),
    entry!("neg-quarter-2pi2-3", NegQuarter, "1,1,2,2", "2/3*pi^(2)", "-1/4", ["1"; "3/2"], [7, 10], [1, 3, 2], CHU_ZHANG),
    entry!("neg-quarter-3pi2-8", NegQuarter, "1,1,3/2,2", "3/8*pi^(2)", "-1/4", ["1,1"; "5/4,7/4"], [4, 5], [1, 2], CHU_ZHANG),
    entry!("neg-quarter-3pi2-8-b", NegQuarter, "1/2,1/2,3/2,3/2", "3/8*pi^(2)", "-1/4", ["1,1"; "5/4,7/4"], [4, 5], [1, 2], CHU_ZHANG),
    entry!("neg-quarter-64sqrt3-3", NegQuarter, "1/6,1/6,2/3,1", "64/3*3^(1/2)", "-1/4", ["5/12,5/6,11/12"; "2/3,1,5/3"], [43, 60], [1], RAMANUJAN),
    entry!("neg-quarter-20cbrt2-3", NegQuarter, "1/3,1/6,1,5/6", "20/3*2^(1/3)", "-1/4", ["1/4,2/3,3/4"; "11/12,1,17/12"], [9, 20], [1], RAMANUJAN),
    entry!("neg-quarter-16log2", NegQuarter, "1/2,1,3/2,2", "16*log2", "-1/4", ["3/4,1,5/4"; "3/2,3/2,3/2"], [13, 20], [1], RAMANUJAN),
    entry!("neg-quarter-16sqrt2", NegQuarter, "3/4,1/4,3/2,1", "16*2^(1/2)", "-1/4", ["1/8,5/8,3/4"; "1,3/2,3/2"], [23, 40], [1], RAMANUJAN),
    entry!("neg-quarter-gamma14-a", NegQuarter, "3/4,1,3/2,3/2", "5/16*pi^(-1)*gamma14^(4)", "-1/4", ["3/8,7/8,1"; "9/8,5/4,13/8"], [19, 40], [1], RAMANUJAN),
    entry!("neg-quarter-gamma14-b", NegQuarter, "1/4,1/4,1,1", "8*pi^(-3/2)*gamma14^(2)", "-1/4", ["3/8,3/4,7/8"; "1,1,3/2"], [21, 40], [1], RAMANUJAN),
    entry!("neg-quarter-gamma13-a", NegQuarter, "1/2,5/6,1,2", "1/3*2^(25/3)*pi*gamma13^(-3)", "-1/4", ["3/4,7/6,5/4"; "1,4/3,2"], [21, 20], [1], RAMANUJAN),
    entry!("neg-quarter-gamma14-c", NegQuarter, "3/4,1/2,1,3/2", "15/28*2^(-1/2)*pi^(-1/2)*gamma14^(2)", "-1/4", ["3/8,1/2,15/8"; "9/8,13/8,7/4"], [3, 5], [1], RAMANUJAN),
    entry!("neg-quarter-gamma13-b", NegQuarter, "3/2,1/6,2,1", "1/5*2^(14/3)*3^(1/2)*pi^(-2)*gamma13^(3)", "-1/4", ["-1/4,1/4,5/6"; "1,5/3,2"], [17, 20], [1], RAMANUJAN),
    entry!("neg-quarter-gamma14-d", NegQuarter, "-1/2,1/4,1,1/2", "21/2*2^(-1/2)*pi^(3/2)*gamma14^(-2)", "-1/4", ["1/2,5/4,3/2"; "3/4,11/8,15/8"], [4, 5], [1], RAMANUJAN),
    entry!("neg-quarter-gamma13-c", NegQuarter, "1/2,1/6,1,1", "1/5*2^(11/3)*3^(-1/2)*pi^(-2)*gamma13^(3)", "-1/4", ["1/4,3/4,5/6"; "1,1,5/3"], [3, 4], [1], RAMANUJAN),
    entry!("bbp", NegQuarter, "1/2,1/2,3/2,1", "1*pi", "-1/4", [""; ""], [10, 42, 40], [3, 22, 48, 32], "Bailey-Borwein-Plouffe type"),

    entry!("fabry-guillera-2", Quarter2, "1,1,3/2,2", "1/4*pi^(2)", "1/4", ["1,1,1"; "3/2,3/2,3/2"], [2, 3], [1], "Fabry-Guillera"),
    entry!("quarter2-3sqrt2-4", Quarter2, "1/4,1/4,1,3/4", "3/4*2^(1/2)", "1/4", ["1/4,1/2,1/2"; "7/8,1,11/8"], [1, 3], [1], RAMANUJAN),
    entry!("quarter2-8sqrt3-3", Quarter2, "-1/2,1/6,1,1/3", "8/3*3^(1/2)", "1/4", ["-1/2,1/6,5/6"; "2/3,1,5/3"], [5, 18], [1], RAMANUJAN),
    entry!("quarter2-5sqrt3-2", Quarter2, "1/6,1/2,1,5/6", "5/2*3^(1/2)", "1/4", ["1/3,1/2,2/3"; "11/12,1,17/12"], [4, 9], [1], RAMANUJAN),
    entry!("quarter2-27cbrt2-4", Quarter2, "1/3,5/6,1,3/2", "27/4*2^(1/3)", "1/4", ["2/3,5/6,7/6"; "1,5/4,7/4"], [7, 9], [1], RAMANUJAN),
    entry!("quarter2-9cbrt2", Quarter2, "1/3,5/6,3/2,1", "9*2^(1/3)", "1/4", ["1/6,2/3,5/6"; "1,3/2,3/2"], [11, 18], [1], RAMANUJAN),
    entry!("quarter2-5cbrt2-6", Quarter2, "1/6,1/3,1,5/6", "5/6*2^(1/3)", "1/4", ["1/6,1/2,2/3"; "11/12,1,17/12"], [1, 3], [1], RAMANUJAN),
    entry!("quarter2-gamma14", Quarter2, "1/2,-1/2,3/4,1", "12*pi^(2)*gamma14^(-4)", "1/4", ["-1/2,1/2,3/2"; "3/4,1,7/4"], [1, 3], [1], RAMANUJAN),
    entry!("quarter2-gamma13-a", Quarter2, "1/2,-1/2,5/6,1", "5*2^(11/3)*pi^(3)*gamma13^(-6)", "1/4", ["-1/2,1/2,3/2"; "5/6,1,11/6"], [7, 18], [1], RAMANUJAN),
    entry!("quarter2-gamma13-b", Quarter2, "1/2,5/6,2,1", "1*2^(19/3)*pi*gamma13^(-3)", "1/4", ["1/6,1/2,5/6"; "1,5/3,2"], [13, 18], [1], RAMANUJAN),
    entry!("quarter2-gamma13-d", Quarter2, "-1/2,1/3,1,1/6", "-1*2^(-14/3)*3^(1/2)*pi^(-3)*gamma13^(6)", "1/4", ["-1/2,-1/6,2/3"; "7/12,1,13/12"], [-1, 9], [1], RAMANUJAN),
    entry!("quarter2-gamma13-c", Quarter2, "-1/2,1/2,1/3,1", "-1*2^(-5/3)*pi^(-3)*gamma13^(6)", "1/4", ["-1/2,1/2,3/2"; "1/3,1,4/3"], [1, 18], [1], RAMANUJAN),

    entry!("zeilberger64", Rate64, "1,1,2,2", "4/3*pi^(2)", "1/64", ["1,1,1"; "3/2,3/2,3/2"], [13, 21], [1], "Zeilberger"),
    entry!("rate64-9pi-4", Rate64, "1/2,1/2,1,3/2", "9/4*pi", "1/64", ["1,1/2,1/2,1/2"; "5/4,5/4,7/4,7/4"], [7, 42, 75, 42], [1], "Chu"),
    entry!("rate64-gamma13", Rate64, "1/2,1/6,1,1", "1*2^(14/3)*3^(1/2)*pi^(-2)*gamma13^(3)", "1/64", ["1/2,5/6,5/6"; "1,1,5/3"], [85, 126], [1], RAMANUJAN),

    entry!("neg27-15pi-8", Neg27, "1/2,1/2,3/2,1", "15/8*pi", "-1/27", ["1,1/2"; "7/6,11/6"], [6, 7], [1], CHU_ZHANG),
    entry!("neg27-pi2-2", Neg27, "1,1,2,2", "1/2*pi^(2)", "-1/27", ["1,1"; "4/3,5/3"], [5, 7], [1, 2], CHU_ZHANG),
    entry!("neg27-30g", Neg27, "1,1/2,3/2,3/2", "30*catalan", "-1/27", ["1,1"; "7/6,11/6"], [83, 192, 112], [3, 16, 16], CHU_ZHANG),
];

fn rationals(s: &str) -> Result<Vec<BigRational>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_decimal_rational).collect()
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
}

fn build(r: &Raw) -> Result<CatalogEntry> {
    let target: ConstExpr = r.target.parse()?;
    let mut identity = build_identity(r.family, &parse_params(r.params)?)?;
    identity.provenance = Provenance {
        tag: r.tag.to_string(),
        source: r.source.to_string(),
        classical_target: Some(target.clone()),
    };
    let display = HyperSeriesSpec::weighted(
        rationals(r.upper)?,
        rationals(r.lower)?,
        parse_decimal_rational(r.z)?,
        ints(r.weight_num),
        ints(r.weight_den),
    );
    Ok(CatalogEntry { identity, classical_target: target, display, source: r.source.to_string() })
}

/// Every catalog entry, derived and certified on first use.
pub fn catalog() -> Result<&'static [CatalogEntry]> {
    static CAT: OnceLock<Result<Vec<CatalogEntry>>> = OnceLock::new();
    CAT.get_or_init(|| RAW.iter().map(build).collect())
        .as_ref()
        .map(|v| v.as_slice())
        .map_err(|e| e.clone())
}

pub fn catalog_tags() -> Vec<&'static str> {
    RAW.iter().map(|r| r.tag).collect()
}

pub fn catalog_lookup(tag: &str) -> Result<&'static CatalogEntry> {
    catalog()?
        .iter()
        .find(|e| e.tag() == tag)
        .ok_or_else(|| Error::IndexError(format!("no catalog entry {:?}", tag)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::special::{hyper_eval, PrecisionContext};

    #[test]
    fn tags_are_unique() {
        let mut t = catalog_tags();
        t.sort_unstable();
        let n = t.len();
        t.dedup();
        assert_eq!(t.len(), n);
    }

    #[test]
    fn named_lookups() {
        let e = catalog_lookup("apery").unwrap();
        assert_eq!(e.identity.family, Family::Quarter);
        assert_eq!(e.identity.params, [rat(1, 1), rat(1, 1), rat(2, 1), rat(2, 1)]);
        assert_eq!(e.classical_target.to_string(), "1/9*pi^(2)");
        let e = catalog_lookup("zeilberger64").unwrap();
        assert_eq!(e.identity.family, Family::Rate64);
        assert_eq!(e.classical_target.to_string(), "4/3*pi^(2)");
        assert!(catalog_lookup("nope").is_err());
    }

    #[test]
    fn displays_sum_to_their_targets() {
        let ctx = PrecisionContext::new(40);
        for e in catalog().unwrap() {
            let v = hyper_eval(&e.display, 2000, &ctx).unwrap_or_else(|err| panic!("{}: {}", e.tag(), err));
            let t = e.classical_target.eval(ctx.bits()).unwrap();
            let d = v.value.sub(&t).abs();
            assert!(d.log10_abs() < -35.0, "{}: {}", e.tag(), d);
        }
    }
}
