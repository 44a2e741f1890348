//! Exact arithmetic over Q(t)(X, K).

mod factor;
mod poly;
mod product;
mod ratfun;
mod text;
mod zpoly;

pub use factor::{factor_q_linear, QLinearFactorization};
pub use poly::{fmt_rational, int, rat, rat_pow, Exps, LaurentPoly, K, T, VAR_NAMES, X};
pub use product::{poch_product, ProductForm, QLinear};
pub use ratfun::{rf_equal, rf_normalize, RationalFunction};
pub use text::{parse_poly, parse_rf};
pub use zpoly::{poly_exact_div, poly_gcd};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Substitution q = t^L with L the lcm of all parameter denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootScale(u32);

impl RootScale {
    pub fn new(l: u32) -> Self {
        assert!(l >= 1, "root scale must be positive");
        RootScale(l)
    }

    pub fn l(&self) -> u32 {
        self.0
    }

    pub fn li(&self) -> i32 {
        self.0 as i32
    }

    /// Smallest scale making every `r` times L integral.
    pub fn for_rationals<'a, I: IntoIterator<Item = &'a BigRational>>(it: I) -> Self {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let mut l = BigInt::from(1);
        for r in it {
            l = l.lcm(r.denom());
        }
        RootScale(l.to_u32().expect("root scale fits in u32"))
    }

    pub fn lcm(&self, o: RootScale) -> RootScale {
        use num_integer::Integer;
        RootScale(self.0.lcm(&o.0))
    }

    /// `r * L` as an integer t-exponent, if integral.
    pub fn t_exp(&self, r: &BigRational) -> Option<i32> {
        use num_traits::ToPrimitive;
        let v = r * BigRational::from_integer(BigInt::from(self.0));
        if v.is_integer() {
            v.to_integer().to_i32()
        } else {
            None
        }
    }
}
