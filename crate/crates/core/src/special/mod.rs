//! Exact and numeric q-special functions and series evaluators.

mod bigfloat;
mod constants;
mod qfunc;
mod series;

pub use bigfloat::{parse_decimal_rational, BigFloat, PrecisionContext};
pub use constants::{AuditLine, ConstBase, ConstExpr, ConstId, ConstantsCatalog, NamedConstant};
pub use qfunc::{
    qbinomial, qbinomial_coeffs, qbinomial_poly, qbracket, qfactorial, qgamma, qpoch,
    qpoch_infinite, rising, QScalar,
};
pub use series::{hyper_eval, phi_eval, HyperSeriesSpec, PhiArg, PhiSeriesSpec, SeriesValue};

/// Decimal-facing name for the working numeric type.
pub type BigDecimal = BigFloat;
