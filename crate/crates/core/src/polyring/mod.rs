//! Polynomials in the weight variables, truncated series over them, and
//! weight assignments.

mod poly;
mod series;
mod weights;

pub use poly::{Family, Monomial, Polynomial, Var};
pub use series::{weight_series, Orders, Series};
pub use weights::{specialize, WeightRule, WeightSpec, WeightValue};
