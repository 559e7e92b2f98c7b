//! Exact weighted enumeration of Motzkin paths, compositions and bipartite
//! matrix compositions by their up-run and flat-run statistics.
//!
//! Every closed form comes with a brute-force enumerator and a generating
//! function fixed point so the three can be compared exactly.

pub mod bell;
pub mod compositions;
pub mod error;
pub mod lagrange;
pub mod matrixcomp;
pub mod motzkin;
pub mod polyring;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use polyring::{specialize, Family, Monomial, Polynomial, Series, Var, WeightRule, WeightSpec, WeightValue};
pub use scalar::{factorial, gen_binomial, multinomial, Integer, Rational};
