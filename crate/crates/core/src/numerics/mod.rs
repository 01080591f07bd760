//! Exact scalar arithmetic shared by every other module.

mod bigfloat;
mod logratio;
mod radical;
pub(crate) mod rational;

pub use bigfloat::{BigFloat, DEFAULT_PRECISION};
pub use logratio::floor_log_ratio;
pub use radical::{approx, radical_compare, Radical};
pub use rational::{
    binomial, exact_root, frac, int, parse_rational, parse_rational_with, pow2, rational_to_string,
    rpow, Rational,
};
