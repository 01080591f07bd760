//! Exact analysis of κ-th roots of finitely-atomic Stieltjes moment sequences.
//!
//! A finitely-atomic measure `μ = Σ mᵢ δ_{xᵢ}` on `(0, ∞)` has moments
//! `aₙ = Σ mᵢ xᵢⁿ`. This crate decides, with an exact certificate, whether
//! `{aₙ^{1/κ}}` is again a Stieltjes moment sequence and recovers its
//! representing measure; it also computes product supports and holes,
//! evaluates the hole-transfer results on concrete instances, and builds
//! witnesses for the `(M, N)` square-root feasibility characterization.
//!
//! Everything that is certified is computed with arbitrary-precision
//! rationals. [`BigFloat`] only appears in approximate reports.

pub mod error;
pub mod exec;
pub mod feasibility;
pub mod harness;
pub mod holes;
pub mod measures;
pub(crate) mod multiset;
pub mod numerics;
pub mod root;

pub use error::{Error, Result};
pub use exec::Execution;
pub use feasibility::{
    class_membership, feasible, n_minus, n_plus, product_count, witness, ClassMembership,
    FeasibilityWitness,
};
pub use harness::{random_atomic_measure, run_suite, FuzzSummary, GenParams, Suite};
pub use holes::{triple_params, TheoremReport, TripleParams};
pub use measures::{
    find_holes, hankel_consistency, kappa_power_measure, moments, product_support, AtomicMeasure,
    HankelVerdict, Hole, MomentPrefix,
};
pub use numerics::{
    approx, floor_log_ratio, parse_rational, radical_compare, rational_to_string, BigFloat,
    Radical, Rational, DEFAULT_PRECISION,
};
pub use root::{approx_root_moments, decide_root, Certificate, NuRepresentation, RootDecision};
