//! Deterministic instance generation, fuzz suites and golden fixtures.
//!
//! Instance `i` of a run with seed `s` is drawn from ChaCha8 seeded with
//! `s` on stream `i`, so every trial owns an independent, portable stream
//! and results do not depend on evaluation order or thread count.

mod fixtures;
mod suites;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::AtomicMeasure;
use crate::numerics::{frac, int, rpow, Rational};

pub use fixtures::{
    fixture_names, fixtures, fixtures_matching, three_atom_mismatches, FixtureResult,
};
pub use suites::{run_suite, FuzzSummary, Suite, Violation};

pub const MAX_ATOMS: usize = 8;
pub const MAX_BOUND: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub seed: u64,
    /// Upper bound on the number of atoms of a generated measure.
    pub max_atoms: usize,
    /// Bound on numerators and denominators of generated points and weights.
    pub bound: u64,
    /// κ values drawn by the suites, each in `[2, 8]`.
    pub kappa_set: Vec<u32>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            max_atoms: 5,
            bound: 1024,
            kappa_set: vec![2, 3, 4],
        }
    }
}

impl GenParams {
    pub fn with_seed(seed: u64) -> Self {
        GenParams {
            seed,
            ..GenParams::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=MAX_ATOMS).contains(&self.max_atoms) {
            return Err(Error::usage(format!(
                "max_atoms must lie in [1, {MAX_ATOMS}]"
            )));
        }
        if !(2..=MAX_BOUND).contains(&self.bound) {
            return Err(Error::usage(format!("bound must lie in [2, {MAX_BOUND}]")));
        }
        if self.kappa_set.is_empty() || self.kappa_set.iter().any(|k| !(2..=8).contains(k)) {
            return Err(Error::usage(
                "kappa_set must be a nonempty subset of [2, 8]",
            ));
        }
        Ok(())
    }

    pub fn kappa_max(&self) -> u32 {
        self.kappa_set.iter().copied().max().unwrap_or(2)
    }

    /// The generator owned by instance `index`.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

fn random_fraction(rng: &mut ChaCha8Rng, bound: u64) -> Rational {
    let p = rng.random_range(1..=bound) as i64;
    let q = rng.random_range(1..=bound) as i64;
    frac(p, q)
}

/// Largest `e` with `base^e ≤ bound`, capped at 10.
fn max_exponent(base: i64, bound: u64) -> i64 {
    (0..=10)
        .take_while(|&e| (base as u64).pow(e as u32) <= bound)
        .last()
        .unwrap_or(0)
}

/// A point drawn from one of three families; the structured ones make
/// product coincidences common.
fn random_point(rng: &mut ChaCha8Rng, bound: u64, mode: u32) -> Rational {
    match mode {
        0 => random_fraction(rng, bound),
        1 => {
            // (p/q)^e with p/q ∈ {2, 3/2} and either sign of e
            let (p, q) = if rng.random_bool(0.5) { (2, 1) } else { (3, 2) };
            let e = rng.random_range(0..=max_exponent(p, bound)) as u64;
            let x = rpow(&frac(p, q), e);
            if rng.random_bool(0.5) {
                x
            } else {
                x.recip()
            }
        }
        _ => int(rng.random_range(1..=bound.min(12)) as i64),
    }
}

fn random_weight(rng: &mut ChaCha8Rng, bound: u64) -> Rational {
    if rng.random_bool(0.5) {
        int(rng.random_range(1..=4))
    } else {
        random_fraction(rng, bound.min(1024))
    }
}

/// Deterministic function of `(params.seed, index)`.
pub fn random_atomic_measure(params: &GenParams, index: u64) -> AtomicMeasure {
    let mut rng = params.rng(index);
    random_measure_from(&mut rng, params)
}

pub(crate) fn random_measure_from(rng: &mut ChaCha8Rng, params: &GenParams) -> AtomicMeasure {
    let n = rng.random_range(1..=params.max_atoms);
    let mode = rng.random_range(0..3);
    let mut points: Vec<Rational> = Vec::with_capacity(n);
    for _ in 0..20 * n {
        if points.len() == n {
            break;
        }
        let x = random_point(rng, params.bound, mode);
        if !points.contains(&x) {
            points.push(x);
        }
    }
    let atoms: Vec<(Rational, Rational)> = points
        .into_iter()
        .map(|x| (x, random_weight(rng, params.bound)))
        .collect();
    AtomicMeasure::new(atoms).expect("distinct positive points and weights")
}

/// A triple `0 < θ₁ < θ₂ < θ₃`; a third of the draws are geometric, `θ₁θ₃ = θ₂²`.
pub fn random_triple(params: &GenParams, index: u64) -> (Rational, Rational, Rational) {
    let mut rng = params.rng(index);
    loop {
        let t = if rng.random_range(0..3) == 0 {
            let a = random_fraction(&mut rng, params.bound);
            let r = random_fraction(&mut rng, params.bound.min(64));
            let (a, r) = if r > int(1) { (a, r) } else { (a, r.recip()) };
            let b = &a * &r;
            let c = &b * &r;
            [a, b, c]
        } else {
            let mut v = [0; 3].map(|_| random_fraction(&mut rng, params.bound));
            v.sort();
            v
        };
        if t[0] < t[1] && t[1] < t[2] {
            let [a, b, c] = t;
            return (a, b, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn determinism_and_bounds() {
        let params = GenParams::with_seed(42);
        for i in 0..200 {
            let a = random_atomic_measure(&params, i);
            assert_eq!(a, random_atomic_measure(&params, i));
            assert!(a.len() <= params.max_atoms);
            for atom in a.atoms() {
                for q in [&atom.point, &atom.weight] {
                    assert!(q.is_positive());
                    assert!(q.numer().magnitude() <= &params.bound.into());
                    assert!(q.denom().magnitude() <= &params.bound.into());
                }
            }
        }
        assert_ne!(
            random_atomic_measure(&params, 0),
            random_atomic_measure(&params, 1)
        );
    }

    #[test]
    fn triples_are_ordered() {
        let params = GenParams::with_seed(7);
        let mut geometric = 0;
        for i in 0..300 {
            let (a, b, c) = random_triple(&params, i);
            assert!(a.is_positive() && a < b && b < c);
            geometric += usize::from(&a * &c == &b * &b);
        }
        assert!(geometric > 50);
    }

    #[test]
    fn validation() {
        assert!(GenParams::default().validate().is_ok());
        let bad = GenParams {
            max_atoms: 9,
            ..GenParams::default()
        };
        assert!(bad.validate().is_err());
        let bad = GenParams {
            kappa_set: vec![9],
            ..GenParams::default()
        };
        assert!(bad.validate().is_err());
    }
}
