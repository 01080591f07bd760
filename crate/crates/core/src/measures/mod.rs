//! Finitely-atomic measures on `(0, ∞)`: moments, κ-fold product
//! pushforwards, supports, holes, and an exact Hankel positivity check.

mod hankel;
pub mod io;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset::for_each_multiset;
use crate::numerics::{binomial, radical_compare, rational_to_string, Radical, Rational};

pub use hankel::{hankel_consistency, HankelKind, HankelVerdict, HankelWitness};
pub use io::{MeasureFile, RationalString};

/// Upper bound on the number of size-κ multisets any enumeration may visit.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

/// Largest moment index `moments` will compute.
pub const MOMENT_HORIZON_LIMIT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub point: Rational,
    pub weight: Rational,
}

/// `Σ weightᵢ · δ_{pointᵢ}` with distinct positive points (kept sorted) and
/// positive weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicMeasure {
    atoms: Vec<Atom>,
}

impl AtomicMeasure {
    /// Validates and sorts; points must be distinct and positive, weights positive.
    pub fn new(atoms: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut atoms: Vec<Atom> = atoms
            .into_iter()
            .map(|(point, weight)| Atom { point, weight })
            .collect();
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure(
                "a measure needs at least one atom".into(),
            ));
        }
        for a in &atoms {
            if !a.point.is_positive() {
                return Err(Error::InvalidMeasure(format!(
                    "atom at {} is not in (0, ∞)",
                    rational_to_string(&a.point)
                )));
            }
            if !a.weight.is_positive() {
                return Err(Error::InvalidMeasure(format!(
                    "atom at {} has nonpositive weight {}",
                    rational_to_string(&a.point),
                    rational_to_string(&a.weight)
                )));
            }
        }
        atoms.sort_by(|a, b| a.point.cmp(&b.point));
        if let Some(w) = atoms.windows(2).find(|w| w[0].point == w[1].point) {
            return Err(Error::InvalidMeasure(format!(
                "duplicate atom at {}",
                rational_to_string(&w[0].point)
            )));
        }
        Ok(AtomicMeasure { atoms })
    }

    /// `c · δ_θ`.
    pub fn dirac(point: Rational, weight: Rational) -> Result<Self> {
        Self::new([(point, weight)])
    }

    /// Unit weights at the given points.
    pub fn uniform(points: impl IntoIterator<Item = Rational>) -> Result<Self> {
        Self::new(points.into_iter().map(|p| (p, Rational::one())))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.atoms.iter().map(|a| &a.point)
    }

    pub fn min_point(&self) -> &Rational {
        &self.atoms[0].point
    }

    pub fn max_point(&self) -> &Rational {
        &self.atoms[self.atoms.len() - 1].point
    }

    pub fn total_mass(&self) -> Rational {
        self.atoms.iter().map(|a| &a.weight).sum()
    }

    pub fn mass_at(&self, x: &Rational) -> Rational {
        self.atoms
            .binary_search_by(|a| a.point.cmp(x))
            .map(|i| self.atoms[i].weight.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.atoms.binary_search_by(|a| a.point.cmp(x)).is_ok()
    }

    /// Mass of the open interval `(lo, hi)`.
    pub fn mass_open(&self, lo: &Rational, hi: &Rational) -> Rational {
        self.atoms
            .iter()
            .filter(|a| &a.point > lo && &a.point < hi)
            .map(|a| &a.weight)
            .sum()
    }

    /// Mass of `[0, hi)`.
    pub fn mass_below(&self, hi: &Rational) -> Rational {
        self.atoms
            .iter()
            .filter(|a| &a.point < hi)
            .map(|a| &a.weight)
            .sum()
    }

    /// Weights multiplied by `c > 0`.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        Self::new(self.atoms.iter().map(|a| (a.point.clone(), &a.weight * c)))
    }

    /// Points moved by `x -> s·x`, `s > 0`.
    pub fn dilated(&self, s: &Rational) -> Result<Self> {
        Self::new(self.atoms.iter().map(|a| (&a.point * s, a.weight.clone())))
    }

    /// Support points as radicals of the given index (rational values).
    pub fn support_radicals(&self, index: u32) -> Vec<Radical> {
        self.support()
            .map(|p| Radical::rational(p.clone(), index))
            .collect()
    }
}

/// A prefix `a₀, …, a_L` of a (candidate) moment sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentPrefix {
    pub values: Vec<Rational>,
    pub origin: Option<AtomicMeasure>,
}

impl MomentPrefix {
    pub fn from_values(values: Vec<Rational>) -> Self {
        MomentPrefix {
            values,
            origin: None,
        }
    }
}

/// `aₙ = Σ wᵢ xᵢⁿ` for `n = 0..=horizon`.
pub fn moments(m: &AtomicMeasure, horizon: usize) -> Result<MomentPrefix> {
    if horizon > MOMENT_HORIZON_LIMIT {
        return Err(Error::GuardExceeded {
            what: "moment horizon",
            count: horizon as u128,
            limit: MOMENT_HORIZON_LIMIT as u128,
        });
    }
    let mut powers: Vec<Rational> = m.atoms.iter().map(|a| a.weight.clone()).collect();
    let mut values = Vec::with_capacity(horizon + 1);
    for n in 0..=horizon {
        if n > 0 {
            for (p, a) in powers.iter_mut().zip(&m.atoms) {
                *p *= &a.point;
            }
        }
        values.push(powers.iter().sum());
    }
    Ok(MomentPrefix {
        values,
        origin: Some(m.clone()),
    })
}

fn check_kappa(kappa: u32) -> Result<()> {
    if !(2..=16).contains(&kappa) {
        return Err(Error::usage(format!(
            "kappa must lie in [2, 16], got {kappa}"
        )));
    }
    Ok(())
}

pub(crate) fn check_enumeration(n: usize, kappa: u32) -> Result<()> {
    let count = binomial((n + kappa as usize - 1) as u64, kappa as u64);
    if count > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            what: "size-kappa multisets",
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// The pushforward of `ν^{⊗κ}` under `(x₁,…,x_κ) ↦ x₁⋯x_κ`.
///
/// Its moments are the κ-th powers of the moments of `ν`. The mass at a
/// product point sums, over size-κ multisets of atoms with that product,
/// the multinomial coefficient times the product of weights.
pub fn kappa_power_measure(nu: &AtomicMeasure, kappa: u32) -> Result<AtomicMeasure> {
    check_kappa(kappa)?;
    check_enumeration(nu.len(), kappa)?;
    let atoms = nu.atoms();
    let mut masses: BTreeMap<Rational, Rational> = BTreeMap::new();
    for_each_multiset(atoms.len(), kappa as usize, |t, coef| {
        let mut point = Rational::one();
        let mut mass = Rational::from_integer(BigInt::from(coef));
        for &i in t {
            point *= &atoms[i].point;
            mass *= &atoms[i].weight;
        }
        *masses.entry(point).or_insert_with(Rational::zero) += mass;
    });
    AtomicMeasure::new(masses)
}

/// `{x₁⋯x_κ : xᵢ ∈ points}`, deduplicated by exact comparison and sorted.
pub fn product_support(points: &[Radical], kappa: u32) -> Result<Vec<Radical>> {
    check_kappa(kappa)?;
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    for p in points {
        if p.index() != first.index() {
            return Err(Error::IndexMismatch {
                left: first.index(),
                right: p.index(),
            });
        }
        if p.is_zero() {
            return Err(Error::usage("product_support needs positive points"));
        }
    }
    check_enumeration(points.len(), kappa)?;
    // key on the exact index-th power so equal values collapse
    let mut out: BTreeMap<Rational, Radical> = BTreeMap::new();
    let mut err = None;
    for_each_multiset(points.len(), kappa as usize, |t, _| {
        let factors: Vec<Radical> = t.iter().map(|&i| points[i].clone()).collect();
        match Radical::product(&factors) {
            Ok(r) => {
                out.entry(r.kth_power()).or_insert(r);
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let v: Vec<Radical> = out.into_values().collect();
    debug_assert!(v
        .windows(2)
        .all(|w| radical_compare(&w[0], &w[1]).ok() == Some(std::cmp::Ordering::Less)));
    Ok(v)
}

/// A maximal open interval of zero mass below `sup supp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hole {
    #[serde(with = "io::rational_str")]
    pub lower: Rational,
    #[serde(with = "io::rational_str")]
    pub upper: Rational,
    /// The gap `[0, min supp)`.
    pub leading: bool,
}

/// The leading gap `(0, min)` followed by every gap between consecutive atoms.
pub fn find_holes(m: &AtomicMeasure) -> Vec<Hole> {
    let mut holes = vec![Hole {
        lower: Rational::zero(),
        upper: m.min_point().clone(),
        leading: true,
    }];
    holes.extend(m.atoms.windows(2).map(|w| Hole {
        lower: w[0].point.clone(),
        upper: w[1].point.clone(),
        leading: false,
    }));
    holes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{frac, int, pow2};

    fn measure(pairs: &[(Rational, Rational)]) -> AtomicMeasure {
        AtomicMeasure::new(pairs.iter().cloned()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(AtomicMeasure::new(Vec::<(Rational, Rational)>::new()).is_err());
        assert!(AtomicMeasure::new([(int(0), int(1))]).is_err());
        assert!(AtomicMeasure::new([(int(1), int(0))]).is_err());
        assert!(AtomicMeasure::new([(int(1), int(1)), (int(1), int(2))]).is_err());
        let m = measure(&[(int(3), int(1)), (int(1), int(2))]);
        assert_eq!(m.min_point(), &int(1));
        assert_eq!(m.total_mass(), int(3));
    }

    #[test]
    fn moment_examples() {
        let m = measure(&[(int(1), int(1)), (int(2), int(1))]);
        assert_eq!(
            moments(&m, 3).unwrap().values,
            vec![int(2), int(3), int(5), int(9)]
        );
        let m = AtomicMeasure::dirac(frac(1, 2), int(4)).unwrap();
        assert_eq!(moments(&m, 2).unwrap().values, vec![int(4), int(2), int(1)]);
        let m = AtomicMeasure::uniform([frac(1, 6), frac(1, 3), int(1), int(3)]).unwrap();
        assert_eq!(moments(&m, 1).unwrap().values, vec![int(4), frac(9, 2)]);
        assert!(matches!(
            moments(&m, 10_001),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn pushforward_examples() {
        let nu = AtomicMeasure::uniform([int(1), int(2)]).unwrap();
        let mu = kappa_power_measure(&nu, 2).unwrap();
        assert_eq!(
            mu,
            measure(&[(int(1), int(1)), (int(2), int(2)), (int(4), int(1))])
        );

        let nu = measure(&[(int(1), int(1)), (int(4), int(2))]);
        let mu = kappa_power_measure(&nu, 2).unwrap();
        assert_eq!(
            mu,
            measure(&[(int(1), int(1)), (int(4), int(4)), (int(16), int(4))])
        );

        let nu = AtomicMeasure::dirac(frac(2, 3), int(5)).unwrap();
        let mu = kappa_power_measure(&nu, 3).unwrap();
        assert_eq!(mu, AtomicMeasure::dirac(frac(8, 27), int(125)).unwrap());

        assert!(kappa_power_measure(&nu, 1).is_err());
        assert!(kappa_power_measure(&nu, 17).is_err());
    }

    #[test]
    fn product_support_examples() {
        let pts = [Radical::rational(int(1), 1), Radical::rational(int(2), 1)];
        let s = product_support(&pts, 3).unwrap();
        let vals: Vec<_> = s.iter().map(|r| r.to_rational().unwrap()).collect();
        assert_eq!(vals, vec![int(1), int(2), int(4), int(8)]);

        // prznotsq at a = 2, κ = 4
        let pts = [pow2(-33), int(1), pow2(3)].map(|q| Radical::rational(q, 1));
        let s = product_support(&pts, 4).unwrap();
        assert_eq!(s.len(), 15);
        let mut expected: Vec<Rational> = Vec::new();
        for i in 0..=4i64 {
            for j in 0..=(4 - i) {
                expected.push(pow2(3 * j - 33 * i));
            }
        }
        expected.sort();
        let vals: Vec<_> = s.iter().map(|r| r.to_rational().unwrap()).collect();
        assert_eq!(vals, expected);

        let mixed = [Radical::root(int(2), 2), Radical::root(int(2), 3)];
        assert!(matches!(
            product_support(&mixed, 2),
            Err(Error::IndexMismatch { .. })
        ));
    }

    #[test]
    fn holes() {
        let m = AtomicMeasure::uniform([int(1), int(2), int(4)]).unwrap();
        let h = find_holes(&m);
        assert_eq!(h.len(), 3);
        assert!(h[0].leading && h[0].lower == int(0) && h[0].upper == int(1));
        assert_eq!((&h[1].lower, &h[1].upper), (&int(1), &int(2)));
        assert_eq!((&h[2].lower, &h[2].upper), (&int(2), &int(4)));

        let single = AtomicMeasure::dirac(int(3), int(1)).unwrap();
        let h = find_holes(&single);
        assert_eq!(h.len(), 1);
        assert!(h[0].leading && h[0].upper == int(3));
    }

    #[test]
    fn interval_masses() {
        let m = measure(&[(int(1), int(1)), (int(2), int(2)), (int(4), int(1))]);
        assert_eq!(m.mass_open(&int(1), &int(4)), int(2));
        assert_eq!(m.mass_open(&int(2), &int(4)), int(0));
        assert_eq!(m.mass_below(&int(2)), int(1));
        assert_eq!(m.mass_at(&int(2)), int(2));
        assert_eq!(m.mass_at(&int(3)), int(0));
    }
}
