use num_traits::Signed;

use crate::measures::AtomicMeasure;
use crate::numerics::{rpow, Radical, Rational};
use crate::root::NuRepresentation;

/// A finite support made of nonnegative reals of one radical index.
///
/// Every membership and interval question is answered on `index`-th powers,
/// so all tests are exact.
#[derive(Clone, Debug)]
pub struct RadicalSupport {
    index: u32,
    points: Vec<Radical>,
    /// `index`-th powers of `points`, strictly increasing.
    keys: Vec<Rational>,
}

impl RadicalSupport {
    pub fn new(mut points: Vec<Radical>, index: u32) -> Self {
        assert!(points.iter().all(|p| p.index() == index));
        points.sort_by_cached_key(Radical::kth_power);
        points.dedup_by(|a, b| a == b);
        let keys = points.iter().map(|p| p.kth_power()).collect();
        RadicalSupport {
            index,
            points,
            keys,
        }
    }

    /// Rational atoms of a measure viewed at the given index.
    pub fn from_measure(m: &AtomicMeasure, index: u32) -> Self {
        let keys: Vec<Rational> = m.support().map(|p| rpow(p, index as u64)).collect();
        RadicalSupport {
            index,
            points: m.support_radicals(index),
            keys,
        }
    }

    /// `supp ν` at index κ.
    pub fn from_nu(nu: &NuRepresentation) -> Self {
        let atoms: Vec<_> = nu.atoms().collect();
        RadicalSupport {
            index: nu.kappa,
            points: atoms
                .iter()
                .map(|e| Radical::root(e.power.clone(), nu.kappa))
                .collect(),
            keys: atoms.iter().map(|e| e.power.clone()).collect(),
        }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn points(&self) -> &[Radical] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn key(&self, x: &Radical) -> Rational {
        assert_eq!(x.index(), self.index, "radical index mismatch");
        x.kth_power()
    }

    pub fn contains(&self, x: &Radical) -> bool {
        self.keys.binary_search(&self.key(x)).is_ok()
    }

    /// No support point in the open interval `(lo, hi)`.
    pub fn open_empty(&self, lo: &Radical, hi: &Radical) -> bool {
        let (l, h) = (self.key(lo), self.key(hi));
        !self.keys.iter().any(|k| *k > l && *k < h)
    }

    /// No support point in `[0, hi)`.
    pub fn below_empty(&self, hi: &Radical) -> bool {
        let h = self.key(hi);
        !self.keys.iter().any(|k| *k < h)
    }

    pub fn min(&self) -> Option<&Radical> {
        self.points.first()
    }

    pub fn max(&self) -> Option<&Radical> {
        self.points.last()
    }

    /// Largest support point `≤ x`.
    pub fn max_at_most(&self, x: &Radical) -> Option<&Radical> {
        let k = self.key(x);
        let pos = self.keys.partition_point(|p| *p <= k);
        pos.checked_sub(1).map(|i| &self.points[i])
    }

    /// Smallest support point `≥ x`.
    pub fn min_at_least(&self, x: &Radical) -> Option<&Radical> {
        let k = self.key(x);
        let pos = self.keys.partition_point(|p| *p < k);
        self.points.get(pos)
    }

    /// Some support point strictly inside `(lo, hi)`, for witnesses.
    pub fn point_inside(&self, lo: &Radical, hi: &Radical) -> Option<&Radical> {
        let (l, h) = (self.key(lo), self.key(hi));
        self.keys
            .iter()
            .position(|k| *k > l && *k < h)
            .map(|i| &self.points[i])
    }

    pub fn all_positive(&self) -> bool {
        self.keys.iter().all(|k| k.is_positive())
    }
}
