//! Certified decision of whether `{aₙ^{1/κ}}` is a Stieltjes moment sequence.
//!
//! Let `μ = Σ mᵢ δ_{xᵢ}` with `x₁ < … < x_M`. A representing measure `ν` of
//! the κ-th root is finitely atomic with `supp ν ⊆ {xᵢ^{1/κ}}` and
//! `min supp ν = x₁^{1/κ}`, so the candidate atoms are `tⱼ = xⱼ^{1/κ}` and the
//! smallest one has weight `w₁ = m₁^{1/κ}`. Writing `wⱼ = w₁ρⱼ` keeps the whole
//! computation rational: a multiset of candidates contributes
//! `m₁ · multinomial · ∏ρ` at the product point whose κ-th power is `∏x`.
//!
//! The weights are peeled in ascending order. The product `t₁^{κ-1}tⱼ` is
//! reached by `{tⱼ, t₁, …, t₁}` and otherwise only by multisets of candidates
//! below `tⱼ`: any multiset holding a candidate above `tⱼ`, or `tⱼ` together
//! with anything but `t₁`, has a strictly larger product. That pins `ρⱼ`
//! uniquely; a full pushforward comparison then either certifies `ν` or
//! yields an exact refutation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::{check_enumeration, AtomicMeasure};
use crate::multiset::{for_each_multiset, multinomial};
use crate::numerics::{exact_root, rational_to_string, rpow, BigFloat, Radical, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuEntry {
    /// κ-th power of the candidate atom; always a point of `supp μ`.
    pub power: Rational,
    /// Weight relative to the smallest atom; zero when the candidate is absent.
    pub rho: Rational,
}

/// `ν = base_mass^{1/κ} · Σ ρⱼ δ_{powerⱼ^{1/κ}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuRepresentation {
    pub base_mass: Rational,
    pub entries: Vec<NuEntry>,
    pub kappa: u32,
}

impl NuRepresentation {
    /// Entries with `ρ > 0`, i.e. the actual atoms of `ν`.
    pub fn atoms(&self) -> impl Iterator<Item = &NuEntry> + '_ {
        self.entries.iter().filter(|e| e.rho.is_positive())
    }

    pub fn support_size(&self) -> usize {
        self.atoms().count()
    }

    /// `supp ν` as radicals of index κ, ascending.
    pub fn support_radicals(&self) -> Vec<Radical> {
        self.atoms()
            .map(|e| Radical::root(e.power.clone(), self.kappa))
            .collect()
    }

    /// Whether `x` (given by its κ-th power) is an atom of `ν`.
    pub fn has_atom_with_power(&self, power: &Rational) -> bool {
        self.atoms().any(|e| &e.power == power)
    }

    /// Weight `ρⱼ · base_mass^{1/κ}` of each atom, as radicals.
    pub fn weights(&self) -> Vec<Radical> {
        self.atoms()
            .map(|e| {
                Radical::new(e.rho.clone(), self.base_mass.clone(), self.kappa)
                    .expect("rho > 0 and base mass > 0")
            })
            .collect()
    }

    /// `ν` as an [`AtomicMeasure`] when all atoms and weights are rational.
    pub fn to_measure(&self) -> Option<AtomicMeasure> {
        let w1 = exact_root(&self.base_mass, self.kappa)?;
        let atoms = self
            .atoms()
            .map(|e| Some((exact_root(&e.power, self.kappa)?, &w1 * &e.rho)))
            .collect::<Option<Vec<_>>>()?;
        AtomicMeasure::new(atoms).ok()
    }

    /// Whether pushing this `ν` forward by κ-fold products gives back `mu` exactly.
    pub fn reproduces(&self, mu: &AtomicMeasure) -> bool {
        if mu.min_point() != &self.entries[0].power || mu.atoms()[0].weight != self.base_mass {
            return false;
        }
        let (powers, rho): (Vec<Rational>, Vec<Rational>) = self
            .atoms()
            .map(|e| (e.power.clone(), e.rho.clone()))
            .unzip();
        if check_enumeration(powers.len(), self.kappa).is_err() {
            return false;
        }
        verify_pushforward(mu, &powers, &rho, self.kappa).is_none()
    }
}

/// Why no representing measure exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Peeling forced a negative relative weight at this candidate (κ-th power).
    NegativeRho { power: Rational },
    /// The pushforward of the peeled candidate puts the wrong mass on this point of `supp μ`.
    MassMismatch {
        point: Rational,
        expected: Rational,
        found: Rational,
    },
    /// The pushforward charges a point outside `supp μ`; `key` is its κ-th power.
    CoverageViolation { key: Rational },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::NegativeRho { .. } => "NegativeRho",
            Certificate::MassMismatch { .. } => "MassMismatch",
            Certificate::CoverageViolation { .. } => "CoverageViolation",
        }
    }

    pub fn location(&self) -> &Rational {
        match self {
            Certificate::NegativeRho { power } => power,
            Certificate::MassMismatch { point, .. } => point,
            Certificate::CoverageViolation { key } => key,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootDecision {
    CertifiedYes(NuRepresentation),
    CertifiedNo {
        kappa: u32,
        certificate: Certificate,
    },
}

impl RootDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, RootDecision::CertifiedYes(_))
    }

    pub fn nu(&self) -> Option<&NuRepresentation> {
        match self {
            RootDecision::CertifiedYes(nu) => Some(nu),
            RootDecision::CertifiedNo { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            RootDecision::CertifiedYes(_) => None,
            RootDecision::CertifiedNo { certificate, .. } => Some(certificate),
        }
    }

    pub fn kappa(&self) -> u32 {
        match self {
            RootDecision::CertifiedYes(nu) => nu.kappa,
            RootDecision::CertifiedNo { kappa, .. } => *kappa,
        }
    }

    pub fn report(&self) -> DecisionReport {
        DecisionReport::from(self)
    }
}

/// Sum of `multinomial · ∏ρ` over size-κ multisets drawn from `active`
/// (ascending positions into `powers`) whose power product equals `key`.
fn matching_multisets(
    powers: &[Rational],
    rho: &[Rational],
    active: &[usize],
    kappa: usize,
    key: &Rational,
) -> Rational {
    struct Search<'a> {
        powers: &'a [Rational],
        rho: &'a [Rational],
        active: &'a [usize],
        key: &'a Rational,
        chosen: Vec<usize>,
        total: Rational,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize, slots: usize, product: &Rational) {
            if slots == 0 {
                if product == self.key {
                    let coef = multinomial(&self.chosen);
                    let weight = self
                        .chosen
                        .iter()
                        .fold(Rational::from_integer(BigInt::from(coef)), |acc, &a| {
                            acc * &self.rho[self.active[a]]
                        });
                    self.total += weight;
                }
                return;
            }
            let largest = &self.powers[*self.active.last().unwrap()];
            if product * rpow(largest, slots as u64) < *self.key {
                return;
            }
            for a in start..self.active.len() {
                let x = &self.powers[self.active[a]];
                // nondecreasing tuples: remaining factors are all ≥ x
                if product * rpow(x, slots as u64) > *self.key {
                    break;
                }
                self.chosen.push(a);
                self.run(a, slots - 1, &(product * x));
                self.chosen.pop();
            }
        }
    }

    if active.is_empty() {
        return Rational::zero();
    }
    let mut s = Search {
        powers,
        rho,
        active,
        key,
        chosen: Vec::with_capacity(kappa),
        total: Rational::zero(),
    };
    s.run(0, kappa, &Rational::one());
    s.total
}

/// Compares the pushforward of `base · Σ ρⱼ δ_{powerⱼ^{1/κ}}` with `mu`;
/// returns the smallest failing location.
fn verify_pushforward(
    mu: &AtomicMeasure,
    powers: &[Rational],
    rho: &[Rational],
    kappa: u32,
) -> Option<Certificate> {
    let m1 = &mu.atoms()[0].weight;
    let mut produced: BTreeMap<Rational, Rational> = BTreeMap::new();
    for_each_multiset(powers.len(), kappa as usize, |t, coef| {
        let mut key = Rational::one();
        let mut w = Rational::from_integer(BigInt::from(coef));
        for &i in t {
            key *= &powers[i];
            w *= &rho[i];
        }
        *produced.entry(key).or_insert_with(Rational::zero) += w;
    });
    let mut expected: BTreeMap<Rational, (Rational, Rational)> = BTreeMap::new();
    for a in mu.atoms() {
        expected.insert(
            rpow(&a.point, kappa as u64),
            (a.point.clone(), a.weight.clone()),
        );
    }
    // ascending merge over both key sets
    let mut keys: Vec<&Rational> = produced.keys().chain(expected.keys()).collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        let found = produced.get(key).map(|s| s * m1);
        match (expected.get(key), found) {
            (None, Some(_)) => {
                return Some(Certificate::CoverageViolation { key: key.clone() });
            }
            (Some((point, mass)), found) => {
                let found = found.unwrap_or_else(Rational::zero);
                if &found != mass {
                    return Some(Certificate::MassMismatch {
                        point: point.clone(),
                        expected: mass.clone(),
                        found,
                    });
                }
            }
            (None, None) => unreachable!(),
        }
    }
    None
}

/// Decides whether the κ-th root of the moment sequence of `mu` is a
/// Stieltjes moment sequence, exactly.
pub fn decide_root(mu: &AtomicMeasure, kappa: u32) -> Result<RootDecision> {
    if !(2..=16).contains(&kappa) {
        return Err(Error::usage(format!(
            "kappa must lie in [2, 16], got {kappa}"
        )));
    }
    let k = kappa as usize;
    let xs: Vec<Rational> = mu.support().cloned().collect();
    let m1 = mu.atoms()[0].weight.clone();
    // κ-th powers of support points, for recognizing keys y^κ
    let kth: BTreeMap<Rational, usize> = xs
        .iter()
        .enumerate()
        .map(|(i, x)| (rpow(x, kappa as u64), i))
        .collect();
    let lead = rpow(&xs[0], kappa as u64 - 1);
    let kappa_q = Rational::from_integer(BigInt::from(kappa));

    let mut rho = vec![Rational::zero(); xs.len()];
    rho[0] = Rational::one();
    let mut active = vec![0usize];
    for j in 1..xs.len() {
        let key = &lead * &xs[j];
        let target = kth
            .get(&key)
            .map(|&i| &mu.atoms()[i].weight / &m1)
            .unwrap_or_else(Rational::zero);
        let others = matching_multisets(&xs, &rho, &active, k, &key);
        let r = (target - others) / &kappa_q;
        if r.is_negative() {
            return Ok(RootDecision::CertifiedNo {
                kappa,
                certificate: Certificate::NegativeRho {
                    power: xs[j].clone(),
                },
            });
        }
        if r.is_positive() {
            active.push(j);
            check_enumeration(active.len(), kappa)?;
        }
        rho[j] = r;
    }

    let powers: Vec<Rational> = active.iter().map(|&i| xs[i].clone()).collect();
    let active_rho: Vec<Rational> = active.iter().map(|&i| rho[i].clone()).collect();
    if let Some(certificate) = verify_pushforward(mu, &powers, &active_rho, kappa) {
        return Ok(RootDecision::CertifiedNo { kappa, certificate });
    }
    Ok(RootDecision::CertifiedYes(NuRepresentation {
        base_mass: m1,
        entries: xs
            .into_iter()
            .zip(rho)
            .map(|(power, rho)| NuEntry { power, rho })
            .collect(),
        kappa,
    }))
}

/// `bₙ = aₙ^{1/κ} = Σ ρⱼ (base_mass · xⱼⁿ)^{1/κ}`, rounded to `precision` bits.
///
/// Terms that are rational are summed exactly first, so rational `bₙ` come
/// out exact whenever they are representable.
pub fn approx_root_moments(d: &RootDecision, n: u64, precision: u32) -> Result<BigFloat> {
    let nu = d.nu().ok_or(Error::NotCertified)?;
    let guard = precision + 32;
    let mut exact = Rational::zero();
    let mut approx = BigFloat::zero(guard);
    for e in nu.atoms() {
        let term = Radical::new(e.rho.clone(), &nu.base_mass * rpow(&e.power, n), nu.kappa)?;
        match term.to_rational() {
            Some(q) => exact += q,
            None => approx = approx.add(&term.approx(guard)),
        }
    }
    if approx.is_zero() {
        return Ok(BigFloat::from_rational(&exact, precision));
    }
    Ok(BigFloat::from_rational(&exact, guard)
        .add(&approx)
        .with_precision(precision))
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub power: String,
    pub rho: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NuReport {
    pub base_mass: String,
    pub entries: Vec<EntryReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub kind: &'static str,
    pub location: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub found: Option<String>,
}

/// JSON shape of a [`RootDecision`]; every rational is a string.
#[derive(Clone, Debug, Serialize)]
pub struct DecisionReport {
    pub kappa: u32,
    pub status: &'static str,
    pub nu: Option<NuReport>,
    pub certificate: Option<CertificateReport>,
}

impl From<&NuRepresentation> for NuReport {
    fn from(nu: &NuRepresentation) -> Self {
        NuReport {
            base_mass: rational_to_string(&nu.base_mass),
            entries: nu
                .entries
                .iter()
                .map(|e| EntryReport {
                    power: rational_to_string(&e.power),
                    rho: rational_to_string(&e.rho),
                })
                .collect(),
        }
    }
}

impl From<&RootDecision> for DecisionReport {
    fn from(d: &RootDecision) -> Self {
        match d {
            RootDecision::CertifiedYes(nu) => DecisionReport {
                kappa: nu.kappa,
                status: "CertifiedYes",
                nu: Some(nu.into()),
                certificate: None,
            },
            RootDecision::CertifiedNo { kappa, certificate } => {
                let (expected, found) = match certificate {
                    Certificate::MassMismatch {
                        expected, found, ..
                    } => (
                        Some(rational_to_string(expected)),
                        Some(rational_to_string(found)),
                    ),
                    _ => (None, None),
                };
                DecisionReport {
                    kappa: *kappa,
                    status: "CertifiedNo",
                    nu: None,
                    certificate: Some(CertificateReport {
                        kind: certificate.kind(),
                        location: rational_to_string(certificate.location()),
                        expected,
                        found,
                    }),
                }
            }
        }
    }
}
