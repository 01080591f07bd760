use std::cmp::Ordering;

use momentroot::holes::{check_lem1, iota_s, iota_s_star, techn_plus_relations, techn_relations};
use momentroot::numerics::{binomial, frac, int, rpow};
use momentroot::{
    decide_root, find_holes, floor_log_ratio, hankel_consistency, kappa_power_measure, moments,
    product_support, radical_compare, triple_params, AtomicMeasure, BigFloat, Radical, Rational,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational(bound: i64) -> impl Strategy<Value = Rational> {
    (1..=bound, 1..=bound).prop_map(|(p, q)| frac(p, q))
}

/// A measure with `1..=max_atoms` distinct points.
fn measure(max_atoms: usize, bound: i64) -> impl Strategy<Value = AtomicMeasure> {
    prop::collection::btree_map(rational(bound), rational(bound), 1..=max_atoms)
        .prop_map(|atoms| AtomicMeasure::new(atoms).expect("distinct positive atoms"))
}

fn ordered_triple(bound: i64) -> impl Strategy<Value = (Rational, Rational, Rational)> {
    prop::collection::btree_set(rational(bound), 3).prop_map(|s| {
        let v: Vec<Rational> = s.into_iter().collect();
        (v[0].clone(), v[1].clone(), v[2].clone())
    })
}

fn geometric_or_free(bound: i64) -> impl Strategy<Value = (Rational, Rational, Rational)> {
    prop_oneof![
        ordered_triple(bound),
        (rational(bound), (2..=9i64, 1..=8i64)).prop_map(|(a, (p, q))| {
            let r = frac(p + q, q);
            let b = &a * &r;
            let c = &b * &r;
            (a, b, c)
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pushforward_moments_are_powers(nu in measure(6, 64), kappa in 2u32..=5, horizon in 0usize..=12) {
        let mu = kappa_power_measure(&nu, kappa).unwrap();
        let a = moments(&nu, horizon).unwrap();
        let b = moments(&mu, horizon).unwrap();
        for n in 0..=horizon {
            prop_assert_eq!(&b.values[n], &rpow(&a.values[n], kappa as u64));
        }
    }

    #[test]
    fn pushforward_support(nu in measure(6, 64), kappa in 2u32..=5) {
        let mu = kappa_power_measure(&nu, kappa).unwrap();
        let products = product_support(&nu.support_radicals(1), kappa).unwrap();
        let support: Vec<Rational> = products.iter().map(|r| r.to_rational().unwrap()).collect();
        let mu_support: Vec<Rational> = mu.support().cloned().collect();
        prop_assert_eq!(&support, &mu_support);
        let n = nu.len() as u64;
        prop_assert!(mu.len() as u64 >= 2 * n - 1 || n == 1);
        prop_assert!(mu.len() as u128 <= binomial(n + kappa as u64 - 1, kappa as u64));
        prop_assert_eq!(mu.max_point(), &rpow(nu.max_point(), kappa as u64));
    }

    #[test]
    fn true_moments_are_hankel_consistent(m in measure(6, 64), horizon in 0usize..=12) {
        prop_assert!(hankel_consistency(&moments(&m, horizon).unwrap()).unwrap().is_consistent());
    }

    #[test]
    fn holes_tile_the_support(m in measure(8, 256)) {
        let holes = find_holes(&m);
        prop_assert_eq!(holes.len(), m.len());
        prop_assert!(holes[0].leading && holes[0].lower.is_zero());
        let points: Vec<&Rational> = m.support().collect();
        for (i, h) in holes.iter().enumerate() {
            prop_assert!(h.lower < h.upper);
            prop_assert!(m.mass_open(&h.lower, &h.upper).is_zero());
            prop_assert_eq!(&h.upper, points[i]);
            if i > 0 {
                prop_assert_eq!(&h.lower, &holes[i - 1].upper);
            }
        }
        prop_assert_eq!(&holes.last().unwrap().upper, m.max_point());
    }

    #[test]
    fn roundtrip_recovers_nu(nu in measure(5, 1024), kappa in 2u32..=4) {
        let mu = kappa_power_measure(&nu, kappa).unwrap();
        let d = decide_root(&mu, kappa).unwrap();
        let rep = d.nu().expect("certified");
        prop_assert_eq!(rep.to_measure(), Some(nu.clone()));
        prop_assert!(rep.support_size() <= mu.len());
        prop_assert_eq!(&rep.atoms().last().unwrap().power, mu.max_point());
        prop_assert_eq!(&rep.base_mass, &rpow(&nu.atoms()[0].weight, kappa as u64));
        let w1 = &nu.atoms()[0].weight;
        let rho: Vec<Rational> = rep.atoms().map(|e| e.rho.clone()).collect();
        let expected: Vec<Rational> = nu.atoms().iter().map(|a| &a.weight / w1).collect();
        prop_assert_eq!(rho, expected);
    }

    #[test]
    fn scale_equivariance(nu in measure(4, 64), kappa in 2u32..=4, c in rational(50), s in rational(50)) {
        let mu = kappa_power_measure(&nu, kappa).unwrap();
        let d = decide_root(&mu, kappa).unwrap();
        let scaled = decide_root(&mu.scaled(&c).unwrap(), kappa).unwrap();
        let rho = |d: &momentroot::RootDecision| -> Vec<Rational> {
            d.nu().unwrap().entries.iter().map(|e| e.rho.clone()).collect()
        };
        prop_assert!(scaled.is_yes());
        prop_assert_eq!(rho(&d), rho(&scaled));
        let dilated = decide_root(&mu.dilated(&s).unwrap(), kappa).unwrap();
        prop_assert_eq!(rho(&d), rho(&dilated));
        for (e, f) in d.nu().unwrap().entries.iter().zip(&dilated.nu().unwrap().entries) {
            prop_assert_eq!(&(&e.power * &s), &f.power);
        }
    }

    #[test]
    fn scale_preserves_refutation(mu in measure(5, 64), kappa in 2u32..=4, c in rational(50)) {
        let d = decide_root(&mu, kappa).unwrap();
        let scaled = decide_root(&mu.scaled(&c).unwrap(), kappa).unwrap();
        prop_assert_eq!(d.is_yes(), scaled.is_yes());
    }

    #[test]
    fn three_atom_law(
        (t1, t2, t3) in geometric_or_free(16),
        (p, q) in (1i64..=6, 1i64..=6),
        a2 in prop_oneof![Just(None), (1i64..=40).prop_map(Some)],
    ) {
        let a1 = int(p * p);
        let a3 = int(q * q);
        let a2 = a2.map_or(int(2 * p * q), int);
        let mu = AtomicMeasure::new([(t1.clone(), a1.clone()), (t2.clone(), a2.clone()), (t3.clone(), a3.clone())]).unwrap();
        let law = &t2 * &t2 == &t1 * &t3 && &a2 * &a2 == int(4) * &a1 * &a3;
        prop_assert_eq!(decide_root(&mu, 2).unwrap().is_yes(), law);
    }

    #[test]
    fn radical_compare_matches_rationals(p in rational(1 << 16), q in rational(1 << 16), kappa in 2u32..=16) {
        let ord = radical_compare(&Radical::root(p.clone(), kappa), &Radical::root(q.clone(), kappa)).unwrap();
        prop_assert_eq!(ord, p.cmp(&q));
    }

    #[test]
    fn radical_order_agrees_with_approximations(
        a in (rational(1000), rational(1000)), b in (rational(1000), rational(1000)), kappa in 2u32..=6,
    ) {
        let x = Radical::new(a.0, a.1, kappa).unwrap();
        let y = Radical::new(b.0, b.1, kappa).unwrap();
        let ord = radical_compare(&x, &y).unwrap();
        for precision in [32, 64, 256] {
            let (fx, fy) = (x.approx(precision), y.approx(precision));
            // rounding is monotone, so a strict exact order can only collapse to equality
            match ord {
                Ordering::Less => prop_assert!(fx <= fy),
                Ordering::Greater => prop_assert!(fx >= fy),
                Ordering::Equal => prop_assert_eq!(fx, fy),
            }
        }
    }

    #[test]
    fn bigfloat_round_trips(q in rational(1 << 20), precision in 32u32..=512) {
        let f = BigFloat::from_rational(&q, precision);
        let back = f.to_rational();
        let err = if back > q { &back - &q } else { &q - &back };
        // correctly rounded: relative error at most 2^-precision
        prop_assert!(err * rpow(&int(2), precision as u64) <= q);
    }

    #[test]
    fn floor_log_ratio_brackets(d in 1i64..=60, t in rational(1 << 20)) {
        let base = Rational::one() + frac(1, d);
        let target = if t < Rational::one() { t.recip() } else { t };
        let m = floor_log_ratio(&base, &target).unwrap();
        prop_assert!(rpow(&base, m) <= target);
        prop_assert!(rpow(&base, m + 1) > target);
    }

    #[test]
    fn triple_relations_hold((t1, t2, t3) in geometric_or_free(256), kappa in 2u32..=8) {
        let p = triple_params(&t1, &t2, &t3, kappa).unwrap();
        for check in p.order_relations() {
            prop_assert!(check.holds, "{}", check.name);
        }
        let r = techn_relations(&t1, &t2, &t3).unwrap();
        prop_assert!(!r.is_violation(), "{:?}", r.violation);
        let r = techn_plus_relations(&t1, &t2, &t3, kappa).unwrap();
        prop_assert!(!r.is_violation(), "{:?}", r.violation);
        prop_assert!(iota_s(&t1, &t2, &t3).unwrap() >= 2);
        prop_assert!(iota_s_star(&t1, &t2, &t3).unwrap() >= 1);
    }

    #[test]
    fn lem1_on_nu_holes(nu in measure(5, 64), kappa in 2u32..=4) {
        let points: Vec<Rational> = std::iter::once(Rational::zero()).chain(nu.support().cloned()).collect();
        for w in points.windows(2) {
            let a = Radical::rational(w[0].clone(), kappa);
            let b = Radical::rational(w[1].clone(), kappa);
            let r = check_lem1(&nu, &a, &b, kappa, true).unwrap();
            prop_assert!(!r.is_violation(), "{:?}", r.violation);
        }
    }
}
