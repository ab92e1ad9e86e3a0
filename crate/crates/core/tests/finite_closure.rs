//! Closure on classical rings `ℤ/n`, checked against integer arithmetic.
//!
//! `ℤ/n` is a product of local rings `ℤ/pᵏ`. In a local factor every proper
//! ideal sits inside the nilpotent maximal ideal, and a nilpotent `r`
//! satisfies `rᵐ = 0`, a dependence with all lower coefficients zero. So
//! the closure of a proper ideal is the whole maximal ideal there, and
//! overall `Ī = √I`. For `I = (d)` that is the multiples of the squarefree
//! part of `gcd(d, n)`.

use krasner::closure::{ideal_closure, is_integral_over_ideal, is_integral_power_criterion};
use krasner::ideals::{enumerate_hyperideals, radical, IdealHandle};
use krasner::known::{integers_mod, verified};
use krasner::{ElementSet, FiniteHyperring};
use proptest::prelude::*;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn squarefree_part(mut m: usize) -> usize {
    let mut out = 1;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            out *= p;
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    out
}

fn multiples(ring: &FiniteHyperring, n: usize, d: usize) -> ElementSet {
    ring.set_of((0..n).filter(|x| x % d == 0))
}

#[test]
fn closures_in_integers_mod_n_are_radicals() {
    for n in 2..=12 {
        let ring = verified(integers_mod(n));
        for d in (1..=n).filter(|d| n % d == 0) {
            let ideal = IdealHandle::new(&ring, multiples(&ring, n, d)).unwrap();
            let expected = multiples(&ring, n, squarefree_part(gcd(d, n)));
            let got = ideal_closure(&ideal).unwrap();
            assert_eq!(got.closure, expected, "closure of ({d}) in z{n}");
            assert_eq!(radical(&ideal), expected, "radical of ({d}) in z{n}");
        }
    }
}

#[test]
fn ideals_of_integers_mod_n_are_principal() {
    for n in 2..=12 {
        let ring = verified(integers_mod(n));
        let divisors = (1..=n).filter(|d| n % d == 0).count();
        assert_eq!(
            enumerate_hyperideals(&ring).unwrap().len(),
            divisors,
            "z{n}"
        );
    }
}

#[test]
fn reduced_rings_have_only_closed_ideals() {
    for n in [2, 3, 5, 6, 10] {
        let ring = verified(integers_mod(n));
        for set in enumerate_hyperideals(&ring).unwrap() {
            let ideal = IdealHandle::new(&ring, set).unwrap();
            assert!(ideal_closure(&ideal).unwrap().is_closed, "z{n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dependence_search_matches_power_criterion(n in 2usize..=12, d_seed in 0usize..12, r_seed in 0usize..12) {
        let ring = verified(integers_mod(n));
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        let d = divisors[d_seed % divisors.len()];
        let r = r_seed % n;
        let ideal = IdealHandle::new(&ring, multiples(&ring, n, d)).unwrap();
        let by_search = is_integral_over_ideal(&ideal, r, None).unwrap();
        prop_assert_eq!(by_search, is_integral_power_criterion(&ideal, r).unwrap());
        prop_assert_eq!(by_search, r % squarefree_part(gcd(d, n)) == 0);
    }
}
