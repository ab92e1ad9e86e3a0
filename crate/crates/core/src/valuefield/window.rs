//! Brute-force counterparts of the cut closed forms, computed on the finite
//! window `[-W, W]ᵏ` of the value group straight from the definitions.
//!
//! Sets produced by the window routines are only trusted on the inner
//! window `[-W/2, W/2]ᵏ`; thresholds of the cuts being checked must have
//! small coordinates (the random cases keep them within `[-3, 4]`) so that
//! every membership witness for an inner point lies inside the window.

use std::cmp::Ordering;

use rand::Rng;

use super::{
    cut_intersection_of_powers, cut_is_primary, cut_is_prime, cut_power, cut_product, cut_radical,
    cut_sum, CutIdeal, ValuationSubring, Value, ValueHyperfield,
};
use crate::error::{Error, Result};

pub const DEFAULT_WINDOW: i64 = 16;

/// Every finite value with coordinates in `[-radius, radius]`.
pub fn values(rank: usize, radius: i64) -> Vec<Value> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-radius..=radius).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(Value::Finite).collect()
}

/// A hyperideal of a prefix ring, materialized on a window.
struct Windowed {
    /// finite members inside the window
    members: Vec<Vec<i64>>,
}

impl Windowed {
    fn of(ring: &ValuationSubring, ideal: &CutIdeal, radius: i64) -> Self {
        let members = values(ring.rank(), radius)
            .into_iter()
            .filter(|v| ideal.contains(ring, v))
            .filter_map(|v| v.as_finite().map(<[i64]>::to_vec))
            .collect();
        Windowed { members }
    }

    /// The ideal of the ring generated by `gens`, as a membership test:
    /// `z` belongs when `prefix_m(z) ≥ prefix_m(g)` for some generator,
    /// since `g·r` ranges over exactly those `z` as `r` runs over `V_m`.
    fn generated(ring: &ValuationSubring, low: Option<Vec<i64>>) -> impl Fn(&Value) -> bool + '_ {
        let m = ring.level();
        move |z| match (z, &low) {
            (Value::Infinity, _) => true,
            (_, None) => false,
            (Value::Finite(z), Some(g)) => {
                ring.contains(&Value::Finite(z.clone())) && z[..m] >= g[..m]
            }
        }
    }
}

/// Least `prefix_m` of `f(x, y)` over all pairs of window members.
fn min_prefix_over_pairs(
    a: &[Vec<i64>],
    b: &[Vec<i64>],
    m: usize,
    f: impl Fn(&[i64], &[i64], &mut Vec<i64>),
) -> Option<Vec<i64>> {
    let mut best: Option<Vec<i64>> = None;
    let mut buf = Vec::new();
    for x in a {
        for y in b {
            f(x, y, &mut buf);
            let better = match &best {
                None => true,
                Some(cur) => buf[..m].cmp(&cur[..m]) == Ordering::Less,
            };
            if better {
                best = Some(buf.clone());
            }
        }
    }
    best
}

fn pair_sum(x: &[i64], y: &[i64], out: &mut Vec<i64>) {
    out.clear();
    out.extend(x.iter().zip(y).map(|(a, b)| a + b));
}

fn window_product(
    ring: &ValuationSubring,
    a: &[Vec<i64>],
    b: &[Vec<i64>],
    radius: i64,
) -> Vec<Vec<i64>> {
    let low = min_prefix_over_pairs(a, b, ring.level(), pair_sum);
    let member = Windowed::generated(ring, low);
    values(ring.rank(), radius)
        .into_iter()
        .filter(|z| member(z))
        .filter_map(|v| v.as_finite().map(<[i64]>::to_vec))
        .collect()
}

/// First inner-window point (or `∞`) where `closed` and `oracle` disagree.
fn first_mismatch(
    ring: &ValuationSubring,
    closed: &CutIdeal,
    oracle: impl Fn(&Value) -> bool,
    inner: i64,
) -> Option<Value> {
    std::iter::once(Value::Infinity)
        .chain(
            values(ring.rank(), inner)
                .into_iter()
                .filter(|v| ring.contains(v)),
        )
        .find(|z| closed.contains(ring, z) != oracle(z))
}

fn mismatch(op: &str, closed: &CutIdeal, z: Value, oracle_says: bool) -> String {
    let verb = if oracle_says { "excludes" } else { "includes" };
    format!("{op}: closed form {closed} {verb} {z}, the window oracle disagrees")
}

/// Window oracle for `I + J`: the ideal generated by all `x ⊞ y`.
pub fn sum_mismatch(
    ring: &ValuationSubring,
    a: &CutIdeal,
    b: &CutIdeal,
    window: i64,
) -> Option<String> {
    let (wa, wb) = (Windowed::of(ring, a, window), Windowed::of(ring, b, window));
    let m = ring.level();
    let mut low: Option<Vec<i64>> = None;
    let mut consider = |v: &[i64]| {
        if low.as_ref().is_none_or(|l| v[..m] < l[..m]) {
            low = Some(v.to_vec());
        }
    };
    // x ⊞ ∞ = {x}, and the least element of x ⊞ y is min(x, y)
    for x in wa.members.iter().chain(&wb.members) {
        consider(x);
    }
    for x in &wa.members {
        for y in &wb.members {
            consider(if x <= y { x } else { y });
        }
    }
    let oracle = Windowed::generated(ring, low);
    let closed = cut_sum(a, b);
    first_mismatch(ring, &closed, &oracle, window / 2).map(|z| {
        let o = oracle(&z);
        mismatch(&format!("{a} + {b}"), &closed, z, o)
    })
}

/// Window oracle for `I·J`: the ideal generated by all pairwise products.
pub fn product_mismatch(
    ring: &ValuationSubring,
    a: &CutIdeal,
    b: &CutIdeal,
    window: i64,
) -> Option<String> {
    let (wa, wb) = (Windowed::of(ring, a, window), Windowed::of(ring, b, window));
    let low = min_prefix_over_pairs(&wa.members, &wb.members, ring.level(), pair_sum);
    let oracle = Windowed::generated(ring, low);
    let closed = cut_product(a, b);
    first_mismatch(ring, &closed, &oracle, window / 2).map(|z| {
        let o = oracle(&z);
        mismatch(&format!("{a} · {b}"), &closed, z, o)
    })
}

/// Window oracle for `Iⁿ`, built by repeated window products.
pub fn power_mismatch(
    ring: &ValuationSubring,
    a: &CutIdeal,
    n: usize,
    window: i64,
) -> Option<String> {
    let closed = match cut_power(a, n) {
        Ok(c) => c,
        Err(e) => return Some(e.to_string()),
    };
    let base = Windowed::of(ring, a, window).members;
    let mut acc = base.clone();
    for _ in 1..n {
        acc = window_product(ring, &base, &acc, window);
    }
    let finite: std::collections::HashSet<Vec<i64>> = acc.into_iter().collect();
    let oracle = |z: &Value| match z {
        Value::Infinity => true,
        Value::Finite(v) => finite.contains(v),
    };
    first_mismatch(ring, &closed, oracle, window / 2).map(|z| {
        let o = oracle(&z);
        mismatch(&format!("({a})^{n}"), &closed, z, o)
    })
}

/// `z ∈ √I` by trying `n·z ∈ I` for `n ≤ 2W`.
fn radical_member(ring: &ValuationSubring, a: &CutIdeal, z: &Value, window: i64) -> bool {
    (1..=2 * window).any(|n| a.contains(ring, &z.scale(n)))
}

pub fn radical_mismatch(ring: &ValuationSubring, a: &CutIdeal, window: i64) -> Option<String> {
    let closed = cut_radical(a);
    let oracle = |z: &Value| radical_member(ring, a, z, window);
    first_mismatch(ring, &closed, oracle, window / 2).map(|z| {
        let o = oracle(&z);
        mismatch(&format!("√({a})"), &closed, z, o)
    })
}

fn inner_ring_values(ring: &ValuationSubring, window: i64) -> Vec<Value> {
    values(ring.rank(), window / 2)
        .into_iter()
        .filter(|v| ring.contains(v))
        .collect()
}

/// A pair `x, y` in the ring with `xy ∈ I` and neither factor in `I`.
pub fn prime_counterexample(
    ring: &ValuationSubring,
    a: &CutIdeal,
    window: i64,
) -> Option<(Value, Value)> {
    let field = ring.field();
    let pts = inner_ring_values(ring, window);
    for x in pts.iter().filter(|x| !a.contains(ring, x)) {
        for y in pts.iter().filter(|y| !a.contains(ring, y)) {
            if a.contains(ring, &field.mul(x, y)) {
                return Some((x.clone(), y.clone()));
            }
        }
    }
    None
}

/// A pair with `xy ∈ Q`, `x ∉ Q`, and no power of `y` in `Q`.
pub fn primary_counterexample(
    ring: &ValuationSubring,
    a: &CutIdeal,
    window: i64,
) -> Option<(Value, Value)> {
    let field = ring.field();
    let pts = inner_ring_values(ring, window);
    for x in pts.iter().filter(|x| !a.contains(ring, x)) {
        for y in pts.iter().filter(|y| !radical_member(ring, a, y, window)) {
            if a.contains(ring, &field.mul(x, y)) {
                return Some((x.clone(), y.clone()));
            }
        }
    }
    None
}

pub fn prime_mismatch(ring: &ValuationSubring, a: &CutIdeal, window: i64) -> Option<String> {
    let closed = cut_is_prime(a).ok()?;
    let cx = prime_counterexample(ring, a, window);
    match (closed, cx) {
        (true, Some((x, y))) => Some(format!(
            "{a} declared prime but {x}·{y} ∈ I with neither factor in I"
        )),
        (false, None) => Some(format!(
            "{a} declared not prime but no window counterexample exists"
        )),
        _ => None,
    }
}

pub fn primary_mismatch(ring: &ValuationSubring, a: &CutIdeal, window: i64) -> Option<String> {
    let closed = cut_is_primary(a).ok()?;
    let cx = primary_counterexample(ring, a, window);
    match (closed, cx) {
        (true, Some((x, y))) => Some(format!(
            "{a} declared primary but {x}·{y} ∈ Q, {x} ∉ Q, {y} ∉ √Q"
        )),
        (false, None) => Some(format!(
            "{a} declared not primary but no window counterexample exists"
        )),
        _ => None,
    }
}

/// `⋂ₙ Iⁿ` against membership in `Iⁿ` for every `n ≤ 2W`.
pub fn intersection_of_powers_mismatch(
    ring: &ValuationSubring,
    a: &CutIdeal,
    window: i64,
) -> Option<String> {
    let closed = cut_intersection_of_powers(a);
    let powers: Vec<CutIdeal> = (1..=2 * window as usize)
        .map(|n| cut_power(a, n).expect("n ≥ 1"))
        .collect();
    let oracle = |z: &Value| powers.iter().all(|p| p.contains(ring, z));
    first_mismatch(ring, &closed, oracle, window / 2).map(|z| {
        let o = oracle(&z);
        mismatch(&format!("⋂ powers of {a}"), &closed, z, o)
    })
}

/// Every closed form touching `a` and `b` against its window oracle.
pub fn cross_check(
    ring: &ValuationSubring,
    a: &CutIdeal,
    b: &CutIdeal,
    n: usize,
    window: i64,
) -> Vec<String> {
    let mut out = Vec::new();
    out.extend(sum_mismatch(ring, a, b, window));
    out.extend(product_mismatch(ring, a, b, window));
    out.extend(power_mismatch(ring, a, n, window));
    for c in [a, b] {
        if c.is_proper() {
            out.extend(radical_mismatch(ring, c, window));
            out.extend(prime_mismatch(ring, c, window));
            out.extend(primary_mismatch(ring, c, window));
        }
    }
    out
}

macro_rules! checked {
    ($(#[$doc:meta])* $name:ident($($arg:ident: $ty:ty),*) -> $out:ty = $closed:expr, $oracle:expr) => {
        $(#[$doc])*
        pub fn $name(ring: &ValuationSubring, $($arg: $ty),*) -> Result<$out> {
            let value = $closed;
            match $oracle(ring) {
                Some(why) => Err(Error::OracleDisagreement(why)),
                None => Ok(value),
            }
        }
    };
}

checked!(
    /// [`cut_sum`] confirmed on the default window.
    checked_sum(a: &CutIdeal, b: &CutIdeal) -> CutIdeal = cut_sum(a, b),
    |r| sum_mismatch(r, a, b, DEFAULT_WINDOW)
);
checked!(
    /// [`cut_product`] confirmed on the default window.
    checked_product(a: &CutIdeal, b: &CutIdeal) -> CutIdeal = cut_product(a, b),
    |r| product_mismatch(r, a, b, DEFAULT_WINDOW)
);
checked!(
    /// [`cut_power`] confirmed on the default window.
    checked_power(a: &CutIdeal, n: usize) -> CutIdeal = cut_power(a, n)?,
    |r| power_mismatch(r, a, n, DEFAULT_WINDOW)
);
checked!(
    /// [`cut_radical`] confirmed on the default window.
    checked_radical(a: &CutIdeal) -> CutIdeal = cut_radical(a),
    |r| radical_mismatch(r, a, DEFAULT_WINDOW)
);
checked!(
    /// [`cut_is_prime`] confirmed on the default window.
    checked_is_prime(a: &CutIdeal) -> bool = cut_is_prime(a)?,
    |r| prime_mismatch(r, a, DEFAULT_WINDOW)
);
checked!(
    /// [`cut_is_primary`] confirmed on the default window.
    checked_is_primary(a: &CutIdeal) -> bool = cut_is_primary(a)?,
    |r| primary_mismatch(r, a, DEFAULT_WINDOW)
);

/// A random ideal of `ring` with threshold coordinates in `[-3, 4]`.
pub fn random_cut(rng: &mut impl Rng, ring: &ValuationSubring) -> CutIdeal {
    if ring.level() == 0 || rng.gen_ratio(1, 12) {
        return if rng.gen_bool(0.5) {
            CutIdeal::Zero
        } else {
            CutIdeal::Unit
        };
    }
    let level = rng.gen_range(1..=ring.level());
    loop {
        let p: Vec<i64> = (0..level).map(|_| rng.gen_range(-3..=4)).collect();
        let c = CutIdeal::cut(p);
        // mostly proper cuts; the unit ideal is covered by the branch above
        if c.is_proper() {
            return c;
        }
    }
}

/// Fails with a witness unless `member` is closed under the subring
/// operations on the window: contains `∞` and `0`, closed under
/// multiplication and under `x ⊞ y` (checked for both operands in the
/// inner half so results stay in range).
pub fn subring_violation(
    field: &ValueHyperfield,
    radius: i64,
    member: &dyn Fn(&Value) -> bool,
) -> Option<String> {
    for c in [field.zero(), field.one()] {
        if !member(&c) {
            return Some(format!("missing {c}"));
        }
    }
    let inner: Vec<Value> = values(field.rank(), radius / 2)
        .into_iter()
        .filter(|v| member(v))
        .collect();
    let all = values(field.rank(), radius);
    for x in &inner {
        for y in &inner {
            if !member(&field.mul(x, y)) {
                return Some(format!("{x}·{y} missing"));
            }
            let s = field.add(x, y);
            if let Some(z) = all.iter().find(|z| s.contains(z) && !member(z)) {
                return Some(format!("{z} ∈ {x} ⊞ {y} missing"));
            }
        }
    }
    None
}

/// Fails unless every window element or its inverse is a member.
pub fn valuation_ring_violation(
    field: &ValueHyperfield,
    radius: i64,
    member: &dyn Fn(&Value) -> bool,
) -> Option<String> {
    values(field.rank(), radius)
        .into_iter()
        .find(|x| !member(x) && !member(&field.inverse(x).expect("finite")))
        .map(|x| format!("neither {x} nor its inverse"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(k: usize, level: usize) -> ValuationSubring {
        ValuationSubring::new(&ValueHyperfield::new(k).unwrap(), level).unwrap()
    }

    fn c(s: &str) -> CutIdeal {
        CutIdeal::parse(&ValueHyperfield::new(2).unwrap(), s).unwrap()
    }

    #[test]
    fn worked_examples_agree_with_the_window() {
        let v = ring(2, 2);
        let p = CutIdeal::prime(1);
        assert_eq!(checked_product(&v, &p, &p).unwrap(), c("cut:j=1,p=2"));
        assert_eq!(checked_product(&v, &p, &c("cut:j=2,p=0,5")).unwrap(), p);
        assert_eq!(checked_product(&v, &p, &CutIdeal::Unit).unwrap(), p);
        assert_eq!(
            checked_radical(&v, &c("cut:j=2,p=0,5")).unwrap(),
            CutIdeal::prime(2)
        );
        assert_eq!(checked_radical(&v, &c("cut:j=2,p=1,0")).unwrap(), p);
        assert!(checked_is_prime(&v, &p).unwrap());
        assert!(checked_is_prime(&v, &CutIdeal::prime(2)).unwrap());
        assert!(!checked_is_prime(&v, &c("cut:j=2,p=0,5")).unwrap());
        assert!(checked_is_primary(&v, &c("cut:j=2,p=0,5")).unwrap());
        assert!(!checked_is_primary(&v, &c("cut:j=2,p=1,0")).unwrap());
        let v1 = ring(1, 1);
        let three = CutIdeal::parse(&ValueHyperfield::new(1).unwrap(), "cut:j=1,p=3").unwrap();
        assert_eq!(checked_radical(&v1, &three).unwrap(), CutIdeal::prime(1));
    }

    #[test]
    fn the_non_primary_witness_is_found() {
        let v = ring(2, 2);
        let (x, y) = primary_counterexample(&v, &c("cut:j=2,p=1,0"), DEFAULT_WINDOW).unwrap();
        let f = v.field();
        assert!(c("cut:j=2,p=1,0").contains(&v, &f.mul(&x, &y)));
    }

    #[test]
    fn a_wrong_closed_form_is_caught() {
        // pretend the product of two level-1 primes stayed at p = 1
        let v = ring(2, 2);
        let p = CutIdeal::prime(1);
        let wrong = CutIdeal::prime(1);
        let w = Windowed::of(&v, &p, DEFAULT_WINDOW).members;
        let low = min_prefix_over_pairs(&w, &w, 2, pair_sum);
        let oracle = Windowed::generated(&v, low);
        assert!(first_mismatch(&v, &wrong, oracle, DEFAULT_WINDOW / 2).is_some());
    }

    #[test]
    fn seeded_cases_rank_one_and_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for case in 0..60 {
            let k = 1 + case % 2;
            let r = ring(k, if k == 2 && case % 6 == 1 { 1 } else { k });
            let a = random_cut(&mut rng, &r);
            let b = random_cut(&mut rng, &r);
            let n = rng.gen_range(1..=3);
            let bad = cross_check(&r, &a, &b, n, DEFAULT_WINDOW);
            assert!(bad.is_empty(), "{a} {b} in {r}: {bad:?}");
            if a.is_proper() {
                assert_eq!(intersection_of_powers_mismatch(&r, &a, 8), None);
            }
        }
    }

    #[test]
    fn non_prefix_subsets_fail_the_subring_tests() {
        // up-sets of T_ℤ² with small thresholds that are not prefix rings
        let f = ValueHyperfield::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rings = super::super::enumerate_intermediate_valuation_rings(&f).unwrap();
        let mut tried = 0;
        while tried < 40 {
            let t: Vec<i64> = (0..2).map(|_| rng.gen_range(-3..=3)).collect();
            let level = rng.gen_range(1..=2);
            let strict = rng.gen_bool(0.3);
            let member = move |v: &Value| match v {
                Value::Infinity => true,
                Value::Finite(x) => match x[..level].cmp(&t[..level]) {
                    Ordering::Greater => true,
                    Ordering::Equal => !strict,
                    Ordering::Less => false,
                },
            };
            let is_prefix_ring = rings
                .iter()
                .any(|r| values(2, 6).iter().all(|v| r.contains(v) == member(v)));
            if is_prefix_ring {
                continue;
            }
            tried += 1;
            let fails = subring_violation(&f, 8, &member).is_some()
                || valuation_ring_violation(&f, 8, &member).is_some();
            assert!(fails, "threshold level {level} strict {strict}");
        }
    }
}
