//! Integral closure of hyperideals and of subhyperrings.
//!
//! Integrality of `r` over `I` is decided twice: by searching for a monic
//! dependence `0 ∈ rⁿ + a₁rⁿ⁻¹ + ⋯ + aₙ` with `aᵢ ∈ Iⁱ`, and by the ideal-power
//! test `(I + (r))ⁿ = I·(I + (r))ⁿ⁻¹`. [`ideal_closure`] runs both and
//! refuses to answer if they disagree.

pub mod value;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{
    enumerate_hyperideals, enumerate_hyperideals_incremental, generate, hyperideal_violation,
    prime_set, product_sets, quotient_by_normal_ideal, radical_set, sum_sets, IdealHandle,
    SCAN_LIMIT,
};
use crate::kernel::{
    check_homomorphism, hyper_sum_fold, subring_violation, verify_axioms, Elem, FiniteHyperring,
    HomomorphismTable,
};
use crate::report::{ensure, Report};
use crate::set::ElementSet;

/// A monic dependence `0 ∈ rⁿ + a₁rⁿ⁻¹ + ⋯ + aₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DependenceWitness {
    pub element: Elem,
    pub degree: usize,
    /// `a₁, …, aₙ`.
    pub coefficients: Vec<Elem>,
    /// Value of the folded expression; always contains zero.
    pub resulting_set: ElementSet,
}

impl DependenceWitness {
    /// The terms `rⁿ, a₁rⁿ⁻¹, …, aₙ` in folding order.
    pub fn terms(&self, ring: &FiniteHyperring) -> Vec<Elem> {
        let n = self.degree;
        let mut out = vec![ring.pow(self.element, n)];
        for (i, &a) in self.coefficients.iter().enumerate() {
            out.push(ring.mul(a, ring.pow(self.element, n - 1 - i)));
        }
        out
    }

    /// Recomputes the folded expression from scratch.
    pub fn evaluate(&self, ring: &FiniteHyperring) -> ElementSet {
        hyper_sum_fold(ring, &self.terms(ring)).expect("at least one term")
    }

    pub fn display<'a>(&'a self, ring: &'a FiniteHyperring) -> impl fmt::Display + 'a {
        ShowWitness { w: self, ring }
    }
}

struct ShowWitness<'a> {
    w: &'a DependenceWitness,
    ring: &'a FiniteHyperring,
}

impl fmt::Display for ShowWitness<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.ring.label(self.w.element);
        let n = self.w.degree;
        let mut parts = vec![if n == 1 {
            r.to_string()
        } else {
            format!("{r}^{n}")
        }];
        for (i, &a) in self.w.coefficients.iter().enumerate() {
            let a = self.ring.label(a);
            parts.push(match n - 1 - i {
                0 => a.to_string(),
                1 => format!("{a}·{r}"),
                k => format!("{a}·{r}^{k}"),
            });
        }
        write!(
            f,
            "0 ∈ {} = {}",
            parts.join(" + "),
            self.ring.show_set(&self.w.resulting_set)
        )
    }
}

/// Shortest monic dependence of degree `≤ max_degree` whose `i`-th
/// coefficient is drawn from `coeffs(i)`.
///
/// Each degree is a layered search over the distinct partial sums, so the
/// work is bounded by `2^|R|` states per layer rather than by the number of
/// coefficient tuples.
fn find_dependence(
    ring: &FiniteHyperring,
    r: Elem,
    max_degree: usize,
    coeffs: impl Fn(usize) -> ElementSet,
) -> Option<DependenceWitness> {
    let zero = ring.zero();
    for n in 1..=max_degree {
        let start = ring.set_of([ring.pow(r, n)]);
        // layers[i] maps each reachable partial sum to (previous sum, aᵢ)
        let mut layers: Vec<BTreeMap<ElementSet, (ElementSet, Elem)>> = Vec::with_capacity(n);
        let mut frontier: BTreeSet<ElementSet> = BTreeSet::from([start]);
        for i in 1..=n {
            let rk = ring.pow(r, n - i);
            let mut terms: BTreeMap<Elem, Elem> = BTreeMap::new();
            for a in &coeffs(i) {
                terms.entry(ring.mul(a, rk)).or_insert(a);
            }
            let mut next = BTreeMap::new();
            for s in &frontier {
                for (&t, &a) in &terms {
                    next.entry(ring.add_sets(s, &ring.set_of([t])))
                        .or_insert((*s, a));
                }
            }
            frontier = next.keys().copied().collect();
            layers.push(next);
        }
        if let Some(hit) = frontier.iter().find(|s| s.contains(zero)) {
            let mut coefficients = vec![zero; n];
            let mut cur = *hit;
            for i in (0..n).rev() {
                let (prev, a) = layers[i][&cur];
                coefficients[i] = a;
                cur = prev;
            }
            return Some(DependenceWitness {
                element: r,
                degree: n,
                coefficients,
                resulting_set: *hit,
            });
        }
    }
    None
}

fn check_elem(ring: &FiniteHyperring, x: Elem) -> Result<()> {
    if x >= ring.size() {
        return Err(Error::IndexOutOfRange {
            table: "element",
            index: x,
            size: ring.size(),
        });
    }
    Ok(())
}

pub fn default_max_degree(ring: &FiniteHyperring) -> usize {
    ring.size() + 1
}

/// `I, I², …, I^max` (index 0 holds `I`).
fn ideal_powers(ring: &FiniteHyperring, ideal: &ElementSet, max: usize) -> Vec<ElementSet> {
    let mut out = vec![*ideal];
    while out.len() < max {
        let last = *out.last().unwrap();
        let next = product_sets(ring, ideal, &last);
        out.push(next);
    }
    out
}

/// Searches for `0 ∈ rⁿ + a₁rⁿ⁻¹ + ⋯ + aₙ` with `aᵢ ∈ Iⁱ` and `n ≤ max_degree`
/// (default `|R| + 1`). Returns the lowest-degree witness found.
pub fn integral_dependence(
    ideal: &IdealHandle,
    r: Elem,
    max_degree: Option<usize>,
) -> Result<Option<DependenceWitness>> {
    let ring = ideal.ring();
    check_elem(ring, r)?;
    let max = max_degree.unwrap_or_else(|| default_max_degree(ring));
    let powers = ideal_powers(ring, ideal.set(), max.max(1));
    Ok(find_dependence(ring, r, max, |i| powers[i - 1]))
}

pub fn is_integral_over_ideal(
    ideal: &IdealHandle,
    r: Elem,
    max_degree: Option<usize>,
) -> Result<bool> {
    Ok(integral_dependence(ideal, r, max_degree)?.is_some())
}

/// Smallest `n ≥ 1` with `Jⁿ = I·Jⁿ⁻¹` where `J = I + (r)` and `J⁰ = R`.
///
/// `Jⁿ` descends and stabilizes at some `K` within `|R|` steps; beyond that
/// the test is the fixed equation `K = I·K`, so scanning one step past the
/// stabilization index is complete.
pub fn power_criterion_exponent(ideal: &IdealHandle, r: Elem) -> Result<Option<usize>> {
    let ring = ideal.ring();
    check_elem(ring, r)?;
    let i = ideal.set();
    let j = sum_sets(ring, i, &generate(ring, &ring.set_of([r])));
    let mut prev = ring.full_set(); // J⁰
    let mut cur = j; // J¹
    let mut n = 1;
    let mut stable_at: Option<usize> = None;
    loop {
        if cur == product_sets(ring, i, &prev) {
            return Ok(Some(n));
        }
        if let Some(k) = stable_at {
            if n > k {
                return Ok(None);
            }
        }
        let next = product_sets(ring, &j, &cur);
        if next == cur && stable_at.is_none() {
            stable_at = Some(n);
        }
        prev = cur;
        cur = next;
        n += 1;
    }
}

pub fn is_integral_power_criterion(ideal: &IdealHandle, r: Elem) -> Result<bool> {
    Ok(power_criterion_exponent(ideal, r)?.is_some())
}

/// `Ī` with a dependence witness for every element outside `I`.
pub struct ClosureResult<'r> {
    pub ideal: IdealHandle<'r>,
    pub closure: ElementSet,
    pub witnesses: BTreeMap<Elem, DependenceWitness>,
    pub is_closed: bool,
}

impl fmt::Debug for ClosureResult<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureResult")
            .field("ideal", &self.ideal)
            .field("closure", &self.ideal.ring().show_set(&self.closure))
            .field("is_closed", &self.is_closed)
            .finish()
    }
}

/// `Ī`, decided by the dependence search and confirmed by the power test.
pub fn ideal_closure<'r>(ideal: &IdealHandle<'r>) -> Result<ClosureResult<'r>> {
    let ring = ideal.ring();
    let max = default_max_degree(ring);
    let powers = ideal_powers(ring, ideal.set(), max);
    let mut closure = ring.empty_set();
    let mut witnesses = BTreeMap::new();
    for r in ring.elements() {
        let found = find_dependence(ring, r, max, |i| powers[i - 1]);
        let by_powers = power_criterion_exponent(ideal, r)?;
        if found.is_some() != by_powers.is_some() {
            return Err(Error::OracleDisagreement(format!(
                "{} over {}: dependence search says {}, ideal-power test says {}",
                ring.label(r),
                ring.show_set(ideal.set()),
                found.is_some(),
                by_powers.is_some()
            )));
        }
        if let Some(w) = found {
            closure.insert(r);
            if !ideal.set().contains(r) {
                witnesses.insert(r, w);
            }
        }
    }
    Ok(ClosureResult {
        ideal: IdealHandle::trusted(ring, *ideal.set()),
        is_closed: closure == *ideal.set(),
        closure,
        witnesses,
    })
}

fn require_subring(ring: &FiniteHyperring, sub: &ElementSet) -> Result<()> {
    ring.require_verified()?;
    if sub.width() != ring.size() {
        return Err(Error::MismatchedRings);
    }
    if subring_violation(ring, sub).is_some() {
        return Err(Error::NotSubring);
    }
    Ok(())
}

/// Monic dependence of `x` with coefficients in the subhyperring `sub`.
pub fn subring_dependence(
    ring: &FiniteHyperring,
    sub: &ElementSet,
    x: Elem,
    max_degree: Option<usize>,
) -> Result<Option<DependenceWitness>> {
    require_subring(ring, sub)?;
    check_elem(ring, x)?;
    let max = max_degree.unwrap_or_else(|| default_max_degree(ring));
    Ok(find_dependence(ring, x, max, |_| *sub))
}

pub fn is_integral_over_subring(
    ring: &FiniteHyperring,
    sub: &ElementSet,
    x: Elem,
    max_degree: Option<usize>,
) -> Result<bool> {
    Ok(subring_dependence(ring, sub, x, max_degree)?.is_some())
}

/// Every element of `ring` integral over `sub`.
pub fn subring_integral_closure(ring: &FiniteHyperring, sub: &ElementSet) -> Result<ElementSet> {
    require_subring(ring, sub)?;
    let max = default_max_degree(ring);
    Ok(ring.set_of(
        ring.elements()
            .filter(|&x| find_dependence(ring, x, max, |_| *sub).is_some()),
    ))
}

/// All finite hyper-sums of differences `y - y` with `y ∈ I`.
pub fn difference_condition_set(ideal: &IdealHandle) -> ElementSet {
    let ring = ideal.ring();
    let mut base = ring.zero_set();
    for y in ideal.set() {
        base = base.union(&ring.sub(y, y));
    }
    let mut acc = base;
    loop {
        let next = acc.union(&ring.add_sets(&acc, &base));
        if next == acc {
            return acc;
        }
        acc = next;
    }
}

fn show(ring: &FiniteHyperring, s: &ElementSet) -> String {
    ring.show_set(s)
}

/// Checks the elementary closure laws on every hyperideal of `ring`:
/// `I ⊆ Ī ⊆ √I`, prime ideals are closed, closure is monotone, the
/// nilradical lies in every closure, intersections of closed ideals are
/// closed, homomorphisms carry `Ī` into the closure of the extended ideal,
/// and `Ī` is a hyperideal whenever the difference sums of `I` are `{0}`.
///
/// Homomorphisms checked are the identity, the projection onto every
/// quotient by a normal ideal, and `extra`.
pub fn remark_property_suite(
    ring: &FiniteHyperring,
    extra: &[HomomorphismTable],
) -> Result<Report> {
    ring.require_verified()?;
    let ideals = if ring.size() <= SCAN_LIMIT {
        enumerate_hyperideals(ring)?
    } else {
        enumerate_hyperideals_incremental(ring)?
    };
    let mut report = Report::new();
    let name = ring.name();

    let mut closures: Vec<ElementSet> = Vec::with_capacity(ideals.len());
    for set in &ideals {
        let handle = IdealHandle::trusted(ring, *set);
        match ideal_closure(&handle) {
            Ok(c) => {
                for w in c.witnesses.values() {
                    let value = w.evaluate(ring);
                    report.check(
                        format!("witness/{}/{}", show(ring, set), ring.label(w.element)),
                        "stored dependence re-evaluates to a set containing 0",
                        ensure(
                            value.contains(ring.zero()) && value == w.resulting_set,
                            || {
                                format!(
                                    "{} re-evaluates to {}",
                                    w.display(ring),
                                    show(ring, &value)
                                )
                            },
                        ),
                    );
                }
                closures.push(c.closure);
            }
            Err(e) => {
                report.check(
                    format!("oracles/{}", show(ring, set)),
                    "dependence search and ideal-power test agree",
                    Err(e.to_string()),
                );
                closures.push(ring.empty_set());
            }
        }
    }
    if !report.passed() {
        return Ok(report.scoped(name));
    }

    let nil = radical_set(ring, &ring.zero_set());
    for (set, bar) in ideals.iter().zip(&closures) {
        let id = show(ring, set);
        let rad = radical_set(ring, set);
        report.check(
            format!("contains/{id}"),
            "I ⊆ Ī",
            ensure(set.is_subset(bar), || format!("Ī = {}", show(ring, bar))),
        );
        report.check(
            format!("radical/{id}"),
            "Ī ⊆ √I",
            ensure(bar.is_subset(&rad), || {
                format!("Ī = {}, √I = {}", show(ring, bar), show(ring, &rad))
            }),
        );
        if *set != ring.full_set() && prime_set(ring, set) {
            report.check(
                format!("prime/{id}"),
                "a prime ideal is integrally closed",
                ensure(bar == set, || format!("Ī = {}", show(ring, bar))),
            );
        }
        report.check(
            format!("nilradical/{id}"),
            "the nilradical lies in Ī",
            ensure(nil.is_subset(bar), || {
                format!("nilradical {} ⊄ Ī = {}", show(ring, &nil), show(ring, bar))
            }),
        );
        let diff = difference_condition_set(&IdealHandle::trusted(ring, *set));
        if diff == ring.zero_set() {
            report.check(
                format!("difference/{id}"),
                "Ī is a hyperideal when all difference sums of I are {0}",
                match hyperideal_violation(ring, bar) {
                    None => Ok(()),
                    Some(why) => Err(format!("Ī = {}: {why}", show(ring, bar))),
                },
            );
        }
    }

    for (a, abar) in ideals.iter().zip(&closures) {
        for (b, bbar) in ideals.iter().zip(&closures) {
            if a != b && a.is_subset(b) {
                report.check(
                    format!("monotone/{}/{}", show(ring, a), show(ring, b)),
                    "I ⊆ J implies Ī ⊆ J̄",
                    ensure(abar.is_subset(bbar), || {
                        format!("{} ⊄ {}", show(ring, abar), show(ring, bbar))
                    }),
                );
            }
        }
    }

    // every family reduces to pairwise meets plus the meet of all closed ideals
    let closed: Vec<ElementSet> = ideals
        .iter()
        .zip(&closures)
        .filter(|(s, c)| s == c)
        .map(|(s, _)| *s)
        .collect();
    let mut families: Vec<ElementSet> = Vec::new();
    for (k, a) in closed.iter().enumerate() {
        for b in &closed[k + 1..] {
            families.push(a.intersection(b));
        }
    }
    if let Some(all) = closed.iter().copied().reduce(|a, b| a.intersection(&b)) {
        families.push(all);
    }
    families.sort();
    families.dedup();
    for meet in families {
        let id = show(ring, &meet);
        let outcome = match IdealHandle::new(ring, meet).and_then(|h| ideal_closure(&h)) {
            Ok(c) => ensure(c.is_closed, || {
                format!("closure of {id} is {}", show(ring, &c.closure))
            }),
            Err(e) => Err(e.to_string()),
        };
        report.check(
            format!("intersection/{id}"),
            "an intersection of closed ideals is closed",
            outcome,
        );
    }

    let identity = HomomorphismTable::identity(ring);
    report.extend(image_checks(&identity, &ideals, &closures, "identity")?);
    for (k, h) in extra.iter().enumerate() {
        if !std::ptr::eq(h.source, ring) {
            return Err(Error::MismatchedRings);
        }
        report.extend(image_checks(h, &ideals, &closures, &format!("map{k}"))?);
    }
    for set in &ideals {
        let handle = IdealHandle::trusted(ring, *set);
        if !handle.is_normal() {
            continue;
        }
        let tag = format!("quotient{}", show(ring, set));
        match quotient_by_normal_ideal(&handle) {
            Ok(q) if verify_axioms(&q.ring).passed() => {
                let h = q.homomorphism(ring);
                report.extend(image_checks(&h, &ideals, &closures, &tag)?);
            }
            Ok(_) => report.info(tag, "quotient skipped", "coset structure fails the axioms"),
            Err(e) => report.info(tag, "quotient skipped", e.to_string()),
        }
    }
    Ok(report.scoped(name))
}

/// `f(Ī) ⊆ closure of the ideal generated by f(I)`, for every ideal.
fn image_checks(
    h: &HomomorphismTable,
    ideals: &[ElementSet],
    closures: &[ElementSet],
    tag: &str,
) -> Result<Report> {
    let mut report = Report::new();
    let failures = check_homomorphism(h)?;
    if !failures.is_empty() {
        report.info(
            format!("image/{tag}"),
            "map skipped",
            format!("not a homomorphism: {:?}", failures[0]),
        );
        return Ok(report);
    }
    let (src, dst) = (h.source, h.target);
    for (set, bar) in ideals.iter().zip(closures) {
        let extended = generate(dst, &h.image(set));
        let target = IdealHandle::trusted(dst, extended);
        let outcome = match ideal_closure(&target) {
            Ok(c) => {
                let img = h.image(bar);
                ensure(img.is_subset(&c.closure), || {
                    format!("f(Ī) = {} ⊄ {}", show(dst, &img), show(dst, &c.closure))
                })
            }
            Err(e) => Err(e.to_string()),
        };
        report.check(
            format!("image/{tag}/{}", show(src, set)),
            "f(Ī) lies in the closure of f(I)L",
            outcome,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{is_hyperideal, power_sets};
    use crate::known;

    fn four() -> FiniteHyperring {
        known::verified(known::four_element())
    }

    fn handle<'r>(r: &'r FiniteHyperring, s: &str) -> IdealHandle<'r> {
        IdealHandle::new(r, r.parse_set(s).unwrap()).unwrap()
    }

    /// Tries every coefficient tuple directly, with no shared state.
    fn brute_force(ring: &FiniteHyperring, ideal: &ElementSet, r: Elem, max: usize) -> bool {
        for n in 1..=max {
            let pools: Vec<Vec<Elem>> = (1..=n)
                .map(|i| power_sets(ring, ideal, i).iter().collect())
                .collect();
            let mut idx = vec![0usize; n];
            loop {
                let mut terms = vec![ring.pow(r, n)];
                for i in 0..n {
                    terms.push(ring.mul(pools[i][idx[i]], ring.pow(r, n - 1 - i)));
                }
                if hyper_sum_fold(ring, &terms).unwrap().contains(ring.zero()) {
                    return true;
                }
                let mut k = 0;
                while k < n {
                    idx[k] += 1;
                    if idx[k] < pools[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
        false
    }

    #[test]
    fn closures_of_the_four_element_ring() {
        let r = four();
        for (i, bar) in [("0", "0"), ("0,b", "0,b"), ("0,c", "0,c")] {
            let c = ideal_closure(&handle(&r, i)).unwrap();
            assert_eq!(c.closure, r.parse_set(bar).unwrap(), "closure of {{{i}}}");
            assert!(c.is_closed);
        }
        let full = ideal_closure(&handle(&r, "0,a,b,c")).unwrap();
        assert!(full.is_closed);
        assert_eq!(full.witnesses.len(), 0);
    }

    #[test]
    fn non_membership_over_zero_b() {
        let r = four();
        let b = handle(&r, "0,b");
        let (a, c) = (r.index_of("a").unwrap(), r.index_of("c").unwrap());
        assert!(!is_integral_over_ideal(&b, a, None).unwrap());
        assert!(!is_integral_over_ideal(&b, c, None).unwrap());
        // the partial sums never contain 0 even far past the default bound
        assert!(!is_integral_over_ideal(&b, a, Some(12)).unwrap());
    }

    #[test]
    fn the_printed_expression_contains_zero() {
        // a² + b·a + c: the computation that shows {0,b,c} is not closed
        let r = four();
        let [a, b, c] = ["a", "b", "c"].map(|l| r.index_of(l).unwrap());
        let terms = [r.pow(a, 2), r.mul(b, a), c];
        assert_eq!(
            hyper_sum_fold(&r, &terms).unwrap(),
            r.parse_set("0,b").unwrap()
        );
        let w = DependenceWitness {
            element: a,
            degree: 2,
            coefficients: vec![b, c],
            resulting_set: r.parse_set("0,b").unwrap(),
        };
        assert_eq!(w.evaluate(&r), w.resulting_set);
        assert_eq!(w.display(&r).to_string(), "0 ∈ a^2 + b·a + c = {0,b}");
    }

    #[test]
    fn members_are_integral_with_degree_one() {
        let r = four();
        for s in ["0", "0,b", "0,c", "0,a,b,c"] {
            let i = handle(&r, s);
            for x in i.set() {
                let w = integral_dependence(&i, x, None).unwrap().unwrap();
                assert_eq!(w.degree, 1);
                assert_eq!(w.coefficients, vec![r.neg(x)]);
            }
        }
    }

    #[test]
    fn power_criterion_examples() {
        let r = four();
        let b = r.index_of("b").unwrap();
        assert_eq!(power_criterion_exponent(&handle(&r, "0"), b).unwrap(), None);
        for x in r.elements() {
            assert_eq!(
                power_criterion_exponent(&handle(&r, "0,a,b,c"), x).unwrap(),
                Some(1)
            );
        }
    }

    #[test]
    fn oracles_agree_on_every_pair_of_every_fixture() {
        for ring in known::all_verified()
            .into_iter()
            .chain([known::verified(known::integers_mod(8))])
        {
            for set in enumerate_hyperideals(&ring).unwrap() {
                let i = IdealHandle::trusted(&ring, set);
                for x in ring.elements() {
                    let search = is_integral_over_ideal(&i, x, None).unwrap();
                    let powers = is_integral_power_criterion(&i, x).unwrap();
                    assert_eq!(search, powers, "{} {:?} {}", ring.name(), i, ring.label(x));
                    if ring.size() <= 4 {
                        assert_eq!(search, brute_force(&ring, &set, x, ring.size() + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn four_element_pairs_number_sixteen() {
        let r = four();
        let ideals = enumerate_hyperideals(&r).unwrap();
        assert_eq!(ideals.len() * r.size(), 16);
    }

    #[test]
    fn classical_closures_in_z8() {
        // 2³ = 0, so 2 is integral over every ideal
        let r = known::verified(known::integers_mod(8));
        let c = ideal_closure(&handle(&r, "0,4")).unwrap();
        assert_eq!(c.closure, r.parse_set("0,2,4,6").unwrap());
        // the closure of 0 is the nilradical
        let c = ideal_closure(&handle(&r, "0")).unwrap();
        assert_eq!(c.closure, r.parse_set("0,2,4,6").unwrap());
    }

    #[test]
    fn difference_sets() {
        let r = four();
        assert_eq!(
            difference_condition_set(&handle(&r, "0,b")),
            r.parse_set("0,b").unwrap()
        );
        assert_eq!(difference_condition_set(&handle(&r, "0")), r.zero_set());
        let z4 = known::verified(known::integers_mod(4));
        for s in enumerate_hyperideals(&z4).unwrap() {
            assert_eq!(
                difference_condition_set(&IdealHandle::trusted(&z4, s)),
                z4.zero_set()
            );
        }
    }

    #[test]
    fn subring_closure() {
        let r = four();
        assert_eq!(
            subring_integral_closure(&r, &r.full_set()).unwrap(),
            r.full_set()
        );
        let bad = r.parse_set("0,b").unwrap();
        assert_eq!(subring_integral_closure(&r, &bad), Err(Error::NotSubring));
        let s = known::verified(known::sign_hyperfield());
        let prime_field = s.parse_set("0,1,-1").unwrap();
        for x in s.elements() {
            assert!(is_integral_over_subring(&s, &prime_field, x, None).unwrap());
        }
    }

    #[test]
    fn remark_suite_passes_on_fixtures() {
        for ring in known::all_verified() {
            let report = remark_property_suite(&ring, &[]).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn corollary_hypothesis_is_met_somewhere() {
        let r = four();
        let i = handle(&r, "0,c");
        assert_eq!(difference_condition_set(&i), r.zero_set());
        let c = ideal_closure(&i).unwrap();
        assert!(is_hyperideal(&r, &c.closure).unwrap());
    }

    #[test]
    fn witness_errors_on_bad_index() {
        let r = four();
        let i = handle(&r, "0");
        assert!(matches!(
            integral_dependence(&i, 9, None),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
