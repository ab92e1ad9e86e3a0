//! Hyperideals of finite hyperrings: membership tests, generation, ideal
//! arithmetic, radicals, the prime/primary/maximal/normal predicates,
//! enumeration, and quotients by normal hyperideals.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::kernel::{verify_axioms, Elem, FiniteHyperring, HomomorphismTable};
use crate::set::ElementSet;

/// Subset scans above this carrier size are refused.
pub const SCAN_LIMIT: usize = 20;

fn check_width(ring: &FiniteHyperring, set: &ElementSet) -> Result<()> {
    if set.width() != ring.size() {
        return Err(Error::MismatchedRings);
    }
    Ok(())
}

/// First closure failure of `set`, rendered with labels.
pub fn hyperideal_violation(ring: &FiniteHyperring, set: &ElementSet) -> Option<String> {
    if set.is_empty() {
        return Some("empty set".into());
    }
    for a in set {
        for b in set {
            let diff = ring.sub(a, b);
            if !diff.is_subset(set) {
                return Some(format!(
                    "{} - {} = {} ⊄ {}",
                    ring.label(a),
                    ring.label(b),
                    ring.show_set(&diff),
                    ring.show_set(set)
                ));
            }
        }
        for r in ring.elements() {
            let p = ring.mul(r, a);
            if !set.contains(p) {
                return Some(format!(
                    "{}·{} = {} ∉ {}",
                    ring.label(r),
                    ring.label(a),
                    ring.label(p),
                    ring.show_set(set)
                ));
            }
        }
    }
    None
}

/// Closed under `a - b` (as a set) and under multiplication by the ring.
pub fn is_hyperideal(ring: &FiniteHyperring, set: &ElementSet) -> Result<bool> {
    ring.require_verified()?;
    check_width(ring, set)?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(hyperideal_violation(ring, set).is_none())
}

/// Least hyperideal containing `gens`.
pub fn ideal_generated_by(ring: &FiniteHyperring, gens: &ElementSet) -> Result<ElementSet> {
    ring.require_verified()?;
    check_width(ring, gens)?;
    Ok(generate(ring, gens))
}

pub(crate) fn generate(ring: &FiniteHyperring, gens: &ElementSet) -> ElementSet {
    let mut set = gens.union(&ring.zero_set());
    let mut frontier: Vec<Elem> = set.iter().collect();
    while let Some(x) = frontier.pop() {
        let mut found = ring.empty_set();
        for y in &set {
            found = found.union(&ring.sub(x, y)).union(&ring.sub(y, x));
        }
        for r in ring.elements() {
            found.insert(ring.mul(r, x));
        }
        for z in &found.difference(&set) {
            set.insert(z);
            frontier.push(z);
        }
    }
    set
}

/// Hyperideal generated by `⋃ a + b`.
pub(crate) fn sum_sets(ring: &FiniteHyperring, a: &ElementSet, b: &ElementSet) -> ElementSet {
    generate(ring, &ring.add_sets(a, b))
}

/// Hyperideal generated by all products `ab`.
pub(crate) fn product_sets(ring: &FiniteHyperring, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut prods = ring.empty_set();
    for x in a {
        for y in b {
            prods.insert(ring.mul(x, y));
        }
    }
    generate(ring, &prods)
}

pub(crate) fn power_sets(ring: &FiniteHyperring, a: &ElementSet, n: usize) -> ElementSet {
    assert!(n >= 1, "ideal powers start at 1");
    (1..n).fold(*a, |acc, _| product_sets(ring, a, &acc))
}

pub(crate) fn radical_set(ring: &FiniteHyperring, a: &ElementSet) -> ElementSet {
    // x, x², … is eventually periodic with tail + period ≤ |R|
    let n = ring.size();
    ring.set_of(ring.elements().filter(|&x| {
        let mut p = x;
        for _ in 0..n {
            if a.contains(p) {
                return true;
            }
            p = ring.mul(p, x);
        }
        false
    }))
}

pub(crate) fn normal_violation(ring: &FiniteHyperring, set: &ElementSet) -> Option<String> {
    for r in ring.elements() {
        let s = ring.add_sets(
            &ring.add_sets(&ring.set_of([r]), set),
            &ring.set_of([ring.neg(r)]),
        );
        if !s.is_subset(set) {
            return Some(format!(
                "{} + I - {} = {} ⊄ I",
                ring.label(r),
                ring.label(r),
                ring.show_set(&s)
            ));
        }
    }
    None
}

pub(crate) fn prime_set(ring: &FiniteHyperring, set: &ElementSet) -> bool {
    ring.elements().all(|a| {
        ring.elements()
            .all(|b| !set.contains(ring.mul(a, b)) || set.contains(a) || set.contains(b))
    })
}

pub(crate) fn primary_set(ring: &FiniteHyperring, set: &ElementSet) -> bool {
    let rad = radical_set(ring, set);
    ring.elements().all(|x| {
        ring.elements()
            .all(|y| !set.contains(ring.mul(x, y)) || set.contains(x) || rad.contains(y))
    })
}

pub(crate) fn maximal_set(ring: &FiniteHyperring, set: &ElementSet) -> bool {
    let full = ring.full_set();
    set.complement()
        .iter()
        .all(|x| generate(ring, &set.union(&ring.set_of([x]))) == full)
}

/// A hyperideal of a specific verified ring, with write-once predicate caches.
pub struct IdealHandle<'r> {
    ring: &'r FiniteHyperring,
    set: ElementSet,
    prime: OnceLock<bool>,
    primary: OnceLock<bool>,
    maximal: OnceLock<bool>,
    normal: OnceLock<bool>,
}

impl<'r> IdealHandle<'r> {
    /// Fails with [`Error::NotAnIdeal`] (carrying a witness) unless `set` is a hyperideal.
    pub fn new(ring: &'r FiniteHyperring, set: ElementSet) -> Result<Self> {
        if !is_hyperideal(ring, &set)? {
            let why = hyperideal_violation(ring, &set).unwrap_or_default();
            return Err(Error::NotAnIdeal(why));
        }
        Ok(Self::trusted(ring, set))
    }

    pub(crate) fn trusted(ring: &'r FiniteHyperring, set: ElementSet) -> Self {
        IdealHandle {
            ring,
            set,
            prime: OnceLock::new(),
            primary: OnceLock::new(),
            maximal: OnceLock::new(),
            normal: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &'r FiniteHyperring {
        self.ring
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn is_proper(&self) -> bool {
        self.set != self.ring.full_set()
    }

    fn require_proper(&self) -> Result<()> {
        if self.is_proper() {
            Ok(())
        } else {
            Err(Error::ImproperIdeal)
        }
    }

    pub fn is_prime(&self) -> Result<bool> {
        self.require_proper()?;
        Ok(*self.prime.get_or_init(|| prime_set(self.ring, &self.set)))
    }

    pub fn is_primary(&self) -> Result<bool> {
        self.require_proper()?;
        Ok(*self
            .primary
            .get_or_init(|| primary_set(self.ring, &self.set)))
    }

    /// No strictly larger proper hyperideal exists.
    pub fn is_maximal(&self) -> Result<bool> {
        self.require_proper()?;
        Ok(*self
            .maximal
            .get_or_init(|| maximal_set(self.ring, &self.set)))
    }

    /// `r + I - r ⊆ I` for every `r`.
    pub fn is_normal(&self) -> bool {
        *self
            .normal
            .get_or_init(|| normal_violation(self.ring, &self.set).is_none())
    }

    pub fn radical(&self) -> ElementSet {
        radical_set(self.ring, &self.set)
    }

    fn same_ring(&self, other: &IdealHandle) -> Result<()> {
        if std::ptr::eq(self.ring, other.ring) {
            Ok(())
        } else {
            Err(Error::MismatchedRings)
        }
    }
}

impl std::fmt::Debug for IdealHandle<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal{}", self.ring.show_set(&self.set))
    }
}

pub fn ideal_sum(i: &IdealHandle, j: &IdealHandle) -> Result<ElementSet> {
    i.same_ring(j)?;
    Ok(sum_sets(i.ring, &i.set, &j.set))
}

pub fn ideal_product(i: &IdealHandle, j: &IdealHandle) -> Result<ElementSet> {
    i.same_ring(j)?;
    Ok(product_sets(i.ring, &i.set, &j.set))
}

/// `I¹ = I`, `Iⁿ = I·Iⁿ⁻¹`.
pub fn ideal_power(i: &IdealHandle, n: usize) -> Result<ElementSet> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    Ok(power_sets(i.ring, &i.set, n))
}

pub fn radical(i: &IdealHandle) -> ElementSet {
    i.radical()
}

pub fn nilradical(ring: &FiniteHyperring) -> Result<ElementSet> {
    ring.require_verified()?;
    Ok(radical_set(ring, &ring.zero_set()))
}

/// Every hyperideal, in canonical (bitmask) order, by a full subset scan.
pub fn enumerate_hyperideals(ring: &FiniteHyperring) -> Result<Vec<ElementSet>> {
    ring.require_verified()?;
    let n = ring.size();
    if n > SCAN_LIMIT {
        return Err(Error::EnumerationTooLarge(n));
    }
    let zero = ring.zero();
    let others: Vec<Elem> = ring.elements().filter(|&x| x != zero).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << others.len()) {
        let mut set = ring.zero_set();
        for (i, &x) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                set.insert(x);
            }
        }
        if hyperideal_violation(ring, &set).is_none() {
            out.push(set);
        }
    }
    out.sort();
    Ok(out)
}

/// Every hyperideal, found by closing `I ∪ {x}` from `{0}` upward. Works
/// for any carrier size and visits only actual hyperideals.
pub fn enumerate_hyperideals_incremental(ring: &FiniteHyperring) -> Result<Vec<ElementSet>> {
    ring.require_verified()?;
    let mut seen = std::collections::BTreeSet::new();
    let start = generate(ring, &ring.zero_set());
    let mut stack = vec![start];
    seen.insert(start);
    while let Some(i) = stack.pop() {
        for x in &i.complement() {
            let j = generate(ring, &i.union(&ring.set_of([x])));
            if seen.insert(j) {
                stack.push(j);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `R/I` together with the projection `x ↦ x + I`.
pub struct Quotient {
    pub ring: FiniteHyperring,
    pub projection: Vec<Elem>,
}

impl Quotient {
    pub fn homomorphism<'a>(&'a self, source: &'a FiniteHyperring) -> HomomorphismTable<'a> {
        HomomorphismTable {
            source,
            target: &self.ring,
            map: self.projection.clone(),
        }
    }
}

/// Cosets `x + I` with `(x+I) ⊕ (y+I) = { z+I : z ∈ x'+y' }` over all
/// representatives and multiplication through representatives. The returned
/// ring has already been through [`verify_axioms`].
pub fn quotient_by_normal_ideal(i: &IdealHandle) -> Result<Quotient> {
    let ring = i.ring;
    if let Some(why) = normal_violation(ring, &i.set) {
        return Err(Error::NotNormal(why));
    }
    let coset = |x: Elem| ring.add_sets(&ring.set_of([x]), &i.set);
    let mut cosets: Vec<ElementSet> = Vec::new();
    let mut projection = vec![0; ring.size()];
    for x in ring.elements() {
        let c = coset(x);
        let idx = match cosets.iter().position(|d| *d == c) {
            Some(idx) => idx,
            None => {
                if let Some(d) = cosets.iter().find(|d| !d.intersection(&c).is_empty()) {
                    return Err(Error::QuotientNotWellDefined(format!(
                        "cosets {} and {} overlap",
                        ring.show_set(d),
                        ring.show_set(&c)
                    )));
                }
                cosets.push(c);
                cosets.len() - 1
            }
        };
        projection[x] = idx;
    }
    let m = cosets.len();
    let mut add = vec![vec![Vec::new(); m]; m];
    let mut mul = vec![vec![0; m]; m];
    for (p, cp) in cosets.iter().enumerate() {
        for (q, cq) in cosets.iter().enumerate() {
            let sum = ring.add_sets(cp, cq);
            let mut classes: Vec<Elem> = sum.iter().map(|z| projection[z]).collect();
            classes.sort_unstable();
            classes.dedup();
            add[p][q] = classes;

            let mut products = cp.iter().flat_map(|x| cq.iter().map(move |y| (x, y)));
            let (x0, y0) = products.next().expect("cosets are nonempty");
            let class = projection[ring.mul(x0, y0)];
            if let Some((x, y)) = products.find(|&(x, y)| projection[ring.mul(x, y)] != class) {
                return Err(Error::QuotientNotWellDefined(format!(
                    "{}·{} and {}·{} land in different cosets",
                    ring.label(x0),
                    ring.label(y0),
                    ring.label(x),
                    ring.label(y)
                )));
            }
            mul[p][q] = class;
        }
    }
    let labels = cosets.iter().map(|c| ring.show_set(c)).collect();
    let name = format!("{}/{}", ring.name(), ring.show_set(&i.set));
    let quotient = FiniteHyperring::new(
        name,
        labels,
        projection[ring.zero()],
        projection[ring.one()],
        add,
        mul,
    )?;
    verify_axioms(&quotient);
    Ok(Quotient {
        ring: quotient,
        projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_homomorphism, classify};
    use crate::known;

    const A: Elem = 1;
    const B: Elem = 2;
    const C: Elem = 3;

    #[test]
    fn hyperideals_of_the_four_element_ring() {
        let r = known::verified(known::four_element());
        for s in [
            r.set_of([0]),
            r.set_of([0, B]),
            r.set_of([0, C]),
            r.full_set(),
        ] {
            assert!(is_hyperideal(&r, &s).unwrap(), "{}", r.show_set(&s));
        }
        let j = r.set_of([0, B, C]);
        assert!(!is_hyperideal(&r, &j).unwrap());
        // b - c = b + c = {a}
        assert_eq!(r.sub(B, C), r.set_of([A]));
        assert_eq!(is_hyperideal(&r, &r.empty_set()), Err(Error::EmptySet));
        match IdealHandle::new(&r, j) {
            Err(Error::NotAnIdeal(w)) => assert!(w.contains("b - c = {a}"), "{w}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn generation() {
        let r = known::verified(known::four_element());
        assert_eq!(
            ideal_generated_by(&r, &r.set_of([B])).unwrap(),
            r.set_of([0, B])
        );
        assert_eq!(
            ideal_generated_by(&r, &r.set_of([0])).unwrap(),
            r.set_of([0])
        );
        assert_eq!(
            ideal_generated_by(&r, &r.set_of([A])).unwrap(),
            r.full_set()
        );
        assert_eq!(
            ideal_generated_by(&r, &r.empty_set()).unwrap(),
            r.set_of([0])
        );
    }

    #[test]
    fn arithmetic() {
        let r = known::verified(known::four_element());
        let i = IdealHandle::new(&r, r.set_of([0, B])).unwrap();
        let j = IdealHandle::new(&r, r.set_of([0, C])).unwrap();
        let whole = IdealHandle::new(&r, r.full_set()).unwrap();
        assert_eq!(ideal_sum(&i, &j).unwrap(), r.full_set());
        assert_eq!(ideal_product(&j, &j).unwrap(), r.set_of([0, C]));
        assert_eq!(ideal_product(&i, &j).unwrap(), r.set_of([0]));
        assert_eq!(ideal_product(&i, &whole).unwrap(), *i.set());
        assert_eq!(ideal_power(&i, 3).unwrap(), *i.set());

        let other = known::verified(known::four_element());
        let foreign = IdealHandle::new(&other, other.set_of([0])).unwrap();
        assert_eq!(ideal_sum(&i, &foreign), Err(Error::MismatchedRings));
    }

    #[test]
    fn radicals() {
        let r = known::verified(known::four_element());
        let i = IdealHandle::new(&r, r.set_of([0, B])).unwrap();
        assert_eq!(radical(&i), r.set_of([0, B]));
        assert_eq!(nilradical(&r).unwrap(), r.set_of([0]));
        let z4 = known::verified(known::integers_mod(4));
        assert_eq!(nilradical(&z4).unwrap(), z4.set_of([0, 2]));
        let z8 = known::verified(known::integers_mod(8));
        let four = IdealHandle::new(&z8, z8.set_of([0, 4])).unwrap();
        assert_eq!(four.radical(), z8.set_of([0, 2, 4, 6]));
    }

    #[test]
    fn predicates() {
        let r = known::verified(known::four_element());
        let ib = IdealHandle::new(&r, r.set_of([0, B])).unwrap();
        let ic = IdealHandle::new(&r, r.set_of([0, C])).unwrap();
        let zero = IdealHandle::new(&r, r.set_of([0])).unwrap();
        assert!(ib.is_prime().unwrap() && ib.is_maximal().unwrap());
        assert!(ic.is_prime().unwrap() && ic.is_maximal().unwrap());
        assert!(!zero.is_prime().unwrap());
        assert!(!zero.is_primary().unwrap());
        assert!(ib.is_normal());
        assert!(!ic.is_normal());
        let whole = IdealHandle::new(&r, r.full_set()).unwrap();
        assert_eq!(whole.is_prime(), Err(Error::ImproperIdeal));
        assert!(whole.is_normal());

        let z8 = known::verified(known::integers_mod(8));
        let four = IdealHandle::new(&z8, z8.set_of([0, 4])).unwrap();
        assert!(four.is_primary().unwrap() && !four.is_prime().unwrap());
    }

    #[test]
    fn enumeration() {
        let r = known::verified(known::four_element());
        let found = enumerate_hyperideals(&r).unwrap();
        assert_eq!(
            found,
            vec![
                r.set_of([0]),
                r.set_of([0, B]),
                r.set_of([0, C]),
                r.full_set()
            ]
        );
        assert_eq!(enumerate_hyperideals_incremental(&r).unwrap(), found);

        let s = known::verified(known::sign_hyperfield());
        assert_eq!(
            enumerate_hyperideals(&s).unwrap(),
            vec![s.zero_set(), s.full_set()]
        );
        let z4 = known::verified(known::integers_mod(4));
        assert_eq!(
            enumerate_hyperideals(&z4).unwrap(),
            vec![z4.set_of([0]), z4.set_of([0, 2]), z4.full_set()]
        );
    }

    #[test]
    fn large_scans_are_refused() {
        let big = known::verified(known::integers_mod(24));
        assert_eq!(
            enumerate_hyperideals(&big),
            Err(Error::EnumerationTooLarge(24))
        );
        // divisors of 24
        assert_eq!(enumerate_hyperideals_incremental(&big).unwrap().len(), 8);
    }

    #[test]
    fn quotient_of_the_four_element_ring() {
        let r = known::verified(known::four_element());
        let i = IdealHandle::new(&r, r.set_of([0, B])).unwrap();
        let q = quotient_by_normal_ideal(&i).unwrap();
        assert_eq!(q.ring.labels(), &["{0,b}".to_string(), "{a,c}".to_string()]);
        assert!(q.ring.require_verified().is_ok());
        // [a] + [a] = {[0]}: a + a = {0,b}, a + c = {b}, c + c = {0}
        assert_eq!(q.ring.add(1, 1), q.ring.set_of([0]));
        assert!(classify(&q.ring).unwrap().is_hyperfield);
        assert!(check_homomorphism(&q.homomorphism(&r)).unwrap().is_empty());

        let ic = IdealHandle::new(&r, r.set_of([0, C])).unwrap();
        assert!(matches!(
            quotient_by_normal_ideal(&ic),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn quotient_by_zero_and_classical_quotient() {
        // {0} is not normal here: a + 0 - a = a + a = {0,b}
        let r = known::verified(known::four_element());
        let zero = IdealHandle::new(&r, r.zero_set()).unwrap();
        assert!(!zero.is_normal());
        assert!(matches!(
            quotient_by_normal_ideal(&zero),
            Err(Error::NotNormal(_))
        ));

        // in a classical ring {0} is normal and the quotient is a copy
        let z6 = known::verified(known::integers_mod(6));
        let q = quotient_by_normal_ideal(&IdealHandle::new(&z6, z6.zero_set()).unwrap()).unwrap();
        assert_eq!(q.ring.size(), 6);
        for x in z6.elements() {
            for y in z6.elements() {
                assert_eq!(
                    q.ring.mul(q.projection[x], q.projection[y]),
                    q.projection[z6.mul(x, y)]
                );
                let image = q.ring.set_of(z6.add(x, y).iter().map(|z| q.projection[z]));
                assert_eq!(q.ring.add(q.projection[x], q.projection[y]), image);
            }
        }
        let z4 = known::verified(known::integers_mod(4));
        let q =
            quotient_by_normal_ideal(&IdealHandle::new(&z4, z4.set_of([0, 2])).unwrap()).unwrap();
        assert_eq!(q.ring.size(), 2);
        assert_eq!(q.ring.add(1, 1), q.ring.set_of([0]));
        assert_eq!(q.ring.mul(1, 1), 1);
    }
}
