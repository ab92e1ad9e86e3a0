use serde::Serialize;

use super::{Elem, FiniteHyperring};
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// An element map `source → target` given as a table.
#[derive(Debug, Clone)]
pub struct HomomorphismTable<'a> {
    pub source: &'a FiniteHyperring,
    pub target: &'a FiniteHyperring,
    pub map: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum HomomorphismFailure {
    /// `f(a·b) ≠ f(a)·f(b)`
    Multiplicative { a: Elem, b: Elem },
    /// some `z ∈ a + b` with `f(z) ∉ f(a) + f(b)`
    Additive { a: Elem, b: Elem, z: Elem },
}

impl<'a> HomomorphismTable<'a> {
    pub fn new(
        source: &'a FiniteHyperring,
        target: &'a FiniteHyperring,
        map: Vec<Elem>,
    ) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::RaggedTable {
                table: "homomorphism",
                row: 0,
                expected: source.size(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.size()) {
            return Err(Error::IndexOutOfRange {
                table: "homomorphism",
                index: bad,
                size: target.size(),
            });
        }
        Ok(HomomorphismTable {
            source,
            target,
            map,
        })
    }

    pub fn identity(ring: &'a FiniteHyperring) -> Self {
        HomomorphismTable {
            source: ring,
            target: ring,
            map: ring.elements().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// Image of a set of source elements.
    pub fn image(&self, set: &ElementSet) -> ElementSet {
        self.target.set_of(set.iter().map(|x| self.map[x]))
    }
}

/// Checks `f(ab) = f(a)f(b)` and `f(a + b) ⊆ f(a) + f(b)` for all pairs.
/// Returns every failing pair; an empty list means `f` is a homomorphism.
pub fn check_homomorphism(h: &HomomorphismTable) -> Result<Vec<HomomorphismFailure>> {
    h.source.require_verified()?;
    h.target.require_verified()?;
    if h.map.len() != h.source.size() {
        return Err(Error::MismatchedRings);
    }
    let (s, t) = (h.source, h.target);
    let mut failures = Vec::new();
    for a in s.elements() {
        for b in s.elements() {
            if h.apply(s.mul(a, b)) != t.mul(h.apply(a), h.apply(b)) {
                failures.push(HomomorphismFailure::Multiplicative { a, b });
            }
            let allowed = t.add(h.apply(a), h.apply(b));
            for z in &s.add(a, b) {
                if !allowed.contains(h.apply(z)) {
                    failures.push(HomomorphismFailure::Additive { a, b, z });
                }
            }
        }
    }
    Ok(failures)
}
