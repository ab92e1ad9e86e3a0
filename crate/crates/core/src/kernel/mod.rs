//! Table-based finite Krasner hyperrings.
//!
//! A [`FiniteHyperring`] stores a set-valued addition table and a
//! single-valued multiplication table over a carrier of at most 64 labelled
//! elements. Construction only checks that the tables are well formed; the
//! hyperring axioms are decided by [`verify_axioms`], whose outcome is cached
//! on the ring and gates every operation that relies on the axioms.
//!
//! Negation is not part of the input. It is derived from the addition table
//! as the unique `x'` with `0 ∈ x + x'`, and the verifier checks uniqueness
//! before anything relies on it.

mod axioms;
mod homomorphism;

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_CARRIER};

pub use axioms::{verify_axioms, Axiom, VerificationReport, Violation};
pub use homomorphism::{check_homomorphism, HomomorphismTable};

/// Index of a carrier element.
pub type Elem = usize;

pub struct FiniteHyperring {
    name: String,
    labels: Vec<String>,
    zero: Elem,
    one: Elem,
    add: Vec<ElementSet>,
    mul: Vec<Elem>,
    neg: Vec<Option<Elem>>,
    verified: OnceLock<VerificationReport>,
}

impl FiniteHyperring {
    /// Builds a hyperring from index tables. `add[x][y]` lists the members of
    /// `x + y`; `mul[x][y]` is the product.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        zero: Elem,
        one: Elem,
        add: Vec<Vec<Vec<Elem>>>,
        mul: Vec<Vec<Elem>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(n));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for &e in &[zero, one] {
            if e >= n {
                return Err(Error::IndexOutOfRange {
                    table: "constants",
                    index: e,
                    size: n,
                });
            }
        }
        check_square("add", &add, n)?;
        check_square("mul", &mul, n)?;

        let mut add_cells = Vec::with_capacity(n * n);
        for row in &add {
            for cell in row {
                let mut s = ElementSet::empty(n);
                for &z in cell {
                    if z >= n {
                        return Err(Error::IndexOutOfRange {
                            table: "add",
                            index: z,
                            size: n,
                        });
                    }
                    s.insert(z);
                }
                add_cells.push(s);
            }
        }
        let mut mul_cells = Vec::with_capacity(n * n);
        for row in &mul {
            for &z in row {
                if z >= n {
                    return Err(Error::IndexOutOfRange {
                        table: "mul",
                        index: z,
                        size: n,
                    });
                }
                mul_cells.push(z);
            }
        }
        Ok(Self::from_cells(
            name.into(),
            labels,
            zero,
            one,
            add_cells,
            mul_cells,
        ))
    }

    /// Builds a hyperring from closures over element indices.
    pub fn from_fns(
        name: impl Into<String>,
        labels: Vec<String>,
        zero: Elem,
        one: Elem,
        add: impl Fn(Elem, Elem) -> ElementSet,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge(n));
        }
        let add = (0..n)
            .map(|x| (0..n).map(|y| add(x, y).iter().collect()).collect())
            .collect();
        let mul = (0..n)
            .map(|x| (0..n).map(|y| mul(x, y)).collect())
            .collect();
        Self::new(name, labels, zero, one, add, mul)
    }

    fn from_cells(
        name: String,
        labels: Vec<String>,
        zero: Elem,
        one: Elem,
        add: Vec<ElementSet>,
        mul: Vec<Elem>,
    ) -> Self {
        let n = labels.len();
        let neg = (0..n)
            .map(|x| {
                let mut inverses = (0..n).filter(|&y| add[x * n + y].contains(zero));
                match (inverses.next(), inverses.next()) {
                    (Some(y), None) => Some(y),
                    _ => None,
                }
            })
            .collect();
        FiniteHyperring {
            name,
            labels,
            zero,
            one,
            add,
            mul,
            neg,
            verified: OnceLock::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Parses a comma-separated list of labels into a set.
    pub fn parse_set(&self, spec: &str) -> Result<ElementSet> {
        let mut s = self.empty_set();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            s.insert(self.index_of(part)?);
        }
        Ok(s)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.size())
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    pub fn zero_set(&self) -> ElementSet {
        ElementSet::singleton(self.size(), self.zero)
    }

    pub fn set_of(&self, elements: impl IntoIterator<Item = Elem>) -> ElementSet {
        ElementSet::from_elements(self.size(), elements)
    }

    /// The hyper-sum cell `x + y`.
    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> ElementSet {
        self.add[x * self.size() + y]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.size() + y]
    }

    /// The unique additive inverse, if the table provides exactly one.
    #[inline]
    pub fn try_neg(&self, x: Elem) -> Option<Elem> {
        self.neg[x]
    }

    /// Additive inverse. Only meaningful on a ring whose inverses are unique,
    /// which [`verify_axioms`] establishes.
    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x].unwrap_or_else(|| panic!("element {} has no unique inverse", self.labels[x]))
    }

    /// `x - y` as a set.
    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> ElementSet {
        self.add(x, self.neg(y))
    }

    /// Elementwise hyper-sum of two sets: the union of `a + b` over all pairs.
    pub fn add_sets(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in a {
            for y in b {
                out = out.union(&self.add(x, y));
            }
        }
        out
    }

    /// `{ r·x : x ∈ set }`
    pub fn scale_set(&self, r: Elem, set: &ElementSet) -> ElementSet {
        self.set_of(set.iter().map(|x| self.mul(r, x)))
    }

    pub fn pow(&self, x: Elem, n: usize) -> Elem {
        (0..n).fold(self.one, |acc, _| self.mul(acc, x))
    }

    pub fn verification(&self) -> Option<&VerificationReport> {
        self.verified.get()
    }

    /// Succeeds only if [`verify_axioms`] has run and passed.
    pub fn require_verified(&self) -> Result<()> {
        match self.verified.get() {
            None => Err(Error::NotVerified(self.name.clone())),
            Some(r) if r.passed() => Ok(()),
            Some(r) => Err(Error::AxiomsFailed {
                name: self.name.clone(),
                violations: r.violations.len(),
            }),
        }
    }

    pub(crate) fn record_verification(&self, report: VerificationReport) -> &VerificationReport {
        // first result wins; verification is a pure function of the tables
        let _ = self.verified.set(report);
        self.verified.get().expect("just set")
    }

    /// Renders a set with element labels, in carrier order.
    pub fn show_set(&self, set: &ElementSet) -> String {
        let parts: Vec<&str> = set.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Same tables, new name, verification state reset.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self::from_cells(
            name.into(),
            self.labels.clone(),
            self.zero,
            self.one,
            self.add.clone(),
            self.mul.clone(),
        )
    }

    /// Raw tables in label form, for serialization.
    pub fn add_table(&self) -> Vec<Vec<ElementSet>> {
        self.elements()
            .map(|x| self.elements().map(|y| self.add(x, y)).collect())
            .collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        self.elements()
            .map(|x| self.elements().map(|y| self.mul(x, y)).collect())
            .collect()
    }
}

impl Clone for FiniteHyperring {
    fn clone(&self) -> Self {
        let out = self.renamed(self.name.clone());
        if let Some(r) = self.verified.get() {
            let _ = out.verified.set(r.clone());
        }
        out
    }
}

impl fmt::Debug for FiniteHyperring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteHyperring")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

fn check_square<T>(table: &'static str, rows: &[Vec<T>], n: usize) -> Result<()> {
    if rows.len() != n {
        return Err(Error::RaggedTable {
            table,
            row: rows.len(),
            expected: n,
            found: rows.len(),
        });
    }
    for (row, cells) in rows.iter().enumerate() {
        if cells.len() != n {
            return Err(Error::RaggedTable {
                table,
                row,
                expected: n,
                found: cells.len(),
            });
        }
    }
    Ok(())
}

/// Hyperfield / hyperdomain flags of a verified ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub is_hyperfield: bool,
    pub is_hyperdomain: bool,
}

pub fn classify(ring: &FiniteHyperring) -> Result<Classification> {
    ring.require_verified()?;
    let zero = ring.zero();
    let nonzero: Vec<Elem> = ring.elements().filter(|&x| x != zero).collect();
    let is_hyperdomain = ring.one() != zero
        && nonzero
            .iter()
            .all(|&x| nonzero.iter().all(|&y| ring.mul(x, y) != zero));
    // nonzero elements form a group: closed, and every element has an inverse
    let is_hyperfield = is_hyperdomain
        && nonzero
            .iter()
            .all(|&x| nonzero.iter().any(|&y| ring.mul(x, y) == ring.one()));
    Ok(Classification {
        is_hyperfield,
        is_hyperdomain,
    })
}

/// Every element reachable by folding hyperaddition over `terms`, left to right.
pub fn hyper_sum_fold(ring: &FiniteHyperring, terms: &[Elem]) -> Result<ElementSet> {
    let (&first, rest) = terms.split_first().ok_or(Error::EmptyTerms)?;
    let mut acc = ring.set_of([first]);
    for &t in rest {
        acc = ring.add_sets(&acc, &ring.set_of([t]));
    }
    Ok(acc)
}

/// Contains zero and one, and is closed under multiplication, negation, and
/// hyperaddition.
pub fn is_subhyperring(ring: &FiniteHyperring, subset: &ElementSet) -> Result<bool> {
    ring.require_verified()?;
    if subset.width() != ring.size() {
        return Err(Error::MismatchedRings);
    }
    Ok(subring_violation(ring, subset).is_none())
}

pub(crate) fn subring_violation(ring: &FiniteHyperring, subset: &ElementSet) -> Option<String> {
    for c in [ring.zero(), ring.one()] {
        if !subset.contains(c) {
            return Some(format!("missing {}", ring.label(c)));
        }
    }
    for x in subset {
        if !subset.contains(ring.neg(x)) {
            return Some(format!("-{} ∉ subset", ring.label(x)));
        }
        for y in subset {
            if !subset.contains(ring.mul(x, y)) {
                return Some(format!("{}·{} ∉ subset", ring.label(x), ring.label(y)));
            }
            if !ring.add(x, y).is_subset(subset) {
                return Some(format!("{}+{} ⊄ subset", ring.label(x), ring.label(y)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    #[test]
    fn structural_errors_are_distinct() {
        let labels = vec!["0".to_string(), "1".to_string()];
        let ragged = FiniteHyperring::new(
            "r",
            labels.clone(),
            0,
            1,
            vec![vec![vec![0], vec![1]], vec![vec![1]]],
            vec![vec![0, 0], vec![0, 1]],
        );
        assert!(matches!(
            ragged,
            Err(Error::RaggedTable {
                table: "add",
                row: 1,
                ..
            })
        ));
        let out_of_range = FiniteHyperring::new(
            "r",
            labels.clone(),
            0,
            1,
            vec![vec![vec![0], vec![1]], vec![vec![1], vec![0]]],
            vec![vec![0, 0], vec![0, 2]],
        );
        assert!(matches!(
            out_of_range,
            Err(Error::IndexOutOfRange {
                table: "mul",
                index: 2,
                ..
            })
        ));
        let dup = FiniteHyperring::new(
            "r",
            vec!["0".into(), "0".into()],
            0,
            1,
            vec![vec![vec![0], vec![1]], vec![vec![1], vec![0]]],
            vec![vec![0, 0], vec![0, 1]],
        );
        assert_eq!(dup.unwrap_err(), Error::DuplicateLabel("0".into()));
    }

    #[test]
    fn operations_refuse_unverified_rings() {
        let r = known::four_element();
        assert!(matches!(classify(&r), Err(Error::NotVerified(_))));
        verify_axioms(&r);
        assert!(classify(&r).is_ok());
    }

    #[test]
    fn classification_of_fixtures() {
        let r = known::verified(known::four_element());
        assert_eq!(
            classify(&r).unwrap(),
            Classification {
                is_hyperfield: false,
                is_hyperdomain: false
            }
        );
        let s = known::verified(known::sign_hyperfield());
        assert_eq!(
            classify(&s).unwrap(),
            Classification {
                is_hyperfield: true,
                is_hyperdomain: true
            }
        );
        let z4 = known::verified(known::integers_mod(4));
        assert_eq!(
            classify(&z4).unwrap(),
            Classification {
                is_hyperfield: false,
                is_hyperdomain: false
            }
        );
        let z5 = known::verified(known::integers_mod(5));
        assert!(classify(&z5).unwrap().is_hyperfield);
    }

    #[test]
    fn hyper_sums_on_the_four_element_ring() {
        let r = known::verified(known::four_element());
        let [_, a, b, c] = [0, 1, 2, 3];
        // a·a + b·a + c
        let terms = [r.mul(a, a), r.mul(b, a), c];
        assert_eq!(terms, [a, b, c]);
        assert_eq!(hyper_sum_fold(&r, &terms).unwrap(), r.set_of([0, b]));
        assert_eq!(hyper_sum_fold(&r, &[b, b]).unwrap(), r.set_of([0, b]));
        assert_eq!(hyper_sum_fold(&r, &[c]).unwrap(), r.set_of([c]));
        assert_eq!(hyper_sum_fold(&r, &[]), Err(Error::EmptyTerms));
    }

    #[test]
    fn subhyperrings() {
        let r = known::verified(known::four_element());
        assert!(is_subhyperring(&r, &r.full_set()).unwrap());
        assert!(!is_subhyperring(&r, &r.set_of([0, 1])).unwrap());
        let s = known::verified(known::sign_hyperfield());
        let zero_one = s.parse_set("0,1").unwrap();
        assert!(!is_subhyperring(&s, &zero_one).unwrap());
        assert!(is_subhyperring(&s, &s.full_set()).unwrap());
    }

    #[test]
    fn negation_laws_on_fixtures() {
        for r in known::all_verified() {
            for x in r.elements() {
                assert_eq!(r.neg(r.neg(x)), x);
                for y in r.elements() {
                    assert_eq!(r.mul(r.neg(x), y), r.neg(r.mul(x, y)));
                }
            }
        }
    }
}
