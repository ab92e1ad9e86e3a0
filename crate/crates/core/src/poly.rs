//! Degree-bounded polynomials over a finite Krasner hyperring.
//!
//! Both operations are set-valued: each coefficient of a sum or product
//! ranges over a hyper-sum cell, and the results are all the choices. These
//! objects are not Krasner hyperrings themselves and never reach the axiom
//! checker.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::closure::DependenceWitness;
use crate::error::{Error, Result};
use crate::ideals::{ideal_power, IdealHandle};
use crate::kernel::{hyper_sum_fold, Elem, FiniteHyperring};
use crate::set::ElementSet;

pub const DEFAULT_BOUND: usize = 8;

/// `Σ aᵢxⁱ` with `coefficients[i] = aᵢ` and no trailing zeros.
///
/// Equality and order compare coefficients only; operations refuse
/// operands from different rings.
#[derive(Clone)]
pub struct HyperPolynomial<'r> {
    ring: &'r FiniteHyperring,
    coefficients: Vec<Elem>,
    bound: usize,
}

impl<'r> HyperPolynomial<'r> {
    pub fn new(ring: &'r FiniteHyperring, coefficients: Vec<Elem>) -> Result<Self> {
        Self::with_bound(ring, coefficients, DEFAULT_BOUND)
    }

    pub fn with_bound(
        ring: &'r FiniteHyperring,
        mut coefficients: Vec<Elem>,
        bound: usize,
    ) -> Result<Self> {
        if let Some(&bad) = coefficients.iter().find(|&&c| c >= ring.size()) {
            return Err(Error::IndexOutOfRange {
                table: "polynomial",
                index: bad,
                size: ring.size(),
            });
        }
        while coefficients.last() == Some(&ring.zero()) {
            coefficients.pop();
        }
        if coefficients.len() > bound + 1 {
            return Err(Error::DegreeOverflow {
                degree: coefficients.len() - 1,
                bound,
            });
        }
        Ok(HyperPolynomial {
            ring,
            coefficients,
            bound,
        })
    }

    pub fn zero(ring: &'r FiniteHyperring) -> Self {
        HyperPolynomial {
            ring,
            coefficients: Vec::new(),
            bound: DEFAULT_BOUND,
        }
    }

    pub fn constant(ring: &'r FiniteHyperring, c: Elem) -> Result<Self> {
        Self::new(ring, vec![c])
    }

    /// Reads `b·x + b`, `x^2`, `a·x^2 + c`, `0` with the ring's labels.
    pub fn parse(ring: &'r FiniteHyperring, s: &str) -> Result<Self> {
        let mut coefficients = Vec::new();
        for term in s.split('+').map(str::trim) {
            let (coef, power) = match term.split_once('x') {
                None => (term, 0),
                Some((c, p)) => {
                    let power = match p.strip_prefix('^') {
                        Some(n) => n
                            .trim()
                            .parse()
                            .map_err(|_| Error::UnknownLabel(term.into()))?,
                        None if p.is_empty() => 1,
                        None => return Err(Error::UnknownLabel(term.into())),
                    };
                    (c.trim().trim_end_matches('·').trim(), power)
                }
            };
            let c = if coef.is_empty() {
                ring.one()
            } else {
                ring.index_of(coef)?
            };
            if coefficients.len() <= power {
                coefficients.resize(power + 1, ring.zero());
            }
            if coefficients[power] != ring.zero() {
                return Err(Error::UnknownLabel(format!("repeated power in `{s}`")));
            }
            coefficients[power] = c;
        }
        Self::new(ring, coefficients)
    }

    pub fn ring(&self) -> &'r FiniteHyperring {
        self.ring
    }

    pub fn coefficients(&self) -> &[Elem] {
        &self.coefficients
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn coefficient(&self, i: usize) -> Elem {
        self.coefficients
            .get(i)
            .copied()
            .unwrap_or(self.ring.zero())
    }

    /// `f(t) = a₀ + a₁t + ⋯ + aₙtⁿ` folded as a hyper-sum.
    pub fn evaluate(&self, t: Elem) -> ElementSet {
        let terms: Vec<Elem> = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, &a)| self.ring.mul(a, self.ring.pow(t, i)))
            .collect();
        if terms.is_empty() {
            return self.ring.zero_set();
        }
        hyper_sum_fold(self.ring, &terms).expect("nonempty")
    }
}

impl PartialEq for HyperPolynomial<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.coefficients == other.coefficients
    }
}

impl Eq for HyperPolynomial<'_> {}

impl PartialOrd for HyperPolynomial<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HyperPolynomial<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coefficients.cmp(&other.coefficients)
    }
}

impl fmt::Debug for HyperPolynomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HyperPolynomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str(self.ring.label(self.ring.zero()));
        }
        let mut first = true;
        for (i, &a) in self.coefficients.iter().enumerate().rev() {
            if a == self.ring.zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let label = self.ring.label(a);
            match (i, a == self.ring.one()) {
                (0, _) => f.write_str(label)?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{label}·x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{label}·x^{i}")?,
            }
        }
        Ok(())
    }
}

fn same_ring(f: &HyperPolynomial, g: &HyperPolynomial) -> Result<()> {
    if std::ptr::eq(f.ring, g.ring) {
        Ok(())
    } else {
        Err(Error::MismatchedRings)
    }
}

/// Every polynomial whose `i`-th coefficient is drawn from `cells[i]`.
fn choices<'r>(
    ring: &'r FiniteHyperring,
    cells: &[ElementSet],
    bound: usize,
) -> Result<BTreeSet<HyperPolynomial<'r>>> {
    let mut partial: Vec<Vec<Elem>> = vec![Vec::new()];
    for cell in cells {
        partial = partial
            .into_iter()
            .flat_map(|p| {
                cell.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .map(|c| HyperPolynomial::with_bound(ring, c, bound))
        .collect()
}

/// `f + g = {Σ cᵢxⁱ : cᵢ ∈ aᵢ + bᵢ}`.
pub fn poly_add<'r>(
    f: &HyperPolynomial<'r>,
    g: &HyperPolynomial<'r>,
) -> Result<BTreeSet<HyperPolynomial<'r>>> {
    same_ring(f, g)?;
    let ring = f.ring;
    let bound = f.bound.min(g.bound);
    let len = f.coefficients.len().max(g.coefficients.len());
    if len > bound + 1 {
        return Err(Error::DegreeOverflow {
            degree: len - 1,
            bound,
        });
    }
    let cells: Vec<ElementSet> = (0..len)
        .map(|i| ring.add(f.coefficient(i), g.coefficient(i)))
        .collect();
    choices(ring, &cells, bound)
}

/// `f·g = {Σ cₖxᵏ : cₖ ∈ Σ_{i+j=k} aᵢbⱼ}`.
pub fn poly_mul<'r>(
    f: &HyperPolynomial<'r>,
    g: &HyperPolynomial<'r>,
) -> Result<BTreeSet<HyperPolynomial<'r>>> {
    same_ring(f, g)?;
    let ring = f.ring;
    let bound = f.bound.min(g.bound);
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Ok(BTreeSet::from([HyperPolynomial {
            ring,
            coefficients: Vec::new(),
            bound,
        }]));
    };
    if df + dg > bound {
        return Err(Error::DegreeOverflow {
            degree: df + dg,
            bound,
        });
    }
    let mut cells = Vec::with_capacity(df + dg + 1);
    for k in 0..=df + dg {
        let products: Vec<Elem> = (k.saturating_sub(dg)..=k.min(df))
            .map(|i| ring.mul(f.coefficient(i), g.coefficient(k - i)))
            .collect();
        cells.push(hyper_sum_fold(ring, &products)?);
    }
    choices(ring, &cells, bound)
}

/// Checks `h(t) ⊆ f(t) + g(t)` for every `h ∈ f + g` and every `t`.
pub fn add_compatibility_violation(
    f: &HyperPolynomial,
    g: &HyperPolynomial,
) -> Result<Option<String>> {
    let ring = f.ring;
    for h in poly_add(f, g)? {
        for t in ring.elements() {
            let bound = ring.add_sets(&f.evaluate(t), &g.evaluate(t));
            if !h.evaluate(t).is_subset(&bound) {
                return Ok(Some(format!(
                    "h = {h} ∈ ({f}) + ({g}) at t = {}: {} ⊄ {}",
                    ring.label(t),
                    ring.show_set(&h.evaluate(t)),
                    ring.show_set(&bound)
                )));
            }
        }
    }
    Ok(None)
}

/// Checks `h(t) ⊆ Σᵢⱼ aᵢbⱼtⁱ⁺ʲ` for every `h ∈ f·g` and every `t`: the
/// hyper-sum of all products is where distributivity sends `f(t)·g(t)`.
pub fn mul_compatibility_violation(
    f: &HyperPolynomial,
    g: &HyperPolynomial,
) -> Result<Option<String>> {
    let ring = f.ring;
    for h in poly_mul(f, g)? {
        for t in ring.elements() {
            let terms: Vec<Elem> = f
                .coefficients
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| {
                    g.coefficients
                        .iter()
                        .enumerate()
                        .map(move |(j, &b)| ring.mul(ring.mul(a, b), ring.pow(t, i + j)))
                })
                .collect();
            let bound = if terms.is_empty() {
                ring.zero_set()
            } else {
                hyper_sum_fold(ring, &terms)?
            };
            if !h.evaluate(t).is_subset(&bound) {
                return Ok(Some(format!(
                    "h = {h} ∈ ({f})·({g}) at t = {}: {} ⊄ {}",
                    ring.label(t),
                    ring.show_set(&h.evaluate(t)),
                    ring.show_set(&bound)
                )));
            }
        }
    }
    Ok(None)
}

/// Every polynomial of degree at most `degree`.
pub fn all_polynomials(ring: &FiniteHyperring, degree: usize) -> Result<Vec<HyperPolynomial<'_>>> {
    let full = ring.full_set();
    let cells = vec![full; degree + 1];
    Ok(choices(ring, &cells, DEFAULT_BOUND.max(2 * degree))?
        .into_iter()
        .collect())
}

/// Exhaustive evaluation compatibility over all pairs of degree `≤ degree`.
pub fn evaluation_compatibility(ring: &FiniteHyperring, degree: usize) -> Result<Option<String>> {
    let polys = all_polynomials(ring, degree)?;
    for f in &polys {
        for g in &polys {
            if let Some(w) =
                add_compatibility_violation(f, g)?.or(mul_compatibility_violation(f, g)?)
            {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// The monic `xⁿ + a₁xⁿ⁻¹ + ⋯ + aₙ` of a dependence witness.
pub fn dependence_polynomial<'r>(
    ring: &'r FiniteHyperring,
    w: &DependenceWitness,
) -> Result<HyperPolynomial<'r>> {
    let n = w.degree;
    let mut coefficients = vec![ring.zero(); n + 1];
    coefficients[n] = ring.one();
    for (i, &a) in w.coefficients.iter().enumerate() {
        coefficients[n - 1 - i] = a;
    }
    HyperPolynomial::with_bound(ring, coefficients, DEFAULT_BOUND.max(n))
}

/// Integrality by brute force over monic polynomials `h` with `aᵢ ∈ Iⁱ`,
/// asking whether `0 ∈ h(r)`.
pub fn integral_by_polynomials<'r>(
    ideal: &IdealHandle<'r>,
    r: Elem,
    max_degree: usize,
) -> Result<Option<HyperPolynomial<'r>>> {
    let ring = ideal.ring();
    let powers: Vec<ElementSet> = (1..=max_degree)
        .map(|i| ideal_power(ideal, i))
        .collect::<Result<_>>()?;
    for n in 1..=max_degree {
        // coefficient of x^{n-i} ranges over I^i; the leading one is 1
        let mut cells: Vec<ElementSet> = (1..=n).rev().map(|i| powers[i - 1]).collect();
        cells.push(ring.set_of([ring.one()]));
        for h in choices(ring, &cells, DEFAULT_BOUND.max(n))? {
            if h.evaluate(r).contains(ring.zero()) {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{integral_dependence, is_integral_over_ideal};
    use crate::ideals::enumerate_hyperideals;
    use crate::known;

    // ordering ignores the ring reference and its verification cache
    #[allow(clippy::mutable_key_type)]
    fn show(set: &BTreeSet<HyperPolynomial>) -> Vec<String> {
        set.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn worked_sums_and_products() {
        let r = known::verified(known::four_element());
        let p = |s| HyperPolynomial::parse(&r, s).unwrap();
        assert_eq!(
            show(&poly_add(&p("a·x + b"), &p("c·x")).unwrap()),
            ["b·x + b"]
        );
        assert_eq!(show(&poly_add(&p("b"), &p("b")).unwrap()), ["0", "b"]);
        assert_eq!(show(&poly_mul(&p("b·x + c"), &p("b")).unwrap()), ["b·x"]);
        assert_eq!(show(&poly_mul(&p("a·x"), &p("x")).unwrap()), ["x^2"]);
        let f = p("a·x^2 + c");
        assert_eq!(
            show(&poly_add(&f, &HyperPolynomial::zero(&r)).unwrap()),
            [f.to_string()]
        );
        assert_eq!(
            show(&poly_mul(&f, &HyperPolynomial::zero(&r)).unwrap()),
            ["0"]
        );
    }

    #[test]
    fn degree_bound_and_trimming() {
        let r = known::verified(known::four_element());
        let f = HyperPolynomial::new(&r, vec![2, 1, 0, 0]).unwrap();
        assert_eq!(f.degree(), Some(1));
        let big = HyperPolynomial::with_bound(&r, vec![1; 5], 4).unwrap();
        assert!(matches!(
            poly_mul(&big, &big),
            Err(Error::DegreeOverflow {
                degree: 8,
                bound: 4
            })
        ));
        assert!(HyperPolynomial::new(&r, vec![1; 10]).is_err());
        assert!(HyperPolynomial::new(&r, vec![7]).is_err());
    }

    #[test]
    fn addition_is_commutative_with_identity_zero() {
        let r = known::verified(known::four_element());
        let polys = all_polynomials(&r, 1).unwrap();
        let zero = HyperPolynomial::zero(&r);
        for f in &polys {
            assert_eq!(poly_add(f, &zero).unwrap(), BTreeSet::from([f.clone()]));
            for g in &polys {
                assert_eq!(poly_add(f, g).unwrap(), poly_add(g, f).unwrap());
            }
        }
    }

    #[test]
    fn evaluation_is_compatible_on_every_fixture() {
        for ring in known::all_verified() {
            let degree = if ring.size() <= 4 { 2 } else { 1 };
            assert_eq!(
                evaluation_compatibility(&ring, degree).unwrap(),
                None,
                "{}",
                ring.name()
            );
        }
    }

    #[test]
    fn dependence_witnesses_evaluate_like_polynomials() {
        for ring in known::all_verified() {
            for set in enumerate_hyperideals(&ring).unwrap() {
                let ideal = IdealHandle::new(&ring, set).unwrap();
                for r in ring.elements() {
                    let by_poly = integral_by_polynomials(&ideal, r, 3).unwrap();
                    assert_eq!(
                        by_poly.is_some(),
                        is_integral_over_ideal(&ideal, r, Some(3)).unwrap()
                    );
                    if let Some(w) = integral_dependence(&ideal, r, Some(3)).unwrap() {
                        let h = dependence_polynomial(&ring, &w).unwrap();
                        assert_eq!(h.evaluate(r), w.evaluate(&ring));
                    }
                }
            }
        }
    }
}
