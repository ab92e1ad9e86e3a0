//! Integral closure on the value hyperfield.
//!
//! `∞` lies in a hyper-sum of values exactly when the least term occurs at
//! least twice, so `0 ∈ rⁿ ⊞ a₁rⁿ⁻¹ ⊞ ⋯ ⊞ aₙ` can be arranged precisely when
//! some `i·r` is an admissible `i`-th coefficient: either `aᵢ = i·r` ties
//! with the leading term, or two coefficient terms tie below it, which forces
//! `aᵢ < i·r` and hence `i·r` admissible by upward closure.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::valuefield::window::values;
use crate::valuefield::{cut_power, CutIdeal, HyperSum, ValuationSubring, Value};

/// A monic dependence over the value hyperfield.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueDependence {
    pub element: Value,
    pub degree: usize,
    /// `a₁, …, aₙ`; unused slots hold `∞`.
    pub coefficients: Vec<Value>,
    pub resulting_set: HyperSum,
}

impl ValueDependence {
    fn build(ring: &ValuationSubring, r: &Value, degree: usize, coefficients: Vec<Value>) -> Self {
        let resulting_set = evaluate(ring, r, &coefficients);
        ValueDependence {
            element: r.clone(),
            degree,
            coefficients,
            resulting_set,
        }
    }

    pub fn evaluate(&self, ring: &ValuationSubring) -> HyperSum {
        evaluate(ring, &self.element, &self.coefficients)
    }
}

fn evaluate(ring: &ValuationSubring, r: &Value, coefficients: &[Value]) -> HyperSum {
    let field = ring.field();
    let n = coefficients.len() as i64;
    let mut terms = vec![r.scale(n)];
    for (i, a) in coefficients.iter().enumerate() {
        terms.push(field.mul(a, &r.scale(n - 1 - i as i64)));
    }
    field.fold(&terms).expect("at least one term")
}

fn one_coefficient(r: &Value, degree: usize, i: usize) -> Vec<Value> {
    let mut coefficients = vec![Value::Infinity; degree];
    coefficients[i - 1] = r.scale(i as i64);
    coefficients
}

fn check_member(ring: &ValuationSubring, r: &Value) -> Result<()> {
    ring.field().check(r)?;
    if !ring.contains(r) {
        return Err(Error::InvalidCut(format!("{r} is not in {ring}")));
    }
    Ok(())
}

/// Lowest-degree dependence of `r` over `I` with `n ≤ max_degree`, found by
/// scanning for `i·r ∈ Iⁱ`.
pub fn value_integral_dependence(
    ring: &ValuationSubring,
    ideal: &CutIdeal,
    r: &Value,
    max_degree: usize,
) -> Result<Option<ValueDependence>> {
    ideal.check_in(ring)?;
    check_member(ring, r)?;
    for n in 1..=max_degree {
        for i in 1..=n {
            if cut_power(ideal, i)?.contains(ring, &r.scale(i as i64)) {
                let w = ValueDependence::build(ring, r, n, one_coefficient(r, n, i));
                debug_assert!(w.resulting_set.contains_zero());
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// `Ī` for a cut ideal. Scaling by `i > 0` preserves the lexicographic
/// order, so `i·r ∈ Iⁱ` holds exactly when `r ∈ I`: every cut is closed.
pub fn value_ideal_closure(ring: &ValuationSubring, ideal: &CutIdeal) -> Result<CutIdeal> {
    ideal.check_in(ring)?;
    Ok(ideal.clone())
}

/// Dependence of `x ∈ T_G` over the prefix ring `sub`, scanning `i·x ∈ sub`.
pub fn value_subring_dependence(
    sub: &ValuationSubring,
    x: &Value,
    max_degree: usize,
) -> Result<Option<ValueDependence>> {
    sub.field().check(x)?;
    let whole = ValuationSubring::whole(&sub.field());
    for n in 1..=max_degree {
        for i in 1..=n {
            if sub.contains(&x.scale(i as i64)) {
                return Ok(Some(ValueDependence::build(
                    &whole,
                    x,
                    n,
                    one_coefficient(x, n, i),
                )));
            }
        }
    }
    Ok(None)
}

pub fn value_is_integral_over_subring(
    sub: &ValuationSubring,
    x: &Value,
    max_degree: usize,
) -> Result<bool> {
    Ok(value_subring_dependence(sub, x, max_degree)?.is_some())
}

/// The integral closure of a prefix ring in `T_G`: the ring itself, since
/// `i·x ∈ V_j` exactly when `x ∈ V_j`.
pub fn value_subring_integral_closure(sub: &ValuationSubring) -> ValuationSubring {
    *sub
}

/// Definitional brute force on a small window: does some tuple of
/// coefficients with `aᵢ` drawn from `pool(i) ∩ [-radius, radius]ᵏ ∪ {∞}` and
/// degree `≤ max_degree` put `∞` into the fold?
pub fn window_dependence_exists(
    rank: usize,
    r: &Value,
    radius: i64,
    max_degree: usize,
    pool: impl Fn(usize, &Value) -> bool,
) -> bool {
    let field = crate::valuefield::ValueHyperfield::new(rank).expect("rank validated by caller");
    let all: Vec<Value> = std::iter::once(Value::Infinity)
        .chain(values(rank, radius))
        .collect();
    let pools: Vec<Vec<Value>> = (1..=max_degree)
        .map(|i| all.iter().filter(|a| pool(i, a)).cloned().collect())
        .collect();
    for n in 1..=max_degree {
        let mut idx = vec![0usize; n];
        if pools[..n].iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            let mut terms = vec![r.scale(n as i64)];
            for i in 0..n {
                terms.push(field.mul(&pools[i][idx[i]], &r.scale((n - 1 - i) as i64)));
            }
            if field.fold(&terms).expect("nonempty").contains_zero() {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuefield::ValueHyperfield;

    fn v(x: &[i64]) -> Value {
        Value::finite(x.to_vec())
    }

    #[test]
    fn subring_examples_rank_one() {
        let t = ValueHyperfield::new(1).unwrap();
        let vr = ValuationSubring::valuation_ring(&t);
        assert!(!value_is_integral_over_subring(&vr, &v(&[-1]), 8).unwrap());
        assert!(value_is_integral_over_subring(&vr, &v(&[2]), 8).unwrap());
        let w = value_subring_dependence(&vr, &v(&[2]), 8).unwrap().unwrap();
        assert_eq!(w.degree, 1);
        assert!(w.resulting_set.contains_zero());
        assert_eq!(value_subring_integral_closure(&vr), vr);
    }

    #[test]
    fn members_need_degree_one() {
        let t = ValueHyperfield::new(2).unwrap();
        let vr = ValuationSubring::valuation_ring(&t);
        let i = CutIdeal::parse(&t, "cut:j=2,p=0,5").unwrap();
        let w = value_integral_dependence(&vr, &i, &v(&[0, 7]), 4)
            .unwrap()
            .unwrap();
        assert_eq!((w.degree, w.coefficients.clone()), (1, vec![v(&[0, 7])]));
        assert_eq!(w.evaluate(&vr), HyperSum::UpSet(vec![0, 7]));
        assert!(value_integral_dependence(&vr, &i, &v(&[0, 4]), 12)
            .unwrap()
            .is_none());
        assert!(value_integral_dependence(&vr, &i, &v(&[-1, 4]), 3).is_err());
    }

    #[test]
    fn definitional_window_search_agrees_with_the_scan() {
        for k in 1..=2 {
            let t = ValueHyperfield::new(k).unwrap();
            for level in 0..=k {
                let sub = ValuationSubring::new(&t, level).unwrap();
                for x in values(k, 3) {
                    let brute = window_dependence_exists(k, &x, 3, 2, |_, a| sub.contains(a));
                    assert_eq!(
                        brute,
                        value_is_integral_over_subring(&sub, &x, 2).unwrap(),
                        "{x} over {sub}"
                    );
                }
            }
            let vr = ValuationSubring::valuation_ring(&t);
            let p = if k == 1 { vec![2] } else { vec![0, 2] };
            let i = CutIdeal::cut(p);
            for x in values(k, 3).into_iter().filter(|x| vr.contains(x)) {
                let brute = window_dependence_exists(k, &x, 3, 2, |n, a| {
                    cut_power(&i, n).unwrap().contains(&vr, a)
                });
                let scan = value_integral_dependence(&vr, &i, &x, 2).unwrap().is_some();
                assert_eq!(brute, scan, "{x} over {i}");
                assert_eq!(scan, i.contains(&vr, &x));
            }
        }
    }
}
