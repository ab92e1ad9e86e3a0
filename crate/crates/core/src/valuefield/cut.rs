//! Hyperideals of the prefix rings as lexicographic prefix cuts.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::{
    add_vec, first_nonzero, lex_sign, scale_vec, ValuationSubring, Value, ValueHyperfield,
};
use crate::error::{Error, Result};

/// A hyperideal of a prefix ring `V_m`.
///
/// `Cut(p)` with `p ∈ ℤʲ`, `p >_lex 0`, denotes `{v : prefix_j(v) ≥ p} ∪ {∞}`
/// and lives in every `V_m` with `m ≥ j`. `Unit` is the ring itself, so its
/// meaning depends on the ring in context. Distinct values denote distinct
/// sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CutIdeal {
    Zero,
    Cut(Vec<i64>),
    Unit,
}

impl CutIdeal {
    /// The cut at `prefix`; thresholds `≤ 0` give the whole ring.
    pub fn cut(prefix: impl Into<Vec<i64>>) -> Self {
        let p = prefix.into();
        if lex_sign(&p) == Ordering::Greater {
            CutIdeal::Cut(p)
        } else {
            CutIdeal::Unit
        }
    }

    /// `{prefix_i(v) > 0}`, the prime cut at level `i ≥ 1`.
    pub fn prime(i: usize) -> Self {
        assert!(i >= 1, "prime cuts start at level 1");
        let mut p = vec![0; i];
        p[i - 1] = 1;
        CutIdeal::Cut(p)
    }

    pub fn level(&self) -> Option<usize> {
        match self {
            CutIdeal::Cut(p) => Some(p.len()),
            _ => None,
        }
    }

    pub fn prefix(&self) -> Option<&[i64]> {
        match self {
            CutIdeal::Cut(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_proper(&self) -> bool {
        *self != CutIdeal::Unit
    }

    /// Fails unless `self` is an ideal of `ring`.
    pub fn check_in(&self, ring: &ValuationSubring) -> Result<()> {
        if let CutIdeal::Cut(p) = self {
            if p.len() > ring.level() {
                return Err(Error::InvalidCut(format!(
                    "{self} has level {} and is not an ideal of {ring}",
                    p.len()
                )));
            }
        }
        Ok(())
    }

    pub fn contains(&self, ring: &ValuationSubring, v: &Value) -> bool {
        match (self, v) {
            (_, Value::Infinity) => true,
            (CutIdeal::Zero, _) => false,
            (CutIdeal::Unit, _) => ring.contains(v),
            (CutIdeal::Cut(p), Value::Finite(x)) => x[..p.len()] >= p[..],
        }
    }

    /// Set inclusion; cuts form a chain.
    pub fn is_subset(&self, other: &CutIdeal) -> bool {
        match (self, other) {
            (CutIdeal::Zero, _) | (_, CutIdeal::Unit) => true,
            (_, CutIdeal::Zero) | (CutIdeal::Unit, _) => false,
            (CutIdeal::Cut(p), CutIdeal::Cut(q)) => threshold_cmp(p, q) != Ordering::Less,
        }
    }

    /// `I·W` for the prefix ring `W ⊇ V_m`: the ideal of `W` generated by `I`.
    pub fn extend_to(&self, ring: &ValuationSubring) -> CutIdeal {
        match self {
            CutIdeal::Cut(p) if p.len() > ring.level() => CutIdeal::cut(p[..ring.level()].to_vec()),
            other => other.clone(),
        }
    }

    /// Reads `zero`, `unit`, or `cut:j=<level>,p=<p1>,…,<pj>`.
    pub fn parse(field: &ValueHyperfield, s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "zero" => return Ok(CutIdeal::Zero),
            "unit" => return Ok(CutIdeal::Unit),
            _ => {}
        }
        let bad = || Error::InvalidCut(format!("expected `cut:j=<level>,p=<integers>`, got `{s}`"));
        let body = s.strip_prefix("cut:").ok_or_else(bad)?;
        let rest = body.strip_prefix("j=").ok_or_else(bad)?;
        let (j, p) = rest.split_once(",p=").ok_or_else(bad)?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        let p: Vec<i64> = p
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if j == 0 || j > field.rank() {
            return Err(Error::InvalidCut(format!(
                "level {j} outside 1..={}",
                field.rank()
            )));
        }
        if p.len() != j {
            return Err(Error::InvalidCut(format!(
                "level {j} needs {j} prefix entries, got {}",
                p.len()
            )));
        }
        Ok(CutIdeal::cut(p))
    }
}

impl fmt::Display for CutIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutIdeal::Zero => write!(f, "zero"),
            CutIdeal::Unit => write!(f, "unit"),
            CutIdeal::Cut(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "cut:j={},p={}", p.len(), parts.join(","))
            }
        }
    }
}

/// Compares thresholds padded with `-∞`; a larger threshold is a smaller set.
fn threshold_cmp(p: &[i64], q: &[i64]) -> Ordering {
    for i in 0..p.len().max(q.len()) {
        match (p.get(i), q.get(i)) {
            (Some(a), Some(b)) if a != b => return a.cmp(b),
            (Some(_), Some(_)) => {}
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (None, None) => unreachable!(),
        }
    }
    Ordering::Equal
}

/// `I + J`: the larger of the two, since cuts form a chain.
pub fn cut_sum(a: &CutIdeal, b: &CutIdeal) -> CutIdeal {
    if a.is_subset(b) {
        b.clone()
    } else {
        a.clone()
    }
}

/// `I·J`. For cuts at levels `j ≤ j'` the product is the level-`j` cut at
/// `p + prefix_j(p')`.
pub fn cut_product(a: &CutIdeal, b: &CutIdeal) -> CutIdeal {
    match (a, b) {
        (CutIdeal::Zero, _) | (_, CutIdeal::Zero) => CutIdeal::Zero,
        (CutIdeal::Unit, x) | (x, CutIdeal::Unit) => x.clone(),
        (CutIdeal::Cut(p), CutIdeal::Cut(q)) => {
            let m = p.len().min(q.len());
            CutIdeal::cut(add_vec(&p[..m], &q[..m]))
        }
    }
}

pub fn cut_power(a: &CutIdeal, n: usize) -> Result<CutIdeal> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    Ok(match a {
        CutIdeal::Cut(p) => CutIdeal::Cut(scale_vec(n as i64, p)),
        other => other.clone(),
    })
}

/// `√I`: the prime cut at the first nonzero position of the threshold.
pub fn cut_radical(a: &CutIdeal) -> CutIdeal {
    match a {
        CutIdeal::Cut(p) => CutIdeal::prime(first_nonzero(p).expect("thresholds are positive")),
        other => other.clone(),
    }
}

/// Primes are the zero ideal and the prime cuts `{prefix_i(v) > 0}`.
pub fn cut_is_prime(a: &CutIdeal) -> Result<bool> {
    match a {
        CutIdeal::Unit => Err(Error::ImproperIdeal),
        CutIdeal::Zero => Ok(true),
        CutIdeal::Cut(p) => Ok(*a == CutIdeal::prime(p.len())),
    }
}

/// Primary exactly when the threshold is `(0, …, 0, m)`, i.e. the cut sits
/// at the same level as its radical.
pub fn cut_is_primary(a: &CutIdeal) -> Result<bool> {
    match a {
        CutIdeal::Unit => Err(Error::ImproperIdeal),
        CutIdeal::Zero => Ok(true),
        CutIdeal::Cut(p) => Ok(first_nonzero(p) == Some(p.len())),
    }
}

/// `⋂ₙ Iⁿ`: the prime cut one level above the first nonzero position of
/// the threshold, or zero when that position is the first.
pub fn cut_intersection_of_powers(a: &CutIdeal) -> CutIdeal {
    match a {
        CutIdeal::Cut(p) => match first_nonzero(p).expect("thresholds are positive") {
            1 => CutIdeal::Zero,
            i => CutIdeal::prime(i - 1),
        },
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(k: usize) -> ValueHyperfield {
        ValueHyperfield::new(k).unwrap()
    }

    fn c(s: &str, k: usize) -> CutIdeal {
        CutIdeal::parse(&field(k), s).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "zero",
            "unit",
            "cut:j=1,p=1",
            "cut:j=2,p=0,5",
            "cut:j=2,p=1,-3",
        ] {
            assert_eq!(c(s, 2).to_string(), s);
        }
        assert_eq!(c("cut:j=2,p=0,0", 2), CutIdeal::Unit);
        assert_eq!(c("cut:j=1,p=-2", 2), CutIdeal::Unit);
        assert!(CutIdeal::parse(&field(2), "cut:j=3,p=0,0,1").is_err());
        assert!(CutIdeal::parse(&field(2), "cut:j=2,p=1").is_err());
        assert!(CutIdeal::parse(&field(2), "cut:p=1").is_err());
    }

    #[test]
    fn chain_order() {
        let p = CutIdeal::prime(1);
        let m = CutIdeal::prime(2);
        let q = c("cut:j=2,p=1,-4", 2);
        assert!(p.is_subset(&m));
        assert!(!m.is_subset(&p));
        assert!(q.is_subset(&p) && !p.is_subset(&q));
        assert!(CutIdeal::Zero.is_subset(&q) && q.is_subset(&CutIdeal::Unit));
        assert_eq!(cut_sum(&p, &q), p);
        assert_eq!(cut_sum(&m, &p), m);
    }

    #[test]
    fn products() {
        let p = CutIdeal::prime(1);
        assert_eq!(cut_product(&p, &p), c("cut:j=1,p=2", 2));
        assert_eq!(cut_product(&p, &c("cut:j=2,p=0,5", 2)), p);
        assert_eq!(cut_product(&p, &CutIdeal::Unit), p);
        assert_eq!(cut_product(&p, &CutIdeal::Zero), CutIdeal::Zero);
        assert_eq!(
            cut_power(&c("cut:j=2,p=1,-1", 2), 3).unwrap(),
            c("cut:j=2,p=3,-3", 2)
        );
        assert_eq!(cut_power(&p, 0), Err(Error::ZeroExponent));
    }

    #[test]
    fn radicals_and_primes() {
        assert_eq!(cut_radical(&c("cut:j=2,p=0,5", 2)), CutIdeal::prime(2));
        assert_eq!(cut_radical(&c("cut:j=2,p=1,0", 2)), CutIdeal::prime(1));
        assert_eq!(cut_radical(&c("cut:j=1,p=3", 1)), CutIdeal::prime(1));
        assert_eq!(cut_radical(&CutIdeal::Zero), CutIdeal::Zero);
        assert!(cut_is_prime(&CutIdeal::prime(1)).unwrap());
        assert!(cut_is_prime(&CutIdeal::prime(2)).unwrap());
        assert!(cut_is_prime(&CutIdeal::Zero).unwrap());
        let q = c("cut:j=2,p=0,5", 2);
        assert!(!cut_is_prime(&q).unwrap() && cut_is_primary(&q).unwrap());
        assert!(!cut_is_primary(&c("cut:j=2,p=1,0", 2)).unwrap());
        assert_eq!(cut_is_prime(&CutIdeal::Unit), Err(Error::ImproperIdeal));
    }

    #[test]
    fn extension_to_larger_rings() {
        let f = field(2);
        let v1 = ValuationSubring::new(&f, 1).unwrap();
        let t = ValuationSubring::whole(&f);
        assert_eq!(c("cut:j=2,p=1,-3", 2).extend_to(&v1), c("cut:j=1,p=1", 2));
        assert_eq!(c("cut:j=2,p=0,5", 2).extend_to(&v1), CutIdeal::Unit);
        assert_eq!(CutIdeal::prime(1).extend_to(&v1), CutIdeal::prime(1));
        assert_eq!(CutIdeal::prime(1).extend_to(&t), CutIdeal::Unit);
        assert_eq!(CutIdeal::Zero.extend_to(&t), CutIdeal::Zero);
    }

    #[test]
    fn intersections_of_powers() {
        assert_eq!(
            cut_intersection_of_powers(&CutIdeal::prime(2)),
            CutIdeal::prime(1)
        );
        assert_eq!(
            cut_intersection_of_powers(&c("cut:j=2,p=0,3", 2)),
            CutIdeal::prime(1)
        );
        assert_eq!(
            cut_intersection_of_powers(&CutIdeal::prime(1)),
            CutIdeal::Zero
        );
        assert_eq!(
            cut_intersection_of_powers(&c("cut:j=3,p=0,0,2", 3)),
            CutIdeal::prime(2)
        );
    }

    #[test]
    fn levels_must_fit_the_ring() {
        let f = field(2);
        let v1 = ValuationSubring::new(&f, 1).unwrap();
        assert!(CutIdeal::prime(2).check_in(&v1).is_err());
        assert!(CutIdeal::prime(1).check_in(&v1).is_ok());
    }
}
