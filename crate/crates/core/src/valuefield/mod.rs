//! The value hyperfield `T_G = G ∪ {∞}` over `G = ℤᵏ` ordered
//! lexicographically, `1 ≤ k ≤ 4`.
//!
//! Multiplication is vector addition with `∞` absorbing, the zero is `∞`,
//! negation is the identity, and `x ⊞ y = {min(x, y)}` for `x ≠ y` while
//! `x ⊞ x = {z : z ≥ x} ∪ {∞}`. Values are written additively throughout.
//!
//! Subrings are the prefix rings `V_j = {v : prefix_j(v) ≥ 0} ∪ {∞}` and
//! hyperideals are prefix cuts ([`CutIdeal`]); every closed form has a
//! brute-force counterpart in [`window`].

mod cut;
pub mod window;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub use cut::{
    cut_intersection_of_powers, cut_is_primary, cut_is_prime, cut_power, cut_product, cut_radical,
    cut_sum, CutIdeal,
};

pub const MAX_RANK: usize = 4;

/// `ℤᵏ` under componentwise addition and lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OrderedGroup {
    rank: usize,
}

impl OrderedGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if !(1..=MAX_RANK).contains(&rank) {
            return Err(Error::UnsupportedRank(rank));
        }
        Ok(OrderedGroup { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    pub fn check(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch {
                rank: self.rank,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Unit vector at 1-based position `i`.
    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut v = self.identity();
        v[i - 1] = 1;
        v
    }
}

pub fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(n: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| n * x).collect()
}

/// Sign of `v` in the lexicographic order.
pub fn lex_sign(v: &[i64]) -> Ordering {
    v.iter()
        .find(|&&x| x != 0)
        .map_or(Ordering::Equal, |x| x.cmp(&0))
}

/// 1-based position of the first nonzero coordinate.
pub fn first_nonzero(v: &[i64]) -> Option<usize> {
    v.iter().position(|&x| x != 0).map(|i| i + 1)
}

/// An element of `T_G`. `Infinity` is the zero of the hyperfield and sorts
/// above every finite value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Value {
    Finite(Vec<i64>),
    Infinity,
}

impl Value {
    pub fn finite(v: impl Into<Vec<i64>>) -> Self {
        Value::Finite(v.into())
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    pub fn as_finite(&self) -> Option<&[i64]> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Infinity => None,
        }
    }

    /// `n·v` in additive notation, i.e. the `n`-th power.
    pub fn scale(&self, n: i64) -> Value {
        match self {
            Value::Finite(v) if n != 0 => Value::Finite(scale_vec(n, v)),
            Value::Finite(v) => Value::Finite(vec![0; v.len()]),
            Value::Infinity => {
                assert!(n > 0, "∞ has no non-positive powers");
                Value::Infinity
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infinity => write!(f, "∞"),
            Value::Finite(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Accepts `inf`, `∞`, `3`, `1,-2`, or `(1,-2)`.
impl FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(Value::Infinity);
        }
        let inner = s.trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Value::Finite)
            .map_err(|_| Error::InvalidCut(format!("cannot read `{s}` as a value")))
    }
}

/// A hyper-sum in `T_G`, which is always a single point or an up-set
/// `{z ≥ v} ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HyperSum {
    Point(Value),
    UpSet(Vec<i64>),
}

impl HyperSum {
    pub fn contains(&self, z: &Value) -> bool {
        match (self, z) {
            (HyperSum::Point(p), _) => p == z,
            (HyperSum::UpSet(_), Value::Infinity) => true,
            (HyperSum::UpSet(v), Value::Finite(w)) => w >= v,
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Value::Infinity)
    }

    /// Least element.
    pub fn min(&self) -> Value {
        match self {
            HyperSum::Point(p) => p.clone(),
            HyperSum::UpSet(v) => Value::Finite(v.clone()),
        }
    }

    /// `self ⊞ y`, the union of `x ⊞ y` over `x ∈ self`.
    pub fn plus(&self, y: &Value) -> HyperSum {
        match self {
            HyperSum::Point(x) => hyperadd(x, y),
            HyperSum::UpSet(x) => match y {
                Value::Finite(w) if w < x => HyperSum::Point(y.clone()),
                _ => HyperSum::UpSet(x.clone()),
            },
        }
    }
}

impl fmt::Display for HyperSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperSum::Point(p) => write!(f, "{{{p}}}"),
            HyperSum::UpSet(v) => write!(f, "{{z ≥ {}}} ∪ {{∞}}", Value::Finite(v.clone())),
        }
    }
}

pub fn hyperadd(x: &Value, y: &Value) -> HyperSum {
    match x.cmp(y) {
        Ordering::Less => HyperSum::Point(x.clone()),
        Ordering::Greater => HyperSum::Point(y.clone()),
        Ordering::Equal => match x {
            Value::Infinity => HyperSum::Point(Value::Infinity),
            Value::Finite(v) => HyperSum::UpSet(v.clone()),
        },
    }
}

/// The value hyperfield over a rank-`k` lexicographic group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ValueHyperfield {
    group: OrderedGroup,
}

impl ValueHyperfield {
    pub fn new(rank: usize) -> Result<Self> {
        Ok(ValueHyperfield {
            group: OrderedGroup::new(rank)?,
        })
    }

    pub fn group(&self) -> OrderedGroup {
        self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank
    }

    /// Checked constructor for a finite value.
    pub fn value(&self, v: impl Into<Vec<i64>>) -> Result<Value> {
        let v = v.into();
        self.group.check(&v)?;
        Ok(Value::Finite(v))
    }

    pub fn check(&self, x: &Value) -> Result<()> {
        match x {
            Value::Finite(v) => self.group.check(v),
            Value::Infinity => Ok(()),
        }
    }

    pub fn parse_value(&self, s: &str) -> Result<Value> {
        let v: Value = s.parse()?;
        self.check(&v)?;
        Ok(v)
    }

    pub fn zero(&self) -> Value {
        Value::Infinity
    }

    pub fn one(&self) -> Value {
        Value::Finite(self.group.identity())
    }

    pub fn mul(&self, x: &Value, y: &Value) -> Value {
        match (x, y) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(add_vec(a, b)),
            _ => Value::Infinity,
        }
    }

    pub fn neg(&self, x: &Value) -> Value {
        x.clone()
    }

    pub fn inverse(&self, x: &Value) -> Option<Value> {
        x.as_finite().map(|v| Value::Finite(scale_vec(-1, v)))
    }

    pub fn add(&self, x: &Value, y: &Value) -> HyperSum {
        hyperadd(x, y)
    }

    /// Left fold of `⊞` over `terms`. Contains `∞` exactly when the minimum
    /// term is attained at least twice or every term is `∞`.
    pub fn fold(&self, terms: &[Value]) -> Result<HyperSum> {
        let (first, rest) = terms.split_first().ok_or(Error::EmptyTerms)?;
        Ok(rest
            .iter()
            .fold(HyperSum::Point(first.clone()), |acc, t| acc.plus(t)))
    }
}

/// `V_j = {v : prefix_j(v) ≥ 0} ∪ {∞}`; `V_k` is the valuation ring of the
/// identity valuation and `V_0` is the whole hyperfield.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ValuationSubring {
    rank: usize,
    level: usize,
}

impl ValuationSubring {
    pub fn new(field: &ValueHyperfield, level: usize) -> Result<Self> {
        if level > field.rank() {
            return Err(Error::InvalidCut(format!(
                "level {level} exceeds rank {}",
                field.rank()
            )));
        }
        Ok(ValuationSubring {
            rank: field.rank(),
            level,
        })
    }

    /// The smallest one, `V = V_k`.
    pub fn valuation_ring(field: &ValueHyperfield) -> Self {
        ValuationSubring {
            rank: field.rank(),
            level: field.rank(),
        }
    }

    pub fn whole(field: &ValueHyperfield) -> Self {
        ValuationSubring {
            rank: field.rank(),
            level: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn field(&self) -> ValueHyperfield {
        ValueHyperfield::new(self.rank).expect("rank checked at construction")
    }

    pub fn contains(&self, x: &Value) -> bool {
        match x {
            Value::Infinity => true,
            Value::Finite(v) => lex_sign(&v[..self.level]) != Ordering::Less,
        }
    }

    /// `V_i ⊆ V_j` exactly when `i ≥ j`.
    pub fn is_subset(&self, other: &ValuationSubring) -> bool {
        self.level >= other.level
    }

    /// `V`, `V1`, …, `T` (the whole hyperfield).
    pub fn name(&self) -> String {
        match self.level {
            0 => "T".into(),
            l if l == self.rank => "V".into(),
            l => format!("V{l}"),
        }
    }

    pub fn parse(field: &ValueHyperfield, s: &str) -> Result<Self> {
        let s = s.trim();
        let level = match s {
            "V" => field.rank(),
            "T" => 0,
            _ => s
                .strip_prefix('V')
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Error::InvalidCut(format!("unknown subring `{s}`")))?,
        };
        Self::new(field, level)
    }
}

impl fmt::Display for ValuationSubring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// All subrings of `T_G` containing `V`, smallest first: `V_k ⊂ ⋯ ⊂ V_0`.
///
/// Every subring contains `1 ⊞ 1 = {z ≥ 0} ∪ {∞}`, so it is an up-closed
/// submonoid containing `V`; the up-closed submonoids of `ℤᵏ` containing
/// the non-negative cone are exactly the prefix rings. Each ring returned
/// is also checked against the subring and valuation-ring predicates on a
/// sample window.
pub fn enumerate_intermediate_valuation_rings(
    field: &ValueHyperfield,
) -> Result<Vec<ValuationSubring>> {
    let rings: Vec<ValuationSubring> = (0..=field.rank())
        .rev()
        .map(|l| ValuationSubring {
            rank: field.rank(),
            level: l,
        })
        .collect();
    let radius = if field.rank() <= 2 { 4 } else { 2 };
    for r in &rings {
        let member = |v: &Value| r.contains(v);
        if let Some(why) = window::subring_violation(field, radius, &member)
            .or_else(|| window::valuation_ring_violation(field, radius, &member))
        {
            return Err(Error::OracleDisagreement(format!(
                "{} on a sample window: {why}",
                r.name()
            )));
        }
    }
    Ok(rings)
}

/// `V[a]`, the least subring containing `V` and `a`: the up-closure of
/// `{n·a : n ≥ 0}` over `V`. It is `V` when `a ∈ V` and otherwise the prefix
/// ring just above the first (negative) nonzero coordinate of `a`.
pub fn generated_subring(field: &ValueHyperfield, a: &Value) -> Result<ValuationSubring> {
    field.check(a)?;
    generated_over(&ValuationSubring::valuation_ring(field), a)
}

/// `base[a]` for a prefix ring `base`.
pub fn generated_over(base: &ValuationSubring, a: &Value) -> Result<ValuationSubring> {
    base.field().check(a)?;
    if base.contains(a) {
        return Ok(*base);
    }
    let v = a.as_finite().expect("∞ lies in every subring");
    let l = first_nonzero(v).expect("0 lies in every subring");
    Ok(ValuationSubring {
        rank: base.rank,
        level: l - 1,
    })
}
