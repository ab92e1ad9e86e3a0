//! Hypervaluations, ν-hyperideals and the valuation-theoretic checks.
//!
//! A finite carrier admits only the trivial valuation: a finite subgroup of
//! a totally ordered group is `{0}`. Everything nontrivial therefore runs on
//! the value hyperfield `T_G`, where the hypervaluation rings over `V` are
//! exactly the prefix rings `V_j` and the valuation with ring `V_j` is the
//! coarsening `ν_j(v) = prefix_j(v)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closure::value::{
    value_ideal_closure, value_subring_integral_closure, window_dependence_exists,
};
use crate::error::{Error, Result};
use crate::ideals::IdealHandle;
use crate::kernel::{Elem, FiniteHyperring};
use crate::report::{ensure, Report};
use crate::set::ElementSet;
use crate::valuefield::window::{
    intersection_of_powers_mismatch, prime_mismatch, radical_mismatch, random_cut, values,
    DEFAULT_WINDOW,
};
use crate::valuefield::{
    cut_intersection_of_powers, cut_is_primary, cut_is_prime, cut_power, cut_product, cut_radical,
    enumerate_intermediate_valuation_rings, generated_over, hyperadd, CutIdeal, ValuationSubring,
    Value, ValueHyperfield,
};

/// `ν(x) + ν(y)` in `G ∪ {∞}`.
fn value_add(a: &Value, b: &Value) -> Value {
    match (a, b) {
        (Value::Finite(x), Value::Finite(y)) => {
            Value::finite(x.iter().zip(y).map(|(s, t)| s + t).collect::<Vec<_>>())
        }
        _ => Value::Infinity,
    }
}

fn value_neg(a: &Value) -> Value {
    match a {
        Value::Finite(x) => Value::finite(x.iter().map(|s| -s).collect::<Vec<_>>()),
        Value::Infinity => Value::Infinity,
    }
}

fn padded(p: &[i64], rank: usize) -> Vec<i64> {
    let mut v = p.to_vec();
    v.resize(rank, 0);
    v
}

/// A hypervaluation on a finite hyperring, given by its table.
#[derive(Debug, Clone)]
pub struct FiniteValuation<'r> {
    ring: &'r FiniteHyperring,
    values: Vec<Value>,
}

impl<'r> FiniteValuation<'r> {
    pub fn new(ring: &'r FiniteHyperring, values: Vec<Value>) -> Result<Self> {
        if values.len() != ring.size() {
            return Err(Error::RaggedTable {
                table: "valuation",
                row: 0,
                expected: ring.size(),
                found: values.len(),
            });
        }
        let ranks: HashSet<usize> = values
            .iter()
            .filter_map(|v| v.as_finite().map(<[i64]>::len))
            .collect();
        if ranks.len() > 1 {
            let rank = *ranks.iter().min().expect("nonempty");
            let found = *ranks.iter().max().expect("nonempty");
            return Err(Error::RankMismatch { rank, found });
        }
        Ok(FiniteValuation { ring, values })
    }

    /// `ν(0) = ∞` and `ν(x) = 0` otherwise.
    pub fn trivial(ring: &'r FiniteHyperring) -> Self {
        let values = ring
            .elements()
            .map(|x| {
                if x == ring.zero() {
                    Value::Infinity
                } else {
                    Value::finite(vec![0])
                }
            })
            .collect();
        FiniteValuation { ring, values }
    }

    pub fn ring(&self) -> &'r FiniteHyperring {
        self.ring
    }

    pub fn value(&self, x: Elem) -> &Value {
        &self.values[x]
    }
}

#[derive(Clone)]
enum ValueMap {
    Coarsening(usize),
    Custom {
        name: String,
        codomain_rank: usize,
        map: fn(&Value) -> Value,
    },
}

/// A map out of the value hyperfield `T_{ℤᵏ}`.
#[derive(Clone)]
pub struct ValueValuation {
    field: ValueHyperfield,
    map: ValueMap,
}

impl fmt::Debug for ValueValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ValueValuation({} on T_ℤ^{})",
            self.name(),
            self.field.rank()
        )
    }
}

impl ValueValuation {
    pub fn identity(field: &ValueHyperfield) -> Self {
        ValueValuation {
            field: *field,
            map: ValueMap::Coarsening(field.rank()),
        }
    }

    /// `ν_j(v) = prefix_j(v)`, whose valuation ring is `V_j`.
    pub fn coarsening(field: &ValueHyperfield, j: usize) -> Result<Self> {
        if j == 0 || j > field.rank() {
            return Err(Error::UnsupportedRank(j));
        }
        Ok(ValueValuation {
            field: *field,
            map: ValueMap::Coarsening(j),
        })
    }

    /// An arbitrary map, checked only by sampling.
    pub fn custom(
        field: &ValueHyperfield,
        name: impl Into<String>,
        codomain_rank: usize,
        map: fn(&Value) -> Value,
    ) -> Self {
        ValueValuation {
            field: *field,
            map: ValueMap::Custom {
                name: name.into(),
                codomain_rank,
                map,
            },
        }
    }

    pub fn field(&self) -> ValueHyperfield {
        self.field
    }

    pub fn name(&self) -> String {
        match &self.map {
            ValueMap::Coarsening(j) if *j == self.field.rank() => "identity".into(),
            ValueMap::Coarsening(j) => format!("prefix_{j}"),
            ValueMap::Custom { name, .. } => name.clone(),
        }
    }

    pub fn codomain_rank(&self) -> usize {
        match &self.map {
            ValueMap::Coarsening(j) => *j,
            ValueMap::Custom { codomain_rank, .. } => *codomain_rank,
        }
    }

    pub fn apply(&self, x: &Value) -> Value {
        match (&self.map, x) {
            (ValueMap::Custom { map, .. }, _) => map(x),
            (ValueMap::Coarsening(_), Value::Infinity) => Value::Infinity,
            (ValueMap::Coarsening(j), Value::Finite(v)) => Value::finite(v[..*j].to_vec()),
        }
    }

    /// `{x : ν(x) ≥ 0}` when it is a known prefix ring.
    pub fn valuation_ring(&self) -> Option<ValuationSubring> {
        match self.map {
            ValueMap::Coarsening(j) => {
                Some(ValuationSubring::new(&self.field, j).expect("j ≤ rank"))
            }
            ValueMap::Custom { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Hypervaluation<'r> {
    Finite(FiniteValuation<'r>),
    Value(ValueValuation),
}

/// Sample radius for [`check_hypervaluation`] on the value backend.
pub const SAMPLE_RADIUS: i64 = 6;

/// Checks the hypervaluation axioms: exhaustively on a finite carrier, on
/// the window of radius [`SAMPLE_RADIUS`] for the value hyperfield.
pub fn check_hypervaluation(nu: &Hypervaluation) -> Report {
    match nu {
        Hypervaluation::Finite(f) => check_finite(f),
        Hypervaluation::Value(v) => check_value(v, SAMPLE_RADIUS),
    }
}

fn first_err(mut it: impl Iterator<Item = Result<(), String>>) -> Result<(), String> {
    it.find(Result::is_err).unwrap_or(Ok(()))
}

fn check_finite(nu: &FiniteValuation) -> Report {
    let ring = nu.ring;
    let v = |x: Elem| nu.value(x);
    let elems: Vec<Elem> = ring.elements().collect();
    let pairs = || {
        elems
            .iter()
            .flat_map(|&x| elems.iter().map(move |&y| (x, y)))
    };
    let mut r = Report::new();
    r.check(
        "a",
        "ν(x) = ∞ exactly for x = 0",
        first_err(elems.iter().map(|&x| {
            ensure(v(x).is_infinity() == (x == ring.zero()), || {
                format!("ν({}) = {}", ring.label(x), v(x))
            })
        })),
    );
    r.check(
        "b",
        "ν(−x) = ν(x)",
        first_err(
            elems
                .iter()
                .map(|&x| ensure(v(ring.neg(x)) == v(x), || format!("x = {}", ring.label(x)))),
        ),
    );
    r.check(
        "c",
        "ν(xy) = ν(x) + ν(y)",
        first_err(pairs().map(|(x, y)| {
            ensure(*v(ring.mul(x, y)) == value_add(v(x), v(y)), || {
                format!("x = {}, y = {}", ring.label(x), ring.label(y))
            })
        })),
    );
    r.check(
        "d",
        "z ∈ x + y implies ν(z) ≥ min(ν(x), ν(y))",
        first_err(
            pairs()
                .flat_map(|(x, y)| {
                    ring.add(x, y)
                        .iter()
                        .map(move |z| (x, y, z))
                        .collect::<Vec<_>>()
                })
                .map(|(x, y, z)| {
                    ensure(v(z) >= v(x).min(v(y)), || {
                        format!("{} ∈ {} + {}", ring.label(z), ring.label(x), ring.label(y))
                    })
                }),
        ),
    );
    let image: BTreeSet<Value> = elems
        .iter()
        .map(|&x| v(x).clone())
        .filter(|x| !x.is_infinity())
        .collect();
    r.check(
        "image",
        "the finite values form a group (ν is onto its image group)",
        first_err(
            image
                .iter()
                .flat_map(|a| image.iter().map(move |b| (a, b)))
                .map(|(a, b)| {
                    ensure(
                        image.contains(&value_add(a, b)) && image.contains(&value_neg(a)),
                        || format!("{a} and {b} do not close up"),
                    )
                }),
        ),
    );
    r
}

fn check_value(nu: &ValueValuation, radius: i64) -> Report {
    let field = nu.field;
    let pts: Vec<Value> = std::iter::once(Value::Infinity)
        .chain(values(field.rank(), radius))
        .collect();
    let pairs = || pts.iter().flat_map(|x| pts.iter().map(move |y| (x, y)));
    let nv = |x: &Value| nu.apply(x);
    let detail = format!("window radius {radius}");
    let mut r = Report::new();
    r.check_with(
        "a",
        "ν(x) = ∞ exactly for x = ∞",
        first_err(pts.iter().map(|x| {
            ensure(nv(x).is_infinity() == x.is_infinity(), || {
                format!("ν({x}) = {}", nv(x))
            })
        })),
        &detail,
    );
    r.check_with(
        "b",
        "ν(−x) = ν(x)",
        first_err(
            pts.iter()
                .map(|x| ensure(nv(&field.neg(x)) == nv(x), || format!("x = {x}"))),
        ),
        &detail,
    );
    r.check_with(
        "c",
        "ν(xy) = ν(x) + ν(y)",
        first_err(pairs().map(|(x, y)| {
            ensure(nv(&field.mul(x, y)) == value_add(&nv(x), &nv(y)), || {
                format!("x = {x}, y = {y}")
            })
        })),
        &detail,
    );
    // x ⊞ y is the point min(x, y) unless x = y, when it is the up-set of x
    r.check_with(
        "d",
        "z ∈ x ⊞ y implies ν(z) ≥ min(ν(x), ν(y))",
        first_err(pairs().map(|(x, y)| {
            let s = hyperadd(x, y);
            let floor = nv(x).min(nv(y));
            match pts.iter().find(|z| s.contains(z) && nv(z) < floor) {
                Some(z) => Err(format!("{z} ∈ {x} ⊞ {y} but ν({z}) = {} < {floor}", nv(z))),
                None => Ok(()),
            }
        })),
        &detail,
    );
    let image: HashSet<Value> = pts.iter().map(nv).collect();
    r.check_with(
        "image",
        "every value of the image group is attained",
        first_err(
            std::iter::once(Value::Infinity)
                .chain(values(nu.codomain_rank(), radius / 2))
                .map(|c| ensure(image.contains(&c), || format!("{c} has no preimage"))),
        ),
        format!("codomain window radius {}", radius / 2),
    );
    r
}

/// The outcome of testing `I` against `x ∈ I, ν(y) ≥ ν(x) ⟹ y ∈ I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuIdealVerdict<I, E> {
    pub ideal: I,
    pub is_nu_ideal: bool,
    /// `(x, y)` with `x ∈ I`, `ν(y) ≥ ν(x)` and `y ∉ I`.
    pub witness: Option<(E, E)>,
}

/// Exhaustive ν-ideal test on a finite carrier.
pub fn is_nu_hyperideal_finite(
    nu: &FiniteValuation,
    ideal: &IdealHandle,
) -> Result<NuIdealVerdict<ElementSet, Elem>> {
    if !std::ptr::eq(nu.ring, ideal.ring()) {
        return Err(Error::MismatchedRings);
    }
    let set = ideal.set();
    let witness = set
        .iter()
        .flat_map(|x| nu.ring.elements().map(move |y| (x, y)))
        .find(|&(x, y)| nu.value(y) >= nu.value(x) && !set.contains(y));
    Ok(NuIdealVerdict {
        ideal: *set,
        is_nu_ideal: witness.is_none(),
        witness,
    })
}

/// The ν-hyperideals among the hyperideals of a finite carrier.
pub fn nu_hyperideals_finite(nu: &FiniteValuation) -> Result<Vec<ElementSet>> {
    let mut out = Vec::new();
    for set in crate::ideals::enumerate_hyperideals_incremental(nu.ring)? {
        let handle = IdealHandle::new(nu.ring, set)?;
        if is_nu_hyperideal_finite(nu, &handle)?.is_nu_ideal {
            out.push(set);
        }
    }
    Ok(out)
}

fn check_inside(nu: &ValueValuation, ring: &ValuationSubring) -> Result<()> {
    if ring.rank() != nu.field.rank() {
        return Err(Error::RankMismatch {
            rank: nu.field.rank(),
            found: ring.rank(),
        });
    }
    match nu.valuation_ring() {
        Some(v) if !ring.is_subset(&v) => Err(Error::NotSubring),
        _ => Ok(()),
    }
}

/// ν-ideal test for a cut ideal of `ring ⊆ V_ν`.
///
/// For a coarsening `ν_j` the answer is closed form: `Zero` and `Unit`
/// always qualify and `Cut(p)` qualifies iff its level is at most `j`.
/// Otherwise `x = p` and `y = p − e_level` share `ν_j` and separate the cut.
/// Custom maps fall back to a search on the window of radius
/// [`SAMPLE_RADIUS`].
pub fn is_nu_hyperideal(
    nu: &ValueValuation,
    ring: &ValuationSubring,
    ideal: &CutIdeal,
) -> Result<NuIdealVerdict<CutIdeal, Value>> {
    check_inside(nu, ring)?;
    ideal.check_in(ring)?;
    let witness = match (&nu.map, ideal) {
        (ValueMap::Coarsening(j), CutIdeal::Cut(p)) if p.len() > *j => {
            let x = padded(p, ring.rank());
            let mut y = x.clone();
            y[p.len() - 1] -= 1;
            Some((Value::finite(x), Value::finite(y)))
        }
        (ValueMap::Coarsening(_), _) => None,
        (ValueMap::Custom { .. }, _) => nu_ideal_window_witness(nu, ring, ideal, SAMPLE_RADIUS),
    };
    Ok(NuIdealVerdict {
        ideal: ideal.clone(),
        is_nu_ideal: witness.is_none(),
        witness,
    })
}

/// Definitional search for a violating pair inside the window.
pub fn nu_ideal_window_witness(
    nu: &ValueValuation,
    ring: &ValuationSubring,
    ideal: &CutIdeal,
    radius: i64,
) -> Option<(Value, Value)> {
    let pts: Vec<Value> = values(ring.rank(), radius)
        .into_iter()
        .filter(|v| ring.contains(v))
        .collect();
    let inside: Vec<&Value> = pts.iter().filter(|x| ideal.contains(ring, x)).collect();
    let outside: Vec<&Value> = pts.iter().filter(|y| !ideal.contains(ring, y)).collect();
    inside.iter().find_map(|x| {
        let vx = nu.apply(x);
        outside
            .iter()
            .find(|y| nu.apply(y) >= vx)
            .map(|y| ((*x).clone(), (*y).clone()))
    })
}

/// `I·W ∩ R` for prefix rings `R ⊆ W`.
///
/// The extension is [`CutIdeal::extend_to`]. Contracting keeps the
/// representation: a cut of level at most the level of `W` describes the
/// same condition in `R`, and the unit ideal of `W` meets `R` in `R`.
pub fn extend_contract(
    ideal: &CutIdeal,
    w: &ValuationSubring,
    r_sub: &ValuationSubring,
) -> Result<CutIdeal> {
    if w.rank() != r_sub.rank() {
        return Err(Error::RankMismatch {
            rank: r_sub.rank(),
            found: w.rank(),
        });
    }
    ideal.check_in(r_sub)?;
    if !r_sub.is_subset(w) {
        return Err(Error::NotSubring);
    }
    Ok(ideal.extend_to(w))
}

/// Compares [`extend_contract`] with the definition on the window: `I·W`
/// is the up-closure of `{x·w}`, so on the inner window `z ∈ I·W ∩ R`
/// exactly when `z ∈ R` and `z ≥ min(I) + min(W)`. That needs `radius` at
/// least twice the largest threshold entry, or the window minima are not
/// far enough out.
pub fn extend_contract_mismatch(
    ideal: &CutIdeal,
    w: &ValuationSubring,
    r_sub: &ValuationSubring,
    radius: i64,
) -> Option<String> {
    let closed = extend_contract(ideal, w, r_sub).ok()?;
    let all = values(r_sub.rank(), radius);
    let low_i = all.iter().filter(|x| ideal.contains(r_sub, x)).min();
    let low_w = all.iter().filter(|x| w.contains(x)).min();
    let floor = match (low_i, low_w) {
        (Some(a), Some(b)) => value_add(a, b),
        _ => Value::Infinity,
    };
    values(r_sub.rank(), radius / 2)
        .into_iter()
        .filter(|z| r_sub.contains(z))
        .find(|z| (*z >= floor) != closed.contains(r_sub, z))
        .map(|z| format!("{ideal}·{w} ∩ {r_sub}: closed form {closed} disagrees at {z}"))
}

/// Whether a hypervaluation ring equals its integral closure in `T_G`.
pub fn valuation_ring_is_integrally_closed(v: &ValuationSubring) -> bool {
    value_subring_integral_closure(v) == *v
}

/// Definitional check on the window: an element is integral over `v` (with
/// degree at most 2) exactly when it lies in `v`.
pub fn integrally_closed_window_mismatch(v: &ValuationSubring, radius: i64) -> Option<String> {
    values(v.rank(), radius).into_iter().find_map(|x| {
        let integral = window_dependence_exists(v.rank(), &x, radius, 2, |_, a| v.contains(a));
        (integral != v.contains(&x))
            .then(|| format!("{x}: integral {integral}, member {}", v.contains(&x)))
    })
}

/// The smaller of two cuts; cuts of one ring form a chain.
pub fn cut_meet(a: &CutIdeal, b: &CutIdeal) -> CutIdeal {
    if a.is_subset(b) {
        a.clone()
    } else {
        b.clone()
    }
}

/// The enumerated hypervaluation rings containing `r_sub`.
pub fn rings_over(r_sub: &ValuationSubring) -> Result<Vec<ValuationSubring>> {
    Ok(enumerate_intermediate_valuation_rings(&r_sub.field())?
        .into_iter()
        .filter(|w| r_sub.is_subset(w))
        .collect())
}

/// `⋂ I·W ∩ R` over every enumerated hypervaluation ring `W ⊇ R`, which
/// must agree with the closure computed from dependences.
pub fn closure_via_valuations(ideal: &CutIdeal, r_sub: &ValuationSubring) -> Result<CutIdeal> {
    let mut meet = CutIdeal::Unit;
    for w in rings_over(r_sub)? {
        meet = cut_meet(&meet, &extend_contract(ideal, &w, r_sub)?);
    }
    let closure = value_ideal_closure(r_sub, ideal)?;
    if meet != closure {
        return Err(Error::OracleDisagreement(format!(
            "closure of {ideal} in {r_sub}: valuations give {meet}, dependences give {closure}"
        )));
    }
    Ok(meet)
}

/// Compares membership in `I` with a definitional dependence search on the
/// window (coefficients from the window, degree at most 2).
pub fn definitional_closure_mismatch(
    ring: &ValuationSubring,
    ideal: &CutIdeal,
    radius: i64,
) -> Option<String> {
    let powers: Vec<CutIdeal> = (1..=2)
        .map(|n| cut_power(ideal, n).expect("n ≥ 1"))
        .collect();
    values(ring.rank(), radius)
        .into_iter()
        .filter(|x| ring.contains(x))
        .find_map(|x| {
            let dep = window_dependence_exists(ring.rank(), &x, radius, 2, |n, a| {
                ring.contains(a) && powers[n - 1].contains(ring, a)
            });
            (dep != ideal.contains(ring, &x)).then(|| format!("{x} over {ideal}: dependence {dep}"))
        })
}

/// A hypervaluation ring over `R` whose maximal ideal lies over `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistenceWitness {
    pub ring: ValuationSubring,
    pub maximal: CutIdeal,
    pub contraction: CutIdeal,
}

/// The maximal ideal of a prefix ring: its non-units.
pub fn maximal_ideal(w: &ValuationSubring) -> CutIdeal {
    match w.level() {
        0 => CutIdeal::Zero,
        l => CutIdeal::prime(l),
    }
}

/// Searches the enumerated rings over `r_sub` for `W` with `M_W ∩ R = P`.
/// `None` means no witness in the enumerated family.
pub fn existence_witness(
    r_sub: &ValuationSubring,
    p: &CutIdeal,
) -> Result<Option<ExistenceWitness>> {
    p.check_in(r_sub)?;
    if !p.is_proper() || !cut_is_prime(p)? {
        return Err(Error::InvalidCut(format!(
            "{p} is not a prime ideal of {r_sub}"
        )));
    }
    for w in rings_over(r_sub)? {
        let maximal = maximal_ideal(&w);
        // M_W has level ≤ level(W) ≤ level(R), so it reads the same in R
        let contraction = maximal.clone();
        if contraction == *p {
            return Ok(Some(ExistenceWitness {
                ring: w,
                maximal,
                contraction,
            }));
        }
    }
    Ok(None)
}

/// Checks `M_W ∩ R = P` on the window with `M_W` read as the non-units of `W`.
pub fn contraction_mismatch(
    w: &ExistenceWitness,
    r_sub: &ValuationSubring,
    p: &CutIdeal,
    radius: i64,
) -> Option<String> {
    let field = r_sub.field();
    values(r_sub.rank(), radius)
        .into_iter()
        .filter(|z| r_sub.contains(z))
        .find_map(|z| {
            let nonunit =
                w.ring.contains(&z) && !w.ring.contains(&field.inverse(&z).expect("finite"));
            (nonunit != p.contains(r_sub, &z))
                .then(|| format!("{z}: non-unit of {} is {nonunit}", w.ring))
        })
}

/// `P·R[a] ≠ R[a]` or `P·R[a⁻¹] ≠ R[a⁻¹]` for a nonzero prime `P` of `R`.
pub fn lies_over_in_adjunction(r_sub: &ValuationSubring, p: &CutIdeal, a: &Value) -> Result<bool> {
    let field = r_sub.field();
    let inv = field
        .inverse(a)
        .ok_or(Error::InvalidCut("∞ has no inverse".into()))?;
    let up = generated_over(r_sub, a)?;
    let down = generated_over(r_sub, &inv)?;
    Ok(p.extend_to(&up).is_proper() || p.extend_to(&down).is_proper())
}

/// Counts cases and keeps the first failure.
#[derive(Default)]
struct Tally {
    cases: usize,
    first: Option<String>,
}

impl Tally {
    fn push(&mut self, outcome: Result<(), String>) {
        self.cases += 1;
        if let Err(w) = outcome {
            self.first.get_or_insert(w);
        }
    }

    fn push_opt(&mut self, mismatch: Option<String>) {
        self.push(mismatch.map_or(Ok(()), Err));
    }

    fn record(self, report: &mut Report, id: &str, anchor: &str) {
        let outcome = match self.first {
            Some(w) => Err(w),
            None if self.cases == 0 => Err("no cases were generated".into()),
            None => Ok(()),
        };
        report.check_with(id, anchor, outcome, format!("{} cases", self.cases));
    }
}

fn ring_values(r_sub: &ValuationSubring, radius: i64) -> Vec<Value> {
    values(r_sub.rank(), radius)
        .into_iter()
        .filter(|v| r_sub.contains(v))
        .collect()
}

fn proper_nonzero_cut(rng: &mut impl Rng, r_sub: &ValuationSubring) -> CutIdeal {
    loop {
        let c = random_cut(rng, r_sub);
        if matches!(c, CutIdeal::Cut(_)) {
            return c;
        }
    }
}

/// The primes of a prefix ring: `Zero` and `prime(i)` for `1 ≤ i ≤ level`.
pub fn prime_cuts(r_sub: &ValuationSubring) -> Vec<CutIdeal> {
    std::iter::once(CutIdeal::Zero)
        .chain((1..=r_sub.level()).map(CutIdeal::prime))
        .collect()
}

/// Every cut of level at most `level` with coordinates in `[-radius, radius]`.
fn window_cuts(rank: usize, level: usize, radius: i64) -> Vec<CutIdeal> {
    let mut out = vec![CutIdeal::Zero, CutIdeal::Unit];
    for l in 1..=level.min(rank) {
        for v in values(l, radius) {
            if let Value::Finite(p) = v {
                let c = CutIdeal::cut(p);
                if c.is_proper() {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// `Cut(i, m·e_i)`, the `m`-th power of `prime(i)`.
fn primary_at(i: usize, m: i64) -> CutIdeal {
    let mut p = vec![0; i];
    p[i - 1] = m;
    CutIdeal::Cut(p)
}

/// The five statements about ν-ideals of `R = r_sub`, with `ν` the
/// coarsening whose ring is `R`, on seeded samples.
pub fn prop48_suite(
    field: &ValueHyperfield,
    r_sub: &ValuationSubring,
    seed: u64,
    cases: usize,
) -> Result<Report> {
    if r_sub.rank() != field.rank() {
        return Err(Error::RankMismatch {
            rank: field.rank(),
            found: r_sub.rank(),
        });
    }
    if r_sub.level() == 0 {
        return Err(Error::InvalidCut(
            "the whole hyperfield has no proper nonzero ideals".into(),
        ));
    }
    let nu = ValueValuation::coarsening(field, r_sub.level())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = ring_values(r_sub, 4);
    let finite: Vec<Value> = pool.iter().filter(|v| !v.is_infinity()).cloned().collect();
    let mut report = Report::new();
    let is_nu = |i: &CutIdeal| {
        is_nu_hyperideal(&nu, r_sub, i)
            .map(|v| v.is_nu_ideal)
            .unwrap_or(false)
    };

    // (a) I built from A·B so that the hypothesis holds, plus unrelated
    // random I where the hypothesis is tested
    let mut a_tally = Tally::default();
    let mut attempts = 0;
    while a_tally.cases < cases && attempts < 50 * cases {
        attempts += 1;
        let pick = |rng: &mut ChaCha8Rng| -> Vec<Value> {
            let n = rng.gen_range(1..=3);
            finite.choose_multiple(rng, n).cloned().collect()
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let ab: Vec<Value> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| field.mul(x, y)))
            .collect();
        let ideal = if attempts % 2 == 0 {
            let low = ab
                .iter()
                .min()
                .expect("nonempty")
                .as_finite()
                .expect("finite")
                .to_vec();
            CutIdeal::cut(low[..rng.gen_range(1..=r_sub.level())].to_vec())
        } else {
            random_cut(&mut rng, r_sub)
        };
        if !is_nu(&ideal) || !ab.iter().all(|z| ideal.contains(r_sub, z)) {
            continue;
        }
        let squares_in = |s: &[Value]| s.iter().all(|x| ideal.contains(r_sub, &field.mul(x, x)));
        a_tally.push(ensure(squares_in(&a) || squares_in(&b), || {
            format!("A = {a:?}, B = {b:?}, I = {ideal}")
        }));
    }
    a_tally.record(
        &mut report,
        "a",
        "AB ⊆ I for a ν-ideal I gives all a² ∈ I or all b² ∈ I",
    );

    // (b)
    let mut b_tally = Tally::default();
    if r_sub.rank() == 1 {
        let i = CutIdeal::cut(vec![2]);
        let one = Value::finite(vec![1]);
        let prod = cut_product(&i, &i);
        b_tally.push(ensure(
            prod == CutIdeal::cut(vec![4]) && !prod.contains(r_sub, &field.mul(&one, &one)),
            || format!("1·1 against {prod}"),
        ));
    }
    for _ in 0..cases {
        let n = rng.gen_range(1..=3);
        let ideals: Vec<CutIdeal> = (0..n)
            .map(|_| proper_nonzero_cut(&mut rng, r_sub))
            .collect();
        let mut xs = Vec::new();
        for i in &ideals {
            let outside: Vec<&Value> = pool.iter().filter(|x| !i.contains(r_sub, x)).collect();
            match outside.choose(&mut rng) {
                Some(x) => xs.push((*x).clone()),
                None => break,
            }
        }
        if xs.len() < n {
            continue;
        }
        let prod_ideal = ideals[1..]
            .iter()
            .fold(ideals[0].clone(), |acc, i| cut_product(&acc, i));
        let prod = xs[1..]
            .iter()
            .fold(xs[0].clone(), |acc, x| field.mul(&acc, x));
        b_tally.push(ensure(!prod_ideal.contains(r_sub, &prod), || {
            format!("x = {xs:?} outside {ideals:?}, product {prod} ∈ {prod_ideal}")
        }));
        let (i, j) = (&ideals[0], proper_nonzero_cut(&mut rng, r_sub));
        let m = rng.gen_range(1..=4);
        if cut_power(i, m)?.is_subset(&cut_power(&j, m)?) {
            b_tally.push(ensure(i.is_subset(&j), || {
                format!("{i}^{m} ⊆ {j}^{m} but {i} ⊄ {j}")
            }));
        }
    }
    b_tally.record(
        &mut report,
        "b",
        "xᵢ ∉ Iᵢ gives ∏xᵢ ∉ ∏Iᵢ, and Iⁿ ⊆ Jⁿ gives I ⊆ J",
    );

    // (c)
    let mut c_tally = Tally::default();
    let mut tested: Vec<CutIdeal> = prime_cuts(r_sub);
    tested.extend((0..cases).map(|_| proper_nonzero_cut(&mut rng, r_sub)));
    for (idx, i) in tested.iter().enumerate() {
        let powers_nu = (1..=6).all(|n| cut_power(i, n).map(|p| is_nu(&p)).unwrap_or(false));
        if !powers_nu {
            continue;
        }
        let meet = cut_intersection_of_powers(i);
        c_tally.push(ensure(cut_is_prime(&meet)?, || {
            format!("⋂ ({i})ⁿ = {meet} is not prime")
        }));
        if idx < 6 {
            c_tally.push_opt(intersection_of_powers_mismatch(r_sub, i, DEFAULT_WINDOW));
            c_tally.push_opt(prime_mismatch(r_sub, &meet, DEFAULT_WINDOW));
        }
    }
    report_c_examples(&mut c_tally, r_sub);
    c_tally.record(
        &mut report,
        "c",
        "when every Iⁿ is a ν-ideal, ⋂ Iⁿ is prime",
    );

    // (d)
    let mut d_tally = Tally::default();
    let candidates = window_cuts(r_sub.rank(), r_sub.level(), 4);
    for p in prime_cuts(r_sub) {
        let family: Vec<CutIdeal> = match &p {
            CutIdeal::Zero => vec![CutIdeal::Zero],
            _ => {
                let i = p.level().expect("cut");
                (1..=2 * DEFAULT_WINDOW).map(|m| primary_at(i, m)).collect()
            }
        };
        for q in &candidates {
            if q.is_proper() && cut_is_primary(q)? && cut_radical(q) == p {
                d_tally.push(ensure(family.contains(q), || {
                    format!("{q} is {p}-primary but missing from the family")
                }));
            }
        }
        let meet = match &p {
            CutIdeal::Zero => CutIdeal::Zero,
            _ => {
                d_tally.push(ensure(cut_power(&p, 3)? == family[2], || {
                    format!("{p}³ ≠ {}", family[2])
                }));
                d_tally.push_opt(intersection_of_powers_mismatch(r_sub, &p, DEFAULT_WINDOW));
                cut_intersection_of_powers(&p)
            }
        };
        d_tally.push(ensure(cut_is_prime(&meet)?, || {
            format!("⋂ of {p}-primary ideals = {meet}")
        }));
        d_tally.push_opt(prime_mismatch(r_sub, &meet, DEFAULT_WINDOW));
    }
    d_tally.record(
        &mut report,
        "d",
        "the intersection of the P-primary ideals is prime",
    );

    // (e) finite chains and power chains of proper ν-ideals
    let mut e_tally = Tally::default();
    for k in 0..cases {
        let (meet, label) = if k % 2 == 0 {
            let n = rng.gen_range(1..=4);
            let fam: Vec<CutIdeal> = (0..n)
                .map(|_| random_cut(&mut rng, r_sub))
                .filter(CutIdeal::is_proper)
                .collect();
            if fam.is_empty() {
                continue;
            }
            let meet = fam[1..]
                .iter()
                .fold(fam[0].clone(), |acc, i| cut_meet(&acc, i));
            (meet, format!("{fam:?}"))
        } else {
            let i = proper_nonzero_cut(&mut rng, r_sub);
            (cut_intersection_of_powers(&i), format!("powers of {i}"))
        };
        let root = cut_radical(&meet);
        e_tally.push(ensure(is_nu(&meet) && cut_is_prime(&root)?, || {
            format!("√⋂ {label} = {root}")
        }));
        if k < 4 {
            e_tally.push_opt(radical_mismatch(r_sub, &meet, DEFAULT_WINDOW));
            e_tally.push_opt(prime_mismatch(r_sub, &root, DEFAULT_WINDOW));
        }
    }
    e_tally.record(
        &mut report,
        "e",
        "√ of the intersection of a directed family of ν-ideals is prime",
    );
    Ok(report)
}

fn report_c_examples(tally: &mut Tally, r_sub: &ValuationSubring) {
    let m = maximal_ideal(r_sub);
    let expected = match r_sub.level() {
        1 => CutIdeal::Zero,
        l => CutIdeal::prime(l - 1),
    };
    let got = cut_intersection_of_powers(&m);
    tally.push(ensure(got == expected, || {
        format!("⋂ ({m})ⁿ = {got}, expected {expected}")
    }));
}

/// The chain `Δ` of `M`-primary ideals of `r_sub` and its intersection.
///
/// The normality hypothesis on members of `Δ` is not available in `T_G`
/// (for `x ∈ I` finite, `0 ⊞ x ⊞ 0` is the whole up-set of `0`), so the
/// conclusion is checked on its own and the failed hypothesis is recorded.
pub fn theorem410_check(field: &ValueHyperfield, r_sub: &ValuationSubring) -> Result<Report> {
    if r_sub.rank() != field.rank() {
        return Err(Error::RankMismatch {
            rank: field.rank(),
            found: r_sub.rank(),
        });
    }
    let k = r_sub.level();
    if k == 0 {
        return Err(Error::InvalidCut(
            "the whole hyperfield has no maximal cut".into(),
        ));
    }
    let m = maximal_ideal(r_sub);
    let delta: Vec<CutIdeal> = (1..=2 * DEFAULT_WINDOW).map(|e| primary_at(k, e)).collect();
    let mut report = Report::new();

    let mut members = Tally::default();
    for q in &delta {
        members.push(ensure(
            cut_is_primary(q)? && cut_radical(q) == m && extend_contract(q, r_sub, r_sub)? == *q,
            || format!("{q} is not an M-primary valuation ideal"),
        ));
    }
    for q in window_cuts(r_sub.rank(), k, 4) {
        if q.is_proper() && cut_is_primary(&q)? && cut_radical(&q) == m {
            members.push(ensure(delta.contains(&q), || {
                format!("{q} is M-primary but not listed")
            }));
        }
    }
    members.record(
        &mut report,
        "members",
        "Δ consists of the M-primary valuation ideals",
    );

    let mut chain = Tally::default();
    for (a, qa) in delta.iter().enumerate() {
        for qb in &delta[a..] {
            chain.push(ensure(qb.is_subset(qa), || format!("{qb} ⊄ {qa}")));
        }
    }
    chain.record(&mut report, "chain", "Δ is totally ordered by inclusion");

    let meet = cut_intersection_of_powers(&m);
    let expected = if k == 1 {
        CutIdeal::Zero
    } else {
        CutIdeal::prime(k - 1)
    };
    let mut prime = Tally::default();
    prime.push(ensure(meet == expected, || {
        format!("⋂Δ = {meet}, expected {expected}")
    }));
    prime.push_opt(intersection_of_powers_mismatch(r_sub, &m, DEFAULT_WINDOW));
    prime.push(ensure(cut_is_prime(&meet)?, || {
        format!("⋂Δ = {meet} is not prime")
    }));
    prime.push_opt(prime_mismatch(r_sub, &meet, DEFAULT_WINDOW));
    prime.record(
        &mut report,
        "intersection",
        &format!("⋂Δ = {expected} is prime"),
    );

    let zero = field.one();
    let x = Value::finite(
        delta[0]
            .prefix()
            .map(|p| padded(p, field.rank()))
            .expect("cut"),
    );
    let spill = hyperadd(&zero, &x).plus(&zero);
    report.info(
        "normality",
        "members of Δ are not normal in T_G",
        format!("0 ⊞ {x} ⊞ 0 = {spill} contains 0 ∉ {}", delta[0]),
    );
    Ok(report)
}

/// The battery of valuation-theoretic checks on `T_{ℤᵏ}`.
pub fn valuation_battery(field: &ValueHyperfield, seed: u64, cases: usize) -> Result<Report> {
    let rings = enumerate_intermediate_valuation_rings(field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new();

    let mut integrally_closed = Tally::default();
    for v in &rings {
        integrally_closed.push(ensure(valuation_ring_is_integrally_closed(v), || {
            format!("{v} is not integrally closed")
        }));
        integrally_closed.push_opt(integrally_closed_window_mismatch(v, 3));
    }
    integrally_closed.record(
        &mut report,
        "integrally-closed",
        "every hypervaluation ring is integrally closed",
    );

    let (mut equiv, mut radical, mut lying, mut three_way, mut cor_a, mut cor_b) =
        Default::default();
    for r_sub in rings.iter().filter(|r| r.level() > 0) {
        let mut tested = window_cuts(r_sub.rank(), r_sub.level(), 1);
        tested.extend((0..cases).map(|_| random_cut(&mut rng, r_sub)));
        for (idx, ideal) in tested.iter().enumerate() {
            let window = idx < 8;
            nu_ideal_case(&mut equiv, r_sub, ideal, window)?;
            example43_case(&mut radical, r_sub, ideal, window)?;
            thm46_case(&mut three_way, r_sub, ideal, window)?;
        }
        let meet = rings_over(r_sub)?
            .into_iter()
            .max_by_key(ValuationSubring::level)
            .expect("R itself");
        Tally::push(
            &mut cor_a,
            ensure(value_subring_integral_closure(r_sub) == meet, || {
                format!("closure of {r_sub} differs from ⋂V = {meet}")
            }),
        );
        for p in prime_cuts(r_sub) {
            let found = existence_witness(r_sub, &p)?;
            Tally::push(
                &mut cor_b,
                ensure(found.is_some(), || {
                    format!("no ring over {r_sub} lies over {p}")
                }),
            );
            if let Some(w) = found {
                Tally::push_opt(&mut cor_b, contraction_mismatch(&w, r_sub, &p, 6));
            }
            if p.is_proper() && p != CutIdeal::Zero {
                for a in values(r_sub.rank(), 3) {
                    Tally::push(
                        &mut lying,
                        ensure(lies_over_in_adjunction(r_sub, &p, &a)?, || {
                            format!("{p} blows up in both {r_sub}[{a}] and its inverse")
                        }),
                    );
                }
            }
        }
        report.extend(
            prop48_suite(field, r_sub, rng.gen(), cases)?.scoped(&format!("extension/{r_sub}")),
        );
        report.extend(theorem410_check(field, r_sub)?.scoped(&format!("delta/{r_sub}")));
    }
    Tally::record(
        equiv,
        &mut report,
        "nu-ideal",
        "x ∈ I, ν(y) ≥ ν(x) ⟹ y ∈ I exactly when I·V_ν ∩ R = I",
    );
    Tally::record(
        radical,
        &mut report,
        "radical",
        "the radical of a proper ν-ideal is a prime ν-ideal",
    );
    Tally::record(
        three_way,
        &mut report,
        "closure",
        "Ī = ⋂ I·V ∩ R = definitional closure",
    );
    Tally::record(
        cor_a,
        &mut report,
        "ring-closure",
        "the integral closure of R is the meet of the rings over it",
    );
    Tally::record(
        cor_b,
        &mut report,
        "lying-over",
        "every prime is the contraction of a maximal ideal",
    );
    Tally::record(
        lying,
        &mut report,
        "adjunction",
        "P·R[a] or P·R[a⁻¹] is proper",
    );
    Ok(report.scoped(&format!("rank{}", field.rank())))
}

fn nu_ideal_case(
    t: &mut Tally,
    r_sub: &ValuationSubring,
    ideal: &CutIdeal,
    window: bool,
) -> Result<()> {
    let field = r_sub.field();
    for j in 1..=r_sub.level() {
        let nu = ValueValuation::coarsening(&field, j)?;
        let verdict = is_nu_hyperideal(&nu, r_sub, ideal)?;
        let v_nu = nu.valuation_ring().expect("coarsening");
        let fixed = extend_contract(ideal, &v_nu, r_sub)? == *ideal;
        t.push(ensure(verdict.is_nu_ideal == fixed, || {
            format!(
                "{ideal} with {}: verdict {}, fixed {fixed}",
                nu.name(),
                verdict.is_nu_ideal
            )
        }));
        if let Some((x, y)) = &verdict.witness {
            t.push(ensure(
                ideal.contains(r_sub, x)
                    && r_sub.contains(y)
                    && !ideal.contains(r_sub, y)
                    && nu.apply(y) >= nu.apply(x),
                || format!("bad witness ({x}, {y}) for {ideal}"),
            ));
        }
        if window {
            let brute = nu_ideal_window_witness(&nu, r_sub, ideal, 4).is_none();
            t.push(ensure(brute == verdict.is_nu_ideal, || {
                format!("{ideal} with {}: window says {brute}", nu.name())
            }));
            t.push_opt(extend_contract_mismatch(
                ideal,
                &v_nu,
                r_sub,
                DEFAULT_WINDOW,
            ));
        }
    }
    Ok(())
}

fn example43_case(
    t: &mut Tally,
    r_sub: &ValuationSubring,
    ideal: &CutIdeal,
    window: bool,
) -> Result<()> {
    if !ideal.is_proper() {
        return Ok(());
    }
    let nu = ValueValuation::coarsening(&r_sub.field(), r_sub.level())?;
    if !is_nu_hyperideal(&nu, r_sub, ideal)?.is_nu_ideal {
        return Ok(());
    }
    let root = cut_radical(ideal);
    t.push(ensure(
        is_nu_hyperideal(&nu, r_sub, &root)?.is_nu_ideal && cut_is_prime(&root)?,
        || format!("√({ideal}) = {root}"),
    ));
    if window {
        t.push_opt(radical_mismatch(r_sub, ideal, DEFAULT_WINDOW));
    }
    Ok(())
}

fn thm46_case(
    t: &mut Tally,
    r_sub: &ValuationSubring,
    ideal: &CutIdeal,
    window: bool,
) -> Result<()> {
    match closure_via_valuations(ideal, r_sub) {
        Ok(c) => t.push(ensure(c == *ideal, || format!("closure of {ideal} is {c}"))),
        Err(e) => t.push(Err(e.to_string())),
    }
    if window {
        t.push_opt(definitional_closure_mismatch(r_sub, ideal, 3));
    }
    Ok(())
}
