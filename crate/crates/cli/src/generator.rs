//! Seeded generation of small Krasner hyperrings.
//!
//! The multiplicative monoid is drawn first, together with a unit `e` with
//! `e² = 1` that plays `−1`, so `−x = x·e`. A commutative, reversible
//! hyperaddition with that negation is the same thing as a symmetric set of
//! triples: `z ∈ x + y` exactly when `0 ∈ x + y + (−z)`, and the latter is
//! invariant under permuting `(x, y, −z)`. The search decides one bit per
//! multiset `{x, y, w}` of nonzero elements, pruning with three-valued
//! associativity and distributivity tests. Every result is re-checked with
//! the full axiom verifier.

use krasner::kernel::verify_axioms;
use krasner::FiniteHyperring;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 5;
pub const DEFAULT_BUDGET: usize = 200_000;

/// Nodes spent on one monoid before drawing another.
const ATTEMPT_BUDGET: usize = 5_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("no order-{order} hyperring found within {nodes} search nodes")]
    Timeout { order: usize, nodes: usize },
    #[error("generated tables failed verification: {0}")]
    Unsound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bit {
    Unknown,
    In,
    Out,
}

const LABELS: [&str; MAX_ORDER] = ["0", "1", "a", "b", "c"];

struct Search<'a> {
    n: usize,
    mul: Vec<Vec<usize>>,
    neg: Vec<usize>,
    /// Multisets `{x ≤ y ≤ w}` of nonzero elements, in decision order.
    orbits: Vec<[usize; 3]>,
    bits: Vec<Bit>,
    slot: Vec<usize>,
    nodes: usize,
    budget: usize,
    rng: &'a mut ChaCha8Rng,
}

impl<'a> Search<'a> {
    /// Multisets are decided smallest largest-element first, so that
    /// the tests among small elements prune early.
    fn new(mul: Vec<Vec<usize>>, neg: Vec<usize>, budget: usize, rng: &'a mut ChaCha8Rng) -> Self {
        let n = mul.len();
        let mut orbits = Vec::new();
        for w in 1..n {
            let mut layer = Vec::new();
            for x in 1..=w {
                for y in x..=w {
                    layer.push([x, y, w]);
                }
            }
            layer.shuffle(rng);
            orbits.extend(layer);
        }
        let mut slot = vec![usize::MAX; n * n * n];
        for (i, o) in orbits.iter().enumerate() {
            slot[(o[0] * n + o[1]) * n + o[2]] = i;
        }
        let bits = vec![Bit::Unknown; orbits.len()];
        Search {
            n,
            mul,
            neg,
            orbits,
            bits,
            slot,
            nodes: 0,
            budget,
            rng,
        }
    }

    fn slot_of(&self, mut t: [usize; 3]) -> usize {
        t.sort_unstable();
        let n = self.n;
        self.slot[(t[0] * n + t[1]) * n + t[2]]
    }

    /// Is `z ∈ x + y`?
    fn mem(&self, x: usize, y: usize, z: usize) -> Bit {
        let yes = |c: bool| if c { Bit::In } else { Bit::Out };
        match (x, y, z) {
            (0, _, _) => yes(z == y),
            (_, 0, _) => yes(z == x),
            (_, _, 0) => yes(y == self.neg[x]),
            _ => self.bits[self.slot_of([x, y, self.neg[z]])],
        }
    }

    /// `false` if some completion is already impossible.
    fn consistent(&self) -> bool {
        let n = self.n;
        for x in 1..n {
            for y in 1..n {
                if (0..n).all(|z| self.mem(x, y, z) == Bit::Out) {
                    return false;
                }
            }
        }
        // x·(y + z) = xy + xz
        for x in 2..n {
            for y in 1..n {
                for z in y..n {
                    let (xy, xz) = (self.mul[x][y], self.mul[x][z]);
                    for w in 0..n {
                        if self.mem(y, z, w) == Bit::In
                            && self.mem(xy, xz, self.mul[x][w]) == Bit::Out
                        {
                            return false;
                        }
                    }
                    for u in 0..n {
                        if self.mem(xy, xz, u) == Bit::In
                            && !(0..n).any(|w| self.mul[x][w] == u && self.mem(y, z, w) != Bit::Out)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        for x in 1..n {
            for y in 1..n {
                for z in 1..n {
                    for w in 0..n {
                        let (mut lo_l, mut hi_l, mut lo_r, mut hi_r) = (false, false, false, false);
                        for u in 0..n {
                            let (a, b) = (self.mem(x, y, u), self.mem(u, z, w));
                            lo_l |= a == Bit::In && b == Bit::In;
                            hi_l |= a != Bit::Out && b != Bit::Out;
                            let (c, d) = (self.mem(y, z, u), self.mem(x, u, w));
                            lo_r |= c == Bit::In && d == Bit::In;
                            hi_r |= c != Bit::Out && d != Bit::Out;
                        }
                        if (lo_l && !hi_r) || (lo_r && !hi_l) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn add_cell(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| self.mem(x, y, z) == Bit::In)
            .collect()
    }

    /// `None` when the budget ran out, `Some(false)` when exhausted.
    fn addition(&mut self, k: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if !self.consistent() {
            return Some(false);
        }
        if k == self.orbits.len() {
            return Some(true);
        }
        let mut order = [Bit::In, Bit::Out];
        order.shuffle(self.rng);
        for b in order {
            self.bits[k] = b;
            match self.addition(k + 1) {
                Some(false) => {}
                done => return done,
            }
        }
        self.bits[k] = Bit::Unknown;
        Some(false)
    }
}

/// A random commutative monoid on `0..n` with absorbing 0 and identity 1.
/// One always exists (all products of non-units zero), so this terminates.
fn random_monoid(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<usize>> {
    let mut mul = vec![vec![None; n]; n];
    for (x, row) in mul.iter_mut().enumerate() {
        row[0] = Some(0);
        row[1] = Some(x);
    }
    mul[0] = vec![Some(0); n];
    mul[1] = (0..n).map(Some).collect();
    let free: Vec<(usize, usize)> = (2..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
    assert!(
        fill(rng, &free, &mut mul),
        "the zero-product monoid always completes"
    );
    mul.into_iter()
        .map(|row| row.into_iter().map(|v| v.expect("filled")).collect())
        .collect()
}

fn fill(rng: &mut ChaCha8Rng, free: &[(usize, usize)], mul: &mut [Vec<Option<usize>>]) -> bool {
    if !associative_so_far(mul) {
        return false;
    }
    let Some((&(x, y), rest)) = free.split_first() else {
        return true;
    };
    let mut values: Vec<usize> = (0..mul.len()).collect();
    values.shuffle(rng);
    for v in values {
        mul[x][y] = Some(v);
        mul[y][x] = Some(v);
        if fill(rng, rest, mul) {
            return true;
        }
    }
    mul[x][y] = None;
    mul[y][x] = None;
    false
}

fn associative_so_far(mul: &[Vec<Option<usize>>]) -> bool {
    let n = mul.len();
    for x in 0..n {
        for y in 0..n {
            let Some(xy) = mul[x][y] else { continue };
            for z in 0..n {
                if let (Some(yz), Some(l)) = (mul[y][z], mul[xy][z]) {
                    if mul[x][yz].is_some_and(|r| r != l) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// One random hyperring of order `n` (`2 ≤ n ≤ 5`).
pub fn random_hyperring_of_order(
    rng: &mut ChaCha8Rng,
    n: usize,
    name: &str,
    budget: usize,
) -> Result<FiniteHyperring, GeneratorError> {
    assert!(
        (MIN_ORDER..=MAX_ORDER).contains(&n),
        "order {n} outside {MIN_ORDER}..={MAX_ORDER}"
    );
    let mut nodes = 0;
    while nodes < budget {
        let mul = random_monoid(rng, n);
        let roots: Vec<usize> = (1..n).filter(|&e| mul[e][e] == 1).collect();
        let e = *roots.choose(rng).expect("1 squares to 1");
        let neg: Vec<usize> = (0..n).map(|x| mul[x][e]).collect();
        let attempt = ATTEMPT_BUDGET.min(budget - nodes);
        let mut search = Search::new(mul, neg, attempt, rng);
        let found = search.addition(0);
        nodes += search.nodes.min(attempt);
        if found == Some(true) {
            let add = (0..n)
                .map(|x| (0..n).map(|y| search.add_cell(x, y)).collect())
                .collect();
            return finish(name, n, add, search.mul);
        }
        // this monoid and negation admit no addition quickly: draw again
    }
    Err(GeneratorError::Timeout { order: n, nodes })
}

fn finish(
    name: &str,
    n: usize,
    add: Vec<Vec<Vec<usize>>>,
    mul: Vec<Vec<usize>>,
) -> Result<FiniteHyperring, GeneratorError> {
    let labels = LABELS[..n].iter().map(|s| s.to_string()).collect();
    let ring = FiniteHyperring::new(name, labels, 0, 1, add, mul)
        .map_err(|e| GeneratorError::Unsound(e.to_string()))?;
    let report = verify_axioms(&ring);
    if !report.passed() {
        return Err(GeneratorError::Unsound(report.display(&ring).to_string()));
    }
    Ok(ring)
}

/// `count` structures with orders drawn from `2..=5`, all from one seed.
pub fn random_hyperrings(
    seed: u64,
    count: usize,
    budget: usize,
) -> Vec<Result<FiniteHyperring, GeneratorError>> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(MIN_ORDER..=MAX_ORDER);
            random_hyperring_of_order(&mut rng, n, &format!("random_{seed}_{i}"), budget)
        })
        .collect()
}
