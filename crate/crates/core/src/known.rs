//! Small hyperrings used throughout the tests and as bundled fixtures.

use crate::kernel::{verify_axioms, FiniteHyperring};
use crate::set::ElementSet;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `{0, a, b, c}` with unit `a`; `a + a = b + b = {0, b}`, `a + b = {a, c}`.
pub fn four_element() -> FiniteHyperring {
    let add = vec![
        vec![vec![0], vec![1], vec![2], vec![3]],
        vec![vec![1], vec![0, 2], vec![1, 3], vec![2]],
        vec![vec![2], vec![1, 3], vec![0, 2], vec![1]],
        vec![vec![3], vec![2], vec![1], vec![0]],
    ];
    let mul = vec![
        vec![0, 0, 0, 0],
        vec![0, 1, 2, 3],
        vec![0, 2, 2, 0],
        vec![0, 3, 0, 3],
    ];
    FiniteHyperring::new(
        "four_element",
        labels(&["0", "a", "b", "c"]),
        0,
        1,
        add,
        mul,
    )
    .expect("well-formed tables")
}

/// The Krasner hyperfield `{0, 1}` with `1 + 1 = {0, 1}`.
pub fn krasner_k2() -> FiniteHyperring {
    let add = vec![vec![vec![0], vec![1]], vec![vec![1], vec![0, 1]]];
    let mul = vec![vec![0, 0], vec![0, 1]];
    FiniteHyperring::new("krasner_k2", labels(&["0", "1"]), 0, 1, add, mul)
        .expect("well-formed tables")
}

/// The sign hyperfield `{0, 1, -1}` with `1 + (-1) = {0, 1, -1}`.
pub fn sign_hyperfield() -> FiniteHyperring {
    let add = vec![
        vec![vec![0], vec![1], vec![2]],
        vec![vec![1], vec![1], vec![0, 1, 2]],
        vec![vec![2], vec![0, 1, 2], vec![2]],
    ];
    let mul = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]];
    FiniteHyperring::new("sign_hyperfield", labels(&["0", "1", "-1"]), 0, 1, add, mul)
        .expect("well-formed tables")
}

/// `ℤ/nℤ` with singleton addition cells.
pub fn integers_mod(n: usize) -> FiniteHyperring {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    FiniteHyperring::from_fns(
        format!("z{n}"),
        names,
        0,
        1 % n,
        |x, y| ElementSet::singleton(n, (x + y) % n),
        |x, y| (x * y) % n,
    )
    .expect("well-formed tables")
}

/// Runs the verifier and returns the ring; panics if any axiom fails.
pub fn verified(ring: FiniteHyperring) -> FiniteHyperring {
    let report = verify_axioms(&ring);
    assert!(report.passed(), "{}", report.display(&ring));
    ring
}

pub fn all_verified() -> Vec<FiniteHyperring> {
    vec![
        verified(four_element()),
        verified(krasner_k2()),
        verified(sign_hyperfield()),
        verified(integers_mod(4)),
    ]
}
