use std::fmt;

use serde::Serialize;

use super::{Elem, FiniteHyperring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    NonemptySums,
    AddCommutative,
    ZeroIsAdditiveIdentity,
    UniqueInverse,
    Reversibility,
    AddAssociative,
    MulAssociative,
    MulCommutative,
    OneIsIdentity,
    ZeroAbsorbing,
    Distributive,
}

impl Axiom {
    pub fn describe(self) -> &'static str {
        match self {
            Axiom::NonemptySums => "every x + y is nonempty",
            Axiom::AddCommutative => "x + y = y + x",
            Axiom::ZeroIsAdditiveIdentity => "0 + x = {x}",
            Axiom::UniqueInverse => "exactly one x' with 0 ∈ x + x'",
            Axiom::Reversibility => "z ∈ x + y implies y ∈ -x + z and x ∈ z - y",
            Axiom::AddAssociative => "(x + y) + z = x + (y + z)",
            Axiom::MulAssociative => "(xy)z = x(yz)",
            Axiom::MulCommutative => "xy = yx",
            Axiom::OneIsIdentity => "1·x = x",
            Axiom::ZeroAbsorbing => "0·x = 0",
            Axiom::Distributive => "x(y + z) = xy + xz",
        }
    }
}

/// One failed axiom instance; `witness` is the offending tuple in carrier order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
    /// Axioms that could not be evaluated because a prerequisite failed.
    pub skipped: Vec<Axiom>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.skipped.is_empty()
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        let mut out: Vec<Axiom> = self.violations.iter().map(|v| v.axiom).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn display<'a>(&'a self, ring: &'a FiniteHyperring) -> impl fmt::Display + 'a {
        DisplayReport { report: self, ring }
    }
}

struct DisplayReport<'a> {
    report: &'a VerificationReport,
    ring: &'a FiniteHyperring,
}

impl fmt::Display for DisplayReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.report.passed() {
            return write!(f, "{}: all axioms hold", self.ring.name());
        }
        writeln!(
            f,
            "{}: {} violation(s)",
            self.ring.name(),
            self.report.violations.len()
        )?;
        for v in &self.report.violations {
            let w: Vec<&str> = v.witness.iter().map(|&x| self.ring.label(x)).collect();
            writeln!(
                f,
                "  {:?} ({}) at ({})",
                v.axiom,
                v.axiom.describe(),
                w.join(", ")
            )?;
        }
        for a in &self.report.skipped {
            writeln!(f, "  {:?} not checked", a)?;
        }
        Ok(())
    }
}

/// Exhaustively checks every Krasner hyperring axiom and caches the outcome
/// on `ring`. The check is cubic in the carrier size for associativity and
/// distributivity.
pub fn verify_axioms(ring: &FiniteHyperring) -> &VerificationReport {
    if let Some(r) = ring.verification() {
        return r;
    }
    ring.record_verification(check(ring))
}

fn check(ring: &FiniteHyperring) -> VerificationReport {
    let n = ring.size();
    let zero = ring.zero();
    let one = ring.one();
    let mut report = VerificationReport::default();
    let mut fail = |axiom, witness: &[Elem]| {
        report.violations.push(Violation {
            axiom,
            witness: witness.to_vec(),
        })
    };

    for x in 0..n {
        for y in 0..n {
            if ring.add(x, y).is_empty() {
                fail(Axiom::NonemptySums, &[x, y]);
            }
            if ring.add(x, y) != ring.add(y, x) && x < y {
                fail(Axiom::AddCommutative, &[x, y]);
            }
        }
        if ring.add(zero, x) != ring.set_of([x]) {
            fail(Axiom::ZeroIsAdditiveIdentity, &[x]);
        }
        if ring.try_neg(x).is_none() {
            fail(Axiom::UniqueInverse, &[x]);
        }
    }
    let inverses_ok = (0..n).all(|x| ring.try_neg(x).is_some());

    if inverses_ok {
        for x in 0..n {
            for y in 0..n {
                for z in &ring.add(x, y) {
                    let back = ring.add(ring.neg(x), z).contains(y)
                        && ring.add(z, ring.neg(y)).contains(x);
                    if !back {
                        fail(Axiom::Reversibility, &[x, y, z]);
                    }
                }
            }
        }
    }

    for x in 0..n {
        for y in 0..n {
            let xy = ring.add(x, y);
            for z in 0..n {
                let left = ring.add_sets(&xy, &ring.set_of([z]));
                let right = ring.add_sets(&ring.set_of([x]), &ring.add(y, z));
                if left != right {
                    fail(Axiom::AddAssociative, &[x, y, z]);
                }
            }
        }
    }

    for x in 0..n {
        if ring.mul(one, x) != x {
            fail(Axiom::OneIsIdentity, &[x]);
        }
        if ring.mul(zero, x) != zero || ring.mul(x, zero) != zero {
            fail(Axiom::ZeroAbsorbing, &[x]);
        }
        for y in 0..n {
            if x < y && ring.mul(x, y) != ring.mul(y, x) {
                fail(Axiom::MulCommutative, &[x, y]);
            }
            for z in 0..n {
                if ring.mul(ring.mul(x, y), z) != ring.mul(x, ring.mul(y, z)) {
                    fail(Axiom::MulAssociative, &[x, y, z]);
                }
                let left = ring.scale_set(x, &ring.add(y, z));
                let right = ring.add(ring.mul(x, y), ring.mul(x, z));
                if left != right {
                    fail(Axiom::Distributive, &[x, y, z]);
                }
            }
        }
    }

    if !inverses_ok {
        report.skipped.push(Axiom::Reversibility);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;
    use crate::set::ElementSet;

    #[test]
    fn fixtures_pass() {
        for r in [
            known::four_element(),
            known::sign_hyperfield(),
            known::krasner_k2(),
            known::integers_mod(4),
        ] {
            let report = verify_axioms(&r);
            assert!(report.passed(), "{}", report.display(&r));
            assert!(r.require_verified().is_ok());
        }
    }

    #[test]
    fn classical_rings_embed_with_singleton_sums() {
        for n in 1..=8 {
            let r = known::integers_mod(n);
            assert!(verify_axioms(&r).passed(), "Z/{n}");
        }
    }

    #[test]
    fn mutated_cell_is_rejected() {
        // a + b replaced by {a}, symmetric in both cells
        let r = known::four_element();
        let (a, b) = (1, 2);
        let mutated = FiniteHyperring::from_fns(
            "mutated",
            r.labels().to_vec(),
            0,
            1,
            |x, y| {
                if (x, y) == (a, b) || (x, y) == (b, a) {
                    r.set_of([a])
                } else {
                    r.add(x, y)
                }
            },
            |x, y| r.mul(x, y),
        )
        .unwrap();
        let report = verify_axioms(&mutated);
        assert!(!report.passed());
        assert!(report.violates(Axiom::Reversibility));
        assert!(report.violates(Axiom::AddAssociative));
        assert!(mutated.require_verified().is_err());
    }

    #[test]
    fn missing_unit_is_reported() {
        // Z/2 with a multiplication that has no identity
        let mut r = known::integers_mod(2);
        r = FiniteHyperring::from_fns(
            "no unit",
            r.labels().to_vec(),
            0,
            1,
            |x, y| r.add(x, y),
            |_, _| 0,
        )
        .unwrap();
        let report = verify_axioms(&r);
        assert!(report.violates(Axiom::OneIsIdentity));
    }

    #[test]
    fn duplicate_inverse_skips_reversibility() {
        // 0 ∈ 1 + 1 and 0 ∈ 1 + 2: inverse of 1 is not unique
        let r = FiniteHyperring::from_fns(
            "bad",
            vec!["0".into(), "1".into(), "2".into()],
            0,
            1,
            |x, y| {
                if x == 0 {
                    ElementSet::singleton(3, y)
                } else if y == 0 {
                    ElementSet::singleton(3, x)
                } else {
                    ElementSet::full(3)
                }
            },
            |x, y| if x == 0 || y == 0 { 0 } else { (x * y) % 3 },
        )
        .unwrap();
        let report = verify_axioms(&r);
        assert!(report.violates(Axiom::UniqueInverse));
        assert_eq!(report.skipped, vec![Axiom::Reversibility]);
    }
}
