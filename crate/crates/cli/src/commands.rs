//! One function per subcommand; each returns a report or an input error.

use krasner::closure::value::value_ideal_closure;
use krasner::closure::{ideal_closure, integral_dependence};
use krasner::ideals::{
    enumerate_hyperideals, hyperideal_violation, quotient_by_normal_ideal, radical, IdealHandle,
};
use krasner::kernel::{classify, verify_axioms, Axiom};
use krasner::report::{ensure, Report};
use krasner::valuation::{closure_via_valuations, definitional_closure_mismatch};
use krasner::valuefield::window::{checked_is_prime, checked_radical};
use krasner::valuefield::{CutIdeal, ValuationSubring, ValueHyperfield};
use krasner::{Error, FiniteHyperring};

use crate::fixture::{label_set, FixtureDocument};
use crate::suite::{run_criterion, SuiteConfig, CRITERIA};
use crate::CliError;

const AXIOMS: [Axiom; 11] = [
    Axiom::NonemptySums,
    Axiom::AddCommutative,
    Axiom::ZeroIsAdditiveIdentity,
    Axiom::UniqueInverse,
    Axiom::Reversibility,
    Axiom::AddAssociative,
    Axiom::MulAssociative,
    Axiom::MulCommutative,
    Axiom::OneIsIdentity,
    Axiom::ZeroAbsorbing,
    Axiom::Distributive,
];

/// Where an ideal lives: a fixture ring or a prefix ring of `T_{ℤᵏ}`.
#[derive(Debug, Clone)]
pub struct IdealTarget {
    pub fixture: Option<String>,
    pub ideal: String,
    pub value_rank: Option<usize>,
    pub ring: String,
}

fn load(fixture: &str) -> Result<(FixtureDocument, FiniteHyperring), CliError> {
    let doc = FixtureDocument::load(fixture)?;
    let ring = doc.to_ring()?;
    Ok((doc, ring))
}

fn load_verified(fixture: &str) -> Result<(FixtureDocument, FiniteHyperring), CliError> {
    let (doc, ring) = load(fixture)?;
    verify_axioms(&ring);
    ring.require_verified()?;
    Ok((doc, ring))
}

fn axiom_id(a: Axiom) -> String {
    serde_json::to_value(a)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_else(|| format!("{a:?}"))
}

pub fn verify(fixture: &str) -> Result<Report, CliError> {
    let (_, ring) = load(fixture)?;
    let v = verify_axioms(&ring);
    let mut report = Report::new();
    for a in AXIOMS {
        let outcome = match v.violations.iter().find(|x| x.axiom == a) {
            Some(x) => Err(x
                .witness
                .iter()
                .map(|&e| ring.label(e))
                .collect::<Vec<_>>()
                .join(", ")),
            None if v.skipped.contains(&a) => Err("not evaluated: a prerequisite failed".into()),
            None => Ok(()),
        };
        report.check(axiom_id(a), a.describe(), outcome);
    }
    Ok(report.scoped(ring.name()))
}

pub fn classify_cmd(fixture: &str) -> Result<Report, CliError> {
    let (doc, ring) = load(fixture)?;
    let v = verify_axioms(&ring);
    let mut report = Report::new();
    report.check(
        "verify",
        "tables satisfy the hyperring axioms",
        ensure(v.passed(), || v.display(&ring).to_string()),
    );
    if !v.passed() {
        return Ok(report.scoped(ring.name()));
    }
    let c = classify(&ring)?;
    let expected = doc.expected.unwrap_or_default();
    for (id, got, want) in [
        ("hyperfield", c.is_hyperfield, expected.hyperfield),
        ("hyperdomain", c.is_hyperdomain, expected.hyperdomain),
    ] {
        match want {
            Some(w) => report.check_with(
                id,
                format!("{id} flag as recorded"),
                ensure(got == w, || format!("computed {got}")),
                got.to_string(),
            ),
            None => report.info(id, format!("{id} flag"), got.to_string()),
        }
    }
    Ok(report.scoped(ring.name()))
}

pub fn ideals(fixture: &str) -> Result<Report, CliError> {
    let (doc, ring) = load_verified(fixture)?;
    let mut report = Report::new();
    for set in enumerate_hyperideals(&ring)? {
        let h = IdealHandle::new(&ring, set)?;
        let mut flags = Vec::new();
        if h.is_proper() {
            for (name, on) in [
                ("prime", h.is_prime()?),
                ("primary", h.is_primary()?),
                ("maximal", h.is_maximal()?),
            ] {
                if on {
                    flags.push(name);
                }
            }
        }
        if h.is_normal() {
            flags.push("normal");
        }
        report.info(ring.show_set(&set), "hyperideal", flags.join(", "));
    }
    for claim in doc.expected.iter().flat_map(|e| &e.source_claim_divergent) {
        let set = label_set(&ring, &claim.set)?;
        let why = hyperideal_violation(&ring, &set);
        report.check_with(
            format!("divergent/{}", ring.show_set(&set)),
            format!(
                "{} is recorded as a hyperideal in the source but is not one",
                ring.show_set(&set)
            ),
            ensure(
                why.is_none() == claim.hyperideal
                    && claim.hyperideal != claim.source_says_hyperideal,
                || "the checker now agrees with the source".into(),
            ),
            why.unwrap_or_else(|| "no violation".into()),
        );
    }
    Ok(report.scoped(ring.name()))
}

fn finite_ideal<'r>(ring: &'r FiniteHyperring, spec: &str) -> Result<IdealHandle<'r>, CliError> {
    let set = ring.parse_set(spec)?;
    IdealHandle::new(ring, set).map_err(|e| match e {
        Error::NotAnIdeal(_) | Error::EmptySet => CliError::Input(format!(
            "{} is not a hyperideal: {}",
            ring.show_set(&set),
            hyperideal_violation(ring, &set).unwrap_or_else(|| e.to_string())
        )),
        other => other.into(),
    })
}

fn value_target(t: &IdealTarget, k: usize) -> Result<(ValuationSubring, CutIdeal), CliError> {
    let field = ValueHyperfield::new(k)?;
    let ring = ValuationSubring::parse(&field, &t.ring)?;
    let ideal = CutIdeal::parse(&field, &t.ideal)?;
    ideal.check_in(&ring)?;
    Ok((ring, ideal))
}

fn fixture_of(t: &IdealTarget) -> Result<&str, CliError> {
    t.fixture
        .as_deref()
        .ok_or_else(|| CliError::Input("a fixture is required unless --value-rank is given".into()))
}

pub fn closure(
    t: &IdealTarget,
    max_degree: Option<usize>,
    window: i64,
) -> Result<Report, CliError> {
    let mut report = Report::new();
    if let Some(k) = t.value_rank {
        let (ring, ideal) = value_target(t, k)?;
        let closure = value_ideal_closure(&ring, &ideal)?;
        let via = closure_via_valuations(&ideal, &ring);
        let definitional = definitional_closure_mismatch(&ring, &ideal, window.clamp(1, 3));
        let outcome = match (&via, definitional) {
            (Err(e), _) => Err(e.to_string()),
            (_, Some(m)) => Err(m),
            (Ok(v), None) => ensure(*v == closure, || format!("valuations give {v}")),
        };
        let closed = if closure == ideal {
            "Ī = I"
        } else {
            "Ī ≠ I"
        };
        report.check_with(
            "closure",
            format!("closure of {ideal} in {ring}"),
            outcome,
            format!("{closed}; agrees with valuation intersection"),
        );
        return Ok(report.scoped(&format!("T{k}")));
    }
    let (_, ring) = load_verified(fixture_of(t)?)?;
    let ideal = finite_ideal(&ring, &t.ideal)?;
    let result = ideal_closure(&ideal)?;
    let verdict = if result.is_closed {
        "integrally closed"
    } else {
        "not integrally closed"
    };
    report.check_with(
        "closure",
        format!("closure of {}", ring.show_set(ideal.set())),
        Ok(()),
        format!(
            "{} = {}; {verdict}",
            ring.show_set(ideal.set()),
            ring.show_set(&result.closure)
        ),
    );
    for r in result.closure.iter().filter(|&r| r != ring.zero()) {
        let witness = match max_degree {
            Some(d) => integral_dependence(&ideal, r, Some(d))?,
            None => result
                .witnesses
                .get(&r)
                .cloned()
                .or(integral_dependence(&ideal, r, None)?),
        };
        match witness {
            Some(w) => report.info(
                format!("witness/{}", ring.label(r)),
                "dependence",
                w.display(&ring).to_string(),
            ),
            None => report.info(
                format!("witness/{}", ring.label(r)),
                "dependence",
                "none within the degree bound",
            ),
        }
    }
    Ok(report.scoped(ring.name()))
}

pub fn radical_cmd(t: &IdealTarget) -> Result<Report, CliError> {
    let mut report = Report::new();
    if let Some(k) = t.value_rank {
        let (ring, ideal) = value_target(t, k)?;
        let root = checked_radical(&ring, &ideal);
        let outcome = root.as_ref().map(|_| ()).map_err(ToString::to_string);
        let detail = root.as_ref().map(ToString::to_string).unwrap_or_default();
        report.check_with(
            "radical",
            format!("√({ideal}) in {ring}, confirmed on the window"),
            outcome,
            detail,
        );
        if let Ok(root) = root {
            if root.is_proper() {
                let prime = checked_is_prime(&ring, &root);
                report.check_with(
                    "prime",
                    "the radical is prime",
                    prime.as_ref().map(|_| ()).map_err(ToString::to_string),
                    format!("{:?}", prime.ok()),
                );
            }
        }
        return Ok(report.scoped(&format!("T{k}")));
    }
    let (_, ring) = load_verified(fixture_of(t)?)?;
    let ideal = finite_ideal(&ring, &t.ideal)?;
    let root = radical(&ideal);
    report.info(
        "radical",
        format!("√{}", ring.show_set(ideal.set())),
        ring.show_set(&root),
    );
    Ok(report.scoped(ring.name()))
}

pub fn quotient(fixture: &str, spec: &str) -> Result<Report, CliError> {
    let (_, ring) = load_verified(fixture)?;
    let ideal = finite_ideal(&ring, spec)?;
    let mut report = Report::new();
    match quotient_by_normal_ideal(&ideal) {
        Ok(q) => {
            let v = verify_axioms(&q.ring);
            report.check_with(
                "quotient",
                "the quotient satisfies the axioms",
                ensure(v.passed(), || v.display(&q.ring).to_string()),
                q.ring.name(),
            );
            for (x, &c) in q.projection.iter().enumerate() {
                report.info(
                    format!("coset/{}", ring.label(x)),
                    "projection",
                    q.ring.label(c),
                );
            }
            let doc = FixtureDocument::from_ring(&q.ring);
            report.info(
                "tables",
                "quotient tables",
                serde_json::to_string(&doc).expect("serializes"),
            );
        }
        Err(e @ (Error::NotNormal(_) | Error::QuotientNotWellDefined(_))) => {
            report.check(
                "quotient",
                "the ideal admits a quotient",
                Err(e.to_string()),
            );
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report.scoped(ring.name()))
}

/// Runs the selected criteria, or all of them.
pub fn suite(only: &[String], cfg: &SuiteConfig) -> Result<Report, CliError> {
    let ids: Vec<String> = if only.is_empty() {
        CRITERIA.iter().map(|(id, _)| id.to_string()).collect()
    } else {
        only.to_vec()
    };
    let mut report = Report::new();
    for id in &ids {
        report.extend(run_criterion(id, cfg)?);
    }
    Ok(report)
}
