//! The acceptance battery: eight criteria, each producing a report.

use krasner::closure::{
    difference_condition_set, ideal_closure, is_integral_over_ideal, is_integral_power_criterion,
    remark_property_suite,
};
use krasner::ideals::{enumerate_hyperideals, hyperideal_violation, is_hyperideal, IdealHandle};
use krasner::kernel::{classify, hyper_sum_fold, verify_axioms};
use krasner::poly::{all_polynomials, evaluation_compatibility, poly_add};
use krasner::report::{ensure, Report};
use krasner::valuation::valuation_battery;
use krasner::valuefield::window::{cross_check, random_cut};
use krasner::valuefield::{ValuationSubring, ValueHyperfield};
use krasner::FiniteHyperring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixture::{label_set, FixtureDocument};
use crate::generator::{random_hyperrings, DEFAULT_BUDGET};
use crate::CliError;

/// `(id, statement)` for every criterion, in order.
pub const CRITERIA: [(&str, &str); 8] = [
    (
        "golden",
        "worked example: tables verify, closures and the dependence expression match",
    ),
    (
        "divergence",
        "{0,b,c} is not a hyperideal although the source tables call it one",
    ),
    (
        "oracle",
        "dependence search and the ideal-power criterion agree on every pair",
    ),
    (
        "remark",
        "closure properties hold on every enumerated hyperideal",
    ),
    (
        "corollary",
        "ideals whose difference set is {0} have hyperideal closures",
    ),
    ("value", "cut-ideal closed forms match the window oracle"),
    ("valuation", "valuation-theoretic battery on ranks 1 and 2"),
    (
        "poly",
        "polynomial operations are compatible with evaluation",
    ),
];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random structures added to the fixture list.
    pub random: usize,
    /// Fail the oracle criterion if fewer random structures come out.
    pub min_random: usize,
    pub window: i64,
    pub value_cases: usize,
    pub valuation_cases: usize,
    pub budget: usize,
    /// Restrict the finite criteria to these fixtures (names or paths).
    pub fixtures: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            random: 0,
            min_random: 0,
            window: krasner::valuefield::window::DEFAULT_WINDOW,
            value_cases: 240,
            valuation_cases: 16,
            budget: DEFAULT_BUDGET,
            fixtures: Vec::new(),
        }
    }
}

fn load_verified(doc: &FixtureDocument) -> Result<FiniteHyperring, CliError> {
    let ring = doc.to_ring()?;
    verify_axioms(&ring);
    ring.require_verified()?;
    Ok(ring)
}

/// Fixture rings followed by the random ones; timeouts become info lines.
fn rings(cfg: &SuiteConfig, report: &mut Report) -> Result<Vec<FiniteHyperring>, CliError> {
    let docs = if cfg.fixtures.is_empty() {
        FixtureDocument::bundled()
    } else {
        cfg.fixtures
            .iter()
            .map(|f| FixtureDocument::load(f))
            .collect::<Result<_, _>>()?
    };
    let mut out = docs
        .iter()
        .map(load_verified)
        .collect::<Result<Vec<_>, _>>()?;
    if cfg.random > 0 {
        let mut made = 0;
        for (i, r) in random_hyperrings(cfg.seed, cfg.random, cfg.budget)
            .into_iter()
            .enumerate()
        {
            match r {
                Ok(ring) => {
                    made += 1;
                    out.push(ring);
                }
                Err(e) => report.info(format!("random/{i}"), "generator gave up", e.to_string()),
            }
        }
        report.check_with(
            "random/count",
            format!("at least {} random structures generated", cfg.min_random),
            ensure(made >= cfg.min_random, || format!("only {made}")),
            format!("{made} of {} with seed {}", cfg.random, cfg.seed),
        );
    }
    Ok(out)
}

fn example() -> Result<(FixtureDocument, FiniteHyperring), CliError> {
    let doc = FixtureDocument::load("example_3_2")?;
    let ring = load_verified(&doc)?;
    Ok((doc, ring))
}

/// Golden assertions of one fixture document.
pub fn golden(doc: &FixtureDocument, ring: &FiniteHyperring) -> Result<Report, CliError> {
    let mut report = Report::new();
    let Some(exp) = &doc.expected else {
        return Ok(report);
    };
    let verification = verify_axioms(ring);
    if let Some(v) = exp.verify {
        report.check(
            "verify",
            "axioms verify as recorded",
            ensure(verification.passed() == v, || {
                verification.display(ring).to_string()
            }),
        );
    }
    if !verification.passed() {
        return Ok(report);
    }
    let class = classify(ring)?;
    if let Some(f) = exp.hyperfield {
        report.check(
            "hyperfield",
            "hyperfield flag as recorded",
            ensure(class.is_hyperfield == f, || {
                format!("computed {}", class.is_hyperfield)
            }),
        );
    }
    if let Some(d) = exp.hyperdomain {
        report.check(
            "hyperdomain",
            "hyperdomain flag as recorded",
            ensure(class.is_hyperdomain == d, || {
                format!("computed {}", class.is_hyperdomain)
            }),
        );
    }
    if let Some(ideals) = &exp.ideals {
        let want = ideals
            .iter()
            .map(|s| label_set(ring, s))
            .collect::<Result<Vec<_>, _>>()?;
        let got = enumerate_hyperideals(ring)?;
        report.check(
            "ideals",
            "hyperideals as recorded",
            ensure(got == want, || {
                got.iter()
                    .map(|s| ring.show_set(s))
                    .collect::<Vec<_>>()
                    .join("; ")
            }),
        );
    }
    for c in &exp.closures {
        let ideal = IdealHandle::new(ring, label_set(ring, &c.ideal)?)?;
        let want = label_set(ring, &c.closure)?;
        let got = ideal_closure(&ideal)?.closure;
        report.check(
            format!("closure/{}", c.name),
            format!(
                "closure of {} is {}",
                ring.show_set(ideal.set()),
                ring.show_set(&want)
            ),
            ensure(got == want, || format!("computed {}", ring.show_set(&got))),
        );
    }
    for e in &exp.expressions {
        let r = ring.index_of(&e.element)?;
        let n = e.coefficients.len();
        let mut terms = vec![ring.pow(r, n)];
        for (i, a) in e.coefficients.iter().enumerate() {
            terms.push(ring.mul(ring.index_of(a)?, ring.pow(r, n - 1 - i)));
        }
        let got = hyper_sum_fold(ring, &terms)?;
        let want = label_set(ring, &e.value)?;
        report.check(
            format!("expression/{}", e.element),
            format!(
                "the degree-{n} expression at {} folds to {}",
                e.element,
                ring.show_set(&want)
            ),
            ensure(got == want, || format!("computed {}", ring.show_set(&got))),
        );
    }
    Ok(report.scoped(&doc.name))
}

fn golden_criterion() -> Result<Report, CliError> {
    let (doc, ring) = example()?;
    let mut report = golden(&doc, &ring)?;
    // literal values, independent of the fixture's golden block
    let s = |spec: &str| ring.parse_set(spec);
    for (name, ideal, closure) in [("A", "0", "0"), ("B", "0,b", "0,b"), ("I", "0,c", "0,c")] {
        let got = ideal_closure(&IdealHandle::new(&ring, s(ideal)?)?)?.closure;
        report.check(
            format!("literal/{name}"),
            format!("closure of {{{ideal}}} is {{{closure}}}"),
            ensure(got == s(closure)?, || {
                format!("computed {}", ring.show_set(&got))
            }),
        );
    }
    let (a, b, c) = (
        ring.index_of("a")?,
        ring.index_of("b")?,
        ring.index_of("c")?,
    );
    let value = hyper_sum_fold(&ring, &[ring.pow(a, 2), ring.mul(b, a), c])?;
    report.check(
        "literal/expression",
        "a² + b·a + c = {0,b}, which contains 0",
        ensure(value == s("0,b")? && value.contains(ring.zero()), || {
            ring.show_set(&value)
        }),
    );
    Ok(report)
}

fn divergence_criterion() -> Result<Report, CliError> {
    let (doc, ring) = example()?;
    let mut report = Report::new();
    let claims = doc
        .expected
        .as_ref()
        .map(|e| e.source_claim_divergent.clone())
        .unwrap_or_default();
    report.check(
        "recorded",
        "the fixture records the divergent claim",
        ensure(!claims.is_empty(), || {
            "no source_claim_divergent entry".into()
        }),
    );
    for claim in claims {
        let set = label_set(&ring, &claim.set)?;
        let computed = is_hyperideal(&ring, &set)?;
        let (l, r) = (
            ring.index_of(&claim.witness.left)?,
            ring.index_of(&claim.witness.right)?,
        );
        let sum = ring.add(l, r);
        report.check_with(
            format!("claim/{}", ring.show_set(&set)),
            format!("{} is not a hyperideal", ring.show_set(&set)),
            ensure(
                !computed
                    && computed == claim.hyperideal
                    && computed != claim.source_says_hyperideal,
                || format!("checker now says hyperideal = {computed}"),
            ),
            hyperideal_violation(&ring, &set).unwrap_or_else(|| "no violation".into()),
        );
        report.check(
            format!("witness/{}", ring.show_set(&set)),
            format!(
                "{} + {} = {} leaves the set",
                claim.witness.left,
                claim.witness.right,
                ring.show_set(&sum)
            ),
            ensure(
                set.contains(l)
                    && set.contains(r)
                    && sum == label_set(&ring, &claim.witness.sum)?
                    && !sum.is_subset(&set),
                || format!("computed {}", ring.show_set(&sum)),
            ),
        );
    }
    let j = ring.parse_set("0,b,c")?;
    let bc = ring.add(ring.index_of("b")?, ring.index_of("c")?);
    report.check(
        "literal",
        "b + c = {a}, so {0,b,c} is not a hyperideal",
        ensure(
            !is_hyperideal(&ring, &j)? && bc == ring.parse_set("a")?,
            || ring.show_set(&bc),
        ),
    );
    Ok(report)
}

fn oracle_criterion(cfg: &SuiteConfig) -> Result<Report, CliError> {
    let mut report = Report::new();
    for ring in rings(cfg, &mut report)? {
        let mut pairs = 0;
        let mut first = None;
        for set in enumerate_hyperideals(&ring)? {
            let ideal = IdealHandle::new(&ring, set)?;
            for r in ring.elements() {
                pairs += 1;
                let by_dependence = is_integral_over_ideal(&ideal, r, None)?;
                let by_powers = is_integral_power_criterion(&ideal, r)?;
                if by_dependence != by_powers && first.is_none() {
                    first = Some(format!(
                        "{} over {}: dependence {by_dependence}, powers {by_powers}",
                        ring.label(r),
                        ring.show_set(&set)
                    ));
                }
            }
        }
        report.check_with(
            ring.name(),
            "dependence search and power criterion agree",
            first.map_or(Ok(()), Err),
            format!("{pairs} pairs"),
        );
    }
    Ok(report)
}

fn remark_criterion(cfg: &SuiteConfig) -> Result<Report, CliError> {
    let mut report = Report::new();
    for ring in rings(cfg, &mut report)? {
        report.extend(remark_property_suite(&ring, &[])?);
    }
    Ok(report)
}

fn corollary_criterion(cfg: &SuiteConfig) -> Result<Report, CliError> {
    let mut report = Report::new();
    let mut total = 0;
    for ring in rings(cfg, &mut report)? {
        for set in enumerate_hyperideals(&ring)? {
            let ideal = IdealHandle::new(&ring, set)?;
            if difference_condition_set(&ideal) != ring.zero_set() {
                continue;
            }
            total += 1;
            let closure = ideal_closure(&ideal)?.closure;
            report.check(
                format!("{}/{}", ring.name(), ring.show_set(&set)),
                "difference set {0}, so the closure is a hyperideal",
                ensure(is_hyperideal(&ring, &closure)?, || {
                    format!(
                        "closure {}: {}",
                        ring.show_set(&closure),
                        hyperideal_violation(&ring, &closure).unwrap_or_default()
                    )
                }),
            );
        }
    }
    report.check(
        "cases",
        "at least one ideal meets the hypothesis",
        ensure(total > 0, || "none".into()),
    );
    Ok(report)
}

fn value_criterion(cfg: &SuiteConfig) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let f1 = ValueHyperfield::new(1)?;
    let f2 = ValueHyperfield::new(2)?;
    let rings = [
        ValuationSubring::valuation_ring(&f1),
        ValuationSubring::valuation_ring(&f2),
        ValuationSubring::new(&f2, 1)?,
    ];
    let mut report = Report::new();
    for (k, ring) in rings.iter().enumerate() {
        let mut cases = 0;
        let mut first = None;
        for _ in (k..cfg.value_cases).step_by(rings.len()) {
            let (a, b) = (random_cut(&mut rng, ring), random_cut(&mut rng, ring));
            let n = rng.gen_range(1..=4);
            cases += 1;
            if let Some(m) = cross_check(ring, &a, &b, n, cfg.window).into_iter().next() {
                first.get_or_insert(format!("a = {a}, b = {b}, n = {n}: {m}"));
            }
        }
        report.check_with(
            format!("rank{}/{}", ring.rank(), ring),
            "sum, product, power, radical, prime and primary match the window",
            first.map_or(Ok(()), Err),
            format!("{cases} cases, window {}", cfg.window),
        );
    }
    Ok(report)
}

fn valuation_criterion(cfg: &SuiteConfig) -> Result<Report, CliError> {
    let mut report = Report::new();
    for k in 1..=2 {
        report.extend(valuation_battery(
            &ValueHyperfield::new(k)?,
            cfg.seed,
            cfg.valuation_cases,
        )?);
    }
    Ok(report)
}

fn poly_criterion() -> Result<Report, CliError> {
    let (_, ring) = example()?;
    let mut report = Report::new();
    report.check(
        "evaluation",
        "h(t) ⊆ f(t) + g(t) for h ∈ f + g, and h(t) ⊆ Σ aᵢbⱼtⁱ⁺ʲ for h ∈ f·g, degree ≤ 2",
        evaluation_compatibility(&ring, 2)?.map_or(Ok(()), Err),
    );
    let polys = all_polynomials(&ring, 2)?;
    let mut first = None;
    for f in &polys {
        for g in &polys {
            if poly_add(f, g)? != poly_add(g, f)? {
                first.get_or_insert(format!("({f}) + ({g})"));
            }
        }
    }
    report.check(
        "commutative",
        "polynomial addition is commutative",
        first.map_or(Ok(()), Err),
    );
    Ok(report)
}

/// Runs one criterion by id.
pub fn run_criterion(id: &str, cfg: &SuiteConfig) -> Result<Report, CliError> {
    let report = match id {
        "golden" => golden_criterion()?,
        "divergence" => divergence_criterion()?,
        "oracle" => oracle_criterion(cfg)?,
        "remark" => remark_criterion(cfg)?,
        "corollary" => corollary_criterion(cfg)?,
        "value" => value_criterion(cfg)?,
        "valuation" => valuation_criterion(cfg)?,
        "poly" => poly_criterion()?,
        other => {
            let known: Vec<&str> = CRITERIA.iter().map(|(id, _)| *id).collect();
            return Err(CliError::Input(format!(
                "unknown criterion `{other}`; expected one of {}",
                known.join(", ")
            )));
        }
    };
    Ok(report.scoped(id))
}
