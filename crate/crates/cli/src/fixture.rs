//! JSON fixtures: label-based tables plus optional golden assertions.

use std::path::Path;

use krasner::{ElementSet, FiniteHyperring};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDocument {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub one: String,
    /// `add[x][y]` lists the labels of `x + y`, singletons included.
    pub add: Vec<Vec<Vec<String>>>,
    pub mul: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperfield: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperdomain: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideals: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub closures: Vec<ClosureClaim>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expressions: Vec<ExpressionClaim>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub source_claim_divergent: Vec<DivergentClaim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureClaim {
    pub name: String,
    pub ideal: Vec<String>,
    pub closure: Vec<String>,
}

/// `rⁿ + a₁rⁿ⁻¹ + ⋯ + aₙ` with `n = coefficients.len()` folds to `value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpressionClaim {
    pub element: String,
    pub coefficients: Vec<String>,
    pub value: Vec<String>,
}

/// A set the source tables call a hyperideal although it is not one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivergentClaim {
    pub set: Vec<String>,
    pub source_says_hyperideal: bool,
    pub hyperideal: bool,
    pub witness: SumWitness,
}

/// `left + right = sum`, with `sum` leaving the set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumWitness {
    pub left: String,
    pub right: String,
    pub sum: Vec<String>,
}

pub const BUNDLED: [(&str, &str); 4] = [
    ("example_3_2", include_str!("../fixtures/example_3_2.json")),
    ("krasner_k2", include_str!("../fixtures/krasner_k2.json")),
    (
        "sign_hyperfield",
        include_str!("../fixtures/sign_hyperfield.json"),
    ),
    (
        "z4_classical",
        include_str!("../fixtures/z4_classical.json"),
    ),
];

impl FixtureDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// A bundled fixture by name, or a file on disk.
    pub fn load(spec: &str) -> Result<Self, CliError> {
        if let Some((_, text)) = BUNDLED.iter().find(|(name, _)| *name == spec) {
            return Self::parse(text);
        }
        let path = Path::new(spec);
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn bundled() -> Vec<Self> {
        BUNDLED
            .iter()
            .map(|(_, text)| Self::parse(text).expect("bundled fixtures parse"))
            .collect()
    }

    /// Builds the hyperring; axioms are not checked here.
    pub fn to_ring(&self) -> Result<FiniteHyperring, CliError> {
        let n = self.elements.len();
        let index = |l: &str| {
            self.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| krasner::Error::UnknownLabel(l.to_string()))
        };
        let ragged = |table, row, found| krasner::Error::RaggedTable {
            table,
            row,
            expected: n,
            found,
        };
        if self.add.len() != n {
            return Err(ragged("add", 0, self.add.len()).into());
        }
        if self.mul.len() != n {
            return Err(ragged("mul", 0, self.mul.len()).into());
        }
        let mut add = Vec::with_capacity(n);
        for (i, row) in self.add.iter().enumerate() {
            if row.len() != n {
                return Err(ragged("add", i, row.len()).into());
            }
            let cells = row
                .iter()
                .map(|cell| cell.iter().map(|l| index(l)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            add.push(cells);
        }
        let mut mul = Vec::with_capacity(n);
        for (i, row) in self.mul.iter().enumerate() {
            if row.len() != n {
                return Err(ragged("mul", i, row.len()).into());
            }
            mul.push(
                row.iter()
                    .map(|l| index(l))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Ok(FiniteHyperring::new(
            self.name.clone(),
            self.elements.clone(),
            index(&self.zero)?,
            index(&self.one)?,
            add,
            mul,
        )?)
    }

    /// The canonical document of a ring, without golden assertions.
    pub fn from_ring(ring: &FiniteHyperring) -> Self {
        let label = |x: usize| ring.label(x).to_string();
        let labels = |s: &ElementSet| s.iter().map(label).collect::<Vec<_>>();
        FixtureDocument {
            name: ring.name().to_string(),
            elements: ring.labels().to_vec(),
            zero: label(ring.zero()),
            one: label(ring.one()),
            add: ring
                .add_table()
                .iter()
                .map(|row| row.iter().map(labels).collect())
                .collect(),
            mul: ring
                .mul_table()
                .iter()
                .map(|row| row.iter().map(|&x| label(x)).collect())
                .collect(),
            expected: None,
        }
    }
}

/// Labels to a set of `ring`.
pub fn label_set(ring: &FiniteHyperring, labels: &[String]) -> Result<ElementSet, CliError> {
    let mut set = ring.empty_set();
    for l in labels {
        set.insert(ring.index_of(l)?);
    }
    Ok(set)
}
