use std::collections::BTreeMap;

use serde::Serialize;

/// How a measurement is compared with its expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|measured − expected| ≤ tolerance`.
    Within,
    /// `measured ≤ expected + tolerance`.
    AtMost,
}

/// One measured quantity against its expectation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    /// `family` or `family[qualifier]`; tolerance overrides are keyed by family.
    pub name: String,
    pub relation: Relation,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, relation: Relation, measured: f64, expected: f64, tolerance: f64) -> Self {
        let passed = match relation {
            Relation::Within => (measured - expected).abs() <= tolerance,
            Relation::AtMost => measured <= expected + tolerance,
        };
        Self { name: name.into(), relation, measured, expected, tolerance, passed }
    }

    pub fn family(&self) -> &str {
        family_of(&self.name)
    }
}

pub(crate) fn family_of(name: &str) -> &str {
    name.split('[').next().unwrap_or(name)
}

/// Labeled rows of numbers, e.g. the observable table of the rest solutions.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: BTreeMap<String, Vec<f64>>,
}

/// Outcome of one scenario. Contains no wall-clock data, so identical configs give
/// byte-identical serializations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub description: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    /// Artifact file names relative to the scenario's output directory.
    pub artifacts: Vec<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
