//! Theorem suites run over every enumerated algebra up to a vertex bound.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{self, CapPolicy, CensusTable};
use crate::filtration::{self, Terminal};
use crate::homology::{self, HomologyReport, PdValue, Property, Violation};
use crate::kupisch::{Kind, KupischSeries, SyzygyResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SconnectedQh,
    Brown,
    GeneralizedInequality,
    Madsen,
    Parity,
    Chain,
    Fibonacci,
    Epsilon,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::SconnectedQh,
        Suite::Brown,
        Suite::GeneralizedInequality,
        Suite::Madsen,
        Suite::Parity,
        Suite::Chain,
        Suite::Fibonacci,
        Suite::Epsilon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SconnectedQh => "sconnected-qh",
            Suite::Brown => "brown",
            Suite::GeneralizedInequality => "generalized-inequality",
            Suite::Madsen => "madsen",
            Suite::Parity => "parity",
            Suite::Chain => "chain",
            Suite::Fibonacci => "fibonacci",
            Suite::Epsilon => "epsilon",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown theorem suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub algebras: usize,
    pub violations: Vec<Violation>,
    /// Failures not tied to a single algebra, such as census count mismatches.
    pub errors: Vec<String>,
    pub summary: String,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }
}

/// Every algebra a sweep up to `n_max` vertices covers: non-selfinjective
/// cyclic series within the cap, then all connected linear series.
pub fn sweep_algebras(n_max: usize, cap: CapPolicy) -> Vec<KupischSeries> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        out.extend(enumeration::census_algebras(n, Kind::Cyclic, cap.cap(n)));
    }
    for n in 2..=n_max {
        out.extend(enumeration::enumerate_linear(n));
    }
    out
}

/// Runs the per-algebra part of a suite on a single algebra.
pub fn check_algebra(suite: Suite, series: &KupischSeries) -> Vec<Violation> {
    let report = HomologyReport::new(series);
    match suite {
        Suite::SconnectedQh => {
            let mut v = homology::check_sconnected_qh(series, &report);
            v.extend(homology::check_linear_interval(series, &report));
            v
        }
        Suite::Brown => only(homology::check_inequalities_with(series, &report), &[Property::Brown]),
        Suite::GeneralizedInequality => only(
            homology::check_inequalities_with(series, &report),
            &[Property::GeneralizedInequality, Property::SinkBound],
        ),
        Suite::Madsen => homology::check_madsen(series),
        Suite::Parity => homology::check_parity_with(series, &report).unwrap_or_default(),
        Suite::Chain => check_chain(series, &report),
        Suite::Epsilon => check_epsilon(series, &report),
        Suite::Fibonacci => Vec::new(),
    }
}

fn only(violations: Vec<Violation>, keep: &[Property]) -> Vec<Violation> {
    violations.into_iter().filter(|v| keep.contains(&v.property)).collect()
}

/// Maximal global dimension if and only if the relations form a chain.
pub fn check_chain(series: &KupischSeries, report: &HomologyReport) -> Vec<Violation> {
    let relations = series.to_relations();
    let chain = enumeration::is_chain(&relations);
    if chain == report.is_maximal() {
        return Vec::new();
    }
    vec![Violation::new(
        Property::ChainMaximal,
        series,
        format!(
            "relations {relations} chain = {chain}, gldim {} with λ_1 = {:?}, quasi-hereditary = {}",
            report.gldim,
            report.lambda.get(&1),
            report.quasi_hereditary
        ),
    )]
}

/// Tower terminal agrees with finiteness of the global dimension, `ε`
/// lowers a finite global dimension by two, `ε(A)` has one vertex per
/// relation, quasi-heredity means `A` or `ε(A)` is linear, and every second
/// syzygy is `Δ`-filtered.
pub fn check_epsilon(series: &KupischSeries, report: &HomologyReport) -> Vec<Violation> {
    let mut out = Vec::new();
    if !series.is_cyclic() || series.is_selfinjective() {
        return out;
    }
    let fail = |property, detail: String| Violation::new(property, series, detail);
    let tower = match filtration::epsilon_tower(series) {
        Ok(t) => t,
        Err(e) => return vec![fail(Property::EpsilonTerminal, e.to_string())],
    };
    let finite = report.gldim.is_finite();
    if (tower.terminal == Terminal::Linear) != finite {
        out.push(fail(
            Property::EpsilonTerminal,
            format!("terminal {:?} but gldim {}", tower.terminal, report.gldim),
        ));
    }
    let first = &tower.steps[0].algebra;
    if first.n() != series.relation_count() {
        out.push(fail(
            Property::EpsilonSize,
            format!(
                "ε(A) = {first} has {} vertices, A has {} relations",
                first.n(),
                series.relation_count()
            ),
        ));
    }
    if let PdValue::Finite(g) = report.gldim {
        let inner = HomologyReport::new(first).gldim;
        if g >= 2 && inner != PdValue::Finite(g - 2) {
            out.push(fail(
                Property::DimensionDrop,
                format!("gldim {g} but gldim ε(A) = {inner} for ε(A) = {first}"),
            ));
        }
    }
    if report.quasi_hereditary != first.is_linear() {
        out.push(fail(
            Property::QhRestatement,
            format!(
                "quasi-hereditary = {} but ε(A) = {} {first}",
                report.quasi_hereditary,
                first.kind()
            ),
        ));
    }
    for m in series.modules() {
        let second = series
            .syzygy_unchecked(m)
            .module()
            .map(|once| series.syzygy_unchecked(once));
        if let Some(SyzygyResult::Module(omega2)) = second {
            if let Err(e) = filtration::delta_filtration(series, omega2) {
                out.push(fail(Property::DeltaTiling, format!("Ω²{m} = {omega2}: {e}")));
            }
        }
    }
    out
}

/// Runs a suite over every algebra with `2..=n_max` vertices.
pub fn run_suite(suite: Suite, n_max: usize, cap: CapPolicy) -> SuiteReport {
    if suite == Suite::Fibonacci {
        return run_fibonacci(n_max, cap);
    }
    let algebras = sweep_algebras(n_max, cap);
    let violations: Vec<Violation> = algebras.par_iter().flat_map_iter(|a| check_algebra(suite, a)).collect();
    let summary = format!(
        "{suite}: {} algebras, {} violations {}",
        algebras.len(),
        violations.len(),
        if violations.is_empty() { "✓" } else { "✗" }
    );
    SuiteReport {
        suite,
        algebras: algebras.len(),
        violations,
        errors: Vec::new(),
        summary,
    }
}

fn run_fibonacci(n_max: usize, cap: CapPolicy) -> SuiteReport {
    let mut errors = Vec::new();
    let mut parts = Vec::new();
    let mut algebras = 0;
    for kind in [Kind::Cyclic, Kind::Linear] {
        match enumeration::census(2..=n_max, kind, cap) {
            Ok(table) => {
                algebras += (2..=n_max)
                    .map(|n| enumeration::census_algebras(n, kind, cap.cap(n)).len())
                    .sum::<usize>();
                parts.push(fibonacci_line(&table, kind, n_max));
            }
            Err(e) => {
                errors.push(e.to_string());
                parts.push(format!("{kind}: ✗"));
            }
        }
    }
    SuiteReport {
        suite: Suite::Fibonacci,
        algebras,
        violations: Vec::new(),
        errors,
        summary: parts.join("; "),
    }
}

fn fibonacci_line(table: &CensusTable, kind: Kind, n_max: usize) -> String {
    let counts: Vec<String> = (2..=n_max)
        .filter_map(|n| table.total(n, kind))
        .map(|row| row.enumerated.to_string())
        .collect();
    format!("{kind}: {} ✓", counts.join(","))
}

/// Suite results in the order requested.
pub fn run_suites(suites: &[Suite], n_max: usize, cap: CapPolicy) -> Vec<SuiteReport> {
    suites.iter().map(|&s| run_suite(s, n_max, cap)).collect()
}
