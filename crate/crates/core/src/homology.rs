//! Projective dimensions, global dimension and the invariants derived from
//! the projective dimensions of the simple modules.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::kupisch::{AlgebraError, Kind, KupischSeries, SyzygyResult, UniserialModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("global dimension is infinite")]
    InfiniteGldim,
    #[error("{0} is not the projective dimension of any simple module")]
    NotInOA(u32),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A projective dimension. `Finite` sorts below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PdValue {
    Finite(u32),
    Infinite,
}

impl PdValue {
    pub fn finite(self) -> Option<u32> {
        match self {
            PdValue::Finite(d) => Some(d),
            PdValue::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, PdValue::Finite(_))
    }
}

impl fmt::Display for PdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdValue::Finite(d) => write!(f, "{d}"),
            PdValue::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for PdValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            PdValue::Finite(d) => serializer.serialize_u32(*d),
            PdValue::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Dense index of the module `M(top, len)` among all `Σ c_i` modules.
struct ModuleIndex {
    offsets: Vec<usize>,
}

impl ModuleIndex {
    fn new(series: &KupischSeries) -> Self {
        let mut offsets = Vec::with_capacity(series.n() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &c in series.entries() {
            acc += c as usize;
            offsets.push(acc);
        }
        ModuleIndex { offsets }
    }

    fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn of(&self, m: UniserialModule) -> usize {
        self.offsets[m.top - 1] + m.len as usize - 1
    }
}

/// Projective dimension by walking the syzygy orbit of `m`.
///
/// The syzygy map is a function on the finite set of indecomposables, so the
/// orbit either reaches a projective or revisits a module.
pub fn projective_dimension(series: &KupischSeries, m: UniserialModule) -> Result<PdValue, AlgebraError> {
    series.check_module(m)?;
    let index = ModuleIndex::new(series);
    let mut seen = vec![false; index.total()];
    Ok(walk(series, &index, &mut seen, m))
}

fn walk(series: &KupischSeries, index: &ModuleIndex, seen: &mut [bool], m: UniserialModule) -> PdValue {
    let mut current = m;
    let mut steps = 0;
    loop {
        if series.is_projective(current) {
            return PdValue::Finite(steps);
        }
        let i = index.of(current);
        if seen[i] {
            return PdValue::Infinite;
        }
        seen[i] = true;
        current = match series.syzygy_unchecked(current) {
            SyzygyResult::Module(next) => next,
            SyzygyResult::Zero => unreachable!("non-projective has nonzero syzygy"),
        };
        steps += 1;
    }
}

/// Projective dimensions of every indecomposable module of one algebra,
/// filled in one pass over the syzygy graph.
pub struct PdTable<'a> {
    series: &'a KupischSeries,
    index: ModuleIndex,
    pd: Vec<PdValue>,
}

impl<'a> PdTable<'a> {
    pub fn new(series: &'a KupischSeries) -> Self {
        let index = ModuleIndex::new(series);
        let total = index.total();
        let mut pd: Vec<Option<PdValue>> = vec![None; total];
        let mut on_path = vec![false; total];
        let mut path = Vec::new();
        for start in series.modules() {
            if pd[index.of(start)].is_some() {
                continue;
            }
            path.clear();
            let mut current = start;
            let tail = loop {
                let i = index.of(current);
                if let Some(known) = pd[i] {
                    break known;
                }
                if series.is_projective(current) {
                    pd[i] = Some(PdValue::Finite(0));
                    break PdValue::Finite(0);
                }
                if on_path[i] {
                    break PdValue::Infinite;
                }
                on_path[i] = true;
                path.push(i);
                current = series
                    .syzygy_unchecked(current)
                    .module()
                    .expect("non-projective has nonzero syzygy");
            };
            // Unwind: each module on the path is one step further from the tail.
            let mut value = tail;
            for &i in path.iter().rev() {
                value = match value {
                    PdValue::Finite(d) => PdValue::Finite(d + 1),
                    PdValue::Infinite => PdValue::Infinite,
                };
                pd[i] = Some(value);
                on_path[i] = false;
            }
        }
        PdTable {
            series,
            index,
            pd: pd.into_iter().map(|p| p.expect("every module visited")).collect(),
        }
    }

    pub fn series(&self) -> &KupischSeries {
        self.series
    }

    pub fn pd(&self, m: UniserialModule) -> Result<PdValue, AlgebraError> {
        self.series.check_module(m)?;
        Ok(self.pd[self.index.of(m)])
    }

    pub fn iter(&self) -> impl Iterator<Item = (UniserialModule, PdValue)> + '_ {
        self.series.modules().map(move |m| (m, self.pd[self.index.of(m)]))
    }
}

/// Whether the projective dimensions of the simples form an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SConnected {
    Yes,
    No,
    UndefinedInfiniteGldim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub kind: Kind,
    pub kupisch: Vec<u32>,
    pub selfinjective: bool,
    pub pd_simple: Vec<PdValue>,
    pub gldim: PdValue,
    /// Finite projective dimensions of simples, sorted and deduplicated.
    pub o_set: Vec<u32>,
    pub a_min: Option<u32>,
    /// `λ_c`: number of simples with projective dimension different from `c`.
    pub lambda: BTreeMap<u32, usize>,
    pub s_connected: SConnected,
    pub quasi_hereditary: bool,
    /// `a_min + min_c λ_c - gldim`, for finite global dimension.
    pub brown_slack: Option<i64>,
}

impl HomologyReport {
    pub fn new(series: &KupischSeries) -> Self {
        let index = ModuleIndex::new(series);
        let mut seen = vec![false; index.total()];
        let pd_simple: Vec<PdValue> = series
            .simples()
            .map(|s| {
                seen.iter_mut().for_each(|x| *x = false);
                walk(series, &index, &mut seen, s)
            })
            .collect();
        Self::from_simple_pds(series, pd_simple)
    }

    pub(crate) fn from_simple_pds(series: &KupischSeries, pd_simple: Vec<PdValue>) -> Self {
        let gldim = pd_simple.iter().copied().max().unwrap_or(PdValue::Finite(0));
        let mut o_set: Vec<u32> = pd_simple.iter().filter_map(|p| p.finite()).collect();
        o_set.sort_unstable();
        o_set.dedup();
        let a_min = o_set.first().copied();
        let lambda: BTreeMap<u32, usize> = o_set
            .iter()
            .map(|&c| (c, pd_simple.iter().filter(|&&p| p != PdValue::Finite(c)).count()))
            .collect();
        let s_connected = match gldim {
            PdValue::Infinite => SConnected::UndefinedInfiniteGldim,
            PdValue::Finite(_) => {
                let interval = o_set.windows(2).all(|w| w[1] == w[0] + 1);
                if interval {
                    SConnected::Yes
                } else {
                    SConnected::No
                }
            }
        };
        let quasi_hereditary = pd_simple
            .iter()
            .any(|&p| p == PdValue::Finite(0) || p == PdValue::Finite(2));
        let brown_slack = match (gldim, a_min, lambda.values().min()) {
            (PdValue::Finite(g), Some(a), Some(&l)) => Some(a as i64 + l as i64 - g as i64),
            _ => None,
        };
        HomologyReport {
            kind: series.kind(),
            kupisch: series.entries().to_vec(),
            selfinjective: series.is_selfinjective(),
            pd_simple,
            gldim,
            o_set,
            a_min,
            lambda,
            s_connected,
            quasi_hereditary,
            brown_slack,
        }
    }

    pub fn lambda(&self, c: u32) -> Result<usize, HomologyError> {
        self.lambda.get(&c).copied().ok_or(HomologyError::NotInOA(c))
    }

    pub fn gldim_finite(&self) -> Option<u32> {
        self.gldim.finite()
    }

    /// `gldim = λ_1 + 1` for cyclic algebras, `gldim = λ_1` for linear ones.
    pub fn attains_brown_bound(&self) -> bool {
        let (Some(g), Ok(l1)) = (self.gldim_finite(), self.lambda(1)) else {
            return false;
        };
        match self.kind {
            Kind::Cyclic => g as usize == l1 + 1,
            Kind::Linear => g as usize == l1,
        }
    }

    /// Quasi-hereditary with equality in Brown's bound. Non-quasi-hereditary
    /// cyclic algebras can reach `gldim = λ_1 + 1` too (e.g. `[6,6,5,4,4]`);
    /// they are not counted.
    pub fn is_maximal(&self) -> bool {
        self.quasi_hereditary && self.attains_brown_bound()
    }

    /// Key-sorted JSON.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub fn homology_report(series: &KupischSeries) -> HomologyReport {
    HomologyReport::new(series)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Madsen,
    OddAttainment,
    EvenInterpolation,
    GeneralizedInequality,
    Brown,
    SinkBound,
    SConnectedQh,
    LinearInterval,
    ChainMaximal,
    EpsilonTerminal,
    DimensionDrop,
    DeltaTiling,
    EpsilonSize,
    QhRestatement,
    FibonacciCount,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Property::Madsen => "madsen",
            Property::OddAttainment => "odd-attainment",
            Property::EvenInterpolation => "even-interpolation",
            Property::GeneralizedInequality => "generalized-inequality",
            Property::Brown => "brown",
            Property::SinkBound => "sink-bound",
            Property::SConnectedQh => "sconnected-qh",
            Property::LinearInterval => "linear-interval",
            Property::ChainMaximal => "chain-maximal",
            Property::EpsilonTerminal => "epsilon-terminal",
            Property::DimensionDrop => "dimension-drop",
            Property::DeltaTiling => "delta-tiling",
            Property::EpsilonSize => "epsilon-size",
            Property::QhRestatement => "qh-restatement",
            Property::FibonacciCount => "fibonacci-count",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: Property,
    pub series: KupischSeries,
    pub detail: String,
}

impl Violation {
    pub fn new(property: Property, series: &KupischSeries, detail: impl Into<String>) -> Self {
        Violation {
            property,
            series: series.clone(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            self.property,
            self.series.kind(),
            self.series,
            self.detail
        )
    }
}

/// Modules of finite odd projective dimension must have the same projective
/// dimension as the largest finite one among their composition factors.
pub fn check_madsen(series: &KupischSeries) -> Vec<Violation> {
    let table = PdTable::new(series);
    check_madsen_with(&table)
}

pub(crate) fn check_madsen_with(table: &PdTable<'_>) -> Vec<Violation> {
    let series = table.series();
    let simple_pd: Vec<PdValue> = series.simples().map(|s| table.pd[table.index.of(s)]).collect();
    let mut out = Vec::new();
    for (m, pd) in table.iter() {
        let Some(d) = pd.finite() else { continue };
        if d % 2 == 0 {
            continue;
        }
        let sup = (0..m.len as usize)
            .filter_map(|k| simple_pd[series.advance(m.top, k) - 1].finite())
            .max();
        if sup != Some(d) {
            out.push(Violation::new(
                Property::Madsen,
                series,
                format!("pd {m} = {d}, composition factor sup = {sup:?}"),
            ));
        }
    }
    out
}

/// Every odd value up to the global dimension is the projective dimension of
/// a simple, and even values between two attained even values are attained.
pub fn check_parity_interpolation(series: &KupischSeries) -> Result<Vec<Violation>, HomologyError> {
    check_parity_with(series, &HomologyReport::new(series))
}

pub(crate) fn check_parity_with(
    series: &KupischSeries,
    report: &HomologyReport,
) -> Result<Vec<Violation>, HomologyError> {
    let g = report.gldim_finite().ok_or(HomologyError::InfiniteGldim)?;
    let has = |d: u32| report.o_set.binary_search(&d).is_ok();
    let mut out = Vec::new();
    for l in (1..=g).step_by(2) {
        if !has(l) {
            out.push(Violation::new(
                Property::OddAttainment,
                series,
                format!("no simple of pd {l} (gldim {g})"),
            ));
        }
    }
    let evens: Vec<u32> = report.o_set.iter().copied().filter(|d| d % 2 == 0).collect();
    if let (Some(&lo), Some(&hi)) = (evens.first(), evens.last()) {
        for t in (lo..=hi).step_by(2) {
            if !has(t) {
                out.push(Violation::new(
                    Property::EvenInterpolation,
                    series,
                    format!("pd {lo} and {hi} attained but not {t}"),
                ));
            }
        }
    }
    Ok(out)
}

/// The generalized inequality `gldim <= a + λ_c` for S-connected algebras,
/// Brown's bound for quasi-hereditary ones and `gldim <= n - 1` for linear.
pub fn check_inequalities(series: &KupischSeries) -> Vec<Violation> {
    check_inequalities_with(series, &HomologyReport::new(series))
}

pub(crate) fn check_inequalities_with(series: &KupischSeries, report: &HomologyReport) -> Vec<Violation> {
    let mut out = Vec::new();
    let Some(g) = report.gldim_finite() else {
        return out;
    };
    let g = g as usize;
    if report.s_connected == SConnected::Yes {
        let a = report.a_min.unwrap_or(0) as usize;
        for (&c, &l) in &report.lambda {
            if g > a + l {
                out.push(Violation::new(
                    Property::GeneralizedInequality,
                    series,
                    format!("gldim {g} > a + λ_{c} = {a} + {l}"),
                ));
            }
        }
    }
    if report.quasi_hereditary {
        let bound = match (report.kind, report.lambda(1)) {
            (Kind::Linear, Ok(l1)) => Some(l1),
            (Kind::Cyclic, Ok(l1)) => Some(l1 + 1),
            // single-vertex linear: no simple of pd 1
            (_, Err(_)) => None,
        };
        if let Some(bound) = bound {
            if g > bound {
                out.push(Violation::new(
                    Property::Brown,
                    series,
                    format!("gldim {g} exceeds Brown bound {bound}"),
                ));
            }
        }
    }
    if series.is_linear() && series.n() >= 2 && g > series.n() - 1 {
        out.push(Violation::new(
            Property::SinkBound,
            series,
            format!("gldim {g} > n - 1 = {}", series.n() - 1),
        ));
    }
    out
}

/// S-connected if and only if quasi-hereditary; infinite global dimension
/// rules out quasi-heredity.
pub fn check_sconnected_qh(series: &KupischSeries, report: &HomologyReport) -> Vec<Violation> {
    let ok = match report.s_connected {
        SConnected::Yes => report.quasi_hereditary,
        SConnected::No => !report.quasi_hereditary,
        SConnected::UndefinedInfiniteGldim => !report.quasi_hereditary,
    };
    if ok {
        Vec::new()
    } else {
        vec![Violation::new(
            Property::SConnectedQh,
            series,
            format!(
                "s_connected = {:?}, quasi_hereditary = {}, O_A = {:?}",
                report.s_connected, report.quasi_hereditary, report.o_set
            ),
        )]
    }
}

/// Linear algebras have `O_A = [0, gldim]`.
pub fn check_linear_interval(series: &KupischSeries, report: &HomologyReport) -> Vec<Violation> {
    if !series.is_linear() {
        return Vec::new();
    }
    let expected: Vec<u32> = match report.gldim_finite() {
        Some(g) => (0..=g).collect(),
        None => Vec::new(),
    };
    if report.o_set == expected {
        Vec::new()
    } else {
        vec![Violation::new(
            Property::LinearInterval,
            series,
            format!("O_A = {:?}, gldim {}", report.o_set, report.gldim),
        )]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(c: &[u32]) -> KupischSeries {
        KupischSeries::cyclic(c).unwrap()
    }

    fn lin(c: &[u32]) -> KupischSeries {
        KupischSeries::linear(c).unwrap()
    }

    #[test]
    fn pd_examples() {
        let a = cyc(&[3, 4, 4]);
        let pd = |m| projective_dimension(&a, m).unwrap();
        assert_eq!(pd(UniserialModule::simple(1)), PdValue::Finite(4));
        assert_eq!(pd(UniserialModule::simple(2)), PdValue::Finite(3));
        assert_eq!(pd(UniserialModule::simple(3)), PdValue::Finite(1));
        assert_eq!(pd(UniserialModule::new(3, 4)), PdValue::Finite(0));
        assert_eq!(
            projective_dimension(&cyc(&[2, 2, 2]), UniserialModule::simple(1)).unwrap(),
            PdValue::Infinite
        );
        assert_eq!(
            projective_dimension(&cyc(&[4, 6, 5]), UniserialModule::simple(1)).unwrap(),
            PdValue::Infinite
        );
        assert!(projective_dimension(&a, UniserialModule::new(2, 5)).is_err());
    }

    #[test]
    fn report_344() {
        let r = homology_report(&cyc(&[3, 4, 4]));
        assert_eq!(
            r.pd_simple,
            vec![PdValue::Finite(4), PdValue::Finite(3), PdValue::Finite(1)]
        );
        assert_eq!(r.gldim, PdValue::Finite(4));
        assert_eq!(r.o_set, vec![1, 3, 4]);
        assert_eq!(r.s_connected, SConnected::No);
        assert!(!r.quasi_hereditary);
        assert_eq!(r.lambda(2), Err(HomologyError::NotInOA(2)));
    }

    #[test]
    fn report_322() {
        let r = homology_report(&cyc(&[3, 2, 2]));
        assert_eq!(
            r.pd_simple,
            vec![PdValue::Finite(1), PdValue::Finite(3), PdValue::Finite(2)]
        );
        assert_eq!(r.o_set, vec![1, 2, 3]);
        assert_eq!(r.s_connected, SConnected::Yes);
        assert!(r.quasi_hereditary);
        assert_eq!(r.lambda(1), Ok(2));
        assert!(r.is_maximal());
        assert_eq!(r.brown_slack, Some(0));
    }

    #[test]
    fn report_path_algebra() {
        let r = homology_report(&lin(&[4, 3, 2, 1]));
        assert_eq!(
            r.pd_simple.iter().map(|p| p.finite().unwrap()).collect::<Vec<_>>(),
            vec![1, 1, 1, 0]
        );
        assert_eq!(r.gldim, PdValue::Finite(1));
        assert_eq!(r.o_set, vec![0, 1]);
        assert_eq!(r.lambda(1), Ok(1));
        assert!(r.is_maximal());
    }

    #[test]
    fn report_selfinjective() {
        let r = homology_report(&cyc(&[2, 2]));
        assert_eq!(r.gldim, PdValue::Infinite);
        assert_eq!(r.s_connected, SConnected::UndefinedInfiniteGldim);
        assert!(!r.quasi_hereditary);
        assert!(r.o_set.is_empty());
        assert_eq!(r.brown_slack, None);
    }

    #[test]
    fn checkers_on_examples() {
        for a in [cyc(&[3, 4, 4]), cyc(&[3, 2, 2]), cyc(&[2, 2, 2])] {
            assert!(check_madsen(&a).is_empty(), "{a}");
            assert!(check_inequalities(&a).is_empty(), "{a}");
        }
        assert_eq!(PdTable::new(&cyc(&[3, 4, 4])).iter().count(), 11);
        assert!(check_parity_interpolation(&cyc(&[3, 4, 4])).unwrap().is_empty());
        assert!(check_parity_interpolation(&cyc(&[3, 2, 2])).unwrap().is_empty());
        assert!(check_parity_interpolation(&lin(&[2, 1])).unwrap().is_empty());
        assert_eq!(
            check_parity_interpolation(&cyc(&[2, 2, 2])),
            Err(HomologyError::InfiniteGldim)
        );
        let a = lin(&[2, 2, 2, 1]);
        let r = homology_report(&a);
        assert_eq!(r.gldim, PdValue::Finite(3));
        assert_eq!(r.lambda(1), Ok(3));
        assert_eq!(r.brown_slack, Some(0));
        assert!(check_inequalities(&a).is_empty());
    }

    #[test]
    fn checkers_flag_bad_reports() {
        let a = cyc(&[3, 4, 4]);
        let mut r = homology_report(&a);
        r.quasi_hereditary = true;
        assert_eq!(check_sconnected_qh(&a, &r).len(), 1);
        let mut r = homology_report(&a);
        r.o_set = vec![1, 4];
        let v = check_parity_with(&a, &r).unwrap();
        assert_eq!(v[0].property, Property::OddAttainment);
    }

    #[test]
    fn brown_bound_without_quasi_heredity() {
        let a = cyc(&[6, 6, 5, 4, 4]);
        let r = homology_report(&a);
        assert_eq!(r.o_set, vec![1, 3, 4]);
        assert_eq!(r.lambda(1), Ok(3));
        assert!(r.attains_brown_bound());
        assert!(!r.quasi_hereditary);
        assert!(!r.is_maximal());
    }

    #[test]
    fn pd_json_encoding() {
        let r = homology_report(&cyc(&[2, 2]));
        let s = serde_json::to_string(&r.to_json()).unwrap();
        assert!(s.contains(r#""gldim":"inf""#), "{s}");
        let keys: Vec<_> = r.to_json().as_object().unwrap().keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
