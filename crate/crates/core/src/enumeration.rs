//! Exhaustive generation of Nakayama algebras up to isomorphism, relation
//! chains, closed-form counts and the maximal-global-dimension census.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::homology::{self, HomologyReport, Violation};
use crate::kupisch::{Kind, KupischSeries, Relation, RelationSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("closed form needs n >= 2 and 1 <= r <= n - 1, got n = {n}, r = {r}")]
    OutOfRange { n: usize, r: usize },
    #[error("census mismatch for {kind} n = {n}: {detail}")]
    CensusMismatch {
        n: usize,
        kind: Kind,
        detail: String,
        instance: Option<KupischSeries>,
    },
}

/// Default entry bound for cyclic enumeration.
pub fn default_cap(n: usize) -> u32 {
    (2 * n - 1) as u32
}

/// All connected linear Kupisch series with `n` vertices (`n >= 2`), in
/// lexicographic order.
pub fn enumerate_linear(n: usize) -> Vec<KupischSeries> {
    assert!(n >= 2, "linear enumeration needs n >= 2");
    let mut out = Vec::new();
    let mut c = vec![0u32; n];
    c[n - 1] = 1;
    fill_linear(n, n - 1, &mut c, &mut out);
    out.sort();
    out
}

fn fill_linear(n: usize, filled: usize, c: &mut [u32], out: &mut Vec<KupischSeries>) {
    if filled == 0 {
        out.push(KupischSeries::from_trusted(Kind::Linear, c.to_vec()));
        return;
    }
    let i = filled - 1;
    let hi = (c[i + 1] + 1).min((n - i) as u32);
    for v in 2..=hi {
        c[i] = v;
        fill_linear(n, i, c, out);
    }
}

/// One canonical representative (lexicographically greatest rotation) of
/// every cyclic Kupisch series with `n` vertices and entries at most `cap`,
/// selfinjective ones included, in lexicographic order.
pub fn enumerate_cyclic(n: usize, cap: u32) -> Vec<KupischSeries> {
    (2..=cap)
        .flat_map(|first| enumerate_cyclic_with_first(n, first))
        .collect()
}

/// The part of [`enumerate_cyclic`] whose series start with `first`, which
/// is also their largest entry. Blocks for different `first` are disjoint.
pub fn enumerate_cyclic_with_first(n: usize, first: u32) -> Vec<KupischSeries> {
    assert!(n >= 1 && first >= 2);
    let mut out = Vec::new();
    let mut c = vec![0u32; n];
    c[0] = first;
    fill_cyclic(1, &mut c, &mut out);
    out
}

fn fill_cyclic(i: usize, c: &mut [u32], out: &mut Vec<KupischSeries>) {
    if i == c.len() {
        // the wrap step c_1 >= c_n - 1 holds because c_1 is the maximum
        let series = KupischSeries::from_trusted(Kind::Cyclic, c.to_vec());
        if series.is_canonical() {
            out.push(series);
        }
        return;
    }
    let lo = c[i - 1].saturating_sub(1).max(2);
    for v in lo..=c[0] {
        c[i] = v;
        fill_cyclic(i + 1, c, out);
    }
}

/// Whether the relations form a chain: consecutive relations overlap or
/// touch, non-consecutive ones are disjoint, and (cyclic case) there is a
/// labelling with the first relation starting at vertex 1 and every end at
/// most `n`.
pub fn is_chain(system: &RelationSystem) -> bool {
    match system.kind() {
        Kind::Linear => chain_conditions(system.relations(), system.n(), Kind::Linear),
        Kind::Cyclic => system.relations().iter().any(|first| {
            let shifted = system.shifted(first.start - 1);
            chain_conditions(shifted.relations(), system.n(), Kind::Cyclic)
        }),
    }
}

/// The chain inequalities on relations sorted by start.
fn chain_conditions(rels: &[Relation], n: usize, kind: Kind) -> bool {
    if kind == Kind::Cyclic && rels.first().map(|r| r.start) != Some(1) {
        return false;
    }
    let ends_ok = rels.last().is_none_or(|r| match kind {
        Kind::Cyclic => r.end <= n,
        Kind::Linear => r.end < n,
    });
    let increasing = rels.windows(2).all(|w| w[0].start < w[1].start && w[0].end < w[1].end);
    let overlapping = rels.windows(2).all(|w| w[1].start <= w[0].end);
    let separated = rels.windows(3).all(|w| w[0].end < w[2].start);
    ends_ok && increasing && overlapping && separated
}

/// All normalized chains on `n` vertices, generated directly from the chain
/// inequalities. Cyclic chains start at vertex 1 and end at most at `n`;
/// linear chains end before `n`. Linear output includes the empty system.
pub fn enumerate_chains(n: usize, kind: Kind) -> Vec<RelationSystem> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    match kind {
        Kind::Cyclic => extend_chain(n, 1, &mut current, &mut out),
        Kind::Linear => {
            out.push(Vec::new());
            for start in 1..n {
                extend_chain(n - 1, start, &mut current, &mut out);
            }
        }
    }
    out.into_iter()
        .map(|rels| RelationSystem::new(kind, n, rels).expect("chains are irredundant"))
        .collect()
}

fn extend_chain(max_end: usize, start: usize, current: &mut Vec<Relation>, out: &mut Vec<Vec<Relation>>) {
    let prev_end = current.last().map_or(0, |r: &Relation| r.end);
    for end in (start + 1).max(prev_end + 1)..=max_end {
        current.push(Relation { start, end });
        out.push(current.clone());
        // the next relation starts inside this one, after the previous end
        let lo = (start + 1).max(prev_end + 1);
        for next in lo..=end {
            extend_chain(max_end, next, current, out);
        }
        current.pop();
    }
}

/// Binomial coefficient in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of isomorphism classes with `n` vertices, `r` relations and
/// maximal global dimension: `C(n+r-2, 2r-1)` cyclic, `C(n+r-3, 2r-2)` linear.
pub fn count_closed_form(n: usize, r: usize, kind: Kind) -> Result<u128, EnumerationError> {
    if n < 2 || r < 1 || r > n - 1 {
        return Err(EnumerationError::OutOfRange { n, r });
    }
    let (n, r) = (n as u64, r as u64);
    Ok(match kind {
        Kind::Cyclic => binomial(n + r - 2, 2 * r - 1),
        Kind::Linear => binomial(n + r - 3, 2 * r - 2),
    })
}

/// `F_0 = 0`, `F_1 = 1`, `F_{k+1} = F_k + F_{k-1}`. Exact for `k <= 186`.
pub fn fibonacci(k: u32) -> u128 {
    assert!(k <= 186, "F_{k} overflows u128");
    if k == 0 {
        return 0;
    }
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 1..k {
        (a, b) = (b, a + b);
    }
    b
}

/// Fibonacci index counting maximal algebras with `n` vertices.
pub fn fibonacci_index(n: usize, kind: Kind) -> u32 {
    match kind {
        Kind::Cyclic => (2 * n - 2) as u32,
        Kind::Linear => (2 * n - 3) as u32,
    }
}

/// The algebras a census or verification sweep runs over: non-selfinjective
/// cyclic series up to `cap`, or all connected linear series.
pub fn census_algebras(n: usize, kind: Kind, cap: u32) -> Vec<KupischSeries> {
    match kind {
        Kind::Linear => enumerate_linear(n),
        Kind::Cyclic => (2..=cap)
            .into_par_iter()
            .flat_map_iter(|first| enumerate_cyclic_with_first(n, first))
            .filter(|s| !s.is_selfinjective())
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapPolicy {
    /// `2n - 1`
    Default,
    Fixed(u32),
}

impl CapPolicy {
    pub fn cap(self, n: usize) -> u32 {
        match self {
            CapPolicy::Default => default_cap(n),
            CapPolicy::Fixed(cap) => cap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub kind: Kind,
    /// `None` for the per-`n` total row.
    pub r: Option<usize>,
    /// Maximal algebras found by brute force.
    pub enumerated: u64,
    /// Normalized chains counted directly.
    pub chains: u64,
    pub closed_form: Option<u128>,
    pub fibonacci: Option<u128>,
    /// Property violations (total rows only).
    pub violations: Option<usize>,
    /// Canonical forms of the maximal algebras (total rows only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub maximal: Vec<KupischSeries>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusTable {
    pub rows: Vec<CensusRow>,
    pub violations: Vec<Violation>,
}

impl CensusTable {
    /// Appends the rows of another table; tables for disjoint `n` merge in
    /// any order to the same result.
    pub fn merge(mut self, other: CensusTable) -> CensusTable {
        self.rows.extend(other.rows);
        self.violations.extend(other.violations);
        self.rows.sort_by_key(|r| (r.kind, r.n, r.r.map_or(usize::MAX, |r| r)));
        self.violations.sort_by(|a, b| {
            (a.series.kind(), a.series.n(), a.series.entries(), a.property).cmp(&(
                b.series.kind(),
                b.series.n(),
                b.series.entries(),
                b.property,
            ))
        });
        self
    }

    pub fn total(&self, n: usize, kind: Kind) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.n == n && r.kind == kind && r.r.is_none())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "kind", "r", "enumerated", "closed_form", "fibonacci", "violations"])
            .expect("in-memory write");
        let opt = |v: Option<String>| v.unwrap_or_default();
        for row in &self.rows {
            w.write_record([
                row.n.to_string(),
                row.kind.to_string(),
                row.r.map_or_else(|| "all".to_string(), |r| r.to_string()),
                row.enumerated.to_string(),
                opt(row.closed_form.map(|v| v.to_string())),
                opt(row.fibonacci.map(|v| v.to_string())),
                opt(row.violations.map(|v| v.to_string())),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("census serializes")
    }
}

/// Per-algebra facts gathered by the census.
struct Census1 {
    series: KupischSeries,
    report: HomologyReport,
    chain: bool,
    violations: Vec<Violation>,
}

fn examine(series: KupischSeries) -> Census1 {
    let report = HomologyReport::new(&series);
    let chain = is_chain(&series.to_relations());
    let table = homology::PdTable::new(&series);
    let mut violations = homology::check_madsen_with(&table);
    if report.gldim.is_finite() {
        violations.extend(homology::check_parity_with(&series, &report).expect("finite gldim"));
    }
    violations.extend(homology::check_inequalities_with(&series, &report));
    violations.extend(homology::check_sconnected_qh(&series, &report));
    violations.extend(homology::check_linear_interval(&series, &report));
    Census1 {
        series,
        report,
        chain,
        violations,
    }
}

/// Counts maximal-global-dimension algebras for every `n` in `ns` and checks
/// the count against direct chain enumeration, the closed forms and the
/// Fibonacci numbers. Property checkers run on every enumerated algebra and
/// their findings are collected in the table.
///
/// Count agreement is only asserted when the cyclic cap is at least `2n - 1`.
pub fn census(
    ns: impl IntoIterator<Item = usize>,
    kind: Kind,
    cap_policy: CapPolicy,
) -> Result<CensusTable, EnumerationError> {
    let mut table = CensusTable {
        rows: Vec::new(),
        violations: Vec::new(),
    };
    for n in ns {
        table = table.merge(census_one(n, kind, cap_policy.cap(n))?);
    }
    Ok(table)
}

fn census_one(n: usize, kind: Kind, cap: u32) -> Result<CensusTable, EnumerationError> {
    assert!(n >= 2, "census needs n >= 2");
    let mismatch = |detail: String, instance: Option<KupischSeries>| EnumerationError::CensusMismatch {
        n,
        kind,
        detail,
        instance,
    };
    let facts: Vec<Census1> = census_algebras(n, kind, cap).into_par_iter().map(examine).collect();

    let mut maximal_by_r: BTreeMap<usize, BTreeSet<KupischSeries>> = BTreeMap::new();
    let mut violations = Vec::new();
    for f in &facts {
        let maximal = f.report.is_maximal();
        if maximal != f.chain {
            return Err(mismatch(
                format!("maximal = {maximal} but chain = {}", f.chain),
                Some(f.series.clone()),
            ));
        }
        if maximal {
            let r = f.report.lambda(1).expect("maximal implies pd 1 attained");
            let relations = f.series.relation_count();
            if r != relations {
                return Err(mismatch(
                    format!("λ_1 = {r} but {relations} relations"),
                    Some(f.series.clone()),
                ));
            }
            maximal_by_r.entry(r).or_default().insert(f.series.clone());
        }
        violations.extend(f.violations.iter().cloned());
    }

    let comparable = kind == Kind::Linear || cap >= default_cap(n);
    let mut chains_by_r: BTreeMap<usize, BTreeSet<KupischSeries>> = BTreeMap::new();
    for chain in enumerate_chains(n, kind) {
        let series = chain
            .to_kupisch()
            .map_err(|e| mismatch(format!("chain {chain} is not an algebra: {e}"), None))?
            .canonical_form();
        if comparable || series.entries().iter().all(|&c| c <= cap) {
            let r = chain.relation_count();
            if !chains_by_r.entry(r).or_default().insert(series.clone()) {
                return Err(mismatch(format!("two chains give {series}"), Some(series)));
            }
        }
    }

    let mut rows = Vec::new();
    let mut total = 0u64;
    let mut total_chains = 0u64;
    let mut closed_total = 0u128;
    for r in 1..n {
        let found = maximal_by_r.get(&r).map_or(0, |s| s.len()) as u64;
        let chains = chains_by_r.get(&r).map_or(0, |s| s.len()) as u64;
        let closed = count_closed_form(n, r, kind)?;
        if comparable {
            if maximal_by_r.get(&r) != chains_by_r.get(&r) {
                return Err(mismatch(
                    format!("r = {r}: {found} maximal algebras vs {chains} chains"),
                    None,
                ));
            }
            if found as u128 != closed {
                return Err(mismatch(format!("r = {r}: {found} found, closed form {closed}"), None));
            }
        }
        total += found;
        total_chains += chains;
        closed_total += closed;
        rows.push(CensusRow {
            n,
            kind,
            r: Some(r),
            enumerated: found,
            chains,
            closed_form: Some(closed),
            fibonacci: None,
            violations: None,
            maximal: Vec::new(),
        });
    }
    if let Some(&r) = maximal_by_r.keys().find(|&&r| r == 0 || r >= n) {
        return Err(mismatch(format!("maximal algebra with r = {r}"), None));
    }
    let fib = fibonacci(fibonacci_index(n, kind));
    if comparable && (total as u128 != fib || closed_total != fib) {
        return Err(mismatch(
            format!("total {total}, closed form sum {closed_total}, Fibonacci {fib}"),
            None,
        ));
    }
    rows.push(CensusRow {
        n,
        kind,
        r: None,
        enumerated: total,
        chains: total_chains,
        closed_form: Some(closed_total),
        fibonacci: Some(fib),
        violations: Some(violations.len()),
        maximal: maximal_by_r.into_values().flatten().collect(),
    });
    Ok(CensusTable { rows, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entries(v: &[KupischSeries]) -> Vec<Vec<u32>> {
        v.iter().map(|s| s.entries().to_vec()).collect()
    }

    fn system(kind: Kind, n: usize, rels: &[(usize, usize)]) -> RelationSystem {
        RelationSystem::new(
            kind,
            n,
            rels.iter().map(|&(start, end)| Relation { start, end }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn linear_examples() {
        assert_eq!(entries(&enumerate_linear(2)), vec![vec![2, 1]]);
        assert_eq!(entries(&enumerate_linear(3)), vec![vec![2, 2, 1], vec![3, 2, 1]]);
        let four = entries(&enumerate_linear(4));
        assert_eq!(four.len(), 5);
        assert!(four.contains(&vec![2, 3, 2, 1]));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(
            entries(&enumerate_cyclic(2, 3)),
            vec![vec![2, 2], vec![3, 2], vec![3, 3]]
        );
        let three = entries(&enumerate_cyclic(3, 5));
        for c in [vec![4, 3, 2], vec![5, 4, 3], vec![3, 2, 2]] {
            assert!(three.contains(&c));
        }
        assert_eq!(entries(&enumerate_cyclic(1, 2)), vec![vec![2]]);
    }

    #[test]
    fn chain_examples() {
        assert!(is_chain(&system(Kind::Cyclic, 4, &[(1, 3), (2, 4)])));
        assert!(!is_chain(&system(Kind::Cyclic, 4, &[(1, 2), (3, 4)])));
        assert!(!is_chain(&system(Kind::Cyclic, 5, &[(1, 3), (2, 4), (3, 5)])));
        assert!(is_chain(&system(Kind::Linear, 4, &[])));
        // a chain whose relation 1 is not the one through vertex 1
        assert!(is_chain(&system(Kind::Cyclic, 4, &[(1, 3), (4, 5)])));
    }

    #[test]
    fn chains_n4_match_listing() {
        let mut r2: Vec<String> = enumerate_chains(4, Kind::Cyclic)
            .into_iter()
            .filter(|c| c.relations().len() == 2)
            .map(|c| c.to_kupisch().unwrap().canonical_form().to_string())
            .collect();
        r2.sort();
        assert_eq!(r2, vec!["[4,3,2,2]", "[4,3,2,3]", "[4,3,3,2]", "[5,4,3,3]"]);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(count_closed_form(4, 2, Kind::Cyclic), Ok(4));
        assert_eq!(count_closed_form(3, 1, Kind::Cyclic), Ok(2));
        assert_eq!(count_closed_form(3, 2, Kind::Cyclic), Ok(1));
        assert_eq!(count_closed_form(4, 2, Kind::Linear), Ok(3));
        assert_eq!(
            count_closed_form(3, 3, Kind::Cyclic),
            Err(EnumerationError::OutOfRange { n: 3, r: 3 })
        );
        assert!(count_closed_form(1, 1, Kind::Linear).is_err());
        assert!(count_closed_form(4, 0, Kind::Linear).is_err());
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(0), 0);
        assert_eq!(fibonacci(1), 1);
        assert_eq!(fibonacci(6), 8);
        assert_eq!(fibonacci(14), 377);
        assert_eq!(fibonacci(186), 332825110087067562321196029789634457848);
    }

    #[test]
    fn small_census() {
        let t = census(2..=5, Kind::Cyclic, CapPolicy::Default).unwrap();
        let counts: Vec<u64> = (2..=5).map(|n| t.total(n, Kind::Cyclic).unwrap().enumerated).collect();
        assert_eq!(counts, vec![1, 3, 8, 21]);
        assert_eq!(
            t.total(2, Kind::Cyclic).unwrap().maximal,
            vec![KupischSeries::cyclic(&[3, 2]).unwrap()]
        );
        assert!(t.violations.is_empty(), "{:?}", t.violations);

        let t = census(2..=4, Kind::Linear, CapPolicy::Default).unwrap();
        let counts: Vec<u64> = (2..=4).map(|n| t.total(n, Kind::Linear).unwrap().enumerated).collect();
        assert_eq!(counts, vec![1, 2, 5]);
    }

    #[test]
    fn census_csv_layout() {
        let t = census([3], Kind::Cyclic, CapPolicy::Default).unwrap();
        assert_eq!(
            t.to_csv(),
            "n,kind,r,enumerated,closed_form,fibonacci,violations\n\
             3,cyclic,1,2,2,,\n\
             3,cyclic,2,1,1,,\n\
             3,cyclic,all,3,3,3,0\n"
        );
    }

    #[test]
    fn merge_is_order_independent() {
        let a = census([3], Kind::Cyclic, CapPolicy::Default).unwrap();
        let b = census([4], Kind::Linear, CapPolicy::Default).unwrap();
        assert_eq!(a.clone().merge(b.clone()), b.merge(a));
    }
}
