//! Kupisch series, relation systems and uniserial modules.
//!
//! Vertices are numbered `1..=n`. The arrow `α_i` goes from vertex `i` to
//! vertex `i + 1` (and `α_n : n -> 1` in the cyclic case). The entry `c_i`
//! of a Kupisch series is the length of the indecomposable projective with
//! top at vertex `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("empty Kupisch series")]
    Empty,
    #[error("step constraint violated: c_{next} = {next_value} < c_{at} - 1 = {}", .value - 1)]
    ViolatesStep {
        at: usize,
        value: u32,
        next: usize,
        next_value: u32,
    },
    #[error("projective at vertex {at} has length {value}, needs at least 2")]
    TooShortProjective { at: usize, value: u32 },
    #[error("bad linear tail at vertex {at}: c = {value}, allowed at most {max}")]
    BadTail { at: usize, value: u32, max: u32 },
    #[error("relation {start}:{end} contains relation {inner_start}:{inner_end}")]
    Redundant {
        start: usize,
        end: usize,
        inner_start: usize,
        inner_end: usize,
    },
    #[error("a cyclic relation system needs at least one relation")]
    EmptyCyclic,
    #[error("invalid relation {start}:{end}: {reason}")]
    BadRelation {
        start: usize,
        end: usize,
        reason: &'static str,
    },
    #[error("module M({top},{len}) is not a module over this algebra")]
    InvalidModule { top: usize, len: u32 },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cyclic,
    Linear,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Cyclic => f.write_str("cyclic"),
            Kind::Linear => f.write_str("linear"),
        }
    }
}

/// A validated Kupisch series.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KupischSeries {
    kind: Kind,
    #[serde(rename = "kupisch")]
    c: Vec<u32>,
}

impl KupischSeries {
    /// Checks the Nakayama constraints and wraps the vector.
    pub fn new(kind: Kind, c: Vec<u32>) -> Result<Self, AlgebraError> {
        validate(kind, &c)?;
        Ok(KupischSeries { kind, c })
    }

    pub fn cyclic(c: &[u32]) -> Result<Self, AlgebraError> {
        Self::new(Kind::Cyclic, c.to_vec())
    }

    pub fn linear(c: &[u32]) -> Result<Self, AlgebraError> {
        Self::new(Kind::Linear, c.to_vec())
    }

    /// A linear series that may split into several components: interior
    /// entries equal to 1 mark additional sinks.
    pub fn linear_product(c: Vec<u32>) -> Result<Self, AlgebraError> {
        validate_linear(&c, false)?;
        Ok(KupischSeries { kind: Kind::Linear, c })
    }

    /// Skips validation; callers guarantee the constraints hold.
    pub(crate) fn from_trusted(kind: Kind, c: Vec<u32>) -> Self {
        debug_assert!(validate(kind, &c).is_ok(), "untrusted series {c:?}");
        KupischSeries { kind, c }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_cyclic(&self) -> bool {
        self.kind == Kind::Cyclic
    }

    pub fn is_linear(&self) -> bool {
        self.kind == Kind::Linear
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.c
    }

    /// Length of the projective at vertex `v` (1-based).
    pub fn c(&self, v: usize) -> u32 {
        self.c[v - 1]
    }

    /// Cyclic successor of vertex `v` moved `steps` arrows forward.
    /// For linear algebras the caller must stay within `1..=n`.
    pub fn advance(&self, v: usize, steps: usize) -> usize {
        match self.kind {
            Kind::Cyclic => (v - 1 + steps) % self.n() + 1,
            Kind::Linear => v + steps,
        }
    }

    /// Constant cyclic series, i.e. selfinjective.
    pub fn is_selfinjective(&self) -> bool {
        self.kind == Kind::Cyclic && self.c.iter().all(|&x| x == self.c[0])
    }

    pub fn is_semisimple(&self) -> bool {
        self.kind == Kind::Linear && self.c.iter().all(|&x| x == 1)
    }

    /// False only for linear products with more than one component.
    pub fn is_connected(&self) -> bool {
        self.kind == Kind::Cyclic || self.c[..self.c.len() - 1].iter().all(|&x| x >= 2)
    }

    /// Total number of indecomposable modules, `Σ c_i`.
    pub fn module_count(&self) -> usize {
        self.c.iter().map(|&x| x as usize).sum()
    }

    /// Rotation starting at vertex `j + 1`. Identity for linear series.
    pub fn rotate(&self, j: usize) -> KupischSeries {
        if self.kind == Kind::Linear {
            return self.clone();
        }
        let j = j % self.n();
        let mut c = self.c[j..].to_vec();
        c.extend_from_slice(&self.c[..j]);
        KupischSeries { kind: self.kind, c }
    }

    /// Representative of the isomorphism class: the lexicographically
    /// greatest rotation for cyclic series, the series itself for linear.
    pub fn canonical_form(&self) -> KupischSeries {
        match self.kind {
            Kind::Linear => self.clone(),
            Kind::Cyclic => (0..self.n())
                .map(|j| self.rotate(j))
                .max_by(|a, b| a.c.cmp(&b.c))
                .expect("nonempty series"),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self.kind {
            Kind::Linear => true,
            Kind::Cyclic => (1..self.n()).all(|j| {
                let rotated = self.c[j..].iter().chain(&self.c[..j]);
                rotated.cmp(self.c.iter()) != std::cmp::Ordering::Greater
            }),
        }
    }

    /// All indecomposable modules, ordered by top then length.
    pub fn modules(&self) -> impl Iterator<Item = UniserialModule> + '_ {
        (1..=self.n()).flat_map(move |v| (1..=self.c(v)).map(move |len| UniserialModule::new(v, len)))
    }

    pub fn simples(&self) -> impl Iterator<Item = UniserialModule> {
        (1..=self.n()).map(UniserialModule::simple)
    }

    pub fn check_module(&self, m: UniserialModule) -> Result<(), AlgebraError> {
        if m.top == 0 || m.top > self.n() || m.len == 0 || m.len > self.c(m.top) {
            return Err(AlgebraError::InvalidModule { top: m.top, len: m.len });
        }
        Ok(())
    }

    pub fn is_projective(&self, m: UniserialModule) -> bool {
        m.len == self.c(m.top)
    }

    /// Syzygy of a uniserial module: the kernel of its projective cover.
    pub fn syzygy(&self, m: UniserialModule) -> Result<SyzygyResult, AlgebraError> {
        self.check_module(m)?;
        Ok(self.syzygy_unchecked(m))
    }

    pub(crate) fn syzygy_unchecked(&self, m: UniserialModule) -> SyzygyResult {
        let c_top = self.c(m.top);
        if m.len == c_top {
            return SyzygyResult::Zero;
        }
        let next = UniserialModule::new(self.advance(m.top, m.len as usize), c_top - m.len);
        assert!(
            next.len <= self.c(next.top),
            "syzygy {next} of {m} exceeds its projective cover"
        );
        SyzygyResult::Module(next)
    }

    /// The irredundant relation system defining this algebra.
    ///
    /// Relation starts are the vertices `v` with `c_v <= c_{v+1}`; the
    /// relation starting at `v` is the path of `c_v` arrows from `v`.
    /// A selfinjective series yields `n` relations of equal length.
    pub fn to_relations(&self) -> RelationSystem {
        let n = self.n();
        let last = match self.kind {
            Kind::Cyclic => n,
            Kind::Linear => n - 1,
        };
        let relations = (1..=last)
            .filter(|&v| self.c(v) <= self.c(self.advance(v, 1)))
            .map(|v| Relation {
                start: v,
                end: v + self.c(v) as usize - 1,
            })
            .collect();
        RelationSystem {
            kind: self.kind,
            n,
            relations,
        }
    }

    /// Stored relations, plus one for the implicit `α_n = 0` of a linear
    /// algebra.
    pub fn relation_count(&self) -> usize {
        self.to_relations().relation_count()
    }
}

impl fmt::Display for KupischSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.c.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

/// Checks the Kupisch constraints of a connected algebra of the given kind.
pub fn validate(kind: Kind, c: &[u32]) -> Result<(), AlgebraError> {
    match kind {
        Kind::Linear => validate_linear(c, true),
        Kind::Cyclic => {
            if c.is_empty() {
                return Err(AlgebraError::Empty);
            }
            if let Some(i) = c.iter().position(|&x| x < 2) {
                return Err(AlgebraError::TooShortProjective { at: i + 1, value: c[i] });
            }
            check_steps(c, c.len())
        }
    }
}

fn validate_linear(c: &[u32], connected: bool) -> Result<(), AlgebraError> {
    let n = c.len();
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    if c[n - 1] != 1 {
        return Err(AlgebraError::BadTail {
            at: n,
            value: c[n - 1],
            max: 1,
        });
    }
    let min = if connected { 2 } else { 1 };
    if let Some(i) = c[..n - 1].iter().position(|&x| x < min) {
        return Err(AlgebraError::TooShortProjective { at: i + 1, value: c[i] });
    }
    for (i, &value) in c.iter().enumerate() {
        let max = (n - i) as u32;
        if value > max {
            return Err(AlgebraError::BadTail { at: i + 1, value, max });
        }
    }
    check_steps(c, n - 1)
}

/// `c_{i+1} >= c_i - 1` for the first `steps` positions, indices mod n.
fn check_steps(c: &[u32], steps: usize) -> Result<(), AlgebraError> {
    let n = c.len();
    for i in 0..steps {
        let j = (i + 1) % n;
        if c[j] + 1 < c[i] {
            return Err(AlgebraError::ViolatesStep {
                at: i + 1,
                value: c[i],
                next: j + 1,
                next_value: c[j],
            });
        }
    }
    Ok(())
}

/// Parses `"c1,c2,...,cn"`.
pub fn parse_entries(s: &str) -> Result<Vec<u32>, AlgebraError> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| AlgebraError::Parse(s.to_string())))
        .collect()
}

/// The unique indecomposable module with top at vertex `top` and the given
/// composition length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UniserialModule {
    pub top: usize,
    pub len: u32,
}

impl UniserialModule {
    pub const fn new(top: usize, len: u32) -> Self {
        UniserialModule { top, len }
    }

    pub const fn simple(v: usize) -> Self {
        UniserialModule { top: v, len: 1 }
    }
}

impl fmt::Display for UniserialModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.top, self.len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SyzygyResult {
    Zero,
    Module(UniserialModule),
}

impl SyzygyResult {
    pub fn module(self) -> Option<UniserialModule> {
        match self {
            SyzygyResult::Zero => None,
            SyzygyResult::Module(m) => Some(m),
        }
    }
}

/// A zero relation `α_end ⋯ α_start`, the path of `end - start + 1` arrows
/// leaving `start`. `end` is kept unreduced so relations longer than the
/// cycle are representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub start: usize,
    pub end: usize,
}

impl Relation {
    /// Number of arrows in the relation path.
    pub fn arrows(&self) -> usize {
        self.end + 1 - self.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RelationSystem {
    kind: Kind,
    n: usize,
    relations: Vec<Relation>,
}

impl RelationSystem {
    /// Validates and sorts a relation system by start vertex.
    ///
    /// Cyclic ends smaller than their start are read as wrapping once
    /// around the cycle.
    pub fn new(kind: Kind, n: usize, relations: Vec<Relation>) -> Result<Self, AlgebraError> {
        let mut rels = Vec::with_capacity(relations.len());
        for mut rel in relations {
            if rel.start == 0 || rel.start > n {
                return Err(AlgebraError::BadRelation {
                    start: rel.start,
                    end: rel.end,
                    reason: "start out of range",
                });
            }
            if kind == Kind::Cyclic && rel.end < rel.start {
                rel.end += n;
            }
            if rel.end < rel.start + 1 {
                return Err(AlgebraError::BadRelation {
                    start: rel.start,
                    end: rel.end,
                    reason: "relation needs at least two arrows",
                });
            }
            if kind == Kind::Linear && rel.end >= n {
                return Err(AlgebraError::BadRelation {
                    start: rel.start,
                    end: rel.end,
                    reason: "linear relation must end before the sink",
                });
            }
            rels.push(rel);
        }
        rels.sort();
        for w in rels.windows(2) {
            if w[0].start == w[1].start {
                return Err(AlgebraError::BadRelation {
                    start: w[1].start,
                    end: w[1].end,
                    reason: "duplicate start",
                });
            }
        }
        for a in &rels {
            for b in &rels {
                if a != b && contains(kind, n, a, b) {
                    return Err(AlgebraError::Redundant {
                        start: a.start,
                        end: a.end,
                        inner_start: b.start,
                        inner_end: b.end,
                    });
                }
            }
        }
        Ok(RelationSystem {
            kind,
            n,
            relations: rels,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Stored relations, plus the implicit `α_n = 0` for linear systems.
    pub fn relation_count(&self) -> usize {
        match self.kind {
            Kind::Cyclic => self.relations.len(),
            Kind::Linear => self.relations.len() + 1,
        }
    }

    /// Cyclic shift so the smallest start becomes vertex 1. Identity for
    /// linear systems.
    pub fn normalized(&self) -> RelationSystem {
        match (self.kind, self.relations.first()) {
            (Kind::Cyclic, Some(first)) => self.shifted(first.start - 1),
            _ => self.clone(),
        }
    }

    /// Relabels vertex `v` as `v - shift` (cyclically).
    pub(crate) fn shifted(&self, shift: usize) -> RelationSystem {
        let n = self.n;
        let mut relations: Vec<Relation> = self
            .relations
            .iter()
            .map(|r| {
                let start = (r.start - 1 + n - shift % n) % n + 1;
                Relation {
                    start,
                    end: start + r.arrows() - 1,
                }
            })
            .collect();
        relations.sort();
        RelationSystem {
            kind: self.kind,
            n,
            relations,
        }
    }

    /// The Kupisch series of the algebra defined by these relations.
    pub fn to_kupisch(&self) -> Result<KupischSeries, AlgebraError> {
        let n = self.n;
        if self.kind == Kind::Cyclic && self.relations.is_empty() {
            return Err(AlgebraError::EmptyCyclic);
        }
        let c = (1..=n)
            .map(|v| {
                let next = match self.kind {
                    Kind::Cyclic => self
                        .relations
                        .iter()
                        .map(|r| ((r.start + n - v) % n, r))
                        .min_by_key(|&(d, _)| d),
                    Kind::Linear => self
                        .relations
                        .iter()
                        .filter(|r| r.start >= v)
                        .map(|r| (r.start - v, r))
                        .min_by_key(|&(d, _)| d),
                };
                match next {
                    Some((dist, r)) => (dist + r.arrows()) as u32,
                    None => (n - v + 1) as u32,
                }
            })
            .collect();
        KupischSeries::new(self.kind, c)
    }
}

/// Whether the path of `outer` contains the path of `inner`.
fn contains(kind: Kind, n: usize, outer: &Relation, inner: &Relation) -> bool {
    match kind {
        Kind::Linear => outer.start <= inner.start && inner.end <= outer.end,
        Kind::Cyclic => {
            let offset = (inner.start + n - outer.start) % n;
            offset + inner.arrows() <= outer.arrows()
        }
    }
}

impl fmt::Display for RelationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.relations.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{}:{}", r.start, r.end)?;
        }
        Ok(())
    }
}

/// Parses `"s1:e1;s2:e2;..."`; the empty string is the empty list.
pub fn parse_relations(s: &str) -> Result<Vec<Relation>, AlgebraError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.split_once(':').ok_or_else(|| AlgebraError::Parse(t.to_string()))?;
            let start = a.trim().parse().map_err(|_| AlgebraError::Parse(t.to_string()))?;
            let end = b.trim().parse().map_err(|_| AlgebraError::Parse(t.to_string()))?;
            Ok(Relation { start, end })
        })
        .collect()
}

impl FromStr for Kind {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cyclic" => Ok(Kind::Cyclic),
            "linear" => Ok(Kind::Linear),
            _ => Err(AlgebraError::Parse(s.to_string())),
        }
    }
}
