//! Syzygy filtrations of cyclic Nakayama algebras.
//!
//! The socles of the indecomposable projectives cut the cycle into
//! intervals `Δ_1, …, Δ_r`. Second syzygies are filtered by these
//! intervals, and counting how many `Δ`s fill each projective with top in
//! `S'(A)` yields the Kupisch series of the syzygy filtered algebra `ε(A)`.

use serde::Serialize;
use thiserror::Error;

use crate::kupisch::{Kind, KupischSeries, UniserialModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("the syzygy filtration is only defined for cyclic algebras")]
    NotCyclic,
    #[error("algebra is selfinjective")]
    Selfinjective,
    #[error("projective at vertex {vertex} (length {length}) is not a union of Δ intervals")]
    FiltrationMismatch { vertex: usize, length: u32 },
    #[error("filtered algebra is not Nakayama: {0}")]
    NotNakayama(String),
    #[error("{0} is not filtered by Δ intervals")]
    NotFiltered(UniserialModule),
}

/// One interval of the base set: the module with the given top and length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Delta {
    pub top: usize,
    pub len: u32,
}

impl Delta {
    pub fn module(&self) -> UniserialModule {
        UniserialModule::new(self.top, self.len)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaBasis {
    /// `S(A)`: socle vertices of the projectives, ascending.
    pub socle_vertices: Vec<usize>,
    /// `S'(A)`: `top_vertices[j]` is the cyclic successor of `socle_vertices[j]`.
    pub top_vertices: Vec<usize>,
    /// `deltas[j]` ends at `socle_vertices[j]`.
    pub deltas: Vec<Delta>,
}

impl DeltaBasis {
    /// Index of the `Δ` whose top is `v`.
    pub fn delta_with_top(&self, v: usize) -> Option<usize> {
        self.deltas.iter().position(|d| d.top == v)
    }
}

fn require_cyclic(series: &KupischSeries) -> Result<(), FiltrationError> {
    if !series.is_cyclic() {
        return Err(FiltrationError::NotCyclic);
    }
    if series.is_selfinjective() {
        return Err(FiltrationError::Selfinjective);
    }
    Ok(())
}

pub fn base_set(series: &KupischSeries) -> Result<DeltaBasis, FiltrationError> {
    require_cyclic(series)?;
    let n = series.n();
    let mut socles: Vec<usize> = (1..=n).map(|v| series.advance(v, series.c(v) as usize - 1)).collect();
    socles.sort_unstable();
    socles.dedup();
    let r = socles.len();
    let deltas: Vec<Delta> = (0..r)
        .map(|j| {
            let prev = socles[(j + r - 1) % r];
            let top = prev % n + 1;
            // r == 1: the single Δ runs once around the cycle
            let len = (socles[j] + n - prev - 1) % n + 1;
            Delta { top, len: len as u32 }
        })
        .collect();
    Ok(DeltaBasis {
        top_vertices: socles.iter().map(|&s| s % n + 1).collect(),
        socle_vertices: socles,
        deltas,
    })
}

/// The syzygy filtered algebra of a cyclic non-selfinjective algebra. It is
/// either cyclic or linear, and a linear one may have several components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonStep {
    pub algebra: KupischSeries,
    /// `vertex_map[i]` is the vertex of the original algebra that is the top
    /// of the `Δ` corresponding to vertex `i + 1` of `algebra`.
    pub vertex_map: Vec<usize>,
}

pub fn epsilon(series: &KupischSeries) -> Result<EpsilonStep, FiltrationError> {
    let basis = base_set(series)?;
    let r = basis.deltas.len();
    let mut counts = Vec::with_capacity(r);
    for (j, delta) in basis.deltas.iter().enumerate() {
        let target = series.c(delta.top);
        let mut sum = 0;
        let mut count = 0;
        while sum < target {
            sum += basis.deltas[(j + count) % r].len;
            count += 1;
        }
        if sum != target {
            return Err(FiltrationError::FiltrationMismatch {
                vertex: delta.top,
                length: target,
            });
        }
        counts.push(count as u32);
    }

    // A simple projective of ε(A) is a sink; rotate the first one to the end.
    let rotation = counts.iter().position(|&c| c == 1).map_or(0, |sink| (sink + 1) % r);
    let rotated: Vec<u32> = (0..r).map(|i| counts[(i + rotation) % r]).collect();
    let vertex_map = (0..r).map(|i| basis.deltas[(i + rotation) % r].top).collect();
    let algebra = if rotated[r - 1] == 1 {
        KupischSeries::linear_product(rotated)
    } else {
        KupischSeries::new(Kind::Cyclic, rotated)
    }
    .map_err(|e| FiltrationError::NotNakayama(e.to_string()))?;
    Ok(EpsilonStep { algebra, vertex_map })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Terminal {
    Linear,
    Selfinjective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonTower {
    pub steps: Vec<EpsilonStep>,
    pub terminal: Terminal,
}

impl EpsilonTower {
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "depth": self.depth(),
            "steps": self.steps.iter().map(|s| &s.algebra).collect::<Vec<_>>(),
            "terminal": self.terminal,
        })
    }
}

/// Applies `ε` until the algebra is linear or selfinjective.
pub fn epsilon_tower(series: &KupischSeries) -> Result<EpsilonTower, FiltrationError> {
    let mut steps: Vec<EpsilonStep> = Vec::new();
    let terminal = loop {
        let current = steps.last().map(|s| &s.algebra).unwrap_or(series);
        if current.is_linear() {
            break Terminal::Linear;
        }
        if current.is_selfinjective() {
            break Terminal::Selfinjective;
        }
        let next = epsilon(current)?;
        // non-selfinjective algebras have fewer distinct socles than vertices
        assert!(next.algebra.n() < current.n());
        steps.push(next);
    };
    Ok(EpsilonTower { steps, terminal })
}

/// The `Δ` intervals that are not the second syzygy of any simple module.
pub fn unrealized_deltas(series: &KupischSeries) -> Result<Vec<Delta>, FiltrationError> {
    let basis = base_set(series)?;
    let realized: Vec<UniserialModule> = series
        .simples()
        .filter_map(|s| series.syzygy_unchecked(s).module())
        .filter_map(|once| series.syzygy_unchecked(once).module())
        .collect();
    Ok(basis
        .deltas
        .into_iter()
        .filter(|d| !realized.contains(&d.module()))
        .collect())
}

/// Decomposes `m` into consecutive `Δ` intervals, returning their indices.
pub fn delta_filtration(series: &KupischSeries, m: UniserialModule) -> Result<Vec<usize>, FiltrationError> {
    let basis = base_set(series)?;
    series.check_module(m).map_err(|_| FiltrationError::NotFiltered(m))?;
    let r = basis.deltas.len();
    let start = basis.delta_with_top(m.top).ok_or(FiltrationError::NotFiltered(m))?;
    let mut out = Vec::new();
    let mut sum = 0;
    while sum < m.len {
        let j = (start + out.len()) % r;
        sum += basis.deltas[j].len;
        out.push(j);
    }
    if sum == m.len {
        Ok(out)
    } else {
        Err(FiltrationError::NotFiltered(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(c: &[u32]) -> KupischSeries {
        KupischSeries::cyclic(c).unwrap()
    }

    #[test]
    fn base_set_examples() {
        let b = base_set(&cyc(&[3, 4, 4])).unwrap();
        assert_eq!(b.socle_vertices, vec![2, 3]);
        assert_eq!(b.top_vertices, vec![3, 1]);
        assert_eq!(b.deltas, vec![Delta { top: 1, len: 2 }, Delta { top: 3, len: 1 }]);

        let b = base_set(&cyc(&[4, 6, 5])).unwrap();
        assert_eq!(b.socle_vertices, vec![1]);
        assert_eq!(b.deltas, vec![Delta { top: 2, len: 3 }]);

        assert_eq!(base_set(&cyc(&[2, 2])), Err(FiltrationError::Selfinjective));
        assert_eq!(
            base_set(&KupischSeries::linear(&[2, 1]).unwrap()),
            Err(FiltrationError::NotCyclic)
        );
    }

    #[test]
    fn epsilon_examples() {
        let e = epsilon(&cyc(&[3, 4, 4])).unwrap();
        assert_eq!(e.algebra, cyc(&[2, 3]));
        assert_eq!(e.vertex_map, vec![1, 3]);

        let e = epsilon(&cyc(&[4, 6, 5])).unwrap();
        assert_eq!(e.algebra, cyc(&[2]));
        assert!(e.algebra.is_selfinjective());

        let e = epsilon(&cyc(&[3, 2, 2])).unwrap();
        assert_eq!(e.algebra, KupischSeries::linear(&[2, 1]).unwrap());
        assert_eq!(e.vertex_map, vec![1, 2]);
        assert_eq!(
            epsilon(&KupischSeries::linear(&[2, 1]).unwrap()),
            Err(FiltrationError::NotCyclic)
        );

        // two simple projectives: ε(A) is semisimple with two vertices
        let e = epsilon(&cyc(&[3, 2, 3, 2])).unwrap();
        assert_eq!(e.algebra, KupischSeries::linear_product(vec![1, 1]).unwrap());
        assert!(!e.algebra.is_connected());
    }

    #[test]
    fn tower_examples() {
        let t = epsilon_tower(&cyc(&[3, 4, 4])).unwrap();
        assert_eq!(t.terminal, Terminal::Linear);
        let algs: Vec<_> = t.steps.iter().map(|s| s.algebra.clone()).collect();
        assert_eq!(algs, vec![cyc(&[2, 3]), KupischSeries::linear(&[1]).unwrap()]);

        let t = epsilon_tower(&cyc(&[4, 6, 5])).unwrap();
        assert_eq!((t.terminal, t.depth()), (Terminal::Selfinjective, 1));

        let t = epsilon_tower(&cyc(&[2, 2, 2])).unwrap();
        assert_eq!((t.terminal, t.depth()), (Terminal::Selfinjective, 0));

        let json = t.to_json().to_string();
        assert_eq!(json, r#"{"depth":0,"steps":[],"terminal":"selfinjective"}"#);
    }

    #[test]
    fn realization_of_deltas() {
        assert!(unrealized_deltas(&cyc(&[3, 4, 4])).unwrap().is_empty());
        assert_eq!(unrealized_deltas(&cyc(&[2, 2])), Err(FiltrationError::Selfinjective));
    }

    #[test]
    fn delta_filtration_examples() {
        let a = cyc(&[3, 4, 4]);
        let second = |m| {
            let once = a.syzygy(m).unwrap().module().unwrap();
            a.syzygy(once).unwrap().module().unwrap()
        };
        let s1 = second(UniserialModule::simple(1));
        assert_eq!(s1, UniserialModule::new(1, 2));
        assert_eq!(delta_filtration(&a, s1).unwrap(), vec![0]);
        let s2 = second(UniserialModule::simple(2));
        assert_eq!(s2, UniserialModule::new(3, 1));
        assert_eq!(delta_filtration(&a, s2).unwrap(), vec![1]);
        assert_eq!(
            delta_filtration(&a, UniserialModule::new(2, 1)),
            Err(FiltrationError::NotFiltered(UniserialModule::new(2, 1)))
        );
        assert_eq!(delta_filtration(&a, UniserialModule::new(3, 4)).unwrap(), vec![1, 0, 1]);
        assert!(delta_filtration(&a, UniserialModule::new(1, 1)).is_err());
    }
}
