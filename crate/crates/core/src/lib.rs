//! Nakayama algebras given by Kupisch series: syzygies, projective and
//! global dimensions, quasi-heredity, syzygy filtrations and an exhaustive
//! census of the algebras attaining Brown's bound.

pub mod cli;
pub mod enumeration;
pub mod filtration;
pub mod homology;
pub mod kupisch;
pub mod verify;

pub use enumeration::{
    census, count_closed_form, enumerate_chains, enumerate_cyclic, enumerate_linear, fibonacci, is_chain, CapPolicy,
    CensusTable, EnumerationError,
};
pub use filtration::{base_set, delta_filtration, epsilon, epsilon_tower, EpsilonTower, FiltrationError, Terminal};
pub use homology::{homology_report, projective_dimension, HomologyReport, PdTable, PdValue, SConnected, Violation};
pub use kupisch::{AlgebraError, Kind, KupischSeries, Relation, RelationSystem, SyzygyResult, UniserialModule};
