//! Ground representation and instantiation.

pub mod builtin;
pub mod compile;
pub mod grounder;
pub mod value;

pub use grounder::{
    full_grounding, AggGroup, AggRole, Batch, EmissionRecord, Emitted, GroundHeuristicDirective,
    GroundRule, Grounder, NegCondition, SupportCandidate, DEFAULT_CAP,
};
pub use value::{AtomId, AtomStore, GroundAtom, PredId, Value};
