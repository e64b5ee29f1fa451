//! Twofold and Mendelsohn triple systems of small order: validation,
//! orientation, canonical forms, isomorph-free enumeration and the search
//! for ℓ-good sequencings.

pub mod catalog;
pub mod design;
pub mod error;
pub mod gen;
pub mod iso;
pub mod orient;
pub mod report;
pub mod seq;

pub use design::{
    canonical_rotation, converse, underlying_tts, validate_mts, validate_tts, CyclicTriple, Design,
    Kind, MendelsohnTripleSystem, Point, TwofoldTripleSystem, UnorderedTriple, ValidationReport,
};
pub use error::{Error, Result};
