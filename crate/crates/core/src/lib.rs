//! Lattice-theoretic mining of formal contexts.
//!
//! A formal context is a binary relation between named objects and named
//! attributes. This crate provides the machinery to work with such contexts:
//! the Birkhoff derivation operators, concept enumeration in lectic order,
//! context negation, and the "discovery" side — revelation mappings between
//! an existing context and an extended one, the discovery context of newly
//! revealed relationships, and the seeds that anticipate its concepts from
//! old data alone.
//!
//! The crate is `no_std` (with `alloc`); parsing, file formats, and the CLI
//! live in the companion `uum-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bitset;
pub mod context;
pub mod discovery;
mod error;
pub mod evaluation;
pub mod lattice;
pub mod verify;

pub use bitset::BitSet;
pub use context::{AttributeSet, FormalContext, ObjectSet};
pub use discovery::{
    candidate_outbox, phi_tilde, psi_tilde, seed_report, Candidate, CandidateReport,
    ContextExtension, Seed, SeedEntry, SeedReport,
};
pub use error::{Error, NameKind};
pub use evaluation::{
    brute_force_concepts, gen_random_context, gen_random_extension, seed_recall, GenSpec,
    RecallMetrics, ORACLE_OBJECT_LIMIT,
};
pub use lattice::{concept_count_bound, Concept, ConceptLattice, LabelStyle, Preconcept};
pub use verify::{
    verify_propositions, verify_propositions_with, PropCheck, RevelationMaps, StandardMaps,
    VerificationReport,
};

/// Default ceiling on the number of concepts an enumeration may emit.
pub const DEFAULT_CAP: usize = 1_000_000;
