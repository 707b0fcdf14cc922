//! Finite order-theory engine: posets and lattices, multivalued
//! correspondences with monotonicity and value-shape checkers, fixed-point
//! enumeration, lattice games with equilibrium enumeration, and a
//! validation oracle with seeded fuzzing.

pub mod cli;
pub mod correspondence;
pub mod error;
pub mod fixpoint;
pub mod format;
pub mod game;
pub mod oracle;
pub mod poset;
pub mod report;

pub use correspondence::{Correspondence, MonotonicityProperty, ValueCondition, Verdict, VALUE_ENUM_CAP};
pub use error::{Error, Result};
pub use fixpoint::{
    a_prime_set, extremal_fixed_point, fix_structure, fixed_points, iterate_increasing, Direction,
    ExtremalResult, FixReport, Side,
};
pub use game::{LatticeGame, PayoffProperty};
pub use oracle::{
    check_hypotheses, check_lemma, fixture, fuzz, validate, FuzzReport, GenKind, GenSpec, Instance,
    LemmaCheck, LemmaId, LemmaInput, ValidateOptions,
};
pub use poset::{diamond, ChainMode, Poset, StructureReport, DESK_CAP};
pub use report::{HypothesisReport, TheoremId, ValidationReport};
