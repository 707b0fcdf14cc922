//! Per-theorem hypothesis checklists, conclusion validation, lemma checks,
//! seeded instance generators, named reference fixtures, and the fuzz harness.

pub mod fixtures;
pub mod fuzz;
pub mod generate;
pub mod theorems;

use crate::correspondence::Correspondence;
use crate::game::LatticeGame;
use crate::poset::Poset;

pub use fixtures::fixture;
pub use fuzz::{fuzz, FuzzReport};
pub use generate::{GenKind, GenSpec};
pub use theorems::{check_hypotheses, check_lemma, validate, LemmaCheck, LemmaId, LemmaInput, ValidateOptions};

/// An instance a theorem validator can run on.
#[derive(Debug, Clone)]
pub enum Instance {
    Poset(Poset),
    Correspondence(Correspondence),
    Game(LatticeGame),
}

impl Instance {
    pub fn as_correspondence(&self) -> Option<&Correspondence> {
        match self {
            Instance::Correspondence(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_game(&self) -> Option<&LatticeGame> {
        match self {
            Instance::Game(g) => Some(g),
            _ => None,
        }
    }
}
