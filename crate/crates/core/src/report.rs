//! Validation report types shared by the theorem oracle and the game
//! module.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::correspondence::Verdict;
use crate::error::{Error, Result};

/// Identifiers for the validated fixed-point and equilibrium results.
/// Serialized in reports by their string ids (e.g. `"thm-1.9"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    Tarski,
    VeinottZhou,
    Calciano16,
    Sabarwal17,
    WeakZhouChain,
    WeakZhouComplete,
    Thm19,
    Thm24Plain,
    Thm24Dual,
    Thm31,
    CalcianoExtremal,
    Lemma34,
    Thm51,
    AbianBrown61,
    Markowsky62,
    Game76,
}

impl TheoremId {
    pub const ALL: &'static [TheoremId] = &[
        TheoremId::Tarski,
        TheoremId::VeinottZhou,
        TheoremId::Calciano16,
        TheoremId::Sabarwal17,
        TheoremId::WeakZhouChain,
        TheoremId::WeakZhouComplete,
        TheoremId::Thm19,
        TheoremId::Thm24Plain,
        TheoremId::Thm24Dual,
        TheoremId::Thm31,
        TheoremId::CalcianoExtremal,
        TheoremId::Lemma34,
        TheoremId::Thm51,
        TheoremId::AbianBrown61,
        TheoremId::Markowsky62,
        TheoremId::Game76,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::Tarski => "tarski",
            TheoremId::VeinottZhou => "veinott-zhou",
            TheoremId::Calciano16 => "calciano-1.6",
            TheoremId::Sabarwal17 => "sabarwal-1.7",
            TheoremId::WeakZhouChain => "weak-zhou-chain",
            TheoremId::WeakZhouComplete => "weak-zhou-complete",
            TheoremId::Thm19 => "thm-1.9",
            TheoremId::Thm24Plain => "thm-2.4-plain",
            TheoremId::Thm24Dual => "thm-2.4-dual",
            TheoremId::Thm31 => "thm-3.1",
            TheoremId::CalcianoExtremal => "calciano-extremal",
            TheoremId::Lemma34 => "lemma-3.4",
            TheoremId::Thm51 => "thm-5.1",
            TheoremId::AbianBrown61 => "abian-brown-6.1",
            TheoremId::Markowsky62 => "markowsky-6.2",
            TheoremId::Game76 => "game-7.6",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<TheoremId, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown theorem id `{s}`")))
    }
}

/// One verdict per enumerated hypothesis of a theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub theorem: TheoremId,
    pub items: Vec<(String, Verdict)>,
}

impl HypothesisReport {
    pub fn new(theorem: TheoremId) -> HypothesisReport {
        HypothesisReport {
            theorem,
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, label: &str, verdict: Verdict) {
        self.items.push((label.to_owned(), verdict));
    }

    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|(_, v)| v.holds)
    }
}

/// Hypothesis checklist plus conclusion check. `sound == false` means the
/// hypotheses held but the conclusion failed; on finite instances that is
/// an implementation bug, never an acceptable outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub hypotheses: HypothesisReport,
    pub hypotheses_hold: bool,
    pub conclusion: Verdict,
    pub sound: bool,
}

impl ValidationReport {
    pub fn from_parts(hypotheses: HypothesisReport, conclusion: Verdict) -> ValidationReport {
        let hypotheses_hold = hypotheses.all_hold();
        let sound = !(hypotheses_hold && !conclusion.holds);
        ValidationReport {
            hypotheses,
            hypotheses_hold,
            conclusion,
            sound,
        }
    }
}
