//! Deterministic fuzzing of the theorem validators over random instances.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::generate::{generate, random_game, GenKind, GenSpec};
use crate::oracle::theorems::{validate, ValidateOptions};
use crate::oracle::Instance;
use crate::report::TheoremId;

/// Aggregate of one fuzz run. `violations` lists the indices whose
/// per-index seed produced an unsound validation; any entry is a bug.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub theorem: TheoremId,
    pub count: usize,
    pub hypotheses_held: usize,
    pub hypotheses_failed: usize,
    pub skipped: usize,
    pub violations: Vec<usize>,
}

/// Splitmix increment, used to decorrelate per-index seeds.
const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

fn index_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64).wrapping_mul(SEED_MIX)
}

/// The generator shape each theorem is fuzzed with by default.
pub fn default_spec(theorem: TheoremId, max_size: usize, seed: u64) -> GenSpec {
    let kind = match theorem {
        TheoremId::Tarski | TheoremId::AbianBrown61 | TheoremId::Markowsky62 => GenKind::IncreasingMap,
        TheoremId::Calciano16 | TheoremId::Sabarwal17 => GenKind::AscendingInterval,
        // The game theorem is fuzzed with random games, not correspondences;
        // the kind recorded here only drives the non-game path.
        TheoremId::Game76 => GenKind::Correspondence,
        _ => GenKind::VAscendingFiltered,
    };
    GenSpec::new(kind, max_size, seed)
}

/// Runs `count` validations of `theorem` on instances generated from
/// per-index seeds derived from `spec.seed`. Generation or validation
/// errors (cap overruns, incompatible shapes, rejection-budget exhaustion)
/// count as skipped.
pub fn fuzz(theorem: TheoremId, count: usize, spec: &GenSpec) -> Result<FuzzReport> {
    let mut report = FuzzReport {
        theorem,
        count,
        hypotheses_held: 0,
        hypotheses_failed: 0,
        skipped: 0,
        violations: Vec::new(),
    };
    for i in 0..count {
        let spec_i = spec.with_seed(index_seed(spec.seed, i));
        let instance = if theorem == TheoremId::Game76 {
            let mut rng = ChaCha8Rng::seed_from_u64(spec_i.seed);
            match random_game(&mut rng, 3, spec_i.max_size.min(5)) {
                Ok(g) => Instance::Game(g),
                Err(_) => {
                    report.skipped += 1;
                    continue;
                }
            }
        } else {
            match generate(&spec_i) {
                Ok(inst) => inst,
                Err(Error::GenerationExhausted(_)) | Err(Error::CapExceeded { .. }) => {
                    report.skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            }
        };
        match validate(theorem, &instance, &ValidateOptions::default()) {
            Ok(v) => {
                if v.hypotheses_hold {
                    report.hypotheses_held += 1;
                } else {
                    report.hypotheses_failed += 1;
                }
                if !v.sound {
                    report.violations.push(i);
                }
            }
            Err(Error::CapExceeded { .. }) | Err(Error::IncompatibleInstance(_)) => {
                report.skipped += 1;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
