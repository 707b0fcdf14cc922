//! Seeded random instance generators.
//!
//! All generators are deterministic for a fixed seed. Structural claims
//! made by a generator (a lattice is complete, a map is increasing, a
//! correspondence is V-ascending) are re-verified with the exhaustive
//! checkers before the instance is returned.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correspondence::{Correspondence, MonotonicityProperty};
use crate::error::{Error, Result};
use crate::game::LatticeGame;
use crate::oracle::Instance;
use crate::poset::{Poset, DESK_CAP};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::correspondence::string_enum;

string_enum!(GenKind {
    Poset => "poset",
    Lattice => "lattice",
    CompleteLattice => "complete-lattice",
    IncreasingMap => "increasing-map",
    Correspondence => "correspondence",
    AscendingInterval => "ascending-interval-correspondence",
    VAscendingFiltered => "v-ascending-filtered",
});

/// Generation request: what to build, how large, and from which seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub max_size: usize,
    pub max_value_size: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, max_size: usize, seed: u64) -> GenSpec {
        GenSpec {
            kind,
            max_size,
            max_value_size: max_size,
            seed,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> GenSpec {
        self.seed = seed;
        self
    }

    fn check(&self) -> Result<()> {
        if self.max_size == 0 || self.max_size > DESK_CAP {
            return Err(Error::CapExceeded {
                size: self.max_size,
                cap: DESK_CAP,
            });
        }
        Ok(())
    }
}

const ATTEMPTS: usize = 500;

/// Builds one instance of the requested kind, deterministically for its seed.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GenKind::Poset => Ok(Instance::Poset(random_poset(&mut rng, spec.max_size))),
        // Finite lattices are complete, so both kinds share a generator.
        GenKind::Lattice | GenKind::CompleteLattice => {
            Ok(Instance::Poset(random_complete_lattice(&mut rng, spec.max_size)?))
        }
        GenKind::IncreasingMap => {
            let lattice = random_complete_lattice(&mut rng, spec.max_size)?;
            let f = increasing_map_on(&lattice, &mut rng);
            debug_assert!(f
                .check_monotonicity(MonotonicityProperty::IncreasingMap)
                .unwrap()
                .holds);
            Ok(Instance::Correspondence(f))
        }
        GenKind::Correspondence => {
            let lattice = random_complete_lattice(&mut rng, spec.max_size)?;
            Ok(Instance::Correspondence(random_correspondence_on(
                &lattice,
                &mut rng,
                spec.max_value_size,
                true,
            )))
        }
        GenKind::AscendingInterval => {
            let lattice = random_complete_lattice(&mut rng, spec.max_size)?;
            let f = ascending_interval_on(&lattice, &mut rng);
            let check = f.check_monotonicity(MonotonicityProperty::Ascending)?;
            if !check.holds {
                return Err(Error::GenerationExhausted("ascending-interval-correspondence".into()));
            }
            Ok(Instance::Correspondence(f))
        }
        GenKind::VAscendingFiltered => {
            let lattice = random_complete_lattice(&mut rng, spec.max_size)?;
            let f = v_ascending_on(&lattice, &mut rng, spec.max_value_size);
            let check = f.check_monotonicity(MonotonicityProperty::VAscending)?;
            if !check.holds {
                return Err(Error::GenerationExhausted("v-ascending-filtered".into()));
            }
            Ok(Instance::Correspondence(f))
        }
    }
}

/// Random poset on up to `max_size` elements: a random DAG on indexed
/// nodes with edges pointing upward, transitively closed.
pub fn random_poset(rng: &mut impl Rng, max_size: usize) -> Poset {
    let n = rng.gen_range(1..=max_size);
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.3) {
                gens.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Poset::from_generators(&names, &gens).expect("upward edges cannot form a cycle")
}

/// Random poset guaranteed to have a least element.
pub fn random_poset_with_bottom(rng: &mut impl Rng, max_size: usize) -> Poset {
    let inner = random_poset(rng, max_size.saturating_sub(1).max(1));
    let mut names: Vec<String> = vec!["bot".into()];
    names.extend(inner.elements().iter().cloned());
    let mut gens: Vec<(String, String)> = inner
        .covers()
        .iter()
        .map(|&(a, b)| (inner.element(a).to_owned(), inner.element(b).to_owned()))
        .collect();
    for e in inner.elements() {
        gens.push(("bot".into(), e.clone()));
    }
    Poset::from_generators(&names, &gens).expect("adjoining a bottom preserves acyclicity")
}

/// Random finite (hence complete) lattice, built as an intersection-closed
/// family of subsets of a small ground set, ordered by inclusion. Closure
/// systems realize every finite lattice, including the non-distributive
/// ones.
pub fn random_complete_lattice(rng: &mut impl Rng, max_size: usize) -> Result<Poset> {
    for _ in 0..ATTEMPTS {
        let ground = rng.gen_range(1..=4u32);
        let universe: u32 = (1 << ground) - 1;
        let mut family = vec![universe];
        let extra = rng.gen_range(0..=2 * ground);
        for _ in 0..extra {
            let mask = rng.gen_range(0..=universe);
            if !family.contains(&mask) {
                family.push(mask);
            }
        }
        // Close under pairwise intersection.
        loop {
            let mut added = false;
            for i in 0..family.len() {
                for j in (i + 1)..family.len() {
                    let meet = family[i] & family[j];
                    if !family.contains(&meet) {
                        family.push(meet);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        if family.len() > max_size {
            continue;
        }
        family.sort_unstable();
        let names: Vec<String> = family.iter().map(|m| format!("m{m}")).collect();
        let mut gens = Vec::new();
        for (i, &a) in family.iter().enumerate() {
            for (j, &b) in family.iter().enumerate() {
                if i != j && a & b == a {
                    gens.push((names[i].clone(), names[j].clone()));
                }
            }
        }
        let poset = Poset::from_generators(&names, &gens)?;
        debug_assert!(poset.classify().is_complete_lattice);
        return Ok(poset);
    }
    Err(Error::GenerationExhausted("complete-lattice".into()))
}

/// Random increasing self-map, assigned along a linear extension; falls
/// back to a constant map when a partial assignment cannot be extended.
pub fn increasing_map_on(poset: &Poset, rng: &mut impl Rng) -> Correspondence {
    let n = poset.len();
    let order = linear_extension(poset);
    'retry: for _ in 0..ATTEMPTS {
        let mut image = vec![usize::MAX; n];
        for &x in &order {
            let candidates: Vec<usize> = (0..n)
                .filter(|&y| {
                    (0..n).all(|z| image[z] == usize::MAX || !poset.le(z, x) || poset.le(image[z], y))
                })
                .collect();
            if candidates.is_empty() {
                continue 'retry;
            }
            image[x] = candidates[rng.gen_range(0..candidates.len())];
        }
        return Correspondence::from_map(poset.clone(), move |x| image[x]);
    }
    let c = rng.gen_range(0..n);
    Correspondence::from_map(poset.clone(), move |_| c)
}

fn linear_extension(poset: &Poset) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..poset.len()).collect();
    let mut out = Vec::with_capacity(pool.len());
    while !pool.is_empty() {
        let pos = pool
            .iter()
            .position(|&x| pool.iter().all(|&y| !poset.lt(y, x)))
            .expect("finite poset has a minimal element");
        out.push(pool.remove(pos));
    }
    out
}

/// Random multivalued self-correspondence; values are random subsets of
/// bounded size, empty with small probability when allowed.
pub fn random_correspondence_on(
    poset: &Poset,
    rng: &mut impl Rng,
    max_value_size: usize,
    allow_empty: bool,
) -> Correspondence {
    let n = poset.len();
    let cap = max_value_size.clamp(1, n);
    let values: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            if allow_empty && rng.gen_bool(0.1) {
                return Vec::new();
            }
            let size = rng.gen_range(1..=cap);
            let mut v: Vec<usize> = Vec::with_capacity(size);
            for _ in 0..size {
                v.push(rng.gen_range(0..n));
            }
            v
        })
        .collect();
    Correspondence::new(poset.clone(), poset.clone(), values).expect("indices in range")
}

/// F(x) = [g(x), h(x)] for random increasing g <= h; ascending by
/// construction.
pub fn ascending_interval_on(lattice: &Poset, rng: &mut impl Rng) -> Correspondence {
    let g = increasing_map_on(lattice, rng)
        .as_map()
        .expect("single-valued by construction");
    let top = lattice.top().expect("complete lattice has a top");
    // Random increasing h dominating g: push a random choice toward the
    // top until it dominates both g and the already-assigned h's.
    let n = lattice.len();
    let order = linear_extension(lattice);
    let mut h = vec![usize::MAX; n];
    for &x in &order {
        let candidates: Vec<usize> = (0..n)
            .filter(|&y| {
                lattice.le(g[x], y)
                    && (0..n).all(|z| h[z] == usize::MAX || !lattice.le(z, x) || lattice.le(h[z], y))
            })
            .collect();
        h[x] = if candidates.is_empty() {
            top
        } else {
            candidates[rng.gen_range(0..candidates.len())]
        };
    }
    let values: Vec<Vec<usize>> = (0..n).map(|x| lattice.interval(g[x], h[x])).collect();
    Correspondence::new(lattice.clone(), lattice.clone(), values).expect("indices in range")
}

/// Random nonempty-valued correspondence repaired into a V-ascending one:
/// required meets and joins are added to the values until the defining
/// closure condition is stable, then re-verified.
pub fn v_ascending_on(lattice: &Poset, rng: &mut impl Rng, max_value_size: usize) -> Correspondence {
    let seeded = random_correspondence_on(lattice, rng, max_value_size, false);
    let n = lattice.len();
    let mut values: Vec<Vec<usize>> = seeded.values().to_vec();
    loop {
        let mut added = false;
        for x in 0..n {
            for x2 in 0..n {
                if !lattice.lt(x, x2) {
                    continue;
                }
                for yi in 0..values[x].len() {
                    for yj in 0..values[x2].len() {
                        let y = values[x][yi];
                        let y2 = values[x2][yj];
                        let join = lattice.join(y, y2).expect("lattice");
                        let meet = lattice.meet(y, y2).expect("lattice");
                        if !values[x2].contains(&join) {
                            values[x2].push(join);
                            added = true;
                        }
                        if !values[x].contains(&meet) {
                            values[x].push(meet);
                            added = true;
                        }
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    Correspondence::new(lattice.clone(), lattice.clone(), values).expect("indices in range")
}

/// Random finite lattice game: up to `max_players` players on random
/// complete lattices, with a mix of payoff flavors (opponent-only,
/// small random integers).
pub fn random_game(rng: &mut impl Rng, max_players: usize, max_lattice_size: usize) -> Result<LatticeGame> {
    let players = rng.gen_range(1..=max_players);
    let names: Vec<String> = (1..=players).map(|i| i.to_string()).collect();
    let strategies: Result<Vec<Poset>> = (0..players)
        .map(|_| random_complete_lattice(rng, max_lattice_size))
        .collect();
    let strategies = strategies?;
    let total: usize = strategies.iter().map(|s| s.len()).product();
    let mut payoffs = Vec::with_capacity(players);
    for i in 0..players {
        let own = strategies[i].len();
        let opponents = total / own;
        let table: Vec<Rational64> = if rng.gen_bool(0.4) {
            // Opponent-only payoff: constant in the player's own strategy.
            let base: Vec<i64> = (0..opponents).map(|_| rng.gen_range(-3..=3)).collect();
            (0..total)
                .map(|idx| Rational64::from_integer(base[opponent_index(&strategies, i, idx)]))
                .collect()
        } else {
            (0..total)
                .map(|_| Rational64::from_integer(rng.gen_range(-3..=3)))
                .collect()
        };
        payoffs.push(table);
    }
    LatticeGame::new(names, strategies, payoffs)
}

/// Collapses a row-major profile index to its opponent part for player `i`.
fn opponent_index(strategies: &[Poset], player: usize, mut idx: usize) -> usize {
    let mut parts = vec![0usize; strategies.len()];
    for k in (0..strategies.len()).rev() {
        parts[k] = idx % strategies[k].len();
        idx /= strategies[k].len();
    }
    let mut out = 0;
    for k in 0..strategies.len() {
        if k != player {
            out = out * strategies[k].len() + parts[k];
        }
    }
    out
}
