//! Fixed-point enumeration and extremal fixed points of self-correspondences.

use serde::{Deserialize, Serialize};

use crate::correspondence::{Correspondence, MonotonicityProperty};
use crate::error::{Error, Result};
use crate::poset::{StructureReport, DESK_CAP};

/// Fixed points of F together with the structure of the induced poset on
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixReport {
    pub fixed_points: Vec<String>,
    pub structure: StructureReport,
    pub largest: Option<String>,
    pub least: Option<String>,
    /// Whether every element of B_F lies above the least fixed point
    /// (evaluated only when a least fixed point exists).
    pub min_fix_below_b: Option<bool>,
}

/// Outcome of the sup-A_F / inf-B_F formula. No hypothesis is assumed; the
/// flags report whether the formula succeeded on this instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub candidate: String,
    pub is_fixed: bool,
    pub is_extremal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Largest,
    Least,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Exact enumeration of {x | x ∈ F(x)}.
pub fn fixed_points(f: &Correspondence) -> Result<Vec<usize>> {
    f.require_self()?;
    Ok((0..f.source().len())
        .filter(|&x| f.value(x).contains(&x))
        .collect())
}

/// Candidate sup A_F (or inf B_F) with outcome flags.
pub fn extremal_fixed_point(f: &Correspondence, side: Side) -> Result<ExtremalResult> {
    f.require_self()?;
    let (a, b) = f.pre_fixed_sets()?;
    let poset = f.source();
    let candidate = match side {
        Side::Largest => poset.sup(&a),
        Side::Least => poset.inf(&b),
    }
    .ok_or(Error::NoCandidate)?;
    let fix = fixed_points(f)?;
    let is_fixed = fix.contains(&candidate);
    let is_extremal = is_fixed
        && fix.iter().all(|&x| match side {
            Side::Largest => poset.le(x, candidate),
            Side::Least => poset.le(candidate, x),
        });
    Ok(ExtremalResult {
        candidate: poset.element(candidate).to_owned(),
        is_fixed,
        is_extremal,
    })
}

/// Kleene-style iteration of a single-valued increasing map from the
/// bottom (up) or top (down) element until stationary.
pub fn iterate_increasing(f: &Correspondence, direction: Direction) -> Result<usize> {
    f.require_self()?;
    let map = f.as_map().ok_or(Error::NotIncreasing)?;
    if !f
        .check_monotonicity(MonotonicityProperty::IncreasingMap)?
        .holds
    {
        return Err(Error::NotIncreasing);
    }
    let mut x = match direction {
        Direction::Up => f.source().bottom().ok_or(Error::NoBottom)?,
        Direction::Down => f.source().top().ok_or(Error::NoTop)?,
    };
    loop {
        let next = map[x];
        if next == x {
            return Ok(x);
        }
        x = next;
    }
}

/// A′_F: the sups of all nonempty subsets of Fix(F), plus the bottom
/// element. Enumerates subsets directly; capped at [`DESK_CAP`] fixed
/// points unless forced.
pub fn a_prime_set(f: &Correspondence, force: bool) -> Result<Vec<usize>> {
    f.require_self()?;
    if !f.source().classify().is_complete_lattice {
        return Err(Error::NotCompleteLattice);
    }
    let fix = fixed_points(f)?;
    if fix.len() > DESK_CAP && !force {
        return Err(Error::CapExceeded {
            size: fix.len(),
            cap: DESK_CAP,
        });
    }
    let bottom = f.source().bottom().expect("complete lattice has a bottom");
    let mut out = vec![bottom];
    for mask in 1u32..(1u32 << fix.len()) {
        let set: Vec<usize> = fix
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &x)| x)
            .collect();
        let s = f
            .source()
            .sup(&set)
            .expect("complete lattice has all sups");
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Builds the induced poset on Fix(F), classifies it, and records the
/// extremes; also compares the least fixed point against B_F.
pub fn fix_structure(f: &Correspondence) -> Result<FixReport> {
    f.require_self()?;
    let poset = f.source();
    let fix = fixed_points(f)?;
    let induced = poset.induced(&fix);
    let structure = induced.classify();
    let largest = fix
        .iter()
        .copied()
        .find(|&m| fix.iter().all(|&x| poset.le(x, m)));
    let least = fix
        .iter()
        .copied()
        .find(|&m| fix.iter().all(|&x| poset.le(m, x)));
    let min_fix_below_b = least.map(|l| {
        let (_, b) = f.pre_fixed_sets().expect("self-correspondence");
        b.iter().all(|&v| poset.le(l, v))
    });
    Ok(FixReport {
        fixed_points: poset.names_of(&fix),
        structure,
        largest: largest.map(|i| poset.element(i).to_owned()),
        least: least.map(|i| poset.element(i).to_owned()),
        min_fix_below_b,
    })
}

/// The increasing map on {0,1,2}×{0,1} whose fixed-point set is not a
/// sublattice of the ambient product.
#[cfg(test)]
pub(crate) fn grid_collapse_map() -> Correspondence {
    use crate::poset::Poset;
    let c3 = Poset::chain(&["0", "1", "2"]).unwrap();
    let c2 = Poset::chain(&["0", "1"]).unwrap();
    let x = Poset::product(&[&c3, &c2]).unwrap();
    let top = x.require("(2,1)").unwrap();
    let collapse = ["(1,1)", "(2,0)", "(2,1)"];
    Correspondence::from_map(x.clone(), |i| {
        if collapse.contains(&x.element(i)) {
            top
        } else {
            i
        }
    })
}
