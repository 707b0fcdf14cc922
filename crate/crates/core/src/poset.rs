//! Finite posets and lattices.
//!
//! A [`Poset`] stores its full reflexive-transitive order relation as a
//! boolean matrix, so order queries are O(1). Covers are derived on demand
//! for display. Elements are opaque string identifiers addressed by index.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Instances above this size refuse operations that enumerate all subsets,
/// unless `force` is passed.
pub const DESK_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// Row-major n*n matrix; `le[a * n + b]` means a <= b.
    le: Vec<bool>,
}

/// Structural classification of a finite poset, computed by [`Poset::classify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub nonempty: bool,
    pub is_lattice: bool,
    pub is_complete_lattice: bool,
    pub bottom: Option<String>,
    pub top: Option<String>,
    /// Least element exists and every nonempty chain has a sup.
    pub is_chain_complete: bool,
}

/// Chain enumeration mode for [`Poset::chains`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    Exhaustive,
    MaximalOnly,
}

impl Poset {
    /// Builds a poset from element ids and generator pairs. The order is the
    /// reflexive-transitive closure of the generators; antisymmetry is
    /// validated after closure.
    pub fn from_generators<S: AsRef<str>>(elements: &[S], generators: &[(S, S)]) -> Result<Poset> {
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(elements.len());
        for e in elements {
            let name = e.as_ref().to_owned();
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(Error::DuplicateElement(name));
            }
            names.push(name);
        }
        let n = names.len();
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for (a, b) in generators {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownElement(a.as_ref().to_owned()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownElement(b.as_ref().to_owned()))?;
            le[ia * n + ib] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if le[i * n + j] && le[j * n + i] {
                    return Err(Error::CycleDetected(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Poset {
            elements: names,
            index,
            le,
        })
    }

    /// A chain 0 < 1 < ... < n-1 with the given element names.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Poset> {
        let gens: Vec<(&S, &S)> = elements.windows(2).map(|w| (&w[0], &w[1])).collect();
        let gens: Vec<(String, String)> = gens
            .iter()
            .map(|(a, b)| (a.as_ref().to_owned(), b.as_ref().to_owned()))
            .collect();
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
        Poset::from_generators(&names, &gens)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// All common upper bounds of `set`.
    pub fn upper_bounds(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| set.iter().all(|&s| self.le(s, u)))
            .collect()
    }

    pub fn lower_bounds(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| set.iter().all(|&s| self.le(u, s)))
            .collect()
    }

    /// Least upper bound of `set` if it exists. `sup(∅)` is the bottom
    /// element when present.
    pub fn sup(&self, set: &[usize]) -> Option<usize> {
        let ubs = self.upper_bounds(set);
        ubs.iter()
            .copied()
            .find(|&u| ubs.iter().all(|&v| self.le(u, v)))
    }

    /// Greatest lower bound of `set` if it exists. `inf(∅)` is the top
    /// element when present.
    pub fn inf(&self, set: &[usize]) -> Option<usize> {
        let lbs = self.lower_bounds(set);
        lbs.iter()
            .copied()
            .find(|&l| lbs.iter().all(|&v| self.le(v, l)))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.sup(&[a, b])
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.inf(&[a, b])
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|x| self.le(b, x)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.le(x, t)))
    }

    /// Maximal elements of `set` within this poset's order.
    pub fn maximal_in(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&m| set.iter().all(|&y| !self.lt(m, y)))
            .collect()
    }

    pub fn minimal_in(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .copied()
            .filter(|&m| set.iter().all(|&y| !self.lt(y, m)))
            .collect()
    }

    /// The up-set [h, ∞).
    pub fn up_set(&self, h: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.le(h, x)).collect()
    }

    /// The down-set (−∞, h].
    pub fn down_set(&self, h: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.le(x, h)).collect()
    }

    /// The interval [a, b].
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.le(a, x) && self.le(x, b))
            .collect()
    }

    /// Structural flags. Complete-lattice detection uses the pairwise
    /// shortcut (valid on finite posets); the all-subsets definition is
    /// available separately for cross-checking.
    pub fn classify(&self) -> StructureReport {
        let n = self.len();
        let nonempty = n > 0;
        let mut is_lattice = nonempty;
        'outer: for a in 0..n {
            for b in a..n {
                if self.join(a, b).is_none() || self.meet(a, b).is_none() {
                    is_lattice = false;
                    break 'outer;
                }
            }
        }
        let bottom = self.bottom();
        let top = self.top();
        // On a finite poset every nonempty chain has a sup (its maximum),
        // so chain-completeness reduces to the existence of a least element.
        let is_chain_complete = nonempty && bottom.is_some();
        StructureReport {
            nonempty,
            is_lattice,
            is_complete_lattice: is_lattice,
            bottom: bottom.map(|b| self.elements[b].clone()),
            top: top.map(|t| self.elements[t].clone()),
            is_chain_complete,
        }
    }

    /// The all-subsets definition of a complete lattice, by exhaustive
    /// enumeration. Used to cross-check the `classify` shortcut.
    pub fn is_complete_lattice_exhaustive(&self, force: bool) -> Result<bool> {
        let n = self.len();
        if n > DESK_CAP && !force {
            return Err(Error::CapExceeded {
                size: n,
                cap: DESK_CAP,
            });
        }
        if n == 0 {
            return Ok(false);
        }
        for mask in 1u32..(1u32 << n) {
            let set: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if self.sup(&set).is_none() || self.inf(&set).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Chain-completeness checked literally by enumerating all nonempty
    /// chains. Cross-checks the shortcut used in `classify`.
    pub fn is_chain_complete_exhaustive(&self, force: bool) -> Result<bool> {
        if self.is_empty() || self.bottom().is_none() {
            return Ok(false);
        }
        let all: Vec<usize> = (0..self.len()).collect();
        let chains = self.chains(&all, ChainMode::Exhaustive, force)?;
        Ok(chains.iter().all(|c| self.sup(c).is_some()))
    }

    /// The poset on `members` with the restricted order.
    pub fn induced(&self, members: &[usize]) -> Poset {
        let names: Vec<String> = members.iter().map(|&i| self.elements[i].clone()).collect();
        let m = members.len();
        let mut index = HashMap::new();
        for (k, name) in names.iter().enumerate() {
            index.insert(name.clone(), k);
        }
        let mut le = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                le[a * m + b] = self.le(members[a], members[b]);
            }
        }
        Poset {
            elements: names,
            index,
            le,
        }
    }

    /// The order-reversed poset.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut le = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                le[a * n + b] = self.le(b, a);
            }
        }
        Poset {
            elements: self.elements.clone(),
            index: self.index.clone(),
            le,
        }
    }

    /// Componentwise-ordered product. Element ids are tuple strings
    /// `(x1,x2,...)`.
    pub fn product(factors: &[&Poset]) -> Result<Poset> {
        if factors.is_empty() {
            return Err(Error::EmptyProduct);
        }
        let mut tuples: Vec<Vec<usize>> = vec![vec![]];
        for f in factors {
            let mut next = Vec::with_capacity(tuples.len() * f.len());
            for t in &tuples {
                for i in 0..f.len() {
                    let mut t2 = t.clone();
                    t2.push(i);
                    next.push(t2);
                }
            }
            tuples = next;
        }
        let names: Vec<String> = tuples.iter().map(|t| tuple_name(factors, t)).collect();
        let n = names.len();
        let mut index = HashMap::new();
        for (k, name) in names.iter().enumerate() {
            index.insert(name.clone(), k);
        }
        let mut le = vec![false; n * n];
        for (a, ta) in tuples.iter().enumerate() {
            for (b, tb) in tuples.iter().enumerate() {
                le[a * n + b] = ta
                    .iter()
                    .zip(tb)
                    .enumerate()
                    .all(|(i, (&x, &y))| factors[i].le(x, y));
            }
        }
        Ok(Poset {
            elements: names,
            index,
            le,
        })
    }

    /// All nonempty chains inside `members`, or only the ⊆-maximal ones.
    /// Each chain is returned sorted ascending in the order; the list order
    /// is deterministic.
    pub fn chains(&self, members: &[usize], mode: ChainMode, force: bool) -> Result<Vec<Vec<usize>>> {
        if members.len() > DESK_CAP && !force {
            return Err(Error::CapExceeded {
                size: members.len(),
                cap: DESK_CAP,
            });
        }
        // Enumerate along a linear extension so chains come out ascending.
        let mut pool = members.to_vec();
        pool.sort_unstable();
        let mut sorted = Vec::with_capacity(pool.len());
        while !pool.is_empty() {
            let pos = pool
                .iter()
                .position(|&x| pool.iter().all(|&y| !self.lt(y, x)))
                .expect("antisymmetric order always has a minimal element");
            sorted.push(pool.remove(pos));
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_chains(&sorted, 0, &mut current, mode, &mut out);
        Ok(out)
    }

    fn extend_chains(
        &self,
        pool: &[usize],
        from: usize,
        current: &mut Vec<usize>,
        mode: ChainMode,
        out: &mut Vec<Vec<usize>>,
    ) {
        let mut extended = false;
        for k in from..pool.len() {
            let x = pool[k];
            if current.iter().all(|&c| self.comparable(c, x)) {
                // pool is sorted by a linear extension, so x goes on top.
                extended = true;
                current.push(x);
                self.extend_chains(pool, k + 1, current, mode, out);
                current.pop();
            }
        }
        if current.is_empty() {
            return;
        }
        match mode {
            ChainMode::Exhaustive => out.push(current.clone()),
            ChainMode::MaximalOnly => {
                // Maximal means no element of the pool extends it anywhere,
                // not just above the last index.
                if !extended {
                    let closed = pool.iter().any(|&x| {
                        !current.contains(&x) && current.iter().all(|&c| self.comparable(c, x))
                    });
                    if !closed {
                        out.push(current.clone());
                    }
                }
            }
        }
    }

    /// Cover pairs (a ⋖ b), for display.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn names_of(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&i| self.elements[i].clone()).collect()
    }
}

fn tuple_name(factors: &[&Poset], tuple: &[usize]) -> String {
    let parts: Vec<&str> = tuple
        .iter()
        .enumerate()
        .map(|(i, &x)| factors[i].element(x))
        .collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poset[{}]", self.elements.join(","))
    }
}

/// The diamond lattice 0 < a,b < 1 with a,b incomparable.
pub fn diamond() -> Poset {
    Poset::from_generators(
        &["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_structure() {
        let p = diamond();
        let a = p.require("a").unwrap();
        let b = p.require("b").unwrap();
        assert!(!p.comparable(a, b));
        assert_eq!(p.join(a, b), p.index_of("1"));
        assert_eq!(p.meet(a, b), p.index_of("0"));
        let report = p.classify();
        assert!(report.is_complete_lattice);
        assert_eq!(report.bottom.as_deref(), Some("0"));
        assert_eq!(report.top.as_deref(), Some("1"));
    }

    #[test]
    fn singleton() {
        let p = Poset::from_generators(&["x"], &[]).unwrap();
        assert_eq!(p.bottom(), p.top());
        assert_eq!(p.sup(&[0]), Some(0));
    }

    #[test]
    fn cycle_detected() {
        let err = Poset::from_generators(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::CycleDetected(_, _)));
    }

    #[test]
    fn duplicate_and_unknown() {
        assert!(matches!(
            Poset::from_generators(&["a", "a"], &[]),
            Err(Error::DuplicateElement(_))
        ));
        assert!(matches!(
            Poset::from_generators(&["a"], &[("a", "z")]),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn antichain_has_no_sup() {
        let p = Poset::from_generators(&["a", "b"], &[]).unwrap();
        assert_eq!(p.sup(&[0, 1]), None);
        let report = p.classify();
        assert!(!report.is_lattice);
        assert!(!report.is_chain_complete);
    }

    #[test]
    fn empty_sup_is_bottom() {
        let p = diamond();
        assert_eq!(p.sup(&[]), p.index_of("0"));
        assert_eq!(p.inf(&[]), p.index_of("1"));
        let antichain = Poset::from_generators(&["a", "b"], &[]).unwrap();
        assert_eq!(antichain.sup(&[]), None);
    }

    #[test]
    fn chain_classify() {
        let p = Poset::chain(&["0", "1", "2"]).unwrap();
        let report = p.classify();
        assert!(report.is_complete_lattice);
        assert_eq!(report.bottom.as_deref(), Some("0"));
        assert_eq!(report.top.as_deref(), Some("2"));
    }

    #[test]
    fn induced_restriction() {
        let p = diamond();
        let a = p.require("a").unwrap();
        let b = p.require("b").unwrap();
        let q = p.induced(&[a, b]);
        assert_eq!(q.len(), 2);
        assert!(!q.comparable(0, 1));
        // identity restriction
        let all: Vec<usize> = (0..p.len()).collect();
        assert_eq!(p.induced(&all), p);
    }

    #[test]
    fn product_square() {
        let c2 = Poset::chain(&["0", "1"]).unwrap();
        let sq = Poset::product(&[&c2, &c2]).unwrap();
        assert_eq!(sq.len(), 4);
        assert!(sq.classify().is_complete_lattice);
        let a = sq.require("(0,1)").unwrap();
        let b = sq.require("(1,0)").unwrap();
        assert_eq!(sq.join(a, b), sq.index_of("(1,1)"));
        assert!(matches!(Poset::product(&[]), Err(Error::EmptyProduct)));
    }

    #[test]
    fn product_unit_law() {
        let unit = Poset::from_generators(&["u"], &[]).unwrap();
        let d = diamond();
        let p = Poset::product(&[&unit, &d]).unwrap();
        assert_eq!(p.len(), d.len());
        for a in 0..d.len() {
            for b in 0..d.len() {
                assert_eq!(p.le(a, b), d.le(a, b));
            }
        }
    }

    #[test]
    fn chains_of_diamond() {
        let p = diamond();
        let all: Vec<usize> = (0..4).collect();
        let maximal = p.chains(&all, ChainMode::MaximalOnly, false).unwrap();
        assert_eq!(maximal.len(), 2);
        for c in &maximal {
            assert_eq!(c.len(), 3);
        }
        let exhaustive = p.chains(&all, ChainMode::Exhaustive, false).unwrap();
        // 4 singletons + 5 comparable pairs + 2 maximal 3-chains
        assert_eq!(exhaustive.len(), 11);
    }

    #[test]
    fn chains_of_chain_counts() {
        let p = Poset::chain(&["0", "1", "2", "3"]).unwrap();
        let all: Vec<usize> = (0..4).collect();
        let chains = p.chains(&all, ChainMode::Exhaustive, false).unwrap();
        assert_eq!(chains.len(), 15); // 2^4 - 1
    }

    #[test]
    fn chains_of_antichain() {
        let p = Poset::from_generators(&["a", "b"], &[]).unwrap();
        let chains = p.chains(&[0, 1], ChainMode::Exhaustive, false).unwrap();
        assert_eq!(chains, vec![vec![0], vec![1]]);
    }

    #[test]
    fn classify_shortcut_matches_exhaustive() {
        let samples = [
            diamond(),
            Poset::chain(&["0", "1", "2"]).unwrap(),
            Poset::from_generators(&["a", "b"], &[]).unwrap(),
            Poset::from_generators(&["0", "a", "b"], &[("0", "a"), ("0", "b")]).unwrap(),
        ];
        for p in &samples {
            assert_eq!(
                p.classify().is_complete_lattice,
                p.is_complete_lattice_exhaustive(false).unwrap()
            );
            assert_eq!(
                p.classify().is_chain_complete,
                p.is_chain_complete_exhaustive(false).unwrap()
            );
        }
    }

    #[test]
    fn duality() {
        let p = diamond();
        let d = p.dual();
        let a = p.require("a").unwrap();
        let b = p.require("b").unwrap();
        assert_eq!(p.inf(&[a, b]), d.sup(&[a, b]));
        assert_eq!(p.bottom(), d.top());
    }

    #[test]
    fn cap_enforced() {
        let names: Vec<String> = (0..17).map(|i| format!("e{i}")).collect();
        let p = Poset::from_generators(&names, &[]).unwrap();
        assert!(matches!(
            p.is_complete_lattice_exhaustive(false),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn finite_chain_contains_its_extremes() {
        let p = diamond();
        let all: Vec<usize> = (0..4).collect();
        for c in p.chains(&all, ChainMode::Exhaustive, false).unwrap() {
            let s = p.sup(&c).unwrap();
            let i = p.inf(&c).unwrap();
            assert!(c.contains(&s));
            assert!(c.contains(&i));
        }
    }
}
