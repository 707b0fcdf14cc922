//! Finite normal-form games on strategy lattices, payoff-property
//! checkers, best replies, and Nash-equilibrium enumeration.
//!
//! Payoffs are exact rationals so argmax ties are semantic, never numeric
//! noise.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::correspondence::{string_enum, Correspondence, Verdict};
use crate::error::{Error, Result};
use crate::fixpoint::{self, FixReport};
use crate::poset::{ChainMode, Poset};
use crate::report::{HypothesisReport, TheoremId, ValidationReport};

string_enum!(PayoffProperty {
    PartiallyQuasiSupermodular => "partially-quasi-supermodular",
    QuasiSupermodular => "quasi-supermodular",
    JoinSuperextremal => "join-superextremal",
    SingleCrossing => "single-crossing",
    UpwardUsc => "upward-usc",
});

/// A normal-form game whose strategy sets are finite lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeGame {
    players: Vec<String>,
    strategies: Vec<Poset>,
    /// payoffs[player][profile_index], profiles in row-major order
    /// (last player's strategy varies fastest, matching `Poset::product`).
    payoffs: Vec<Vec<Rational64>>,
}

impl LatticeGame {
    pub fn new(
        players: Vec<String>,
        strategies: Vec<Poset>,
        payoffs: Vec<Vec<Rational64>>,
    ) -> Result<LatticeGame> {
        if players.is_empty() || players.len() != strategies.len() {
            return Err(Error::IncompatibleInstance(
                "players and strategy lattices must be nonempty and match".into(),
            ));
        }
        for (i, s) in strategies.iter().enumerate() {
            if !s.classify().is_lattice {
                return Err(Error::IncompatibleInstance(format!(
                    "strategy poset of player `{}` is not a lattice",
                    players[i]
                )));
            }
        }
        let total: usize = strategies.iter().map(|s| s.len()).product();
        if payoffs.len() != players.len() || payoffs.iter().any(|p| p.len() != total) {
            return Err(Error::IncompatibleInstance(
                "payoff tables must be total over all profiles".into(),
            ));
        }
        Ok(LatticeGame {
            players,
            strategies,
            payoffs,
        })
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn strategies(&self) -> &[Poset] {
        &self.strategies
    }

    pub fn payoffs(&self) -> &[Vec<Rational64>] {
        &self.payoffs
    }

    pub fn player_index(&self, name: &str) -> Result<usize> {
        self.players
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::UnknownPlayer(name.to_owned()))
    }

    pub fn num_profiles(&self) -> usize {
        self.strategies.iter().map(|s| s.len()).product()
    }

    pub fn profile_index(&self, profile: &[usize]) -> Result<usize> {
        if profile.len() != self.players.len()
            || profile
                .iter()
                .zip(&self.strategies)
                .any(|(&x, s)| x >= s.len())
        {
            return Err(Error::IncompatibleProfile);
        }
        let mut idx = 0;
        for (&x, s) in profile.iter().zip(&self.strategies) {
            idx = idx * s.len() + x;
        }
        Ok(idx)
    }

    pub fn profile_of_index(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.players.len()];
        for i in (0..self.players.len()).rev() {
            let n = self.strategies[i].len();
            out[i] = idx % n;
            idx /= n;
        }
        out
    }

    pub fn profiles(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.num_profiles()).map(|i| self.profile_of_index(i))
    }

    pub fn profile_name(&self, profile: &[usize]) -> String {
        let parts: Vec<&str> = profile
            .iter()
            .zip(&self.strategies)
            .map(|(&x, s)| s.element(x))
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn payoff(&self, player: usize, profile: &[usize]) -> Result<Rational64> {
        Ok(self.payoffs[player][self.profile_index(profile)?])
    }

    fn section(&self, player: usize, profile: &[usize]) -> Result<Vec<Rational64>> {
        let mut p = profile.to_vec();
        (0..self.strategies[player].len())
            .map(|y| {
                p[player] = y;
                self.payoff(player, &p)
            })
            .collect()
    }

    /// Checks a payoff regularity property of player `player`'s payoff.
    ///
    /// All properties except single-crossing apply to the section
    /// f_i(·, x_{-i}) on S_i; single-crossing quantifies over S_i × S_{-i}
    /// and ignores the supplied profile.
    pub fn check_payoff_property(
        &self,
        player: usize,
        profile: &[usize],
        prop: PayoffProperty,
    ) -> Result<Verdict> {
        if player >= self.players.len() {
            return Err(Error::UnknownPlayer(format!("#{player}")));
        }
        match prop {
            PayoffProperty::SingleCrossing => self.check_single_crossing(player),
            _ => {
                let f = self.section(player, profile)?;
                let s = &self.strategies[player];
                match prop {
                    PayoffProperty::PartiallyQuasiSupermodular => {
                        Ok(check_partially_quasi_supermodular(s, &f))
                    }
                    PayoffProperty::QuasiSupermodular => Ok(check_quasi_supermodular(s, &f)),
                    PayoffProperty::JoinSuperextremal => Ok(check_join_superextremal(s, &f)),
                    PayoffProperty::UpwardUsc => check_upward_usc(s, &f),
                    PayoffProperty::SingleCrossing => unreachable!(),
                }
            }
        }
    }

    /// Milgrom–Shannon single crossing of f_i in (x_i; x_{-i}).
    fn check_single_crossing(&self, player: usize) -> Result<Verdict> {
        let s = &self.strategies[player];
        let opponents: Vec<&Poset> = self
            .strategies
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != player)
            .map(|(_, p)| p)
            .collect();
        let opp_profiles = cartesian(&opponents);
        let opp_le = |a: &[usize], b: &[usize]| {
            a.iter()
                .zip(b)
                .enumerate()
                .all(|(k, (&x, &y))| opponents[k].le(x, y))
        };
        let full = |own: usize, opp: &[usize]| {
            let mut p = Vec::with_capacity(self.players.len());
            let mut k = 0;
            for j in 0..self.players.len() {
                if j == player {
                    p.push(own);
                } else {
                    p.push(opp[k]);
                    k += 1;
                }
            }
            p
        };
        for lo in 0..s.len() {
            for hi in 0..s.len() {
                if !s.le(lo, hi) {
                    continue;
                }
                for olo in &opp_profiles {
                    for ohi in &opp_profiles {
                        if !opp_le(olo, ohi) {
                            continue;
                        }
                        let f_hi_lo = self.payoff(player, &full(hi, olo))?;
                        let f_lo_lo = self.payoff(player, &full(lo, olo))?;
                        let f_hi_hi = self.payoff(player, &full(hi, ohi))?;
                        let f_lo_hi = self.payoff(player, &full(lo, ohi))?;
                        let weak_broken = f_hi_lo >= f_lo_lo && !(f_hi_hi >= f_lo_hi);
                        let strict_broken = f_hi_lo > f_lo_lo && !(f_hi_hi > f_lo_hi);
                        if weak_broken || strict_broken {
                            return Ok(Verdict::fail(vec![
                                ("x_i", s.element(lo).to_owned()),
                                ("x_i'", s.element(hi).to_owned()),
                                ("x_-i", self.opp_name(player, olo)),
                                ("x_-i'", self.opp_name(player, ohi)),
                            ]));
                        }
                    }
                }
            }
        }
        Ok(Verdict::pass())
    }

    fn opp_name(&self, player: usize, opp: &[usize]) -> String {
        let mut parts = Vec::new();
        let mut k = 0;
        for j in 0..self.players.len() {
            if j != player {
                parts.push(self.strategies[j].element(opp[k]).to_owned());
                k += 1;
            }
        }
        format!("({})", parts.join(","))
    }

    /// Exact argmax of player `player`'s payoff against `profile`'s
    /// opponents.
    pub fn best_reply(&self, player: usize, profile: &[usize]) -> Result<Vec<usize>> {
        if player >= self.players.len() {
            return Err(Error::UnknownPlayer(format!("#{player}")));
        }
        let f = self.section(player, profile)?;
        let best = f.iter().max().copied().expect("nonempty strategy lattice");
        Ok((0..f.len()).filter(|&y| f[y] == best).collect())
    }

    /// The joint best reply R: S → 2^S as a self-correspondence on the
    /// product lattice.
    pub fn joint_best_reply(&self) -> Result<Correspondence> {
        let factors: Vec<&Poset> = self.strategies.iter().collect();
        let product = Poset::product(&factors)?;
        let mut values = Vec::with_capacity(self.num_profiles());
        for x in self.profiles() {
            let replies: Result<Vec<Vec<usize>>> = (0..self.players.len())
                .map(|i| self.best_reply(i, &x))
                .collect();
            let replies = replies?;
            let mut value = Vec::new();
            for q in cartesian_owned(&replies) {
                value.push(self.profile_index(&q)?);
            }
            values.push(value);
        }
        Correspondence::new(product.clone(), product, values)
    }

    /// Nash equilibria as fixed points of the joint best reply, with the
    /// structure of the induced poset on them.
    pub fn nash_equilibria(&self) -> Result<FixReport> {
        fixpoint::fix_structure(&self.joint_best_reply()?)
    }

    /// Nash equilibria straight from the inequality definition, as an
    /// independent route for cross-checking.
    pub fn nash_equilibria_direct(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        for x in self.profiles() {
            let mut eq = true;
            'outer: for i in 0..self.players.len() {
                let fx = self.payoff(i, &x)?;
                let mut dev = x.clone();
                for y in 0..self.strategies[i].len() {
                    dev[i] = y;
                    if self.payoff(i, &dev)? > fx {
                        eq = false;
                        break 'outer;
                    }
                }
            }
            if eq {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Hypothesis checklist for the equilibrium-structure result on this
    /// game, plus the conclusion check.
    pub fn check_game(&self) -> Result<ValidationReport> {
        let mut hyp = HypothesisReport::new(TheoremId::Game76);

        let complete = self
            .strategies
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if s.classify().is_complete_lattice {
                    Verdict::pass()
                } else {
                    Verdict::fail(vec![("player", self.players[i].clone())])
                }
            })
            .fold(Verdict::pass(), Verdict::and);
        hyp.push("strategy lattices complete", complete);

        hyp.push(
            "def-7.4-1: sections partially quasi-supermodular",
            self.for_each_section(PayoffProperty::PartiallyQuasiSupermodular)?,
        );
        let sc = (0..self.players.len())
            .map(|i| self.check_single_crossing(i))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(Verdict::pass(), Verdict::and);
        hyp.push("def-7.4-2: single crossing", sc);
        hyp.push("7.6-1: chains bounded below in payoff", self.check_chain_liminf()?);
        hyp.push(
            "7.6-2a: sections join-superextremal",
            self.for_each_section(PayoffProperty::JoinSuperextremal)?,
        );
        hyp.push(
            "7.6-2b: sections upward upper semicontinuous",
            self.for_each_section(PayoffProperty::UpwardUsc)?,
        );

        let report = self.nash_equilibria()?;
        let conclusion = if report.structure.nonempty && report.structure.is_complete_lattice {
            Verdict::pass()
        } else {
            Verdict::fail(vec![(
                "equilibria",
                format!("{:?}", report.fixed_points),
            )])
        };
        Ok(ValidationReport::from_parts(hyp, conclusion))
    }

    fn for_each_section(&self, prop: PayoffProperty) -> Result<Verdict> {
        for i in 0..self.players.len() {
            for x in self.profiles() {
                let v = self.check_payoff_property(i, &x, prop)?;
                if !v.holds {
                    let mut w = vec![
                        ("player".to_owned(), self.players[i].clone()),
                        ("profile".to_owned(), self.profile_name(&x)),
                    ];
                    w.extend(v.witness);
                    return Ok(Verdict { holds: false, witness: w });
                }
            }
        }
        Ok(Verdict::pass())
    }

    /// For every chain C in S_i there must be b ≤ C whose payoff is at
    /// least the liminf along C; on a finite chain the liminf is the value
    /// at min C, and b = min C always works. Checked literally.
    fn check_chain_liminf(&self) -> Result<Verdict> {
        for i in 0..self.players.len() {
            let s = &self.strategies[i];
            let all: Vec<usize> = (0..s.len()).collect();
            let chains = s.chains(&all, ChainMode::Exhaustive, true)?;
            for x in self.profiles() {
                let f = self.section(i, &x)?;
                for chain in &chains {
                    let min = chain[0];
                    let ok = (0..s.len())
                        .any(|b| chain.iter().all(|&c| s.le(b, c)) && f[b] >= f[min]);
                    if !ok {
                        return Ok(Verdict::fail(vec![
                            ("player", self.players[i].clone()),
                            ("profile", self.profile_name(&x)),
                            ("chain-min", s.element(min).to_owned()),
                        ]));
                    }
                }
            }
        }
        Ok(Verdict::pass())
    }
}

fn cartesian(factors: &[&Poset]) -> Vec<Vec<usize>> {
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    cartesian_sizes(&sizes)
}

fn cartesian_owned(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for t in &out {
            for &x in c {
                let mut t2 = t.clone();
                t2.push(x);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

fn cartesian_sizes(sizes: &[usize]) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = sizes.iter().map(|&n| (0..n).collect()).collect();
    cartesian_owned(&choices)
}

fn check_partially_quasi_supermodular(s: &Poset, f: &[Rational64]) -> Verdict {
    for x in 0..s.len() {
        for x2 in 0..s.len() {
            let j = s.join(x, x2).expect("lattice");
            let m = s.meet(x, x2).expect("lattice");
            let weak = !(f[x2] >= f[j]) || (0..s.len()).any(|u| s.le(u, m) && f[u] >= f[x]);
            let strict = !(f[x2] > f[j]) || (0..s.len()).any(|u| s.le(u, m) && f[u] > f[x]);
            if !weak || !strict {
                return Verdict::fail(vec![
                    ("x", s.element(x).to_owned()),
                    ("x'", s.element(x2).to_owned()),
                    (
                        "variant",
                        if weak { "strict" } else { "weak" }.to_owned(),
                    ),
                ]);
            }
        }
    }
    Verdict::pass()
}

fn check_quasi_supermodular(s: &Poset, f: &[Rational64]) -> Verdict {
    for x in 0..s.len() {
        for x2 in 0..s.len() {
            let j = s.join(x, x2).expect("lattice");
            let m = s.meet(x, x2).expect("lattice");
            let weak = !(f[x] >= f[m]) || f[j] >= f[x2];
            let strict = !(f[x] > f[m]) || f[j] > f[x2];
            if !weak || !strict {
                return Verdict::fail(vec![
                    ("x", s.element(x).to_owned()),
                    ("x'", s.element(x2).to_owned()),
                    (
                        "variant",
                        if weak { "strict" } else { "weak" }.to_owned(),
                    ),
                ]);
            }
        }
    }
    Verdict::pass()
}

fn check_join_superextremal(s: &Poset, f: &[Rational64]) -> Verdict {
    for x in 0..s.len() {
        for x2 in 0..s.len() {
            let j = s.join(x, x2).expect("lattice");
            let m = s.meet(x, x2).expect("lattice");
            if !(f[m] >= f[x].min(f[x2]) || f[j] >= f[x]) {
                return Verdict::fail(vec![
                    ("x", s.element(x).to_owned()),
                    ("x'", s.element(x2).to_owned()),
                ]);
            }
        }
    }
    Verdict::pass()
}

/// On a finite lattice the limit along a chain toward its sup is the value
/// at the maximum, so the inequality is checked literally per chain.
fn check_upward_usc(s: &Poset, f: &[Rational64]) -> Result<Verdict> {
    let all: Vec<usize> = (0..s.len()).collect();
    for chain in s.chains(&all, ChainMode::Exhaustive, true)? {
        let sup = s.sup(&chain).expect("finite chain has its max as sup");
        let max = *chain.last().expect("nonempty chain");
        if !(f[max] <= f[sup]) {
            return Ok(Verdict::fail(vec![("chain-max", s.element(max).to_owned())]));
        }
    }
    Ok(Verdict::pass())
}
