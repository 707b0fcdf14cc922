//! Per-theorem hypothesis checklists and conclusion validation.
//!
//! Every hypothesis is checked by exhaustive quantification over the
//! finite instance; conclusions are checked by brute force through the
//! fixpoint module. A report with `sound == false` is an implementation
//! bug, never an acceptable outcome.

use crate::correspondence::{
    string_enum, Correspondence, MonotonicityProperty, ValueCondition, Verdict, VALUE_ENUM_CAP,
};
use crate::error::{Error, Result};
use crate::fixpoint::{self, Side};
use crate::oracle::Instance;
use crate::poset::{ChainMode, Poset};
use crate::report::{HypothesisReport, TheoremId, ValidationReport};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Instance cap for the selection-quantified hypotheses.
pub const SELECTION_CAP: usize = 8;

/// Per-(U,V) budget on the number of enumerated selection pairs.
const SELECTION_BUDGET: usize = 1 << 14;

#[derive(Debug, Clone, Default)]
pub struct ValidateOptions {
    /// Auxiliary correspondence (the M of the extremal theorem); defaults
    /// to the maximal-element (dually: minimal-element) correspondence.
    pub aux: Option<Correspondence>,
    /// Check the dual orientation where the statement has one.
    pub dual: bool,
}

/// Runs the full hypothesis checklist plus the conclusion check.
pub fn validate(t: TheoremId, instance: &Instance, opts: &ValidateOptions) -> Result<ValidationReport> {
    match (t, instance) {
        (TheoremId::Game76, Instance::Game(g)) => g.check_game(),
        (TheoremId::Game76, _) => Err(Error::IncompatibleInstance(
            "game-7.6 needs a game instance".into(),
        )),
        (_, Instance::Correspondence(f)) => validate_on(t, f, opts),
        (_, Instance::Game(g)) => validate_on(t, &g.joint_best_reply()?, opts),
        (_, Instance::Poset(_)) => Err(Error::IncompatibleInstance(
            "theorem validation needs a correspondence or game instance".into(),
        )),
    }
}

fn validate_on(t: TheoremId, f: &Correspondence, opts: &ValidateOptions) -> Result<ValidationReport> {
    let hyp = check_hypotheses(t, f, opts.aux.as_ref(), opts.dual)?;
    let conclusion = check_conclusion(t, f, opts.dual)?;
    Ok(ValidationReport::from_parts(hyp, conclusion))
}

/// One Verdict per enumerated assumption of theorem `t` on the
/// self-correspondence `f`.
pub fn check_hypotheses(
    t: TheoremId,
    f: &Correspondence,
    aux: Option<&Correspondence>,
    dual: bool,
) -> Result<HypothesisReport> {
    f.require_self()?;
    let mut h = HypothesisReport::new(t);
    match t {
        TheoremId::Tarski => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push("increasing map", increasing_map(f)?);
        }
        TheoremId::VeinottZhou => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push("ascending", mono(f, MonotonicityProperty::Ascending)?);
            h.push("values nonempty", values(f, ValueCondition::Nonempty)?);
            h.push(
                "values subcomplete sublattices",
                values(f, ValueCondition::SubcompleteSublattice)?,
            );
        }
        TheoremId::Calciano16 => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push("values nonempty", values(f, ValueCondition::Nonempty)?);
            h.push(
                "1: values have a greatest element",
                values(f, ValueCondition::HasGreatest)?,
            );
            h.push("2: upper increasing", mono(f, MonotonicityProperty::UpperIncreasing)?);
            h.push(
                "3: strongly lower increasing",
                mono(f, MonotonicityProperty::StronglyLowerIncreasing)?,
            );
            h.push(
                "4: truncated values have a least element whenever nonempty",
                truncation_least_when_nonempty(f)?,
            );
        }
        TheoremId::Sabarwal17 => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push("values nonempty", values(f, ValueCondition::Nonempty)?);
            h.push("I: max F exists and is increasing", extremum_map_increasing(f, true));
            h.push(
                "II: min of truncations exists and is increasing",
                truncation_min_map_increasing(f)?,
            );
        }
        TheoremId::WeakZhouChain => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push("v-ascending", mono(f, MonotonicityProperty::VAscending)?);
            h.push("values nonempty", values(f, ValueCondition::Nonempty)?);
            h.push(
                "values chain-subcomplete in X",
                values(f, ValueCondition::ChainSubcompleteUpwards)?
                    .and(values(f, ValueCondition::ChainSubcompleteDownwards)?),
            );
        }
        TheoremId::WeakZhouComplete => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push("v-ascending", mono(f, MonotonicityProperty::VAscending)?);
            h.push("values nonempty", values(f, ValueCondition::Nonempty)?);
            h.push("values are complete lattices", values_complete_lattices(f));
        }
        TheoremId::Thm19 => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push("v-ascending", mono(f, MonotonicityProperty::VAscending)?);
            h.push("values nonempty", values(f, ValueCondition::Nonempty)?);
            h.push(
                "values chain-complete downwards",
                values_chain_complete_downwards(f)?,
            );
            h.push(
                "values chain-bounded above",
                values(f, ValueCondition::ChainBoundedAbove)?,
            );
        }
        TheoremId::Thm24Plain => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push(
                "a: values nonempty and chain-subcomplete downwards",
                values(f, ValueCondition::Nonempty)?
                    .and(values(f, ValueCondition::ChainSubcompleteDownwards)?),
            );
            h.push(
                "b: values chain-bounded above",
                values(f, ValueCondition::ChainBoundedAbove)?,
            );
            h.push("c1: lower V-ascending", mono(f, MonotonicityProperty::LowerVAscending)?);
            h.push("c2: upper C-ascending", mono(f, MonotonicityProperty::UpperCAscending)?);
        }
        TheoremId::Thm24Dual => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push(
                "a: values nonempty and chain-subcomplete upwards",
                values(f, ValueCondition::Nonempty)?
                    .and(values(f, ValueCondition::ChainSubcompleteUpwards)?),
            );
            h.push(
                "b: values chain-bounded below",
                values(f, ValueCondition::ChainBoundedBelow)?,
            );
            h.push("c1: upper V-ascending", mono(f, MonotonicityProperty::UpperVAscending)?);
            h.push("c2: lower C-ascending", mono(f, MonotonicityProperty::LowerCAscending)?);
        }
        TheoremId::Thm31 => {
            let default_m;
            let m = match aux {
                Some(m) => m,
                None => {
                    default_m = extremal_element_correspondence(f, dual);
                    &default_m
                }
            };
            m.require_self()?;
            if m.source() != f.source() {
                return Err(Error::IncompatibleInstance(
                    "auxiliary correspondence must live on the same poset".into(),
                ));
            }
            h.push("domain: nonempty poset", domain_nonempty(f));
            h.push("A: values nonempty and M(x) within F(x)", thm31_a(f, m)?);
            h.push(
                if dual {
                    "B: every y in F(x) is above some z in M(x)"
                } else {
                    "B: every y in F(x) is below some z in M(x)"
                },
                thm31_b(f, m, dual),
            );
            h.push("C: M(x) totally below M(x') for x < x'", total_comparison(m));
            let (a, b) = f.pre_fixed_sets()?;
            let pre = if dual { &b } else { &a };
            h.push(
                if dual { "D: B_F nonempty" } else { "D: A_F nonempty" },
                nonempty_set(pre),
            );
            h.push(
                if dual { "E: inf of B_F exists" } else { "E: sup of A_F exists" },
                extremum_exists(f.source(), pre, dual),
            );
        }
        TheoremId::CalcianoExtremal => {
            h.push("domain: nonempty poset", domain_nonempty(f));
            if dual {
                h.push("lower increasing", mono(f, MonotonicityProperty::LowerIncreasing)?);
                h.push(
                    "1: values nonempty with a least element",
                    values(f, ValueCondition::Nonempty)?.and(values(f, ValueCondition::HasLeast)?),
                );
            } else {
                h.push("upper increasing", mono(f, MonotonicityProperty::UpperIncreasing)?);
                h.push(
                    "1: values nonempty with a greatest element",
                    values(f, ValueCondition::Nonempty)?.and(values(f, ValueCondition::HasGreatest)?),
                );
            }
            let (a, b) = f.pre_fixed_sets()?;
            let pre = if dual { &b } else { &a };
            h.push(
                if dual { "2: B_F nonempty" } else { "2: A_F nonempty" },
                nonempty_set(pre),
            );
            h.push(
                if dual { "3: inf of B_F exists" } else { "3: sup of A_F exists" },
                extremum_exists(f.source(), pre, dual),
            );
        }
        TheoremId::Lemma34 => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            if dual {
                h.push("lower C-ascending", mono(f, MonotonicityProperty::LowerCAscending)?);
                h.push("values nonempty", values(f, ValueCondition::Nonempty)?);
                h.push(
                    "values chain-bounded below",
                    values(f, ValueCondition::ChainBoundedBelow)?,
                );
            } else {
                h.push("upper C-ascending", mono(f, MonotonicityProperty::UpperCAscending)?);
                h.push("values nonempty", values(f, ValueCondition::Nonempty)?);
                h.push(
                    "values chain-bounded above",
                    values(f, ValueCondition::ChainBoundedAbove)?,
                );
            }
        }
        TheoremId::Thm51 => {
            h.push("domain: nonempty complete lattice", domain_complete_lattice(f));
            h.push("values nonempty", values(f, ValueCondition::Nonempty)?);
            h.push(
                "i: values chain-bounded above",
                values(f, ValueCondition::ChainBoundedAbove)?,
            );
            h.push(
                "ii: maximal elements increase across strict pairs",
                maximal_comparison(f),
            );
            let (iii, iv) = thm51_truncation_items(f)?;
            h.push("iii: truncated values chain-bounded below", iii);
            h.push(
                "iv: minimal elements of truncations increase across strict pairs",
                iv,
            );
        }
        TheoremId::AbianBrown61 => {
            h.push(
                "domain: nonempty poset with sups of chains",
                domain_chains_have_sups(f.source())?,
            );
            h.push(
                "1: selections on chains admit dominating values",
                abian_brown_selection(f)?,
            );
            let (a, _) = f.pre_fixed_sets()?;
            h.push("2: A_F nonempty", nonempty_set(&a));
        }
        TheoremId::Markowsky62 => {
            let s = f.source().classify();
            h.push(
                "a: domain chain-complete",
                if s.is_chain_complete {
                    Verdict::pass()
                } else {
                    Verdict::fail(vec![("reason", "no least element or empty".into())])
                },
            );
            h.push(
                "b: selections sandwich through intermediate values",
                markowsky_selection(f)?,
            );
        }
        TheoremId::Game76 => {
            return Err(Error::IncompatibleInstance(
                "game-7.6 needs a game instance".into(),
            ));
        }
    }
    Ok(h)
}

fn check_conclusion(t: TheoremId, f: &Correspondence, dual: bool) -> Result<Verdict> {
    let side = if dual { Side::Least } else { Side::Largest };
    match t {
        TheoremId::Tarski => {
            let lattice = fix_complete_lattice(f)?;
            let largest = extremal_conclusion(f, Side::Largest)?;
            let least = extremal_conclusion(f, Side::Least)?;
            Ok(lattice.and(largest).and(least))
        }
        TheoremId::Thm31 | TheoremId::CalcianoExtremal | TheoremId::Lemma34 => {
            extremal_conclusion(f, side)
        }
        TheoremId::AbianBrown61 => {
            let fix = fixpoint::fixed_points(f)?;
            if fix.is_empty() {
                Ok(Verdict::fail(vec![("reason", "no fixed point".into())]))
            } else {
                Ok(Verdict::pass())
            }
        }
        TheoremId::Markowsky62 => {
            let report = fixpoint::fix_structure(f)?;
            let least = match &report.least {
                Some(_) => Verdict::pass(),
                None => Verdict::fail(vec![("reason", "Fix has no least element".into())]),
            };
            let below_b = match report.min_fix_below_b {
                Some(true) => Verdict::pass(),
                _ => Verdict::fail(vec![("reason", "min Fix not below B_F".into())]),
            };
            let chain_complete = if report.structure.is_chain_complete {
                Verdict::pass()
            } else {
                Verdict::fail(vec![("reason", "Fix not chain-complete".into())])
            };
            Ok(least.and(below_b).and(chain_complete))
        }
        TheoremId::Game76 => unreachable!("handled in validate"),
        _ => fix_complete_lattice(f),
    }
}

// ---- shared checks ----

/// Maps "the target is not a lattice" into a failing hypothesis verdict:
/// the setting requirement is part of the checklist, not a hard error.
fn as_verdict(r: Result<Verdict>) -> Result<Verdict> {
    match r {
        Err(Error::TargetNotLattice(p)) => Ok(Verdict::fail(vec![(
            "reason",
            format!("domain is not a lattice, required by {p}"),
        )])),
        other => other,
    }
}

fn mono(f: &Correspondence, prop: MonotonicityProperty) -> Result<Verdict> {
    as_verdict(f.check_monotonicity(prop))
}

fn values(f: &Correspondence, cond: ValueCondition) -> Result<Verdict> {
    as_verdict(f.check_values(cond))
}

fn increasing_map(f: &Correspondence) -> Result<Verdict> {
    if !f.is_single_valued() {
        return Ok(Verdict::fail(vec![("reason", "not single-valued".into())]));
    }
    f.check_monotonicity(MonotonicityProperty::IncreasingMap)
}

fn domain_complete_lattice(f: &Correspondence) -> Verdict {
    let s = f.source().classify();
    if s.nonempty && s.is_complete_lattice {
        Verdict::pass()
    } else {
        Verdict::fail(vec![("reason", "domain is not a nonempty complete lattice".into())])
    }
}

fn domain_nonempty(f: &Correspondence) -> Verdict {
    if f.source().is_empty() {
        Verdict::fail(vec![("reason", "empty domain".into())])
    } else {
        Verdict::pass()
    }
}

/// Every nonempty chain of the domain has a least upper bound.
fn domain_chains_have_sups(p: &Poset) -> Result<Verdict> {
    if p.is_empty() {
        return Ok(Verdict::fail(vec![("reason", "empty domain".into())]));
    }
    let all: Vec<usize> = (0..p.len()).collect();
    for chain in p.chains(&all, ChainMode::Exhaustive, true)? {
        if p.sup(&chain).is_none() {
            return Ok(Verdict::fail(vec![(
                "chain-max",
                p.element(*chain.last().unwrap()).to_owned(),
            )]));
        }
    }
    Ok(Verdict::pass())
}

fn nonempty_set(set: &[usize]) -> Verdict {
    if set.is_empty() {
        Verdict::fail(vec![("reason", "empty".into())])
    } else {
        Verdict::pass()
    }
}

fn extremum_exists(p: &Poset, set: &[usize], dual: bool) -> Verdict {
    let found = if dual { p.inf(set) } else { p.sup(set) };
    if found.is_some() {
        Verdict::pass()
    } else {
        Verdict::fail(vec![("reason", "no extremum".into())])
    }
}

fn fix_complete_lattice(f: &Correspondence) -> Result<Verdict> {
    let report = fixpoint::fix_structure(f)?;
    if report.structure.nonempty && report.structure.is_complete_lattice {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::fail(vec![(
            "fixed-points",
            format!("[{}]", report.fixed_points.join(",")),
        )]))
    }
}

fn extremal_conclusion(f: &Correspondence, side: Side) -> Result<Verdict> {
    match fixpoint::extremal_fixed_point(f, side) {
        Ok(r) if r.is_extremal => Ok(Verdict::pass()),
        Ok(r) => Ok(Verdict::fail(vec![
            ("candidate", r.candidate),
            ("is-fixed", r.is_fixed.to_string()),
        ])),
        Err(Error::NoCandidate) => {
            Ok(Verdict::fail(vec![("reason", "candidate extremum does not exist".into())]))
        }
        Err(e) => Err(e),
    }
}

/// Every value, as a poset with the induced order, is a complete lattice.
fn values_complete_lattices(f: &Correspondence) -> Verdict {
    for x in 0..f.source().len() {
        let induced = f.target().induced(f.value(x));
        if !induced.classify().is_complete_lattice {
            return Verdict::fail(vec![("x", f.source().element(x).to_owned())]);
        }
    }
    Verdict::pass()
}

/// Every nonempty chain inside a value has an inf within the value (in the
/// induced order). Values beyond the enumeration cap pass by the
/// finite-chain shortcut.
fn values_chain_complete_downwards(f: &Correspondence) -> Result<Verdict> {
    for x in 0..f.source().len() {
        let v = f.value(x);
        if v.is_empty() || v.len() > VALUE_ENUM_CAP {
            continue;
        }
        let induced = f.target().induced(v);
        let all: Vec<usize> = (0..induced.len()).collect();
        for chain in induced.chains(&all, ChainMode::Exhaustive, true)? {
            if induced.inf(&chain).is_none() {
                return Ok(Verdict::fail(vec![
                    ("x", f.source().element(x).to_owned()),
                    ("chain-min", induced.element(chain[0]).to_owned()),
                ]));
            }
        }
    }
    Ok(Verdict::pass())
}

/// For x < x', every maximal element of F(x) lies below every maximal
/// element of F(x').
fn maximal_comparison(f: &Correspondence) -> Verdict {
    let p = f.source();
    for x in 0..p.len() {
        for x2 in 0..p.len() {
            if !p.lt(x, x2) {
                continue;
            }
            for &y in &p.maximal_in(f.value(x)) {
                for &y2 in &p.maximal_in(f.value(x2)) {
                    if !p.le(y, y2) {
                        return comparison_witness(p, x, x2, y, y2);
                    }
                }
            }
        }
    }
    Verdict::pass()
}

fn minimal_comparison(f: &Correspondence) -> Verdict {
    let p = f.source();
    for x in 0..p.len() {
        for x2 in 0..p.len() {
            if !p.lt(x, x2) {
                continue;
            }
            for &y in &p.minimal_in(f.value(x)) {
                for &y2 in &p.minimal_in(f.value(x2)) {
                    if !p.le(y, y2) {
                        return comparison_witness(p, x, x2, y, y2);
                    }
                }
            }
        }
    }
    Verdict::pass()
}

/// For x < x', all of M(x) lies below all of M(x').
fn total_comparison(m: &Correspondence) -> Verdict {
    let p = m.source();
    for x in 0..p.len() {
        for x2 in 0..p.len() {
            if !p.lt(x, x2) {
                continue;
            }
            for &y in m.value(x) {
                for &y2 in m.value(x2) {
                    if !p.le(y, y2) {
                        return comparison_witness(p, x, x2, y, y2);
                    }
                }
            }
        }
    }
    Verdict::pass()
}

fn comparison_witness(p: &Poset, x: usize, x2: usize, y: usize, y2: usize) -> Verdict {
    Verdict::fail(vec![
        ("x", p.element(x).to_owned()),
        ("x'", p.element(x2).to_owned()),
        ("y", p.element(y).to_owned()),
        ("y'", p.element(y2).to_owned()),
    ])
}

/// The maximal-element (dually: minimal-element) correspondence of F.
fn extremal_element_correspondence(f: &Correspondence, dual: bool) -> Correspondence {
    let p = f.source();
    let values: Vec<Vec<usize>> = (0..p.len())
        .map(|x| {
            if dual {
                p.minimal_in(f.value(x))
            } else {
                p.maximal_in(f.value(x))
            }
        })
        .collect();
    Correspondence::new(p.clone(), p.clone(), values).expect("values are subsets of the poset")
}

fn thm31_a(f: &Correspondence, m: &Correspondence) -> Result<Verdict> {
    let nonempty = f.check_values(ValueCondition::Nonempty)?;
    if !nonempty.holds {
        return Ok(nonempty);
    }
    for x in 0..f.source().len() {
        if let Some(&stray) = m.value(x).iter().find(|y| !f.value(x).contains(y)) {
            return Ok(Verdict::fail(vec![
                ("x", f.source().element(x).to_owned()),
                ("stray", f.source().element(stray).to_owned()),
            ]));
        }
    }
    Ok(Verdict::pass())
}

fn thm31_b(f: &Correspondence, m: &Correspondence, dual: bool) -> Verdict {
    let p = f.source();
    for x in 0..p.len() {
        for &y in f.value(x) {
            let ok = m.value(x).iter().any(|&z| {
                if dual {
                    p.le(z, y)
                } else {
                    p.le(y, z)
                }
            });
            if !ok {
                return Verdict::fail(vec![
                    ("x", p.element(x).to_owned()),
                    ("y", p.element(y).to_owned()),
                ]);
            }
        }
    }
    Verdict::pass()
}

/// Calciano item 4: for every h in A_F and x above h, F^h(x) has a least
/// element whenever nonempty.
fn truncation_least_when_nonempty(f: &Correspondence) -> Result<Verdict> {
    let (a, _) = f.pre_fixed_sets()?;
    for &h in &a {
        let t = f.truncate(h)?;
        for x in 0..t.source().len() {
            let v = t.value(x);
            if v.is_empty() {
                continue;
            }
            if !v.iter().any(|&l| v.iter().all(|&y| t.source().le(l, y))) {
                return Ok(Verdict::fail(vec![
                    ("h", f.source().element(h).to_owned()),
                    ("x", t.source().element(x).to_owned()),
                ]));
            }
        }
    }
    Ok(Verdict::pass())
}

/// Sabarwal item I (or its dual shape): each value has a greatest (least)
/// element and the resulting single-valued map is increasing.
fn extremum_map_increasing(f: &Correspondence, greatest: bool) -> Verdict {
    let p = f.source();
    let mut extremum = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        let v = f.value(x);
        let found = v.iter().copied().find(|&g| {
            v.iter().all(|&y| if greatest { p.le(y, g) } else { p.le(g, y) })
        });
        match found {
            Some(g) => extremum.push(g),
            None => {
                return Verdict::fail(vec![("x", p.element(x).to_owned())]);
            }
        }
    }
    for x in 0..p.len() {
        for x2 in 0..p.len() {
            if p.le(x, x2) && !p.le(extremum[x], extremum[x2]) {
                return comparison_witness(p, x, x2, extremum[x], extremum[x2]);
            }
        }
    }
    Verdict::pass()
}

/// Sabarwal item II: for every h in A_F, every truncated value has a least
/// element and min F^h is increasing on the up-set.
fn truncation_min_map_increasing(f: &Correspondence) -> Result<Verdict> {
    let (a, _) = f.pre_fixed_sets()?;
    for &h in &a {
        let t = f.truncate(h)?;
        let v = extremum_map_increasing(&t, false);
        if !v.holds {
            let mut w = vec![("h".to_owned(), f.source().element(h).to_owned())];
            w.extend(v.witness);
            return Ok(Verdict { holds: false, witness: w });
        }
    }
    Ok(Verdict::pass())
}

/// Items iii)-iv): chain-bounded-below truncated values, and increasing
/// minimal elements, over all truncation points h in A'_F.
fn thm51_truncation_items(f: &Correspondence) -> Result<(Verdict, Verdict)> {
    let ap = match fixpoint::a_prime_set(f, false) {
        Ok(ap) => ap,
        Err(Error::NotCompleteLattice) => {
            let fail = Verdict::fail(vec![("reason", "domain is not a complete lattice".into())]);
            return Ok((fail.clone(), fail));
        }
        Err(e) => return Err(e),
    };
    let mut iii = Verdict::pass();
    let mut iv = Verdict::pass();
    for &h in &ap {
        let t = f.truncate(h)?;
        if iii.holds {
            let v = t.check_values(ValueCondition::ChainBoundedBelow)?;
            if !v.holds {
                let mut w = vec![("h".to_owned(), f.source().element(h).to_owned())];
                w.extend(v.witness);
                iii = Verdict { holds: false, witness: w };
            }
        }
        if iv.holds {
            let v = minimal_comparison(&t);
            if !v.holds {
                let mut w = vec![("h".to_owned(), f.source().element(h).to_owned())];
                w.extend(v.witness);
                iv = Verdict { holds: false, witness: w };
            }
        }
        if !iii.holds && !iv.holds {
            break;
        }
    }
    Ok((iii, iv))
}

// ---- selection-quantified hypotheses ----

/// All selections of F on `set`: one element per value, in order.
fn selections(f: &Correspondence, set: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &c in set {
        let mut next = Vec::with_capacity(out.len() * f.value(c).len());
        for sel in &out {
            for &y in f.value(c) {
                let mut s2 = sel.clone();
                s2.push(y);
                next.push(s2);
            }
        }
        out = next;
    }
    out
}

fn selection_count(f: &Correspondence, set: &[usize]) -> usize {
    set.iter()
        .map(|&c| f.value(c).len())
        .fold(1usize, |acc, n| acc.saturating_mul(n))
}

fn require_selection_cap(f: &Correspondence) -> Result<()> {
    let n = f.source().len();
    if n > SELECTION_CAP {
        return Err(Error::CapExceeded {
            size: n,
            cap: SELECTION_CAP,
        });
    }
    Ok(())
}

/// Item 1 of the multivalued Abian-Brown theorem: for every nonempty chain
/// C, every x strictly above C and every selection f of F on C, some
/// y in F(x) dominates f(C). On finite posets the well-ordered subsets are
/// exactly the chains.
fn abian_brown_selection(f: &Correspondence) -> Result<Verdict> {
    require_selection_cap(f)?;
    let p = f.source();
    let all: Vec<usize> = (0..p.len()).collect();
    for chain in p.chains(&all, ChainMode::Exhaustive, false)? {
        let xs: Vec<usize> = (0..p.len())
            .filter(|&x| chain.iter().all(|&c| p.lt(c, x)))
            .collect();
        if xs.is_empty() {
            continue;
        }
        if selection_count(f, &chain) > SELECTION_BUDGET {
            return Err(Error::CapExceeded {
                size: selection_count(f, &chain),
                cap: SELECTION_BUDGET,
            });
        }
        for sel in selections(f, &chain) {
            for &x in &xs {
                let ok = f
                    .value(x)
                    .iter()
                    .any(|&y| sel.iter().all(|&a| p.le(a, y)));
                if !ok {
                    let mut w = vec![("x".to_owned(), p.element(x).to_owned())];
                    for (k, &c) in chain.iter().enumerate() {
                        w.push((format!("f(chain[{k}])"), p.element(sel[k]).to_owned()));
                        let _ = c;
                    }
                    return Ok(Verdict { holds: false, witness: w });
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// Item b) of the multivalued Markowsky theorem: for every chain U,
/// subset V, selections f on U and g on V with f(U) <= g(V), and every x
/// with U < x < V, some y in F(x) satisfies f(U) <= y <= g(V). Empty U and
/// V are included.
fn markowsky_selection(f: &Correspondence) -> Result<Verdict> {
    require_selection_cap(f)?;
    let p = f.source();
    let n = p.len();
    let all: Vec<usize> = (0..n).collect();
    let mut chains: Vec<Vec<usize>> = vec![vec![]];
    chains.extend(p.chains(&all, ChainMode::Exhaustive, false)?);
    for u_chain in &chains {
        for v_mask in 0u32..(1u32 << n) {
            let v_set: Vec<usize> = (0..n).filter(|i| v_mask & (1 << i) != 0).collect();
            let xs: Vec<usize> = (0..n)
                .filter(|&x| {
                    u_chain.iter().all(|&u| p.lt(u, x)) && v_set.iter().all(|&v| p.lt(x, v))
                })
                .collect();
            if xs.is_empty() {
                continue;
            }
            let count = selection_count(f, u_chain).saturating_mul(selection_count(f, &v_set));
            if count > SELECTION_BUDGET {
                return Err(Error::CapExceeded {
                    size: count,
                    cap: SELECTION_BUDGET,
                });
            }
            for fu in selections(f, u_chain) {
                for gv in selections(f, &v_set) {
                    let consistent = fu
                        .iter()
                        .all(|&a| gv.iter().all(|&b| p.le(a, b)));
                    if !consistent {
                        continue;
                    }
                    for &x in &xs {
                        let ok = f.value(x).iter().any(|&y| {
                            fu.iter().all(|&a| p.le(a, y)) && gv.iter().all(|&b| p.le(y, b))
                        });
                        if !ok {
                            let mut w = vec![("x".to_owned(), p.element(x).to_owned())];
                            for (k, &y) in fu.iter().enumerate() {
                                w.push((format!("f(U[{k}])"), p.element(y).to_owned()));
                            }
                            for (k, &y) in gv.iter().enumerate() {
                                w.push((format!("g(V[{k}])"), p.element(y).to_owned()));
                            }
                            return Ok(Verdict { holds: false, witness: w });
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::pass())
}

// ---- lemma checks ----

string_enum!(LemmaId {
    Comparison => "lemma-3.2",
    Bounding => "lemma-4.1",
    PreFixed => "lemma-5.2",
});

/// Inputs for the three finite-instance lemma checks.
#[derive(Debug, Clone)]
pub enum LemmaInput {
    /// M plus a named subset S of A_M.
    Comparison { m: Correspondence, s: Vec<String> },
    /// Ambient poset, subsets P and Q, and the pivot x in their
    /// intersection.
    Bounding {
        poset: Poset,
        p: Vec<String>,
        q: Vec<String>,
        x: String,
    },
    /// A correspondence on a complete lattice.
    PreFixed { f: Correspondence },
}

/// Hypothesis verdict plus the conclusion verdict; the conclusion is
/// checked only when the hypotheses hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub hypotheses: Verdict,
    pub conclusion: Option<Verdict>,
    pub sound: bool,
}

impl LemmaCheck {
    fn new(hypotheses: Verdict, conclusion: Option<Verdict>) -> LemmaCheck {
        let sound = !hypotheses.holds || conclusion.as_ref().is_some_and(|c| c.holds);
        LemmaCheck {
            hypotheses,
            conclusion,
            sound,
        }
    }
}

pub fn check_lemma(l: LemmaId, input: &LemmaInput) -> Result<LemmaCheck> {
    match (l, input) {
        (LemmaId::Comparison, LemmaInput::Comparison { m, s }) => lemma_comparison(m, s),
        (LemmaId::Bounding, LemmaInput::Bounding { poset, p, q, x }) => {
            lemma_bounding(poset, p, q, x)
        }
        (LemmaId::PreFixed, LemmaInput::PreFixed { f }) => lemma_pre_fixed(f),
        _ => Err(Error::IncompatibleInstance(format!(
            "input does not match {l}"
        ))),
    }
}

/// If z = sup S exists for a nonempty S within A_M and M compares totally
/// across strict pairs, then z lies in A_M.
fn lemma_comparison(m: &Correspondence, s_names: &[String]) -> Result<LemmaCheck> {
    m.require_self()?;
    let poset = m.source();
    let s: Result<Vec<usize>> = s_names.iter().map(|n| poset.require(n)).collect();
    let s = s?;
    let (a_m, _) = m.pre_fixed_sets()?;
    let mut hyp = Verdict::pass();
    if poset.is_empty() {
        hyp = Verdict::fail(vec![("reason", "empty poset".into())]);
    }
    hyp = hyp.and(values(m, ValueCondition::Nonempty)?);
    hyp = hyp.and(total_comparison(m));
    if hyp.holds && s.is_empty() {
        hyp = Verdict::fail(vec![("reason", "S is empty".into())]);
    }
    if hyp.holds {
        if let Some(&out) = s.iter().find(|x| !a_m.contains(x)) {
            hyp = Verdict::fail(vec![("outside-A_M", poset.element(out).to_owned())]);
        }
    }
    let z = poset.sup(&s);
    if hyp.holds && z.is_none() {
        hyp = Verdict::fail(vec![("reason", "sup of S does not exist".into())]);
    }
    if !hyp.holds {
        return Ok(LemmaCheck::new(hyp, None));
    }
    let z = z.unwrap();
    let conclusion = if a_m.contains(&z) {
        Verdict::pass()
    } else {
        Verdict::fail(vec![("sup", poset.element(z).to_owned())])
    };
    Ok(LemmaCheck::new(hyp, Some(conclusion)))
}

/// If Q is chain-bounded below, x lies in both P and Q, and every
/// p != x admits a common lower bound in Q with every q, then some
/// q0 in Q bounds all of P from below.
fn lemma_bounding(poset: &Poset, p_names: &[String], q_names: &[String], x_name: &str) -> Result<LemmaCheck> {
    let p: Result<Vec<usize>> = p_names.iter().map(|n| poset.require(n)).collect();
    let q: Result<Vec<usize>> = q_names.iter().map(|n| poset.require(n)).collect();
    let (p, q) = (p?, q?);
    let x = poset.require(x_name)?;
    let mut hyp = Verdict::pass();
    if !p.contains(&x) || !q.contains(&x) {
        hyp = Verdict::fail(vec![("x", x_name.to_owned())]);
    }
    if hyp.holds {
        // chain-bounded below: bounds drawn from Q itself.
        for chain in poset.chains(&q, ChainMode::Exhaustive, true)? {
            if !q.iter().any(|&b| chain.iter().all(|&c| poset.le(b, c))) {
                hyp = Verdict::fail(vec![("chain-min", poset.element(chain[0]).to_owned())]);
                break;
            }
        }
    }
    if hyp.holds {
        'outer: for &pp in &p {
            if pp == x {
                continue;
            }
            for &qq in &q {
                let ok = q
                    .iter()
                    .any(|&q2| poset.le(q2, pp) && poset.le(q2, qq));
                if !ok {
                    hyp = Verdict::fail(vec![
                        ("p", poset.element(pp).to_owned()),
                        ("q", poset.element(qq).to_owned()),
                    ]);
                    break 'outer;
                }
            }
        }
    }
    if !hyp.holds {
        return Ok(LemmaCheck::new(hyp, None));
    }
    let conclusion = if q
        .iter()
        .any(|&q0| p.iter().all(|&pp| poset.le(q0, pp)))
    {
        Verdict::pass()
    } else {
        Verdict::fail(vec![("reason", "no q0 below P".into())])
    };
    Ok(LemmaCheck::new(hyp, Some(conclusion)))
}

/// Under chain-bounded-above values with increasing maximal elements,
/// A'_F sits inside A_F.
fn lemma_pre_fixed(f: &Correspondence) -> Result<LemmaCheck> {
    f.require_self()?;
    let mut hyp = domain_complete_lattice(f);
    hyp = hyp.and(values(f, ValueCondition::Nonempty)?);
    hyp = hyp.and(values(f, ValueCondition::ChainBoundedAbove)?);
    hyp = hyp.and(maximal_comparison(f));
    if !hyp.holds {
        return Ok(LemmaCheck::new(hyp, None));
    }
    let ap = fixpoint::a_prime_set(f, false)?;
    let (a, _) = f.pre_fixed_sets()?;
    let conclusion = match ap.iter().find(|h| !a.contains(h)) {
        None => Verdict::pass(),
        Some(&h) => Verdict::fail(vec![("h", f.source().element(h).to_owned())]),
    };
    Ok(LemmaCheck::new(hyp, Some(conclusion)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures;
    use crate::oracle::Instance;
    use crate::poset::diamond;
    use crate::report::TheoremId;

    fn opts() -> ValidateOptions {
        ValidateOptions::default()
    }

    fn item<'a>(r: &'a HypothesisReport, prefix: &str) -> &'a Verdict {
        &r.items
            .iter()
            .find(|(l, _)| l.starts_with(prefix))
            .unwrap_or_else(|| panic!("no item starting with {prefix}"))
            .1
    }

    #[test]
    fn tarski_on_grid_map() {
        let f = fixtures::non_sublattice_fix();
        let report = validate(TheoremId::Tarski, &Instance::Correspondence(f), &opts()).unwrap();
        assert!(report.hypotheses_hold);
        assert!(report.conclusion.holds);
        assert!(report.sound);
    }

    #[test]
    fn thm_2_4_plain_on_example_2_7() {
        let f = fixtures::example_2_7();
        let h = check_hypotheses(TheoremId::Thm24Plain, &f, None, false).unwrap();
        assert!(h.all_hold(), "{:?}", h.items);
        let report = validate(TheoremId::Thm24Plain, &Instance::Correspondence(f), &opts()).unwrap();
        assert!(report.conclusion.holds);
        assert!(report.sound);
    }

    #[test]
    fn calciano_greatest_element_fails_on_example_2_7() {
        let f = fixtures::example_2_7();
        let h = check_hypotheses(TheoremId::Calciano16, &f, None, false).unwrap();
        assert!(!item(&h, "1:").holds);
        assert!(!h.all_hold());
    }

    #[test]
    fn thm_3_1_with_m_equals_f() {
        let f = fixtures::remark_3_1();
        let h = check_hypotheses(TheoremId::Thm31, &f, Some(&f.clone()), false).unwrap();
        assert!(item(&h, "A:").holds);
        assert!(item(&h, "B:").holds);
        assert!(!item(&h, "C:").holds);
        let report = validate(
            TheoremId::Thm31,
            &Instance::Correspondence(f),
            &ValidateOptions {
                aux: Some(fixtures::remark_3_1()),
                dual: false,
            },
        )
        .unwrap();
        assert!(!report.conclusion.holds);
        assert!(report.sound);
    }

    #[test]
    fn markowsky_hypothesis_fails_on_transposition() {
        let f = fixtures::antichain_transposition();
        let report =
            validate(TheoremId::Markowsky62, &Instance::Correspondence(f), &opts()).unwrap();
        assert!(!item(&report.hypotheses, "a:").holds);
        assert!(item(&report.hypotheses, "b:").holds);
        assert!(!report.conclusion.holds);
        assert!(report.sound);
    }

    #[test]
    fn thm_1_9_on_example_2_7() {
        let f = fixtures::example_2_7();
        let report = validate(TheoremId::Thm19, &Instance::Correspondence(f), &opts()).unwrap();
        assert!(report.hypotheses_hold, "{:?}", report.hypotheses.items);
        assert!(report.conclusion.holds);
        assert!(report.sound);
    }

    #[test]
    fn abian_brown_on_example_2_7() {
        let f = fixtures::example_2_7();
        let report =
            validate(TheoremId::AbianBrown61, &Instance::Correspondence(f), &opts()).unwrap();
        assert!(report.hypotheses_hold, "{:?}", report.hypotheses.items);
        assert!(report.conclusion.holds);
    }

    #[test]
    fn game_7_6_on_example_7_7() {
        let g = fixtures::game_7_7();
        let report = validate(TheoremId::Game76, &Instance::Game(g), &opts()).unwrap();
        assert!(report.hypotheses_hold, "{:?}", report.hypotheses.items);
        assert!(report.conclusion.holds);
        assert!(report.sound);
    }

    #[test]
    fn lemma_4_1_singleton_case() {
        let d = diamond();
        let check = check_lemma(
            LemmaId::Bounding,
            &LemmaInput::Bounding {
                poset: d,
                p: vec!["a".into()],
                q: vec!["a".into(), "1".into()],
                x: "a".into(),
            },
        )
        .unwrap();
        assert!(check.hypotheses.holds);
        assert!(check.conclusion.unwrap().holds);
    }

    #[test]
    fn lemma_5_2_on_example_2_7() {
        let f = fixtures::example_2_7();
        let check = check_lemma(LemmaId::PreFixed, &LemmaInput::PreFixed { f }).unwrap();
        assert!(check.hypotheses.holds);
        assert!(check.conclusion.unwrap().holds);
    }

    #[test]
    fn lemma_3_2_vacuous_when_comparison_fails() {
        // M ≡ {a,b} violates the total-comparison hypothesis on the diamond.
        let m = fixtures::remark_3_1();
        let check = check_lemma(
            LemmaId::Comparison,
            &LemmaInput::Comparison {
                m,
                s: vec!["0".into()],
            },
        )
        .unwrap();
        assert!(!check.hypotheses.holds);
        assert!(check.conclusion.is_none());
        assert!(check.sound);
    }

    #[test]
    fn soundness_sweep_over_fixtures() {
        for name in fixtures::FIXTURE_NAMES {
            let instance = fixtures::fixture(name).unwrap();
            for &t in TheoremId::ALL {
                match validate(t, &instance, &opts()) {
                    Ok(report) => {
                        assert!(report.sound, "{t} on {name}: {:?}", report);
                    }
                    // Cross posets, oversized instances, and non-self
                    // correspondences are out of scope for the validators.
                    Err(Error::IncompatibleInstance(_))
                    | Err(Error::CapExceeded { .. })
                    | Err(Error::NotSelfCorrespondence) => {}
                    Err(e) => panic!("{t} on {name}: unexpected error {e}"),
                }
            }
        }
    }
}
