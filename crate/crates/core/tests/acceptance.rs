//! Acceptance suite: fixture-exact checks, seeded property suites, and
//! oracle cross-checks. Each criterion prints one PASS/FAIL line.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use latfix::correspondence::{Correspondence, MonotonicityProperty as M, ValueCondition};
use latfix::fixpoint::{self, Direction, Side};
use latfix::oracle::fixtures::{fixture, FIXTURE_NAMES};
use latfix::oracle::generate::{
    generate, increasing_map_on, random_game, random_poset, random_poset_with_bottom, GenKind,
    GenSpec,
};
use latfix::oracle::theorems::{check_hypotheses, validate, ValidateOptions};
use latfix::oracle::Instance;
use latfix::poset::Poset;
use latfix::report::TheoremId;

fn criterion(name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("PASS {name}"),
        Err(e) => {
            println!("FAIL {name}: {e}");
            panic!("{name}: {e}");
        }
    }
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_owned())
    }
}

fn corr(name: &str) -> Correspondence {
    match fixture(name).unwrap() {
        Instance::Correspondence(f) => f,
        Instance::Game(g) => g.joint_best_reply().unwrap(),
        Instance::Poset(_) => panic!("{name} is a bare poset"),
    }
}

fn opts() -> ValidateOptions {
    ValidateOptions::default()
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

// ---------------------------------------------------------------- fixtures

#[test]
fn fixture_example_2_3() {
    criterion("fixture example-2.3", || {
        let f = corr("example-2.3");
        ensure(
            f.check_monotonicity(M::CAscending).unwrap().holds,
            "C-ascending should hold",
        )?;
        let v = f.check_monotonicity(M::UpperVAscending).unwrap();
        ensure(!v.holds, "upper-V-ascending should fail")?;
        let role = |r: &str| v.witness.iter().find(|(k, _)| k == r).map(|(_, e)| e.as_str());
        ensure(
            role("y") == Some("a") && role("y'") == Some("b") && role("missing") == Some("1/2"),
            &format!("witness should be a∨b = 1/2 missing from F(1), got {v}"),
        )
    });
}

#[test]
fn fixture_example_2_7() {
    criterion("fixture example-2.7", || {
        let f = corr("example-2.7");
        ensure(
            f.check_monotonicity(M::VAscending).unwrap().holds,
            "V-ascending should hold",
        )?;
        ensure(
            !f.check_monotonicity(M::Ascending).unwrap().holds,
            "ascending should fail",
        )?;
        let h = check_hypotheses(TheoremId::Calciano16, &f, None, false).unwrap();
        let item1 = &h.items.iter().find(|(l, _)| l.starts_with("1:")).unwrap().1;
        ensure(!item1.holds, "calciano-1.6 item 1 (greatest elements) should fail")?;
        let v = validate(TheoremId::Thm24Plain, &fixture("example-2.7").unwrap(), &opts()).unwrap();
        ensure(v.sound && v.hypotheses_hold && v.conclusion.holds, "thm-2.4 should validate sound")?;
        let fix = fixpoint::fix_structure(&f).unwrap();
        ensure(
            sorted(fix.fixed_points.clone()) == ["0", "1", "a", "b"],
            "Fix(F) should be the full diamond",
        )?;
        ensure(fix.structure.is_complete_lattice, "Fix(F) should be a complete lattice")
    });
}

#[test]
fn fixture_non_sublattice_fix() {
    criterion("fixture non-sublattice-fix", || {
        let f = corr("non-sublattice-fix");
        let fix = fixpoint::fixed_points(&f).unwrap();
        let names = f.source().names_of(&fix);
        ensure(
            names == ["(0,0)", "(0,1)", "(1,0)", "(2,1)"],
            &format!("Fix(f) mismatch: {names:?}"),
        )?;
        let induced = f.source().induced(&fix);
        let j = induced
            .join(induced.require("(0,1)").unwrap(), induced.require("(1,0)").unwrap())
            .unwrap();
        ensure(induced.element(j) == "(2,1)", "induced join should be (2,1)")?;
        let ambient = f
            .source()
            .join(f.source().require("(0,1)").unwrap(), f.source().require("(1,0)").unwrap())
            .unwrap();
        ensure(f.source().element(ambient) == "(1,1)", "ambient join should be (1,1)")
    });
}

#[test]
fn fixture_antichain_transposition() {
    criterion("fixture antichain-transposition", || {
        let f = corr("antichain-transposition");
        ensure(fixpoint::fixed_points(&f).unwrap().is_empty(), "Fix should be empty")?;
        let v = validate(
            TheoremId::Markowsky62,
            &fixture("antichain-transposition").unwrap(),
            &opts(),
        )
        .unwrap();
        let item_a = &v.hypotheses.items.iter().find(|(l, _)| l.starts_with("a:")).unwrap().1;
        ensure(!item_a.holds, "markowsky-6.2 hypothesis a) should fail")?;
        ensure(v.sound, "report should be sound")
    });
}

#[test]
fn fixture_remark_3_1() {
    criterion("fixture remark-3.1", || {
        let f = corr("remark-3.1");
        let r = fixpoint::extremal_fixed_point(&f, Side::Largest).unwrap();
        ensure(r.candidate == "1", &format!("candidate should be 1, got {}", r.candidate))?;
        ensure(!r.is_fixed, "candidate 1 should not be a fixed point")
    });
}

#[test]
fn fixture_game_2_8_2() {
    criterion("fixture game-2.8-2", || {
        let g = match fixture("game-2.8-2").unwrap() {
            Instance::Game(g) => g,
            _ => unreachable!(),
        };
        let s1 = &g.strategies()[0];
        let s2 = &g.strategies()[1];
        let r1_0 = sorted(s1.names_of(&g.best_reply(0, &[0, s2.require("0").unwrap()]).unwrap()));
        ensure(r1_0 == ["0", "1"], &format!("R1(0) = {r1_0:?}"))?;
        let r1_1 = sorted(s1.names_of(&g.best_reply(0, &[0, s2.require("1").unwrap()]).unwrap()));
        ensure(r1_1 == ["1", "a", "b"], &format!("R1(1) = {r1_1:?}"))?;
        let r2_1 = sorted(s2.names_of(&g.best_reply(1, &[s1.require("1").unwrap(), 0]).unwrap()));
        ensure(r2_1 == ["0", "1"], &format!("R2(1) = {r2_1:?}"))?;
        // Joint best-reply value at the profile (0,1): nonempty but with no
        // least element.
        let r = g.joint_best_reply().unwrap();
        let at = r.source().require("(0,1)").unwrap();
        let value = r.value(at);
        ensure(!value.is_empty(), "R(0,1) should be nonempty")?;
        let has_least = value
            .iter()
            .any(|&l| value.iter().all(|&y| r.target().le(l, y)));
        ensure(!has_least, "R(0,1) should have no least element")?;
        let eq = sorted(g.nash_equilibria().unwrap().fixed_points);
        ensure(eq == ["(0,0)", "(1,0)", "(1,1)"], &format!("equilibria = {eq:?}"))?;
        let direct = sorted(
            g.nash_equilibria_direct()
                .unwrap()
                .iter()
                .map(|p| g.profile_name(p))
                .collect(),
        );
        ensure(eq == direct, "derived and direct equilibria should agree")
    });
}

#[test]
fn fixture_game_7_7() {
    criterion("fixture game-7.7", || {
        let g = match fixture("game-7.7").unwrap() {
            Instance::Game(g) => g,
            _ => unreachable!(),
        };
        use latfix::game::PayoffProperty as P;
        let profile = [0, 0];
        ensure(
            g.check_payoff_property(0, &profile, P::PartiallyQuasiSupermodular).unwrap().holds,
            "player 1 payoff should be partially quasi-supermodular",
        )?;
        ensure(
            g.check_payoff_property(0, &profile, P::JoinSuperextremal).unwrap().holds,
            "player 1 payoff should be join-superextremal",
        )?;
        ensure(
            !g.check_payoff_property(0, &profile, P::QuasiSupermodular).unwrap().holds,
            "player 1 payoff should not be quasi-supermodular",
        )?;
        let eq = g.nash_equilibria().unwrap().fixed_points;
        ensure(eq == ["((0,0),0)"], &format!("unique equilibrium expected, got {eq:?}"))?;
        let report = g.check_game().unwrap();
        ensure(report.sound, "check_game should be sound")
    });
}

// ---------------------------------------------------------- property suites

fn gen_correspondence(kind: GenKind, max_size: usize, seed: u64) -> Option<Correspondence> {
    match generate(&GenSpec::new(kind, max_size, seed)) {
        Ok(Instance::Correspondence(f)) => Some(f),
        Ok(_) => None,
        Err(_) => None,
    }
}

#[test]
fn suite_tarski() {
    criterion("suite tarski (1000 increasing maps, <= 8 elements)", || {
        let mut checked = 0usize;
        for seed in 0..1000u64 {
            let f = gen_correspondence(GenKind::IncreasingMap, 8, seed)
                .ok_or("generator failed unexpectedly")?;
            let report = fixpoint::fix_structure(&f).unwrap();
            ensure(report.structure.nonempty, "Fix should be nonempty")?;
            ensure(report.structure.is_complete_lattice, "Fix should be a complete lattice")?;
            let top = fixpoint::extremal_fixed_point(&f, Side::Largest).unwrap();
            ensure(top.is_extremal, "sup A_f should be the largest fixed point")?;
            ensure(report.largest.as_deref() == Some(top.candidate.as_str()), "largest mismatch")?;
            let bot = fixpoint::extremal_fixed_point(&f, Side::Least).unwrap();
            ensure(bot.is_extremal, "inf B_f should be the least fixed point")?;
            ensure(report.least.as_deref() == Some(bot.candidate.as_str()), "least mismatch")?;
            let up = fixpoint::iterate_increasing(&f, Direction::Up).unwrap();
            ensure(f.source().element(up) == bot.candidate, "upward iteration should reach the least")?;
            let down = fixpoint::iterate_increasing(&f, Direction::Down).unwrap();
            ensure(f.source().element(down) == top.candidate, "downward iteration should reach the largest")?;
            let v = validate(TheoremId::Tarski, &Instance::Correspondence(f), &opts()).unwrap();
            ensure(v.sound && v.hypotheses_hold && v.conclusion.holds, "tarski validation")?;
            checked += 1;
        }
        ensure(checked == 1000, "should check 1000 instances")
    });
}

#[test]
fn suite_thm_1_9() {
    criterion("suite thm-1.9 (1000 V-ascending correspondences, <= 6 elements)", || {
        let mut checked = 0usize;
        let mut seed = 0u64;
        while checked < 1000 {
            ensure(seed < 2000, "generator acceptance rate too low")?;
            let s = seed;
            seed += 1;
            let Some(f) = gen_correspondence(GenKind::VAscendingFiltered, 6, s) else {
                continue;
            };
            ensure(
                f.check_values(ValueCondition::Nonempty).unwrap().holds,
                "values should be nonempty",
            )?;
            let report = fixpoint::fix_structure(&f).unwrap();
            ensure(report.structure.nonempty, "Fix should be nonempty")?;
            ensure(report.structure.is_complete_lattice, "Fix should be a complete lattice")?;
            let v = validate(TheoremId::Thm19, &Instance::Correspondence(f), &opts()).unwrap();
            ensure(v.sound, "thm-1.9 validation should be sound")?;
            checked += 1;
        }
        Ok(())
    });
}

#[test]
fn suite_lemma_3_4() {
    criterion("suite lemma-3.4 (500 upper-C-ascending instances)", || {
        let mut checked = 0usize;
        let mut seed = 10_000u64;
        while checked < 500 {
            ensure(seed < 12_000, "generator acceptance rate too low")?;
            let s = seed;
            seed += 1;
            let Some(f) = gen_correspondence(GenKind::VAscendingFiltered, 6, s) else {
                continue;
            };
            if !f.check_monotonicity(M::UpperCAscending).unwrap().holds {
                continue;
            }
            let h = check_hypotheses(TheoremId::Lemma34, &f, None, false).unwrap();
            if !h.all_hold() {
                continue;
            }
            let r = fixpoint::extremal_fixed_point(&f, Side::Largest).unwrap();
            ensure(
                r.is_fixed && r.is_extremal,
                "sup A_F should be the largest fixed point",
            )?;
            checked += 1;
        }
        Ok(())
    });
}

#[test]
fn suite_markowsky() {
    criterion("suite markowsky (500 increasing maps on posets with bottom)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..500 {
            let p = random_poset_with_bottom(&mut rng, 8);
            let f = increasing_map_on(&p, &mut rng);
            let report = fixpoint::fix_structure(&f).unwrap();
            ensure(report.least.is_some(), "least fixed point should exist")?;
            ensure(report.structure.is_chain_complete, "Fix should be chain-complete")?;
            ensure(
                report.min_fix_below_b == Some(true),
                "least fixed point should be below every post-fixed point",
            )?;
        }
        Ok(())
    });
}

#[test]
fn suite_thm_7_6() {
    criterion("suite thm-7.6 (200 hypothesis-satisfying games)", || {
        let mut checked = 0usize;
        let mut seed = 0u64;
        while checked < 200 {
            ensure(seed < 5_000, "game acceptance rate too low")?;
            let mut rng = ChaCha8Rng::seed_from_u64(0xABCD ^ seed);
            seed += 1;
            let Ok(g) = random_game(&mut rng, 3, 5) else { continue };
            let Ok(report) = g.check_game() else { continue };
            if !report.hypotheses_hold {
                continue;
            }
            ensure(report.sound, "check_game should be sound")?;
            ensure(report.conclusion.holds, "equilibrium conclusion should hold")?;
            let eq = g.nash_equilibria().unwrap();
            ensure(eq.structure.nonempty, "equilibrium set should be nonempty")?;
            ensure(eq.structure.is_complete_lattice, "equilibrium set should be a complete lattice")?;
            checked += 1;
        }
        Ok(())
    });
}

#[test]
fn suite_implication_lattice() {
    criterion("suite implication-lattice (generated correspondences)", || {
        let mut instances: Vec<Correspondence> = Vec::new();
        for seed in 0..100u64 {
            for kind in [GenKind::Correspondence, GenKind::AscendingInterval, GenKind::VAscendingFiltered] {
                if let Some(f) = gen_correspondence(kind, 6, 0x5EED ^ seed) {
                    instances.push(f);
                }
            }
        }
        ensure(instances.len() >= 250, "not enough generated instances")?;
        let holds = |f: &Correspondence, m: M| f.check_monotonicity(m).unwrap().holds;
        for f in &instances {
            let nonempty = f.check_values(ValueCondition::Nonempty).unwrap().holds;
            let implications: &[(bool, bool, &str)] = &[
                (holds(f, M::Ascending), holds(f, M::VAscending), "ascending => v-ascending"),
                (holds(f, M::VAscending), holds(f, M::WeaklyAscending), "v-ascending => weakly-ascending"),
                (holds(f, M::Ascending), holds(f, M::StronglyUpperIncreasing), "ascending => strongly-upper-increasing"),
                (holds(f, M::Ascending), holds(f, M::StronglyLowerIncreasing), "ascending => strongly-lower-increasing"),
                (
                    holds(f, M::StronglyUpperIncreasing) && nonempty,
                    holds(f, M::UpperIncreasing),
                    "strongly-upper-increasing & nonempty => upper-increasing",
                ),
                (
                    holds(f, M::UpperCAscending) && nonempty,
                    holds(f, M::UpperIncreasing),
                    "upper-c-ascending & nonempty => upper-increasing",
                ),
            ];
            for &(premise, conclusion, label) in implications {
                ensure(!premise || conclusion, label)?;
            }
        }
        Ok(())
    });
}

// ------------------------------------------------------- oracle cross-checks

#[test]
fn cross_check_truncation_identity() {
    criterion("cross-check truncation identity on all fixtures", || {
        for name in FIXTURE_NAMES {
            let f = match fixture(name).unwrap() {
                Instance::Correspondence(f) if f.is_self() => f,
                Instance::Game(g) => g.joint_best_reply().unwrap(),
                _ => continue,
            };
            let fix = fixpoint::fixed_points(&f).unwrap();
            for h in 0..f.source().len() {
                let t = f.truncate(h).unwrap();
                let got = sorted(t.source().names_of(&fixpoint::fixed_points(&t).unwrap()));
                let expect = sorted(
                    fix.iter()
                        .filter(|&&x| f.source().le(h, x))
                        .map(|&x| f.source().element(x).to_owned())
                        .collect(),
                );
                ensure(
                    got == expect,
                    &format!("{name}, h = {}: {got:?} != {expect:?}", f.source().element(h)),
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn cross_check_classify_shortcut() {
    criterion("cross-check classify shortcut vs all-subsets definition", || {
        let mut posets: Vec<Poset> = Vec::new();
        for name in FIXTURE_NAMES {
            match fixture(name).unwrap() {
                Instance::Poset(p) => posets.push(p),
                Instance::Correspondence(f) => {
                    posets.push(f.source().clone());
                    posets.push(f.target().clone());
                }
                Instance::Game(g) => {
                    posets.extend(g.strategies().iter().cloned());
                    posets.push(g.joint_best_reply().unwrap().source().clone());
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            posets.push(random_poset(&mut rng, 8));
            if let Ok(Instance::Poset(p)) =
                generate(&GenSpec::new(GenKind::CompleteLattice, 8, rng.next_u64()))
            {
                posets.push(p);
            }
        }
        for p in posets.iter().filter(|p| p.len() <= 8) {
            let report = p.classify();
            ensure(
                report.is_complete_lattice == p.is_complete_lattice_exhaustive(false).unwrap(),
                "complete-lattice shortcut disagrees with the all-subsets definition",
            )?;
            ensure(
                report.is_chain_complete == p.is_chain_complete_exhaustive(false).unwrap(),
                "chain-complete shortcut disagrees with the all-chains definition",
            )?;
        }
        Ok(())
    });
}

use rand::RngCore;
