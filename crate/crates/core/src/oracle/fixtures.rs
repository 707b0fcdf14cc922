//! Named reference instances used across the validation suites.

use num_rational::Rational64;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::game::LatticeGame;
use crate::oracle::Instance;
use crate::poset::{diamond, Poset};

pub const FIXTURE_NAMES: &[&str] = &[
    "antichain-transposition",
    "example-2.3",
    "non-sublattice-fix",
    "example-2.7",
    "game-2.8-2",
    "remark-3.1",
    "finite-5.3-analogue",
    "game-7.7",
];

/// Returns the named instance.
pub fn fixture(name: &str) -> Result<Instance> {
    match name {
        "antichain-transposition" => Ok(Instance::Correspondence(antichain_transposition())),
        "example-2.3" => Ok(Instance::Correspondence(example_2_3())),
        "non-sublattice-fix" => Ok(Instance::Correspondence(non_sublattice_fix())),
        "example-2.7" => Ok(Instance::Correspondence(example_2_7())),
        "game-2.8-2" => Ok(Instance::Game(game_2_8_2())),
        "remark-3.1" => Ok(Instance::Correspondence(remark_3_1())),
        "finite-5.3-analogue" => Ok(Instance::Correspondence(finite_5_3_analogue())),
        "game-7.7" => Ok(Instance::Game(game_7_7())),
        _ => Err(Error::UnknownFixture(name.to_owned())),
    }
}

/// Two incomparable elements, swapped by an increasing map with no fixed
/// points.
pub fn antichain_transposition() -> Correspondence {
    let p = Poset::from_generators(&["a", "b"], &[]).unwrap();
    Correspondence::from_map(p, |x| 1 - x)
}

/// X = {0 < 1}, Y the lattice 0 < {a,b} < 1/2 < 1, F(0) = {0,a},
/// F(1) = {b,1}: C-ascending but not upper V-ascending.
pub fn example_2_3() -> Correspondence {
    let x = Poset::chain(&["0", "1"]).unwrap();
    let y = Poset::from_generators(
        &["0", "a", "b", "1/2", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1/2"), ("b", "1/2"), ("1/2", "1")],
    )
    .unwrap();
    let values = vec![
        vec![y.require("0").unwrap(), y.require("a").unwrap()],
        vec![y.require("b").unwrap(), y.require("1").unwrap()],
    ];
    Correspondence::new(x, y, values).unwrap()
}

/// The increasing map on {0,1,2}×{0,1} whose fixed-point set is a complete
/// lattice but not a sublattice of the ambient product.
pub fn non_sublattice_fix() -> Correspondence {
    let c3 = Poset::chain(&["0", "1", "2"]).unwrap();
    let c2 = Poset::chain(&["0", "1"]).unwrap();
    let x = Poset::product(&[&c3, &c2]).unwrap();
    let top = x.require("(2,1)").unwrap();
    let collapse = [
        x.require("(1,1)").unwrap(),
        x.require("(2,0)").unwrap(),
        top,
    ];
    Correspondence::from_map(x, move |i| if collapse.contains(&i) { top } else { i })
}

/// Diamond with F(0)={0}, F(1)={1}, F(a)=F(b)={a,b}: V-ascending but not
/// ascending, and F(a) has no greatest element.
pub fn example_2_7() -> Correspondence {
    Correspondence::from_names(
        diamond(),
        &[
            ("0", &["0"]),
            ("1", &["1"]),
            ("a", &["a", "b"]),
            ("b", &["a", "b"]),
        ],
    )
    .unwrap()
}

/// Diamond with the constant value {a,b}: upper and lower increasing, yet
/// sup A_F = 1 is not a fixed point.
pub fn remark_3_1() -> Correspondence {
    let p = diamond();
    let a = p.require("a").unwrap();
    let b = p.require("b").unwrap();
    Correspondence::new(p.clone(), p, vec![vec![a, b]; 4]).unwrap()
}

/// Finite stand-in for the mixed chain/antichain example: a 3-chain
/// -1 < 0 < 1 below the incomparable pair a,b, with an isolated top 2.
/// F keeps the chain inside itself, maps a to {a,b}, b to {a}, 2 to {2}.
pub fn finite_5_3_analogue() -> Correspondence {
    let p = Poset::from_generators(
        &["-1", "0", "1", "a", "b", "2"],
        &[("-1", "0"), ("0", "1"), ("1", "a"), ("1", "b"), ("a", "2"), ("b", "2")],
    )
    .unwrap();
    Correspondence::from_names(
        p,
        &[
            ("-1", &["-1", "0", "1"]),
            ("0", &["-1", "0", "1"]),
            ("1", &["-1", "0", "1"]),
            ("a", &["a", "b"]),
            ("b", &["a"]),
            ("2", &["2"]),
        ],
    )
    .unwrap()
}

fn rat(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Two-player game on the diamond × {0,1}: three equilibria forming a
/// chain, with best-reply values that are not sublattices.
pub fn game_2_8_2() -> LatticeGame {
    let s1 = diamond();
    let s2 = Poset::chain(&["0", "1"]).unwrap();
    // Payoff rows indexed (x1, x2), x2 varying fastest.
    // u1: (0,0)=1 (0,1)=0 (a,0)=0 (a,1)=1 (b,0)=0 (b,1)=1 (1,0)=1 (1,1)=1
    // u2: (0,0)=1 (0,1)=0 (a,0)=1 (a,1)=0 (b,0)=1 (b,1)=0 (1,0)=1 (1,1)=1
    let table: &[(&str, &str, i64, i64)] = &[
        ("0", "0", 1, 1),
        ("0", "1", 0, 0),
        ("1", "0", 1, 1),
        ("1", "1", 1, 1),
        ("a", "0", 0, 1),
        ("a", "1", 1, 0),
        ("b", "0", 0, 1),
        ("b", "1", 1, 0),
    ];
    let total = s1.len() * s2.len();
    let mut u1 = vec![rat(0); total];
    let mut u2 = vec![rat(0); total];
    let game_shape = |x1: usize, x2: usize| x1 * s2.len() + x2;
    for &(x1, x2, p1, p2) in table {
        let i = game_shape(s1.require(x1).unwrap(), s2.require(x2).unwrap());
        u1[i] = rat(p1);
        u2[i] = rat(p2);
    }
    LatticeGame::new(
        vec!["1".into(), "2".into()],
        vec![s1, s2],
        vec![u1, u2],
    )
    .unwrap()
}

/// One effective player on the five-point sublattice of the plane:
/// partially quasi-supermodular and join-superextremal but not
/// quasi-supermodular; unique equilibrium ((0,0), 0).
pub fn game_7_7() -> LatticeGame {
    let s1 = Poset::from_generators(
        &["(0,0)", "(1,1)", "(1,2)", "(2,1)", "(2,2)"],
        &[
            ("(0,0)", "(1,1)"),
            ("(1,1)", "(1,2)"),
            ("(1,1)", "(2,1)"),
            ("(1,2)", "(2,2)"),
            ("(2,1)", "(2,2)"),
        ],
    )
    .unwrap();
    let s2 = Poset::from_generators(&["0"], &[]).unwrap();
    let f1: Vec<Rational64> = s1
        .elements()
        .iter()
        .map(|e| match e.as_str() {
            "(0,0)" => rat(10),
            "(1,1)" => rat(0),
            _ => rat(1),
        })
        .collect();
    let f2 = vec![rat(0); s1.len()];
    LatticeGame::new(vec!["1".into(), "2".into()], vec![s1, s2], vec![f1, f2]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::MonotonicityProperty;

    #[test]
    fn all_names_resolve() {
        for name in FIXTURE_NAMES {
            assert!(fixture(name).is_ok(), "{name}");
        }
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn game_2_8_2_best_replies_match_table() {
        let g = game_2_8_2();
        let s1 = &g.strategies()[0];
        let s2 = &g.strategies()[1];
        let names1 = |set: &[usize]| -> Vec<String> {
            let mut v = s1.names_of(set);
            v.sort();
            v
        };
        // R1 depends on x2 only.
        let r1_0 = g.best_reply(0, &[0, s2.require("0").unwrap()]).unwrap();
        assert_eq!(names1(&r1_0), ["0", "1"]);
        let r1_1 = g.best_reply(0, &[0, s2.require("1").unwrap()]).unwrap();
        assert_eq!(names1(&r1_1), ["1", "a", "b"]);
        // R2 depends on x1 only.
        for x1 in ["0", "a", "b"] {
            let r2 = g.best_reply(1, &[s1.require(x1).unwrap(), 0]).unwrap();
            assert_eq!(s2.names_of(&r2), ["0"], "R2({x1})");
        }
        let r2_1 = g.best_reply(1, &[s1.require("1").unwrap(), 0]).unwrap();
        assert_eq!(s2.names_of(&r2_1), ["0", "1"]);
    }

    #[test]
    fn game_2_8_2_equilibria() {
        let g = game_2_8_2();
        let report = g.nash_equilibria().unwrap();
        let mut eq = report.fixed_points.clone();
        eq.sort();
        assert_eq!(eq, ["(0,0)", "(1,0)", "(1,1)"]);
        assert!(report.structure.is_complete_lattice);
        // Cross-check against the inequality definition.
        let mut direct: Vec<String> = g
            .nash_equilibria_direct()
            .unwrap()
            .iter()
            .map(|p| g.profile_name(p))
            .collect();
        direct.sort();
        assert_eq!(eq, direct);
    }

    #[test]
    fn finite_5_3_fix_is_chain() {
        let f = finite_5_3_analogue();
        let report = crate::fixpoint::fix_structure(&f).unwrap();
        let mut fix = report.fixed_points.clone();
        fix.sort();
        assert_eq!(fix, ["-1", "0", "1", "2", "a"]);
        assert!(report.structure.is_complete_lattice);
        // Not ascending, like the original.
        assert!(!f
            .check_monotonicity(MonotonicityProperty::Ascending)
            .unwrap()
            .holds);
    }

    #[test]
    fn game_7_7_unique_equilibrium() {
        let g = game_7_7();
        let report = g.nash_equilibria().unwrap();
        assert_eq!(report.fixed_points, ["((0,0),0)"]);
    }
}
