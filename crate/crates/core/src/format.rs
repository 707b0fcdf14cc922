//! Versioned JSON file format for posets, correspondences, maps, and
//! games. Round-trip (parse → serialize → parse) is the identity on the
//! engine objects.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::game::LatticeGame;
use crate::oracle::Instance;
use crate::poset::Poset;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub format_version: u32,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Body {
    Poset(PosetBody),
    Correspondence(CorrespondenceBody),
    Map(MapBody),
    Game(GameBody),
}

/// Elements plus order generators; the full order is their reflexive
/// transitive closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetBody {
    pub elements: Vec<String>,
    pub le: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceBody {
    pub poset: PosetBody,
    /// Target poset when it differs from the source; omitted for
    /// self-correspondences.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<PosetBody>,
    pub map: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapBody {
    pub poset: PosetBody,
    pub map: BTreeMap<String, String>,
}

/// Payoff tables are row-major over strategy profiles, last player's
/// strategy varying fastest; entries are exact rationals as "p/q" strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameBody {
    pub players: Vec<String>,
    pub strategies: Vec<PosetBody>,
    pub payoffs: Vec<Vec<String>>,
}

impl PosetBody {
    pub fn from_poset(p: &Poset) -> PosetBody {
        PosetBody {
            elements: p.elements().to_vec(),
            le: p
                .covers()
                .iter()
                .map(|&(a, b)| (p.element(a).to_owned(), p.element(b).to_owned()))
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_generators(&self.elements, &self.le)
    }
}

fn correspondence_body(f: &Correspondence) -> Body {
    if f.is_self() && f.is_single_valued() {
        let image = f.as_map().expect("single-valued");
        let map = f
            .source()
            .elements()
            .iter()
            .enumerate()
            .map(|(x, name)| (name.clone(), f.target().element(image[x]).to_owned()))
            .collect();
        return Body::Map(MapBody {
            poset: PosetBody::from_poset(f.source()),
            map,
        });
    }
    let map = f
        .source()
        .elements()
        .iter()
        .enumerate()
        .map(|(x, name)| (name.clone(), f.target().names_of(f.value(x))))
        .collect();
    Body::Correspondence(CorrespondenceBody {
        poset: PosetBody::from_poset(f.source()),
        target: if f.is_self() {
            None
        } else {
            Some(PosetBody::from_poset(f.target()))
        },
        map,
    })
}

fn game_body(g: &LatticeGame) -> GameBody {
    GameBody {
        players: g.players().to_vec(),
        strategies: g.strategies().iter().map(PosetBody::from_poset).collect(),
        payoffs: g
            .payoffs()
            .iter()
            .map(|row| row.iter().map(Rational64::to_string).collect())
            .collect(),
    }
}

fn build_correspondence(body: &CorrespondenceBody) -> Result<Correspondence> {
    let source = body.poset.to_poset()?;
    let target = match &body.target {
        Some(t) => t.to_poset()?,
        None => source.clone(),
    };
    let mut values = Vec::with_capacity(source.len());
    for name in source.elements() {
        let row = body
            .map
            .get(name)
            .ok_or_else(|| Error::Parse(format!("no value listed for element `{name}`")))?;
        let idx: Result<Vec<usize>> = row.iter().map(|y| target.require(y)).collect();
        values.push(idx?);
    }
    Correspondence::new(source, target, values)
}

fn build_map(body: &MapBody) -> Result<Correspondence> {
    let poset = body.poset.to_poset()?;
    let mut image = Vec::with_capacity(poset.len());
    for name in poset.elements() {
        let y = body
            .map
            .get(name)
            .ok_or_else(|| Error::Parse(format!("no image listed for element `{name}`")))?;
        image.push(poset.require(y)?);
    }
    Ok(Correspondence::from_map(poset, move |x| image[x]))
}

fn parse_rational(s: &str) -> Result<Rational64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`; expected `p/q` or `p`")))
}

fn build_game(body: &GameBody) -> Result<LatticeGame> {
    let strategies: Result<Vec<Poset>> = body.strategies.iter().map(PosetBody::to_poset).collect();
    let payoffs: Result<Vec<Vec<Rational64>>> = body
        .payoffs
        .iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect())
        .collect();
    LatticeGame::new(body.players.clone(), strategies?, payoffs?)
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> InstanceFile {
        let body = match instance {
            Instance::Poset(p) => Body::Poset(PosetBody::from_poset(p)),
            Instance::Correspondence(f) => correspondence_body(f),
            Instance::Game(g) => Body::Game(game_body(g)),
        };
        InstanceFile {
            format_version: FORMAT_VERSION,
            body,
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        match &self.body {
            Body::Poset(b) => Ok(Instance::Poset(b.to_poset()?)),
            Body::Correspondence(b) => Ok(Instance::Correspondence(build_correspondence(b)?)),
            Body::Map(b) => Ok(Instance::Correspondence(build_map(b)?)),
            Body::Game(b) => Ok(Instance::Game(build_game(b)?)),
        }
    }
}

/// Parses an instance from JSON text.
pub fn parse_str(text: &str) -> Result<Instance> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_instance()
}

/// Serializes an instance to pretty-printed JSON.
pub fn to_string(instance: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(instance))
        .expect("instance files serialize infallibly")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::{fixture, FIXTURE_NAMES};

    fn assert_same(a: &Instance, b: &Instance) {
        match (a, b) {
            (Instance::Poset(x), Instance::Poset(y)) => assert_eq!(x, y),
            (Instance::Correspondence(x), Instance::Correspondence(y)) => assert_eq!(x, y),
            (Instance::Game(x), Instance::Game(y)) => assert_eq!(x, y),
            _ => panic!("instance kind changed in round-trip"),
        }
    }

    #[test]
    fn round_trip_all_fixtures() {
        for name in FIXTURE_NAMES {
            let original = fixture(name).unwrap();
            let text = to_string(&original);
            let reparsed = parse_str(&text).unwrap();
            assert_same(&original, &reparsed);
            // Second pass: serialize of reparse is byte-identical.
            assert_eq!(text, to_string(&reparsed), "{name}");
        }
    }

    #[test]
    fn spec_example_poset_parses() {
        let text = r#"{
            "format_version": 1,
            "kind": "poset",
            "elements": ["0", "a", "b", "1"],
            "le": [["0","a"], ["0","b"], ["a","1"], ["b","1"]]
        }"#;
        match parse_str(text).unwrap() {
            Instance::Poset(p) => {
                assert_eq!(p, crate::poset::diamond());
            }
            _ => panic!("expected poset"),
        }
    }

    #[test]
    fn bad_version_rejected() {
        let text = r#"{"format_version": 2, "kind": "poset", "elements": ["x"], "le": []}"#;
        assert!(matches!(parse_str(text), Err(Error::Parse(_))));
    }

    #[test]
    fn missing_value_rejected() {
        let text = r#"{
            "format_version": 1,
            "kind": "correspondence",
            "poset": {"elements": ["x", "y"], "le": [["x","y"]]},
            "map": {"x": ["x"]}
        }"#;
        assert!(matches!(parse_str(text), Err(Error::Parse(_))));
    }

    #[test]
    fn rationals_round_trip() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational64::new(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), Rational64::from_integer(-2));
        assert!(parse_rational("x").is_err());
    }
}
