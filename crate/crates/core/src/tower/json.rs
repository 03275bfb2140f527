//! Tower JSON:
//!
//! ```json
//! {"prefix": [{"group": "Z/4"}, {"group": "Z/4", "map_to_previous": [[2]]}],
//!  "tail": {"kind": "constant_endo", "group": "Z/4", "endo": [[2]], "map_to_previous": [[1]]}}
//! ```
//!
//! Maps are matrices (list of rows; column `j` is the image of generator `j`).
//! `{"kind": "zero"}` is the zero tail. The shorthand
//! `{"kind": "S_of_A", "group": ..., "multiplier": m}` builds `S(A)`.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::{bigint_json, FgAbGroup, GroupMap, IntMatrix};
use crate::{Error, Result};

use super::{TailSpec, Tower};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelJson {
    group: FgAbGroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map_to_previous: Option<IntMatrix>,
}

#[derive(Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
enum TailKind {
    ConstantEndo,
    Zero,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TailJson {
    kind: TailKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<FgAbGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    endo: Option<IntMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map_to_previous: Option<IntMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitJson {
    prefix: Vec<LevelJson>,
    tail: TailJson,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SOfAJson {
    kind: String,
    group: FgAbGroup,
    #[serde(deserialize_with = "bigint_json::from_repr")]
    multiplier: BigInt,
}

fn map_between(domain: &FgAbGroup, codomain: &FgAbGroup, m: IntMatrix) -> Result<GroupMap> {
    let m = m.reshaped(codomain.num_generators(), domain.num_generators())?;
    GroupMap::new(domain.clone(), codomain.clone(), m)
}

fn from_explicit(e: ExplicitJson) -> Result<Tower> {
    let mut groups = Vec::new();
    let mut maps = Vec::new();
    for (i, level) in e.prefix.into_iter().enumerate() {
        match (i, level.map_to_previous) {
            (0, None) => {}
            (0, Some(_)) => return Err(Error::Shape("level 0 has no previous level".into())),
            (_, None) => return Err(Error::Shape(format!("level {i} needs map_to_previous"))),
            (_, Some(m)) => maps.push(map_between(&level.group, &groups[i - 1], m)?),
        }
        groups.push(level.group);
    }
    let t = e.tail;
    let (tail, bridge) = match t.kind {
        TailKind::Zero => {
            if t.group.as_ref().is_some_and(|g| !g.is_trivial()) {
                return Err(Error::Shape("a zero tail has the trivial group".into()));
            }
            (TailSpec::Zero, None)
        }
        TailKind::ConstantEndo => {
            let group = t
                .group
                .ok_or_else(|| Error::Shape("constant_endo tail needs a group".into()))?;
            let endo = t
                .endo
                .ok_or_else(|| Error::Shape("constant_endo tail needs an endo".into()))?;
            let endo = map_between(&group, &group, endo)?;
            let bridge = match (groups.last(), t.map_to_previous) {
                (Some(last), Some(m)) => Some(map_between(&group, last, m)?),
                (None, Some(_)) => return Err(Error::Shape("tail map_to_previous needs a prefix".into())),
                (_, None) => None,
            };
            (TailSpec::ConstantEndo { group, endo }, bridge)
        }
    };
    Tower::new(groups, maps, tail, bridge)
}

impl Serialize for Tower {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let w = self.window();
        let prefix = (0..w)
            .map(|i| LevelJson {
                group: self.level(i).clone(),
                map_to_previous: (i > 0).then(|| self.map(i - 1).matrix().clone()),
            })
            .collect();
        let tail = match self.tail() {
            TailSpec::Zero => TailJson {
                kind: TailKind::Zero,
                group: None,
                endo: None,
                map_to_previous: None,
            },
            TailSpec::ConstantEndo { group, endo } => TailJson {
                kind: TailKind::ConstantEndo,
                group: Some(group),
                endo: Some(endo.matrix().clone()),
                map_to_previous: (w > 0).then(|| self.map(w - 1).matrix().clone()),
            },
        };
        ExplicitJson { prefix, tail }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tower {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let result = if v.get("kind").is_some() {
            let e: SOfAJson = serde_json::from_value(v).map_err(D::Error::custom)?;
            if e.kind != "S_of_A" {
                return Err(D::Error::custom(format!("unknown tower kind `{}`", e.kind)));
            }
            Ok(Tower::s_of_a(&e.group, &e.multiplier))
        } else {
            let e: ExplicitJson = serde_json::from_value(v).map_err(D::Error::custom)?;
            from_explicit(e)
        };
        result.map_err(D::Error::custom)
    }
}

impl Tower {
    pub fn from_json(text: &str) -> Result<Tower> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("towers serialize")
    }
}
