//! Ternary-relation frames: worlds `W`, accessibility `R ⊆ W³`, the star
//! map used by negation, and a designated world `s`. Includes exhaustive
//! verification of the named frame conditions and bounded enumeration of
//! all frames up to a world count.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrameError {
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("unknown condition name `{0}`")]
    UnknownCondition(String),
    #[error("invalid frame: {0}")]
    Invalid(String),
    #[error("frame JSON: {0}")]
    Json(String),
}

/// A frame over named worlds. World identity is positional internally;
/// the designated world is index 0 by construction of `new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    worlds: Vec<String>,
    designated: usize,
    star: Vec<usize>,
    triples: BTreeSet<[usize; 3]>,
}

impl Frame {
    pub fn new(
        worlds: Vec<String>,
        designated: &str,
        star: &[(String, String)],
        triples: &[(String, String, String)],
    ) -> Result<Frame, FrameError> {
        let mut seen = BTreeSet::new();
        for w in &worlds {
            if !seen.insert(w.clone()) {
                return Err(FrameError::Invalid(format!("duplicate world `{}`", w)));
            }
        }
        let index = |name: &str| -> Result<usize, FrameError> {
            worlds
                .iter()
                .position(|w| w == name)
                .ok_or_else(|| FrameError::UnknownWorld(name.to_string()))
        };
        let designated = index(designated)?;
        let mut star_map = vec![usize::MAX; worlds.len()];
        for (from, to) in star {
            star_map[index(from)?] = index(to)?;
        }
        if star_map.iter().any(|&t| t == usize::MAX) {
            return Err(FrameError::Invalid("star map must be total".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b, c) in triples {
            set.insert([index(a)?, index(b)?, index(c)?]);
        }
        Ok(Frame { worlds, designated, star: star_map, triples: set })
    }

    /// Internal constructor over indexed worlds (world 0 designated).
    pub(crate) fn from_parts(
        n_worlds: usize,
        star: Vec<usize>,
        triples: BTreeSet<[usize; 3]>,
    ) -> Frame {
        let worlds = (0..n_worlds).map(|i| default_world_name(i)).collect();
        Frame { worlds, designated: 0, star, triples }
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_name(&self, idx: usize) -> &str {
        &self.worlds[idx]
    }

    pub fn world_index(&self, name: &str) -> Result<usize, FrameError> {
        self.worlds
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| FrameError::UnknownWorld(name.to_string()))
    }

    pub fn designated(&self) -> usize {
        self.designated
    }

    pub fn designated_name(&self) -> &str {
        &self.worlds[self.designated]
    }

    pub fn star(&self, w: usize) -> usize {
        self.star[w]
    }

    pub fn has(&self, a: usize, b: usize, c: usize) -> bool {
        self.triples.contains(&[a, b, c])
    }

    pub fn triples(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.triples.iter().copied()
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    /// All `(w1, w2)` with `R w w1 w2`.
    pub fn successors(&self, w: usize) -> Vec<(usize, usize)> {
        self.triples
            .iter()
            .filter(|t| t[0] == w)
            .map(|t| (t[1], t[2]))
            .collect()
    }

    fn names(&self, idxs: &[usize]) -> Vec<String> {
        idxs.iter().map(|&i| self.worlds[i].clone()).collect()
    }
}

pub(crate) fn default_world_name(i: usize) -> String {
    match i {
        0 => "s".to_string(),
        1 => "t".to_string(),
        2 => "u".to_string(),
        n => format!("w{}", n),
    }
}

/// The named frame conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    B1,
    B2,
    B3,
    B4,
    Contraposition,
    Ci,
    Wi,
    Bcomb,
    Mingle,
    K,
    C,
    Seriality,
}

pub const ALL_CONDITIONS: [Condition; 12] = [
    Condition::B1,
    Condition::B2,
    Condition::B3,
    Condition::B4,
    Condition::Contraposition,
    Condition::Ci,
    Condition::Wi,
    Condition::Bcomb,
    Condition::Mingle,
    Condition::K,
    Condition::C,
    Condition::Seriality,
];

/// The four base conditions defining a B-frame.
pub const B_CONDITIONS: [Condition; 4] =
    [Condition::B1, Condition::B2, Condition::B3, Condition::B4];

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::B1 => "b1",
            Condition::B2 => "b2",
            Condition::B3 => "b3",
            Condition::B4 => "b4",
            Condition::Contraposition => "contraposition",
            Condition::Ci => "CI",
            Condition::Wi => "WI",
            Condition::Bcomb => "Bcomb",
            Condition::Mingle => "mingle",
            Condition::K => "K",
            Condition::C => "C",
            Condition::Seriality => "seriality",
        };
        f.write_str(s)
    }
}

impl FromStr for Condition {
    type Err = FrameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "b1" => Ok(Condition::B1),
            "b2" => Ok(Condition::B2),
            "b3" => Ok(Condition::B3),
            "b4" => Ok(Condition::B4),
            "contraposition" => Ok(Condition::Contraposition),
            "ci" => Ok(Condition::Ci),
            "wi" => Ok(Condition::Wi),
            "bcomb" => Ok(Condition::Bcomb),
            "mingle" => Ok(Condition::Mingle),
            "k" => Ok(Condition::K),
            "c" => Ok(Condition::C),
            "seriality" => Ok(Condition::Seriality),
            _ => Err(FrameError::UnknownCondition(s.to_string())),
        }
    }
}

/// Outcome of checking one condition: satisfied iff no counterexamples.
/// Counterexamples are the violating world tuples in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub satisfied: bool,
    pub counterexamples: Vec<Vec<String>>,
}

/// Verdict by exhaustive enumeration over the worlds.
pub fn check_condition(frame: &Frame, condition: Condition) -> ConditionReport {
    let n = frame.world_count();
    let s = frame.designated();
    let mut bad: Vec<Vec<usize>> = Vec::new();
    match condition {
        Condition::B1 => {
            for a in 0..n {
                if !frame.has(s, a, a) {
                    bad.push(vec![a]);
                }
            }
        }
        Condition::B2 => {
            for a in 0..n {
                for b in 0..n {
                    if !frame.has(s, a, b) {
                        continue;
                    }
                    for c in 0..n {
                        for d in 0..n {
                            if frame.has(b, c, d) && !frame.has(a, c, d) {
                                bad.push(vec![a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
        Condition::B3 => {
            for a in 0..n {
                if frame.star(frame.star(a)) != a {
                    bad.push(vec![a]);
                }
            }
        }
        Condition::B4 => {
            for a in 0..n {
                for b in 0..n {
                    if frame.has(s, a, b) && !frame.has(s, frame.star(b), frame.star(a)) {
                        bad.push(vec![a, b]);
                    }
                }
            }
        }
        Condition::Contraposition => {
            for t in frame.triples() {
                let [a, b, c] = t;
                if !frame.has(a, frame.star(c), frame.star(b)) {
                    bad.push(vec![a, b, c]);
                }
            }
        }
        Condition::Ci => {
            for t in frame.triples() {
                let [a, b, c] = t;
                if !frame.has(a, c, b) {
                    bad.push(vec![a, b, c]);
                }
            }
        }
        Condition::Wi => {
            for a in 0..n {
                if !frame.has(a, a, a) {
                    bad.push(vec![a]);
                }
            }
        }
        Condition::Bcomb => {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            let premise =
                                (0..n).any(|x| frame.has(a, b, x) && frame.has(x, c, d));
                            if !premise {
                                continue;
                            }
                            let conclusion =
                                (0..n).any(|y| frame.has(a, y, d) && frame.has(b, c, y));
                            if !conclusion {
                                bad.push(vec![a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
        Condition::Mingle => {
            for t in frame.triples() {
                let [a, b, c] = t;
                if !frame.has(s, a, c) && !frame.has(s, b, c) {
                    bad.push(vec![a, b, c]);
                }
            }
        }
        Condition::K => {
            for t in frame.triples() {
                let [a, b, c] = t;
                if !frame.has(s, a, c) {
                    bad.push(vec![a, b, c]);
                }
            }
        }
        Condition::C => {
            for a in 0..n {
                if !frame.has(a, s, a) {
                    bad.push(vec![a]);
                }
            }
        }
        Condition::Seriality => {
            for a in 0..n {
                let any = (0..n).any(|b| (0..n).any(|c| frame.has(a, b, c)));
                if !any {
                    bad.push(vec![a]);
                }
            }
        }
    }
    bad.sort();
    bad.dedup();
    ConditionReport {
        condition,
        satisfied: bad.is_empty(),
        counterexamples: bad.iter().map(|t| frame.names(t)).collect(),
    }
}

pub fn satisfies(frame: &Frame, condition: Condition) -> bool {
    check_condition(frame, condition).satisfied
}

pub fn satisfies_all(frame: &Frame, conditions: &[Condition]) -> bool {
    conditions.iter().all(|&c| satisfies(frame, c))
}

/// The set of named conditions a frame satisfies, plus the derived logic
/// labels: `B` (b1-b4), `RM` (B plus contraposition, CI, WI, Bcomb,
/// mingle), and `B+K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogicProfile {
    pub satisfied: BTreeSet<Condition>,
    pub labels: BTreeSet<String>,
}

pub fn logic_profile(frame: &Frame) -> LogicProfile {
    let satisfied: BTreeSet<Condition> = ALL_CONDITIONS
        .iter()
        .copied()
        .filter(|&c| satisfies(frame, c))
        .collect();
    let mut labels = BTreeSet::new();
    let has = |c: Condition| satisfied.contains(&c);
    let is_b = B_CONDITIONS.iter().all(|&c| has(c));
    if is_b {
        labels.insert("B".to_string());
        if has(Condition::Contraposition)
            && has(Condition::Ci)
            && has(Condition::Wi)
            && has(Condition::Bcomb)
            && has(Condition::Mingle)
        {
            labels.insert("RM".to_string());
        }
        if has(Condition::K) {
            labels.insert("B+K".to_string());
        }
    }
    LogicProfile { satisfied, labels }
}

/// Streams every frame with up to `max_worlds` worlds that satisfies all
/// of `required`, world 0 designated (`s`). Frames equal up to renaming
/// are not deduplicated.
pub fn enumerate_frames(
    max_worlds: usize,
    required: &[Condition],
) -> impl Iterator<Item = Frame> + '_ {
    assert!(max_worlds >= 1, "max_worlds must be at least 1");
    (1..=max_worlds).flat_map(move |n| {
        let triple_bits = n * n * n;
        let star_count = n.pow(n as u32);
        (0u64..(1u64 << triple_bits)).flat_map(move |r_mask| {
            (0..star_count).filter_map(move |star_code| {
                let mut star = Vec::with_capacity(n);
                let mut code = star_code;
                for _ in 0..n {
                    star.push(code % n);
                    code /= n;
                }
                let mut triples = BTreeSet::new();
                for bit in 0..triple_bits {
                    if r_mask >> bit & 1 == 1 {
                        let a = bit / (n * n);
                        let b = (bit / n) % n;
                        let c = bit % n;
                        triples.insert([a, b, c]);
                    }
                }
                let frame = Frame::from_parts(n, star, triples);
                if required.iter().all(|&c| satisfies(&frame, c)) {
                    Some(frame)
                } else {
                    None
                }
            })
        })
    })
}

// ------------------------------------------------------------------
// JSON interchange
// ------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
pub(crate) struct FrameJson {
    pub worlds: Vec<String>,
    pub designated: String,
    #[serde(rename = "R")]
    pub r: Vec<[String; 3]>,
    pub star: BTreeMap<String, String>,
}

impl Frame {
    pub(crate) fn to_json_value(&self) -> FrameJson {
        FrameJson {
            worlds: self.worlds.clone(),
            designated: self.designated_name().to_string(),
            r: self
                .triples
                .iter()
                .map(|t| {
                    [
                        self.worlds[t[0]].clone(),
                        self.worlds[t[1]].clone(),
                        self.worlds[t[2]].clone(),
                    ]
                })
                .collect(),
            star: self
                .worlds
                .iter()
                .enumerate()
                .map(|(i, w)| (w.clone(), self.worlds[self.star[i]].clone()))
                .collect(),
        }
    }

    pub(crate) fn from_json_value(json: &FrameJson) -> Result<Frame, FrameError> {
        let star: Vec<(String, String)> = json
            .star
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let triples: Vec<(String, String, String)> = json
            .r
            .iter()
            .map(|t| (t[0].clone(), t[1].clone(), t[2].clone()))
            .collect();
        Frame::new(json.worlds.clone(), &json.designated, &star, &triples)
    }
}

/// The two-world frame used by several fixtures: seven triples and the
/// star map swapping the worlds.
pub fn seven_triple_frame() -> Frame {
    let w = |s: &str| s.to_string();
    Frame::new(
        vec![w("s"), w("t")],
        "s",
        &[(w("s"), w("t")), (w("t"), w("s"))],
        &[
            (w("s"), w("s"), w("s")),
            (w("s"), w("t"), w("t")),
            (w("t"), w("s"), w("s")),
            (w("t"), w("s"), w("t")),
            (w("t"), w("t"), w("s")),
            (w("t"), w("t"), w("t")),
            (w("s"), w("t"), w("s")),
        ],
    )
    .expect("valid frame")
}
