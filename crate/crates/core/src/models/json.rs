//! JSON interchange for models. The frame fields are inlined, rationals
//! travel as `"p/q"` or decimal strings, and unlisted world orders default
//! to the empty order.

use super::domain::{DomainSpec, Elem, EqMode, FuncTables, WorldOrderSpec as WOS};
use super::{Model, ModelError};
use crate::frames::{Frame, FrameJson};
use crate::rational::{format_rational, parse_rational, Q};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Serialize, Deserialize)]
struct ModelJson {
    #[serde(flatten)]
    frame: FrameJson,
    domain: DomainJson,
    #[serde(default)]
    less: BTreeMap<String, OrderJson>,
    #[serde(default)]
    equality: Option<EqJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    preds: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    functions: Option<FuncsJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum DomainJson {
    Finite { elements: Vec<String> },
    RationalOrder,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum OrderJson {
    Full,
    Interval { lo: String, hi: String },
    Empty,
    Pairs { pairs: Vec<[String; 2]> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
enum EqJson {
    Logical,
    Valuated { pairs: BTreeMap<String, Vec<[String; 2]>> },
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct FuncsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    zero: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    one: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    plus: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    times: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    neg: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    inv: Vec<[String; 2]>,
}

fn parse_q(s: &str) -> Result<Q, ModelError> {
    parse_rational(s).map_err(|e| ModelError::Json(e.to_string()))
}

impl Model {
    pub fn to_json_value(&self) -> serde_json::Value {
        let frame = self.frame().to_json_value();
        let domain = match self.domain() {
            DomainSpec::Finite(elems) => DomainJson::Finite {
                elements: elems.iter().map(|e| e.to_string()).collect(),
            },
            DomainSpec::RationalOrder => DomainJson::RationalOrder,
        };
        let less: BTreeMap<String, OrderJson> = (0..self.frame().world_count())
            .map(|w| {
                let spec = match self.order_at(w) {
                    WOS::Full => OrderJson::Full,
                    WOS::Interval { lo, hi } => OrderJson::Interval {
                        lo: format_rational(lo),
                        hi: format_rational(hi),
                    },
                    WOS::Empty => OrderJson::Empty,
                    WOS::Pairs(pairs) => OrderJson::Pairs {
                        pairs: pairs
                            .iter()
                            .map(|(a, b)| [a.to_string(), b.to_string()])
                            .collect(),
                    },
                };
                (self.frame().world_name(w).to_string(), spec)
            })
            .collect();
        let equality = Some(match self.eq_mode() {
            EqMode::Logical => EqJson::Logical,
            EqMode::Valuated(tables) => EqJson::Valuated {
                pairs: tables
                    .iter()
                    .enumerate()
                    .map(|(w, set)| {
                        (
                            self.frame().world_name(w).to_string(),
                            set.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
                        )
                    })
                    .collect(),
            },
        });
        let preds: BTreeMap<String, BTreeMap<String, Vec<String>>> = {
            let mut out: BTreeMap<String, BTreeMap<String, Vec<String>>> = BTreeMap::new();
            for ((w, n), ext) in self.preds() {
                out.entry(self.frame().world_name(*w).to_string())
                    .or_default()
                    .insert(format!("P{}", n), ext.iter().map(|e| e.to_string()).collect());
            }
            out
        };
        let functions = self.funcs().map(|f| FuncsJson {
            zero: f.zero.as_ref().map(|e| e.to_string()),
            one: f.one.as_ref().map(|e| e.to_string()),
            plus: f
                .plus
                .iter()
                .map(|((a, b), c)| [a.to_string(), b.to_string(), c.to_string()])
                .collect(),
            times: f
                .times
                .iter()
                .map(|((a, b), c)| [a.to_string(), b.to_string(), c.to_string()])
                .collect(),
            neg: f.neg.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
            inv: f.inv.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        });
        serde_json::to_value(ModelJson { frame, domain, less, equality, preds, functions })
            .expect("model serialization cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serialization")
    }

    pub fn from_json_str(text: &str) -> Result<Model, ModelError> {
        let json: ModelJson =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        let frame = Frame::from_json_value(&json.frame)?;
        let domain = match &json.domain {
            DomainJson::Finite { elements } => {
                DomainSpec::Finite(elements.iter().map(|s| Elem::parse(s)).collect())
            }
            DomainJson::RationalOrder => DomainSpec::RationalOrder,
        };
        for world in json.less.keys() {
            frame.world_index(world)?;
        }
        let less: Vec<WOS> = (0..frame.world_count())
            .map(|w| {
                let name = frame.world_name(w);
                match json.less.get(name) {
                    None => Ok(WOS::Empty),
                    Some(OrderJson::Full) => Ok(WOS::Full),
                    Some(OrderJson::Empty) => Ok(WOS::Empty),
                    Some(OrderJson::Interval { lo, hi }) => Ok(WOS::Interval {
                        lo: parse_q(lo)?,
                        hi: parse_q(hi)?,
                    }),
                    Some(OrderJson::Pairs { pairs }) => Ok(WOS::Pairs(
                        pairs
                            .iter()
                            .map(|[a, b]| (Elem::parse(a), Elem::parse(b)))
                            .collect(),
                    )),
                }
            })
            .collect::<Result<_, ModelError>>()?;
        let eq = match &json.equality {
            None | Some(EqJson::Logical) => EqMode::Logical,
            Some(EqJson::Valuated { pairs }) => {
                for world in pairs.keys() {
                    frame.world_index(world)?;
                }
                let tables: Vec<BTreeSet<(Elem, Elem)>> = (0..frame.world_count())
                    .map(|w| {
                        pairs
                            .get(frame.world_name(w))
                            .map(|list| {
                                list.iter()
                                    .map(|[a, b]| (Elem::parse(a), Elem::parse(b)))
                                    .collect()
                            })
                            .unwrap_or_default()
                    })
                    .collect();
                EqMode::Valuated(tables)
            }
        };
        let mut model = Model::new(frame, domain, less, eq)?;
        if !json.preds.is_empty() {
            let mut preds: BTreeMap<(usize, u32), BTreeSet<Elem>> = BTreeMap::new();
            for (world, by_pred) in &json.preds {
                let w = model.frame().world_index(world)?;
                for (pname, elems) in by_pred {
                    let n: u32 = pname
                        .strip_prefix('P')
                        .and_then(|d| d.parse().ok())
                        .filter(|&n| n >= 2)
                        .ok_or_else(|| {
                            ModelError::Json(format!("bad predicate name `{}`", pname))
                        })?;
                    preds.insert((w, n), elems.iter().map(|s| Elem::parse(s)).collect());
                }
            }
            model = model.with_preds(preds)?;
        }
        if let Some(fj) = &json.functions {
            let tuple3 = |rows: &Vec<[String; 3]>| -> BTreeMap<(Elem, Elem), Elem> {
                rows.iter()
                    .map(|[a, b, c]| ((Elem::parse(a), Elem::parse(b)), Elem::parse(c)))
                    .collect()
            };
            let tuple2 = |rows: &Vec<[String; 2]>| -> BTreeMap<Elem, Elem> {
                rows.iter().map(|[a, b]| (Elem::parse(a), Elem::parse(b))).collect()
            };
            model = model.with_funcs(FuncTables {
                zero: fj.zero.as_ref().map(|s| Elem::parse(s)),
                one: fj.one.as_ref().map(|s| Elem::parse(s)),
                plus: tuple3(&fj.plus),
                times: tuple3(&fj.times),
                neg: tuple2(&fj.neg),
                inv: tuple2(&fj.inv),
            })?;
        }
        Ok(model)
    }
}
