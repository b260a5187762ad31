//! Domain specifications, per-world order valuations, equality modes, and
//! function interpretation tables.

use crate::rational::{format_rational, parse_rational, Q};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A domain element: an exact rational or an uninterpreted atom label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Rat(Q),
    Sym(String),
}

impl Elem {
    pub fn rat(&self) -> Option<&Q> {
        match self {
            Elem::Rat(q) => Some(q),
            Elem::Sym(_) => None,
        }
    }

    pub fn parse(s: &str) -> Elem {
        match parse_rational(s) {
            Ok(q) => Elem::Rat(q),
            Err(_) => Elem::Sym(s.to_string()),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Rat(q) => f.write_str(&format_rational(q)),
            Elem::Sym(s) => f.write_str(s),
        }
    }
}

impl From<Q> for Elem {
    fn from(q: Q) -> Elem {
        Elem::Rat(q)
    }
}

/// The object domain: an explicit finite list, or all of `Q` handled
/// symbolically by the orbit-representative method.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainSpec {
    Finite(Vec<Elem>),
    RationalOrder,
}

impl DomainSpec {
    pub fn is_finite(&self) -> bool {
        matches!(self, DomainSpec::Finite(_))
    }
}

/// Interpretation of `<` at one world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WorldOrderSpec {
    /// The usual order on rationals.
    Full,
    /// The usual order restricted to `[lo, hi]`; pairs touching anything
    /// outside the interval are false.
    Interval { lo: Q, hi: Q },
    /// No pair is related.
    Empty,
    /// Explicit pair list (finite domains only).
    Pairs(BTreeSet<(Elem, Elem)>),
}

impl WorldOrderSpec {
    pub fn holds(&self, a: &Elem, b: &Elem) -> Option<bool> {
        match self {
            WorldOrderSpec::Full => match (a.rat(), b.rat()) {
                (Some(x), Some(y)) => Some(x < y),
                _ => None,
            },
            WorldOrderSpec::Interval { lo, hi } => match (a.rat(), b.rat()) {
                (Some(x), Some(y)) => Some(x >= lo && x <= hi && y >= lo && y <= hi && x < y),
                _ => None,
            },
            WorldOrderSpec::Empty => Some(false),
            WorldOrderSpec::Pairs(pairs) => Some(pairs.contains(&(a.clone(), b.clone()))),
        }
    }

    /// Interval endpoints contributed to the cut-point set.
    pub fn cut_points(&self) -> Vec<Q> {
        match self {
            WorldOrderSpec::Interval { lo, hi } => vec![lo.clone(), hi.clone()],
            _ => Vec::new(),
        }
    }
}

/// How `=` is read: fixed metatheoretic identity at every world, or a
/// per-world pair valuation (finite domains only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqMode {
    Logical,
    Valuated(Vec<BTreeSet<(Elem, Elem)>>),
}

/// Explicit tables for `+ , * , - , inv` and the constants, over a finite
/// domain. Tables must be total over the domain.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FuncTables {
    pub zero: Option<Elem>,
    pub one: Option<Elem>,
    pub plus: BTreeMap<(Elem, Elem), Elem>,
    pub times: BTreeMap<(Elem, Elem), Elem>,
    pub neg: BTreeMap<Elem, Elem>,
    pub inv: BTreeMap<Elem, Elem>,
}

/// Variable assignment for evaluation.
pub type Assignment = BTreeMap<String, Elem>;

/// Builds an assignment from `(name, element)` pairs.
pub fn assignment(pairs: &[(&str, Elem)]) -> Assignment {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}
