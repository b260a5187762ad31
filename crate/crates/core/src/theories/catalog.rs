//! The axiom lists. Fixed axioms are written in the surface syntax and
//! parsed once; schema instances are assembled programmatically.
//!
//! Classical negations appear as `A -> bot` throughout. Two associativity
//! axioms are stated with a free `z` in some presentations; they are
//! closed here under `forall z`.

use super::TheoryError;
use crate::syntax::ast::{self, Formula, Term};
use crate::syntax::parse_formula;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoryName {
    Dlo,
    /// Dense linear orders with `forall x. ~(x < x)` in place of the
    /// irreflexivity implication; unlike DLO proper it has finite models.
    DloNeg,
    Rcf,
    Presburger,
    Doag,
    Acf,
}

impl fmt::Display for TheoryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoryName::Dlo => "DLO",
            TheoryName::DloNeg => "DLO-NEG",
            TheoryName::Rcf => "RCF",
            TheoryName::Presburger => "PRESBURGER",
            TheoryName::Doag => "DOAG",
            TheoryName::Acf => "ACF",
        };
        f.write_str(s)
    }
}

impl FromStr for TheoryName {
    type Err = TheoryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "DLO" => Ok(TheoryName::Dlo),
            "DLO-NEG" | "DLONEG" => Ok(TheoryName::DloNeg),
            "RCF" => Ok(TheoryName::Rcf),
            "PRESBURGER" => Ok(TheoryName::Presburger),
            "DOAG" => Ok(TheoryName::Doag),
            "ACF" => Ok(TheoryName::Acf),
            other => Err(TheoryError::UnknownTheory(other.to_string())),
        }
    }
}

pub const ALL_THEORIES: [TheoryName; 6] = [
    TheoryName::Dlo,
    TheoryName::DloNeg,
    TheoryName::Rcf,
    TheoryName::Presburger,
    TheoryName::Doag,
    TheoryName::Acf,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideCondition {
    /// `n > 0` and odd.
    OddPositive,
    /// `n > 1`.
    GreaterThanOne,
    /// `n > 0`.
    Positive,
}

impl SideCondition {
    pub fn admits(&self, n: u32) -> bool {
        match self {
            SideCondition::OddPositive => n > 0 && n % 2 == 1,
            SideCondition::GreaterThanOne => n > 1,
            SideCondition::Positive => n > 0,
        }
    }

    pub fn requirement(&self) -> &'static str {
        match self {
            SideCondition::OddPositive => "n must be odd and positive",
            SideCondition::GreaterThanOne => "n must exceed 1",
            SideCondition::Positive => "n must be positive",
        }
    }
}

#[derive(Clone)]
pub struct Schema {
    pub id: &'static str,
    pub side: SideCondition,
    pub build: fn(u32) -> Formula,
}

impl fmt::Debug for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Schema").field("id", &self.id).field("side", &self.side).finish()
    }
}

#[derive(Debug, Clone)]
pub struct Theory {
    pub name: TheoryName,
    pub fixed: Vec<(&'static str, &'static str)>,
    pub schemata: Vec<Schema>,
}

impl Theory {
    pub fn uses_functions(&self) -> bool {
        !matches!(self.name, TheoryName::Dlo | TheoryName::DloNeg)
    }

    pub fn uses_order(&self) -> bool {
        !matches!(self.name, TheoryName::Acf)
    }
}

const DLO_CORE: [(&str, &str); 5] = [
    ("A2", "forall x, y. x = y | x < y | y < x"),
    ("A3", "forall x, y, z. x < y & y < z -> x < z"),
    ("A4", "forall x, y. x < y -> exists z. x < z & z < y"),
    ("A5", "forall x. exists y. x < y"),
    ("A6", "forall x. exists y. y < x"),
];

pub fn theory(name: TheoryName) -> Theory {
    match name {
        TheoryName::Dlo => Theory {
            name,
            fixed: std::iter::once(("A1", "forall x. x < x -> bot"))
                .chain(DLO_CORE)
                .collect(),
            schemata: vec![],
        },
        TheoryName::DloNeg => Theory {
            name,
            fixed: std::iter::once(("A1", "forall x. ~(x < x)"))
                .chain(DLO_CORE)
                .collect(),
            schemata: vec![],
        },
        TheoryName::Rcf => Theory {
            name,
            fixed: vec![
                ("A1", "forall x. x < x -> bot"),
                ("A2", "forall x, y. x = y | x < y | y < x"),
                ("A3", "forall x, y, z. x < y & y < z -> x < z"),
                ("A4", "forall x, y. 0 < x & 0 < y -> 0 < x * y"),
                ("A5", "forall x, y, z. x < y -> x + z < y + z"),
                ("A6", "forall x. exists y. 0 < x -> x = y * y"),
                ("A8", "forall x, y, z. (x + y) + z = x + (y + z)"),
                ("A9", "forall x. x + 0 = x"),
                ("A10", "forall x. x + -x = 0"),
                ("A11", "forall x, y. x + y = y + x"),
                ("A12", "forall x, y, z. (x * y) * z = x * (y * z)"),
                ("A13", "forall x. x * 1 = x"),
                ("A14", "forall x. ~(x = 0) -> x * inv(x) = 1"),
                ("A15", "forall x, y. x * y = y * x"),
                ("A16", "forall x, y, z. x * (y + z) = (x * y) + (x * z)"),
                ("A17", "0 = 1 -> bot"),
            ],
            schemata: vec![Schema { id: "A7", side: SideCondition::OddPositive, build: root_schema }],
        },
        TheoryName::Presburger => Theory {
            name,
            fixed: vec![
                ("A1", "forall x. x < x -> bot"),
                ("A2", "forall x, y. x = y | x < y | y < x"),
                ("A3", "forall x, y, z. x < y & y < z -> x < z"),
                ("A4", "forall x, y, z. x < y -> x + z < y + z"),
                ("A5", "forall x, y, z. (x + y) + z = x + (y + z)"),
                ("A6", "forall x. x + 0 = x"),
                ("A7", "forall x, y. x + y = y + x"),
                ("A8", "0 < 1"),
                ("A9", "forall x. (x = 0 | x < 0) | (1 < x | x = 1)"),
            ],
            schemata: vec![
                Schema { id: "A10", side: SideCondition::GreaterThanOne, build: divisibility_schema },
                Schema { id: "A11", side: SideCondition::GreaterThanOne, build: unique_residue_schema },
            ],
        },
        TheoryName::Doag => Theory {
            name,
            fixed: vec![
                ("A1", "forall x. x < x -> bot"),
                ("A2", "forall x, y. x = y | x < y | y < x"),
                ("A3", "forall x, y, z. x < y & y < z -> x < z"),
                ("A4", "forall x, y, z. x < y -> x + z < y + z"),
                ("A6", "forall x, y, z. (x + y) + z = x + (y + z)"),
                ("A7", "forall x. x + 0 = x"),
                ("A8", "forall x. x + -x = 0"),
                ("A9", "forall x, y. x + y = y + x"),
            ],
            schemata: vec![Schema { id: "A5", side: SideCondition::GreaterThanOne, build: divisible_schema }],
        },
        TheoryName::Acf => Theory {
            name,
            fixed: vec![
                ("A1", "forall x, y, z. (x + y) + z = x + (y + z)"),
                ("A2", "forall x. x + 0 = x"),
                ("A3", "forall x. x + -x = 0"),
                ("A4", "forall x, y. x + y = y + x"),
                ("A5", "forall x, y, z. (x * y) * z = x * (y * z)"),
                ("A6", "forall x. x * 1 = x"),
                ("A7", "forall x. ~(x = 0) -> x * inv(x) = 1"),
                ("A8", "forall x, y. x * y = y * x"),
                ("A9", "forall x, y, z. x * (y + z) = (x * y) + (x * z)"),
                ("A10", "0 = 1 -> bot"),
            ],
            schemata: vec![Schema { id: "A11", side: SideCondition::Positive, build: root_schema }],
        },
    }
}

/// `v + v + ... + v`, `n >= 1` summands, left-associated.
fn n_fold_sum(v: &str, n: u32) -> Term {
    let mut t = ast::var(v);
    for _ in 1..n {
        t = ast::plus(t, ast::var(v));
    }
    t
}

/// `v^n` as left-associated iterated product; `n = 0` is not constructed.
fn power(v: &str, n: u32) -> Term {
    let mut t = ast::var(v);
    for _ in 1..n {
        t = ast::times(t, ast::var(v));
    }
    t
}

/// `x + 1 + ... + 1` with `i` ones, left-associated; `i = 0` is bare `x`.
fn plus_ones(x: &str, i: u32) -> Term {
    let mut t = ast::var(x);
    for _ in 0..i {
        t = ast::plus(t, Term::One);
    }
    t
}

/// `forall x1..xn. exists y. y^n + x1*y^(n-1) + ... + xn = 0`
fn root_schema(n: u32) -> Formula {
    let vars: Vec<String> = (1..=n).map(|i| format!("x{}", i)).collect();
    let mut sum = power("y", n);
    for (idx, v) in vars.iter().enumerate() {
        let degree = n - 1 - idx as u32;
        let monomial = if degree == 0 {
            ast::var(v)
        } else {
            ast::times(ast::var(v), power("y", degree))
        };
        sum = ast::plus(sum, monomial);
    }
    let body = ast::exists("y", ast::equal(sum, Term::Zero));
    vars.iter().rev().fold(body, |acc, v| ast::forall(v, acc))
}

/// `forall x. P_n(x) <-> exists y. x = y + ... + y` (n summands)
fn divisibility_schema(n: u32) -> Formula {
    ast::forall(
        "x",
        ast::iff(
            ast::pred(n, ast::var("x")),
            ast::exists("y", ast::equal(ast::var("x"), n_fold_sum("y", n))),
        ),
    )
}

/// `forall x. OR_i ( P_n(x + i) & AND_{j != i} (P_n(x + j) -> bot) )`
fn unique_residue_schema(n: u32) -> Formula {
    let mut disjuncts = Vec::new();
    for i in 0..n {
        let mut conj = ast::pred(n, plus_ones("x", i));
        for j in 0..n {
            if j != i {
                conj = ast::and(conj, ast::imp(ast::pred(n, plus_ones("x", j)), Formula::Bot));
            }
        }
        disjuncts.push(conj);
    }
    let body = disjuncts
        .into_iter()
        .reduce(ast::or)
        .expect("n > 1 gives at least two disjuncts");
    ast::forall("x", body)
}

/// `forall y. exists x. x + x + ... + x = y` (n summands)
fn divisible_schema(n: u32) -> Formula {
    ast::forall("y", ast::exists("x", ast::equal(n_fold_sum("x", n), ast::var("y"))))
}

/// Instantiates one schema at parameter `n`, enforcing its side condition.
pub fn instantiate_schema(name: TheoryName, axiom_id: &str, n: u32) -> Result<Formula, TheoryError> {
    let t = theory(name);
    let schema = t
        .schemata
        .iter()
        .find(|s| s.id == axiom_id)
        .ok_or_else(|| TheoryError::NotASchema { theory: name, axiom: axiom_id.to_string() })?;
    if !schema.side.admits(n) {
        return Err(TheoryError::SideCondition {
            axiom: axiom_id.to_string(),
            n,
            requirement: schema.side.requirement().to_string(),
        });
    }
    Ok((schema.build)(n))
}

/// Fixed axioms plus every schema instance with parameter at most `bound`.
pub fn axioms_of(name: TheoryName, bound: u32) -> Result<Vec<(String, Formula)>, TheoryError> {
    if bound < 2 {
        return Err(TheoryError::BadBound(bound));
    }
    let t = theory(name);
    let mut out: Vec<(String, Formula)> = t
        .fixed
        .iter()
        .map(|(id, text)| {
            let f = parse_formula(text).unwrap_or_else(|e| panic!("axiom {} of {}: {}", id, name, e));
            (id.to_string(), f)
        })
        .collect();
    for schema in &t.schemata {
        for n in 1..=bound {
            if schema.side.admits(n) {
                out.push((format!("{}({})", schema.id, n), (schema.build)(n)));
            }
        }
    }
    Ok(out)
}
