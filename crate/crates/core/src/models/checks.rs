//! Model-level checks: heredity, the hereditary and world-invariance
//! property batteries, definable sets, sentence agreement between models,
//! and the equality-axiom audit for valuated equality.

use super::domain::{Assignment, DomainSpec, Elem, EqMode};
use super::eval::{eval_at_index, eval_sampled, representatives};
use super::{eval, Model, ModelError};
use crate::exec;
use crate::frames::{satisfies, Condition, B_CONDITIONS};
use crate::rational::{format_rational, qi, Q};
use crate::syntax::ast;
use crate::syntax::Formula;
use std::fmt;

/// Pass/fail outcome with human-readable failure witnesses; satisfied
/// iff the failure list is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub satisfied: bool,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &str, failures: Vec<String>) -> CheckReport {
        CheckReport { name: name.to_string(), satisfied: failures.is_empty(), failures }
    }
}

/// One orbit of the order automorphisms fixing the cut points, or a
/// single element of a finite domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitDesc {
    AllRationals,
    RayBelow(Q),
    Point(Q),
    Open(Q, Q),
    RayAbove(Q),
    Element(Elem),
}

impl fmt::Display for OrbitDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitDesc::AllRationals => write!(f, "all rationals"),
            OrbitDesc::RayBelow(c) => write!(f, "(-inf, {})", format_rational(c)),
            OrbitDesc::Point(c) => write!(f, "{{{}}}", format_rational(c)),
            OrbitDesc::Open(a, b) => write!(f, "({}, {})", format_rational(a), format_rational(b)),
            OrbitDesc::RayAbove(c) => write!(f, "({}, +inf)", format_rational(c)),
            OrbitDesc::Element(e) => write!(f, "{{{}}}", e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitVerdict {
    pub orbit: OrbitDesc,
    pub representative: Elem,
    pub holds: bool,
}

/// Which orbits satisfy a one-free-variable formula at the designated
/// world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinableSet {
    pub variable: String,
    pub orbits: Vec<OrbitVerdict>,
}

impl DefinableSet {
    pub fn members(&self) -> Vec<Elem> {
        self.orbits
            .iter()
            .filter(|o| o.holds)
            .map(|o| o.representative.clone())
            .collect()
    }

    pub fn representatives(&self) -> Vec<Elem> {
        self.orbits.iter().map(|o| o.representative.clone()).collect()
    }

    pub fn is_full(&self) -> bool {
        self.orbits.iter().all(|o| o.holds)
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.iter().all(|o| !o.holds)
    }
}

pub fn definable_set(m: &Model, f: &Formula) -> Result<DefinableSet, ModelError> {
    let free = f.free_vars();
    if free.len() != 1 {
        return Err(ModelError::Precondition(format!(
            "definable sets need exactly one free variable, found {:?}",
            free
        )));
    }
    let v = free.into_iter().next().unwrap();
    let s = m.frame().designated();
    let mut orbits = Vec::new();
    match m.domain() {
        DomainSpec::Finite(elems) => {
            for e in elems {
                let a: Assignment = [(v.clone(), e.clone())].into_iter().collect();
                let holds = eval_at_index(m, s, f, &a)?;
                orbits.push(OrbitVerdict {
                    orbit: OrbitDesc::Element(e.clone()),
                    representative: e.clone(),
                    holds,
                });
            }
        }
        DomainSpec::RationalOrder => {
            let cuts = m.cut_points();
            let descs: Vec<(OrbitDesc, Q)> = if cuts.is_empty() {
                vec![(OrbitDesc::AllRationals, qi(0))]
            } else {
                let mut d = vec![(
                    OrbitDesc::RayBelow(cuts[0].clone()),
                    cuts[0].clone() - qi(1),
                )];
                for (i, c) in cuts.iter().enumerate() {
                    d.push((OrbitDesc::Point(c.clone()), c.clone()));
                    if let Some(next) = cuts.get(i + 1) {
                        d.push((
                            OrbitDesc::Open(c.clone(), next.clone()),
                            crate::rational::midpoint(c, next),
                        ));
                    }
                }
                let last = cuts.last().unwrap();
                d.push((OrbitDesc::RayAbove(last.clone()), last.clone() + qi(1)));
                d
            };
            for (orbit, rep) in descs {
                let a: Assignment = [(v.clone(), Elem::Rat(rep.clone()))].into_iter().collect();
                let holds = eval_at_index(m, s, f, &a)?;
                orbits.push(OrbitVerdict { orbit, representative: Elem::Rat(rep), holds });
            }
        }
    }
    Ok(DefinableSet { variable: v, orbits })
}

/// Point pairs used to compare atomic valuations at two worlds. Over the
/// rational order both coordinates need one point per cell, so the
/// representative construction is iterated once.
fn comparison_points(m: &Model) -> Vec<Elem> {
    match m.domain() {
        DomainSpec::Finite(elems) => elems.clone(),
        DomainSpec::RationalOrder => {
            let first = representatives(m, &[]);
            representatives(m, &first).into_iter().map(Elem::Rat).collect()
        }
    }
}

/// Verifies the heredity condition: along every `R s a b`, the atomic
/// extensions at `a` are contained in those at `b`.
pub fn check_heredity(m: &Model) -> Result<CheckReport, ModelError> {
    let s = m.frame().designated();
    let points = comparison_points(m);
    let mut failures = Vec::new();
    for (a, b) in m.frame().successors(s) {
        let an = m.frame().world_name(a);
        let bn = m.frame().world_name(b);
        for x in &points {
            for y in &points {
                let at_a = m.order_at(a).holds(x, y).ok_or_else(|| {
                    ModelError::IllegalSpec(format!("order undefined on ({}, {})", x, y))
                })?;
                if at_a {
                    let at_b = m.order_at(b).holds(x, y).unwrap_or(false);
                    if !at_b {
                        failures.push(format!(
                            "R s {} {}: {} < {} holds at {} but not at {}",
                            an, bn, x, y, an, bn
                        ));
                    }
                }
            }
        }
        if let EqMode::Valuated(tables) = m.eq_mode() {
            for pair in &tables[a] {
                if !tables[b].contains(pair) {
                    failures.push(format!(
                        "R s {} {}: {} = {} holds at {} but not at {}",
                        an, bn, pair.0, pair.1, an, bn
                    ));
                }
            }
        }
        for ((world, n), ext) in m.preds() {
            if *world == a {
                let at_b = m.pred_extension(b, *n);
                for e in ext {
                    if !at_b.map(|s| s.contains(e)).unwrap_or(false) {
                        failures.push(format!(
                            "R s {} {}: P{}({}) holds at {} but not at {}",
                            an, bn, n, e, an, bn
                        ));
                    }
                }
            }
        }
    }
    failures.sort();
    failures.dedup();
    Ok(CheckReport::new("heredity", failures))
}

/// Property battery for the hereditary condition lifted to arbitrary
/// formulas: along every `R s a b`, truth at `a` implies truth at `b`.
pub fn hereditary_property_test(
    m: &Model,
    samples: &[(Formula, Assignment)],
) -> Result<CheckReport, ModelError> {
    let heredity = check_heredity(m)?;
    if !heredity.satisfied {
        return Err(ModelError::Precondition(format!(
            "model violates atomic heredity: {}",
            heredity.failures.join("; ")
        )));
    }
    for c in B_CONDITIONS {
        if !satisfies(m.frame(), c) {
            return Err(ModelError::Precondition(format!(
                "frame violates {}",
                c
            )));
        }
    }
    let s = m.frame().designated();
    let pairs = m.frame().successors(s);
    let results: Vec<Vec<String>> = exec::map_results(samples, |(f, a)| -> Result<Vec<String>, ModelError> {
        let mut local = Vec::new();
        for &(wa, wb) in &pairs {
            if eval_at_index(m, wa, f, a)? && !eval_at_index(m, wb, f, a)? {
                local.push(format!(
                    "{} with {:?} holds at {} but not at {}",
                    f,
                    a,
                    m.frame().world_name(wa),
                    m.frame().world_name(wb)
                ));
            }
        }
        Ok(local)
    })?;
    Ok(CheckReport::new(
        "hereditary-property",
        results.into_iter().flatten().collect(),
    ))
}

/// Property battery for world invariance: every sampled formula has the
/// same truth value at every world as at `s`. `hypotheses`, when given,
/// are sentences that must hold at `s` (the frame must also satisfy K and
/// seriality); pass `None` to override hypothesis checking.
pub fn world_invariance_test(
    m: &Model,
    samples: &[(Formula, Assignment)],
    hypotheses: Option<&[Formula]>,
) -> Result<CheckReport, ModelError> {
    if let Some(axioms) = hypotheses {
        for c in [Condition::K, Condition::Seriality] {
            if !satisfies(m.frame(), c) {
                return Err(ModelError::Precondition(format!("frame violates {}", c)));
            }
        }
        let s = m.frame().designated();
        for ax in axioms {
            if !eval_at_index(m, s, ax, &Assignment::new())? {
                return Err(ModelError::Precondition(format!(
                    "hypothesis `{}` fails at the designated world",
                    ax
                )));
            }
        }
    }
    let s = m.frame().designated();
    let worlds: Vec<usize> = (0..m.frame().world_count()).collect();
    let results: Vec<Vec<String>> = exec::map_results(samples, |(f, a)| -> Result<Vec<String>, ModelError> {
        let at_s = eval_at_index(m, s, f, a)?;
        let mut local = Vec::new();
        for &w in &worlds {
            if eval_at_index(m, w, f, a)? != at_s {
                local.push(format!(
                    "{} with {:?}: value at {} differs from value at {}",
                    f,
                    a,
                    m.frame().world_name(w),
                    m.frame().designated_name()
                ));
            }
        }
        Ok(local)
    })?;
    Ok(CheckReport::new(
        "world-invariance",
        results.into_iter().flatten().collect(),
    ))
}

/// Per-sentence verdicts at the two designated worlds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementReport {
    pub rows: Vec<(String, bool, bool)>,
    pub agree: bool,
}

pub fn models_agree(
    m1: &Model,
    m2: &Model,
    battery: &[Formula],
) -> Result<AgreementReport, ModelError> {
    let empty = Assignment::new();
    let mut rows = Vec::new();
    for f in battery {
        if !f.is_sentence() {
            return Err(ModelError::Precondition(format!(
                "battery formula `{}` is not closed",
                f
            )));
        }
        let a = eval(m1, m1.frame().designated_name(), f, &empty)?;
        let b = eval(m2, m2.frame().designated_name(), f, &empty)?;
        rows.push((f.to_string(), a, b));
    }
    let agree = rows.iter().all(|(_, a, b)| a == b);
    Ok(AgreementReport { rows, agree })
}

/// Audits the minimal equality principles under a valuated `=`:
/// reflexivity, conjunction-form transitivity, and substitution instances
/// for each sampled one-free-variable formula.
pub fn check_equality_axioms(
    m: &Model,
    formula_sample: &[Formula],
) -> Result<CheckReport, ModelError> {
    if !matches!(m.eq_mode(), EqMode::Valuated(_)) {
        return Err(ModelError::Precondition(
            "equality-axiom audit applies to valuated equality only".into(),
        ));
    }
    if !m.domain().is_finite() {
        return Err(ModelError::Precondition(
            "equality-axiom audit requires a finite domain".into(),
        ));
    }
    let s = m.frame().designated();
    let empty = Assignment::new();
    let mut failures = Vec::new();

    let refl = ast::forall("x", ast::equal(ast::var("x"), ast::var("x")));
    if !eval_at_index(m, s, &refl, &empty)? {
        failures.push("(R) forall x. x = x".to_string());
    }
    let trans = ast::forall_many(
        &["x", "y", "z"],
        ast::imp(
            ast::and(
                ast::equal(ast::var("x"), ast::var("y")),
                ast::equal(ast::var("y"), ast::var("z")),
            ),
            ast::equal(ast::var("x"), ast::var("z")),
        ),
    );
    if !eval_at_index(m, s, &trans, &empty)? {
        failures.push("(T) transitivity".to_string());
    }
    for f in formula_sample {
        let free = f.free_vars();
        if free.len() != 1 {
            return Err(ModelError::Precondition(format!(
                "substitution instances need one free variable, `{}` has {:?}",
                f, free
            )));
        }
        let v = free.into_iter().next().unwrap();
        let v2 = ast::fresh_name(&v, &|cand| !f.all_vars().contains(cand));
        let instance = ast::forall_many(
            &[v.as_str(), v2.as_str()],
            ast::imp(
                ast::and(ast::equal(ast::var(&v), ast::var(&v2)), f.clone()),
                f.substitute(&v, &ast::var(&v2)),
            ),
        );
        if !eval_at_index(m, s, &instance, &empty)? {
            failures.push(format!("(L) instance for {}", f));
        }
    }
    Ok(CheckReport::new("equality-axioms", failures))
}

/// Orbit-soundness oracle: representative-based evaluation must agree
/// with evaluation where every quantifier additionally ranges over the
/// given sample points.
pub fn orbit_agreement(
    m: &Model,
    items: &[(Formula, String, Assignment)],
    extra: &[Q],
) -> Result<CheckReport, ModelError> {
    let results = exec::map_results(items, |it| orbit_item(m, it, extra))?;
    Ok(CheckReport::new("orbit-agreement", results.into_iter().flatten().collect()))
}

/// Sequential twin of [`orbit_agreement`], kept for benchmarking the
/// parallel dispatch against a single-threaded run.
pub fn orbit_agreement_seq(
    m: &Model,
    items: &[(Formula, String, Assignment)],
    extra: &[Q],
) -> Result<CheckReport, ModelError> {
    let results = exec::map_results_seq(items, |it| orbit_item(m, it, extra))?;
    Ok(CheckReport::new("orbit-agreement", results.into_iter().flatten().collect()))
}

fn orbit_item(
    m: &Model,
    (f, world, a): &(Formula, String, Assignment),
    extra: &[Q],
) -> Result<Option<String>, ModelError> {
    let plain = eval(m, world, f, a)?;
    let sampled = eval_sampled(m, world, f, a, extra)?;
    if plain == sampled {
        Ok(None)
    } else {
        Ok(Some(format!(
            "{} @ {} with {:?}: representatives say {}, sampling says {}",
            f, world, a, plain, sampled
        )))
    }
}
