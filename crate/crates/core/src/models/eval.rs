//! The formula evaluator.
//!
//! Truth at a world: `bot` never, `top` always, `&`/`|` pointwise, `~A`
//! holds at `w` iff `A` fails at `w*`, and `A -> B` holds at `w` iff for
//! every triple `R w w1 w2`, truth of `A` at `w1` forces `B` at `w2`.
//! Quantifiers range over the finite domain by exhaustion; over the
//! rational order they are decided by testing one point per orbit of the
//! order automorphisms fixing the model's cut points and the current
//! assignment values (representatives are recomputed at each quantifier).

use super::domain::{Assignment, DomainSpec, Elem, EqMode};
use super::{Model, ModelError};
use crate::rational::{midpoint, qi, Q};
use crate::syntax::{Formula, Term};

/// Orbit representatives: the cut points and parameters themselves, the
/// midpoints of consecutive ones, and one point beyond each end. For an
/// empty cut/parameter set this degenerates to `{0}`.
pub fn representatives(m: &Model, params: &[Q]) -> Vec<Q> {
    let mut s: Vec<Q> = m.cut_points();
    s.extend(params.iter().cloned());
    s.sort();
    s.dedup();
    if s.is_empty() {
        return vec![qi(0)];
    }
    let mut out = s.clone();
    for pair in s.windows(2) {
        out.push(midpoint(&pair[0], &pair[1]));
    }
    out.push(s.first().unwrap() - qi(1));
    out.push(s.last().unwrap() + qi(1));
    out.sort();
    out.dedup();
    out
}

type Env = Vec<(String, Elem)>;

fn lookup<'a>(env: &'a Env, name: &str) -> Option<&'a Elem> {
    env.iter().rev().find(|(n, _)| n == name).map(|(_, e)| e)
}

fn term_value(m: &Model, t: &Term, env: &Env) -> Result<Elem, ModelError> {
    match t {
        Term::Var(name) => lookup(env, name)
            .cloned()
            .ok_or_else(|| ModelError::UnboundVariable(name.clone())),
        Term::Zero | Term::One => {
            let funcs = m
                .funcs()
                .ok_or_else(|| ModelError::NoFunctions("constant 0/1".into()))?;
            let slot = if matches!(t, Term::Zero) { &funcs.zero } else { &funcs.one };
            slot.clone()
                .ok_or_else(|| ModelError::NoFunctions("constant 0/1 not interpreted".into()))
        }
        Term::Plus(l, r) | Term::Times(l, r) => {
            let a = term_value(m, l, env)?;
            let b = term_value(m, r, env)?;
            let funcs = m
                .funcs()
                .ok_or_else(|| ModelError::NoFunctions("binary function".into()))?;
            let table = if matches!(t, Term::Plus(..)) { &funcs.plus } else { &funcs.times };
            table
                .get(&(a.clone(), b.clone()))
                .cloned()
                .ok_or_else(|| ModelError::NoFunctions(format!("table missing entry ({}, {})", a, b)))
        }
        Term::Neg(arg) | Term::Inv(arg) => {
            let a = term_value(m, arg, env)?;
            let funcs = m
                .funcs()
                .ok_or_else(|| ModelError::NoFunctions("unary function".into()))?;
            let table = if matches!(t, Term::Neg(_)) { &funcs.neg } else { &funcs.inv };
            table
                .get(&a)
                .cloned()
                .ok_or_else(|| ModelError::NoFunctions(format!("table missing entry {}", a)))
        }
    }
}

fn equality_holds(m: &Model, w: usize, a: &Elem, b: &Elem) -> bool {
    match m.eq_mode() {
        EqMode::Logical => a == b,
        EqMode::Valuated(tables) => tables[w].contains(&(a.clone(), b.clone())),
    }
}

fn quantifier_candidates(
    m: &Model,
    env: &Env,
    extra: Option<&[Q]>,
) -> Result<Vec<Elem>, ModelError> {
    match m.domain() {
        DomainSpec::Finite(elems) => Ok(elems.clone()),
        DomainSpec::RationalOrder => {
            let mut params: Vec<Q> = Vec::with_capacity(env.len());
            for (name, e) in env {
                match e {
                    Elem::Rat(q) => params.push(q.clone()),
                    Elem::Sym(_) => {
                        return Err(ModelError::IllegalSpec(format!(
                            "assignment binds `{}` to a non-rational over the rational domain",
                            name
                        )))
                    }
                }
            }
            let mut reps = representatives(m, &params);
            if let Some(points) = extra {
                reps.extend(points.iter().cloned());
                reps.sort();
                reps.dedup();
            }
            Ok(reps.into_iter().map(Elem::Rat).collect())
        }
    }
}

fn go(
    m: &Model,
    extra: Option<&[Q]>,
    w: usize,
    f: &Formula,
    env: &mut Env,
) -> Result<bool, ModelError> {
    match f {
        Formula::Bot => Ok(false),
        Formula::Top => Ok(true),
        Formula::Less(l, r) => {
            let a = term_value(m, l, env)?;
            let b = term_value(m, r, env)?;
            m.order_at(w).holds(&a, &b).ok_or_else(|| {
                ModelError::IllegalSpec(format!(
                    "order at world `{}` is undefined on ({}, {})",
                    m.frame().world_name(w),
                    a,
                    b
                ))
            })
        }
        Formula::Equal(l, r) => {
            let a = term_value(m, l, env)?;
            let b = term_value(m, r, env)?;
            Ok(equality_holds(m, w, &a, &b))
        }
        Formula::Pred(n, t) => {
            if !m.domain().is_finite() {
                return Err(ModelError::IllegalSpec(
                    "P_n predicates require a finite domain".into(),
                ));
            }
            let v = term_value(m, t, env)?;
            Ok(m.pred_extension(w, *n).map(|s| s.contains(&v)).unwrap_or(false))
        }
        Formula::And(l, r) => Ok(go(m, extra, w, l, env)? && go(m, extra, w, r, env)?),
        Formula::Or(l, r) => Ok(go(m, extra, w, l, env)? || go(m, extra, w, r, env)?),
        Formula::Not(g) => Ok(!go(m, extra, m.frame().star(w), g, env)?),
        Formula::Imp(l, r) => {
            for (w1, w2) in m.frame().successors(w) {
                if go(m, extra, w1, l, env)? && !go(m, extra, w2, r, env)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Forall(x, body) => {
            for cand in quantifier_candidates(m, env, extra)? {
                env.push((x.clone(), cand));
                let holds = go(m, extra, w, body, env);
                env.pop();
                if !holds? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Exists(x, body) => {
            for cand in quantifier_candidates(m, env, extra)? {
                env.push((x.clone(), cand));
                let holds = go(m, extra, w, body, env);
                env.pop();
                if holds? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

fn env_from(a: &Assignment) -> Env {
    a.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
}

/// Evaluates `f` at the named world under assignment `a`.
pub fn eval(m: &Model, world: &str, f: &Formula, a: &Assignment) -> Result<bool, ModelError> {
    let w = m.frame().world_index(world)?;
    eval_at_index(m, w, f, a)
}

pub fn eval_at_index(m: &Model, w: usize, f: &Formula, a: &Assignment) -> Result<bool, ModelError> {
    go(m, None, w, f, &mut env_from(a))
}

/// Like `eval`, but every quantifier additionally ranges over the given
/// sample points. Used by the orbit-soundness oracle: on sound models the
/// verdict must not change.
pub fn eval_sampled(
    m: &Model,
    world: &str,
    f: &Formula,
    a: &Assignment,
    extra: &[Q],
) -> Result<bool, ModelError> {
    let w = m.frame().world_index(world)?;
    go(m, Some(extra), w, f, &mut env_from(a))
}

/// Evaluates and renders an indented trace of subformula verdicts down to
/// `max_depth` connective levels, for mismatch reports.
pub fn eval_explain(
    m: &Model,
    world: &str,
    f: &Formula,
    a: &Assignment,
    max_depth: usize,
) -> Result<(bool, String), ModelError> {
    let w = m.frame().world_index(world)?;
    let mut lines = Vec::new();
    let verdict = explain(m, w, f, &mut env_from(a), max_depth, 0, &mut lines)?;
    Ok((verdict, lines.join("\n")))
}

fn explain(
    m: &Model,
    w: usize,
    f: &Formula,
    env: &mut Env,
    budget: usize,
    indent: usize,
    lines: &mut Vec<String>,
) -> Result<bool, ModelError> {
    let verdict = go(m, None, w, f, env)?;
    let env_str = if env.is_empty() {
        String::new()
    } else {
        let binds: Vec<String> = env.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        format!(" [{}]", binds.join(", "))
    };
    lines.push(format!(
        "{}{} @ {}{} = {}",
        "  ".repeat(indent),
        f,
        m.frame().world_name(w),
        env_str,
        verdict
    ));
    if budget == 0 {
        return Ok(verdict);
    }
    match f {
        Formula::And(l, r) | Formula::Or(l, r) => {
            explain(m, w, l, env, budget - 1, indent + 1, lines)?;
            explain(m, w, r, env, budget - 1, indent + 1, lines)?;
        }
        Formula::Not(g) => {
            explain(m, m.frame().star(w), g, env, budget - 1, indent + 1, lines)?;
        }
        Formula::Imp(l, r) => {
            let succ = m.frame().successors(w);
            if succ.is_empty() {
                lines.push(format!(
                    "{}(no R-triples from {}: implication is vacuous)",
                    "  ".repeat(indent + 1),
                    m.frame().world_name(w)
                ));
            }
            for (w1, w2) in succ {
                lines.push(format!(
                    "{}via R {} {} {}:",
                    "  ".repeat(indent + 1),
                    m.frame().world_name(w),
                    m.frame().world_name(w1),
                    m.frame().world_name(w2)
                ));
                explain(m, w1, l, env, budget - 1, indent + 2, lines)?;
                explain(m, w2, r, env, budget - 1, indent + 2, lines)?;
            }
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let is_forall = matches!(f, Formula::Forall(..));
            let mut shown = None;
            for cand in quantifier_candidates(m, env, None)? {
                env.push((x.clone(), cand.clone()));
                let inner = go(m, None, w, body, env);
                env.pop();
                if inner? != is_forall {
                    shown = Some(cand);
                    break;
                }
            }
            match shown {
                Some(cand) => {
                    lines.push(format!(
                        "{}{} {} = {}:",
                        "  ".repeat(indent + 1),
                        if is_forall { "fails at" } else { "witness" },
                        x,
                        cand
                    ));
                    env.push((x.clone(), cand));
                    explain(m, w, body, env, budget - 1, indent + 2, lines)?;
                    env.pop();
                }
                None => {
                    lines.push(format!(
                        "{}({} over all representatives; sample instantiation below)",
                        "  ".repeat(indent + 1),
                        if is_forall { "holds" } else { "fails" }
                    ));
                    if let Some(cand) = quantifier_candidates(m, env, None)?.into_iter().next() {
                        env.push((x.clone(), cand));
                        explain(m, w, body, env, budget - 1, indent + 2, lines)?;
                        env.pop();
                    }
                }
            }
        }
        _ => {}
    }
    Ok(verdict)
}
