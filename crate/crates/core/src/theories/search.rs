//! Bounded exhaustive model search over the order signature.
//!
//! Frames come from the frame enumerator; for each frame every
//! heredity-consistent pair-valuation of `<` over domains up to the bound
//! is generated and the target sentences are decided by a compact
//! evaluator over bitmask valuations. The search order is deterministic
//! (frame enumeration order, then domain size, then valuation counter)
//! and the parallel dispatch keeps the sequentially first hit.

use super::{axioms_of, theory, TheoryError, TheoryName};
use crate::exec;
use crate::frames::{enumerate_frames, Condition, Frame};
use crate::models::{DomainSpec, Elem, EqMode, Model, WorldOrderSpec};
use crate::rational::qi;
use crate::syntax::{Formula, Term};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_domain: usize,
    pub max_worlds: usize,
    /// The exhaustive search is exponential in both bounds; sizes beyond
    /// (4, 2) are refused unless this is set.
    pub override_guard: bool,
}

impl SearchBounds {
    pub fn new(max_domain: usize, max_worlds: usize) -> SearchBounds {
        SearchBounds { max_domain, max_worlds, override_guard: false }
    }

    fn check(&self) -> Result<(), TheoryError> {
        if self.max_domain == 0 || self.max_worlds == 0 {
            return Err(TheoryError::SignatureMismatch(
                "search bounds must be positive".into(),
            ));
        }
        if !self.override_guard && (self.max_domain > 4 || self.max_worlds > 2) {
            return Err(TheoryError::GuardExceeded);
        }
        Ok(())
    }
}

struct CompactFrame {
    n_worlds: usize,
    star: Vec<usize>,
    succ: Vec<Vec<(usize, usize)>>,
    designated: usize,
}

impl CompactFrame {
    fn of(frame: &Frame) -> CompactFrame {
        let n = frame.world_count();
        CompactFrame {
            n_worlds: n,
            star: (0..n).map(|w| frame.star(w)).collect(),
            succ: (0..n).map(|w| frame.successors(w)).collect(),
            designated: frame.designated(),
        }
    }
}

struct CompactModel<'f> {
    frame: &'f CompactFrame,
    k: usize,
    /// One bitmask per world; bit `a * k + b` set means `a < b` there.
    less: &'f [u32],
}

fn lookup(env: &[(&str, usize)], name: &str) -> usize {
    env.iter()
        .rev()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| *v)
        .expect("search formulas are closed")
}

fn var_name(t: &Term) -> &str {
    match t {
        Term::Var(v) => v,
        _ => unreachable!("search formulas are validated to the order signature"),
    }
}

fn eval_compact<'a>(
    m: &CompactModel<'_>,
    w: usize,
    f: &'a Formula,
    env: &mut Vec<(&'a str, usize)>,
) -> bool {
    match f {
        Formula::Bot => false,
        Formula::Top => true,
        Formula::Less(l, r) => {
            let a = lookup(env, var_name(l));
            let b = lookup(env, var_name(r));
            m.less[w] >> (a * m.k + b) & 1 == 1
        }
        Formula::Equal(l, r) => lookup(env, var_name(l)) == lookup(env, var_name(r)),
        Formula::Pred(..) => unreachable!("search formulas are validated to the order signature"),
        Formula::And(l, r) => eval_compact(m, w, l, env) && eval_compact(m, w, r, env),
        Formula::Or(l, r) => eval_compact(m, w, l, env) || eval_compact(m, w, r, env),
        Formula::Not(g) => !eval_compact(m, m.frame.star[w], g, env),
        Formula::Imp(l, r) => {
            for &(w1, w2) in &m.frame.succ[w] {
                if eval_compact(m, w1, l, env) && !eval_compact(m, w2, r, env) {
                    return false;
                }
            }
            true
        }
        Formula::Forall(x, body) => {
            for cand in 0..m.k {
                env.push((x, cand));
                let ok = eval_compact(m, w, body, env);
                env.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
        Formula::Exists(x, body) => {
            for cand in 0..m.k {
                env.push((x, cand));
                let ok = eval_compact(m, w, body, env);
                env.pop();
                if ok {
                    return true;
                }
            }
            false
        }
    }
}

fn validate_search_formula(f: &Formula) -> Result<(), TheoryError> {
    if !f.is_order_signature() {
        return Err(TheoryError::SignatureMismatch(format!(
            "`{}` uses symbols outside the order signature; the search \
             enumerates order valuations only",
            f
        )));
    }
    if !f.is_sentence() {
        return Err(TheoryError::SignatureMismatch(format!("`{}` is not closed", f)));
    }
    Ok(())
}

/// Scans every heredity-consistent valuation of this frame up to domain
/// size `max_domain`, returning the first accepted `(k, masks)`.
fn scan_frame(
    frame: &Frame,
    max_domain: usize,
    accept: &(dyn Fn(&CompactModel<'_>) -> bool + Sync),
) -> Option<(usize, Vec<u32>)> {
    let cf = CompactFrame::of(frame);
    let heredity_pairs: Vec<(usize, usize)> = cf.succ[cf.designated]
        .iter()
        .copied()
        .filter(|(a, b)| a != b)
        .collect();
    for k in 1..=max_domain {
        let bits = k * k;
        let total_bits = cf.n_worlds * bits;
        let mut masks = vec![0u32; cf.n_worlds];
        let limit: u64 = 1u64 << total_bits;
        let mut counter: u64 = 0;
        while counter < limit {
            for w in 0..cf.n_worlds {
                masks[w] = ((counter >> (w * bits)) & ((1u64 << bits) - 1)) as u32;
            }
            let hereditary = heredity_pairs
                .iter()
                .all(|&(a, b)| masks[a] & !masks[b] == 0);
            if hereditary {
                let model = CompactModel { frame: &cf, k, less: &masks };
                if accept(&model) {
                    return Some((k, masks));
                }
            }
            counter += 1;
        }
    }
    None
}

fn realize(frame: &Frame, k: usize, masks: &[u32]) -> Model {
    let elems: Vec<Elem> = (0..k).map(|i| Elem::Rat(qi(i as i64))).collect();
    let less: Vec<WorldOrderSpec> = masks
        .iter()
        .map(|&mask| {
            let mut pairs = BTreeSet::new();
            for a in 0..k {
                for b in 0..k {
                    if mask >> (a * k + b) & 1 == 1 {
                        pairs.insert((elems[a].clone(), elems[b].clone()));
                    }
                }
            }
            WorldOrderSpec::Pairs(pairs)
        })
        .collect();
    Model::new(frame.clone(), DomainSpec::Finite(elems), less, EqMode::Logical)
        .expect("search models are structurally valid")
}

fn run_search(
    bounds: SearchBounds,
    required: &[Condition],
    accept: impl Fn(&CompactModel<'_>) -> bool + Sync,
    sequential: bool,
) -> Result<Option<Model>, TheoryError> {
    bounds.check()?;
    let frames: Vec<Frame> = enumerate_frames(bounds.max_worlds, required).collect();
    let scan = |frame: &Frame| {
        scan_frame(frame, bounds.max_domain, &accept).map(|(k, masks)| realize(frame, k, &masks))
    };
    let found = if sequential {
        exec::find_map_first_seq(&frames, scan)
    } else {
        exec::find_map_first(&frames, scan)
    };
    Ok(found)
}

fn finite_model_acceptor(
    name: TheoryName,
    bound: u32,
) -> Result<impl Fn(&CompactModel<'_>) -> bool + Sync, TheoryError> {
    let t = theory(name);
    if t.uses_functions() {
        return Err(TheoryError::SignatureMismatch(format!(
            "{} needs function interpretations; the finite search covers \
             order-signature theories only",
            name
        )));
    }
    let axioms: Vec<Formula> = axioms_of(name, bound)?.into_iter().map(|(_, f)| f).collect();
    for f in &axioms {
        validate_search_formula(f)?;
    }
    Ok(move |m: &CompactModel<'_>| {
        let s = m.frame.designated;
        axioms
            .iter()
            .all(|f| eval_compact(m, s, f, &mut Vec::new()))
    })
}

/// Exhaustive search for a model of the theory (all axioms true at `s`)
/// within the bounds, frames restricted to `required`; `None` when the
/// space is exhausted.
pub fn find_finite_model(
    name: TheoryName,
    bounds: SearchBounds,
    required: &[Condition],
) -> Result<Option<Model>, TheoryError> {
    run_search(bounds, required, finite_model_acceptor(name, 2)?, false)
}

/// Single-threaded twin of [`find_finite_model`].
pub fn find_finite_model_seq(
    name: TheoryName,
    bounds: SearchBounds,
    required: &[Condition],
) -> Result<Option<Model>, TheoryError> {
    run_search(bounds, required, finite_model_acceptor(name, 2)?, true)
}

fn countermodel_acceptor<'a>(
    premises: &'a [Formula],
    conclusion: &'a Formula,
) -> Result<impl Fn(&CompactModel<'_>) -> bool + Sync + 'a, TheoryError> {
    for f in premises.iter().chain(std::iter::once(conclusion)) {
        validate_search_formula(f)?;
    }
    Ok(move |m: &CompactModel<'_>| {
        let s = m.frame.designated;
        premises
            .iter()
            .all(|f| eval_compact(m, s, f, &mut Vec::new()))
            && !eval_compact(m, s, conclusion, &mut Vec::new())
    })
}

/// Searches for a model making every premise true and the conclusion
/// false at the designated world.
pub fn find_countermodel(
    premises: &[Formula],
    conclusion: &Formula,
    bounds: SearchBounds,
    required: &[Condition],
) -> Result<Option<Model>, TheoryError> {
    run_search(bounds, required, countermodel_acceptor(premises, conclusion)?, false)
}

/// Single-threaded twin of [`find_countermodel`].
pub fn find_countermodel_seq(
    premises: &[Formula],
    conclusion: &Formula,
    bounds: SearchBounds,
    required: &[Condition],
) -> Result<Option<Model>, TheoryError> {
    run_search(bounds, required, countermodel_acceptor(premises, conclusion)?, true)
}

#[cfg(test)]
pub(crate) mod compact_oracle {
    //! Exposes the compact evaluator so tests can cross-check it against
    //! the general evaluator on the same model.

    use super::*;

    pub fn eval_on(frame: &Frame, k: usize, masks: &[u32], w: usize, f: &Formula) -> bool {
        let cf = CompactFrame::of(frame);
        let m = CompactModel { frame: &cf, k, less: masks };
        eval_compact(&m, w, f, &mut Vec::new())
    }

    pub fn realize_model(frame: &Frame, k: usize, masks: &[u32]) -> Model {
        realize(frame, k, masks)
    }
}
