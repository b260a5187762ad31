//! Stagewise back-and-forth construction of a partial order isomorphism
//! between two countable dense orders, compared through the designated
//! worlds of the two models. Image choices are canonical (one below the
//! minimum, one above the maximum, or the midpoint of the unique adjacent
//! pair) so runs are reproducible.

use super::QeError;
use crate::models::{eval_at_index, Assignment, Elem, Model, ModelError};
use crate::rational::{enumerate_rationals, format_rational, midpoint, qi, Q};
use crate::syntax::ast;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Source,
    Target,
}

/// An order-preserving injective partial map between the two domains,
/// kept sorted by source.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialMap {
    pairs: Vec<(Q, Q)>,
}

impl PartialMap {
    pub fn new() -> PartialMap {
        PartialMap::default()
    }

    pub fn pairs(&self) -> &[(Q, Q)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, value: &Q, side: Side) -> bool {
        self.pairs.iter().any(|(a, b)| match side {
            Side::Source => a == value,
            Side::Target => b == value,
        })
    }

    pub fn image(&self, source: &Q) -> Option<&Q> {
        self.pairs.iter().find(|(a, _)| a == source).map(|(_, b)| b)
    }

    fn insert(&mut self, source: Q, target: Q) {
        let at = self.pairs.partition_point(|(a, _)| *a < source);
        self.pairs.insert(at, (source, target));
    }
}

/// `a < b` at the designated world of `m`.
fn less_at_s(m: &Model, a: &Q, b: &Q) -> Result<bool, ModelError> {
    let assignment: Assignment = [
        ("x".to_string(), Elem::Rat(a.clone())),
        ("y".to_string(), Elem::Rat(b.clone())),
    ]
    .into_iter()
    .collect();
    eval_at_index(
        m,
        m.frame().designated(),
        &ast::less(ast::var("x"), ast::var("y")),
        &assignment,
    )
}

/// How `elem` sits relative to the listed values under the model's
/// designated-world order.
enum Placement {
    BelowAll,
    AboveAll,
    Between(usize, usize),
}

fn classify(m: &Model, existing: &[&Q], elem: &Q) -> Result<Placement, QeError> {
    // Predecessor: the greatest existing value below elem; successor: the
    // least above. DLO totality at s makes this well defined.
    let mut pred: Option<usize> = None;
    let mut succ: Option<usize> = None;
    for (i, v) in existing.iter().enumerate() {
        if less_at_s(m, v, elem)? {
            match pred {
                Some(p) if less_at_s(m, existing[p], v)? => pred = Some(i),
                None => pred = Some(i),
                _ => {}
            }
        } else if less_at_s(m, elem, v)? {
            match succ {
                Some(sc) if less_at_s(m, v, existing[sc])? => succ = Some(i),
                None => succ = Some(i),
                _ => {}
            }
        } else {
            return Err(QeError::AlreadyPresent(format_rational(elem)));
        }
    }
    Ok(match (pred, succ) {
        (None, _) => Placement::BelowAll,
        (_, None) => Placement::AboveAll,
        (Some(p), Some(sc)) => Placement::Between(p, sc),
    })
}

/// Extends the map by one element on the given side, choosing the partner
/// canonically: the first element of an empty map maps to 0; an element
/// below (above) everything maps one below the minimum (one above the
/// maximum); an element between a unique adjacent pair maps to the
/// midpoint of their partners.
pub fn back_and_forth_extend(
    map: &PartialMap,
    source_model: &Model,
    target_model: &Model,
    elem: &Q,
    side: Side,
) -> Result<PartialMap, QeError> {
    if map.contains(elem, side) {
        return Err(QeError::AlreadyPresent(format_rational(elem)));
    }
    let (own_model, partner_model) = match side {
        Side::Source => (source_model, target_model),
        Side::Target => (target_model, source_model),
    };
    let own_values: Vec<&Q> = map
        .pairs
        .iter()
        .map(|(a, b)| match side {
            Side::Source => a,
            Side::Target => b,
        })
        .collect();
    let partner_values: Vec<&Q> = map
        .pairs
        .iter()
        .map(|(a, b)| match side {
            Side::Source => b,
            Side::Target => a,
        })
        .collect();
    let partner = if own_values.is_empty() {
        qi(0)
    } else {
        match classify(own_model, &own_values, elem)? {
            Placement::BelowAll => {
                let min = min_by_model(partner_model, &partner_values)?;
                min - qi(1)
            }
            Placement::AboveAll => {
                let max = max_by_model(partner_model, &partner_values)?;
                max + qi(1)
            }
            Placement::Between(p, sc) => midpoint(partner_values[p], partner_values[sc]),
        }
    };
    let mut extended = map.clone();
    match side {
        Side::Source => extended.insert(elem.clone(), partner),
        Side::Target => extended.insert(partner, elem.clone()),
    }
    Ok(extended)
}

fn min_by_model(m: &Model, values: &[&Q]) -> Result<Q, QeError> {
    let mut best = values[0];
    for v in &values[1..] {
        if less_at_s(m, v, best)? {
            best = v;
        }
    }
    Ok(best.clone())
}

fn max_by_model(m: &Model, values: &[&Q]) -> Result<Q, QeError> {
    let mut best = values[0];
    for v in &values[1..] {
        if less_at_s(m, best, v)? {
            best = v;
        }
    }
    Ok(best.clone())
}

/// Runs the staged construction: stage 0 installs the anchors, and each
/// further step adds the first canonically enumerated rational not yet
/// covered, alternating source and target sides.
pub fn build_partial_isomorphism(
    source_model: &Model,
    target_model: &Model,
    anchors: &[(Q, Q)],
    steps: usize,
) -> Result<PartialMap, QeError> {
    for (i, (a, b)) in anchors.iter().enumerate() {
        for (a2, b2) in &anchors[i + 1..] {
            let src = less_at_s(source_model, a, a2)?;
            let tgt = less_at_s(target_model, b, b2)?;
            let src_rev = less_at_s(source_model, a2, a)?;
            let tgt_rev = less_at_s(target_model, b2, b)?;
            if src != tgt || src_rev != tgt_rev {
                return Err(QeError::NotOrderIsomorphic(format!(
                    "({}, {}) against ({}, {})",
                    format_rational(a),
                    format_rational(b),
                    format_rational(a2),
                    format_rational(b2)
                )));
            }
        }
    }
    let mut map = PartialMap::new();
    for (a, b) in anchors {
        if map.contains(a, Side::Source) || map.contains(b, Side::Target) {
            return Err(QeError::AlreadyPresent(format_rational(a)));
        }
        map.insert(a.clone(), b.clone());
    }
    for step in 1..=steps {
        let side = if step % 2 == 1 { Side::Source } else { Side::Target };
        let elem = enumerate_rationals()
            .find(|q| !map.contains(q, side))
            .expect("the rational enumeration is inexhaustible");
        map = back_and_forth_extend(&map, source_model, target_model, &elem, side)?;
    }
    Ok(map)
}
