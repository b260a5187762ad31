//! Normal forms for one-variable quantifier-free formulas over dense
//! linear orders: on serial frames every such formula is equivalent to
//! `x = x` or to `x < x`, and the rewrite is a structural recursion.

use super::QeError;
use crate::syntax::ast::{equal, less, var, Formula, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Nf {
    /// Behaves as `x = x` (true everywhere).
    Eq,
    /// Behaves as `x < x` (false everywhere).
    Less,
}

fn atom_var(l: &Term, r: &Term, kind: &str, seen: &mut Option<String>) -> Result<(), QeError> {
    match (l, r) {
        (Term::Var(a), Term::Var(b)) if a == b => {
            match seen {
                Some(v) if v != a => Err(QeError::DisallowedAtom(format!(
                    "second variable `{}` after `{}`",
                    a, v
                ))),
                Some(_) => Ok(()),
                None => {
                    *seen = Some(a.clone());
                    Ok(())
                }
            }
        }
        _ => Err(QeError::DisallowedAtom(format!(
            "`{} {} {}` is not of the form v {} v",
            l, kind, r, kind
        ))),
    }
}

fn normal_form(f: &Formula, seen: &mut Option<String>) -> Result<Nf, QeError> {
    match f {
        Formula::Bot => Ok(Nf::Less),
        Formula::Top => Ok(Nf::Eq),
        Formula::Equal(l, r) => {
            atom_var(l, r, "=", seen)?;
            Ok(Nf::Eq)
        }
        Formula::Less(l, r) => {
            atom_var(l, r, "<", seen)?;
            Ok(Nf::Less)
        }
        Formula::Pred(n, _) => Err(QeError::DisallowedAtom(format!("P{} atom", n))),
        Formula::And(l, r) => {
            let (a, b) = (normal_form(l, seen)?, normal_form(r, seen)?);
            Ok(match (a, b) {
                (Nf::Eq, Nf::Eq) => Nf::Eq,
                // x = x & x < x collapses to the false side.
                _ => Nf::Less,
            })
        }
        Formula::Or(l, r) => {
            let (a, b) = (normal_form(l, seen)?, normal_form(r, seen)?);
            Ok(match (a, b) {
                (Nf::Less, Nf::Less) => Nf::Less,
                // x = x | x < x collapses to the true side.
                _ => Nf::Eq,
            })
        }
        Formula::Not(g) => Ok(match normal_form(g, seen)? {
            Nf::Eq => Nf::Less,
            Nf::Less => Nf::Eq,
        }),
        Formula::Imp(l, r) => {
            let (a, b) = (normal_form(l, seen)?, normal_form(r, seen)?);
            // The only falsifiable implication is true -> false, which
            // seriality pins to the false normal form.
            Ok(match (a, b) {
                (Nf::Eq, Nf::Less) => Nf::Less,
                _ => Nf::Eq,
            })
        }
        Formula::Forall(..) | Formula::Exists(..) => Err(QeError::DisallowedAtom(
            "quantifier in a quantifier-free normalization".into(),
        )),
    }
}

/// Rewrites a quantifier-free formula whose atoms are `v = v`, `v < v`,
/// `bot`, `top` (one variable throughout) to `v = v` or `v < v`.
pub fn normalize_qf_dlo(f: &Formula) -> Result<Formula, QeError> {
    let mut seen = None;
    let nf = normal_form(f, &mut seen)?;
    let v = seen.unwrap_or_else(|| "x".to_string());
    Ok(match nf {
        Nf::Eq => equal(var(&v), var(&v)),
        Nf::Less => less(var(&v), var(&v)),
    })
}

/// Every formula of the one-variable quantifier-free fragment (atoms
/// `v = v`, `v < v`, `bot`, `top`; connectives `~ & | ->`) up to the
/// given AST depth, atoms counting as depth 1. Depth 3 yields 9468
/// formulas.
pub fn one_var_fragment(v: &str, depth: usize) -> Vec<Formula> {
    let atoms = vec![
        equal(var(v), var(v)),
        less(var(v), var(v)),
        Formula::Bot,
        Formula::Top,
    ];
    let mut level = atoms.clone();
    for _ in 1..depth {
        let mut next = atoms.clone();
        for f in &level {
            next.push(crate::syntax::ast::not(f.clone()));
        }
        for f in &level {
            for g in &level {
                next.push(crate::syntax::ast::and(f.clone(), g.clone()));
                next.push(crate::syntax::ast::or(f.clone(), g.clone()));
                next.push(crate::syntax::ast::imp(f.clone(), g.clone()));
            }
        }
        level = next;
    }
    level
}
