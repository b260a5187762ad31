//! Order-diagram quantifier elimination at the designated world.
//!
//! For a formula in variables `x1..xn`, each map `h` from variable pairs
//! to {equal, below, above} induces the quantifier-free conjunction `B_h`
//! fixing the mutual order of the variables. On a world-invariant dense
//! fixture, satisfaction of the formula depends only on that diagram, so
//! the eliminated form is the disjunction of the diagrams whose canonical
//! realization satisfies the formula.

use super::QeError;
use crate::frames::{satisfies, Condition, B_CONDITIONS};
use crate::models::{
    eval_at_index, representatives, Assignment, CheckReport, DomainSpec, Elem, Model,
};
use crate::rational::qi;
use crate::syntax::ast::{self, Formula};
use crate::theories::{axioms_of, TheoryName};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagRel {
    /// `x_i = x_j`
    Equal,
    /// `x_i < x_j`
    Below,
    /// `x_j < x_i`
    Above,
}

/// A total assignment of order relations to the variable pairs
/// `(i, j input), i < j`, in lexicographic pair order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderDiagram {
    vars: Vec<String>,
    rel: Vec<DiagRel>,
}

fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((i, j));
        }
    }
    out
}

impl OrderDiagram {
    pub fn new(vars: Vec<String>, rel: Vec<DiagRel>) -> OrderDiagram {
        assert_eq!(rel.len(), pair_count(vars.len()), "one relation per variable pair");
        OrderDiagram { vars, rel }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn relations(&self) -> &[DiagRel] {
        &self.rel
    }

    /// Whether the diagram induces a strict total order on the blocks of
    /// equated variables (diagrams with order cycles are unsatisfiable in
    /// dense linear orders).
    pub fn is_consistent(&self) -> bool {
        self.block_ranks().is_some()
    }

    /// Union-find blocks of equated variables, then block ranks if the
    /// strict edges form a total order.
    fn block_ranks(&self) -> Option<Vec<usize>> {
        let n = self.vars.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for ((i, j), rel) in pairs(n).into_iter().zip(&self.rel) {
            if matches!(rel, DiagRel::Equal) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a] = b;
            }
        }
        let blocks: Vec<usize> = (0..n).map(|i| root(&mut parent, i)).collect();
        let mut block_ids: Vec<usize> = blocks.clone();
        block_ids.sort();
        block_ids.dedup();
        let nb = block_ids.len();
        let block_index = |v: usize| block_ids.iter().position(|&b| b == blocks[v]).unwrap();
        // below[p][q]: some pair forces block p strictly below block q.
        let mut below = vec![vec![false; nb]; nb];
        for ((i, j), rel) in pairs(n).into_iter().zip(&self.rel) {
            let (p, q) = (block_index(i), block_index(j));
            match rel {
                DiagRel::Equal => {}
                DiagRel::Below => {
                    if p == q {
                        return None;
                    }
                    below[p][q] = true;
                }
                DiagRel::Above => {
                    if p == q {
                        return None;
                    }
                    below[q][p] = true;
                }
            }
        }
        for p in 0..nb {
            for q in 0..nb {
                if p != q && below[p][q] && below[q][p] {
                    return None;
                }
            }
        }
        // A complete antisymmetric relation is a total order exactly when
        // the below-counts are 0..nb-1.
        let score: Vec<usize> = (0..nb)
            .map(|p| (0..nb).filter(|&q| below[q][p]).count())
            .collect();
        let mut sorted = score.clone();
        sorted.sort();
        if sorted != (0..nb).collect::<Vec<_>>() {
            return None;
        }
        Some((0..n).map(|v| score[block_index(v)]).collect())
    }

    /// One assignment realizing the diagram: equated blocks take
    /// consecutive integers starting at 0 in block order.
    pub fn canonical_assignment(&self) -> Option<Assignment> {
        let ranks = self.block_ranks()?;
        Some(
            self.vars
                .iter()
                .zip(ranks)
                .map(|(v, r)| (v.clone(), Elem::Rat(qi(r as i64))))
                .collect(),
        )
    }
}

/// All `3^(n(n-1)/2)` diagrams over the given variables, in a fixed
/// odometer order (first pair most significant).
pub fn enumerate_diagrams(vars: &[String]) -> Vec<OrderDiagram> {
    let np = pair_count(vars.len());
    let total = 3usize.pow(np as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut rel = Vec::with_capacity(np);
        let mut c = code;
        for _ in 0..np {
            rel.push(match c % 3 {
                0 => DiagRel::Equal,
                1 => DiagRel::Below,
                _ => DiagRel::Above,
            });
            c /= 3;
        }
        rel.reverse();
        out.push(OrderDiagram::new(vars.to_vec(), rel));
    }
    out
}

/// The conjunction `B_h`: equalities first, then the `below` atoms, then
/// the `above` atoms, each group in pair order. The empty conjunction
/// (one variable) renders as `top`.
pub fn diagram_formula(d: &OrderDiagram) -> Formula {
    let n = d.vars.len();
    let mut conjuncts = Vec::new();
    for wanted in [DiagRel::Equal, DiagRel::Below, DiagRel::Above] {
        for ((i, j), rel) in pairs(n).into_iter().zip(&d.rel) {
            if *rel == wanted {
                let (xi, xj) = (ast::var(&d.vars[i]), ast::var(&d.vars[j]));
                conjuncts.push(match wanted {
                    DiagRel::Equal => ast::equal(xi, xj),
                    DiagRel::Below => ast::less(xi, xj),
                    DiagRel::Above => ast::less(xj, xi),
                });
            }
        }
    }
    conjuncts.into_iter().reduce(ast::and).unwrap_or(Formula::Top)
}

fn check_dlo_fixture(m: &Model) -> Result<(), QeError> {
    if !matches!(m.domain(), DomainSpec::RationalOrder) {
        return Err(QeError::Precondition(
            "order-diagram elimination runs over the rational-order domain".into(),
        ));
    }
    let mut required = B_CONDITIONS.to_vec();
    required.push(Condition::K);
    required.push(Condition::Seriality);
    for c in required {
        if !satisfies(m.frame(), c) {
            return Err(QeError::Precondition(format!("frame violates {}", c)));
        }
    }
    let s = m.frame().designated();
    let empty = Assignment::new();
    for (id, ax) in axioms_of(TheoryName::Dlo, 2)? {
        if !eval_at_index(m, s, &ax, &empty)? {
            return Err(QeError::Precondition(format!(
                "dense-linear-order axiom {} fails at the designated world",
                id
            )));
        }
    }
    Ok(())
}

/// The diagrams compatible with `f` at the designated world: a consistent
/// diagram belongs to the set when the canonical assignment realizing it
/// satisfies `f & B_h` there.
pub fn lambda_set(m: &Model, f: &Formula) -> Result<Vec<OrderDiagram>, QeError> {
    check_dlo_fixture(m)?;
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    if vars.is_empty() {
        return Err(QeError::Precondition(
            "the diagram set is defined for formulas with free variables".into(),
        ));
    }
    let s = m.frame().designated();
    let mut out = Vec::new();
    for d in enumerate_diagrams(&vars) {
        let Some(assignment) = d.canonical_assignment() else {
            continue;
        };
        let conj = ast::and(f.clone(), diagram_formula(&d));
        if eval_at_index(m, s, &conj, &assignment)? {
            out.push(d);
        }
    }
    Ok(out)
}

fn fresh_primed(f: &Formula) -> String {
    let free = f.free_vars();
    let mut cand = "x'".to_string();
    while free.contains(&cand) {
        cand.push('\'');
    }
    cand
}

/// Eliminates quantifiers against a world-invariant dense fixture:
/// sentences collapse to `x = x` / `x < x` by their truth value at `s`,
/// and open formulas become the disjunction of their compatible order
/// diagrams (or a fresh `v < v` when no diagram is compatible).
pub fn qe_dlo(m: &Model, f: &Formula) -> Result<Formula, QeError> {
    check_dlo_fixture(m)?;
    if f.is_sentence() {
        let s = m.frame().designated();
        let truth = eval_at_index(m, s, f, &Assignment::new())?;
        return Ok(if truth {
            ast::equal(ast::var("x"), ast::var("x"))
        } else {
            ast::less(ast::var("x"), ast::var("x"))
        });
    }
    let lambda = lambda_set(m, f)?;
    if lambda.is_empty() {
        let v = fresh_primed(f);
        return Ok(ast::less(ast::var(&v), ast::var(&v)));
    }
    Ok(lambda
        .iter()
        .map(diagram_formula)
        .reduce(ast::or)
        .expect("nonempty diagram set"))
}

/// Verification of an elimination candidate under both readings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QeVerifyReport {
    /// The relevant biconditional holds at `s` under every representative
    /// assignment.
    pub equivalence: CheckReport,
    /// Original and candidate have the same truth value at `s` under
    /// every representative assignment.
    pub interdeducibility: CheckReport,
}

impl QeVerifyReport {
    pub fn both_pass(&self) -> bool {
        self.equivalence.satisfied && self.interdeducibility.satisfied
    }
}

/// All representative assignments over `vars`, each variable's
/// representatives refined by the values already chosen.
fn representative_tuples(m: &Model, vars: &[String]) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for v in vars {
        let mut next = Vec::new();
        for partial in &out {
            let params: Vec<_> = partial
                .values()
                .filter_map(|e| e.rat().cloned())
                .collect();
            for rep in representatives(m, &params) {
                let mut extended = partial.clone();
                extended.insert(v.clone(), Elem::Rat(rep));
                next.push(extended);
            }
        }
        out = next;
    }
    out
}

/// Checks a quantifier-free candidate against the original formula at the
/// designated world, over all representative assignments of the union of
/// their free variables.
pub fn verify_qe_candidate(
    m: &Model,
    original: &Formula,
    candidate: &Formula,
) -> Result<QeVerifyReport, QeError> {
    if !candidate.is_quantifier_free() {
        return Err(QeError::Precondition(format!(
            "candidate `{}` is not quantifier-free",
            candidate
        )));
    }
    let mut vars: Vec<String> = original
        .free_vars()
        .union(&candidate.free_vars())
        .cloned()
        .collect();
    vars.sort();
    let s = m.frame().designated();
    let mut equiv_failures = Vec::new();
    let mut inter_failures = Vec::new();
    let bicond = ast::iff(original.clone(), candidate.clone());
    for a in representative_tuples(m, &vars) {
        if !eval_at_index(m, s, &bicond, &a)? {
            equiv_failures.push(format!("biconditional fails at s under {:?}", a));
        }
        let left = eval_at_index(m, s, original, &a)?;
        let right = eval_at_index(m, s, candidate, &a)?;
        if left != right {
            inter_failures.push(format!(
                "original is {} but candidate is {} at s under {:?}",
                left, right, a
            ));
        }
    }
    Ok(QeVerifyReport {
        equivalence: CheckReport {
            name: "qe-equivalence".into(),
            satisfied: equiv_failures.is_empty(),
            failures: equiv_failures,
        },
        interdeducibility: CheckReport {
            name: "qe-interdeducibility".into(),
            satisfied: inter_failures.is_empty(),
            failures: inter_failures,
        },
    })
}

/// Rewrites every implication `A -> B` to `~A | B`, innermost first. On
/// world-invariant models this preserves truth at the designated world.
pub fn arrow_eliminate(f: &Formula) -> Formula {
    match f {
        Formula::Bot
        | Formula::Top
        | Formula::Less(..)
        | Formula::Equal(..)
        | Formula::Pred(..) => f.clone(),
        Formula::And(l, r) => ast::and(arrow_eliminate(l), arrow_eliminate(r)),
        Formula::Or(l, r) => ast::or(arrow_eliminate(l), arrow_eliminate(r)),
        Formula::Not(g) => ast::not(arrow_eliminate(g)),
        Formula::Imp(l, r) => ast::or(ast::not(arrow_eliminate(l)), arrow_eliminate(r)),
        Formula::Forall(v, body) => ast::forall(v, arrow_eliminate(body)),
        Formula::Exists(v, body) => ast::exists(v, arrow_eliminate(body)),
    }
}
