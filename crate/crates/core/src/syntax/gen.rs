//! Seeded random generators for terms and formulas, used by the property
//! suites. Everything is driven by a caller-supplied RNG so test batteries
//! are reproducible.

use super::ast::{self, Formula, Term};
use rand::Rng;

const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

fn random_term<R: Rng>(rng: &mut R, depth: usize) -> Term {
    if depth <= 1 {
        match rng.gen_range(0..4) {
            0 => Term::Zero,
            1 => Term::One,
            _ => ast::var(NAMES[rng.gen_range(0..NAMES.len())]),
        }
    } else {
        match rng.gen_range(0..6) {
            0 => ast::plus(random_term(rng, depth - 1), random_term(rng, depth - 1)),
            1 => ast::times(random_term(rng, depth - 1), random_term(rng, depth - 1)),
            2 => ast::neg(random_term(rng, depth - 1)),
            3 => ast::inv(random_term(rng, depth - 1)),
            _ => random_term(rng, 1),
        }
    }
}

/// Random formula over the full signature (functions, constants, `P_n`),
/// for printer/parser round-trip batteries. Variables are not scoped.
pub fn random_full_formula<R: Rng>(rng: &mut R, depth: usize) -> Formula {
    if depth <= 1 {
        match rng.gen_range(0..5) {
            0 => Formula::Bot,
            1 => Formula::Top,
            2 => ast::pred(rng.gen_range(2..6), random_term(rng, 2)),
            3 => ast::less(random_term(rng, 2), random_term(rng, 2)),
            _ => ast::equal(random_term(rng, 2), random_term(rng, 2)),
        }
    } else {
        match rng.gen_range(0..7) {
            0 => ast::and(
                random_full_formula(rng, depth - 1),
                random_full_formula(rng, depth - 1),
            ),
            1 => ast::or(
                random_full_formula(rng, depth - 1),
                random_full_formula(rng, depth - 1),
            ),
            2 => ast::imp(
                random_full_formula(rng, depth - 1),
                random_full_formula(rng, depth - 1),
            ),
            3 => ast::not(random_full_formula(rng, depth - 1)),
            4 => ast::forall(
                NAMES[rng.gen_range(0..NAMES.len())],
                random_full_formula(rng, depth - 1),
            ),
            5 => ast::exists(
                NAMES[rng.gen_range(0..NAMES.len())],
                random_full_formula(rng, depth - 1),
            ),
            _ => random_full_formula(rng, 1),
        }
    }
}

/// Generator for formulas in the order signature `<, =` over scoped
/// variables, suitable for evaluation on order-only models.
#[derive(Debug, Clone)]
pub struct OrderFormulaGen {
    /// Variables assumed bound by the ambient assignment.
    pub free_vars: Vec<String>,
    /// AST depth bound (atoms count 1).
    pub max_depth: usize,
    /// Bound on quantifier nesting; quantifier-heavy formulas are costly
    /// to decide over dense domains.
    pub max_quantifier_nesting: usize,
    /// Emit `=` atoms in addition to `<`.
    pub allow_equality: bool,
}

impl OrderFormulaGen {
    pub fn new(free_vars: &[&str], max_depth: usize, max_quantifier_nesting: usize) -> Self {
        OrderFormulaGen {
            free_vars: free_vars.iter().map(|s| s.to_string()).collect(),
            max_depth,
            max_quantifier_nesting,
            allow_equality: true,
        }
    }

    pub fn generate<R: Rng>(&self, rng: &mut R) -> Formula {
        let mut scope = self.free_vars.clone();
        self.gen_at(rng, self.max_depth, self.max_quantifier_nesting, &mut scope)
    }

    fn gen_at<R: Rng>(
        &self,
        rng: &mut R,
        depth: usize,
        quant_budget: usize,
        scope: &mut Vec<String>,
    ) -> Formula {
        if depth <= 1 {
            return self.atom(rng, scope);
        }
        let can_quantify = quant_budget > 0;
        let choice = rng.gen_range(0..100);
        if choice < 25 {
            self.atom(rng, scope)
        } else if choice < 40 {
            ast::not(self.gen_at(rng, depth - 1, quant_budget, scope))
        } else if choice < 55 {
            ast::and(
                self.gen_at(rng, depth - 1, quant_budget, scope),
                self.gen_at(rng, depth - 1, quant_budget, scope),
            )
        } else if choice < 65 {
            ast::or(
                self.gen_at(rng, depth - 1, quant_budget, scope),
                self.gen_at(rng, depth - 1, quant_budget, scope),
            )
        } else if choice < 80 {
            ast::imp(
                self.gen_at(rng, depth - 1, quant_budget, scope),
                self.gen_at(rng, depth - 1, quant_budget, scope),
            )
        } else if can_quantify {
            let name = self.fresh_binder(scope);
            scope.push(name.clone());
            let body = self.gen_at(rng, depth - 1, quant_budget - 1, scope);
            scope.pop();
            if rng.gen_bool(0.5) {
                ast::forall(&name, body)
            } else {
                ast::exists(&name, body)
            }
        } else {
            self.atom(rng, scope)
        }
    }

    fn atom<R: Rng>(&self, rng: &mut R, scope: &[String]) -> Formula {
        if scope.is_empty() || rng.gen_range(0..10) == 0 {
            return if rng.gen_bool(0.5) { Formula::Bot } else { Formula::Top };
        }
        let a = ast::var(&scope[rng.gen_range(0..scope.len())]);
        let b = ast::var(&scope[rng.gen_range(0..scope.len())]);
        if self.allow_equality && rng.gen_bool(0.3) {
            ast::equal(a, b)
        } else {
            ast::less(a, b)
        }
    }

    fn fresh_binder(&self, scope: &[String]) -> String {
        for cand in NAMES {
            if !scope.iter().any(|s| s == cand) {
                return cand.to_string();
            }
        }
        ast::fresh_name("x", &|cand| !scope.iter().any(|s| s == cand))
    }
}
