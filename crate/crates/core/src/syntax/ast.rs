//! Abstract syntax for the first-order language: terms over
//! `+, *, -, inv, 0, 1` and formulas over `<, =, P_n, bot, top` with
//! connectives `~ & | ->` and quantifiers.

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Plus(Box<Term>, Box<Term>),
    Times(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Inv(Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Bot,
    Top,
    Less(Term, Term),
    Equal(Term, Term),
    /// Divisibility-style unary predicate `P_n`, `n >= 2`.
    Pred(u32, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

pub fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

pub fn plus(l: Term, r: Term) -> Term {
    Term::Plus(Box::new(l), Box::new(r))
}

pub fn times(l: Term, r: Term) -> Term {
    Term::Times(Box::new(l), Box::new(r))
}

pub fn neg(t: Term) -> Term {
    Term::Neg(Box::new(t))
}

pub fn inv(t: Term) -> Term {
    Term::Inv(Box::new(t))
}

pub fn less(l: Term, r: Term) -> Formula {
    Formula::Less(l, r)
}

pub fn equal(l: Term, r: Term) -> Formula {
    Formula::Equal(l, r)
}

pub fn pred(n: u32, t: Term) -> Formula {
    Formula::Pred(n, t)
}

pub fn and(l: Formula, r: Formula) -> Formula {
    Formula::And(Box::new(l), Box::new(r))
}

pub fn or(l: Formula, r: Formula) -> Formula {
    Formula::Or(Box::new(l), Box::new(r))
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn imp(l: Formula, r: Formula) -> Formula {
    Formula::Imp(Box::new(l), Box::new(r))
}

/// `A <-> B` is not a constructor; it abbreviates `(A -> B) & (B -> A)`.
pub fn iff(l: Formula, r: Formula) -> Formula {
    and(imp(l.clone(), r.clone()), imp(r, l))
}

pub fn forall(v: &str, body: Formula) -> Formula {
    Formula::Forall(v.to_string(), Box::new(body))
}

pub fn exists(v: &str, body: Formula) -> Formula {
    Formula::Exists(v.to_string(), Box::new(body))
}

/// Quantifies over a list of variables, outermost first.
pub fn forall_many(vars: &[&str], body: Formula) -> Formula {
    vars.iter().rev().fold(body, |acc, v| forall(v, acc))
}

pub fn exists_many(vars: &[&str], body: Formula) -> Formula {
    vars.iter().rev().fold(body, |acc, v| exists(v, acc))
}

impl Term {
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Plus(l, r) | Term::Times(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Neg(t) | Term::Inv(t) => t.collect_vars(out),
        }
    }

    /// Replaces every occurrence of `v` by `t`.
    pub fn substitute(&self, v: &str, t: &Term) -> Term {
        match self {
            Term::Var(name) if name == v => t.clone(),
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Plus(l, r) => plus(l.substitute(v, t), r.substitute(v, t)),
            Term::Times(l, r) => times(l.substitute(v, t), r.substitute(v, t)),
            Term::Neg(a) => neg(a.substitute(v, t)),
            Term::Inv(a) => inv(a.substitute(v, t)),
        }
    }

    /// True when the term uses a function symbol or constant (anything
    /// beyond a bare variable).
    pub fn uses_functions(&self) -> bool {
        !matches!(self, Term::Var(_))
    }
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Bot | Formula::Top => {}
            Formula::Less(l, r) | Formula::Equal(l, r) => {
                for v in l.vars().union(&r.vars()) {
                    if !bound.contains(v) {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Pred(_, t) => {
                for v in t.vars() {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// All variable names occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        match self {
            Formula::Bot | Formula::Top => BTreeSet::new(),
            Formula::Less(l, r) | Formula::Equal(l, r) => {
                l.vars().union(&r.vars()).cloned().collect()
            }
            Formula::Pred(_, t) => t.vars(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.all_vars().union(&r.all_vars()).cloned().collect()
            }
            Formula::Not(f) => f.all_vars(),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let mut s = body.all_vars();
                s.insert(v.clone());
                s
            }
        }
    }

    /// Capture-avoiding substitution of term `t` for free variable `v`.
    /// Bound variables that would capture are renamed by appending primes.
    pub fn substitute(&self, v: &str, t: &Term) -> Formula {
        match self {
            Formula::Bot | Formula::Top => self.clone(),
            Formula::Less(l, r) => less(l.substitute(v, t), r.substitute(v, t)),
            Formula::Equal(l, r) => equal(l.substitute(v, t), r.substitute(v, t)),
            Formula::Pred(n, arg) => pred(*n, arg.substitute(v, t)),
            Formula::And(l, r) => and(l.substitute(v, t), r.substitute(v, t)),
            Formula::Or(l, r) => or(l.substitute(v, t), r.substitute(v, t)),
            Formula::Imp(l, r) => imp(l.substitute(v, t), r.substitute(v, t)),
            Formula::Not(f) => not(f.substitute(v, t)),
            Formula::Forall(x, body) | Formula::Exists(x, body) => {
                let rebuild: fn(&str, Formula) -> Formula = match self {
                    Formula::Forall(..) => forall,
                    _ => exists,
                };
                if x == v {
                    // v is bound here; nothing free to replace below.
                    return self.clone();
                }
                if !body.free_vars().contains(v) {
                    return rebuild(x, (**body).clone());
                }
                if t.vars().contains(x) {
                    // Capture: rename the binder before substituting.
                    let fresh = fresh_name(x, &|cand: &str| {
                        !t.vars().contains(cand)
                            && !body.all_vars().contains(cand)
                            && cand != v
                    });
                    let renamed = body.substitute(x, &var(&fresh));
                    rebuild(&fresh, renamed.substitute(v, t))
                } else {
                    rebuild(x, body.substitute(v, t))
                }
            }
        }
    }

    /// AST depth with atoms at depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Bot | Formula::Top | Formula::Less(..) | Formula::Equal(..) | Formula::Pred(..) => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                1 + l.depth().max(r.depth())
            }
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.depth(),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Bot | Formula::Top | Formula::Less(..) | Formula::Equal(..) | Formula::Pred(..) => true,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.is_quantifier_free() && r.is_quantifier_free()
            }
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// True when no `P_n` atom and no function symbol occurs, so the formula
    /// lives in the pure order signature `<, =`.
    pub fn is_order_signature(&self) -> bool {
        match self {
            Formula::Bot | Formula::Top => true,
            Formula::Less(l, r) | Formula::Equal(l, r) => {
                !l.uses_functions() && !r.uses_functions()
            }
            Formula::Pred(..) => false,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => {
                l.is_order_signature() && r.is_order_signature()
            }
            Formula::Not(f) => f.is_order_signature(),
            Formula::Forall(_, f) | Formula::Exists(_, f) => f.is_order_signature(),
        }
    }
}

/// First of `base`, `base'`, `base''`, ... accepted by the predicate.
pub fn fresh_name(base: &str, ok: &dyn Fn(&str) -> bool) -> String {
    let mut cand = base.to_string();
    loop {
        cand.push('\'');
        if ok(&cand) {
            return cand;
        }
    }
}
