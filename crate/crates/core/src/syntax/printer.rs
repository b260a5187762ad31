//! Pretty-printer. Output always re-parses to the same AST; chains and
//! `<->` are never emitted, and nested quantifiers print as comma lists.

use super::ast::{Formula, Term};
use std::fmt;

const BP_IMP: u8 = 10;
const BP_OR: u8 = 20;
const BP_AND: u8 = 30;
const BP_ATOM: u8 = 50;

const TP_PLUS: u8 = 10;
const TP_TIMES: u8 = 20;
const TP_NEG: u8 = 30;
const TP_ATOM: u8 = 50;

fn term_bp(t: &Term) -> u8 {
    match t {
        Term::Var(_) | Term::Zero | Term::One | Term::Inv(_) => TP_ATOM,
        Term::Neg(_) => TP_NEG,
        Term::Times(..) => TP_TIMES,
        Term::Plus(..) => TP_PLUS,
    }
}

fn fmt_term(t: &Term, min_bp: u8, out: &mut String) {
    let wrap = term_bp(t) < min_bp;
    if wrap {
        out.push('(');
    }
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Plus(l, r) => {
            fmt_term(l, TP_PLUS, out);
            out.push_str(" + ");
            fmt_term(r, TP_PLUS + 1, out);
        }
        Term::Times(l, r) => {
            fmt_term(l, TP_TIMES, out);
            out.push_str(" * ");
            fmt_term(r, TP_TIMES + 1, out);
        }
        Term::Neg(a) => {
            out.push('-');
            fmt_term(a, TP_NEG + 1, out);
        }
        Term::Inv(a) => {
            out.push_str("inv(");
            fmt_term(a, 0, out);
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}

fn formula_bp(f: &Formula) -> u8 {
    match f {
        Formula::Bot | Formula::Top | Formula::Less(..) | Formula::Equal(..) | Formula::Pred(..) => BP_ATOM,
        Formula::Not(_) => BP_ATOM, // always printed self-delimiting
        Formula::And(..) => BP_AND,
        Formula::Or(..) => BP_OR,
        Formula::Imp(..) => BP_IMP,
        // Quantifier bodies swallow everything rightward, so a quantifier
        // in any child position must be parenthesized.
        Formula::Forall(..) | Formula::Exists(..) => 0,
    }
}

fn fmt_formula(f: &Formula, min_bp: u8, out: &mut String) {
    let wrap = formula_bp(f) < min_bp;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Bot => out.push_str("bot"),
        Formula::Top => out.push_str("top"),
        Formula::Less(l, r) => {
            fmt_term(l, 0, out);
            out.push_str(" < ");
            fmt_term(r, 0, out);
        }
        Formula::Equal(l, r) => {
            fmt_term(l, 0, out);
            out.push_str(" = ");
            fmt_term(r, 0, out);
        }
        Formula::Pred(n, t) => {
            out.push('P');
            out.push_str(&n.to_string());
            out.push('(');
            fmt_term(t, 0, out);
            out.push(')');
        }
        Formula::Not(g) => {
            out.push('~');
            match **g {
                Formula::Bot | Formula::Top | Formula::Pred(..) => fmt_formula(g, 0, out),
                _ => {
                    out.push('(');
                    fmt_formula(g, 0, out);
                    out.push(')');
                }
            }
        }
        Formula::And(l, r) => {
            fmt_formula(l, BP_AND, out);
            out.push_str(" & ");
            fmt_formula(r, BP_AND + 1, out);
        }
        Formula::Or(l, r) => {
            fmt_formula(l, BP_OR, out);
            out.push_str(" | ");
            fmt_formula(r, BP_OR + 1, out);
        }
        Formula::Imp(l, r) => {
            fmt_formula(l, BP_IMP + 1, out);
            out.push_str(" -> ");
            fmt_formula(r, BP_IMP, out);
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            let is_forall = matches!(f, Formula::Forall(..));
            out.push_str(if is_forall { "forall " } else { "exists " });
            let mut vars = Vec::new();
            let mut cur = f;
            loop {
                match (is_forall, cur) {
                    (true, Formula::Forall(v, body)) | (false, Formula::Exists(v, body)) => {
                        vars.push(v.clone());
                        cur = body;
                    }
                    _ => break,
                }
            }
            out.push_str(&vars.join(", "));
            out.push_str(". ");
            fmt_formula(cur, 0, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        fmt_term(self, 0, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        fmt_formula(self, 0, &mut s);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::super::ast::*;
    use super::super::parser::parse_formula;

    #[test]
    fn bot_prints_plain() {
        assert_eq!(Formula::Bot.to_string(), "bot");
    }

    #[test]
    fn implication_prints_without_parens() {
        let f = imp(less(var("x"), var("y")), Formula::Bot);
        assert_eq!(f.to_string(), "x < y -> bot");
    }

    #[test]
    fn quantifier_chain_merges() {
        let f = forall("x", forall("y", equal(var("x"), var("y"))));
        assert_eq!(f.to_string(), "forall x, y. x = y");
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn nested_quantifier_is_parenthesized() {
        let f = and(not(exists("x", less(var("x"), var("y")))), Formula::Top);
        let printed = f.to_string();
        assert_eq!(parse_formula(&printed).unwrap(), f);
    }

    #[test]
    fn imp_right_associativity_round_trips() {
        let f = imp(Formula::Bot, imp(Formula::Top, Formula::Bot));
        assert_eq!(f.to_string(), "bot -> top -> bot");
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        let g = imp(imp(Formula::Bot, Formula::Top), Formula::Bot);
        assert_eq!(g.to_string(), "(bot -> top) -> bot");
        assert_eq!(parse_formula(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn term_precedence_round_trips() {
        let t = times(plus(var("x"), var("y")), neg(var("z")));
        assert_eq!(t.to_string(), "(x + y) * -z");
    }
}
