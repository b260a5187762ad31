//! Recursive-descent parser for the ASCII surface syntax.
//!
//! Precedence, loosest to tightest: `->` / `<->` (right-assoc, `<->`
//! desugars to a conjunction of implications), `|`, `&`, `~`. Quantifier
//! bodies extend maximally rightward within the binding power of the
//! position where the quantifier occurs, so `forall x. x < x -> bot` is
//! `forall x. (x < x -> bot)` while `~ exists x. x < y & C` negates only
//! the existential. Relation chains `x < y < z` abbreviate `(x<y) & (y<z)`.

use super::ast::{self, Formula, Term};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Less,
    Equal,
    Plus,
    Star,
    Minus,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    Iff,
    LParen,
    RParen,
    Dot,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Less => "`<`".into(),
            Tok::Equal => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0' => {
                toks.push((Tok::Zero, i));
                i += 1;
            }
            '1' => {
                toks.push((Tok::One, i));
                i += 1;
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    toks.push((Tok::Iff, i));
                    i += 3;
                } else {
                    toks.push((Tok::Less, i));
                    i += 1;
                }
            }
            '=' => {
                toks.push((Tok::Equal, i));
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    toks.push((Tok::Minus, i));
                    i += 1;
                }
            }
            '~' => {
                toks.push((Tok::Tilde, i));
                i += 1;
            }
            '&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            '|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '.' => {
                toks.push((Tok::Dot, i));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() {
                    let d = bytes[i] as char;
                    if d.is_ascii_alphanumeric() || d == '\'' {
                        i += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(input[start..i].to_string()), start));
            }
            other => return err(i, format!("unexpected character `{}`", other)),
        }
    }
    toks.push((Tok::Eof, input.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

// Binding powers for formula connectives; the `~` operand is parsed at
// `BP_NOT` so a quantifier directly under `~` keeps a tight body.
const BP_IMP: u8 = 10;
const BP_OR: u8 = 20;
const BP_AND: u8 = 30;
const BP_NOT: u8 = 40;

const TP_PLUS: u8 = 10;
const TP_TIMES: u8 = 20;
const TP_NEG: u8 = 30;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_pos(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        if self.peek() == want {
            self.bump();
            Ok(())
        } else {
            err(
                self.peek_pos(),
                format!("expected {}, found {}", want.describe(), self.peek().describe()),
            )
        }
    }

    fn formula(&mut self, min_bp: u8) -> Result<Formula, ParseError> {
        let mut lhs = match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                ast::not(self.formula(BP_NOT)?)
            }
            Tok::Ident(name) if name == "forall" || name == "exists" => {
                self.bump();
                let vars = self.binder_vars()?;
                self.expect(&Tok::Dot)?;
                let body = self.formula(min_bp)?;
                if name == "forall" {
                    vars.iter().rev().fold(body, |acc, v| ast::forall(v, acc))
                } else {
                    vars.iter().rev().fold(body, |acc, v| ast::exists(v, acc))
                }
            }
            _ => self.atom()?,
        };
        loop {
            let (l_bp, r_bp, tok) = match self.peek() {
                Tok::Arrow => (BP_IMP, BP_IMP, Tok::Arrow),
                Tok::Iff => (BP_IMP, BP_IMP + 1, Tok::Iff),
                Tok::Pipe => (BP_OR, BP_OR + 1, Tok::Pipe),
                Tok::Amp => (BP_AND, BP_AND + 1, Tok::Amp),
                _ => break,
            };
            if l_bp < min_bp {
                break;
            }
            self.bump();
            let rhs = self.formula(r_bp)?;
            lhs = match tok {
                Tok::Arrow => ast::imp(lhs, rhs),
                Tok::Iff => ast::iff(lhs, rhs),
                Tok::Pipe => ast::or(lhs, rhs),
                Tok::Amp => ast::and(lhs, rhs),
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn binder_vars(&mut self) -> Result<Vec<String>, ParseError> {
        let mut vars = vec![self.variable()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            vars.push(self.variable()?);
        }
        Ok(vars)
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if !is_keyword(&name) => {
                self.bump();
                Ok(name)
            }
            other => err(self.peek_pos(), format!("expected variable, found {}", other.describe())),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if name == "bot" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(name) if name == "top" => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Ident(name) if is_pred_name(&name) && self.next_is_lparen() => {
                let pos = self.peek_pos();
                self.bump();
                let n: u32 = name[1..]
                    .parse()
                    .map_err(|_| ParseError { pos, message: format!("bad predicate index in `{}`", name) })?;
                if n < 2 {
                    return err(pos, format!("unknown predicate arity: `{}` (indices start at 2)", name));
                }
                self.expect(&Tok::LParen)?;
                let t = self.term(0)?;
                self.expect(&Tok::RParen)?;
                Ok(ast::pred(n, t))
            }
            Tok::LParen => {
                // Could open a formula group or a parenthesized term;
                // try the formula reading first and fall back.
                let save = self.pos;
                let as_formula: Result<Formula, ParseError> = (|| {
                    self.bump();
                    let f = self.formula(0)?;
                    self.expect(&Tok::RParen)?;
                    Ok(f)
                })();
                match as_formula {
                    Ok(f) if !self.peek_is_term_continuation() => Ok(f),
                    _ => {
                        self.pos = save;
                        self.relation_chain()
                    }
                }
            }
            _ => self.relation_chain(),
        }
    }

    fn next_is_lparen(&self) -> bool {
        self.toks.get(self.pos + 1).map(|(t, _)| t == &Tok::LParen).unwrap_or(false)
    }

    fn peek_is_term_continuation(&self) -> bool {
        matches!(self.peek(), Tok::Less | Tok::Equal | Tok::Plus | Tok::Star)
    }

    /// `t1 < t2 [< t3 ...]` or `t1 = t2 [...]`; chains desugar into a
    /// left-associated conjunction of adjacent relations.
    fn relation_chain(&mut self) -> Result<Formula, ParseError> {
        let first = self.term(0)?;
        let mut rels: Vec<(bool, Term)> = Vec::new(); // (is_less, rhs)
        loop {
            match self.peek() {
                Tok::Less => {
                    self.bump();
                    rels.push((true, self.term(0)?));
                }
                Tok::Equal => {
                    self.bump();
                    rels.push((false, self.term(0)?));
                }
                _ => break,
            }
        }
        if rels.is_empty() {
            return err(
                self.peek_pos(),
                format!("expected `<` or `=` after term, found {}", self.peek().describe()),
            );
        }
        let mut lhs = first;
        let mut out: Option<Formula> = None;
        for (is_less, rhs) in rels {
            let atom = if is_less {
                ast::less(lhs.clone(), rhs.clone())
            } else {
                ast::equal(lhs.clone(), rhs.clone())
            };
            out = Some(match out {
                None => atom,
                Some(acc) => ast::and(acc, atom),
            });
            lhs = rhs;
        }
        Ok(out.unwrap())
    }

    fn term(&mut self, min_bp: u8) -> Result<Term, ParseError> {
        let mut lhs = match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                ast::neg(self.term(TP_NEG)?)
            }
            Tok::Zero => {
                self.bump();
                Term::Zero
            }
            Tok::One => {
                self.bump();
                Term::One
            }
            Tok::LParen => {
                self.bump();
                let t = self.term(0)?;
                self.expect(&Tok::RParen)?;
                t
            }
            Tok::Ident(name) if name == "inv" => {
                self.bump();
                self.expect(&Tok::LParen)?;
                let t = self.term(0)?;
                self.expect(&Tok::RParen)?;
                ast::inv(t)
            }
            Tok::Ident(name) if !is_keyword(&name) => {
                self.bump();
                Term::Var(name)
            }
            other => {
                return err(self.peek_pos(), format!("expected term, found {}", other.describe()))
            }
        };
        loop {
            let (l_bp, r_bp, is_plus) = match self.peek() {
                Tok::Plus => (TP_PLUS, TP_PLUS + 1, true),
                Tok::Star => (TP_TIMES, TP_TIMES + 1, false),
                _ => break,
            };
            if l_bp < min_bp {
                break;
            }
            self.bump();
            let rhs = self.term(r_bp)?;
            lhs = if is_plus { ast::plus(lhs, rhs) } else { ast::times(lhs, rhs) };
        }
        Ok(lhs)
    }
}

fn is_keyword(name: &str) -> bool {
    matches!(name, "forall" | "exists" | "bot" | "top" | "inv")
}

fn is_pred_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next() == Some('P') && name.len() > 1 && chars.all(|c| c.is_ascii_digit())
}

/// Parses a complete formula; trailing input is an error.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(input)?, pos: 0 };
    let f = p.formula(0)?;
    if p.peek() != &Tok::Eof {
        return err(p.peek_pos(), format!("unexpected {} after formula", p.peek().describe()));
    }
    Ok(f)
}

/// Parses a complete term; trailing input is an error.
pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(input)?, pos: 0 };
    let t = p.term(0)?;
    if p.peek() != &Tok::Eof {
        return err(p.peek_pos(), format!("unexpected {} after term", p.peek().describe()));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::super::ast::*;
    use super::*;

    #[test]
    fn quantifier_scope_is_maximal_at_top_level() {
        let f = parse_formula("forall x. x < x -> bot").unwrap();
        assert_eq!(f, forall("x", imp(less(var("x"), var("x")), Formula::Bot)));
    }

    #[test]
    fn top_is_single_token() {
        assert_eq!(parse_formula("top").unwrap(), Formula::Top);
    }

    #[test]
    fn negation_keeps_tight_scope_over_quantifier() {
        let f = parse_formula("~ exists x. x < y & (forall x. x = x -> exists x. y < x)").unwrap();
        let expected = and(
            not(exists("x", less(var("x"), var("y")))),
            forall(
                "x",
                imp(
                    equal(var("x"), var("x")),
                    exists("x", less(var("y"), var("x"))),
                ),
            ),
        );
        assert_eq!(f, expected);
        assert_eq!(f.free_vars(), ["y".to_string()].into_iter().collect());
    }

    #[test]
    fn relation_chain_desugars() {
        let f = parse_formula("x < y < z").unwrap();
        assert_eq!(f, and(less(var("x"), var("y")), less(var("y"), var("z"))));
    }

    #[test]
    fn iff_desugars_to_two_implications() {
        let f = parse_formula("bot <-> top").unwrap();
        assert_eq!(f, iff(Formula::Bot, Formula::Top));
    }

    #[test]
    fn comma_binders() {
        let f = parse_formula("forall x, y. x = y | x < y | y < x").unwrap();
        let body = or(
            or(equal(var("x"), var("y")), less(var("x"), var("y"))),
            less(var("y"), var("x")),
        );
        assert_eq!(f, forall("x", forall("y", body)));
    }

    #[test]
    fn terms_with_functions() {
        let f = parse_formula("forall x. ~(x = 0) -> x * inv(x) = 1").unwrap();
        let body = imp(
            not(equal(var("x"), Term::Zero)),
            equal(times(var("x"), inv(var("x"))), Term::One),
        );
        assert_eq!(f, forall("x", body));
    }

    #[test]
    fn parenthesized_term_before_relation() {
        let f = parse_formula("(x + y) + z = x + (y + z)").unwrap();
        assert_eq!(
            f,
            equal(
                plus(plus(var("x"), var("y")), var("z")),
                plus(var("x"), plus(var("y"), var("z"))),
            )
        );
    }

    #[test]
    fn predicate_atoms() {
        let f = parse_formula("P2(x + 1)").unwrap();
        assert_eq!(f, pred(2, plus(var("x"), Term::One)));
        assert!(parse_formula("P1(x)").is_err());
    }

    #[test]
    fn error_carries_position() {
        let e = parse_formula("x < ").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_formula("x ? y").unwrap_err();
        assert_eq!(e.pos, 2);
    }

    #[test]
    fn trailing_input_rejected() {
        assert!(parse_formula("x < y )").is_err());
    }

    #[test]
    fn unary_minus_in_terms() {
        let t = parse_term("x + -y").unwrap();
        assert_eq!(t, plus(var("x"), neg(var("y"))));
    }
}
