//! Propositional formulas: modal, propositionally quantified and inquisitive.
//!
//! Concrete syntax, loosest binding last:
//!
//! | form                        | meaning                        |
//! |-----------------------------|--------------------------------|
//! | `_|_`, `p`, `( φ )`         | falsum, variable, grouping     |
//! | `~φ`, `[]i φ`, `<>i φ`, `A p φ`, `E p φ` | prefix operators  |
//! | `φ & ψ`                     | conjunction                    |
//! | `φ | ψ`                     | disjunction                    |
//! | `φ ?? ψ`                    | inquisitive disjunction        |
//! | `φ -> ψ`                    | implication (right-assoc)      |
//! | `φ <-> ψ`                   | biconditional                  |
//!
//! A modal index is written directly after `[]` or `<>` with no space and is
//! optional; the default index is `0`. `[]f s` is `□_f s`, while `[] p` and
//! `[]p -> q` use the default index. `A` and `E` are reserved.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_INDEX: &str = "0";

/// Index of the refinement modality in [`bimodal_translate`].
pub const SQ_INDEX: &str = "sq";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Falsum,
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Box(String, Box<Formula>),
    Diamond(String, Box<Formula>),
    ForallProp(String, Box<Formula>),
    ExistsProp(String, Box<Formula>),
    InqOr(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn boxed(index: &str, f: Formula) -> Formula {
        Formula::Box(index.to_string(), Box::new(f))
    }

    pub fn diamond(index: &str, f: Formula) -> Formula {
        Formula::Diamond(index.to_string(), Box::new(f))
    }

    pub fn forall(p: &str, f: Formula) -> Formula {
        Formula::ForallProp(p.to_string(), Box::new(f))
    }

    pub fn exists(p: &str, f: Formula) -> Formula {
        Formula::ExistsProp(p.to_string(), Box::new(f))
    }

    pub fn inq_or(a: Formula, b: Formula) -> Formula {
        Formula::InqOr(Box::new(a), Box::new(b))
    }

    /// `¬⊥`.
    pub fn top() -> Formula {
        Formula::not(Formula::Falsum)
    }

    /// Free propositional variables, sorted.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Falsum => {}
            Formula::Var(p) => {
                if !bound.contains(p) {
                    out.insert(p.clone());
                }
            }
            Formula::Not(a) | Formula::Box(_, a) | Formula::Diamond(_, a) => {
                a.collect_free(bound, out)
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::InqOr(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::ForallProp(p, a) | Formula::ExistsProp(p, a) => {
                bound.push(p.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Modal indices occurring in the formula, sorted.
    pub fn indices(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Box(i, _) | Formula::Diamond(i, _) = f {
                out.insert(i.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Falsum | Formula::Var(_) => {}
            Formula::Not(a)
            | Formula::Box(_, a)
            | Formula::Diamond(_, a)
            | Formula::ForallProp(_, a)
            | Formula::ExistsProp(_, a) => a.visit(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::InqOr(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Distinct subformulas, including the formula itself, in pre-order.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = Vec::new();
        self.visit(&mut |f| {
            if !out.contains(f) {
                out.push(f.clone());
            }
        });
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Falsum | Formula::Var(_) => 0,
            Formula::Not(a)
            | Formula::Box(_, a)
            | Formula::Diamond(_, a)
            | Formula::ForallProp(_, a)
            | Formula::ExistsProp(_, a) => 1 + a.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::InqOr(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn has_quantifiers(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| {
            found |= matches!(f, Formula::ForallProp(..) | Formula::ExistsProp(..));
        });
        found
    }

    pub fn has_inq_or(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::InqOr(..)));
        found
    }

    /// Rewrites `∨ → ↔ ◇ ∃` into `¬ ∧ □ ∀`; `⩔` is left alone.
    pub fn expand_defined(&self) -> Formula {
        use Formula::*;
        match self {
            Falsum | Var(_) => self.clone(),
            Not(a) => Formula::not(a.expand_defined()),
            And(a, b) => Formula::and(a.expand_defined(), b.expand_defined()),
            Or(a, b) => Formula::not(Formula::and(
                Formula::not(a.expand_defined()),
                Formula::not(b.expand_defined()),
            )),
            Implies(a, b) => Formula::not(Formula::and(
                a.expand_defined(),
                Formula::not(b.expand_defined()),
            )),
            Iff(a, b) => {
                let (a, b) = (a.expand_defined(), b.expand_defined());
                Formula::and(
                    Formula::not(Formula::and(a.clone(), Formula::not(b.clone()))),
                    Formula::not(Formula::and(b, Formula::not(a))),
                )
            }
            Box(i, a) => Formula::boxed(i, a.expand_defined()),
            Diamond(i, a) => Formula::not(Formula::boxed(i, Formula::not(a.expand_defined()))),
            ForallProp(p, a) => Formula::forall(p, a.expand_defined()),
            ExistsProp(p, a) => Formula::not(Formula::forall(p, Formula::not(a.expand_defined()))),
            InqOr(a, b) => Formula::inq_or(a.expand_defined(), b.expand_defined()),
        }
    }
}

/// `p(φ)`: translation into the bimodal language with the refinement modality
/// `sq`. Derived connectives are expanded first; other modal indices are kept.
pub fn bimodal_translate(f: &Formula) -> Result<Formula> {
    fn go(f: &Formula) -> Result<Formula> {
        match f {
            Formula::Falsum => Ok(Formula::Falsum),
            Formula::Var(_) => Ok(Formula::boxed(
                SQ_INDEX,
                Formula::diamond(SQ_INDEX, f.clone()),
            )),
            Formula::Not(a) => Ok(Formula::boxed(SQ_INDEX, Formula::not(go(a)?))),
            Formula::And(a, b) => Ok(Formula::and(go(a)?, go(b)?)),
            Formula::Box(i, a) if i == SQ_INDEX => Err(Error::Fragment(format!(
                "index `{SQ_INDEX}` is reserved for the refinement modality"
            ))),
            Formula::Box(i, a) => Ok(Formula::boxed(i, go(a)?)),
            other => Err(Error::Fragment(format!(
                "`{other}` is outside the ¬/∧/□ fragment"
            ))),
        }
    }
    go(&f.expand_defined())
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Falsum,
    Not,
    And,
    Or,
    InqOr,
    Implies,
    Iff,
    LParen,
    RParen,
    Box(Option<String>),
    Diamond(Option<String>),
    Forall,
    Exists,
    Ident(String),
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Falsum => "`_|_`".into(),
        Tok::Not => "`~`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::InqOr => "`??`".into(),
        Tok::Implies => "`->`".into(),
        Tok::Iff => "`<->`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Box(_) => "`[]`".into(),
        Tok::Diamond(_) => "`<>`".into(),
        Tok::Forall => "`A`".into(),
        Tok::Exists => "`E`".into(),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Eof => "end of input".into(),
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn is_index_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out: Vec<(usize, Tok)> = Vec::new();
    let mut i = 0;
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    let pos = |i: usize| chars.get(i).map_or(src.len(), |&(p, _)| p);
    // Modal operators whose trailing word is still to be classified as index or operand.
    let mut pending: Vec<usize> = Vec::new();
    while i < chars.len() {
        let c = chars[i].1;
        let start = pos(i);
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let rest = &src[start..];
        let (tok, len) = if rest.starts_with("_|_") {
            (Tok::Falsum, 3)
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Implies, 2)
        } else if rest.starts_with("??") {
            (Tok::InqOr, 2)
        } else if rest.starts_with("[]") || rest.starts_with("<>") {
            let is_box = rest.starts_with("[]");
            let mut j = i + 2;
            while at(j).is_some_and(is_index_char) {
                j += 1;
            }
            let word = &src[pos(i + 2)..pos(j)];
            let tok = if is_box { Tok::Box(None) } else { Tok::Diamond(None) };
            out.push((start, tok));
            if !word.is_empty() {
                pending.push(out.len() - 1);
                out.push((pos(i + 2), Tok::Ident(word.to_string())));
            }
            i = j;
            continue;
        } else {
            match c {
                '~' => (Tok::Not, 1),
                '&' => (Tok::And, 1),
                '|' => (Tok::Or, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                c if is_ident_start(c) => {
                    let mut j = i + 1;
                    while at(j).is_some_and(is_ident_char) {
                        j += 1;
                    }
                    let word = &src[start..pos(j)];
                    let tok = match word {
                        "A" => Tok::Forall,
                        "E" => Tok::Exists,
                        _ => Tok::Ident(word.to_string()),
                    };
                    out.push((start, tok));
                    i = j;
                    continue;
                }
                c => {
                    return Err(Error::Syntax {
                        pos: start,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push((start, tok));
        i += src[start..start + len].chars().count();
    }
    out.push((src.len(), Tok::Eof));
    // An attached word is an index exactly when a formula can start after it.
    for &k in pending.iter().rev() {
        let starts_formula = matches!(
            out[k + 2].1,
            Tok::Falsum
                | Tok::Not
                | Tok::LParen
                | Tok::Box(_)
                | Tok::Diamond(_)
                | Tok::Forall
                | Tok::Exists
                | Tok::Ident(_)
        );
        if starts_formula {
            let Tok::Ident(word) = out.remove(k + 1).1 else {
                unreachable!()
            };
            out[k].1 = match out[k].1 {
                Tok::Box(_) => Tok::Box(Some(word)),
                _ => Tok::Diamond(Some(word)),
            };
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser {
    toks: Vec<(usize, Tok)>,
    k: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.k].1
    }

    fn pos(&self) -> usize {
        self.toks[self.k].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.k].1.clone();
        if self.k + 1 < self.toks.len() {
            self.k += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", describe(&t), describe(self.peek())))
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            lhs = Formula::iff(lhs, self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.inq()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(Formula::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn inq(&mut self) -> Result<Formula> {
        let mut lhs = self.or()?;
        while *self.peek() == Tok::InqOr {
            self.bump();
            lhs = Formula::inq_or(lhs, self.or()?);
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn bound_var(&mut self) -> Result<String> {
        match self.bump() {
            Tok::Ident(p) => Ok(p),
            t => {
                self.k -= 1;
                self.error(format!("expected a variable after a quantifier, found {}", describe(&t)))
            }
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box(i) => {
                self.bump();
                let i = i.unwrap_or_else(|| DEFAULT_INDEX.to_string());
                Ok(Formula::Box(i, Box::new(self.unary()?)))
            }
            Tok::Diamond(i) => {
                self.bump();
                let i = i.unwrap_or_else(|| DEFAULT_INDEX.to_string());
                Ok(Formula::Diamond(i, Box::new(self.unary()?)))
            }
            Tok::Forall => {
                self.bump();
                let p = self.bound_var()?;
                Ok(Formula::ForallProp(p, Box::new(self.unary()?)))
            }
            Tok::Exists => {
                self.bump();
                let p = self.bound_var()?;
                Ok(Formula::ExistsProp(p, Box::new(self.unary()?)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Falsum => {
                self.bump();
                Ok(Formula::Falsum)
            }
            Tok::Ident(p) => {
                self.bump();
                Ok(Formula::Var(p))
            }
            Tok::LParen => {
                self.bump();
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            t => self.error(format!("expected a formula, found {}", describe(&t))),
        }
    }
}

pub fn parse(src: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(src)?, k: 0 };
    let f = p.iff()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse(s)
    }
}

// ---------------------------------------------------------------------------
// Printer: binary subformulas are always parenthesized, the top level is not.

fn write_operand(f: &mut fmt::Formatter<'_>, g: &Formula) -> fmt::Result {
    match g {
        Formula::And(..)
        | Formula::Or(..)
        | Formula::Implies(..)
        | Formula::Iff(..)
        | Formula::InqOr(..) => write!(f, "({g})"),
        _ => write!(f, "{g}"),
    }
}

fn write_modal(f: &mut fmt::Formatter<'_>, op: &str, i: &str, a: &Formula) -> fmt::Result {
    if i == DEFAULT_INDEX {
        write!(f, "{op} ")?;
    } else {
        write!(f, "{op}{i} ")?;
    }
    write_operand(f, a)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula| {
            write_operand(f, a)?;
            write!(f, " {op} ")?;
            write_operand(f, b)
        };
        match self {
            Formula::Falsum => write!(f, "_|_"),
            Formula::Var(p) => write!(f, "{p}"),
            Formula::Not(a) => {
                write!(f, "~")?;
                write_operand(f, a)
            }
            Formula::And(a, b) => binary(f, a, "&", b),
            Formula::Or(a, b) => binary(f, a, "|", b),
            Formula::InqOr(a, b) => binary(f, a, "??", b),
            Formula::Implies(a, b) => binary(f, a, "->", b),
            Formula::Iff(a, b) => binary(f, a, "<->", b),
            Formula::Box(i, a) => write_modal(f, "[]", i, a),
            Formula::Diamond(i, a) => write_modal(f, "<>", i, a),
            Formula::ForallProp(p, a) => {
                write!(f, "A {p} ")?;
                write_operand(f, a)
            }
            Formula::ExistsProp(p, a) => {
                write!(f, "E {p} ")?;
                write_operand(f, a)
            }
        }
    }
}

/// Canonical text of a formula; `parse(&print(f)) == f`.
pub fn print(f: &Formula) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn indexed_box() {
        assert_eq!(
            p("[]f s -> s"),
            Formula::implies(Formula::boxed("f", Formula::var("s")), Formula::var("s"))
        );
        assert_eq!(
            p("[]p -> p"),
            Formula::implies(Formula::boxed("0", Formula::var("p")), Formula::var("p"))
        );
        assert_eq!(p("[]f[]g p"), Formula::boxed("f", Formula::boxed("g", Formula::var("p"))));
        assert_eq!(p("<>f ~s"), Formula::diamond("f", Formula::not(Formula::var("s"))));
        assert_eq!(p("[]p"), Formula::boxed("0", Formula::var("p")));
    }

    #[test]
    fn formula_w() {
        let w = p("E q (q & A p (p -> [] (q -> p)))");
        let expected = Formula::exists(
            "q",
            Formula::and(
                Formula::var("q"),
                Formula::forall(
                    "p",
                    Formula::implies(
                        Formula::var("p"),
                        Formula::boxed("0", Formula::implies(Formula::var("q"), Formula::var("p"))),
                    ),
                ),
            ),
        );
        assert_eq!(w, expected);
        assert!(w.free_vars().is_empty());
    }

    #[test]
    fn inquisitive_precedence() {
        assert_eq!(
            p("(p | q) ?? r"),
            Formula::inq_or(Formula::or(Formula::var("p"), Formula::var("q")), Formula::var("r"))
        );
        assert_eq!(p("p | q ?? r"), p("(p | q) ?? r"));
        assert_eq!(p("p ?? q -> r"), p("(p ?? q) -> r"));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(p("p -> q -> r"), p("p -> (q -> r)"));
        assert_eq!(p("p & q | r"), p("(p & q) | r"));
        assert_eq!(p("~p & q"), p("(~p) & q"));
        assert_eq!(p("p <-> q -> r"), p("p <-> (q -> r)"));
    }

    #[test]
    fn printing() {
        assert_eq!(print(&Formula::boxed("f", Formula::var("s"))), "[]f s");
        assert_eq!(print(&p("[] p")), "[] p");
        let w = p("E q (q & A p (p -> [] (q -> p)))");
        assert_eq!(print(&w), "E q (q & A p (p -> [] (q -> p)))");
        assert_eq!(p(&print(&w)), w);
        let inq = p("(p | q) ?? r");
        assert_eq!(p(&print(&inq)), inq);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("p & ") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse("(p").is_err());
        assert!(parse("p q").is_err());
        assert!(parse("A").is_err());
        assert!(parse("p $ q").is_err());
    }

    #[test]
    fn bimodal_translation() {
        let sq = |f| Formula::boxed(SQ_INDEX, f);
        let atom = sq(Formula::diamond(SQ_INDEX, Formula::var("p")));
        assert_eq!(bimodal_translate(&p("p")).unwrap(), atom);
        assert_eq!(
            bimodal_translate(&p("[]R p")).unwrap(),
            Formula::boxed("R", atom.clone())
        );
        assert_eq!(
            bimodal_translate(&p("~p")).unwrap(),
            sq(Formula::not(atom))
        );
        assert!(bimodal_translate(&p("A p p")).is_err());
        assert!(bimodal_translate(&p("p ?? q")).is_err());
    }
}
