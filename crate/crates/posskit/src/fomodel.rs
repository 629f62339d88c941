//! First-order possibility models: guises, settled identity `≍ₛ`, partial
//! quasi-functional interpretations, forcing, and the modal extension with
//! varying domains and accessibility relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result, Verdict, Violation};
use crate::modal::{Relation, RelationalFrame};
use crate::poset::{ElementSet, Poset};
use crate::syntax::DEFAULT_INDEX;

/// Cap on the tuples `Dⁿ` enumerated by validation and evaluation.
pub const TUPLE_CAP: usize = 1 << 16;

/// Cap on the interpretations of `Q` and `c` searched by [`fact_world_check`].
pub const INTERPRETATION_CAP: u128 = 1 << 20;

pub type Tuple = Vec<usize>;

/// Variable assignment `g`, total on the variables in use.
pub type Assignment = BTreeMap<String, usize>;

/// Predicate and function symbols with their arities; constants have arity 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: BTreeMap<String, usize>,
    pub functions: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new(predicates: &[(&str, usize)], functions: &[(&str, usize)]) -> Result<Self> {
        let mut sig = Signature::default();
        for &(name, n) in predicates {
            if sig.predicates.insert(name.to_string(), n).is_some() {
                return Err(Error::DuplicateName(name.to_string()));
            }
        }
        for &(name, n) in functions {
            if sig.predicates.contains_key(name) || sig.functions.insert(name.to_string(), n).is_some() {
                return Err(Error::DuplicateName(name.to_string()));
            }
        }
        Ok(sig)
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.functions.get(name) == Some(&0)
    }
}

/// The extension of a symbol at each possibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub arity: usize,
    /// `ext[s]` is `V(·, s)`; function tuples carry the output last.
    pub ext: Vec<BTreeSet<Tuple>>,
}

/// `(S, ⊑, D, ≍, V)`, optionally with a domain function `d` and relations `Rᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FOModel {
    pub poset: Poset,
    pub guises: Vec<String>,
    /// `eq[s][a]` is the `≍ₛ`-class of `a`.
    pub eq: Vec<Vec<ElementSet>>,
    pub predicates: BTreeMap<String, Interpretation>,
    pub functions: BTreeMap<String, Interpretation>,
    pub domain_fn: Option<Vec<ElementSet>>,
    pub relations: BTreeMap<String, Relation>,
}

impl FOModel {
    /// A model with identity `≍ₛ` everywhere and no symbols.
    pub fn new<S: Into<String>>(poset: Poset, guises: Vec<S>) -> Result<Self> {
        let guises: Vec<String> = guises.into_iter().map(Into::into).collect();
        if guises.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        if guises.len() > crate::poset::MAX_ELEMENTS {
            return Err(Error::TooLarge(guises.len()));
        }
        let mut seen = BTreeSet::new();
        for g in &guises {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateName(g.clone()));
            }
        }
        let identity: Vec<ElementSet> = (0..guises.len()).map(ElementSet::singleton).collect();
        Ok(FOModel {
            eq: vec![identity; poset.len()],
            poset,
            guises,
            predicates: BTreeMap::new(),
            functions: BTreeMap::new(),
            domain_fn: None,
            relations: BTreeMap::new(),
        })
    }

    pub fn guise(&self, name: &str) -> Result<usize> {
        self.guises
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn show_guises(&self, u: ElementSet) -> String {
        let parts: Vec<&str> = u.iter().map(|a| self.guises[a].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn signature(&self) -> Signature {
        Signature {
            predicates: self.predicates.iter().map(|(k, v)| (k.clone(), v.arity)).collect(),
            functions: self.functions.iter().map(|(k, v)| (k.clone(), v.arity)).collect(),
        }
    }

    /// Sets `≍ₛ` to the equivalence generated by `pairs`.
    pub fn set_eq(&mut self, s: usize, pairs: &[(usize, usize)]) {
        let n = self.guises.len();
        let mut class: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(a, b) in pairs {
            let merged = class[a] | class[b];
            for c in merged {
                class[c] = merged;
            }
        }
        self.eq[s] = class;
    }

    pub fn equivalent(&self, s: usize, a: usize, b: usize) -> bool {
        self.eq[s][a].contains(b)
    }

    pub fn add_predicate(&mut self, name: &str, arity: usize) -> Result<()> {
        self.add_symbol(name, arity, true)
    }

    pub fn add_function(&mut self, name: &str, arity: usize) -> Result<()> {
        self.add_symbol(name, arity, false)
    }

    fn add_symbol(&mut self, name: &str, arity: usize, predicate: bool) -> Result<()> {
        if self.predicates.contains_key(name) || self.functions.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let width = if predicate { arity } else { arity + 1 };
        tuple_count(self.guises.len(), width)?;
        let interp = Interpretation {
            arity,
            ext: vec![BTreeSet::new(); self.poset.len()],
        };
        let map = if predicate { &mut self.predicates } else { &mut self.functions };
        map.insert(name.to_string(), interp);
        Ok(())
    }

    /// Adds `tuple` to `V(name, s)`; function tuples end with the output.
    pub fn insert(&mut self, name: &str, s: usize, tuple: Tuple) -> Result<()> {
        let (interp, width) = if let Some(i) = self.predicates.get_mut(name) {
            let w = i.arity;
            (i, w)
        } else if let Some(i) = self.functions.get_mut(name) {
            let w = i.arity + 1;
            (i, w)
        } else {
            return Err(Error::UnknownSymbol(name.to_string()));
        };
        if tuple.len() != width {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: width,
                found: tuple.len(),
            });
        }
        if let Some(&a) = tuple.iter().find(|&&a| a >= self.guises.len()) {
            return Err(Error::IndexOutOfRange {
                index: a,
                size: self.guises.len(),
            });
        }
        if s >= self.poset.len() {
            return Err(Error::IndexOutOfRange {
                index: s,
                size: self.poset.len(),
            });
        }
        interp.ext[s].insert(tuple);
        Ok(())
    }

    /// Interprets constant `c` at every `s` as the `≍ₛ`-class of guise `a`.
    pub fn set_constant(&mut self, c: &str, a: usize) -> Result<()> {
        if !self.functions.contains_key(c) {
            self.add_function(c, 0)?;
        }
        for s in 0..self.poset.len() {
            for b in self.eq[s][a] {
                self.insert(c, s, vec![b])?;
            }
        }
        Ok(())
    }

    /// The possibilities as a full relational frame carrying `Rᵢ`.
    pub fn relational_frame(&self) -> Result<RelationalFrame> {
        RelationalFrame::full(self.poset.clone(), self.relations.clone())
    }

    /// Domain `d(s)`, or all of `D` without a domain function.
    pub fn domain_at(&self, s: usize) -> ElementSet {
        match &self.domain_fn {
            Some(d) => d[s],
            None => ElementSet::full(self.guises.len()),
        }
    }

    fn interpretation(&self, name: &str, arity: usize, predicate: bool) -> Result<&Interpretation> {
        let map = if predicate { &self.predicates } else { &self.functions };
        let i = map.get(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        if i.arity != arity {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: i.arity,
                found: arity,
            });
        }
        Ok(i)
    }
}

fn tuple_count(n: usize, width: usize) -> Result<usize> {
    let count = (n as u128).saturating_pow(width as u32);
    if count > TUPLE_CAP as u128 {
        return Err(Error::cap("tuples", TUPLE_CAP as u64, count.min(u64::MAX as u128) as u64));
    }
    Ok(count as usize)
}

/// All tuples over `D = {0..n}` of the given width, in lexicographic order.
fn tuples(n: usize, width: usize) -> Result<Vec<Tuple>> {
    let count = tuple_count(n, width)?;
    Ok((0..count)
        .map(|mut k| {
            let mut t = vec![0; width];
            for slot in t.iter_mut().rev() {
                *slot = k % n;
                k /= n;
            }
            t
        })
        .collect())
}

/// Tuples `b̄` with `āᵢ ≍ₛ b̄ᵢ` for every position.
fn equivalent_tuples(m: &FOModel, s: usize, a: &[usize]) -> Vec<Tuple> {
    let mut out = vec![Vec::new()];
    for &ai in a {
        out = out
            .into_iter()
            .flat_map(|prefix: Tuple| {
                m.eq[s][ai].iter().map(move |b| {
                    let mut t = prefix.clone();
                    t.push(b);
                    t
                })
            })
            .collect();
    }
    out
}

/// Checks every model condition exhaustively, reporting the first failure.
pub fn validate_fomodel(m: &FOModel) -> Result<Verdict> {
    let p = &m.poset;
    let n = m.guises.len();
    let (sn, gn) = (|s: usize| p.name(s).to_string(), |a: usize| m.guises[a].clone());
    let show_tuple = |t: &[usize]| format!("({})", t.iter().map(|&a| gn(a)).collect::<Vec<_>>().join(","));
    if m.eq.len() != p.len() || m.eq.iter().any(|e| e.len() != n) {
        return Ok(Err(Violation::new("shape", "≍ is not given at every possibility for every guise")));
    }
    for s in 0..p.len() {
        for a in 0..n {
            if !m.eq[s][a].contains(a) {
                return Ok(Err(Violation::new("≍ equivalence", format!("{} ≭ {} at {}", gn(a), gn(a), sn(s)))));
            }
            for b in m.eq[s][a] {
                if !m.eq[s][b].contains(a) || m.eq[s][b] != m.eq[s][a] {
                    return Ok(Err(Violation::new(
                        "≍ equivalence",
                        format!("classes of {} and {} differ at {}", gn(a), gn(b), sn(s)),
                    )));
                }
            }
        }
    }
    // Persistence and refinability share a shape: a family of sets indexed by
    // possibility, and `refines(s, x)` says `x` is eventually always absent below `s`.
    let refutable = |s: usize, absent: &dyn Fn(usize) -> bool| {
        p.down(s).iter().any(|s1| p.down(s1).iter().all(absent))
    };
    for s in 0..p.len() {
        for s1 in p.down(s) {
            for a in 0..n {
                if !m.eq[s][a].is_subset(m.eq[s1][a]) {
                    let b = (m.eq[s][a] - m.eq[s1][a]).first().unwrap_or(a);
                    return Ok(Err(Violation::new(
                        "≍ persistence",
                        format!("{} ≍ {} at {} but not at {}", gn(a), gn(b), sn(s), sn(s1)),
                    )));
                }
            }
        }
        for a in 0..n {
            for b in (0..n).filter(|&b| !m.eq[s][a].contains(b)) {
                if !refutable(s, &|s2| !m.eq[s2][a].contains(b)) {
                    return Ok(Err(Violation::new(
                        "≍ refinability",
                        format!("{} ≭ {} at {} is never settled", gn(a), gn(b), sn(s)),
                    )));
                }
            }
        }
    }
    let symbols = m
        .predicates
        .iter()
        .map(|(k, v)| (k, v, true))
        .chain(m.functions.iter().map(|(k, v)| (k, v, false)));
    for (name, interp, predicate) in symbols {
        let width = if predicate { interp.arity } else { interp.arity + 1 };
        if interp.ext.len() != p.len() {
            return Ok(Err(Violation::new("shape", format!("`{name}` is not given at every possibility"))));
        }
        for s in 0..p.len() {
            if let Some(t) = interp.ext[s].iter().find(|t| t.len() != width || t.iter().any(|&a| a >= n)) {
                return Ok(Err(Violation::new("shape", format!("`{name}` has malformed tuple {t:?} at {}", sn(s)))));
            }
            for t in &interp.ext[s] {
                for s1 in p.down(s) {
                    if let Some(u) = equivalent_tuples(m, s1, t).into_iter().find(|u| !interp.ext[s1].contains(u)) {
                        return Ok(Err(Violation::new(
                            format!("persistence for {name}"),
                            format!(
                                "{} ∈ V({name}, {}) and {} ≍ {} at {} but {} ∉ V({name}, {})",
                                show_tuple(t),
                                sn(s),
                                show_tuple(t),
                                show_tuple(&u),
                                sn(s1),
                                show_tuple(&u),
                                sn(s1)
                            ),
                        )));
                    }
                }
            }
            if predicate {
                for t in tuples(n, width)? {
                    if !interp.ext[s].contains(&t) && !refutable(s, &|s2| !interp.ext[s2].contains(&t)) {
                        return Ok(Err(Violation::new(
                            format!("refinability for {name}"),
                            format!("{} ∉ V({name}, {}) is never settled", show_tuple(&t), sn(s)),
                        )));
                    }
                }
                continue;
            }
            for t in &interp.ext[s] {
                for u in interp.ext[s].range(t[..interp.arity].to_vec()..) {
                    if u[..interp.arity] != t[..interp.arity] {
                        break;
                    }
                    let (b, b1) = (t[interp.arity], u[interp.arity]);
                    if !m.equivalent(s, b, b1) {
                        return Ok(Err(Violation::new(
                            format!("quasi-functionality for {name}"),
                            format!(
                                "{name}{} has outputs {} and {} at {} with {} ≭ {}",
                                show_tuple(&t[..interp.arity]),
                                gn(b),
                                gn(b1),
                                sn(s),
                                gn(b),
                                gn(b1)
                            ),
                        )));
                    }
                }
            }
            for args in tuples(n, interp.arity)? {
                let defined = p.down(s).iter().any(|s1| {
                    interp.ext[s1]
                        .range(args.clone()..)
                        .next()
                        .is_some_and(|t| t[..interp.arity] == args[..])
                });
                if !defined {
                    return Ok(Err(Violation::new(
                        format!("eventual definedness for {name}"),
                        format!("{name}{} is undefined everywhere below {}", show_tuple(&args), sn(s)),
                    )));
                }
            }
        }
    }
    if let Some(d) = &m.domain_fn {
        if d.len() != p.len() {
            return Ok(Err(Violation::new("shape", "d is not given at every possibility")));
        }
        for s in 0..p.len() {
            for a in d[s] {
                for s1 in p.down(s) {
                    if !m.eq[s1][a].is_subset(d[s1]) {
                        let b = (m.eq[s1][a] - d[s1]).first().unwrap_or(a);
                        return Ok(Err(Violation::new(
                            "persistence for d",
                            format!("{} ∈ d({}) and {} ≍ {} at {} but {} ∉ d({})", gn(a), sn(s), gn(a), gn(b), sn(s1), gn(b), sn(s1)),
                        )));
                    }
                }
            }
            for a in (0..n).filter(|&a| !d[s].contains(a)) {
                if !refutable(s, &|s2| !d[s2].contains(a)) {
                    return Ok(Err(Violation::new(
                        "refinability for d",
                        format!("{} ∉ d({}) is never settled", gn(a), sn(s)),
                    )));
                }
            }
        }
    }
    if !m.relations.is_empty() {
        let frame = m.relational_frame()?;
        if let Err(v) = frame.validate() {
            return Ok(Err(v));
        }
    }
    Ok(Ok(()))
}

// ---------------------------------------------------------------------------
// Syntax

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// Function application; constants have no arguments.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(x.to_string())
    }

    pub fn constant(c: &str) -> Term {
        Term::App(c.to_string(), Vec::new())
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.to_string(), args)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
        }
    }

    /// `u^x_t`.
    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|u| u.substitute(x, t)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::App(c, args) if args.is_empty() => f.write_str(c),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// First-order modal formulas. `∨`, `→`, `↔`, `∃` and `◇` are abbreviations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FOFormula {
    Eq(Term, Term),
    Pred(String, Vec<Term>),
    Not(Box<FOFormula>),
    And(Box<FOFormula>, Box<FOFormula>),
    Or(Box<FOFormula>, Box<FOFormula>),
    Implies(Box<FOFormula>, Box<FOFormula>),
    Iff(Box<FOFormula>, Box<FOFormula>),
    Forall(String, Box<FOFormula>),
    Exists(String, Box<FOFormula>),
    Box(String, Box<FOFormula>),
    Diamond(String, Box<FOFormula>),
}

impl FOFormula {
    pub fn eq(a: Term, b: Term) -> Self {
        FOFormula::Eq(a, b)
    }

    pub fn pred(r: &str, args: Vec<Term>) -> Self {
        FOFormula::Pred(r.to_string(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Self) -> Self {
        FOFormula::Not(Box::new(a))
    }

    pub fn and(a: Self, b: Self) -> Self {
        FOFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        FOFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Self, b: Self) -> Self {
        FOFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Self, b: Self) -> Self {
        FOFormula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, a: Self) -> Self {
        FOFormula::Forall(x.to_string(), Box::new(a))
    }

    pub fn exists(x: &str, a: Self) -> Self {
        FOFormula::Exists(x.to_string(), Box::new(a))
    }

    pub fn boxed(i: &str, a: Self) -> Self {
        FOFormula::Box(i.to_string(), Box::new(a))
    }

    pub fn diamond(i: &str, a: Self) -> Self {
        FOFormula::Diamond(i.to_string(), Box::new(a))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        match self {
            FOFormula::Eq(a, b) => a.vars().union(&b.vars()).cloned().collect(),
            FOFormula::Pred(_, args) => args.iter().flat_map(Term::vars).collect(),
            FOFormula::Not(a) | FOFormula::Box(_, a) | FOFormula::Diamond(_, a) => a.free_vars(),
            FOFormula::And(a, b) | FOFormula::Or(a, b) | FOFormula::Implies(a, b) | FOFormula::Iff(a, b) => {
                a.free_vars().union(&b.free_vars()).cloned().collect()
            }
            FOFormula::Forall(x, a) | FOFormula::Exists(x, a) => {
                let mut v = a.free_vars();
                v.remove(x);
                v
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            FOFormula::Eq(..) | FOFormula::Pred(..) => 0,
            FOFormula::Not(a)
            | FOFormula::Box(_, a)
            | FOFormula::Diamond(_, a)
            | FOFormula::Forall(_, a)
            | FOFormula::Exists(_, a) => 1 + a.depth(),
            FOFormula::And(a, b) | FOFormula::Or(a, b) | FOFormula::Implies(a, b) | FOFormula::Iff(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Rewrites the abbreviations into `¬`, `∧`, `∀` and `□ᵢ`.
    pub fn expand_defined(&self) -> FOFormula {
        use FOFormula as F;
        match self {
            F::Eq(..) | F::Pred(..) => self.clone(),
            F::Not(a) => F::not(a.expand_defined()),
            F::And(a, b) => F::and(a.expand_defined(), b.expand_defined()),
            F::Or(a, b) => F::not(F::and(F::not(a.expand_defined()), F::not(b.expand_defined()))),
            F::Implies(a, b) => F::not(F::and(a.expand_defined(), F::not(b.expand_defined()))),
            F::Iff(a, b) => F::and(
                F::implies(*a.clone(), *b.clone()).expand_defined(),
                F::implies(*b.clone(), *a.clone()).expand_defined(),
            ),
            F::Forall(x, a) => F::forall(x, a.expand_defined()),
            F::Exists(x, a) => F::not(F::forall(x, F::not(a.expand_defined()))),
            F::Box(i, a) => F::boxed(i, a.expand_defined()),
            F::Diamond(i, a) => F::not(F::boxed(i, F::not(a.expand_defined()))),
        }
    }

    /// No free occurrence of `x` lies in the scope of a quantifier binding a variable of `t`.
    pub fn substitutable(&self, x: &str, t: &Term) -> bool {
        let tv = t.vars();
        self.substitutable_under(x, &tv)
    }

    fn substitutable_under(&self, x: &str, tv: &BTreeSet<String>) -> bool {
        match self {
            FOFormula::Eq(..) | FOFormula::Pred(..) => true,
            FOFormula::Not(a) | FOFormula::Box(_, a) | FOFormula::Diamond(_, a) => a.substitutable_under(x, tv),
            FOFormula::And(a, b) | FOFormula::Or(a, b) | FOFormula::Implies(a, b) | FOFormula::Iff(a, b) => {
                a.substitutable_under(x, tv) && b.substitutable_under(x, tv)
            }
            FOFormula::Forall(y, a) | FOFormula::Exists(y, a) => {
                y == x || !a.free_vars().contains(x) || (!tv.contains(y) && a.substitutable_under(x, tv))
            }
        }
    }

    /// `φ^x_t`: every free occurrence of `x` replaced by `t`.
    pub fn substitute(&self, x: &str, t: &Term) -> FOFormula {
        use FOFormula as F;
        let sub = |a: &F| Box::new(a.substitute(x, t));
        match self {
            F::Eq(a, b) => F::Eq(a.substitute(x, t), b.substitute(x, t)),
            F::Pred(r, args) => F::Pred(r.clone(), args.iter().map(|u| u.substitute(x, t)).collect()),
            F::Not(a) => F::Not(sub(a)),
            F::And(a, b) => F::And(sub(a), sub(b)),
            F::Or(a, b) => F::Or(sub(a), sub(b)),
            F::Implies(a, b) => F::Implies(sub(a), sub(b)),
            F::Iff(a, b) => F::Iff(sub(a), sub(b)),
            F::Forall(y, _) | F::Exists(y, _) if y == x => self.clone(),
            F::Forall(y, a) => F::Forall(y.clone(), sub(a)),
            F::Exists(y, a) => F::Exists(y.clone(), sub(a)),
            F::Box(i, a) => F::Box(i.clone(), sub(a)),
            F::Diamond(i, a) => F::Diamond(i.clone(), sub(a)),
        }
    }
}

fn fo_prec(f: &FOFormula) -> u8 {
    match f {
        FOFormula::Iff(..) => 1,
        FOFormula::Implies(..) => 2,
        FOFormula::Or(..) => 3,
        FOFormula::And(..) => 4,
        _ => 5,
    }
}

impl fmt::Display for FOFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, g: &FOFormula, min: u8| {
            if fo_prec(g) < min {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        let modal = |f: &mut fmt::Formatter<'_>, op: &str, i: &str| {
            if i == DEFAULT_INDEX {
                write!(f, "{op} ")
            } else {
                write!(f, "{op}{i} ")
            }
        };
        match self {
            FOFormula::Eq(a, b) => write!(f, "{a} = {b}"),
            FOFormula::Pred(r, args) if args.is_empty() => f.write_str(r),
            FOFormula::Pred(r, args) => write!(f, "{}", Term::App(r.clone(), args.clone())),
            FOFormula::Not(a) => {
                f.write_str("~")?;
                paren(f, a, 5)
            }
            FOFormula::Box(i, a) => {
                modal(f, "[]", i)?;
                paren(f, a, 5)
            }
            FOFormula::Diamond(i, a) => {
                modal(f, "<>", i)?;
                paren(f, a, 5)
            }
            FOFormula::Forall(x, a) => {
                write!(f, "A {x} ")?;
                paren(f, a, 5)
            }
            FOFormula::Exists(x, a) => {
                write!(f, "E {x} ")?;
                paren(f, a, 5)
            }
            FOFormula::And(a, b) => {
                paren(f, a, 4)?;
                f.write_str(" & ")?;
                paren(f, b, 5)
            }
            FOFormula::Or(a, b) => {
                paren(f, a, 3)?;
                f.write_str(" | ")?;
                paren(f, b, 4)
            }
            FOFormula::Implies(a, b) => {
                paren(f, a, 3)?;
                f.write_str(" -> ")?;
                paren(f, b, 2)
            }
            FOFormula::Iff(a, b) => {
                paren(f, a, 1)?;
                f.write_str(" <-> ")?;
                paren(f, b, 2)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum FoTok {
    Ident(String),
    Box(Option<String>),
    Diamond(Option<String>),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Eq,
    Comma,
    LParen,
    RParen,
    Forall,
    Exists,
    Eof,
}

fn fo_lex(src: &str) -> Result<Vec<(usize, FoTok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let word_end = |mut j: usize| {
        while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b'\'') {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &src[i..];
        let (tok, len) = if rest.starts_with("<->") {
            (FoTok::Iff, 3)
        } else if rest.starts_with("->") {
            (FoTok::Implies, 2)
        } else if rest.starts_with("[]") || rest.starts_with("<>") {
            // An attached word is an index unless it is applied to arguments.
            let j = word_end(i + 2);
            let word = &src[i + 2..j];
            let index = (!word.is_empty() && bytes.get(j) != Some(&b'(')).then(|| word.to_string());
            let tok = if rest.starts_with("[]") {
                FoTok::Box(index.clone())
            } else {
                FoTok::Diamond(index.clone())
            };
            out.push((i, tok));
            i = if index.is_some() { j } else { i + 2 };
            continue;
        } else {
            match c {
                b'~' => (FoTok::Not, 1),
                b'&' => (FoTok::And, 1),
                b'|' => (FoTok::Or, 1),
                b'=' => (FoTok::Eq, 1),
                b',' => (FoTok::Comma, 1),
                b'(' => (FoTok::LParen, 1),
                b')' => (FoTok::RParen, 1),
                c if c.is_ascii_alphabetic() => {
                    let j = word_end(i);
                    let tok = match &src[i..j] {
                        "A" => FoTok::Forall,
                        "E" => FoTok::Exists,
                        w => FoTok::Ident(w.to_string()),
                    };
                    (tok, j - i)
                }
                _ => {
                    let ch = src[i..].chars().next().unwrap_or('?');
                    return Err(Error::Syntax {
                        pos: i,
                        message: format!("unexpected character `{ch}`"),
                    });
                }
            }
        };
        out.push((i, tok));
        i += len;
    }
    out.push((src.len(), FoTok::Eof));
    Ok(out)
}

struct FoParser<'a> {
    toks: Vec<(usize, FoTok)>,
    k: usize,
    sig: &'a Signature,
}

impl FoParser<'_> {
    fn peek(&self) -> &FoTok {
        &self.toks[self.k].1
    }

    fn bump(&mut self) -> FoTok {
        let t = self.toks[self.k].1.clone();
        if self.k + 1 < self.toks.len() {
            self.k += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.toks[self.k].0,
            message: message.into(),
        })
    }

    fn expect(&mut self, t: FoTok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {t:?}, found {:?}", self.peek()))
        }
    }

    fn iff(&mut self) -> Result<FOFormula> {
        let mut lhs = self.implies()?;
        while *self.peek() == FoTok::Iff {
            self.bump();
            lhs = FOFormula::iff(lhs, self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<FOFormula> {
        let lhs = self.or()?;
        if *self.peek() == FoTok::Implies {
            self.bump();
            return Ok(FOFormula::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<FOFormula> {
        let mut lhs = self.and()?;
        while *self.peek() == FoTok::Or {
            self.bump();
            lhs = FOFormula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<FOFormula> {
        let mut lhs = self.unary()?;
        while *self.peek() == FoTok::And {
            self.bump();
            lhs = FOFormula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<FOFormula> {
        match self.peek().clone() {
            FoTok::Not => {
                self.bump();
                Ok(FOFormula::not(self.unary()?))
            }
            FoTok::Box(i) | FoTok::Diamond(i) => {
                let is_box = matches!(self.bump(), FoTok::Box(_));
                let i = i.unwrap_or_else(|| DEFAULT_INDEX.to_string());
                let a = Box::new(self.unary()?);
                Ok(if is_box { FOFormula::Box(i, a) } else { FOFormula::Diamond(i, a) })
            }
            FoTok::Forall | FoTok::Exists => {
                let universal = self.bump() == FoTok::Forall;
                let x = match self.bump() {
                    FoTok::Ident(x) if !self.sig.functions.contains_key(&x) => x,
                    _ => {
                        self.k -= 1;
                        return self.error("expected a variable after a quantifier");
                    }
                };
                let a = Box::new(self.unary()?);
                Ok(if universal { FOFormula::Forall(x, a) } else { FOFormula::Exists(x, a) })
            }
            FoTok::LParen => {
                self.bump();
                let f = self.iff()?;
                self.expect(FoTok::RParen)?;
                Ok(f)
            }
            FoTok::Ident(name) if self.sig.predicates.contains_key(&name) => {
                self.bump();
                let args = self.args()?;
                let arity = self.sig.predicates[&name];
                if args.len() != arity {
                    return Err(Error::Arity {
                        name,
                        expected: arity,
                        found: args.len(),
                    });
                }
                Ok(FOFormula::Pred(name, args))
            }
            FoTok::Ident(_) => {
                let a = self.term()?;
                self.expect(FoTok::Eq)?;
                let b = self.term()?;
                Ok(FOFormula::Eq(a, b))
            }
            t => self.error(format!("expected a formula, found {t:?}")),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        let mut args = Vec::new();
        if *self.peek() != FoTok::LParen {
            return Ok(args);
        }
        self.bump();
        if *self.peek() == FoTok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.bump() {
                FoTok::Comma => continue,
                FoTok::RParen => return Ok(args),
                _ => {
                    self.k -= 1;
                    return self.error("expected `,` or `)` in an argument list");
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.bump() {
            FoTok::Ident(name) => match self.sig.functions.get(&name).copied() {
                Some(arity) => {
                    let args = self.args()?;
                    if args.len() != arity {
                        return Err(Error::Arity {
                            name,
                            expected: arity,
                            found: args.len(),
                        });
                    }
                    Ok(Term::App(name, args))
                }
                None if self.sig.predicates.contains_key(&name) => {
                    Err(Error::UnknownSymbol(format!("predicate `{name}` used as a term")))
                }
                None if *self.peek() == FoTok::LParen => Err(Error::UnknownSymbol(name)),
                None => Ok(Term::Var(name)),
            },
            _ => {
                self.k -= 1;
                self.error("expected a term")
            }
        }
    }
}

/// Parses a first-order formula; identifiers not in `sig` are variables.
pub fn parse_fo(src: &str, sig: &Signature) -> Result<FOFormula> {
    let mut p = FoParser {
        toks: fo_lex(src)?,
        k: 0,
        sig,
    };
    let f = p.iff()?;
    if *p.peek() != FoTok::Eof {
        return p.error(format!("unexpected {:?} after a complete formula", p.peek()));
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// Semantics

/// `⟦t⟧_{s,g}`.
pub fn denote(m: &FOModel, s: usize, g: &Assignment, t: &Term) -> Result<ElementSet> {
    match t {
        Term::Var(x) => {
            let a = *g.get(x).ok_or_else(|| Error::UnboundVariable(x.clone()))?;
            if a >= m.guises.len() {
                return Err(Error::IndexOutOfRange {
                    index: a,
                    size: m.guises.len(),
                });
            }
            Ok(m.eq[s][a])
        }
        Term::App(f, args) => {
            let interp = m.interpretation(f, args.len(), false)?;
            let dens = args.iter().map(|u| denote(m, s, g, u)).collect::<Result<Vec<_>>>()?;
            Ok(interp.ext[s]
                .iter()
                .filter(|t| t[..args.len()].iter().zip(&dens).all(|(&a, d)| d.contains(a)))
                .map(|t| t[args.len()])
                .collect())
        }
    }
}

/// `‖φ‖_g`, the set of possibilities forcing `f` under `g`.
pub fn fo_truth_set(m: &FOModel, g: &Assignment, f: &FOFormula) -> Result<ElementSet> {
    let mut g = g.clone();
    fo_value(m, &mut g, &f.expand_defined())
}

fn fo_value(m: &FOModel, g: &mut Assignment, f: &FOFormula) -> Result<ElementSet> {
    let p = &m.poset;
    // `{s : ∀s'⊑s, all denotations nonempty at s' ⇒ ok(s')}`.
    let atomic = |terms: &[Term], g: &Assignment, ok: &dyn Fn(usize, &[ElementSet]) -> bool| -> Result<ElementSet> {
        let mut good = ElementSet::EMPTY;
        for s in 0..p.len() {
            let dens = terms.iter().map(|t| denote(m, s, g, t)).collect::<Result<Vec<_>>>()?;
            if dens.iter().any(|d| d.is_empty()) || ok(s, &dens) {
                good.insert(s);
            }
        }
        Ok(p.interior(good))
    };
    Ok(match f {
        FOFormula::Eq(a, b) => atomic(&[a.clone(), b.clone()], g, &|_, d| d[0] == d[1])?,
        FOFormula::Pred(r, args) => {
            let interp = m.interpretation(r, args.len(), true)?;
            atomic(args, g, &|s, dens| {
                interp.ext[s]
                    .iter()
                    .any(|t| t.iter().zip(dens).all(|(&a, d)| d.contains(a)))
            })?
        }
        FOFormula::Not(a) => p.neg(fo_value(m, g, a)?),
        FOFormula::And(a, b) => fo_value(m, g, a)? & fo_value(m, g, b)?,
        FOFormula::Forall(x, a) => {
            let saved = g.get(x).copied();
            let mut out = p.all();
            for c in 0..m.guises.len() {
                g.insert(x.clone(), c);
                let v = fo_value(m, g, a)?;
                // Only possibilities whose domain contains `c` are constrained by it.
                let constrained: ElementSet = (0..p.len()).filter(|&s| m.domain_at(s).contains(c)).collect();
                out = out & (v | (p.all() - constrained));
            }
            match saved {
                Some(c) => g.insert(x.clone(), c),
                None => g.remove(x),
            };
            out
        }
        FOFormula::Box(i, a) => {
            let r = m.relations.get(i).ok_or_else(|| Error::UnknownIndex(i.clone()))?;
            r.box_set(fo_value(m, g, a)?)
        }
        other => {
            return Err(Error::Fragment(format!(
                "`{other}` should have been expanded"
            )))
        }
    })
}

/// `M, s ⊩_g φ`.
pub fn fo_eval(m: &FOModel, s: usize, g: &Assignment, f: &FOFormula) -> Result<bool> {
    if s >= m.poset.len() {
        return Err(Error::IndexOutOfRange {
            index: s,
            size: m.poset.len(),
        });
    }
    Ok(fo_truth_set(m, g, f)?.contains(s))
}

/// The restriction of `m` to `↓s`; relations are restricted to `↓s` as well.
pub fn generated_submodel(m: &FOModel, s: usize) -> Result<(FOModel, Vec<usize>)> {
    let (poset, map) = m.poset.subposet(m.poset.down(s))?;
    let restrict = |i: &Interpretation| Interpretation {
        arity: i.arity,
        ext: map.iter().map(|&x| i.ext[x].clone()).collect(),
    };
    let keep = m.poset.down(s);
    let relations = m
        .relations
        .iter()
        .map(|(k, r)| {
            let r = r.restrict(keep);
            let succ = map
                .iter()
                .map(|&x| {
                    r.image(x)
                        .iter()
                        .filter_map(|y| map.iter().position(|&z| z == y))
                        .collect()
                })
                .collect();
            (k.clone(), Relation::from_successors(succ))
        })
        .collect();
    let sub = FOModel {
        poset,
        guises: m.guises.clone(),
        eq: map.iter().map(|&x| m.eq[x].clone()).collect(),
        predicates: m.predicates.iter().map(|(k, v)| (k.clone(), restrict(v))).collect(),
        functions: m.functions.iter().map(|(k, v)| (k.clone(), restrict(v))).collect(),
        domain_fn: m.domain_fn.as_ref().map(|d| map.iter().map(|&x| d[x]).collect()),
        relations,
    };
    Ok((sub, map))
}

/// The FREGE model: `s₀, s₁ ⊑ s`, guises `m` and `e`, identified at `s₀`
/// only, with constants `c_m` and `c_e` naming them.
pub fn frege() -> FOModel {
    let poset = Poset::from_named(&["s", "s0", "s1"], &[("s0", "s"), ("s1", "s")]).expect("valid poset");
    let mut m = FOModel::new(poset, vec!["m", "e"]).expect("valid model");
    m.set_eq(1, &[(0, 1)]);
    m.set_constant("c_m", 0).expect("fresh constant");
    m.set_constant("c_e", 1).expect("fresh constant");
    m
}

/// Validity of `(Fact)` and `(World)` on a first-order relational world frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactWorld {
    pub fact_valid: bool,
    pub world_valid: bool,
}

impl FactWorld {
    /// `(Fact)` valid implies `(World)` valid.
    pub fn holds(&self) -> bool {
        !self.fact_valid || self.world_valid
    }
}

/// `Q(c) → ∃x □(E(x) ↔ Q(c))`.
pub fn fact_formula() -> FOFormula {
    let qc = FOFormula::pred("Q", vec![Term::constant("c")]);
    FOFormula::implies(
        qc.clone(),
        FOFormula::exists("x", FOFormula::boxed(DEFAULT_INDEX, FOFormula::iff(exists_formula("x", "x'"), qc))),
    )
}

/// `∃x ∀y □(E(x) → E(y))`.
pub fn world_formula() -> FOFormula {
    FOFormula::exists(
        "x",
        FOFormula::forall(
            "y",
            FOFormula::boxed(
                DEFAULT_INDEX,
                FOFormula::implies(exists_formula("x", "x'"), exists_formula("y", "y'")),
            ),
        ),
    )
}

/// `E(x) = ∃x' x' = x`.
pub fn exists_formula(x: &str, fresh: &str) -> FOFormula {
    FOFormula::exists(fresh, FOFormula::eq(Term::var(fresh), Term::var(x)))
}

/// Decides frame validity of `(Fact)` over every admissible interpretation of
/// `Q` and `c`, and of `(World)`, on a frame whose refinement order is the identity.
pub fn fact_world_check(frame: &FOModel) -> Result<FactWorld> {
    let p = &frame.poset;
    if (0..p.len()).any(|s| p.down(s).len() != 1) {
        return Err(Error::Precondition("refinement must be the identity".into()));
    }
    if frame.relations.keys().any(|k| k != DEFAULT_INDEX) || !frame.relations.contains_key(DEFAULT_INDEX) {
        return Err(Error::Precondition(format!("the frame needs exactly the relation `{DEFAULT_INDEX}`")));
    }
    if let Err(v) = validate_fomodel(frame)? {
        return Err(Error::InvalidFrame(v.to_string()));
    }
    // Over worlds, V(Q, s) is a union of ≍ₛ-classes and V(c, s) is one ≍ₛ-class.
    let classes: Vec<Vec<ElementSet>> = (0..p.len())
        .map(|s| {
            let mut cs: Vec<ElementSet> = frame.eq[s].clone();
            cs.sort();
            cs.dedup();
            cs
        })
        .collect();
    let mut total: u128 = 1;
    for cs in &classes {
        total = total
            .saturating_mul(1u128 << cs.len().min(100))
            .saturating_mul(cs.len() as u128);
    }
    if total > INTERPRETATION_CAP {
        return Err(Error::cap("interpretations of Q and c", INTERPRETATION_CAP, total));
    }
    let mut m = frame.clone();
    m.predicates.remove("Q");
    m.functions.remove("c");
    m.add_predicate("Q", 1)?;
    m.add_function("c", 0)?;
    let fact = fact_formula();
    let g = Assignment::new();
    let mut fact_valid = true;
    let choices: Vec<u128> = classes.iter().map(|cs| (1u128 << cs.len()) * cs.len() as u128).collect();
    let mut counter = vec![0u128; p.len()];
    'search: loop {
        for s in 0..p.len() {
            let k = counter[s];
            let nc = classes[s].len() as u128;
            let (qmask, ci) = (k / nc, (k % nc) as usize);
            let q: ElementSet = classes[s]
                .iter()
                .enumerate()
                .filter(|(j, _)| qmask >> j & 1 == 1)
                .fold(ElementSet::EMPTY, |acc, (_, &c)| acc | c);
            let qi = m.predicates.get_mut("Q").expect("added above");
            qi.ext[s] = q.iter().map(|a| vec![a]).collect();
            let ci_ext = m.functions.get_mut("c").expect("added above");
            ci_ext.ext[s] = classes[s][ci].iter().map(|a| vec![a]).collect();
        }
        if fo_truth_set(&m, &g, &fact)? != p.all() {
            fact_valid = false;
            break 'search;
        }
        let mut k = p.len();
        loop {
            if k == 0 {
                break 'search;
            }
            k -= 1;
            counter[k] += 1;
            if counter[k] < choices[k] {
                break;
            }
            counter[k] = 0;
        }
    }
    let world_valid = fo_truth_set(&m, &g, &world_formula())? == p.all();
    Ok(FactWorld {
        fact_valid,
        world_valid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(&[("P", 1), ("Q", 1)], &[("c_m", 0), ("c_e", 0), ("f", 1)]).unwrap()
    }

    #[test]
    fn frege_goldens() {
        let m = frege();
        assert_eq!(validate_fomodel(&m).unwrap(), Ok(()));
        let g = Assignment::new();
        let sig = m.signature();
        let same = parse_fo("c_m = c_e", &sig).unwrap();
        let differ = parse_fo("~(c_m = c_e)", &sig).unwrap();
        assert!(!fo_eval(&m, 0, &g, &same).unwrap());
        assert!(!fo_eval(&m, 0, &g, &differ).unwrap());
        assert!(fo_eval(&m, 1, &g, &same).unwrap());
        assert!(fo_eval(&m, 2, &g, &differ).unwrap());
        let both = ElementSet::full(2);
        assert_eq!(denote(&m, 1, &g, &Term::constant("c_m")).unwrap(), both);
        assert_eq!(denote(&m, 0, &g, &Term::constant("c_m")).unwrap(), ElementSet::singleton(0));
        let refl = parse_fo("A x (x = x)", &sig).unwrap();
        assert_eq!(fo_truth_set(&m, &g, &refl).unwrap(), m.poset.all());
    }

    #[test]
    fn quasi_functionality_violation() {
        let mut m = FOModel::new(Poset::discrete(1).unwrap(), vec!["a", "b"]).unwrap();
        m.add_function("f", 0).unwrap();
        m.insert("f", 0, vec![0]).unwrap();
        m.insert("f", 0, vec![1]).unwrap();
        let v = validate_fomodel(&m).unwrap().unwrap_err();
        assert_eq!(v.condition, "quasi-functionality for f");
    }

    #[test]
    fn refinability_and_definedness_violations() {
        let p = Poset::chain(2).unwrap();
        let mut m = FOModel::new(p.clone(), vec!["a", "b"]).unwrap();
        m.set_eq(0, &[(0, 1)]);
        m.set_eq(1, &[]);
        assert_eq!(validate_fomodel(&m).unwrap().unwrap_err().condition, "≍ refinability");
        let mut m = FOModel::new(p, vec!["a"]).unwrap();
        m.add_function("c", 0).unwrap();
        assert_eq!(
            validate_fomodel(&m).unwrap().unwrap_err().condition,
            "eventual definedness for c"
        );
    }

    #[test]
    fn parsing_and_printing() {
        let s = sig();
        let f = parse_fo("A x (P(x) -> E y f(y) = x) & []i Q(c_m)", &s).unwrap();
        assert_eq!(f.to_string(), "A x (P(x) -> E y f(y) = x) & []i Q(c_m)");
        assert_eq!(parse_fo(&f.to_string(), &s).unwrap(), f);
        assert_eq!(f.free_vars(), BTreeSet::new());
        assert!(matches!(parse_fo("P(x, y)", &s), Err(Error::Arity { .. })));
        assert!(matches!(parse_fo("g(x) = x", &s), Err(Error::UnknownSymbol(_))));
        assert!(parse_fo("x =", &s).is_err());
        let boxed = parse_fo("[]P(x)", &s).unwrap();
        assert_eq!(boxed, FOFormula::boxed(DEFAULT_INDEX, FOFormula::pred("P", vec![Term::var("x")])));
    }

    #[test]
    fn substitution() {
        let s = sig();
        let f = parse_fo("A y (P(x) & x = y)", &s).unwrap();
        assert!(f.substitutable("x", &Term::constant("c_m")));
        assert!(!f.substitutable("x", &Term::var("y")));
        assert_eq!(
            f.substitute("x", &Term::app("f", vec![Term::var("z")])).to_string(),
            "A y (P(f(z)) & f(z) = y)"
        );
        let bound = parse_fo("A x P(x)", &s).unwrap();
        assert_eq!(bound.substitute("x", &Term::var("z")), bound);
    }

    #[test]
    fn generated_submodels() {
        let m = frege();
        let (sub, map) = generated_submodel(&m, 1).unwrap();
        assert_eq!(map, vec![1]);
        assert_eq!(sub.poset.len(), 1);
        assert_eq!(sub.eq[0][0], ElementSet::full(2));
        let (top, map) = generated_submodel(&m, 0).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(top, m);
    }

    #[test]
    fn fact_world_on_small_world_frames() {
        let mut two = FOModel::new(Poset::discrete(2).unwrap(), vec!["a", "b"]).unwrap();
        two.relations.insert(DEFAULT_INDEX.into(), Relation::universal(2));
        two.domain_fn = Some(vec![ElementSet::full(2); 2]);
        let fw = fact_world_check(&two).unwrap();
        assert!(fw.holds());
        assert!(!fw.fact_valid);
        let mut chain = two.clone();
        chain.poset = Poset::chain(2).unwrap();
        assert!(matches!(fact_world_check(&chain), Err(Error::Precondition(_))));
    }
}
