//! The line-oriented structure file format read and written by the command line.
//!
//! ```text
//! kind poset|frame|relframe|nbframe|ba|lattice|fomodel
//! elements <name>...
//! le <a> <b>                      # a ⊑ b (or a ≤ b); closure computed
//! admissible full
//! prop <name> = {<el>,...}
//! rel <index> <a> <b>
//! nb <index> <el> {<propname>,...}
//! box <index> <a> <b>             # □a = b in a Boolean algebra
//! nucleus notnot|beth|identity|fm
//! fmle <a> <b>                    # secondary order for the fm nucleus
//! designated {<el>,...}
//! val <var> = <propname>|{<el>,...}
//! dom {<guise>,...}
//! eq <el> <g1> <g2>
//! pred <P>/<n>
//! holds <P> <el> <g>...
//! fun <f>/<n>
//! maps <f> <el> <g>... -> <g>
//! exists <el> {<guise>,...}
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::balg::FiniteBooleanAlgebra;
use crate::error::{Error, Result};
use crate::fomodel::FOModel;
use crate::frames::PossibilityFrame;
use crate::heyting::FiniteLattice;
use crate::modal::{Boxes, NeighborhoodFrame, Relation, RelationalFrame, Valuation};
use crate::poset::{ElementSet, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Poset,
    Frame,
    RelFrame,
    NbFrame,
    Ba,
    Lattice,
    FoModel,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Poset => "poset",
            Kind::Frame => "frame",
            Kind::RelFrame => "relframe",
            Kind::NbFrame => "nbframe",
            Kind::Ba => "ba",
            Kind::Lattice => "lattice",
            Kind::FoModel => "fomodel",
        }
    }

    /// Kinds whose elements are possibilities rather than algebra elements.
    pub fn is_frame_like(self) -> bool {
        !matches!(self, Kind::Ba | Kind::Lattice)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Ok(match s {
            "poset" => Kind::Poset,
            "frame" => Kind::Frame,
            "relframe" => Kind::RelFrame,
            "nbframe" => Kind::NbFrame,
            "ba" => Kind::Ba,
            "lattice" => Kind::Lattice,
            "fomodel" => Kind::FoModel,
            other => return Err(Error::UnknownSymbol(format!("kind `{other}`"))),
        })
    }
}

/// A parsed structure file with every name resolved to an index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFile {
    pub kind: Kind,
    pub elements: Vec<String>,
    pub le: Vec<(usize, usize)>,
    pub admissible_full: bool,
    /// Named propositions in declaration order.
    pub props: Vec<(String, ElementSet)>,
    pub relations: BTreeMap<String, Vec<(usize, usize)>>,
    pub neighborhoods: BTreeMap<String, Vec<(usize, Vec<ElementSet>)>>,
    pub boxes: BTreeMap<String, Vec<(usize, usize)>>,
    pub nuclei: Vec<String>,
    pub fm_le: Vec<(usize, usize)>,
    pub designated: Option<ElementSet>,
    pub valuation: Valuation,
    pub guises: Vec<String>,
    pub eq: Vec<(usize, usize, usize)>,
    pub predicates: Vec<(String, usize)>,
    pub holds: Vec<(String, usize, Vec<usize>)>,
    pub functions: Vec<(String, usize)>,
    pub maps: Vec<(String, usize, Vec<usize>, usize)>,
    pub exists: Vec<(usize, ElementSet)>,
}

impl StructureFile {
    fn empty(kind: Kind) -> Self {
        StructureFile {
            kind,
            elements: Vec::new(),
            le: Vec::new(),
            admissible_full: false,
            props: Vec::new(),
            relations: BTreeMap::new(),
            neighborhoods: BTreeMap::new(),
            boxes: BTreeMap::new(),
            nuclei: Vec::new(),
            fm_le: Vec::new(),
            designated: None,
            valuation: Valuation::new(),
            guises: Vec::new(),
            eq: Vec::new(),
            predicates: Vec::new(),
            holds: Vec::new(),
            functions: Vec::new(),
            maps: Vec::new(),
            exists: Vec::new(),
        }
    }

    pub fn poset(&self) -> Result<Poset> {
        Poset::new(self.elements.clone(), &self.le)
    }

    /// The admissible family: all regular opens under `admissible full` or
    /// without `prop` lines, otherwise the declared propositions.
    pub fn possibility_frame(&self) -> Result<PossibilityFrame> {
        let poset = self.poset()?;
        if self.admissible_full || self.props.is_empty() {
            PossibilityFrame::full(poset)
        } else {
            Ok(PossibilityFrame::new(poset, self.props.iter().map(|(_, u)| *u).collect()))
        }
    }

    pub fn relational_frame(&self) -> Result<RelationalFrame> {
        let base = self.possibility_frame()?;
        let n = base.len();
        let relations = self
            .relations
            .iter()
            .map(|(i, pairs)| Ok((i.clone(), Relation::from_pairs(n, pairs)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        RelationalFrame::new(base, relations)
    }

    pub fn neighborhood_frame(&self) -> Result<NeighborhoodFrame> {
        let base = self.possibility_frame()?;
        let n = base.len();
        let neighborhoods = self
            .neighborhoods
            .iter()
            .map(|(i, rows)| {
                let mut table = vec![Vec::new(); n];
                for (x, sets) in rows {
                    table[*x].extend(sets.iter().copied());
                }
                (i.clone(), table)
            })
            .collect();
        NeighborhoodFrame::new(base, neighborhoods)
    }

    /// The algebra on `elements` ordered by the closure of `le`.
    pub fn boolean_algebra(&self) -> Result<FiniteBooleanAlgebra> {
        let p = self.poset()?;
        FiniteBooleanAlgebra::from_order(self.elements.clone(), |a, b| p.leq(a, b))
    }

    pub fn lattice(&self) -> Result<FiniteLattice> {
        let p = self.poset()?;
        FiniteLattice::from_order(self.elements.clone(), |a, b| p.leq(a, b))
    }

    /// Box tables; every element needs exactly one `box` line per index.
    pub fn box_tables(&self) -> Result<Boxes> {
        let n = self.elements.len();
        self.boxes
            .iter()
            .map(|(i, pairs)| {
                let mut table = vec![usize::MAX; n];
                for &(a, b) in pairs {
                    if table[a] != usize::MAX && table[a] != b {
                        return Err(Error::InvalidModel(format!(
                            "box {i} of `{}` given twice",
                            self.elements[a]
                        )));
                    }
                    table[a] = b;
                }
                if let Some(a) = table.iter().position(|&b| b == usize::MAX) {
                    return Err(Error::InvalidModel(format!(
                        "box {i} of `{}` is missing",
                        self.elements[a]
                    )));
                }
                Ok((i.clone(), table))
            })
            .collect()
    }

    /// The secondary order for the `fm` nucleus.
    pub fn fm_order(&self) -> Result<Poset> {
        Poset::new(self.elements.clone(), &self.fm_le)
    }

    pub fn fomodel(&self) -> Result<FOModel> {
        let poset = self.poset()?;
        let mut m = FOModel::new(poset, self.guises.clone())?;
        let n = m.poset.len();
        let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &(s, a, b) in &self.eq {
            pairs[s].push((a, b));
        }
        for (s, ps) in pairs.iter().enumerate() {
            m.set_eq(s, ps);
        }
        for (name, arity) in &self.predicates {
            m.add_predicate(name, *arity)?;
        }
        for (name, arity) in &self.functions {
            m.add_function(name, *arity)?;
        }
        for (name, s, tuple) in &self.holds {
            m.insert(name, *s, tuple.clone())?;
        }
        for (name, s, args, out) in &self.maps {
            let mut t = args.clone();
            t.push(*out);
            m.insert(name, *s, t)?;
        }
        if !self.exists.is_empty() {
            let mut d = vec![ElementSet::EMPTY; n];
            for &(s, u) in &self.exists {
                d[s] = d[s] | u;
            }
            m.domain_fn = Some(d);
        }
        for (i, ps) in &self.relations {
            m.relations.insert(i.clone(), Relation::from_pairs(n, ps)?);
        }
        Ok(m)
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn prop(&self, name: &str) -> Option<ElementSet> {
        self.props.iter().find(|(p, _)| p == name).map(|&(_, u)| u)
    }
}

struct LineParser {
    file: StructureFile,
    line: usize,
}

/// The text from the first `{` on, or empty.
fn braced(line: &str) -> &str {
    line.find('{').map_or("", |k| &line[k..])
}

impl LineParser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Format {
            line: self.line,
            message: message.into(),
        })
    }

    fn element(&self, name: &str) -> Result<usize> {
        match self.file.elements.iter().position(|e| e == name) {
            Some(k) => Ok(k),
            None => self.err(format!("unknown element `{name}`")),
        }
    }

    fn guise(&self, name: &str) -> Result<usize> {
        match self.file.guises.iter().position(|e| e == name) {
            Some(k) => Ok(k),
            None => self.err(format!("unknown guise `{name}`")),
        }
    }

    fn names<'b>(&self, text: &'b str) -> Result<Vec<&'b str>> {
        let text = text.trim();
        let Some(inner) = text.strip_prefix('{').and_then(|t| t.strip_suffix('}')) else {
            return self.err(format!("expected a set `{{...}}`, found `{text}`"));
        };
        Ok(inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect())
    }

    fn element_set(&self, text: &str) -> Result<ElementSet> {
        self.names(text)?.into_iter().map(|e| self.element(e)).collect()
    }

    fn guise_set(&self, text: &str) -> Result<ElementSet> {
        self.names(text)?.into_iter().map(|e| self.guise(e)).collect()
    }

    fn symbol_decl(&self, text: &str) -> Result<(String, usize)> {
        match text.split_once('/') {
            Some((name, n)) if !name.is_empty() => match n.parse() {
                Ok(n) => Ok((name.to_string(), n)),
                Err(_) => self.err(format!("bad arity in `{text}`")),
            },
            _ => self.err(format!("expected `<name>/<arity>`, found `{text}`")),
        }
    }

    fn handle(&mut self, words: &[&str], rest: &str) -> Result<()> {
        match words {
            ["kind", ..] => self.err("`kind` must be the first line"),
            ["elements", names @ ..] => {
                if !self.file.elements.is_empty() {
                    return self.err("elements declared twice");
                }
                self.file.elements = names.iter().map(|s| s.to_string()).collect();
                Ok(())
            }
            ["le", a, b] => {
                let pair = (self.element(a)?, self.element(b)?);
                self.file.le.push(pair);
                Ok(())
            }
            ["admissible", "full"] => {
                self.file.admissible_full = true;
                Ok(())
            }
            ["prop", name, "=", ..] => {
                let set = self.element_set(rest.split_once('=').map_or("", |(_, s)| s))?;
                if self.file.prop(name).is_some() {
                    return self.err(format!("proposition `{name}` declared twice"));
                }
                self.file.props.push((name.to_string(), set));
                Ok(())
            }
            ["rel", i, a, b] => {
                let pair = (self.element(a)?, self.element(b)?);
                self.file.relations.entry(i.to_string()).or_default().push(pair);
                Ok(())
            }
            ["nb", i, x, ..] => {
                let x = self.element(x)?;
                let sets = self
                    .names(braced(rest))?
                    .into_iter()
                    .map(|p| match self.file.prop(p) {
                        Some(u) => Ok(u),
                        None => self.err(format!("unknown proposition `{p}`")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.file.neighborhoods.entry(i.to_string()).or_default().push((x, sets));
                Ok(())
            }
            ["box", i, a, b] => {
                let pair = (self.element(a)?, self.element(b)?);
                self.file.boxes.entry(i.to_string()).or_default().push(pair);
                Ok(())
            }
            ["nucleus", name] => {
                if !["notnot", "beth", "identity", "fm"].contains(name) {
                    return self.err(format!("unknown nucleus `{name}`"));
                }
                self.file.nuclei.push(name.to_string());
                Ok(())
            }
            ["fmle", a, b] => {
                let pair = (self.element(a)?, self.element(b)?);
                self.file.fm_le.push(pair);
                Ok(())
            }
            ["designated", ..] => {
                let set = self.element_set(braced(rest))?;
                self.file.designated = Some(set);
                Ok(())
            }
            ["val", var, "=", ..] => {
                let target = rest.split_once('=').map_or("", |(_, s)| s).trim();
                let set = if target.starts_with('{') {
                    self.element_set(target)?
                } else {
                    match self.file.prop(target) {
                        Some(u) => u,
                        None => return self.err(format!("unknown proposition `{target}`")),
                    }
                };
                self.file.valuation.insert(var.to_string(), set);
                Ok(())
            }
            ["dom", ..] => {
                self.file.guises = self.names(braced(rest))?.into_iter().map(String::from).collect();
                Ok(())
            }
            ["eq", s, a, b] => {
                let t = (self.element(s)?, self.guise(a)?, self.guise(b)?);
                self.file.eq.push(t);
                Ok(())
            }
            ["pred", decl] => {
                let d = self.symbol_decl(decl)?;
                self.file.predicates.push(d);
                Ok(())
            }
            ["fun", decl] => {
                let d = self.symbol_decl(decl)?;
                self.file.functions.push(d);
                Ok(())
            }
            ["holds", p, s, args @ ..] => {
                let s = self.element(s)?;
                let args = args.iter().map(|a| self.guise(a)).collect::<Result<Vec<_>>>()?;
                self.file.holds.push((p.to_string(), s, args));
                Ok(())
            }
            ["maps", f, s, rest @ ..] => {
                let s = self.element(s)?;
                let Some(arrow) = rest.iter().position(|&w| w == "->") else {
                    return self.err("expected `->` in a `maps` line");
                };
                if arrow + 2 != rest.len() {
                    return self.err("expected one output guise after `->`");
                }
                let args = rest[..arrow].iter().map(|a| self.guise(a)).collect::<Result<Vec<_>>>()?;
                let out = self.guise(rest[arrow + 1])?;
                self.file.maps.push((f.to_string(), s, args, out));
                Ok(())
            }
            ["exists", s, ..] => {
                let s_idx = self.element(s)?;
                let set = self.guise_set(braced(rest))?;
                self.file.exists.push((s_idx, set));
                Ok(())
            }
            _ => self.err(format!("unrecognized line `{}`", rest.trim())),
        }
    }
}

/// Parses a structure file.
pub fn parse_structure(src: &str) -> Result<StructureFile> {
    let mut parser: Option<LineParser> = None;
    for (k, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        match parser.as_mut() {
            None => match words.as_slice() {
                ["kind", kind] => {
                    let kind = kind.parse().map_err(|_| Error::Format {
                        line: k + 1,
                        message: format!("unknown kind `{kind}`"),
                    })?;
                    parser = Some(LineParser {
                        file: StructureFile::empty(kind),
                        line: k + 1,
                    });
                }
                _ => {
                    return Err(Error::Format {
                        line: k + 1,
                        message: "expected `kind <kind>` first".into(),
                    })
                }
            },
            Some(p) => {
                p.line = k + 1;
                p.handle(&words, line)?;
            }
        }
    }
    let Some(p) = parser else {
        return Err(Error::Format {
            line: 1,
            message: "empty file".into(),
        });
    };
    if p.file.elements.is_empty() {
        return Err(Error::Format {
            line: p.line,
            message: "no `elements` line".into(),
        });
    }
    Ok(p.file)
}

/// Covering pairs `(a, b)` with `a ⊏ b` and nothing strictly between.
fn covers(p: &Poset) -> Vec<(usize, usize)> {
    let n = p.len();
    let mut out = Vec::new();
    for b in 0..n {
        for a in p.down(b).without(b) {
            if !(0..n).any(|c| c != a && c != b && p.lt(a, c) && p.lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out.sort();
    out
}

fn write_order(out: &mut String, p: &Poset) {
    let _ = writeln!(out, "elements {}", p.names().join(" "));
    for (a, b) in covers(p) {
        let _ = writeln!(out, "le {} {}", p.name(a), p.name(b));
    }
}

pub fn dump_poset(p: &Poset) -> String {
    let mut out = String::from("kind poset\n");
    write_order(&mut out, p);
    out
}

/// A Boolean algebra with optional box tables.
pub fn dump_ba(b: &FiniteBooleanAlgebra, boxes: &Boxes) -> String {
    let mut out = String::from("kind ba\n");
    let names = b.names().to_vec();
    let order = Poset::from_relation(b.len(), |x, y| b.leq(x, y)).expect("an algebra order is a partial order");
    let _ = writeln!(out, "elements {}", names.join(" "));
    for (x, y) in covers(&order) {
        let _ = writeln!(out, "le {} {}", names[x], names[y]);
    }
    for (i, table) in boxes {
        for (a, &v) in table.iter().enumerate() {
            let _ = writeln!(out, "box {i} {} {}", names[a], names[v]);
        }
    }
    out
}

fn write_props(out: &mut String, frame: &PossibilityFrame, names: &[String]) {
    let p = &frame.poset;
    for (name, &u) in names.iter().zip(&frame.admissible) {
        let _ = writeln!(out, "prop {name} = {}", p.show(u));
    }
}

/// A possibility frame; `names` labels the admissible sets in order.
pub fn dump_frame(frame: &PossibilityFrame, names: &[String]) -> String {
    let mut out = String::from("kind frame\n");
    write_order(&mut out, &frame.poset);
    write_props(&mut out, frame, names);
    out
}

pub fn dump_relframe(frame: &RelationalFrame, names: &[String]) -> String {
    let mut out = String::from("kind relframe\n");
    let p = frame.poset();
    write_order(&mut out, p);
    write_props(&mut out, &frame.base, names);
    for (i, r) in &frame.relations {
        for (x, y) in r.pairs() {
            let _ = writeln!(out, "rel {i} {} {}", p.name(x), p.name(y));
        }
    }
    out
}
