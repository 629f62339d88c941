//! Modal possibility frames and forcing.
//!
//! A frame interprets each modal index by a `□` operation on sets of
//! possibilities: through an accessibility relation ([`RelationalFrame`]), a
//! neighborhood function ([`NeighborhoodFrame`]) or a function ([`FunctionalFrame`]).
//! Truth sets are computed bottom-up; `∨ → ↔ ◇ ∃` are evaluated through their
//! definitions in terms of `¬ ∧ □ ∀`, while `⩔` is a plain union.

mod algebraic;
mod conditions;
mod correspondence;
mod kripke;
mod neighborhood;

use std::collections::BTreeMap;

pub use algebraic::{bao_filter_frame, vbao_box_preserved, vbao_full_frame, BaoFrame, Boxes};
pub use conditions::{ro_closed_under_box, RelCondition};
pub use correspondence::{lemmon_scott_check, lemmon_scott_formula, LemmonScott};
pub use kripke::{bimodal_agreement, kripke_extract, KripkeModel};
pub use neighborhood::{FCondition, FunctionalFrame, NCondition, NeighborhoodFrame};

use crate::error::{Error, Result, Verdict, Violation};
use crate::frames::PossibilityFrame;
use crate::poset::{ElementSet, Poset};
use crate::syntax::Formula;

/// Assignment of admissible sets to propositional variables.
pub type Valuation = BTreeMap<String, ElementSet>;

/// A binary relation on `0..n`, stored as successor sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    succ: Vec<ElementSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation {
            succ: vec![ElementSet::EMPTY; n],
        }
    }

    pub fn identity(n: usize) -> Relation {
        Relation {
            succ: (0..n).map(ElementSet::singleton).collect(),
        }
    }

    pub fn universal(n: usize) -> Relation {
        Relation {
            succ: vec![ElementSet::full(n); n],
        }
    }

    pub fn from_successors(succ: Vec<ElementSet>) -> Relation {
        Relation { succ }
    }

    pub fn from_fn(n: usize, rel: impl Fn(usize, usize) -> bool) -> Relation {
        Relation {
            succ: (0..n)
                .map(|x| (0..n).filter(|&y| rel(x, y)).collect())
                .collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Relation> {
        let mut r = Relation::empty(n);
        for &(x, y) in pairs {
            for i in [x, y] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, size: n });
                }
            }
            r.insert(x, y);
        }
        Ok(r)
    }

    /// `x sq y` iff `y ⊑ x`: the refinement order read as an accessibility relation.
    pub fn refinement(poset: &Poset) -> Relation {
        Relation {
            succ: (0..poset.len()).map(|x| poset.down(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.succ[x].contains(y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.succ[x].insert(y);
    }

    /// `R(x)`.
    pub fn image(&self, x: usize) -> ElementSet {
        self.succ[x]
    }

    /// `R[U] = ⋃_{x∈U} R(x)`.
    pub fn image_of(&self, u: ElementSet) -> ElementSet {
        u.iter().fold(ElementSet::EMPTY, |acc, x| acc | self.succ[x])
    }

    pub fn successors(&self) -> &[ElementSet] {
        &self.succ
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(x, s)| s.iter().map(move |y| (x, y)))
            .collect()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.succ
            .iter()
            .zip(&other.succ)
            .all(|(a, b)| a.is_subset(*b))
    }

    /// `x (R;S) z` iff `x R y S z` for some `y`.
    pub fn compose(&self, other: &Relation) -> Relation {
        Relation {
            succ: self.succ.iter().map(|&s| other.image_of(s)).collect(),
        }
    }

    /// `R_{i₁} ; … ; R_{iₙ}`, the identity for an empty sequence.
    pub fn compose_all(n: usize, relations: &[&Relation]) -> Relation {
        relations
            .iter()
            .fold(Relation::identity(n), |acc, r| acc.compose(r))
    }

    /// `{x : R(x) ⊆ Z}`.
    pub fn box_set(&self, z: ElementSet) -> ElementSet {
        self.succ
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_subset(z))
            .map(|(x, _)| x)
            .collect()
    }

    /// Restriction to pairs inside `dom`.
    pub fn restrict(&self, dom: ElementSet) -> Relation {
        Relation {
            succ: self
                .succ
                .iter()
                .enumerate()
                .map(|(x, &s)| if dom.contains(x) { s & dom } else { ElementSet::EMPTY })
                .collect(),
        }
    }
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Anything that interprets modal indices as operations on sets of possibilities.
pub trait ModalFrame {
    fn base(&self) -> &PossibilityFrame;

    /// `□ᵢZ`.
    fn box_set(&self, index: &str, z: ElementSet) -> Result<ElementSet>;

    /// Modal indices the frame interprets, sorted.
    fn indices(&self) -> Vec<String>;
}

impl<F: ModalFrame + ?Sized> ModalFrame for &F {
    fn base(&self) -> &PossibilityFrame {
        (**self).base()
    }

    fn box_set(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        (**self).box_set(index, z)
    }

    fn indices(&self) -> Vec<String> {
        (**self).indices()
    }
}

impl ModalFrame for PossibilityFrame {
    fn base(&self) -> &PossibilityFrame {
        self
    }

    fn box_set(&self, index: &str, _z: ElementSet) -> Result<ElementSet> {
        Err(Error::UnknownIndex(index.to_string()))
    }

    fn indices(&self) -> Vec<String> {
        Vec::new()
    }
}

/// `(S, ⊑, P, {Rᵢ})` with `□ᵢZ = {x : Rᵢ(x) ⊆ Z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalFrame {
    pub base: PossibilityFrame,
    pub relations: BTreeMap<String, Relation>,
}

impl RelationalFrame {
    /// Checks relation sizes only; see [`Self::validate`].
    pub fn new(base: PossibilityFrame, relations: BTreeMap<String, Relation>) -> Result<Self> {
        for (i, r) in &relations {
            if r.len() != base.len() {
                return Err(Error::InvalidFrame(format!(
                    "relation `{i}` has {} rows for {} possibilities",
                    r.len(),
                    base.len()
                )));
            }
        }
        Ok(RelationalFrame { base, relations })
    }

    /// All regular open sets admissible.
    pub fn full(poset: Poset, relations: BTreeMap<String, Relation>) -> Result<Self> {
        RelationalFrame::new(PossibilityFrame::full(poset)?, relations)
    }

    /// Full frame with a single relation on index `0`.
    pub fn full_unimodal(poset: Poset, r: Relation) -> Result<Self> {
        RelationalFrame::full(poset, BTreeMap::from([(crate::syntax::DEFAULT_INDEX.to_string(), r)]))
    }

    pub fn poset(&self) -> &Poset {
        &self.base.poset
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn relation(&self, index: &str) -> Result<&Relation> {
        self.relations
            .get(index)
            .ok_or_else(|| Error::UnknownIndex(index.to_string()))
    }

    pub fn box_(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        Ok(self.relation(index)?.box_set(z))
    }

    /// `◇ᵢZ = ¬□ᵢ¬Z`.
    pub fn diamond(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        let p = self.poset();
        Ok(p.neg(self.box_(index, p.neg(z))?))
    }

    /// `{x : ∀x'⊑x ∃y'∈Rᵢ(x') ∃y''⊑y' y''∈Z}`, the unfolded form of `¬□ᵢ¬Z`.
    pub fn diamond_unfolded(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        let p = self.poset();
        let r = self.relation(index)?;
        let hit = p.closure(z);
        Ok((0..self.len())
            .filter(|&x| p.down(x).iter().all(|x1| r.image(x1).intersects(hit)))
            .collect())
    }

    /// `{x : ∀x'⊑x ∃z'∈Rᵢ(x') z'∈Z}`, which equals `◇ᵢZ` under R-down.
    pub fn diamond_r_down(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        let p = self.poset();
        let r = self.relation(index)?;
        Ok((0..self.len())
            .filter(|&x| p.down(x).iter().all(|x1| r.image(x1).intersects(z)))
            .collect())
    }

    /// The base frame is valid and `P` is closed under every `□ᵢ`.
    pub fn validate(&self) -> Verdict {
        self.base.validate()?;
        for (i, r) in &self.relations {
            for &z in &self.base.admissible {
                let b = r.box_set(z);
                if !self.base.is_admissible(b) {
                    let p = self.poset();
                    return Err(Violation::new(
                        format!("closed under box {i}"),
                        format!("box {i} of {} is {}", p.show(z), p.show(b)),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn is_full(&self) -> Result<bool> {
        self.base.is_full()
    }
}

impl ModalFrame for RelationalFrame {
    fn base(&self) -> &PossibilityFrame {
        &self.base
    }

    fn box_set(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        self.box_(index, z)
    }

    fn indices(&self) -> Vec<String> {
        self.relations.keys().cloned().collect()
    }
}

// ---------------------------------------------------------------------------
// Evaluation

struct Evaluator<'a> {
    frame: &'a dyn ModalFrame,
    valuation: &'a Valuation,
    bound: Vec<(String, ElementSet)>,
    full: Option<bool>,
}

impl Evaluator<'_> {
    fn lookup(&self, p: &str) -> Result<ElementSet> {
        if let Some(&(_, u)) = self.bound.iter().rev().find(|(q, _)| q == p) {
            return Ok(u);
        }
        self.valuation
            .get(p)
            .copied()
            .ok_or_else(|| Error::UnboundVariable(p.to_string()))
    }

    fn require_full(&mut self) -> Result<()> {
        let full = match self.full {
            Some(b) => b,
            None => {
                let b = self.frame.base().is_full()?;
                self.full = Some(b);
                b
            }
        };
        if full {
            Ok(())
        } else {
            Err(Error::NotFull)
        }
    }

    fn forall(&mut self, p: &str, body: &Formula) -> Result<ElementSet> {
        self.require_full()?;
        let base = self.frame.base();
        let mut acc = base.poset.all();
        for &z in &base.admissible {
            self.bound.push((p.to_string(), z));
            let v = self.value(body);
            self.bound.pop();
            acc = acc & v?;
        }
        Ok(acc)
    }

    fn value(&mut self, f: &Formula) -> Result<ElementSet> {
        let poset = &self.frame.base().poset;
        Ok(match f {
            Formula::Falsum => ElementSet::EMPTY,
            Formula::Var(p) => self.lookup(p)?,
            Formula::Not(a) => poset.neg(self.value(a)?),
            Formula::And(a, b) => self.value(a)? & self.value(b)?,
            Formula::Or(a, b) => {
                let (a, b) = (self.value(a)?, self.value(b)?);
                poset.neg(poset.neg(a) & poset.neg(b))
            }
            Formula::Implies(a, b) => {
                let (a, b) = (self.value(a)?, self.value(b)?);
                poset.neg(a & poset.neg(b))
            }
            Formula::Iff(a, b) => {
                let (a, b) = (self.value(a)?, self.value(b)?);
                poset.neg(a & poset.neg(b)) & poset.neg(b & poset.neg(a))
            }
            Formula::Box(i, a) => {
                let v = self.value(a)?;
                self.frame.box_set(i, v)?
            }
            Formula::Diamond(i, a) => {
                let v = self.value(a)?;
                poset.neg(self.frame.box_set(i, poset.neg(v))?)
            }
            Formula::ForallProp(p, a) => self.forall(p, a)?,
            Formula::ExistsProp(p, a) => {
                let neg_body = Formula::not((**a).clone());
                poset.neg(self.forall(p, &neg_body)?)
            }
            Formula::InqOr(a, b) => self.value(a)? | self.value(b)?,
        })
    }
}

/// `‖φ‖`: the set of possibilities forcing `f`.
pub fn truth_set(frame: &dyn ModalFrame, valuation: &Valuation, f: &Formula) -> Result<ElementSet> {
    Evaluator {
        frame,
        valuation,
        bound: Vec::new(),
        full: None,
    }
    .value(f)
}

/// `M, x ⊩ φ`.
pub fn eval(frame: &dyn ModalFrame, valuation: &Valuation, x: usize, f: &Formula) -> Result<bool> {
    let n = frame.base().len();
    if x >= n {
        return Err(Error::IndexOutOfRange { index: x, size: n });
    }
    Ok(truth_set(frame, valuation, f)?.contains(x))
}

/// A frame with a valuation into its admissible family.
#[derive(Clone, Debug)]
pub struct Model<F> {
    pub frame: F,
    pub valuation: Valuation,
}

impl<F: ModalFrame> Model<F> {
    /// Fails unless every valuation target is admissible.
    pub fn new(frame: F, valuation: Valuation) -> Result<Self> {
        for (p, &u) in &valuation {
            if !frame.base().is_admissible(u) {
                return Err(Error::InvalidModel(format!(
                    "value {} of `{p}` is not admissible",
                    frame.base().poset.show(u)
                )));
            }
        }
        Ok(Model { frame, valuation })
    }

    pub fn truth_set(&self, f: &Formula) -> Result<ElementSet> {
        truth_set(&self.frame, &self.valuation, f)
    }

    pub fn forces(&self, x: usize, f: &Formula) -> Result<bool> {
        eval(&self.frame, &self.valuation, x, f)
    }
}

// ---------------------------------------------------------------------------
// Validity search

/// Bounds on exhaustive valuation search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCaps {
    pub max_vars: usize,
    pub max_valuations: u128,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            max_vars: 4,
            max_valuations: 1 << 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Countermodel { valuation: Valuation, point: usize },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasiValidity {
    Valid,
    /// No designated point forces the formula under this valuation.
    Countermodel { valuation: Valuation },
}

impl QuasiValidity {
    pub fn is_valid(&self) -> bool {
        matches!(self, QuasiValidity::Valid)
    }
}

/// Calls `visit` on every valuation of `vars` into `family`, in lexicographic
/// order with the first variable most significant, until it returns `Some`.
fn search_valuations<T>(
    family: &[ElementSet],
    vars: &[String],
    caps: SearchCaps,
    mut visit: impl FnMut(&Valuation) -> Result<Option<T>>,
) -> Result<Option<T>> {
    if vars.len() > caps.max_vars {
        return Err(Error::cap(
            "propositional variables",
            caps.max_vars as u128,
            vars.len() as u128,
        ));
    }
    let total = (family.len() as u128)
        .checked_pow(vars.len() as u32)
        .unwrap_or(u128::MAX);
    if total > caps.max_valuations {
        return Err(Error::cap("valuations", caps.max_valuations, total));
    }
    if family.is_empty() && !vars.is_empty() {
        return Ok(None);
    }
    let mut digits = vec![0usize; vars.len()];
    let mut valuation: Valuation = vars.iter().map(|v| (v.clone(), family[0])).collect();
    loop {
        if let Some(t) = visit(&valuation)? {
            return Ok(Some(t));
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < family.len() {
                valuation.insert(vars[k].clone(), family[digits[k]]);
                break;
            }
            digits[k] = 0;
            valuation.insert(vars[k].clone(), family[0]);
        }
    }
}

/// Exhaustive validity check with default caps.
pub fn is_valid(frame: &dyn ModalFrame, f: &Formula) -> Result<Validity> {
    is_valid_capped(frame, f, SearchCaps::default())
}

/// The first countermodel in the order of valuations (see [`search_valuations`])
/// and then ascending points, or `Valid`.
pub fn is_valid_capped(frame: &dyn ModalFrame, f: &Formula, caps: SearchCaps) -> Result<Validity> {
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    let all = frame.base().poset.all();
    let found = search_valuations(&frame.base().admissible, &vars, caps, |val| {
        let t = truth_set(frame, val, f)?;
        Ok((all - t).first().map(|x| (val.clone(), x)))
    })?;
    Ok(match found {
        None => Validity::Valid,
        Some((valuation, point)) => Validity::Countermodel { valuation, point },
    })
}

/// A relational frame with a downward directed set `S₀` of designated points.
#[derive(Clone, Debug)]
pub struct QuasiNormalFrame {
    pub frame: RelationalFrame,
    pub designated: ElementSet,
}

impl QuasiNormalFrame {
    pub fn new(frame: RelationalFrame, designated: ElementSet) -> Result<Self> {
        let p = frame.poset();
        if !designated.is_subset(p.all()) {
            return Err(Error::InvalidFrame("designated set outside the carrier".into()));
        }
        for x in designated {
            for y in designated {
                if !(p.down(x) & p.down(y)).intersects(designated) {
                    return Err(Error::InvalidFrame(format!(
                        "designated set is not downward directed: no designated refinement of both `{}` and `{}`",
                        p.name(x),
                        p.name(y)
                    )));
                }
            }
        }
        Ok(QuasiNormalFrame { frame, designated })
    }
}

/// For every valuation, some designated point forces `f`.
pub fn quasi_valid(q: &QuasiNormalFrame, f: &Formula) -> Result<QuasiValidity> {
    quasi_valid_capped(q, f, SearchCaps::default())
}

pub fn quasi_valid_capped(q: &QuasiNormalFrame, f: &Formula, caps: SearchCaps) -> Result<QuasiValidity> {
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    let found = search_valuations(&q.frame.base.admissible, &vars, caps, |val| {
        let t = truth_set(&q.frame, val, f)?;
        Ok((!t.intersects(q.designated)).then(|| val.clone()))
    })?;
    Ok(match found {
        None => QuasiValidity::Valid,
        Some(valuation) => QuasiValidity::Countermodel { valuation },
    })
}
