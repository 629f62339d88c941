//! Neighborhood and functional possibility frames.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{ModalFrame, Relation, RelationalFrame};
use crate::error::{Error, Result, Verdict, Violation};
use crate::frames::PossibilityFrame;
use crate::poset::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NCondition {
    /// `x' ⊑ x` implies `N(x') ⊇ N(x)`.
    Persistence,
    /// `U ∉ N(x)` implies `∃x'⊑x ∀x''⊑x' U ∉ N(x'')`.
    Refinability,
}

impl NCondition {
    pub const ALL: [NCondition; 2] = [NCondition::Persistence, NCondition::Refinability];

    pub fn name(self) -> &'static str {
        match self {
            NCondition::Persistence => "N-persistence",
            NCondition::Refinability => "N-refinability",
        }
    }
}

impl fmt::Display for NCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "persistence" | "n-persistence" => Ok(NCondition::Persistence),
            "refinability" | "n-refinability" => Ok(NCondition::Refinability),
            _ => Err(Error::UnknownCondition(s.to_string())),
        }
    }
}

/// `(S, ⊑, P, {Nᵢ})` with `□ᵢU = {x : U ∈ Nᵢ(x)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodFrame {
    pub base: PossibilityFrame,
    /// `neighborhoods[i][x]` is `Nᵢ(x)`, sorted and deduplicated.
    pub neighborhoods: BTreeMap<String, Vec<Vec<ElementSet>>>,
}

impl NeighborhoodFrame {
    /// Checks shapes and that every neighborhood is admissible.
    pub fn new(base: PossibilityFrame, neighborhoods: BTreeMap<String, Vec<Vec<ElementSet>>>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (i, mut rows) in neighborhoods {
            if rows.len() != base.len() {
                return Err(Error::InvalidFrame(format!(
                    "neighborhood function `{i}` has {} rows for {} possibilities",
                    rows.len(),
                    base.len()
                )));
            }
            for (x, row) in rows.iter_mut().enumerate() {
                row.sort();
                row.dedup();
                if let Some(&u) = row.iter().find(|&&u| !base.is_admissible(u)) {
                    return Err(Error::InvalidFrame(format!(
                        "neighborhood {} of `{}` under `{i}` is not admissible",
                        base.poset.show(u),
                        base.poset.name(x)
                    )));
                }
            }
            out.insert(i, rows);
        }
        Ok(NeighborhoodFrame {
            base,
            neighborhoods: out,
        })
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    fn rows(&self, index: &str) -> Result<&[Vec<ElementSet>]> {
        self.neighborhoods
            .get(index)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownIndex(index.to_string()))
    }

    /// `□_{Nᵢ}Z`; `Z` must be admissible.
    pub fn box_(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        if !self.base.is_admissible(z) {
            return Err(Error::Precondition(format!(
                "{} is not admissible",
                self.base.poset.show(z)
            )));
        }
        Ok(self
            .rows(index)?
            .iter()
            .enumerate()
            .filter(|(_, row)| row.binary_search(&z).is_ok())
            .map(|(x, _)| x)
            .collect())
    }

    pub fn check_n_condition(&self, index: &str, cond: NCondition) -> Result<Verdict> {
        let rows = self.rows(index)?;
        let p = &self.base.poset;
        let has = |x: usize, u: ElementSet| rows[x].binary_search(&u).is_ok();
        for x in 0..self.len() {
            match cond {
                NCondition::Persistence => {
                    for x1 in p.down(x) {
                        if let Some(&u) = rows[x].iter().find(|&&u| !has(x1, u)) {
                            return Ok(Err(Violation::new(
                                cond.name(),
                                format!(
                                    "{} ⊑ {} and {} ∈ N({}) but not N({})",
                                    p.name(x1),
                                    p.name(x),
                                    p.show(u),
                                    p.name(x),
                                    p.name(x1)
                                ),
                            )));
                        }
                    }
                }
                NCondition::Refinability => {
                    for &u in &self.base.admissible {
                        if has(x, u) {
                            continue;
                        }
                        let ok = p
                            .down(x)
                            .iter()
                            .any(|x1| p.down(x1).iter().all(|x2| !has(x2, u)));
                        if !ok {
                            return Ok(Err(Violation::new(
                                cond.name(),
                                format!(
                                    "{} ∉ N({}) but every refinement of {} has a refinement with {} in its neighborhood",
                                    p.show(u),
                                    p.name(x),
                                    p.name(x),
                                    p.show(u)
                                ),
                            )));
                        }
                    }
                }
            }
        }
        Ok(Ok(()))
    }

    /// Both N-conditions for every index.
    pub fn is_basic(&self) -> Result<Verdict> {
        for i in self.neighborhoods.keys() {
            for c in NCondition::ALL {
                if let Err(v) = self.check_n_condition(i, c)? {
                    return Ok(Err(Violation::new(format!("{} for {i}", v.condition), v.witness)));
                }
            }
        }
        Ok(Ok(()))
    }

    /// The base frame is valid and `P` is closed under every `□_{Nᵢ}`.
    pub fn validate(&self) -> Verdict {
        self.base.validate()?;
        for i in self.neighborhoods.keys() {
            for &z in &self.base.admissible {
                let b = self.box_(i, z).expect("admissible argument");
                if !self.base.is_admissible(b) {
                    let p = &self.base.poset;
                    return Err(Violation::new(
                        format!("closed under box {i}"),
                        format!("box {i} of {} is {}", p.show(z), p.show(b)),
                    ));
                }
            }
        }
        Ok(())
    }
}

impl ModalFrame for NeighborhoodFrame {
    fn base(&self) -> &PossibilityFrame {
        &self.base
    }

    fn box_set(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        self.box_(index, z)
    }

    fn indices(&self) -> Vec<String> {
        self.neighborhoods.keys().cloned().collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FCondition {
    /// `x' ⊑ x` implies `f(x') ⊑ f(x)`.
    Persistence,
    /// `y ⊑ f(x)` implies `∃x'⊑x ∀x''⊑x' f(x'') ≬ y`.
    Refinability,
}

impl FCondition {
    pub const ALL: [FCondition; 2] = [FCondition::Persistence, FCondition::Refinability];

    pub fn name(self) -> &'static str {
        match self {
            FCondition::Persistence => "f-persistence",
            FCondition::Refinability => "f-refinability",
        }
    }
}

impl fmt::Display for FCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "persistence" | "f-persistence" => Ok(FCondition::Persistence),
            "refinability" | "f-refinability" => Ok(FCondition::Refinability),
            _ => Err(Error::UnknownCondition(s.to_string())),
        }
    }
}

/// `(S, ⊑, P, {fᵢ})` with `x ⊩ □ᵢφ` iff `fᵢ(x) ⊩ φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalFrame {
    pub base: PossibilityFrame,
    pub functions: BTreeMap<String, Vec<usize>>,
}

impl FunctionalFrame {
    pub fn new(base: PossibilityFrame, functions: BTreeMap<String, Vec<usize>>) -> Result<Self> {
        let n = base.len();
        for (i, f) in &functions {
            if f.len() != n {
                return Err(Error::InvalidFrame(format!(
                    "function `{i}` has {} values for {n} possibilities",
                    f.len()
                )));
            }
            if let Some(&y) = f.iter().find(|&&y| y >= n) {
                return Err(Error::IndexOutOfRange { index: y, size: n });
            }
        }
        Ok(FunctionalFrame { base, functions })
    }

    fn function(&self, index: &str) -> Result<&[usize]> {
        self.functions
            .get(index)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownIndex(index.to_string()))
    }

    /// `{x : fᵢ(x) ∈ Z}`.
    pub fn box_(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        Ok(self
            .function(index)?
            .iter()
            .enumerate()
            .filter(|(_, &y)| z.contains(y))
            .map(|(x, _)| x)
            .collect())
    }

    /// The relational frame with `Rᵢ(x) = ↓fᵢ(x)`.
    pub fn to_relational(&self) -> RelationalFrame {
        let p = &self.base.poset;
        let relations = self
            .functions
            .iter()
            .map(|(i, f)| (i.clone(), Relation::from_successors(f.iter().map(|&y| p.down(y)).collect())))
            .collect();
        RelationalFrame {
            base: self.base.clone(),
            relations,
        }
    }

    pub fn check_f_condition(&self, index: &str, cond: FCondition) -> Result<Verdict> {
        let f = self.function(index)?;
        let p = &self.base.poset;
        for x in 0..self.base.len() {
            match cond {
                FCondition::Persistence => {
                    if let Some(x1) = p.down(x).iter().find(|&x1| !p.leq(f[x1], f[x])) {
                        return Ok(Err(Violation::new(
                            cond.name(),
                            format!(
                                "{} ⊑ {} but f({}) = {} does not refine f({}) = {}",
                                p.name(x1),
                                p.name(x),
                                p.name(x1),
                                p.name(f[x1]),
                                p.name(x),
                                p.name(f[x])
                            ),
                        )));
                    }
                }
                FCondition::Refinability => {
                    for y in p.down(f[x]) {
                        let ok = p
                            .down(x)
                            .iter()
                            .any(|x1| p.down(x1).iter().all(|x2| p.compatible(f[x2], y)));
                        if !ok {
                            return Ok(Err(Violation::new(
                                cond.name(),
                                format!(
                                    "{} ⊑ f({}) but every refinement of {} has a refinement whose value is incompatible with {}",
                                    p.name(y),
                                    p.name(x),
                                    p.name(x),
                                    p.name(y)
                                ),
                            )));
                        }
                    }
                }
            }
        }
        Ok(Ok(()))
    }
}

impl ModalFrame for FunctionalFrame {
    fn base(&self) -> &PossibilityFrame {
        &self.base
    }

    fn box_set(&self, index: &str, z: ElementSet) -> Result<ElementSet> {
        self.box_(index, z)
    }

    fn indices(&self) -> Vec<String> {
        self.functions.keys().cloned().collect()
    }
}
