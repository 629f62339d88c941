//! Interaction conditions between an accessibility relation and refinement.

use std::fmt;
use std::str::FromStr;

use super::{Relation, RelationalFrame};
use crate::error::{Error, Result, Verdict, Violation};
use crate::poset::{ElementSet, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelCondition {
    /// `x' ⊑ x` and `x' R y'` imply `x R y'`.
    UpR,
    /// `x R y` and `y' ⊑ y` imply `x R y'`.
    RDown,
    /// `x R y` implies `∃x'⊑x ∀x''⊑x' ∃y'⊑y: x'' R y'`.
    RRefinability,
    /// `∀y'⊑y ∃y''⊑y': x R y''` implies `x R y`.
    RDense,
    /// If every `y ∈ R(x)` is incompatible with `z`, so is every `y' ∈ R(x')` for `x' ⊑ x`.
    RRule,
    /// `x R y` implies `∀y'⊑y ∃x'⊑x ∀x''⊑x' ∃y''∈R(x''): y'' ≬ y'`.
    RToWin,
    /// `x R y` iff `∀y'⊑y ∃x'⊑x ∀x''⊑x' ∃y''∈R(x''): y'' ⊑ y'`.
    RIffWin,
}

impl RelCondition {
    pub const ALL: [RelCondition; 7] = [
        RelCondition::UpR,
        RelCondition::RDown,
        RelCondition::RRefinability,
        RelCondition::RDense,
        RelCondition::RRule,
        RelCondition::RToWin,
        RelCondition::RIffWin,
    ];

    /// up-R, R-down and R-refinability.
    pub const PARADIGM: [RelCondition; 3] =
        [RelCondition::UpR, RelCondition::RDown, RelCondition::RRefinability];

    /// The paradigm conditions plus R-dense.
    pub const STRONG: [RelCondition; 4] = [
        RelCondition::UpR,
        RelCondition::RDown,
        RelCondition::RRefinability,
        RelCondition::RDense,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelCondition::UpR => "up-R",
            RelCondition::RDown => "R-down",
            RelCondition::RRefinability => "R-refinability",
            RelCondition::RDense => "R-dense",
            RelCondition::RRule => "R-rule",
            RelCondition::RToWin => "R-to-win",
            RelCondition::RIffWin => "R-iff-win",
        }
    }

    /// Evaluates the condition for `r` over `poset`.
    pub fn check(self, poset: &Poset, r: &Relation) -> Verdict {
        let n = poset.len();
        let nm = |x: usize| poset.name(x);
        let fail = |w: String| Err(Violation::new(self.name(), w));
        match self {
            RelCondition::UpR => {
                for x in 0..n {
                    for x1 in poset.down(x) {
                        if let Some(y) = (r.image(x1) - r.image(x)).first() {
                            return fail(format!(
                                "{} ⊑ {} and {} R {} but not {} R {}",
                                nm(x1), nm(x), nm(x1), nm(y), nm(x), nm(y)
                            ));
                        }
                    }
                }
            }
            RelCondition::RDown => {
                for x in 0..n {
                    for y in r.image(x) {
                        if let Some(y1) = (poset.down(y) - r.image(x)).first() {
                            return fail(format!(
                                "{} R {} and {} ⊑ {} but not {} R {}",
                                nm(x), nm(y), nm(y1), nm(y), nm(x), nm(y1)
                            ));
                        }
                    }
                }
            }
            RelCondition::RRefinability => {
                for x in 0..n {
                    for y in r.image(x) {
                        let dy = poset.down(y);
                        let ok = poset.down(x).iter().any(|x1| {
                            poset.down(x1).iter().all(|x2| r.image(x2).intersects(dy))
                        });
                        if !ok {
                            return fail(format!(
                                "{} R {} but every refinement of {} has a refinement seeing nothing below {}",
                                nm(x), nm(y), nm(x), nm(y)
                            ));
                        }
                    }
                }
            }
            RelCondition::RDense => {
                for x in 0..n {
                    let rx = r.image(x);
                    for y in 0..n {
                        if rx.contains(y) {
                            continue;
                        }
                        if poset.down(y).iter().all(|y1| poset.down(y1).intersects(rx)) {
                            return fail(format!(
                                "every refinement of {} has a refinement in R({}) but not {} R {}",
                                nm(y), nm(x), nm(x), nm(y)
                            ));
                        }
                    }
                }
            }
            RelCondition::RRule => {
                for z in 0..n {
                    let compat = poset.closure(poset.down(z));
                    for x in 0..n {
                        if r.image(x).intersects(compat) {
                            continue;
                        }
                        for x1 in poset.down(x) {
                            if let Some(y1) = (r.image(x1) & compat).first() {
                                return fail(format!(
                                    "R({}) is incompatible with {} but {} ⊑ {} and {} R {} with {} compatible with {}",
                                    nm(x), nm(z), nm(x1), nm(x), nm(x1), nm(y1), nm(y1), nm(z)
                                ));
                            }
                        }
                    }
                }
            }
            RelCondition::RToWin => {
                for x in 0..n {
                    for y in r.image(x) {
                        if let Some(y1) = poset
                            .down(y)
                            .iter()
                            .find(|&y1| !wins(poset, r, x, poset.closure(poset.down(y1))))
                        {
                            return fail(format!(
                                "{} R {} but no refinement of {} forces every further refinement to see something compatible with {}",
                                nm(x), nm(y), nm(x), nm(y1)
                            ));
                        }
                    }
                }
            }
            RelCondition::RIffWin => {
                for x in 0..n {
                    for y in 0..n {
                        let game = poset
                            .down(y)
                            .iter()
                            .all(|y1| wins(poset, r, x, poset.down(y1)));
                        if game != r.contains(x, y) {
                            let w = if game {
                                format!("the game for ({}, {}) is won but not {} R {}", nm(x), nm(y), nm(x), nm(y))
                            } else {
                                format!("{} R {} but the game for ({}, {}) is lost", nm(x), nm(y), nm(x), nm(y))
                            };
                            return fail(w);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `∃x'⊑x ∀x''⊑x' R(x'') ∩ target ≠ ∅`.
fn wins(poset: &Poset, r: &Relation, x: usize, target: ElementSet) -> bool {
    poset
        .down(x)
        .iter()
        .any(|x1| poset.down(x1).iter().all(|x2| r.image(x2).intersects(target)))
}

impl fmt::Display for RelCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelCondition::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCondition(s.to_string()))
    }
}

/// `RO(S, ⊑)` is closed under `Z ↦ {x : R(x) ⊆ Z}`.
pub fn ro_closed_under_box(poset: &Poset, r: &Relation) -> Result<Verdict> {
    for z in poset.enumerate_regular_opens()? {
        let b = r.box_set(z);
        if !poset.is_regular_open(b) {
            return Ok(Err(Violation::new(
                "regular opens closed under box",
                format!("box of {} is {}", poset.show(z), poset.show(b)),
            )));
        }
    }
    Ok(Ok(()))
}

impl RelationalFrame {
    pub fn check_relation_condition(&self, index: &str, cond: RelCondition) -> Result<Verdict> {
        Ok(cond.check(self.poset(), self.relation(index)?))
    }

    fn all_hold(&self, conds: &[RelCondition]) -> Verdict {
        for r in self.relations.values() {
            for &c in conds {
                c.check(self.poset(), r)?;
            }
        }
        Ok(())
    }

    /// up-R, R-down and R-refinability for every index.
    pub fn is_paradigm(&self) -> Verdict {
        self.all_hold(&RelCondition::PARADIGM)
    }

    /// The paradigm conditions plus R-dense, for every index.
    pub fn is_strong(&self) -> Verdict {
        self.all_hold(&RelCondition::STRONG)
    }

    /// `x R□ y` iff `y ∈ Z` for every admissible `Z` with `x ∈ □Z`.
    pub fn box_relation(&self, index: &str) -> Result<Relation> {
        let r = self.relation(index)?;
        let n = self.len();
        let mut succ = vec![ElementSet::full(n); n];
        for &z in &self.base.admissible {
            for x in r.box_set(z) {
                succ[x] = succ[x] & z;
            }
        }
        Ok(Relation::from_successors(succ))
    }

    /// Every `Rᵢ□` is contained in `Rᵢ`.
    pub fn is_r_tight(&self) -> Result<bool> {
        for (i, r) in &self.relations {
            if !self.box_relation(i)?.is_subset(r) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Replaces each `Rᵢ` by `Rᵢ□`.
    pub fn tighten(&self) -> Result<RelationalFrame> {
        let relations = self
            .relations
            .keys()
            .map(|i| Ok((i.clone(), self.box_relation(i)?)))
            .collect::<Result<_>>()?;
        RelationalFrame::new(self.base.clone(), relations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn names_round_trip() {
        for c in RelCondition::ALL {
            assert_eq!(c.name().parse::<RelCondition>().unwrap(), c);
        }
        assert!("R-up".parse::<RelCondition>().is_err());
    }

    #[test]
    fn sea_battle_is_paradigm() {
        let fr = super::super::tests::sea();
        for i in ["f", "p"] {
            for c in RelCondition::STRONG {
                assert_eq!(fr.check_relation_condition(i, c).unwrap(), Ok(()), "{i} {c}");
            }
        }
    }

    #[test]
    fn discrete_posets_satisfy_everything() {
        let p = Poset::discrete(3).unwrap();
        let r = Relation::from_pairs(3, &[(0, 1), (1, 1), (2, 0)]).unwrap();
        for c in RelCondition::ALL {
            assert_eq!(c.check(&p, &r), Ok(()), "{c}");
        }
    }

    #[test]
    fn constant_root_relation_fails_r_down() {
        let t2 = Poset::binary_tree(2).unwrap();
        let root = t2.element("e").unwrap();
        let r = Relation::from_fn(7, |_, y| y == root);
        let v = RelCondition::RDown.check(&t2, &r).unwrap_err();
        assert_eq!(v.condition, "R-down");
        assert!(v.witness.starts_with("e R e and 0 ⊑ e"), "{}", v.witness);
    }

    #[test]
    fn tightening_the_order_gives_a_strong_frame() {
        let d1 = Poset::from_named(&["a", "b", "1"], &[("a", "1"), ("b", "1")]).unwrap();
        let r = Relation::refinement(&d1);
        let fr = RelationalFrame::full(d1, BTreeMap::from([("0".into(), r)])).unwrap();
        let t = fr.tighten().unwrap();
        assert_eq!(t.is_strong(), Ok(()));
        assert!(t.is_r_tight().unwrap());
        assert_eq!(t.tighten().unwrap(), t);
        for &z in &fr.base.admissible {
            assert_eq!(fr.box_("0", z).unwrap(), t.box_("0", z).unwrap());
        }
    }
}
