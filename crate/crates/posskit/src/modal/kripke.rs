//! Kripke models: extraction from possibility models and the bimodal reading
//! of `(S, ⊑, R)`.

use std::collections::BTreeMap;

use super::{truth_set, Relation, RelationalFrame, Valuation};
use crate::error::{Error, Result};
use crate::poset::ElementSet;
use crate::syntax::{bimodal_translate, Formula, SQ_INDEX};

/// A Kripke model on a subset `domain` of some carrier, with classical negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    pub domain: ElementSet,
    pub relations: BTreeMap<String, Relation>,
    pub valuation: Valuation,
}

impl KripkeModel {
    /// Classical truth set inside `domain`; derived connectives are expanded.
    pub fn truth_set(&self, f: &Formula) -> Result<ElementSet> {
        self.value(&f.expand_defined())
    }

    pub fn forces(&self, x: usize, f: &Formula) -> Result<bool> {
        Ok(self.truth_set(f)?.contains(x))
    }

    fn value(&self, f: &Formula) -> Result<ElementSet> {
        Ok(match f {
            Formula::Falsum => ElementSet::EMPTY,
            Formula::Var(p) => {
                self.valuation
                    .get(p)
                    .copied()
                    .ok_or_else(|| Error::UnboundVariable(p.clone()))?
                    & self.domain
            }
            Formula::Not(a) => self.domain - self.value(a)?,
            Formula::And(a, b) => self.value(a)? & self.value(b)?,
            Formula::Box(i, a) => {
                let r = self
                    .relations
                    .get(i)
                    .ok_or_else(|| Error::UnknownIndex(i.clone()))?;
                let v = self.value(a)?;
                r.box_set(v) & self.domain
            }
            other => {
                return Err(Error::Fragment(format!(
                    "Kripke evaluation has no clause for `{other}`"
                )))
            }
        })
    }
}

/// `M_φ`: the `φ`-decisive possibilities, `x R_{i,φ} y` iff `y ⊑ z` for some
/// `z ∈ Rᵢ(x)`, and the valuation restricted to them. Subformulas are those of
/// `φ` with derived connectives expanded.
pub fn kripke_extract(frame: &RelationalFrame, valuation: &Valuation, f: &Formula) -> Result<KripkeModel> {
    let p = frame.poset();
    let mut decisive = p.all();
    for psi in f.expand_defined().subformulas() {
        let v = truth_set(frame, valuation, &psi)?;
        decisive = decisive & (v | p.neg(v));
    }
    let relations = frame
        .relations
        .iter()
        .map(|(i, r)| {
            let succ = (0..frame.len())
                .map(|x| {
                    if decisive.contains(x) {
                        p.downset_of(r.image(x)) & decisive
                    } else {
                        ElementSet::EMPTY
                    }
                })
                .collect();
            (i.clone(), Relation::from_successors(succ))
        })
        .collect();
    let valuation = valuation
        .iter()
        .map(|(q, &u)| (q.clone(), u & decisive))
        .collect();
    Ok(KripkeModel {
        domain: decisive,
        relations,
        valuation,
    })
}

/// Compares possibility forcing of `f` with Kripke forcing of its bimodal
/// translation over `(S, {sq, Rᵢ})` at every point.
pub fn bimodal_agreement(frame: &RelationalFrame, valuation: &Valuation, f: &Formula) -> Result<bool> {
    if !frame.is_full()? {
        return Err(Error::Precondition("bimodal agreement needs a full frame".into()));
    }
    if frame.relations.contains_key(SQ_INDEX) {
        return Err(Error::Precondition(format!(
            "index `{SQ_INDEX}` is reserved for the refinement modality"
        )));
    }
    let translated = bimodal_translate(f)?;
    let mut relations = frame.relations.clone();
    relations.insert(SQ_INDEX.to_string(), Relation::refinement(frame.poset()));
    let kripke = KripkeModel {
        domain: frame.poset().all(),
        relations,
        valuation: valuation.clone(),
    };
    Ok(truth_set(frame, valuation, f)? == kripke.truth_set(&translated)?)
}
