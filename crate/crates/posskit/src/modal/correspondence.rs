//! Lemmon-Scott axioms `◇_α □_β p → □_δ ◇_γ p` on full paradigm frames.

use super::{is_valid, Relation, RelationalFrame, Validity};
use crate::error::{Error, Result};
use crate::syntax::Formula;

/// Longest index sequence accepted by [`lemmon_scott_check`].
pub const MAX_SEQUENCE: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmonScott {
    pub axiom: Formula,
    pub axiom_valid: Validity,
    pub condition_holds: bool,
}

impl LemmonScott {
    pub fn agrees(&self) -> bool {
        self.axiom_valid.is_valid() == self.condition_holds
    }
}

/// `◇_α □_β p → □_δ ◇_γ p`.
pub fn lemmon_scott_formula(alpha: &[&str], beta: &[&str], delta: &[&str], gamma: &[&str]) -> Formula {
    let p = Formula::var("p");
    let boxes = |seq: &[&str], f: Formula| seq.iter().rev().fold(f, |acc, i| Formula::boxed(i, acc));
    let diamonds = |seq: &[&str], f: Formula| seq.iter().rev().fold(f, |acc, i| Formula::diamond(i, acc));
    Formula::implies(
        diamonds(alpha, boxes(beta, p.clone())),
        boxes(delta, diamonds(gamma, p)),
    )
}

/// Decides validity of the axiom by exhaustive search and, independently, the
/// condition `∀x∀y (x R_δ y → ∃x'⊑x ∀z (x' R_α z → ∃u (y R_γ u ∧ z R_β u)))`,
/// reading an empty sequence as `x R y ⟺ y ⊑ x`.
pub fn lemmon_scott_check(
    frame: &RelationalFrame,
    alpha: &[&str],
    beta: &[&str],
    delta: &[&str],
    gamma: &[&str],
) -> Result<LemmonScott> {
    for seq in [alpha, beta, delta, gamma] {
        if seq.len() > MAX_SEQUENCE {
            return Err(Error::Precondition(format!(
                "index sequences are limited to length {MAX_SEQUENCE}"
            )));
        }
    }
    if !frame.is_full()? {
        return Err(Error::Precondition("the frame is not full".into()));
    }
    if let Err(v) = frame.is_paradigm() {
        return Err(Error::Precondition(format!("the frame is not paradigm: {v}")));
    }
    // The empty sequence is the refinement relation, whose box is the identity
    // on regular opens; plain identity fails R-down and breaks the correspondence.
    let composed = |seq: &[&str]| -> Result<Relation> {
        if seq.is_empty() {
            return Ok(Relation::refinement(frame.poset()));
        }
        let rels = seq.iter().map(|i| frame.relation(i)).collect::<Result<Vec<_>>>()?;
        Ok(Relation::compose_all(frame.len(), &rels))
    };
    let (ra, rb, rd, rg) = (composed(alpha)?, composed(beta)?, composed(delta)?, composed(gamma)?);
    let poset = frame.poset();
    let condition_holds = (0..frame.len()).all(|x| {
        rd.image(x).iter().all(|y| {
            let reach = rg.image(y);
            poset
                .down(x)
                .iter()
                .any(|x1| ra.image(x1).iter().all(|z| rb.image(z).intersects(reach)))
        })
    });
    let axiom = lemmon_scott_formula(alpha, beta, delta, gamma);
    let axiom_valid = is_valid(frame, &axiom)?;
    Ok(LemmonScott {
        axiom,
        axiom_valid,
        condition_holds,
    })
}
