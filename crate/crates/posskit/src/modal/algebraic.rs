//! Relational frames built from Boolean algebras with operators.

use std::collections::BTreeMap;

use super::{Relation, RelationalFrame};
use crate::balg::{self, FiniteBooleanAlgebra};
use crate::error::{Error, Result};
use crate::frames::PossibilityFrame;
use crate::poset::ElementSet;

/// `□ᵢ` operations given as tables over the element indices of an algebra.
pub type Boxes = BTreeMap<String, Vec<usize>>;

/// A relational frame realizing a BAO, with the image of each algebra element.
#[derive(Clone, Debug)]
pub struct BaoFrame {
    pub frame: RelationalFrame,
    /// `embedding[a]` is the admissible set representing `a`.
    pub embedding: Vec<ElementSet>,
}

/// `□1 = 1` and `□(a ∧ b) = □a ∧ □b` for every index.
fn check_multiplicative(b: &FiniteBooleanAlgebra, boxes: &Boxes) -> Result<()> {
    for (i, table) in boxes {
        if table.len() != b.len() {
            return Err(Error::InvalidModel(format!(
                "box table `{i}` has {} entries for {} elements",
                table.len(),
                b.len()
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= b.len()) {
            return Err(Error::IndexOutOfRange { index: v, size: b.len() });
        }
        let fail = |witness: String| Error::NotMultiplicative {
            index: i.clone(),
            witness,
        };
        if table[b.top()] != b.top() {
            return Err(fail(format!("box 1 = {}", b.name(table[b.top()]))));
        }
        for x in 0..b.len() {
            for y in 0..b.len() {
                let lhs = table[b.meet(x, y)];
                let rhs = b.meet(table[x], table[y]);
                if lhs != rhs {
                    return Err(fail(format!(
                        "box({} ∧ {}) = {} but box {} ∧ box {} = {}",
                        b.name(x),
                        b.name(y),
                        b.name(lhs),
                        b.name(x),
                        b.name(y),
                        b.name(rhs)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The full frame on `B₊` with `x Rᵢ y` iff `x ∧ ◇ᵢy' ≠ 0` for every nonzero `y' ≤ y`.
pub fn vbao_full_frame(b: &FiniteBooleanAlgebra, boxes: &Boxes) -> Result<BaoFrame> {
    check_multiplicative(b, boxes)?;
    let (poset, map) = b.bplus_poset()?;
    let relations = boxes
        .iter()
        .map(|(i, table)| {
            let diamond = |a: usize| b.neg(table[b.neg(a)]);
            let r = Relation::from_fn(map.len(), |x, y| {
                map.iter()
                    .filter(|&&y1| b.leq(y1, map[y]))
                    .all(|&y1| b.meet(map[x], diamond(y1)) != b.bottom())
            });
            (i.clone(), r)
        })
        .collect();
    let embedding = (0..b.len()).map(|a| b.down_plus(a)).collect();
    Ok(BaoFrame {
        frame: RelationalFrame::full(poset, relations)?,
        embedding,
    })
}

/// The general filter frame with `F Rᵢ F'` iff `□ᵢa ∈ F` implies `a ∈ F'`.
pub fn bao_filter_frame(b: &FiniteBooleanAlgebra, boxes: &Boxes) -> Result<BaoFrame> {
    check_multiplicative(b, boxes)?;
    let ff = balg::general_filter_frame(b)?;
    let relations = boxes
        .iter()
        .map(|(i, table)| {
            let r = Relation::from_fn(ff.filters.len(), |f, g| {
                let (f, g) = (ff.filters[f].members, ff.filters[g].members);
                (0..b.len()).all(|a| !f.contains(table[a]) || g.contains(a))
            });
            (i.clone(), r)
        })
        .collect();
    Ok(BaoFrame {
        frame: RelationalFrame::new(PossibilityFrame::new(ff.frame.poset, ff.hat.clone()), relations)?,
        embedding: ff.hat,
    })
}

/// `□ᵢ` on the frame agrees with the table through the embedding: `e(□ᵢa) = □ᵢ e(a)`.
pub fn vbao_box_preserved(boxes: &Boxes, bf: &BaoFrame) -> Result<bool> {
    for (i, table) in boxes {
        for (a, &e) in bf.embedding.iter().enumerate() {
            if bf.frame.box_(i, e)? != bf.embedding[table[a]] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::RelCondition;

    fn b4() -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::powerset(&["a", "b"]).unwrap()
    }

    #[test]
    fn identity_box_on_b4() {
        let b = b4();
        let boxes = Boxes::from([("0".into(), (0..4).collect())]);
        for bf in [vbao_full_frame(&b, &boxes).unwrap(), bao_filter_frame(&b, &boxes).unwrap()] {
            assert_eq!(bf.frame.len(), 3);
            assert!(vbao_box_preserved(&boxes, &bf).unwrap());
            assert_eq!(bf.frame.is_strong(), Ok(()));
            assert_eq!(bf.frame.validate(), Ok(()));
            // The identity box is realized by the refinement order itself.
            assert_eq!(bf.frame.relations["0"], Relation::refinement(bf.frame.poset()));
        }
    }

    #[test]
    fn constant_top_box_has_empty_relation() {
        let b = FiniteBooleanAlgebra::powerset(&["a"]).unwrap();
        let boxes = Boxes::from([("0".into(), vec![b.top(); 2])]);
        let bf = vbao_full_frame(&b, &boxes).unwrap();
        assert_eq!(bf.frame.relations["0"], Relation::empty(1));
        assert!(vbao_box_preserved(&boxes, &bf).unwrap());
    }

    #[test]
    fn non_multiplicative_boxes_are_rejected() {
        let b = b4();
        // box a = 1, box b = 1, box 0 = 0, box 1 = 1: box(a ∧ b) = 0 ≠ 1.
        let mut table = vec![b.top(); 4];
        table[b.bottom()] = b.bottom();
        let boxes = Boxes::from([("0".into(), table)]);
        assert!(matches!(
            vbao_full_frame(&b, &boxes),
            Err(Error::NotMultiplicative { .. })
        ));
    }

    #[test]
    fn top_only_box_on_b4() {
        let b = b4();
        let table: Vec<usize> = (0..4).map(|a| if a == b.top() { a } else { b.bottom() }).collect();
        let boxes = Boxes::from([("0".into(), table)]);
        let bf = bao_filter_frame(&b, &boxes).unwrap();
        assert!(vbao_box_preserved(&boxes, &bf).unwrap());
        for c in RelCondition::STRONG {
            assert_eq!(bf.frame.check_relation_condition("0", c).unwrap(), Ok(()));
        }
    }
}
