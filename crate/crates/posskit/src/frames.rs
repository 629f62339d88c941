//! General possibility frames `(S, ⊑, P)`: a poset with a designated Boolean
//! subalgebra `P` of its regular open sets.

use crate::balg::{self, FiniteBooleanAlgebra, SetAlgebra};
use crate::error::{Error, Result, Verdict, Violation};
use crate::poset::{ElementSet, Poset};

/// Carrier-size cap for the exhaustive frame isomorphism search.
pub const ISO_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PossibilityFrame {
    pub poset: Poset,
    /// The admissible family, sorted by bit pattern and deduplicated.
    pub admissible: Vec<ElementSet>,
}

impl PossibilityFrame {
    /// Canonicalizes `admissible` without validating it; see [`Self::validate`].
    pub fn new(poset: Poset, mut admissible: Vec<ElementSet>) -> Self {
        admissible.sort();
        admissible.dedup();
        PossibilityFrame { poset, admissible }
    }

    /// Every regular open set admissible.
    pub fn full(poset: Poset) -> Result<Self> {
        let admissible = poset.enumerate_regular_opens()?;
        Ok(PossibilityFrame { poset, admissible })
    }

    /// Like [`Self::new`], failing unless the result is a valid frame.
    pub fn checked(poset: Poset, admissible: Vec<ElementSet>) -> Result<Self> {
        let frame = PossibilityFrame::new(poset, admissible);
        frame
            .validate()
            .map_err(|v| Error::InvalidFrame(v.to_string()))?;
        Ok(frame)
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn is_admissible(&self, u: ElementSet) -> bool {
        self.admissible.binary_search(&u).is_ok()
    }

    pub fn admissible_index(&self, u: ElementSet) -> Option<usize> {
        self.admissible.binary_search(&u).ok()
    }

    /// `P` is nonempty, consists of regular open sets, and is closed under `¬` and `∩`.
    pub fn validate(&self) -> Verdict {
        let p = &self.poset;
        if self.admissible.is_empty() {
            return Err(Violation::new("nonempty", "no admissible sets"));
        }
        for &u in &self.admissible {
            if !p.is_regular_open(u) {
                return Err(Violation::new("regular open", p.show(u)));
            }
        }
        for &u in &self.admissible {
            let nu = p.neg(u);
            if !self.is_admissible(nu) {
                return Err(Violation::new(
                    "closed under negation",
                    format!("¬{} = {}", p.show(u), p.show(nu)),
                ));
            }
            for &v in &self.admissible {
                if !self.is_admissible(u & v) {
                    return Err(Violation::new(
                        "closed under intersection",
                        format!("{} ∩ {}", p.show(u), p.show(v)),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `P` is exactly the set of regular opens.
    pub fn is_full(&self) -> Result<bool> {
        Ok(self.admissible == self.poset.enumerate_regular_opens()?)
    }

    /// The Boolean algebra of admissible sets under the regular open operations.
    pub fn algebra(&self) -> Result<SetAlgebra> {
        self.validate()
            .map_err(|v| Error::InvalidFrame(v.to_string()))?;
        SetAlgebra::from_sets(&self.poset, self.admissible.clone())
    }

    /// `y ⋢ x` implies some admissible `U` with `x ∈ U` and `y ∉ U`.
    pub fn satisfies_separation(&self) -> Verdict {
        let p = &self.poset;
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.leq(y, x) {
                    continue;
                }
                let separated = self
                    .admissible
                    .iter()
                    .any(|u| u.contains(x) && !u.contains(y));
                if !separated {
                    return Err(Violation::new(
                        "separation",
                        format!("{} ⋢ {} but no admissible set separates them", p.name(y), p.name(x)),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Every proper filter of the algebra `P` is `{U ∈ P : x ∈ U}` for some `x`.
    pub fn satisfies_filter_realization(&self) -> Result<Verdict> {
        let alg = self.algebra()?;
        let realized: Vec<ElementSet> = (0..self.len())
            .map(|x| {
                alg.sets
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| u.contains(x))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        for f in balg::proper_filters(&alg.algebra)? {
            if !realized.contains(&f.members) {
                let shown: Vec<String> = f
                    .members
                    .iter()
                    .map(|i| self.poset.show(alg.sets[i]))
                    .collect();
                return Ok(Err(Violation::new(
                    "filter realization",
                    format!("no possibility realizes the filter {{{}}}", shown.join(", ")),
                )));
            }
        }
        Ok(Ok(()))
    }

    /// Separation together with filter realization.
    pub fn is_filter_descriptive(&self) -> Result<bool> {
        Ok(self.satisfies_separation().is_ok() && self.satisfies_filter_realization()?.is_ok())
    }

    /// Whether this frame is isomorphic to the general filter frame of its own algebra.
    pub fn dual_roundtrip(&self) -> Result<bool> {
        let alg = self.algebra()?;
        let g = balg::general_filter_frame(&alg.algebra)?;
        Ok(find_isomorphism(self, &g.frame)?.is_some())
    }
}

/// A map between the carriers of two frames.
#[derive(Clone, Debug)]
pub struct FrameMap<'a> {
    pub source: &'a PossibilityFrame,
    pub target: &'a PossibilityFrame,
    pub map: Vec<usize>,
}

impl FrameMap<'_> {
    /// `⊑`-forth, `⊑`-back, and admissible preimages of admissible sets.
    pub fn is_p_morphism(&self) -> Verdict {
        let (s, t) = (&self.source.poset, &self.target.poset);
        if self.map.len() != s.len() || self.map.iter().any(|&y| y >= t.len()) {
            return Err(Violation::new("total map", "map does not cover the source carrier"));
        }
        for x in 0..s.len() {
            for x2 in s.down(x).iter() {
                if !t.leq(self.map[x2], self.map[x]) {
                    return Err(Violation::new(
                        "⊑-forth",
                        format!("{} ⊑ {} but images are not ordered", s.name(x2), s.name(x)),
                    ));
                }
            }
        }
        for x in 0..s.len() {
            for y2 in t.down(self.map[x]).iter() {
                if !s.down(x).iter().any(|y| self.map[y] == y2) {
                    return Err(Violation::new(
                        "⊑-back",
                        format!("{} ⊑ h({}) has no preimage below {}", t.name(y2), s.name(x), s.name(x)),
                    ));
                }
            }
        }
        for &v in &self.target.admissible {
            let pre: ElementSet = (0..s.len()).filter(|&x| v.contains(self.map[x])).collect();
            if !self.source.is_admissible(pre) {
                return Err(Violation::new(
                    "admissible preimages",
                    format!("preimage of {} is {}", t.show(v), s.show(pre)),
                ));
            }
        }
        Ok(())
    }
}

/// An order- and admissible-preserving bijection from `f` onto `g`, if any.
/// Exhaustive with degree pruning, for carriers up to [`ISO_CAP`].
pub fn find_isomorphism(f: &PossibilityFrame, g: &PossibilityFrame) -> Result<Option<Vec<usize>>> {
    let n = f.len();
    if n != g.len() || f.admissible.len() != g.admissible.len() {
        return Ok(None);
    }
    if n > ISO_CAP {
        return Err(Error::cap("frame isomorphism carrier", ISO_CAP as u64, n as u64));
    }
    let signature = |fr: &PossibilityFrame, x: usize| {
        (
            fr.poset.down(x).len(),
            fr.poset.up(x).len(),
            fr.admissible.iter().filter(|u| u.contains(x)).count(),
        )
    };
    let sig_f: Vec<_> = (0..n).map(|x| signature(f, x)).collect();
    let sig_g: Vec<_> = (0..n).map(|x| signature(g, x)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = ElementSet::EMPTY;
    let found = extend_iso(f, g, &sig_f, &sig_g, 0, &mut map, &mut used);
    Ok(found.then_some(map))
}

fn extend_iso(
    f: &PossibilityFrame,
    g: &PossibilityFrame,
    sig_f: &[(usize, usize, usize)],
    sig_g: &[(usize, usize, usize)],
    x: usize,
    map: &mut [usize],
    used: &mut ElementSet,
) -> bool {
    let n = f.len();
    if x == n {
        let image = |u: ElementSet| -> ElementSet { u.iter().map(|y| map[y]).collect() };
        return f.admissible.iter().all(|&u| g.is_admissible(image(u)));
    }
    for y in 0..n {
        if used.contains(y) || sig_f[x] != sig_g[y] {
            continue;
        }
        let consistent = (0..x).all(|z| {
            f.poset.leq(z, x) == g.poset.leq(map[z], y) && f.poset.leq(x, z) == g.poset.leq(y, map[z])
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used.insert(y);
        if extend_iso(f, g, sig_f, sig_g, x + 1, map, used) {
            return true;
        }
        used.remove(y);
    }
    map[x] = usize::MAX;
    false
}

/// The frame's algebra compared with a given algebra.
pub fn algebra_isomorphic_to(frame: &PossibilityFrame, b: &FiniteBooleanAlgebra) -> Result<bool> {
    Ok(balg::is_isomorphic(&frame.algebra()?.algebra, b))
}
