//! Finite Boolean algebras, their completions, and the ways of turning an
//! algebra into a possibility frame.

use std::fmt;

use crate::error::{Error, Result};
use crate::frames::PossibilityFrame;
use crate::poset::{ElementSet, Poset, MAX_ELEMENTS};

/// Cap on candidate subsets examined when enumerating filters.
pub const FILTER_CANDIDATE_CAP: u64 = 1 << 16;

/// A finite Boolean algebra stored extensionally: the order plus derived tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteBooleanAlgebra {
    names: Vec<String>,
    below: Vec<ElementSet>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    neg: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteBooleanAlgebra {
    /// Builds an algebra from an order `leq(a, b)` meaning `a ≤ b`, deriving and
    /// validating meets, joins, distributivity and complements.
    pub fn from_order<S: Into<String>>(
        names: Vec<S>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge(n));
        }
        let below: Vec<ElementSet> = (0..n)
            .map(|b| (0..n).filter(|&a| leq(a, b)).collect())
            .collect();
        let tables = LatticeTables::derive(&below).map_err(Error::NotBoolean)?;
        if let Some((a, b, c)) = tables.distributivity_failure() {
            return Err(Error::NotBoolean(format!(
                "not distributive at ({}, {}, {})",
                names[a], names[b], names[c]
            )));
        }
        let mut neg = vec![usize::MAX; n];
        for a in 0..n {
            let comps: Vec<usize> = (0..n)
                .filter(|&c| tables.meet[a][c] == tables.bottom && tables.join[a][c] == tables.top)
                .collect();
            match comps.as_slice() {
                [c] => neg[a] = *c,
                [] => return Err(Error::NotBoolean(format!("`{}` has no complement", names[a]))),
                _ => unreachable!("complements are unique in a distributive lattice"),
            }
        }
        Ok(FiniteBooleanAlgebra {
            names,
            below,
            meet: tables.meet,
            join: tables.join,
            neg,
            bottom: tables.bottom,
            top: tables.top,
        })
    }

    /// Powerset of the named atoms. Element `i` is the set whose bit pattern is `i`;
    /// `0` and `1` name the bottom and top, other elements join atom names with `+`.
    pub fn powerset(atoms: &[&str]) -> Result<Self> {
        let k = atoms.len();
        if k > 6 {
            return Err(Error::TooLarge(1 << k));
        }
        let n = 1usize << k;
        let names: Vec<String> = (0..n)
            .map(|i| {
                if i == 0 {
                    "0".to_string()
                } else if i == n - 1 {
                    "1".to_string()
                } else {
                    (0..k)
                        .filter(|b| i >> b & 1 == 1)
                        .map(|b| atoms[b])
                        .collect::<Vec<_>>()
                        .join("+")
                }
            })
            .collect();
        FiniteBooleanAlgebra::from_order(names, |a, b| a & !b == 0)
    }

    /// Powerset algebra on `k` atoms named `a`, `b`, `c`, ...
    pub fn with_atoms(k: usize) -> Result<Self> {
        let names: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        FiniteBooleanAlgebra::powerset(&refs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    /// `{b : b ≤ a}`.
    pub fn below(&self, a: usize) -> ElementSet {
        self.below[a]
    }

    /// `{b : a ≤ b}`.
    pub fn above(&self, a: usize) -> ElementSet {
        (0..self.len()).filter(|&b| self.leq(a, b)).collect()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.top, |acc, a| self.meet(acc, a))
    }

    pub fn join_all(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.bottom, |acc, a| self.join(acc, a))
    }

    /// Minimal nonzero elements, in index order.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| a != self.bottom && self.below[a].len() == 2)
            .collect()
    }

    /// The poset of nonzero elements, with the original index of each.
    pub fn bplus_poset(&self) -> Result<(Poset, Vec<usize>)> {
        if self.len() < 2 {
            return Err(Error::Degenerate);
        }
        let map: Vec<usize> = (0..self.len()).filter(|&a| a != self.bottom).collect();
        let names: Vec<String> = map.iter().map(|&a| self.names[a].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in map.iter().enumerate() {
            for (j, &b) in map.iter().enumerate() {
                if i != j && self.leq(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        Ok((Poset::new(names, &pairs)?, map))
    }

    /// `↓₊b`: the nonzero elements below `b`, as indices into [`Self::bplus_poset`].
    pub fn down_plus(&self, b: usize) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        let mut i = 0;
        for a in 0..self.len() {
            if a == self.bottom {
                continue;
            }
            if self.leq(a, b) {
                out.insert(i);
            }
            i += 1;
        }
        out
    }

    /// Whether `f` is a Boolean homomorphism into `other`.
    pub fn is_homomorphism(&self, other: &FiniteBooleanAlgebra, f: &[usize]) -> bool {
        f.len() == self.len()
            && f[self.bottom] == other.bottom
            && f[self.top] == other.top
            && (0..self.len()).all(|a| {
                f[self.neg(a)] == other.neg(f[a])
                    && (0..self.len()).all(|b| {
                        f[self.meet(a, b)] == other.meet(f[a], f[b])
                            && f[self.join(a, b)] == other.join(f[a], f[b])
                    })
            })
    }
}

impl fmt::Debug for FiniteBooleanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteBooleanAlgebra")
            .field("elements", &self.names)
            .field("atoms", &self.atoms().iter().map(|&a| &self.names[a]).collect::<Vec<_>>())
            .finish()
    }
}

/// Meet and join tables derived from an order given as principal downsets.
pub(crate) struct LatticeTables {
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

impl LatticeTables {
    pub fn derive(below: &[ElementSet]) -> std::result::Result<LatticeTables, String> {
        let n = below.len();
        let above: Vec<ElementSet> = (0..n)
            .map(|a| (0..n).filter(|&b| below[b].contains(a)).collect())
            .collect();
        for a in 0..n {
            if !below[a].contains(a) {
                return Err(format!("order is not reflexive at element {a}"));
            }
            for b in below[a].without(a) {
                if below[b].contains(a) {
                    return Err(format!("order is not antisymmetric at {b}, {a}"));
                }
                if !below[b].is_subset(below[a]) {
                    return Err(format!("order is not transitive below {a}"));
                }
            }
        }
        let glb = |lower: ElementSet| lower.iter().find(|&m| below[m] == lower);
        let lub = |upper: ElementSet| upper.iter().find(|&m| above[m] == upper);
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = glb(below[a] & below[b]).ok_or(format!("no meet of {a} and {b}"))?;
                join[a][b] = lub(above[a] & above[b]).ok_or(format!("no join of {a} and {b}"))?;
            }
        }
        let bottom = lub(ElementSet::full(n)).ok_or("no bottom element")?;
        let top = glb(ElementSet::full(n)).ok_or("no top element")?;
        Ok(LatticeTables {
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.meet.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.meet[a][self.join[b][c]]
                        != self.join[self.meet[a][b]][self.meet[a][c]]
                    {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// A Boolean algebra whose elements are sets of possibilities, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct SetAlgebra {
    /// Carrier, sorted by bit pattern; element `i` of `algebra` is `sets[i]`.
    pub sets: Vec<ElementSet>,
    pub algebra: FiniteBooleanAlgebra,
}

impl SetAlgebra {
    /// The algebra on `sets` ordered by `⊆`. Fails unless that order is Boolean.
    pub fn from_sets(poset: &Poset, mut sets: Vec<ElementSet>) -> Result<Self> {
        sets.sort();
        sets.dedup();
        let names: Vec<String> = sets.iter().map(|&u| poset.label(u)).collect();
        let algebra = FiniteBooleanAlgebra::from_order(names, |a, b| sets[a].is_subset(sets[b]))?;
        Ok(SetAlgebra { sets, algebra })
    }

    pub fn index_of(&self, u: ElementSet) -> Option<usize> {
        self.sets.binary_search(&u).ok()
    }
}

/// The regular open algebra of a poset, within the default size cap.
pub fn ro_algebra(poset: &Poset) -> Result<SetAlgebra> {
    SetAlgebra::from_sets(poset, poset.enumerate_regular_opens()?)
}

/// A completion of an algebra realized as the regular opens of a poset.
#[derive(Clone, Debug)]
pub struct Completion {
    pub poset: Poset,
    pub ro: SetAlgebra,
    /// `embedding[b]` is the index in `ro` of the image of `b`.
    pub embedding: Vec<usize>,
}

/// `RO(B₊)` with `b ↦ ↓₊b`.
pub fn macneille(b: &FiniteBooleanAlgebra) -> Result<Completion> {
    let (poset, _) = b.bplus_poset()?;
    let ro = ro_algebra(&poset)?;
    let embedding = (0..b.len())
        .map(|a| {
            ro.index_of(b.down_plus(a)).ok_or_else(|| {
                Error::NotBoolean(format!("down-set of `{}` is not regular open", b.name(a)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Completion {
        poset,
        ro,
        embedding,
    })
}

/// A filter of a finite Boolean algebra, as a set of element indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter {
    pub members: ElementSet,
}

impl Filter {
    pub fn is_proper(&self, b: &FiniteBooleanAlgebra) -> bool {
        !self.members.contains(b.bottom())
    }

    /// The principal filter `↑a`.
    pub fn principal(b: &FiniteBooleanAlgebra, a: usize) -> Filter {
        Filter {
            members: b.above(a),
        }
    }
}

/// Nonempty, upward closed and closed under meets.
pub fn is_filter(b: &FiniteBooleanAlgebra, members: ElementSet) -> bool {
    !members.is_empty()
        && members.iter().all(|a| {
            b.above(a).is_subset(members) && members.iter().all(|c| members.contains(b.meet(a, c)))
        })
}

/// All proper filters, sorted by bit pattern of their members.
pub fn proper_filters(b: &FiniteBooleanAlgebra) -> Result<Vec<Filter>> {
    let n = b.len();
    if n < 2 {
        return Ok(Vec::new());
    }
    // Every proper filter holds the top and omits the bottom; the rest is free.
    let free: Vec<usize> = (0..n).filter(|&a| a != b.top() && a != b.bottom()).collect();
    let candidates = 1u128 << free.len();
    if candidates > FILTER_CANDIDATE_CAP as u128 {
        return Err(Error::cap("filter candidates", FILTER_CANDIDATE_CAP, candidates));
    }
    let mut out = Vec::new();
    for mask in 0..candidates as u64 {
        let mut members = ElementSet::singleton(b.top());
        for (i, &a) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                members.insert(a);
            }
        }
        if is_filter(b, members) {
            out.push(Filter { members });
        }
    }
    out.sort();
    Ok(out)
}

/// The poset of proper filters under reverse inclusion: `F ⊑ G` iff `F ⊇ G`.
/// Each filter is named `^a` after the meet `a` of its members.
pub fn filter_poset(b: &FiniteBooleanAlgebra) -> Result<(Poset, Vec<Filter>)> {
    let filters = proper_filters(b)?;
    let names: Vec<String> = filters
        .iter()
        .map(|f| format!("^{}", b.name(b.meet_all(f.members))))
        .collect();
    let mut pairs = Vec::new();
    for (i, f) in filters.iter().enumerate() {
        for (j, g) in filters.iter().enumerate() {
            if i != j && g.members.is_subset(f.members) {
                pairs.push((i, j));
            }
        }
    }
    Ok((Poset::new(names, &pairs)?, filters))
}

/// A frame built on the proper filters of an algebra.
#[derive(Clone, Debug)]
pub struct FilterFrame {
    pub frame: PossibilityFrame,
    pub filters: Vec<Filter>,
    /// `hat[a] = â = {F : a ∈ F}`.
    pub hat: Vec<ElementSet>,
}

fn hats(b: &FiniteBooleanAlgebra, filters: &[Filter]) -> Vec<ElementSet> {
    (0..b.len())
        .map(|a| {
            filters
                .iter()
                .enumerate()
                .filter(|(_, f)| f.members.contains(a))
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// `(PropFilt(B), ⊇)` with every regular open set admissible.
pub fn filter_frame(b: &FiniteBooleanAlgebra) -> Result<FilterFrame> {
    let (poset, filters) = filter_poset(b)?;
    let hat = hats(b, &filters);
    Ok(FilterFrame {
        frame: PossibilityFrame::full(poset)?,
        filters,
        hat,
    })
}

/// `(PropFilt(B), ⊇, {â : a ∈ B})`.
pub fn general_filter_frame(b: &FiniteBooleanAlgebra) -> Result<FilterFrame> {
    let (poset, filters) = filter_poset(b)?;
    let hat = hats(b, &filters);
    Ok(FilterFrame {
        frame: PossibilityFrame::new(poset, hat.clone()),
        filters,
        hat,
    })
}

/// `RO(PropFilt(B), ⊇)` with `a ↦ â`.
pub fn canonical_extension(b: &FiniteBooleanAlgebra) -> Result<Completion> {
    let (poset, filters) = filter_poset(b)?;
    let ro = ro_algebra(&poset)?;
    let embedding = hats(b, &filters)
        .into_iter()
        .map(|h| {
            ro.index_of(h)
                .ok_or_else(|| Error::NotBoolean("a filter hat is not regular open".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Completion {
        poset,
        ro,
        embedding,
    })
}

/// A Boolean isomorphism, if one exists: the `i`-th atom of `b1` goes to the
/// `i`-th atom of `b2` (the lexicographically least atom matching).
pub fn isomorphism(b1: &FiniteBooleanAlgebra, b2: &FiniteBooleanAlgebra) -> Option<Vec<usize>> {
    let (atoms1, atoms2) = (b1.atoms(), b2.atoms());
    if b1.len() != b2.len() || atoms1.len() != atoms2.len() {
        return None;
    }
    let map: Vec<usize> = (0..b1.len())
        .map(|e| {
            b2.join_all(
                atoms1
                    .iter()
                    .zip(&atoms2)
                    .filter(|(&a1, _)| b1.leq(a1, e))
                    .map(|(_, &a2)| a2),
            )
        })
        .collect();
    b1.is_homomorphism(b2, &map).then_some(map)
}

pub fn is_isomorphic(b1: &FiniteBooleanAlgebra, b2: &FiniteBooleanAlgebra) -> bool {
    isomorphism(b1, b2).is_some()
}

/// The atomic and atomless parts of a poset after deleting everything properly
/// refined by a world. Either part is `None` when empty; for a finite poset the
/// atomless part is always empty.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub atomic: Option<(Poset, Vec<usize>)>,
    pub atomless: Option<(Poset, Vec<usize>)>,
}

pub fn decompose_atomic_atomless(poset: &Poset) -> Result<Decomposition> {
    let n = poset.len();
    let strictly_below = |x: usize| poset.down(x).without(x);
    // B⋆: every proper refinement is itself properly refined.
    let star: ElementSet = (0..n)
        .filter(|&x| {
            strictly_below(x)
                .iter()
                .all(|y| !strictly_below(y).is_empty())
        })
        .collect();
    let below_star = |x: usize| strictly_below(x) & star;
    let atomic: ElementSet = star.iter().filter(|&x| below_star(x).is_empty()).collect();
    let atomless: ElementSet = star
        .iter()
        .filter(|&x| {
            (poset.down(x) & star)
                .iter()
                .all(|y| !below_star(y).is_empty())
        })
        .collect();
    let part = |s: ElementSet| -> Result<Option<(Poset, Vec<usize>)>> {
        if s.is_empty() {
            Ok(None)
        } else {
            poset.subposet(s).map(Some)
        }
    };
    Ok(Decomposition {
        atomic: part(atomic)?,
        atomless: part(atomless)?,
    })
}
