//! Downset Heyting algebras, nuclei and their fixpoint algebras, finite
//! lattices and locales, and the Dragalin representation of a finite locale.

use std::fmt;

use crate::balg::{FiniteBooleanAlgebra, LatticeTables};
use crate::error::{Error, Result, Verdict, Violation};
use crate::modal::Valuation;
use crate::poset::{ElementSet, Poset, DEFAULT_RO_CAP, MAX_ELEMENTS};
use crate::syntax::Formula;

/// Cap on the number of subsets inspected by locale and join-prime checks.
pub const SUBSET_CAP: usize = 16;

/// Cap on the number of maximal chains enumerated for the Beth nucleus.
pub const CHAIN_CAP: usize = 1 << 16;

/// `Down(S, ⊑)` with `∩`, `∪` and `U → V = {x : ∀x'⊑x (x' ∈ U ⇒ x' ∈ V)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownsetAlgebra {
    pub poset: Poset,
    /// All downsets, sorted by bit pattern.
    pub downsets: Vec<ElementSet>,
}

impl DownsetAlgebra {
    pub fn new(poset: Poset) -> Result<Self> {
        let downsets = poset.enumerate_downsets(DEFAULT_RO_CAP)?;
        Ok(DownsetAlgebra { poset, downsets })
    }

    pub fn len(&self) -> usize {
        self.downsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.downsets.is_empty()
    }

    pub fn index_of(&self, u: ElementSet) -> Option<usize> {
        self.downsets.binary_search(&u).ok()
    }

    pub fn top(&self) -> ElementSet {
        self.poset.all()
    }

    pub fn implies(&self, u: ElementSet, v: ElementSet) -> ElementSet {
        let n = self.poset.len();
        self.poset.interior(u.complement(n) | v)
    }

    /// `a ∧ x ⊆ b` iff `x ⊆ a → b` for all downsets.
    pub fn check_residuation(&self) -> Verdict {
        for &a in &self.downsets {
            for &b in &self.downsets {
                let ab = self.implies(a, b);
                for &x in &self.downsets {
                    if (a & x).is_subset(b) != x.is_subset(ab) {
                        let p = &self.poset;
                        return Err(Violation::new(
                            "residuation",
                            format!("a = {}, b = {}, x = {}", p.show(a), p.show(b), p.show(x)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The lattice `(Down(S), ⊆)`.
    pub fn lattice(&self) -> Result<FiniteLattice> {
        FiniteLattice::from_sets(&self.poset, &self.downsets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NucleusKind {
    Identity,
    NotNot,
    Beth,
    /// `⩽` given by its principal downsets.
    Fm(Vec<ElementSet>),
    Dragalin,
    Table(String),
}

impl fmt::Display for NucleusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NucleusKind::Identity => f.write_str("identity"),
            NucleusKind::NotNot => f.write_str("notnot"),
            NucleusKind::Beth => f.write_str("beth"),
            NucleusKind::Fm(_) => f.write_str("fm"),
            NucleusKind::Dragalin => f.write_str("dragalin"),
            NucleusKind::Table(name) => f.write_str(name),
        }
    }
}

/// An operator on `Down(S)` stored as a table parallel to the sorted downsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    pub kind: NucleusKind,
    domain: Vec<ElementSet>,
    images: Vec<ElementSet>,
}

impl Nucleus {
    /// Tabulates `f` without checking any law; see [`check_nucleus`].
    pub fn from_fn(h: &DownsetAlgebra, kind: NucleusKind, f: impl Fn(ElementSet) -> ElementSet) -> Nucleus {
        Nucleus {
            kind,
            domain: h.downsets.clone(),
            images: h.downsets.iter().map(|&u| f(u)).collect(),
        }
    }

    pub fn identity(h: &DownsetAlgebra) -> Nucleus {
        Nucleus::from_fn(h, NucleusKind::Identity, |u| u)
    }

    /// `j¬¬Z = int(cl(Z))`.
    pub fn notnot(h: &DownsetAlgebra) -> Nucleus {
        Nucleus::from_fn(h, NucleusKind::NotNot, |u| h.poset.regularize(u))
    }

    /// `x ∈ jZ` iff every maximal chain through `x` meets `Z`.
    pub fn beth(h: &DownsetAlgebra) -> Result<Nucleus> {
        let chains = maximal_chains(&h.poset)?;
        let n = h.poset.len();
        Ok(Nucleus::from_fn(h, NucleusKind::Beth, |z| {
            (0..n)
                .filter(|&x| chains.iter().filter(|c| c.contains(x)).all(|c| c.intersects(z)))
                .collect()
        }))
    }

    /// `jZ = {x : ∀x'⊑x ∃x''⩽x' x'' ∈ Z}` for an order `⩽` contained in `⊑`.
    pub fn fm(h: &DownsetAlgebra, secondary: &Poset) -> Result<Nucleus> {
        let p = &h.poset;
        if secondary.len() != p.len() {
            return Err(Error::Precondition(format!(
                "secondary order has {} elements, expected {}",
                secondary.len(),
                p.len()
            )));
        }
        for x in 0..p.len() {
            if let Some(y) = (secondary.down(x) - p.down(x)).first() {
                return Err(Error::Precondition(format!(
                    "secondary order is not contained in the refinement order: {} ⩽ {} but {} ⋢ {}",
                    p.name(y),
                    p.name(x),
                    p.name(y),
                    p.name(x)
                )));
            }
        }
        let below: Vec<ElementSet> = (0..p.len()).map(|x| secondary.down(x)).collect();
        Ok(Nucleus::from_fn(h, NucleusKind::Fm(below.clone()), |z| {
            (0..p.len())
                .filter(|&x| p.down(x).iter().all(|x1| below[x1].intersects(z)))
                .collect()
        }))
    }

    pub fn apply(&self, u: ElementSet) -> ElementSet {
        let k = self
            .domain
            .binary_search(&u)
            .unwrap_or_else(|_| panic!("{u:?} is not a downset of the nucleus domain"));
        self.images[k]
    }

    /// `{a : ja = a}`, sorted.
    pub fn fixpoints(&self) -> Vec<ElementSet> {
        self.domain
            .iter()
            .zip(&self.images)
            .filter(|(a, b)| a == b)
            .map(|(&a, _)| a)
            .collect()
    }

    pub fn is_dense(&self) -> bool {
        self.apply(ElementSet::EMPTY).is_empty()
    }

    pub fn table(&self) -> impl Iterator<Item = (ElementSet, ElementSet)> + '_ {
        self.domain.iter().copied().zip(self.images.iter().copied())
    }
}

/// Maximal chains of a finite poset, as paths of covers from a maximal to a minimal element.
pub fn maximal_chains(poset: &Poset) -> Result<Vec<ElementSet>> {
    let n = poset.len();
    let covers: Vec<ElementSet> = (0..n)
        .map(|x| {
            let strict = poset.down(x).without(x);
            strict
                .iter()
                .filter(|&y| !strict.iter().any(|z| z != y && poset.lt(y, z)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, ElementSet)> = (0..n)
        .filter(|&x| poset.up(x).len() == 1)
        .map(|x| (x, ElementSet::singleton(x)))
        .collect();
    while let Some((x, chain)) = stack.pop() {
        if covers[x].is_empty() {
            out.push(chain);
            if out.len() > CHAIN_CAP {
                return Err(Error::cap("maximal chains", CHAIN_CAP as u64, out.len() as u64));
            }
            continue;
        }
        for y in covers[x] {
            stack.push((y, chain.with(y)));
        }
    }
    out.sort();
    Ok(out)
}

/// Checks that `j` maps downsets to downsets and is inflationary, idempotent
/// and multiplicative, reporting the first failure.
pub fn check_nucleus(h: &DownsetAlgebra, j: &Nucleus) -> Verdict {
    let p = &h.poset;
    if j.domain != h.downsets {
        return Err(Violation::new("domain", "table is not over this downset lattice"));
    }
    for (a, ja) in j.table() {
        if h.index_of(ja).is_none() {
            return Err(Violation::new(
                "downset-valued",
                format!("j{} = {}", p.show(a), p.show(ja)),
            ));
        }
    }
    for (a, ja) in j.table() {
        if !a.is_subset(ja) {
            return Err(Violation::new("inflationary", format!("j{} = {}", p.show(a), p.show(ja))));
        }
    }
    for (a, ja) in j.table() {
        let jja = j.apply(ja);
        if jja != ja {
            return Err(Violation::new(
                "idempotent",
                format!("j{} = {} but jj{} = {}", p.show(a), p.show(ja), p.show(a), p.show(jja)),
            ));
        }
    }
    for (a, ja) in j.table() {
        for (b, jb) in j.table() {
            let jab = j.apply(a & b);
            if jab != ja & jb {
                return Err(Violation::new(
                    "multiplicative",
                    format!(
                        "j({} ∩ {}) = {} but j{} ∩ j{} = {}",
                        p.show(a),
                        p.show(b),
                        p.show(jab),
                        p.show(a),
                        p.show(b),
                        p.show(ja & jb)
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// `H_j`: the fixpoints of `j` with `0 = j∅`, `∧ = ∩`, `∨ = j∘∪` and `→` unchanged.
#[derive(Clone, Debug)]
pub struct FixpointAlgebra {
    pub poset: Poset,
    /// Fixpoints, sorted by bit pattern.
    pub elements: Vec<ElementSet>,
    nucleus: Nucleus,
}

impl FixpointAlgebra {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> ElementSet {
        self.nucleus.apply(ElementSet::EMPTY)
    }

    pub fn top(&self) -> ElementSet {
        self.poset.all()
    }

    pub fn meet(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        a & b
    }

    pub fn join(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        self.nucleus.apply(a | b)
    }

    pub fn implies(&self, a: ElementSet, b: ElementSet) -> ElementSet {
        self.poset.interior(a.complement(self.poset.len()) | b)
    }

    pub fn contains(&self, a: ElementSet) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    /// Closure of the carrier under the operations, and residuation.
    pub fn check_heyting(&self) -> Verdict {
        let p = &self.poset;
        let closed = |what: &str, v: ElementSet| {
            if self.contains(v) {
                Ok(())
            } else {
                Err(Violation::new(
                    "closure",
                    format!("{what} gives {}, not a fixpoint", p.show(v)),
                ))
            }
        };
        closed("bottom", self.bottom())?;
        closed("top", self.top())?;
        for &a in &self.elements {
            for &b in &self.elements {
                closed("meet", self.meet(a, b))?;
                closed("join", self.join(a, b))?;
                let ab = self.implies(a, b);
                closed("implication", ab)?;
                for &x in &self.elements {
                    if self.meet(a, x).is_subset(b) != x.is_subset(ab) {
                        return Err(Violation::new(
                            "residuation",
                            format!("a = {}, b = {}, x = {}", p.show(a), p.show(b), p.show(x)),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every element has a complement: `a ∧ ¬a = 0` and `a ∨ ¬a = 1`.
    pub fn is_boolean(&self) -> bool {
        let zero = self.bottom();
        self.elements.iter().all(|&a| {
            let na = self.implies(a, zero);
            self.meet(a, na) == zero && self.join(a, na) == self.top()
        })
    }

    /// The lattice `(H_j, ⊆)`.
    pub fn lattice(&self) -> Result<FiniteLattice> {
        FiniteLattice::from_sets(&self.poset, &self.elements)
    }

    /// The algebra as a Boolean algebra, if it is one.
    pub fn boolean_algebra(&self) -> Result<FiniteBooleanAlgebra> {
        let names: Vec<String> = self.elements.iter().map(|&u| self.poset.label(u)).collect();
        FiniteBooleanAlgebra::from_order(names, |a, b| self.elements[a].is_subset(self.elements[b]))
    }
}

/// The fixpoint algebra of a nucleus; fails unless `j` passes [`check_nucleus`].
pub fn fixpoint_algebra(h: &DownsetAlgebra, j: &Nucleus) -> Result<FixpointAlgebra> {
    check_nucleus(h, j).map_err(|v| Error::NotNucleus(v.to_string()))?;
    Ok(FixpointAlgebra {
        poset: h.poset.clone(),
        elements: j.fixpoints(),
        nucleus: j.clone(),
    })
}

// ---------------------------------------------------------------------------
// Finite lattices

/// A finite lattice with meet and join tables derived from its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    below: Vec<ElementSet>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds a lattice from `leq(a, b)` meaning `a ≤ b`; fails unless every
    /// pair has a meet and a join.
    pub fn from_order<S: Into<String>>(names: Vec<S>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
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
        let t = LatticeTables::derive(&below).map_err(Error::NotLattice)?;
        Ok(FiniteLattice {
            names,
            below,
            meet: t.meet,
            join: t.join,
            bottom: t.bottom,
            top: t.top,
        })
    }

    /// Sets ordered by inclusion, named by their labels in `poset`.
    pub fn from_sets(poset: &Poset, sets: &[ElementSet]) -> Result<Self> {
        let names: Vec<String> = sets.iter().map(|&u| poset.label(u)).collect();
        FiniteLattice::from_order(names, |a, b| sets[a].is_subset(sets[b]))
    }

    /// `0 < 1 < … < n-1`, named by the numbers.
    pub fn chain(n: usize) -> Result<Self> {
        FiniteLattice::from_order((0..n).map(|i| i.to_string()).collect(), |a, b| a <= b)
    }

    /// The five-element nondistributive diamond `0 < a, b, c < 1`.
    pub fn m3() -> Self {
        FiniteLattice::from_order(vec!["0", "a", "b", "c", "1"], |x, y| x == y || x == 0 || y == 4)
            .expect("M3 is a lattice")
    }

    /// The five-element nondistributive pentagon `0 < a < c < 1`, `0 < b < 1`.
    pub fn n5() -> Self {
        FiniteLattice::from_order(vec!["0", "a", "b", "c", "1"], |x, y| {
            x == y || x == 0 || y == 4 || (x == 1 && y == 3)
        })
        .expect("N5 is a lattice")
    }

    pub fn from_boolean(b: &FiniteBooleanAlgebra) -> Self {
        FiniteLattice::from_order(b.names().to_vec(), |x, y| b.leq(x, y)).expect("Boolean algebras are lattices")
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

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn below(&self, a: usize) -> ElementSet {
        self.below[a]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all(&self, xs: ElementSet) -> usize {
        xs.iter().fold(self.bottom, |acc, x| self.join[acc][x])
    }

    pub fn is_distributive(&self) -> bool {
        self.tables().distributivity_failure().is_none()
    }

    fn tables(&self) -> LatticeTables {
        LatticeTables {
            meet: self.meet.clone(),
            join: self.join.clone(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    fn subsets(&self) -> Result<impl Iterator<Item = ElementSet>> {
        let n = self.len();
        if n > SUBSET_CAP {
            return Err(Error::cap("lattice size for subset enumeration", SUBSET_CAP as u64, n as u64));
        }
        Ok((0..1u64 << n).map(ElementSet::from_bits))
    }

    /// `a ∧ ⋁X = ⋁{a ∧ x : x ∈ X}` for every element `a` and subset `X`.
    pub fn is_locale(&self) -> Result<Verdict> {
        for xs in self.subsets()? {
            let j = self.join_all(xs);
            for a in 0..self.len() {
                let lhs = self.meet[a][j];
                let rhs = xs.iter().fold(self.bottom, |acc, x| self.join[acc][self.meet[a][x]]);
                if lhs != rhs {
                    let set: Vec<&str> = xs.iter().map(|x| self.name(x)).collect();
                    return Ok(Err(Violation::new(
                        "join-infinite distributivity",
                        format!(
                            "{} ∧ ⋁{{{}}} = {} but the join of the meets is {}",
                            self.name(a),
                            set.join(","),
                            self.name(lhs),
                            self.name(rhs)
                        ),
                    )));
                }
            }
        }
        Ok(Ok(()))
    }

    /// Elements `a` with `a ≤ ⋁X` only if `a ≤ x` for some `x ∈ X`, for every subset `X`.
    pub fn completely_join_primes(&self) -> Result<Vec<usize>> {
        let subsets: Vec<ElementSet> = self.subsets()?.collect();
        Ok((0..self.len())
            .filter(|&a| {
                subsets
                    .iter()
                    .all(|&xs| !self.leq(a, self.join_all(xs)) || xs.iter().any(|x| self.leq(a, x)))
            })
            .collect())
    }

    /// Every element is the join of the completely join-prime elements below it.
    pub fn is_join_prime_generated(&self) -> Result<bool> {
        let primes: ElementSet = self.completely_join_primes()?.into_iter().collect();
        Ok((0..self.len()).all(|a| self.join_all(self.below[a] & primes) == a))
    }

    /// The poset of completely join-prime elements with the restricted order.
    pub fn join_prime_poset(&self) -> Result<(Poset, Vec<usize>)> {
        let primes = self.completely_join_primes()?;
        let names: Vec<String> = primes.iter().map(|&a| self.names[a].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in primes.iter().enumerate() {
            for (k, &b) in primes.iter().enumerate() {
                if i != k && self.leq(a, b) {
                    pairs.push((i, k));
                }
            }
        }
        Ok((Poset::new(names, &pairs)?, primes))
    }
}

/// An order isomorphism from `l1` onto `l2`, if any.
pub fn lattice_isomorphism(l1: &FiniteLattice, l2: &FiniteLattice) -> Option<Vec<usize>> {
    let n = l1.len();
    if n != l2.len() {
        return None;
    }
    let above = |l: &FiniteLattice, a: usize| (0..l.len()).filter(|&b| l.leq(a, b)).count();
    let sig1: Vec<(usize, usize)> = (0..n).map(|a| (l1.below(a).len(), above(l1, a))).collect();
    let sig2: Vec<(usize, usize)> = (0..n).map(|a| (l2.below(a).len(), above(l2, a))).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = ElementSet::EMPTY;
    fn extend(
        k: usize,
        l1: &FiniteLattice,
        l2: &FiniteLattice,
        sig1: &[(usize, usize)],
        sig2: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut ElementSet,
    ) -> bool {
        if k == map.len() {
            return true;
        }
        for c in 0..map.len() {
            if used.contains(c) || sig1[k] != sig2[c] {
                continue;
            }
            let consistent = (0..k).all(|a| l1.leq(a, k) == l2.leq(map[a], c) && l1.leq(k, a) == l2.leq(c, map[a]));
            if !consistent {
                continue;
            }
            map[k] = c;
            used.insert(c);
            if extend(k + 1, l1, l2, sig1, sig2, map, used) {
                return true;
            }
            used.remove(c);
        }
        false
    }
    extend(0, l1, l2, &sig1, &sig2, &mut map, &mut used).then_some(map)
}

pub fn lattices_isomorphic(l1: &FiniteLattice, l2: &FiniteLattice) -> bool {
    lattice_isomorphism(l1, l2).is_some()
}

/// `L₊ = L ∖ {0}` with the dense nucleus `jX = ↓⋁X` on its downsets.
#[derive(Clone, Debug)]
pub struct Dragalin {
    pub algebra: DownsetAlgebra,
    pub nucleus: Nucleus,
    /// `map[x]` is the lattice element at position `x` of the poset.
    pub map: Vec<usize>,
}

pub fn dragalin_represent(l: &FiniteLattice) -> Result<Dragalin> {
    if let Err(v) = l.is_locale()? {
        return Err(Error::NotLocale(v.to_string()));
    }
    if l.len() < 2 {
        return Err(Error::Degenerate);
    }
    let map: Vec<usize> = (0..l.len()).filter(|&a| a != l.bottom()).collect();
    let names: Vec<String> = map.iter().map(|&a| l.name(a).to_string()).collect();
    let mut pairs = Vec::new();
    for (i, &a) in map.iter().enumerate() {
        for (k, &b) in map.iter().enumerate() {
            if i != k && l.leq(a, b) {
                pairs.push((i, k));
            }
        }
    }
    let algebra = DownsetAlgebra::new(Poset::new(names, &pairs)?)?;
    let nucleus = Nucleus::from_fn(&algebra, NucleusKind::Dragalin, |xs| {
        let top = l.join_all(xs.iter().map(|x| map[x]).collect());
        (0..map.len()).filter(|&y| l.leq(map[y], top)).collect()
    });
    Ok(Dragalin {
        algebra,
        nucleus,
        map,
    })
}

// ---------------------------------------------------------------------------
// Nuclear semantics

/// Truth set of `f` with `⊥ = j∅`, `∨ = j∘∪`, `⩔ = ∪`, Heyting `→` and `¬φ = φ → ⊥`.
pub fn nuclear_truth_set(h: &DownsetAlgebra, j: &Nucleus, valuation: &Valuation, f: &Formula) -> Result<ElementSet> {
    for (p, &u) in valuation {
        if h.index_of(u).is_none() || j.apply(u) != u {
            return Err(Error::InvalidModel(format!(
                "value {} of `{p}` is not a fixpoint of the nucleus",
                h.poset.show(u)
            )));
        }
    }
    nuclear_value(h, j, valuation, f)
}

fn nuclear_value(h: &DownsetAlgebra, j: &Nucleus, val: &Valuation, f: &Formula) -> Result<ElementSet> {
    let v = |g: &Formula| nuclear_value(h, j, val, g);
    Ok(match f {
        Formula::Falsum => j.apply(ElementSet::EMPTY),
        Formula::Var(p) => *val.get(p).ok_or_else(|| Error::UnboundVariable(p.clone()))?,
        Formula::Not(a) => h.implies(v(a)?, j.apply(ElementSet::EMPTY)),
        Formula::And(a, b) => v(a)? & v(b)?,
        Formula::Or(a, b) => j.apply(v(a)? | v(b)?),
        Formula::Implies(a, b) => h.implies(v(a)?, v(b)?),
        Formula::Iff(a, b) => {
            let (a, b) = (v(a)?, v(b)?);
            h.implies(a, b) & h.implies(b, a)
        }
        Formula::InqOr(a, b) => v(a)? | v(b)?,
        other => {
            return Err(Error::Fragment(format!(
                "nuclear semantics has no clause for `{other}`"
            )))
        }
    })
}

pub fn nuclear_eval(h: &DownsetAlgebra, j: &Nucleus, valuation: &Valuation, x: usize, f: &Formula) -> Result<bool> {
    if x >= h.poset.len() {
        return Err(Error::IndexOutOfRange {
            index: x,
            size: h.poset.len(),
        });
    }
    Ok(nuclear_truth_set(h, j, valuation, f)?.contains(x))
}
