//! Finite posets of possibilities and their regular open sets.
//!
//! `x ⊑ y` reads "x refines y". A set of possibilities is a proposition
//! exactly when it is *regular open*: a downset `U` with `U = int(cl(U))`.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

/// Largest carrier an [`ElementSet`] can index.
pub const MAX_ELEMENTS: usize = 64;

/// Default size cap for exhaustive regular-open enumeration.
pub const DEFAULT_RO_CAP: usize = 20;

/// A set of element indices of some fixed carrier, stored as a bit pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ELEMENTS);
        ElementSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(ElementSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        ElementSet(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        ElementSet(self.0 & !(1u64 << i))
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    /// Complement relative to a carrier of size `n`.
    pub fn complement(self, n: usize) -> Self {
        ElementSet(!self.0 & ElementSet::full(n).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::from_indices(iter)
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite nonempty poset `(S, ⊑)`.
///
/// Stored as principal downsets and upsets, one bit pattern per element.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs`, where `(a, b)` means `a ⊑ b`.
    pub fn new<S: Into<String>>(names: Vec<S>, pairs: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        check_carrier(&names)?;
        let mut down: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(a, b) in pairs {
            for i in [a, b] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, size: n });
                }
            }
            down[b].insert(a);
        }
        // Warshall over bit rows.
        for k in 0..n {
            for x in 0..n {
                if down[x].contains(k) {
                    down[x] = down[x] | down[k];
                }
            }
        }
        for x in 0..n {
            for y in down[x].without(x) {
                if down[y].contains(x) {
                    return Err(Error::NotAntisymmetric(names[y].clone(), names[x].clone()));
                }
            }
        }
        Ok(Poset::from_downsets(names, down))
    }

    /// Like [`Poset::new`] but with pairs given by element name.
    pub fn from_named(names: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let lookup = |s: &str| {
            names
                .iter()
                .position(|n| *n == s)
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let idx = pairs
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::new(names.to_vec(), &idx)
    }

    /// Closure of the relation `rel(a, b)` meaning `a ⊑ b`, with default names `0..n`.
    pub fn from_relation(n: usize, rel: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && rel(a, b))
            .collect();
        Poset::new(default_names(n), &pairs)
    }

    fn from_downsets(names: Vec<String>, down: Vec<ElementSet>) -> Self {
        let n = names.len();
        let mut up = vec![ElementSet::EMPTY; n];
        for (y, d) in down.iter().enumerate() {
            for x in d.iter() {
                up[x].insert(y);
            }
        }
        Poset { names, down, up }
    }

    /// `n` pairwise incomparable elements; every element is a world.
    pub fn discrete(n: usize) -> Result<Self> {
        Poset::new(default_names(n), &[])
    }

    /// The chain `0 ⊑ 1 ⊑ .. ⊑ n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::new(default_names(n), &pairs)
    }

    /// Full binary tree of the given depth; the root is `e`, children append `0`/`1`.
    /// A node refines its ancestors.
    pub fn binary_tree(depth: usize) -> Result<Self> {
        let mut names = vec!["e".to_string()];
        let mut pairs = Vec::new();
        let mut level = vec![(0usize, String::new())];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (parent, label) in &level {
                for bit in ["0", "1"] {
                    let child = format!("{label}{bit}");
                    names.push(child.clone());
                    pairs.push((names.len() - 1, *parent));
                    next.push((names.len() - 1, child));
                }
            }
            level = next;
        }
        Poset::new(names, &pairs)
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

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Set of named elements.
    pub fn set_of(&self, names: &[&str]) -> Result<ElementSet> {
        names.iter().map(|n| self.element(n)).collect()
    }

    /// `x ⊑ y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// `x ⊏ y`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `↓x`, unchecked.
    pub fn down(&self, x: usize) -> ElementSet {
        self.down[x]
    }

    /// `↑x`, unchecked.
    pub fn up(&self, x: usize) -> ElementSet {
        self.up[x]
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// `↓x = {y : y ⊑ x}`.
    pub fn principal_downset(&self, x: usize) -> Result<ElementSet> {
        if x >= self.len() {
            return Err(Error::IndexOutOfRange {
                index: x,
                size: self.len(),
            });
        }
        Ok(self.down[x])
    }

    /// `↓x ∩ ↓y ≠ ∅`.
    pub fn compatible(&self, x: usize, y: usize) -> bool {
        self.down[x].intersects(self.down[y])
    }

    /// `↓U`.
    pub fn downset_of(&self, u: ElementSet) -> ElementSet {
        u.iter().fold(ElementSet::EMPTY, |acc, x| acc | self.down[x])
    }

    /// `↑U`.
    pub fn upset_of(&self, u: ElementSet) -> ElementSet {
        u.iter().fold(ElementSet::EMPTY, |acc, x| acc | self.up[x])
    }

    pub fn is_downset(&self, u: ElementSet) -> bool {
        u.iter().all(|x| self.down[x].is_subset(u))
    }

    /// `int(U) = {x : ∀x' ⊑ x, x' ∈ U}`.
    pub fn interior(&self, u: ElementSet) -> ElementSet {
        (0..self.len()).filter(|&x| self.down[x].is_subset(u)).collect()
    }

    /// `cl(U) = {x : ∃x' ⊑ x, x' ∈ U}`.
    pub fn closure(&self, u: ElementSet) -> ElementSet {
        self.upset_of(u)
    }

    /// `int(cl(U))`.
    pub fn regularize(&self, u: ElementSet) -> ElementSet {
        self.interior(self.closure(u))
    }

    pub fn is_regular_open(&self, u: ElementSet) -> bool {
        u.is_subset(self.all()) && self.regularize(u) == u
    }

    /// Pseudocomplement `¬U = {x : ∀x' ⊑ x, x' ∉ U}`.
    pub fn neg(&self, u: ElementSet) -> ElementSet {
        self.interior(u.complement(self.len()))
    }

    /// Join in the regular open algebra.
    pub fn ro_join(&self, u: ElementSet, v: ElementSet) -> ElementSet {
        self.regularize(u | v)
    }

    /// Elements ordered so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].len(), x));
        order
    }

    /// All downsets, sorted by bit pattern.
    pub fn enumerate_downsets(&self, cap: usize) -> Result<Vec<ElementSet>> {
        if self.len() > cap {
            return Err(Error::cap("poset size", cap as u64, self.len() as u64));
        }
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, ElementSet::EMPTY)];
        while let Some((k, acc)) = stack.pop() {
            if k == order.len() {
                out.push(acc);
                continue;
            }
            let x = order[k];
            stack.push((k + 1, acc));
            if self.down[x].without(x).is_subset(acc) {
                stack.push((k + 1, acc.with(x)));
            }
        }
        out.sort();
        Ok(out)
    }

    /// All regular open sets, sorted by bit pattern. Size-capped at [`DEFAULT_RO_CAP`].
    pub fn enumerate_regular_opens(&self) -> Result<Vec<ElementSet>> {
        self.enumerate_regular_opens_capped(DEFAULT_RO_CAP)
    }

    pub fn enumerate_regular_opens_capped(&self, cap: usize) -> Result<Vec<ElementSet>> {
        let mut out: Vec<ElementSet> = self
            .enumerate_downsets(cap)?
            .into_iter()
            .filter(|&u| self.regularize(u) == u)
            .collect();
        out.sort();
        Ok(out)
    }

    /// Every principal downset is regular open.
    pub fn is_separative(&self) -> bool {
        (0..self.len()).all(|x| self.is_regular_open(self.down[x]))
    }

    /// The separative condition in its pointwise form, for cross-checking:
    /// `y ⋢ x` implies some `z ⊑ y` with `↓z ∩ ↓x = ∅`.
    pub fn is_separative_pointwise(&self) -> bool {
        (0..self.len()).all(|x| {
            (0..self.len())
                .filter(|&y| !self.leq(y, x))
                .all(|y| self.down[y].iter().any(|z| !self.compatible(z, x)))
        })
    }

    /// The ⊑-minimal elements.
    pub fn worlds(&self) -> ElementSet {
        (0..self.len()).filter(|&x| self.down[x].len() == 1).collect()
    }

    /// Quotient by `x ∼ y` iff each is densely below the other, ordered by
    /// `[x] ⊑ [y]` iff `x ∈ int(cl(↓y))`. Returns the quotient and the class
    /// index of every original element. Classes are numbered by least member.
    pub fn separative_quotient(&self) -> (Poset, Vec<usize>) {
        let n = self.len();
        let dense: Vec<ElementSet> = (0..n).map(|y| self.regularize(self.down[y])).collect();
        let below = |x: usize, y: usize| dense[y].contains(x);
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if class[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for y in x..n {
                if below(x, y) && below(y, x) {
                    class[y] = c;
                }
            }
        }
        let names: Vec<String> = reps
            .iter()
            .map(|&r| {
                (r..n)
                    .filter(|&y| class[y] == class[r])
                    .map(|y| self.names[y].as_str())
                    .collect::<Vec<_>>()
                    .join("~")
            })
            .collect();
        let down: Vec<ElementSet> = reps
            .iter()
            .map(|&ry| {
                reps.iter()
                    .enumerate()
                    .filter(|&(_, &rx)| below(rx, ry))
                    .map(|(c, _)| c)
                    .collect()
            })
            .collect();
        (Poset::from_downsets(names, down), class)
    }

    /// Restriction to `keep`; returns the subposet and the original index of each new element.
    pub fn subposet(&self, keep: ElementSet) -> Result<(Poset, Vec<usize>)> {
        let map: Vec<usize> = keep.iter().filter(|&x| x < self.len()).collect();
        if map.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let names = map.iter().map(|&x| self.names[x].clone()).collect();
        let down = map
            .iter()
            .map(|&y| {
                map.iter()
                    .enumerate()
                    .filter(|&(_, &x)| self.leq(x, y))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        Ok((Poset::from_downsets(names, down), map))
    }

    /// Renders a set with element names, e.g. `{a,b}`.
    pub fn show(&self, u: ElementSet) -> String {
        let parts: Vec<&str> = u.iter().map(|x| self.names[x].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Label for a set used as an element name elsewhere: members joined by `+`, or `none`.
    pub fn label(&self, u: ElementSet) -> String {
        if u.is_empty() {
            return "none".to_string();
        }
        u.iter()
            .map(|x| self.names[x].as_str())
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pairs = Vec::new();
        for y in 0..self.len() {
            for x in self.down[y].without(y) {
                pairs.push(format!("{}<{}", self.names[x], self.names[y]));
            }
        }
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("order", &pairs)
            .finish()
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_carrier(names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    if names.len() > MAX_ELEMENTS {
        return Err(Error::TooLarge(names.len()));
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::DuplicateName(a.clone()));
        }
    }
    Ok(())
}
