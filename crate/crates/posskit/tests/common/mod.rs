//! Random structure generators and brute-force oracles shared by the
//! integration tests and the acceptance runner. The oracles work from the
//! order relation alone and never call the library's set operations.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};

use posskit::fomodel::{FOFormula, FOModel, Term};
use posskit::frames::PossibilityFrame;
use posskit::heyting::FiniteLattice;
use posskit::modal::{NeighborhoodFrame, Relation, RelationalFrame, Valuation};
use posskit::syntax::Formula;
use posskit::{ElementSet, Poset};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

pub fn set(bits: u64) -> ElementSet {
    ElementSet::from_bits(bits)
}

// ---------------------------------------------------------------------------
// Posets

/// A random poset on `1..=max` elements.
pub fn random_poset(rng: &mut StdRng, max: usize) -> Poset {
    let n = rng.gen_range(1..=max);
    let density = rng.gen_range(0.15..0.6);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    Poset::new(names(n), &pairs).expect("acyclic by construction")
}

/// Every poset on `n ≥ 1` elements up to isomorphism (1, 2, 5, 16, 63 for n = 1..=5).
pub fn all_posets(n: usize) -> Vec<Poset> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << slots.len()) {
        let mut le = vec![vec![false; n]; n];
        for (k, &(i, j)) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                le[i][j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(le[i][j] && le[j][k]) || le[i][k]))
        });
        if !transitive {
            continue;
        }
        // Canonical form: the least strict-order bit pattern over all relabelings.
        let key = perms
            .iter()
            .map(|p| {
                let mut code = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        code = code << 1 | u64::from(i != j && le[p[i]][p[j]]);
                    }
                }
                code
            })
            .min()
            .unwrap_or(0);
        if seen.insert(key) {
            let pairs: Vec<(usize, usize)> = slots.iter().copied().filter(|&(i, j)| le[i][j]).collect();
            out.push(Poset::new(names(n), &pairs).expect("transitive and acyclic"));
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Regular opens and boxes, straight from the definitions

/// Persistence and refinability, quantifying over the order directly.
pub fn oracle_is_ro(p: &Poset, u: ElementSet) -> bool {
    let n = p.len();
    let inside = |x: usize| u.bits() >> x & 1 == 1;
    for x in 0..n {
        if inside(x) {
            if (0..n).any(|y| p.leq(y, x) && !inside(y)) {
                return false;
            }
        } else {
            let refines = (0..n).any(|x1| p.leq(x1, x) && (0..n).all(|x2| !p.leq(x2, x1) || !inside(x2)));
            if !refines {
                return false;
            }
        }
    }
    true
}

pub fn oracle_regular_opens(p: &Poset) -> Vec<ElementSet> {
    (0..1u64 << p.len()).map(set).filter(|&u| oracle_is_ro(p, u)).collect()
}

/// `{x : ∀y (x R y → y ∈ U)}`.
pub fn oracle_box(n: usize, rel: &dyn Fn(usize, usize) -> bool, u: ElementSet) -> ElementSet {
    let bits = (0..n)
        .filter(|&x| (0..n).all(|y| !rel(x, y) || u.bits() >> y & 1 == 1))
        .fold(0u64, |acc, x| acc | 1 << x);
    set(bits)
}

pub fn oracle_ro_closed_under_box(p: &Poset, r: &Relation) -> bool {
    let n = p.len();
    let rel = |x: usize, y: usize| r.contains(x, y);
    oracle_regular_opens(p)
        .into_iter()
        .all(|u| oracle_is_ro(p, oracle_box(n, &rel, u)))
}

/// up-R, R-down and R-refinability from their first-order statements.
pub fn oracle_paradigm(p: &Poset, r: &Relation) -> bool {
    let n = p.len();
    let le = |a: usize, b: usize| p.leq(a, b);
    let rr = |a: usize, b: usize| r.contains(a, b);
    let up = (0..n).all(|x| {
        (0..n).all(|x1| !le(x1, x) || (0..n).all(|y1| !rr(x1, y1) || rr(x, y1)))
    });
    let down = (0..n).all(|x| (0..n).all(|y| !rr(x, y) || (0..n).all(|y1| !le(y1, y) || rr(x, y1))));
    let refine = (0..n).all(|x| {
        (0..n).all(|y| {
            !rr(x, y)
                || (0..n).any(|x1| {
                    le(x1, x) && (0..n).all(|x2| !le(x2, x1) || (0..n).any(|y1| le(y1, y) && rr(x2, y1)))
                })
        })
    });
    up && down && refine
}

// ---------------------------------------------------------------------------
// Relations and relational frames

pub fn random_relation(rng: &mut StdRng, n: usize) -> Relation {
    let density = rng.gen_range(0.1..0.7);
    let cells: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(density)).collect();
    Relation::from_fn(n, |x, y| cells[x * n + y])
}

/// A relation satisfying up-R, R-down and R-refinability on `p`: a random
/// seed relation is pushed up along `⊑` and closed downward, then checked.
pub fn random_paradigm_relation(rng: &mut StdRng, p: &Poset) -> Relation {
    let n = p.len();
    for _ in 0..64 {
        let seed = random_relation(rng, n);
        let r = Relation::from_fn(n, |x, y| {
            (0..n).any(|x1| p.leq(x1, x) && (0..n).any(|z| seed.contains(x1, z) && p.leq(y, z)))
        });
        if oracle_paradigm(p, &r) {
            return r;
        }
    }
    // ⊑ itself is always paradigm.
    Relation::from_fn(n, |x, y| p.leq(y, x))
}

/// A full relational frame on a random poset; relations are either paradigm
/// or arbitrary ones that happen to keep the regular opens closed under `□`.
pub fn random_full_frame(rng: &mut StdRng, max: usize, indices: &[&str]) -> RelationalFrame {
    loop {
        let p = random_poset(rng, max);
        let mut rels = BTreeMap::new();
        for &i in indices {
            let r = if rng.gen_bool(0.5) {
                random_paradigm_relation(rng, &p)
            } else {
                let r = random_relation(rng, p.len());
                if !oracle_ro_closed_under_box(&p, &r) {
                    random_paradigm_relation(rng, &p)
                } else {
                    r
                }
            };
            rels.insert(i.to_string(), r);
        }
        if let Ok(f) = RelationalFrame::full(p, rels) {
            if f.validate().is_ok() {
                return f;
            }
        }
    }
}

pub fn random_paradigm_frame(rng: &mut StdRng, max: usize, indices: &[&str]) -> RelationalFrame {
    let p = random_poset(rng, max);
    let rels = indices
        .iter()
        .map(|&i| (i.to_string(), random_paradigm_relation(rng, &p)))
        .collect();
    RelationalFrame::full(p, rels).expect("paradigm frames are full frames")
}

pub fn random_valuation(rng: &mut StdRng, admissible: &[ElementSet], vars: &[&str]) -> Valuation {
    vars.iter()
        .map(|&v| (v.to_string(), *admissible.choose(rng).expect("nonempty family")))
        .collect()
}

// ---------------------------------------------------------------------------
// Formulas

#[derive(Clone, Copy)]
pub struct FormulaShape<'a> {
    pub vars: &'a [&'a str],
    pub indices: &'a [&'a str],
    pub derived: bool,
    pub quantifiers: bool,
    pub inquisitive: bool,
}

pub fn random_formula(rng: &mut StdRng, depth: usize, shape: FormulaShape<'_>) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.1) {
            Formula::Falsum
        } else {
            Formula::var(shape.vars.choose(rng).expect("some variable"))
        };
    }
    let d = depth - 1;
    let sub = |rng: &mut StdRng| random_formula(rng, d, shape);
    let mut choices = vec![0, 1];
    if !shape.indices.is_empty() {
        choices.push(2);
    }
    if shape.derived {
        choices.extend([3, 4, 5]);
        if !shape.indices.is_empty() {
            choices.push(6);
        }
    }
    if shape.quantifiers {
        choices.extend([7, 8]);
    }
    if shape.inquisitive {
        choices.push(9);
    }
    match *choices.choose(rng).expect("nonempty") {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::boxed(shape.indices.choose(rng).expect("index"), sub(rng)),
        3 => Formula::or(sub(rng), sub(rng)),
        4 => Formula::implies(sub(rng), sub(rng)),
        5 => Formula::iff(sub(rng), sub(rng)),
        6 => Formula::diamond(shape.indices.choose(rng).expect("index"), sub(rng)),
        7 => Formula::forall(shape.vars.choose(rng).expect("var"), sub(rng)),
        8 => Formula::exists(shape.vars.choose(rng).expect("var"), sub(rng)),
        _ => Formula::inq_or(sub(rng), sub(rng)),
    }
}

// ---------------------------------------------------------------------------
// Neighborhood frames

/// A neighborhood frame on indices `0` and `Q` satisfying both N-conditions,
/// with every admissible set regular open.
pub fn random_nb_frame(rng: &mut StdRng, max: usize) -> NeighborhoodFrame {
    loop {
        let p = random_poset(rng, max);
        let base = PossibilityFrame::full(p.clone()).expect("small poset");
        let ro = base.admissible.clone();
        let mut rows = BTreeMap::new();
        for i in ["0", "Q"] {
            let table: Vec<Vec<ElementSet>> = if rng.gen_bool(0.3) {
                let row: Vec<ElementSet> = ro.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                vec![row; p.len()]
            } else {
                let seed: Vec<Vec<ElementSet>> = (0..p.len())
                    .map(|_| ro.iter().copied().filter(|_| rng.gen_bool(0.3)).collect())
                    .collect();
                (0..p.len())
                    .map(|x| {
                        let mut row: Vec<ElementSet> =
                            (0..p.len()).filter(|&y| p.leq(x, y)).flat_map(|y| seed[y].clone()).collect();
                        row.sort();
                        row.dedup();
                        row
                    })
                    .collect()
            };
            let mut table = table;
            if i == "0" {
                // Keep □⊤ valid so a countermodel has to come from Split itself.
                for row in &mut table {
                    row.push(p.all());
                    row.sort();
                    row.dedup();
                }
            }
            rows.insert(i.to_string(), table);
        }
        if !rows.values().all(|t| oracle_n_refinable(&p, &ro, t)) {
            continue;
        }
        let frame = NeighborhoodFrame::new(base, rows).expect("admissible neighborhoods");
        if frame.validate().is_ok() {
            return frame;
        }
    }
}

fn oracle_n_refinable(p: &Poset, ro: &[ElementSet], table: &[Vec<ElementSet>]) -> bool {
    let n = p.len();
    (0..n).all(|x| {
        ro.iter().all(|u| {
            table[x].contains(u)
                || (0..n).any(|x1| p.leq(x1, x) && (0..n).all(|x2| !p.leq(x2, x1) || !table[x2].contains(u)))
        })
    })
}

// ---------------------------------------------------------------------------
// First-order models

/// A valid first-order model with predicates `P/1`, `R/2`, function `f/1`
/// and constant `c`. Each world carries a classical structure up to its own
/// equivalence; a possibility sees the intersection over the worlds below it.
/// Functions are then made partial above a random possibility.
pub fn random_fo_model(rng: &mut StdRng, max_s: usize, max_d: usize, modal: bool) -> FOModel {
    let p = random_poset(rng, max_s);
    let n = p.len();
    let d = rng.gen_range(1..=max_d);
    let guises: Vec<String> = (0..d).map(|a| format!("g{a}")).collect();
    let mut m = FOModel::new(p.clone(), guises).expect("nonempty");
    let worlds: Vec<usize> = (0..n).filter(|&s| (0..n).all(|t| t == s || !p.leq(t, s))).collect();

    // Per-world equivalence as class labels.
    let label: BTreeMap<usize, Vec<usize>> = worlds
        .iter()
        .map(|&w| (w, (0..d).map(|_| rng.gen_range(0..d)).collect()))
        .collect();
    let below_sets: Vec<Vec<usize>> = (0..n).map(|s| worlds.iter().copied().filter(|&w| p.leq(w, s)).collect()).collect();
    let below = |s: usize| below_sets[s].iter().copied();
    let same = |w: usize, a: usize, b: usize| label[&w][a] == label[&w][b];
    for s in 0..n {
        for a in 0..d {
            let class: ElementSet = (0..d).filter(|&b| below(s).all(|w| same(w, a, b))).collect();
            m.eq[s][a] = class;
        }
    }

    let tuples = |width: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..width {
            out = out
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    (0..d).map(move |a| {
                        let mut t = t.clone();
                        t.push(a);
                        t
                    })
                })
                .collect();
        }
        out
    };
    let tuple_same = |w: usize, s: &[usize], t: &[usize]| s.iter().zip(t).all(|(&a, &b)| same(w, a, b));

    for (name, arity) in [("P", 1), ("R", 2)] {
        m.add_predicate(name, arity).expect("fresh");
        let world_ext: BTreeMap<usize, Vec<Vec<usize>>> = worlds
            .iter()
            .map(|&w| {
                let picked: Vec<Vec<usize>> = tuples(arity).into_iter().filter(|_| rng.gen_bool(0.4)).collect();
                let closed = tuples(arity)
                    .into_iter()
                    .filter(|t| picked.iter().any(|u| tuple_same(w, t, u)))
                    .collect();
                (w, closed)
            })
            .collect();
        for s in 0..n {
            for t in tuples(arity) {
                if below(s).all(|w| world_ext[&w].contains(&t)) {
                    m.insert(name, s, t).expect("well-formed");
                }
            }
        }
    }

    for (name, arity) in [("f", 1), ("c", 0)] {
        m.add_function(name, arity).expect("fresh");
        let out: BTreeMap<usize, Vec<usize>> = worlds
            .iter()
            .map(|&w| {
                // One output per tuple, constant on equivalent inputs.
                let ts = tuples(arity);
                let mut outs = vec![0; ts.len()];
                for (k, t) in ts.iter().enumerate() {
                    outs[k] = match ts[..k].iter().position(|u| tuple_same(w, t, u)) {
                        Some(j) => outs[j],
                        None => rng.gen_range(0..d),
                    };
                }
                (w, outs)
            })
            .collect();
        let partial_above = if n > 1 && rng.gen_bool(0.5) {
            let s = rng.gen_range(0..n);
            (0..n).filter(|&t| p.leq(s, t) && !worlds.contains(&t)).collect()
        } else {
            ElementSet::EMPTY
        };
        for s in 0..n {
            if partial_above.contains(s) {
                continue;
            }
            for (k, t) in tuples(arity).into_iter().enumerate() {
                for b in 0..d {
                    if below(s).all(|w| same(w, b, out[&w][k])) {
                        let mut tb = t.clone();
                        tb.push(b);
                        m.insert(name, s, tb).expect("well-formed");
                    }
                }
            }
        }
    }

    if rng.gen_bool(0.3) {
        let dom: BTreeMap<usize, ElementSet> = worlds
            .iter()
            .map(|&w| {
                let mut seeds: ElementSet = (0..d).filter(|_| rng.gen_bool(0.6)).collect();
                if seeds.is_empty() {
                    seeds.insert(0);
                }
                // A union of classes of the world's equivalence.
                let ds: ElementSet = (0..d).filter(|&b| seeds.iter().any(|a| same(w, a, b))).collect();
                (w, ds)
            })
            .collect();
        m.domain_fn = Some((0..n).map(|s| below(s).fold(ElementSet::full(d), |acc, w| acc & dom[&w])).collect());
    }

    if modal {
        m.relations.insert("0".into(), random_paradigm_relation(rng, &p));
    }
    m
}

#[derive(Clone, Copy)]
pub struct FoShape {
    pub modal: bool,
    pub quantifiers: bool,
}

pub fn random_term(rng: &mut StdRng, depth: usize, vars: &[&str]) -> Term {
    match rng.gen_range(0..if depth == 0 { 2 } else { 3 }) {
        0 => Term::var(vars.choose(rng).expect("var")),
        1 => Term::constant("c"),
        _ => Term::app("f", vec![random_term(rng, depth - 1, vars)]),
    }
}

pub fn random_fo_formula(rng: &mut StdRng, depth: usize, shape: FoShape) -> FOFormula {
    let vars = ["x", "y"];
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..3) {
            0 => FOFormula::eq(random_term(rng, 1, &vars), random_term(rng, 1, &vars)),
            1 => FOFormula::pred("P", vec![random_term(rng, 1, &vars)]),
            _ => FOFormula::pred("R", vec![random_term(rng, 1, &vars), random_term(rng, 1, &vars)]),
        };
    }
    let d = depth - 1;
    let mut choices = vec![0, 1, 2, 3, 4];
    if shape.quantifiers {
        choices.extend([5, 6]);
    }
    if shape.modal {
        choices.extend([7, 8]);
    }
    match *choices.choose(rng).expect("nonempty") {
        0 => FOFormula::not(random_fo_formula(rng, d, shape)),
        1 => FOFormula::and(random_fo_formula(rng, d, shape), random_fo_formula(rng, d, shape)),
        2 => FOFormula::or(random_fo_formula(rng, d, shape), random_fo_formula(rng, d, shape)),
        3 => FOFormula::implies(random_fo_formula(rng, d, shape), random_fo_formula(rng, d, shape)),
        4 => FOFormula::iff(random_fo_formula(rng, d, shape), random_fo_formula(rng, d, shape)),
        5 => FOFormula::forall(vars.choose(rng).expect("var"), random_fo_formula(rng, d, shape)),
        6 => FOFormula::exists(vars.choose(rng).expect("var"), random_fo_formula(rng, d, shape)),
        7 => FOFormula::boxed("0", random_fo_formula(rng, d, shape)),
        _ => FOFormula::diamond("0", random_fo_formula(rng, d, shape)),
    }
}

/// Classical evaluation on a one-point model, reading each `≍`-class as an
/// individual and quantifying over `D` (or `d`).
pub fn tarski_eval(m: &FOModel, g: &BTreeMap<String, usize>, f: &FOFormula) -> Option<bool> {
    assert_eq!(m.poset.len(), 1, "one-point models only");
    let class = |a: usize| m.eq[0][a];
    let term = |t: &Term| -> Option<ElementSet> { tarski_term(m, g, t) };
    Some(match f {
        FOFormula::Eq(a, b) => term(a)? == term(b)?,
        FOFormula::Pred(r, args) => {
            let reps: Vec<usize> = args
                .iter()
                .map(|t| term(t).and_then(|c| c.first()))
                .collect::<Option<Vec<_>>>()?;
            m.predicates[r].ext[0].contains(&reps)
        }
        FOFormula::Not(a) => !tarski_eval(m, g, a)?,
        FOFormula::And(a, b) => tarski_eval(m, g, a)? && tarski_eval(m, g, b)?,
        FOFormula::Or(a, b) => tarski_eval(m, g, a)? || tarski_eval(m, g, b)?,
        FOFormula::Implies(a, b) => !tarski_eval(m, g, a)? || tarski_eval(m, g, b)?,
        FOFormula::Iff(a, b) => tarski_eval(m, g, a)? == tarski_eval(m, g, b)?,
        FOFormula::Forall(x, a) | FOFormula::Exists(x, a) => {
            let mut vals = Vec::new();
            for e in m.domain_at(0) {
                let mut h = g.clone();
                h.insert(x.clone(), e);
                vals.push(tarski_eval(m, &h, a)?);
            }
            let _ = class;
            if matches!(f, FOFormula::Forall(..)) {
                vals.iter().all(|&v| v)
            } else {
                vals.iter().any(|&v| v)
            }
        }
        FOFormula::Box(i, a) | FOFormula::Diamond(i, a) => {
            let sees = m.relations.get(i).map(|r| r.contains(0, 0)).unwrap_or(false);
            let inner = tarski_eval(m, g, a)?;
            if matches!(f, FOFormula::Box(..)) {
                !sees || inner
            } else {
                sees && inner
            }
        }
    })
}

fn tarski_term(m: &FOModel, g: &BTreeMap<String, usize>, t: &Term) -> Option<ElementSet> {
    match t {
        Term::Var(x) => Some(m.eq[0][*g.get(x)?]),
        Term::App(f, args) => {
            let reps: Vec<usize> = args
                .iter()
                .map(|u| tarski_term(m, g, u).and_then(|c| c.first()))
                .collect::<Option<Vec<_>>>()?;
            let out = m.functions[f]
                .ext[0]
                .iter()
                .find(|t| t[..t.len() - 1] == reps[..])
                .map(|t| t[t.len() - 1])?;
            Some(m.eq[0][out])
        }
    }
}

// ---------------------------------------------------------------------------
// Lattices

/// Every distributive lattice with `2..=max` elements up to isomorphism: a
/// bottom and top around each poset of inner elements, kept when meets and
/// joins exist and distribute.
pub fn distributive_lattices(max: usize) -> Vec<(Vec<Vec<bool>>, FiniteLattice)> {
    let mut out = Vec::new();
    for inner in 0..=max.saturating_sub(2) {
        // `None` stands for the empty inner poset.
        let inners: Vec<Option<Poset>> = if inner == 0 { vec![None] } else { all_posets(inner).into_iter().map(Some).collect() };
        for q in inners {
            let n = inner + 2;
            let le = |a: usize, b: usize| -> bool {
                a == 0 || b == n - 1 || (a > 0 && a < n - 1 && b > 0 && b < n - 1 && q.as_ref().is_some_and(|q| q.leq(a - 1, b - 1)))
            };
            let table: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| le(a, b)).collect()).collect();
            if let Some(ops) = oracle_lattice_ops(&table) {
                if oracle_distributive(&ops) {
                    let names: Vec<String> = (0..n).map(|i| format!("l{i}")).collect();
                    let l = FiniteLattice::from_order(names, |a, b| table[a][b]).expect("a lattice");
                    out.push((table, l));
                }
            }
        }
    }
    out
}

pub struct LatticeOps {
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
}

pub fn oracle_lattice_ops(le: &[Vec<bool>]) -> Option<LatticeOps> {
    let n = le.len();
    let bound = |a: usize, b: usize, lower: bool| -> Option<usize> {
        let cands: Vec<usize> = (0..n)
            .filter(|&c| if lower { le[c][a] && le[c][b] } else { le[a][c] && le[b][c] })
            .collect();
        cands
            .iter()
            .copied()
            .find(|&c| cands.iter().all(|&e| if lower { le[e][c] } else { le[c][e] }))
    };
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            meet[a][b] = bound(a, b, true)?;
            join[a][b] = bound(a, b, false)?;
        }
    }
    Some(LatticeOps { meet, join })
}

pub fn oracle_distributive(ops: &LatticeOps) -> bool {
    let n = ops.meet.len();
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| ops.meet[a][ops.join[b][c]] == ops.join[ops.meet[a][b]][ops.meet[a][c]]))
    })
}

/// Order isomorphism by trying every bijection.
pub fn oracle_order_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    a.len() == b.len()
        && permutations(a.len())
            .iter()
            .any(|p| (0..a.len()).all(|i| (0..a.len()).all(|j| a[i][j] == b[p[i]][p[j]])))
}

pub fn lattice_table(l: &FiniteLattice) -> Vec<Vec<bool>> {
    (0..l.len()).map(|a| (0..l.len()).map(|b| l.leq(a, b)).collect()).collect()
}

// ---------------------------------------------------------------------------
// Kripke evaluation

/// Classical Kripke truth set of a `¬, ∧, □` formula inside `domain`.
pub fn oracle_kripke(
    domain: ElementSet,
    rels: &BTreeMap<String, Relation>,
    val: &Valuation,
    f: &Formula,
) -> ElementSet {
    match f {
        Formula::Falsum => ElementSet::EMPTY,
        Formula::Var(p) => val[p] & domain,
        Formula::Not(a) => domain - oracle_kripke(domain, rels, val, a),
        Formula::And(a, b) => oracle_kripke(domain, rels, val, a) & oracle_kripke(domain, rels, val, b),
        Formula::Box(i, a) => {
            let v = oracle_kripke(domain, rels, val, a);
            let r = &rels[i];
            domain
                .iter()
                .filter(|&x| (0..r.len()).all(|y| !r.contains(x, y) || v.contains(y)))
                .collect()
        }
        other => panic!("outside the Kripke fragment: {other}"),
    }
}
