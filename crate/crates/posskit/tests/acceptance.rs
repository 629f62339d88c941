//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use posskit::balg::{canonical_extension, macneille, ro_algebra, Completion, FiniteBooleanAlgebra};
use posskit::fomodel::{fo_eval, fo_truth_set, frege, parse_fo, Assignment};
use posskit::format::parse_structure;
use posskit::frames::PossibilityFrame;
use posskit::heyting::{
    check_nucleus, dragalin_represent, fixpoint_algebra, lattices_isomorphic, nuclear_eval, DownsetAlgebra, Nucleus,
};
use posskit::modal::{
    self, bimodal_agreement, kripke_extract, lemmon_scott_check, ro_closed_under_box, Model, RelCondition, Relation,
    RelationalFrame, Validity,
};
use posskit::syntax::{bimodal_translate, parse, SQ_INDEX};
use posskit::{ElementSet, Poset};
use rand::Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "regular open algebra laws", limit: Some(Duration::from_secs(60)), run: ro_laws },
        Criterion { id: 2, name: "completion roundtrips", limit: Some(Duration::from_secs(30)), run: completions },
        Criterion { id: 3, name: "filter-descriptive equivalence", limit: None, run: filter_descriptive },
        Criterion { id: 4, name: "box-closure characterization", limit: Some(Duration::from_secs(120)), run: box_closure },
        Criterion { id: 5, name: "worked example goldens", limit: None, run: goldens },
        Criterion { id: 6, name: "Lemmon-Scott correspondence", limit: None, run: correspondence },
        Criterion { id: 7, name: "Kripke extraction", limit: None, run: kripke },
        Criterion { id: 8, name: "finite-atomicity separations", limit: None, run: finite_atomicity },
        Criterion { id: 9, name: "nucleus suite", limit: None, run: nuclei },
        Criterion { id: 10, name: "first-order suite", limit: None, run: first_order },
        Criterion { id: 11, name: "bimodal translation", limit: None, run: bimodal },
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(summary) => println!("PASS {:>2} {} ({elapsed:.2?}): {summary}", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: posskit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// 1

fn ro_laws() -> Outcome {
    let mut posets: Vec<Poset> = (1..=4).flat_map(all_posets).collect();
    let exhaustive = posets.len();
    let mut r = rng(1);
    posets.extend((0..200).map(|_| random_poset(&mut r, 6)));
    let mut checked = 0usize;
    for p in &posets {
        check_ro_algebra(p).map_err(|e| format!("{e} on {p:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} posets ({exhaustive} exhaustive up to iso, 200 random)"))
}

fn check_ro_algebra(p: &Poset) -> Result<(), String> {
    let ro = lib(p.enumerate_regular_opens())?;
    let oracle = oracle_regular_opens(p);
    let mut sorted = ro.clone();
    sorted.sort();
    ensure(sorted == oracle, || format!("enumeration {ro:?} differs from oracle {oracle:?}"))?;
    let all = p.all();
    for bits in 0..1u64 << p.len() {
        let u = set(bits);
        let fixed = p.neg(p.neg(u)) == u;
        ensure(fixed == oracle.contains(&u), || format!("U = ¬¬U disagrees with membership at {u:?}"))?;
    }
    let member = |u: ElementSet| oracle.binary_search(&u).is_ok();
    let (meet, join, neg) = (|a: ElementSet, b: ElementSet| a & b, |a, b| p.ro_join(a, b), |a| p.neg(a));
    ensure(member(ElementSet::EMPTY) && member(all), || "bounds are not regular open".into())?;
    for &a in &oracle {
        ensure(member(neg(a)), || format!("¬{a:?} not regular open"))?;
        ensure(meet(a, neg(a)) == ElementSet::EMPTY, || format!("{a:?} ∧ ¬{a:?} ≠ 0"))?;
        ensure(join(a, neg(a)) == all, || format!("{a:?} ∨ ¬{a:?} ≠ 1"))?;
        ensure(meet(a, all) == a && join(a, ElementSet::EMPTY) == a, || format!("identity fails at {a:?}"))?;
        ensure(meet(a, a) == a && join(a, a) == a, || format!("idempotence fails at {a:?}"))?;
        for &b in &oracle {
            ensure(member(meet(a, b)) && member(join(a, b)), || format!("{a:?}, {b:?} not closed"))?;
            ensure(meet(a, b) == meet(b, a) && join(a, b) == join(b, a), || format!("commutativity at {a:?}, {b:?}"))?;
            ensure(meet(a, join(a, b)) == a && join(a, meet(a, b)) == a, || format!("absorption at {a:?}, {b:?}"))?;
            ensure(join(a, b) == neg(meet(neg(a), neg(b))), || format!("de Morgan at {a:?}, {b:?}"))?;
            ensure(a.is_subset(b) == (meet(a, b) == a), || format!("order at {a:?}, {b:?}"))?;
            for &c in &oracle {
                ensure(meet(a, meet(b, c)) == meet(meet(a, b), c), || format!("∧-assoc at {a:?} {b:?} {c:?}"))?;
                ensure(join(a, join(b, c)) == join(join(a, b), c), || format!("∨-assoc at {a:?} {b:?} {c:?}"))?;
                ensure(
                    meet(a, join(b, c)) == join(meet(a, b), meet(a, c)),
                    || format!("distributivity at {a:?} {b:?} {c:?}"),
                )?;
                ensure(
                    join(a, meet(b, c)) == meet(join(a, b), join(a, c)),
                    || format!("dual distributivity at {a:?} {b:?} {c:?}"),
                )?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 2

fn completions() -> Outcome {
    let mut checked = 0;
    for k in 1..=4 {
        let b = lib(FiniteBooleanAlgebra::with_atoms(k))?;
        let m = lib(macneille(&b))?;
        for a in 0..b.len() {
            let image = m.ro.sets[m.embedding[a]];
            ensure(image == b.down_plus(a), || format!("{k} atoms: φ({}) is not ↓₊", b.name(a)))?;
        }
        check_completion(&b, &m).map_err(|e| format!("MacNeille, {k} atoms: {e}"))?;
        let c = lib(canonical_extension(&b))?;
        check_completion(&b, &c).map_err(|e| format!("canonical extension, {k} atoms: {e}"))?;
        checked += 1;
    }
    let trivial = lib(FiniteBooleanAlgebra::with_atoms(0))?;
    ensure(macneille(&trivial).is_err(), || "one-element algebra unexpectedly completed".into())?;
    Ok(format!("{checked} algebras with 1..=4 atoms, both completions; one-element algebra rejected"))
}

fn check_completion(b: &FiniteBooleanAlgebra, c: &Completion) -> Result<(), String> {
    ensure(posskit::balg::is_isomorphic(&c.ro.algebra, b), || "not isomorphic".into())?;
    let p = &c.poset;
    let phi = |a: usize| c.ro.sets[c.embedding[a]];
    let images: std::collections::BTreeSet<ElementSet> = (0..b.len()).map(phi).collect();
    let ro = oracle_regular_opens(p);
    ensure(images.len() == b.len() && images.iter().all(|u| ro.contains(u)) && ro.len() == b.len(), || {
        "φ is not a bijection onto the regular opens".into()
    })?;
    for a in 0..b.len() {
        ensure(phi(b.neg(a)) == p.neg(phi(a)), || format!("φ does not preserve ¬ at {}", b.name(a)))?;
        for e in 0..b.len() {
            ensure(phi(b.meet(a, e)) == phi(a) & phi(e), || format!("φ does not preserve ∧ at {}, {}", b.name(a), b.name(e)))?;
        }
    }
    for xs in 0..1u64 << b.len() {
        let xs = set(xs);
        let joined = b.join_all(xs.iter());
        let union = xs.iter().fold(ElementSet::EMPTY, |acc, a| acc | phi(a));
        ensure(phi(joined) == p.regularize(union), || format!("φ does not preserve the join of {xs:?}"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 3

fn filter_descriptive() -> Outcome {
    let mut frames = 0;
    let mut descriptive = 0;
    for n in 1..=3 {
        for p in all_posets(n) {
            let ro = oracle_regular_opens(&p);
            for family in 1..1u64 << ro.len() {
                let admissible: Vec<ElementSet> = set(family).iter().map(|i| ro[i]).collect();
                let frame = PossibilityFrame::new(p.clone(), admissible);
                if frame.validate().is_err() {
                    continue;
                }
                frames += 1;
                let roundtrip = lib(frame.dual_roundtrip())?;
                let sep = frame.satisfies_separation().is_ok();
                let real = lib(frame.satisfies_filter_realization())?.is_ok();
                ensure(roundtrip == (sep && real), || {
                    format!("{p:?} with {:?}: roundtrip {roundtrip}, separation {sep}, realization {real}", frame.admissible)
                })?;
                descriptive += usize::from(roundtrip);
            }
        }
    }
    Ok(format!("{frames} frames, {descriptive} filter-descriptive, 0 discrepancies"))
}

// ---------------------------------------------------------------------------
// 4

fn box_closure() -> Outcome {
    let mut cases = 0;
    let mut closed = 0;
    let mut iff_win = 0;
    let mut check = |p: &Poset, r: &Relation| -> Result<(), String> {
        let c = |cond: RelCondition| cond.check(p, r).is_ok();
        let lib_closed = lib(ro_closed_under_box(p, r))?.is_ok();
        let oracle_closed = oracle_ro_closed_under_box(p, r);
        ensure(lib_closed == oracle_closed, || format!("closure disagrees with oracle on {p:?}, {r:?}"))?;
        ensure(oracle_closed == (c(RelCondition::RRule) && c(RelCondition::RToWin)), || {
            format!("closed {oracle_closed} vs R-rule ∧ R-to-win on {p:?}, {r:?}")
        })?;
        let strong = RelCondition::STRONG.iter().all(|&k| c(k));
        ensure(c(RelCondition::RIffWin) == strong, || format!("R-iff-win vs strong on {p:?}, {r:?}"))?;
        ensure(
            oracle_paradigm(p, r)
                == RelCondition::PARADIGM.iter().all(|&k| c(k)),
            || format!("paradigm conditions disagree with oracle on {p:?}, {r:?}"),
        )?;
        cases += 1;
        closed += usize::from(oracle_closed);
        iff_win += usize::from(strong);
        Ok(())
    };
    for n in 1..=3 {
        for p in all_posets(n) {
            for bits in 0..1u64 << (n * n) {
                let r = Relation::from_fn(n, |x, y| bits >> (x * n + y) & 1 == 1);
                check(&p, &r)?;
            }
        }
    }
    let mut g = rng(4);
    let mut sampled = 0;
    while sampled < 500 {
        let p = random_poset(&mut g, 4);
        if p.len() != 4 {
            continue;
        }
        let r = if g.gen_bool(0.3) { random_paradigm_relation(&mut g, &p) } else { random_relation(&mut g, 4) };
        check(&p, &r)?;
        sampled += 1;
    }
    Ok(format!("{cases} cases ({closed} closed, {iff_win} R-iff-win), 0 discrepancies"))
}


// ---------------------------------------------------------------------------
// 5

fn goldens() -> Outcome {
    let sea = lib(parse_structure(include_str!("../data/sea.txt")))?;
    let frame = lib(sea.relational_frame())?;
    let model = lib(Model::new(&frame, sea.valuation.clone()))?;
    let present = lib(frame.poset().element("present"))?;
    let forces = |src: &str| -> Result<bool, String> { lib(model.forces(present, &lib(parse(src))?)) };
    let triple = (forces("<>f s")?, forces("~<>f s")?, forces("<>f s | ~<>f s")?);
    ensure(triple == (false, false, true), || format!("SEA at present: {triple:?}"))?;

    let inq = lib(parse_structure(include_str!("../data/inq.txt")))?;
    let frame = lib(inq.possibility_frame())?;
    let model = lib(Model::new(&frame, inq.valuation.clone()))?;
    let (x, y) = (lib(frame.poset.element("x"))?, lib(frame.poset.element("y"))?);
    let h = lib(DownsetAlgebra::new(frame.poset.clone()))?;
    let j = Nucleus::notnot(&h);
    let both = |pt: usize, src: &str| -> Result<bool, String> {
        let f = lib(parse(src))?;
        let classical = lib(model.forces(pt, &f))?;
        let nuclear = lib(nuclear_eval(&h, &j, &inq.valuation, pt, &f))?;
        ensure(classical == nuclear, || format!("classical and nuclear forcing differ on {src}"))?;
        Ok(classical)
    };
    let triple = (both(x, "(p | q) | r")?, both(x, "(p | q) ?? r")?, both(y, "(p | q) ?? r")?);
    ensure(triple == (true, false, true), || format!("INQ: {triple:?}"))?;
    Ok("SEA (false, false, true); INQ (true, false, true), classical and nuclear".into())
}

// ---------------------------------------------------------------------------
// 6

fn correspondence() -> Outcome {
    let mut g = rng(6);
    let seqs: [&[&str]; 3] = [&[], &["0"], &["0", "0"]];
    let mut checks = 0;
    let mut valid = 0;
    for _ in 0..100 {
        let frame = random_paradigm_frame(&mut g, 4, &["0"]);
        for a in seqs {
            for b in seqs {
                for d in seqs {
                    for c in seqs {
                        let ls = lib(lemmon_scott_check(&frame, a, b, d, c))?;
                        ensure(ls.agrees(), || {
                            format!(
                                "{}: valid {} but condition {} on {:?}",
                                ls.axiom,
                                ls.axiom_valid.is_valid(),
                                ls.condition_holds,
                                frame.poset()
                            )
                        })?;
                        checks += 1;
                        valid += usize::from(ls.condition_holds);
                    }
                }
            }
        }
    }
    Ok(format!("100 frames, {checks} axioms ({valid} valid), 0 discrepancies"))
}

// ---------------------------------------------------------------------------
// 7

fn kripke() -> Outcome {
    let mut g = rng(7);
    let shape = FormulaShape { vars: &["p", "q"], indices: &["0", "1"], derived: true, quantifiers: false, inquisitive: false };
    let mut decisive_total = 0;
    for _ in 0..200 {
        let frame = random_paradigm_frame(&mut g, 5, &["0", "1"]);
        let val = random_valuation(&mut g, &frame.base.admissible, &["p", "q"]);
        let f = random_formula(&mut g, 3, shape);
        let k = lib(kripke_extract(&frame, &val, &f))?;
        let p = frame.poset();
        let expanded = f.expand_defined();

        // The decisive set and derived relations, recomputed from their definitions.
        let mut decisive = p.all();
        for psi in expanded.subformulas() {
            let v = lib(modal::truth_set(&frame, &val, &psi))?;
            decisive = (0..p.len()).filter(|&x| decisive.contains(x) && (v.contains(x) || p.down(x).iter().all(|y| !v.contains(y)))).collect();
        }
        ensure(k.domain == decisive, || format!("decisive set {:?} vs oracle {decisive:?} for {f}", k.domain))?;
        let rels: BTreeMap<String, Relation> = frame
            .relations
            .iter()
            .map(|(i, r)| {
                let derived = Relation::from_fn(p.len(), |x, y| {
                    decisive.contains(x) && decisive.contains(y) && r.image(x).iter().any(|z| p.leq(y, z))
                });
                (i.clone(), derived)
            })
            .collect();
        for (i, r) in &rels {
            ensure(&k.relations[i] == r, || format!("derived relation {i} differs for {f}"))?;
        }

        // Part one: every possibility has a decisive refinement.
        ensure((0..p.len()).all(|x| p.down(x).intersects(decisive)), || format!("no decisive refinement for {f}"))?;
        // Part two: agreement on every subformula inside the decisive set.
        for psi in expanded.subformulas() {
            let poss = lib(modal::truth_set(&frame, &val, &psi))? & decisive;
            let kr = oracle_kripke(decisive, &rels, &val, &psi);
            ensure(poss == kr, || format!("{psi} disagrees inside S_φ for {f}"))?;
            ensure(lib(k.truth_set(&psi))? == kr, || format!("library Kripke evaluation differs on {psi}"))?;
        }
        decisive_total += decisive.len();
    }
    Ok(format!("200 models, {decisive_total} decisive possibilities in total"))
}

// ---------------------------------------------------------------------------
// 8

fn finite_atomicity() -> Outcome {
    let mut g = rng(8);
    let w = lib(parse("E q (q & A p (p -> [] (q -> p)))"))?;
    for _ in 0..50 {
        let p = random_poset(&mut g, 5);
        let n = p.len();
        let frame = lib(RelationalFrame::full(p, BTreeMap::from([("0".to_string(), Relation::universal(n))])))?;
        let v = lib(modal::is_valid(&frame, &w))?;
        ensure(v.is_valid(), || format!("(W) fails on {:?}: {v:?}", frame.poset()))?;
    }
    let split = lib(parse("[]0 ~_|_ & (p -> (<>0 (p & []Q p) & <>0 (p & ~[]Q p)))"))?;
    let top_only = lib(parse("[]0 ~_|_"))?;
    let mut with_top = 0;
    for _ in 0..50 {
        let frame = random_nb_frame(&mut g, 5);
        lib(frame.is_basic())?.map_err(|v| v.to_string())?;
        let v = lib(modal::is_valid(&frame, &split))?;
        let Validity::Countermodel { valuation, point } = &v else {
            return Err(format!("Split ∧ □⊤ valid on {:?}", frame.base.poset));
        };
        ensure(!lib(modal::eval(&frame, valuation, *point, &split))?, || "reported countermodel forces the formula".into())?;
        with_top += usize::from(lib(modal::is_valid(&frame, &top_only))?.is_valid());
    }
    Ok(format!("(W) valid on 50 frames; Split ∧ □⊤ refuted on 50 N-frames ({with_top} validating □⊤)"))
}

// ---------------------------------------------------------------------------
// 9

fn nuclei() -> Outcome {
    let mut g = rng(9);
    let mut posets = 0;
    for n in 1..=5 {
        for p in all_posets(n) {
            let h = lib(DownsetAlgebra::new(p.clone()))?;
            let downsets: Vec<ElementSet> = (0..1u64 << n).map(set).filter(|&u| p.downset_of(u) == u).collect();
            let mut js = vec![Nucleus::notnot(&h), lib(Nucleus::beth(&h))?];
            for sub in [Poset::discrete(n), Ok(p.clone()), random_suborder(&mut g, &p)] {
                js.push(lib(Nucleus::fm(&h, &lib(sub)?))?);
            }
            for j in &js {
                check_nucleus(&h, j).map_err(|v| format!("{} on {p:?}: {v}", j.kind))?;
                oracle_nucleus(&p, &downsets, j).map_err(|e| format!("{} on {p:?}: {e}", j.kind))?;
            }
            let fix = lib(fixpoint_algebra(&h, &js[0]))?;
            let mut fixed = js[0].fixpoints();
            fixed.sort();
            ensure(fixed == oracle_regular_opens(&p), || format!("¬¬-fixpoints are not the regular opens of {p:?}"))?;
            let ba = lib(fix.boolean_algebra())?;
            let ro = lib(ro_algebra(&p))?;
            ensure(posskit::balg::is_isomorphic(&ba, &ro.algebra), || format!("Glivenko fails on {p:?}"))?;
            posets += 1;
        }
    }
    let lattices = distributive_lattices(6);
    for (table, l) in &lattices {
        let d = lib(dragalin_represent(l))?;
        check_nucleus(&d.algebra, &d.nucleus).map_err(|v| format!("Dragalin nucleus: {v}"))?;
        let back = lib(lib(fixpoint_algebra(&d.algebra, &d.nucleus))?.lattice())?;
        ensure(lattices_isomorphic(&back, l), || format!("Dragalin roundtrip fails on {table:?}"))?;
        ensure(oracle_order_isomorphic(&lattice_table(&back), table), || format!("oracle rejects roundtrip on {table:?}"))?;
    }
    Ok(format!("{posets} posets × 5 nuclei, Glivenko on all; Dragalin on {} lattices", lattices.len()))
}

/// A random partial order contained in `p`: the transitive closure of some of its pairs.
fn random_suborder(g: &mut rand::rngs::StdRng, p: &Poset) -> posskit::Result<Poset> {
    let n = p.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && p.leq(a, b))
        .collect();
    let keep: Vec<(usize, usize)> = pairs.into_iter().filter(|_| g.gen_bool(0.5)).collect();
    Poset::new(names(n), &keep)
}

fn oracle_nucleus(p: &Poset, downsets: &[ElementSet], j: &Nucleus) -> Result<(), String> {
    for &u in downsets {
        let ju = j.apply(u);
        ensure(p.downset_of(ju) == ju, || format!("j{u:?} is not a downset"))?;
        ensure(u.is_subset(ju), || format!("j is not inflationary at {u:?}"))?;
        ensure(j.apply(ju) == ju, || format!("j is not idempotent at {u:?}"))?;
        for &v in downsets {
            ensure(j.apply(u & v) == ju & j.apply(v), || format!("j does not preserve {u:?} ∩ {v:?}"))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// 10

fn first_order() -> Outcome {
    let mut g = rng(10);
    let shape = FoShape { modal: true, quantifiers: true };
    for _ in 0..200 {
        let m = random_fo_model(&mut g, 4, 3, true);
        lib(posskit::fomodel::validate_fomodel(&m))?.map_err(|v| format!("generator produced an invalid model: {v}"))?;
        for _ in 0..5 {
            let f = random_fo_formula(&mut g, 3, shape);
            let asg: Assignment = ["x", "y"].iter().map(|v| (v.to_string(), g.gen_range(0..m.guises.len()))).collect();
            let t = lib(fo_truth_set(&m, &asg, &f))?;
            ensure(oracle_is_ro(&m.poset, t), || format!("‖{f}‖ = {t:?} is not regular open"))?;
        }
    }

    let fr = frege();
    let sig = fr.signature();
    let eval = |s: &str, src: &str| -> Result<bool, String> {
        let s = lib(fr.poset.element(s))?;
        lib(fo_eval(&fr, s, &Assignment::new(), &lib(parse_fo(src, &sig))?))
    };
    let goldens = (eval("s", "c_m = c_e")?, eval("s", "~(c_m = c_e)")?, eval("s0", "c_m = c_e")?);
    ensure(goldens == (false, false, true), || format!("FREGE: {goldens:?}"))?;

    let mut one_point = 0;
    for _ in 0..200 {
        let modal = g.gen_bool(0.5);
        let m = random_fo_model(&mut g, 1, 3, modal);
        if m.poset.len() != 1 {
            continue;
        }
        lib(posskit::fomodel::validate_fomodel(&m))?.map_err(|v| format!("invalid one-point model: {v}"))?;
        let shape = FoShape { modal: !m.relations.is_empty(), quantifiers: true };
        for _ in 0..5 {
            let f = random_fo_formula(&mut g, 3, shape);
            let asg: Assignment = ["x", "y"].iter().map(|v| (v.to_string(), g.gen_range(0..m.guises.len()))).collect();
            let ours = lib(fo_eval(&m, 0, &asg, &f))?;
            let tarski = tarski_eval(&m, &asg, &f).ok_or("undefined term in a one-point model")?;
            ensure(ours == tarski, || format!("{f}: forcing {ours}, Tarski {tarski}"))?;
        }
        one_point += 1;
    }
    Ok(format!("200 models × 5 formulas regular open; FREGE (false, false, true); {one_point} one-point models agree with Tarski"))
}

// ---------------------------------------------------------------------------
// 11

fn bimodal() -> Outcome {
    let mut g = rng(11);
    let shape = FormulaShape { vars: &["p", "q"], indices: &["0"], derived: true, quantifiers: false, inquisitive: false };
    for _ in 0..200 {
        let frame = random_full_frame(&mut g, 5, &["0"]);
        let val = random_valuation(&mut g, &frame.base.admissible, &["p", "q"]);
        let f = random_formula(&mut g, 3, shape);
        ensure(lib(bimodal_agreement(&frame, &val, &f))?, || format!("library reports disagreement on {f}"))?;
        let mut rels = frame.relations.clone();
        rels.insert(SQ_INDEX.to_string(), Relation::from_fn(frame.len(), |x, y| frame.poset().leq(y, x)));
        let translated = lib(bimodal_translate(&f))?;
        let kripke = oracle_kripke(frame.poset().all(), &rels, &val, &translated.expand_defined());
        let poss = lib(modal::truth_set(&frame, &val, &f))?;
        ensure(poss == kripke, || format!("{f}: possibility {poss:?}, Kripke {kripke:?} on {:?}", frame.poset()))?;
    }
    Ok("200 models, 0 disagreements".into())
}
