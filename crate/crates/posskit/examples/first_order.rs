//! First-order possibility models: guises that a partial state may or may
//! not identify, partial function values, and the modal (Fact)/(World) pair.
//!
//! Run with `cargo run --example first_order`.

use posskit::fomodel::{
    fact_world_check, fo_truth_set, frege, generated_submodel, parse_fo, validate_fomodel, Assignment, FOModel,
};
use posskit::modal::Relation;
use posskit::syntax::DEFAULT_INDEX;
use posskit::{ElementSet, Poset};

fn main() -> posskit::Result<()> {
    let m = frege();
    println!("model valid: {:?}", validate_fomodel(&m)?);
    let sig = m.signature();
    let g = Assignment::new();
    for src in ["c_m = c_e", "~(c_m = c_e)", "c_m = c_e | ~(c_m = c_e)", "E x (x = c_m & x = c_e)"] {
        let f = parse_fo(src, &sig)?;
        println!("‖{f}‖ = {}", m.poset.show(fo_truth_set(&m, &g, &f)?));
    }

    let s0 = m.poset.element("s0")?;
    let (sub, _) = generated_submodel(&m, s0)?;
    let same = parse_fo("c_m = c_e", &sub.signature())?;
    println!("generated at s0: ‖{same}‖ = {}", sub.poset.show(fo_truth_set(&sub, &g, &same)?));

    // Two worlds seeing each other, with two individuals.
    let mut worlds = FOModel::new(Poset::discrete(2)?, vec!["a", "b"])?;
    worlds.relations.insert(DEFAULT_INDEX.into(), Relation::universal(2));
    worlds.domain_fn = Some(vec![ElementSet::full(2); 2]);
    let fw = fact_world_check(&worlds)?;
    println!(
        "two worlds: (Fact) valid {}, (World) valid {}, Fact entails World {}",
        fw.fact_valid,
        fw.world_valid,
        fw.holds()
    );
    Ok(())
}
