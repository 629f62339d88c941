//! From possibilities to worlds: the Kripke model of formula-decisive
//! points, and the bimodal reading of a possibility frame.
//!
//! Run with `cargo run --example kripke`.

use std::collections::BTreeMap;

use posskit::modal::{bimodal_agreement, kripke_extract, truth_set, Relation, RelationalFrame, Valuation};
use posskit::syntax::{bimodal_translate, parse};
use posskit::Poset;

fn main() -> posskit::Result<()> {
    let tree = Poset::binary_tree(2)?;
    let r = Relation::universal(tree.len());
    let frame = RelationalFrame::full(tree.clone(), BTreeMap::from([("0".to_string(), r)]))?;
    let val = Valuation::from([("p".to_string(), tree.set_of(&["00", "10"])?)]);

    let phi = parse("p -> []p")?;
    println!("‖{phi}‖ = {}", tree.show(truth_set(&frame, &val, &phi)?));

    let k = kripke_extract(&frame, &val, &phi)?;
    println!("decisive points: {}", tree.show(k.domain));
    for x in k.domain {
        println!(
            "  {:<3} possibility {:<5} Kripke {}",
            tree.name(x),
            truth_set(&frame, &val, &phi)?.contains(x),
            k.forces(x, &phi)?
        );
    }

    let translated = bimodal_translate(&phi)?;
    println!("bimodal translation: {translated}");
    println!("agreement everywhere: {}", bimodal_agreement(&frame, &val, &phi)?);
    Ok(())
}
