//! Lemmon-Scott axioms `<>a []b p -> []d <>c p` against their first-order
//! conditions on full paradigm frames.
//!
//! Run with `cargo run --example correspondence`.

use std::collections::BTreeMap;

use posskit::modal::{lemmon_scott_check, Relation, RelationalFrame};
use posskit::Poset;

fn main() -> posskit::Result<()> {
    let worlds = Poset::discrete(3)?;
    let frames = [
        ("reflexive", Relation::identity(3)),
        ("successor", Relation::from_pairs(3, &[(0, 1), (1, 2)])?),
        ("universal", Relation::universal(3)),
    ];
    let axioms: [(&str, [&[&str]; 4]); 4] = [
        ("T  []p -> p", [&[], &["0"], &[], &[]]),
        ("4  []p -> [][]p", [&[], &["0"], &["0", "0"], &[]]),
        ("B  p -> []<>p", [&[], &[], &["0"], &["0"]]),
        ("D  []p -> <>p", [&[], &["0"], &[], &["0"]]),
    ];
    for (name, r) in frames {
        let frame = RelationalFrame::full(worlds.clone(), BTreeMap::from([("0".to_string(), r)]))?;
        println!("{name}");
        for (label, [a, b, d, c]) in axioms {
            let ls = lemmon_scott_check(&frame, a, b, d, c)?;
            println!(
                "  {label:<18} axiom valid {:<5} condition {:<5} agree {}",
                ls.axiom_valid.is_valid(),
                ls.condition_holds,
                ls.agrees()
            );
        }
    }

    // A proper possibility frame: a chain of refinements seeing itself.
    let chain = Poset::chain(3)?;
    let frame = RelationalFrame::full_unimodal(chain.clone(), Relation::refinement(&chain))?;
    let t = lemmon_scott_check(&frame, &[], &["0"], &[], &[])?;
    println!("T on a refinement chain: {} / {}", t.axiom_valid.is_valid(), t.condition_holds);
    Ok(())
}
