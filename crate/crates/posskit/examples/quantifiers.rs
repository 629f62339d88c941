//! Propositional quantifiers with the universal modality. On a finite frame
//! every possibility refines to a world, so (W) holds.
//!
//! Run with `cargo run --example quantifiers`.

use std::collections::BTreeMap;

use posskit::modal::{self, Relation, RelationalFrame};
use posskit::syntax::parse;
use posskit::Poset;

fn main() -> posskit::Result<()> {
    let w = parse("E q (q & A p (p -> [] (q -> p)))")?;
    println!("(W) = {w}");
    for (name, poset) in [
        ("one point", Poset::discrete(1)?),
        ("D1", Poset::from_named(&["a", "b", "1"], &[("a", "1"), ("b", "1")])?),
        ("3-chain", Poset::chain(3)?),
        ("T2", Poset::binary_tree(2)?),
    ] {
        let n = poset.len();
        let frame = RelationalFrame::full(poset, BTreeMap::from([("0".to_string(), Relation::universal(n))]))?;
        println!("{name:<10} (W) valid: {}", modal::is_valid(&frame, &w)?.is_valid());
    }

    let top = parse("A p (p | ~p)")?;
    let chain = Poset::chain(2)?;
    let frame = RelationalFrame::full(chain, BTreeMap::from([("0".to_string(), Relation::universal(2))]))?;
    println!("{top} valid on a 2-chain: {}", modal::is_valid(&frame, &top)?.is_valid());
    Ok(())
}
