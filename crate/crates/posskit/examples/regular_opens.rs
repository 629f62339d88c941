//! Regular open sets of a poset and the Boolean algebra they form.
//!
//! Run with `cargo run --example regular_opens`.

use posskit::balg::{decompose_atomic_atomless, ro_algebra};
use posskit::Poset;

fn main() -> posskit::Result<()> {
    let tree = Poset::binary_tree(2)?;
    println!("T2 = {:?}", tree);

    let u = tree.set_of(&["00", "01"])?;
    println!("U = {}", tree.show(u));
    println!("  int U        = {}", tree.show(tree.interior(u)));
    println!("  cl U         = {}", tree.show(tree.closure(u)));
    println!("  int cl U     = {}", tree.show(tree.regularize(u)));
    println!("  regular open = {}", tree.is_regular_open(u));

    let v = tree.set_of(&["00", "10"])?;
    println!("{} regular open: {}", tree.show(v), tree.is_regular_open(v));

    let ro = tree.enumerate_regular_opens()?;
    println!("|RO(T2)| = {}", ro.len());
    let alg = ro_algebra(&tree)?;
    println!("RO(T2) is Boolean with {} atoms", alg.algebra.atoms().len());
    for a in alg.algebra.atoms() {
        println!("  atom {}", tree.show(alg.sets[a]));
    }

    println!("worlds: {}", tree.show(tree.worlds()));
    println!("separative: {}", tree.is_separative());

    // Every point of a chain is compatible with every other, so the chain
    // collapses to a single point.
    let chain = Poset::chain(3)?;
    let (q, map) = chain.separative_quotient();
    println!("3-chain separative: {}, quotient size {}, map {:?}", chain.is_separative(), q.len(), map);

    let split = decompose_atomic_atomless(&tree)?;
    if let Some((atomic, _)) = split.atomic {
        println!("atomic part: {:?}", atomic);
    }
    Ok(())
}
