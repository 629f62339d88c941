//! MacNeille completion and canonical extension of a finite Boolean algebra,
//! and the filter frames behind them.
//!
//! Run with `cargo run --example completions`.

use posskit::balg::{self, FiniteBooleanAlgebra};
use posskit::frames::algebra_isomorphic_to;

fn main() -> posskit::Result<()> {
    let b = FiniteBooleanAlgebra::powerset(&["a", "b", "c"])?;
    println!("B has {} elements", b.len());

    let (plus, _) = b.bplus_poset()?;
    println!("B+ = {:?}", plus);

    let mac = balg::macneille(&b)?;
    println!(
        "MacNeille: RO(B+) has {} elements, isomorphic to B: {}",
        mac.ro.sets.len(),
        balg::is_isomorphic(&mac.ro.algebra, &b)
    );
    for (a, &i) in mac.embedding.iter().enumerate() {
        println!("  {} -> {}", b.name(a), plus.show(mac.ro.sets[i]));
    }

    let filters = balg::proper_filters(&b)?;
    println!("{} proper filters", filters.len());
    let canon = balg::canonical_extension(&b)?;
    println!(
        "canonical extension: {} elements, isomorphic to B: {}",
        canon.ro.sets.len(),
        balg::is_isomorphic(&canon.ro.algebra, &b)
    );

    let general = balg::general_filter_frame(&b)?;
    println!(
        "general filter frame: {} possibilities, {} admissible sets, algebra isomorphic to B: {}",
        general.frame.len(),
        general.frame.admissible.len(),
        algebra_isomorphic_to(&general.frame, &b)?
    );
    Ok(())
}
