//! General possibility frames: admissible families, separation, filter
//! realization, and the round trip through the dual algebra.
//!
//! Run with `cargo run --example filter_frames`.

use posskit::frames::{find_isomorphism, PossibilityFrame};
use posskit::{ElementSet, Poset};

fn main() -> posskit::Result<()> {
    let d1 = Poset::from_named(&["a", "b", "1"], &[("a", "1"), ("b", "1")])?;
    let full = PossibilityFrame::full(d1.clone())?;
    report("full D1", &full)?;

    // Only the trivial propositions: points cannot be told apart.
    let coarse = PossibilityFrame::checked(d1.clone(), vec![ElementSet::EMPTY, d1.all()])?;
    report("D1 with {0, S}", &coarse)?;

    let chain = Poset::chain(2)?;
    let frame = PossibilityFrame::full(chain)?;
    report("2-chain", &frame)?;

    let iso = find_isomorphism(&full, &full)?;
    println!("D1 self-isomorphism: {:?}", iso);

    let bad = PossibilityFrame::new(d1.clone(), vec![d1.set_of(&["a", "b"])?]);
    println!("{{a,b}} alone: {:?}", bad.validate());
    Ok(())
}

fn report(name: &str, f: &PossibilityFrame) -> posskit::Result<()> {
    println!("{name}");
    println!("  valid:              {:?}", f.validate());
    println!("  separation:         {:?}", f.satisfies_separation());
    println!("  filter realization: {:?}", f.satisfies_filter_realization()?);
    println!("  filter-descriptive: {}", f.is_filter_descriptive()?);
    println!("  dual round trip:    {}", f.dual_roundtrip()?);
    Ok(())
}
