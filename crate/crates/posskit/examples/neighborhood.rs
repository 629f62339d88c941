//! Neighborhood and functional possibility frames, and a bimodal axiom that
//! no finite frame validates.
//!
//! Run with `cargo run --example neighborhood`.

use std::collections::BTreeMap;

use posskit::format::parse_structure;
use posskit::frames::PossibilityFrame;
use posskit::modal::{self, FCondition, FunctionalFrame, NCondition, Validity};
use posskit::syntax::parse;
use posskit::Poset;

const SPLIT: &str = "[]0 ~_|_ & (p -> (<>0 (p & []Q p) & <>0 (p & ~[]Q p)))";

fn main() -> posskit::Result<()> {
    let file = parse_structure(include_str!("../data/split.txt"))?;
    let nb = file.neighborhood_frame()?;
    for i in ["0", "Q"] {
        for c in NCondition::ALL {
            println!("{:<15} [{i}] {:?}", c.name(), nb.check_n_condition(i, c)?);
        }
    }
    let split = parse(SPLIT)?;
    match modal::is_valid(&nb, &split)? {
        Validity::Valid => println!("Split holds"),
        Validity::Countermodel { valuation, point } => println!(
            "Split fails at {} with p = {}",
            nb.base.poset.name(point),
            nb.base.poset.show(valuation["p"])
        ),
    }

    // f sends each point of a 2-chain to the bottom.
    let chain = Poset::chain(2)?;
    let base = PossibilityFrame::full(chain.clone())?;
    let ff = FunctionalFrame::new(base, BTreeMap::from([("f".to_string(), vec![0, 0])]))?;
    for c in FCondition::ALL {
        println!("{:<15} [f] {:?}", c.name(), ff.check_f_condition("f", c)?);
    }
    let rel = ff.to_relational();
    let t = parse("[]f p <-> ~[]f ~p")?;
    println!("functional: {t} valid {}", modal::is_valid(&ff, &t)?.is_valid());
    println!("as relational frame, paradigm: {:?}", rel.is_paradigm());
    Ok(())
}
