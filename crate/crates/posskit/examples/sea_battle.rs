//! A relational possibility frame where the present does not settle whether
//! there will be a sea battle, though it settles that there will or will not.
//!
//! Run with `cargo run --example sea_battle`.

use posskit::format::parse_structure;
use posskit::modal::{self, kripke_extract, Model, RelCondition, Validity};
use posskit::syntax::parse;

fn main() -> posskit::Result<()> {
    let file = parse_structure(include_str!("../data/sea.txt"))?;
    let frame = file.relational_frame()?;
    let p = frame.poset().clone();
    let model = Model::new(&frame, file.valuation.clone())?;

    for src in ["<>f s", "~<>f s", "<>f s | ~<>f s", "[]f (s | ~s)"] {
        let f = parse(src)?;
        println!("present ⊩ {src:<16} {}", model.forces(0, &f)?);
        println!("  forced at {}", p.show(model.truth_set(&f)?));
    }

    for c in RelCondition::ALL {
        println!("{:<15} [f] {:?}", c.name(), frame.check_relation_condition("f", c)?);
    }
    println!("R-tight: {}", frame.is_r_tight()?);

    let t = parse("[]f p -> p")?;
    match modal::is_valid(&frame, &t)? {
        Validity::Valid => println!("{t} is valid"),
        Validity::Countermodel { valuation, point } => {
            println!("{t} fails at {} with p = {}", p.name(point), p.show(valuation["p"]));
        }
    }

    let phi = parse("<>f s")?;
    let k = kripke_extract(&frame, &file.valuation, &phi)?;
    println!("points deciding {phi}: {}", p.show(k.domain));
    Ok(())
}
