//! Declarative versus inquisitive disjunction, evaluated twice: with the
//! classical forcing clauses and with the double negation nucleus on downsets.
//!
//! Run with `cargo run --example inquisitive`.

use posskit::format::parse_structure;
use posskit::heyting::{nuclear_truth_set, DownsetAlgebra, Nucleus};
use posskit::modal::Model;
use posskit::syntax::parse;

fn main() -> posskit::Result<()> {
    let file = parse_structure(include_str!("../data/inq.txt"))?;
    let frame = file.possibility_frame()?;
    let p = frame.poset.clone();
    let model = Model::new(&frame, file.valuation.clone())?;

    let h = DownsetAlgebra::new(p.clone())?;
    let j = Nucleus::notnot(&h);

    for src in ["(p | q) | r", "(p | q) ?? r", "p | q", "p ?? q ?? r"] {
        let f = parse(src)?;
        let classical = model.truth_set(&f)?;
        let nuclear = nuclear_truth_set(&h, &j, &file.valuation, &f)?;
        println!("{src:<14} forced at {}", p.show(classical));
        assert_eq!(classical, nuclear);
    }

    let x = p.element("x")?;
    let y = p.element("y")?;
    let question = parse("(p | q) ?? r")?;
    println!("x ⊩ (p | q) | r : {}", model.forces(x, &parse("(p | q) | r")?)?);
    println!("x ⊩ (p | q) ?? r: {}", model.forces(x, &question)?);
    println!("y ⊩ (p | q) ?? r: {}", model.forces(y, &question)?);
    Ok(())
}
