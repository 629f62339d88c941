//! Boolean algebras with operators and the relational frames that realize
//! them, read from and written to the structure file format.
//!
//! Run with `cargo run --example bao`.

use posskit::balg::FiniteBooleanAlgebra;
use posskit::format::{dump_ba, dump_relframe};
use posskit::modal::{bao_filter_frame, vbao_box_preserved, vbao_full_frame, Boxes};

fn main() -> posskit::Result<()> {
    let b = FiniteBooleanAlgebra::powerset(&["a", "b"])?;
    // □x = x ∧ b.
    let e = |n: &str| b.element(n);
    let table = vec![e("0")?, e("0")?, e("b")?, e("1")?];
    let boxes = Boxes::from([("0".to_string(), table)]);
    print!("{}", dump_ba(&b, &boxes));

    let full = vbao_full_frame(&b, &boxes)?;
    println!("full frame on B+, box preserved: {}", vbao_box_preserved(&boxes, &full)?);
    let names: Vec<String> = full
        .frame
        .base
        .admissible
        .iter()
        .map(|u| match full.embedding.iter().position(|e| e == u) {
            Some(a) => b.name(a).to_string(),
            None => full.frame.poset().label(*u),
        })
        .collect();
    print!("{}", dump_relframe(&full.frame, &names));

    let filt = bao_filter_frame(&b, &boxes)?;
    println!("filter frame, box preserved: {}", vbao_box_preserved(&boxes, &filt)?);
    println!("paradigm: {:?}", filt.frame.is_paradigm());
    Ok(())
}
