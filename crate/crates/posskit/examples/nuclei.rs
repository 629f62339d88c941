//! Nuclei on downset algebras, their fixpoint Heyting algebras, and the
//! representation of a finite locale as fixpoints on a poset.
//!
//! Run with `cargo run --example nuclei`.

use posskit::balg::ro_algebra;
use posskit::heyting::{
    check_nucleus, dragalin_represent, fixpoint_algebra, lattices_isomorphic, nuclear_eval, DownsetAlgebra,
    FiniteLattice, Nucleus,
};
use posskit::modal::Valuation;
use posskit::syntax::parse;
use posskit::Poset;

fn main() -> posskit::Result<()> {
    let tree = Poset::binary_tree(2)?;
    let h = DownsetAlgebra::new(tree.clone())?;
    println!("Down(T2) has {} elements", h.len());

    let nn = Nucleus::notnot(&h);
    let beth = Nucleus::beth(&h)?;
    let id = Nucleus::identity(&h);
    for j in [&nn, &beth, &id] {
        let fix = fixpoint_algebra(&h, j)?;
        println!(
            "{:<8} nucleus {:?}, {} fixpoints, Boolean {}",
            j.kind.to_string(),
            check_nucleus(&h, j),
            fix.len(),
            fix.is_boolean()
        );
    }

    let glivenko = fixpoint_algebra(&h, &nn)?.boolean_algebra()?;
    let ro = ro_algebra(&tree)?;
    println!("notnot fixpoints ≅ RO(T2): {}", posskit::balg::is_isomorphic(&glivenko, &ro.algebra));

    let leaf = tree.set_of(&["00"])?;
    let val = Valuation::from([("p".to_string(), tree.downset_of(leaf))]);
    let lem = parse("p | ~p")?;
    let root = tree.element("e")?;
    println!("identity nucleus, root ⊩ p | ~p: {}", nuclear_eval(&h, &id, &val, root, &lem)?);
    println!("notnot nucleus,   root ⊩ p | ~p: {}", nuclear_eval(&h, &nn, &val, root, &lem)?);

    for (name, l) in [("3-chain", FiniteLattice::chain(3)?), ("N5", FiniteLattice::n5()), ("M3", FiniteLattice::m3())] {
        match dragalin_represent(&l) {
            Ok(d) => {
                let fix = fixpoint_algebra(&d.algebra, &d.nucleus)?;
                println!(
                    "{name}: represented on {} points, fixpoints ≅ L: {}",
                    d.algebra.poset.len(),
                    lattices_isomorphic(&fix.lattice()?, &l)
                );
            }
            Err(e) => println!("{name}: {e}"),
        }
    }
    Ok(())
}
