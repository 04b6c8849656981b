//! Numerical subsemigroups of ℕ as `[d, N, F]` triples.
//!
//! Run with `cargo run --example numerical_semigroups`.

use monogenic_union::numsg::{conductor_bound, NumericalSubsemigroup};

fn main() -> monogenic_union::Result<()> {
    for gens in [
        vec![3, 5],
        vec![4, 6],
        vec![6, 10, 15],
        vec![2],
        vec![7, 11, 13],
    ] {
        let s = NumericalSubsemigroup::from_generators(gens.iter().copied())?;
        let bound = conductor_bound(s.generators())?;
        println!("<{gens:?}> = {}   (conductor bound {bound})", s.triple());
    }

    let mut s = NumericalSubsemigroup::from_generators([6])?;
    for n in [9, 20, 5] {
        let before = s.triple().measure();
        s.add_element(n)?;
        println!(
            "add {n:>2}: {}   measure {before:?} -> {:?}",
            s.triple(),
            s.triple().measure()
        );
    }
    Ok(())
}
