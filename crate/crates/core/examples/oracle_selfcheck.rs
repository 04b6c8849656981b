//! Cross-checking the closed-form procedures against brute force.
//!
//! Run with `cargo run --example oracle_selfcheck`.

use monogenic_union::fixtures;
use monogenic_union::membership::{is_member, saturate};
use monogenic_union::oracle::{brute_membership, check_associativity, Rewriter};
use monogenic_union::wordproblem::normalize;
use monogenic_union::{NormalForm, Word};

fn main() -> monogenic_union::Result<()> {
    for fx in fixtures::all() {
        let table = fx.table();
        let letters: Vec<_> = table.alphabet().letters().collect();
        let associative = check_associativity(&table, 4).is_none();

        let raw = fx.raw(60);
        let rewriter = Rewriter::new(&raw)?;
        let mut words = 0;
        for &x in &letters {
            for &y in &letters {
                for i in 1..=5 {
                    for j in 1..=5 {
                        let w = Word::from_runs(&[(x, i), (y, j), (x, j), (y, i)])?;
                        assert_eq!(normalize(&table, &w)?, rewriter.normalize(&w)?);
                        words += 1;
                    }
                }
            }
        }

        let gens: Vec<NormalForm> = letters
            .iter()
            .map(|&l| NormalForm::new(l, 2u32 + l.index() as u32))
            .collect();
        let state = saturate(&table, &gens)?;
        let mut queries = 0;
        for &l in &letters {
            for e in 1..=20u64 {
                let x = NormalForm::new(l, e);
                assert_eq!(
                    is_member(&state, &x),
                    brute_membership(&table, &gens, &x, 20)?
                );
                queries += 1;
            }
        }
        println!("{}: associative up to 4: {associative}; {words} words and {queries} membership queries agree", fx.name);
    }
    Ok(())
}
