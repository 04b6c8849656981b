//! Normal forms and equality of words in two small semigroups.
//!
//! Run with `cargo run --example word_problem`.

use monogenic_union::presentation::load_table;
use monogenic_union::wordproblem::{equal, normalize};

fn main() -> monogenic_union::Result<()> {
    // In S1 every mixed product lands in N_a; in S2 the left factor wins.
    let s1 = load_table(include_str!("../fixtures/s1.sgp"))?;
    let s2 = load_table(include_str!("../fixtures/s2.sgp"))?;

    for (name, table) in [("S1", &s1), ("S2", &s2)] {
        let alphabet = table.alphabet();
        for text in ["abab", "b^3", "b a^2 b", "a^3 b^2 a"] {
            let word = alphabet.parse_word(text)?;
            let nf = normalize(table, &word)?;
            println!("{name}: {text:<10} = {}", alphabet.format_nf(&nf));
        }
        let (u, v) = (alphabet.parse_word("ab")?, alphabet.parse_word("ba")?);
        println!("{name}: ab = ba ? {}", equal(table, &u, &v)?);
    }
    Ok(())
}
