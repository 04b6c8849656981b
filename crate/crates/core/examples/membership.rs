//! Deciding membership in a finitely generated subsemigroup, with the
//! saturation trace.
//!
//! Run with `cargo run --example membership`.

use monogenic_union::fixtures;
use monogenic_union::membership::{is_member, saturate};

fn main() -> monogenic_union::Result<()> {
    let table = fixtures::s1().table();
    let alphabet = table.alphabet();
    let gens = alphabet.parse_normal_forms("a^3, b^2")?;

    let state = saturate(&table, &gens)?;
    for step in &state.trace {
        println!(
            "added {}^{}: measure {:?} -> {:?}",
            alphabet.name(step.letter),
            step.element,
            step.before,
            step.after
        );
    }
    for (letter, copy) in state.copies() {
        println!("U_{} = {}", alphabet.name(letter), copy.triple());
    }
    for query in ["a^3", "a^4", "a^5", "b^3", "b^4", "a^1000001"] {
        let x = alphabet.parse_normal_form(query)?;
        println!(
            "{query:>9}: {}",
            if is_member(&state, &x) {
                "member"
            } else {
                "not-member"
            }
        );
    }

    // Products can fall into a copy that no generator touches.
    let s3 = fixtures::s3().table();
    let gens = s3.alphabet().parse_normal_forms("a,b^2")?;
    let state = saturate(&s3, &gens)?;
    for (letter, copy) in state.copies() {
        println!(
            "S3 <a, b^2>: U_{} = {}",
            s3.alphabet().name(letter),
            copy.triple()
        );
    }
    Ok(())
}
