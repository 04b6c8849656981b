//! Compiling finitely many relations `a^k b = c^m` into a closed-form table.
//!
//! Run with `cargo run --example compile_presentation`.

use monogenic_union::presentation::{compile, expand, parse_presentation, validate, Presentation};

const S4: &str = include_str!("../fixtures/s4.sgp");

fn raw(text: &str) -> monogenic_union::Result<monogenic_union::presentation::RawPresentation> {
    match parse_presentation(text)? {
        Presentation::Raw(raw) => Ok(raw),
        Presentation::Compiled(_) => unreachable!("the text lists relations"),
    }
}

fn main() -> monogenic_union::Result<()> {
    // Four relations per pair are enough: a^k b alternates between c and b
    // with the parity of k, with exponent 3k + 1.
    let table = compile(&raw(S4)?)?;
    print!("{}", table.to_sgp_string());
    println!("# {} diagnostics", validate(&table).len());

    // The table reproduces the relations and extends them to every k.
    let longer = expand(&table, 9)?;
    for r in longer
        .relations
        .iter()
        .filter(|r| r.a.index() == 0 && r.b.index() == 1)
        .skip(6)
    {
        println!("a^{} b = {}^{}", r.k, table.alphabet().name(r.c), r.m);
    }

    // Two hits per class always fit some progression; a wrong exponent
    // yields a table that fails the period-consistency check instead.
    let edited = compile(&raw(
        &S4.replace("rel: a 4 b -> b 13", "rel: a 4 b -> b 14")
    )?)?;
    print!("edited relation:\n{}", validate(&edited));
    // A third hit in the class has to lie on the progression.
    let extra = S4.replace(
        "rel: a 4 b -> b 13\n",
        "rel: a 4 b -> b 13\nrel: a 5 b -> c 17\n",
    );
    println!("contradiction: {}", compile(&raw(&extra)?).unwrap_err());
    let short = "letters: a b\nrel: a 1 b -> a 2\nrel: b 1 a -> a 2\nrel: b 2 a -> a 3\n";
    println!("too few relations: {}", compile(&raw(short)?).unwrap_err());
    let broken = "letters: a b\nrel: a 0 b -> a 2\n";
    println!("syntax error: {}", parse_presentation(broken).unwrap_err());
    Ok(())
}
