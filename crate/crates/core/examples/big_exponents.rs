//! Words with exponents far beyond anything that could be rewritten letter
//! by letter.
//!
//! Run with `cargo run --example big_exponents`.

use std::time::Instant;

use monogenic_union::fixtures;
use monogenic_union::wordproblem::{absorb, normalize};
use monogenic_union::{NormalForm, Word};
use num_bigint::BigUint;

fn main() -> monogenic_union::Result<()> {
    let s1 = fixtures::s1().table();
    for p in [3u32, 18, 100] {
        let s = BigUint::from(10u32).pow(p);
        let start = Instant::now();
        let nf = absorb(&s1, fixtures::A, &s, fixtures::B)?;
        println!(
            "S1: a^(10^{p}) b = a^(10^{p} + {}) in {:?}",
            nf.exponent - &s,
            start.elapsed()
        );
    }

    // In S3, a^k b alternates between c and b with the parity of k, and a
    // long run of b keeps bouncing until it lands in N_b.
    let s3 = fixtures::s3().table();
    let alphabet = s3.alphabet();
    let huge = BigUint::from(7u32).pow(60);
    let word = Word::new(vec![
        (fixtures::A, huge.clone()),
        (fixtures::C, BigUint::from(3u32)),
        (fixtures::B, huge.clone()),
        (fixtures::A, BigUint::from(1u32)),
    ])?;
    let start = Instant::now();
    let nf = normalize(&s3, &word)?;
    println!(
        "S3: a^(7^60) c^3 b^(7^60) a = {} in {:?}",
        alphabet.format_nf(&nf),
        start.elapsed()
    );

    let parsed = alphabet.parse_word("a^123456789012345678901234567890 b")?;
    let nf: NormalForm = normalize(&s3, &parsed)?;
    println!(
        "S3: a^123456789012345678901234567890 b = {}",
        alphabet.format_nf(&nf)
    );
    Ok(())
}
