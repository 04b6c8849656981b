//! Small semigroups with known multiplication, used by tests, examples and
//! `sgp selfcheck`.
//!
//! Each fixture is given by a closed-form rule for `a^k b` (distinct
//! letters), written out by hand. [`Fixture::raw`] lists that rule for
//! `k = 1..=bound`, which is what the rewriting oracle consumes;
//! [`Fixture::table`] compiles a short prefix of it.
//!
//! | name | letters | multiplication |
//! |------|---------|----------------|
//! | S0 | a | free monogenic |
//! | S1 | a b | `a^k b = a^{k+1}`, `b^k a = a^{k+1}` |
//! | S2 | a b | `a^k b = a^{k+1}`, `b^k a = b^{k+1}` |
//! | S3 | a b c | `a^k b` is `c^{k+1}` for odd `k`, `b^{k+1}` for even; `a^k c` the other way round; `b`, `c` absorb on the left |
//! | S4 | a b c | S3 with `a` weighing 3: `a^k b ∈ {c, b}^{3k+1}`, `b^k a = b^{k+3}` |
//!
//! S3 and S4 embed in `ℕ × T₃` (full transformations of three points), so
//! they are associative; S1 and S2 are the two kinds of two-copy unions.

use crate::element::{Alphabet, Letter};
use crate::presentation::{compile, ActionTable, RawPresentation};

pub const A: Letter = Letter(0);
pub const B: Letter = Letter(1);
pub const C: Letter = Letter(2);

/// Number of relations per pair written to fixture files; enough for every
/// residue class to show two hits.
pub const FILE_BOUND: u64 = 4;

#[derive(Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub letters: &'static [&'static str],
    /// `a^k b` for distinct `a`, `b`.
    pub rule: fn(Letter, u64, Letter) -> (Letter, u64),
}

impl Fixture {
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.letters.iter().copied()).expect("fixture alphabet")
    }

    pub fn raw(&self, bound: u64) -> RawPresentation {
        RawPresentation::from_fn(self.alphabet(), bound, self.rule)
    }

    pub fn table(&self) -> ActionTable {
        compile(&self.raw(FILE_BOUND)).expect("fixture compiles")
    }

    /// The fixture as a raw `.sgp` file.
    pub fn sgp(&self) -> String {
        format!(
            "# fixture {}\n{}",
            self.name,
            self.raw(FILE_BOUND).to_sgp_string()
        )
    }
}

impl std::fmt::Debug for Fixture {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name)
    }
}

fn s0_rule(_: Letter, _: u64, _: Letter) -> (Letter, u64) {
    unreachable!("S0 has a single letter")
}

fn s1_rule(_: Letter, k: u64, _: Letter) -> (Letter, u64) {
    (A, k + 1)
}

fn s2_rule(a: Letter, k: u64, _: Letter) -> (Letter, u64) {
    (a, k + 1)
}

fn s3_rule(a: Letter, k: u64, b: Letter) -> (Letter, u64) {
    weighted_rule(a, k, b, 1)
}

fn s4_rule(a: Letter, k: u64, b: Letter) -> (Letter, u64) {
    weighted_rule(a, k, b, 3)
}

fn weighted_rule(a: Letter, k: u64, b: Letter, weight_a: u64) -> (Letter, u64) {
    let weight = |l: Letter| if l == A { weight_a } else { 1 };
    if a == A {
        let odd = k % 2 == 1;
        let target = match (b == B, odd) {
            (true, true) | (false, false) => C,
            _ => B,
        };
        (target, weight_a * k + 1)
    } else {
        (a, k + weight(b))
    }
}

pub fn s0() -> Fixture {
    Fixture {
        name: "S0",
        letters: &["a"],
        rule: s0_rule,
    }
}

pub fn s1() -> Fixture {
    Fixture {
        name: "S1",
        letters: &["a", "b"],
        rule: s1_rule,
    }
}

pub fn s2() -> Fixture {
    Fixture {
        name: "S2",
        letters: &["a", "b"],
        rule: s2_rule,
    }
}

pub fn s3() -> Fixture {
    Fixture {
        name: "S3",
        letters: &["a", "b", "c"],
        rule: s3_rule,
    }
}

pub fn s4() -> Fixture {
    Fixture {
        name: "S4",
        letters: &["a", "b", "c"],
        rule: s4_rule,
    }
}

pub fn all() -> Vec<Fixture> {
    vec![s0(), s1(), s2(), s3(), s4()]
}
