//! Normal forms and equality of words.
//!
//! A word `x₁^{i₁} x₂^{i₂} ⋯ x_m^{i_m}` is reduced left to right: the
//! running normal form absorbs one letter of the next run at a time, and
//! whenever it lands in the copy of that letter the rest of the run is added
//! to the exponent in one step.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::element::{Letter, NormalForm, Word};
use crate::error::{Error, Result};
use crate::presentation::ActionTable;

/// How one absorption step was resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Step {
    Exception,
    /// Residue rule whose exponent map is `e ↦ e + shift`.
    Translation(BigInt),
    Affine,
}

fn uncovered(table: &ActionTable, a: Letter, s: &BigUint, b: Letter) -> Error {
    let alphabet = table.alphabet();
    Error::Uncovered {
        a: alphabet.name(a).into(),
        b: alphabet.name(b).into(),
        k: s.to_string(),
    }
}

fn absorb_step(
    table: &ActionTable,
    a: Letter,
    s: &BigUint,
    b: Letter,
) -> Result<(NormalForm, Step)> {
    if a == b {
        return Ok((NormalForm::new(a, s + 1u32), Step::Translation(1.into())));
    }
    let pair = table.pair(a, b).ok_or_else(|| uncovered(table, a, s, b))?;
    if let Some(nf) = s.to_u64().and_then(|k| pair.exceptions.get(&k)) {
        return Ok((nf.clone(), Step::Exception));
    }
    let period = BigUint::from(pair.period);
    let residue = (s % &period).to_u64().expect("residue below a u64 period");
    let rule = pair
        .rules
        .get(&residue)
        .filter(|r| *s >= BigUint::from(r.k0))
        .ok_or_else(|| uncovered(table, a, s, b))?;
    let f = (s - rule.k0) / &period;
    let exponent = &rule.e0 + &rule.step * f;
    let step = if rule.step == period {
        Step::Translation(BigInt::from(rule.e0.clone()) - BigInt::from(rule.k0))
    } else {
        Step::Affine
    };
    Ok((NormalForm::new(rule.target, exponent), step))
}

/// The normal form of `a^s b`, in closed form: an exception lookup for
/// small `s`, otherwise `target^{e0 + f·step}` with `s = k0 + f·D`.
pub fn absorb(table: &ActionTable, a: Letter, s: &BigUint, b: Letter) -> Result<NormalForm> {
    if s.is_zero() {
        return Err(uncovered(table, a, s, b));
    }
    absorb_step(table, a, s, b).map(|(nf, _)| nf)
}

/// The normal form of `x · y^count`.
///
/// Steps one letter of `y` at a time until the running form lands in
/// `N_y`. Long stretches of translation rules repeat with the state
/// `(letter, exponent mod M)`, `M` the lcm of the periods into `y`; such
/// cycles are skipped in one multiplication.
pub fn absorb_run(
    table: &ActionTable,
    x: &NormalForm,
    y: Letter,
    count: &BigUint,
) -> Result<NormalForm> {
    let mut current = x.clone();
    let mut remaining = count.clone();
    if remaining.is_zero() {
        return Ok(current);
    }

    let (modulus, threshold) = table
        .alphabet()
        .letters()
        .filter_map(|c| table.pair(c, y))
        .fold((1u64, 1u64), |(m, th), p| {
            (m.lcm(&p.period.max(1)), th.max(p.threshold()))
        });
    let modulus = BigUint::from(modulus);
    let threshold = BigUint::from(threshold);
    let mut seen: HashMap<(Letter, BigUint), (BigUint, BigUint)> = HashMap::new();

    while !remaining.is_zero() {
        if current.letter == y {
            return Ok(NormalForm::new(y, current.exponent + remaining));
        }
        if current.exponent >= threshold {
            let key = (current.letter, &current.exponent % &modulus);
            match seen.get(&key) {
                Some((then_remaining, then_exponent)) if current.exponent >= *then_exponent => {
                    let length = then_remaining - &remaining;
                    let gain = &current.exponent - then_exponent;
                    let (cycles, rest) = remaining.div_rem(&length);
                    current.exponent += gain * cycles;
                    remaining = rest;
                    seen.clear();
                    continue;
                }
                _ => {
                    seen.insert(key, (remaining.clone(), current.exponent.clone()));
                }
            }
        } else {
            seen.clear();
        }
        let (next, step) = absorb_step(table, current.letter, &current.exponent, y)?;
        if !matches!(step, Step::Translation(_)) {
            seen.clear();
        }
        current = next;
        remaining -= 1u32;
    }
    Ok(current)
}

/// Reduces a word to its normal form.
pub fn normalize(table: &ActionTable, word: &Word) -> Result<NormalForm> {
    let mut runs = word.runs().iter();
    let (first, e) = runs.next().expect("words are nonempty");
    let mut current = NormalForm::new(*first, e.clone());
    for (letter, count) in runs {
        current = if *letter == current.letter {
            NormalForm::new(*letter, current.exponent + count)
        } else {
            absorb_run(table, &current, *letter, count)?
        };
    }
    Ok(current)
}

pub fn equal(table: &ActionTable, u: &Word, v: &Word) -> Result<bool> {
    Ok(normalize(table, u)? == normalize(table, v)?)
}

/// The product `x · y` of two normal forms.
pub fn multiply(table: &ActionTable, x: &NormalForm, y: &NormalForm) -> Result<NormalForm> {
    if x.letter == y.letter {
        return Ok(NormalForm::new(x.letter, &x.exponent + &y.exponent));
    }
    absorb_run(table, x, y.letter, &y.exponent)
}
