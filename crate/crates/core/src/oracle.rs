//! Brute-force reference procedures.
//!
//! Nothing here uses the closed-form tables directly except through
//! [`wordproblem::multiply`] where the check is *about* the table
//! (associativity, BFS closure). [`rewrite_normalize`] works purely from an
//! explicit relation list.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::element::{Letter, NormalForm, Word};
use crate::error::{Error, Result};
use crate::presentation::{ActionTable, RawPresentation};
use crate::wordproblem;

/// Leftmost rewriting with an explicit relation list.
///
/// The word is scanned as a sequence of runs; the factor `a^k b` formed by
/// the first run and the first letter of the second is replaced by its
/// right-hand side until one run remains.
pub fn rewrite_normalize(raw: &RawPresentation, word: &Word) -> Result<NormalForm> {
    Rewriter::new(raw)?.normalize(word)
}

/// [`rewrite_normalize`] with the relation lookup built once.
pub struct Rewriter<'r> {
    raw: &'r RawPresentation,
    rules: HashMap<(Letter, u64, Letter), (Letter, u64)>,
    bounds: HashMap<(Letter, Letter), u64>,
}

impl<'r> Rewriter<'r> {
    pub fn new(raw: &'r RawPresentation) -> Result<Self> {
        let mut rules = HashMap::new();
        let mut bounds: HashMap<(Letter, Letter), u64> = HashMap::new();
        for r in &raw.relations {
            let m =
                r.m.to_u64()
                    .ok_or_else(|| Error::ExponentTooLarge(r.m.to_string()))?;
            rules.insert((r.a, r.k, r.b), (r.c, m));
            let bound = bounds.entry((r.a, r.b)).or_default();
            *bound = (*bound).max(r.k);
        }
        Ok(Rewriter { raw, rules, bounds })
    }

    pub fn normalize(&self, word: &Word) -> Result<NormalForm> {
        let mut runs: VecDeque<(Letter, u64)> = word
            .runs()
            .iter()
            .map(|(l, e)| {
                e.to_u64()
                    .map(|e| (*l, e))
                    .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))
            })
            .collect::<Result<_>>()?;

        while runs.len() > 1 {
            let (a, k) = runs[0];
            let (b, _) = runs[1];
            let (c, m) = if a == b {
                (a, k + 1)
            } else {
                *self.rules.get(&(a, k, b)).ok_or_else(|| {
                    let name = |l| self.raw.alphabet.name(l).to_string();
                    Error::BoundExceeded {
                        a: name(a),
                        k: k.to_string(),
                        b: name(b),
                        bound: self.bounds.get(&(a, b)).copied().unwrap_or(0),
                    }
                })?
            };
            runs[1].1 -= 1;
            if runs[1].1 == 0 {
                runs.remove(1);
            }
            runs[0] = (c, m);
            if runs.len() > 1 && runs[1].0 == c {
                let (_, extra) = runs.remove(1).expect("checked length");
                runs[0].1 += extra;
            }
        }
        let (letter, exponent) = runs[0];
        Ok(NormalForm::new(letter, exponent))
    }
}

/// All normal forms with exponent `1..=bound`, alphabet order first.
pub fn elements_up_to(table: &ActionTable, bound: u64) -> Vec<NormalForm> {
    table
        .alphabet()
        .letters()
        .flat_map(|l| (1..=bound).map(move |e| NormalForm::new(l, e)))
        .collect()
}

/// First triple `(x, y, z)` with `(xy)z ≠ x(yz)`, exponents up to `bound`.
/// Evaluation failures count as counterexamples.
pub fn check_associativity(
    table: &ActionTable,
    bound: u64,
) -> Option<(NormalForm, NormalForm, NormalForm)> {
    let elements = elements_up_to(table, bound);
    let mut products: HashMap<(usize, usize), Option<NormalForm>> = HashMap::new();
    let mut product = |i: usize, j: usize| {
        products
            .entry((i, j))
            .or_insert_with(|| wordproblem::multiply(table, &elements[i], &elements[j]).ok())
            .clone()
    };
    for x in 0..elements.len() {
        for y in 0..elements.len() {
            let xy = product(x, y);
            for z in 0..elements.len() {
                let yz = product(y, z);
                let left = xy
                    .as_ref()
                    .and_then(|xy| wordproblem::multiply(table, xy, &elements[z]).ok());
                let right = yz
                    .as_ref()
                    .and_then(|yz| wordproblem::multiply(table, &elements[x], yz).ok());
                if left.is_none() || left != right {
                    return Some((
                        elements[x].clone(),
                        elements[y].clone(),
                        elements[z].clone(),
                    ));
                }
            }
        }
    }
    None
}

/// Looks for two distinct normal forms that the table would identify: an
/// exponent `k <= bound` of some pair claimed by both an exception and a
/// residue rule with different values.
///
/// Tables produced by [`crate::presentation::compile`] map each `a^k b` to
/// a single normal form, so this never fires for them.
pub fn check_disjointness(table: &ActionTable, bound: u64) -> Option<(NormalForm, NormalForm)> {
    for (_, pair) in table.pairs() {
        for (&k, exception) in pair.exceptions.range(..=bound) {
            let Some(rule) = pair.rules.get(&(k % pair.period.max(1))) else {
                continue;
            };
            if k >= rule.k0 {
                let f = (k - rule.k0) / pair.period;
                let by_rule =
                    NormalForm::new(rule.target, &rule.e0 + &rule.step * BigUint::from(f));
                if by_rule != *exception {
                    return Some((exception.clone(), by_rule));
                }
            }
        }
    }
    None
}

/// Every product of at most `depth` generators whose exponent stays at
/// most `max_exponent`, breadth first.
pub fn brute_closure(
    table: &ActionTable,
    generators: &[NormalForm],
    max_exponent: u64,
    depth: usize,
) -> Result<BTreeSet<NormalForm>> {
    let cap = BigUint::from(max_exponent);
    let mut seen: BTreeSet<NormalForm> = generators
        .iter()
        .filter(|g| g.exponent <= cap)
        .cloned()
        .collect();
    let mut frontier: Vec<NormalForm> = seen.iter().cloned().collect();
    for _ in 1..depth {
        let mut next = Vec::new();
        for u in &frontier {
            for g in generators {
                let p = wordproblem::multiply(table, u, g)?;
                if p.exponent <= cap && seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(seen)
}

/// Whether `x` is a product of at most `depth` generators, searching
/// products whose exponent stays within `exponent(x) + max_step · depth`.
pub fn brute_membership(
    table: &ActionTable,
    generators: &[NormalForm],
    x: &NormalForm,
    depth: usize,
) -> Result<bool> {
    let target = x
        .exponent_u64()
        .ok_or_else(|| Error::ExponentTooLarge(x.exponent.to_string()))?;
    let slack = table
        .max_step()
        .to_u64()
        .unwrap_or(u64::MAX)
        .saturating_mul(depth as u64);
    let closure = brute_closure(table, generators, target.saturating_add(slack), depth)?;
    Ok(closure.contains(x))
}
