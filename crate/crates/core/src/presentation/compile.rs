//! Compiling relation lists into closed-form action tables.
//!
//! For a fixed pair `(a, b)` and target letter `c`, any two relations
//! `a^p b = c^r` and `a^{p+q} b = c^{r+s}` force `a^{p+qt} b = c^{r+st}` for
//! every `t >= 0`. Compilation looks for the closest such pair of hits per
//! target letter, takes the period `D` as the lcm of the differences, and
//! turns each residue class mod `D` into one affine rule.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;

use super::table::{ActionTable, PairAction, RawPresentation, Relation, ResidueRule};
use crate::element::{Alphabet, Letter, NormalForm};
use crate::error::{Error, Result};
use crate::wordproblem;

/// A minimal progression of hits for one target letter.
#[derive(Debug, Clone)]
struct Progression {
    target: Letter,
    anchor: u64,
    exponent: BigUint,
    difference: u64,
    step: BigUint,
}

impl Progression {
    fn value_at(&self, k: u64) -> BigUint {
        &self.exponent + &self.step * BigUint::from((k - self.anchor) / self.difference)
    }
}

pub fn compile(raw: &RawPresentation) -> Result<ActionTable> {
    let alphabet = &raw.alphabet;
    let mut by_pair: BTreeMap<(Letter, Letter), BTreeMap<u64, NormalForm>> = BTreeMap::new();
    for r in &raw.relations {
        if r.a == r.b {
            check_same_letter(alphabet, r)?;
            continue;
        }
        by_pair
            .entry((r.a, r.b))
            .or_default()
            .insert(r.k, NormalForm::new(r.c, r.m.clone()));
    }

    let mut pairs = BTreeMap::new();
    for a in alphabet.letters() {
        for b in alphabet.letters().filter(|&b| b != a) {
            let values = by_pair.remove(&(a, b)).unwrap_or_default();
            pairs.insert((a, b), compile_pair(alphabet, a, b, &values)?);
        }
    }
    let table = ActionTable::new(alphabet.clone(), pairs);

    for (&(a, b), values) in &collect_values(raw) {
        check_pairwise_extrapolation(&table, a, b, values)?;
    }
    Ok(table)
}

fn collect_values(raw: &RawPresentation) -> BTreeMap<(Letter, Letter), BTreeMap<u64, NormalForm>> {
    let mut out: BTreeMap<_, BTreeMap<_, _>> = BTreeMap::new();
    for r in raw.relations.iter().filter(|r| r.a != r.b) {
        out.entry((r.a, r.b))
            .or_default()
            .insert(r.k, NormalForm::new(r.c, r.m.clone()));
    }
    out
}

fn check_same_letter(alphabet: &Alphabet, r: &Relation) -> Result<()> {
    let expected = NormalForm::new(r.a, r.k + 1);
    let found = NormalForm::new(r.c, r.m.clone());
    if expected != found {
        return Err(Error::Inconsistent {
            a: alphabet.name(r.a).into(),
            b: alphabet.name(r.b).into(),
            k: r.k,
            expected: alphabet.format_nf(&expected),
            found: alphabet.format_nf(&found),
        });
    }
    Ok(())
}

fn compile_pair(
    alphabet: &Alphabet,
    a: Letter,
    b: Letter,
    values: &BTreeMap<u64, NormalForm>,
) -> Result<PairAction> {
    let insufficient = |reason: String| Error::InsufficientRelations {
        a: alphabet.name(a).into(),
        b: alphabet.name(b).into(),
        reason,
    };
    let inconsistent = |k: u64, expected: &NormalForm, found: &NormalForm| Error::Inconsistent {
        a: alphabet.name(a).into(),
        b: alphabet.name(b).into(),
        k,
        expected: alphabet.format_nf(expected),
        found: alphabet.format_nf(found),
    };

    if values.is_empty() {
        return Err(insufficient("no relations given".into()));
    }
    let last = *values.keys().next_back().expect("nonempty");
    if let Some(k) = (1..=last).find(|k| !values.contains_key(k)) {
        return Err(insufficient(format!(
            "relations must cover k = 1..{last} contiguously; k = {k} is missing"
        )));
    }

    let mut hits: BTreeMap<Letter, Vec<(u64, &BigUint)>> = BTreeMap::new();
    for (&k, nf) in values {
        hits.entry(nf.letter).or_default().push((k, &nf.exponent));
    }

    let mut progressions = Vec::new();
    for (&target, list) in &hits {
        let Some(difference) = list.windows(2).map(|w| w[1].0 - w[0].0).min() else {
            continue;
        };
        let i = list
            .windows(2)
            .position(|w| w[1].0 - w[0].0 == difference)
            .expect("minimum is attained");
        let (anchor, e1) = list[i];
        let (k2, e2) = list[i + 1];
        if e2 < e1 {
            // Exponents along a progression never decrease.
            let found = NormalForm::new(target, e2.clone());
            return Err(inconsistent(
                k2,
                &NormalForm::new(target, e1.clone()),
                &found,
            ));
        }
        progressions.push(Progression {
            target,
            anchor,
            exponent: e1.clone(),
            difference,
            step: e2 - e1,
        });
    }

    let period = progressions
        .iter()
        .fold(1u64, |acc, p| acc.lcm(&p.difference));
    let mut rules = BTreeMap::new();
    for t in 0..period {
        let mut owners = progressions
            .iter()
            .filter(|p| p.anchor % p.difference == t % p.difference);
        let Some(owner) = owners.next() else {
            return Err(insufficient(format!(
                "residue class {t} mod {period} has fewer than two hits with one target \
                 letter; extend k beyond {last}"
            )));
        };
        if let Some(other) = owners.next() {
            // Two infinite progressions would claim the same exponents.
            let k = first_common(owner, other, period, t);
            return Err(inconsistent(
                k,
                &NormalForm::new(owner.target, owner.value_at(k)),
                &NormalForm::new(other.target, other.value_at(k)),
            ));
        }
        let k0 = owner.anchor + (t + period - owner.anchor % period) % period;
        rules.insert(
            t,
            ResidueRule {
                target: owner.target,
                k0,
                e0: owner.value_at(k0),
                step: &owner.step * BigUint::from(period / owner.difference),
            },
        );
    }

    let mut exceptions = BTreeMap::new();
    let threshold = rules.values().map(|r| r.k0).max().unwrap_or(1);
    for k in 1..threshold {
        if k >= rules[&(k % period)].k0 {
            continue;
        }
        let nf = values.get(&k).ok_or_else(|| {
            insufficient(format!(
                "k = {k} lies below every progression of its residue class but has no relation"
            ))
        })?;
        exceptions.insert(k, nf.clone());
    }

    let pair = PairAction {
        period,
        rules,
        exceptions,
    };
    for (&k, nf) in values {
        let predicted = evaluate(&pair, k);
        if &predicted != nf {
            return Err(inconsistent(k, &predicted, nf));
        }
    }
    Ok(pair)
}

fn first_common(p: &Progression, q: &Progression, period: u64, t: u64) -> u64 {
    let start = p.anchor.max(q.anchor);
    start + (t + period - start % period) % period
}

fn evaluate(pair: &PairAction, k: u64) -> NormalForm {
    if let Some(nf) = pair.exceptions.get(&k) {
        return nf.clone();
    }
    let rule = &pair.rules[&(k % pair.period)];
    let f = (k - rule.k0) / pair.period;
    NormalForm::new(rule.target, &rule.e0 + &rule.step * BigUint::from(f))
}

/// Any two hits `(k_i, e_i) < (k_j, e_j)` with the same target letter
/// predict `a^{k_j + n(k_j - k_i)} b = c^{e_j + n(e_j - e_i)}`; the table
/// must agree for every `n`. Both sides are affine in `n` once past the
/// table's threshold, so checking up to two points beyond it suffices.
fn check_pairwise_extrapolation(
    table: &ActionTable,
    a: Letter,
    b: Letter,
    values: &BTreeMap<u64, NormalForm>,
) -> Result<()> {
    let alphabet = table.alphabet();
    let threshold = table.pair(a, b).map(PairAction::threshold).unwrap_or(1);
    let mut by_letter: BTreeMap<Letter, Vec<(u64, &BigUint)>> = BTreeMap::new();
    for (&k, nf) in values {
        by_letter
            .entry(nf.letter)
            .or_default()
            .push((k, &nf.exponent));
    }
    for (&c, list) in &by_letter {
        for (i, &(ki, ei)) in list.iter().enumerate() {
            for &(kj, ej) in &list[i + 1..] {
                if ej < ei {
                    return Err(Error::Inconsistent {
                        a: alphabet.name(a).into(),
                        b: alphabet.name(b).into(),
                        k: kj,
                        expected: format!("{}^(>= {})", alphabet.name(c), ei),
                        found: alphabet.format_nf(&NormalForm::new(c, ej.clone())),
                    });
                }
                let dk = kj - ki;
                let de = ej - ei;
                let mut past = 0;
                let mut n = 1u64;
                while past < 2 {
                    let k = kj + n * dk;
                    let expected = NormalForm::new(c, ej + &de * BigUint::from(n));
                    let found = wordproblem::absorb(table, a, &BigUint::from(k), b)?;
                    if found != expected {
                        return Err(Error::Inconsistent {
                            a: alphabet.name(a).into(),
                            b: alphabet.name(b).into(),
                            k,
                            expected: alphabet.format_nf(&expected),
                            found: alphabet.format_nf(&found),
                        });
                    }
                    if k >= threshold {
                        past += 1;
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(())
}

/// Lists `a^k b` for every pair of distinct letters and `k = 1..=bound`.
pub fn expand(table: &ActionTable, bound: u64) -> Result<RawPresentation> {
    let alphabet = table.alphabet().clone();
    let mut relations = Vec::new();
    for a in alphabet.letters() {
        for b in alphabet.letters().filter(|&b| b != a) {
            for k in 1..=bound {
                let nf = wordproblem::absorb(table, a, &BigUint::from(k), b)?;
                relations.push(Relation {
                    a,
                    k,
                    b,
                    c: nf.letter,
                    m: nf.exponent,
                });
            }
        }
    }
    RawPresentation::new(alphabet, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse::{parse_presentation, Presentation};

    fn raw(text: &str) -> RawPresentation {
        match parse_presentation(text).unwrap() {
            Presentation::Raw(r) => r,
            Presentation::Compiled(_) => panic!("expected raw"),
        }
    }

    const S1: &str = "letters: a b\n\
        rel: a 1 b -> a 2\nrel: a 2 b -> a 3\nrel: a 3 b -> a 4\nrel: a 4 b -> a 5\n\
        rel: b 1 a -> a 2\nrel: b 2 a -> a 3\nrel: b 3 a -> a 4\nrel: b 4 a -> a 5\n";

    #[test]
    fn compiles_s1() {
        let table = compile(&raw(S1)).unwrap();
        for (a, b) in [(Letter(0), Letter(1)), (Letter(1), Letter(0))] {
            let pair = table.pair(a, b).unwrap();
            assert_eq!(pair.period, 1);
            assert!(pair.exceptions.is_empty());
            assert_eq!(
                pair.rules[&0],
                ResidueRule {
                    target: Letter(0),
                    k0: 1,
                    e0: 2u32.into(),
                    step: 1u32.into()
                }
            );
        }
    }

    #[test]
    fn detects_inconsistent_step() {
        let text = "letters: a b\nrel: a 1 b -> a 2\nrel: a 2 b -> a 5\nrel: a 3 b -> a 6\n\
                    rel: b 1 a -> b 2\nrel: b 2 a -> b 3\n";
        let err = compile(&raw(text)).unwrap_err();
        assert_eq!(
            err,
            Error::Inconsistent {
                a: "a".into(),
                b: "b".into(),
                k: 3,
                expected: "a^8".into(),
                found: "a^6".into()
            }
        );
    }

    #[test]
    fn single_hit_is_insufficient() {
        let err = compile(&raw("letters: a b c\nrel: a 1 b -> c 1\n")).unwrap_err();
        assert!(
            matches!(err, Error::InsufficientRelations { ref a, ref b, .. } if a == "a" && b == "b"),
            "{err:?}"
        );
    }

    #[test]
    fn gaps_are_insufficient() {
        let err =
            compile(&raw("letters: a b\nrel: a 1 b -> a 2\nrel: a 3 b -> a 4\n")).unwrap_err();
        assert!(matches!(err, Error::InsufficientRelations { .. }));
    }

    #[test]
    fn period_two_with_exception() {
        // a b -> a^5 once, then alternating targets from k = 2.
        let text = "letters: a b c\n\
            rel: a 1 b -> a 5\nrel: a 2 b -> c 3\nrel: a 3 b -> b 4\nrel: a 4 b -> c 5\nrel: a 5 b -> b 6\n\
            rel: a 6 b -> c 7\n";
        let raw = raw(text);
        let mut values = BTreeMap::new();
        for r in &raw.relations {
            values.insert(r.k, NormalForm::new(r.c, r.m.clone()));
        }
        let pair = compile_pair(&raw.alphabet, Letter(0), Letter(1), &values).unwrap();
        assert_eq!(pair.period, 2);
        assert_eq!(pair.rules[&0].k0, 2);
        assert_eq!(pair.rules[&0].target, Letter(2));
        assert_eq!(pair.rules[&1].k0, 3);
        assert_eq!(pair.rules[&1].step, 2u32.into());
        assert_eq!(pair.exceptions.keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn same_letter_relations_must_be_free() {
        let ok = "letters: a b\nrel: a 2 a -> a 3\nrel: a 1 b -> a 2\nrel: a 2 b -> a 3\n\
                  rel: b 1 a -> a 2\nrel: b 2 a -> a 3\n";
        assert!(compile(&raw(ok)).is_ok());
        let bad = "letters: a\nrel: a 2 a -> a 4\n";
        assert!(matches!(
            compile(&raw(bad)),
            Err(Error::Inconsistent { .. })
        ));
    }

    #[test]
    fn free_monogenic_has_no_pairs() {
        let table = compile(&raw("letters: a\n")).unwrap();
        assert_eq!(table.pairs().count(), 0);
    }

    #[test]
    fn overlapping_progressions_are_inconsistent() {
        // Hits of a at 1,2 (difference 1) and of b at 3,4 both claim every k.
        let text = "letters: a b\nrel: a 1 b -> a 2\nrel: a 2 b -> a 3\nrel: a 3 b -> b 4\n\
                    rel: a 4 b -> b 5\nrel: b 1 a -> b 2\nrel: b 2 a -> b 3\n";
        assert!(matches!(
            compile(&raw(text)),
            Err(Error::Inconsistent { .. })
        ));
    }

    #[test]
    fn nonminimal_first_hits_use_closest_pair() {
        // Target c at 1, 3, 4, 5, 6: closest hits are (3, 4), so the rule is
        // anchored there and k = 1 stays an exception. k = 2 goes to b.
        let text = "letters: a b c\n\
            rel: a 1 c -> c 2\nrel: a 2 c -> b 9\nrel: a 3 c -> c 4\nrel: a 4 c -> c 5\n\
            rel: a 5 c -> c 6\nrel: a 6 c -> c 7\n";
        let raw = raw(text);
        let values: BTreeMap<u64, NormalForm> = raw
            .relations
            .iter()
            .map(|r| (r.k, NormalForm::new(r.c, r.m.clone())))
            .collect();
        let pair = compile_pair(&raw.alphabet, Letter(0), Letter(2), &values).unwrap();
        assert_eq!(pair.period, 1);
        assert_eq!(pair.rules[&0].k0, 3);
        assert_eq!(pair.exceptions.len(), 2);
    }
}
