use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::element::{Alphabet, Letter, NormalForm};
use crate::error::{Error, Result};

/// One relation `a^k b = c^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub a: Letter,
    pub k: u64,
    pub b: Letter,
    pub c: Letter,
    pub m: BigUint,
}

/// A presentation given as an explicit list of relations `a^k b = c^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawPresentation {
    pub alphabet: Alphabet,
    pub relations: Vec<Relation>,
}

impl RawPresentation {
    pub fn new(alphabet: Alphabet, relations: Vec<Relation>) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (i, r) in relations.iter().enumerate() {
            if r.k == 0 {
                return Err(Error::ZeroExponent {
                    line: i + 1,
                    column: 1,
                });
            }
            if r.m == BigUint::ZERO {
                return Err(Error::ZeroExponent {
                    line: i + 1,
                    column: 1,
                });
            }
            if seen.insert((r.a, r.k, r.b), ()).is_some() {
                return Err(Error::DuplicateRelation {
                    line: i + 1,
                    a: alphabet.name(r.a).into(),
                    k: r.k,
                    b: alphabet.name(r.b).into(),
                });
            }
        }
        Ok(RawPresentation {
            alphabet,
            relations,
        })
    }

    /// Relations `a^k b = f(a, k, b)` for every ordered pair of distinct
    /// letters and `k = 1..=bound`.
    pub fn from_fn(
        alphabet: Alphabet,
        bound: u64,
        mut f: impl FnMut(Letter, u64, Letter) -> (Letter, u64),
    ) -> Self {
        let mut relations = Vec::new();
        for a in alphabet.letters() {
            for b in alphabet.letters().filter(|&b| b != a) {
                for k in 1..=bound {
                    let (c, m) = f(a, k, b);
                    relations.push(Relation {
                        a,
                        k,
                        b,
                        c,
                        m: m.into(),
                    });
                }
            }
        }
        RawPresentation::new(alphabet, relations).expect("generated relations are distinct")
    }

    pub fn to_sgp_string(&self) -> String {
        let mut out = format!("letters: {}\n", self.alphabet.names().join(" "));
        for r in &self.relations {
            let name = |l| self.alphabet.name(l);
            writeln!(
                out,
                "rel: {} {} {} -> {} {}",
                name(r.a),
                r.k,
                name(r.b),
                name(r.c),
                r.m
            )
            .unwrap();
        }
        out
    }
}

/// `a^{k0 + fD} b = target^{e0 + f·step}` for all `f >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRule {
    pub target: Letter,
    pub k0: u64,
    pub e0: BigUint,
    pub step: BigUint,
}

/// How `a^k b` evaluates for one ordered pair of distinct letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAction {
    pub period: u64,
    /// Keyed by residue `t = k0 mod period`.
    pub rules: BTreeMap<u64, ResidueRule>,
    /// Values of `a^k b` for small `k`, below the rule of their class.
    pub exceptions: BTreeMap<u64, NormalForm>,
}

impl PairAction {
    /// Largest exceptional `k`, 0 without exceptions.
    pub fn cutoff(&self) -> u64 {
        self.exceptions.keys().next_back().copied().unwrap_or(0)
    }

    /// Every `k` from here on is handled by a residue rule.
    pub fn threshold(&self) -> u64 {
        let k0 = self.rules.values().map(|r| r.k0).max().unwrap_or(1);
        k0.max(self.cutoff() + 1)
    }
}

/// The right action of every generator on every copy, in closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    alphabet: Alphabet,
    pairs: BTreeMap<(Letter, Letter), PairAction>,
}

impl ActionTable {
    /// Builds a table without checking it; see [`super::validate`].
    pub fn new(alphabet: Alphabet, pairs: BTreeMap<(Letter, Letter), PairAction>) -> Self {
        ActionTable { alphabet, pairs }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pair(&self, a: Letter, b: Letter) -> Option<&PairAction> {
        self.pairs.get(&(a, b))
    }

    pub fn pair_mut(&mut self, a: Letter, b: Letter) -> Option<&mut PairAction> {
        self.pairs.get_mut(&(a, b))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(Letter, Letter), &PairAction)> {
        self.pairs.iter()
    }

    pub fn max_cutoff(&self) -> u64 {
        self.pairs
            .values()
            .map(PairAction::cutoff)
            .max()
            .unwrap_or(0)
    }

    /// Least common multiple of all pair periods.
    pub fn period_lcm(&self) -> u64 {
        use num_integer::Integer;
        self.pairs
            .values()
            .fold(1, |acc, p| acc.lcm(&p.period.max(1)))
    }

    pub fn max_step(&self) -> BigUint {
        self.pairs
            .values()
            .flat_map(|p| p.rules.values())
            .map(|r| r.step.clone())
            .max()
            .unwrap_or_default()
    }

    pub fn to_sgp_string(&self) -> String {
        let name = |l| self.alphabet.name(l);
        let mut out = format!("letters: {}\n", self.alphabet.names().join(" "));
        for (&(a, b), pair) in &self.pairs {
            for (k, nf) in &pair.exceptions {
                writeln!(
                    out,
                    "exc: {} {} {} -> {} {}",
                    name(a),
                    k,
                    name(b),
                    name(nf.letter),
                    nf.exponent
                )
                .unwrap();
            }
            for (t, rule) in &pair.rules {
                writeln!(
                    out,
                    "ap: {} {} D={} t={} k0={} -> {} e0={} step={}",
                    name(a),
                    name(b),
                    pair.period,
                    t,
                    rule.k0,
                    name(rule.target),
                    rule.e0,
                    rule.step
                )
                .unwrap();
            }
        }
        out
    }
}
