//! Letters, normal forms and words.
//!
//! Every element of a union `S = N_a ∪ N_b ∪ ...` of free monogenic
//! semigroups is a unique power `a^k` with `k >= 1`; that pair is its
//! [`NormalForm`]. A [`Word`] is a product of such powers that has not been
//! reduced yet.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Index of a generator in its [`Alphabet`]. Letters compare in declaration
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub usize);

impl Letter {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A finite, nonempty list of pairwise distinct generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Empty("alphabet"));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::Syntax {
                    line: 1,
                    column: 1,
                    message: format!("`{name}` is not a valid letter name"),
                });
            }
            if names[..i].contains(name) {
                return Err(Error::Syntax {
                    line: 1,
                    column: 1,
                    message: format!("letter `{name}` declared twice"),
                });
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(Letter)
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(Letter)
    }

    /// Renders `a^k`.
    pub fn format_nf(&self, nf: &NormalForm) -> String {
        format!("{}^{}", self.name(nf.letter), nf.exponent)
    }

    pub fn format_word(&self, word: &Word) -> String {
        word.runs()
            .iter()
            .map(|(l, e)| {
                if e.is_one() {
                    self.name(*l).to_string()
                } else {
                    format!("{}^{}", self.name(*l), e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses a word such as `a^3 b^2 a` or `abab`.
    ///
    /// Whitespace between runs is optional; without it, letter names are
    /// matched greedily (longest name first).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let mut runs = Vec::new();
        while pos < chars.len() {
            if chars[pos].is_whitespace() {
                pos += 1;
                continue;
            }
            let column = pos + 1;
            let letter = self.longest_match(&chars[pos..]).ok_or_else(|| {
                let name: String = chars[pos..]
                    .iter()
                    .take_while(|c| c.is_alphanumeric() || **c == '_')
                    .collect();
                if name.is_empty() {
                    Error::Syntax {
                        line: 1,
                        column,
                        message: format!("unexpected character `{}`", chars[pos]),
                    }
                } else {
                    Error::UnknownLetter {
                        line: 1,
                        column,
                        name,
                    }
                }
            })?;
            pos += self.name(letter).chars().count();
            let mut exponent = BigUint::one();
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::Syntax {
                        line: 1,
                        column: start + 1,
                        message: "expected a decimal exponent after `^`".into(),
                    });
                }
                let digits: String = chars[start..pos].iter().collect();
                exponent = digits.parse().expect("digits");
                if exponent.is_zero() {
                    return Err(Error::ZeroExponent {
                        line: 1,
                        column: start + 1,
                    });
                }
            }
            runs.push((letter, exponent));
        }
        Word::new(runs)
    }

    /// Parses a single power `a^k` (or `a`).
    pub fn parse_normal_form(&self, text: &str) -> Result<NormalForm> {
        let word = self.parse_word(text)?;
        match word.runs() {
            [(letter, exponent)] => Ok(NormalForm::new(*letter, exponent.clone())),
            _ => Err(Error::Syntax {
                line: 1,
                column: 1,
                message: format!("`{}` is not a single power a^k", text.trim()),
            }),
        }
    }

    /// Parses a comma-separated list of powers, e.g. `a^3,b^2`.
    pub fn parse_normal_forms(&self, text: &str) -> Result<Vec<NormalForm>> {
        let forms = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| self.parse_normal_form(s))
            .collect::<Result<Vec<_>>>()?;
        if forms.is_empty() {
            return Err(Error::Empty("generator list"));
        }
        Ok(forms)
    }

    fn longest_match(&self, rest: &[char]) -> Option<Letter> {
        self.letters()
            .filter(|l| {
                let name: Vec<char> = self.name(*l).chars().collect();
                rest.len() >= name.len() && rest[..name.len()] == name[..]
            })
            .max_by_key(|l| self.name(*l).len())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// A canonical element `letter^exponent`, exponent at least 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    pub letter: Letter,
    pub exponent: BigUint,
}

impl NormalForm {
    /// # Panics
    ///
    /// If `exponent` is zero: the free monogenic semigroup has no identity.
    pub fn new(letter: Letter, exponent: impl Into<BigUint>) -> Self {
        let exponent = exponent.into();
        assert!(!exponent.is_zero(), "normal form exponent must be >= 1");
        NormalForm { letter, exponent }
    }

    /// The exponent as a machine integer, when it fits.
    pub fn exponent_u64(&self) -> Option<u64> {
        self.exponent.to_u64()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}^{}", self.letter.0, self.exponent)
    }
}

/// A nonempty product of letter powers. Adjacent runs with the same letter
/// are merged on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    runs: Vec<(Letter, BigUint)>,
}

impl Word {
    pub fn new(runs: Vec<(Letter, BigUint)>) -> Result<Self> {
        let mut merged: Vec<(Letter, BigUint)> = Vec::with_capacity(runs.len());
        for (letter, exponent) in runs {
            if exponent.is_zero() {
                return Err(Error::ZeroExponent { line: 1, column: 1 });
            }
            match merged.last_mut() {
                Some((last, e)) if *last == letter => *e += exponent,
                _ => merged.push((letter, exponent)),
            }
        }
        if merged.is_empty() {
            return Err(Error::Empty("word"));
        }
        Ok(Word { runs: merged })
    }

    /// Shorthand for tests and fixtures: `[(letter, exponent), ...]`.
    pub fn from_runs(runs: &[(Letter, u64)]) -> Result<Self> {
        Word::new(runs.iter().map(|&(l, e)| (l, BigUint::from(e))).collect())
    }

    pub fn runs(&self) -> &[(Letter, BigUint)] {
        &self.runs
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut runs = self.runs.clone();
        runs.extend(other.runs.iter().cloned());
        Word::new(runs).expect("concatenation of nonempty words")
    }
}

impl From<NormalForm> for Word {
    fn from(nf: NormalForm) -> Self {
        Word {
            runs: vec![(nf.letter, nf.exponent)],
        }
    }
}

impl From<&NormalForm> for Word {
    fn from(nf: &NormalForm) -> Self {
        Word {
            runs: vec![(nf.letter, nf.exponent.clone())],
        }
    }
}
