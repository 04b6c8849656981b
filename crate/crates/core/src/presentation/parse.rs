//! Line-based `.sgp` presentation files.
//!
//! ```text
//! # comment
//! letters: a b
//! rel: a 1 b -> a 2                                  # a^1 b = a^2
//! ap: a b D=1 t=0 k0=1 -> a e0=2 step=1              # compiled rule
//! exc: a 1 b -> a 2                                  # compiled exception
//! ```
//!
//! A file is either raw (`rel:` only) or compiled (`ap:`/`exc:` only).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use super::table::{ActionTable, PairAction, RawPresentation, Relation, ResidueRule};
use crate::element::{Alphabet, Letter, NormalForm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Raw(RawPresentation),
    Compiled(ActionTable),
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: offset + line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: offset + line[..s].chars().count() + 1,
        });
    }
    out
}

struct LineParser<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn syntax(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn get(&self, i: usize, what: &str) -> Result<Token<'a>> {
        self.tokens
            .get(i)
            .copied()
            .ok_or_else(|| self.syntax(self.end_column, format!("expected {what}")))
    }

    fn expect_count(&self, n: usize, shape: &str) -> Result<()> {
        if self.tokens.len() > n {
            let extra = self.tokens[n];
            return Err(self.syntax(
                extra.column,
                format!("unexpected `{}`; expected {shape}", extra.text),
            ));
        }
        self.get(n - 1, shape).map(|_| ())
    }

    fn arrow(&self, i: usize) -> Result<()> {
        let t = self.get(i, "`->`")?;
        if t.text != "->" {
            return Err(self.syntax(t.column, format!("expected `->`, found `{}`", t.text)));
        }
        Ok(())
    }

    fn natural(&self, t: Token<'_>) -> Result<BigUint> {
        if t.text.is_empty() || !t.text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.syntax(
                t.column,
                format!("expected a natural number, found `{}`", t.text),
            ));
        }
        Ok(t.text.parse().expect("digits"))
    }

    fn positive(&self, t: Token<'_>) -> Result<BigUint> {
        let n = self.natural(t)?;
        if n == BigUint::ZERO {
            return Err(Error::ZeroExponent {
                line: self.line,
                column: t.column,
            });
        }
        Ok(n)
    }

    fn small(&self, t: Token<'_>, n: BigUint) -> Result<u64> {
        u64::try_from(&n).map_err(|_| self.syntax(t.column, format!("`{}` is too large", t.text)))
    }

    fn positive_u64(&self, i: usize, what: &str) -> Result<u64> {
        let t = self.get(i, what)?;
        let n = self.positive(t)?;
        self.small(t, n)
    }

    /// `key=value` with a natural value.
    fn keyed(&self, i: usize, key: &str) -> Result<(Token<'a>, BigUint)> {
        let t = self.get(i, &format!("`{key}=`"))?;
        let value = t
            .text
            .strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| {
                self.syntax(
                    t.column,
                    format!("expected `{key}=...`, found `{}`", t.text),
                )
            })?;
        let vt = Token {
            text: value,
            column: t.column + key.len() + 1,
        };
        Ok((vt, self.natural(vt)?))
    }

    fn letter(&self, alphabet: Option<&Alphabet>, i: usize) -> Result<Letter> {
        let t = self.get(i, "a letter")?;
        let alphabet = alphabet
            .ok_or_else(|| self.syntax(t.column, "`letters:` must come before relations"))?;
        alphabet.lookup(t.text).ok_or_else(|| Error::UnknownLetter {
            line: self.line,
            column: t.column,
            name: t.text.to_string(),
        })
    }
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Form {
    Unknown,
    Raw,
    Compiled,
}

/// Parses a raw or compiled presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut alphabet: Option<Alphabet> = None;
    let mut form = Form::Unknown;
    let mut relations = Vec::new();
    let mut seen_relations = BTreeSet::new();
    let mut pairs: BTreeMap<(Letter, Letter), PairAction> = BTreeMap::new();

    for (index, raw_line) in text.lines().enumerate() {
        let line_no = index + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let trimmed_start = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = match body.split_once(':') {
            Some((k, r)) => (k.trim(), r),
            None => {
                return Err(Error::Syntax {
                    line: line_no,
                    column: trimmed_start + 1,
                    message: format!("expected `keyword:`, found `{body}`"),
                })
            }
        };
        let rest_offset = trimmed_start + body[..body.len() - rest.len()].chars().count();
        let p = LineParser {
            line: line_no,
            tokens: tokens(rest, rest_offset),
            end_column: content.trim_end().chars().count() + 1,
        };

        let mut set_form = |f: Form| -> Result<()> {
            if form != Form::Unknown && form != f {
                return Err(Error::MixedFormat { line: line_no });
            }
            form = f;
            Ok(())
        };

        match keyword {
            "letters" => {
                if alphabet.is_some() {
                    return Err(p.syntax(trimmed_start + 1, "`letters:` given twice"));
                }
                let names: Vec<&str> = p.tokens.iter().map(|t| t.text).collect();
                for t in &p.tokens {
                    if !crate::element::is_identifier(t.text) {
                        return Err(
                            p.syntax(t.column, format!("`{}` is not a valid letter name", t.text))
                        );
                    }
                }
                alphabet = Some(Alphabet::new(names).map_err(|e| match e {
                    Error::Syntax { message, .. } => p.syntax(trimmed_start + 1, message),
                    other => other,
                })?);
            }
            "rel" => {
                set_form(Form::Raw)?;
                p.expect_count(6, "`rel: <a> <k> <b> -> <c> <m>`")?;
                let k = p.positive_u64(1, "the exponent k")?;
                p.arrow(3)?;
                let m = p.positive(p.get(5, "the exponent m")?)?;
                let a = p.letter(alphabet.as_ref(), 0)?;
                let b = p.letter(alphabet.as_ref(), 2)?;
                let c = p.letter(alphabet.as_ref(), 4)?;
                if !seen_relations.insert((a, k, b)) {
                    let alpha = alphabet.as_ref().expect("checked by letter()");
                    return Err(Error::DuplicateRelation {
                        line: line_no,
                        a: alpha.name(a).into(),
                        k,
                        b: alpha.name(b).into(),
                    });
                }
                relations.push(Relation { a, k, b, c, m });
            }
            "exc" => {
                set_form(Form::Compiled)?;
                p.expect_count(6, "`exc: <a> <k> <b> -> <c> <m>`")?;
                let k = p.positive_u64(1, "the exponent k")?;
                p.arrow(3)?;
                let m = p.positive(p.get(5, "the exponent m")?)?;
                let a = p.letter(alphabet.as_ref(), 0)?;
                let b = p.letter(alphabet.as_ref(), 2)?;
                let c = p.letter(alphabet.as_ref(), 4)?;
                let pair = pairs.entry((a, b)).or_insert_with(empty_pair);
                if pair.exceptions.insert(k, NormalForm::new(c, m)).is_some() {
                    let alpha = alphabet.as_ref().expect("checked by letter()");
                    return Err(Error::DuplicateRelation {
                        line: line_no,
                        a: alpha.name(a).into(),
                        k,
                        b: alpha.name(b).into(),
                    });
                }
            }
            "ap" => {
                set_form(Form::Compiled)?;
                p.expect_count(
                    9,
                    "`ap: <a> <b> D=<D> t=<t> k0=<k0> -> <c> e0=<e0> step=<s>`",
                )?;
                let (dt, d) = p.keyed(2, "D")?;
                let period = p.small(dt, d)?;
                if period == 0 {
                    return Err(Error::ZeroExponent {
                        line: line_no,
                        column: dt.column,
                    });
                }
                let (tt, t) = p.keyed(3, "t")?;
                let t = p.small(tt, t)?;
                let (kt, k0) = p.keyed(4, "k0")?;
                let k0 = p.small(kt, k0)?;
                if k0 == 0 {
                    return Err(Error::ZeroExponent {
                        line: line_no,
                        column: kt.column,
                    });
                }
                p.arrow(5)?;
                let (et, e0) = p.keyed(7, "e0")?;
                if e0 == BigUint::ZERO {
                    return Err(Error::ZeroExponent {
                        line: line_no,
                        column: et.column,
                    });
                }
                let (_, step) = p.keyed(8, "step")?;
                let a = p.letter(alphabet.as_ref(), 0)?;
                let b = p.letter(alphabet.as_ref(), 1)?;
                let target = p.letter(alphabet.as_ref(), 6)?;
                let pair = pairs.entry((a, b)).or_insert_with(empty_pair);
                if pair.period != 0 && pair.period != period {
                    return Err(p.syntax(
                        dt.column,
                        format!(
                            "period D={period} disagrees with D={} given earlier for this pair",
                            pair.period
                        ),
                    ));
                }
                pair.period = period;
                let rule = ResidueRule {
                    target,
                    k0,
                    e0,
                    step,
                };
                if pair.rules.insert(t, rule).is_some() {
                    return Err(p.syntax(tt.column, format!("residue t={t} given twice")));
                }
            }
            other => {
                return Err(Error::Syntax {
                    line: line_no,
                    column: trimmed_start + 1,
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
    }

    let alphabet = alphabet.ok_or(Error::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing `letters:` line".into(),
    })?;
    match form {
        Form::Compiled => {
            for pair in pairs.values_mut() {
                // Exception-only pairs carry no period; 1 keeps them well-formed
                // and validate reports the missing rule.
                pair.period = pair.period.max(1);
            }
            Ok(Presentation::Compiled(ActionTable::new(alphabet, pairs)))
        }
        Form::Raw | Form::Unknown => Ok(Presentation::Raw(RawPresentation {
            alphabet,
            relations,
        })),
    }
}

fn empty_pair() -> PairAction {
    PairAction {
        period: 0,
        rules: BTreeMap::new(),
        exceptions: BTreeMap::new(),
    }
}
