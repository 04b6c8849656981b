use std::fmt;

use num_bigint::BigUint;

use super::table::ActionTable;
use crate::element::NormalForm;
use crate::{oracle, wordproblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub location: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{level}: {}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Diagnostic> {
        self.0.iter()
    }

    fn error(&mut self, location: String, message: String) {
        self.0.push(Diagnostic {
            severity: Severity::Error,
            location,
            message,
        });
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Structural and period-consistency checks on an action table.
///
/// Checks that every `k >= 1` is covered exactly once, that each residue
/// class keeps one target letter, and that `a^{k+D} b = a^D (a^k b)` for
/// `k` up to `cutoff + 3D`.
pub fn validate(table: &ActionTable) -> Diagnostics {
    validate_with(table, None)
}

/// [`validate`], plus an exhaustive associativity check over exponents up
/// to `deep_bound` when given.
pub fn validate_with(table: &ActionTable, deep_bound: Option<u64>) -> Diagnostics {
    let alphabet = table.alphabet();
    let mut diags = Diagnostics::default();

    for a in alphabet.letters() {
        for b in alphabet.letters().filter(|&b| b != a) {
            if table.pair(a, b).is_none() {
                diags.error(
                    format!("{} {}", alphabet.name(a), alphabet.name(b)),
                    "no relations for this pair: uncovered exponent 1".into(),
                );
            }
        }
    }
    for (&(a, b), _) in table.pairs() {
        if a == b {
            diags.error(
                format!("{} {}", alphabet.name(a), alphabet.name(b)),
                "same-letter products are fixed (a^k a = a^(k+1)) and take no rules".into(),
            );
        }
    }
    if !diags.is_empty() {
        return diags;
    }

    let mut structurally_sound = true;
    for (&(a, b), pair) in table.pairs() {
        let loc = |k: Option<u64>| match k {
            Some(k) => format!("{}^{} {}", alphabet.name(a), k, alphabet.name(b)),
            None => format!("{} {}", alphabet.name(a), alphabet.name(b)),
        };
        let before = diags.len();
        let period = pair.period;
        if period == 0 {
            diags.error(loc(None), "period D must be at least 1".into());
            structurally_sound = false;
            continue;
        }
        for (&t, rule) in &pair.rules {
            if t >= period {
                diags.error(loc(None), format!("residue t={t} is not below D={period}"));
            } else if rule.k0 % period != t {
                diags.error(
                    loc(Some(rule.k0)),
                    format!("k0={} is not congruent to t={t} mod D={period}", rule.k0),
                );
            }
        }
        for t in 0..period.min(1 << 20) {
            if !pair.rules.contains_key(&t) {
                let k = pair
                    .exceptions
                    .keys()
                    .filter(|k| *k % period == t)
                    .max()
                    .map_or(if t == 0 { period } else { t }, |k| k + period);
                diags.error(
                    loc(Some(k)),
                    format!("uncovered exponent: residue class t={t} mod D={period} has no rule"),
                );
            }
        }
        for (&k, nf) in &pair.exceptions {
            let Some(rule) = pair.rules.get(&(k % period)) else {
                continue;
            };
            if k >= rule.k0 {
                if nf.letter != rule.target {
                    diags.error(
                        loc(Some(k)),
                        format!(
                            "target letter changes within residue class t={}: rule from k0={} \
                             targets {} but this exception targets {}",
                            k % period,
                            rule.k0,
                            alphabet.name(rule.target),
                            alphabet.name(nf.letter)
                        ),
                    );
                } else {
                    diags.error(
                        loc(Some(k)),
                        format!(
                            "covered twice: by an exception and by the rule from k0={}",
                            rule.k0
                        ),
                    );
                }
            }
        }
        for (&t, rule) in &pair.rules {
            let mut k = if t == 0 { period } else { t };
            while k < rule.k0 {
                if !pair.exceptions.contains_key(&k) {
                    diags.error(
                        loc(Some(k)),
                        format!(
                            "uncovered exponent: below k0={} of its class and no exception",
                            rule.k0
                        ),
                    );
                }
                k += period;
            }
        }
        if diags.len() > before {
            structurally_sound = false;
        }
    }
    if !structurally_sound {
        return diags;
    }

    // a^{k+D} b must equal a^D · (a^k b).
    for (&(a, b), pair) in table.pairs() {
        let period = pair.period;
        let limit = pair.cutoff() + 3 * period;
        let power = NormalForm::new(a, period);
        for k in 1..=limit {
            let loc = format!("{}^{} {}", alphabet.name(a), k + period, alphabet.name(b));
            let lhs = wordproblem::absorb(table, a, &BigUint::from(k + period), b);
            let rhs = wordproblem::absorb(table, a, &BigUint::from(k), b)
                .and_then(|inner| wordproblem::multiply(table, &power, &inner));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => {}
                (Ok(l), Ok(r)) => diags.error(
                    loc,
                    format!(
                        "period consistency fails: table gives {} but {}^{} ({}^{} {}) = {}",
                        alphabet.format_nf(&l),
                        alphabet.name(a),
                        period,
                        alphabet.name(a),
                        k,
                        alphabet.name(b),
                        alphabet.format_nf(&r)
                    ),
                ),
                (Err(e), _) | (_, Err(e)) => diags.error(loc, e.to_string()),
            }
        }
    }

    if let (true, Some(bound)) = (diags.is_empty(), deep_bound) {
        if let Some((x, y, z)) = oracle::check_associativity(table, bound) {
            diags.error(
                format!(
                    "({})({})({})",
                    alphabet.format_nf(&x),
                    alphabet.format_nf(&y),
                    alphabet.format_nf(&z)
                ),
                "product is not associative".into(),
            );
        }
    }
    diags
}
