//! Subsemigroups of `(ℕ, +)` described by triples `[d, N, F]`.
//!
//! Every subsemigroup of the positive integers is `F ∪ {dk : dk >= N}` where
//! `d` is the gcd of its elements and `F` is a finite set below the
//! conductor `N`. The triples here are exact: `N` is the least multiple of
//! `d` past which every multiple of `d` is representable, found by a sieve.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::eps::{ArithmeticProgression, EventuallyPeriodicSet};
use crate::error::{Error, Result};

pub fn gcd_of<'a>(values: impl IntoIterator<Item = &'a u64>) -> Result<u64> {
    values
        .into_iter()
        .fold(None, |acc: Option<u64>, v| {
            Some(acc.map_or(*v, |a| a.gcd(v)))
        })
        .ok_or(Error::Empty("generator set"))
}

/// The generic conductor bound `2·d·n₁·n₂⋯n_k`.
pub fn conductor_bound(gens: &BTreeSet<u64>) -> Result<BigUint> {
    let d = gcd_of(gens)?;
    Ok(gens.iter().fold(BigUint::from(2u32) * d, |acc, g| acc * *g))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub d: u64,
    pub conductor: u64,
    pub sporadic: BTreeSet<u64>,
}

impl Triple {
    pub fn contains(&self, n: u64) -> bool {
        self.sporadic.contains(&n) || (n >= self.conductor && n.is_multiple_of(self.d))
    }

    /// Number of positive multiples of `d` missing from the set.
    pub fn gaps(&self) -> u64 {
        self.conductor / self.d - 1 - self.sporadic.len() as u64
    }

    /// `(d, gaps)`; adding a missing element strictly decreases this
    /// lexicographically.
    pub fn measure(&self) -> (u64, u64) {
        (self.d, self.gaps())
    }

    pub fn to_eps(&self) -> EventuallyPeriodicSet {
        EventuallyPeriodicSet::new(
            self.sporadic.iter().copied(),
            [ArithmeticProgression::new(
                self.conductor.next_multiple_of(self.d),
                self.d,
            )],
        )
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sporadic: Vec<String> = self.sporadic.iter().map(u64::to_string).collect();
        write!(
            f,
            "[d={}, N={}, F={{{}}}]",
            self.d,
            self.conductor,
            sporadic.join(",")
        )
    }
}

/// The exact triple of the subsemigroup generated by `gens`.
pub fn triple_from_generators(gens: &BTreeSet<u64>) -> Result<Triple> {
    let d = gcd_of(gens)?;
    if gens.contains(&0) {
        return Err(Error::NonPositiveImage("0".into()));
    }
    let units: Vec<usize> = gens
        .iter()
        .map(|g| usize::try_from(g / d).map_err(|_| Error::ExponentTooLarge(g.to_string())))
        .collect::<Result<_>>()?;
    let smallest = *units.iter().min().expect("nonempty");

    // representable[n]: n (in units of d) is a sum of generators; index 0 is
    // the empty sum. Once `smallest` consecutive values are representable,
    // adding `smallest` covers everything after them.
    let mut representable = vec![true];
    let mut run = 0usize;
    let mut last_gap = 0usize;
    let mut n = 0usize;
    while run < smallest {
        n += 1;
        let hit = units.iter().any(|&g| g <= n && representable[n - g]);
        representable.push(hit);
        if hit {
            run += 1;
        } else {
            run = 0;
            last_gap = n;
        }
    }

    let conductor = (last_gap as u64 + 1) * d;
    let sporadic = (1..=last_gap)
        .filter(|&i| representable[i])
        .map(|i| i as u64 * d)
        .collect();
    let triple = Triple {
        d,
        conductor,
        sporadic,
    };
    debug_assert!(BigUint::from(triple.conductor) <= conductor_bound(gens)?);
    Ok(triple)
}

/// Adds `n` (not yet an element) to the generators and re-sieves.
pub fn triple_add_element(
    triple: &Triple,
    gens: &BTreeSet<u64>,
    n: u64,
) -> Result<(Triple, BTreeSet<u64>)> {
    if triple.contains(n) {
        return Err(Error::AlreadyMember(n));
    }
    let mut gens = gens.clone();
    gens.insert(n);
    Ok((triple_from_generators(&gens)?, gens))
}

/// A finitely generated subsemigroup of ℕ: its generators together with
/// their exact triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSubsemigroup {
    generators: BTreeSet<u64>,
    triple: Triple,
}

impl NumericalSubsemigroup {
    pub fn from_generators(gens: impl IntoIterator<Item = u64>) -> Result<Self> {
        let generators: BTreeSet<u64> = gens.into_iter().collect();
        let triple = triple_from_generators(&generators)?;
        Ok(NumericalSubsemigroup { generators, triple })
    }

    pub fn generators(&self) -> &BTreeSet<u64> {
        &self.generators
    }

    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn contains(&self, n: u64) -> bool {
        self.triple.contains(n)
    }

    pub fn add_element(&mut self, n: u64) -> Result<()> {
        let (triple, generators) = triple_add_element(&self.triple, &self.generators, n)?;
        self.triple = triple;
        self.generators = generators;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    fn triple(d: u64, conductor: u64, sporadic: &[u64]) -> Triple {
        Triple {
            d,
            conductor,
            sporadic: set(sporadic),
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_of(&[4, 6]).unwrap(), 2);
        assert_eq!(gcd_of(&[3, 5]).unwrap(), 1);
        assert_eq!(gcd_of(&[6]).unwrap(), 6);
        assert!(gcd_of(&[]).is_err());
    }

    #[test]
    fn conductor_bound_examples() {
        assert_eq!(conductor_bound(&set(&[3, 5])).unwrap(), 30u32.into());
        assert_eq!(conductor_bound(&set(&[1])).unwrap(), 2u32.into());
        assert_eq!(conductor_bound(&set(&[4, 6])).unwrap(), 96u32.into());
    }

    #[test]
    fn triples_from_generators() {
        assert_eq!(
            triple_from_generators(&set(&[3, 5])).unwrap(),
            triple(1, 8, &[3, 5, 6])
        );
        assert_eq!(
            triple_from_generators(&set(&[4, 6])).unwrap(),
            triple(2, 4, &[])
        );
        assert_eq!(
            triple_from_generators(&set(&[1])).unwrap(),
            triple(1, 1, &[])
        );
        assert_eq!(
            triple_from_generators(&set(&[3])).unwrap(),
            triple(3, 3, &[])
        );
        assert_eq!(
            triple_from_generators(&set(&[2, 3])).unwrap(),
            triple(1, 2, &[])
        );
    }

    #[test]
    fn triple_membership() {
        let t = triple(1, 8, &[3, 5, 6]);
        assert!(!t.contains(7));
        assert!(t.contains(100));
        assert!(!triple(2, 4, &[]).contains(5));
    }

    #[test]
    fn adding_elements() {
        let (t, g) = triple_add_element(&triple(3, 3, &[]), &set(&[3]), 5).unwrap();
        assert_eq!((t, g), (triple(1, 8, &[3, 5, 6]), set(&[3, 5])));
        let (t, _) = triple_add_element(&triple(1, 8, &[3, 5, 6]), &set(&[3, 5]), 7).unwrap();
        assert_eq!(t, triple(1, 5, &[3]));
        let (t, _) = triple_add_element(&triple(2, 4, &[]), &set(&[4, 6]), 3).unwrap();
        assert_eq!(t, triple(1, 6, &[3, 4]));
        assert_eq!(
            triple_add_element(&triple(2, 4, &[]), &set(&[4, 6]), 8),
            Err(Error::AlreadyMember(8))
        );
    }

    #[test]
    fn measure_decreases_on_addition() {
        let mut s = NumericalSubsemigroup::from_generators([3]).unwrap();
        let mut prev = s.triple().measure();
        for n in [5, 7] {
            s.add_element(n).unwrap();
            assert!(s.triple().measure() < prev);
            prev = s.triple().measure();
        }
        assert_eq!(prev, (1, 3));
    }

    #[test]
    fn eps_encoding() {
        let e = triple(1, 8, &[3, 5, 6]).to_eps();
        assert_eq!(
            e,
            EventuallyPeriodicSet::new([3, 5, 6], [ArithmeticProgression::new(8, 1)])
        );
        assert_eq!(
            triple(2, 4, &[]).to_eps(),
            EventuallyPeriodicSet::progression(4, 2)
        );
        assert_eq!(
            triple(1, 1, &[]).to_eps(),
            EventuallyPeriodicSet::progression(1, 1)
        );
    }

    #[test]
    fn display_format() {
        assert_eq!(triple(1, 5, &[3]).to_string(), "[d=1, N=5, F={3}]");
        assert_eq!(triple(2, 2, &[]).to_string(), "[d=2, N=2, F={}]");
    }
}
