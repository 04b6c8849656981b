//! Eventually periodic subsets of the positive integers.
//!
//! A set is stored as a finite list of exceptional values plus finitely many
//! arithmetic progressions `{start, start + step, start + 2·step, ...}`.
//! Beyond `max start + lcm(steps)` every such set is a union of full residue
//! classes, so containment questions are settled by a finite scan.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArithmeticProgression {
    pub start: u64,
    /// Zero denotes the singleton `{start}`.
    pub step: u64,
}

impl ArithmeticProgression {
    pub fn new(start: u64, step: u64) -> Self {
        assert!(start >= 1, "progressions live in the positive integers");
        ArithmeticProgression { start, step }
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.start {
            return false;
        }
        if self.step == 0 {
            n == self.start
        } else {
            (n - self.start).is_multiple_of(self.step)
        }
    }

    /// Whether every element of `self` is an element of `other`.
    pub fn is_subset_of(&self, other: &ArithmeticProgression) -> bool {
        if !other.contains(self.start) {
            return false;
        }
        match (self.step, other.step) {
            (0, _) => true,
            (_, 0) => false,
            (s, o) => s % o == 0,
        }
    }
}

/// Finite exceptions plus finitely many progressions, kept normalized: no
/// exception lies in a progression, no progression is contained in another,
/// and singleton progressions are stored as exceptions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EventuallyPeriodicSet {
    exceptions: BTreeSet<u64>,
    progressions: Vec<ArithmeticProgression>,
}

impl EventuallyPeriodicSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(
        exceptions: impl IntoIterator<Item = u64>,
        progressions: impl IntoIterator<Item = ArithmeticProgression>,
    ) -> Self {
        let mut set = EventuallyPeriodicSet {
            exceptions: exceptions.into_iter().collect(),
            progressions: progressions.into_iter().collect(),
        };
        assert!(
            !set.exceptions.contains(&0),
            "eventually periodic sets contain positive integers only"
        );
        set.normalize();
        set
    }

    pub fn finite(values: impl IntoIterator<Item = u64>) -> Self {
        Self::new(values, [])
    }

    pub fn progression(start: u64, step: u64) -> Self {
        Self::new([], [ArithmeticProgression::new(start, step)])
    }

    pub fn exceptions(&self) -> &BTreeSet<u64> {
        &self.exceptions
    }

    pub fn progressions(&self) -> &[ArithmeticProgression] {
        &self.progressions
    }

    pub fn is_empty(&self) -> bool {
        self.exceptions.is_empty() && self.progressions.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        let p = self.progressions.iter().map(|p| p.start).min();
        let e = self.exceptions.iter().next().copied();
        match (p, e) {
            (Some(p), Some(e)) => Some(p.min(e)),
            (p, e) => p.or(e),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        self.exceptions.contains(&n) || self.progressions.iter().any(|p| p.contains(n))
    }

    /// Largest exception or progression start; 0 for the empty set.
    pub fn threshold(&self) -> u64 {
        let e = self.exceptions.iter().next_back().copied().unwrap_or(0);
        let p = self.progressions.iter().map(|p| p.start).max().unwrap_or(0);
        e.max(p)
    }

    /// Least common multiple of the nonzero progression steps (1 if none).
    pub fn period(&self) -> u64 {
        self.progressions
            .iter()
            .filter(|p| p.step > 0)
            .fold(1, |acc, p| acc.lcm(&p.step))
    }

    /// Elements `<= bound`, ascending.
    pub fn elements_up_to(&self, bound: u64) -> Vec<u64> {
        let mut out: BTreeSet<u64> = self.exceptions.range(..=bound).copied().collect();
        for p in &self.progressions {
            let mut n = p.start;
            while n <= bound {
                out.insert(n);
                if p.step == 0 {
                    break;
                }
                n += p.step;
            }
        }
        out.into_iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(
            self.exceptions.iter().chain(&other.exceptions).copied(),
            self.progressions.iter().chain(&other.progressions).copied(),
        )
    }

    /// Minimum element of `self \ other`, or `None` when `self ⊆ other`.
    pub fn min_difference(&self, other: &Self) -> Option<u64> {
        // Past `bound`, both sets repeat with a common period, so a missing
        // element would already have shown up.
        let bound = self
            .threshold()
            .max(other.threshold())
            .saturating_add(self.period().lcm(&other.period()));

        let mut best = self
            .exceptions
            .iter()
            .copied()
            .find(|&n| !other.contains(n));
        for p in &self.progressions {
            let mut n = p.start;
            while n <= bound && best.is_none_or(|b| n < b) {
                if !other.contains(n) {
                    best = Some(n);
                    break;
                }
                if p.step == 0 {
                    break;
                }
                n += p.step;
            }
        }
        best
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.min_difference(other).is_none()
    }

    /// `{offset + scale·n : n ∈ self}`.
    pub fn affine_image(&self, offset: i64, scale: u64) -> Result<Self> {
        let map = |n: u64| -> Result<u64> {
            let v = offset as i128 + scale as i128 * n as i128;
            if v < 1 {
                return Err(Error::NonPositiveImage(v.to_string()));
            }
            u64::try_from(v).map_err(|_| Error::ExponentTooLarge(v.to_string()))
        };
        let exceptions = self
            .exceptions
            .iter()
            .map(|&n| map(n))
            .collect::<Result<Vec<_>>>()?;
        let progressions =
            self.progressions
                .iter()
                .map(|p| {
                    let step = p.step.checked_mul(scale).ok_or_else(|| {
                        Error::ExponentTooLarge(format!("{} * {}", p.step, scale))
                    })?;
                    Ok(ArithmeticProgression::new(map(p.start)?, step))
                })
                .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(exceptions, progressions))
    }

    /// `{n ∈ self : n ≡ residue (mod modulus)}`.
    pub fn restrict_residue(&self, modulus: u64, residue: u64) -> Self {
        assert!(modulus >= 1 && residue < modulus);
        let exceptions = self
            .exceptions
            .iter()
            .copied()
            .filter(|n| n % modulus == residue);
        let progressions = self.progressions.iter().filter_map(|p| {
            if p.step == 0 {
                return (p.start % modulus == residue).then_some(*p);
            }
            // s + i·step hits the class for some i < modulus/gcd, or never.
            let cycle = modulus / p.step.gcd(&modulus);
            (0..cycle)
                .map(|i| p.start + i * p.step)
                .find(|n| n % modulus == residue)
                .map(|start| ArithmeticProgression::new(start, p.step.lcm(&modulus)))
        });
        Self::new(exceptions, progressions.collect::<Vec<_>>())
    }

    /// `{n ∈ self : n >= lower}`.
    pub fn at_least(&self, lower: u64) -> Self {
        let exceptions = self.exceptions.range(lower..).copied();
        let progressions = self.progressions.iter().filter_map(|p| {
            if p.start >= lower {
                Some(*p)
            } else if p.step == 0 {
                None
            } else {
                let skips = (lower - p.start).div_ceil(p.step);
                Some(ArithmeticProgression::new(p.start + skips * p.step, p.step))
            }
        });
        Self::new(exceptions, progressions.collect::<Vec<_>>())
    }

    /// `{n / divisor : n ∈ self}` for a set whose elements are all multiples
    /// of `divisor`.
    pub fn divide_exact(&self, divisor: u64) -> Self {
        assert!(divisor >= 1);
        let exceptions = self.exceptions.iter().map(|&n| {
            assert_eq!(n % divisor, 0, "{n} is not a multiple of {divisor}");
            n / divisor
        });
        let progressions = self.progressions.iter().map(|p| {
            assert!(p.start % divisor == 0 && p.step % divisor == 0);
            ArithmeticProgression::new(p.start / divisor, p.step / divisor)
        });
        Self::new(
            exceptions.collect::<Vec<_>>(),
            progressions.collect::<Vec<_>>(),
        )
    }

    fn normalize(&mut self) {
        for p in self.progressions.iter().filter(|p| p.step == 0) {
            self.exceptions.insert(p.start);
        }
        self.progressions.retain(|p| p.step > 0);
        self.progressions.sort();
        self.progressions.dedup();
        let all = self.progressions.clone();
        self.progressions
            .retain(|p| !all.iter().any(|q| q != p && p.is_subset_of(q)));
        let progressions = &self.progressions;
        self.exceptions
            .retain(|&n| !progressions.iter().any(|p| p.contains(n)));
    }
}

impl fmt::Display for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.exceptions.is_empty() || self.progressions.is_empty() {
            let ex: Vec<String> = self.exceptions.iter().map(u64::to_string).collect();
            parts.push(format!("{{{}}}", ex.join(",")));
        }
        for p in &self.progressions {
            parts.push(format!("AP({},{})", p.start, p.step));
        }
        write!(f, "{}", parts.join(" ∪ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap(start: u64, step: u64) -> EventuallyPeriodicSet {
        EventuallyPeriodicSet::progression(start, step)
    }

    #[test]
    fn contains_examples() {
        let s = EventuallyPeriodicSet::new([3], [ArithmeticProgression::new(5, 1)]);
        assert!(s.contains(7));
        assert!(!s.contains(4));
        assert!(!ap(5, 2).contains(8));
    }

    #[test]
    fn min_difference_examples() {
        // Denoted set of the triple [1, 8, {3,5,6}].
        let b = EventuallyPeriodicSet::new([3, 5, 6], [ArithmeticProgression::new(8, 1)]);
        assert_eq!(ap(5, 2).min_difference(&b), Some(7));
        assert_eq!(ap(4, 2).min_difference(&ap(2, 2)), None);
        assert_eq!(
            EventuallyPeriodicSet::finite([1]).min_difference(&ap(2, 1)),
            Some(1)
        );
    }

    #[test]
    fn min_difference_sees_late_gaps() {
        // AP(1,6) ⊄ AP(1,2) ∪ AP(2,3)? 1,7,13,... are odd, so contained.
        let b = ap(1, 2).union(&ap(2, 3));
        assert_eq!(ap(1, 6).min_difference(&b), None);
        // AP(3,4) = 3,7,11,...; b2 = {3,7} ∪ AP(15,4) misses 11.
        let b2 = EventuallyPeriodicSet::new([3, 7], [ArithmeticProgression::new(15, 4)]);
        assert_eq!(ap(3, 4).min_difference(&b2), Some(11));
    }

    #[test]
    fn affine_image_examples() {
        assert_eq!(ap(2, 2).affine_image(3, 1).unwrap(), ap(5, 2));
        assert_eq!(
            EventuallyPeriodicSet::finite([1, 2])
                .affine_image(0, 3)
                .unwrap(),
            EventuallyPeriodicSet::finite([3, 6])
        );
        assert_eq!(ap(1, 1).affine_image(1, 2).unwrap(), ap(3, 2));
        assert!(ap(1, 1).affine_image(-1, 1).is_err());
        assert_eq!(
            ap(4, 3).affine_image(7, 0).unwrap(),
            EventuallyPeriodicSet::finite([7])
        );
    }

    #[test]
    fn restrict_residue_examples() {
        assert_eq!(ap(1, 1).restrict_residue(2, 0), ap(2, 2));
        assert_eq!(ap(3, 3).restrict_residue(2, 1), ap(3, 6));
        assert!(EventuallyPeriodicSet::finite([4])
            .restrict_residue(3, 0)
            .is_empty());
        assert!(EventuallyPeriodicSet::finite([4])
            .restrict_residue(3, 1)
            .contains(4));
        assert!(EventuallyPeriodicSet::finite([4])
            .restrict_residue(3, 2)
            .is_empty());
        assert!(ap(2, 4).restrict_residue(2, 1).is_empty());
    }

    #[test]
    fn normalization_drops_redundancy() {
        let s = EventuallyPeriodicSet::new(
            [4, 9, 10],
            [
                ArithmeticProgression::new(2, 2),
                ArithmeticProgression::new(4, 4),
                ArithmeticProgression::new(9, 0),
            ],
        );
        assert_eq!(s.progressions(), &[ArithmeticProgression::new(2, 2)]);
        assert_eq!(s.exceptions().iter().copied().collect::<Vec<_>>(), vec![9]);
    }

    #[test]
    fn at_least_and_divide() {
        assert_eq!(ap(1, 3).at_least(5), ap(7, 3));
        assert_eq!(ap(6, 3).divide_exact(3), ap(2, 1));
        let s = EventuallyPeriodicSet::new([2], [ArithmeticProgression::new(5, 1)]);
        assert_eq!(s.at_least(3), ap(5, 1));
    }
}
