//! Subsemigroup membership by saturation.
//!
//! For generators `A_T`, keep one numerical subsemigroup `U_j ≤ N_j` per
//! copy, starting from the generators that lie in it. While some
//! `U_i · x` (x ∈ A_T) leaves `U_1 ∪ ⋯ ∪ U_m`, add the least escaping
//! exponent to its copy. Each addition lowers the `(d, gaps)` measure of
//! that copy, so the loop stops, and at that point `⋃ U_j = ⟨A_T⟩`.
//!
//! `U_i · x` is an infinite set. It is computed from an [`ActionProfile`]:
//! the map `k ↦ a^k x` is affine on finitely many progressions outside a
//! finite exceptional set, and two hits with the same target letter pin a
//! progression down exactly.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::element::{Letter, NormalForm};
use crate::eps::EventuallyPeriodicSet;
use crate::error::{Error, Result};
use crate::numsg::{NumericalSubsemigroup, Triple};
use crate::presentation::ActionTable;
use crate::wordproblem;

/// `a^{anchor + t·difference} · x = target^{exponent + t·step}`, `t >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnchoredProgression {
    pub target: Letter,
    pub anchor: u64,
    pub exponent: u64,
    pub difference: u64,
    pub step: u64,
}

impl AnchoredProgression {
    pub fn covers(&self, k: u64) -> bool {
        k >= self.anchor && (k - self.anchor).is_multiple_of(self.difference)
    }

    pub fn value_at(&self, k: u64) -> u64 {
        self.exponent + self.step * ((k - self.anchor) / self.difference)
    }
}

/// The right action of `x` on the copy `N_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionProfile {
    pub source: Letter,
    pub right: NormalForm,
    pub exceptions: BTreeMap<u64, NormalForm>,
    pub progressions: Vec<AnchoredProgression>,
    /// Number of exponents `k` that were evaluated.
    pub samples: u64,
}

impl ActionProfile {
    /// `a^k · x`, predicted from the profile.
    pub fn evaluate(&self, k: u64) -> Option<NormalForm> {
        if let Some(nf) = self.exceptions.get(&k) {
            return Some(nf.clone());
        }
        self.progressions
            .iter()
            .find(|p| p.covers(k))
            .map(|p| NormalForm::new(p.target, p.value_at(k)))
    }

    /// Progressions with the given target, in order of discovery.
    pub fn progressions_to(&self, target: Letter) -> impl Iterator<Item = &AnchoredProgression> {
        self.progressions.iter().filter(move |p| p.target == target)
    }
}

/// Default sampling limit: `4 · (max cutoff + lcm of periods)`.
pub fn default_window(table: &ActionTable) -> u64 {
    4 * (table.max_cutoff() + table.period_lcm())
}

fn to_u64(e: &BigUint) -> Result<u64> {
    e.to_u64()
        .ok_or_else(|| Error::ExponentTooLarge(e.to_string()))
}

fn profile_error(
    table: &ActionTable,
    a: Letter,
    x: &NormalForm,
    k: u64,
    expected: u64,
    found: &NormalForm,
    target: Letter,
) -> Error {
    let alphabet = table.alphabet();
    Error::Inconsistent {
        a: alphabet.name(a).into(),
        b: alphabet.format_nf(x),
        k,
        expected: format!("{}^{}", alphabet.name(target), expected),
        found: alphabet.format_nf(found),
    }
}

/// Samples `a^k · x` for `k = 1, 2, …` until the progressions found so far
/// cover a full period past their latest anchor.
pub fn action_profile(
    table: &ActionTable,
    a: Letter,
    x: &NormalForm,
    window: u64,
) -> Result<ActionProfile> {
    assert!(window >= 2, "sampling window must be at least 2");
    let mut samples: Vec<NormalForm> = Vec::new();
    let mut last_hit: HashMap<Letter, (u64, u64)> = HashMap::new();
    let mut progressions: Vec<AnchoredProgression> = Vec::new();

    let stable_at = |progressions: &[AnchoredProgression], k: u64| -> bool {
        if progressions.is_empty() {
            return false;
        }
        let period = progressions
            .iter()
            .fold(1u64, |acc, p| acc.lcm(&p.difference));
        let start = progressions
            .iter()
            .map(|p| p.anchor)
            .max()
            .expect("nonempty");
        k + 1 >= start + period
            && (start..start + period).all(|n| progressions.iter().any(|p| p.covers(n)))
    };

    let mut k = 0u64;
    loop {
        k += 1;
        if k > window {
            let alphabet = table.alphabet();
            return Err(Error::WindowExhausted {
                a: alphabet.name(a).into(),
                x: alphabet.format_nf(x),
                window,
            });
        }
        let value = wordproblem::multiply(table, &NormalForm::new(a, k), x)?;
        let e = to_u64(&value.exponent)?;

        let mut explained = false;
        for p in progressions.iter().filter(|p| p.covers(k)) {
            let expected = p.value_at(k);
            if p.target != value.letter || expected != e {
                return Err(profile_error(table, a, x, k, expected, &value, p.target));
            }
            explained = true;
        }
        if !explained {
            if let Some(&(kp, ep)) = last_hit.get(&value.letter) {
                if e < ep {
                    return Err(profile_error(table, a, x, k, ep, &value, value.letter));
                }
                progressions.push(AnchoredProgression {
                    target: value.letter,
                    anchor: kp,
                    exponent: ep,
                    difference: k - kp,
                    step: e - ep,
                });
            }
        }
        last_hit.insert(value.letter, (k, e));
        samples.push(value);

        if stable_at(&progressions, k) {
            break;
        }
    }

    // Overlapping progressions must agree wherever they meet; both sides
    // are affine on the common classes, so two periods settle it.
    let period = progressions
        .iter()
        .fold(1u64, |acc, p| acc.lcm(&p.difference));
    let start = progressions.iter().map(|p| p.anchor).max().unwrap_or(1);
    for n in start..start + 2 * period {
        let mut covering = progressions.iter().filter(|p| p.covers(n));
        if let Some(first) = covering.next() {
            for other in covering {
                if other.target != first.target || other.value_at(n) != first.value_at(n) {
                    let found = NormalForm::new(other.target, other.value_at(n));
                    return Err(profile_error(
                        table,
                        a,
                        x,
                        n,
                        first.value_at(n),
                        &found,
                        first.target,
                    ));
                }
            }
        }
    }

    let exceptions = samples
        .iter()
        .enumerate()
        .map(|(i, nf)| (i as u64 + 1, nf))
        .filter(|(k, _)| !progressions.iter().any(|p| p.covers(*k)))
        .map(|(k, nf)| (k, nf.clone()))
        .collect();
    Ok(ActionProfile {
        source: a,
        right: x.clone(),
        exceptions,
        progressions,
        samples: k,
    })
}

/// `{e : a^k x = j^e for some k ∈ domain}` for every target copy `j`.
pub fn image_of_set(
    profile: &ActionProfile,
    domain: &EventuallyPeriodicSet,
) -> Result<BTreeMap<Letter, EventuallyPeriodicSet>> {
    let mut images: BTreeMap<Letter, EventuallyPeriodicSet> = BTreeMap::new();
    let mut add = |letter: Letter, set: EventuallyPeriodicSet| {
        if set.is_empty() {
            return;
        }
        let entry = images.entry(letter).or_default();
        *entry = entry.union(&set);
    };

    for (&k, nf) in &profile.exceptions {
        if domain.contains(k) {
            add(
                nf.letter,
                EventuallyPeriodicSet::finite([to_u64(&nf.exponent)?]),
            );
        }
    }
    for p in &profile.progressions {
        let slice = domain
            .at_least(p.anchor)
            .restrict_residue(p.difference, p.anchor % p.difference);
        if slice.is_empty() {
            continue;
        }
        // k = anchor + t·difference  ↦  t + 1  ↦  exponent + t·step
        let anchor =
            i64::try_from(p.anchor).map_err(|_| Error::ExponentTooLarge(p.anchor.to_string()))?;
        let indices = slice
            .affine_image(p.difference as i64 - anchor, 1)?
            .divide_exact(p.difference);
        let offset = p.exponent as i64 - p.step as i64;
        add(p.target, indices.affine_image(offset, p.step)?);
    }
    Ok(images)
}

/// `U_i · x` escapes the union: `source^k · generator = target^witness` for
/// some `source^k ∈ U_i`, and `target^witness` is not in `U_target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub source: Letter,
    pub generator: usize,
    pub target: Letter,
    pub witness: u64,
}

/// One witness added during saturation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Addition {
    pub letter: Letter,
    pub element: u64,
    /// `(d, gaps)` of the copy before the addition; `None` if it was new.
    pub before: Option<(u64, u64)>,
    pub after: (u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationState {
    pub generators: Vec<NormalForm>,
    copies: BTreeMap<Letter, NumericalSubsemigroup>,
    pub trace: Vec<Addition>,
}

impl SaturationState {
    /// One subsemigroup per letter, generated by the exponents of `A_T` in
    /// that copy.
    pub fn initial(generators: &[NormalForm]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Empty("generating set"));
        }
        let mut by_letter: BTreeMap<Letter, BTreeSet<u64>> = BTreeMap::new();
        for g in generators {
            by_letter
                .entry(g.letter)
                .or_default()
                .insert(to_u64(&g.exponent)?);
        }
        let copies = by_letter
            .into_iter()
            .map(|(l, gens)| Ok((l, NumericalSubsemigroup::from_generators(gens)?)))
            .collect::<Result<_>>()?;
        Ok(SaturationState {
            generators: generators.to_vec(),
            copies,
            trace: Vec::new(),
        })
    }

    pub fn copy(&self, letter: Letter) -> Option<&NumericalSubsemigroup> {
        self.copies.get(&letter)
    }

    pub fn triple(&self, letter: Letter) -> Option<&Triple> {
        self.copies.get(&letter).map(NumericalSubsemigroup::triple)
    }

    /// Copies in alphabet order.
    pub fn copies(&self) -> impl Iterator<Item = (Letter, &NumericalSubsemigroup)> {
        self.copies.iter().map(|(l, c)| (*l, c))
    }

    fn add(&mut self, letter: Letter, element: u64) -> Result<()> {
        let (before, after) = match self.copies.get_mut(&letter) {
            Some(copy) => {
                let before = copy.triple().measure();
                copy.add_element(element)?;
                (Some(before), copy.triple().measure())
            }
            None => {
                let copy = NumericalSubsemigroup::from_generators([element])?;
                let after = copy.triple().measure();
                self.copies.insert(letter, copy);
                (None, after)
            }
        };
        self.trace.push(Addition {
            letter,
            element,
            before,
            after,
        });
        Ok(())
    }
}

/// Caches one profile per (source letter, generator).
struct Profiles<'t> {
    table: &'t ActionTable,
    window: u64,
    cache: HashMap<(Letter, usize), ActionProfile>,
}

impl<'t> Profiles<'t> {
    fn get(
        &mut self,
        source: Letter,
        index: usize,
        generator: &NormalForm,
    ) -> Result<&ActionProfile> {
        if !self.cache.contains_key(&(source, index)) {
            let profile = action_profile(self.table, source, generator, self.window)?;
            self.cache.insert((source, index), profile);
        }
        Ok(&self.cache[&(source, index)])
    }
}

fn find_violation(
    state: &SaturationState,
    profiles: &mut Profiles<'_>,
) -> Result<Option<Violation>> {
    for (index, generator) in state.generators.iter().enumerate() {
        for (source, copy) in state.copies() {
            let domain = copy.triple().to_eps();
            let profile = profiles.get(source, index, generator)?;
            for (target, image) in image_of_set(profile, &domain)? {
                let witness = match state.triple(target) {
                    Some(t) => image.min_difference(&t.to_eps()),
                    None => image.min(),
                };
                if let Some(witness) = witness {
                    return Ok(Some(Violation {
                        source,
                        generator: index,
                        target,
                        witness,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The first place where `⋃ U_j` fails to be closed under right
/// multiplication by a generator, scanning generators in input order, then
/// source copies and target copies in alphabet order.
pub fn check_closure(state: &SaturationState, table: &ActionTable) -> Result<Option<Violation>> {
    check_closure_with(state, table, default_window(table))
}

pub fn check_closure_with(
    state: &SaturationState,
    table: &ActionTable,
    window: u64,
) -> Result<Option<Violation>> {
    let mut profiles = Profiles {
        table,
        window,
        cache: HashMap::new(),
    };
    find_violation(state, &mut profiles)
}

pub fn saturate(table: &ActionTable, generators: &[NormalForm]) -> Result<SaturationState> {
    saturate_with(table, generators, default_window(table))
}

pub fn saturate_with(
    table: &ActionTable,
    generators: &[NormalForm],
    window: u64,
) -> Result<SaturationState> {
    let mut state = SaturationState::initial(generators)?;
    let mut profiles = Profiles {
        table,
        window,
        cache: HashMap::new(),
    };
    while let Some(v) = find_violation(&state, &mut profiles)? {
        state.add(v.target, v.witness)?;
    }
    Ok(state)
}

pub fn is_member(state: &SaturationState, x: &NormalForm) -> bool {
    match (state.triple(x.letter), x.exponent_u64()) {
        (Some(t), Some(e)) => t.contains(e),
        (Some(t), None) => {
            // Past the conductor only divisibility matters.
            (&x.exponent % BigUint::from(t.d)) == BigUint::ZERO
        }
        (None, _) => false,
    }
}

/// Whether `x` lies in the subsemigroup generated by `generators`.
pub fn membership(table: &ActionTable, generators: &[NormalForm], x: &NormalForm) -> Result<bool> {
    Ok(is_member(&saturate(table, generators)?, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eps::ArithmeticProgression;
    use crate::fixtures::{self, A, B};

    fn nf(l: Letter, e: u64) -> NormalForm {
        NormalForm::new(l, e)
    }

    #[test]
    fn profile_examples() {
        let t = fixtures::s1().table();
        let p = action_profile(&t, A, &nf(B, 2), 16).unwrap();
        assert!(p.exceptions.is_empty());
        assert_eq!(
            p.progressions,
            vec![AnchoredProgression {
                target: A,
                anchor: 1,
                exponent: 3,
                difference: 1,
                step: 1
            }]
        );
        let p = action_profile(&t, B, &nf(A, 3), 16).unwrap();
        assert_eq!(
            p.progressions,
            vec![AnchoredProgression {
                target: A,
                anchor: 1,
                exponent: 4,
                difference: 1,
                step: 1
            }]
        );
        let t0 = fixtures::s0().table();
        let p = action_profile(&t0, A, &nf(A, 2), 8).unwrap();
        assert_eq!(p.evaluate(10), Some(nf(A, 12)));
    }

    #[test]
    fn profile_with_period_two() {
        let t = fixtures::s3().table();
        let p = action_profile(&t, A, &nf(B, 1), default_window(&t)).unwrap();
        assert_eq!(p.progressions.len(), 2);
        assert_eq!(p.evaluate(7), Some(nf(fixtures::C, 8)));
        assert_eq!(p.evaluate(8), Some(nf(B, 9)));
    }

    #[test]
    fn window_exhaustion() {
        let t = fixtures::s3().table();
        assert!(matches!(
            action_profile(&t, A, &nf(B, 1), 3),
            Err(Error::WindowExhausted { window: 3, .. })
        ));
    }

    #[test]
    fn image_examples() {
        let t = fixtures::s1().table();
        let p = action_profile(&t, A, &nf(B, 2), 16).unwrap();
        let image = image_of_set(&p, &EventuallyPeriodicSet::progression(3, 3)).unwrap();
        assert_eq!(image[&A], EventuallyPeriodicSet::progression(5, 3));
        let p = action_profile(&t, B, &nf(A, 3), 16).unwrap();
        let image = image_of_set(&p, &EventuallyPeriodicSet::progression(2, 2)).unwrap();
        assert_eq!(image[&A], EventuallyPeriodicSet::progression(5, 2));
        let t0 = fixtures::s0().table();
        let p = action_profile(&t0, A, &nf(A, 1), 8).unwrap();
        let image = image_of_set(&p, &EventuallyPeriodicSet::finite([1])).unwrap();
        assert_eq!(image[&A], EventuallyPeriodicSet::finite([2]));
    }

    #[test]
    fn image_through_scaled_progressions() {
        // S4: a^k b is c^{3k+1} for odd k, b^{3k+1} for even k.
        let t = fixtures::s4().table();
        let p = action_profile(&t, A, &nf(B, 1), default_window(&t)).unwrap();
        let domain = EventuallyPeriodicSet::new([1], [ArithmeticProgression::new(4, 1)]);
        let image = image_of_set(&p, &domain).unwrap();
        let c_expected: Vec<u64> = [1u64, 5, 7, 9, 11].iter().map(|k| 3 * k + 1).collect();
        assert_eq!(image[&fixtures::C].elements_up_to(34), c_expected);
        let b_expected: Vec<u64> = [4u64, 6, 8, 10].iter().map(|k| 3 * k + 1).collect();
        assert_eq!(image[&B].elements_up_to(31), b_expected);
    }

    #[test]
    fn closure_examples() {
        let t = fixtures::s1().table();
        let state = SaturationState::initial(&[nf(A, 3), nf(B, 2)]).unwrap();
        assert_eq!(
            check_closure(&state, &t).unwrap(),
            Some(Violation {
                source: B,
                generator: 0,
                target: A,
                witness: 5
            })
        );
        let saturated = saturate(&t, &[nf(A, 3), nf(B, 2)]).unwrap();
        assert_eq!(check_closure(&saturated, &t).unwrap(), None);
        let t0 = fixtures::s0().table();
        let state = SaturationState::initial(&[nf(A, 1)]).unwrap();
        assert_eq!(check_closure(&state, &t0).unwrap(), None);
    }

    #[test]
    fn saturation_examples() {
        let t = fixtures::s1().table();
        let s = saturate(&t, &[nf(A, 3), nf(B, 2)]).unwrap();
        assert_eq!(s.triple(A).unwrap().to_string(), "[d=1, N=5, F={3}]");
        assert_eq!(s.triple(B).unwrap().to_string(), "[d=2, N=2, F={}]");
        assert_eq!(
            s.copy(A)
                .unwrap()
                .generators()
                .iter()
                .copied()
                .collect::<Vec<_>>(),
            vec![3, 5, 7]
        );
        assert_eq!(
            s.trace.iter().map(|a| a.element).collect::<Vec<_>>(),
            vec![5, 7]
        );

        let t0 = fixtures::s0().table();
        let s = saturate(&t0, &[nf(A, 2), nf(A, 3)]).unwrap();
        assert_eq!(s.triple(A).unwrap().to_string(), "[d=1, N=2, F={}]");
        let s = saturate(&t, &[nf(A, 1)]).unwrap();
        assert_eq!(s.triple(A).unwrap().to_string(), "[d=1, N=1, F={}]");
    }

    #[test]
    fn membership_examples() {
        let t = fixtures::s1().table();
        let gens = [nf(A, 3), nf(B, 2)];
        let s = saturate(&t, &gens).unwrap();
        assert!(!is_member(&s, &nf(A, 4)));
        assert!(is_member(&s, &nf(A, 9)));
        assert!(!is_member(&s, &nf(B, 3)));
        assert!(membership(&t, &gens, &nf(B, 4)).unwrap());
        assert!(membership(&t, &gens, &nf(A, 5)).unwrap());
        assert!(!membership(&t, &gens, &nf(A, 4)).unwrap());
        let huge = NormalForm::new(B, BigUint::from(10u32).pow(40));
        assert!(is_member(&s, &huge));
    }

    #[test]
    fn products_can_open_new_copies() {
        // S3: a·b = c^2, but no generator lies in N_c.
        let t = fixtures::s3().table();
        let s = saturate(&t, &[nf(A, 1), nf(B, 1)]).unwrap();
        assert!(s.triple(fixtures::C).is_some());
        assert!(s
            .trace
            .iter()
            .any(|a| a.letter == fixtures::C && a.before.is_none()));
    }
}
