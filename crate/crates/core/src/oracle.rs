//! Brute-force cross-checks: closed walks of cards are enumerated directly,
//! unrolled into siteswaps, and grouped by rotation, so every count the
//! transfer matrices produce can be confirmed on small inputs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cards::{filtered_cards, Card, CardFilter};
use crate::combinatorics::{Capacity, Composition};
use crate::counting::Counter;
use crate::error::{Error, Result};
use crate::matrices::Variant;
use crate::par::{self, Exec};
use crate::poly::Polynomial;
use crate::report::{Check, Report};

/// Largest inputs the enumerations accept before refusing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub max_balls: usize,
    pub max_period: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_balls: 4,
            max_period: 6,
        }
    }
}

impl Guard {
    pub const UNLIMITED: Guard = Guard {
        max_balls: usize::MAX,
        max_period: usize::MAX,
    };

    fn admit(&self, b: usize, n: usize) -> Result<()> {
        if b > self.max_balls {
            return Err(Error::Infeasible {
                what: "oracle ball count",
                limit: self.max_balls,
                requested: b,
            });
        }
        if n > self.max_period {
            return Err(Error::Infeasible {
                what: "oracle period",
                limit: self.max_period,
                requested: n,
            });
        }
        if n == 0 {
            return Err(Error::OutOfRange {
                name: "period",
                min: 1,
                got: 0,
            });
        }
        Ok(())
    }
}

/// A cyclic sequence of cards, each one's right side the next one's left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CardWalk {
    base: usize,
    cards: Vec<Card>,
}

impl CardWalk {
    pub fn new(cards: Vec<Card>) -> Result<Self> {
        let Some(first) = cards.first() else {
            return Err(Error::OutOfRange {
                name: "walk length",
                min: 1,
                got: 0,
            });
        };
        let base = first.left().total();
        for (t, card) in cards.iter().enumerate() {
            let next = &cards[(t + 1) % cards.len()];
            if card.right() != next.left() {
                return Err(Error::InvalidCard(format!(
                    "card {t} ends at {} but card {} starts at {}",
                    card.right(),
                    (t + 1) % cards.len(),
                    next.left()
                )));
            }
        }
        Ok(CardWalk { base, cards })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn period(&self) -> usize {
        self.cards.len()
    }
}

/// Throw heights per beat, with the balls that never leave the hand's
/// queue counted separately.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SiteswapPattern {
    /// Sorted heights thrown on each beat; empty means no throw.
    pub beats: Vec<Vec<usize>>,
    pub used_balls: usize,
    pub unused_balls: usize,
}

impl SiteswapPattern {
    pub fn period(&self) -> usize {
        self.beats.len()
    }

    /// Smallest `d` such that the beats repeat with period `d`.
    pub fn minimal_period(&self) -> usize {
        let n = self.beats.len();
        (1..=n)
            .find(|&d| {
                n.is_multiple_of(d) && (0..n).all(|t| self.beats[t] == self.beats[(t + d) % n])
            })
            .unwrap_or(n)
    }

    pub fn rotated(&self, shift: usize) -> SiteswapPattern {
        let mut beats = self.beats.clone();
        let len = beats.len();
        if len > 0 {
            beats.rotate_left(shift % len);
        }
        SiteswapPattern {
            beats,
            ..self.clone()
        }
    }

    /// Lexicographically least rotation.
    pub fn class_representative(&self) -> SiteswapPattern {
        (0..self.beats.len().max(1))
            .map(|s| self.rotated(s))
            .min()
            .expect("at least one rotation")
    }
}

impl fmt::Display for SiteswapPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for beat in &self.beats {
            match beat.as_slice() {
                [] => write!(f, "0")?,
                [h] if *h < 10 => write!(f, "{h}")?,
                hs if hs.iter().all(|&h| h < 10) => {
                    write!(f, "[")?;
                    for h in hs {
                        write!(f, "{h}")?;
                    }
                    write!(f, "]")?;
                }
                hs => {
                    let parts: Vec<String> = hs.iter().map(ToString::to_string).collect();
                    write!(f, "[{}]", parts.join(","))?;
                }
            }
        }
        Ok(())
    }
}

/// All closed walks of length `n` through the cards of `variant`; q-weighted
/// variants walk the same cards as their unweighted counterparts.
pub fn enumerate_closed_walks(b: usize, n: usize, variant: Variant) -> Result<Vec<CardWalk>> {
    enumerate_closed_walks_with(b, n, variant, Guard::default(), Exec::default())
}

pub fn enumerate_closed_walks_with(
    b: usize,
    n: usize,
    variant: Variant,
    guard: Guard,
    exec: Exec,
) -> Result<Vec<CardWalk>> {
    guard.admit(b, n)?;
    let cards = filtered_cards(b, variant.filter());
    let mut by_left: HashMap<&Composition, Vec<usize>> = HashMap::new();
    for (i, c) in cards.iter().enumerate() {
        by_left.entry(c.left()).or_default().push(i);
    }
    let starts: Vec<usize> = (0..cards.len()).collect();
    let per_start = par::map_slice(exec, &starts, |&first| {
        let mut found = Vec::new();
        let mut path = vec![first];
        extend_walk(&cards, &by_left, n, &mut path, &mut found);
        found
    });
    per_start
        .into_iter()
        .flatten()
        .map(|path| CardWalk::new(path.into_iter().map(|i| cards[i].clone()).collect()))
        .collect()
}

fn extend_walk(
    cards: &[Card],
    by_left: &HashMap<&Composition, Vec<usize>>,
    n: usize,
    path: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let last = &cards[*path.last().expect("nonempty path")];
    if path.len() == n {
        if last.right() == cards[path[0]].left() {
            found.push(path.clone());
        }
        return;
    }
    if let Some(next) = by_left.get(last.right()) {
        for &i in next {
            path.push(i);
            extend_walk(cards, by_left, n, path, found);
            path.pop();
        }
    }
}

pub fn walk_crossings(w: &CardWalk) -> usize {
    w.cards.iter().map(Card::crossings).sum()
}

/// Unrolls the periodic card sequence and records how far ahead each ball
/// thrown during the first period lands.
///
/// A group that is never consumed revisits a start-of-period position
/// within as many periods as there are positions, so `(b + 2) n` beats
/// decide every landing.
pub fn walk_to_siteswap(w: &CardWalk) -> SiteswapPattern {
    let n = w.period();
    let horizon = (w.base + 2) * n;
    let initial = w.cards[0].left().parts().to_vec();
    let mut state: Vec<usize> = (0..initial.len()).collect();
    let mut next_id = initial.len();
    let mut landing: HashMap<usize, usize> = HashMap::new();
    // (beat, destination group, balls)
    let mut throws: Vec<(usize, usize, usize)> = Vec::new();

    for t in 0..horizon {
        let card = &w.cards[t % n];
        let Some(indices) = card.indices() else {
            continue;
        };
        landing.entry(state[0]).or_insert(t);
        let mut new_state = Vec::with_capacity(card.right().len());
        let mut continuing = indices.iter().zip(&state[1..]).peekable();
        for (pos, &thrown) in card.placement().iter().enumerate() {
            let group = match continuing.peek() {
                Some(&(&slot, &g)) if slot == pos + 1 => {
                    continuing.next();
                    g
                }
                _ => {
                    next_id += 1;
                    next_id - 1
                }
            };
            if t < n && thrown > 0 {
                throws.push((t, group, thrown));
            }
            new_state.push(group);
        }
        state = new_state;
    }

    let mut beats: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, group, count) in throws {
        let lands = *landing
            .get(&group)
            .expect("a thrown ball always lands again in a periodic pattern");
        beats[t].extend(std::iter::repeat_n(lands - t, count));
    }
    for beat in &mut beats {
        beat.sort_unstable();
    }
    let unused: usize = initial
        .iter()
        .enumerate()
        .filter(|(g, _)| !landing.contains_key(g))
        .map(|(_, &size)| size)
        .sum();
    SiteswapPattern {
        beats,
        used_balls: w.base - unused,
        unused_balls: unused,
    }
}

/// Siteswaps using all `b` balls, each paired with the crossings of the walk
/// that produces it.
pub fn siteswap_crossings(
    b: usize,
    n: usize,
    guard: Guard,
) -> Result<BTreeMap<SiteswapPattern, usize>> {
    let walks = enumerate_closed_walks_with(b, n, Variant::Plain, guard, Exec::default())?;
    let mut out = BTreeMap::new();
    for w in &walks {
        let s = walk_to_siteswap(w);
        if s.unused_balls == 0 {
            let previous = out.insert(s, walk_crossings(w));
            assert!(
                previous.is_none(),
                "two walks use every ball for one siteswap"
            );
        }
    }
    Ok(out)
}

/// Distinct siteswaps of period `n` that use exactly `b` balls.
pub fn enumerate_siteswaps(b: usize, n: usize) -> Result<BTreeSet<SiteswapPattern>> {
    enumerate_siteswaps_with(b, n, Guard::default())
}

pub fn enumerate_siteswaps_with(
    b: usize,
    n: usize,
    guard: Guard,
) -> Result<BTreeSet<SiteswapPattern>> {
    Ok(siteswap_crossings(b, n, guard)?.into_keys().collect())
}

/// A rotation class of siteswaps with minimal period equal to its length.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternClass {
    pub representative: SiteswapPattern,
    pub crossings: usize,
}

pub fn enumerate_patterns(b: usize, n: usize) -> Result<BTreeSet<PatternClass>> {
    enumerate_patterns_with(b, n, Guard::default())
}

pub fn enumerate_patterns_with(b: usize, n: usize, guard: Guard) -> Result<BTreeSet<PatternClass>> {
    let weighted = siteswap_crossings(b, n, guard)?;
    let mut classes = BTreeSet::new();
    for (s, &crossings) in &weighted {
        if s.minimal_period() != n {
            continue;
        }
        let representative = s.class_representative();
        let rep_crossings = weighted[&representative];
        assert_eq!(
            rep_crossings, crossings,
            "rotation changed the crossing total"
        );
        classes.insert(PatternClass {
            representative,
            crossings,
        });
    }
    Ok(classes)
}

fn crossing_polynomial(exponents: impl IntoIterator<Item = usize>) -> Polynomial {
    let mut coeffs: Vec<BigInt> = Vec::new();
    for e in exponents {
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::default());
        }
        coeffs[e] += BigInt::one();
    }
    Polynomial::new(coeffs)
}

/// Crossing-weighted oracle counts against the q-matrices: walks against
/// `trace(A_b(q)^n)`, siteswaps against `ss_q` and rotation classes against
/// `jp_q`.
pub fn verify_q_counts(counter: &Counter, b: usize, n: usize, guard: Guard) -> Result<Report> {
    let params = [("b", b.to_string()), ("n", n.to_string())];
    let walks = enumerate_closed_walks_with(b, n, Variant::QWeighted, guard, counter.exec())?;
    let walk_poly = crossing_polynomial(walks.iter().map(walk_crossings));
    let siteswaps = siteswap_crossings(b, n, guard)?;
    let patterns = enumerate_patterns_with(b, n, guard)?;
    let inf = Capacity::Unbounded;
    let mut report = Report::new();
    report.push(Check::compare(
        "crossing-weighted walks equal trace(A_b(q)^n)",
        &params,
        &counter.q_trace_power(b, inf, n).display_in("q"),
        &walk_poly.display_in("q"),
    ));
    report.push(Check::compare(
        "crossing-weighted siteswaps equal ss_q",
        &params,
        &counter.ss_q(b, n, inf)?.display_in("q"),
        &crossing_polynomial(siteswaps.values().copied()).display_in("q"),
    ));
    report.push(Check::compare(
        "crossing-weighted patterns equal jp_q",
        &params,
        &counter.jp_q(b, n, inf)?.display_in("q"),
        &crossing_polynomial(patterns.iter().map(|c| c.crossings)).display_in("q"),
    ));
    Ok(report)
}

/// Oracle counts against the matrix formulas for one `(b, n)`.
pub fn verify_counts(counter: &Counter, b: usize, n: usize, guard: Guard) -> Result<Report> {
    let params = [("b", b.to_string()), ("n", n.to_string())];
    let mut report = Report::new();
    for variant in [Variant::Plain, Variant::Capped(2), Variant::DistinctHeights] {
        let walks = enumerate_closed_walks_with(b, n, variant, guard, counter.exec())?;
        let expected = match variant {
            Variant::Capped(k) => counter.trace_power(b, Capacity::Finite(k), n),
            Variant::DistinctHeights => {
                let m = crate::matrices::transfer_matrix(b, CardFilter::distinct_heights());
                crate::matrices::trace_power(&m, n as u64, counter.exec())
            }
            _ => counter.trace_power(b, Capacity::Unbounded, n),
        };
        report.push(Check::compare(
            format!("closed walks ({variant}) equal matrix trace"),
            &params,
            &expected,
            &BigInt::from(walks.len()),
        ));
    }
    report.push(Check::compare(
        "distinct siteswaps equal ss",
        &params,
        &counter.ss(b, n, Capacity::Unbounded)?,
        &BigInt::from(enumerate_siteswaps_with(b, n, guard)?.len()),
    ));
    report.push(Check::compare(
        "rotation classes equal jp",
        &params,
        &counter.jp(b, n, Capacity::Unbounded)?,
        &BigInt::from(enumerate_patterns_with(b, n, guard)?.len()),
    ));
    report.extend(verify_q_counts(counter, b, n, guard)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::Embedding;
    use crate::combinatorics::capped_composition_count;
    use crate::matrices::{q_transfer_matrix, trace_power, transfer_matrix};

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn card(left: &[usize], right: &[usize], indices: Option<&[usize]>) -> Card {
        let embedding = match indices {
            None => Embedding::Trivial,
            Some(i) => Embedding::NonTrivial {
                indices: i.to_vec(),
            },
        };
        Card::new(comp(left), comp(right), embedding).unwrap()
    }

    fn single(c: Card) -> SiteswapPattern {
        walk_to_siteswap(&CardWalk::new(vec![c]).unwrap())
    }

    #[test]
    fn walk_counts() {
        assert_eq!(
            enumerate_closed_walks(2, 2, Variant::Plain).unwrap().len(),
            15
        );
        assert_eq!(
            enumerate_closed_walks(3, 1, Variant::Plain).unwrap().len(),
            11
        );
        assert_eq!(
            enumerate_closed_walks(0, 5, Variant::Plain).unwrap().len(),
            1
        );
        assert!(matches!(
            enumerate_closed_walks(5, 1, Variant::Plain),
            Err(Error::Infeasible { .. })
        ));
        assert!(CardWalk::new(vec![card(&[2], &[2], None), card(&[1, 1], &[1, 1], None)]).is_err());
    }

    #[test]
    fn hand_simulations() {
        let two = single(card(&[1, 1], &[1, 1], Some(&[1])));
        assert_eq!(two.beats, vec![vec![2]]);
        assert_eq!((two.used_balls, two.unused_balls), (2, 0));
        assert_eq!(two.to_string(), "2");

        let one_two = single(card(&[2, 1], &[2, 1], Some(&[1])));
        assert_eq!(one_two.beats, vec![vec![1, 2]]);
        assert_eq!(one_two.used_balls, 3);
        assert_eq!(one_two.to_string(), "[12]");

        let idle = single(card(&[1], &[1], None));
        assert_eq!(idle.beats, vec![Vec::<usize>::new()]);
        assert_eq!((idle.used_balls, idle.unused_balls), (0, 1));
        assert_eq!(idle.to_string(), "0");
    }

    #[test]
    fn display_forms() {
        let s = SiteswapPattern {
            beats: vec![vec![1], vec![1, 1, 2], vec![2, 2]],
            used_balls: 3,
            unused_balls: 0,
        };
        assert_eq!(s.to_string(), "1[112][22]");
        let tall = SiteswapPattern {
            beats: vec![vec![10], vec![], vec![1, 11]],
            used_balls: 0,
            unused_balls: 0,
        };
        assert_eq!(tall.to_string(), "[10]0[1,11]");
    }

    #[test]
    fn small_siteswap_sets() {
        let names = |b, n| -> Vec<String> {
            enumerate_siteswaps(b, n)
                .unwrap()
                .iter()
                .map(ToString::to_string)
                .collect()
        };
        let mut three = names(3, 1);
        three.sort();
        assert_eq!(three, ["3", "[111]", "[12]"]);
        let mut two = names(2, 1);
        two.sort();
        assert_eq!(two, ["2", "[11]"]);
        assert_eq!(names(0, 2), ["00"]);
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(enumerate_patterns(2, 3).unwrap().len(), 13);
        assert_eq!(enumerate_patterns(3, 2).unwrap().len(), 12);
        assert_eq!(enumerate_patterns(2, 1).unwrap().len(), 2);
    }

    #[test]
    fn oracle_matches_formulas() {
        let c = Counter::new();
        for b in 0..=3 {
            for n in 1..=4 {
                let r = verify_counts(&c, b, n, Guard::default()).unwrap();
                assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn crossing_sum_at_period_one() {
        let walks = enumerate_closed_walks(3, 1, Variant::Plain).unwrap();
        let poly = crossing_polynomial(walks.iter().map(walk_crossings));
        assert_eq!(poly, Polynomial::from_i64(&[8, 2, 1]));
        let m = q_transfer_matrix(2, Capacity::Unbounded);
        let walks = enumerate_closed_walks(2, 2, Variant::QWeighted).unwrap();
        assert_eq!(
            crossing_polynomial(walks.iter().map(walk_crossings)),
            trace_power(&m, 2, Exec::default())
        );
        let idle = CardWalk::new(vec![card(&[2, 1], &[2, 1], None); 3]).unwrap();
        assert_eq!(walk_crossings(&idle), 0);
    }

    #[test]
    fn landings_match_consumed_groups() {
        for b in 0..=3 {
            for n in 1..=4 {
                for w in enumerate_closed_walks(b, n, Variant::Plain).unwrap() {
                    let s = walk_to_siteswap(&w);
                    let mut landed = vec![0usize; n];
                    for (t, beat) in s.beats.iter().enumerate() {
                        for h in beat {
                            landed[(t + h) % n] += 1;
                        }
                    }
                    for (t, c) in w.cards().iter().enumerate() {
                        let consumed = if c.is_trivial() {
                            0
                        } else {
                            c.left().parts()[0]
                        };
                        assert_eq!(landed[t], consumed, "{s}");
                    }
                    let thrown: usize = s.beats.iter().map(Vec::len).sum();
                    let heights: usize = s.beats.iter().flatten().sum();
                    assert_eq!(heights, s.used_balls * n);
                    assert!(thrown <= heights);
                }
            }
        }
    }

    #[test]
    fn unused_ball_multiplicity() {
        for b in 0..=3 {
            for n in 1..=3 {
                let mut groups: BTreeMap<SiteswapPattern, usize> = BTreeMap::new();
                for w in enumerate_closed_walks(b, n, Variant::Plain).unwrap() {
                    *groups.entry(walk_to_siteswap(&w)).or_default() += 1;
                }
                for (s, count) in groups {
                    let expected = if s.unused_balls == 0 {
                        1
                    } else {
                        1usize << (s.unused_balls - 1)
                    };
                    assert_eq!(count, expected, "b={b} n={n} {s}");
                    assert_eq!(
                        BigInt::from(count),
                        BigInt::from(capped_composition_count(
                            s.unused_balls,
                            Capacity::Unbounded
                        ))
                    );
                }
            }
        }
    }

    #[test]
    fn period_three_multiplex_with_idle_balls() {
        let target = SiteswapPattern {
            beats: vec![vec![1], vec![1, 1, 2], vec![2, 2]],
            used_balls: 3,
            unused_balls: 2,
        };
        let guard = Guard {
            max_balls: 5,
            max_period: 3,
        };
        let walks =
            enumerate_closed_walks_with(5, 3, Variant::Plain, guard, Exec::default()).unwrap();
        let hits = walks
            .iter()
            .filter(|w| walk_to_siteswap(w) == target)
            .count();
        assert_eq!(hits, 2);
    }

    #[test]
    fn sequential_and_parallel_enumerations_agree() {
        let a =
            enumerate_closed_walks_with(3, 3, Variant::Plain, Guard::default(), Exec::Sequential)
                .unwrap();
        let b = enumerate_closed_walks_with(3, 3, Variant::Plain, Guard::default(), Exec::Parallel)
            .unwrap();
        assert_eq!(a, b);
        let m = transfer_matrix(3, CardFilter::ALL);
        assert_eq!(BigInt::from(a.len()), trace_power(&m, 3, Exec::default()));
    }
}
