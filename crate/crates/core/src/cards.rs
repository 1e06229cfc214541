//! Multiplex juggling cards.
//!
//! A card takes the landing-order composition `q = (q_1, ..., q_k)` before a
//! beat to the composition `r = (r_1, ..., r_l)` after it. On a *trivial* card
//! nothing lands and `q = r`. On a *nontrivial* card the bottom group of `q_1`
//! balls lands and is thrown again: each remaining group `q_j` (j >= 2) slides
//! into slot `i_j` of `r`, with `i_2 < ... < i_k` and `q_j <= r_{i_j}`, and
//! the thrown balls fill whatever room is left. Slot positions are 1-based
//! throughout this module.
//!
//! # Crossings
//!
//! Every slot of `r` that receives at least one thrown ball contributes one
//! strand from the hand, and every continuing group contributes one track.
//! A thrown strand into slot `t` crosses the track of group `j` exactly when
//! `t > i_j`. Strands that meet in the same slot merge without crossing,
//! tracks never cross each other (their slots increase), and thrown strands
//! fan out from one point so they never cross each other either.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{capped_compositions, Capacity, Composition};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Embedding {
    Trivial,
    /// Slots `i_2, ..., i_k` (1-based) of the right composition receiving the
    /// groups `q_2, ..., q_k`. Empty when `k = 1`.
    NonTrivial {
        indices: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Card {
    left: Composition,
    right: Composition,
    embedding: Embedding,
    placement: Vec<usize>,
    crossings: usize,
}

impl Card {
    /// Validates the triple and derives placement and crossings.
    pub fn new(left: Composition, right: Composition, embedding: Embedding) -> Result<Card> {
        if left.total() != right.total() {
            return Err(Error::InvalidCard(format!(
                "sides {left} and {right} hold different ball counts"
            )));
        }
        match &embedding {
            Embedding::Trivial => {
                if left != right {
                    return Err(Error::InvalidCard(format!(
                        "trivial card needs equal sides, got {left} and {right}"
                    )));
                }
            }
            Embedding::NonTrivial { indices } => {
                let k = left.len();
                if k == 0 {
                    return Err(Error::InvalidCard(
                        "no ball lands from the empty composition".into(),
                    ));
                }
                if indices.len() != k - 1 {
                    return Err(Error::InvalidCard(format!(
                        "expected {} slot indices for {left}, got {}",
                        k - 1,
                        indices.len()
                    )));
                }
                if indices.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidCard(format!(
                        "slot indices {indices:?} are not strictly increasing"
                    )));
                }
                for (j, &slot) in indices.iter().enumerate() {
                    if slot == 0 || slot > right.len() {
                        return Err(Error::InvalidCard(format!(
                            "slot {slot} outside 1..={}",
                            right.len()
                        )));
                    }
                    if left.parts()[j + 1] > right.parts()[slot - 1] {
                        return Err(Error::InvalidCard(format!(
                            "group {} does not fit into slot {slot} of {right}",
                            left.parts()[j + 1]
                        )));
                    }
                }
            }
        }
        Ok(Card::assemble(left, right, embedding))
    }

    fn assemble(left: Composition, right: Composition, embedding: Embedding) -> Card {
        let (placement, crossings) = match &embedding {
            Embedding::Trivial => (vec![0; right.len()], 0),
            Embedding::NonTrivial { indices } => {
                let mut placement = right.parts().to_vec();
                for (j, &slot) in indices.iter().enumerate() {
                    placement[slot - 1] -= left.parts()[j + 1];
                }
                let crossings = indices
                    .iter()
                    .map(|&slot| {
                        placement
                            .iter()
                            .enumerate()
                            .filter(|&(t, &p)| p >= 1 && t + 1 > slot)
                            .count()
                    })
                    .sum();
                (placement, crossings)
            }
        };
        debug_assert_eq!(
            placement.iter().sum::<usize>(),
            match embedding {
                Embedding::Trivial => 0,
                Embedding::NonTrivial { .. } => left.parts()[0],
            }
        );
        Card {
            left,
            right,
            embedding,
            placement,
            crossings,
        }
    }

    pub fn left(&self) -> &Composition {
        &self.left
    }

    pub fn right(&self) -> &Composition {
        &self.right
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.embedding, Embedding::Trivial)
    }

    /// Slot indices for a nontrivial card.
    pub fn indices(&self) -> Option<&[usize]> {
        match &self.embedding {
            Embedding::Trivial => None,
            Embedding::NonTrivial { indices } => Some(indices),
        }
    }

    /// Newly thrown balls per slot of the right composition (0-based slots).
    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }

    /// Number of balls thrown on this beat.
    pub fn thrown(&self) -> usize {
        self.placement.iter().sum()
    }

    pub fn record(&self) -> CardRecord {
        CardRecord {
            left: self.left.parts().to_vec(),
            right: self.right.parts().to_vec(),
            indices: self.indices().map(<[usize]>::to_vec),
            crossings: self.crossings,
        }
    }
}

/// Stable serialized form of a card.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardRecord {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub indices: Option<Vec<usize>>,
    pub crossings: usize,
}

impl CardRecord {
    /// Rebuilds the card, checking that the stored crossing number agrees.
    pub fn to_card(&self) -> Result<Card> {
        let embedding = match &self.indices {
            None => Embedding::Trivial,
            Some(indices) => Embedding::NonTrivial {
                indices: indices.clone(),
            },
        };
        let card = Card::new(
            Composition::new(self.left.clone())?,
            Composition::new(self.right.clone())?,
            embedding,
        )?;
        if card.crossings != self.crossings {
            return Err(Error::InvalidCard(format!(
                "record claims {} crossings, card has {}",
                self.crossings, card.crossings
            )));
        }
        Ok(card)
    }
}

/// Which cards survive into a transfer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CardFilter {
    pub capacity: Capacity,
    pub distinct_heights: bool,
}

impl CardFilter {
    pub const ALL: CardFilter = CardFilter {
        capacity: Capacity::Unbounded,
        distinct_heights: false,
    };

    pub fn capped(capacity: Capacity) -> Self {
        CardFilter {
            capacity,
            distinct_heights: false,
        }
    }

    pub fn distinct_heights() -> Self {
        CardFilter {
            capacity: Capacity::Unbounded,
            distinct_heights: true,
        }
    }

    pub fn accepts(&self, card: &Card) -> bool {
        card.left.fits(self.capacity)
            && card.right.fits(self.capacity)
            && (!self.distinct_heights || has_distinct_heights(card))
    }
}

/// Every card whose right side is `r`, one per shading of `r`: slot `t`
/// keeps `s_t` balls of continuing groups, `0 <= s_t <= r_t`. The full
/// shading is the trivial card; any other shading `s` is the nontrivial card
/// whose continuing groups are the nonzero `s_t`.
pub fn cards_into(r: &Composition) -> Vec<Card> {
    let parts = r.parts();
    let b = r.total();
    let mut shade = vec![0usize; parts.len()];
    let mut out = Vec::new();
    loop {
        if shade.as_slice() == parts {
            out.push(Card::assemble(r.clone(), r.clone(), Embedding::Trivial));
        } else {
            let kept: usize = shade.iter().sum();
            let mut left = vec![b - kept];
            let mut indices = Vec::new();
            for (t, &s) in shade.iter().enumerate() {
                if s > 0 {
                    left.push(s);
                    indices.push(t + 1);
                }
            }
            out.push(Card::assemble(
                Composition::from_parts_unchecked(left),
                r.clone(),
                Embedding::NonTrivial { indices },
            ));
        }
        // mixed-radix increment, first slot fastest
        let mut t = 0;
        while t < parts.len() && shade[t] == parts[t] {
            shade[t] = 0;
            t += 1;
        }
        if t == parts.len() {
            break;
        }
        shade[t] += 1;
    }
    out
}

/// Every card whose left side is `q`: the trivial card, then every way of
/// interleaving the continuing groups with new groups and spreading the
/// `q_1` thrown balls so that each new group gets at least one.
pub fn cards_from(q: &Composition) -> Vec<Card> {
    let mut out = vec![Card::assemble(q.clone(), q.clone(), Embedding::Trivial)];
    if q.is_empty() {
        return out;
    }
    let rest = &q.parts()[1..];
    let mut right = Vec::new();
    let mut indices = Vec::new();
    extend_from(q, rest, q.parts()[0], &mut right, &mut indices, &mut out);
    out
}

fn extend_from(
    q: &Composition,
    rest: &[usize],
    remaining: usize,
    right: &mut Vec<usize>,
    indices: &mut Vec<usize>,
    out: &mut Vec<Card>,
) {
    if rest.is_empty() && remaining == 0 {
        out.push(Card::assemble(
            q.clone(),
            Composition::from_parts_unchecked(right.clone()),
            Embedding::NonTrivial {
                indices: indices.clone(),
            },
        ));
        return;
    }
    if let Some((&group, tail)) = rest.split_first() {
        for extra in 0..=remaining {
            right.push(group + extra);
            indices.push(right.len());
            extend_from(q, tail, remaining - extra, right, indices, out);
            indices.pop();
            right.pop();
        }
    }
    for fresh in 1..=remaining {
        right.push(fresh);
        extend_from(q, rest, remaining - fresh, right, indices, out);
        right.pop();
    }
}

/// All cards for `b` balls, grouped by right composition in canonical order.
pub fn all_cards(b: usize) -> Vec<Card> {
    filtered_cards(b, CardFilter::ALL)
}

/// Cards for `b` balls that pass the filter.
pub fn filtered_cards(b: usize, filter: CardFilter) -> Vec<Card> {
    filtered_cards_with(b, filter, Exec::default())
}

pub fn filtered_cards_with(b: usize, filter: CardFilter, exec: Exec) -> Vec<Card> {
    let rights = capped_compositions(b, filter.capacity);
    par::map_slice(exec, &rights, |r| {
        cards_into(r)
            .into_iter()
            .filter(|c| filter.accepts(c))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Closed form for the number of cards into `r`: `prod (r_i + 1)`.
pub fn cards_into_count(r: &Composition) -> BigUint {
    r.parts()
        .iter()
        .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p + 1))
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Closed form for the number of cards out of `q`:
/// `1 + (q_1+2k-2)/(q_1+k-1) * C(q_1+k-1, k-1) * 2^(q_1-1)`.
pub fn cards_from_count(q: &Composition) -> BigUint {
    let k = q.len();
    if k == 0 {
        return BigUint::one();
    }
    let q1 = q.parts()[0];
    let numer = (BigUint::from(q1 + 2 * k - 2) * binomial(q1 + k - 1, k - 1)) << (q1 - 1);
    let denom = BigUint::from(q1 + k - 1);
    debug_assert!((&numer % &denom).is_zero());
    BigUint::one() + numer / denom
}

/// Number of cards for `b` balls: [`cards_into_count`] summed over right
/// compositions, accumulated by first part as `a_m = sum_p (p+1) a_(m-p)`.
pub fn card_count(b: usize) -> BigUint {
    let mut a: Vec<BigUint> = vec![BigUint::one()];
    for m in 1..=b {
        let next = (1..=m).map(|p| &a[m - p] * BigUint::from(p + 1)).sum();
        a.push(next);
    }
    a.swap_remove(b)
}

/// Checks `a_b = 4 a_{b-1} - 2 a_{b-2}` for `3 <= b <= b_max`.
pub fn card_count_recurrence_check(b_max: usize) -> bool {
    let counts: Vec<BigUint> = (0..=b_max).map(card_count).collect();
    (3..=b_max).all(|b| &counts[b] + &counts[b - 2] * 2u32 == &counts[b - 1] * 4u32)
}

pub fn crossing_number(card: &Card) -> usize {
    card.crossings
}

/// Both sides have every part at most `kappa`.
pub fn respects_capacity(card: &Card, capacity: Capacity) -> bool {
    card.left.fits(capacity) && card.right.fits(capacity)
}

/// No slot receives more than one thrown ball.
pub fn has_distinct_heights(card: &Card) -> bool {
    card.placement.iter().all(|&p| p <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::compositions;
    use std::collections::{BTreeMap, HashSet};

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn nontrivial(left: &[usize], right: &[usize], indices: &[usize]) -> Card {
        Card::new(
            comp(left),
            comp(right),
            Embedding::NonTrivial {
                indices: indices.to_vec(),
            },
        )
        .unwrap()
    }

    #[test]
    fn counts_out_of_and_into() {
        assert_eq!(cards_from(&comp(&[3])).len(), 5);
        assert_eq!(cards_from(&comp(&[2, 1])).len(), 9);
        assert_eq!(cards_from(&comp(&[2, 1, 1])).len(), 19);
        assert_eq!(cards_into(&comp(&[1, 1, 1])).len(), 8);
        assert_eq!(cards_into(&comp(&[2, 1])).len(), 6);
        assert_eq!(cards_into(&comp(&[2, 1, 1])).len(), 12);
    }

    #[test]
    fn census_small() {
        assert_eq!(all_cards(0).len(), 1);
        assert!(all_cards(0)[0].is_trivial());
        assert_eq!(all_cards(3).len(), 24);
        assert_eq!(all_cards(4).len(), 82);
        assert_eq!(card_count(5), BigUint::from(280u32));
        assert_eq!(card_count(12), BigUint::from(1_514_272u32));
        assert!(card_count_recurrence_check(20));
    }

    #[test]
    fn card_count_is_sum_over_compositions() {
        for b in 0..=14 {
            let direct: BigUint = compositions(b).iter().map(cards_into_count).sum();
            assert_eq!(card_count(b), direct, "b={b}");
        }
    }

    #[test]
    fn both_directions_agree() {
        for b in 0..=8 {
            let into: HashSet<Card> = all_cards(b).into_iter().collect();
            let from: Vec<Card> = compositions(b).iter().flat_map(cards_from).collect();
            assert_eq!(from.len(), into.len(), "b = {b}");
            let from: HashSet<Card> = from.into_iter().collect();
            assert_eq!(from, into, "b = {b}");
            assert_eq!(BigUint::from(into.len()), card_count(b));
        }
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for b in 0..=8 {
            for c in compositions(b) {
                assert_eq!(
                    BigUint::from(cards_from(&c).len()),
                    cards_from_count(&c),
                    "{c}"
                );
                assert_eq!(
                    BigUint::from(cards_into(&c).len()),
                    cards_into_count(&c),
                    "{c}"
                );
            }
        }
    }

    #[test]
    fn placements_are_consistent() {
        for b in 0..=7 {
            for card in all_cards(b) {
                let expect = if card.is_trivial() {
                    0
                } else {
                    card.left.parts()[0]
                };
                assert_eq!(card.thrown(), expect);
                assert!(card.right.len() + 1 >= card.left.len());
                if card.is_trivial() {
                    assert_eq!(card.crossings(), 0);
                }
            }
        }
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(crossing_number(&nontrivial(&[1, 2], &[2, 1], &[1])), 1);
        assert_eq!(
            crossing_number(&nontrivial(&[1, 1, 1], &[1, 1, 1], &[1, 2])),
            2
        );
        let trivial = Card::new(comp(&[2, 1]), comp(&[2, 1]), Embedding::Trivial).unwrap();
        assert_eq!(crossing_number(&trivial), 0);
    }

    /// Crossing polynomials per (left, right) pair for three balls, written
    /// as coefficient lists in `q` and checked against the printed q-matrix.
    #[test]
    fn three_ball_crossing_polynomials() {
        let mut table: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
        for card in all_cards(3) {
            let entry = table
                .entry((card.left.parts().to_vec(), card.right.parts().to_vec()))
                .or_default();
            if entry.len() <= card.crossings() {
                entry.resize(card.crossings() + 1, 0);
            }
            entry[card.crossings()] += 1;
        }
        let labels: [&[usize]; 4] = [&[3], &[2, 1], &[1, 2], &[1, 1, 1]];
        let expected: [[&[usize]; 4]; 4] = [
            [&[2], &[1], &[1], &[1]],
            [&[1], &[2, 1], &[1, 1], &[1, 1, 1]],
            [&[1], &[0, 1], &[2], &[]],
            [&[], &[1], &[0, 1], &[2, 1, 1]],
        ];
        for (i, u) in labels.iter().enumerate() {
            for (j, v) in labels.iter().enumerate() {
                let got = table
                    .get(&(u.to_vec(), v.to_vec()))
                    .cloned()
                    .unwrap_or_default();
                assert_eq!(got.as_slice(), expected[i][j], "{u:?} -> {v:?}");
            }
        }
    }

    #[test]
    fn filters() {
        let c33 = nontrivial(&[3], &[3], &[]);
        assert!(!has_distinct_heights(&c33));
        let into_111: Vec<_> = cards_into(&comp(&[1, 1, 1]))
            .into_iter()
            .filter(|c| c.left == comp(&[2, 1]))
            .collect();
        assert_eq!(into_111.len(), 3);
        assert!(into_111.iter().all(has_distinct_heights));
        let c21 = nontrivial(&[2, 1], &[2, 1], &[1]);
        assert!(respects_capacity(&c21, Capacity::Finite(2)));
        assert!(!respects_capacity(&c21, Capacity::Finite(1)));
    }

    #[test]
    fn capped_filter_matches_direct_enumeration() {
        for kappa in 1..=3 {
            let cap = Capacity::Finite(kappa);
            for b in 0..=6 {
                let verts: HashSet<_> = capped_compositions(b, cap).into_iter().collect();
                let direct: HashSet<Card> = verts
                    .iter()
                    .flat_map(cards_from)
                    .filter(|c| verts.contains(&c.right))
                    .collect();
                let filtered: HashSet<Card> = filtered_cards(b, CardFilter::capped(cap))
                    .into_iter()
                    .collect();
                assert_eq!(direct, filtered, "b = {b}, kappa = {kappa}");
            }
        }
    }

    #[test]
    fn invalid_cards_rejected() {
        let bad = |l: &[usize], r: &[usize], e: Embedding| Card::new(comp(l), comp(r), e).is_err();
        assert!(bad(&[2, 1], &[1, 2], Embedding::Trivial));
        assert!(bad(
            &[1, 2],
            &[1, 1, 1],
            Embedding::NonTrivial { indices: vec![1] }
        ));
        assert!(bad(
            &[1, 1, 1],
            &[1, 1, 1],
            Embedding::NonTrivial {
                indices: vec![2, 1]
            }
        ));
        assert!(bad(&[2], &[1], Embedding::NonTrivial { indices: vec![] }));
        assert!(bad(&[], &[], Embedding::NonTrivial { indices: vec![] }));
    }

    #[test]
    fn record_round_trip() {
        for card in all_cards(3) {
            let rec = card.record();
            let json = serde_json::to_string(&rec).unwrap();
            let back: CardRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_card().unwrap(), card);
        }
        let trivial = all_cards(1).into_iter().find(Card::is_trivial).unwrap();
        assert_eq!(
            serde_json::to_string(&trivial.record()).unwrap(),
            r#"{"left":[1],"right":[1],"indices":null,"crossings":0}"#
        );
    }
}
