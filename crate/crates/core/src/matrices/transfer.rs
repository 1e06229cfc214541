use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use super::dense::{ExactMatrix, Matrix, PolyMatrix};
use crate::cards::{cards_into, CardFilter};
use crate::combinatorics::{capped_compositions, Capacity, Composition};
use crate::par::{self, Exec};
use crate::poly::Polynomial;

/// Which transfer matrix to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    Capped(usize),
    DistinctHeights,
    QWeighted,
    QWeightedCapped(usize),
}

impl Variant {
    pub fn filter(self) -> CardFilter {
        match self {
            Variant::Plain | Variant::QWeighted => CardFilter::ALL,
            Variant::Capped(k) | Variant::QWeightedCapped(k) => {
                CardFilter::capped(Capacity::Finite(k))
            }
            Variant::DistinctHeights => CardFilter::distinct_heights(),
        }
    }

    pub fn is_q_weighted(self) -> bool {
        matches!(self, Variant::QWeighted | Variant::QWeightedCapped(_))
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Plain => write!(f, "plain"),
            Variant::Capped(k) => write!(f, "capped:{k}"),
            Variant::DistinctHeights => write!(f, "distinct_heights"),
            Variant::QWeighted => write!(f, "q_weighted"),
            Variant::QWeightedCapped(k) => write!(f, "q_weighted_capped:{k}"),
        }
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kappa = |raw: &str| -> Result<usize, String> {
            match raw.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k),
                _ => Err(format!("capacity in `{s}` must be a positive integer")),
            }
        };
        match s.split_once(':') {
            None => match s {
                "plain" => Ok(Variant::Plain),
                "distinct_heights" | "distinct" => Ok(Variant::DistinctHeights),
                "q_weighted" | "q" => Ok(Variant::QWeighted),
                _ => Err(format!("unknown matrix variant `{s}`")),
            },
            Some(("capped", k)) => kappa(k).map(Variant::Capped),
            Some(("q_weighted_capped", k)) => kappa(k).map(Variant::QWeightedCapped),
            Some(_) => Err(format!("unknown matrix variant `{s}`")),
        }
    }
}

/// Per-column tallies of `(row, crossings)` for every accepted card.
fn column_tallies(
    b: usize,
    filter: CardFilter,
    exec: Exec,
) -> (Vec<Composition>, Vec<Vec<(usize, usize)>>) {
    let labels = capped_compositions(b, filter.capacity);
    let index: HashMap<&Composition, usize> =
        labels.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let columns = par::map_slice(exec, &labels, |r| {
        cards_into(r)
            .into_iter()
            .filter(|c| filter.accepts(c))
            .map(|c| (index[c.left()], c.crossings()))
            .collect::<Vec<_>>()
    });
    (labels, columns)
}

/// Entry `(u, v)` counts the accepted cards from `u` to `v`; vertices are the
/// compositions of `b` that fit the filter's capacity, in canonical order.
pub fn transfer_matrix(b: usize, filter: CardFilter) -> ExactMatrix {
    transfer_matrix_with(b, filter, Exec::default())
}

pub fn transfer_matrix_with(b: usize, filter: CardFilter, exec: Exec) -> ExactMatrix {
    let (labels, columns) = column_tallies(b, filter, exec);
    let n = labels.len();
    let mut counts = vec![0u64; n * n];
    for (col, tallies) in columns.iter().enumerate() {
        for &(row, _) in tallies {
            counts[row * n + col] += 1;
        }
    }
    Matrix::from_parts(labels, counts.into_iter().map(BigInt::from).collect())
}

/// Entry `(u, v)` is the sum of `q^crossings` over cards from `u` to `v`.
pub fn q_transfer_matrix(b: usize, capacity: Capacity) -> PolyMatrix {
    let (labels, columns) = column_tallies(b, CardFilter::capped(capacity), Exec::default());
    let n = labels.len();
    let mut coeffs: Vec<Vec<u64>> = vec![Vec::new(); n * n];
    for (col, tallies) in columns.iter().enumerate() {
        for &(row, crossings) in tallies {
            let slot = &mut coeffs[row * n + col];
            if slot.len() <= crossings {
                slot.resize(crossings + 1, 0);
            }
            slot[crossings] += 1;
        }
    }
    let entries = coeffs
        .into_iter()
        .map(|c| Polynomial::new(c.into_iter().map(BigInt::from).collect()))
        .collect();
    Matrix::from_parts(labels, entries)
}

#[derive(Debug, Clone, PartialEq)]
pub enum TransferMatrix {
    Exact(ExactMatrix),
    Poly(PolyMatrix),
}

pub fn build_transfer(b: usize, variant: Variant) -> TransferMatrix {
    match variant {
        Variant::QWeighted => TransferMatrix::Poly(q_transfer_matrix(b, Capacity::Unbounded)),
        Variant::QWeightedCapped(k) => {
            TransferMatrix::Poly(q_transfer_matrix(b, Capacity::Finite(k)))
        }
        other => TransferMatrix::Exact(transfer_matrix(b, other.filter())),
    }
}

/// Trace of the plain or capped transfer matrix without building it.
///
/// A nontrivial card from `r` back to `r` is a strictly increasing choice of
/// slots `i_2 < ... < i_l` with `r_j <= r_{i_j}`; together with the trivial
/// card that gives the diagonal entry at `r`. Cost is polynomial per vertex,
/// so this reaches ball counts whose full matrix would not fit in memory.
pub fn diagonal_trace(b: usize, capacity: Capacity) -> BigUint {
    capped_compositions(b, capacity)
        .iter()
        .map(|r| BigUint::from(1u64 + self_embeddings(r.parts())))
        .sum()
}

fn self_embeddings(r: &[usize]) -> u64 {
    let Some((_, groups)) = r.split_first() else {
        return 0;
    };
    let Some((&first, later)) = groups.split_first() else {
        return 1;
    };
    // ways[s]: placements of the groups so far with the latest one in slot s
    let mut ways: Vec<u64> = r.iter().map(|&slot| u64::from(first <= slot)).collect();
    for &group in later {
        let mut prefix = 0;
        let mut next = vec![0; r.len()];
        for (s, &slot) in r.iter().enumerate() {
            if group <= slot {
                next[s] = prefix;
            }
            prefix += ways[s];
        }
        ways = next;
    }
    ways.iter().sum()
}

/// JSON form of a transfer matrix; integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub b: usize,
    pub variant: String,
    pub labels: Vec<Vec<usize>>,
    pub entries: MatrixEntries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntries {
    Integers(Vec<Vec<String>>),
    /// Coefficient arrays, lowest degree first.
    Polynomials(Vec<Vec<Polynomial>>),
}

impl TransferMatrix {
    pub fn to_json(&self, b: usize, variant: Variant) -> MatrixJson {
        let (labels, entries) = match self {
            TransferMatrix::Exact(m) => (
                m.labels(),
                MatrixEntries::Integers(
                    m.rows()
                        .iter()
                        .map(|r| r.iter().map(ToString::to_string).collect())
                        .collect(),
                ),
            ),
            TransferMatrix::Poly(m) => (m.labels(), MatrixEntries::Polynomials(m.rows())),
        };
        MatrixJson {
            b,
            variant: variant.to_string(),
            labels: labels.iter().map(|c| c.parts().to_vec()).collect(),
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            TransferMatrix::Exact(m) => m.dim(),
            TransferMatrix::Poly(m) => m.dim(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::{all_cards, card_count, cards_from_count, cards_into_count};
    use crate::combinatorics::{compositions, published_vertex_order};
    use num_traits::{One, Zero};

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn in_printed_order(b: usize, filter: CardFilter) -> Vec<Vec<BigInt>> {
        transfer_matrix(b, filter)
            .permuted(&published_vertex_order(b).unwrap())
            .unwrap()
            .rows()
    }

    #[test]
    fn small_plain_matrices() {
        assert_eq!(in_printed_order(0, CardFilter::ALL), ints(&[&[1]]));
        assert_eq!(in_printed_order(1, CardFilter::ALL), ints(&[&[2]]));
        assert_eq!(
            in_printed_order(2, CardFilter::ALL),
            ints(&[&[2, 1], &[1, 3]])
        );
        assert_eq!(
            in_printed_order(3, CardFilter::ALL),
            ints(&[&[2, 1, 1, 1], &[1, 3, 2, 3], &[1, 1, 2, 0], &[0, 1, 1, 4]])
        );
    }

    #[test]
    fn distinct_height_matrices() {
        let f = CardFilter::distinct_heights();
        assert_eq!(in_printed_order(2, f), ints(&[&[1, 1], &[1, 3]]));
        assert_eq!(
            in_printed_order(3, f),
            ints(&[&[1, 0, 0, 1], &[0, 2, 1, 3], &[1, 1, 2, 0], &[0, 1, 1, 4]])
        );
    }

    #[test]
    fn line_sums_match_closed_forms() {
        for b in 0..=8 {
            let a = transfer_matrix(b, CardFilter::ALL);
            for (i, label) in a.labels().iter().enumerate() {
                let row: BigInt = a.row(i).iter().sum();
                let col: BigInt = (0..a.dim()).map(|r| a.get(r, i)).sum();
                assert_eq!(row, BigInt::from(cards_from_count(label)));
                assert_eq!(col, BigInt::from(cards_into_count(label)));
            }
            assert_eq!(a.entry_sum(), BigInt::from(card_count(b)));
        }
        assert_eq!(
            transfer_matrix(4, CardFilter::ALL).entry_sum(),
            BigInt::from(82)
        );
    }

    #[test]
    fn q_matrix_specialises_to_plain() {
        for b in 0..=6 {
            let q = q_transfer_matrix(b, Capacity::Unbounded);
            assert_eq!(
                q.eval_at(&BigInt::one()),
                transfer_matrix(b, CardFilter::ALL)
            );
        }
    }

    #[test]
    fn capped_is_principal_submatrix() {
        for b in 0..=6 {
            let full = transfer_matrix(b, CardFilter::ALL);
            for kappa in 1..=3 {
                let cap = Capacity::Finite(kappa);
                let keep: Vec<usize> = compositions(b)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.fits(cap))
                    .map(|(i, _)| i)
                    .collect();
                assert_eq!(
                    transfer_matrix(b, CardFilter::capped(cap)),
                    full.principal_submatrix(&keep)
                );
            }
        }
    }

    #[test]
    fn capacity_one_is_ordinary_juggling() {
        for b in 0..=6 {
            let a = transfer_matrix(b, CardFilter::capped(Capacity::Finite(1)));
            assert_eq!(a.rows(), ints(&[&[b as i64 + 1]]));
        }
    }

    #[test]
    fn diagonal_shortcut_matches_matrix_trace() {
        for b in 0..=8 {
            for cap in [
                Capacity::Unbounded,
                Capacity::Finite(1),
                Capacity::Finite(2),
                Capacity::Finite(3),
            ] {
                let m = transfer_matrix(b, CardFilter::capped(cap));
                assert_eq!(
                    BigInt::from(diagonal_trace(b, cap)),
                    m.trace(),
                    "b = {b}, {cap}"
                );
            }
        }
    }

    #[test]
    fn matrix_counts_every_card() {
        for b in 0..=5 {
            let total: usize = all_cards(b).len();
            assert_eq!(
                transfer_matrix(b, CardFilter::ALL).entry_sum(),
                BigInt::from(total)
            );
        }
        assert!(transfer_matrix(3, CardFilter::ALL).get(3, 0).is_zero());
    }

    #[test]
    fn variant_strings() {
        for v in [
            Variant::Plain,
            Variant::Capped(2),
            Variant::DistinctHeights,
            Variant::QWeighted,
            Variant::QWeightedCapped(3),
        ] {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
        assert!("capped:0".parse::<Variant>().is_err());
        assert!("sparse".parse::<Variant>().is_err());
    }

    #[test]
    fn json_schema() {
        let m = build_transfer(2, Variant::Plain);
        let json = m.to_json(2, Variant::Plain);
        assert_eq!(json.labels, vec![vec![2], vec![1, 1]]);
        assert_eq!(
            json.entries,
            MatrixEntries::Integers(vec![
                vec!["2".into(), "1".into()],
                vec!["1".into(), "3".into()]
            ])
        );
        let q = build_transfer(2, Variant::QWeighted).to_json(2, Variant::QWeighted);
        let text = serde_json::to_string(&q).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
        assert!(matches!(back.entries, MatrixEntries::Polynomials(_)));
    }
}
