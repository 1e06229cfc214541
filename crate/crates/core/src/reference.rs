//! Published values used as golden data by `verify`, the acceptance suite and
//! the tests.

use num_bigint::BigInt;

use crate::combinatorics::{published_vertex_order, Capacity};
use crate::matrices::{ExactMatrix, PolyMatrix};
use crate::poly::Polynomial;

/// First ball count in each published pattern table.
pub const TABLE_BALLS: std::ops::RangeInclusive<usize> = 2..=5;
/// Periods covered by each published pattern table.
pub const TABLE_PERIODS: std::ops::RangeInclusive<usize> = 1..=15;

/// Cards with `b` balls, `b = 0..=12`.
pub const CARD_COUNTS: [u64; 13] = [
    1, 2, 7, 24, 82, 280, 956, 3264, 11144, 38048, 129904, 443520, 1514272,
];

/// `trace(A_b)` for `b = 0..=15`.
pub const TRACES: [u64; 16] = [
    1, 2, 5, 11, 24, 50, 104, 212, 431, 870, 1752, 3518, 7057, 14138, 28310, 56661,
];

/// Cards with every part at most 2, `b = 0..=14`.
pub const CAPACITY2_CARD_TOTALS: [u64; 15] = [
    1, 2, 7, 17, 41, 91, 195, 403, 812, 1601, 3102, 5922, 11165, 20824, 38477,
];

const UNBOUNDED: [[u64; 4]; 15] = [
    [2, 3, 5, 7],
    [4, 12, 32, 77],
    [13, 63, 261, 964],
    [37, 310, 2089, 12086],
    [118, 1618, 17449, 156975],
    [356, 8434, 147807, 2077448],
    [1142, 45142, 1276577, 27976399],
    [3620, 243998, 11169023, 381752857],
    [11744, 1336644, 98872035, 5267354817],
    [38275, 7392117, 883717142, 73358245986],
    [126234, 41247234, 7964898829, 1029873201879],
    [418735, 231856131, 72305691686, 14559160765380],
    [1399610, 1311820110, 660528998007, 207076019661773],
    [4702499, 7464002451, 6067348742573, 2961063646029819],
    [15883190, 42679372930, 56002661734041, 42542385162393167],
];

const CAPACITY_2: [[u64; 4]; 15] = [
    [2, 2, 3, 3],
    [4, 9, 18, 30],
    [13, 47, 134, 314],
    [37, 224, 950, 3140],
    [118, 1118, 6938, 31886],
    [356, 5522, 50751, 324909],
    [1142, 27910, 376402, 3341566],
    [3620, 141946, 2813824, 34605634],
    [11744, 730544, 21219536, 360849352],
    [38275, 3790391, 161190485, 3785776259],
    [126234, 19827570, 1232724798, 39941119938],
    [418735, 104422007, 9483975303, 423549648963],
    [1399610, 553339258, 73360425430, 4512516867634],
    [4702499, 2947940371, 570219618745, 48282551418859],
    [15883190, 15780565950, 4451677886746, 518633980103198],
];

const CAPACITY_3: [[u64; 4]; 15] = [
    [2, 3, 4, 5],
    [4, 12, 28, 58],
    [13, 63, 231, 713],
    [37, 310, 1840, 8591],
    [118, 1618, 15168, 106073],
    [356, 8434, 126258, 1325570],
    [1142, 45142, 1069002, 16789985],
    [3620, 243998, 9154845, 214916096],
    [11744, 1336644, 79252442, 2776778019],
    [38275, 7392117, 692290928, 36167946945],
    [126234, 41247234, 6095630354, 474470288650],
    [418735, 231856131, 54045188641, 6263882726811],
    [1399610, 1311820110, 482108239540, 83162406390939],
    [4702499, 7464002451, 4323812672665, 1109678347266127],
    [15883190, 42679372930, 38963338572980, 14873888879020290],
];

/// Printed transfer matrices, rows and columns in [`published_vertex_order`].
const PLAIN: [&[&[i64]]; 5] = [
    &[&[1]],
    &[&[2]],
    &[&[2, 1], &[1, 3]],
    &[&[2, 1, 1, 1], &[1, 3, 2, 3], &[1, 1, 2, 0], &[0, 1, 1, 4]],
    &[
        &[2, 1, 1, 1, 1, 1, 1, 1],
        &[1, 3, 2, 3, 2, 3, 3, 4],
        &[1, 1, 2, 0, 0, 0, 0, 0],
        &[0, 1, 1, 4, 1, 3, 3, 6],
        &[1, 1, 1, 1, 3, 1, 1, 0],
        &[0, 1, 0, 2, 1, 2, 0, 0],
        &[0, 0, 1, 0, 1, 1, 3, 0],
        &[0, 0, 0, 1, 0, 1, 1, 5],
    ],
];

const DISTINCT_HEIGHTS: [&[&[i64]]; 2] = [
    &[&[1, 1], &[1, 3]],
    &[&[1, 0, 0, 1], &[0, 2, 1, 3], &[1, 1, 2, 0], &[0, 1, 1, 4]],
];

/// Printed q-weighted matrix for three balls; entries are coefficient
/// lists, lowest degree first.
const Q_WEIGHTED_3: [[&[i64]; 4]; 4] = [
    [&[2], &[1], &[1], &[1]],
    [&[1], &[2, 1], &[1, 1], &[1, 1, 1]],
    [&[1], &[0, 1], &[2], &[]],
    [&[], &[1], &[0, 1], &[2, 1, 1]],
];

fn labelled(b: usize, rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
    .and_then(|m| m.with_labels(published_vertex_order(b).expect("printed order")))
    .expect("printed matrix is square")
}

/// Printed `A_b` for `b <= 4`.
pub fn published_matrix(b: usize) -> Option<ExactMatrix> {
    PLAIN.get(b).map(|rows| labelled(b, rows))
}

/// Printed distinct-height matrix for `b` in `2..=3`.
pub fn published_distinct_heights_matrix(b: usize) -> Option<ExactMatrix> {
    b.checked_sub(2)
        .and_then(|i| DISTINCT_HEIGHTS.get(i))
        .map(|rows| labelled(b, rows))
}

/// Printed `A_3(q)`.
pub fn published_q_matrix() -> PolyMatrix {
    PolyMatrix::from_rows(
        Q_WEIGHTED_3
            .iter()
            .map(|r| r.iter().map(|c| Polynomial::from_i64(c)).collect())
            .collect(),
    )
    .and_then(|m| m.with_labels(published_vertex_order(3).expect("printed order")))
    .expect("printed matrix is square")
}

/// Published pattern count `jp(b, n, capacity)` for `b` in [`TABLE_BALLS`],
/// `n` in [`TABLE_PERIODS`] and capacity 2, 3 or unbounded.
pub fn published_jp(b: usize, n: usize, capacity: Capacity) -> Option<u64> {
    let table = match capacity {
        Capacity::Unbounded => &UNBOUNDED,
        Capacity::Finite(2) => &CAPACITY_2,
        Capacity::Finite(3) => &CAPACITY_3,
        Capacity::Finite(_) => return None,
    };
    if !TABLE_BALLS.contains(&b) || !TABLE_PERIODS.contains(&n) {
        return None;
    }
    Some(table[n - 1][b - 2])
}

/// Capacities with a published table.
pub fn published_capacities() -> [Capacity; 3] {
    [
        Capacity::Unbounded,
        Capacity::Finite(2),
        Capacity::Finite(3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        assert_eq!(published_jp(3, 7, Capacity::Unbounded), Some(45142));
        assert_eq!(published_jp(4, 12, Capacity::Unbounded), Some(72305691686));
        assert_eq!(
            published_jp(5, 15, Capacity::Unbounded),
            Some(42542385162393167)
        );
        assert_eq!(published_jp(4, 9, Capacity::Finite(2)), Some(21219536));
        assert_eq!(
            published_jp(5, 15, Capacity::Finite(3)),
            Some(14873888879020290)
        );
        assert_eq!(published_jp(6, 1, Capacity::Unbounded), None);
        assert_eq!(published_jp(2, 1, Capacity::Finite(4)), None);
    }

    #[test]
    fn printed_matrices_are_consistent() {
        assert_eq!(published_matrix(4).unwrap().dim(), 8);
        assert_eq!(
            published_matrix(4).unwrap().entry_sum(),
            BigInt::from(CARD_COUNTS[4])
        );
        for (b, &t) in TRACES.iter().enumerate().take(5) {
            assert_eq!(published_matrix(b).unwrap().trace(), BigInt::from(t));
        }
        let q = published_q_matrix();
        assert_eq!(q.eval_at(&BigInt::from(1)), published_matrix(3).unwrap());
        assert!(published_distinct_heights_matrix(4).is_none());
        assert!(published_matrix(5).is_none());
    }

    #[test]
    fn unrestrictive_capacity_columns_coincide() {
        for n in TABLE_PERIODS {
            for b in 2..=3 {
                assert_eq!(
                    published_jp(b, n, Capacity::Finite(3)),
                    published_jp(b, n, Capacity::Unbounded)
                );
            }
            assert_eq!(
                published_jp(2, n, Capacity::Finite(2)),
                published_jp(2, n, Capacity::Unbounded)
            );
        }
    }
}
