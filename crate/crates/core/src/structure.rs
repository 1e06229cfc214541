//! Exploratory checks on the transfer matrices: the capacity-2 card
//! generating function, the factor pattern of characteristic polynomials,
//! and whether each matrix sits inside the next as a principal submatrix.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cards::CardFilter;
use crate::combinatorics::{
    capped_composition_count, compositions, partition_count, Capacity, Composition,
};
use crate::error::{Error, Result};
use crate::matrices::{
    char_poly_with, determinant, transfer_matrix, ExactMatrix, CHARPOLY_MAX_DIM,
};
use crate::par::{self, Exec};
use crate::poly::Polynomial;
use crate::report::{Check, Report};

/// Cards whose two sides both have every part at most `capacity`, i.e. the
/// entry sum of the capped transfer matrix, counted without building it.
///
/// A nontrivial card into `r` is a choice of `p_t <= r_t` new balls per slot
/// with `sum p_t = q_1 >= 1`; the continuing groups are the nonzero
/// `r_t - p_t`, which never exceed `r_t`, so only `q_1` needs capping.
pub fn capped_card_total(b: usize, capacity: Capacity) -> BigUint {
    let cap = capacity.clamp(b);
    // ways[m][j]: capped compositions of m with j new balls placed
    let mut ways: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); cap + 1]; b + 1];
    ways[0][0] = BigUint::one();
    for m in 1..=b {
        for part in 1..=cap.min(m) {
            for j in 0..=cap {
                for p in 0..=part.min(j) {
                    let add = ways[m - part][j - p].clone();
                    ways[m][j] += add;
                }
            }
        }
    }
    let nontrivial: BigUint = ways[b][1..].iter().sum();
    nontrivial + capped_composition_count(b, capacity)
}

pub fn capacity2_card_total(b: usize) -> BigUint {
    capped_card_total(b, Capacity::Finite(2))
}

/// Power series coefficients of `(1 - x + x^2 + x^3) / (1 - x - x^2)^3`
/// up to `x^b_max`, from the recurrence the denominator imposes.
pub fn conjecture_series(b_max: usize) -> Vec<BigInt> {
    let numerator = [1i64, -1, 1, 1];
    let base = Polynomial::from_i64(&[1, -1, -1]);
    let denominator = base.pow(3);
    let d = denominator.coefficients();
    let mut out: Vec<BigInt> = Vec::with_capacity(b_max + 1);
    for b in 0..=b_max {
        let mut c = BigInt::from(*numerator.get(b).unwrap_or(&0));
        for (j, dj) in d.iter().enumerate().skip(1) {
            if j <= b {
                c -= dj * &out[b - j];
            }
        }
        out.push(c);
    }
    out
}

/// Compares capacity-2 card totals with the series for `b = 0..=b_max`.
pub fn conjecture_check(b_max: usize) -> Report {
    let series = conjecture_series(b_max);
    let mut report = Report::new();
    for (b, coeff) in series.iter().enumerate() {
        report.push(Check::compare(
            "capacity-2 cards equal series coefficient",
            &[("b", b.to_string())],
            coeff,
            &BigInt::from(capacity2_card_total(b)),
        ));
    }
    report
}

/// `±p_1^e_1 p_2^e_2 ...`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerProduct {
    pub negative: bool,
    pub powers: Vec<(u64, u32)>,
}

impl PrimePowerProduct {
    fn new(negative: bool, powers: &[(u64, u32)]) -> Self {
        PrimePowerProduct {
            negative,
            powers: powers.to_vec(),
        }
    }

    pub fn value(&self) -> BigInt {
        let v: BigInt = self
            .powers
            .iter()
            .map(|&(p, e)| BigInt::from(p).pow(e))
            .product();
        if self.negative {
            -v
        } else {
            v
        }
    }
}

impl fmt::Display for PrimePowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        for (i, &(p, e)) in self.powers.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// What is published about a factor beyond the first five.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFactor {
    pub index: usize,
    pub degree: usize,
    pub second_coefficient: i64,
    pub constant_term: PrimePowerProduct,
}

/// `f_index^exponent`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPower {
    pub index: usize,
    pub exponent: usize,
}

/// Published factorization data for `P_b = det(xI - A_b)`, `b <= 13`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorTable {
    pub full_factors: Vec<Polynomial>,
    pub partial_factors: Vec<PartialFactor>,
    /// Exponents of `f_0..f_b` in `P_b` following the doubling pattern.
    pub exponent_rows: Vec<Vec<usize>>,
    /// Rows exactly as printed, including any misprints.
    pub printed_rows: Vec<Vec<FactorPower>>,
}

/// Exponent of `f_i` in `P_b` is `EXPONENT_SEQUENCE[b - i]`.
pub const EXPONENT_SEQUENCE: [usize; 14] = [1, 0, 0, 1, 2, 5, 9, 19, 37, 74, 148, 296, 591, 1183];

/// Degrees of `f_0..f_13`.
pub const FACTOR_DEGREES: [usize; 14] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101];

/// Second coefficients of `f_0..f_13`, negated.
pub const SECOND_COEFFICIENTS: [i64; 14] =
    [1, 2, 5, 10, 20, 36, 65, 110, 185, 300, 481, 752, 1165, 1770];

const PRINTED_ROWS: [&[(usize, usize)]; 14] = [
    &[(0, 1)],
    &[(1, 1)],
    &[(2, 1)],
    &[(0, 1), (3, 1)],
    &[(0, 2), (1, 1), (4, 1)],
    &[(0, 5), (1, 2), (2, 1), (5, 1)],
    &[(0, 9), (1, 5), (2, 2), (3, 1), (6, 1)],
    &[(0, 19), (1, 9), (2, 5), (3, 2), (4, 1), (7, 1)],
    &[(0, 37), (1, 19), (2, 9), (3, 5), (4, 2), (5, 1), (8, 1)],
    &[
        (0, 74),
        (2, 37),
        (2, 19),
        (3, 9),
        (4, 5),
        (5, 2),
        (6, 1),
        (9, 1),
    ],
    &[
        (0, 148),
        (1, 74),
        (2, 37),
        (3, 19),
        (4, 9),
        (5, 5),
        (6, 2),
        (7, 1),
        (10, 1),
    ],
    &[
        (0, 296),
        (1, 148),
        (2, 74),
        (3, 37),
        (4, 19),
        (5, 9),
        (6, 5),
        (7, 2),
        (8, 1),
        (11, 1),
    ],
    &[
        (0, 591),
        (1, 296),
        (2, 148),
        (3, 74),
        (4, 37),
        (5, 19),
        (6, 9),
        (7, 5),
        (8, 2),
        (9, 1),
        (12, 1),
    ],
    &[
        (0, 1183),
        (1, 591),
        (2, 296),
        (3, 148),
        (4, 74),
        (5, 37),
        (6, 19),
        (7, 9),
        (8, 5),
        (9, 2),
        (10, 1),
        (13, 1),
    ],
];

impl FactorTable {
    pub fn published() -> Self {
        let full_factors = vec![
            Polynomial::from_i64(&[-1, 1]),
            Polynomial::from_i64(&[-2, 1]),
            Polynomial::from_i64(&[5, -5, 1]),
            Polynomial::from_i64(&[-20, 27, -10, 1]),
            Polynomial::from_i64(&[-245, 518, -396, 135, -20, 1]),
        ];
        let constants: [(bool, &[(u64, u32)]); 9] = [
            (true, &[(2, 5), (5, 1), (7, 2)]),
            (true, &[(2, 5), (3, 2), (5, 2), (7, 3)]),
            (true, &[(2, 11), (3, 2), (5, 3), (7, 4)]),
            (false, &[(2, 10), (3, 4), (5, 4), (7, 6), (11, 2)]),
            (false, &[(2, 21), (3, 5), (5, 6), (7, 8), (11, 2)]),
            (false, &[(2, 21), (3, 9), (5, 8), (7, 12), (11, 3), (13, 2)]),
            (
                false,
                &[(2, 38), (3, 12), (5, 11), (7, 16), (11, 4), (13, 2)],
            ),
            (
                true,
                &[(2, 42), (3, 17), (5, 16), (7, 22), (11, 9), (13, 3)],
            ),
            (
                true,
                &[(2, 70), (3, 23), (5, 21), (7, 29), (11, 11), (13, 4)],
            ),
        ];
        let partial_factors = constants
            .iter()
            .enumerate()
            .map(|(k, &(negative, powers))| {
                let index = k + 5;
                PartialFactor {
                    index,
                    degree: FACTOR_DEGREES[index],
                    second_coefficient: -SECOND_COEFFICIENTS[index],
                    constant_term: PrimePowerProduct::new(negative, powers),
                }
            })
            .collect();
        let exponent_rows = (0..14).map(exponent_row).collect();
        let printed_rows = PRINTED_ROWS
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(index, exponent)| FactorPower { index, exponent })
                    .collect()
            })
            .collect();
        FactorTable {
            full_factors,
            partial_factors,
            exponent_rows,
            printed_rows,
        }
    }

    pub fn partial(&self, index: usize) -> Option<&PartialFactor> {
        self.partial_factors.iter().find(|p| p.index == index)
    }
}

/// Exponents of `f_0..f_b` in `P_b` following the pattern.
pub fn exponent_row(b: usize) -> Vec<usize> {
    (0..=b).map(|i| EXPONENT_SEQUENCE[b - i]).collect()
}

/// Sparse form of [`exponent_row`].
fn pattern_powers(b: usize) -> Vec<FactorPower> {
    exponent_row(b)
        .into_iter()
        .enumerate()
        .filter(|&(_, e)| e > 0)
        .map(|(index, exponent)| FactorPower { index, exponent })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorReport {
    pub b: usize,
    pub char_poly_degree: usize,
    /// Factors divided out of `P_b`, smallest index first.
    pub divided: Vec<FactorPower>,
    /// `P_b` with every smaller factor removed; the candidate for `f_b`.
    pub residual: Option<Polynomial>,
    pub checks: Report,
}

/// Characteristic polynomials of transfer matrices and their residual
/// factors `f_b`; residuals found for small `b` are reused as the unprinted
/// factors of larger ones.
#[derive(Debug)]
pub struct FactorSolver {
    table: FactorTable,
    exec: Exec,
    derived: HashMap<usize, Polynomial>,
}

impl Default for FactorSolver {
    fn default() -> Self {
        Self::new(Exec::default())
    }
}

impl FactorSolver {
    pub fn new(exec: Exec) -> Self {
        FactorSolver {
            table: FactorTable::published(),
            exec,
            derived: HashMap::new(),
        }
    }

    pub fn table(&self) -> &FactorTable {
        &self.table
    }

    pub fn char_poly(&self, b: usize) -> Result<(ExactMatrix, Polynomial)> {
        let dim = 1usize << b.saturating_sub(1);
        if dim > CHARPOLY_MAX_DIM {
            return Err(Error::Infeasible {
                what: "characteristic polynomial dimension",
                limit: CHARPOLY_MAX_DIM,
                requested: dim,
            });
        }
        let a = transfer_matrix(b, CardFilter::ALL);
        let p = char_poly_with(&a, self.exec)?;
        Ok((a, p))
    }

    /// `f_index`: printed when available, else the residual of its own report.
    pub fn factor(&mut self, index: usize) -> Result<Polynomial> {
        if let Some(f) = self.table.full_factors.get(index) {
            return Ok(f.clone());
        }
        if let Some(f) = self.derived.get(&index) {
            return Ok(f.clone());
        }
        let report = self.report(index)?;
        report.residual.ok_or_else(|| Error::Inexact {
            context: format!("no residual factor for b = {index}"),
        })
    }

    pub fn report(&mut self, b: usize) -> Result<FactorReport> {
        if b >= EXPONENT_SEQUENCE.len() {
            return Err(Error::Infeasible {
                what: "factor table ball count",
                limit: EXPONENT_SEQUENCE.len() - 1,
                requested: b,
            });
        }
        let (a, p) = self.char_poly(b)?;
        let params = [("b", b.to_string())];
        let mut checks = Report::new();

        let det = determinant(&a)?;
        let signed = if a.dim() % 2 == 0 { det } else { -det };
        checks.push(Check::compare(
            "P_b(0) equals signed determinant",
            &params,
            &signed,
            &p.constant_term(),
        ));
        checks.push(Check::compare(
            "second coefficient equals -trace",
            &params,
            &(-a.trace()),
            &p.second_coefficient(),
        ));

        let printed: Vec<FactorPower> = self.table.printed_rows[b].clone();
        let pattern = pattern_powers(b);
        if printed != pattern {
            checks.note(format!(
                "printed exponent row for b = {b} ({}) differs from the exponent pattern ({}); treated as a misprint",
                render_powers(&printed),
                render_powers(&pattern)
            ));
        }

        let mut residual = p.clone();
        let mut divided = Vec::new();
        let mut failed = false;
        for fp in pattern.iter().filter(|fp| fp.index < b) {
            let f = self.factor(fp.index)?;
            let power = f.pow(fp.exponent);
            let name = format!("divisible by f_{}^{}", fp.index, fp.exponent);
            match residual.exact_div(&power) {
                Ok(q) => {
                    checks.push(Check::verdict(name, &params, "exact", "exact", true));
                    residual = q;
                    divided.push(*fp);
                }
                Err(Error::NotDivisible { remainder }) => {
                    checks.push(Check::verdict(
                        name,
                        &params,
                        "remainder 0",
                        format!("remainder {remainder}"),
                        false,
                    ));
                    failed = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }

        let residual = if failed {
            None
        } else {
            let params = &params;
            checks.push(Check::compare(
                "residual is monic",
                params,
                &true,
                &residual.is_monic(),
            ));
            let degree = residual.degree().unwrap_or(0);
            checks.push(Check::compare(
                "residual degree equals printed degree",
                params,
                &FACTOR_DEGREES[b],
                &degree,
            ));
            checks.push(Check::compare(
                "residual degree equals p(b)",
                params,
                &partition_count(b),
                &BigUint::from(degree),
            ));
            if let Some(full) = self.table.full_factors.get(b) {
                checks.push(Check::compare(
                    "residual equals printed factor",
                    params,
                    &full.to_string(),
                    &residual.to_string(),
                ));
            }
            checks.push(Check::compare(
                "residual second coefficient equals printed value",
                params,
                &BigInt::from(-SECOND_COEFFICIENTS[b]),
                &residual.second_coefficient(),
            ));
            if let Some(partial) = self.table.partial(b) {
                checks.push(Check::compare(
                    "residual constant term equals printed prime-power product",
                    params,
                    &partial.constant_term.value(),
                    &residual.constant_term(),
                ));
            }
            if b >= self.table.full_factors.len() {
                self.derived.insert(b, residual.clone());
            }
            Some(residual)
        };

        Ok(FactorReport {
            b,
            char_poly_degree: p.degree().unwrap_or(0),
            divided,
            residual,
            checks,
        })
    }
}

fn render_powers(row: &[FactorPower]) -> String {
    row.iter()
        .map(|fp| format!("f_{}^{}", fp.index, fp.exponent))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn charpoly_factor_report(b: usize) -> Result<FactorReport> {
    FactorSolver::default().report(b)
}

/// Result of searching for `A_{b-1}` inside `A_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub b: usize,
    /// Image of each vertex of the smaller graph, in its canonical order.
    pub witness: Option<Vec<Vec<usize>>>,
    /// A witness whose remaining rows can be ordered so that the lower-left
    /// block is upper triangular.
    pub triangular_witness: Option<Vec<Vec<usize>>>,
    /// Every entry-preserving injection found.
    pub witnesses: u64,
    /// Partial assignments explored.
    pub explored: u64,
}

pub const CONTAINMENT_MAX_BALLS: usize = 5;

pub fn submatrix_containment_search(b: usize) -> Result<ContainmentReport> {
    submatrix_containment_search_with(b, Exec::default())
}

pub fn submatrix_containment_search_with(b: usize, exec: Exec) -> Result<ContainmentReport> {
    if b > CONTAINMENT_MAX_BALLS {
        return Err(Error::Infeasible {
            what: "containment search ball count",
            limit: CONTAINMENT_MAX_BALLS,
            requested: b,
        });
    }
    if b == 0 {
        return Err(Error::OutOfRange {
            name: "b",
            min: 1,
            got: 0,
        });
    }
    let small = transfer_matrix(b - 1, CardFilter::ALL);
    let big = transfer_matrix(b, CardFilter::ALL);
    let explored = AtomicU64::new(0);
    let firsts: Vec<usize> = (0..big.dim()).collect();
    let found = par::map_slice(exec, &firsts, |&first| {
        let mut all = Vec::new();
        if big.get(first, first) == small.get(0, 0) {
            let mut used = vec![false; big.dim()];
            used[first] = true;
            let mut map = vec![first];
            extend_injection(&small, &big, &mut map, &mut used, &mut all, &explored);
        }
        all
    });
    let witnesses: Vec<Vec<usize>> = found.into_iter().flatten().collect();
    let labels = big.labels();
    let render = |w: &Vec<usize>| -> Vec<Vec<usize>> {
        w.iter().map(|&i| labels[i].parts().to_vec()).collect()
    };
    let triangular = witnesses
        .iter()
        .find(|w| lower_left_triangularizable(&big, w));
    Ok(ContainmentReport {
        b,
        witness: witnesses.first().map(render),
        triangular_witness: triangular.map(render),
        witnesses: witnesses.len() as u64,
        explored: explored.load(Ordering::Relaxed),
    })
}

fn extend_injection(
    small: &ExactMatrix,
    big: &ExactMatrix,
    map: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    explored: &AtomicU64,
) {
    explored.fetch_add(1, Ordering::Relaxed);
    let i = map.len();
    if i == small.dim() {
        out.push(map.clone());
        return;
    }
    for v in 0..big.dim() {
        if used[v] || big.get(v, v) != small.get(i, i) {
            continue;
        }
        let consistent = map
            .iter()
            .enumerate()
            .all(|(j, &u)| big.get(v, u) == small.get(i, j) && big.get(u, v) == small.get(j, i));
        if consistent {
            used[v] = true;
            map.push(v);
            extend_injection(small, big, map, used, out, explored);
            map.pop();
            used[v] = false;
        }
    }
}

/// With columns fixed in witness order, the remaining rows can be arranged so
/// that row `k` of the block is zero before column `k` iff, sorted, the
/// `k`-th smallest leading-zero run is at least `k`.
fn lower_left_triangularizable(big: &ExactMatrix, witness: &[usize]) -> bool {
    let mut in_witness = vec![false; big.dim()];
    for &w in witness {
        in_witness[w] = true;
    }
    let mut runs: Vec<usize> = (0..big.dim())
        .filter(|&r| !in_witness[r])
        .map(|r| {
            witness
                .iter()
                .take_while(|&&c| big.get(r, c).is_zero())
                .count()
        })
        .collect();
    runs.sort_unstable();
    runs.iter().enumerate().all(|(k, &lz)| lz >= k)
}

/// Vertices of the smaller graph with their images, for display.
pub fn witness_pairs(b: usize, witness: &[Vec<usize>]) -> Vec<(Composition, Composition)> {
    compositions(b.saturating_sub(1))
        .into_iter()
        .zip(
            witness
                .iter()
                .map(|w| Composition::new(w.clone()).expect("image is a composition")),
        )
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::CAPACITY2_CARD_TOTALS;

    #[test]
    fn capacity_two_totals() {
        for (b, &v) in CAPACITY2_CARD_TOTALS.iter().enumerate() {
            assert_eq!(capacity2_card_total(b), BigUint::from(v), "b = {b}");
        }
        assert_eq!(capacity2_card_total(3), BigUint::from(17u32));
        assert_eq!(capacity2_card_total(7), BigUint::from(403u32));
        assert_eq!(capacity2_card_total(0), BigUint::one());
    }

    #[test]
    fn dp_matches_matrix_entry_sums() {
        for b in 0..=7 {
            for cap in [
                Capacity::Finite(1),
                Capacity::Finite(2),
                Capacity::Finite(3),
                Capacity::Unbounded,
            ] {
                let m = transfer_matrix(b, CardFilter::capped(cap));
                assert_eq!(
                    BigInt::from(capped_card_total(b, cap)),
                    m.entry_sum(),
                    "b={b} {cap}"
                );
            }
        }
        assert_eq!(
            capped_card_total(12, Capacity::Unbounded),
            BigUint::from(1514272u32)
        );
    }

    #[test]
    fn series_expansion() {
        let s = conjecture_series(25);
        assert_eq!(s[4], BigInt::from(41));
        assert_eq!(s[14], BigInt::from(38477));
        let back = &Polynomial::new(s.clone()) * &Polynomial::from_i64(&[1, -1, -1]).pow(3);
        for (b, c) in back.coefficients().iter().enumerate().take(26) {
            assert_eq!(*c, BigInt::from(*[1, -1, 1, 1].get(b).unwrap_or(&0)));
        }
        assert!(conjecture_check(14).all_passed());
        assert!(conjecture_check(25).all_passed());
    }

    #[test]
    fn published_factor_data() {
        let t = FactorTable::published();
        for (i, f) in t.full_factors.iter().enumerate() {
            assert_eq!(f.degree(), Some(FACTOR_DEGREES[i]));
            assert_eq!(
                f.second_coefficient(),
                BigInt::from(-SECOND_COEFFICIENTS[i])
            );
        }
        assert_eq!(
            t.partial(5).unwrap().constant_term.value(),
            BigInt::from(-7840)
        );
        assert_eq!(
            t.partial(5).unwrap().constant_term.to_string(),
            "-2^5·5·7^2"
        );
        assert_eq!(exponent_row(7)[..5], [19, 9, 5, 2, 1]);
        for b in 0..14 {
            let printed = &t.printed_rows[b];
            if b == 9 {
                assert_ne!(*printed, pattern_powers(b));
            } else {
                assert_eq!(*printed, pattern_powers(b), "b = {b}");
            }
        }
        for (b, &d) in FACTOR_DEGREES.iter().enumerate() {
            assert_eq!(BigUint::from(d), partition_count(b));
        }
    }

    #[test]
    fn small_factor_reports() {
        let mut solver = FactorSolver::default();
        for b in 0..=7 {
            let r = solver.report(b).unwrap();
            assert!(
                r.checks.all_passed(),
                "b={b}: {:?}",
                r.checks.failures().collect::<Vec<_>>()
            );
            assert_eq!(r.char_poly_degree, 1 << b.saturating_sub(1));
        }
        let r3 = solver.report(3).unwrap();
        assert_eq!(
            r3.residual.unwrap(),
            Polynomial::from_i64(&[-20, 27, -10, 1])
        );
        let r5 = solver.report(5).unwrap();
        let f5 = r5.residual.unwrap();
        assert_eq!(
            (f5.degree(), f5.second_coefficient(), f5.constant_term()),
            (Some(7), BigInt::from(-36), BigInt::from(-7840))
        );
        let r6 = solver.report(6).unwrap();
        assert_eq!(
            r6.divided.iter().map(|f| f.exponent).collect::<Vec<_>>(),
            [9, 5, 2, 1]
        );
        assert_eq!(r6.residual.unwrap().second_coefficient(), BigInt::from(-65));
    }

    #[test]
    fn containment() {
        let r2 = submatrix_containment_search(2).unwrap();
        assert_eq!(r2.witness, Some(vec![vec![2]]));
        for b in 3..=4 {
            let r = submatrix_containment_search(b).unwrap();
            assert!(r.witness.is_some(), "b = {b}");
        }
        assert!(matches!(
            submatrix_containment_search(6),
            Err(Error::Infeasible { .. })
        ));
        assert_eq!(
            submatrix_containment_search_with(4, Exec::Sequential)
                .unwrap()
                .witnesses,
            submatrix_containment_search_with(4, Exec::Parallel)
                .unwrap()
                .witnesses
        );
    }

    #[test]
    fn triangular_check() {
        let m = ExactMatrix::from_rows(
            [[1i64, 0, 0, 0], [0, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1]]
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap();
        assert!(lower_left_triangularizable(&m, &[2, 3]));
        assert!(!lower_left_triangularizable(&m, &[0, 1]));
        assert!(lower_left_triangularizable(&m, &[1, 0]));
    }
}
