//! Grouped verification runs over published values and internal identities,
//! shared by the `verify` command and the acceptance tests.

use std::fmt::Display;

use num_bigint::BigInt;

use crate::cards::{all_cards, card_count, CardFilter};
use crate::combinatorics::{published_vertex_order, Capacity};
use crate::counting::{trace_identities, unary_pattern_count, walk_decomposition, Counter};
use crate::error::Result;
use crate::matrices::{q_transfer_matrix, transfer_matrix, Entry, Matrix};
use crate::oracle::{verify_counts, Guard};
use crate::poly::Polynomial;
use crate::reference::{
    published_capacities, published_distinct_heights_matrix, published_jp, published_matrix,
    published_q_matrix, CARD_COUNTS, TABLE_BALLS, TABLE_PERIODS, TRACES,
};
use crate::report::{Check, Report};
use crate::structure::{conjecture_check, FactorSolver};

fn render<T: Entry + Display>(m: &Matrix<T>) -> String {
    let rows: Vec<String> = m
        .rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// Every published pattern count for one capacity.
pub fn published_tables(counter: &Counter, capacity: Capacity) -> Result<Report> {
    let mut report = Report::new();
    for rec in counter.table(TABLE_BALLS, TABLE_PERIODS, capacity)? {
        let expected = published_jp(rec.b, rec.n, capacity).expect("cell inside the table");
        report.push(Check::compare(
            "jp equals published table",
            &[
                ("b", rec.b.to_string()),
                ("n", rec.n.to_string()),
                ("kappa", capacity.to_string()),
            ],
            &BigInt::from(expected),
            &rec.jp,
        ));
    }
    Ok(report)
}

/// Card counts by enumeration, by formula and by the linear recurrence.
pub fn card_census(enumerate_max: usize, recurrence_max: usize) -> Report {
    let mut report = Report::new();
    for (b, &expected) in CARD_COUNTS.iter().enumerate() {
        let params = [("b", b.to_string())];
        let expected = BigInt::from(expected);
        report.push(Check::compare(
            "card formula equals published count",
            &params,
            &expected,
            &BigInt::from(card_count(b)),
        ));
        if b <= enumerate_max {
            report.push(Check::compare(
                "enumerated cards equal published count",
                &params,
                &expected,
                &BigInt::from(all_cards(b).len()),
            ));
        }
    }
    let a: Vec<BigInt> = (0..=recurrence_max)
        .map(|i| BigInt::from(card_count(i)))
        .collect();
    for b in 3..=recurrence_max {
        report.push(Check::compare(
            "a_b = 4 a_(b-1) - 2 a_(b-2)",
            &[("b", b.to_string())],
            &(BigInt::from(4) * &a[b - 1] - BigInt::from(2) * &a[b - 2]),
            &a[b],
        ));
    }
    report
}

/// Built matrices against the printed ones, after reordering to the
/// printed vertex order.
pub fn golden_matrices() -> Result<Report> {
    let mut report = Report::new();
    for b in 0..=4 {
        let order = published_vertex_order(b).expect("printed order");
        let built = transfer_matrix(b, CardFilter::ALL).permuted(&order)?;
        report.push(Check::compare(
            "A_b equals printed matrix",
            &[("b", b.to_string())],
            &render(&published_matrix(b).expect("printed")),
            &render(&built),
        ));
    }
    for b in 2..=3 {
        let order = published_vertex_order(b).expect("printed order");
        let built = transfer_matrix(b, CardFilter::distinct_heights()).permuted(&order)?;
        report.push(Check::compare(
            "distinct-height matrix equals printed matrix",
            &[("b", b.to_string())],
            &render(&published_distinct_heights_matrix(b).expect("printed")),
            &render(&built),
        ));
    }
    let order = published_vertex_order(3).expect("printed order");
    let built = q_transfer_matrix(3, Capacity::Unbounded).permuted(&order)?;
    let show = |m: &Matrix<Polynomial>| render(&m.map(|p| PolyCell(p.clone())));
    report.push(Check::compare(
        "A_3(q) equals printed matrix",
        &[("b", "3".into())],
        &show(&published_q_matrix()),
        &show(&built),
    ));
    Ok(report)
}

/// Polynomial rendered in `q` for matrix display.
#[derive(Debug, Clone, PartialEq)]
struct PolyCell(Polynomial);

impl Display for PolyCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0.display_in("q"))
    }
}

impl Entry for PolyCell {
    fn zero() -> Self {
        PolyCell(<Polynomial as Entry>::zero())
    }
    fn one() -> Self {
        PolyCell(<Polynomial as Entry>::one())
    }
    fn is_zero(&self) -> bool {
        Entry::is_zero(&self.0)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.0.add_assign_ref(&other.0);
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        self.0.add_product(&a.0, &b.0);
    }
}

/// Traces against the published sequence and the partition identities.
pub fn trace_suite(counter: &Counter, b_max: usize) -> Result<Report> {
    let mut report = Report::new();
    for b in 0..=b_max {
        if let Some(&t) = TRACES.get(b) {
            report.push(Check::compare(
                "trace equals published sequence",
                &[("b", b.to_string())],
                &BigInt::from(t),
                &counter.trace_power(b, Capacity::Unbounded, 1),
            ));
        }
        report.extend(trace_identities(counter, b)?);
    }
    Ok(report)
}

/// Brute-force walks, siteswaps and rotation classes for every `b <= b_max`
/// and `n <= n_max`.
pub fn oracle_suite(counter: &Counter, b_max: usize, n_max: usize, guard: Guard) -> Result<Report> {
    let mut report = Report::new();
    for b in 0..=b_max {
        for n in 1..=n_max {
            report.extend(verify_counts(counter, b, n, guard)?);
        }
    }
    Ok(report)
}

/// Characteristic polynomial factorizations for `b = 0..=b_max`.
pub fn charpoly_suite(solver: &mut FactorSolver, b_max: usize) -> Result<Report> {
    let mut report = Report::new();
    let f: Vec<Polynomial> = solver.table().full_factors.clone();
    let products = [
        (2, f[2].clone()),
        (3, &f[0] * &f[3]),
        (4, &(&f[0].pow(2) * &f[1]) * &f[4]),
    ];
    for (b, expected) in products {
        if b <= b_max {
            let (_, p) = solver.char_poly(b)?;
            report.push(Check::compare(
                "P_b equals printed factorization",
                &[("b", b.to_string())],
                &expected.to_string(),
                &p.to_string(),
            ));
        }
    }
    for b in 0..=b_max {
        let r = solver.report(b)?;
        report.extend(r.checks);
    }
    Ok(report)
}

pub fn conjecture_suite(b_max: usize) -> Report {
    conjecture_check(b_max)
}

/// Capacity 1 against the classical single-throw count.
pub fn unary_suite(counter: &Counter, b_max: usize, n_max: usize) -> Result<Report> {
    let mut report = Report::new();
    for b in 0..=b_max {
        for n in 1..=n_max {
            report.push(Check::compare(
                "capacity-1 count equals classical formula",
                &[("b", b.to_string()), ("n", n.to_string())],
                &unary_pattern_count(b, n)?,
                &counter.jp(b, n, Capacity::Finite(1))?,
            ));
        }
    }
    Ok(report)
}

/// Exact divisibility over the table grids, the q = 1 specialisation and
/// the unused-ball decomposition of traces.
pub fn consistency_suite(counter: &Counter) -> Result<Report> {
    let mut report = Report::new();
    let mut capacities = vec![Capacity::Finite(1)];
    capacities.extend(published_capacities());
    for cap in capacities {
        for b in 0..=*TABLE_BALLS.end() {
            for n in TABLE_PERIODS {
                let params = [
                    ("b", b.to_string()),
                    ("n", n.to_string()),
                    ("kappa", cap.to_string()),
                ];
                report.push(Check::compare(
                    "n * jp equals ms",
                    &params,
                    &counter.ms(b, n, cap)?,
                    &(counter.jp(b, n, cap)? * BigInt::from(n)),
                ));
            }
        }
    }
    let one = BigInt::from(1);
    for b in 0..=4 {
        for n in 1..=5 {
            let params = [("b", b.to_string()), ("n", n.to_string())];
            let inf = Capacity::Unbounded;
            report.push(Check::compare(
                "ss_q(1) equals ss",
                &params,
                &counter.ss(b, n, inf)?,
                &counter.ss_q(b, n, inf)?.eval(&one),
            ));
            report.push(Check::compare(
                "jp_q(1) equals jp",
                &params,
                &counter.jp(b, n, inf)?,
                &counter.jp_q(b, n, inf)?.eval(&one),
            ));
        }
    }
    for b in 0..=4 {
        for n in 1..=6 {
            report.push(walk_decomposition(counter, b, n, Capacity::Unbounded)?);
        }
    }
    Ok(report)
}
