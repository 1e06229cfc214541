use multiplex_juggling::cards::{all_cards, CardRecord};
use multiplex_juggling::combinatorics::Capacity;
use multiplex_juggling::counting::{CountQuery, CountResult, Counter};
use multiplex_juggling::error::Error;
use multiplex_juggling::matrices::{build_transfer, MatrixJson, Variant};
use multiplex_juggling::oracle::{enumerate_patterns, enumerate_siteswaps};
use multiplex_juggling::par::Exec;
use multiplex_juggling::structure::{
    submatrix_containment_search_with, FactorReport, FactorSolver,
};
use num_bigint::BigInt;

#[test]
fn card_records_round_trip() {
    for b in 0..=4 {
        for card in all_cards(b) {
            let json = serde_json::to_string(&card.record()).unwrap();
            let back: CardRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_card().unwrap(), card);
        }
    }
}

#[test]
fn tampered_card_record_is_rejected() {
    let mut rec = all_cards(3)
        .into_iter()
        .find(|c| c.crossings() > 0)
        .unwrap()
        .record();
    rec.crossings += 1;
    assert!(matches!(rec.to_card(), Err(Error::InvalidCard(_))));
}

#[test]
fn matrix_json_round_trips() {
    for variant in [
        Variant::Plain,
        Variant::Capped(2),
        Variant::DistinctHeights,
        Variant::QWeighted,
    ] {
        let json = build_transfer(3, variant).to_json(3, variant);
        let text = serde_json::to_string(&json).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, json);
        assert_eq!(back.variant.parse::<Variant>().unwrap(), variant);
    }
}

#[test]
fn count_result_round_trips() {
    let counter = Counter::new();
    for q in [false, true] {
        let query = CountQuery::new(3, 4, Capacity::Finite(2), q).unwrap();
        let result = counter.count(&query).unwrap();
        let text = serde_json::to_string(&result).unwrap();
        let back: CountResult = serde_json::from_str(&text).unwrap();
        assert_eq!(back, result);
    }
}

#[test]
fn factor_report_round_trips() {
    let report = FactorSolver::default().report(5).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: FactorReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert!(report.checks.all_passed());
}

#[test]
fn oracle_sets_match_counts() {
    let counter = Counter::new();
    for (b, n) in [(2, 3), (3, 3), (2, 4)] {
        let ss = enumerate_siteswaps(b, n).unwrap().len();
        let jp = enumerate_patterns(b, n).unwrap().len();
        assert_eq!(
            BigInt::from(ss),
            counter.ss(b, n, Capacity::Unbounded).unwrap()
        );
        assert_eq!(
            BigInt::from(jp),
            counter.jp(b, n, Capacity::Unbounded).unwrap()
        );
    }
}

#[test]
fn execution_modes_agree() {
    let seq = Counter::with_exec(Exec::Sequential);
    let par = Counter::with_exec(Exec::Parallel);
    for cap in [Capacity::Unbounded, Capacity::Finite(2)] {
        assert_eq!(
            seq.table(0..=5, 1..=8, cap).unwrap(),
            par.table(0..=5, 1..=8, cap).unwrap()
        );
    }
    let a = FactorSolver::new(Exec::Sequential).char_poly(6).unwrap().1;
    let b = FactorSolver::new(Exec::Parallel).char_poly(6).unwrap().1;
    assert_eq!(a, b);
    assert_eq!(
        submatrix_containment_search_with(4, Exec::Sequential).unwrap(),
        submatrix_containment_search_with(4, Exec::Parallel).unwrap()
    );
}

#[test]
fn oversized_requests_are_infeasible() {
    assert!(matches!(
        FactorSolver::default().char_poly(11),
        Err(Error::Infeasible { .. })
    ));
    assert!(matches!(
        submatrix_containment_search_with(6, Exec::Sequential),
        Err(Error::Infeasible { .. })
    ));
    assert!(matches!(
        enumerate_siteswaps(5, 2),
        Err(Error::Infeasible { .. })
    ));
}

#[test]
fn cache_snapshot_reproduces_counts() {
    let warm = Counter::new();
    let table = warm.table(2..=4, 1..=6, Capacity::Finite(2)).unwrap();
    let cold = Counter::new();
    cold.preload(&warm.snapshot());
    assert_eq!(
        cold.table(2..=4, 1..=6, Capacity::Finite(2)).unwrap(),
        table
    );
}
