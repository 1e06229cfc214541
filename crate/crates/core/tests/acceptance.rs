//! The ten acceptance criteria, each checked exactly and within its time
//! budget. Prints one PASS/FAIL line per criterion and exits nonzero if any
//! fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use multiplex_juggling::combinatorics::Capacity;
use multiplex_juggling::counting::Counter;
use multiplex_juggling::error::Result;
use multiplex_juggling::oracle::Guard;
use multiplex_juggling::poly::Polynomial;
use multiplex_juggling::report::{Check, Report};
use multiplex_juggling::structure::FactorSolver;
use multiplex_juggling::suites;
use num_bigint::BigInt;

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> Result<Report>,
}

fn spot(
    report: &mut Report,
    counter: &Counter,
    b: usize,
    n: usize,
    cap: Capacity,
    expected: u64,
) -> Result<()> {
    report.push(Check::compare(
        "spot value",
        &[
            ("b", b.to_string()),
            ("n", n.to_string()),
            ("kappa", cap.to_string()),
        ],
        &BigInt::from(expected),
        &counter.jp(b, n, cap)?,
    ));
    Ok(())
}

fn unbounded_table() -> Result<Report> {
    let counter = Counter::new();
    let mut report = suites::published_tables(&counter, Capacity::Unbounded)?;
    spot(&mut report, &counter, 3, 7, Capacity::Unbounded, 45142)?;
    spot(
        &mut report,
        &counter,
        4,
        12,
        Capacity::Unbounded,
        72305691686,
    )?;
    spot(
        &mut report,
        &counter,
        5,
        15,
        Capacity::Unbounded,
        42542385162393167,
    )?;
    Ok(report)
}

fn capped_tables() -> Result<Report> {
    let counter = Counter::new();
    let mut report = suites::published_tables(&counter, Capacity::Finite(2))?;
    report.extend(suites::published_tables(&counter, Capacity::Finite(3))?);
    spot(&mut report, &counter, 4, 9, Capacity::Finite(2), 21219536)?;
    spot(
        &mut report,
        &counter,
        5,
        15,
        Capacity::Finite(3),
        14873888879020290,
    )?;
    Ok(report)
}

fn card_census() -> Result<Report> {
    Ok(suites::card_census(8, 20))
}

fn golden_matrices() -> Result<Report> {
    suites::golden_matrices()
}

fn trace_identities() -> Result<Report> {
    suites::trace_suite(&Counter::new(), 15)
}

fn oracle_equivalence() -> Result<Report> {
    suites::oracle_suite(&Counter::new(), 3, 4, Guard::default())
}

fn characteristic_polynomials() -> Result<Report> {
    let mut solver = FactorSolver::default();
    let mut report = suites::charpoly_suite(&mut solver, 7)?;
    let f5 = solver.factor(5)?;
    let expect = |name: &str, want: i64, got: BigInt| {
        Check::compare(name, &[("i", "5".into())], &BigInt::from(want), &got)
    };
    report.push(expect(
        "degree of f_5",
        7,
        BigInt::from(f5.degree().unwrap_or(0)),
    ));
    report.push(expect(
        "second coefficient of f_5",
        -36,
        f5.second_coefficient(),
    ));
    report.push(expect("constant term of f_5", -7840, f5.constant_term()));
    Ok(report)
}

fn conjecture() -> Result<Report> {
    Ok(suites::conjecture_suite(25))
}

fn unary() -> Result<Report> {
    suites::unary_suite(&Counter::new(), 5, 12)
}

fn consistency() -> Result<Report> {
    let mut report = suites::consistency_suite(&Counter::new())?;
    let three = Polynomial::from_i64(&[1, 1, 1]);
    report.push(Check::compare(
        "jp_q(3, 1)",
        &[],
        &three,
        &Counter::new().jp_q(3, 1, Capacity::Unbounded)?,
    ));
    Ok(report)
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        id: 1,
        title: "unbounded pattern table, 60 cells",
        budget: Some(Duration::from_secs(10)),
        run: unbounded_table,
    },
    Criterion {
        id: 2,
        title: "capacity 2 and 3 tables, 120 cells",
        budget: Some(Duration::from_secs(10)),
        run: capped_tables,
    },
    Criterion {
        id: 3,
        title: "card census and recurrence",
        budget: Some(Duration::from_secs(5)),
        run: card_census,
    },
    Criterion {
        id: 4,
        title: "golden matrices",
        budget: None,
        run: golden_matrices,
    },
    Criterion {
        id: 5,
        title: "trace identities for b <= 15",
        budget: Some(Duration::from_secs(30)),
        run: trace_identities,
    },
    Criterion {
        id: 6,
        title: "brute-force oracle for b <= 3, n <= 4",
        budget: Some(Duration::from_secs(120)),
        run: oracle_equivalence,
    },
    Criterion {
        id: 7,
        title: "characteristic polynomial factors for b <= 7",
        budget: Some(Duration::from_secs(60)),
        run: characteristic_polynomials,
    },
    Criterion {
        id: 8,
        title: "capacity-2 series through b = 25",
        budget: Some(Duration::from_secs(5)),
        run: conjecture,
    },
    Criterion {
        id: 9,
        title: "capacity 1 against the classical count",
        budget: None,
        run: unary,
    },
    Criterion {
        id: 10,
        title: "divisibility, q = 1 and decomposition",
        budget: None,
        run: consistency,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over_budget = c.budget.is_some_and(|b| elapsed > b);
        let (pass, detail) = match &outcome {
            Err(e) => (false, format!("error: {e}")),
            Ok(r) => {
                let bad = r.failures().count();
                let mut detail = format!("{} checks, {bad} failed", r.checks.len());
                if let Some(first) = r.failures().next() {
                    detail.push_str(&format!(
                        "; first: {} {:?} expected {} got {}",
                        first.name, first.parameters, first.expected, first.actual
                    ));
                }
                (bad == 0 && !r.checks.is_empty(), detail)
            }
        };
        let budget = match c.budget {
            Some(b) if over_budget => format!(", over budget of {}s", b.as_secs()),
            Some(b) => format!(", budget {}s", b.as_secs()),
            None => String::new(),
        };
        let pass = pass && !over_budget;
        if !pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {} ({detail}; {:.2}s{budget})",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
