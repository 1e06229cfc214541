use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use multiplex_juggling::cards::{card_count, filtered_cards_with, CardFilter, CardRecord};
use multiplex_juggling::combinatorics::Capacity;
use multiplex_juggling::counting::{CountQuery, CountResult, Counter, TableRecord, TraceCache};
use multiplex_juggling::error::Error;
use multiplex_juggling::matrices::{build_transfer, TransferMatrix, Variant};
use multiplex_juggling::oracle::Guard;
use multiplex_juggling::par::Exec;
use multiplex_juggling::reference::published_capacities;
use multiplex_juggling::report::{Check, Report};
use multiplex_juggling::structure::{
    capped_card_total, conjecture_check, submatrix_containment_search_with, ContainmentReport,
    FactorReport, FactorSolver,
};
use multiplex_juggling::suites;
use num_bigint::BigUint;
use serde::Serialize;

use crate::args::{Command, Format, Span, Suite};
use crate::output::{csv_string, emit_report, grid, Sink};
use crate::svg::render_cards;

pub const MATRIX_MAX_BALLS: usize = 13;
pub const CHARPOLY_MAX_BALLS: usize = 8;
const CACHE_FILE: &str = "traces.json";

/// At least one check failed; maps to exit status 3.
#[derive(Debug)]
pub struct VerificationFailed(pub usize);

impl std::fmt::Display for VerificationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} check(s) failed", self.0)
    }
}

impl std::error::Error for VerificationFailed {}

pub struct Session {
    pub sink: Sink,
    pub exec: Exec,
    pub force: bool,
    pub cache_dir: Option<std::path::PathBuf>,
}

fn guard(force: bool, what: &'static str, limit: usize, requested: usize) -> Result<()> {
    if !force && requested > limit {
        return Err(Error::Infeasible {
            what,
            limit,
            requested,
        }
        .into());
    }
    Ok(())
}

fn verdict(report: &Report) -> Result<()> {
    match report.failures().count() {
        0 => Ok(()),
        n => Err(VerificationFailed(n).into()),
    }
}

pub fn run(session: &Session, command: Command) -> Result<()> {
    match command {
        Command::Cards {
            balls,
            capacity,
            distinct,
            svg,
        } => cards(session, balls, capacity, distinct, svg.as_deref()),
        Command::Matrix { balls, variant } => matrix(session, balls, variant),
        Command::Count {
            balls,
            period,
            capacity,
            q,
        } => count(session, balls, period, capacity, q),
        Command::Table {
            balls,
            period,
            capacity,
        } => table(session, balls, period, capacity),
        Command::Verify {
            suite,
            max_balls,
            max_period,
        } => verify(session, suite, max_balls, max_period),
        Command::Charpoly { balls } => charpoly(session, balls),
        Command::Conjecture { max_balls } => conjecture(session, max_balls),
        Command::Containment { balls } => containment(session, balls),
    }
}

#[derive(Serialize)]
struct CardList {
    b: usize,
    capacity: String,
    distinct_heights: bool,
    count: String,
    cards: Vec<CardRecord>,
}

fn join(parts: &[usize]) -> String {
    let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
    s.join(" ")
}

fn cards(
    session: &Session,
    b: usize,
    capacity: Capacity,
    distinct: bool,
    svg: Option<&Path>,
) -> Result<()> {
    guard(
        session.force,
        "card enumeration ball count",
        MATRIX_MAX_BALLS,
        b,
    )?;
    let filter = CardFilter {
        capacity,
        distinct_heights: distinct,
    };
    let cards = filtered_cards_with(b, filter, session.exec);
    let total = BigUint::from(cards.len());
    if !distinct {
        let expected = match capacity {
            Capacity::Unbounded => card_count(b),
            cap => capped_card_total(b, cap),
        };
        if expected != total {
            let mut r = Report::new();
            r.push(Check::compare(
                "enumerated cards equal closed-form count",
                &[("b", b.to_string()), ("kappa", capacity.to_string())],
                &expected,
                &total,
            ));
            emit_report(&session.sink, &r)?;
            return verdict(&r);
        }
    }
    if let Some(path) = svg {
        fs::write(path, render_cards(&cards))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let records: Vec<CardRecord> = cards.iter().map(|c| c.record()).collect();
    match session.sink.format {
        Format::Json => session.sink.emit_json(&CardList {
            b,
            capacity: capacity.to_string(),
            distinct_heights: distinct,
            count: total.to_string(),
            cards: records,
        }),
        Format::Csv => session.sink.emit(&csv_string(|w| {
            w.write_record(["left", "right", "indices", "crossings"])?;
            for r in &records {
                let indices = r.indices.as_deref().map_or("trivial".to_string(), join);
                w.write_record([
                    join(&r.left),
                    join(&r.right),
                    indices,
                    r.crossings.to_string(),
                ])?;
            }
            Ok(())
        })?),
        Format::Table => {
            let mut out = String::new();
            for c in &cards {
                let embedding = c
                    .indices()
                    .map_or("trivial".to_string(), |ix| format!("slots {ix:?}"));
                out.push_str(&format!(
                    "{} -> {}  {}  crossings {}\n",
                    c.left(),
                    c.right(),
                    embedding,
                    c.crossings()
                ));
            }
            out.push_str(&format!("count: {total}\n"));
            session.sink.emit(&out)
        }
    }
}

fn matrix(session: &Session, b: usize, variant: Variant) -> Result<()> {
    guard(session.force, "matrix ball count", MATRIX_MAX_BALLS, b)?;
    let m = build_transfer(b, variant);
    let (labels, cells): (Vec<String>, Vec<Vec<String>>) = match &m {
        TransferMatrix::Exact(m) => (
            m.labels().iter().map(ToString::to_string).collect(),
            m.rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        ),
        TransferMatrix::Poly(m) => (
            m.labels().iter().map(ToString::to_string).collect(),
            m.rows()
                .iter()
                .map(|r| r.iter().map(|p| p.display_in("q")).collect())
                .collect(),
        ),
    };
    match session.sink.format {
        Format::Json => session.sink.emit_json(&m.to_json(b, variant)),
        Format::Csv => session.sink.emit(&csv_string(|w| {
            let mut header = vec![String::new()];
            header.extend(labels.iter().cloned());
            w.write_record(&header)?;
            for (label, row) in labels.iter().zip(&cells) {
                let mut rec = vec![label.clone()];
                rec.extend(row.iter().cloned());
                w.write_record(&rec)?;
            }
            Ok(())
        })?),
        Format::Table => {
            let mut rows = vec![std::iter::once(String::new())
                .chain(labels.iter().cloned())
                .collect()];
            for (label, row) in labels.iter().zip(cells) {
                rows.push(std::iter::once(label.clone()).chain(row).collect());
            }
            session.sink.emit(&grid(&rows))
        }
    }
}

fn load_cache(counter: &Counter, dir: &Path) -> Result<()> {
    let path = dir.join(CACHE_FILE);
    if path.exists() {
        let raw =
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let cache: TraceCache =
            serde_json::from_str(&raw).with_context(|| format!("parsing {}", path.display()))?;
        counter.preload(&cache);
    }
    Ok(())
}

fn save_cache(counter: &Counter, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(CACHE_FILE);
    let json = serde_json::to_string(&counter.snapshot())?;
    fs::write(&path, json).with_context(|| format!("writing {}", path.display()))
}

/// Runs `f` with a counter seeded from, and saved back to, the cache dir.
fn with_counter<T>(session: &Session, f: impl FnOnce(&Counter) -> Result<T>) -> Result<T> {
    let counter = Counter::with_exec(session.exec);
    if let Some(dir) = &session.cache_dir {
        load_cache(&counter, dir)?;
    }
    let value = f(&counter)?;
    if let Some(dir) = &session.cache_dir {
        save_cache(&counter, dir)?;
    }
    Ok(value)
}

fn count(session: &Session, b: usize, n: usize, capacity: Capacity, q: bool) -> Result<()> {
    guard(session.force, "matrix ball count", MATRIX_MAX_BALLS, b)?;
    let query = CountQuery::new(b, n, capacity, q)?;
    let result: CountResult = with_counter(session, |c| Ok(c.count(&query)?))?;
    match session.sink.format {
        Format::Json => session.sink.emit_json(&result),
        Format::Csv => session.sink.emit(&csv_string(|w| {
            w.write_record(["b", "n", "kappa", "q", "ss", "ms", "jp"])?;
            w.write_record([
                b.to_string(),
                n.to_string(),
                capacity.to_string(),
                q.to_string(),
                result.ss.to_string(),
                result.ms.to_string(),
                result.jp.to_string(),
            ])?;
            Ok(())
        })?),
        Format::Table => session.sink.emit(&format!(
            "b={b} n={n} kappa={capacity}\nss: {}\nms: {}\njp: {}\n",
            result.ss, result.ms, result.jp
        )),
    }
}

fn table(session: &Session, balls: Span, periods: Span, capacity: Capacity) -> Result<()> {
    guard(
        session.force,
        "matrix ball count",
        MATRIX_MAX_BALLS,
        *balls.0.end(),
    )?;
    if *periods.0.start() == 0 {
        return Err(Error::OutOfRange {
            name: "period",
            min: 1,
            got: 0,
        }
        .into());
    }
    let records: Vec<TableRecord> = with_counter(session, |c| {
        Ok(c.table(balls.0.clone(), periods.0.clone(), capacity)?)
    })?;
    match session.sink.format {
        Format::Json => session.sink.emit_json(&records),
        Format::Csv => session.sink.emit(&csv_string(|w| {
            for r in &records {
                w.serialize(r)?;
            }
            if records.is_empty() {
                w.write_record(["b", "n", "kappa", "jp"])?;
            }
            Ok(())
        })?),
        Format::Table => {
            let mut rows = vec![std::iter::once("n".to_string())
                .chain(balls.0.clone().map(|b| format!("b={b}")))
                .collect::<Vec<_>>()];
            for n in periods.0.clone() {
                let mut row = vec![n.to_string()];
                row.extend(
                    records
                        .iter()
                        .filter(|r| r.n == n)
                        .map(|r| r.jp.to_string()),
                );
                rows.push(row);
            }
            session
                .sink
                .emit(&format!("kappa={capacity}\n{}", grid(&rows)))
        }
    }
}

fn verify(session: &Session, suite: Suite, max_balls: usize, max_period: usize) -> Result<()> {
    let default = Guard::default();
    guard(
        session.force,
        "oracle ball count",
        default.max_balls,
        max_balls,
    )?;
    guard(
        session.force,
        "oracle period",
        default.max_period,
        max_period,
    )?;
    let oracle_guard = if session.force {
        Guard::UNLIMITED
    } else {
        default
    };
    let counter = Counter::with_exec(session.exec);
    let wants = |s: Suite| suite == Suite::All || suite == s;
    let mut report = Report::new();
    if wants(Suite::Tables) {
        for cap in published_capacities() {
            report.extend(suites::published_tables(&counter, cap)?);
        }
    }
    if wants(Suite::Cards) {
        report.extend(suites::card_census(8, 20));
    }
    if wants(Suite::Matrices) {
        report.extend(suites::golden_matrices()?);
    }
    if wants(Suite::Traces) {
        report.extend(suites::trace_suite(&counter, 15)?);
    }
    if wants(Suite::Oracle) {
        report.extend(suites::oracle_suite(
            &counter,
            max_balls,
            max_period,
            oracle_guard,
        )?);
    }
    if wants(Suite::Charpoly) {
        let mut solver = FactorSolver::new(session.exec);
        report.extend(suites::charpoly_suite(&mut solver, 7)?);
    }
    if wants(Suite::Conjecture) {
        report.extend(suites::conjecture_suite(25));
    }
    if wants(Suite::Unary) {
        report.extend(suites::unary_suite(&counter, 5, 12)?);
    }
    if wants(Suite::Consistency) {
        report.extend(suites::consistency_suite(&counter)?);
    }
    emit_report(&session.sink, &report)?;
    verdict(&report)
}

fn factor_text(r: &FactorReport) -> String {
    let mut out = format!("P_{} has degree {}\n", r.b, r.char_poly_degree);
    if !r.divided.is_empty() {
        let parts: Vec<String> = r
            .divided
            .iter()
            .map(|f| match f.exponent {
                1 => format!("f_{}", f.index),
                e => format!("f_{}^{e}", f.index),
            })
            .collect();
        out.push_str(&format!("divided by {}\n", parts.join(" · ")));
    }
    if let Some(res) = &r.residual {
        out.push_str(&format!("f_{} = {res}\n", r.b));
    }
    out.push_str(&crate::output::report_text(&r.checks));
    out
}

fn charpoly(session: &Session, b: usize) -> Result<()> {
    guard(
        session.force,
        "characteristic polynomial ball count",
        CHARPOLY_MAX_BALLS,
        b,
    )?;
    let mut solver = FactorSolver::new(session.exec);
    let report = solver.report(b)?;
    match session.sink.format {
        Format::Json => session.sink.emit_json(&report)?,
        Format::Csv => session
            .sink
            .emit(&crate::output::report_csv(&report.checks)?)?,
        Format::Table => session.sink.emit(&factor_text(&report))?,
    }
    verdict(&report.checks)
}

fn conjecture(session: &Session, b_max: usize) -> Result<()> {
    let report = conjecture_check(b_max);
    emit_report(&session.sink, &report)?;
    verdict(&report)
}

fn containment(session: &Session, b: usize) -> Result<()> {
    let r: ContainmentReport = submatrix_containment_search_with(b, session.exec)?;
    match session.sink.format {
        Format::Json => session.sink.emit_json(&r),
        Format::Csv => session.sink.emit(&csv_string(|w| {
            w.write_record([
                "b",
                "witnesses",
                "explored",
                "witness",
                "triangular_witness",
            ])?;
            let show = |w: &Option<Vec<Vec<usize>>>| {
                w.as_ref().map_or(String::new(), |v| {
                    v.iter().map(|p| join(p)).collect::<Vec<_>>().join(";")
                })
            };
            w.write_record([
                r.b.to_string(),
                r.witnesses.to_string(),
                r.explored.to_string(),
                show(&r.witness),
                show(&r.triangular_witness),
            ])?;
            Ok(())
        })?),
        Format::Table => {
            let show = |w: &Option<Vec<Vec<usize>>>| match w {
                None => "none".to_string(),
                Some(v) => v
                    .iter()
                    .map(|p| format!("{p:?}"))
                    .collect::<Vec<_>>()
                    .join(" "),
            };
            session.sink.emit(&format!(
                "b={}\nwitnesses: {}\nexplored: {}\nwitness: {}\ntriangular witness: {}\n",
                r.b,
                r.witnesses,
                r.explored,
                show(&r.witness),
                show(&r.triangular_witness)
            ))
        }
    }
}
