//! Siteswap, minimal-period and pattern counts from traces of transfer
//! matrix powers.
//!
//! `ss(b, n)` removes from `trace(A_b^n)` the closed walks that leave some
//! balls unused, which are counted by the traces of smaller matrices. Möbius
//! inversion over divisors of `n` gives the minimal-period count `ms`, and
//! dividing by `n` collapses rotations into patterns `jp`. Everything is
//! exact; a division that leaves a remainder is reported as an error.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cards::CardFilter;
use crate::combinatorics::{
    capped_composition_count, divisors, mobius, partition_count, unordered_partitions, Capacity,
};
use crate::error::{Error, Result};
use crate::matrices::{
    diagonal_trace, q_transfer_matrix, trace_power, transfer_matrix_with, ExactMatrix, PolyMatrix,
};
use crate::par::{self, Exec};
use crate::poly::Polynomial;
use crate::report::{Check, Report};

/// One counting request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountQuery {
    pub balls: usize,
    pub period: usize,
    #[serde(with = "capacity_string")]
    pub capacity: Capacity,
    pub q_refined: bool,
}

impl CountQuery {
    pub fn new(balls: usize, period: usize, capacity: Capacity, q_refined: bool) -> Result<Self> {
        check_period(period)?;
        if capacity == Capacity::Finite(0) {
            return Err(Error::OutOfRange {
                name: "capacity",
                min: 1,
                got: 0,
            });
        }
        Ok(CountQuery {
            balls,
            period,
            capacity,
            q_refined,
        })
    }
}

/// An integer count, or its refinement by crossings as a polynomial in `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CountValue {
    Integer(#[serde(with = "crate::decimal::bigint")] BigInt),
    Polynomial(Polynomial),
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountValue::Integer(v) => write!(f, "{v}"),
            CountValue::Polynomial(p) => write!(f, "{}", p.display_in("q")),
        }
    }
}

/// Where a count came from: the matrices whose power traces entered it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// `(balls, dimension)` of every transfer matrix consulted.
    pub matrices: Vec<(usize, usize)>,
    #[serde(with = "capacity_string")]
    pub capacity: Capacity,
    pub q_weighted: bool,
    /// Exponents whose traces were taken.
    pub powers: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountResult {
    pub query: CountQuery,
    pub ss: CountValue,
    pub ms: CountValue,
    pub jp: CountValue,
    pub provenance: Provenance,
}

/// One cell of a pattern table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub b: usize,
    pub n: usize,
    #[serde(with = "capacity_string")]
    pub kappa: Capacity,
    #[serde(with = "crate::decimal::bigint")]
    pub jp: BigInt,
}

mod capacity_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::combinatorics::Capacity;

    pub fn serialize<S: Serializer>(c: &Capacity, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(c)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Capacity, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

fn check_period(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "period",
            min: 1,
            got: 0,
        });
    }
    Ok(())
}

/// Capacities of at least `b` all describe the unrestricted matrix.
fn normalize(b: usize, capacity: Capacity) -> Capacity {
    if capacity.is_unrestrictive_for(b) {
        Capacity::Unbounded
    } else {
        capacity
    }
}

/// Balls counts whose matrices enter `ss(b, ·, capacity)` with a minus sign.
fn subtracted_range(b: usize, capacity: Capacity) -> std::ops::Range<usize> {
    let lower = match capacity {
        Capacity::Finite(k) => b.saturating_sub(k),
        Capacity::Unbounded => 0,
    };
    lower..b
}

type TraceKey = (usize, Capacity, usize);

/// Serializable snapshot of a [`Counter`]'s trace memo.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCache {
    pub entries: Vec<CachedTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedTrace {
    pub balls: usize,
    #[serde(with = "capacity_string")]
    pub capacity: Capacity,
    pub power: usize,
    #[serde(with = "crate::decimal::bigint")]
    pub trace: BigInt,
}

/// Memoizing evaluator. Matrices and power traces are built once per
/// `(balls, capacity)` and shared between threads.
#[derive(Debug, Default)]
pub struct Counter {
    exec: Exec,
    traces: Mutex<HashMap<TraceKey, BigInt>>,
    q_traces: Mutex<HashMap<TraceKey, Polynomial>>,
    matrices: Mutex<HashMap<(usize, Capacity), Arc<ExactMatrix>>>,
    q_matrices: Mutex<HashMap<(usize, Capacity), Arc<PolyMatrix>>>,
}

impl Counter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_exec(exec: Exec) -> Self {
        Counter {
            exec,
            ..Self::default()
        }
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn matrix(&self, b: usize, capacity: Capacity) -> Arc<ExactMatrix> {
        let key = (b, normalize(b, capacity));
        if let Some(m) = self.matrices.lock().expect("matrix cache").get(&key) {
            return Arc::clone(m);
        }
        let m = Arc::new(transfer_matrix_with(
            b,
            CardFilter::capped(key.1),
            self.exec,
        ));
        Arc::clone(
            self.matrices
                .lock()
                .expect("matrix cache")
                .entry(key)
                .or_insert(m),
        )
    }

    pub fn q_matrix(&self, b: usize, capacity: Capacity) -> Arc<PolyMatrix> {
        let key = (b, normalize(b, capacity));
        if let Some(m) = self.q_matrices.lock().expect("matrix cache").get(&key) {
            return Arc::clone(m);
        }
        let m = Arc::new(q_transfer_matrix(b, key.1));
        Arc::clone(
            self.q_matrices
                .lock()
                .expect("matrix cache")
                .entry(key)
                .or_insert(m),
        )
    }

    /// `trace(A_{b,capacity}^n)`; `n = 1` skips building the matrix.
    pub fn trace_power(&self, b: usize, capacity: Capacity, n: usize) -> BigInt {
        let key = (b, normalize(b, capacity), n);
        if let Some(t) = self.traces.lock().expect("trace cache").get(&key) {
            return t.clone();
        }
        let t = match n {
            0 => BigInt::from(capped_composition_count(b, key.1)),
            1 => BigInt::from(diagonal_trace(b, key.1)),
            _ => trace_power(&self.matrix(b, key.1), n as u64, self.exec),
        };
        self.traces
            .lock()
            .expect("trace cache")
            .insert(key, t.clone());
        t
    }

    /// `trace(A_{b,capacity}(q)^n)`.
    pub fn q_trace_power(&self, b: usize, capacity: Capacity, n: usize) -> Polynomial {
        let key = (b, normalize(b, capacity), n);
        if let Some(t) = self.q_traces.lock().expect("trace cache").get(&key) {
            return t.clone();
        }
        let t = trace_power(&self.q_matrix(b, key.1), n as u64, self.exec);
        self.q_traces
            .lock()
            .expect("trace cache")
            .insert(key, t.clone());
        t
    }

    /// Period-`n` siteswaps using exactly `b` balls.
    pub fn ss(&self, b: usize, n: usize, capacity: Capacity) -> Result<BigInt> {
        check_period(n)?;
        let mut total = self.trace_power(b, capacity, n);
        for i in subtracted_range(b, capacity) {
            total -= self.trace_power(i, capacity, n);
        }
        Ok(total)
    }

    /// Siteswaps of minimal period exactly `n`.
    pub fn ms(&self, b: usize, n: usize, capacity: Capacity) -> Result<BigInt> {
        check_period(n)?;
        let mut total = BigInt::zero();
        for d in divisors(n) {
            let mu = mobius(n / d)?;
            if mu != 0 {
                total += BigInt::from(mu) * self.ss(b, d, capacity)?;
            }
        }
        Ok(total)
    }

    /// Juggling patterns of minimal period `n`: siteswaps up to rotation.
    pub fn jp(&self, b: usize, n: usize, capacity: Capacity) -> Result<BigInt> {
        let ms = self.ms(b, n, capacity)?;
        let (quot, rem) = ms.div_rem(&BigInt::from(n));
        if !rem.is_zero() {
            return Err(Error::Inexact {
                context: format!("jp({b}, {n}, {capacity}): {ms} is not divisible by {n}"),
            });
        }
        Ok(quot)
    }

    pub fn ss_q(&self, b: usize, n: usize, capacity: Capacity) -> Result<Polynomial> {
        check_period(n)?;
        let mut total = self.q_trace_power(b, capacity, n);
        for i in subtracted_range(b, capacity) {
            total -= &self.q_trace_power(i, capacity, n);
        }
        Ok(total)
    }

    pub fn ms_q(&self, b: usize, n: usize, capacity: Capacity) -> Result<Polynomial> {
        check_period(n)?;
        let mut total = Polynomial::zero();
        for d in divisors(n) {
            let mu = mobius(n / d)?;
            if mu != 0 {
                // a period-d walk repeated n/d times has n/d times the crossings
                let repeated = self.ss_q(b, d, capacity)?.inflate(n / d);
                total += &repeated.scale(&BigInt::from(mu));
            }
        }
        Ok(total)
    }

    /// Pattern counts refined by the total crossings over one period; the division by `n` is
    /// exact coefficient by coefficient.
    pub fn jp_q(&self, b: usize, n: usize, capacity: Capacity) -> Result<Polynomial> {
        self.ms_q(b, n, capacity)?
            .exact_div_scalar(&BigInt::from(n))
            .map_err(|_| Error::Inexact {
                context: format!("jp_q({b}, {n}, {capacity}): coefficients not divisible by {n}"),
            })
    }

    pub fn count(&self, query: &CountQuery) -> Result<CountResult> {
        let CountQuery {
            balls: b,
            period: n,
            capacity,
            q_refined,
        } = *query;
        let (ss, ms, jp) = if q_refined {
            let ms = self.ms_q(b, n, capacity)?;
            let jp = self.jp_q(b, n, capacity)?;
            (
                CountValue::Polynomial(self.ss_q(b, n, capacity)?),
                CountValue::Polynomial(ms),
                CountValue::Polynomial(jp),
            )
        } else {
            (
                CountValue::Integer(self.ss(b, n, capacity)?),
                CountValue::Integer(self.ms(b, n, capacity)?),
                CountValue::Integer(self.jp(b, n, capacity)?),
            )
        };
        let mut balls: Vec<usize> = subtracted_range(b, capacity).collect();
        balls.push(b);
        let matrices = balls
            .into_iter()
            .map(|i| {
                let dim = capped_composition_count(i, normalize(i, capacity));
                (i, usize::try_from(dim).unwrap_or(usize::MAX))
            })
            .collect();
        Ok(CountResult {
            query: *query,
            ss,
            ms,
            jp,
            provenance: Provenance {
                matrices,
                capacity,
                q_weighted: q_refined,
                powers: divisors(n),
            },
        })
    }

    /// `jp` over a grid, rows ordered by balls then period.
    pub fn table(
        &self,
        balls: RangeInclusive<usize>,
        periods: RangeInclusive<usize>,
        capacity: Capacity,
    ) -> Result<Vec<TableRecord>> {
        let cells: Vec<(usize, usize)> = balls
            .flat_map(|b| periods.clone().map(move |n| (b, n)))
            .collect();
        let values = par::map_slice(self.exec, &cells, |&(b, n)| self.jp(b, n, capacity));
        cells
            .into_iter()
            .zip(values)
            .map(|((b, n), jp)| {
                Ok(TableRecord {
                    b,
                    n,
                    kappa: capacity,
                    jp: jp?,
                })
            })
            .collect()
    }

    pub fn snapshot(&self) -> TraceCache {
        let mut entries: Vec<CachedTrace> = self
            .traces
            .lock()
            .expect("trace cache")
            .iter()
            .map(|(&(balls, capacity, power), trace)| CachedTrace {
                balls,
                capacity,
                power,
                trace: trace.clone(),
            })
            .collect();
        entries.sort_by_key(|a| (a.balls, a.capacity, a.power));
        TraceCache { entries }
    }

    pub fn preload(&self, cache: &TraceCache) {
        let mut traces = self.traces.lock().expect("trace cache");
        for e in &cache.entries {
            traces.insert(
                (e.balls, normalize(e.balls, e.capacity), e.power),
                e.trace.clone(),
            );
        }
    }
}

pub fn ss(b: usize, n: usize, capacity: Capacity) -> Result<BigInt> {
    Counter::new().ss(b, n, capacity)
}

pub fn ms(b: usize, n: usize, capacity: Capacity) -> Result<BigInt> {
    Counter::new().ms(b, n, capacity)
}

pub fn jp(b: usize, n: usize, capacity: Capacity) -> Result<BigInt> {
    Counter::new().jp(b, n, capacity)
}

pub fn ss_q(b: usize, n: usize, capacity: Capacity) -> Result<Polynomial> {
    Counter::new().ss_q(b, n, capacity)
}

pub fn jp_q(b: usize, n: usize, capacity: Capacity) -> Result<Polynomial> {
    Counter::new().jp_q(b, n, capacity)
}

pub fn table(
    balls: RangeInclusive<usize>,
    periods: RangeInclusive<usize>,
    capacity: Capacity,
) -> Result<Vec<TableRecord>> {
    Counter::new().table(balls, periods, capacity)
}

/// `p(b) + sum_{i<b} 2^(b-i-1) p(i)`.
pub fn trace_from_partition_counts(b: usize) -> BigInt {
    let mut total = BigInt::from(partition_count(b));
    for i in 0..b {
        total += BigInt::from(partition_count(i)) << (b - i - 1);
    }
    total
}

/// `sum over partitions q of b of 2^(number of 1s in q)`.
pub fn trace_from_ones(b: usize) -> BigInt {
    unordered_partitions(b)
        .iter()
        .map(|q| BigInt::one() << q.ones_count())
        .sum()
}

/// The closed forms for `trace(A_b)` and `jp(b, 1) = p(b)`, checked against
/// the diagonal of the transfer matrix (and the built matrix for `b <= 10`).
pub fn trace_identities(counter: &Counter, b: usize) -> Result<Report> {
    let params = [("b", b.to_string())];
    let trace = counter.trace_power(b, Capacity::Unbounded, 1);
    let mut report = Report::new();
    if b <= 10 {
        let built = counter.matrix(b, Capacity::Unbounded).trace();
        report.push(Check::compare(
            "diagonal count equals matrix trace",
            &params,
            &built,
            &trace,
        ));
    }
    report.push(Check::compare(
        "trace equals p(b) + sum 2^(b-i-1) p(i)",
        &params,
        &trace_from_partition_counts(b),
        &trace,
    ));
    report.push(Check::compare(
        "trace equals sum over partitions of 2^(ones)",
        &params,
        &trace_from_ones(b),
        &trace,
    ));
    report.push(Check::compare(
        "jp(b, 1) equals p(b)",
        &params,
        &BigInt::from(partition_count(b)),
        &counter.jp(b, 1, Capacity::Unbounded)?,
    ));
    Ok(report)
}

/// Walks that leave balls unused split by how many balls they use:
/// `trace(A_{b,k}^n) = ss(b, n) + sum_{i<b} r_{b-i,k} ss(i, n)`, where
/// `r_{m,k}` counts capped compositions of `m`.
pub fn walk_decomposition(
    counter: &Counter,
    b: usize,
    n: usize,
    capacity: Capacity,
) -> Result<Check> {
    let mut rhs = counter.ss(b, n, capacity)?;
    for i in 0..b {
        let weight = BigInt::from(capped_composition_count(b - i, capacity));
        rhs += weight * counter.ss(i, n, capacity)?;
    }
    Ok(Check::compare(
        "trace decomposes by unused balls",
        &[
            ("b", b.to_string()),
            ("n", n.to_string()),
            ("kappa", capacity.to_string()),
        ],
        &counter.trace_power(b, capacity, n),
        &rhs,
    ))
}

/// `(1/n) sum_{d|n} mu(n/d) ((b+1)^d - b^d)`, the single-ball-per-throw count.
pub fn unary_pattern_count(b: usize, n: usize) -> Result<BigInt> {
    check_period(n)?;
    let mut total = BigInt::zero();
    for d in divisors(n) {
        let mu = mobius(n / d)?;
        let term = BigInt::from(b + 1).pow(d as u32) - BigInt::from(b).pow(d as u32);
        total += BigInt::from(mu) * term;
    }
    let (quot, rem) = total.div_rem(&BigInt::from(n));
    if !rem.is_zero() {
        return Err(Error::Inexact {
            context: format!("unary count for b={b}, n={n}"),
        });
    }
    Ok(quot)
}
