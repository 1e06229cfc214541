//! Ordered and unordered integer partitions, capped variants, and the
//! number-theoretic helpers used by the counting formulas.
//!
//! # Canonical composition order
//!
//! Compositions of `b` are listed in *graded* order: by number of parts
//! ascending, and within a fixed number of parts in reverse-lexicographic
//! order (larger leading parts first). For `b = 4` this is
//!
//! ```text
//! (4) (3,1) (2,2) (1,3) (2,1,1) (1,2,1) (1,1,2) (1,1,1,1)
//! ```
//!
//! Traces, spectra and every count are invariant under a simultaneous
//! relabelling of rows and columns, so any fixed order works. Matrices printed
//! elsewhere in other orders are reachable through [`published_vertex_order`].

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered partition of `total()` into positive parts.
///
/// The empty composition is the unique composition of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::MalformedComposition { parts });
        }
        Ok(Composition { parts })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition { parts }
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The ball count `b`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn max_part(&self) -> usize {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    /// True when every part is at most the capacity.
    pub fn fits(&self, capacity: Capacity) -> bool {
        self.parts.iter().all(|&p| capacity.allows(p))
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Largest number of balls any group may hold, or no limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Capacity {
    Finite(usize),
    #[default]
    Unbounded,
}

impl Capacity {
    /// Finite capacity; `kappa` must be at least 1.
    pub fn finite(kappa: usize) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::OutOfRange {
                name: "kappa",
                min: 1,
                got: 0,
            });
        }
        Ok(Capacity::Finite(kappa))
    }

    pub fn allows(self, part: usize) -> bool {
        match self {
            Capacity::Finite(k) => part <= k,
            Capacity::Unbounded => true,
        }
    }

    /// The capacity as a number no larger than `b`; capacities of at least `b`
    /// impose nothing on compositions of `b`.
    pub fn clamp(self, b: usize) -> usize {
        match self {
            Capacity::Finite(k) => k.min(b),
            Capacity::Unbounded => b,
        }
    }

    /// True when the capacity restricts nothing for `b` balls.
    pub fn is_unrestrictive_for(self, b: usize) -> bool {
        match self {
            Capacity::Finite(k) => k >= b,
            Capacity::Unbounded => true,
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(k) => write!(f, "{k}"),
            Capacity::Unbounded => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Capacity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "unbounded" | "∞" => Ok(Capacity::Unbounded),
            other => {
                let k: usize = other.parse().map_err(|_| {
                    format!("capacity must be a positive integer or `inf`, got `{other}`")
                })?;
                Capacity::finite(k).map_err(|e| e.to_string())
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of compositions of `n` into exactly `k` parts.
fn compositions_with_parts(n: usize, k: usize) -> u128 {
    match (n, k) {
        (0, 0) => 1,
        (_, 0) => 0,
        (n, k) if n < k => 0,
        (n, k) => binomial(n - 1, k - 1),
    }
}

/// All compositions of `b` in canonical graded order.
///
/// Generation is iterative: each block of `k`-part compositions starts at
/// `(b-k+1, 1, ..., 1)` and steps to the lexicographic predecessor.
pub fn compositions(b: usize) -> Vec<Composition> {
    if b == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::with_capacity(1usize << (b - 1).min(30));
    for k in 1..=b {
        let mut cur = vec![1usize; k];
        cur[0] = b - k + 1;
        loop {
            out.push(Composition::from_parts_unchecked(cur.clone()));
            // rightmost position before the last that can give up a ball
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] > 1) else {
                break;
            };
            let tail: usize = cur[i + 1..].iter().sum();
            cur[i] -= 1;
            let slots = k - i - 1;
            for c in cur[i + 1..].iter_mut() {
                *c = 1;
            }
            cur[i + 1] = tail + 1 - (slots - 1);
        }
    }
    out
}

/// Position of `c` in [`compositions`]`(c.total())`.
pub fn composition_index(c: &Composition) -> Result<usize> {
    let parts = c.parts();
    if parts.contains(&0) {
        return Err(Error::MalformedComposition {
            parts: parts.to_vec(),
        });
    }
    let b = c.total();
    if b == 0 {
        return Ok(0);
    }
    let k = parts.len();
    let mut index: u128 = (1..k).map(|j| compositions_with_parts(b, j)).sum();
    let mut rem = b;
    for (i, &p) in parts.iter().enumerate().take(k - 1) {
        let after = k - i - 1;
        // blocks headed by a larger value at this position come first
        for v in (p + 1)..=(rem - after) {
            index += compositions_with_parts(rem - v, after);
        }
        rem -= p;
    }
    Ok(index as usize)
}

/// Compositions of `b` with every part at most the capacity, in canonical order.
pub fn capped_compositions(b: usize, capacity: Capacity) -> Vec<Composition> {
    compositions(b)
        .into_iter()
        .filter(|c| c.fits(capacity))
        .collect()
}

/// Number of capped compositions via the first-part recurrence
/// `r(i) = sum_{j=1}^{min(kappa,i)} r(i-j)`, `r(0) = 1`.
pub fn capped_composition_count(b: usize, capacity: Capacity) -> BigUint {
    let mut r: Vec<BigUint> = vec![BigUint::one()];
    for i in 1..=b {
        let top = capacity.clamp(i);
        let mut acc = BigUint::zero();
        for j in 1..=top {
            acc += &r[i - j];
        }
        r.push(acc);
    }
    r.swap_remove(b)
}

/// Vertex orders used by the printed transfer matrices for `b <= 4`.
///
/// For `b <= 3` these coincide with the canonical order; `b = 4` lists the
/// two-part composition `(2,2)` after `(2,1,1)`.
pub fn published_vertex_order(b: usize) -> Option<Vec<Composition>> {
    let raw: &[&[usize]] = match b {
        0 => &[&[]],
        1 => &[&[1]],
        2 => &[&[2], &[1, 1]],
        3 => &[&[3], &[2, 1], &[1, 2], &[1, 1, 1]],
        4 => &[
            &[4],
            &[3, 1],
            &[1, 3],
            &[2, 1, 1],
            &[2, 2],
            &[1, 2, 1],
            &[1, 1, 2],
            &[1, 1, 1, 1],
        ],
        _ => return None,
    };
    Some(
        raw.iter()
            .map(|p| Composition::from_parts_unchecked(p.to_vec()))
            .collect(),
    )
}

/// An unordered partition, stored with parts weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct UnorderedPartition {
    parts: Vec<usize>,
}

impl UnorderedPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::MalformedPartition { parts });
        }
        Ok(UnorderedPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts equal to 1.
    pub fn ones_count(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }
}

impl TryFrom<Vec<usize>> for UnorderedPartition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        UnorderedPartition::new(parts)
    }
}

impl From<UnorderedPartition> for Vec<usize> {
    fn from(p: UnorderedPartition) -> Self {
        p.parts
    }
}

/// All partitions of `b`, in reverse-lexicographic order starting from `(b)`.
pub fn unordered_partitions(b: usize) -> Vec<UnorderedPartition> {
    if b == 0 {
        return vec![UnorderedPartition { parts: Vec::new() }];
    }
    let mut out = Vec::new();
    let mut cur = vec![b];
    loop {
        out.push(UnorderedPartition { parts: cur.clone() });
        // strip trailing ones, then break the last part > 1
        let mut freed = 0;
        while cur.last() == Some(&1) {
            cur.pop();
            freed += 1;
        }
        let Some(last) = cur.pop() else {
            break;
        };
        let piece = last - 1;
        freed += 1;
        cur.push(piece);
        while freed > 0 {
            let next = piece.min(freed);
            cur.push(next);
            freed -= next;
        }
    }
    out
}

/// `p(b)` by the standard part-size dynamic program.
pub fn partition_count(b: usize) -> BigUint {
    let mut ways = vec![BigUint::zero(); b + 1];
    ways[0] = BigUint::one();
    for part in 1..=b {
        for total in part..=b {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways.swap_remove(b)
}

pub fn ones_count(q: &UnorderedPartition) -> usize {
    q.ones_count()
}

/// Möbius function; `n = 0` is rejected.
pub fn mobius(n: usize) -> Result<i8> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "n",
            min: 1,
            got: 0,
        });
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
