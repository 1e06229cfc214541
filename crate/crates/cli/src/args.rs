use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multiplex_juggling::combinatorics::Capacity;
use multiplex_juggling::matrices::Variant;

/// Exact enumeration of multiplex juggling cards, transfer matrices and
/// pattern counts.
#[derive(Debug, Parser)]
#[command(name = "multiplex", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Run requests beyond the default feasibility bounds.
    #[arg(long, global = true)]
    pub force: bool,
    /// Directory for the persistent trace cache.
    #[arg(long, env = "MULTIPLEX_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every card for a ball count.
    Cards {
        #[arg(long)]
        balls: usize,
        /// Keep cards whose sides have all parts at most this.
        #[arg(long, default_value = "inf")]
        capacity: Capacity,
        /// Keep cards that never send two balls to one height.
        #[arg(long)]
        distinct: bool,
        /// Also draw the cards into an SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print a transfer matrix.
    Matrix {
        #[arg(long)]
        balls: usize,
        /// plain, capped:K, distinct_heights, q_weighted or q_weighted_capped:K
        #[arg(long, default_value = "plain")]
        variant: Variant,
    },
    /// Count siteswaps and patterns for one ball count and period.
    Count {
        #[arg(long)]
        balls: usize,
        #[arg(long)]
        period: usize,
        #[arg(long, default_value = "inf")]
        capacity: Capacity,
        /// Refine counts by crossings as polynomials in q.
        #[arg(long)]
        q: bool,
    },
    /// Pattern counts over ranges of balls and periods.
    Table {
        /// A single value or a range such as 2..5.
        #[arg(long)]
        balls: Span,
        #[arg(long)]
        period: Span,
        #[arg(long, default_value = "inf")]
        capacity: Capacity,
    },
    /// Run verification suites; exits with status 3 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Largest ball count for the brute-force oracle.
        #[arg(long, default_value_t = 3)]
        max_balls: usize,
        /// Largest period for the brute-force oracle.
        #[arg(long, default_value_t = 4)]
        max_period: usize,
    },
    /// Characteristic polynomial of A_b and its factor report.
    Charpoly {
        #[arg(long)]
        balls: usize,
    },
    /// Capacity-2 card totals against the conjectured generating function.
    Conjecture {
        #[arg(long, default_value_t = 25)]
        max_balls: usize,
    },
    /// Search for A_(b-1) as a principal submatrix of A_b.
    Containment {
        #[arg(long)]
        balls: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Tables,
    Cards,
    Matrices,
    Traces,
    Oracle,
    Charpoly,
    Conjecture,
    Unary,
    Consistency,
}

/// Inclusive range written `a..b`, `a..=b` or `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span(pub RangeInclusive<usize>);

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` is not a nonnegative integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("range `{s}` is empty"));
        }
        Ok(Span(lo..=hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!("2..5".parse::<Span>().unwrap().0, 2..=5);
        assert_eq!("2..=5".parse::<Span>().unwrap().0, 2..=5);
        assert_eq!("7".parse::<Span>().unwrap().0, 7..=7);
        assert!("5..2".parse::<Span>().is_err());
        assert!("a..2".parse::<Span>().is_err());
    }
}
