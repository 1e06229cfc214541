//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! The same type serves for characteristic polynomials in `x` and for the
//! crossing generating functions in `q`; only the display variable differs.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `coefficients[i]` is the coefficient of the degree-`i` term. No trailing
/// zeros are stored, so the zero polynomial has no coefficients at all.
///
/// Serialized as an array of decimal strings, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Polynomial {
    coefficients: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Polynomial::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The constant polynomial `c`.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Polynomial::new(vec![c.into()])
    }

    /// `c * var^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coefficients = vec![BigInt::zero(); degree + 1];
        coefficients[degree] = c.into();
        Polynomial::new(coefficients)
    }

    /// The polynomial `var`.
    pub fn var() -> Self {
        Polynomial::monomial(1, 1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Coefficient of `var^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coefficients.get(i).cloned().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coefficients.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Coefficient just below the leading one (zero for degree < 1).
    pub fn second_coefficient(&self) -> BigInt {
        match self.degree() {
            Some(d) if d >= 1 => self.coefficients[d - 1].clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        Polynomial::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x^k)`; `k` must be positive.
    pub fn inflate(&self, k: usize) -> Polynomial {
        assert!(k >= 1, "inflation factor must be positive");
        let mut coefficients = vec![BigInt::zero(); self.degree().map_or(0, |d| d * k + 1)];
        for (i, c) in self.coefficients.iter().enumerate() {
            coefficients[i * k] = c.clone();
        }
        Polynomial::new(coefficients)
    }

    /// Divides every coefficient by `d`, failing unless each division is exact.
    pub fn exact_div_scalar(&self, d: &BigInt) -> Result<Polynomial> {
        let mut out = Vec::with_capacity(self.coefficients.len());
        for (i, c) in self.coefficients.iter().enumerate() {
            let (quot, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return Err(Error::Inexact {
                    context: format!("coefficient {i} ({c}) divided by {d}"),
                });
            }
            out.push(quot);
        }
        Ok(Polynomial::new(out))
    }

    /// Quotient and remainder, or `None` when some step needs a fractional
    /// coefficient (the leading coefficient of `divisor` fails to divide).
    fn div_rem_integral(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?;
        let mut rem = self.coefficients.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Some((Polynomial::zero(), self.clone()));
        };
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = &rem[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (f, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coefficients.iter().enumerate() {
                rem[shift + i] -= &f * c;
            }
            quot[shift] = f;
        }
        Some((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// `self / divisor`, returned only when the remainder is identically zero.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        match self.div_rem_integral(divisor) {
            Some((q, r)) if r.is_zero() => Ok(q),
            Some((_, r)) => Err(Error::NotDivisible { remainder: r }),
            // a non-integral quotient step already proves inexactness; report
            // the unreduced dividend as the witness
            None => Err(Error::NotDivisible {
                remainder: self.clone(),
            }),
        }
    }

    /// Renders with the given variable name, highest degree first,
    /// e.g. `x^3-10x^2+27x-20` or `q^2+q+1`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (deg, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            let a = c.abs();
            if deg == 0 || !a.is_one() {
                s.push_str(&a.to_string());
            }
            match deg {
                0 => {}
                1 => s.push_str(var),
                _ => {
                    s.push_str(var);
                    s.push('^');
                    s.push_str(&deg.to_string());
                }
            }
        }
        s
    }
}

impl From<Vec<BigInt>> for Polynomial {
    fn from(v: Vec<BigInt>) -> Self {
        Polynomial::new(v)
    }
}

impl From<Polynomial> for Vec<BigInt> {
    fn from(p: Polynomial) -> Self {
        p.coefficients
    }
}

impl TryFrom<Vec<String>> for Polynomial {
    type Error = String;

    fn try_from(v: Vec<String>) -> std::result::Result<Self, String> {
        v.iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|e| format!("bad coefficient `{s}`: {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Polynomial::new)
    }
}

impl From<Polynomial> for Vec<String> {
    fn from(p: Polynomial) -> Self {
        p.coefficients.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial {
            coefficients: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::constant(1)
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        if self.coefficients.len() < rhs.coefficients.len() {
            self.coefficients
                .resize(rhs.coefficients.len(), BigInt::zero());
        }
        for (a, b) in self.coefficients.iter_mut().zip(&rhs.coefficients) {
            *a += b;
        }
        while self.coefficients.last().is_some_and(Zero::is_zero) {
            self.coefficients.pop();
        }
    }
}

impl<'a> SubAssign<&'a Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &'a Polynomial) {
        let neg = -rhs.clone();
        *self += &neg;
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            coefficients: self.coefficients.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p * q
}

pub fn poly_exact_div(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    p.exact_div(q)
}

pub fn poly_eval(p: &Polynomial, x: &BigInt) -> BigInt {
    p.eval(x)
}
