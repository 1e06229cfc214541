//! Exact characteristic polynomials `det(xI - A)` of integer matrices.
//!
//! The main route reduces `A` modulo enough 62-bit primes, computes the
//! characteristic polynomial of each reduction through a Hessenberg form, and
//! lifts the coefficients by Chinese remaindering. The number of primes comes
//! from a Hadamard bound on the coefficients, and one extra prime that did not
//! take part in the lift re-checks the result.
//!
//! Faddeev–LeVerrier over the integers is kept as an independent route; its
//! divisions by `k` must all be exact and any remainder is reported as an
//! error. Bareiss elimination supplies determinants the same way.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::dense::{ExactMatrix, Matrix};
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::poly::Polynomial;

/// Largest dimension [`char_poly`] accepts.
pub const CHARPOLY_MAX_DIM: usize = 512;

pub fn char_poly(a: &ExactMatrix) -> Result<Polynomial> {
    char_poly_with(a, Exec::default())
}

/// Multi-modular characteristic polynomial; primes run in parallel when
/// `exec` allows.
pub fn char_poly_with(a: &ExactMatrix, exec: Exec) -> Result<Polynomial> {
    let n = a.dim();
    if n > CHARPOLY_MAX_DIM {
        return Err(Error::Infeasible {
            what: "characteristic polynomial dimension",
            limit: CHARPOLY_MAX_DIM,
            requested: n,
        });
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let bound = coefficient_bound(a);
    // need the product of primes to exceed 2 * bound
    let target = BigUint::from(2u8) * bound;
    let mut primes = Vec::new();
    let mut modulus = BigUint::one();
    let mut candidate = (1u64 << 62) - 1;
    while modulus <= target {
        candidate = prev_prime(candidate);
        primes.push(candidate);
        modulus *= candidate;
    }
    let check_prime = prev_prime(candidate);
    primes.push(check_prime);

    let residues = par::map_slice(exec, &primes, |&p| char_poly_mod(a, p));
    let (check, lifted) = residues.split_last().expect("at least one prime");

    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut m = BigInt::one();
    for (res, &p) in lifted.iter().zip(&primes) {
        let pb = BigInt::from(p);
        let m_mod_p = (&m % &pb).to_u64().expect("reduced below p");
        let inv = inv_mod(m_mod_p, p);
        for (c, &r) in acc.iter_mut().zip(res) {
            let c_mod = c.mod_floor(&pb).to_u64().expect("reduced below p");
            let delta = mul_mod(sub_mod(r, c_mod, p), inv, p);
            *c += &m * BigInt::from(delta);
        }
        m *= pb;
    }
    let half = &m >> 1usize;
    for c in acc.iter_mut() {
        if *c > half {
            *c -= &m;
        }
    }
    let pb = BigInt::from(check_prime);
    for (i, (c, &r)) in acc.iter().zip(check).enumerate() {
        if c.mod_floor(&pb).to_u64() != Some(r) {
            return Err(Error::Inexact {
                context: format!("multi-modular lift of coefficient {i} failed the check prime"),
            });
        }
    }
    let poly = Polynomial::new(acc);
    if !poly.is_monic() || poly.degree() != Some(n) {
        return Err(Error::Inexact {
            context: "lifted characteristic polynomial is not monic of full degree".into(),
        });
    }
    Ok(poly)
}

/// `e_k(R_1, ..., R_n)` maximised over `k`, where `R_i` bounds the Euclidean
/// norm of row `i`. By Hadamard every principal `k`-minor is at most the
/// product of its row norms, so this bounds every coefficient.
fn coefficient_bound(a: &ExactMatrix) -> BigUint {
    let n = a.dim();
    let mut elem = vec![BigUint::zero(); n + 1];
    elem[0] = BigUint::one();
    for i in 0..n {
        let sq: BigUint = a
            .row(i)
            .iter()
            .map(|x| {
                let m = x.magnitude();
                m * m
            })
            .sum();
        let norm = sq.sqrt() + 1u8;
        for k in (1..=i + 1).rev() {
            let add = &elem[k - 1] * &norm;
            elem[k] += add;
        }
    }
    elem.into_iter().max().unwrap_or_else(BigUint::one)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "no inverse of zero");
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `n`.
fn prev_prime(n: u64) -> u64 {
    let mut c = n - 1;
    while !is_prime(c) {
        c -= 1;
    }
    c
}

/// Characteristic polynomial coefficients modulo `p`, lowest degree first.
fn char_poly_mod(a: &ExactMatrix, p: u64) -> Vec<u64> {
    let n = a.dim();
    let pb = BigInt::from(p);
    let mut h: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("reduced below p"))
                .collect()
        })
        .collect();

    // similarity reduction to upper Hessenberg form
    for m in 1..n.saturating_sub(1) {
        let Some(pivot) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if pivot != m {
            h.swap(pivot, m);
            for row in h.iter_mut() {
                row.swap(pivot, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let u = mul_mod(h[i][m - 1], inv, p);
            if u == 0 {
                continue;
            }
            let (upper, lower) = h.split_at_mut(i);
            for (x, &y) in lower[0].iter_mut().zip(&upper[m]) {
                *x = sub_mod(*x, mul_mod(u, y, p), p);
            }
            for row in h.iter_mut() {
                let t = mul_mod(u, row[i], p);
                row[m] = add_mod(row[m], t, p);
            }
        }
    }

    // p_{m+1} = (x - h_mm) p_m - sum_{i<m} h_im (prod_{j=i+1}^{m} h_{j,j-1}) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = add_mod(next[d + 1], c, p);
            next[d] = sub_mod(next[d], mul_mod(h[m][m], c, p), p);
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = mul_mod(t, h[i + 1][i], p);
            if t == 0 {
                break;
            }
            let coef = mul_mod(h[i][m], t, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub_mod(next[d], mul_mod(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n >= 1")
}

/// Faddeev–LeVerrier: `M_k = A M_{k-1} + c_{n-k+1} I`,
/// `c_{n-k} = -tr(A M_k) / k`, every division checked for exactness.
pub fn char_poly_faddeev_leverrier(a: &ExactMatrix) -> Result<Polynomial> {
    let n = a.dim();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m: ExactMatrix = Matrix::identity(n);
    for k in 1..=n {
        let am = a.mul(&m)?;
        let tr = am.trace();
        let (quot, rem) = tr.div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::Inexact {
                context: format!("Faddeev–LeVerrier step {k}: trace {tr} not divisible by {k}"),
            });
        }
        coeffs[n - k] = -quot;
        let c = coeffs[n - k].clone();
        let mut rows = am.rows();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] += &c;
        }
        m = Matrix::from_rows(rows)?;
    }
    Ok(Polynomial::new(coeffs))
}

/// Fraction-free Bareiss determinant.
pub fn determinant(a: &ExactMatrix) -> Result<BigInt> {
    let n = a.dim();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut w = a.rows();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if w[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !w[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            w.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &w[i][j] * &w[k][k] - &w[i][k] * &w[k][j];
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Err(Error::Inexact {
                        context: format!("Bareiss step {k}: {num} not divisible by {prev}"),
                    });
                }
                w[i][j] = q;
            }
        }
        prev = w[k][k].clone();
    }
    let det = w[n - 1][n - 1].clone();
    Ok(if sign < 0 { -det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cards::CardFilter;
    use crate::matrices::transfer_matrix;
    use proptest::prelude::*;

    fn int_matrix(rows: &[&[i64]]) -> ExactMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_examples() {
        let id = int_matrix(&[&[1, 0], &[0, 1]]);
        assert_eq!(char_poly(&id).unwrap(), Polynomial::from_i64(&[1, -2, 1]));
        let a2 = int_matrix(&[&[2, 1], &[1, 3]]);
        assert_eq!(char_poly(&a2).unwrap(), Polynomial::from_i64(&[5, -5, 1]));
        let a3 = int_matrix(&[&[2, 1, 1, 1], &[1, 3, 2, 3], &[1, 1, 2, 0], &[0, 1, 1, 4]]);
        let expected = &Polynomial::from_i64(&[-1, 1]) * &Polynomial::from_i64(&[-20, 27, -10, 1]);
        assert_eq!(char_poly(&a3).unwrap(), expected);
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(1_000_000_007));
        assert!(!is_prime(1) && !is_prime(561) && !is_prime(1_000_000_007 * 3));
        let p = prev_prime(1 << 62);
        assert!(is_prime(p) && p < 1 << 62);
    }

    #[test]
    fn routes_agree_on_transfer_matrices() {
        for b in 0..=6 {
            let a = transfer_matrix(b, CardFilter::ALL);
            let fast = char_poly(&a).unwrap();
            assert_eq!(fast, char_poly_faddeev_leverrier(&a).unwrap(), "b = {b}");
            assert_eq!(fast, char_poly_with(&a, Exec::Sequential).unwrap());
        }
    }

    #[test]
    fn constant_term_is_signed_determinant() {
        for b in 0..=6 {
            let a = transfer_matrix(b, CardFilter::ALL);
            let p = char_poly(&a).unwrap();
            let det = determinant(&a).unwrap();
            let signed = if a.dim().is_multiple_of(2) { det } else { -det };
            assert_eq!(p.constant_term(), signed, "b = {b}");
        }
    }

    #[test]
    fn singular_and_negative_entries() {
        let s = int_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&s).unwrap(), BigInt::zero());
        assert_eq!(char_poly(&s).unwrap(), Polynomial::from_i64(&[0, -5, 1]));
        let neg = int_matrix(&[&[0, -3, 1], &[7, -2, 0], &[-1, 5, 9]]);
        assert_eq!(
            char_poly(&neg).unwrap(),
            char_poly_faddeev_leverrier(&neg).unwrap()
        );
    }

    fn arb_matrix() -> impl Strategy<Value = ExactMatrix> {
        (1usize..7).prop_flat_map(|n| {
            prop::collection::vec(-1000i64..1000, n * n).prop_map(move |v| {
                Matrix::from_rows(
                    v.chunks(n)
                        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                        .collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn modular_matches_leverrier(a in arb_matrix()) {
            prop_assert_eq!(char_poly(&a).unwrap(), char_poly_faddeev_leverrier(&a).unwrap());
        }

        #[test]
        fn trace_and_determinant_coefficients(a in arb_matrix()) {
            let p = char_poly(&a).unwrap();
            let n = a.dim();
            prop_assert_eq!(p.coeff(n - 1), -a.trace());
            let det = determinant(&a).unwrap();
            prop_assert_eq!(p.constant_term(), if n % 2 == 0 { det } else { -det });
        }
    }
}
