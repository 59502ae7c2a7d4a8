//! Exact closed forms and recursions.
//!
//! Alternating sums of the form `n! Σ (-1)^k / k!` are evaluated as
//! `Σ (-1)^k n!/k!`, so every term is an integer and no rationals appear.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Factorials up to this `n` are kept in a shared table.
pub const MEMO_MAX: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("{what} is undefined for n = {n} (needs n >= {min})")]
    Domain { what: &'static str, n: u64, min: u64 },
    #[error("exactly {m} fixed points is impossible for n = {n}")]
    FixedAboveN { n: u64, m: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recursion {
    /// `D_n = n [D_{n-1} + (-1)^{n-1}]`, base `D_0 = 0`.
    MulShift,
    /// `D_n = (n-1)[D_{n-1} + D_{n-2}] + (-1)^{n-1}`, bases `D_0 = 0`, `D_1 = 1`.
    TwoTerm,
}

fn factorial_table() -> &'static [BigUint] {
    static TABLE: OnceLock<Vec<BigUint>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(MEMO_MAX + 1);
        t.push(BigUint::one());
        for k in 1..=MEMO_MAX {
            let next = &t[k - 1] * BigUint::from(k);
            t.push(next);
        }
        t
    })
}

pub fn factorial(n: u64) -> BigUint {
    let table = factorial_table();
    match table.get(n as usize) {
        Some(f) => f.clone(),
        None => (MEMO_MAX as u64 + 1..=n).fold(table[MEMO_MAX].clone(), |acc, k| acc * k),
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(-1)^n`.
pub fn sign(n: u64) -> BigInt {
    if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `Σ_{k=0}^{upper} (-1)^k n!/k!` for `upper <= n`.
fn alternating_factorial_sum(n: u64, upper: u64) -> BigInt {
    // n!/k! for k = n, n-1, ..., 0 is built up by multiplying in k+1.
    let mut ratio = BigUint::one();
    let mut sum = BigInt::zero();
    for k in (0..=n).rev() {
        if k <= upper {
            let term = BigInt::from(ratio.clone());
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        ratio *= k.max(1);
    }
    sum
}

fn to_nat(v: BigInt) -> BigUint {
    v.to_biguint().expect("count formula produced a negative value")
}

/// Number of derangements of `n` objects: `n! Σ_{k=0}^{n} (-1)^k / k!`.
pub fn derangement(n: u64) -> BigUint {
    to_nat(alternating_factorial_sum(n, n))
}

/// `Der_n` from `Der_n = n Der_{n-1} + (-1)^n`, iterated up from `Der_0 = 1`.
pub fn derangement_by_recursion(n: u64) -> BigUint {
    let mut der = BigInt::one();
    for k in 1..=n {
        der = der * k + sign(k);
    }
    to_nat(der)
}

/// `D_n = n! Σ_{k=0}^{n-1} (-1)^k / k!`: the derangement sum without its last term.
pub fn d_big(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    to_nat(alternating_factorial_sum(n, n - 1))
}

/// Inclusion-exclusion over sets of forbidden successions:
/// `d_n = Σ_{k=0}^{n-1} (-1)^k C(n-1, k) (n-k)!`.
pub fn d_small(n: u64) -> Result<BigUint, FormulaError> {
    if n == 0 {
        return Err(FormulaError::Domain { what: "d_n", n, min: 1 });
    }
    let mut sum = BigInt::zero();
    for k in 0..n {
        let term = BigInt::from(binomial(n - 1, k) * factorial(n - k));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(to_nat(sum))
}

/// `D_n` by one of its two recursions, iterated from the base cases.
pub fn d_big_recursive(n: u64, rule: Recursion) -> Result<BigUint, FormulaError> {
    match rule {
        Recursion::MulShift => {
            if n < 1 {
                return Err(FormulaError::Domain { what: "D_n (MulShift)", n, min: 1 });
            }
            let mut d = BigInt::zero();
            for k in 1..=n {
                d = (d + sign(k - 1)) * k;
            }
            Ok(to_nat(d))
        }
        Recursion::TwoTerm => {
            if n < 2 {
                return Err(FormulaError::Domain { what: "D_n (TwoTerm)", n, min: 2 });
            }
            let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
            for k in 2..=n {
                let next = (&cur + &prev) * (k - 1) + sign(k - 1);
                prev = std::mem::replace(&mut cur, next);
            }
            Ok(to_nat(cur))
        }
    }
}

/// `d_n1 = (n-1) Der_{n-2}`: succession-avoiding words containing `n1`.
pub fn dn1_count(n: u64) -> Result<BigUint, FormulaError> {
    if n < 2 {
        return Err(FormulaError::Domain { what: "d_n1", n, min: 2 });
    }
    Ok(derangement(n - 2) * (n - 1))
}

/// Permutations of `n` with exactly `m` fixed points, by inclusion-exclusion:
/// `E_m = Σ_{j=m}^{n} (-1)^{j-m} C(j, j-m) S_j` with `S_j = C(n, j)(n-j)!`.
pub fn exact_fixed_formula(n: u64, m: u64) -> Result<BigUint, FormulaError> {
    if m > n {
        return Err(FormulaError::FixedAboveN { n, m });
    }
    let mut sum = BigInt::zero();
    for j in m..=n {
        let s_j = binomial(n, j) * factorial(n - j);
        let term = BigInt::from(binomial(j, j - m) * s_j);
        if (j - m) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(to_nat(sum))
}

/// `Der_n - D_n`, which alternates between `+1` and `-1`.
pub fn der_minus_d_big(n: u64) -> BigInt {
    BigInt::from(derangement(n)) - BigInt::from(d_big(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn derangement_values() {
        assert_eq!(derangement(0), nat(1));
        assert_eq!(derangement(1), nat(0));
        assert_eq!(derangement(6), nat(265));
        assert_eq!(derangement(15), nat(481_066_515_734));
    }

    #[test]
    fn d_big_values() {
        assert_eq!(d_big(0), nat(0));
        assert_eq!(d_big(1), nat(1));
        assert_eq!(d_big(7), nat(1855));
        let prefix: Vec<BigUint> = (0..=8).map(d_big).collect();
        assert_eq!(prefix, [0u64, 1, 0, 3, 8, 45, 264, 1855, 14832].map(nat));
    }

    #[test]
    fn d_small_values() {
        assert_eq!(d_small(1).unwrap(), nat(1));
        assert_eq!(d_small(4).unwrap(), nat(11));
        assert_eq!(d_small(5).unwrap(), nat(53));
        assert!(d_small(0).is_err());
    }

    #[test]
    fn recursions() {
        assert_eq!(d_big_recursive(5, Recursion::MulShift).unwrap(), nat(45));
        assert_eq!(d_big_recursive(12, Recursion::MulShift).unwrap(), nat(176_214_840));
        assert_eq!(d_big_recursive(2, Recursion::TwoTerm).unwrap(), nat(0));
        assert!(d_big_recursive(0, Recursion::MulShift).is_err());
        assert!(d_big_recursive(1, Recursion::TwoTerm).is_err());
        for n in 2..=60 {
            let d = d_big(n);
            assert_eq!(d_big_recursive(n, Recursion::MulShift).unwrap(), d);
            assert_eq!(d_big_recursive(n, Recursion::TwoTerm).unwrap(), d);
        }
    }

    #[test]
    fn dn1_values() {
        assert_eq!(dn1_count(3).unwrap(), nat(0));
        assert_eq!(dn1_count(4).unwrap(), nat(3));
        assert_eq!(dn1_count(5).unwrap(), nat(8));
        assert!(dn1_count(1).is_err());
        for n in 2..=40 {
            assert_eq!(dn1_count(n).unwrap(), d_big(n - 1));
        }
    }

    #[test]
    fn exact_fixed_values() {
        assert_eq!(exact_fixed_formula(8, 1).unwrap(), nat(14832));
        // brute force over the 720 words of S_6
        assert_eq!(exact_fixed_formula(6, 2).unwrap(), nat(135));
        for n in 1..=20 {
            assert_eq!(exact_fixed_formula(n, n).unwrap(), nat(1));
            assert_eq!(exact_fixed_formula(n, n - 1).unwrap(), nat(0));
            assert_eq!(exact_fixed_formula(n, 0).unwrap(), derangement(n));
            assert_eq!(exact_fixed_formula(n, 1).unwrap(), d_big(n));
        }
        assert_eq!(exact_fixed_formula(0, 0).unwrap(), nat(1));
        assert!(exact_fixed_formula(3, 4).is_err());
    }

    #[test]
    fn alternating_difference() {
        for n in 1..=30 {
            assert_eq!(der_minus_d_big(n), sign(n));
        }
        assert_eq!(der_minus_d_big(0), BigInt::one());
    }

    #[test]
    fn derangement_recursion_agrees() {
        for n in 0..=100 {
            assert_eq!(derangement_by_recursion(n), derangement(n));
        }
    }

    #[test]
    fn factorial_beyond_table() {
        assert_eq!(factorial(66), factorial(64) * nat(65) * nat(66));
        assert_eq!(factorial(0), nat(1));
        assert_eq!(binomial(10, 3), nat(120));
        assert_eq!(binomial(3, 10), nat(0));
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }
}
