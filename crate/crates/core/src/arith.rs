//! Small exact-arithmetic helpers shared by the counting and bounding code.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn from_biguint(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Returns the integer value of a rational, or `NonIntegerResult`.
pub fn to_count(r: &BigRational, what: &'static str) -> Result<BigUint> {
    if !r.is_integer() || r.is_negative() {
        return Err(Error::NonIntegerResult(what));
    }
    r.to_integer().to_biguint().ok_or(Error::NonIntegerResult(what))
}

/// Exact quotient `num / den`, failing when `den` does not divide `num`.
pub fn exact_div(num: &BigUint, den: &BigUint, what: &'static str) -> Result<BigUint> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::NonIntegerResult(what));
    }
    Ok(q)
}

pub fn min(a: BigRational, b: BigRational) -> BigRational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max(a: BigRational, b: BigRational) -> BigRational {
    if a >= b {
        a
    } else {
        b
    }
}

pub fn pow(base: &BigRational, exp: usize) -> BigRational {
    num_traits::pow(base.clone(), exp)
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Determinant by fraction-based Gaussian elimination with row pivoting.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Largest integer `s` with `s*s <= n`.
pub fn isqrt(n: u64) -> u64 {
    let mut s = (n as f64).sqrt() as u64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// Decides `a <= b / sqrt(n)` exactly for `n >= 1`.
pub fn le_over_sqrt(a: &BigRational, b: &BigRational, n: u64) -> bool {
    // a <= b/sqrt(n)  <=>  a*sqrt(n) <= b
    if a.is_negative() || a.is_zero() {
        return !b.is_negative() || (a * a) * int(n) >= b * b;
    }
    if b.is_negative() {
        return false;
    }
    (a * a) * int(n) <= b * b
}

/// Rational lower bound on Euler's number used wherever `e` must be bounded
/// from below.
pub fn e_lower() -> BigRational {
    ratio(2_718_281, 1_000_000)
}

/// Rational upper bound on Euler's number.
pub fn e_upper() -> BigRational {
    ratio(2_718_282, 1_000_000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(m), int(-1));
        let m = vec![vec![int(2), int(3)], vec![int(4), int(6)]];
        assert_eq!(determinant(m), int(0));
    }

    #[test]
    fn sqrt_comparisons() {
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert!(le_over_sqrt(&int(1), &int(2), 4));
        assert!(!le_over_sqrt(&ratio(11, 10), &int(2), 4));
        assert!(le_over_sqrt(&int(-3), &int(-2), 1));
        assert!(!le_over_sqrt(&int(-1), &int(-2), 1));
    }

    #[test]
    fn e_bounds_bracket_e() {
        assert!(to_f64(&e_lower()) < std::f64::consts::E);
        assert!(to_f64(&e_upper()) > std::f64::consts::E);
    }
}
