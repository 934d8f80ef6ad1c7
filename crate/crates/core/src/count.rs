//! Tableau counts by independent methods, the product quantities `F`, `G`,
//! the balance function `Phi`, and the imbalance `q`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{self, exact_div, factorial, int, ratio, to_count};
use crate::error::{Error, Result};
use crate::lattice;
use crate::shapes::{Cell, Partition, SkewShape};

/// Hook length formula `n! / prod h`.
pub fn f_hlf(p: &Partition) -> Result<BigUint> {
    let prod = p
        .hooks()
        .iter()
        .flatten()
        .fold(BigUint::one(), |acc, &h| acc * h as u64);
    exact_div(&factorial(p.size()), &prod, "hook length formula")
}

/// Frobenius formula with `d` rows.
pub fn f_frobenius(p: &Partition, d: usize) -> Result<BigUint> {
    if p.len() > d {
        return Err(Error::DTooSmall { d, rows: p.len() });
    }
    let l = p.padded(d);
    let mut r = arith::from_biguint(&factorial(p.size()));
    for &li in &l {
        r /= arith::from_biguint(&factorial(li));
    }
    for i in 0..d {
        for j in i + 1..d {
            r *= ratio(
                (l[i] + j) as i64 - (l[j] + i) as i64,
                (l[i] + j - i) as i64,
            );
        }
    }
    to_count(&r, "Frobenius formula")
}

/// Aitken's determinant `n! det[1/(lambda_i - mu_j - i + j)!]`.
pub fn f_determinant(s: &SkewShape) -> Result<BigUint> {
    let d = s.d();
    let l = s.outer_padded();
    let m = s.inner_padded();
    let matrix = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let k = l[i] as i64 - m[j] as i64 - i as i64 + j as i64;
                    if k < 0 {
                        BigRational::zero()
                    } else {
                        BigRational::new(BigInt::one(), BigInt::from(factorial(k as usize)))
                    }
                })
                .collect()
        })
        .collect();
    let det = arith::determinant(matrix);
    to_count(&(det * arith::from_biguint(&factorial(s.size()))), "determinant formula")
}

type CacheKey = (Vec<usize>, Vec<usize>);

fn cache() -> &'static RwLock<HashMap<CacheKey, BigUint>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, BigUint>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Maximal chains from `mu` to `lambda` in Young's lattice. Results are
/// memoized process-wide by the normalized pair of partitions.
pub fn f_paths(s: &SkewShape) -> BigUint {
    let key = (s.outer().parts().to_vec(), s.inner().parts().to_vec());
    if let Some(v) = cache().read().expect("count cache poisoned").get(&key) {
        return v.clone();
    }
    let rows = s.outer().len();
    let v = lattice::count_paths(&s.outer().padded(rows), &s.inner().padded(rows));
    cache()
        .write()
        .expect("count cache poisoned")
        .entry(key)
        .or_insert(v)
        .clone()
}

/// `f(outer/inner)` for raw parts, through the shared cache.
pub fn f_of(outer: &Partition, inner: &Partition) -> BigUint {
    match SkewShape::new(outer.clone(), inner.clone()) {
        Ok(s) => f_paths(&s),
        Err(_) => BigUint::zero(),
    }
}

/// `n! * prod_{cells of lambda/mu} 1/h_lambda`.
pub fn f_product(s: &SkewShape) -> BigRational {
    let hooks = s.outer().hooks();
    let prod = s
        .cells()
        .iter()
        .fold(BigUint::one(), |acc, c| acc * hooks[c.row - 1][c.col - 1] as u64);
    BigRational::new(BigInt::from(factorial(s.size())), BigInt::from(prod))
}

/// `n! / prod (lambda_i - mu_i)! * prod_{i<j} (lambda_i - lambda_j + j - i)/(lambda_i + j - i)`
/// with `n = |lambda/mu|`.
pub fn g_value(s: &SkewShape) -> BigRational {
    let d = s.d();
    let l = s.outer_padded();
    let m = s.inner_padded();
    let mut r = arith::from_biguint(&factorial(s.size()));
    for i in 0..d {
        r /= arith::from_biguint(&factorial(l[i] - m[i]));
    }
    for i in 0..d {
        for j in i + 1..d {
            r *= ratio((l[i] - l[j] + j - i) as i64, (l[i] + j - i) as i64);
        }
    }
    r
}

/// `prod_{i<j} min{mu_i - mu_j + j - i, (lambda_i + d - i)/(lambda_i - lambda_j + j - i)}`.
pub fn balance_phi(s: &SkewShape) -> BigRational {
    let d = s.d();
    let l = s.outer_padded();
    let m = s.inner_padded();
    let mut r = BigRational::one();
    for i in 0..d {
        for j in i + 1..d {
            let a = int((m[i] - m[j] + j - i) as i64);
            let b = ratio((l[i] + d - 1 - i) as i64, (l[i] - l[j] + j - i) as i64);
            r *= arith::min(a, b);
        }
    }
    r
}

/// `q(lambda) = sum_{i<=j} h(i,i) h(j,j+1) / (n(n-1))`.
pub fn imbalance(p: &Partition) -> Result<BigRational> {
    let n = p.size();
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let hook = |r: usize, c: usize| -> u64 {
        let cell = Cell::new(r, c);
        if p.contains_cell(cell) {
            p.hook_unchecked(cell) as u64
        } else {
            0
        }
    };
    let mut total = BigUint::zero();
    for i in 1..=p.len() {
        let hi = hook(i, i);
        if hi == 0 {
            break;
        }
        for j in i..=p.len() {
            let hj = hook(j, j + 1);
            if hj == 0 {
                break;
            }
            total += hi * hj;
        }
    }
    Ok(BigRational::new(BigInt::from(total), BigInt::from((n * (n - 1)) as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn sk(o: &[usize], i: &[usize]) -> SkewShape {
        SkewShape::from_parts(o, i)
    }

    #[test]
    fn hook_length_examples() {
        assert_eq!(f_hlf(&p(&[4, 3, 1])).unwrap(), BigUint::from(70u32));
        assert_eq!(f_hlf(&p(&[3, 3])).unwrap(), BigUint::from(5u32));
        assert_eq!(f_hlf(&p(&[7])).unwrap(), BigUint::one());
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(f_frobenius(&p(&[2, 1]), 2).unwrap(), BigUint::from(2u32));
        assert_eq!(f_frobenius(&p(&[3, 3]), 2).unwrap(), BigUint::from(5u32));
        assert_eq!(f_frobenius(&p(&[5]), 1).unwrap(), BigUint::one());
        assert_eq!(f_frobenius(&p(&[4, 3, 1]), 5).unwrap(), BigUint::from(70u32));
        assert!(f_frobenius(&p(&[1, 1]), 1).is_err());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(f_determinant(&sk(&[2, 2], &[1])).unwrap(), BigUint::from(2u32));
        assert_eq!(f_determinant(&sk(&[2, 2], &[])).unwrap(), BigUint::from(2u32));
        assert_eq!(f_determinant(&sk(&[3, 1], &[3, 1])).unwrap(), BigUint::one());
    }

    #[test]
    fn path_examples() {
        assert_eq!(f_paths(&sk(&[4, 1], &[1])), BigUint::from(4u32));
        assert_eq!(f_paths(&sk(&[2, 2], &[1])), BigUint::from(2u32));
        assert_eq!(f_paths(&sk(&[3, 3], &[])), BigUint::from(5u32));
        assert_eq!(f_paths(&sk(&[5, 5, 4, 2], &[3, 2])), BigUint::from(13860u32));
    }

    #[test]
    fn product_examples() {
        assert_eq!(f_product(&sk(&[2, 2], &[1])), ratio(3, 2));
        assert_eq!(f_product(&sk(&[4, 2], &[2, 1])), int(3));
        assert_eq!(f_product(&sk(&[4, 3, 1], &[])), int(70));
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_value(&sk(&[2, 2], &[1])), int(1));
        assert_eq!(g_value(&sk(&[4, 4], &[1, 1])), int(4));
        assert_eq!(g_value(&sk(&[4, 3, 1], &[])), int(70));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(balance_phi(&sk(&[2, 1], &[])), int(1));
        assert_eq!(balance_phi(&sk(&[4, 2], &[2, 1])), ratio(5, 3));
    }

    #[test]
    fn imbalance_examples() {
        assert_eq!(imbalance(&p(&[2, 1])).unwrap(), ratio(1, 2));
        assert_eq!(imbalance(&p(&[6])).unwrap(), int(1));
        assert!(matches!(imbalance(&p(&[1])), Err(Error::TooSmall(1))));
    }

    fn partition_strategy() -> impl Strategy<Value = Partition> {
        prop::collection::vec(0usize..6, 0..5).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn straight_methods_agree(l in partition_strategy()) {
            let s = SkewShape::straight(l.clone());
            let f = f_paths(&s);
            prop_assert_eq!(&f_hlf(&l).unwrap(), &f);
            prop_assert_eq!(&f_frobenius(&l, l.len()).unwrap(), &f);
            prop_assert_eq!(&f_determinant(&s).unwrap(), &f);
        }

        #[test]
        fn imbalance_of_conjugate(l in partition_strategy()) {
            prop_assume!(l.size() >= 2);
            let q = imbalance(&l).unwrap();
            let qc = imbalance(&l.conjugate()).unwrap();
            prop_assert_eq!(q.clone() + qc, int(1));
            let two = p(&[2]);
            if l.contains(&two) {
                let ratio_q = BigRational::new(f_of(&l, &two).into(), f_of(&l, &Partition::empty()).into());
                prop_assert_eq!(q, ratio_q);
            }
        }

        #[test]
        fn off_diagonal_hooks_sum_to_size_minus_rows(l in partition_strategy()) {
            let total: usize = (1..=l.len())
                .map(|j| Cell::new(j, j + 1))
                .filter(|&c| l.contains_cell(c))
                .map(|c| l.hook(c).unwrap())
                .sum();
            prop_assert_eq!(total, l.size() - l.len());
        }
    }
}
