//! Schur polynomial evaluation and the upper bounds on `f/F` obtained from
//! it: the Schur-ratio bound, interval decompositions, `N(l,B)`, `K_B` and
//! the interval upper bound with its explicit constant.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{self, factorial, int, ratio};
use crate::error::{Error, Result};
use crate::shapes::{shifted_parts, Partition, SkewShape};

/// Point `x_1 >= ... >= x_d > 0` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationPoint(Vec<BigRational>);

impl EvaluationPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_positive()) || coords.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadEvaluationPoint);
        }
        Ok(EvaluationPoint(coords))
    }

    pub fn from_integers(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

fn shifted_mu(mu: &Partition, d: usize) -> Vec<usize> {
    (0..d).map(|i| mu.part(i) + d - 1 - i).collect()
}

/// `s_mu(x)` by the bialternant when coordinates are distinct, otherwise by
/// the branching rule.
pub fn schur_eval(mu: &Partition, x: &EvaluationPoint) -> Result<BigRational> {
    if mu.len() > x.dim() {
        return Err(Error::MuTooLong { len: mu.len(), d: x.dim() });
    }
    Ok(schur_any(mu, x.coords()))
}

/// Evaluation that tolerates zero coordinates; `x` is assumed to have at
/// least `len(mu)` entries.
pub(crate) fn schur_any(mu: &Partition, x: &[BigRational]) -> BigRational {
    let distinct = x.windows(2).all(|w| w[0] != w[1]) && {
        let mut v: Vec<&BigRational> = x.iter().collect();
        v.sort();
        v.windows(2).all(|w| w[0] != w[1])
    };
    if distinct {
        schur_bialternant(mu, x)
    } else {
        schur_branching(mu, x)
    }
}

/// `det(x_j^{m_i}) / prod_{i<j}(x_i - x_j)`; requires distinct coordinates.
pub fn schur_bialternant(mu: &Partition, x: &[BigRational]) -> BigRational {
    let d = x.len();
    let m = shifted_mu(mu, d);
    let matrix = (0..d)
        .map(|i| (0..d).map(|j| arith::pow(&x[j], m[i])).collect())
        .collect();
    let mut vandermonde = BigRational::one();
    for i in 0..d {
        for j in i + 1..d {
            vandermonde *= &x[i] - &x[j];
        }
    }
    arith::determinant(matrix) / vandermonde
}

/// Sum over semistandard tableaux, organised by the branching rule
/// `s_mu(x_1..x_k) = sum_{nu interlacing mu} s_nu(x_1..x_{k-1}) x_k^{|mu|-|nu|}`.
pub fn schur_branching(mu: &Partition, x: &[BigRational]) -> BigRational {
    fn rec(
        mu: &[usize],
        k: usize,
        x: &[BigRational],
        memo: &mut HashMap<(Vec<usize>, usize), BigRational>,
    ) -> BigRational {
        let len = mu.iter().take_while(|&&p| p > 0).count();
        if len > k {
            return BigRational::zero();
        }
        if k == 0 || len == 0 {
            return BigRational::one();
        }
        let key = (mu[..len].to_vec(), k);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let size: usize = mu.iter().sum();
        let mut total = BigRational::zero();
        // nu_i ranges over [mu_{i+1}, mu_i] for i < k-1 rows.
        let rows = k - 1;
        let mut nu = vec![0usize; rows];
        fn fill(
            i: usize,
            mu: &[usize],
            nu: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if i == nu.len() {
                out.push(nu.clone());
                return;
            }
            let hi = mu.get(i).copied().unwrap_or(0);
            let lo = mu.get(i + 1).copied().unwrap_or(0);
            for v in lo..=hi {
                nu[i] = v;
                fill(i + 1, mu, nu, out);
            }
        }
        let mut padded = mu.to_vec();
        padded.resize(k.max(mu.len()), 0);
        if padded[k..].iter().any(|&p| p > 0) {
            return BigRational::zero();
        }
        let mut choices = Vec::new();
        fill(0, &padded, &mut nu, &mut choices);
        for nu in choices {
            let nsize: usize = nu.iter().sum();
            let sub = rec(&nu, k - 1, x, memo);
            if sub.is_zero() {
                continue;
            }
            total += sub * arith::pow(&x[k - 1], size - nsize);
        }
        memo.insert(key, total.clone());
        total
    }
    rec(mu.parts(), x.len(), x, &mut HashMap::new())
}

/// `s_mu(1^d) = prod_{i<j} (m_i - m_j)/(j - i)`.
pub fn schur_at_ones(mu: &Partition, d: usize) -> Result<BigUint> {
    if mu.len() > d {
        return Err(Error::MuTooLong { len: mu.len(), d });
    }
    let m = shifted_mu(mu, d);
    let mut r = BigRational::one();
    for i in 0..d {
        for j in i + 1..d {
            r *= ratio((m[i] - m[j]) as i64, (j - i) as i64);
        }
    }
    arith::to_count(&r, "hook content product")
}

/// `s_mu(l_1..l_d) / prod l_i^{mu_i}` with `l_i = lambda_i + d - i`.
pub fn schur_ratio_bound(s: &SkewShape) -> BigRational {
    let d = s.d();
    let l: Vec<BigRational> = shifted_parts(s.outer(), d)
        .expect("d >= len(lambda)")
        .into_iter()
        .map(|v| int(v as i64))
        .collect();
    let mut denom = BigRational::one();
    for (i, li) in l.iter().enumerate() {
        denom *= arith::pow(li, s.inner().part(i));
    }
    schur_any(s.inner(), &l) / denom
}

/// Consecutive blocks `B_k = {b_{k-1}+1, ..., b_k}` of `{1..d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalDecomposition {
    ends: Vec<usize>,
}

impl IntervalDecomposition {
    pub fn new(ends: Vec<usize>, d: usize) -> Result<Self> {
        if ends.last() != Some(&d) && !(d == 0 && ends.is_empty()) {
            return Err(Error::BadIntervals(format!("last block must end at d={d}")));
        }
        if ends.first() == Some(&0) || ends.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadIntervals("block ends must be strictly increasing and positive".into()));
        }
        Ok(IntervalDecomposition { ends })
    }

    pub fn singletons(d: usize) -> Self {
        IntervalDecomposition { ends: (1..=d).collect() }
    }

    pub fn whole(d: usize) -> Self {
        IntervalDecomposition { ends: if d == 0 { vec![] } else { vec![d] } }
    }

    /// Greedy blocks: start a new block whenever `keep(first, i)` fails,
    /// where `first` is the first index of the current block (1-based).
    pub fn greedy(d: usize, keep: impl Fn(usize, usize) -> bool) -> Self {
        let mut ends = Vec::new();
        let mut start = 1;
        for i in 2..=d {
            if !keep(start, i) {
                ends.push(i - 1);
                start = i;
            }
        }
        if d > 0 {
            ends.push(d);
        }
        IntervalDecomposition { ends }
    }

    pub fn ends(&self) -> &[usize] {
        &self.ends
    }

    pub fn d(&self) -> usize {
        self.ends.last().copied().unwrap_or(0)
    }

    /// Block index of the 1-based position `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.ends.partition_point(|&e| e < i)
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of(i) == self.block_of(j)
    }
}

/// `max_{i<j, different blocks} l_i/(l_i - l_j)`, or 0 when every pair lies
/// in one block.
pub fn n_value(l: &[usize], b: &IntervalDecomposition) -> BigRational {
    let mut best = BigRational::zero();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            if !b.same_block(i + 1, j + 1) {
                best = arith::max(best, ratio(l[i] as i64, (l[i] - l[j]) as i64));
            }
        }
    }
    best
}

/// `d! * max{1, d(d-1)^2/e}` with `e` replaced by a rational lower bound.
pub fn c_d(d: usize) -> BigRational {
    let fact = arith::from_biguint(&factorial(d));
    let inner = int((d * (d.saturating_sub(1)).pow(2)) as i64) / arith::e_lower();
    fact * arith::max(BigRational::one(), inner)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalBound {
    #[serde(with = "crate::serde_exact::rational")]
    pub bound: BigRational,
    #[serde(with = "crate::serde_exact::rational")]
    pub constant: BigRational,
    #[serde(with = "crate::serde_exact::rational")]
    pub same_block_factor: BigRational,
    #[serde(with = "crate::serde_exact::rational")]
    pub cross_block_factor: BigRational,
}

/// `C_d * prod_{same} (m_i - m_j + N) * prod_{cross} l_i/(l_i - l_j)`.
pub fn interval_upper_bound(s: &SkewShape, b: &IntervalDecomposition) -> IntervalBound {
    let d = s.d();
    let l = shifted_parts(s.outer(), d).expect("d >= len(lambda)");
    let m = shifted_mu(s.inner(), d);
    let n = n_value(&l, b);
    let mut same = BigRational::one();
    let mut cross = BigRational::one();
    for i in 0..d {
        for j in i + 1..d {
            if b.same_block(i + 1, j + 1) {
                same *= int((m[i] - m[j]) as i64) + &n;
            } else {
                cross *= ratio(l[i] as i64, (l[i] - l[j]) as i64);
            }
        }
    }
    let constant = c_d(d);
    IntervalBound { bound: &constant * &same * &cross, constant, same_block_factor: same, cross_block_factor: cross }
}

/// `prod_{same} (mu_i - mu_j + j - i) * prod_{cross} (lambda_i + d - i)/(lambda_i - lambda_j + j - i)`.
pub fn k_value(s: &SkewShape, b: &IntervalDecomposition) -> BigRational {
    let d = s.d();
    let l = s.outer_padded();
    let m = s.inner_padded();
    let mut r = BigRational::one();
    for i in 0..d {
        for j in i + 1..d {
            if b.same_block(i + 1, j + 1) {
                r *= int((m[i] - m[j] + j - i) as i64);
            } else {
                r *= ratio((l[i] + d - 1 - i) as i64, (l[i] - l[j] + j - i) as i64);
            }
        }
    }
    r
}

/// Both sides of `det M <= x^mu prod (m_i - m_j)(x_i - x_j)/(j - i)`, where
/// `M = (x_j^{m_i})`. Returns `(det M, upper)`.
pub fn determinant_sides(mu: &Partition, x: &[BigRational]) -> (BigRational, BigRational) {
    let d = x.len();
    let m = shifted_mu(mu, d);
    let matrix = (0..d)
        .map(|i| (0..d).map(|j| arith::pow(&x[j], m[i])).collect())
        .collect();
    let det = arith::determinant(matrix);
    let mut upper = BigRational::one();
    for i in 0..d {
        upper *= arith::pow(&x[i], mu.part(i));
        for j in i + 1..d {
            upper *= int((m[i] - m[j]) as i64) * (&x[i] - &x[j]) / int((j - i) as i64);
        }
    }
    (det, upper)
}

/// Right side of the permutation-sum bound on `s_mu(x)` for a decomposition
/// `b`; needs `x_i > x_j` for every cross-block pair.
pub fn permutation_sum_bound(mu: &Partition, x: &[BigRational], b: &IntervalDecomposition) -> BigRational {
    let d = x.len();
    let m = shifted_mu(mu, d);
    let mut cross = BigRational::one();
    for i in 0..d {
        for j in i + 1..d {
            if !b.same_block(i + 1, j + 1) {
                cross *= &x[i] / (&x[i] - &x[j]);
            }
        }
    }
    let mut total = BigRational::zero();
    for sigma in permutations(d) {
        let mut term = BigRational::one();
        for i in 0..d {
            let e = m[sigma[i]] as i64 - (d - 1 - i) as i64;
            term *= pow_signed(&x[i], e);
        }
        for i in 0..d {
            for j in i + 1..d {
                if b.same_block(i + 1, j + 1) {
                    let diff = (m[sigma[i]] as i64 - m[sigma[j]] as i64).abs();
                    term *= ratio(diff, (j - i) as i64);
                }
            }
        }
        total += term;
    }
    total * cross
}

fn pow_signed(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        arith::pow(x, e as usize)
    } else {
        arith::pow(&x.recip(), (-e) as usize)
    }
}

/// All permutations of `0..d` in lexicographic order.
pub(crate) fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..d).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Continuous balance `prod_{i<j} min{mu_i - mu_j + j - i, x_i/(x_i - x_j)}`.
pub fn continuous_phi(mu: &Partition, x: &[BigRational]) -> BigRational {
    let d = x.len();
    let mut r = BigRational::one();
    for i in 0..d {
        for j in i + 1..d {
            let a = int((mu.part(i) + j - i) as i64 - mu.part(j) as i64);
            let diff = &x[i] - &x[j];
            let v = if diff.is_zero() { a } else { arith::min(a, &x[i] / diff) };
            r *= v;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn xs(v: &[i64]) -> EvaluationPoint {
        EvaluationPoint::from_integers(v).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(schur_eval(&p(&[1]), &xs(&[2, 1])).unwrap(), int(3));
        assert_eq!(schur_eval(&p(&[2, 1]), &xs(&[1, 1])).unwrap(), int(2));
        assert_eq!(schur_eval(&p(&[2]), &xs(&[2, 1])).unwrap(), int(7));
        assert!(matches!(schur_eval(&p(&[1, 1, 1]), &xs(&[2, 1])), Err(Error::MuTooLong { .. })));
        assert!(EvaluationPoint::from_integers(&[1, 2]).is_err());
    }

    #[test]
    fn bialternant_matches_branching() {
        let x = xs(&[7, 4, 3, 1]);
        for mu in [p(&[3, 2, 1]), p(&[4]), p(&[2, 2, 2, 1]), p(&[])] {
            assert_eq!(schur_bialternant(&mu, x.coords()), schur_branching(&mu, x.coords()));
        }
    }

    #[test]
    fn at_ones_examples() {
        assert_eq!(schur_at_ones(&p(&[2, 1]), 2).unwrap(), BigUint::from(2u32));
        assert_eq!(schur_at_ones(&p(&[]), 3).unwrap(), BigUint::one());
        assert_eq!(schur_at_ones(&p(&[1]), 3).unwrap(), BigUint::from(3u32));
        for d in 1..=4 {
            let ones = xs(&vec![1; d]);
            for mu in [p(&[2, 1]), p(&[3, 1, 1]), p(&[2, 2])] {
                if mu.len() <= d {
                    assert_eq!(
                        schur_eval(&mu, &ones).unwrap(),
                        arith::from_biguint(&schur_at_ones(&mu, d).unwrap())
                    );
                }
            }
        }
    }

    #[test]
    fn ratio_bound_examples() {
        assert_eq!(schur_ratio_bound(&SkewShape::from_parts(&[4, 3], &[])), int(1));
        assert_eq!(schur_ratio_bound(&SkewShape::from_parts(&[2, 2], &[1])), ratio(5, 3));
        assert_eq!(schur_ratio_bound(&SkewShape::from_parts(&[3, 3], &[1])), ratio(7, 4));
    }

    #[test]
    fn n_value_examples() {
        assert_eq!(n_value(&[5, 2], &IntervalDecomposition::singletons(2)), ratio(5, 3));
        assert_eq!(n_value(&[5, 2], &IntervalDecomposition::whole(2)), int(0));
        let b = IntervalDecomposition::new(vec![2, 3], 3).unwrap();
        assert_eq!(n_value(&[6, 5, 1], &b), ratio(5, 4));
    }

    #[test]
    fn interval_bound_examples() {
        let s = SkewShape::from_parts(&[4, 2], &[2, 1]);
        let ib = interval_upper_bound(&s, &IntervalDecomposition::singletons(2));
        assert_eq!(ib.constant, int(2));
        assert_eq!(ib.bound, ratio(10, 3));
        let s = SkewShape::from_parts(&[3, 3], &[1]);
        let ib = interval_upper_bound(&s, &IntervalDecomposition::whole(2));
        assert_eq!(ib.bound, int(2) * int(2));
        assert_eq!(c_d(3), int(6) * int(12) / arith::e_lower());
    }

    #[test]
    fn k_value_examples() {
        let s = SkewShape::from_parts(&[4, 2], &[2, 1]);
        assert_eq!(k_value(&s, &IntervalDecomposition::singletons(2)), ratio(5, 3));
        let s = SkewShape::from_parts(&[3, 3], &[1]);
        assert_eq!(k_value(&s, &IntervalDecomposition::whole(2)), int(2));
    }

    #[test]
    fn decomposition_lookup() {
        let b = IntervalDecomposition::new(vec![2, 5], 5).unwrap();
        assert!(b.same_block(1, 2));
        assert!(!b.same_block(2, 3));
        assert!(b.same_block(3, 5));
        assert!(IntervalDecomposition::new(vec![2, 2, 5], 5).is_err());
        assert!(IntervalDecomposition::new(vec![2, 4], 5).is_err());
    }

    #[test]
    fn permutations_of_three() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    proptest::proptest! {
        #[test]
        fn evaluation_routes_agree(mu in crate::shapes::strategies::partition(4, 3), mut x in proptest::collection::vec(1i64..9, 3)) {
            x.sort_unstable_by(|a, b| b.cmp(a));
            let pt: Vec<BigRational> = x.iter().map(|&v| int(v)).collect();
            let branching = schur_branching(&mu, &pt);
            if x.windows(2).all(|w| w[0] > w[1]) {
                proptest::prop_assert_eq!(schur_bialternant(&mu, &pt), branching.clone());
            }
            proptest::prop_assert_eq!(schur_eval(&mu, &xs(&x)).unwrap(), branching);
        }

        #[test]
        fn value_at_ones_is_the_tableau_count(mu in crate::shapes::strategies::partition(4, 4), extra in 0usize..2) {
            let d = mu.len() + extra;
            let ones = vec![1i64; d];
            let v = schur_eval(&mu, &xs(&ones)).unwrap();
            proptest::prop_assert_eq!(v, arith::from_biguint(&schur_at_ones(&mu, d).unwrap()));
        }

        #[test]
        fn hook_ratio_bounds_hold(s in crate::shapes::strategies::skew(5, 3)) {
            let r = arith::from_biguint(&crate::count::f_paths(&s)) / crate::count::f_product(&s);
            proptest::prop_assert!(r >= int(1));
            proptest::prop_assert!(r <= schur_ratio_bound(&s));
            proptest::prop_assert!(r <= interval_upper_bound(&s, &IntervalDecomposition::singletons(s.d())).bound);
        }
    }
}
