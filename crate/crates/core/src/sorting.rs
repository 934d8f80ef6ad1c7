//! Exact sorting probabilities of skew diagram posets.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{self, int, ratio};
use crate::count::{f_of, imbalance};
use crate::error::{Error, Result};
use crate::lattice::{IdealLattice, PairCounts};
use crate::shapes::{Cell, Partition, SkewShape};

fn frac(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

fn check_pair(s: &SkewShape, x: Cell, y: Cell) -> Result<()> {
    for c in [x, y] {
        if !s.contains_cell(c) {
            return Err(Error::CellOutsideShape(c));
        }
    }
    if x == y {
        return Err(Error::EqualCells(x));
    }
    Ok(())
}

/// `P[L(x) < L(y)]` for a uniformly random standard filling.
pub fn prob_before(s: &SkewShape, x: Cell, y: Cell) -> Result<BigRational> {
    check_pair(s, x, y)?;
    if x.precedes(&y) {
        return Ok(BigRational::one());
    }
    if y.precedes(&x) {
        return Ok(BigRational::zero());
    }
    let lat = IdealLattice::new(s);
    Ok(frac(&lat.count_before(x, y), lat.total()))
}

/// `|P[L(x) < L(y)] - P[L(y) < L(x)]|`.
pub fn delta_pair(s: &SkewShape, x: Cell, y: Cell) -> Result<BigRational> {
    let p = prob_before(s, x, y)?;
    Ok((p * int(2) - int(1)).abs())
}

/// Every pairwise probability of a shape, computed in one lattice sweep.
#[derive(Debug, Clone)]
pub struct PairTable {
    cells: Vec<Cell>,
    total: BigUint,
    before: Vec<Vec<BigUint>>,
}

impl PairTable {
    pub fn new(s: &SkewShape) -> Self {
        Self::from_counts(IdealLattice::new(s).pair_counts())
    }

    pub fn from_counts(pc: PairCounts) -> Self {
        PairTable { cells: pc.cells, total: pc.total, before: pc.before }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    fn index(&self, c: Cell) -> Option<usize> {
        self.cells.binary_search(&c).ok()
    }

    pub fn prob_before(&self, x: Cell, y: Cell) -> Option<BigRational> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        (i != j).then(|| frac(&self.before[i][j], &self.total))
    }

    pub fn delta_pair(&self, x: Cell, y: Cell) -> Option<BigRational> {
        self.prob_before(x, y).map(|p| (p * int(2) - int(1)).abs())
    }

    /// `(x, y, delta)` for every unordered incomparable pair, `x` before `y`
    /// in row-major order.
    pub fn incomparable_deltas(&self) -> Vec<(Cell, Cell, BigRational)> {
        let mut out = Vec::new();
        let two = BigInt::from(2);
        let tot = BigInt::from(self.total.clone());
        for i in 0..self.cells.len() {
            for j in i + 1..self.cells.len() {
                if self.cells[i].comparable(&self.cells[j]) {
                    continue;
                }
                let num = (BigInt::from(self.before[i][j].clone()) * &two - &tot).abs();
                out.push((self.cells[i], self.cells[j], BigRational::new(num, tot.clone())));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SortingReport {
    #[serde(with = "crate::serde_exact::rational")]
    pub delta: BigRational,
    pub witnesses: Vec<(Cell, Cell)>,
    /// Number of unordered pairs of cells, comparable ones included.
    pub pair_count: usize,
}

/// `delta(P) = min_{x != y} delta(P; x, y)`. Comparable pairs contribute 1;
/// a chain therefore has `delta = 1` and every pair as a witness.
pub fn delta_poset(s: &SkewShape) -> Result<SortingReport> {
    let n = s.size();
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let table = PairTable::new(s);
    Ok(report_from_table(&table))
}

pub fn report_from_table(table: &PairTable) -> SortingReport {
    let n = table.cells().len();
    let pair_count = n * (n - 1) / 2;
    let deltas = table.incomparable_deltas();
    let Some(best) = deltas.iter().map(|t| &t.2).min().cloned() else {
        let cells = table.cells();
        let witnesses = (0..n).flat_map(|i| (i + 1..n).map(move |j| (cells[i], cells[j]))).collect();
        return SortingReport { delta: BigRational::one(), witnesses, pair_count };
    };
    let witnesses = deltas.into_iter().filter(|t| t.2 == best).map(|t| (t.0, t.1)).collect();
    SortingReport { delta: best, witnesses, pair_count }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSequence {
    #[serde(with = "crate::serde_exact::rational_vec")]
    pub values: Vec<BigRational>,
}

/// `q_k = f(lambda/(2,1^{k-1})) / f(lambda)` for `k = 1..len(lambda)`.
pub fn q_sequence(p: &Partition) -> Result<QSequence> {
    if p.part(0) < 2 {
        return Err(Error::SingleColumnOrRow);
    }
    let f = f_of(p, &Partition::empty());
    let values = (1..=p.len())
        .map(|k| {
            let mut hook = vec![2];
            hook.extend(std::iter::repeat_n(1, k - 1));
            let mu = Partition::new(hook).expect("hook shape");
            frac(&f_of(p, &mu), &f)
        })
        .collect();
    Ok(QSequence { values })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WarmupBounds {
    #[serde(with = "crate::serde_exact::rational")]
    pub q: BigRational,
    #[serde(with = "crate::serde_exact::rational")]
    pub thm_bound: BigRational,
    #[serde(with = "crate::serde_exact::rational")]
    pub m_bound: BigRational,
}

/// `min{q, 1-q, |1-2q|}` and `(mn + (m-1)(m-2))/(n(n-1))` with `m = n - lambda_1`.
pub fn warmup_bounds(p: &Partition) -> Result<WarmupBounds> {
    let q = imbalance(p)?;
    let one = BigRational::one();
    let thm_bound = arith::min(arith::min(q.clone(), &one - &q), (&one - &q * int(2)).abs());
    let n = p.size() as i64;
    let m = n - p.part(0) as i64;
    let m_bound = ratio(m * n + (m - 1) * (m - 2), n * (n - 1));
    Ok(WarmupBounds { q, thm_bound, m_bound })
}

fn check_rows(s: &SkewShape) -> Result<()> {
    if s.d() < 2 {
        return Err(Error::OutOfRange("the shape needs at least two rows".into()));
    }
    Ok(())
}

fn check_a(s: &SkewShape, a: usize) -> Result<()> {
    let (mu1, lam1) = (s.inner().part(0), s.outer().part(0));
    if a < mu1 || a > lam1 {
        return Err(Error::OutOfRange(format!("a={a} must lie in [{mu1},{lam1}]")));
    }
    Ok(())
}

fn check_b(s: &SkewShape, b: usize) -> Result<()> {
    let (mu2, lam2) = (s.inner().part(1), s.outer().part(1));
    if b < mu2 || b > lam2 {
        return Err(Error::OutOfRange(format!("b={b} must lie in [{mu2},{lam2}]")));
    }
    Ok(())
}

/// Probability that the tableau walk visits a state with first row `a` and
/// second row `b`. Computed by complement: paths avoiding every such state.
pub fn event_prob(s: &SkewShape, a: usize, b: usize) -> Result<BigRational> {
    check_rows(s)?;
    check_a(s, a)?;
    check_b(s, b)?;
    let lat = IdealLattice::new(s);
    Ok(event_prob_in(&lat, a, b))
}

pub(crate) fn event_prob_in(lat: &IdealLattice, a: usize, b: usize) -> BigRational {
    let avoid = lat.count_avoiding(|v| v[0] == a && v[1] == b);
    BigRational::one() - frac(&avoid, lat.total())
}

/// Probability that the second row has exactly `k` cells at the moment the
/// cell `(1, a)` is added. These events are disjoint in `k`, and their sum
/// over `k < b` is `P[L(1,a) < L(2,b)]`.
pub fn entry_prob(s: &SkewShape, a: usize, k: usize) -> Result<BigRational> {
    check_rows(s)?;
    if a <= s.inner().part(0) || a > s.outer().part(0) {
        return Err(Error::OutOfRange(format!("(1,{a}) is not a cell of the shape")));
    }
    let lat = IdealLattice::new(s);
    let mut acc = BigUint::zero();
    for i in 0..lat.len() {
        let v = lat.state(i);
        if v[0] + 1 != a || v[1] != k {
            continue;
        }
        for &(r, t) in lat.up(i) {
            if r == 0 {
                acc += lat.forward(i) * lat.backward(t);
            }
        }
    }
    Ok(frac(&acc, lat.total()))
}

/// Probability that the walk visits some state with first row `a` and
/// second row below `b`.
pub fn union_visit_prob(s: &SkewShape, a: usize, b: usize) -> Result<BigRational> {
    check_rows(s)?;
    let lat = IdealLattice::new(s);
    let avoid = lat.count_avoiding(|v| v[0] == a && v[1] < b);
    Ok(BigRational::one() - frac(&avoid, lat.total()))
}

/// `phi(a) = max_{mu_2 < k <= lambda_2} P[walk visits (a, k)]`.
pub fn phi_of_a(s: &SkewShape, a: usize) -> Result<BigRational> {
    check_rows(s)?;
    check_a(s, a)?;
    let lat = IdealLattice::new(s);
    Ok(phi_in(&lat, s, a))
}

pub(crate) fn phi_in(lat: &IdealLattice, s: &SkewShape, a: usize) -> BigRational {
    (s.inner().part(1) + 1..=s.outer().part(1))
        .map(|k| event_prob_in(lat, a, k))
        .max()
        .unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sk(o: &[usize], i: &[usize]) -> SkewShape {
        SkewShape::from_parts(o, i)
    }

    const C12: Cell = Cell::new(1, 2);
    const C21: Cell = Cell::new(2, 1);

    #[test]
    fn prob_examples() {
        assert_eq!(prob_before(&sk(&[2, 2], &[]), C12, C21).unwrap(), ratio(1, 2));
        assert_eq!(prob_before(&sk(&[3, 3], &[]), C12, C21).unwrap(), ratio(3, 5));
        assert_eq!(prob_before(&sk(&[3, 1], &[1]), C21, C12).unwrap(), ratio(1, 3));
        assert_eq!(prob_before(&sk(&[3, 3], &[]), Cell::new(1, 1), Cell::new(2, 3)).unwrap(), int(1));
        assert!(matches!(prob_before(&sk(&[3, 3], &[]), C12, C12), Err(Error::EqualCells(_))));
        assert!(matches!(
            prob_before(&sk(&[3, 3], &[1]), Cell::new(1, 1), C12),
            Err(Error::CellOutsideShape(_))
        ));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_pair(&sk(&[3, 3], &[]), C12, C21).unwrap(), ratio(1, 5));
        assert_eq!(delta_pair(&sk(&[3, 3], &[]), Cell::new(1, 1), C12).unwrap(), int(1));
        assert_eq!(delta_pair(&sk(&[2, 2], &[]), C12, C21).unwrap(), int(0));

        let r = delta_poset(&sk(&[3, 3], &[])).unwrap();
        assert_eq!(r.delta, ratio(1, 5));
        assert!(r.witnesses.contains(&(C12, C21)));
        assert_eq!(delta_poset(&sk(&[4, 1], &[1])).unwrap().delta, int(0));
        assert_eq!(delta_poset(&sk(&[3, 1], &[1])).unwrap().delta, ratio(1, 3));
        assert!(matches!(delta_poset(&sk(&[1], &[])), Err(Error::TooSmall(1))));
    }

    #[test]
    fn chain_has_delta_one() {
        let r = delta_poset(&sk(&[4], &[])).unwrap();
        assert_eq!(r.delta, int(1));
        assert_eq!(r.witnesses.len(), 6);
        assert_eq!(r.pair_count, 6);
    }

    #[test]
    fn q_examples() {
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(q_sequence(&p(&[2, 2])).unwrap().values, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(q_sequence(&p(&[2, 1])).unwrap().values, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(q_sequence(&p(&[5])).unwrap().values, vec![int(1)]);
        assert!(matches!(q_sequence(&p(&[1, 1, 1])), Err(Error::SingleColumnOrRow)));
    }

    #[test]
    fn warmup_examples() {
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        let w = warmup_bounds(&p(&[2, 1])).unwrap();
        assert_eq!(w.q, ratio(1, 2));
        assert_eq!(w.thm_bound, int(0));
        assert_eq!(warmup_bounds(&p(&[4])).unwrap().thm_bound, int(0));
        assert_eq!(warmup_bounds(&p(&[3, 2])).unwrap().m_bound, ratio(1, 2));
    }

    #[test]
    fn event_examples() {
        let s = sk(&[2, 2], &[]);
        assert_eq!(event_prob(&s, 1, 1).unwrap(), ratio(1, 2));
        assert_eq!(event_prob(&s, 2, 2).unwrap(), int(1));
        assert_eq!(phi_of_a(&s, 1).unwrap(), ratio(1, 2));
        assert!(event_prob(&sk(&[4], &[]), 1, 1).is_err());
        assert!(event_prob(&s, 3, 1).is_err());
    }

    #[test]
    fn before_decomposes_over_entry_states() {
        let s = sk(&[4, 3], &[]);
        for a in 1..=4 {
            for b in 1..=3 {
                let before = prob_before(&s, Cell::new(1, a), Cell::new(2, b)).unwrap();
                let entries: BigRational = (0..b).map(|k| entry_prob(&s, a, k).unwrap()).sum();
                assert_eq!(before, entries);
                assert_eq!(before, union_visit_prob(&s, a, b).unwrap());
            }
        }
        // Visit events overlap, so summing them overshoots.
        let visits: BigRational = (0..2).map(|k| event_prob(&s, 2, k).unwrap()).sum();
        assert!(visits > prob_before(&s, Cell::new(1, 2), Cell::new(2, 2)).unwrap());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

        #[test]
        fn complementary_pairs_sum_to_one(s in crate::shapes::strategies::skew(5, 4)) {
            let table = PairTable::new(&s);
            for (x, y, _) in table.incomparable_deltas() {
                let sum = table.prob_before(x, y).unwrap() + table.prob_before(y, x).unwrap();
                proptest::prop_assert_eq!(sum, int(1));
            }
        }

        #[test]
        fn agrees_with_brute_force(s in crate::shapes::strategies::skew(4, 4)) {
            proptest::prop_assume!(s.size() >= 2);
            let cells = s.cells();
            let (x, y) = (cells[0], cells[cells.len() - 1]);
            proptest::prop_assert_eq!(prob_before(&s, y, x).unwrap(), crate::oracle::prob_before(&s, y, x).unwrap());
            let rep = delta_poset(&s).unwrap();
            let brute = crate::oracle::delta(&s).unwrap().unwrap_or_else(|| int(1));
            proptest::prop_assert_eq!(rep.delta, brute);
        }

        #[test]
        fn conjugate_has_same_delta(l in crate::shapes::strategies::partition(5, 4)) {
            proptest::prop_assume!(l.size() >= 2);
            let a = delta_poset(&SkewShape::straight(l.clone())).unwrap().delta;
            let b = delta_poset(&SkewShape::straight(l.conjugate())).unwrap().delta;
            proptest::prop_assert_eq!(a, b);
        }
    }
}
