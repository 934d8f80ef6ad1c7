//! The distributive lattice of order ideals between two partitions, with
//! path counts from the bottom and to the top.
//!
//! A standard filling of `outer/inner` is a saturated chain in this lattice,
//! so forward and backward path counts give every marginal of the uniform
//! tableau that depends on a single intermediate state.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::shapes::{Cell, SkewShape};

/// All `nu` (padded to `outer.len()`) with `inner <= nu <= outer`, graded by
/// size and lexicographically decreasing within a size.
pub(crate) fn enumerate_states(outer: &[usize], inner: &[usize]) -> Vec<Vec<usize>> {
    fn rec(i: usize, outer: &[usize], inner: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == outer.len() {
            out.push(cur.clone());
            return;
        }
        let cap = if i == 0 { outer[0] } else { outer[i].min(cur[i - 1]) };
        if cap < inner[i] {
            return;
        }
        for v in (inner[i]..=cap).rev() {
            cur.push(v);
            rec(i + 1, outer, inner, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, outer, inner, &mut Vec::with_capacity(outer.len()), &mut out);
    out.sort_by_key(|v| v.iter().sum::<usize>());
    out
}

fn up_moves<'a>(state: &'a [usize], outer: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    (0..state.len()).filter(move |&r| state[r] < outer[r] && (r == 0 || state[r - 1] > state[r]))
}

/// Number of standard fillings of `outer/inner` by a forward sweep over the
/// ideal lattice. `outer` and `inner` must have the same length.
pub(crate) fn count_paths(outer: &[usize], inner: &[usize]) -> BigUint {
    let states = enumerate_states(outer, inner);
    let index: HashMap<&[usize], usize> = states.iter().enumerate().map(|(k, s)| (s.as_slice(), k)).collect();
    let mut fw = vec![BigUint::zero(); states.len()];
    fw[0] = BigUint::one();
    let mut next = Vec::with_capacity(outer.len());
    for k in 0..states.len() {
        if fw[k].is_zero() {
            continue;
        }
        let w = fw[k].clone();
        for r in up_moves(&states[k], outer) {
            next.clear();
            next.extend_from_slice(&states[k]);
            next[r] += 1;
            let t = index[next.as_slice()];
            fw[t] += &w;
        }
    }
    fw.pop().unwrap_or_else(BigUint::one)
}

/// Ideal lattice of a skew shape with forward and backward path counts.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    outer: Vec<usize>,
    inner: Vec<usize>,
    states: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    up: Vec<Vec<(usize, usize)>>,
    forward: Vec<BigUint>,
    backward: Vec<BigUint>,
}

impl IdealLattice {
    pub fn new(shape: &SkewShape) -> Self {
        let outer = shape.outer_padded();
        let inner = shape.inner_padded();
        let states = enumerate_states(&outer, &inner);
        let index: HashMap<Vec<usize>, usize> = states.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();

        let mut up = Vec::with_capacity(states.len());
        for s in &states {
            let mut edges = Vec::new();
            for r in up_moves(s, &outer) {
                let mut t = s.clone();
                t[r] += 1;
                edges.push((r, index[&t]));
            }
            up.push(edges);
        }

        let n = states.len();
        let mut forward = vec![BigUint::zero(); n];
        forward[0] = BigUint::one();
        for k in 0..n {
            let w = forward[k].clone();
            for &(_, t) in &up[k] {
                forward[t] += &w;
            }
        }
        let mut backward = vec![BigUint::zero(); n];
        backward[n - 1] = BigUint::one();
        for k in (0..n).rev() {
            let mut acc = BigUint::zero();
            for &(_, t) in &up[k] {
                acc += &backward[t];
            }
            if !up[k].is_empty() {
                backward[k] = acc;
            }
        }
        IdealLattice { outer, inner, states, index, up, forward, backward }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, k: usize) -> &[usize] {
        &self.states[k]
    }

    pub fn index_of(&self, state: &[usize]) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// Successors of state `k` as `(row, target)` pairs, row 0-based.
    pub fn up(&self, k: usize) -> &[(usize, usize)] {
        &self.up[k]
    }

    /// Saturated chains from the bottom to state `k`.
    pub fn forward(&self, k: usize) -> &BigUint {
        &self.forward[k]
    }

    /// Saturated chains from state `k` to the top.
    pub fn backward(&self, k: usize) -> &BigUint {
        &self.backward[k]
    }

    /// Total number of standard fillings.
    pub fn total(&self) -> &BigUint {
        &self.forward[self.states.len() - 1]
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    /// Chains from bottom to top that never visit a state satisfying `hit`.
    pub fn count_avoiding(&self, hit: impl Fn(&[usize]) -> bool) -> BigUint {
        let n = self.states.len();
        let mut fw = vec![BigUint::zero(); n];
        if !hit(&self.states[0]) {
            fw[0] = BigUint::one();
        }
        for k in 0..n {
            if fw[k].is_zero() {
                continue;
            }
            let w = fw[k].clone();
            for &(_, t) in &self.up[k] {
                if !hit(&self.states[t]) {
                    fw[t] += &w;
                }
            }
        }
        fw.pop().unwrap_or_default()
    }

    /// Number of fillings in which `x` receives a smaller label than `y`.
    pub fn count_before(&self, x: Cell, y: Cell) -> BigUint {
        let (xr, yr) = (x.row - 1, y.row - 1);
        let mut acc = BigUint::zero();
        for k in 0..self.states.len() {
            let s = &self.states[k];
            if s[xr] < x.col || s[yr] + 1 != y.col {
                continue;
            }
            for &(r, t) in &self.up[k] {
                if r == yr {
                    acc += &self.forward[k] * &self.backward[t];
                }
            }
        }
        acc
    }

    /// Before-counts for every ordered pair of cells at once.
    ///
    /// For each cover `s -> s + y` the weight `fwd(s) * bwd(s + y)` is filed
    /// under `(y, row r, s_r)`; a suffix sum over `s_r` then yields the count
    /// for every `x` in row `r` simultaneously.
    pub fn pair_counts(&self) -> PairCounts {
        let d = self.outer.len();
        let mut offsets = Vec::with_capacity(d);
        let mut cells = Vec::new();
        for r in 0..d {
            offsets.push(cells.len());
            for j in self.inner[r] + 1..=self.outer[r] {
                cells.push(Cell::new(r + 1, j));
            }
        }
        let m = cells.len();
        let mut acc: Vec<Vec<Vec<BigUint>>> = (0..m)
            .map(|_| (0..d).map(|r| vec![BigUint::zero(); self.outer[r] + 1]).collect())
            .collect();
        for k in 0..self.states.len() {
            let s = &self.states[k];
            for &(r, t) in &self.up[k] {
                let y = offsets[r] + s[r] - self.inner[r];
                let w = &self.forward[k] * &self.backward[t];
                for rr in 0..d {
                    if s[rr] > self.inner[rr] {
                        acc[y][rr][s[rr]] += &w;
                    }
                }
            }
        }
        let mut before = vec![vec![BigUint::zero(); m]; m];
        for y in 0..m {
            for rr in 0..d {
                let mut suffix = BigUint::zero();
                for j in (self.inner[rr] + 1..=self.outer[rr]).rev() {
                    suffix += &acc[y][rr][j];
                    let x = offsets[rr] + j - self.inner[rr] - 1;
                    if x != y {
                        before[x][y] = suffix.clone();
                    }
                }
            }
        }
        PairCounts { cells, total: self.total().clone(), before }
    }
}

/// `before[x][y]` is the number of fillings with `L(x) < L(y)`.
#[derive(Debug, Clone)]
pub struct PairCounts {
    pub cells: Vec<Cell>,
    pub total: BigUint,
    pub before: Vec<Vec<BigUint>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_lattice_counts() {
        let lat = IdealLattice::new(&SkewShape::from_parts(&[2, 2], &[]));
        assert_eq!(lat.len(), 6);
        assert_eq!(*lat.total(), BigUint::from(2u32));
        assert_eq!(*lat.backward(0), BigUint::from(2u32));
    }

    #[test]
    fn pair_counts_are_complementary() {
        let lat = IdealLattice::new(&SkewShape::from_parts(&[4, 3, 1], &[1]));
        let pc = lat.pair_counts();
        for x in 0..pc.cells.len() {
            for y in 0..pc.cells.len() {
                if x != y {
                    assert_eq!(&pc.before[x][y] + &pc.before[y][x], pc.total);
                    assert_eq!(pc.before[x][y], lat.count_before(pc.cells[x], pc.cells[y]));
                }
            }
        }
    }

    #[test]
    fn forward_count_matches_lattice() {
        let s = SkewShape::from_parts(&[5, 5, 4, 2], &[3, 2]);
        let lat = IdealLattice::new(&s);
        assert_eq!(count_paths(&s.outer_padded(), &s.inner_padded()), *lat.total());
        assert_eq!(*lat.total(), BigUint::from(13860u32));
    }
}
