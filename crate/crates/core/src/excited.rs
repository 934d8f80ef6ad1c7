//! Excited diagrams, flagged tableaux, and the two forms of the skew hook
//! length formula built on them.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{exact_div, factorial};
use crate::error::Result;
use crate::shapes::{Cell, Partition, SkewShape};

/// A placement of the cells of `mu` inside `lambda`, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExcitedDiagram {
    cells: Vec<Cell>,
}

impl ExcitedDiagram {
    pub fn new(mut cells: Vec<Cell>) -> Self {
        cells.sort();
        ExcitedDiagram { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }
}

/// Semistandard filling of `mu` with the row flags used by the skew hook
/// length formula. `entries[i][j]` is the value in cell `(i+1, j+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FlaggedTableau {
    entries: Vec<Vec<usize>>,
}

impl FlaggedTableau {
    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn get(&self, c: Cell) -> Option<usize> {
        self.entries.get(c.row - 1)?.get(c.col - 1).copied()
    }
}

/// Calls `visit` on every flagged tableau in lexicographic order of the
/// row-major entry sequence.
pub fn for_each_flagged(s: &SkewShape, mut visit: impl FnMut(&FlaggedTableau)) {
    let mu = s.inner();
    let lam = s.outer();
    let d = s.d();
    let cells: Vec<Cell> = mu.cells().collect();
    let mut t = FlaggedTableau {
        entries: mu.parts().iter().map(|&p| vec![0; p]).collect(),
    };

    fn rec(
        k: usize,
        cells: &[Cell],
        lam: &Partition,
        d: usize,
        t: &mut FlaggedTableau,
        visit: &mut dyn FnMut(&FlaggedTableau),
    ) {
        if k == cells.len() {
            visit(t);
            return;
        }
        let Cell { row: i, col: j } = cells[k];
        let mut lo = i;
        if j > 1 {
            lo = lo.max(t.entries[i - 1][j - 2]);
        }
        if i > 1 {
            lo = lo.max(t.entries[i - 2][j - 1] + 1);
        }
        for v in lo..=d {
            // lambda_v - v is strictly decreasing in v, so the flag fails for
            // every larger v once it fails here.
            if j + v > lam.part(v - 1) + i {
                break;
            }
            t.entries[i - 1][j - 1] = v;
            rec(k + 1, cells, lam, d, t, visit);
        }
    }
    rec(0, &cells, lam, d, &mut t, &mut visit);
}

pub fn flagged_tableaux(s: &SkewShape) -> Vec<FlaggedTableau> {
    let mut out = Vec::new();
    for_each_flagged(s, |t| out.push(t.clone()));
    out
}

/// Moves cell `(i,j)` of `mu` to `(T(i,j), j + T(i,j) - i)`.
pub fn flagged_to_excited(t: &FlaggedTableau) -> ExcitedDiagram {
    let mut cells = Vec::new();
    for (i, row) in t.entries.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            cells.push(Cell::new(v, j + 1 + v - (i + 1)));
        }
    }
    ExcitedDiagram::new(cells)
}

/// Closure of `mu` under excited moves, in breadth-first discovery order.
pub fn excited_diagrams_bfs(s: &SkewShape) -> Vec<ExcitedDiagram> {
    let lam = s.outer();
    let start: BTreeSet<Cell> = s.inner().cells().collect();
    let mut seen: HashSet<BTreeSet<Cell>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(d) = queue.pop_front() {
        for &c in &d {
            let down = Cell::new(c.row + 1, c.col);
            let right = Cell::new(c.row, c.col + 1);
            let diag = Cell::new(c.row + 1, c.col + 1);
            if d.contains(&down) || d.contains(&right) || d.contains(&diag) || !lam.contains_cell(diag) {
                continue;
            }
            let mut next = d.clone();
            next.remove(&c);
            next.insert(diag);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(ExcitedDiagram::new(d.into_iter().collect()));
    }
    out
}

/// Skew hook length formula summed over excited diagrams.
pub fn f_nhlf(s: &SkewShape) -> Result<BigUint> {
    let hooks = s.outer().hooks();
    let mut sum = BigUint::zero();
    for t in flagged_tableaux(s) {
        let d = flagged_to_excited(&t);
        sum += d
            .cells()
            .iter()
            .fold(BigUint::one(), |acc, c| acc * hooks[c.row - 1][c.col - 1] as u64);
    }
    finish(s, &hooks, sum, "excited diagram formula")
}

/// Flagged form: `sum_T prod_{(i,j) in mu} h(T(i,j), j + T(i,j) - i)`.
pub fn f_nhlf_flagged(s: &SkewShape) -> Result<BigUint> {
    let hooks = s.outer().hooks();
    let mut sum = BigUint::zero();
    for_each_flagged(s, |t| {
        let mut term = BigUint::one();
        for (i, row) in t.entries().iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                term *= hooks[v - 1][j + v - i - 1] as u64;
            }
        }
        sum += term;
    });
    finish(s, &hooks, sum, "flagged tableau formula")
}

fn finish(s: &SkewShape, hooks: &[Vec<usize>], sum: BigUint, what: &'static str) -> Result<BigUint> {
    let all = hooks.iter().flatten().fold(BigUint::one(), |acc, &h| acc * h as u64);
    exact_div(&(factorial(s.size()) * sum), &all, what)
}

pub fn excited_count(s: &SkewShape) -> BigUint {
    let mut n = BigUint::zero();
    for_each_flagged(s, |_| n += 1u32);
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sk(o: &[usize], i: &[usize]) -> SkewShape {
        SkewShape::from_parts(o, i)
    }

    #[test]
    fn flagged_examples() {
        let t = flagged_tableaux(&sk(&[2, 2], &[2]));
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].entries(), &[vec![1, 1]]);
        let t = flagged_tableaux(&sk(&[3, 3], &[1]));
        assert_eq!(t.iter().map(|t| t.entries()[0][0]).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(flagged_tableaux(&sk(&[3, 1], &[])).len(), 1);
    }

    #[test]
    fn excited_examples() {
        let t = &flagged_tableaux(&sk(&[3, 3], &[1]))[1];
        assert_eq!(flagged_to_excited(t).cells(), &[Cell::new(2, 2)]);
        let bfs = excited_diagrams_bfs(&sk(&[3, 3], &[1]));
        assert_eq!(bfs.len(), 2);
        assert_eq!(bfs[0].cells(), &[Cell::new(1, 1)]);
        assert_eq!(excited_diagrams_bfs(&sk(&[2, 2], &[2])).len(), 1);
        assert_eq!(excited_diagrams_bfs(&sk(&[4, 3], &[])).len(), 1);
    }

    #[test]
    fn figure_shape_has_a_diagram_through_five_three() {
        let s = sk(&[5, 5, 5, 4, 4, 2], &[2, 1, 1]);
        let all = excited_diagrams_bfs(&s);
        assert!(all.iter().any(|d| d.contains(Cell::new(5, 3))));
        let mut from_flags: Vec<_> = flagged_tableaux(&s).iter().map(flagged_to_excited).collect();
        let mut bfs = all.clone();
        from_flags.sort();
        bfs.sort();
        assert_eq!(from_flags, bfs);
    }

    #[test]
    fn nhlf_examples() {
        assert_eq!(f_nhlf(&sk(&[2, 2], &[2])).unwrap(), BigUint::one());
        assert_eq!(f_nhlf(&sk(&[2, 2], &[1])).unwrap(), BigUint::from(2u32));
        assert_eq!(f_nhlf(&sk(&[4, 3, 1], &[])).unwrap(), BigUint::from(70u32));
        assert_eq!(f_nhlf_flagged(&sk(&[2, 2], &[1])).unwrap(), BigUint::from(2u32));
        assert_eq!(f_nhlf_flagged(&sk(&[4, 1], &[1])).unwrap(), BigUint::from(4u32));
        assert_eq!(f_nhlf_flagged(&sk(&[5, 5, 4, 2], &[3, 2])).unwrap(), BigUint::from(13860u32));
    }

    #[test]
    fn counts() {
        assert_eq!(excited_count(&sk(&[3, 3], &[1])), BigUint::from(2u32));
        assert_eq!(excited_count(&sk(&[3, 3], &[])), BigUint::one());
        assert_eq!(excited_count(&sk(&[2, 2], &[1])), BigUint::from(2u32));
    }

    proptest::proptest! {
        #[test]
        fn naruse_formula_counts_fillings(s in crate::shapes::strategies::skew(5, 4)) {
            let f = crate::count::f_paths(&s);
            proptest::prop_assert_eq!(f_nhlf(&s).unwrap(), f.clone());
            proptest::prop_assert_eq!(f_nhlf_flagged(&s).unwrap(), f);
            proptest::prop_assert_eq!(excited_diagrams_bfs(&s).len(), flagged_tableaux(&s).len());
        }
    }
}
