//! Brute-force linear-extension counting over subsets of cells.
//!
//! This module works on the cell poset directly, without the ideal lattice,
//! so the DP counters in the rest of the crate can be checked against it.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::shapes::{Cell, SkewShape};

pub const MAX_CELLS: usize = 22;

struct Poset {
    cells: Vec<Cell>,
    /// `below[k]`: bitmask of cells strictly smaller than cell `k`.
    below: Vec<u32>,
}

impl Poset {
    fn new(s: &SkewShape) -> Result<Self> {
        let cells = s.cells();
        if cells.len() > MAX_CELLS {
            return Err(Error::TooLarge(cells.len()));
        }
        let below = cells
            .iter()
            .map(|c| {
                cells
                    .iter()
                    .enumerate()
                    .filter(|(_, o)| *o != c && o.row <= c.row && o.col <= c.col)
                    .fold(0u32, |m, (k, _)| m | (1 << k))
            })
            .collect();
        Ok(Poset { cells, below })
    }

    fn index(&self, c: Cell) -> Result<usize> {
        self.cells.iter().position(|&x| x == c).ok_or(Error::CellOutsideShape(c))
    }

    /// Number of ways to finish a linear extension from the placed set `done`,
    /// never placing a cell in `banned` before `gate` is placed.
    fn count(&self, done: u32, memo: &mut HashMap<u32, BigUint>, banned: u32, gate: u32) -> BigUint {
        let full = if self.cells.len() == 32 { u32::MAX } else { (1u32 << self.cells.len()) - 1 };
        if done == full {
            return BigUint::one();
        }
        if let Some(v) = memo.get(&done) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for k in 0..self.cells.len() {
            let bit = 1 << k;
            if done & bit != 0 || self.below[k] & !done != 0 {
                continue;
            }
            if bit & banned != 0 && done & gate == 0 {
                continue;
            }
            total += self.count(done | bit, memo, banned, gate);
        }
        memo.insert(done, total.clone());
        total
    }
}

/// Number of linear extensions of the cell poset, i.e. standard fillings.
pub fn count_linear_extensions(s: &SkewShape) -> Result<BigUint> {
    let p = Poset::new(s)?;
    Ok(p.count(0, &mut HashMap::new(), 0, 0))
}

/// `P[L(x) < L(y)]` by brute force.
pub fn prob_before(s: &SkewShape, x: Cell, y: Cell) -> Result<BigRational> {
    let p = Poset::new(s)?;
    let (i, j) = (p.index(x)?, p.index(y)?);
    if i == j {
        return Err(Error::EqualCells(x));
    }
    let total = p.count(0, &mut HashMap::new(), 0, 0);
    let good = p.count(0, &mut HashMap::new(), 1 << j, 1 << i);
    Ok(arith::from_biguint(&good) / arith::from_biguint(&total))
}

/// `min |P[x<y] - P[y<x]|` over all incomparable pairs by brute force;
/// `None` when the poset is a chain.
pub fn delta(s: &SkewShape) -> Result<Option<BigRational>> {
    let p = Poset::new(s)?;
    let total = arith::from_biguint(&p.count(0, &mut HashMap::new(), 0, 0));
    let mut best: Option<BigRational> = None;
    for i in 0..p.cells.len() {
        for j in i + 1..p.cells.len() {
            if p.cells[i].comparable(&p.cells[j]) {
                continue;
            }
            let good = arith::from_biguint(&p.count(0, &mut HashMap::new(), 1 << j, 1 << i)) / &total;
            let dlt = (&good + &good - BigRational::one()).abs();
            best = Some(match best {
                Some(b) if b <= dlt => b,
                _ => dlt,
            });
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn sk(o: &[usize], i: &[usize]) -> SkewShape {
        SkewShape::from_parts(o, i)
    }

    #[test]
    fn known_counts() {
        assert_eq!(count_linear_extensions(&sk(&[5, 5, 4, 2], &[3, 2])).unwrap(), BigUint::from(13860u32));
        assert_eq!(count_linear_extensions(&sk(&[4, 3, 1], &[])).unwrap(), BigUint::from(70u32));
        assert_eq!(count_linear_extensions(&sk(&[3, 3], &[1])).unwrap(), BigUint::from(5u32));
        assert_eq!(count_linear_extensions(&sk(&[2], &[2])).unwrap(), BigUint::one());
    }

    #[test]
    fn known_probabilities() {
        assert_eq!(prob_before(&sk(&[3, 3], &[]), Cell::new(1, 2), Cell::new(2, 1)).unwrap(), ratio(3, 5));
        assert_eq!(prob_before(&sk(&[3, 1], &[1]), Cell::new(2, 1), Cell::new(1, 2)).unwrap(), ratio(1, 3));
        assert_eq!(delta(&sk(&[3, 3], &[])).unwrap(), Some(ratio(1, 5)));
        assert_eq!(delta(&sk(&[4, 4], &[])).unwrap(), Some(ratio(2, 7)));
        assert_eq!(delta(&sk(&[6, 3], &[])).unwrap(), Some(ratio(1, 6)));
        assert_eq!(delta(&sk(&[4], &[])).unwrap(), None);
        assert_eq!(delta(&sk(&[2, 1], &[1])).unwrap(), Some(int(0)));
        assert_eq!(delta(&sk(&[3, 1], &[1])).unwrap(), Some(ratio(1, 3)));
    }

    #[test]
    fn too_large() {
        assert!(matches!(count_linear_extensions(&sk(&[12, 12], &[])), Err(Error::TooLarge(24))));
    }
}
