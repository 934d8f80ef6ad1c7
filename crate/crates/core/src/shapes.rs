//! Partitions, skew shapes, cells and the lattice of order ideals between
//! two partitions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell `(row, col)` of a Young diagram, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Product order on cells: `self` must precede `other` in every
    /// standard filling.
    pub fn precedes(&self, other: &Cell) -> bool {
        self != other && self.row <= other.row && self.col <= other.col
    }

    pub fn comparable(&self, other: &Cell) -> bool {
        self.precedes(other) || other.precedes(self)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl FromStr for Cell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut it = t.split(',').map(|p| p.trim().parse::<usize>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(r)), Some(Ok(c)), None) if r >= 1 && c >= 1 => Ok(Cell::new(r, c)),
            _ => Err(Error::MalformedSyntax(format!("expected a cell like (1,2), got '{s}'"))),
        }
    }
}

/// An integer partition stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    /// Validates weak decrease and strips trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part with 0-based index `i`, zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `d` (or longer if needed).
    pub fn padded(&self, d: usize) -> Vec<usize> {
        let mut v = self.0.clone();
        if v.len() < d {
            v.resize(d, 0);
        }
        v
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        c.row >= 1 && c.col >= 1 && c.col <= self.part(c.row - 1)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.0.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition(parts)
    }

    /// Hook length `lambda_i - j + lambda'_j - i + 1` of a cell.
    pub fn hook(&self, c: Cell) -> Result<usize> {
        if !self.contains_cell(c) {
            return Err(Error::CellOutsideDiagram(c));
        }
        Ok(self.hook_unchecked(c))
    }

    pub(crate) fn hook_unchecked(&self, c: Cell) -> usize {
        let arm = self.part(c.row - 1) - c.col;
        let leg = self.0[c.row..].iter().take_while(|&&p| p >= c.col).count();
        arm + leg + 1
    }

    /// All hook lengths, row by row.
    pub fn hooks(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| (0..p).map(|j| p - j + conj.part(j) - i - 1).collect())
            .collect()
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| Cell::new(i + 1, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').unwrap_or(t);
        let t = t.strip_suffix(']').unwrap_or(t);
        let mut parts = Vec::new();
        for tok in t.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let v = tok
                .parse::<usize>()
                .map_err(|_| Error::MalformedSyntax(format!("'{tok}' is not a nonnegative integer")))?;
            parts.push(v);
        }
        Partition::new(parts)
    }
}

/// Skew shape `outer / inner` with an ambient row count `d >= len(outer)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
    d: usize,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        let d = outer.len();
        Self::with_d(outer, inner, d)
    }

    pub fn with_d(outer: Partition, inner: Partition, d: usize) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InnerNotContained {
                outer: outer.to_string(),
                inner: inner.to_string(),
            });
        }
        if d < outer.len() {
            return Err(Error::DTooSmall { d, rows: outer.len() });
        }
        Ok(SkewShape { outer, inner, d })
    }

    pub fn straight(outer: Partition) -> Self {
        let d = outer.len();
        SkewShape { outer, inner: Partition::empty(), d }
    }

    /// Convenience constructor from slices; panics on invalid input, so it
    /// is meant for literals in tests and examples.
    pub fn from_parts(outer: &[usize], inner: &[usize]) -> Self {
        let o = Partition::new(outer.to_vec()).expect("outer partition");
        let i = Partition::new(inner.to_vec()).expect("inner partition");
        SkewShape::new(o, i).expect("skew shape")
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn outer_padded(&self) -> Vec<usize> {
        self.outer.padded(self.d)
    }

    pub fn inner_padded(&self) -> Vec<usize> {
        self.inner.padded(self.d)
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        self.outer.contains_cell(c) && !self.inner.contains_cell(c)
    }

    /// Cells of the skew diagram in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &p) in self.outer.parts().iter().enumerate() {
            for j in self.inner.part(i) + 1..=p {
                out.push(Cell::new(i + 1, j));
            }
        }
        out
    }

    /// Lists all partitions `nu` with `inner <= nu <= outer`, graded by size
    /// so that every ideal appears after all ideals it covers.
    pub fn order_ideals(&self) -> Vec<Partition> {
        crate::lattice::enumerate_states(&self.outer_padded(), &self.inner_padded())
            .into_iter()
            .map(|v| Partition::new(v).expect("ideal is a partition"))
            .collect()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)?;
        if self.d != self.outer.len() {
            write!(f, " d={}", self.d)?;
        }
        Ok(())
    }
}

impl FromStr for SkewShape {
    type Err = Error;

    /// Accepts `[5,5,4,2]/[3,2]`, `5,5,4,2/3,2`, `[4,3,1]`, and an optional
    /// trailing `d=<k>` separated by whitespace, `;` or `,`.
    fn from_str(s: &str) -> Result<Self> {
        let mut body = s.trim();
        let mut d = None;
        if let Some(pos) = body.find("d=") {
            let val = body[pos + 2..].trim();
            d = Some(
                val.parse::<usize>()
                    .map_err(|_| Error::MalformedSyntax(format!("bad ambient dimension '{val}'")))?,
            );
            body = body[..pos].trim_end_matches(|c: char| c == ',' || c == ';' || c.is_whitespace());
        }
        if body.is_empty() {
            return Err(Error::MalformedSyntax("empty shape".into()));
        }
        let mut halves = body.splitn(2, '/');
        let outer: Partition = halves.next().unwrap_or("").parse()?;
        let inner: Partition = match halves.next() {
            Some(t) => {
                if t.contains('/') {
                    return Err(Error::MalformedSyntax(format!("more than one '/' in '{s}'")));
                }
                t.parse()?
            }
            None => Partition::empty(),
        };
        match d {
            Some(d) => SkewShape::with_d(outer, inner, d),
            None => SkewShape::new(outer, inner),
        }
    }
}

/// `l_i = lambda_i + d - i` for `i = 1..d`; strictly decreasing.
pub fn shifted_parts(p: &Partition, d: usize) -> Result<Vec<usize>> {
    if p.len() > d {
        return Err(Error::DTooSmall { d, rows: p.len() });
    }
    Ok((0..d).map(|i| p.part(i) + d - 1 - i).collect())
}

/// Cells that can be added to `nu` while staying a partition inside `outer`,
/// in increasing row order.
pub fn addable_cells(nu: &Partition, outer: &Partition) -> Vec<Cell> {
    let mut out = Vec::new();
    for i in 0..outer.len() {
        let cur = nu.part(i);
        if cur < outer.part(i) && (i == 0 || nu.part(i - 1) > cur) {
            out.push(Cell::new(i + 1, cur + 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hook_of_corner_cell() {
        assert_eq!(p(&[4, 3, 1]).hook(Cell::new(1, 1)).unwrap(), 6);
        assert!(matches!(p(&[4, 3, 1]).hook(Cell::new(3, 2)), Err(Error::CellOutsideDiagram(_))));
        let hooks = p(&[4, 3, 1]).hooks();
        assert_eq!(hooks, vec![vec![6, 4, 3, 1], vec![4, 2, 1], vec![1]]);
    }

    #[test]
    fn trailing_zeros_are_dropped_and_order_checked() {
        assert_eq!(p(&[3, 1, 0, 0]).parts(), &[3, 1]);
        assert!(matches!(Partition::new(vec![2, 3]), Err(Error::NotWeaklyDecreasing(_))));
    }

    #[test]
    fn parse_and_display() {
        let s: SkewShape = "[5,5,4,2]/[3,2]".parse().unwrap();
        assert_eq!(s.size(), 11);
        assert_eq!(s.d(), 4);
        assert_eq!(s.to_string(), "[5,5,4,2]/[3,2]");

        let t: SkewShape = "4,3,1".parse().unwrap();
        assert!(t.is_straight());
        assert_eq!(t.to_string().parse::<SkewShape>().unwrap(), t);

        let u: SkewShape = "[2,1]/[1] d=4".parse().unwrap();
        assert_eq!(u.d(), 4);
        assert_eq!(u.to_string().parse::<SkewShape>().unwrap(), u);

        assert!(matches!("[3,3]/[4]".parse::<SkewShape>(), Err(Error::InnerNotContained { .. })));
        assert!(matches!("[3,x]".parse::<SkewShape>(), Err(Error::MalformedSyntax(_))));
        assert!(matches!("[3,3] d=1".parse::<SkewShape>(), Err(Error::DTooSmall { .. })));
    }

    #[test]
    fn ideals_of_square() {
        let s = SkewShape::from_parts(&[2, 2], &[]);
        let ideals: Vec<Vec<usize>> = s.order_ideals().into_iter().map(Vec::from).collect();
        assert_eq!(ideals, vec![vec![], vec![1], vec![2], vec![1, 1], vec![2, 1], vec![2, 2]]);
    }

    #[test]
    fn addable_cells_of_single_box() {
        assert_eq!(addable_cells(&p(&[1]), &p(&[2, 2])), vec![Cell::new(1, 2), Cell::new(2, 1)]);
    }

    #[test]
    fn shifted_parts_strictly_decrease() {
        assert_eq!(shifted_parts(&p(&[3, 1]), 3).unwrap(), vec![5, 2, 0]);
        assert!(shifted_parts(&p(&[3, 1]), 1).is_err());
    }

    #[test]
    fn conjugate_round_trip() {
        let l = p(&[5, 3, 3, 1]);
        assert_eq!(l.conjugate(), p(&[4, 3, 3, 1, 1]));
        assert_eq!(l.conjugate().conjugate(), l);
    }

    proptest::proptest! {
        #[test]
        fn conjugation_is_an_involution(l in strategies::partition(6, 5)) {
            proptest::prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            proptest::prop_assert_eq!(l.conjugate().size(), l.size());
        }

        #[test]
        fn display_parses_back(s in strategies::skew(6, 5)) {
            let back: SkewShape = s.to_string().parse().unwrap();
            proptest::prop_assert_eq!(back, s);
        }

        #[test]
        fn order_ideals_lie_between(s in strategies::skew(4, 4)) {
            for nu in s.order_ideals() {
                proptest::prop_assert!(s.outer().contains(&nu) && nu.contains(s.inner()));
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use proptest::prelude::*;

    /// Partitions with at most `rows` parts, each below `max_part`.
    pub fn partition(max_part: usize, rows: usize) -> impl Strategy<Value = Partition> {
        prop::collection::vec(0..max_part, 0..=rows).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    /// Skew shapes; the inner partition is the rowwise minimum of the outer
    /// one and a second decreasing sequence.
    pub fn skew(max_part: usize, rows: usize) -> impl Strategy<Value = SkewShape> {
        (partition(max_part, rows), prop::collection::vec(0..max_part, rows)).prop_map(|(outer, mut cut)| {
            cut.sort_unstable_by(|a, b| b.cmp(a));
            let inner: Vec<usize> = outer.parts().iter().zip(&cut).map(|(&o, &c)| o.min(c)).collect();
            SkewShape::new(outer, Partition::new(inner).unwrap()).unwrap()
        })
    }
}
