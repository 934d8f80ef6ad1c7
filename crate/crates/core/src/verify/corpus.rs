//! Deterministic shape corpora.

use crate::shapes::{Partition, SkewShape};
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Partitions of `n` in reverse-lexicographic order, `(n)` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n, usize::MAX)
}

/// Partitions of `n` with largest part at most `max_part` and at most
/// `max_len` parts, in reverse-lexicographic order.
pub fn partitions_bounded(n: usize, max_part: usize, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, max_part.min(n), max_len, &mut cur, &mut out);
    out
}

fn fill(rest: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition::new(cur.clone()).expect("decreasing by construction"));
        return;
    }
    if cur.len() == max_len {
        return;
    }
    for first in (1..=max_part.min(rest)).rev() {
        cur.push(first);
        fill(rest - first, first, max_len, cur, out);
        cur.pop();
    }
}

/// Every partition contained in `outer`, ordered by size and then
/// reverse-lexicographically.
pub fn sub_partitions(outer: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    subs(outer.parts(), 0, usize::MAX, &mut cur, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.parts().cmp(a.parts())));
    out
}

fn subs(outer: &[usize], i: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if i == outer.len() {
        out.push(Partition::new(cur.clone()).expect("decreasing by construction"));
        return;
    }
    for v in 0..=outer[i].min(cap) {
        cur.push(v);
        subs(outer, i + 1, v, cur, out);
        cur.pop();
    }
}

/// Skew shapes `lambda/mu` with `1 <= |lambda| <= n_max`,
/// `len(lambda) <= d_max` and `|lambda/mu| >= 1`.
pub fn skew_shapes(n_max: usize, d_max: usize) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for outer in partitions_bounded(n, n, d_max) {
            for inner in sub_partitions(&outer) {
                if inner != outer {
                    out.push(SkewShape::new(outer.clone(), inner).expect("contained"));
                }
            }
        }
    }
    out
}

/// `ceil(eps * n)`, at least 1.
pub fn min_gap(eps: &BigRational, n: usize) -> usize {
    let v = (eps * BigRational::from_integer((n as i64).into())).ceil();
    v.to_integer().to_usize().unwrap_or(usize::MAX).max(1)
}

/// Partitions of `n` with exactly `d` parts, smallest part at least
/// `ceil(eps n)` and every consecutive gap at least `ceil(eps n)`.
/// Built directly from the gaps rather than by filtering.
pub fn smooth_partitions(n: usize, d: usize, eps: &BigRational) -> Vec<Partition> {
    let g = min_gap(eps, n);
    // lambda_i = sum_{k >= i} g_k where g_d, ..., g_1 >= g; |lambda| = sum k g_k.
    let mut out = Vec::new();
    let mut gaps = vec![0; d];
    smooth_fill(n, d, g, d, &mut gaps, &mut out);
    out.sort_by(|a, b| b.parts().cmp(a.parts()));
    out
}

fn smooth_fill(rest: usize, d: usize, g: usize, k: usize, gaps: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if k == 0 {
        if rest == 0 {
            let mut parts = vec![0; d];
            let mut acc = 0;
            for i in (0..d).rev() {
                acc += gaps[i];
                parts[i] = acc;
            }
            out.push(Partition::new(parts).expect("decreasing"));
        }
        return;
    }
    // the remaining gaps 1..k-1 need at least g each, weighted by their index
    let reserve: usize = (1..k).map(|i| i * g).sum();
    let mut v = g;
    while k * v + reserve <= rest {
        gaps[k - 1] = v;
        smooth_fill(rest - k * v, d, g, k - 1, gaps, out);
        v += 1;
    }
}

/// `eps`-smooth skew shapes: `lambda` smooth of size `n` in
/// `d_min..=d_max` rows, `mu` any proper sub-partition with at most `d` rows.
pub fn smooth_skew_shapes(n_range: std::ops::RangeInclusive<usize>, d_max: usize, eps: &BigRational) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for n in n_range {
        for d in 2..=d_max {
            for outer in smooth_partitions(n, d, eps) {
                for inner in sub_partitions(&outer) {
                    if inner != outer {
                        out.push(SkewShape::new(outer.clone(), inner).expect("contained"));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn partition_count(n: usize) -> usize {
        // p(n) by the coin-change recurrence, independent of the generator
        let mut p = vec![0usize; n + 1];
        p[0] = 1;
        for k in 1..=n {
            for m in k..=n {
                p[m] += p[m - k];
            }
        }
        p[n]
    }

    #[test]
    fn partition_counts_match() {
        assert_eq!(partitions(10).len(), 42);
        for n in 0..=15 {
            assert_eq!(partitions(n).len(), partition_count(n));
        }
    }

    #[test]
    fn reverse_lex_order() {
        let ps: Vec<String> = partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(ps, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
    }

    #[test]
    fn sub_partitions_of_square() {
        let outer = Partition::new(vec![2, 2]).unwrap();
        let subs: Vec<String> = sub_partitions(&outer).iter().map(|p| p.to_string()).collect();
        assert_eq!(subs, ["[]", "[1]", "[2]", "[1,1]", "[2,1]", "[2,2]"]);
    }

    #[test]
    fn smooth_generation_matches_filter() {
        let eps = ratio(1, 10);
        for n in 5..=30 {
            for d in 2..=3 {
                let g = min_gap(&eps, n);
                let filtered: Vec<Partition> = partitions(n)
                    .into_iter()
                    .filter(|p| p.len() == d && p.part(d - 1) >= g && (0..d - 1).all(|i| p.part(i) - p.part(i + 1) >= g))
                    .collect();
                assert_eq!(smooth_partitions(n, d, &eps), filtered);
            }
        }
    }

    #[test]
    fn skew_corpus_size() {
        // |lambda| <= 3: [1]/[], [2]/[], [2]/[1], [1,1]/[], [1,1]/[1],
        // [3]/{[],[1],[2]}, [2,1]/{[],[1],[2],[1,1]}, [1,1,1]/{[],[1],[1,1]}
        assert_eq!(skew_shapes(3, 3).len(), 15);
    }
}
