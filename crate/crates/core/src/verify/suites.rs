use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::corpus::{partitions, skew_shapes, smooth_skew_shapes, sub_partitions};
use super::{run_corpus, Builder, Outcome, SuiteParams, SuiteReport, Value};
use crate::arith::{self, int, ratio};
use crate::count::{balance_phi, f_determinant, f_frobenius, f_hlf, f_paths, f_product, imbalance};
use crate::error::Result;
use crate::excited::{excited_count, excited_diagrams_bfs, f_nhlf, f_nhlf_flagged, ExcitedDiagram};
use crate::lattice::IdealLattice;
use crate::oracle;
use crate::schur::{continuous_phi, interval_upper_bound, schur_any, schur_ratio_bound, IntervalDecomposition};
use crate::shapes::{Cell, Partition, SkewShape};
use crate::sorting::{phi_in, q_sequence, report_from_table, warmup_bounds, PairTable};

fn straight_corpus(n_min: usize, n_max: usize) -> Vec<Partition> {
    (n_min..=n_max).flat_map(partitions).collect()
}

fn is_chain(p: &Partition) -> bool {
    p.len() <= 1 || p.part(0) <= 1
}

/// Every interval decomposition of `{1..d}`.
pub(crate) fn all_decompositions(d: usize) -> Vec<IntervalDecomposition> {
    if d == 0 {
        return vec![IntervalDecomposition::whole(0)];
    }
    (0..1u32 << (d - 1))
        .map(|mask| {
            let mut ends: Vec<usize> = (1..d).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
            ends.push(d);
            IntervalDecomposition::new(ends, d).expect("valid ends")
        })
        .collect()
}

pub(super) fn one_third(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(12);
    let corpus: Vec<Partition> = straight_corpus(params.n_min.unwrap_or(2), n_max)
        .into_iter()
        .filter(|p| !is_chain(p))
        .collect();
    let third = ratio(1, 3);
    let outcomes = run_corpus(&corpus, |p| {
        let mut o = Outcome::default();
        let table = PairTable::new(&SkewShape::straight(p.clone()));
        let rep = report_from_table(&table);
        o.assert("delta_at_most_third", rep.delta <= third, p, || format!("delta = {}", rep.delta));
        let mut best: Option<(BigRational, Cell, Cell)> = None;
        for k in 2..=p.part(0) {
            for l in 2..=p.len() {
                let (x, y) = (Cell::new(1, k), Cell::new(l, 1));
                let d = table.delta_pair(x, y).expect("cells of the shape");
                if best.as_ref().is_none_or(|b| d < b.0) {
                    best = Some((d, x, y));
                }
            }
        }
        let (bd, bx, by) = best.expect("non-chain shapes have such a pair");
        o.assert("row_column_witness", bd <= third, p, || format!("best first-row/first-column pair {bx},{by} has delta {bd}"));
        o.max("max_delta", Value::Exact(rep.delta.clone()), p);
        o.max("max_row_column_delta", Value::Exact(bd), p);
        o
    });
    let mut b = Builder::new(
        "one_third",
        true,
        format!("non-chain straight shapes, 2 <= n <= {n_max}: delta <= 1/3 with a witness (1,k),(l,1)"),
    );
    b.merge_all(outcomes);
    Ok(b.finish())
}

pub(super) fn q_monotone(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(12);
    let direct_max = 10.min(n_max);
    let corpus: Vec<Partition> = straight_corpus(params.n_min.unwrap_or(2), n_max)
        .into_iter()
        .filter(|p| p.part(0) >= 2)
        .collect();
    let outcomes = run_corpus(&corpus, |p| {
        let mut o = Outcome::default();
        let q = q_sequence(p).expect("at least two columns").values;
        let decreasing = q.windows(2).all(|w| w[0] >= w[1]);
        o.assert("decreasing", decreasing, p, || format!("q = {}", fmt_list(&q)));
        let sum: BigRational = q.iter().sum();
        o.assert("sum_is_one", sum.is_one(), p, || format!("sum = {sum}"));
        let im = imbalance(p).expect("n >= 2");
        o.assert("q1_is_imbalance", q[0] == im, p, || format!("q1 = {}, imbalance = {im}", q[0]));
        if p.size() <= direct_max {
            // q_k = P[(1,2) before (k+1,1)] - P[(1,2) before (k,1)]
            let table = PairTable::new(&SkewShape::straight(p.clone()));
            let top = Cell::new(1, 2);
            let before = |k: usize| -> BigRational {
                if k == 0 {
                    BigRational::zero()
                } else if k >= p.len() {
                    BigRational::one()
                } else {
                    table.prob_before(top, Cell::new(k + 1, 1)).expect("cells")
                }
            };
            let ok = (1..=p.len()).all(|k| q[k - 1] == before(k) - before(k - 1));
            o.assert("matches_direct_probability", ok, p, || "q_k differs from the direct probability".into());
        }
        o.min("min_q_last", Value::Exact(q.last().cloned().expect("nonempty")), p);
        o
    });
    let mut b = Builder::new(
        "q_monotone",
        true,
        format!("straight shapes with >= 2 columns, n <= {n_max}; direct probability cross-check for n <= {direct_max}"),
    );
    b.merge_all(outcomes);
    Ok(b.finish())
}

fn fmt_list(v: &[BigRational]) -> String {
    let items: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    format!("[{}]", items.join(","))
}

pub(super) fn sandwich(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(9);
    let corpus = skew_shapes(n_max, params.d_max_or(n_max));
    let outcomes = run_corpus(&corpus, |s| {
        let mut o = Outcome::default();
        let f = arith::from_biguint(&f_paths(s));
        let big_f = f_product(s);
        let ed = arith::from_biguint(&excited_count(s));
        o.assert("lower", big_f <= f, s, || format!("F = {big_f} > f = {f}"));
        let upper = &ed * &big_f;
        o.assert("upper", f <= upper, s, || format!("f = {f} > |ED| F = {upper}"));
        o.max("max_f_over_F", Value::Exact(&f / &big_f), s);
        o.max("max_f_over_edF", Value::Exact(&f / &upper), s);
        o
    });
    let mut b = Builder::new("sandwich", true, format!("all skew shapes with |lambda| <= {n_max}: F <= f <= |ED| F"));
    b.merge_all(outcomes);
    Ok(b.finish())
}

pub(super) fn nhlf_agreement(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(10);
    let corpus = skew_shapes(n_max, params.d_max_or(n_max));
    let outcomes = run_corpus(&corpus, |s| {
        let mut o = Outcome::default();
        let reference = f_paths(s);
        let mut methods: Vec<(&'static str, Option<BigUint>)> = vec![
            ("determinant", f_determinant(s).ok()),
            ("nhlf", f_nhlf(s).ok()),
            ("flagged", f_nhlf_flagged(s).ok()),
        ];
        if s.size() <= oracle::MAX_CELLS {
            methods.push(("brute_force", oracle::count_linear_extensions(s).ok()));
        }
        if s.is_straight() {
            methods.push(("hlf", f_hlf(s.outer()).ok()));
            methods.push(("frobenius", f_frobenius(s.outer(), s.d()).ok()));
        }
        for (name, v) in methods {
            let ok = v.as_ref() == Some(&reference);
            o.assert(name, ok, s, || format!("{name} gives {v:?}, lattice paths give {reference}"));
        }
        o
    });
    let mut b = Builder::new(
        "nhlf_agreement",
        true,
        format!("all skew shapes with |lambda| <= {n_max}: every counting method equals the lattice path count"),
    );
    b.merge_all(outcomes);
    Ok(b.finish())
}

pub(super) fn warmup(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(12);
    let corpus: Vec<Partition> = straight_corpus(params.n_min.unwrap_or(2), n_max)
        .into_iter()
        .filter(|p| !is_chain(p))
        .collect();
    let outcomes = run_corpus(&corpus, |p| {
        let mut o = Outcome::default();
        let s = SkewShape::straight(p.clone());
        let lat = IdealLattice::new(&s);
        let table = PairTable::from_counts(lat.pair_counts());
        let delta = report_from_table(&table).delta;
        let w = warmup_bounds(p).expect("n >= 2");
        o.assert("imbalance_bound", delta <= w.thm_bound, p, || format!("delta = {delta} > {}", w.thm_bound));
        o.assert("first_row_bound", delta <= w.m_bound, p, || format!("delta = {delta} > {}", w.m_bound));
        let n = p.size() as i64;
        let m = n - p.part(0) as i64;
        if m > 0 {
            o.max("max_delta_n_over_m", Value::Exact(&delta * ratio(n, m)), p);
        }
        // walk bound: delta <= 2 phi(a) for mu_1 < a <= lambda_1, reported only
        let mut failures = 0u64;
        let mut witness_failures = 0u64;
        for a in 1..=p.part(0) {
            o.observe("walk_bound");
            let phi = phi_in(&lat, &s, a);
            if delta > &phi * int(2) {
                failures += 1;
            }
            if phi > BigRational::zero() {
                o.max("max_delta_over_2phi", Value::Exact(&delta / (&phi * int(2))), format!("{p} a={a}"));
            }
            let half = ratio(1, 2);
            let has_b = (1..=a.min(p.part(1))).any(|b| {
                table
                    .prob_before(Cell::new(1, a), Cell::new(2, b))
                    .is_some_and(|pr| (pr - &half).abs() <= phi)
            });
            if !has_b {
                witness_failures += 1;
            }
        }
        o.tally("walk_bound_violations", failures);
        o.tally("walk_witness_violations", witness_failures);
        o
    });
    let mut b = Builder::new(
        "warmup",
        true,
        format!(
            "non-chain straight shapes, n <= {n_max}: delta <= min(q, 1-q, |1-2q|) and delta <= (mn + (m-1)(m-2))/(n(n-1)); \
             the walk bound delta <= 2 phi(a) is reported, not asserted"
        ),
    );
    b.merge_all(outcomes);
    Ok(b.finish())
}

/// `lambda` with `f(lambda/nu)` for every `nu`, from one lattice.
struct OuterTable {
    lat: IdealLattice,
}

impl OuterTable {
    fn new(outer: &Partition, d: usize) -> Self {
        let s = SkewShape::with_d(outer.clone(), Partition::empty(), d).expect("d >= len");
        OuterTable { lat: IdealLattice::new(&s) }
    }

    fn f(&self, inner: &Partition) -> BigUint {
        let d = self.lat.outer().len();
        let k = self.lat.index_of(&inner.padded(d)).expect("inner is an ideal");
        self.lat.backward(k).clone()
    }
}

fn ratio_corpus(n_min: usize, n_max: usize, d_max: usize) -> Vec<Partition> {
    (n_min..=n_max)
        .flat_map(|n| super::corpus::partitions_bounded(n, n, d_max))
        .filter(|p| p.len() >= 2)
        .collect()
}

pub(super) fn smooth_ratio(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(14);
    let d_max = params.d_max_or(3);
    let eps = params.eps_or(1, 10);
    let corpus = smooth_skew_shapes(params.n_min.unwrap_or(3)..=n_max, d_max, &eps);
    let outcomes = run_corpus(&corpus, |s| {
        let mut o = Outcome::default();
        let fr = arith::from_biguint(&f_paths(s)) / f_product(s);
        o.assert("f_over_F_at_least_one", fr >= BigRational::one(), s, || format!("f/F = {fr}"));
        let sb = schur_ratio_bound(s);
        o.assert("schur_ratio_bound", fr <= sb, s, || format!("f/F = {fr} > {sb}"));
        for b in all_decompositions(s.d()) {
            let ib = interval_upper_bound(s, &b).bound;
            o.assert("interval_upper_bound", fr <= ib, format!("{s} blocks={:?}", b.ends()), || format!("f/F = {fr} > {ib}"));
        }
        let r = &fr / balance_phi(s);
        o.max("max_f_over_F_phi", Value::Exact(r.clone()), s);
        o.min("min_f_over_F_phi", Value::Exact(r), s);
        o
    });
    let mut b = Builder::new(
        "smooth_ratio",
        true,
        format!("eps-smooth skew shapes, eps = {eps}, |lambda| <= {n_max}, 2 <= d <= {d_max}; extrema of f/(F Phi) are reported only"),
    );
    b.merge_all(outcomes);
    Ok(b.finish())
}

pub(super) fn conjecture_ratio(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(18);
    let d_max = params.d_max_or(3);
    let corpus = ratio_corpus(params.n_min.unwrap_or(2), n_max, d_max);
    let outcomes = run_corpus(&corpus, |outer| {
        let mut o = Outcome::default();
        let d = outer.len();
        let table = OuterTable::new(outer, d);
        for inner in sub_partitions(outer) {
            if inner == *outer {
                continue;
            }
            o.observe("f_over_F_phi");
            let s = SkewShape::new(outer.clone(), inner.clone()).expect("contained");
            let r = arith::from_biguint(&table.f(&inner)) / (f_product(&s) * balance_phi(&s));
            o.max(format!("max_ratio_d{d}"), Value::Exact(r.clone()), &s);
            o.min(format!("min_ratio_d{d}"), Value::Exact(r), &s);
        }
        o
    });
    let mut b = Builder::new(
        "conjecture_ratio",
        false,
        format!("f/(F Phi) over all skew shapes with |lambda| <= {n_max}, 2 <= len(lambda) <= {d_max}"),
    );
    b.merge_all(outcomes);
    Ok(b.finish())
}

pub(super) fn schur_conjecture(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(8);
    let d_max = params.d_max_or(3);
    let eps = params.eps_or(1, 4);
    let top = params.grid.unwrap_or(10) as i64;
    let mut work = Vec::new();
    for d in 2..=d_max {
        for size in 0..=n_max {
            for mu in super::corpus::partitions_bounded(size, size, d) {
                work.push((d, mu));
            }
        }
    }
    let geometric = [ratio(1, 2), ratio(2, 3), ratio(3, 4), ratio(4, 5), ratio(9, 10)];
    let outcomes = run_corpus(&work, |(d, mu)| {
        let mut o = Outcome::default();
        let d = *d;
        let mut points = Vec::new();
        decreasing_points(d, top, &mut Vec::new(), &mut points);
        for x in points {
            let x: Vec<BigRational> = x.into_iter().map(int).collect();
            if x[d - 1] <= &eps * &x[0] {
                continue;
            }
            o.observe("upper_ratio");
            let r = schur_over_monomial(mu, &x) / continuous_phi(mu, &x);
            o.max(format!("max_upper_ratio_d{d}"), Value::Exact(r), format!("mu={mu} x={}", fmt_list(&x)));
        }
        for q in &geometric {
            o.observe("geometric_ratio");
            let x: Vec<BigRational> = (1..=d).map(|i| arith::pow(q, i)).collect();
            let r = schur_over_monomial(mu, &x) / continuous_phi(mu, &x);
            o.min(format!("min_geometric_ratio_d{d}_size{}", mu.size()), Value::Exact(r), format!("mu={mu} q={q}"));
        }
        o
    });
    let mut b = Builder::new(
        "schur_conjecture",
        false,
        format!(
            "s_mu(x)/(x^mu Phi(x/mu)) for |mu| <= {n_max}, d <= {d_max}: maxima over integer x_1 > ... > x_d > eps x_1 \
             (eps = {eps}, x_1 <= {top}); minima over the geometric points x_i = q^i, where the withdrawn lower bound is \
             expected to degrade as |mu| grows"
        ),
    );
    b.merge_all(outcomes);
    Ok(b.finish())
}

fn schur_over_monomial(mu: &Partition, x: &[BigRational]) -> BigRational {
    let mut mono = BigRational::one();
    for (i, xi) in x.iter().enumerate() {
        mono *= arith::pow(xi, mu.part(i));
    }
    schur_any(mu, x) / mono
}

fn decreasing_points(d: usize, top: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == d {
        out.push(cur.clone());
        return;
    }
    let hi = cur.last().map_or(top, |&v| v - 1);
    for v in (1..=hi).rev() {
        cur.push(v);
        decreasing_points(d, top, cur, out);
        cur.pop();
    }
}

pub(super) fn excited_zeta(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(10);
    let mut work = Vec::new();
    for p in straight_corpus(3, n_max) {
        if p.part(0) < 2 {
            continue;
        }
        for k in 1..p.len() {
            work.push((p.clone(), k));
        }
    }
    let outcomes = run_corpus(&work, |(lam, k)| {
        let mut o = Outcome::default();
        let k = *k;
        let at = format!("{lam} k={k}");
        let hook_mu = |len: usize| -> Partition {
            let mut v = vec![2];
            v.extend(std::iter::repeat_n(1, len));
            Partition::new(v).expect("hook")
        };
        let mu = hook_mu(k - 1);
        let nu = hook_mu(k);
        let hooks = lam.hooks();
        let weight = |c: &Cell| BigUint::from(hooks[c.row - 1][c.col - 1]);
        let prod = |d: &ExcitedDiagram| d.cells().iter().fold(BigUint::one(), |a, c| a * weight(c));
        let ed_mu: HashSet<ExcitedDiagram> =
            excited_diagrams_bfs(&SkewShape::new(lam.clone(), mu.clone()).expect("fits")).into_iter().collect();
        let ed_nu = excited_diagrams_bfs(&SkewShape::new(lam.clone(), nu.clone()).expect("fits"));
        let on_diag = |c: &Cell| c.row as i64 - c.col as i64 == k as i64;
        let mut lhs = BigUint::zero();
        let mut well_defined = true;
        for dn in &ed_nu {
            lhs += prod(dn);
            let hits: Vec<Cell> = dn.cells().iter().copied().filter(on_diag).collect();
            let image = ExcitedDiagram::new(dn.cells().iter().copied().filter(|c| !on_diag(c)).collect());
            if hits.len() != 1 || !ed_mu.contains(&image) {
                well_defined = false;
            }
        }
        o.assert("zeta_well_defined", well_defined, &at, || "removing the diagonal cell leaves ED(lambda/mu)".into());
        let nu_set: HashSet<&ExcitedDiagram> = ed_nu.iter().collect();
        let bound = BigUint::from(lam.size() - k - 1);
        let mut rhs = BigUint::zero();
        let mut within = true;
        for d in &ed_mu {
            let mut fibre = BigUint::zero();
            for c in lam.cells().filter(on_diag) {
                if d.contains(c) {
                    continue;
                }
                let mut cells = d.cells().to_vec();
                cells.push(c);
                if nu_set.contains(&ExcitedDiagram::new(cells)) {
                    fibre += weight(&c);
                }
            }
            if fibre > bound {
                within = false;
            }
            rhs += prod(d) * fibre;
        }
        o.assert("fibre_sum_identity", lhs == rhs, &at, || format!("{lhs} != {rhs}"));
        o.assert("fibre_hook_bound", within, &at, || format!("a fibre hook sum exceeds n-k-1 = {bound}"));
        o
    });
    let mut b = Builder::new(
        "excited_zeta",
        true,
        format!("straight shapes n <= {n_max}, mu = (2,1^(k-1)), nu = (2,1^k): dropping the cell on diagonal k maps ED(lambda/nu) onto ED(lambda/mu)"),
    );
    b.merge_all(outcomes);
    Ok(b.finish())
}
