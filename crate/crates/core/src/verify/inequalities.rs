//! Both-sides evaluation of the technical inequalities on grids and
//! seeded samples.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::corpus::{partitions_bounded, skew_shapes};
use super::suites::all_decompositions;
use super::{run_corpus, Builder, Outcome, SuiteParams, SuiteReport, Value};
use crate::arith::{self, int, ratio};
use crate::count::{balance_phi, f_paths, f_product, g_value};
use crate::error::Result;
use crate::lattice::IdealLattice;
use crate::schur::{determinant_sides, k_value, permutation_sum_bound, schur_any};
use crate::shapes::{Partition, SkewShape};
use crate::walks::{trial_rng, triplet_geometry};

/// 355/113 exceeds pi by less than 3e-7.
fn pi_upper() -> BigRational {
    ratio(355, 113)
}

/// Rational grid used by the scalar inequalities (22 values).
fn grid_values() -> Vec<BigRational> {
    [
        (1, 100), (1, 10), (1, 7), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1), (5, 4), (4, 3),
        (3, 2), (2, 1), (5, 2), (3, 1), (4, 1), (5, 1), (7, 1), (10, 1), (25, 2), (50, 1), (100, 1),
    ]
    .iter()
    .map(|&(a, b)| ratio(a, b))
    .collect()
}

fn min(a: &BigRational, b: &BigRational) -> BigRational {
    arith::min(a.clone(), b.clone())
}

fn max(a: &BigRational, b: &BigRational) -> BigRational {
    arith::max(a.clone(), b.clone())
}

fn fmt3(a: &BigRational, b: &BigRational, c: &BigRational) -> String {
    format!("({a}, {b}, {c})")
}

/// Stream ids keep the samplers of different checks independent.
const STREAM_PAIRS: u64 = 1;
const STREAM_TRIPLETS: u64 = 2;
const STREAM_SCHUR: u64 = 3;
const STREAM_THICK: u64 = 4;

pub(super) fn inequality_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let grid = params.grid.unwrap_or(10_000);
    let d_max = params.d_max_or(4).max(2);
    let eps = params.eps_or(1, 8);
    let n_tvk = params.n_max_or(10);
    let seed = params.seed;
    let mut b = Builder::new(
        "inequality_suite",
        true,
        format!(
            "scalar inequalities on a {}-value rational grid; sampled checks use {grid} seeded points (seed {seed}), \
             d <= {d_max}, eps = {eps}; interval-condition lemmas on skew shapes with |lambda| <= {n_tvk}; \
             constants pi and e are replaced by rational bounds on the side that keeps each check sound",
            grid_values().len()
        ),
    );
    b.merge_all(scalar_checks());
    b.merge_all(binomial_sandwich());
    b.merge_all(pair_checks(grid / 10, d_max, &eps, seed));
    b.merge_all(triplet_checks(grid, d_max, &eps, seed));
    b.merge_all(schur_checks(grid, d_max, seed));
    b.merge_all(thick_pair_checks(grid, d_max, seed));
    b.merge_all(thick_pmf(d_max.min(3)));
    b.merge_all(tvk_checks(n_tvk, d_max));
    Ok(b.finish())
}

fn scalar_checks() -> Vec<Outcome> {
    let v = grid_values();
    let one = BigRational::one();
    let mut triples = Vec::new();
    for a in &v {
        for b in &v {
            for c in &v {
                triples.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    let mut out = run_corpus(&triples, |(x, y, c)| {
        let mut o = Outcome::default();
        let m = min(x, y);
        let mid = min(x, &(c * y));
        let ok = min(&one, c) * &m <= mid && mid <= max(&one, c) * &m;
        o.assert("min_constant", ok, fmt3(x, y, c), || format!("min(x, cy) = {mid}"));

        let (x, y, z) = (x, y, c);
        let lhs = y * min(x, &y.recip()) * min(y, &z.recip()) / min(x, &z.recip());
        let centre = y - (x + z) / int(2);
        let rhs = int(4) * &centre * &centre + int(4);
        o.assert("min_three", lhs <= rhs, fmt3(x, y, z), || format!("{lhs} > {rhs}"));
        o.max("max_min_three_ratio", Value::Exact(&lhs / &rhs), fmt3(x, y, z));
        o
    });

    // m (x2/x1)^m <= x1/(e (x1 - x2)); e is replaced by an upper bound, which
    // shrinks the right side.
    let e_hi = arith::e_upper();
    let mut pairs = Vec::new();
    for x1 in &v {
        for x2 in &v {
            if x2 < x1 {
                for m in 0..50usize {
                    pairs.push((x1.clone(), x2.clone(), m));
                }
            }
        }
    }
    out.extend(run_corpus(&pairs, |(x1, x2, m)| {
        let mut o = Outcome::default();
        let lhs = int(*m as i64) * arith::pow(&(x2 / x1), *m);
        let rhs = x1 / (&e_hi * (x1 - x2));
        let at = format!("x1={x1} x2={x2} m={m}");
        o.assert("exp_bound", lhs <= rhs, &at, || format!("{lhs} > {rhs}"));
        o.max("max_exp_bound_ratio", Value::Exact(&lhs / &rhs), &at);
        o
    }));
    out
}

/// `C(a,b)` against the entropy sandwich, squared to stay rational:
/// `exp(a H(b/a)) = a^a / (b^b (a-b)^(a-b))`.
fn binomial_sandwich() -> Vec<Outcome> {
    let pts: Vec<(usize, usize)> = (2..=60).flat_map(|a| (1..a).map(move |b| (a, b))).collect();
    let pi = pi_upper();
    let e_lo = arith::e_lower();
    let lower_c2 = int(2) * &pi / arith::pow(&e_lo, 4);
    let upper_c2 = &e_lo * &e_lo / (int(4) * &pi * &pi);
    run_corpus(&pts, |&(a, b)| {
        let mut o = Outcome::default();
        let c = arith::from_biguint(&binomial(a, b));
        let c2 = &c * &c;
        let pw = |x: usize| arith::pow(&int(x as i64), x);
        let ent = pw(a) / (pw(b) * pw(a - b));
        let base = ratio(a as i64, (b * (a - b)) as i64) * &ent * &ent;
        let at = format!("C({a},{b})");
        o.assert("binomial_sandwich", &lower_c2 * &base <= c2, &at, || "lower side exceeds the binomial".into());
        o.assert("binomial_sandwich", c2 <= &upper_c2 * &base, &at, || "binomial exceeds the upper side".into());
        o
    })
}

fn binomial(a: usize, b: usize) -> BigUint {
    let mut r = BigUint::one();
    for k in 0..b {
        r = r * (a - k) / (k + 1);
    }
    r
}

fn random_parts<R: Rng>(rng: &mut R, d: usize, lo: usize, hi: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..d).map(|_| rng.gen_range(lo..=hi)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Decreasing vector below the decreasing bound `cap`, sampled coordinatewise
/// in `[floor_i, cap_i]` and re-sorted (sorting keeps both bounds).
fn random_between<R: Rng>(rng: &mut R, floor: &[usize], cap: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = floor.iter().zip(cap).map(|(&f, &c)| rng.gen_range(f..=c)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// An eps-admissible pair `(lambda, mu)` with exactly `d` rows in `lambda`.
fn sample_pair(rng: &mut ChaCha8Rng, d: usize, eps: &BigRational) -> (Partition, Partition) {
    loop {
        let lam = random_parts(rng, d, 1, 40);
        let size = lam.iter().sum::<usize>();
        let need = super::corpus::min_gap(eps, size);
        if lam[d - 1] < need {
            continue;
        }
        let cap: Vec<usize> = lam.iter().map(|l| l - need).collect();
        let mu = random_between(rng, &vec![0; d], &cap);
        return (Partition::new(lam).expect("sorted"), Partition::new(mu).expect("sorted"));
    }
}

fn pair_checks(count: usize, d_max: usize, eps: &BigRational, seed: u64) -> Vec<Outcome> {
    let items: Vec<u64> = (0..count as u64).collect();
    run_corpus(&items, |&t| {
        let mut rng = trial_rng(seed ^ STREAM_PAIRS, t);
        let d = rng.gen_range(2..=d_max);
        let (lam, mu) = sample_pair(&mut rng, d, eps);
        let s = SkewShape::new(lam.clone(), mu.clone()).expect("contained");
        let mut o = Outcome::default();
        let hooks = lam.hooks();
        for i in 0..d {
            let (li, mi) = (lam.part(i), mu.part(i));
            let falling = arith::from_biguint(&(arith::factorial(li) / arith::factorial(li - mi)));
            let prod = (0..mi).fold(BigUint::one(), |a, j| a * hooks[i][j]);
            let prod = arith::from_biguint(&prod);
            let upper = arith::pow(&eps.recip(), d - 1 - i) * &falling;
            let ok = falling <= prod && prod <= upper;
            o.assert("mu_hook_estimate", ok, format!("{s} row {}", i + 1), || format!("{falling} <= {prod} <= {upper} fails"));
        }
        let g = g_value(&s);
        let f = f_product(&s);
        let upper = arith::pow(&eps.recip(), d * (d - 1) / 2) * &g;
        o.assert("g_sandwich", g <= f && f <= upper, &s, || format!("G = {g}, F = {f}"));
        o
    })
}

struct Triplet {
    lam: Partition,
    gamma: Partition,
    mu: Partition,
    d: usize,
}

fn sample_triplet(rng: &mut ChaCha8Rng, d: usize, eps: &BigRational) -> Triplet {
    loop {
        let (lam, mu) = sample_pair(rng, d, eps);
        let (l, m) = (lam.padded(d), mu.padded(d));
        let size = lam.size();
        // gap ceil(eps^3 |lambda| / 2), at least 1
        let half = eps * eps * eps * int(size as i64) / int(2);
        let sep = half.ceil().to_integer().to_usize().unwrap_or(usize::MAX).max(1);
        if (0..d).any(|i| l[i] - m[i] < 2 * sep) {
            continue;
        }
        let p: f64 = rng.gen_range(0.0..1.0);
        let mut g: Vec<usize> = (0..d)
            .map(|i| {
                let centre = m[i] as f64 + p * (l[i] - m[i]) as f64;
                let jitter = rng.gen_range(-2i64..=2);
                let v = (centre.round() as i64 + jitter).clamp((m[i] + sep) as i64, (l[i] - sep) as i64);
                v as usize
            })
            .collect();
        g.sort_unstable_by(|a, b| b.cmp(a));
        let gamma = Partition::new(g).expect("sorted");
        let geo = triplet_geometry(&lam, &gamma, &mu, d, eps).expect("nested");
        if geo.admissible() {
            return Triplet { lam, gamma, mu, d };
        }
    }
}

fn triplet_checks(count: usize, d_max: usize, eps: &BigRational, seed: u64) -> Vec<Outcome> {
    let items: Vec<u64> = (0..count as u64).collect();
    let e4 = arith::pow(eps, 12);
    run_corpus(&items, |&t| {
        let mut rng = trial_rng(seed ^ STREAM_TRIPLETS, t);
        let d = rng.gen_range(2..=d_max);
        let Triplet { lam, gamma, mu, d } = sample_triplet(&mut rng, d, eps);
        let geo = triplet_geometry(&lam, &gamma, &mu, d, eps).expect("nested");
        let n = geo.y.n;
        let at = format!("lambda={lam} gamma={gamma} mu={mu}");
        let mut o = Outcome::default();
        let shift = |p: &Partition| -> Vec<i64> { (0..d).map(|i| (p.part(i) + d - 1 - i) as i64).collect() };
        let (lv, gv, mv) = (shift(&lam), shift(&gamma), shift(&mu));
        let constant = int(32) / (int((d * d) as i64) * &e4);
        let mut worst = BigRational::zero();
        let mut ok = true;
        for i in 0..d {
            for j in i + 1..d {
                let gd = int(gv[i] - gv[j]);
                let ld = int(lv[i] - lv[j]);
                let md = int(mv[i] - mv[j]);
                let lhs = &gd / int((gamma.part(i) + j - i) as i64)
                    * min(&md, &(int(gv[i]) / &gd))
                    * min(&gd, &(int(lv[i]) / &ld))
                    / min(&md, &(int(lv[i]) / &ld));
                let diff = geo.y.diff(i, j);
                let y2 = &diff * &diff / int(n as i64);
                let rhs = &constant * (&y2 + int(1));
                ok &= lhs <= rhs;
                worst = max(&worst, &(&lhs / (&y2 + int(1))));
            }
        }
        o.assert("mgl_bound", ok, &at, || "a pair exceeds 32/(d^2 eps^12) ((y_i - y_j)^2 + 1)".into());
        o.max("max_mgl_lhs_over_y_factor", Value::Exact(worst), &at);

        // binomial ratio, reported only
        o.observe("binomial_ratio");
        let k = gamma.size() - mu.size();
        let mut ln = -ln_binomial(n, k);
        for i in 0..d {
            ln += ln_binomial(lam.part(i) - mu.part(i), gamma.part(i) - mu.part(i));
        }
        let ys = geo.y.approx();
        ln += (d as f64 - 1.0) / 2.0 * (n as f64).ln() + 2.0 * ys.iter().map(|y| y * y).sum::<f64>();
        o.max("max_binomial_ratio", Value::Approx(ln.exp()), &at);
        o
    })
}

fn ln_binomial(a: usize, b: usize) -> f64 {
    statrs::function::factorial::ln_binomial(a as u64, b as u64)
}

fn schur_checks(count: usize, d_max: usize, seed: u64) -> Vec<Outcome> {
    let items: Vec<u64> = (0..count as u64).collect();
    run_corpus(&items, |&t| {
        let mut rng = trial_rng(seed ^ STREAM_SCHUR, t);
        let d = rng.gen_range(2..=d_max);
        let mut mu = random_parts(&mut rng, d, 0, 5);
        if rng.gen_bool(0.3) {
            mu[d - 1] = 0;
        }
        let mu = Partition::new(mu).expect("sorted");
        let den = rng.gen_range(1..=3i64);
        let mut xs: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=12)).collect();
        xs.sort_unstable_by(|a, b| b.cmp(a));
        let x: Vec<BigRational> = xs.iter().map(|&v| ratio(v, den)).collect();
        let at = format!("mu={mu} x={:?}/{den}", xs);
        let mut o = Outcome::default();
        let (det, upper) = determinant_sides(&mu, &x);
        o.assert("determinant_estimate", !det.is_negative() && det <= upper, &at, || format!("det = {det}, bound = {upper}"));
        let s = schur_any(&mu, &x);
        for b in all_decompositions(d) {
            let strict = (0..d).all(|i| (i + 1..d).all(|j| b.same_block(i + 1, j + 1) || x[i] > x[j]));
            if !strict {
                continue;
            }
            let bound = permutation_sum_bound(&mu, &x, &b);
            o.assert("schur_permutation_bound", s <= bound, format!("{at} blocks={:?}", b.ends()), || {
                format!("s = {s} > {bound}")
            });
        }
        o
    })
}

/// Pair estimates for straight `lambda` and `gamma <= lambda`, blocks by
/// `lambda_i - lambda_j + j - i <= sqrt(n)` applied pair by pair.
fn thick_pair_checks(count: usize, d_max: usize, seed: u64) -> Vec<Outcome> {
    let items: Vec<u64> = (0..count as u64).collect();
    run_corpus(&items, |&t| {
        let mut rng = trial_rng(seed ^ STREAM_THICK, t);
        let d = rng.gen_range(2..=d_max);
        let lam = random_parts(&mut rng, d, 1, 60);
        let gamma = random_between(&mut rng, &vec![0; d], &lam);
        let lam = Partition::new(lam).expect("sorted");
        let gamma = Partition::new(gamma).expect("sorted");
        let n = lam.size();
        let geo = triplet_geometry(&lam, &gamma, &Partition::empty(), d, &BigRational::one()).expect("nested");
        let at = format!("lambda={lam} gamma={gamma}");
        let nn = int(n as i64);
        let mut o = Outcome::default();
        for i in 0..d {
            for j in i + 1..d {
                let g = int((gamma.part(i) + j - i) as i64 - gamma.part(j) as i64);
                let dl = (lam.part(i) - lam.part(j) + j - i) as u64;
                let u = geo.y.diff(i, j).abs();
                if dl * dl > n as u64 {
                    // (g/n) (lambda_i + d - i)/dl <= d (u/sqrt(n) + 1)
                    let r = &g / &nn * int((lam.part(i) + d - 1 - i) as i64) / int(dl as i64);
                    let a = r / int(d as i64) - int(1);
                    let ok = arith::le_over_sqrt(&a, &u, n as u64);
                    o.assert("thick_cross_block", ok, format!("{at} ({},{})", i + 1, j + 1), || format!("excess {a}"));
                } else {
                    // g^2/n + g/sqrt(n) <= 2 (u^2/n + 2u/sqrt(n) + 1)
                    let a = (int(2) * &u * &u - &g * &g) / &nn + int(2);
                    let bb = int(4) * &u - &g;
                    let ok = arith::le_over_sqrt(&-a, &bb, n as u64);
                    o.assert("thick_same_block", ok, format!("{at} ({},{})", i + 1, j + 1), || "right side is smaller".into());
                }
            }
        }
        o
    })
}

/// `P[Z_k = gamma]` against the Gaussian profile, reported only.
fn thick_pmf(d_max: usize) -> Vec<Outcome> {
    let eps = ratio(1, 8);
    let mut shapes = Vec::new();
    for d in 2..=d_max {
        for n in 16..=30 {
            for p in partitions_bounded(n, n, d) {
                if p.len() == d && int(p.part(d - 1) as i64) >= &eps * int(n as i64) {
                    shapes.push(p);
                }
            }
        }
    }
    run_corpus(&shapes, |lam| {
        let d = lam.len();
        let n = lam.size();
        let lat = IdealLattice::new(&SkewShape::straight(lam.clone()));
        let total = arith::to_f64(&arith::from_biguint(lat.total()));
        let mut o = Outcome::default();
        for k in 0..lat.len() {
            let gamma = Partition::new(lat.state(k).to_vec()).expect("ideal");
            let geo = triplet_geometry(lam, &gamma, &Partition::empty(), d, &eps).expect("nested");
            if !geo.admissible() {
                continue;
            }
            o.observe("thick_pmf");
            let pmf = arith::to_f64(&arith::from_biguint(&(lat.forward(k) * lat.backward(k)))) / total;
            let y = geo.y.approx();
            let mut profile = (n as f64).powf(-(d as f64 - 1.0) / 2.0) * (-2.0 * y.iter().map(|v| v * v).sum::<f64>()).exp();
            for i in 0..d {
                for j in i + 1..d {
                    profile *= (y[i] - y[j]).powi(2) + 1.0;
                }
            }
            o.max(format!("max_pmf_over_profile_d{d}"), Value::Approx(pmf / profile), format!("lambda={lam} gamma={gamma}"));
        }
        o
    })
}

fn tvk_checks(n_max: usize, d_max: usize) -> Vec<Outcome> {
    let corpus: Vec<SkewShape> = skew_shapes(n_max, d_max).into_iter().filter(|s| s.d() >= 2).collect();
    run_corpus(&corpus, |s| {
        let mut o = Outcome::default();
        let d = s.d();
        let (l, m) = (s.outer_padded(), s.inner_padded());
        let size = int(s.outer().size() as i64);
        let dd = int(d as i64);
        let phi = balance_phi(s);
        let lq = |i: usize, j: usize| ratio((l[i] + d - 1 - i) as i64, (l[i] - l[j] + j - i) as i64);
        let mq = |i: usize, j: usize| int((m[i] + j - i - m[j]) as i64);
        let mut upper_ratio: Option<BigRational> = None;
        for b in all_decompositions(d) {
            let at = format!("{s} blocks={:?}", b.ends());
            let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
            let cross: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(i, j)| !b.same_block(i + 1, j + 1)).collect();
            let same: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(i, j)| b.same_block(i + 1, j + 1)).collect();
            // largest eps for which the big-gap condition holds
            let eps = cross
                .iter()
                .map(|&(i, j)| int((l[i] - l[j]) as i64) / &size)
                .fold(BigRational::one(), arith::min);
            let big_gap = eps > BigRational::zero();
            if big_gap {
                for &(i, j) in &cross {
                    let q = lq(i, j);
                    let mn = min(&mq(i, j), &q);
                    let ok = q >= BigRational::one() && q <= &dd / &eps && &eps / &dd * &q <= mn && mn <= q;
                    o.assert("big_gap_estimate", ok, format!("{at} ({},{})", i + 1, j + 1), || format!("eps = {eps}"));
                }
            }
            let lam_small = same.iter().all(|&(i, j)| l[i] - l[j] <= 1);
            let mu_small = same.iter().all(|&(i, j)| m[i] - m[j] <= 1);
            for (holds, name) in [(lam_small, "lambda_small_gap_estimate"), (mu_small, "mu_small_gap_estimate")] {
                if !holds {
                    continue;
                }
                for &(i, j) in &same {
                    let mm = mq(i, j);
                    let mn = min(&mm, &lq(i, j));
                    let ok = &mm / &dd <= mn && mn <= mm;
                    o.assert(name, ok, format!("{at} ({},{})", i + 1, j + 1), || format!("min = {mn}"));
                }
            }
            if big_gap && (lam_small || mu_small) {
                let k = k_value(s, &b);
                let lower = arith::pow(&(&eps / (&dd * &dd)), d * (d - 1) / 2) * &k;
                let ok = lower <= phi && phi <= k;
                o.assert("phi_vs_k", ok, &at, || format!("Phi = {phi}, K = {k}"));
                if upper_ratio.is_none() {
                    upper_ratio = Some(arith::from_biguint(&f_paths(s)) / (f_product(s) * &phi));
                }
            }
        }
        if let Some(r) = upper_ratio {
            o.max("max_tvk_f_over_F_phi", Value::Exact(r), s);
        }
        o
    })
}
