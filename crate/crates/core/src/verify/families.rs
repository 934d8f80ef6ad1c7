//! One-parameter shape families and their exact sorting probabilities.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{Builder, Outcome, SuiteParams, SuiteReport, Value};
use crate::arith::{self, int, ratio};
use crate::error::{Error, Result};
use crate::shapes::{Cell, Partition, SkewShape};
use crate::sorting::delta_poset;

/// Frozen cap on `sqrt(n) delta` for `(2m, m)` and `(3m, 2m, m)`.
pub const THICK_CAP: (i64, i64) = (1, 2);
/// Frozen cap on `n delta` for `(n, 2)/(2)`.
pub const N2_CAP: i64 = 10;
/// Frozen cap on `sqrt(n) delta` along TVK shapes.
pub const TVK_CAP: (i64, i64) = (1, 2);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `(m, 1)/(1)`: a chain of `m - 1` cells and one free cell.
    TwoChain,
    /// `(m, 2)/(2)`.
    N2,
    /// `(m, m)`.
    Catalan,
    /// `(k m, m)`.
    Rect(usize),
    /// `(3m, 2m, m)`.
    Staircase3,
    /// `lambda_i = floor(alpha_i m)`.
    Tvk(Vec<BigRational>),
}

impl Family {
    pub fn shape(&self, m: usize) -> Result<SkewShape> {
        let (outer, inner): (Vec<usize>, Vec<usize>) = match self {
            Family::TwoChain => (vec![m, 1], vec![1]),
            Family::N2 => (vec![m, 2], vec![2]),
            Family::Catalan => (vec![m, m], vec![]),
            Family::Rect(k) => (vec![k * m, m], vec![]),
            Family::Staircase3 => (vec![3 * m, 2 * m, m], vec![]),
            Family::Tvk(alpha) => {
                let parts = alpha
                    .iter()
                    .map(|a| (a * int(m as i64)).floor().to_integer().to_usize().unwrap_or(0))
                    .collect();
                (parts, vec![])
            }
        };
        SkewShape::new(Partition::new(outer)?, Partition::new(inner)?)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::TwoChain => f.write_str("two_chain"),
            Family::N2 => f.write_str("n2"),
            Family::Catalan => f.write_str("catalan"),
            Family::Rect(k) => write!(f, "rect({k}:1)"),
            Family::Staircase3 => f.write_str("staircase3"),
            Family::Tvk(a) => {
                let parts: Vec<String> = a.iter().map(|r| r.to_string()).collect();
                write!(f, "tvk({})", parts.join(","))
            }
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownFamily(s.to_string());
        let s = s.trim();
        match s {
            "two_chain" => return Ok(Family::TwoChain),
            "n2" => return Ok(Family::N2),
            "catalan" => return Ok(Family::Catalan),
            "staircase3" => return Ok(Family::Staircase3),
            _ => {}
        }
        let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
        if let Some(body) = inner("rect(") {
            let (k, one) = body.split_once(':').ok_or_else(bad)?;
            if one.trim() != "1" {
                return Err(bad());
            }
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            return Ok(Family::Rect(k));
        }
        if let Some(body) = inner("tvk(") {
            let alpha: Vec<BigRational> =
                body.split(',').map(|t| super::parse_number(t.trim())).collect::<Option<_>>().ok_or_else(bad)?;
            let sum: BigRational = alpha.iter().sum();
            let decreasing = alpha.windows(2).all(|w| w[0] >= w[1]);
            if alpha.is_empty() || !decreasing || alpha.iter().any(|a| *a <= BigRational::zero()) || sum > int(1) {
                return Err(Error::BadParams(format!("'{s}' is not a Thoma sequence")));
            }
            return Ok(Family::Tvk(alpha));
        }
        Err(bad())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyPoint {
    pub m: usize,
    pub shape: String,
    /// `|lambda/mu|`.
    pub n: usize,
    #[serde(with = "crate::serde_exact::rational")]
    pub delta: BigRational,
    /// First witness pair in row-major order.
    pub witness: (Cell, Cell),
    pub sqrt_n_delta_approx: f64,
}

impl FamilyPoint {
    /// `sqrt(n) delta`, kept exact as its square `n delta^2`.
    pub fn sqrt_n_delta_squared(&self) -> BigRational {
        &self.delta * &self.delta * int(self.n as i64)
    }
}

pub fn family_point(family: &Family, m: usize) -> Result<FamilyPoint> {
    let s = family.shape(m)?;
    let rep = delta_poset(&s)?;
    let n = s.size();
    Ok(FamilyPoint {
        m,
        shape: s.to_string(),
        n,
        sqrt_n_delta_approx: (n as f64).sqrt() * arith::to_f64(&rep.delta),
        witness: rep.witnesses[0],
        delta: rep.delta,
    })
}

/// Points for every `m` in the range, computed in parallel, in order of `m`.
pub fn family_scan(family: &Family, ms: impl IntoIterator<Item = usize>) -> Result<Vec<FamilyPoint>> {
    let ms: Vec<usize> = ms.into_iter().collect();
    ms.par_iter().map(|&m| family_point(family, m)).collect()
}

/// Maxima of `n delta^2` over consecutive blocks of ten values of `m`
/// starting at `start`; a tail of fewer than five values joins the last block.
pub fn block_maxima(points: &[FamilyPoint], start: usize) -> Vec<(usize, usize, BigRational)> {
    let tail: Vec<&FamilyPoint> = points.iter().filter(|p| p.m >= start).collect();
    let Some(last) = tail.last().map(|p| p.m) else {
        return Vec::new();
    };
    let mut blocks = Vec::new();
    let mut lo = start;
    while lo <= last {
        let mut hi = lo + 9;
        if hi >= last || last - hi < 5 {
            hi = last;
        }
        let max = tail
            .iter()
            .filter(|p| p.m >= lo && p.m <= hi)
            .map(|p| p.sqrt_n_delta_squared())
            .max();
        if let Some(max) = max {
            blocks.push((lo, hi.min(last), max));
        }
        lo = hi + 1;
    }
    blocks
}

fn cap_squared(cap: (i64, i64)) -> BigRational {
    let c = ratio(cap.0, cap.1);
    &c * &c
}

pub(super) fn two_chain(params: &SuiteParams) -> Result<SuiteReport> {
    let n_max = params.n_max_or(200);
    let points = family_scan(&Family::TwoChain, params.n_min.unwrap_or(2)..=n_max)?;
    let mut b = Builder::new("two_chain", true, format!("(n,1)/(1), n <= {n_max}: delta = 0 for even n and 1/n for odd n"));
    for p in points {
        let mut o = Outcome::default();
        let expected = if p.n % 2 == 0 { BigRational::zero() } else { ratio(1, p.n as i64) };
        o.assert("exact_delta", p.delta == expected, &p.shape, || format!("delta = {}, expected {expected}", p.delta));
        o.max("max_n_delta", Value::Exact(&p.delta * int(p.n as i64)), &p.shape);
        b.merge(o);
    }
    Ok(b.finish())
}

pub(super) fn n2_family(params: &SuiteParams) -> Result<SuiteReport> {
    let lo = params.m_min.unwrap_or(5);
    let hi = params.m_max.unwrap_or(100);
    let mut ms: Vec<usize> = (lo..=hi).collect();
    for extra in [200, 400] {
        if extra > hi {
            ms.push(extra);
        }
    }
    let points = family_scan(&Family::N2, ms)?;
    let target = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
    let mut b = Builder::new(
        "n2_family",
        true,
        format!(
            "(n,2)/(2), n in {lo}..={hi} plus 200 and 400: n delta <= {N2_CAP} (frozen cap); \
             the minimizing first-row column a is reported against n(1 - 1/sqrt 2)"
        ),
    );
    for p in points {
        let mut o = Outcome::default();
        let nd = &p.delta * int(p.n as i64);
        o.assert("n_delta_cap", nd <= int(N2_CAP), &p.shape, || format!("n delta = {nd}"));
        o.max("max_n_delta", Value::Exact(nd), &p.shape);
        let a = p.witness.0.col;
        let dev = (a as f64 / p.n as f64 - target).abs();
        o.max("max_a_deviation", Value::Approx(dev), &p.shape);
        if p.n >= 100 {
            o.max(format!("a_over_n_at_{}", p.n), Value::Exact(ratio(a as i64, p.n as i64)), format!("{} a={a}", p.shape));
        }
        b.merge(o);
    }
    Ok(b.finish())
}

pub(super) fn thick_scaling(params: &SuiteParams) -> Result<SuiteReport> {
    let m_max = params.m_max.unwrap_or(60);
    let m3_max = params.n_max.map(|n| n / 6).unwrap_or(8);
    let trend_start = 20.min(m_max);
    let cap2 = cap_squared(THICK_CAP);
    let two = family_scan(&Family::Rect(2), 1..=m_max)?;
    let three = family_scan(&Family::Staircase3, 1..=m3_max)?;
    let mut b = Builder::new(
        "thick_scaling",
        true,
        format!(
            "(2m,m) for m <= {m_max} and (3m,2m,m) for m <= {m3_max}: sqrt(n) delta <= {}/{} (frozen cap, compared as n delta^2); \
             for (2m,m) the maxima over blocks of ten m starting at m = {trend_start} must be non-increasing",
            THICK_CAP.0, THICK_CAP.1
        ),
    );
    for (label, points) in [("2m_m", &two), ("3m_2m_m", &three)] {
        for p in points.iter() {
            let mut o = Outcome::default();
            let v = p.sqrt_n_delta_squared();
            o.assert("cap", v <= cap2, &p.shape, || format!("sqrt(n) delta ~ {:.4}", p.sqrt_n_delta_approx));
            o.max(format!("max_sqrt_n_delta_{label}"), Value::Approx(p.sqrt_n_delta_approx), &p.shape);
            b.merge(o);
        }
    }
    let blocks = block_maxima(&two, trend_start);
    let mut o = Outcome::default();
    for w in blocks.windows(2) {
        let ok = w[1].2 <= w[0].2;
        o.assert("block_trend", ok, format!("m in {}..={} vs {}..={}", w[0].0, w[0].1, w[1].0, w[1].1), || {
            format!("block maxima of n delta^2 rise from {} to {}", w[0].2, w[1].2)
        });
    }
    for (lo, hi, v) in &blocks {
        o.max(format!("block_max_sqrt_n_delta_{lo}_{hi}"), Value::Approx(arith::to_f64(v).sqrt()), format!("m in {lo}..={hi}"));
    }
    let rises = two
        .windows(2)
        .filter(|w| w[0].m >= trend_start && w[1].sqrt_n_delta_squared() > w[0].sqrt_n_delta_squared())
        .count();
    o.tally("pointwise_increases_2m_m", rises as u64);
    b.merge(o);
    Ok(b.finish())
}

pub(super) fn tvk_scaling(params: &SuiteParams) -> Result<SuiteReport> {
    let alpha = params.alpha.clone().unwrap_or_else(|| vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)]);
    let family = Family::Tvk(alpha);
    let n_max = params.n_max_or(48);
    let cap2 = cap_squared(TVK_CAP);
    let ms: Vec<usize> = (params.n_min.unwrap_or(6)..=n_max)
        .filter(|&m| family.shape(m).is_ok_and(|s| s.size() >= 2 && s.outer().len() >= 2))
        .collect();
    let points = family_scan(&family, ms)?;
    let mut b = Builder::new(
        "tvk_scaling",
        true,
        format!(
            "{family} for n <= {n_max}: sqrt(|lambda|) delta <= {}/{} (frozen cap); n^(5/4) delta reported",
            TVK_CAP.0, TVK_CAP.1
        ),
    );
    for p in points {
        let mut o = Outcome::default();
        o.assert("cap", p.sqrt_n_delta_squared() <= cap2, &p.shape, || format!("sqrt(n) delta ~ {:.4}", p.sqrt_n_delta_approx));
        o.max("max_sqrt_n_delta", Value::Approx(p.sqrt_n_delta_approx), &p.shape);
        let n = p.n as f64;
        o.max("max_n_5_4_delta", Value::Approx(n.powf(1.25) * arith::to_f64(&p.delta)), &p.shape);
        b.merge(o);
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_families() {
        assert_eq!("rect(3:1)".parse::<Family>().unwrap(), Family::Rect(3));
        assert_eq!("catalan".parse::<Family>().unwrap(), Family::Catalan);
        let t: Family = "tvk(1/2,0.3,0.2)".parse().unwrap();
        assert_eq!(t, Family::Tvk(vec![ratio(1, 2), ratio(3, 10), ratio(1, 5)]));
        assert_eq!(t.shape(10).unwrap().outer().parts(), &[5, 3, 2]);
        assert!("tvk(0.2,0.5)".parse::<Family>().is_err());
        assert!("rect(2:3)".parse::<Family>().is_err());
        assert!(matches!("square".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn small_points() {
        let p = family_point(&Family::Catalan, 3).unwrap();
        assert_eq!(p.delta, ratio(1, 5));
        let p = family_point(&Family::Rect(2), 3).unwrap();
        assert_eq!(p.delta, ratio(1, 6));
        let p = family_point(&Family::TwoChain, 7).unwrap();
        assert_eq!(p.delta, ratio(1, 7));
    }

    #[test]
    fn blocks_absorb_short_tail() {
        let pts: Vec<FamilyPoint> = (20..=60).map(|m| family_point(&Family::TwoChain, m).unwrap()).collect();
        let b = block_maxima(&pts, 20);
        let ranges: Vec<(usize, usize)> = b.iter().map(|x| (x.0, x.1)).collect();
        assert_eq!(ranges, [(20, 29), (30, 39), (40, 49), (50, 60)]);
    }
}
