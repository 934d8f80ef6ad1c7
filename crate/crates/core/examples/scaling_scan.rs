//! sqrt(n) delta along the shape families, with decade block maxima.

use skewsort::arith;
use skewsort::verify::families::block_maxima;
use skewsort::verify::{family_scan, Family};

fn main() -> skewsort::Result<()> {
    for (name, range) in [("catalan", 5..=40), ("rect(2:1)", 1..=40), ("n2", 5..=60)] {
        let family: Family = name.parse()?;
        let points = family_scan(&family, range.clone())?;
        println!("{family}");
        for p in points.iter().step_by(5) {
            println!("  {:<16} n = {:>3}  delta = {:<24} sqrt(n) delta = {:.4}", p.shape, p.n, p.delta.to_string(), p.sqrt_n_delta_approx);
        }
        for (lo, hi, v) in block_maxima(&points, *range.start()) {
            println!("  block {lo}..={hi}: max sqrt(n) delta = {:.4}", arith::to_f64(&v).sqrt());
        }
    }
    Ok(())
}
