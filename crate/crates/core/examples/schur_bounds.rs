//! Schur evaluations and the upper bounds for f/F.

use skewsort::arith;
use skewsort::count::{balance_phi, f_paths, f_product};
use skewsort::schur::{interval_upper_bound, k_value, schur_at_ones, schur_eval, schur_ratio_bound, EvaluationPoint, IntervalDecomposition};
use skewsort::{Partition, SkewShape};

fn main() -> skewsort::Result<()> {
    let mu: Partition = "[2,1]".parse()?;
    println!("s_(2,1)(3,2,1) = {}", schur_eval(&mu, &EvaluationPoint::from_integers(&[3, 2, 1])?)?);
    println!("s_(2,1)(1,1,1) = {}", schur_at_ones(&mu, 3)?);

    for text in ["[5,3,1]/[2,1]", "[6,6,2]/[3,1]"] {
        let s: SkewShape = text.parse()?;
        let ratio = arith::from_biguint(&f_paths(&s)) / f_product(&s);
        println!("{s}: f/F = {ratio}, Phi = {}", balance_phi(&s));
        println!("  Schur ratio bound   {}", schur_ratio_bound(&s));
        for ends in [vec![1, 2, 3], vec![2, 3], vec![3]] {
            let b = IntervalDecomposition::new(ends, 3)?;
            let ib = interval_upper_bound(&s, &b);
            println!("  blocks {:?}: interval bound {} (C_d = {}), K = {}", b.ends(), ib.bound, ib.constant, k_value(&s, &b));
        }
    }
    Ok(())
}
