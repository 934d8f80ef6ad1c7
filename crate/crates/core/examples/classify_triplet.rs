//! Admissibility, separation, progress and solidity of partition triplets.

use skewsort::arith::ratio;
use skewsort::walks::classify_triplet;
use skewsort::Partition;

fn main() -> skewsort::Result<()> {
    let lam: Partition = "[12,8,4]".parse()?;
    let mu: Partition = "[4,2]".parse()?;
    let eps = ratio(1, 8);
    for g in ["[8,5,2]", "[6,4,2]", "[11,3,1]"] {
        let gamma: Partition = g.parse()?;
        let c = classify_triplet(&lam, &gamma, &mu, 3, &eps)?;
        let y: Vec<String> = c.y.approx().iter().map(|v| format!("{v:.3}")).collect();
        println!(
            "{lam} > {gamma} > {mu}: admissible pair {}, separated {}, progressive {}, p = {}, y = ({}), solid constant {}",
            c.pair_admissible,
            c.separated,
            c.progressive,
            c.p,
            y.join(", "),
            c.min_solid_constant
        );
    }
    Ok(())
}
