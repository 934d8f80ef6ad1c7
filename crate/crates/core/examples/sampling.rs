//! Uniform sampling, Monte Carlo sorting probabilities and the walk event C.

use skewsort::sorting::prob_before;
use skewsort::walks::{estimate_prob_c, lattice_walk, mc_prob_before, sample_syt};
use skewsort::{Cell, SkewShape};

fn main() -> skewsort::Result<()> {
    let s: SkewShape = "[4,3,1]/[1]".parse()?;
    let path = sample_syt(&s, 42);
    println!("a uniform filling of {s}, as its chain of ideals:");
    for state in &path.states {
        println!("  {state}");
    }

    let s: SkewShape = "[3,3]".parse()?;
    let (x, y) = (Cell::new(1, 2), Cell::new(2, 1));
    let mc = mc_prob_before(&s, x, y, 100_000, 7)?;
    println!(
        "P[L{x} < L{y}] ~ {:.4} +- {:.4} (exact {})",
        mc.estimate_approx,
        mc.hoeffding_halfwidth_approx,
        prob_before(&s, x, y)?
    );

    let w = lattice_walk(&s, 3);
    println!("one biased lattice walk from the empty shape: stays ordered and ends at [3,3]: {}", w.hit_c);
    let c = estimate_prob_c(&s, 100_000, 5)?;
    println!(
        "P[C] ~ {:.5} +- {:.5}, exact {}, asymptotic floor {:.4}",
        c.estimate_approx, c.hoeffding_halfwidth_approx, c.exact, c.lemma_floor_approx
    );
    Ok(())
}
