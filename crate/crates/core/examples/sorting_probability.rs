//! Sorting probabilities, the q sequence and the warm-up bounds.

use skewsort::sorting::{delta_poset, phi_of_a, prob_before, q_sequence, warmup_bounds};
use skewsort::{Cell, Partition, SkewShape};

fn main() -> skewsort::Result<()> {
    let s: SkewShape = "[3,3]".parse()?;
    println!("P[L(1,2) < L(2,1)] on {s} = {}", prob_before(&s, Cell::new(1, 2), Cell::new(2, 1))?);

    for text in ["[3,3]", "[4,1]/[1]", "[5,1]/[1]", "[4,3,2]/[2]", "[6,4,2]"] {
        let s: SkewShape = text.parse()?;
        let r = delta_poset(&s)?;
        let w: Vec<String> = r.witnesses.iter().map(|(x, y)| format!("{x}{y}")).collect();
        println!("delta({s}) = {}  witnesses {}", r.delta, w.join(" "));
    }

    let lam: Partition = "[5,3,2]".parse()?;
    let q = q_sequence(&lam)?;
    let qs: Vec<String> = q.values.iter().map(|v| v.to_string()).collect();
    println!("q({lam}) = ({})", qs.join(", "));
    let w = warmup_bounds(&lam)?;
    println!("imbalance q = {}, min(q, 1-q, |1-2q|) = {}, first-row bound = {}", w.q, w.thm_bound, w.m_bound);

    let s = SkewShape::straight(lam);
    for a in 1..=5 {
        println!("phi({a}) = {}", phi_of_a(&s, a)?);
    }
    Ok(())
}
