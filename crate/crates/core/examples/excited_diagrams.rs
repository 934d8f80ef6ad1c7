//! Excited diagrams of a skew shape and the matching flagged tableaux.

use skewsort::excited::{excited_diagrams_bfs, flagged_tableaux, flagged_to_excited};
use skewsort::SkewShape;

fn main() -> skewsort::Result<()> {
    let s: SkewShape = "[4,4,3]/[2,1]".parse()?;
    let diagrams = excited_diagrams_bfs(&s);
    println!("{s}: {} excited diagrams", diagrams.len());
    for t in flagged_tableaux(&s) {
        let d = flagged_to_excited(&t);
        let cells: Vec<String> = d.cells().iter().map(|c| c.to_string()).collect();
        println!("  flagged {:?} -> {}", t.entries(), cells.join(" "));
    }
    Ok(())
}
