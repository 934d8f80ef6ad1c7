//! Every counting method on a few shapes.

use skewsort::count::{f_determinant, f_frobenius, f_hlf, f_paths, f_product, g_value};
use skewsort::excited::{f_nhlf, f_nhlf_flagged};
use skewsort::SkewShape;

fn main() -> skewsort::Result<()> {
    let straight: SkewShape = "[4,3,1]".parse()?;
    println!("{straight}");
    println!("  hook length formula  {}", f_hlf(straight.outer())?);
    println!("  Frobenius            {}", f_frobenius(straight.outer(), 3)?);

    for text in ["[4,3,1]", "[5,5,4,2]/[3,2]", "[6,6,6]/[3,1]"] {
        let s: SkewShape = text.parse()?;
        println!("{s}  (n = {})", s.size());
        println!("  lattice paths        {}", f_paths(&s));
        println!("  Aitken determinant   {}", f_determinant(&s)?);
        println!("  Naruse (excited)     {}", f_nhlf(&s)?);
        println!("  Naruse (flagged)     {}", f_nhlf_flagged(&s)?);
        println!("  F = n!/prod hooks    {}", f_product(&s));
        println!("  G                    {}", g_value(&s));
    }
    Ok(())
}
