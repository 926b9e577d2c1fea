//! Cross-check a computed image against brute-force word enumeration, and
//! watch the checks catch a wrong one.
//!
//! cargo run --example oracle_check

use parikh_kit::check::run_checks;
use parikh_kit::extraction::parikh_image;
use parikh_kit::grammar::Grammar;
use parikh_kit::semilinear::ParikhImage;
use parikh_kit::{LinearSet, NVector, SemilinearSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grammar::parse("S -> a S b b | c")?;
    let image = parikh_image(&g)?;
    print!("{}", image.to_text());
    print!("{}", run_checks(&g, &image, 10));

    // claim a^n b^n c instead of a^n b^2n c
    let wrong = ParikhImage::new(
        g.alphabet().clone(),
        SemilinearSet::from_linear(LinearSet::new(
            NVector::new(vec![0, 0, 1]),
            vec![NVector::new(vec![1, 1, 0])],
        )?),
    )?;
    println!("\nwith a wrong image:");
    print!("{}", run_checks(&g, &wrong, 10));
    Ok(())
}
