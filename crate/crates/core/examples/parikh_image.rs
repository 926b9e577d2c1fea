//! The Parikh image of a grammar, with the audit trail behind it.
//!
//! cargo run --example parikh_image [grammar-file]

use parikh_kit::extraction::{parikh_image, render_trace, run_pipeline};
use parikh_kit::grammar::Grammar;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    if let Some(path) = std::env::args().nth(1) {
        let g = Grammar::parse(&std::fs::read_to_string(path)?)?;
        print!("{}", parikh_image(&g)?.to_text());
        return Ok(());
    }
    for src in [
        "S -> a S b | a b",
        "S -> l S r S | eps",
        "S -> a S a | b S | eps",
        "E -> E '+' T | T\nT -> '(' E ')' | x",
    ] {
        let g = Grammar::parse(src)?;
        println!("== {}", src.replace('\n', "; "));
        print!("{}", parikh_image(&g)?.to_text());
    }

    println!("\n== trace for a^n b^n");
    print!(
        "{}",
        render_trace(&run_pipeline(&Grammar::parse("S -> a S b | a b")?)?)
    );
    Ok(())
}
