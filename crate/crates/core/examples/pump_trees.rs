//! Base trees, pump trees, and the production-count set they generate.
//!
//! cargo run --example pump_trees

use parikh_kit::extraction::compute_omega;
use parikh_kit::grammar::{to_cnf, Grammar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // b* a: the only base tree is S -> a, and the pump through T brings in b
    let cnf = to_cnf(&Grammar::parse("S -> T S | a\nT -> b")?);
    print!("rules:\n{cnf}");

    let omega = compute_omega(&cnf)?;
    println!("\nbase trees:");
    for b in &omega.bases {
        println!("  {}  counts {}", b.tree.render(&cnf), b.counts);
    }
    println!("pump trees (foot marked *):");
    for p in &omega.pumps {
        println!("  {}  counts {}", p.tree.render(&cnf), p.counts);
    }

    // inserting a pump at a matching node adds its counts
    let base = &omega.bases[0];
    for pump in omega
        .pumps
        .iter()
        .filter(|p| base.nonterminals_used.contains(&p.root))
    {
        for t in base.tree.splice_everywhere(&cnf, &pump.tree) {
            println!("splice: {}", t.render(&cnf));
        }
    }

    println!("\nproduction-count set:");
    for c in omega.set.components() {
        println!(
            "  base={} periods={:?}",
            c.base(),
            c.periods()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
        );
    }
    Ok(())
}
