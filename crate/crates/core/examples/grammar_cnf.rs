//! Parse a grammar, convert it to Chomsky normal form, and query it.
//!
//! cargo run --example grammar_cnf

use parikh_kit::grammar::{bounded_language, cyk_membership, enumerate_words, to_cnf, Grammar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grammar::parse(
        "# balanced parentheses
         S -> '(' S ')' S | eps",
    )?;
    print!("source grammar:\n{}", g.render());

    let cnf = to_cnf(&g);
    println!(
        "\nCNF ({} rules, ε in language: {}):",
        cnf.num_rules(),
        cnf.epsilon_in_language()
    );
    print!("{cnf}");

    for text in ["()()", "(()", "(())"] {
        let w = g.alphabet().tokenize(text)?;
        println!("CYK {text:>5}: {}", cyk_membership(&cnf, &w)?);
    }

    let words = enumerate_words(&cnf, 6);
    let rendered: Vec<String> = words.iter().map(|w| g.alphabet().render_word(w)).collect();
    println!("\nwords up to length 6: {}", rendered.join(" "));
    assert_eq!(
        words,
        bounded_language(&g, 6),
        "CNF and source grammar disagree"
    );
    Ok(())
}
