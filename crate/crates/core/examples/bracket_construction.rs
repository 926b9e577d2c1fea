//! The bracket construction: every word of the language is the image of a
//! balanced bracket word satisfying local adjacency rules.
//!
//! cargo run --example bracket_construction

use parikh_kit::cs::{
    apply_homomorphism, build_annotated_grammar, build_condition_automaton,
    build_erasing_homomorphism, dyck_check, r_check, render_annotated, render_brackets,
    verify_representation,
};
use parikh_kit::grammar::{enumerate_parse_trees, to_cnf, Grammar};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cnf = to_cnf(&Grammar::parse("S -> a S b | a b")?);
    let ann = build_annotated_grammar(&cnf);
    print!("annotated grammar:\n{}", render_annotated(&ann));

    let dfa = build_condition_automaton(&cnf);
    let h = build_erasing_homomorphism(&cnf);
    println!(
        "\nautomaton: {} states over {} brackets",
        dfa.num_states(),
        ann.bracket_alphabet().len()
    );

    for tree in enumerate_parse_trees(&cnf, cnf.start(), 4) {
        let brackets = ann.annotate(&tree);
        let word = apply_homomorphism(&h, &brackets);
        println!(
            "\n{}\n  {}\n  balanced={} conditions={} erases to {}",
            tree.render(&cnf),
            render_brackets(&brackets),
            dyck_check(&brackets),
            r_check(&dfa, &brackets),
            cnf.alphabet().render_word(&word)
        );
    }

    let report = verify_representation(&cnf, 6);
    println!(
        "\nrepresentation up to length 6: {} bracket words, {} words, passed={}",
        report.tilde_words_checked,
        report.words_checked,
        report.passed()
    );
    Ok(())
}
