#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use parikh_kit::grammar::{bounded_language, Grammar};
use parikh_kit::NVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn grammar_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("grammars")
        .join(name)
}

/// The three reference grammars: a^n b^n, balanced l/r words, a^+.
pub fn golden() -> Vec<(&'static str, Grammar)> {
    ["anbn.cfg", "dyck1.cfg", "aplus.cfg"]
        .into_iter()
        .map(|f| {
            let text = std::fs::read_to_string(grammar_file(f)).unwrap();
            (f, Grammar::parse(&text).unwrap())
        })
        .collect()
}

pub fn count(w: &[usize], k: usize) -> NVector {
    let mut c = vec![0; k];
    for &a in w {
        c[a] += 1;
    }
    NVector::new(c)
}

/// Parikh vectors of all words of length ≤ `max_len`, by the fixpoint
/// oracle on the original grammar.
pub fn oracle_vectors(g: &Grammar, max_len: usize) -> BTreeSet<NVector> {
    bounded_language(g, max_len)
        .iter()
        .map(|w| count(w, g.alphabet().len()))
        .collect()
}

/// A random grammar already in Chomsky normal form with at most 3
/// nonterminals, 2 letters and 6 rules, whose language is non-empty.
pub fn random_cnf_grammar(rng: &mut ChaCha8Rng) -> (String, Grammar) {
    const NTS: [&str; 3] = ["S", "A", "B"];
    const LETTERS: [&str; 2] = ["a", "b"];
    loop {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=2);
        let p = rng.gen_range(n..=6);
        let mut rules = BTreeSet::new();
        for i in 0..p {
            // every nonterminal gets at least one rule
            let lhs = if i < n { i } else { rng.gen_range(0..n) };
            let rhs = if rng.gen_bool(0.5) {
                format!("{} {}", NTS[rng.gen_range(0..n)], NTS[rng.gen_range(0..n)])
            } else {
                LETTERS[rng.gen_range(0..k)].to_string()
            };
            rules.insert((lhs, rhs));
        }
        let text: String = rules
            .iter()
            .map(|(l, r)| format!("{} -> {}\n", NTS[*l], r))
            .collect();
        let Ok(g) = Grammar::parse(&text) else {
            continue;
        };
        if !text.starts_with("S ->") || bounded_language(&g, 8).is_empty() {
            continue;
        }
        return (text, g);
    }
}
