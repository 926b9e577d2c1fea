mod common;

use std::collections::BTreeSet;

use parikh_kit::cs::{build_annotated_grammar, build_condition_automaton, dyck_check, r_check};
use parikh_kit::extraction::{
    compute_omega, direct_parikh_image, enumerate_base_trees, enumerate_pump_trees, is_base_shaped,
    is_pump_shaped, parikh_image,
};
use parikh_kit::grammar::{
    bounded_language, cyk_membership, enumerate_parse_trees, enumerate_words, to_cnf,
    tree_count_vectors, Grammar,
};
use parikh_kit::parikh::{parikh_add, parikh_of_indices};
use parikh_kit::semilinear::{ParikhImage, SemilinearSet};
use parikh_kit::{Alphabet, LinearMap, LinearSet, NVector};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use common::{count, oracle_vectors};

const NTS: [&str; 3] = ["S", "A", "B"];

/// Source text of a small grammar in free form: ε-rules, unit rules and
/// long right-hand sides all allowed.
fn grammar_source() -> impl Strategy<Value = String> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(n, k)| {
        let symbol = prop_oneof![
            (0..n).prop_map(|i| NTS[i].to_string()),
            (0..k).prop_map(|i| ["a", "b"][i].to_string()),
        ];
        let rhs = prop::collection::vec(symbol, 0..=3);
        let extra = prop::collection::vec((0..n, rhs.clone()), 0..=4);
        (prop::collection::vec(rhs, n), extra).prop_map(move |(first, extra)| {
            let mut lines = String::new();
            let rules = first.into_iter().enumerate().chain(extra);
            for (lhs, rhs) in rules {
                let body = if rhs.is_empty() {
                    "eps".to_string()
                } else {
                    rhs.join(" ")
                };
                lines.push_str(&format!("{} -> {}\n", NTS[lhs], body));
            }
            lines
        })
    })
}

/// Extraction is exponential in the grammar size; keep the CNF at a size
/// where it finishes quickly.
const MAX_CNF_RULES: usize = 20;

fn vector(dim: usize, max: u64) -> impl Strategy<Value = NVector> {
    prop::collection::vec(0..=max, dim).prop_map(NVector::new)
}

fn linear_set(dim: usize) -> impl Strategy<Value = LinearSet> {
    (vector(dim, 3), prop::collection::vec(vector(dim, 3), 0..=3))
        .prop_map(|(b, ps)| LinearSet::new(b, ps).unwrap())
}

fn semilinear_set(dim: usize) -> impl Strategy<Value = SemilinearSet> {
    prop::collection::vec(linear_set(dim), 0..=3)
        .prop_map(move |cs| SemilinearSet::new(dim, cs).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(prop::collection::vec(0u64..=2, cols), rows)
        .prop_map(|r| LinearMap::new(r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        rng_seed: RngSeed::Fixed(0x5eed_2024),
        ..ProptestConfig::default()
    })]

    #[test]
    fn parikh_map_is_additive(
        u in prop::collection::vec(0usize..3, 0..15),
        w in prop::collection::vec(0usize..3, 0..15),
    ) {
        let a = Alphabet::from_chars("xyz");
        let joined: Vec<usize> = u.iter().chain(&w).copied().collect();
        let lhs = parikh_of_indices(&joined, &a).unwrap();
        let rhs = parikh_add(&parikh_of_indices(&u, &a).unwrap(), &parikh_of_indices(&w, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs.total(), joined.len() as u64);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn grammar_render_reparses(src in grammar_source()) {
        if let Ok(g) = Grammar::parse(&src) {
            let again = Grammar::parse(&g.render()).unwrap();
            prop_assert_eq!(bounded_language(&g, 5), bounded_language(&again, 5));
            prop_assert_eq!(again.render(), g.render());
        }
    }

    #[test]
    fn cnf_preserves_bounded_language(src in grammar_source()) {
        let Ok(g) = Grammar::parse(&src) else { return Ok(()) };
        let cnf = to_cnf(&g);
        let oracle = bounded_language(&g, 6);
        prop_assert_eq!(enumerate_words(&cnf, 6), oracle.clone());
        // CYK agrees with the oracle on every word over the alphabet up to length 4
        let k = g.alphabet().len();
        let mut frontier: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..=4 {
            let mut next = Vec::new();
            for w in &frontier {
                prop_assert_eq!(cyk_membership(&cnf, w).unwrap(), oracle.contains(w), "{:?}", w);
                for a in 0..k {
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            frontier = next;
        }
    }

    #[test]
    fn parikh_image_matches_oracle(src in grammar_source()) {
        let Ok(g) = Grammar::parse(&src) else { return Ok(()) };
        prop_assume!(to_cnf(&g).num_rules() <= MAX_CNF_RULES);
        let img = parikh_image(&g).unwrap();
        let oracle = oracle_vectors(&g, 6);
        prop_assert_eq!(img.set.enumerate_members(6), oracle.clone(), "{}", src);
        let direct = direct_parikh_image(&g).unwrap();
        prop_assert_eq!(direct.set.enumerate_members(6), oracle);
    }

    #[test]
    fn tree_shapes_and_omega(src in grammar_source()) {
        let Ok(g) = Grammar::parse(&src) else { return Ok(()) };
        let cnf = to_cnf(&g);
        prop_assume!(cnf.num_rules() <= MAX_CNF_RULES);
        let omega = compute_omega(&cnf).unwrap();
        let ceiling = 1u64 << (cnf.nonterminals().len() + 2);
        for p in enumerate_pump_trees(&cnf) {
            prop_assert!(p.tree.is_valid(&cnf) && is_pump_shaped(&cnf, &p.tree));
            prop_assert!(p.tree.depth() <= cnf.nonterminals().len() + 1);
            prop_assert!(p.counts.coord_sum() < ceiling);
        }
        for b in enumerate_base_trees(&cnf) {
            prop_assert!(b.tree.is_valid(&cnf) && is_base_shaped(&cnf, &b.tree));
        }
        let ann = build_annotated_grammar(&cnf);
        let dfa = build_condition_automaton(&cnf);
        for v in tree_count_vectors(&cnf, cnf.start(), 5) {
            prop_assert!(omega.set.contains(&NVector::new(v)).unwrap());
        }
        for t in enumerate_parse_trees(&cnf, cnf.start(), 4) {
            let brackets = ann.annotate(&t);
            prop_assert!(dyck_check(&brackets) && r_check(&dfa, &brackets));
        }
    }

    #[test]
    fn membership_witnesses_are_valid(set in linear_set(3), v in vector(3, 9)) {
        if let Some(lambda) = set.member(&v).unwrap() {
            let mut sum = set.base().clone();
            for (p, &k) in set.periods().iter().zip(&lambda) {
                sum = sum.add_scaled(p, k).unwrap();
            }
            prop_assert_eq!(sum, v);
        }
    }

    #[test]
    fn members_are_members(set in semilinear_set(2)) {
        for v in set.enumerate_members(6) {
            prop_assert!(set.contains(&v).unwrap());
            prop_assert!(v.coord_sum() <= 6);
        }
    }

    #[test]
    fn enumeration_is_monotone(set in semilinear_set(2), n in 0u64..6) {
        let small = set.enumerate_members(n);
        let large = set.enumerate_members(n + 1);
        prop_assert!(small.is_subset(&large));
        let cut: BTreeSet<NVector> = large.into_iter().filter(|v| v.coord_sum() <= n).collect();
        prop_assert_eq!(cut, small);
    }

    #[test]
    fn simplify_keeps_members(set in semilinear_set(2)) {
        prop_assert_eq!(set.simplify().enumerate_members(8), set.enumerate_members(8));
    }

    #[test]
    fn union_is_set_union(a in semilinear_set(2), b in semilinear_set(2)) {
        let u = a.union(&b).unwrap();
        let expect: BTreeSet<NVector> =
            a.enumerate_members(6).union(&b.enumerate_members(6)).cloned().collect();
        prop_assert_eq!(u.enumerate_members(6), expect);
    }

    #[test]
    fn images_compose(set in semilinear_set(2), m1 in matrix(3, 2), m2 in matrix(2, 3)) {
        let stepwise = set.image(&m1).unwrap().image(&m2).unwrap();
        let direct = set.image(&m2.compose(&m1).unwrap()).unwrap();
        prop_assert_eq!(stepwise.enumerate_members(8), direct.enumerate_members(8));
        // every image of a small member is a member of the image
        for v in set.enumerate_members(3) {
            prop_assert!(stepwise.contains(&m2.apply(&m1.apply(&v).unwrap()).unwrap()).unwrap());
        }
    }

    #[test]
    fn vectors_and_images_round_trip(set in semilinear_set(2)) {
        for c in set.components() {
            prop_assert_eq!(NVector::parse(&c.base().to_string()), Some(c.base().clone()));
        }
        let img = ParikhImage::new(Alphabet::from_chars("ab"), set).unwrap();
        prop_assert_eq!(ParikhImage::from_json(&img.to_json()).unwrap(), img);
    }
}

#[test]
fn oracle_vectors_of_dyck() {
    let g = Grammar::parse("S -> l S r S | eps").unwrap();
    let expect: BTreeSet<NVector> = (0..=3).map(|n| NVector::new(vec![n, n])).collect();
    assert_eq!(oracle_vectors(&g, 6), expect);
    assert_eq!(count(&[0, 1, 1], 2), NVector::new(vec![1, 2]));
}
