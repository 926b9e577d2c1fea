//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always printed.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use parikh_kit::cs::{
    apply_homomorphism, build_annotated_grammar, build_condition_automaton,
    build_erasing_homomorphism, dyck_check, verify_representation, Bracket,
};
use parikh_kit::extraction::{compute_omega, parikh_image, production_counts};
use parikh_kit::grammar::{
    bounded_language, cyk_membership, enumerate_words, to_cnf, tree_count_vectors, Grammar,
};
use parikh_kit::parikh::{parikh_add, parikh_of_indices};
use parikh_kit::semilinear::induced_map_of_homomorphism;
use parikh_kit::{Alphabet, LinearSet, NVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{count, golden, random_cnf_grammar};

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    failures: Vec<String>,
    note: String,
    limit: Option<Duration>,
}

impl Outcome {
    fn new(note: impl Into<String>) -> Self {
        Outcome {
            failures: Vec::new(),
            note: note.into(),
            limit: None,
        }
    }

    fn within(mut self, limit: Duration) -> Self {
        self.limit = Some(limit);
        self
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

/// Golden grammars plus seeded random CNF grammars, all distinct.
fn sweep_grammars() -> Vec<(String, Grammar)> {
    let mut out: Vec<(String, Grammar)> = golden()
        .into_iter()
        .map(|(name, g)| (name.to_string(), g))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut seen = BTreeSet::new();
    while out.len() < 10 {
        let (text, g) = random_cnf_grammar(&mut rng);
        if seen.insert(text.clone()) {
            out.push((text.replace('\n', "; "), g));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut o =
        Outcome::new("anbn, dyck1, aplus against word oracle").within(Duration::from_secs(5));
    for (name, g) in golden() {
        let start = Instant::now();
        let img = parikh_image(&g).unwrap();
        let bound = if name == "dyck1.cfg" { 10 } else { 8 };
        let members = img.set.enumerate_members(bound);
        let expected: BTreeSet<NVector> = match name {
            "anbn.cfg" => (1..=4).map(|n| NVector::new(vec![n, n])).collect(),
            "dyck1.cfg" => (0..=5).map(|n| NVector::new(vec![n, n])).collect(),
            _ => (1..=8).map(|n| NVector::new(vec![n])).collect(),
        };
        let oracle: BTreeSet<NVector> = enumerate_words(&to_cnf(&g), bound as usize)
            .iter()
            .map(|w| count(w, g.alphabet().len()))
            .collect();
        if members != expected || oracle != expected {
            o.fail(format!(
                "{name}: image members {members:?}, oracle {oracle:?}"
            ));
        }
        if name == "anbn.cfg"
            && img.to_text() != "alphabet: a b\nlinear base=[1,1] periods=[[1,1]]\n"
        {
            o.fail(format!(
                "anbn: expected one component, got {}",
                img.to_text()
            ));
        }
        if start.elapsed() > Duration::from_secs(5) {
            o.fail(format!("{name}: took {:?}", start.elapsed()));
        }
    }
    o
}

fn criterion_2(grammars: &[(String, Grammar)]) -> Outcome {
    let mut o = Outcome::new(format!("{} grammars, words up to length 8", grammars.len()))
        .within(Duration::from_secs(60));
    for (name, g) in grammars {
        let img = parikh_image(g).unwrap();
        for w in enumerate_words(&to_cnf(g), 8) {
            let v = count(&w, g.alphabet().len());
            if !img.set.contains(&v).unwrap() {
                o.fail(format!("{name}: {} missing", g.alphabet().render_word(&w)));
            }
        }
    }
    o
}

fn criterion_3(grammars: &[(String, Grammar)]) -> Outcome {
    let mut o = Outcome::new(format!("{} grammars, members up to sum 8", grammars.len()))
        .within(Duration::from_secs(60));
    for (name, g) in grammars {
        let img = parikh_image(g).unwrap();
        let realised: BTreeSet<NVector> = enumerate_words(&to_cnf(g), 8)
            .iter()
            .map(|w| count(w, g.alphabet().len()))
            .collect();
        for v in img.set.enumerate_members(8) {
            if !realised.contains(&v) {
                o.fail(format!("{name}: {v} has no word"));
            }
        }
    }
    o
}

/// Every non-empty bracket word of length ≤ `max` over the bracket alphabet
/// of `g`, filtered by Dyck and R, compared with the words of G̃.
fn exhaustive_brackets(g: &Grammar, max: usize) -> Result<usize, String> {
    let cnf = to_cnf(g);
    let ann = build_annotated_grammar(&cnf);
    let dfa = build_condition_automaton(&cnf);
    let letters = 4 * cnf.num_rules();
    let tilde: BTreeSet<Vec<usize>> = bounded_language(ann.tilde_grammar(), max);
    let mut accepted = BTreeSet::new();
    let mut word = Vec::with_capacity(max);
    fn walk(word: &mut Vec<usize>, max: usize, letters: usize, visit: &mut dyn FnMut(&[usize])) {
        visit(word);
        if word.len() == max {
            return;
        }
        for l in 0..letters {
            word.push(l);
            walk(word, max, letters, visit);
            word.pop();
        }
    }
    let mut visited = 0usize;
    walk(&mut word, max, letters, &mut |w| {
        visited += 1;
        if w.is_empty() {
            return;
        }
        let b: Vec<Bracket> = w.iter().map(|&i| Bracket::from_index(i)).collect();
        if dyck_check(&b) && dfa.is_accepting(dfa.run(&b)) {
            accepted.insert(w.to_vec());
        }
    });
    if accepted != tilde {
        let diff: Vec<_> = accepted.symmetric_difference(&tilde).take(3).collect();
        return Err(format!(
            "{} vs {} words, e.g. {diff:?}",
            accepted.len(),
            tilde.len()
        ));
    }
    Ok(visited)
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new("");
    o.limit = Some(Duration::from_secs(60));
    for (name, g) in golden() {
        let report = verify_representation(&to_cnf(&g), 6);
        if let Some(c) = report.counterexamples.first() {
            o.fail(format!("{name}: {c}"));
        }
    }
    let g = Grammar::parse("S -> S S | a").unwrap();
    match exhaustive_brackets(&g, 8) {
        Ok(n) => o.note = format!("golden at length 6; {n} bracket words for S -> S S | a"),
        Err(e) => o.fail(format!("S -> S S | a: {e}")),
    }
    o
}

fn criterion_5(grammars: &[(String, Grammar)]) -> Outcome {
    let mut o = Outcome::new("");
    let (mut pumps, mut splices, mut vectors) = (0, 0, 0);
    for (i, (name, g)) in grammars.iter().enumerate() {
        let cnf = to_cnf(g);
        let omega = compute_omega(&cnf).unwrap();
        let ceiling = 1u64 << (cnf.nonterminals().len() + 2);
        for p in &omega.pumps {
            pumps += 1;
            if p.counts.coord_sum() >= ceiling {
                o.fail(format!(
                    "{name}: pump {} has size {}",
                    p.tree.render(&cnf),
                    p.counts.coord_sum()
                ));
            }
        }
        if i < 3 {
            for b in &omega.bases {
                for q in omega
                    .pumps
                    .iter()
                    .filter(|q| b.nonterminals_used.contains(&q.root))
                {
                    let spliced = b.tree.splice_everywhere(&cnf, &q.tree);
                    if spliced.is_empty() {
                        o.fail(format!("{name}: nowhere to splice {}", q.tree.render(&cnf)));
                    }
                    for t in spliced {
                        splices += 1;
                        let expect = b.counts.checked_add(&q.counts).unwrap();
                        if !t.is_valid(&cnf)
                            || production_counts(&cnf, &t) != expect
                            || !cyk_membership(&cnf, &t.yield_word()).unwrap()
                        {
                            o.fail(format!("{name}: bad splice {}", t.render(&cnf)));
                        }
                    }
                }
            }
        }
        // depth 7 on the golden grammars; the random ones at depth 6 keep the
        // vector-set product tractable
        let depth = if i < 3 { 7 } else { 6 };
        for v in tree_count_vectors(&cnf, cnf.start(), depth) {
            vectors += 1;
            let v = NVector::new(v);
            if !omega.set.contains(&v).unwrap() {
                o.fail(format!("{name}: depth-{depth} tree vector {v} outside Ω"));
            }
        }
    }
    o.note = format!(
        "{pumps} pumps, {splices} splices, {vectors} tree vectors (depth 7 golden, 6 random)"
    );
    o
}

fn criterion_6(grammars: &[(String, Grammar)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut o = Outcome::new(format!(
        "500 bracket words for each of {} grammars",
        grammars.len()
    ));
    for (name, g) in grammars {
        let cnf = to_cnf(g);
        let h = build_erasing_homomorphism(&cnf);
        let phi = induced_map_of_homomorphism(&h.to_word_homomorphism(), cnf.alphabet()).unwrap();
        let letters = 4 * cnf.num_rules();
        for _ in 0..500 {
            let len = rng.gen_range(0..=12);
            let w: Vec<Bracket> = (0..len)
                .map(|_| Bracket::from_index(rng.gen_range(0..letters)))
                .collect();
            let direct = count(&apply_homomorphism(&h, &w), cnf.alphabet().len());
            let via = phi.apply(&count(
                &w.iter().map(|b| b.index()).collect::<Vec<_>>(),
                letters,
            ));
            if via.as_ref() != Ok(&direct) {
                o.fail(format!("{name}: {w:?}"));
            }
        }
    }
    o
}

fn grid_member(base: &[u64], periods: &[Vec<u64>], v: &[u64]) -> bool {
    let m = periods.len();
    let mut lambda = vec![0u64; m];
    loop {
        let hit = (0..v.len())
            .all(|i| base[i] + (0..m).map(|j| lambda[j] * periods[j][i]).sum::<u64>() == v[i]);
        if hit {
            return true;
        }
        let Some(j) = (0..m).find(|&j| lambda[j] < 10) else {
            return false;
        };
        lambda[j] += 1;
        lambda[..j].iter_mut().for_each(|l| *l = 0);
    }
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut o = Outcome::new("1000 instances, grid λ ≤ 10");
    let mut members = 0;
    for _ in 0..1000 {
        let dim = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=3);
        let base: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..=3)).collect();
        let periods: Vec<Vec<u64>> = (0..m)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..=3)).collect())
            .collect();
        let v: Vec<u64> = if rng.gen_bool(0.5) {
            let mut v = base.clone();
            for p in &periods {
                let k = rng.gen_range(0..=10);
                v.iter_mut().zip(p).for_each(|(x, y)| *x += k * y);
            }
            v
        } else {
            (0..dim).map(|_| rng.gen_range(0..=10)).collect()
        };
        let set = LinearSet::new(
            NVector::new(base.clone()),
            periods.iter().cloned().map(NVector::new).collect(),
        )
        .unwrap();
        let target = NVector::new(v.clone());
        let fast = set.member(&target).unwrap();
        let slow = grid_member(&base, &periods, &v);
        if let Some(lambda) = &fast {
            members += 1;
            let mut sum = set.base().clone();
            for (p, &k) in set.periods().iter().zip(lambda) {
                sum = sum.add_scaled(p, k).unwrap();
            }
            if sum != target {
                o.fail(format!(
                    "bad witness {lambda:?} for {target} in {base:?}+{periods:?}"
                ));
            }
        }
        if fast.is_some() != slow {
            o.fail(format!(
                "{target} in {base:?}+{periods:?}: solver {fast:?}, grid {slow}"
            ));
        }
    }
    o.note = format!("1000 instances, {members} members, grid λ ≤ 10");
    o
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut o = Outcome::new("1000 word pairs");
    for _ in 0..1000 {
        let k = rng.gen_range(1..=4);
        let alphabet = Alphabet::from_chars(&"abcd"[..k]);
        let word = |rng: &mut ChaCha8Rng| -> Vec<usize> {
            (0..rng.gen_range(0..=20))
                .map(|_| rng.gen_range(0..k))
                .collect()
        };
        let (u, w) = (word(&mut rng), word(&mut rng));
        let joined: Vec<usize> = u.iter().chain(&w).copied().collect();
        let lhs = parikh_of_indices(&joined, &alphabet).unwrap();
        let rhs = parikh_add(
            &parikh_of_indices(&u, &alphabet).unwrap(),
            &parikh_of_indices(&w, &alphabet).unwrap(),
        )
        .unwrap();
        if lhs != rhs {
            o.fail(format!("{u:?} {w:?}"));
        }
    }
    o
}

fn main() {
    let grammars = sweep_grammars();
    for (name, _) in &grammars {
        println!("sweep grammar: {name}");
    }
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("golden grammars end to end", Box::new(criterion_1)),
        ("soundness sweep", Box::new(|| criterion_2(&grammars))),
        ("completeness sweep", Box::new(|| criterion_3(&grammars))),
        ("bracket representation", Box::new(criterion_4)),
        (
            "pump and base tree internals",
            Box::new(|| criterion_5(&grammars)),
        ),
        (
            "homomorphism/linear map commutation",
            Box::new(|| criterion_6(&grammars)),
        ),
        ("linear membership vs grid search", Box::new(criterion_7)),
        ("Parikh map is a monoid homomorphism", Box::new(criterion_8)),
    ];
    let mut all_pass = true;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(limit) = o.limit {
            if elapsed > limit {
                o.fail(format!("took {elapsed:?}, limit {limit:?}"));
            }
        }
        let verdict = if o.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        all_pass &= o.failures.is_empty();
        println!(
            "criterion {} {verdict} {title}: {} [{:.2}s]",
            i + 1,
            o.note,
            elapsed.as_secs_f64()
        );
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if !all_pass {
        std::process::exit(1);
    }
}
