//! Brute-force language oracles. Everything else in the crate is checked
//! against these at small word lengths.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::{CnfGrammar, CnfRhs, Grammar, GrammarError, ParseTree, Symbol};
use crate::parikh::Word;

/// CYK membership. For the empty word this is the ε flag.
pub fn cyk_membership(g: &CnfGrammar, w: &[usize]) -> Result<bool, GrammarError> {
    if let Some(&a) = w.iter().find(|&&a| a >= g.alphabet().len()) {
        return Err(GrammarError::LetterOutsideAlphabet(a));
    }
    if w.is_empty() {
        return Ok(g.epsilon_in_language());
    }
    let n = w.len();
    let nts = g.nonterminals().len();
    // table[len-1][start] = set of nonterminals deriving w[start..start+len]
    let mut table = vec![vec![vec![false; nts]; n]; n];
    for (i, &a) in w.iter().enumerate() {
        for r in g.rules() {
            if r.rhs == CnfRhs::Terminal(a) {
                table[0][i][r.lhs] = true;
            }
        }
    }
    for len in 2..=n {
        for start in 0..=n - len {
            for split in 1..len {
                for r in g.rules() {
                    if let CnfRhs::Binary(b, c) = r.rhs {
                        if table[split - 1][start][b] && table[len - split - 1][start + split][c] {
                            table[len - 1][start][r.lhs] = true;
                        }
                    }
                }
            }
        }
    }
    Ok(table[n - 1][0][g.start()])
}

/// All words of the language with length ≤ `max_len`, by breadth-first
/// leftmost derivation. Sentential forms longer than `max_len` are pruned;
/// CNF forms never shrink.
pub fn enumerate_words(g: &CnfGrammar, max_len: usize) -> BTreeSet<Word> {
    let mut words = BTreeSet::new();
    if g.epsilon_in_language() {
        words.insert(Vec::new());
    }
    if max_len == 0 {
        return words;
    }
    let start = vec![Symbol::Nonterminal(g.start())];
    let mut visited: HashSet<Vec<Symbol>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(form) = queue.pop_front() {
        let Some(pos) = form
            .iter()
            .position(|s| matches!(s, Symbol::Nonterminal(_)))
        else {
            words.insert(
                form.iter()
                    .map(|s| match s {
                        Symbol::Terminal(a) => *a,
                        Symbol::Nonterminal(_) => unreachable!(),
                    })
                    .collect(),
            );
            continue;
        };
        let Symbol::Nonterminal(x) = form[pos] else {
            unreachable!()
        };
        for &p in g.rules_for(x) {
            let mut next = Vec::with_capacity(form.len() + 1);
            next.extend_from_slice(&form[..pos]);
            match g.rule(p).rhs {
                CnfRhs::Terminal(a) => next.push(Symbol::Terminal(a)),
                CnfRhs::Binary(b, c) => {
                    if form.len() + 1 > max_len {
                        continue;
                    }
                    next.push(Symbol::Nonterminal(b));
                    next.push(Symbol::Nonterminal(c));
                }
            }
            next.extend_from_slice(&form[pos + 1..]);
            if visited.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    words
}

/// Words of length ≤ `max_len` of an arbitrary grammar (ε-rules and unit
/// rules allowed), computed as the least fixpoint of the per-nonterminal
/// language equations truncated at `max_len`. Independent of CNF
/// conversion.
pub fn bounded_language(g: &Grammar, max_len: usize) -> BTreeSet<Word> {
    let n = g.nonterminals().len();
    let mut langs: Vec<HashSet<Word>> = vec![HashSet::new(); n];
    loop {
        let mut changed = false;
        for p in g.productions() {
            let mut acc: HashSet<Word> = HashSet::from([Vec::new()]);
            for s in &p.rhs {
                let mut next = HashSet::new();
                match *s {
                    Symbol::Terminal(a) => {
                        for w in &acc {
                            if w.len() < max_len {
                                let mut w = w.clone();
                                w.push(a);
                                next.insert(w);
                            }
                        }
                    }
                    Symbol::Nonterminal(x) => {
                        for w in &acc {
                            for v in &langs[x] {
                                if w.len() + v.len() <= max_len {
                                    let mut joined = w.clone();
                                    joined.extend_from_slice(v);
                                    next.insert(joined);
                                }
                            }
                        }
                    }
                }
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            for w in acc {
                changed |= langs[p.lhs].insert(w);
            }
        }
        if !changed {
            break;
        }
    }
    std::mem::take(&mut langs[g.start()]).into_iter().collect()
}

/// All complete parse trees rooted at `root` with at most `max_depth`
/// nonterminal levels.
pub fn enumerate_parse_trees(g: &CnfGrammar, root: usize, max_depth: usize) -> Vec<ParseTree> {
    let mut memo = HashMap::new();
    trees_at(g, root, max_depth, &mut memo)
}

fn trees_at(
    g: &CnfGrammar,
    x: usize,
    depth: usize,
    memo: &mut HashMap<(usize, usize), Vec<ParseTree>>,
) -> Vec<ParseTree> {
    if depth == 0 {
        return Vec::new();
    }
    if let Some(v) = memo.get(&(x, depth)) {
        return v.clone();
    }
    let mut out = Vec::new();
    for &p in g.rules_for(x) {
        match g.rule(p).rhs {
            CnfRhs::Terminal(a) => out.push(ParseTree::terminal(p, a)),
            CnfRhs::Binary(b, c) => {
                let left = trees_at(g, b, depth - 1, memo);
                let right = trees_at(g, c, depth - 1, memo);
                for l in &left {
                    for r in &right {
                        out.push(ParseTree::binary(p, l.clone(), r.clone()));
                    }
                }
            }
        }
    }
    memo.insert((x, depth), out.clone());
    out
}

/// Production-count vectors of all complete trees rooted at `root` with
/// depth ≤ `max_depth`, without materialising the trees.
pub fn tree_count_vectors(g: &CnfGrammar, root: usize, max_depth: usize) -> BTreeSet<Vec<u64>> {
    let k = g.num_rules();
    let nts = g.nonterminals().len();
    let mut level: Vec<HashSet<Vec<u64>>> = vec![HashSet::new(); nts];
    for _ in 0..max_depth {
        let mut next: Vec<HashSet<Vec<u64>>> = vec![HashSet::new(); nts];
        for (p, r) in g.rules().iter().enumerate() {
            match r.rhs {
                CnfRhs::Terminal(_) => {
                    let mut v = vec![0; k];
                    v[p] = 1;
                    next[r.lhs].insert(v);
                }
                CnfRhs::Binary(b, c) => {
                    for l in &level[b] {
                        for rv in &level[c] {
                            let mut v: Vec<u64> = l.iter().zip(rv).map(|(x, y)| x + y).collect();
                            v[p] += 1;
                            next[r.lhs].insert(v);
                        }
                    }
                }
            }
        }
        level = next;
    }
    std::mem::take(&mut level[root]).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::to_cnf;

    fn g1() -> CnfGrammar {
        to_cnf(&Grammar::parse("S -> a S b | a b").unwrap())
    }

    fn words(g: &CnfGrammar, strs: &[&str]) -> BTreeSet<Word> {
        strs.iter()
            .map(|s| g.alphabet().tokenize(s).unwrap())
            .collect()
    }

    #[test]
    fn cyk_anbn() {
        let g = g1();
        let aabb = g.alphabet().tokenize("aabb").unwrap();
        let aab = g.alphabet().tokenize("aab").unwrap();
        assert!(cyk_membership(&g, &aabb).unwrap());
        assert!(!cyk_membership(&g, &aab).unwrap());
        assert!(!cyk_membership(&g, &[]).unwrap());
        assert!(cyk_membership(&g, &[0, 7]).is_err());
    }

    #[test]
    fn enumerate_anbn() {
        let g = g1();
        assert_eq!(enumerate_words(&g, 6), words(&g, &["ab", "aabb", "aaabbb"]));
        assert!(enumerate_words(&g, 0).is_empty());
        let eps = to_cnf(&Grammar::parse("S -> eps").unwrap());
        assert_eq!(enumerate_words(&eps, 0), BTreeSet::from([vec![]]));
        let single = to_cnf(&Grammar::parse("S -> a").unwrap());
        assert_eq!(enumerate_words(&single, 3), words(&single, &["a"]));
    }

    #[test]
    fn bounded_language_handles_epsilon_and_units() {
        let g = Grammar::parse("S -> S S | '(' S ')' | eps").unwrap();
        let lang = bounded_language(&g, 4);
        let expect: BTreeSet<Word> = ["", "()", "(())", "()()"]
            .iter()
            .map(|s| g.alphabet().tokenize(s).unwrap())
            .collect();
        assert_eq!(lang, expect);
    }

    #[test]
    fn parse_trees_by_depth() {
        let g = g1();
        let d2 = enumerate_parse_trees(&g, g.start(), 2);
        assert_eq!(d2.len(), 1);
        assert_eq!(d2[0].yield_word(), vec![0, 1]);
        let d4 = enumerate_parse_trees(&g, g.start(), 4);
        let yields: BTreeSet<Word> = d4.iter().map(ParseTree::yield_word).collect();
        assert_eq!(d4.len(), 2);
        assert_eq!(yields, words(&g, &["ab", "aabb"]));
        assert!(d4.iter().all(|t| t.is_valid(&g)));
        let aabb = d4.iter().find(|t| t.yield_word().len() == 4).unwrap();
        assert_eq!(aabb.production_counts(5), vec![1, 1, 1, 2, 2]);
    }

    #[test]
    fn no_rules_no_trees() {
        let g = to_cnf(&Grammar::parse("S -> S S").unwrap());
        assert!(enumerate_parse_trees(&g, g.start(), 5).is_empty());
    }

    #[test]
    fn count_vectors_match_trees() {
        let g = to_cnf(&Grammar::parse("S -> S S | a | b").unwrap());
        for depth in 0..=4 {
            let from_trees: BTreeSet<Vec<u64>> = enumerate_parse_trees(&g, g.start(), depth)
                .iter()
                .map(|t| t.production_counts(g.num_rules()))
                .collect();
            assert_eq!(tree_count_vectors(&g, g.start(), depth), from_trees);
        }
    }
}
