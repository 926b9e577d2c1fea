use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::{Grammar, GrammarError, Production, Symbol};
use crate::parikh::Alphabet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CnfRhs {
    Binary(usize, usize),
    Terminal(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CnfRule {
    pub lhs: usize,
    pub rhs: CnfRhs,
}

/// A grammar whose rules are all `A -> B C` or `A -> a`. Its language never
/// contains ε; whether ε was in the source language is kept in
/// [`CnfGrammar::epsilon_in_language`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfGrammar {
    nonterminals: Vec<String>,
    alphabet: Alphabet,
    rules: Vec<CnfRule>,
    start: usize,
    epsilon: bool,
    by_lhs: Vec<Vec<usize>>,
}

impl CnfGrammar {
    pub fn new(
        nonterminals: Vec<String>,
        alphabet: Alphabet,
        rules: Vec<CnfRule>,
        start: usize,
        epsilon_in_language: bool,
    ) -> Result<Self, GrammarError> {
        // reuse the general validation
        let productions = rules.iter().map(|r| r.to_production()).collect();
        let g = Grammar::new(nonterminals, alphabet, productions, start)?;
        let mut by_lhs = vec![Vec::new(); g.nonterminals.len()];
        for (i, r) in rules.iter().enumerate() {
            by_lhs[r.lhs].push(i);
        }
        Ok(CnfGrammar {
            nonterminals: g.nonterminals,
            alphabet: g.alphabet,
            rules,
            start,
            epsilon: epsilon_in_language,
            by_lhs,
        })
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn nonterminal_name(&self, n: usize) -> &str {
        &self.nonterminals[n]
    }

    pub fn nonterminal_index(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|n| n == name)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[CnfRule] {
        &self.rules
    }

    pub fn rule(&self, p: usize) -> CnfRule {
        self.rules[p]
    }

    /// Production ids with the given left-hand side.
    pub fn rules_for(&self, nt: usize) -> &[usize] {
        &self.by_lhs[nt]
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn epsilon_in_language(&self) -> bool {
        self.epsilon
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    /// The same rules as an ordinary [`Grammar`] (ε is not represented).
    pub fn to_grammar(&self) -> Grammar {
        Grammar {
            nonterminals: self.nonterminals.clone(),
            alphabet: self.alphabet.clone(),
            productions: self.rules.iter().map(|r| r.to_production()).collect(),
            start: self.start,
        }
    }

    pub fn render_rule(&self, p: usize) -> String {
        let r = self.rules[p];
        let rhs = match r.rhs {
            CnfRhs::Binary(b, c) => format!("{} {}", self.nonterminals[b], self.nonterminals[c]),
            CnfRhs::Terminal(a) => super::render_terminal(self.alphabet.letter(a)),
        };
        format!("{} -> {}", self.nonterminals[r.lhs], rhs)
    }
}

impl fmt::Display for CnfGrammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..self.rules.len() {
            writeln!(f, "{p}: {}", self.render_rule(p))?;
        }
        if self.epsilon {
            writeln!(f, "# epsilon in language")?;
        }
        Ok(())
    }
}

impl CnfRule {
    fn to_production(self) -> Production {
        let rhs = match self.rhs {
            CnfRhs::Binary(b, c) => vec![Symbol::Nonterminal(b), Symbol::Nonterminal(c)],
            CnfRhs::Terminal(a) => vec![Symbol::Terminal(a)],
        };
        Production { lhs: self.lhs, rhs }
    }
}

struct Work {
    names: Vec<String>,
    taken: HashSet<String>,
    next_fresh: usize,
    rules: Vec<(usize, Vec<Symbol>)>,
}

impl Work {
    fn fresh(&mut self) -> usize {
        loop {
            let name = format!("T{}", self.next_fresh);
            self.next_fresh += 1;
            if self.taken.insert(name.clone()) {
                self.names.push(name);
                return self.names.len() - 1;
            }
        }
    }
}

/// Converts to Chomsky normal form: TERM, BIN, DEL and UNIT elimination,
/// then removal of useless nonterminals. Fresh nonterminals are named
/// `T0`, `T1`, … in creation order, skipping names already in use.
///
/// The result lists binary rules before terminal rules, each group stably
/// ordered by left-hand side.
pub fn to_cnf(g: &Grammar) -> CnfGrammar {
    let epsilon = g.nullable()[g.start];
    let mut w = Work {
        names: g.nonterminals.clone(),
        taken: g
            .nonterminals
            .iter()
            .chain(g.alphabet.letters())
            .cloned()
            .collect(),
        next_fresh: 0,
        rules: Vec::new(),
    };

    // TERM
    let mut term_nt: Vec<Option<usize>> = vec![None; g.alphabet.len()];
    let mut term_rules = Vec::new();
    let mut rules = Vec::new();
    for p in &g.productions {
        if p.rhs.len() < 2 {
            rules.push((p.lhs, p.rhs.clone()));
            continue;
        }
        let rhs = p
            .rhs
            .iter()
            .map(|&s| match s {
                Symbol::Terminal(a) => {
                    let n = *term_nt[a].get_or_insert_with(|| {
                        let n = w.fresh();
                        term_rules.push((n, vec![Symbol::Terminal(a)]));
                        n
                    });
                    Symbol::Nonterminal(n)
                }
                s => s,
            })
            .collect();
        rules.push((p.lhs, rhs));
    }
    rules.extend(term_rules);

    // BIN
    for (lhs, rhs) in rules {
        if rhs.len() <= 2 {
            w.rules.push((lhs, rhs));
            continue;
        }
        let mut head = lhs;
        for &sym in &rhs[..rhs.len() - 2] {
            let next = w.fresh();
            w.rules.push((head, vec![sym, Symbol::Nonterminal(next)]));
            head = next;
        }
        let k = rhs.len();
        w.rules.push((head, vec![rhs[k - 2], rhs[k - 1]]));
    }

    // DEL
    let n = w.names.len();
    let nullable = {
        let mut nullable = vec![false; n];
        let mut changed = true;
        while changed {
            changed = false;
            for (lhs, rhs) in &w.rules {
                if !nullable[*lhs]
                    && rhs
                        .iter()
                        .all(|s| matches!(*s, Symbol::Nonterminal(x) if nullable[x]))
                {
                    nullable[*lhs] = true;
                    changed = true;
                }
            }
        }
        nullable
    };
    let is_nullable = |s: Symbol| matches!(s, Symbol::Nonterminal(x) if nullable[x]);
    let mut del = Vec::new();
    for (lhs, rhs) in &w.rules {
        match rhs.as_slice() {
            [] => {}
            [x] => del.push((*lhs, vec![*x])),
            [x, y] => {
                del.push((*lhs, vec![*x, *y]));
                if is_nullable(*y) {
                    del.push((*lhs, vec![*x]));
                }
                if is_nullable(*x) {
                    del.push((*lhs, vec![*y]));
                }
            }
            _ => unreachable!("BIN leaves at most two symbols"),
        }
    }

    // UNIT
    let mut unit_edges = vec![Vec::new(); n];
    for (lhs, rhs) in &del {
        if let [Symbol::Nonterminal(b)] = rhs.as_slice() {
            unit_edges[*lhs].push(*b);
        }
    }
    let unit_closure: Vec<BTreeSet<usize>> = (0..n)
        .map(|a| {
            let mut seen = BTreeSet::from([a]);
            let mut stack = vec![a];
            while let Some(x) = stack.pop() {
                for &y in &unit_edges[x] {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect();
    let mut cnf: Vec<CnfRule> = Vec::new();
    let mut seen = HashSet::new();
    let emit = |lhs: usize, rhs: &[Symbol], cnf: &mut Vec<CnfRule>, seen: &mut HashSet<CnfRule>| {
        let rhs = match *rhs {
            [Symbol::Nonterminal(b), Symbol::Nonterminal(c)] => CnfRhs::Binary(b, c),
            [Symbol::Terminal(a)] => CnfRhs::Terminal(a),
            _ => return,
        };
        let r = CnfRule { lhs, rhs };
        if seen.insert(r) {
            cnf.push(r);
        }
    };
    for (lhs, rhs) in &del {
        if !matches!(rhs.as_slice(), [Symbol::Nonterminal(_)]) {
            emit(*lhs, rhs, &mut cnf, &mut seen);
        }
    }
    for (a, closure) in unit_closure.iter().enumerate() {
        for &b in closure {
            if b == a {
                continue;
            }
            for (lhs, rhs) in &del {
                if *lhs == b && !matches!(rhs.as_slice(), [Symbol::Nonterminal(_)]) {
                    emit(a, rhs, &mut cnf, &mut seen);
                }
            }
        }
    }

    // useless symbols: non-generating, then unreachable
    let mut generating = vec![false; n];
    let mut changed = true;
    while changed {
        changed = false;
        for r in &cnf {
            let ok = match r.rhs {
                CnfRhs::Terminal(_) => true,
                CnfRhs::Binary(b, c) => generating[b] && generating[c],
            };
            if ok && !generating[r.lhs] {
                generating[r.lhs] = true;
                changed = true;
            }
        }
    }
    cnf.retain(|r| match r.rhs {
        CnfRhs::Terminal(_) => generating[r.lhs],
        CnfRhs::Binary(b, c) => generating[r.lhs] && generating[b] && generating[c],
    });
    let mut reachable = vec![false; n];
    reachable[g.start] = true;
    let mut stack = vec![g.start];
    while let Some(x) = stack.pop() {
        for r in cnf.iter().filter(|r| r.lhs == x) {
            if let CnfRhs::Binary(b, c) = r.rhs {
                for y in [b, c] {
                    if !reachable[y] {
                        reachable[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
    }
    cnf.retain(|r| reachable[r.lhs]);

    // canonical order and reindexing
    cnf.sort_by_key(|r| (matches!(r.rhs, CnfRhs::Terminal(_)), r.lhs));
    let mut keep = vec![false; n];
    keep[g.start] = true;
    for r in &cnf {
        keep[r.lhs] = true;
    }
    let mut remap = vec![usize::MAX; n];
    let mut names = Vec::new();
    for (i, name) in w.names.iter().enumerate() {
        if keep[i] {
            remap[i] = names.len();
            names.push(name.clone());
        }
    }
    let rules = cnf
        .into_iter()
        .map(|r| CnfRule {
            lhs: remap[r.lhs],
            rhs: match r.rhs {
                CnfRhs::Binary(b, c) => CnfRhs::Binary(remap[b], remap[c]),
                t => t,
            },
        })
        .collect();
    CnfGrammar::new(names, g.alphabet.clone(), rules, remap[g.start], epsilon)
        .expect("CNF conversion preserves validity")
}
