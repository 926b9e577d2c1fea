//! Bracket annotation of a CNF grammar.
//!
//! Every production p gets four brackets `(p )p [p ]p`. The annotated
//! grammar G̃ replaces `A -> B C` by `A -> (p B )p [p C ]p` and `A -> a` by
//! `A -> (p )p [p ]p`. Its language is the set of balanced bracket words
//! that also satisfy a handful of adjacency constraints (a local regular
//! language, recognised by [`ConditionAutomaton`]). Erasing every bracket
//! except `(p` for terminal rules, which maps to the rule's letter, gives
//! back the original language.

use std::collections::BTreeSet;
use std::fmt;

use crate::grammar::{
    bounded_language, cyk_membership, enumerate_words, CnfGrammar, CnfRhs, Grammar, ParseTree,
    Production, Symbol,
};
use crate::parikh::{Alphabet, Word};
use crate::semilinear::WordHomomorphism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    OpenRound,
    CloseRound,
    OpenSquare,
    CloseSquare,
}

impl Shape {
    const ALL: [Shape; 4] = [
        Shape::OpenRound,
        Shape::CloseRound,
        Shape::OpenSquare,
        Shape::CloseSquare,
    ];

    fn glyph(self) -> char {
        match self {
            Shape::OpenRound => '(',
            Shape::CloseRound => ')',
            Shape::OpenSquare => '[',
            Shape::CloseSquare => ']',
        }
    }

    fn is_open(self) -> bool {
        matches!(self, Shape::OpenRound | Shape::OpenSquare)
    }
}

/// One of `(p`, `)p`, `[p`, `]p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracket {
    pub production: usize,
    pub shape: Shape,
}

impl Bracket {
    pub fn new(production: usize, shape: Shape) -> Self {
        Bracket { production, shape }
    }

    /// Position in the bracket alphabet: productions in order, and within
    /// a production the shapes `( ) [ ]`.
    pub fn index(self) -> usize {
        4 * self.production + self.shape as usize
    }

    pub fn from_index(i: usize) -> Self {
        Bracket {
            production: i / 4,
            shape: Shape::ALL[i % 4],
        }
    }

    /// Parses the `(p3` rendering.
    pub fn parse(text: &str) -> Option<Self> {
        let mut chars = text.chars();
        let shape = match chars.next()? {
            '(' => Shape::OpenRound,
            ')' => Shape::CloseRound,
            '[' => Shape::OpenSquare,
            ']' => Shape::CloseSquare,
            _ => return None,
        };
        let rest = chars.as_str().strip_prefix('p')?;
        Some(Bracket {
            production: rest.parse().ok()?,
            shape,
        })
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}p{}", self.shape.glyph(), self.production)
    }
}

pub fn render_brackets(w: &[Bracket]) -> String {
    if w.is_empty() {
        return "<eps>".into();
    }
    w.iter()
        .map(Bracket::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// G̃ together with the CNF grammar it annotates.
#[derive(Debug, Clone)]
pub struct AnnotatedGrammar {
    base: CnfGrammar,
    tilde: Grammar,
    bracket_alphabet: Vec<Bracket>,
}

pub fn build_annotated_grammar(g: &CnfGrammar) -> AnnotatedGrammar {
    let bracket_alphabet: Vec<Bracket> = (0..4 * g.num_rules()).map(Bracket::from_index).collect();
    let alphabet = Alphabet::new(bracket_alphabet.iter().map(Bracket::to_string));
    let t = |p: usize, s: Shape| Symbol::Terminal(Bracket::new(p, s).index());
    let productions = g
        .rules()
        .iter()
        .enumerate()
        .map(|(p, r)| {
            let rhs = match r.rhs {
                CnfRhs::Binary(b, c) => vec![
                    t(p, Shape::OpenRound),
                    Symbol::Nonterminal(b),
                    t(p, Shape::CloseRound),
                    t(p, Shape::OpenSquare),
                    Symbol::Nonterminal(c),
                    t(p, Shape::CloseSquare),
                ],
                CnfRhs::Terminal(_) => Shape::ALL.iter().map(|&s| t(p, s)).collect(),
            };
            Production { lhs: r.lhs, rhs }
        })
        .collect();
    let tilde = Grammar::new(g.nonterminals().to_vec(), alphabet, productions, g.start())
        .expect("bracket names never clash with nonterminal names");
    AnnotatedGrammar {
        base: g.clone(),
        tilde,
        bracket_alphabet,
    }
}

impl AnnotatedGrammar {
    pub fn base(&self) -> &CnfGrammar {
        &self.base
    }

    /// G̃ as an ordinary grammar over the bracket alphabet; production ids
    /// coincide with the base grammar's.
    pub fn tilde_grammar(&self) -> &Grammar {
        &self.tilde
    }

    pub fn bracket_alphabet(&self) -> &[Bracket] {
        &self.bracket_alphabet
    }

    /// The bracket alphabet as named letters (`(p0`, `)p0`, …).
    pub fn alphabet(&self) -> &Alphabet {
        self.tilde.alphabet()
    }

    /// The bracket word G̃ derives along the annotated copy of a base
    /// parse tree.
    pub fn annotate(&self, tree: &ParseTree) -> Vec<Bracket> {
        let mut out = Vec::new();
        self.annotate_into(tree, &mut out);
        out
    }

    fn annotate_into(&self, tree: &ParseTree, out: &mut Vec<Bracket>) {
        if let ParseTree::Node {
            production,
            children,
        } = tree
        {
            let p = *production;
            let b = |s| Bracket::new(p, s);
            out.push(b(Shape::OpenRound));
            if let [l, r] = children.as_slice() {
                self.annotate_into(l, out);
                out.push(b(Shape::CloseRound));
                out.push(b(Shape::OpenSquare));
                self.annotate_into(r, out);
            } else {
                out.push(b(Shape::CloseRound));
                out.push(b(Shape::OpenSquare));
            }
            out.push(b(Shape::CloseSquare));
        }
    }
}

/// Balanced-bracket check with 2|P| bracket types: `(p`/`)p` and `[p`/`]p`.
pub fn dyck_check(w: &[Bracket]) -> bool {
    let mut stack = Vec::new();
    for b in w {
        match b.shape {
            Shape::OpenRound | Shape::OpenSquare => stack.push(*b),
            Shape::CloseRound | Shape::CloseSquare => {
                let want = Bracket::new(
                    b.production,
                    if b.shape == Shape::CloseRound {
                        Shape::OpenRound
                    } else {
                        Shape::OpenSquare
                    },
                );
                if stack.pop() != Some(want) {
                    return false;
                }
            }
        }
    }
    stack.is_empty()
}

const INIT: usize = 0;
const DEAD: usize = 1;

/// Total DFA over the bracket alphabet whose state is the previous letter
/// (plus an initial and a dead state). Accepts the words in which
///
/// 1. every `)p` is immediately followed by `[p`;
/// 2. no `]p` is immediately followed by an opening bracket;
/// 3. for `p = A -> B C`, `(p` is immediately followed by some `(q` with
///    `q` a rule for `B`, and `[p` by some `(r` with `r` a rule for `C`;
/// 4. for `p = A -> a`, `(p )p [p ]p` occur consecutively;
/// 5. the first letter is `(p` for a rule `p` of the start symbol.
///
/// Rules 1, 3 and 4 each demand a next letter, so a non-empty word can
/// only end on some `]p`: the accepting states are those of the `]p` and
/// the initial state (ε is accepted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionAutomaton {
    letters: usize,
    // transitions[state][letter]
    transitions: Vec<Vec<usize>>,
}

pub fn build_condition_automaton(g: &CnfGrammar) -> ConditionAutomaton {
    let letters = 4 * g.num_rules();
    let state_of = |b: Bracket| 2 + b.index();
    let opens_rule_for = |next: Bracket, nt: usize| {
        next.shape == Shape::OpenRound && g.rule(next.production).lhs == nt
    };
    let allowed = |prev: Bracket, next: Bracket| match (prev.shape, g.rule(prev.production).rhs) {
        (Shape::CloseRound, _) => next == Bracket::new(prev.production, Shape::OpenSquare),
        (Shape::CloseSquare, _) => !next.shape.is_open(),
        (Shape::OpenRound, CnfRhs::Binary(b, _)) => opens_rule_for(next, b),
        (Shape::OpenSquare, CnfRhs::Binary(_, c)) => opens_rule_for(next, c),
        (Shape::OpenRound, CnfRhs::Terminal(_)) => {
            next == Bracket::new(prev.production, Shape::CloseRound)
        }
        (Shape::OpenSquare, CnfRhs::Terminal(_)) => {
            next == Bracket::new(prev.production, Shape::CloseSquare)
        }
    };
    let mut transitions = vec![vec![DEAD; letters]; letters + 2];
    for next in (0..letters).map(Bracket::from_index) {
        if opens_rule_for(next, g.start()) {
            transitions[INIT][next.index()] = state_of(next);
        }
        for prev in (0..letters).map(Bracket::from_index) {
            if allowed(prev, next) {
                transitions[state_of(prev)][next.index()] = state_of(next);
            }
        }
    }
    ConditionAutomaton {
        letters,
        transitions,
    }
}

impl ConditionAutomaton {
    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        INIT
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        state == INIT
            || (state > DEAD && Bracket::from_index(state - 2).shape == Shape::CloseSquare)
    }

    pub fn step(&self, state: usize, b: Bracket) -> usize {
        self.transitions[state][b.index()]
    }

    pub fn run(&self, w: &[Bracket]) -> usize {
        w.iter().fold(INIT, |s, &b| {
            if b.index() < self.letters {
                self.step(s, b)
            } else {
                DEAD
            }
        })
    }

    pub fn state_name(&self, state: usize) -> String {
        match state {
            INIT => "init".into(),
            DEAD => "dead".into(),
            s => Bracket::from_index(s - 2).to_string(),
        }
    }

    /// One `state letter -> state` line per transition, states and letters
    /// in index order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (s, row) in self.transitions.iter().enumerate() {
            for (l, &t) in row.iter().enumerate() {
                out.push_str(&format!(
                    "{} {} -> {}\n",
                    self.state_name(s),
                    Bracket::from_index(l),
                    self.state_name(t)
                ));
            }
        }
        out
    }
}

/// Membership in the condition language R.
pub fn r_check(a: &ConditionAutomaton, w: &[Bracket]) -> bool {
    a.is_accepting(a.run(w))
}

/// h: `(p ↦ a` for `p = A -> a`, every other bracket ↦ ε.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasingHomomorphism {
    images: Vec<Option<usize>>,
    target: Alphabet,
}

pub fn build_erasing_homomorphism(g: &CnfGrammar) -> ErasingHomomorphism {
    let images = (0..4 * g.num_rules())
        .map(Bracket::from_index)
        .map(|b| match (b.shape, g.rule(b.production).rhs) {
            (Shape::OpenRound, CnfRhs::Terminal(a)) => Some(a),
            _ => None,
        })
        .collect();
    ErasingHomomorphism {
        images,
        target: g.alphabet().clone(),
    }
}

impl ErasingHomomorphism {
    pub fn image(&self, b: Bracket) -> Option<usize> {
        self.images[b.index()]
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    /// The same map as a generic [`WordHomomorphism`] from the bracket
    /// alphabet to Σ.
    pub fn to_word_homomorphism(&self) -> WordHomomorphism {
        let domain =
            Alphabet::new((0..self.images.len()).map(|i| Bracket::from_index(i).to_string()));
        let images = self
            .images
            .iter()
            .map(|img| {
                img.map(|a| self.target.letter(a).to_string())
                    .into_iter()
                    .collect()
            })
            .collect();
        WordHomomorphism::new(domain, images).expect("one image per bracket")
    }

    /// One `bracket -> image` line per bracket; ε renders as `<eps>`.
    pub fn table(&self) -> String {
        (0..self.images.len())
            .map(|i| {
                let img =
                    self.images[i].map_or("<eps>".into(), |a| self.target.letter(a).to_string());
                format!("{} -> {}\n", Bracket::from_index(i), img)
            })
            .collect()
    }
}

pub fn apply_homomorphism(h: &ErasingHomomorphism, w: &[Bracket]) -> Word {
    w.iter().filter_map(|&b| h.image(b)).collect()
}

/// Outcome of [`verify_representation`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepresentationReport {
    /// Words of G̃ checked for Dyck ∧ R ∧ h(w̃) ∈ L.
    pub tilde_words_checked: usize,
    /// Words of L checked for a preimage in L(G̃).
    pub words_checked: usize,
    pub counterexamples: Vec<String>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks L = h(Dyck ∩ R) up to words of length `max_word_len`.
///
/// A CNF derivation of a word of length n uses 2n − 1 rules and each emits
/// four brackets, so G̃ words up to length 4(2n − 1) cover every word of L
/// up to length n.
pub fn verify_representation(g: &CnfGrammar, max_word_len: usize) -> RepresentationReport {
    let ann = build_annotated_grammar(g);
    let dfa = build_condition_automaton(g);
    let h = build_erasing_homomorphism(g);
    let mut report = RepresentationReport::default();
    let tilde_bound = if max_word_len == 0 {
        0
    } else {
        4 * (2 * max_word_len - 1)
    };
    let tilde_words = bounded_language(ann.tilde_grammar(), tilde_bound);
    let mut images: BTreeSet<Word> = BTreeSet::new();
    for tw in &tilde_words {
        let brackets: Vec<Bracket> = tw.iter().map(|&i| Bracket::from_index(i)).collect();
        report.tilde_words_checked += 1;
        let word = apply_homomorphism(&h, &brackets);
        let in_l = cyk_membership(g, &word).unwrap_or(false);
        if !(dyck_check(&brackets) && r_check(&dfa, &brackets) && in_l) {
            report.counterexamples.push(format!(
                "tilde word {} fails (dyck={}, r={}, h in L={})",
                render_brackets(&brackets),
                dyck_check(&brackets),
                r_check(&dfa, &brackets),
                in_l
            ));
        }
        images.insert(word);
    }
    for w in enumerate_words(g, max_word_len) {
        if w.is_empty() {
            continue;
        }
        report.words_checked += 1;
        if !images.contains(&w) {
            report.counterexamples.push(format!(
                "word {} has no bracket preimage in the annotated grammar",
                g.alphabet().render_word(&w)
            ));
        }
    }
    report
}

/// The annotated rules rendered one per line with production ids.
pub fn render_annotated(ann: &AnnotatedGrammar) -> String {
    let g = ann.tilde_grammar();
    g.productions()
        .iter()
        .enumerate()
        .map(|(p, prod)| {
            let rhs: Vec<String> = prod
                .rhs
                .iter()
                .map(|s| match *s {
                    Symbol::Terminal(t) => g.alphabet().letter(t).to_string(),
                    Symbol::Nonterminal(n) => g.nonterminal_name(n).to_string(),
                })
                .collect();
            format!(
                "{p}: {} -> {}\n",
                g.nonterminal_name(prod.lhs),
                rhs.join(" ")
            )
        })
        .collect()
}
