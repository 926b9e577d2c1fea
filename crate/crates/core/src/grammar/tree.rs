use std::collections::BTreeSet;

use super::{CnfGrammar, CnfRhs};
use crate::parikh::Word;

/// A parse tree over a [`CnfGrammar`]. A [`ParseTree::Foot`] marks the single
/// open nonterminal leaf of a pump context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParseTree {
    Node {
        production: usize,
        children: Vec<ParseTree>,
    },
    Leaf(usize),
    Foot(usize),
}

impl ParseTree {
    pub fn terminal(production: usize, letter: usize) -> Self {
        ParseTree::Node {
            production,
            children: vec![ParseTree::Leaf(letter)],
        }
    }

    pub fn binary(production: usize, left: ParseTree, right: ParseTree) -> Self {
        ParseTree::Node {
            production,
            children: vec![left, right],
        }
    }

    /// Root nonterminal; `None` for a bare terminal leaf.
    pub fn root(&self, g: &CnfGrammar) -> Option<usize> {
        match self {
            ParseTree::Node { production, .. } => Some(g.rule(*production).lhs),
            ParseTree::Foot(n) => Some(*n),
            ParseTree::Leaf(_) => None,
        }
    }

    /// Terminal leaves left to right; a foot contributes nothing.
    pub fn yield_word(&self) -> Word {
        let mut out = Vec::new();
        self.collect_yield(&mut out);
        out
    }

    fn collect_yield(&self, out: &mut Word) {
        match self {
            ParseTree::Node { children, .. } => children.iter().for_each(|c| c.collect_yield(out)),
            ParseTree::Leaf(a) => out.push(*a),
            ParseTree::Foot(_) => {}
        }
    }

    /// Number of nonterminal levels (terminal leaves do not count).
    pub fn depth(&self) -> usize {
        match self {
            ParseTree::Node { children, .. } => {
                1 + children.iter().map(ParseTree::depth).max().unwrap_or(0)
            }
            ParseTree::Foot(_) => 1,
            ParseTree::Leaf(_) => 0,
        }
    }

    /// μ_p(t): how many nodes apply each production.
    pub fn production_counts(&self, num_productions: usize) -> Vec<u64> {
        let mut counts = vec![0; num_productions];
        self.add_counts(&mut counts);
        counts
    }

    fn add_counts(&self, counts: &mut [u64]) {
        if let ParseTree::Node {
            production,
            children,
        } = self
        {
            counts[*production] += 1;
            children.iter().for_each(|c| c.add_counts(counts));
        }
    }

    /// Every nonterminal label in the tree, including the foot's.
    pub fn nonterminals(&self, g: &CnfGrammar) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.visit_labels(g, &mut |n| {
            out.insert(n);
        });
        out
    }

    fn visit_labels(&self, g: &CnfGrammar, f: &mut impl FnMut(usize)) {
        match self {
            ParseTree::Node {
                production,
                children,
            } => {
                f(g.rule(*production).lhs);
                children.iter().for_each(|c| c.visit_labels(g, f));
            }
            ParseTree::Foot(n) => f(*n),
            ParseTree::Leaf(_) => {}
        }
    }

    pub fn foot_count(&self) -> usize {
        match self {
            ParseTree::Node { children, .. } => children.iter().map(ParseTree::foot_count).sum(),
            ParseTree::Foot(_) => 1,
            ParseTree::Leaf(_) => 0,
        }
    }

    /// Nonterminal label sequences of all root-to-leaf paths.
    pub fn paths(&self, g: &CnfGrammar) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.collect_paths(g, &mut Vec::new(), &mut out);
        out
    }

    fn collect_paths(&self, g: &CnfGrammar, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match self {
            ParseTree::Node {
                production,
                children,
            } => {
                prefix.push(g.rule(*production).lhs);
                for c in children {
                    c.collect_paths(g, prefix, out);
                }
                prefix.pop();
            }
            ParseTree::Foot(n) => {
                prefix.push(*n);
                out.push(prefix.clone());
                prefix.pop();
            }
            ParseTree::Leaf(_) => out.push(prefix.clone()),
        }
    }

    /// Checks that every node's children match its production.
    pub fn is_valid(&self, g: &CnfGrammar) -> bool {
        match self {
            ParseTree::Node {
                production,
                children,
            } => {
                let Some(rule) = g.rules().get(*production) else {
                    return false;
                };
                let shape_ok = match (rule.rhs, children.as_slice()) {
                    (CnfRhs::Terminal(a), [ParseTree::Leaf(b)]) => a == *b,
                    (CnfRhs::Binary(b, c), [l, r]) => l.root(g) == Some(b) && r.root(g) == Some(c),
                    _ => false,
                };
                shape_ok && children.iter().all(|c| c.is_valid(g))
            }
            ParseTree::Foot(n) => *n < g.nonterminals().len(),
            ParseTree::Leaf(a) => *a < g.alphabet().len(),
        }
    }

    /// Replaces the foot with `sub`.
    pub fn plug(&self, sub: &ParseTree) -> ParseTree {
        match self {
            ParseTree::Node {
                production,
                children,
            } => ParseTree::Node {
                production: *production,
                children: children.iter().map(|c| c.plug(sub)).collect(),
            },
            ParseTree::Foot(_) => sub.clone(),
            leaf => leaf.clone(),
        }
    }

    /// All trees obtained by inserting `pump` at one node labelled with the
    /// pump's root nonterminal.
    pub fn splice_everywhere(&self, g: &CnfGrammar, pump: &ParseTree) -> Vec<ParseTree> {
        let Some(x) = pump.root(g) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if let ParseTree::Node {
            production,
            children,
        } = self
        {
            if g.rule(*production).lhs == x {
                out.push(pump.plug(self));
            }
            for (i, child) in children.iter().enumerate() {
                for spliced in child.splice_everywhere(g, pump) {
                    let mut cs = children.clone();
                    cs[i] = spliced;
                    out.push(ParseTree::Node {
                        production: *production,
                        children: cs,
                    });
                }
            }
        }
        out
    }

    /// Compact rendering such as `S(T0(a) T1(b))`; a foot renders as `*S`.
    pub fn render(&self, g: &CnfGrammar) -> String {
        match self {
            ParseTree::Node {
                production,
                children,
            } => {
                let inner: Vec<String> = children.iter().map(|c| c.render(g)).collect();
                format!(
                    "{}({})",
                    g.nonterminal_name(g.rule(*production).lhs),
                    inner.join(" ")
                )
            }
            ParseTree::Leaf(a) => g.alphabet().letter(*a).to_string(),
            ParseTree::Foot(n) => format!("*{}", g.nonterminal_name(*n)),
        }
    }
}
