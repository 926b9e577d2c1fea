//! Context-free grammars: representation, the line-oriented text format,
//! Chomsky-normal-form conversion and brute-force language oracles.
//!
//! The text format is one rule per line:
//!
//! ```text
//! # balanced parentheses
//! S -> '(' S ')' S | eps
//! ```
//!
//! Nonterminals start with an uppercase letter, terminals with a lowercase
//! letter or are single-quoted, `eps` is the empty right-hand side and `#`
//! starts a comment. A line starting with `|` continues the previous rule.
//! The first rule's left-hand side is the start symbol and terminals are
//! numbered in order of first occurrence.

mod cnf;
mod oracle;
mod tree;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::parikh::Alphabet;

pub use cnf::{to_cnf, CnfGrammar, CnfRhs, CnfRule};
pub use oracle::{
    bounded_language, cyk_membership, enumerate_parse_trees, enumerate_words, tree_count_vectors,
};
pub use tree::ParseTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: nonterminal `{name}` has no rule")]
    Undeclared { line: usize, name: String },
    #[error("grammar has no rules")]
    Empty,
    #[error("invalid grammar: {0}")]
    Invalid(String),
    #[error("letter index {0} is outside the alphabet")]
    LetterOutsideAlphabet(usize),
}

/// A grammar symbol, by index into the grammar's alphabet or nonterminal list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(usize),
    Nonterminal(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<Symbol>,
}

/// G = (N, Σ, P, S). Production ids are positions in [`Grammar::productions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    nonterminals: Vec<String>,
    alphabet: Alphabet,
    productions: Vec<Production>,
    start: usize,
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(char::is_whitespace)
}

impl Grammar {
    /// Assembles and validates a grammar from parts.
    pub fn new(
        nonterminals: Vec<String>,
        alphabet: Alphabet,
        productions: Vec<Production>,
        start: usize,
    ) -> Result<Self, GrammarError> {
        if start >= nonterminals.len() {
            return Err(GrammarError::Invalid(
                "start symbol is not a nonterminal".into(),
            ));
        }
        let mut seen = HashMap::new();
        for n in &nonterminals {
            if !valid_name(n) {
                return Err(GrammarError::Invalid(format!("bad nonterminal name `{n}`")));
            }
            if seen.insert(n.as_str(), ()).is_some() {
                return Err(GrammarError::Invalid(format!(
                    "duplicate nonterminal `{n}`"
                )));
            }
        }
        for t in alphabet.letters() {
            if !valid_name(t) {
                return Err(GrammarError::Invalid(format!("bad terminal name `{t}`")));
            }
            if seen.contains_key(t.as_str()) {
                return Err(GrammarError::Invalid(format!(
                    "`{t}` is both a terminal and a nonterminal"
                )));
            }
        }
        for p in &productions {
            let ok = p.lhs < nonterminals.len()
                && p.rhs.iter().all(|s| match *s {
                    Symbol::Terminal(t) => t < alphabet.len(),
                    Symbol::Nonterminal(n) => n < nonterminals.len(),
                });
            if !ok {
                return Err(GrammarError::Invalid(
                    "production mentions an undeclared symbol".into(),
                ));
            }
        }
        Ok(Grammar {
            nonterminals,
            alphabet,
            productions,
            start,
        })
    }

    /// Parses the line-oriented text format.
    pub fn parse(source: &str) -> Result<Self, GrammarError> {
        Parser::default().run(source)
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn nonterminal_name(&self, n: usize) -> &str {
        &self.nonterminals[n]
    }

    pub fn nonterminal_index(&self, name: &str) -> Option<usize> {
        self.nonterminals.iter().position(|n| n == name)
    }

    /// Nonterminals that derive ε.
    pub fn nullable(&self) -> Vec<bool> {
        let mut nullable = vec![false; self.nonterminals.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                if !nullable[p.lhs]
                    && p.rhs
                        .iter()
                        .all(|s| matches!(*s, Symbol::Nonterminal(n) if nullable[n]))
                {
                    nullable[p.lhs] = true;
                    changed = true;
                }
            }
        }
        nullable
    }

    fn render_symbol(&self, s: Symbol) -> String {
        match s {
            Symbol::Nonterminal(n) => self.nonterminals[n].clone(),
            Symbol::Terminal(t) => render_terminal(self.alphabet.letter(t)),
        }
    }

    /// Renders one rule per production, in production order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for p in &self.productions {
            out.push_str(&self.render_production(p));
            out.push('\n');
        }
        out
    }

    pub fn render_production(&self, p: &Production) -> String {
        let rhs = if p.rhs.is_empty() {
            "eps".to_string()
        } else {
            p.rhs
                .iter()
                .map(|&s| self.render_symbol(s))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{} -> {}", self.nonterminals[p.lhs], rhs)
    }
}

fn render_terminal(name: &str) -> String {
    let bare = name.chars().next().is_some_and(char::is_lowercase)
        && name != "eps"
        && !name.contains(['\'', '#', '|']);
    if bare {
        name.to_string()
    } else {
        format!("'{name}'")
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Arrow,
    Bar,
    Eps,
    Nonterminal(String),
    Terminal(String),
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Token>, GrammarError> {
    let err = |message: String| GrammarError::Syntax {
        line: lineno,
        message,
    };
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '#' {
            break;
        }
        if c == '\'' {
            chars.next();
            let mut name = String::new();
            loop {
                match chars.next() {
                    Some((_, '\'')) => break,
                    Some((_, ch)) if ch.is_whitespace() => {
                        return Err(err("whitespace inside quoted terminal".into()))
                    }
                    Some((_, ch)) => name.push(ch),
                    None => return Err(err("unterminated quoted terminal".into())),
                }
            }
            if name.is_empty() {
                return Err(err("empty quoted terminal".into()));
            }
            out.push(Token::Terminal(name));
            continue;
        }
        let mut end = line.len();
        while let Some(&(j, ch)) = chars.peek() {
            if ch.is_whitespace() || ch == '#' {
                end = j;
                break;
            }
            chars.next();
        }
        let word = &line[i..end];
        let tok = match word {
            "->" => Token::Arrow,
            "|" => Token::Bar,
            "eps" => Token::Eps,
            _ => {
                let first = word.chars().next().unwrap();
                if first.is_uppercase() {
                    Token::Nonterminal(word.to_string())
                } else if first.is_lowercase() {
                    Token::Terminal(word.to_string())
                } else {
                    return Err(err(format!(
                        "`{word}` is neither a nonterminal nor a terminal (quote it)"
                    )));
                }
            }
        };
        out.push(tok);
    }
    Ok(out)
}

#[derive(Default)]
struct Parser {
    nonterminals: Vec<String>,
    nt_index: HashMap<String, usize>,
    terminals: Vec<String>,
    t_index: HashMap<String, usize>,
    productions: Vec<Production>,
    first_use: HashMap<usize, usize>,
    has_rule: Vec<bool>,
}

impl Parser {
    fn nonterminal(&mut self, name: &str, line: usize) -> usize {
        if let Some(&i) = self.nt_index.get(name) {
            return i;
        }
        let i = self.nonterminals.len();
        self.nonterminals.push(name.to_string());
        self.nt_index.insert(name.to_string(), i);
        self.has_rule.push(false);
        self.first_use.insert(i, line);
        i
    }

    fn terminal(&mut self, name: &str) -> usize {
        if let Some(&i) = self.t_index.get(name) {
            return i;
        }
        let i = self.terminals.len();
        self.terminals.push(name.to_string());
        self.t_index.insert(name.to_string(), i);
        i
    }

    fn run(mut self, source: &str) -> Result<Grammar, GrammarError> {
        let mut current: Option<usize> = None;
        for (idx, raw) in source.lines().enumerate() {
            let line = idx + 1;
            let tokens = tokenize(raw, line)?;
            if tokens.is_empty() {
                continue;
            }
            let err = |message: &str| GrammarError::Syntax {
                line,
                message: message.into(),
            };
            let (lhs, body) = match tokens.as_slice() {
                [Token::Nonterminal(name), Token::Arrow, rest @ ..] => {
                    (self.nonterminal(name, line), rest)
                }
                [Token::Bar, rest @ ..] => match current {
                    Some(lhs) => (lhs, rest),
                    None => return Err(err("continuation line without a preceding rule")),
                },
                [Token::Nonterminal(_), ..] => return Err(err("expected `->`")),
                _ => return Err(err("expected `Nonterminal -> ...`")),
            };
            self.has_rule[lhs] = true;
            current = Some(lhs);
            for alt in body.split(|t| *t == Token::Bar) {
                let rhs = match alt {
                    [] => return Err(err("empty alternative (write `eps`)")),
                    [Token::Eps] => Vec::new(),
                    _ => {
                        let mut rhs = Vec::with_capacity(alt.len());
                        for t in alt {
                            rhs.push(match t {
                                Token::Nonterminal(n) => {
                                    Symbol::Nonterminal(self.nonterminal(n, line))
                                }
                                Token::Terminal(n) => Symbol::Terminal(self.terminal(n)),
                                Token::Eps => {
                                    return Err(err("`eps` must stand alone in an alternative"))
                                }
                                Token::Arrow => return Err(err("unexpected `->`")),
                                Token::Bar => unreachable!(),
                            });
                        }
                        rhs
                    }
                };
                self.productions.push(Production { lhs, rhs });
            }
        }
        if self.productions.is_empty() {
            return Err(GrammarError::Empty);
        }
        if let Some(n) = (0..self.nonterminals.len()).find(|&n| !self.has_rule[n]) {
            return Err(GrammarError::Undeclared {
                line: self.first_use[&n],
                name: self.nonterminals[n].clone(),
            });
        }
        let start = self.productions[0].lhs;
        for t in &self.terminals {
            if self.nt_index.contains_key(t) {
                return Err(GrammarError::Invalid(format!(
                    "`{t}` is both a terminal and a nonterminal"
                )));
            }
        }
        Grammar::new(
            self.nonterminals,
            Alphabet::new(self.terminals),
            self.productions,
            start,
        )
    }
}
