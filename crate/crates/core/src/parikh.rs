//! Ordered alphabets and the Parikh map ψ: Σ* → ℕ^k.

use std::collections::HashMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};

use thiserror::Error;

/// A word as a sequence of letter indices into some [`Alphabet`].
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParikhError {
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),
    #[error("letter index {index} out of range for alphabet of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("alphabet mismatch: vectors refer to different alphabets")]
    AlphabetMismatch,
    #[error("coordinate overflow")]
    Overflow,
}

/// Content hash of an ordered alphabet. Two vectors may only be combined
/// when their tags agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlphabetTag(u64);

/// An ordered, duplicate-free list of letters. The order fixes the
/// coordinate order of Parikh vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
    index: HashMap<String, usize>,
    tag: AlphabetTag,
}

impl Alphabet {
    /// Builds an alphabet; duplicates after the first occurrence are dropped.
    pub fn new<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut list = Vec::new();
        let mut index = HashMap::new();
        for l in letters {
            let l = l.into();
            if !index.contains_key(&l) {
                index.insert(l.clone(), list.len());
                list.push(l);
            }
        }
        let mut h = DefaultHasher::new();
        list.hash(&mut h);
        let tag = AlphabetTag(h.finish());
        Alphabet {
            letters: list,
            index,
            tag,
        }
    }

    /// One letter per character of `s`.
    pub fn from_chars(s: &str) -> Self {
        Self::new(s.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> &str {
        &self.letters[i]
    }

    pub fn index_of(&self, letter: &str) -> Option<usize> {
        self.index.get(letter).copied()
    }

    pub fn tag(&self) -> AlphabetTag {
        self.tag
    }

    fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Splits text into letters: per character when every letter is a
    /// single character, otherwise on whitespace.
    pub fn tokenize(&self, text: &str) -> Result<Word, ParikhError> {
        let tokens: Vec<String> = if self.single_char() {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(String::from)
                .collect()
        } else {
            text.split_whitespace().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.index_of(t)
                    .ok_or_else(|| ParikhError::UnknownLetter(t.clone()))
            })
            .collect()
    }

    /// Renders a word, concatenated for single-character alphabets and
    /// space-separated otherwise. The empty word renders as `<eps>`.
    pub fn render_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "<eps>".to_string();
        }
        let sep = if self.single_char() { "" } else { " " };
        w.iter()
            .map(|&i| self.letters[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn zero(&self) -> ParikhVector {
        ParikhVector {
            coords: vec![0; self.len()],
            tag: self.tag,
        }
    }
}

/// ψ(w): letter counts in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParikhVector {
    coords: Vec<u64>,
    tag: AlphabetTag,
}

impl ParikhVector {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn tag(&self) -> AlphabetTag {
        self.tag
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.coords
    }

    pub fn total(&self) -> u64 {
        self.coords.iter().sum()
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vector(f, &self.coords)
    }
}

pub(crate) fn write_vector(f: &mut impl fmt::Write, coords: &[u64]) -> fmt::Result {
    f.write_char('[')?;
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{c}")?;
    }
    f.write_char(']')
}

/// Parikh vector of a word given by letter names.
pub fn parikh_of_word<S: AsRef<str>>(
    w: &[S],
    alphabet: &Alphabet,
) -> Result<ParikhVector, ParikhError> {
    let mut v = alphabet.zero();
    for letter in w {
        let letter = letter.as_ref();
        let i = alphabet
            .index_of(letter)
            .ok_or_else(|| ParikhError::UnknownLetter(letter.to_string()))?;
        v.coords[i] += 1;
    }
    Ok(v)
}

/// Parikh vector of a word given by letter indices.
pub fn parikh_of_indices(w: &[usize], alphabet: &Alphabet) -> Result<ParikhVector, ParikhError> {
    let mut v = alphabet.zero();
    for &i in w {
        let slot = v.coords.get_mut(i).ok_or(ParikhError::IndexOutOfRange {
            index: i,
            size: alphabet.len(),
        })?;
        *slot += 1;
    }
    Ok(v)
}

/// Coordinatewise sum; ψ(uv) = ψ(u) + ψ(v).
pub fn parikh_add(u: &ParikhVector, v: &ParikhVector) -> Result<ParikhVector, ParikhError> {
    if u.tag != v.tag || u.coords.len() != v.coords.len() {
        return Err(ParikhError::AlphabetMismatch);
    }
    let coords = u
        .coords
        .iter()
        .zip(&v.coords)
        .map(|(a, b)| a.checked_add(*b).ok_or(ParikhError::Overflow))
        .collect::<Result<_, _>>()?;
    Ok(ParikhVector { coords, tag: u.tag })
}
