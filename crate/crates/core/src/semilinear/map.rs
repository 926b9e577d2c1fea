use std::fmt;

use super::{check_dim, NVector, SemilinearError};
use crate::parikh::Alphabet;

/// An ℕ-valued matrix acting on column vectors: ℕ^cols → ℕ^rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u64>>,
}

impl LinearMap {
    /// Builds a map from its rows. A map with no rows has zero columns.
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self, SemilinearError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(SemilinearError::RaggedMatrix);
        }
        Ok(LinearMap {
            rows: rows.len(),
            cols,
            entries: rows,
        })
    }

    /// Builds a map from its columns, for maps that are naturally described
    /// by where each unit vector goes.
    pub fn from_columns(rows: usize, columns: Vec<NVector>) -> Result<Self, SemilinearError> {
        for c in &columns {
            check_dim(rows, c.dim())?;
        }
        let entries = (0..rows)
            .map(|i| columns.iter().map(|c| c.coords()[i]).collect())
            .collect();
        Ok(LinearMap {
            rows,
            cols: columns.len(),
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap {
            rows,
            cols,
            entries: vec![vec![0; cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> NVector {
        NVector::new(self.entries.iter().map(|r| r[col]).collect())
    }

    pub fn apply(&self, v: &NVector) -> Result<NVector, SemilinearError> {
        check_dim(self.cols, v.dim())?;
        self.entries
            .iter()
            .map(|row| {
                row.iter().zip(v.coords()).try_fold(0u64, |acc, (&a, &x)| {
                    a.checked_mul(x)
                        .and_then(|ax| acc.checked_add(ax))
                        .ok_or(SemilinearError::Overflow)
                })
            })
            .collect::<Result<_, _>>()
            .map(NVector::new)
    }

    /// The product `self · inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap, SemilinearError> {
        check_dim(self.cols, inner.rows)?;
        let columns = (0..inner.cols)
            .map(|j| self.apply(&inner.column(j)))
            .collect::<Result<_, _>>()?;
        LinearMap::from_columns(self.rows, columns)
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            crate::parikh::write_vector(f, row)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A word homomorphism Δ* → Γ*, given by the image of each letter of Δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordHomomorphism {
    domain: Alphabet,
    images: Vec<Vec<String>>,
}

impl WordHomomorphism {
    /// `images[i]` is the image of `domain.letter(i)`; missing trailing
    /// entries are an error.
    pub fn new(domain: Alphabet, images: Vec<Vec<String>>) -> Result<Self, SemilinearError> {
        check_dim(domain.len(), images.len())?;
        Ok(WordHomomorphism { domain, images })
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let images = alphabet.letters().iter().map(|l| vec![l.clone()]).collect();
        WordHomomorphism {
            domain: alphabet.clone(),
            images,
        }
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn image_of(&self, letter: usize) -> &[String] {
        &self.images[letter]
    }

    /// Letterwise image of a word over the domain.
    pub fn apply(&self, word: &[usize]) -> Vec<String> {
        word.iter()
            .flat_map(|&a| self.images[a].iter().cloned())
            .collect()
    }
}

/// The matrix Φ whose column i is ψ_Γ(h(aᵢ)), so that
/// ψ_Γ(h(w)) = Φ · ψ_Δ(w) for every word w.
pub fn induced_map_of_homomorphism(
    h: &WordHomomorphism,
    codomain: &Alphabet,
) -> Result<LinearMap, SemilinearError> {
    let columns = h
        .images
        .iter()
        .map(|img| {
            let mut col = vec![0u64; codomain.len()];
            for letter in img {
                let j = codomain
                    .index_of(letter)
                    .ok_or_else(|| SemilinearError::UnknownLetter(letter.clone()))?;
                col[j] += 1;
            }
            Ok(NVector::new(col))
        })
        .collect::<Result<_, _>>()?;
    LinearMap::from_columns(codomain.len(), columns)
}
