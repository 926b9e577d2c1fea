//! Cross-validation of a computed image against brute-force oracles.

use std::collections::BTreeSet;
use std::fmt;

use crate::cs::verify_representation;
use crate::extraction::direct_parikh_image;
use crate::grammar::{bounded_language, to_cnf, Grammar};
use crate::semilinear::{NVector, ParikhImage};

/// Largest word length the oracles accept.
pub const MAX_LEN_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// First counterexample found, if any.
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.failure {
                None => writeln!(f, "{}: pass", o.name)?,
                Some(c) => writeln!(f, "{}: FAIL {}", o.name, c)?,
            }
        }
        Ok(())
    }
}

/// Every word of length ≤ `max_len` has its Parikh vector in `image`.
pub fn check_soundness(g: &Grammar, image: &ParikhImage, max_len: usize) -> CheckOutcome {
    let mut words: Vec<_> = bounded_language(g, max_len).into_iter().collect();
    words.sort_by_key(Vec::len);
    let mut failure = None;
    for w in words {
        let v = count(&w, g.alphabet().len());
        if !image.set.contains(&v).unwrap_or(false) {
            failure = Some(format!(
                "word {} has vector {} outside the image",
                g.alphabet().render_word(&w),
                v
            ));
            break;
        }
    }
    CheckOutcome {
        name: "soundness",
        failure,
    }
}

/// Every member of `image` with coordinate sum ≤ `max_len` is the Parikh
/// vector of some word.
pub fn check_completeness(g: &Grammar, image: &ParikhImage, max_len: usize) -> CheckOutcome {
    let k = g.alphabet().len();
    let realised: BTreeSet<NVector> = bounded_language(g, max_len)
        .iter()
        .map(|w| count(w, k))
        .collect();
    let failure = image
        .set
        .enumerate_members(max_len as u64)
        .into_iter()
        .find(|v| !realised.contains(v))
        .map(|v| format!("vector {v} is in the image but no word has it"));
    CheckOutcome {
        name: "completeness",
        failure,
    }
}

pub fn check_representation(g: &Grammar, max_len: usize) -> CheckOutcome {
    let report = verify_representation(&to_cnf(g), max_len);
    CheckOutcome {
        name: "representation",
        failure: report.counterexamples.into_iter().next(),
    }
}

/// The staged image and the single-matrix image have the same members up
/// to coordinate sum `max_len`.
pub fn check_two_paths(g: &Grammar, image: &ParikhImage, max_len: usize) -> CheckOutcome {
    let failure = match direct_parikh_image(g) {
        Err(e) => Some(format!("direct path failed: {e}")),
        Ok(direct) => {
            let a = image.set.enumerate_members(max_len as u64);
            let b = direct.set.enumerate_members(max_len as u64);
            a.symmetric_difference(&b)
                .next()
                .map(|v| format!("vector {v} is in only one of the two images"))
        }
    };
    CheckOutcome {
        name: "two-path",
        failure,
    }
}

/// Runs all checks on `image`, which is normally `parikh_image(g)`.
pub fn run_checks(g: &Grammar, image: &ParikhImage, max_len: usize) -> CheckReport {
    let max_len = max_len.min(MAX_LEN_CAP);
    CheckReport {
        outcomes: vec![
            check_soundness(g, image, max_len),
            check_completeness(g, image, max_len),
            check_representation(g, max_len),
            check_two_paths(g, image, max_len),
        ],
    }
}

fn count(w: &[usize], k: usize) -> NVector {
    let mut c = vec![0; k];
    for &a in w {
        c[a] += 1;
    }
    NVector::new(c)
}
