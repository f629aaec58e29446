//! Braid words, Garside normal forms, and braid extraction from trajectories.
//!
//! A word on `k` strands is a sequence of nonzero letters: `j` stands for the
//! Artin generator `sigma_j` (1-based, `1 <= j < k`) exchanging the strands in
//! positions `j - 1` and `j` counterclockwise, `-j` for its inverse. Words
//! multiply by concatenation, left factor first.

pub mod extract;
pub mod normal;
pub mod perm;
pub mod render;

pub use extract::{braid_type, BraidType, Closure, ExtractParams};
pub use normal::NormalForm;
pub use perm::Perm;

#[derive(Debug, thiserror::Error)]
pub enum BraidError {
    #[error("braid letter {letter} invalid on {strands} strands")]
    BadLetter { letter: i64, strands: usize },
    #[error("braid needs at least one strand")]
    NoStrands,
    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("the map does not preserve the link (max residual {max_residual:e})")]
    NotPreserved { max_residual: f64 },
    #[error("strands {i} and {j} collide at t = {t} (distance {dist:e})")]
    StrandCollision {
        t: f64,
        i: usize,
        j: usize,
        dist: f64,
    },
    #[error("crossing structure stayed degenerate after {retries} projection angles")]
    DegenerateProjection { retries: usize },
    #[error(transparent)]
    Flow(#[from] crate::flow::FlowError),
    #[error("bad braid json: {0}")]
    Json(String),
}

/// Word in the Artin generators of the `k`-strand braid group.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i64>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> BraidWord {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(strands: usize, letters: Vec<i64>) -> Result<BraidWord, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::BadLetter { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Concatenation: `self` first, then `other`.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Exponent sum; invariant under the braid relations.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum()).sum()
    }

    /// Cancels adjacent inverse pairs until none remain. A consequence of the
    /// relations, so the result is the same group element.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<i64> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: stack,
        }
    }

    /// Underlying permutation: where each starting position ends up.
    pub fn permutation(&self) -> Perm {
        let mut p = Perm::identity(self.strands);
        for &l in &self.letters {
            let j = l.unsigned_abs() as usize - 1;
            p = perm::compose(&p, &Perm::transposition(self.strands, j));
        }
        p
    }

    /// Positive half twist `Delta`, the Garside element:
    /// `(s1)(s2 s1)...(s_{k-1} ... s1)`.
    pub fn half_twist(strands: usize) -> BraidWord {
        let mut letters = Vec::new();
        for top in 1..strands {
            for j in (1..=top).rev() {
                letters.push(j as i64);
            }
        }
        BraidWord { strands, letters }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("braid word serializes")
    }

    pub fn from_json(text: &str) -> Result<BraidWord, BraidError> {
        let w: BraidWord =
            serde_json::from_str(text).map_err(|e| BraidError::Json(e.to_string()))?;
        BraidWord::from_letters(w.strands, w.letters)
    }

    /// Group equality via left normal forms.
    pub fn equal(&self, other: &BraidWord) -> Result<bool, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        Ok(NormalForm::of(self) == NormalForm::of(other))
    }

    pub fn is_trivial(&self) -> bool {
        let nf = NormalForm::of(self);
        nf.inf == 0 && nf.factors.is_empty()
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (n, &l) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "s{l}")?;
            } else {
                write!(f, "s{}'", -l)?;
            }
        }
        Ok(())
    }
}
