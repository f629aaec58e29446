//! Garside left normal form.
//!
//! Every braid word factors uniquely as `Delta^inf x_1 ... x_m` where `Delta`
//! is the positive half twist, each `x_i` is a simple factor (a permutation
//! braid, identified here with its permutation), no `x_i` is trivial or
//! `Delta`, and each adjacent pair is left-weighted: the starting set of
//! `x_{i+1}` is contained in the finishing set of `x_i`. Two words represent
//! the same group element exactly when these data coincide, which is how the
//! crate decides braid equality.

use super::perm::{compose, reduced_word, tau, Perm};
use super::{BraidError, BraidWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub strands: usize,
    /// Power of the half twist in front.
    pub inf: i64,
    /// Left-weighted simple factors, none trivial, none the half twist.
    pub factors: Vec<Perm>,
}

impl NormalForm {
    /// Left normal form of a word.
    pub fn of(word: &BraidWord) -> NormalForm {
        let k = word.strands;
        let w0 = Perm::longest(k);
        let mut inf: i64 = 0;
        let mut factors: Vec<Perm> = Vec::with_capacity(word.letters.len());

        for &l in &word.letters {
            let j = l.unsigned_abs() as usize - 1;
            let t = Perm::transposition(k, j);
            if l > 0 {
                factors.push(t);
            } else {
                // sigma_j^{-1} = Delta^{-1} (Delta sigma_j^{-1}); carrying the
                // Delta^{-1} to the front twists every factor it passes.
                inf -= 1;
                for f in &mut factors {
                    *f = tau(f);
                }
                factors.push(compose(&w0, &t));
            }
        }

        factors.retain(|f| !f.is_identity());
        loop {
            let mut changed = false;
            for i in 1..factors.len() {
                let (head, tail) = factors.split_at_mut(i);
                let x = &mut head[i - 1];
                let y = &mut tail[0];
                loop {
                    let fx = x.right_descents();
                    let Some(&s) = y.left_descents().iter().find(|s| !fx.contains(s)) else {
                        break;
                    };
                    let t = Perm::transposition(k, s);
                    *x = compose(x, &t);
                    *y = compose(&t, y);
                    changed = true;
                }
            }
            factors.retain(|f| !f.is_identity());
            if !changed {
                break;
            }
        }

        while factors.first() == Some(&w0) {
            inf += 1;
            factors.remove(0);
        }
        NormalForm {
            strands: k,
            inf,
            factors,
        }
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn is_trivial(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Flattens back to a word: the half-twist power followed by a canonical
    /// reduced word per factor.
    pub fn to_word(&self) -> BraidWord {
        let mut letters = Vec::new();
        let delta = BraidWord::half_twist(self.strands);
        for _ in 0..self.inf.unsigned_abs() {
            if self.inf >= 0 {
                letters.extend_from_slice(&delta.letters);
            } else {
                letters.extend(delta.letters.iter().rev().map(|&l| -l));
            }
        }
        for f in &self.factors {
            letters.extend(reduced_word(f).iter().map(|&i| i as i64 + 1));
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Checks the structural invariants; tests and json ingestion use this.
    pub fn validate(&self) -> Result<(), String> {
        let w0 = Perm::longest(self.strands);
        for (n, f) in self.factors.iter().enumerate() {
            if f.k() != self.strands {
                return Err(format!(
                    "factor {n} is on {} strands, not {}",
                    f.k(),
                    self.strands
                ));
            }
            if f.is_identity() {
                return Err(format!("factor {n} is trivial"));
            }
            if *f == w0 {
                return Err(format!("factor {n} is the half twist; it belongs in inf"));
            }
        }
        for i in 1..self.factors.len() {
            let fx = self.factors[i - 1].right_descents();
            for s in self.factors[i].left_descents() {
                if !fx.contains(&s) {
                    return Err(format!(
                        "factors {} and {} are not left-weighted at position {s}",
                        i - 1,
                        i
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let factors: Vec<Vec<i64>> = self
            .factors
            .iter()
            .map(|f| reduced_word(f).iter().map(|&i| i as i64 + 1).collect())
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "strands": self.strands,
            "inf": self.inf,
            "factors": factors,
        }))
        .expect("normal form serializes")
    }

    pub fn from_json(text: &str) -> Result<NormalForm, BraidError> {
        #[derive(serde::Deserialize)]
        struct Raw {
            strands: usize,
            inf: i64,
            factors: Vec<Vec<i64>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| BraidError::Json(e.to_string()))?;
        if raw.strands == 0 {
            return Err(BraidError::NoStrands);
        }
        let mut factors = Vec::with_capacity(raw.factors.len());
        for (n, letters) in raw.factors.iter().enumerate() {
            let mut p = Perm::identity(raw.strands);
            for &l in letters {
                if l <= 0 || l as usize >= raw.strands {
                    return Err(BraidError::BadLetter {
                        letter: l,
                        strands: raw.strands,
                    });
                }
                p = compose(&p, &Perm::transposition(raw.strands, l as usize - 1));
            }
            if p.length() != letters.len() {
                return Err(BraidError::Json(format!(
                    "factor {n} is not a reduced word"
                )));
            }
            factors.push(p);
        }
        let nf = NormalForm {
            strands: raw.strands,
            inf: raw.inf,
            factors,
        };
        nf.validate().map_err(BraidError::Json)?;
        Ok(nf)
    }
}
