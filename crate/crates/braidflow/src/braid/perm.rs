//! Permutations in one-line notation, composed left to right.
//!
//! `compose(p, q)` applies `p` first, matching braid concatenation: the braid
//! sending position `i` to `p(i)` followed by one sending `j` to `q(j)` sends
//! `i` to `q(p(i))`. Simple (square-free) braid factors are identified with
//! permutations throughout the Garside machinery, which only ever needs
//! one-line images, descent sets, and inversion counts.

/// One-line permutation: `0[i]` is the image of `i`. Always a bijection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(k: usize) -> Perm {
        Perm((0..k).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Perm> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &v in &images {
            if v >= k || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Perm(images))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Adjacent transposition swapping `j` and `j + 1` (0-based).
    pub fn transposition(k: usize, j: usize) -> Perm {
        let mut im: Vec<usize> = (0..k).collect();
        im.swap(j, j + 1);
        Perm(im)
    }

    /// Longest element: `i` goes to `k - 1 - i`. Underlies the half twist.
    pub fn longest(k: usize) -> Perm {
        Perm((0..k).rev().collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.k()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// Coxeter length: number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut n = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    n += 1;
                }
            }
        }
        n
    }

    /// Left descent set as 0-based positions: `i` such that multiplying by
    /// the transposition `t_i` on the left shortens the word, i.e. the
    /// one-line entries at `i`, `i + 1` are out of order.
    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.k().saturating_sub(1))
            .filter(|&i| self.0[i] > self.0[i + 1])
            .collect()
    }

    /// Right descent set: positions where `t_i` on the right shortens the
    /// word, i.e. the value `i + 1` appears before the value `i`.
    pub fn right_descents(&self) -> Vec<usize> {
        self.inverse().left_descents()
    }
}

/// `p` then `q`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    debug_assert_eq!(p.k(), q.k());
    Perm(p.0.iter().map(|&i| q.0[i]).collect())
}

/// Conjugation by the longest element: `w0 p w0`.
pub fn tau(p: &Perm) -> Perm {
    let k = p.k();
    let mut im = vec![0; k];
    for i in 0..k {
        im[i] = k - 1 - p.0[k - 1 - i];
    }
    Perm(im)
}

/// Whether `a` left-divides `b` in the permutation lattice: lengths add along
/// `b = a (a^-1 b)`.
pub fn left_divides(a: &Perm, b: &Perm) -> bool {
    let quotient = compose(&a.inverse(), b);
    a.length() + quotient.length() == b.length()
}

/// Canonical reduced word for `p` as 0-based transposition indices, applied
/// left to right; always picks the smallest available descent.
pub fn reduced_word(p: &Perm) -> Vec<usize> {
    let mut p = p.clone();
    let mut out = Vec::with_capacity(p.length());
    loop {
        let Some(&i) = p.left_descents().first() else {
            break;
        };
        out.push(i);
        p.0.swap(i, i + 1);
    }
    out
}
