//! Eilenberg–Zilber normal forms.
//!
//! Every simplex of a simplicial set is uniquely `s_{i1} s_{i2} ... s_{ik} b` with `b`
//! nondegenerate and `i1 > i2 > ... > ik`. The operators are applied right to left, so
//! `s_{ik}` acts first. A [`Simplex`] stores exactly that pair.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A degeneracy word in normal form (strictly decreasing indices).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn identity() -> Self {
        DegeneracyWord(Vec::new())
    }

    /// Validates strict decrease; every such word is admissible on any base.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Parameter(alloc::format!(
                "degeneracy word {indices:?} is not strictly decreasing"
            )));
        }
        Ok(DegeneracyWord(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    /// Normal form of `s_i ∘ self`, using `s_i s_j = s_{j+1} s_i` for `i <= j`.
    pub fn prepend(&self, i: usize) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let m = i;
        let mut placed = false;
        for (pos, &j) in self.0.iter().enumerate() {
            if m > j {
                out.push(m);
                out.extend_from_slice(&self.0[pos..]);
                placed = true;
                break;
            }
            out.push(j + 1);
        }
        if !placed {
            out.push(m);
        }
        DegeneracyWord(out)
    }

    /// Normal form of `self ∘ other`.
    pub fn compose(&self, other: &DegeneracyWord) -> Self {
        let mut acc = other.clone();
        for &i in self.0.iter().rev() {
            acc = acc.prepend(i);
        }
        acc
    }
}

/// Result of pushing a face operator through a degeneracy word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FacePush {
    /// `d_i w b = w' b`: the face cancelled against a degeneracy.
    Cancelled(DegeneracyWord),
    /// `d_i w b = outer (d_j b)`.
    Face { outer: DegeneracyWord, index: usize },
}

/// Rewrites `d_i ∘ w` with the simplicial identities.
pub fn push_face(i: usize, word: &DegeneracyWord) -> FacePush {
    let mut i = i;
    let mut outer = Vec::new();
    let w = word.indices();
    for (pos, &j) in w.iter().enumerate() {
        if i == j || i == j + 1 {
            let rest = DegeneracyWord(w[pos + 1..].to_vec());
            return FacePush::Cancelled(DegeneracyWord(outer).compose(&rest));
        } else if i < j {
            outer.push(j - 1);
        } else {
            outer.push(j);
            i -= 1;
        }
    }
    FacePush::Face {
        outer: DegeneracyWord(outer),
        index: i,
    }
}

/// A simplex in normal form: a degeneracy word applied to a nondegenerate base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub base_dim: usize,
    pub base: usize,
    pub word: DegeneracyWord,
}

impl Simplex {
    pub fn nondegenerate(dim: usize, base: usize) -> Self {
        Simplex {
            base_dim: dim,
            base,
            word: DegeneracyWord::identity(),
        }
    }

    pub fn dim(&self) -> usize {
        self.base_dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// `s_i` of this simplex, in normal form.
    pub fn degeneracy(&self, i: usize) -> Simplex {
        Simplex {
            base_dim: self.base_dim,
            base: self.base,
            word: self.word.prepend(i),
        }
    }

    /// Applies an outer degeneracy word.
    pub fn degenerate_by(&self, outer: &DegeneracyWord) -> Simplex {
        Simplex {
            base_dim: self.base_dim,
            base: self.base,
            word: outer.compose(&self.word),
        }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.word.indices() {
            write!(f, "s{i} ")?;
        }
        write!(f, "x{}_{}", self.base_dim, self.base)
    }
}

/// All normal-form words of length `k` landing in dimension `n`: the `k`-subsets of
/// `0..n`, listed in decreasing order.
pub fn words_into(n: usize, k: usize) -> Vec<DegeneracyWord> {
    crate::util::subsets(n, k)
        .into_iter()
        .map(|mut s| {
            s.reverse();
            DegeneracyWord(s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(v: &[usize]) -> DegeneracyWord {
        DegeneracyWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_decreasing() {
        assert!(DegeneracyWord::new(vec![1, 1]).is_err());
        assert!(DegeneracyWord::new(vec![0, 2]).is_err());
    }

    #[test]
    fn prepend_commutes_past_larger_indices() {
        // s0 s0 = s1 s0
        assert_eq!(w(&[0]).prepend(0), w(&[1, 0]));
        // s1 s0 is already normal
        assert_eq!(w(&[0]).prepend(1), w(&[1, 0]));
        // s0 s2 s1 = s3 s0 s1 = s3 s2 s0
        assert_eq!(w(&[2, 1]).prepend(0), w(&[3, 2, 0]));
    }

    #[test]
    fn face_of_degeneracy() {
        // d0 s0 = id, d1 s0 = id
        assert_eq!(push_face(0, &w(&[0])), FacePush::Cancelled(w(&[])));
        assert_eq!(push_face(1, &w(&[0])), FacePush::Cancelled(w(&[])));
        // d0 s1 = s0 d0
        assert_eq!(
            push_face(0, &w(&[1])),
            FacePush::Face {
                outer: w(&[0]),
                index: 0
            }
        );
        // d3 s1 = s1 d2
        assert_eq!(
            push_face(3, &w(&[1])),
            FacePush::Face {
                outer: w(&[1]),
                index: 2
            }
        );
    }

    #[test]
    fn word_enumeration_counts() {
        assert_eq!(words_into(3, 0).len(), 1);
        assert_eq!(words_into(3, 1).len(), 3);
        assert_eq!(words_into(3, 2).len(), 3);
        assert_eq!(words_into(3, 3).len(), 1);
        assert_eq!(words_into(4, 2).len(), 6);
        for wd in words_into(5, 3) {
            assert!(wd.indices().windows(2).all(|p| p[0] > p[1]));
            assert!(wd.indices()[0] < 5);
        }
    }
}
