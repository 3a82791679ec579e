//! Simplicial maps between presented simplicial sets.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::levels::{Expanded, LevelMap, Normalized};
use crate::simplex::Simplex;
use crate::sset::SimplicialSet;

/// A map given by the images of nondegenerate source simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    assignment: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    /// Checks dimensions and commutation with every face.
    pub fn new(
        source: &SimplicialSet,
        target: &SimplicialSet,
        assignment: Vec<Vec<Simplex>>,
    ) -> Result<SimplicialMap> {
        let f = SimplicialMap { assignment };
        f.check(source, target)?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(assignment: Vec<Vec<Simplex>>) -> SimplicialMap {
        SimplicialMap { assignment }
    }

    pub fn identity(x: &SimplicialSet) -> SimplicialMap {
        SimplicialMap {
            assignment: (0..=x.dim())
                .map(|n| (0..x.count(n)).map(|b| Simplex::nondegenerate(n, b)).collect())
                .collect(),
        }
    }

    /// The map to the one-point set.
    pub fn to_point(x: &SimplicialSet) -> SimplicialMap {
        SimplicialMap {
            assignment: (0..=x.dim())
                .map(|n| {
                    let s = (0..n).fold(Simplex::nondegenerate(0, 0), |s, _| s.degeneracy(0));
                    alloc::vec![s; x.count(n)]
                })
                .collect(),
        }
    }

    pub fn assignment(&self) -> &[Vec<Simplex>] {
        &self.assignment
    }

    pub fn image_of_base(&self, n: usize, b: usize) -> &Simplex {
        &self.assignment[n][b]
    }

    pub fn apply(&self, s: &Simplex) -> Simplex {
        self.assignment[s.base_dim][s.base].degenerate_by(&s.word)
    }

    pub fn check(&self, source: &SimplicialSet, target: &SimplicialSet) -> Result<()> {
        if self.assignment.len() < source.dim() + 1 {
            return Err(Error::InvalidMap("missing dimensions in assignment".into()));
        }
        for n in 0..=source.dim() {
            if self.assignment[n].len() != source.count(n) {
                return Err(Error::InvalidMap(format!("wrong number of images in dim {n}")));
            }
            for (x, img) in self.assignment[n].iter().enumerate() {
                if img.dim() != n
                    || img.base_dim > target.dim()
                    || img.base >= target.count(img.base_dim)
                {
                    return Err(Error::InvalidMap(format!(
                        "image of {} is not an {n}-simplex of the target",
                        source.label(n, x)
                    )));
                }
                if n == 0 {
                    continue;
                }
                for i in 0..=n {
                    let lhs = self.apply(&source.faces_of(n, x)[i]);
                    let rhs = target.face(img, i)?;
                    if lhs != rhs {
                        return Err(Error::InvalidMap(format!(
                            "does not commute with d{i} on {}",
                            source.label(n, x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `then ∘ self`.
    pub fn compose(&self, then: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            assignment: self
                .assignment
                .iter()
                .map(|l| l.iter().map(|s| then.apply(s)).collect())
                .collect(),
        }
    }

    /// Levelwise action on expanded tables.
    pub fn to_level_map(&self, src: &Expanded, dst: &Expanded) -> LevelMap {
        let top = src.levels.top().min(dst.levels.top());
        LevelMap {
            images: (0..=top)
                .map(|n| {
                    src.simplices[n]
                        .iter()
                        .map(|s| dst.index[n][&self.apply(s)])
                        .collect()
                })
                .collect(),
        }
    }

    /// Reads a map off a level map between normalized tables.
    pub fn from_level_map(src: &Normalized, dst: &Normalized, f: &LevelMap) -> SimplicialMap {
        SimplicialMap {
            assignment: src
                .base_index
                .iter()
                .enumerate()
                .take(src.set.dim() + 1)
                .map(|(n, bases)| {
                    bases
                        .iter()
                        .map(|&t| dst.normal_forms[n][f.apply(n, t)].clone())
                        .collect()
                })
                .collect(),
        }
    }

    /// True when the map is a bijection on nondegenerate simplices in every dimension
    /// (hence an isomorphism of presented sets).
    pub fn is_isomorphism(&self, source: &SimplicialSet, target: &SimplicialSet) -> bool {
        if source.counts() != target.counts() {
            return false;
        }
        self.assignment.iter().enumerate().all(|(n, l)| {
            let mut seen = alloc::vec![false; target.count(n)];
            l.iter().all(|s| {
                !s.is_degenerate() && s.base < seen.len() && !core::mem::replace(&mut seen[s.base], true)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::Generator;
    use alloc::vec;

    #[test]
    fn identity_and_constant_maps_check() {
        let s2 = SimplicialSet::standard(2);
        SimplicialMap::identity(&s2).check(&s2, &s2).unwrap();
        SimplicialMap::to_point(&s2)
            .check(&s2, &SimplicialSet::point())
            .unwrap();
        assert!(SimplicialMap::identity(&s2).is_isomorphism(&s2, &s2));
    }

    #[test]
    fn bad_map_rejected() {
        // Δ^1 -> Δ^1 swapping the vertices but fixing the edge
        let d1 = SimplicialSet::standard(1);
        let a = vec![
            vec![Simplex::nondegenerate(0, 1), Simplex::nondegenerate(0, 0)],
            vec![Simplex::nondegenerate(1, 0)],
        ];
        assert!(SimplicialMap::new(&d1, &d1, a).is_err());
    }

    #[test]
    fn collapse_edge_to_circle_map() {
        let d1 = SimplicialSet::standard(1);
        let c = SimplicialSet::generator(Generator::Circle).unwrap();
        let a = vec![
            vec![Simplex::nondegenerate(0, 0); 2],
            vec![Simplex::nondegenerate(1, 0)],
        ];
        SimplicialMap::new(&d1, &c, a).unwrap();
    }
}
