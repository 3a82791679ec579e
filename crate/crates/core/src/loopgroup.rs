//! The combinatorial loop group of a reduced simplicial set.
//!
//! `GS_n` is free on the `(n+1)`-simplices of `S` outside the image of `s_0`, written
//! `[x]` (with `[s_0 y] = 1`). Structure maps on generators:
//!
//! - `d_0 [x] = [d_1 x] [d_0 x]⁻¹`
//! - `d_i [x] = [d_{i+1} x]` for `i >= 1`
//! - `s_i [x] = [s_{i+1} x]`

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::levels::Expanded;
use crate::presentation::{concat, inverse, letter, generator_of, reduce, GroupPresentation, Word};
use crate::simplex::Simplex;
use crate::sset::SimplicialSet;

/// A simplicial group with free levels; structure maps are given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSimplicialGroup {
    /// The simplex of `S` behind each generator of each level.
    pub generators: Vec<Vec<Simplex>>,
    pub names: Vec<Vec<String>>,
    /// `faces[n][i][g]`, `n >= 1`.
    faces: Vec<Vec<Vec<Word>>>,
    /// `degens[n][i][g]`, `n < top`.
    degens: Vec<Vec<Vec<Word>>>,
}

impl FreeSimplicialGroup {
    pub fn top(&self) -> usize {
        self.generators.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.generators[n].len()
    }

    pub fn face_of_generator(&self, n: usize, i: usize, g: usize) -> &Word {
        &self.faces[n][i][g]
    }

    pub fn degen_of_generator(&self, n: usize, i: usize, g: usize) -> &Word {
        &self.degens[n][i][g]
    }

    fn apply(table: &[Word], w: &[i32]) -> Word {
        let mut out = Vec::new();
        for &l in w {
            let img = &table[generator_of(l)];
            if l > 0 {
                out.extend_from_slice(img);
            } else {
                out.extend(inverse(img));
            }
        }
        reduce(&out)
    }

    pub fn face(&self, n: usize, i: usize, w: &[i32]) -> Word {
        FreeSimplicialGroup::apply(&self.faces[n][i], w)
    }

    pub fn degen(&self, n: usize, i: usize, w: &[i32]) -> Word {
        FreeSimplicialGroup::apply(&self.degens[n][i], w)
    }

    /// All simplicial identities on generators, compared as reduced words.
    pub fn validate(&self) -> Result<()> {
        let top = self.top();
        let bad = |what: String| Err(Error::InvalidGroup(what));
        for n in 0..=top {
            for g in 0..self.rank(n) {
                let x = vec![letter(g, true)];
                if n >= 2 {
                    for j in 1..=n {
                        for i in 0..j {
                            let l = self.face(n - 1, i, &self.face(n, j, &x));
                            let r = self.face(n - 1, j - 1, &self.face(n, i, &x));
                            if l != r {
                                return bad(format!("d{i}d{j} != d{}d{i} on level {n}", j - 1));
                            }
                        }
                    }
                }
                if n + 2 <= top {
                    for j in 0..=n {
                        for i in 0..=j {
                            let l = self.degen(n + 1, i, &self.degen(n, j, &x));
                            let r = self.degen(n + 1, j + 1, &self.degen(n, i, &x));
                            if l != r {
                                return bad(format!("s{i}s{j} != s{}s{i} on level {n}", j + 1));
                            }
                        }
                    }
                }
                if n < top {
                    for j in 0..=n {
                        let sx = self.degen(n, j, &x);
                        for i in 0..=n + 1 {
                            let l = self.face(n + 1, i, &sx);
                            let r = if i < j {
                                if n == 0 {
                                    continue;
                                }
                                self.degen(n - 1, j - 1, &self.face(n, i, &x))
                            } else if i == j || i == j + 1 {
                                x.clone()
                            } else {
                                if n == 0 {
                                    continue;
                                }
                                self.degen(n - 1, j, &self.face(n, i - 1, &x))
                            };
                            if l != r {
                                return bad(format!("d{i}s{j} wrong on level {n}"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `π₀ = G_0 / ⟨d_0(g) d_1(g)⁻¹ : g ∈ G_1⟩`.
    pub fn pi0(&self) -> Result<GroupPresentation> {
        if self.top() < 1 {
            return Err(Error::Truncated {
                what: "π₀ needs level 1".into(),
                needed: 1,
                available: 0,
            });
        }
        let relators = (0..self.rank(1))
            .map(|g| concat(&self.faces[1][0][g], &inverse(&self.faces[1][1][g])))
            .filter(|r| !r.is_empty())
            .collect();
        GroupPresentation::new(self.names[0].clone(), relators)
    }
}

/// The loop group of a reduced `S` through `level_bound` (needs `S` through
/// `level_bound + 1`).
pub fn loop_group(s: &SimplicialSet, level_bound: usize) -> Result<FreeSimplicialGroup> {
    if !s.is_reduced() {
        return Err(Error::NotReduced(format!("{} vertices", s.count(0))));
    }
    let ex = Expanded::new(s, level_bound + 1)?;
    let l = &ex.levels;
    // generator index of each simplex of S_{n+1}
    let mut gen_of: Vec<Vec<Option<usize>>> = Vec::new();
    let mut generators = Vec::new();
    let mut names = Vec::new();
    for n in 0..=level_bound {
        let mut idx = vec![None; l.count(n + 1)];
        let mut gens = Vec::new();
        let mut nm = Vec::new();
        for (t, x) in ex.simplices[n + 1].iter().enumerate() {
            if !x.word.contains(0) {
                idx[t] = Some(gens.len());
                gens.push(x.clone());
                nm.push(simplex_name(s, x));
            }
        }
        gen_of.push(idx);
        generators.push(gens);
        names.push(nm);
    }
    let word = |n: usize, t: usize| -> Word {
        gen_of[n][t].map(|g| vec![letter(g, true)]).unwrap_or_default()
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=level_bound {
        let per_i = (0..=n)
            .map(|i| {
                generators[n]
                    .iter()
                    .map(|x| {
                        let t = ex.lookup(x);
                        if i == 0 {
                            concat(&word(n - 1, l.face(n + 1, 1, t)), &inverse(&word(n - 1, l.face(n + 1, 0, t))))
                        } else {
                            word(n - 1, l.face(n + 1, i + 1, t))
                        }
                    })
                    .collect()
            })
            .collect();
        faces.push(per_i);
    }
    let mut degens = Vec::new();
    for n in 0..=level_bound {
        if n == level_bound {
            degens.push(Vec::new());
            continue;
        }
        let per_i = (0..=n)
            .map(|i| {
                generators[n]
                    .iter()
                    .map(|x| word(n + 1, l.degen(n + 1, i + 1, ex.lookup(x))))
                    .collect()
            })
            .collect();
        degens.push(per_i);
    }
    Ok(FreeSimplicialGroup {
        generators,
        names,
        faces,
        degens,
    })
}

fn simplex_name(s: &SimplicialSet, x: &Simplex) -> String {
    if x.is_degenerate() {
        format!("{x}")
    } else {
        s.label(x.base_dim, x.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::homology::AbelianGroup;
    use crate::sgroup::nerve_of_group;

    #[test]
    fn circle_loop_group() {
        let g = loop_group(&SimplicialSet::circle(), 2).unwrap();
        g.validate().unwrap();
        assert_eq!((0..=2).map(|n| g.rank(n)).collect::<Vec<_>>(), vec![1, 1, 1]);
        let p = g.pi0().unwrap().simplify();
        assert_eq!(p.rank(), 1);
        assert!(p.relators.is_empty());
        assert_eq!(p.abelianization(), AbelianGroup::free(1));
    }

    #[test]
    fn nerve_loop_groups() {
        let n2 = nerve_of_group(&FiniteGroup::cyclic(2), 3).normalize().unwrap().set;
        let g2 = loop_group(&n2, 2).unwrap();
        g2.validate().unwrap();
        let mut p2 = g2.pi0().unwrap();
        assert_eq!(p2.certify_order(1000).unwrap(), 2);
        let s3 = FiniteGroup::symmetric(3);
        let norm = nerve_of_group(&s3, 3).normalize().unwrap();
        let g6 = loop_group(&norm.set, 2).unwrap();
        g6.validate().unwrap();
        let mut p6 = g6.pi0().unwrap();
        // nondegenerate edges of the nerve are the nonidentity elements
        let images = norm.base_index[1].clone();
        assert!(p6.attach_witness(&s3, images, 10_000).unwrap());
    }

    #[test]
    fn rejects_unreduced() {
        assert!(matches!(loop_group(&SimplicialSet::standard(1), 1), Err(Error::NotReduced(_))));
    }
}
