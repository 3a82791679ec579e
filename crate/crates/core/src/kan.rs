//! Horn filling.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::levels::Expanded;
use crate::simplex::Simplex;
use crate::sset::SimplicialSet;
use crate::util::Set;

/// A horn `Λ^m_k -> X` with no filler. `faces[i]` is the image of the `i`-th face
/// (`None` at the missing index `k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Horn {
    pub m: usize,
    pub k: usize,
    pub faces: Vec<Option<Simplex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KanReport {
    pub checked_through: usize,
    pub unfillable: Vec<Horn>,
    /// Total number of horns inspected.
    pub horns: usize,
}

impl KanReport {
    pub fn is_kan(&self) -> bool {
        self.unfillable.is_empty()
    }
}

/// Every horn `Λ^m_k -> X` with `1 <= m <= dim`, and those without a filler.
pub fn kan_check(x: &SimplicialSet, dim: usize) -> Result<KanReport> {
    let ex = Expanded::new(x, dim)?;
    let l = &ex.levels;
    let mut report = KanReport {
        checked_through: dim,
        unfillable: Vec::new(),
        horns: 0,
    };
    for m in 1..=dim {
        let mut filled: Set<(usize, Vec<u32>)> = Set::default();
        for s in 0..l.count(m) {
            for k in 0..=m {
                let t = (0..=m)
                    .filter(|&i| i != k)
                    .map(|i| l.face(m, i, s) as u32)
                    .collect();
                filled.insert((k, t));
            }
        }
        let below = l.count(m - 1);
        for k in 0..=m {
            let slots: Vec<usize> = (0..=m).filter(|&i| i != k).collect();
            let mut chosen: Vec<u32> = Vec::with_capacity(m);
            let mut next = vec![0usize; m];
            let mut depth = 0;
            // depth-first over compatible tuples
            loop {
                if depth == slots.len() {
                    report.horns += 1;
                    if !filled.contains(&(k, chosen.clone())) {
                        let mut faces = vec![None; m + 1];
                        for (p, &i) in slots.iter().enumerate() {
                            faces[i] = Some(ex.simplices[m - 1][chosen[p] as usize].clone());
                        }
                        report.unfillable.push(Horn { m, k, faces });
                    }
                    if depth == 0 {
                        break;
                    }
                    depth -= 1;
                    chosen.pop();
                    continue;
                }
                let j = slots[depth];
                let mut found = None;
                while next[depth] < below {
                    let y = next[depth];
                    next[depth] += 1;
                    // d_i y_j = d_{j-1} y_i for i < j
                    let ok = m < 2
                        || slots[..depth].iter().enumerate().all(|(p, &i)| {
                            l.face(m - 1, i, y) == l.face(m - 1, j - 1, chosen[p] as usize)
                        });
                    if ok {
                        found = Some(y);
                        break;
                    }
                }
                match found {
                    Some(y) => {
                        chosen.push(y as u32);
                        depth += 1;
                        if depth < slots.len() {
                            next[depth] = 0;
                        }
                    }
                    None => {
                        if depth == 0 {
                            break;
                        }
                        depth -= 1;
                        chosen.pop();
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::Generator;

    #[test]
    fn point_and_simplex_are_kan() {
        assert!(kan_check(&SimplicialSet::point(), 3).unwrap().is_kan());
        assert!(kan_check(&SimplicialSet::standard(0), 2).unwrap().is_kan());
    }

    #[test]
    fn circle_inner_horn_fails() {
        let r = kan_check(&SimplicialSet::circle(), 2).unwrap();
        let e = Simplex::nondegenerate(1, 0);
        assert!(r
            .unfillable
            .iter()
            .any(|h| h.m == 2 && h.k == 1 && h.faces == vec![Some(e.clone()), None, Some(e.clone())]));
    }

    #[test]
    fn standard_simplex_outer_horns() {
        // Δ^1 is not Kan, but its inner horns fill
        let r = kan_check(&SimplicialSet::standard(1), 2).unwrap();
        assert!(!r.is_kan());
        assert!(r.unfillable.iter().all(|h| h.k != 1));
        let b = SimplicialSet::generator(Generator::Boundary(2)).unwrap();
        assert!(!kan_check(&b, 2).unwrap().is_kan());
    }
}
