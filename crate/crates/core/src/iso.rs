//! Isomorphism search between presented simplicial sets.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::simplex::Simplex;
use crate::sset::SimplicialSet;

/// Cells of a presented set, numbered dimension by dimension.
struct Cells<'a> {
    x: &'a SimplicialSet,
    offset: Vec<usize>,
    /// `(coface node, face index)` pairs.
    cofaces: Vec<Vec<(usize, usize)>>,
}

impl<'a> Cells<'a> {
    fn new(x: &'a SimplicialSet) -> Cells<'a> {
        let mut offset = vec![0];
        for n in 0..=x.dim() {
            offset.push(offset[n] + x.count(n));
        }
        let total = offset[x.dim() + 1];
        let mut cofaces = vec![Vec::new(); total];
        for n in 1..=x.dim() {
            for b in 0..x.count(n) {
                for (i, f) in x.faces_of(n, b).iter().enumerate() {
                    cofaces[offset[f.base_dim] + f.base].push((offset[n] + b, i));
                }
            }
        }
        Cells { x, offset, cofaces }
    }

    fn len(&self) -> usize {
        self.cofaces.len()
    }

    fn node(&self, n: usize, b: usize) -> usize {
        self.offset[n] + b
    }

    fn cell(&self, v: usize) -> (usize, usize) {
        let n = self.offset.partition_point(|&o| o <= v) - 1;
        (n, v - self.offset[n])
    }
}

/// Refines colors on both sets jointly; returns final colors per node.
fn refine(a: &Cells, b: &Cells, init_a: &[u64], init_b: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let sig0 = |c: &Cells, v: usize, init: u64| -> Vec<u64> {
        let (n, x) = c.cell(v);
        let mut s = vec![init, n as u64, c.cofaces[v].len() as u64];
        if n > 0 {
            for f in c.x.faces_of(n, x) {
                s.push(f.base_dim as u64);
                s.push(f.word.len() as u64);
                s.extend(f.word.indices().iter().map(|&i| i as u64));
                s.push(u64::MAX);
            }
        }
        s
    };
    let mut keys: Vec<Vec<u64>> = (0..a.len())
        .map(|v| sig0(a, v, init_a[v]))
        .chain((0..b.len()).map(|v| sig0(b, v, init_b[v])))
        .collect();
    let mut colors = relabel(&keys);
    let mut classes = count_classes(&colors);
    loop {
        let next = |c: &Cells, v: usize, shift: usize, colors: &[usize]| -> Vec<u64> {
            let (n, x) = c.cell(v);
            let mut s = vec![colors[shift + v] as u64];
            if n > 0 {
                for f in c.x.faces_of(n, x) {
                    s.push(colors[shift + c.node(f.base_dim, f.base)] as u64);
                }
            }
            let mut co: Vec<(u64, u64)> = c.cofaces[v]
                .iter()
                .map(|&(w, i)| (colors[shift + w] as u64, i as u64))
                .collect();
            co.sort_unstable();
            s.push(u64::MAX);
            for (cc, i) in co {
                s.push(cc);
                s.push(i);
            }
            s
        };
        keys = (0..a.len())
            .map(|v| next(a, v, 0, &colors))
            .chain((0..b.len()).map(|v| next(b, v, a.len(), &colors)))
            .collect();
        let refined = relabel(&keys);
        let c = count_classes(&refined);
        colors = refined;
        if c == classes {
            break;
        }
        classes = c;
    }
    let cb = colors.split_off(a.len());
    (colors, cb)
}

fn relabel(keys: &[Vec<u64>]) -> Vec<usize> {
    // numbering by rank of the key, independent of node order
    let ranks: BTreeMap<&Vec<u64>, usize> = keys.iter().map(|k| (k, 0)).collect();
    let ranks: BTreeMap<&Vec<u64>, usize> =
        ranks.into_keys().enumerate().map(|(r, k)| (k, r)).collect();
    keys.iter().map(|k| ranks[k]).collect()
}

fn count_classes(c: &[usize]) -> usize {
    c.iter().copied().max().map_or(0, |m| m + 1)
}

/// Searches for an isomorphism `X -> Y`. `Ok(None)` certifies that none exists.
pub fn iso_search(x: &SimplicialSet, y: &SimplicialSet, budget: u64) -> Result<Option<SimplicialMap>> {
    iso_search_colored(x, y, None, budget)
}

/// As [`iso_search`], restricted to maps preserving the given per-cell colors
/// (`colors.0[n][b]` on `X`, `colors.1[n][b]` on `Y`).
pub fn iso_search_colored(
    x: &SimplicialSet,
    y: &SimplicialSet,
    colors: Option<(&[Vec<u64>], &[Vec<u64>])>,
    budget: u64,
) -> Result<Option<SimplicialMap>> {
    if x.counts() != y.counts() || x.bound() != y.bound() {
        return Ok(None);
    }
    let a = Cells::new(x);
    let b = Cells::new(y);
    let flat = |c: Option<&[Vec<u64>]>, len: usize| -> Vec<u64> {
        match c {
            Some(c) => c.iter().flatten().copied().collect(),
            None => vec![0; len],
        }
    };
    let ia = flat(colors.map(|c| c.0), a.len());
    let ib = flat(colors.map(|c| c.1), b.len());
    if ia.len() != a.len() || ib.len() != b.len() {
        return Err(Error::Parameter("color table does not match the cell count".into()));
    }
    let (ca, cb) = refine(&a, &b, &ia, &ib);
    let mut hist_a = BTreeMap::new();
    let mut hist_b = BTreeMap::new();
    for &c in &ca {
        *hist_a.entry(c).or_insert(0usize) += 1;
    }
    for &c in &cb {
        *hist_b.entry(c).or_insert(0usize) += 1;
    }
    if hist_a != hist_b {
        return Ok(None);
    }
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in cb.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }
    let order = search_order(&a);
    let n = a.len();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut next = vec![0usize; n];
    let mut steps = 0u64;
    let mut depth = 0;
    while depth < n {
        let v = order[depth];
        let cands = &by_color[&ca[v]];
        if image[v] != usize::MAX {
            used[image[v]] = false;
            image[v] = usize::MAX;
        }
        let mut placed = false;
        while next[depth] < cands.len() {
            let w = cands[next[depth]];
            next[depth] += 1;
            steps += 1;
            if steps > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            if used[w] || !faces_agree(&a, &b, &image, v, w) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            placed = true;
            break;
        }
        if placed {
            depth += 1;
            if depth < n {
                next[depth] = 0;
            }
        } else {
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
        }
    }
    let assignment = (0..=x.dim())
        .map(|d| {
            (0..x.count(d))
                .map(|i| {
                    let (m, j) = b.cell(image[a.node(d, i)]);
                    Simplex::nondegenerate(m, j)
                })
                .collect()
        })
        .collect();
    Ok(Some(SimplicialMap::new_unchecked(assignment)))
}

fn faces_agree(a: &Cells, b: &Cells, image: &[usize], v: usize, w: usize) -> bool {
    let (n, x) = a.cell(v);
    let (m, y) = b.cell(w);
    if n != m {
        return false;
    }
    if n == 0 {
        return true;
    }
    a.x.faces_of(n, x)
        .iter()
        .zip(b.x.faces_of(m, y).iter())
        .all(|(f, g)| {
            f.word == g.word && {
                let img = image[a.node(f.base_dim, f.base)];
                img != usize::MAX && img == b.node(g.base_dim, g.base)
            }
        })
}

/// Vertices in a connected sweep, each followed as soon as possible by the cells
/// whose faces are already placed.
fn search_order(a: &Cells) -> Vec<usize> {
    let n = a.len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut missing: Vec<usize> = (0..n)
        .map(|v| {
            let (d, x) = a.cell(v);
            if d == 0 {
                0
            } else {
                let mut fs: Vec<usize> = a
                    .x
                    .faces_of(d, x)
                    .iter()
                    .map(|f| a.node(f.base_dim, f.base))
                    .collect();
                fs.sort_unstable();
                fs.dedup();
                fs.len()
            }
        })
        .collect();
    let mut ready: Vec<usize> = Vec::new();
    let mut vertex = 0;
    let vertices = a.offset[1];
    while order.len() < n {
        let v = if let Some(v) = ready.pop() {
            v
        } else {
            // a vertex adjacent to what is placed, else the next one
            let adj = (0..vertices).find(|&u| {
                !placed[u] && a.cofaces[u].iter().any(|&(w, _)| {
                    let (d, x) = a.cell(w);
                    a.x.faces_of(d, x).iter().any(|f| placed[a.node(f.base_dim, f.base)])
                })
            });
            match adj {
                Some(u) => u,
                None => {
                    while placed[vertex] {
                        vertex += 1;
                    }
                    vertex
                }
            }
        };
        if placed[v] {
            continue;
        }
        placed[v] = true;
        order.push(v);
        let mut seen: Vec<usize> = a.cofaces[v].iter().map(|&(w, _)| w).collect();
        seen.sort_unstable();
        seen.dedup();
        for w in seen {
            missing[w] -= 1;
            if missing[w] == 0 {
                ready.push(w);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{product, DEFAULT_BUDGET};

    #[test]
    fn trivial_cases() {
        let d1 = SimplicialSet::standard(1);
        let f = iso_search(&d1, &d1, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(f, SimplicialMap::identity(&d1));
        assert!(iso_search(&SimplicialSet::circle(), &d1, DEFAULT_BUDGET)
            .unwrap()
            .is_none());
    }

    #[test]
    fn finds_nontrivial_iso() {
        // Δ^1 × Δ^2 and Δ^2 × Δ^1 agree up to renumbering
        let a = product(&SimplicialSet::standard(1), &SimplicialSet::standard(2), 4).unwrap().set;
        let b = product(&SimplicialSet::standard(2), &SimplicialSet::standard(1), 4).unwrap().set;
        let f = iso_search(&a, &b, DEFAULT_BUDGET).unwrap().unwrap();
        f.check(&a, &b).unwrap();
        assert!(f.is_isomorphism(&a, &b));
    }

    #[test]
    fn same_counts_not_isomorphic() {
        // two points and an edge between them vs. a loop plus an isolated point
        let d1 = SimplicialSet::standard(1);
        let other = SimplicialSet::circle().disjoint_union(&SimplicialSet::point());
        assert_eq!(d1.counts(), other.counts());
        assert!(iso_search(&d1, &other, DEFAULT_BUDGET).unwrap().is_none());
    }
}
