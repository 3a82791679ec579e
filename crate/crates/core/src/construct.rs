//! Products, collapses, coskeleta and simplicial mapping spaces.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hom::{plan_for, CellFilter, Evaluator, FaceIndex, HomPlan, HomSearch, MapSet};
use crate::levels::{Expanded, LevelMap, Levels, Normalized};
use crate::map::SimplicialMap;
use crate::simplex::Simplex;
use crate::sset::SimplicialSet;
use crate::util::{monotone_sequences, subsets, Map};

/// Default step budget for exhaustive searches.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// `X × Y` through `dim_bound` with both projections.
pub struct Product {
    pub set: SimplicialSet,
    pub first: SimplicialMap,
    pub second: SimplicialMap,
}

pub fn product(x: &SimplicialSet, y: &SimplicialSet, dim_bound: usize) -> Result<Product> {
    let complete = x.bound().is_none() && y.bound().is_none();
    let top = if complete {
        dim_bound.min(x.dim() + y.dim())
    } else {
        dim_bound
    };
    let ex = Expanded::new(x, top)?;
    let ey = Expanded::new(y, top)?;
    let mut levels = ex.levels.product(&ey.levels);
    if complete && top < x.dim() + y.dim() {
        levels = levels.truncate(top);
    }
    let norm = levels.normalize()?;
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (n, bases) in norm.base_index.iter().enumerate().take(norm.set.dim() + 1) {
        let w = ey.levels.count(n);
        first.push(bases.iter().map(|&t| ex.simplices[n][t / w].clone()).collect());
        second.push(bases.iter().map(|&t| ey.simplices[n][t % w].clone()).collect());
    }
    Ok(Product {
        set: norm.set,
        first: SimplicialMap::new_unchecked(first),
        second: SimplicialMap::new_unchecked(second),
    })
}

/// A subcomplex given by nondegenerate simplices per dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subcomplex {
    pub cells: Vec<Vec<usize>>,
}

impl Subcomplex {
    pub fn vertices(x: &SimplicialSet) -> Subcomplex {
        Subcomplex {
            cells: vec![(0..x.count(0)).collect()],
        }
    }

    pub fn everything(x: &SimplicialSet) -> Subcomplex {
        Subcomplex {
            cells: (0..=x.dim()).map(|n| (0..x.count(n)).collect()).collect(),
        }
    }

    pub fn contains(&self, n: usize, b: usize) -> bool {
        self.cells.get(n).is_some_and(|c| c.contains(&b))
    }

    pub fn validate(&self, x: &SimplicialSet) -> Result<()> {
        for (n, cells) in self.cells.iter().enumerate() {
            for &b in cells {
                if b >= x.count(n) {
                    return Err(Error::NotSubcomplex(format!("no simplex {b} in dimension {n}")));
                }
                if n == 0 {
                    continue;
                }
                for f in x.faces_of(n, b) {
                    if !self.contains(f.base_dim, f.base) {
                        return Err(Error::NotSubcomplex(format!(
                            "face {f} of {} is missing",
                            x.label(n, b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `X / A`, with `A` collapsed to a point, and the quotient map.
pub fn collapse(x: &SimplicialSet, a: &Subcomplex) -> Result<(SimplicialSet, SimplicialMap)> {
    a.validate(x)?;
    if x.bound().is_some() {
        return Err(Error::Truncated {
            what: "collapse".into(),
            needed: x.dim() + 1,
            available: x.dim(),
        });
    }
    let top = x.dim();
    let ex = Expanded::new(x, top)?;
    let mut levels = ex.levels.clone();
    let mut seeds = Vec::new();
    let mut point_at: Vec<Option<usize>> = vec![None; top + 1];
    if a.cells.first().is_none_or(|c| c.is_empty()) {
        // X / ∅ = X ⊔ *
        levels = Levels::coproduct(&[&ex.levels, &Levels::discrete(1, top)]);
        for (n, p) in point_at.iter_mut().enumerate() {
            *p = Some(ex.levels.count(n));
        }
    } else {
        for n in 0..=top {
            for (t, s) in ex.simplices[n].iter().enumerate() {
                if a.contains(s.base_dim, s.base) {
                    match point_at[n] {
                        None => point_at[n] = Some(t),
                        Some(p) => seeds.push((n, p, t)),
                    }
                }
            }
        }
    }
    let (q, proj) = levels.quotient(&seeds);
    let norm = q.normalize()?;
    let assignment = (0..=top)
        .map(|n| {
            (0..x.count(n))
                .map(|b| {
                    let t = ex.lookup(&Simplex::nondegenerate(n, b));
                    norm.normal_forms[n][proj.apply(n, t)].clone()
                })
                .collect()
        })
        .collect();
    Ok((norm.set, SimplicialMap::new_unchecked(assignment)))
}

/// Monotone map `θ: [q] -> [p]` acting on Δ^q → Δ^p through `top`, with simplices
/// indexed as in [`Levels::delta`].
pub fn delta_map(theta: &[usize], p: usize, top: usize) -> LevelMap {
    let q = theta.len() - 1;
    let images = (0..=top)
        .map(|n| {
            let dst: Map<Vec<usize>, u32> = monotone_sequences(n, p)
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, i as u32))
                .collect();
            monotone_sequences(n, q)
                .into_iter()
                .map(|s| {
                    let img: Vec<usize> = s.iter().map(|&v| theta[v]).collect();
                    dst[&img]
                })
                .collect()
        })
        .collect();
    LevelMap { images }
}

/// Coface `δ^i: [p-1] -> [p]`.
pub fn coface(p: usize, i: usize) -> Vec<usize> {
    (0..p).map(|v| if v < i { v } else { v + 1 }).collect()
}

/// Codegeneracy `σ^i: [p+1] -> [p]`.
pub fn codegeneracy(p: usize, i: usize) -> Vec<usize> {
    (0..=p + 1).map(|v| if v <= i { v } else { v - 1 }).collect()
}

/// `Δ^m` with all vertices identified, as level tables through `top`, together with
/// the quotient from Δ^m.
pub fn collapsed_simplex(m: usize, top: usize) -> (Levels, LevelMap) {
    let d = Levels::delta(m, top);
    let seeds: Vec<(usize, usize, usize)> = (1..=m).map(|v| (0, 0, v)).collect();
    d.quotient(&seeds)
}

/// One level `p` of a mapping space: the product `X × Δ^p` and the maps out of it.
#[derive(Clone, Debug)]
pub struct MapLevel {
    pub product: Levels,
    pub norm: Normalized,
    /// Δ^p counts per dimension, to split product indices.
    pub second_counts: Vec<usize>,
    pub maps: MapSet,
    pub index: Map<Vec<u32>, u32>,
}

impl MapLevel {
    #[inline]
    pub fn pair(&self, n: usize, t: usize) -> (usize, usize) {
        let w = self.second_counts[n];
        (t / w, t % w)
    }

    #[inline]
    pub fn total(&self, n: usize, a: usize, b: usize) -> usize {
        a * self.second_counts[n] + b
    }
}

/// The simplicial mapping space `Hom(X, Y)` (optionally pointed) through level
/// `p_bound`: `p`-simplices are maps `X × Δ^p -> Y`.
#[derive(Clone, Debug)]
pub struct MappingSpace {
    pub source_dim: usize,
    pub target: Expanded,
    pub faces: FaceIndex,
    pub plan: HomPlan,
    pub levels_by_p: Vec<MapLevel>,
    /// Level tables of the mapping space itself.
    pub levels: Levels,
}

impl MappingSpace {
    /// `source` must be complete through `source_dim + p_bound + 1` with no nondegenerate
    /// simplices above `source_dim`. `base` pins source vertex to target vertex.
    pub fn build(
        source: &Levels,
        source_dim: usize,
        target: &SimplicialSet,
        p_bound: usize,
        base: Option<(usize, usize)>,
        budget: u64,
    ) -> Result<MappingSpace> {
        // degeneracies land one dimension above the top product level
        let top = source_dim + p_bound + 1;
        if source.top() < top {
            return Err(Error::Truncated {
                what: "mapping space source".into(),
                needed: top,
                available: source.top(),
            });
        }
        let tgt = Expanded::new(target, top)?;
        let faces = FaceIndex::new(&tgt, top);
        let plan = plan_for(&tgt, &faces, top, budget)?;
        let mut levels_by_p = Vec::with_capacity(p_bound + 1);
        for p in 0..=p_bound {
            let dp = Levels::delta(p, top);
            // X has no nondegenerate simplices above source_dim, so X × Δ^p stops at
            // source_dim + p
            let prod = source.truncate(top).product(&dp).assume_complete();
            let norm = prod.normalize()?;
            let second_counts: Vec<usize> = dp.counts().to_vec();
            // pointed: the whole slice {base} × Δ^p goes to the degenerate basepoint
            let pinned: Vec<(usize, usize)> = match base {
                Some((sv, tv)) => (0..=top)
                    .map(|n| {
                        let ones = vec![0; n + 1];
                        (
                            source.apply_monotone(0, &ones, sv),
                            tgt.levels.apply_monotone(0, &ones, tv),
                        )
                    })
                    .collect(),
                None => Vec::new(),
            };
            let filter_fn = |n: usize, x: usize, y: usize| -> bool {
                match pinned.get(n) {
                    Some(&(sv, tv)) => norm.base_index[n][x] / second_counts[n] != sv || y == tv,
                    None => true,
                }
            };
            let filter: &CellFilter = &filter_fn;
            let maps = HomSearch {
                source: &norm.set,
                target: &tgt,
                faces: &faces,
                plan,
                filter: Some(filter),
                budget,
            }
            .run()?;
            let index = maps.key_index();
            levels_by_p.push(MapLevel {
                product: prod,
                norm,
                second_counts,
                maps,
                index,
            });
        }
        let mut space = MappingSpace {
            source_dim,
            target: tgt,
            faces,
            plan,
            levels_by_p,
            levels: Levels::discrete(0, 0),
        };
        let face_maps: Vec<Vec<LevelMap>> = (0..=p_bound)
            .map(|p| {
                if p == 0 {
                    Vec::new()
                } else {
                    (0..=p)
                        .map(|i| delta_map(&coface(p, i), p, top))
                        .collect()
                }
            })
            .collect();
        let degen_maps: Vec<Vec<LevelMap>> = (0..p_bound)
            .map(|p| {
                (0..=p)
                    .map(|i| delta_map(&codegeneracy(p, i), p, top))
                    .collect()
            })
            .collect();
        let counts: Vec<usize> = space.levels_by_p.iter().map(|l| l.maps.len()).collect();
        let mut err = None;
        let levels = {
            let sp = &space;
            Levels::build(
                counts,
                false,
                |p, f, i| {
                    let g = &face_maps[p][i];
                    match sp.precompose(p, f, p - 1, |n, a, b| (a, g.apply(n, b))) {
                        Ok(v) => v,
                        Err(e) => {
                            err = Some(e);
                            0
                        }
                    }
                },
                |p, f, i| {
                    let g = &degen_maps[p][i];
                    sp.precompose(p, f, p + 1, |n, a, b| (a, g.apply(n, b)))
                        .unwrap_or(0)
                },
            )
        };
        if let Some(e) = err {
            return Err(e);
        }
        space.levels = levels;
        Ok(space)
    }

    /// `f ∘ g` where `f` is map `f` at level `p` and `g: X × Δ^q -> X × Δ^p` is given on
    /// pairs of total indices. Returns the index of the composite at level `q`.
    pub fn precompose(
        &self,
        p: usize,
        f: usize,
        q: usize,
        g: impl Fn(usize, usize, usize) -> (usize, usize),
    ) -> Result<usize> {
        let key = self.precompose_key(p, f, &self.levels_by_p[q], g)?;
        self.levels_by_p[q]
            .index
            .get(&key)
            .map(|&v| v as usize)
            .ok_or_else(|| Error::InvalidMap("precomposite is not an enumerated map".into()))
    }

    /// Key of `f ∘ g` for `g` landing in this space's level `p`, from the product
    /// described by `dst` (possibly belonging to another mapping space with the same
    /// target).
    pub fn precompose_key(
        &self,
        p: usize,
        f: usize,
        dst: &MapLevel,
        g: impl Fn(usize, usize, usize) -> (usize, usize),
    ) -> Result<Vec<u32>> {
        let lvl = &self.levels_by_p[p];
        let key_f = lvl.maps.key(f);
        let ev = Evaluator {
            source: &lvl.norm.set,
            target: &self.target,
            faces: &self.faces,
        };
        let mut key = Vec::with_capacity(dst.maps.stride());
        let key_dim = dst.maps.plan.key_dim.min(dst.norm.set.dim());
        for n in 0..=key_dim {
            for &t in dst.norm.base_index[n].iter() {
                let (a, b) = dst.pair(n, t);
                let (a2, b2) = g(n, a, b);
                let s = &lvl.norm.normal_forms[n][lvl.total(n, a2, b2)];
                key.push(ev.eval(&lvl.maps, key_f, s)? as u32);
            }
        }
        Ok(key)
    }

    /// Value of map `f` of level `p` on the product simplex with total index `t`.
    pub fn eval_total(&self, p: usize, f: usize, n: usize, t: usize) -> Result<usize> {
        let lvl = &self.levels_by_p[p];
        let ev = Evaluator {
            source: &lvl.norm.set,
            target: &self.target,
            faces: &self.faces,
        };
        ev.eval(&lvl.maps, lvl.maps.key(f), &lvl.norm.normal_forms[n][t])
    }

    pub fn normalize(&self) -> Result<Normalized> {
        self.levels.normalize()
    }
}

/// `Hom(X, Y)` through `dim_bound`, optionally pointed at `(x0, y0)` (vertex indices).
pub fn mapping_space(
    x: &SimplicialSet,
    y: &SimplicialSet,
    dim_bound: usize,
    pointed: Option<(usize, usize)>,
    budget: u64,
) -> Result<(SimplicialSet, MappingSpace)> {
    if x.bound().is_some() {
        return Err(Error::Truncated {
            what: "mapping space source must be finite".into(),
            needed: x.dim() + 1,
            available: x.dim(),
        });
    }
    let ex = Expanded::new(x, x.dim() + dim_bound + 1)?;
    let base = match pointed {
        Some((x0, y0)) => {
            if x0 >= x.count(0) || y0 >= y.count(0) {
                return Err(Error::Parameter("basepoint out of range".into()));
            }
            Some((ex.lookup(&Simplex::nondegenerate(0, x0)), y0))
        }
        None => None,
    };
    let space = MappingSpace::build(&ex.levels, x.dim(), y, dim_bound, base, budget)?;
    let norm = space.normalize()?;
    Ok((norm.set, space))
}

/// `cosk_n X` through `dim_bound`: `m`-simplices are maps `sk_n Δ^m -> X`.
pub fn coskeleton(
    x: &SimplicialSet,
    n: usize,
    dim_bound: usize,
    budget: u64,
) -> Result<(SimplicialSet, Levels)> {
    let tgt = Expanded::new(x, n.min(x.known_through()))?;
    if n > x.known_through() {
        return Err(Error::Truncated {
            what: "coskeleton".into(),
            needed: n,
            available: x.known_through(),
        });
    }
    let faces = FaceIndex::new(&tgt, n);
    let mut sources = Vec::new();
    let mut sets = Vec::new();
    let mut cell_index: Vec<Vec<Map<Vec<usize>, usize>>> = Vec::new();
    for m in 0..=dim_bound + 1 {
        let src = SimplicialSet::standard(m).skeleton(n);
        let idx: Vec<Map<Vec<usize>, usize>> = (0..=n.min(m))
            .map(|k| {
                subsets(m + 1, k + 1)
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| (s, i))
                    .collect()
            })
            .collect();
        let maps = HomSearch {
            source: &src,
            target: &tgt,
            faces: &faces,
            plan: HomPlan::full(n),
            filter: None,
            budget,
        }
        .run()?;
        sources.push(src);
        sets.push(maps);
        cell_index.push(idx);
    }
    let index: Vec<Map<Vec<u32>, u32>> = sets.iter().map(|s| s.key_index()).collect();
    // image of the cell `cells` of sk_n Δ^m under θ: [m] -> [m'] evaluated by map f
    let eval_under = |m2: usize, f: usize, seq: &[usize]| -> usize {
        let mut base: Vec<usize> = seq.to_vec();
        base.dedup();
        let k = base.len() - 1;
        let reps: Vec<usize> = (0..seq.len() - 1).filter(|&j| seq[j] == seq[j + 1]).collect();
        let b = cell_index[m2][k][&base];
        let pos = sets[m2].cell_position(k, b).expect("key cell");
        let mut y = sets[m2].key(f)[pos] as usize;
        let mut dim = k;
        for j in reps {
            y = tgt.levels.degen(dim, j, y);
            dim += 1;
        }
        y
    };
    let compose_key = |m: usize, f: usize, m2: usize, theta: &[usize]| -> u32 {
        // key of f ∘ θ for θ: [m2'] -> [m] with the result living at level m2
        let mut key = Vec::new();
        for k in 0..=n.min(m2) {
            for s in subsets(m2 + 1, k + 1) {
                let seq: Vec<usize> = s.iter().map(|&v| theta[v]).collect();
                key.push(eval_under(m, f, &seq) as u32);
            }
        }
        index[m2][&key]
    };
    let counts: Vec<usize> = (0..=dim_bound).map(|m| sets[m].len()).collect();
    let levels = Levels::build(
        counts,
        false,
        |m, f, i| compose_key(m, f, m - 1, &coface(m, i)) as usize,
        |m, f, i| compose_key(m, f, m + 1, &codegeneracy(m, i)) as usize,
    );
    let norm = levels.normalize()?;
    Ok((norm.set, levels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::Generator;

    #[test]
    fn product_counts() {
        let d1 = SimplicialSet::standard(1);
        let p = product(&d1, &d1, 4).unwrap();
        assert_eq!(p.set.counts(), vec![4, 5, 2]);
        p.first.check(&p.set, &d1).unwrap();
        p.second.check(&p.set, &d1).unwrap();
        let c = SimplicialSet::circle();
        let t = product(&c, &c, 4).unwrap();
        assert_eq!(t.set.counts(), vec![1, 3, 2]);
        let xp = product(&SimplicialSet::standard(2), &SimplicialSet::point(), 4).unwrap();
        assert_eq!(xp.set.counts(), vec![3, 3, 1]);
    }

    #[test]
    fn collapse_examples() {
        let d1 = SimplicialSet::standard(1);
        let (c, q) = collapse(&d1, &Subcomplex::vertices(&d1)).unwrap();
        assert_eq!(c.counts(), vec![1, 1]);
        q.check(&d1, &c).unwrap();
        let d2 = SimplicialSet::standard(2);
        let (c2, q2) = collapse(&d2, &Subcomplex::vertices(&d2)).unwrap();
        assert_eq!(c2.counts(), vec![1, 3, 1]);
        q2.check(&d2, &c2).unwrap();
        let (pt, _) = collapse(&d2, &Subcomplex::everything(&d2)).unwrap();
        assert_eq!(pt.counts(), vec![1]);
    }

    #[test]
    fn collapse_rejects_non_subcomplex() {
        let d2 = SimplicialSet::standard(2);
        let a = Subcomplex {
            cells: vec![vec![0], vec![0]],
        };
        assert!(matches!(collapse(&d2, &a), Err(Error::NotSubcomplex(_))));
    }

    #[test]
    fn coskeleton_examples() {
        let two = SimplicialSet::discrete(2);
        let (_, l) = coskeleton(&two, 0, 3, DEFAULT_BUDGET).unwrap();
        for m in 0..=3 {
            assert_eq!(l.count(m), 1 << (m + 1));
        }
        l.check_identities().unwrap();
        let (_, lc) = coskeleton(&SimplicialSet::circle(), 1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(lc.count(2), 8);
        let (cd, _) = coskeleton(&SimplicialSet::standard(2), 2, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(cd.counts(), vec![3, 3, 1, 0, 0]);
    }

    #[test]
    fn mapping_space_examples() {
        let c = SimplicialSet::circle();
        let (m, sp) = mapping_space(&SimplicialSet::point(), &c, 3, None, DEFAULT_BUDGET).unwrap();
        sp.levels.check_identities().unwrap();
        assert_eq!(m.counts(), vec![1, 1, 0, 0]);
        let (md, spd) =
            mapping_space(&SimplicialSet::point(), &SimplicialSet::standard(2), 3, None, DEFAULT_BUDGET)
                .unwrap();
        spd.levels.check_identities().unwrap();
        assert_eq!(md.counts(), vec![3, 3, 1, 0]);
        let (m2, _) =
            mapping_space(&SimplicialSet::standard(1), &SimplicialSet::point(), 3, None, DEFAULT_BUDGET)
                .unwrap();
        assert_eq!(m2.counts(), vec![1, 0, 0, 0]);
        let b = SimplicialSet::generator(Generator::Boundary(1)).unwrap();
        let (m3, _) = mapping_space(&b, &c, 2, None, DEFAULT_BUDGET).unwrap();
        // Hom(two points, S^1) = S^1 × S^1
        assert_eq!(m3.counts(), vec![1, 3, 2]);
    }
}
