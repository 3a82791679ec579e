//! Enumeration of simplicial maps `K -> X` for finite `K`.
//!
//! Maps are found by backtracking over the nondegenerate simplices of `K`, each placed as
//! soon as its faces are placed, with candidates looked up by face tuple in `X`. When
//! `X` is `k`-coskeletal through the needed range, only the `k`-skeleton of `K` is
//! searched: every compatible assignment there extends uniquely. A map is stored by its
//! *key*, the images of the cells of dimension at most `c`, where above `c` simplices
//! of `X` are determined by their faces.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::levels::{Expanded, LevelMap, Levels};
use crate::simplex::Simplex;
use crate::sset::{Generator, SimplicialSet};
use crate::util::Map;

/// Which dimensions to search and which to store.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomPlan {
    pub check_dim: usize,
    pub key_dim: usize,
}

impl HomPlan {
    /// Search and store everything up to `dim`.
    pub fn full(dim: usize) -> HomPlan {
        HomPlan {
            check_dim: dim,
            key_dim: dim,
        }
    }
}

/// Face-tuple lookup tables of an expanded target.
#[derive(Clone, Debug)]
pub struct FaceIndex {
    by_faces: Vec<Map<Vec<u32>, Vec<u32>>>,
}

impl FaceIndex {
    pub fn new(x: &Expanded, top: usize) -> FaceIndex {
        let l = &x.levels;
        let mut by_faces = vec![Map::new()];
        for n in 1..=top.min(l.top()) {
            let mut m: Map<Vec<u32>, Vec<u32>> = Map::with_capacity(l.count(n));
            for y in 0..l.count(n) {
                let key: Vec<u32> = (0..=n).map(|i| l.face(n, i, y) as u32).collect();
                m.entry(key).or_default().push(y as u32);
            }
            by_faces.push(m);
        }
        FaceIndex { by_faces }
    }

    pub fn fillers(&self, n: usize, faces: &[u32]) -> &[u32] {
        self.by_faces
            .get(n)
            .and_then(|m| m.get(faces))
            .map_or(&[], |v| v.as_slice())
    }

    pub fn injective(&self, n: usize) -> bool {
        self.by_faces[n].values().all(|v| v.len() == 1)
    }
}

pub type CellFilter<'a> = dyn Fn(usize, usize, usize) -> bool + 'a;

/// Maps found by a search, stored by key.
#[derive(Clone, Debug)]
pub struct MapSet {
    pub plan: HomPlan,
    /// `cell_pos[n][b]`: position of cell `(n, b)` inside a key, for `n <= key_dim`.
    cell_pos: Vec<Vec<usize>>,
    stride: usize,
    data: Vec<u32>,
}

impl MapSet {
    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.stride).unwrap_or(self.data.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn key(&self, m: usize) -> &[u32] {
        &self.data[m * self.stride..(m + 1) * self.stride]
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn cell_position(&self, n: usize, b: usize) -> Option<usize> {
        self.cell_pos.get(n).map(|v| v[b])
    }

    /// Keys to map indices.
    pub fn key_index(&self) -> Map<Vec<u32>, u32> {
        (0..self.len())
            .map(|m| (self.key(m).to_vec(), m as u32))
            .collect()
    }
}

/// Applies a normal-form word to a target simplex index.
pub fn degenerate_total(x: &Expanded, mut dim: usize, mut y: usize, s: &Simplex) -> usize {
    for &i in s.word.indices().iter().rev() {
        y = x.levels.degen(dim, i, y);
        dim += 1;
    }
    y
}

/// Evaluates a keyed map on any simplex of its source.
pub struct Evaluator<'a> {
    pub source: &'a SimplicialSet,
    pub target: &'a Expanded,
    pub faces: &'a FaceIndex,
}

impl Evaluator<'_> {
    pub fn eval(&self, maps: &MapSet, key: &[u32], s: &Simplex) -> Result<usize> {
        let base = self.eval_base(maps, key, s.base_dim, s.base)?;
        Ok(degenerate_total(self.target, s.base_dim, base, s))
    }

    fn eval_base(&self, maps: &MapSet, key: &[u32], n: usize, b: usize) -> Result<usize> {
        if let Some(p) = maps.cell_position(n, b) {
            return Ok(key[p] as usize);
        }
        let mut fv = Vec::with_capacity(n + 1);
        for f in self.source.faces_of(n, b) {
            fv.push(self.eval(maps, key, f)? as u32);
        }
        match self.faces.fillers(n, &fv) {
            [y] => Ok(*y as usize),
            _ => Err(Error::InvalidMap(
                "key does not determine the map (target not determined by faces)".into(),
            )),
        }
    }
}

pub struct HomSearch<'a> {
    pub source: &'a SimplicialSet,
    pub target: &'a Expanded,
    pub faces: &'a FaceIndex,
    pub plan: HomPlan,
    pub filter: Option<&'a CellFilter<'a>>,
    pub budget: u64,
}

impl<'a> HomSearch<'a> {
    fn order(&self) -> Vec<(usize, usize)> {
        let src = self.source;
        let top = self.plan.check_dim.min(src.dim());
        let mut placed: Vec<Vec<bool>> = (0..=top).map(|n| vec![false; src.count(n)]).collect();
        let mut order = Vec::new();
        for v in 0..src.count(0) {
            placed[0][v] = true;
            order.push((0, v));
        }
        // cofaces by base, for readiness counting
        let mut cofaces: Vec<Vec<Vec<(usize, usize)>>> =
            (0..=top).map(|n| vec![Vec::new(); src.count(n)]).collect();
        for n in 1..=top {
            for x in 0..src.count(n) {
                for f in src.faces_of(n, x) {
                    if !cofaces[f.base_dim][f.base].contains(&(n, x)) {
                        cofaces[f.base_dim][f.base].push((n, x));
                    }
                }
            }
        }
        let ready = |placed: &Vec<Vec<bool>>, n: usize, x: usize| {
            !placed[n][x]
                && src
                    .faces_of(n, x)
                    .iter()
                    .all(|f| placed[f.base_dim][f.base])
        };
        let total: usize = (1..=top).map(|n| src.count(n)).sum();
        let mut done = 0;
        while done < total {
            // checks first: any ready cell of dimension >= 2
            let mut pick = None;
            'outer: for n in 2..=top {
                for x in 0..src.count(n) {
                    if ready(&placed, n, x) {
                        pick = Some((n, x));
                        break 'outer;
                    }
                }
            }
            if pick.is_none() {
                // the ready cell closing the most cofaces
                let mut best: Option<((usize, usize), usize)> = None;
                for n in 1..=top {
                    for x in 0..src.count(n) {
                        if !ready(&placed, n, x) {
                            continue;
                        }
                        placed[n][x] = true;
                        let closes = cofaces[n][x]
                            .iter()
                            .filter(|&&(m, y)| ready(&placed, m, y))
                            .count();
                        placed[n][x] = false;
                        if best.is_none_or(|(_, c)| closes > c) {
                            best = Some(((n, x), closes));
                        }
                    }
                }
                pick = best.map(|b| b.0);
            }
            let (n, x) = pick.expect("some cell is always ready");
            placed[n][x] = true;
            order.push((n, x));
            done += 1;
        }
        order
    }

    pub fn run(&self) -> Result<MapSet> {
        let src = self.source;
        let tgt = &self.target.levels;
        let top = self.plan.check_dim.min(src.dim());
        let needed = top;
        if tgt.top() < needed {
            return Err(Error::Truncated {
                what: "map enumeration".into(),
                needed,
                available: tgt.top(),
            });
        }
        let key_dim = self.plan.key_dim.min(top);
        let mut cell_pos: Vec<Vec<usize>> = Vec::new();
        let mut stride = 0;
        for n in 0..=key_dim {
            cell_pos.push((stride..stride + src.count(n)).collect());
            stride += src.count(n);
        }
        let order = self.order();
        let mut offsets = vec![0usize; top + 2];
        for n in 0..=top {
            offsets[n + 1] = offsets[n] + src.count(n);
        }
        let mut values = vec![u32::MAX; offsets[top + 1]];
        let mut data = Vec::new();
        let mut steps: u64 = 0;
        let candidates = |values: &Vec<u32>, n: usize, x: usize| -> Vec<u32> {
            let raw: Box<dyn Iterator<Item = u32>> = if n == 0 {
                Box::new(0..tgt.count(0) as u32)
            } else {
                let fv: Vec<u32> = src
                    .faces_of(n, x)
                    .iter()
                    .map(|f| {
                        let v = values[offsets[f.base_dim] + f.base] as usize;
                        degenerate_total(self.target, f.base_dim, v, f) as u32
                    })
                    .collect();
                Box::new(self.faces.fillers(n, &fv).to_vec().into_iter())
            };
            match self.filter {
                Some(flt) => raw.filter(|&y| flt(n, x, y as usize)).collect(),
                None => raw.collect(),
            }
        };
        if order.is_empty() {
            // the empty source: exactly one map, recorded by a marker entry
            return Ok(MapSet {
                plan: self.plan,
                cell_pos,
                stride: 0,
                data: vec![0],
            });
        }
        // iterative depth-first search
        let mut stack: Vec<(Vec<u32>, usize)> = Vec::with_capacity(order.len());
        let (n0, x0) = order[0];
        stack.push((candidates(&values, n0, x0), 0));
        while !stack.is_empty() {
            let depth = stack.len() - 1;
            let (cands, next) = &mut stack[depth];
            if *next >= cands.len() {
                stack.pop();
                continue;
            }
            let y = cands[*next];
            *next += 1;
            steps += 1;
            if steps > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let (n, x) = order[depth];
            values[offsets[n] + x] = y;
            if depth + 1 == order.len() {
                for m in 0..=key_dim {
                    for b in 0..src.count(m) {
                        data.push(values[offsets[m] + b]);
                    }
                }
                if stride == 0 {
                    data.push(0);
                }
            } else {
                let (n2, x2) = order[depth + 1];
                let c = candidates(&values, n2, x2);
                stack.push((c, 0));
            }
        }
        Ok(MapSet {
            plan: self.plan,
            cell_pos,
            stride,
            data,
        })
    }
}

/// Coskeletal analysis of a target through dimension `top`: the smallest `k` such that
/// every `n`-simplex with `k < n <= top` is exactly a compatible boundary, and the key
/// dimension below which simplices are not determined by their faces.
pub fn plan_for(target: &Expanded, faces: &FaceIndex, top: usize, budget: u64) -> Result<HomPlan> {
    let top = top.min(target.levels.top());
    let mut bij = vec![false; top + 1];
    let mut inj = vec![false; top + 1];
    for n in 1..=top {
        inj[n] = faces.injective(n);
        if !inj[n] {
            continue;
        }
        let mut k = n - 1;
        while k > 0 && bij[k] {
            k -= 1;
        }
        // maps ∂Δ^n -> X, searched through dimension max(k, 1)
        let boundary = SimplicialSet::generator(Generator::Boundary(n))?;
        let search = HomSearch {
            source: &boundary,
            target,
            faces,
            plan: HomPlan {
                check_dim: k.max(1),
                key_dim: 0,
            },
            filter: None,
            budget,
        };
        let count = search.run()?.len();
        bij[n] = count == target.levels.count(n);
    }
    let mut k = top;
    while k > 0 && bij[k] {
        k -= 1;
    }
    let key_dim = (0..=k).rev().find(|&n| n > 0 && !inj[n]).unwrap_or(0);
    Ok(HomPlan {
        check_dim: k,
        key_dim,
    })
}

/// A levelwise action used to make [`level_maps_with`] equivariant: `act(n, g, x)` on
/// source and target, and the group order on each level.
pub struct LevelAction<'a> {
    pub orders: Vec<usize>,
    pub src: &'a dyn Fn(usize, usize, usize) -> usize,
    pub dst: &'a dyn Fn(usize, usize, usize) -> usize,
}

/// All simplicial maps between level tables, through `src.top()`. `allowed(n, x, y)`
/// prunes the image of each simplex.
pub fn level_maps(
    src: &Levels,
    dst: &Levels,
    allowed: &dyn Fn(usize, usize, usize) -> bool,
    budget: u64,
) -> Result<Vec<LevelMap>> {
    level_maps_with(src, dst, allowed, None, budget)
}

/// [`level_maps`], restricted to maps commuting with a levelwise action.
pub fn level_maps_with(
    src: &Levels,
    dst: &Levels,
    allowed: &dyn Fn(usize, usize, usize) -> bool,
    action: Option<&LevelAction<'_>>,
    budget: u64,
) -> Result<Vec<LevelMap>> {
    let top = src.top();
    if dst.top() < top {
        return Err(Error::Truncated {
            what: "target of a level map".into(),
            needed: top,
            available: dst.top(),
        });
    }
    // x is degenerate iff x = s_i d_i x for some i
    let degenerate = |n: usize, x: usize| n > 0 && (0..n).any(|i| src.degen(n - 1, i, src.face(n, i, x)) == x);
    let nondeg: Vec<(usize, usize)> = (0..=top)
        .flat_map(|n| (0..src.count(n)).map(move |x| (n, x)))
        .filter(|&(n, x)| !degenerate(n, x))
        .collect();
    let mut st = LevelState {
        src,
        dst,
        allowed,
        action,
        nondeg,
        images: (0..=top).map(|n| vec![u32::MAX; src.count(n)]).collect(),
        steps: 0,
        budget,
        out: Vec::new(),
    };
    st.search(0, usize::MAX)?;
    Ok(st.out)
}

struct LevelState<'a> {
    src: &'a Levels,
    dst: &'a Levels,
    allowed: &'a dyn Fn(usize, usize, usize) -> bool,
    action: Option<&'a LevelAction<'a>>,
    nondeg: Vec<(usize, usize)>,
    images: Vec<Vec<u32>>,
    steps: u64,
    budget: u64,
    out: Vec<LevelMap>,
}

impl LevelState<'_> {
    fn search(&mut self, k: usize, level: usize) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let next_level = self.nondeg.get(k).map_or(self.src.top() + 1, |&(n, _)| n);
        // entering new levels: degenerate simplices are forced by the level below
        let start = if level == usize::MAX { 1 } else { level + 1 };
        let mut saved = Vec::new();
        for n in start..=next_level.min(self.src.top()) {
            saved.push((n, self.images[n].clone()));
            if !self.fill_degenerate(n) {
                for (n, v) in saved.into_iter().rev() {
                    self.images[n] = v;
                }
                return Ok(());
            }
        }
        if k == self.nondeg.len() {
            self.out.push(LevelMap {
                images: self.images.clone(),
            });
        } else {
            let (n, x) = self.nondeg[k];
            if self.images[n][x] != u32::MAX {
                // placed by the action
                self.search(k + 1, n)?;
            } else {
                let faces: Vec<usize> = if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|i| self.images[n - 1][self.src.face(n, i, x)] as usize).collect()
                };
                for y in 0..self.dst.count(n) {
                    if (0..faces.len()).any(|i| self.dst.face(n, i, y) != faces[i]) || !(self.allowed)(n, x, y) {
                        continue;
                    }
                    if let Some(placed) = self.place(n, x, y) {
                        self.search(k + 1, n)?;
                        for p in placed {
                            self.images[n][p] = u32::MAX;
                        }
                    }
                }
            }
        }
        for (n, v) in saved.into_iter().rev() {
            self.images[n] = v;
        }
        Ok(())
    }

    /// Sets `x ↦ y` and, with an action, `g·x ↦ g·y`. Returns the positions set.
    fn place(&mut self, n: usize, x: usize, y: usize) -> Option<Vec<usize>> {
        let mut placed = Vec::new();
        let pairs: Vec<(usize, usize)> = match self.action {
            None => vec![(x, y)],
            Some(a) => (0..a.orders[n]).map(|g| ((a.src)(n, g, x), (a.dst)(n, g, y))).collect(),
        };
        for (x2, y2) in pairs {
            let cur = self.images[n][x2];
            if cur == u32::MAX {
                if !(self.allowed)(n, x2, y2) {
                    for p in placed {
                        self.images[n][p] = u32::MAX;
                    }
                    return None;
                }
                self.images[n][x2] = y2 as u32;
                placed.push(x2);
            } else if cur as usize != y2 {
                for p in placed {
                    self.images[n][p] = u32::MAX;
                }
                return None;
            }
        }
        Some(placed)
    }

    /// Images of the degenerate simplices of level `n`.
    fn fill_degenerate(&mut self, n: usize) -> bool {
        for z in 0..self.src.count(n - 1) {
            let fz = self.images[n - 1][z] as usize;
            for i in 0..n {
                let x = self.src.degen(n - 1, i, z);
                let y = self.dst.degen(n - 1, i, fz);
                let cur = self.images[n][x];
                if cur != u32::MAX && cur as usize != y {
                    return false;
                }
                if !(self.allowed)(n, x, y) {
                    return false;
                }
                self.images[n][x] = y as u32;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::collapsed_simplex;

    fn all_maps(src: &SimplicialSet, tgt: &SimplicialSet) -> usize {
        let e = Expanded::new(tgt, src.dim()).unwrap();
        let fi = FaceIndex::new(&e, src.dim());
        HomSearch {
            source: src,
            target: &e,
            faces: &fi,
            plan: HomPlan::full(src.dim()),
            filter: None,
            budget: u64::MAX,
        }
        .run()
        .unwrap()
        .len()
    }

    #[test]
    fn maps_into_standard_simplex_are_monotone() {
        // maps Δ^1 -> Δ^2: monotone pairs = 6
        assert_eq!(all_maps(&SimplicialSet::standard(1), &SimplicialSet::standard(2)), 6);
        // maps Δ^2 -> Δ^1: C(4,1) = 4 monotone triples into {0,1}
        assert_eq!(all_maps(&SimplicialSet::standard(2), &SimplicialSet::standard(1)), 4);
    }

    #[test]
    fn maps_from_boundary_into_circle() {
        let b2 = SimplicialSet::generator(Generator::Boundary(2)).unwrap();
        // each edge goes to e or s0 v
        assert_eq!(all_maps(&b2, &SimplicialSet::circle()), 8);
        // maps Δ^2 -> S^1: the 3 two-simplices s0 e, s1 e, s1 s0 v
        assert_eq!(all_maps(&SimplicialSet::standard(2), &SimplicialSet::circle()), 3);
    }

    #[test]
    fn empty_source_has_one_map() {
        assert_eq!(all_maps(&SimplicialSet::empty(), &SimplicialSet::circle()), 1);
    }

    #[test]
    fn circle_is_one_coskeletal_key_on_edges() {
        let c = SimplicialSet::circle();
        let e = Expanded::new(&c, 4).unwrap();
        let fi = FaceIndex::new(&e, 4);
        let plan = plan_for(&e, &fi, 4, u64::MAX).unwrap();
        // Δ^2 boundary maps: 8 vs 3 two-simplices, so not 1-coskeletal
        assert!(plan.check_dim >= 2);
        assert_eq!(plan.key_dim, 1);
    }

    #[test]
    fn budget_is_enforced() {
        let d3 = SimplicialSet::standard(3);
        let tgt = SimplicialSet::standard(3);
        let e = Expanded::new(&tgt, 3).unwrap();
        let fi = FaceIndex::new(&e, 3);
        let r = HomSearch {
            source: &d3,
            target: &e,
            faces: &fi,
            plan: HomPlan::full(3),
            filter: None,
            budget: 5,
        }
        .run();
        assert_eq!(r.unwrap_err(), Error::BudgetExceeded(5));
    }

    #[test]
    fn level_maps_agree_with_hom_search() {
        for (a, b) in [(1usize, 2usize), (2, 1), (2, 2)] {
            let src = Levels::delta(a, a + 1);
            let dst = Levels::delta(b, a + 2);
            let n = level_maps(&src, &dst, &|_, _, _| true, u64::MAX).unwrap().len();
            assert_eq!(n, all_maps(&SimplicialSet::standard(a), &SimplicialSet::standard(b)));
        }
        // Δ^1 -> S^1 = Δ^1/∂Δ^1: two maps, the constant and the fundamental edge
        let (s1, _) = collapsed_simplex(1, 3);
        let maps = level_maps(&Levels::delta(1, 2), &s1, &|_, _, _| true, u64::MAX).unwrap();
        assert_eq!(maps.len(), 2);
        for m in &maps {
            m.check_simplicial(&Levels::delta(1, 2), &s1).unwrap();
        }
        assert!(matches!(
            level_maps(&Levels::delta(2, 2), &Levels::delta(2, 2), &|_, _, _| true, 3),
            Err(Error::BudgetExceeded(3))
        ));
    }

}
