//! Simplicial sets over a base: base change, fibers, coverings, and the Borel/monodromy
//! pair between G-objects and objects over `d(G)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gset::{GSet, PresentedGSet};
use crate::gspace::GSimplicialSet;
use crate::hom::level_maps;
use crate::levels::{LevelMap, Levels};
use crate::loopgroup::loop_group;
use crate::sgroup::{eg_dg, EgDg, FiniteSimplicialGroup};
use crate::util::Map;

/// `p: Y -> S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceObject {
    pub total: Levels,
    pub base: Levels,
    pub map: LevelMap,
}

impl SliceObject {
    pub fn new(total: Levels, base: Levels, map: LevelMap) -> Result<SliceObject> {
        map.check_simplicial(&total, &base)?;
        Ok(SliceObject { total, base, map })
    }

    pub fn identity(base: &Levels) -> SliceObject {
        SliceObject {
            total: base.clone(),
            base: base.clone(),
            map: LevelMap::identity(base),
        }
    }

    pub fn top(&self) -> usize {
        self.total.top()
    }

    /// `Y ×_S S' -> S'` along `g: S' -> S`, with the projection to `Y`.
    pub fn pullback(&self, new_base: &Levels, g: &LevelMap) -> Result<(SliceObject, LevelMap)> {
        g.check_simplicial(new_base, &self.base)?;
        let top = self.top().min(new_base.top());
        let pairs: Vec<Vec<(usize, usize)>> = (0..=top)
            .map(|n| {
                let mut over: Vec<Vec<usize>> = vec![Vec::new(); self.base.count(n)];
                for y in 0..self.total.count(n) {
                    over[self.map.apply(n, y)].push(y);
                }
                let mut v = Vec::new();
                for s in 0..new_base.count(n) {
                    for &y in &over[g.apply(n, s)] {
                        v.push((y, s));
                    }
                }
                v
            })
            .collect();
        let index: Vec<Map<(usize, usize), usize>> = pairs
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, &p)| (p, i)).collect())
            .collect();
        let counts = pairs.iter().map(|l| l.len()).collect();
        let total = Levels::build(
            counts,
            false,
            |n, x, i| {
                let (y, s) = pairs[n][x];
                index[n - 1][&(self.total.face(n, i, y), new_base.face(n, i, s))]
            },
            |n, x, i| {
                let (y, s) = pairs[n][x];
                index[n + 1][&(self.total.degen(n, i, y), new_base.degen(n, i, s))]
            },
        );
        let lens: Vec<usize> = pairs.iter().map(|l| l.len()).collect();
        let to_base = LevelMap::from_fn(&lens, |n, x| pairs[n][x].1);
        let to_total = LevelMap::from_fn(&lens, |n, x| pairs[n][x].0);
        Ok((
            SliceObject {
                total,
                base: new_base.truncate(top),
                map: to_base,
            },
            to_total,
        ))
    }

    /// `Z -> S' -> S`.
    pub fn postcompose(&self, new_base: &Levels, g: &LevelMap) -> Result<SliceObject> {
        g.check_simplicial(&self.base, new_base)?;
        SliceObject::new(self.total.clone(), new_base.clone(), self.map.compose(g))
    }

    /// The fiber over a vertex `s`, as a simplicial set with its inclusion into `Y`.
    pub fn fiber(&self, s: usize) -> Result<(Levels, LevelMap)> {
        let top = self.top();
        let pt = Levels::discrete(1, top);
        let g = LevelMap::from_fn(pt.counts(), |n, _| self.base.apply_monotone(0, &vec![0; n + 1], s));
        let (slice, incl) = self.pullback(&pt, &g)?;
        Ok((slice.total, incl))
    }

    /// Disjoint union over the same base.
    pub fn coproduct(&self, other: &SliceObject) -> Result<SliceObject> {
        if self.base != other.base {
            return Err(Error::InvalidMap("coproduct of slices over different bases".into()));
        }
        let total = Levels::coproduct(&[&self.total, &other.total]);
        let map = LevelMap::from_fn(total.counts(), |n, x| {
            let k = self.total.count(n);
            if x < k {
                self.map.apply(n, x)
            } else {
                other.map.apply(n, x - k)
            }
        });
        SliceObject::new(total, self.base.clone(), map)
    }

    /// Maps over the base, `self -> other`.
    pub fn maps_to(&self, other: &SliceObject, budget: u64) -> Result<Vec<LevelMap>> {
        if self.base.truncate(self.top().min(self.base.top())) != other.base.truncate(self.top().min(other.base.top())) {
            return Err(Error::InvalidMap("slices over different bases".into()));
        }
        level_maps(
            &self.total,
            &other.total,
            &|n, x, y| other.map.apply(n, y) == self.map.apply(n, x),
            budget,
        )
    }

    /// An isomorphism over the base, if one exists.
    pub fn isomorphism_to(&self, other: &SliceObject, budget: u64) -> Result<Option<LevelMap>> {
        if self.total.counts() != other.total.counts() {
            return Ok(None);
        }
        Ok(self
            .maps_to(other, budget)?
            .into_iter()
            .find(|f| f.is_bijective(&other.total)))
    }
}

/// A slice object with a verified unique-lifting certificate through `through`: for every
/// `n`-simplex `σ` of the base, every vertex index `k` and every vertex `y` over the
/// `k`-th vertex of `σ`, exactly one `n`-simplex over `σ` has `k`-th vertex `y`.
#[derive(Clone, Debug)]
pub struct CoveringData {
    pub slice: SliceObject,
    pub through: usize,
    lifts: Vec<Map<(usize, usize, usize), usize>>,
}

fn vertex(l: &Levels, n: usize, k: usize, x: usize) -> usize {
    l.apply_monotone(n, &[k], x)
}

impl CoveringData {
    pub fn new(slice: SliceObject, through: usize) -> Result<CoveringData> {
        if through > slice.top() {
            return Err(Error::Truncated {
                what: "covering certificate".into(),
                needed: through,
                available: slice.top(),
            });
        }
        let (y, s, p) = (&slice.total, &slice.base, &slice.map);
        let mut over: Vec<Vec<usize>> = vec![Vec::new(); s.count(0)];
        for v in 0..y.count(0) {
            over[p.apply(0, v)].push(v);
        }
        let mut lifts = Vec::with_capacity(through + 1);
        for n in 0..=through {
            let mut table: Map<(usize, usize, usize), usize> = Map::new();
            for t in 0..y.count(n) {
                for k in 0..=n {
                    let key = (p.apply(n, t), k, vertex(y, n, k, t));
                    if table.insert(key, t).is_some() {
                        return Err(Error::NotCovering(format!(
                            "two {n}-simplices over simplex {} share vertex {k}",
                            key.0
                        )));
                    }
                }
            }
            for sigma in 0..s.count(n) {
                for k in 0..=n {
                    for &v in &over[vertex(s, n, k, sigma)] {
                        if !table.contains_key(&(sigma, k, v)) {
                            return Err(Error::NotCovering(format!(
                                "vertex {v} has no lift of {n}-simplex {sigma} at position {k}"
                            )));
                        }
                    }
                }
            }
            lifts.push(table);
        }
        Ok(CoveringData { slice, through, lifts })
    }

    /// The unique `n`-simplex over `sigma` whose `k`-th vertex is `y`.
    pub fn lift(&self, n: usize, sigma: usize, k: usize, y: usize) -> Option<usize> {
        self.lifts.get(n)?.get(&(sigma, k, y)).copied()
    }

    /// Vertices over the base vertex `s`.
    pub fn vertex_fiber(&self, s: usize) -> Vec<usize> {
        (0..self.slice.total.count(0))
            .filter(|&v| self.slice.map.apply(0, v) == s)
            .collect()
    }
}

/// `(T × EG)/G -> d(G)`, with the orbit projection from `T × EG` (simplex
/// `t * |EG_n| + e`) and the `EG`/`d(G)` data used.
#[derive(Clone, Debug)]
pub struct Borel {
    pub slice: SliceObject,
    pub projection: LevelMap,
    pub eg: EgDg,
}

pub fn borel(t: &GSimplicialSet, dim_bound: usize) -> Result<Borel> {
    if t.top() < dim_bound {
        return Err(Error::Truncated {
            what: "G-object for the Borel construction".into(),
            needed: dim_bound,
            available: t.top(),
        });
    }
    let t = t.truncate(dim_bound)?;
    let eg = eg_dg(&t.group, dim_bound)?;
    let prod = t.product(&eg.eg)?;
    let (total, projection) = prod.orbit_quotient();
    let w = |n: usize| eg.eg.levels.count(n);
    let mut images: Vec<Vec<u32>> = (0..=dim_bound).map(|n| vec![0; total.count(n)]).collect();
    for (n, img) in images.iter_mut().enumerate() {
        for x in 0..prod.levels.count(n) {
            img[projection.apply(n, x)] = eg.q.apply(n, x % w(n)) as u32;
        }
    }
    let slice = SliceObject::new(total, eg.dg.clone(), LevelMap { images })?;
    Ok(Borel { slice, projection, eg })
}

/// `M(Y)` for a slice over `d(G)`.
#[derive(Clone, Debug)]
pub enum Monodromy {
    /// Covering mode: the vertex fiber (`fiber[i]` is a vertex of `Y`) with the action
    /// `g·y = φ_y(g⁻¹)`, `φ_y` the section `EG -> Y` through `y`. Exact on all levels.
    Exact { object: GSimplicialSet, fiber: Vec<usize> },
    /// Sections `EG -> Y` over `d(G)` computed on `EG` truncated at `bound`, with the
    /// action of `G_0` on them. Not a statement about the untruncated space.
    Truncated { sections: Vec<LevelMap>, action: GSet, bound: usize },
}

impl Monodromy {
    pub fn is_exact(&self) -> bool {
        matches!(self, Monodromy::Exact { .. })
    }

    /// The points of `M(Y)` with the action of `G_0`.
    pub fn vertex_gset(&self) -> GSet {
        match self {
            Monodromy::Exact { object, .. } => object.gset_at(0),
            Monodromy::Truncated { action, .. } => action.clone(),
        }
    }
}

/// `M(Y) = Hom_{d(G)}(EG, Y)`. Exact when `Y` is a covering through its top; otherwise
/// needs a truncation `bound` and reports the truncation.
pub fn monodromy_m(y: &SliceObject, group: &FiniteSimplicialGroup, bound: Option<usize>, budget: u64) -> Result<Monodromy> {
    let top = y.top();
    match CoveringData::new(y.clone(), top) {
        Ok(cov) => monodromy_exact(&cov, group),
        Err(Error::NotCovering(why)) => {
            let bound = bound.ok_or_else(|| Error::NotCovering(format!("{why}; a truncation bound is required")))?;
            monodromy_truncated(y, group, bound, budget)
        }
        Err(e) => Err(e),
    }
}

fn check_base(y: &SliceObject, eg: &EgDg, top: usize) -> Result<()> {
    if y.base.truncate(top) != eg.dg.truncate(top) {
        return Err(Error::InvalidMap("slice is not over d(G)".into()));
    }
    Ok(())
}

pub fn monodromy_exact(cov: &CoveringData, group: &FiniteSimplicialGroup) -> Result<Monodromy> {
    let top = cov.through;
    if top < 1 {
        return Err(Error::Truncated {
            what: "monodromy needs edges".into(),
            needed: 1,
            available: top,
        });
    }
    let g = group.with_top(top)?;
    let eg = eg_dg(&g, top)?;
    check_base(&cov.slice, &eg, top)?;
    let e = &eg.eg.levels;
    let fiber = cov.vertex_fiber(0);
    let pos: Map<usize, usize> = fiber.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let g0 = g.level(0);
    // φ_y(h) for a vertex h of EG, along an edge e -> h
    let edge_to: Vec<usize> = g0
        .elements()
        .map(|h| {
            (0..e.count(1))
                .find(|&x| e.face(1, 1, x) == 0 && e.face(1, 0, x) == h)
                .expect("EG is connected")
        })
        .collect();
    let section = |y: usize, h: usize| -> Result<usize> {
        let sigma = eg.q.apply(1, edge_to[h]);
        let tau = cov
            .lift(1, sigma, 0, y)
            .ok_or_else(|| Error::NotCovering("missing edge lift".into()))?;
        Ok(cov.slice.total.face(1, 0, tau))
    };
    let under = g.underlying();
    let k = fiber.len();
    let mut action = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut a = Vec::with_capacity(g.level(n).order() * k);
        for h in g.level(n).elements() {
            let v = g0.inv(vertex(&under, n, 0, h));
            for &y in &fiber {
                a.push(pos[&section(y, v)?] as u32);
            }
        }
        action.push(a);
    }
    let object = GSimplicialSet::new(g, Levels::discrete(k, top), action)?;
    Ok(Monodromy::Exact { object, fiber })
}

fn monodromy_truncated(y: &SliceObject, group: &FiniteSimplicialGroup, bound: usize, budget: u64) -> Result<Monodromy> {
    if bound > y.top() {
        return Err(Error::Truncated {
            what: "slice for truncated monodromy".into(),
            needed: bound,
            available: y.top(),
        });
    }
    let g = group.with_top(bound)?;
    let eg = eg_dg(&g, bound)?;
    check_base(y, &eg, bound)?;
    let sections = level_maps(
        &eg.eg.levels,
        &y.total,
        &|n, x, v| y.map.apply(n, v) == eg.q.apply(n, x),
        budget,
    )?;
    let index: Map<&LevelMap, usize> = sections.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let g0 = g.level(0).clone();
    let under = g.underlying();
    let action: Vec<Vec<usize>> = g0
        .elements()
        .map(|h| {
            let hi = g0.inv(h);
            sections
                .iter()
                .map(|s| {
                    let moved = LevelMap::from_fn(eg.eg.levels.counts(), |n, x| {
                        let hn = under.apply_monotone(0, &vec![0; n + 1], hi);
                        s.apply(n, eg.eg.act(n, hn, x))
                    });
                    index[&moved]
                })
                .collect()
        })
        .collect();
    drop(index);
    let names = (0..sections.len()).map(|i| format!("s{i}")).collect();
    let action = GSet::new(g0, names, action)?;
    Ok(Monodromy::Truncated { sections, action, bound })
}

/// The fiber over the vertex of a covering of a reduced base, with the right action of
/// `π₀` of the loop group: each generator (a nondegenerate edge) moves `y` to the end of
/// its lift starting at `y`. Returns the action and the fiber vertices.
pub fn covering_monodromy(cov: &CoveringData) -> Result<(PresentedGSet, Vec<usize>)> {
    if cov.through < 2 {
        return Err(Error::Truncated {
            what: "covering certificate for monodromy".into(),
            needed: 2,
            available: cov.through,
        });
    }
    let base = cov.slice.base.truncate(cov.through);
    let norm = base.normalize()?;
    if !norm.set.is_reduced() {
        return Err(Error::NotReduced(format!("{} vertices", norm.set.count(0))));
    }
    let lg = loop_group(&norm.set, 1)?;
    let pres = lg.pi0()?;
    let fiber = cov.vertex_fiber(0);
    let pos: Map<usize, usize> = fiber.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let perms = lg.generators[0]
        .iter()
        .map(|s| {
            let sigma = norm.base_index[1][s.base];
            fiber
                .iter()
                .map(|&y| {
                    let tau = cov.lift(1, sigma, 0, y).expect("certified");
                    pos[&cov.slice.total.face(1, 0, tau)]
                })
                .collect()
        })
        .collect();
    let set = PresentedGSet::new(pres, perms).map_err(|e| Error::NotCovering(format!("{e}")))?;
    Ok((set, fiber))
}

/// `Hom_{d(G)}(borel T, Y) ≅ Hom_G(T, M Y)` for discrete `T` and a covering `Y`: both
/// sides are enumerated, and `F ↦ (t ↦ F[t, e])` is checked to be a bijection.
pub fn borel_adjunction(t: &GSimplicialSet, y: &CoveringData, budget: u64) -> Result<crate::gspace::AdjunctionCheck> {
    let top = y.through;
    let b = borel(t, top)?;
    let (object, fiber) = match monodromy_exact(y, &t.group)? {
        Monodromy::Exact { object, fiber } => (object, fiber),
        Monodromy::Truncated { .. } => unreachable!(),
    };
    if (0..=top).any(|n| t.levels.count(n) != t.levels.count(0)) {
        return Err(Error::Parameter("borel adjunction check needs a discrete G-object".into()));
    }
    let left = b.slice.maps_to(&y.slice, budget)?;
    let t = t.truncate(top)?;
    let right = t.maps_to(&object, &|_, _, _| true, budget)?;
    let w = b.eg.eg.levels.count(0);
    let pos: Map<usize, usize> = fiber.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let image = |f: &LevelMap| {
        LevelMap::from_fn(t.levels.counts(), |_, x| pos[&f.apply(0, b.projection.apply(0, x * w))])
    };
    let images: Vec<LevelMap> = left.iter().map(image).collect();
    let bijective = left.len() == right.len()
        && right.iter().all(|u| images.contains(u))
        && images.iter().enumerate().all(|(i, u)| !images[..i].contains(u));
    Ok(crate::gspace::AdjunctionCheck {
        left: left.len(),
        right: right.len(),
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::collapsed_simplex;
    use crate::group::FiniteGroup;
    use crate::homology::homology;

    fn constant(g: &FiniteGroup, top: usize) -> FiniteSimplicialGroup {
        FiniteSimplicialGroup::constant(g, top)
    }

    fn discrete(t: &GSet, top: usize) -> GSimplicialSet {
        GSimplicialSet::from_gset(t, top)
    }

    /// The connected double cover of Δ¹/∂Δ¹: two edges glued head to tail.
    fn double_cover(top: usize) -> SliceObject {
        let (s1, collapse) = collapsed_simplex(1, top);
        let d1 = Levels::delta(1, top);
        let two = Levels::coproduct(&[&d1, &d1]);
        let (y, q) = two.quotient(&[(0, 1, 2), (0, 0, 3)]);
        let mut images: Vec<Vec<u32>> = (0..=top).map(|n| vec![0; y.count(n)]).collect();
        for (n, img) in images.iter_mut().enumerate() {
            for x in 0..two.count(n) {
                img[q.apply(n, x)] = collapse.apply(n, x % d1.count(n)) as u32;
            }
        }
        SliceObject::new(y, s1, LevelMap { images }).unwrap()
    }

    #[test]
    fn borel_of_point_and_of_discrete_sets() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)] {
            let pt = discrete(&GSet::trivial_action(&g, 1), 3);
            let b = borel(&pt, 3).unwrap();
            let id = SliceObject::identity(&b.slice.base);
            assert!(b.slice.isomorphism_to(&id, u64::MAX).unwrap().is_some());
            for t in GSet::transitive_catalog(&g) {
                let b = borel(&discrete(&t, 3), 3).unwrap();
                for m in 0..=3 {
                    assert_eq!(b.slice.total.count(m), t.len() * g.order().pow(m as u32));
                }
            }
        }
        // (G × EG)/G ≅ EG is contractible
        let z2 = FiniteGroup::cyclic(2);
        let b = borel(&discrete(&GSet::regular(&z2), 3), 3).unwrap();
        let h = homology(&b.slice.total.normalize().unwrap().set, 2).unwrap().reduced();
        assert!((0..=2).all(|n| h.degree(n).is_trivial()));
    }

    #[test]
    fn monodromy_inverts_borel() {
        let pt = SliceObject::identity(&eg_dg(&constant(&FiniteGroup::cyclic(2), 2), 2).unwrap().dg);
        let m = monodromy_m(&pt, &constant(&FiniteGroup::cyclic(2), 2), None, u64::MAX).unwrap();
        assert!(m.is_exact());
        assert_eq!(m.vertex_gset().len(), 1);
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            let sg = constant(&g, 3);
            for t in GSet::transitive_catalog(&g) {
                let b = borel(&discrete(&t, 3), 3).unwrap();
                let m = monodromy_m(&b.slice, &sg, None, u64::MAX).unwrap();
                let Monodromy::Exact { object, .. } = &m else { panic!("borel of a G-set is a covering") };
                assert!(m.vertex_gset().isomorphism_to(&t).is_some());
                // and back: D(M(Y)) ≅ Y over d(G)
                let back = borel(object, 3).unwrap();
                assert!(back.slice.isomorphism_to(&b.slice, u64::MAX).unwrap().is_some());
            }
        }
        // M turns sums into sums
        let s3 = FiniteGroup::symmetric(3);
        let sg = constant(&s3, 2);
        let cat = GSet::transitive_catalog(&s3);
        let (a, b) = (borel(&discrete(&cat[1], 2), 2).unwrap(), borel(&discrete(&cat[2], 2), 2).unwrap());
        let sum = monodromy_m(&a.slice.coproduct(&b.slice).unwrap(), &sg, None, u64::MAX).unwrap();
        assert!(sum.vertex_gset().isomorphism_to(&cat[1].sum(&cat[2])).is_some());
    }

    #[test]
    fn truncated_monodromy_for_non_coverings() {
        let z2 = FiniteGroup::cyclic(2);
        let sg = constant(&z2, 2);
        let dg = eg_dg(&sg, 2).unwrap().dg;
        let interval = Levels::delta(1, 2);
        let total = dg.product(&interval);
        let w = |n: usize| interval.count(n);
        let map = LevelMap::from_fn(total.counts(), |n, x| x / w(n));
        let y = SliceObject::new(total, dg, map).unwrap();
        assert!(matches!(monodromy_m(&y, &sg, None, u64::MAX), Err(Error::NotCovering(_))));
        // sections EG -> Δ¹ through dimension 1 are the two constant maps
        let m = monodromy_m(&y, &sg, Some(1), u64::MAX).unwrap();
        let Monodromy::Truncated { sections, action, bound } = m else { panic!("not a covering") };
        assert_eq!((sections.len(), bound), (2, 1));
        assert!(action.isomorphism_to(&GSet::trivial_action(&z2, 2)).is_some());
    }

    #[test]
    fn base_change_and_fibers() {
        let s3 = FiniteGroup::symmetric(3);
        let t = GSet::cosets(&s3, &s3.generated(&[1]));
        let b = borel(&discrete(&t, 2), 2).unwrap().slice;
        let (pb, _) = b.pullback(&b.base, &LevelMap::identity(&b.base)).unwrap();
        assert!(pb.isomorphism_to(&b, u64::MAX).unwrap().is_some());
        let (fiber, _) = b.fiber(0).unwrap();
        assert_eq!(fiber.assume_complete(), Levels::discrete(3, 2));
        // pull the double cover of B(Z/2) back to the circle along the generator
        let z2 = FiniteGroup::cyclic(2);
        let cover = borel(&discrete(&GSet::regular(&z2), 3), 3).unwrap().slice;
        let (s1, _) = collapsed_simplex(1, 3);
        let loops = level_maps(&s1, &cover.base, &|_, _, _| true, u64::MAX).unwrap();
        assert_eq!(loops.len(), 2);
        let gen = loops.iter().find(|f| f.apply(1, 1) != f.apply(1, 0) || f.apply(1, 0) != 0).unwrap();
        let (circle_cover, _) = cover.pullback(&s1, gen).unwrap();
        let cov = CoveringData::new(circle_cover.clone(), 3).unwrap();
        assert!(circle_cover.isomorphism_to(&double_cover(3), u64::MAX).unwrap().is_some());
        let (act, fiber) = covering_monodromy(&cov).unwrap();
        assert_eq!(fiber.len(), 2);
        assert_eq!(act.perms, vec![vec![1, 0]]);
        let post = circle_cover.postcompose(&cover.base, gen).unwrap();
        assert!(CoveringData::new(post, 3).is_err());
    }

    #[test]
    fn covering_monodromy_on_the_circle() {
        let (s1, _) = collapsed_simplex(1, 3);
        let triv = s1.product(&Levels::discrete(3, 3));
        let map = LevelMap::from_fn(triv.counts(), |_, x| x / 3);
        let cov = CoveringData::new(SliceObject::new(triv, s1.clone(), map).unwrap(), 3).unwrap();
        let (act, _) = covering_monodromy(&cov).unwrap();
        assert_eq!(act.perms, vec![vec![0, 1, 2]]);
        let cov = CoveringData::new(double_cover(3), 3).unwrap();
        let (act, _) = covering_monodromy(&cov).unwrap();
        assert_eq!(act.presentation.rank(), 1);
        assert_eq!(act.perms, vec![vec![1, 0]]);
    }

    #[test]
    fn covering_monodromy_recovers_gsets() {
        for g in [FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            for t in GSet::transitive_catalog(&g) {
                let b = borel(&discrete(&t, 2), 2).unwrap().slice;
                let cov = CoveringData::new(b.clone(), 2).unwrap();
                let (act, fiber) = covering_monodromy(&cov).unwrap();
                assert_eq!(fiber.len(), t.len());
                let norm = b.base.normalize().unwrap();
                // generator edges of d(G) are the nonidentity elements
                let loops = loop_group(&norm.set, 1).unwrap();
                let images: Vec<usize> = loops.generators[0].iter().map(|s| norm.base_index[1][s.base]).collect();
                let left = act.to_left(&g, &images).unwrap();
                assert!(left.isomorphism_to(&t).is_some());
            }
        }
    }

    #[test]
    fn borel_monodromy_adjunction() {
        let s3 = FiniteGroup::symmetric(3);
        let cat = GSet::transitive_catalog(&s3);
        for t in &cat {
            for z in &cat {
                let y = CoveringData::new(borel(&discrete(z, 2), 2).unwrap().slice, 2).unwrap();
                let c = borel_adjunction(&discrete(t, 2), &y, u64::MAX).unwrap();
                assert!(c.bijective);
                assert_eq!(c.left, t.equivariant_maps(z).len());
            }
        }
    }
}
