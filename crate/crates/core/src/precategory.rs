//! Segal precategories presented by simplicially enriched categories.
//!
//! From objects, hom simplicial sets `A_(x,y)`, strictly associative compositions and
//! units, the levels are generated as
//! `A_m = ∐_{x_0..x_m} A_(x_0,x_1) × ⋯ × A_(x_{m-1},x_m)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{FiniteCategory, Morphism};
use crate::delta::{segal_check, DeltaSpace, EquivalenceCertificate};
use crate::error::{Error, Result};
use crate::levels::{LevelMap, Levels};
use crate::sgroup::FiniteSimplicialGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegalPrecategory {
    pub objects: Vec<String>,
    /// `homs[x * n + y]`.
    homs: Vec<Levels>,
    /// `compose[(x * n + y) * n + z]` on `A_(x,y) × A_(y,z)` (product indexing).
    compose: Vec<LevelMap>,
    /// A vertex of `A_(x,x)` per object.
    units: Vec<usize>,
    space: DeltaSpace,
}

/// Per level `m`: object tuples and, per internal level, where each tuple's block starts.
struct Blocks {
    tuples: Vec<Vec<usize>>,
    offsets: Vec<Vec<usize>>,
}

impl SegalPrecategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> &Levels {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn compose_map(&self, x: usize, y: usize, z: usize) -> &LevelMap {
        let n = self.objects.len();
        &self.compose[(x * n + y) * n + z]
    }

    pub fn unit(&self, x: usize) -> usize {
        self.units[x]
    }

    /// The generated Δ°-space (level 0 the discrete object set).
    pub fn space(&self) -> &DeltaSpace {
        &self.space
    }

    /// `a ∘ b` (first `a: x -> y`, then `b: y -> z`) on internal level `p`.
    pub fn compose(&self, x: usize, y: usize, z: usize, p: usize, a: usize, b: usize) -> usize {
        let w = self.hom(y, z).count(p);
        self.compose_map(x, y, z).apply(p, a * w + b)
    }

    /// The unit of `x` on internal level `p`.
    pub fn unit_at(&self, x: usize, p: usize) -> usize {
        self.hom(x, x).apply_monotone(0, &vec![0; p + 1], self.units[x])
    }

    /// The discrete precategory of a finite category.
    pub fn from_category(c: &FiniteCategory, p_top: usize, m_bound: usize) -> Result<SegalPrecategory> {
        let n = c.object_count();
        let hom_lists: Vec<Vec<usize>> = (0..n * n).map(|k| c.hom(k / n, k % n)).collect();
        let pos = |f: usize| {
            let k = c.source(f) * n + c.target(f);
            hom_lists[k].iter().position(|&g| g == f).expect("listed")
        };
        let homs = hom_lists.iter().map(|h| Levels::discrete(h.len(), p_top)).collect();
        let mut compose = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (a, b) = (&hom_lists[x * n + y], &hom_lists[y * n + z]);
                    let row: Vec<u32> = a
                        .iter()
                        .flat_map(|&f| b.iter().map(move |&g| (f, g)))
                        .map(|(f, g)| pos(c.then(f, g).expect("composable")) as u32)
                        .collect();
                    compose.push(LevelMap {
                        images: vec![row; p_top + 1],
                    });
                }
            }
        }
        let units = (0..n).map(|x| pos(c.identity(x))).collect();
        enriched_to_precategory(c.objects.clone(), homs, compose, units, m_bound)
    }

    /// One object with the underlying simplicial monoid of `G`.
    pub fn from_group(g: &FiniteSimplicialGroup, m_bound: usize) -> Result<SegalPrecategory> {
        let u = g.underlying();
        let images = (0..=g.top())
            .map(|p| {
                let grp = g.level(p);
                grp.elements()
                    .flat_map(|a| grp.elements().map(move |b| grp.mul(a, b) as u32))
                    .collect()
            })
            .collect();
        enriched_to_precategory(vec!["*".into()], vec![u], vec![LevelMap { images }], vec![0], m_bound)
    }
}

/// Validates the enriched data and generates levels `0..=m_bound`.
pub fn enriched_to_precategory(
    objects: Vec<String>,
    homs: Vec<Levels>,
    compose: Vec<LevelMap>,
    units: Vec<usize>,
    m_bound: usize,
) -> Result<SegalPrecategory> {
    let n = objects.len();
    let bad = |s: String| Err(Error::InvalidCategory(s));
    if n == 0 || homs.len() != n * n || compose.len() != n * n * n || units.len() != n {
        return bad("enriched data has the wrong shape".into());
    }
    let top = homs[0].top();
    if homs.iter().any(|h| h.top() != top) {
        return bad("hom simplicial sets have different tops".into());
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let prod = homs[x * n + y].product(&homs[y * n + z]);
                compose[(x * n + y) * n + z].check_simplicial(&prod, &homs[x * n + z])?;
            }
        }
        if units[x] >= homs[x * n + x].count(0) {
            return bad(format!("unit of object {x} is not a vertex"));
        }
    }
    let a = SegalPrecategory {
        objects,
        homs,
        compose,
        units,
        space: DeltaSpace::new(vec![Levels::discrete(1, 0)], vec![Vec::new()], Vec::new())?,
    };
    for p in 0..=top {
        for x in 0..n {
            for y in 0..n {
                let (ux, uy) = (a.unit_at(x, p), a.unit_at(y, p));
                for f in 0..a.hom(x, y).count(p) {
                    if a.compose(x, x, y, p, ux, f) != f || a.compose(x, y, y, p, f, uy) != f {
                        return bad(format!("unit law fails on A_({x},{y}) at level {p}"));
                    }
                }
                for z in 0..n {
                    for w in 0..n {
                        for f in 0..a.hom(x, y).count(p) {
                            for g in 0..a.hom(y, z).count(p) {
                                let fg = a.compose(x, y, z, p, f, g);
                                for h in 0..a.hom(z, w).count(p) {
                                    let l = a.compose(x, z, w, p, fg, h);
                                    let r = a.compose(x, y, w, p, f, a.compose(y, z, w, p, g, h));
                                    if l != r {
                                        return bad(format!("composition not associative at level {p}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let blocks: Vec<Blocks> = (0..=m_bound).map(|m| a.blocks(m)).collect();
    let levels = (0..=m_bound).map(|m| a.generate(&blocks[m])).collect();
    let space = DeltaSpace::from_operator(levels, |th, src, p, x| a.operate(&blocks, th, src, p, x))?;
    Ok(SegalPrecategory { space, ..a })
}

impl SegalPrecategory {
    fn blocks(&self, m: usize) -> Blocks {
        let n = self.objects.len();
        let top = self.homs[0].top();
        let tuples: Vec<Vec<usize>> = crate::util::tuples(n, m + 1);
        let offsets = (0..=top)
            .map(|p| {
                let mut acc = 0;
                let mut off = Vec::with_capacity(tuples.len() + 1);
                for t in &tuples {
                    off.push(acc);
                    acc += (1..=m).map(|j| self.hom(t[j - 1], t[j]).count(p)).product::<usize>();
                }
                off.push(acc);
                off
            })
            .collect();
        Blocks { tuples, offsets }
    }

    fn decode(&self, b: &Blocks, p: usize, x: usize) -> (usize, Vec<usize>) {
        let c = b.offsets[p].partition_point(|&o| o <= x) - 1;
        let t = &b.tuples[c];
        let m = t.len() - 1;
        let mut r = x - b.offsets[p][c];
        let mut entries = vec![0; m];
        for j in (1..=m).rev() {
            let k = self.hom(t[j - 1], t[j]).count(p);
            entries[j - 1] = r % k;
            r /= k;
        }
        (c, entries)
    }

    fn encode(&self, b: &Blocks, p: usize, c: usize, entries: &[usize]) -> usize {
        let t = &b.tuples[c];
        let mut r = 0;
        for (j, &e) in entries.iter().enumerate() {
            r = r * self.hom(t[j], t[j + 1]).count(p) + e;
        }
        b.offsets[p][c] + r
    }

    fn generate(&self, b: &Blocks) -> Levels {
        let counts = b.offsets.iter().map(|o| *o.last().expect("nonempty")).collect();
        let complete = self.homs.iter().all(|h| h.is_complete());
        let internal = |p: usize, x: usize, q: usize, op: &dyn Fn(&Levels, usize) -> usize| {
            let (c, e) = self.decode(b, p, x);
            let t = &b.tuples[c];
            let e2: Vec<usize> = e.iter().enumerate().map(|(j, &v)| op(self.hom(t[j], t[j + 1]), v)).collect();
            self.encode(b, q, c, &e2)
        };
        Levels::build(
            counts,
            complete,
            |p, x, i| internal(p, x, p - 1, &|h, v| h.face(p, i, v)),
            |p, x, i| internal(p, x, p + 1, &|h, v| h.degen(p, i, v)),
        )
    }

    fn operate(&self, blocks: &[Blocks], th: &[usize], src: usize, p: usize, x: usize) -> usize {
        let k = th.len() - 1;
        let (c, e) = self.decode(&blocks[src], p, x);
        let t = &blocks[src].tuples[c];
        let ys: Vec<usize> = th.iter().map(|&v| t[v]).collect();
        let h: Vec<usize> = (1..=k)
            .map(|j| {
                let (lo, hi) = (th[j - 1], th[j]);
                if lo == hi {
                    return self.unit_at(t[lo], p);
                }
                let mut acc = e[lo];
                for i in lo + 1..hi {
                    acc = self.compose(t[lo], t[i], t[i + 1], p, acc, e[i]);
                }
                acc
            })
            .collect();
        let c2 = blocks[k].tuples.binary_search(&ys).expect("lexicographic tuples");
        self.encode(&blocks[k], p, c2, &h)
    }
}

/// The homotopy category: objects `A_0`, morphisms `π₀ A_(x,y)`, composition induced.
pub fn ho_category(a: &SegalPrecategory) -> Result<FiniteCategory> {
    for m in 2..=a.space().m_bound().min(3) {
        let r = segal_check(a.space(), m, 0).map_err(|_| Error::Undefined("homotopy category undefined".into()))?;
        if !r.pi0_bijective {
            return Err(Error::Undefined(format!(
                "homotopy category undefined: π₀ Segal map at m = {m} is not bijective"
            )));
        }
    }
    let n = a.object_count();
    let comps: Vec<(Vec<usize>, usize)> = a.homs.iter().map(|h| h.components()).collect();
    // global morphism numbering
    let mut first = vec![0; n * n + 1];
    for k in 0..n * n {
        first[k + 1] = first[k] + comps[k].1;
    }
    let mut morphisms = Vec::with_capacity(first[n * n]);
    for k in 0..n * n {
        for c in 0..comps[k].1 {
            morphisms.push(Morphism {
                name: format!("{}->{}#{c}", a.objects[k / n], a.objects[k % n]),
                source: k / n,
                target: k % n,
            });
        }
    }
    let rep = |k: usize, c: usize| comps[k].0.iter().position(|&v| v == c).expect("component");
    let mut composites = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (kxy, kyz, kxz) = (x * n + y, y * n + z, x * n + z);
                for c1 in 0..comps[kxy].1 {
                    for c2 in 0..comps[kyz].1 {
                        let v = a.compose(x, y, z, 0, rep(kxy, c1), rep(kyz, c2));
                        composites.push((first[kxy] + c1, first[kyz] + c2, first[kxz] + comps[kxz].0[v]));
                    }
                }
            }
        }
    }
    let identities = (0..n).map(|x| first[x * n + x] + comps[x * n + x].0[a.unit(x)]).collect();
    FiniteCategory::new(a.objects.clone(), morphisms, identities, &composites)
}

/// A map of enriched precategories: objects and, per ordered pair of source objects,
/// `f_(x,y): A_(x,y) -> B_(f x, f y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecategoryMap {
    pub objects: Vec<usize>,
    pub homs: Vec<LevelMap>,
}

impl PrecategoryMap {
    pub fn identity(a: &SegalPrecategory) -> PrecategoryMap {
        PrecategoryMap {
            objects: (0..a.object_count()).collect(),
            homs: a.homs.iter().map(LevelMap::identity).collect(),
        }
    }

    pub fn validate(&self, a: &SegalPrecategory, b: &SegalPrecategory) -> Result<()> {
        let n = a.object_count();
        let bad = |s: String| Err(Error::InvalidMap(s));
        if self.objects.len() != n || self.homs.len() != n * n || self.objects.iter().any(|&o| o >= b.object_count()) {
            return bad("precategory map has the wrong shape".into());
        }
        let fo = &self.objects;
        for x in 0..n {
            for y in 0..n {
                self.homs[x * n + y].check_simplicial(a.hom(x, y), b.hom(fo[x], fo[y]))?;
            }
            if self.homs[x * n + x].apply(0, a.unit(x)) != b.unit(fo[x]) {
                return bad(format!("unit of object {x} not preserved"));
            }
        }
        let top = a.homs[0].top().min(b.homs[0].top());
        for p in 0..=top {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for f in 0..a.hom(x, y).count(p) {
                            for g in 0..a.hom(y, z).count(p) {
                                let l = self.homs[x * n + z].apply(p, a.compose(x, y, z, p, f, g));
                                let r = b.compose(
                                    fo[x],
                                    fo[y],
                                    fo[z],
                                    p,
                                    self.homs[x * n + y].apply(p, f),
                                    self.homs[y * n + z].apply(p, g),
                                );
                                if l != r {
                                    return bad(format!("composition not preserved at level {p}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Per ordered pair `(x, y)`, a bounded certificate for `f_(x,y)`.
pub fn fully_faithful_check(
    f: &PrecategoryMap,
    a: &SegalPrecategory,
    b: &SegalPrecategory,
    bound: usize,
) -> Result<Vec<((usize, usize), EquivalenceCertificate)>> {
    f.validate(a, b)?;
    let n = a.object_count();
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let cert = EquivalenceCertificate::for_map(
                a.hom(x, y),
                b.hom(f.objects[x], f.objects[y]),
                &f.homs[x * n + y],
                bound,
            )?;
            out.push(((x, y), cert));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Functor;
    use crate::delta::SegalVerdict;
    use crate::group::FiniteGroup;
    use crate::util::tuples;

    fn chain(n: usize) -> FiniteCategory {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteCategory::poset(n, &rel).unwrap()
    }

    #[test]
    fn nerve_data_of_a_category() {
        let c = chain(3);
        let a = SegalPrecategory::from_category(&c, 2, 3).unwrap();
        for m in 0..=3 {
            // composable strings in a chain are nondecreasing object tuples
            let strings = tuples(3, m + 1).into_iter().filter(|t| t.windows(2).all(|w| w[0] <= w[1])).count();
            assert_eq!(a.space().level(m).count(0), strings);
            assert_eq!(segal_check(a.space(), m, 0).unwrap().verdict, SegalVerdict::Iso);
        }
        let ho = ho_category(&a).unwrap();
        assert_eq!(ho.morphism_count(), c.morphism_count());
        // discrete homs: the k-th morphism x -> y of C is class k of A_(x,y)
        let mut f = Functor { objects: vec![0, 1, 2], morphisms: vec![0; c.morphism_count()] };
        for g in 0..c.morphism_count() {
            let (x, y) = (c.source(g), c.target(g));
            let k = c.hom(x, y).iter().position(|&h| h == g).unwrap();
            f.morphisms[g] = ho.hom(x, y)[k];
        }
        f.validate(&c, &ho).unwrap();
    }

    #[test]
    fn coproduct_formula_counts() {
        // two objects with hom sizes 2, 3, 0, 1
        let objects = vec!["x".into(), "y".into()];
        let mor = vec![
            Morphism { name: "1x".into(), source: 0, target: 0 },
            Morphism { name: "t".into(), source: 0, target: 0 },
            Morphism { name: "1y".into(), source: 1, target: 1 },
            Morphism { name: "f".into(), source: 0, target: 1 },
            Morphism { name: "g".into(), source: 0, target: 1 },
        ];
        // t is an involution, f t = g, g t = f
        let comps = [(1, 1, 0), (1, 3, 4), (1, 4, 3)];
        let c = FiniteCategory::new(objects, mor, vec![0, 2], &comps).unwrap();
        let a = SegalPrecategory::from_category(&c, 1, 3).unwrap();
        let size = |x: usize, y: usize| c.hom(x, y).len();
        for lv in 0..=3 {
            let formula: usize = tuples(2, lv + 1)
                .iter()
                .map(|t| t.windows(2).map(|w| size(w[0], w[1])).product::<usize>())
                .sum();
            assert_eq!(a.space().level(lv).count(0), formula);
            assert_eq!(segal_check(a.space(), lv, 0).unwrap().verdict, SegalVerdict::Iso);
        }
    }

    #[test]
    fn group_precategory() {
        let g = FiniteSimplicialGroup::constant(&FiniteGroup::symmetric(3), 2);
        let a = SegalPrecategory::from_group(&g, 3).unwrap();
        assert_eq!(segal_check(a.space(), 3, 0).unwrap().verdict, SegalVerdict::Iso);
        let ho = ho_category(&a).unwrap();
        assert_eq!(ho.morphism_count(), 6);
        assert_eq!(ho.isomorphisms().len(), 6);
    }

    #[test]
    fn fully_faithful_examples() {
        let c = chain(3);
        let a = SegalPrecategory::from_category(&c, 2, 2).unwrap();
        let id = PrecategoryMap::identity(&a);
        assert!(fully_faithful_check(&id, &a, &a, 0).unwrap().iter().all(|(_, r)| r.is_full()));
        // the full subcategory on {0, 1}
        let sub = SegalPrecategory::from_category(&chain(2), 2, 2).unwrap();
        let inc = PrecategoryMap {
            objects: vec![0, 1],
            homs: (0..4).map(|k| LevelMap::identity(sub.hom(k / 2, k % 2))).collect(),
        };
        assert!(fully_faithful_check(&inc, &sub, &a, 0).unwrap().iter().all(|(_, r)| r.is_full()));
        let (z2, z4) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
        let h = z2.extend_hom(&z4, &[1], &[2]).unwrap();
        let a2 = SegalPrecategory::from_group(&FiniteSimplicialGroup::constant(&z2, 2), 2).unwrap();
        let a4 = SegalPrecategory::from_group(&FiniteSimplicialGroup::constant(&z4, 2), 2).unwrap();
        let f = PrecategoryMap {
            objects: vec![0],
            homs: vec![LevelMap { images: vec![h.iter().map(|&v| v as u32).collect(); 3] }],
        };
        let r = fully_faithful_check(&f, &a2, &a4, 0).unwrap();
        assert!(!r[0].1.pi0_bijective);
        assert!(!r[0].1.is_full());
    }

    #[test]
    fn rejects_nonassociative_data() {
        let h = Levels::discrete(2, 1);
        // x * y = 1 for all x, y: no unit
        let c = LevelMap { images: vec![vec![1; 4]; 2] };
        assert!(enriched_to_precategory(vec!["*".into()], vec![h], vec![c], vec![0], 2).is_err());
    }
}
