//! Simplicial sets with an action of a simplicial group.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gset::GSet;
use crate::hom::{level_maps, level_maps_with, LevelAction};
use crate::levels::{LevelMap, Levels};
use crate::sgroup::FiniteSimplicialGroup;
use crate::util::monotone_sequences;

/// `T` with a levelwise left action `G_n × T_n -> T_n`, stored as
/// `action[n][g * |T_n| + x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSimplicialSet {
    pub group: FiniteSimplicialGroup,
    pub levels: Levels,
    action: Vec<Vec<u32>>,
}

impl GSimplicialSet {
    pub fn new(group: FiniteSimplicialGroup, levels: Levels, action: Vec<Vec<u32>>) -> Result<GSimplicialSet> {
        let group = group.with_top(levels.top())?;
        let t = GSimplicialSet { group, levels, action };
        t.validate()?;
        Ok(t)
    }

    /// `T × G` with `G` translating the right factor: simplex `t * |G_n| + h`.
    pub fn free(t: &Levels, group: &FiniteSimplicialGroup) -> Result<GSimplicialSet> {
        let group = group.with_top(t.top())?;
        let levels = t.product(&group.underlying());
        let action = (0..=t.top())
            .map(|n| {
                let gn = group.level(n);
                let k = gn.order();
                let mut a = Vec::with_capacity(k * levels.count(n));
                for g in gn.elements() {
                    for x in 0..levels.count(n) {
                        a.push(((x / k) * k + gn.mul(g, x % k)) as u32);
                    }
                }
                a
            })
            .collect();
        Ok(GSimplicialSet { group, levels, action })
    }

    /// A G-set as a discrete object over the constant simplicial group.
    pub fn from_gset(s: &GSet, top: usize) -> GSimplicialSet {
        let k = s.len();
        let action = (0..=top)
            .map(|_| {
                s.group
                    .elements()
                    .flat_map(|g| (0..k).map(move |x| s.act(g, x) as u32))
                    .collect()
            })
            .collect();
        GSimplicialSet {
            group: FiniteSimplicialGroup::constant(&s.group, top),
            levels: Levels::discrete(k, top),
            action,
        }
    }

    /// `G` acting on itself by left translation.
    pub fn regular(group: &FiniteSimplicialGroup) -> GSimplicialSet {
        GSimplicialSet::free(&Levels::discrete(1, group.top()), group).expect("same top")
    }

    /// The underlying simplicial set.
    pub fn forget(&self) -> Levels {
        self.levels.clone()
    }

    /// `T × T'` with the diagonal action.
    pub fn product(&self, other: &GSimplicialSet) -> Result<GSimplicialSet> {
        if self.group != other.group {
            return Err(Error::InvalidGroup("product of objects over different groups".into()));
        }
        let levels = self.levels.product(&other.levels);
        let action = (0..=levels.top())
            .map(|n| {
                let w = other.levels.count(n);
                let mut a = Vec::with_capacity(self.group.level(n).order() * levels.count(n));
                for g in self.group.level(n).elements() {
                    for x in 0..levels.count(n) {
                        a.push((self.act(n, g, x / w) * w + other.act(n, g, x % w)) as u32);
                    }
                }
                a
            })
            .collect();
        Ok(GSimplicialSet {
            group: self.group.clone(),
            levels,
            action,
        })
    }

    pub fn top(&self) -> usize {
        self.levels.top()
    }

    pub fn truncate(&self, top: usize) -> Result<GSimplicialSet> {
        if top > self.top() {
            return Err(Error::Truncated {
                what: "G-object".into(),
                needed: top,
                available: self.top(),
            });
        }
        Ok(GSimplicialSet {
            group: self.group.with_top(top)?,
            levels: self.levels.truncate(top),
            action: self.action[..=top].to_vec(),
        })
    }

    /// Level `n` as a `G_n`-set.
    pub fn gset_at(&self, n: usize) -> GSet {
        let c = self.levels.count(n);
        let gn = self.group.level(n);
        let action = gn.elements().map(|g| (0..c).map(|x| self.act(n, g, x)).collect()).collect();
        GSet::new(gn.clone(), (0..c).map(|i| format!("{i}")).collect(), action).expect("valid action")
    }

    #[inline]
    pub fn act(&self, n: usize, g: usize, x: usize) -> usize {
        self.action[n][g * self.levels.count(n) + x] as usize
    }

    pub fn action_table(&self) -> &[Vec<u32>] {
        &self.action
    }

    /// Unit, associativity, and compatibility with faces and degeneracies.
    pub fn validate(&self) -> Result<()> {
        let top = self.top();
        if self.action.len() != top + 1 {
            return Err(Error::InvalidGroup("action missing levels".into()));
        }
        for n in 0..=top {
            let gn = self.group.level(n);
            let c = self.levels.count(n);
            if self.action[n].len() != gn.order() * c || self.action[n].iter().any(|&y| y as usize >= c) {
                return Err(Error::InvalidGroup(format!("malformed action table on level {n}")));
            }
            for x in 0..c {
                if self.act(n, 0, x) != x {
                    return Err(Error::InvalidGroup(format!("identity moves simplex {x} of level {n}")));
                }
                for g in gn.elements() {
                    let gx = self.act(n, g, x);
                    for h in gn.elements() {
                        if self.act(n, gn.mul(h, g), x) != self.act(n, h, gx) {
                            return Err(Error::InvalidGroup(format!("action not associative on level {n}")));
                        }
                    }
                    if n > 0 {
                        for i in 0..=n {
                            let lhs = self.levels.face(n, i, gx);
                            let rhs = self.act(n - 1, self.group.face(n, i, g), self.levels.face(n, i, x));
                            if lhs != rhs {
                                return Err(Error::InvalidGroup(format!("action does not commute with d{i} on level {n}")));
                            }
                        }
                    }
                    if n < top {
                        for i in 0..=n {
                            let lhs = self.levels.degen(n, i, gx);
                            let rhs = self.act(n + 1, self.group.degen(n, i, g), self.levels.degen(n, i, x));
                            if lhs != rhs {
                                return Err(Error::InvalidGroup(format!("action does not commute with s{i} on level {n}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Equivariant simplicial maps `self -> other`, pruned by `allowed(n, x, y)`.
    pub fn maps_to(
        &self,
        other: &GSimplicialSet,
        allowed: &dyn Fn(usize, usize, usize) -> bool,
        budget: u64,
    ) -> Result<Vec<LevelMap>> {
        if self.group.with_top(self.top())? != other.group.with_top(self.top())? {
            return Err(Error::InvalidGroup("maps between objects over different groups".into()));
        }
        let src = |n: usize, g: usize, x: usize| self.act(n, g, x);
        let dst = |n: usize, g: usize, y: usize| other.act(n, g, y);
        let action = LevelAction {
            orders: (0..=self.top()).map(|n| self.group.level(n).order()).collect(),
            src: &src,
            dst: &dst,
        };
        level_maps_with(&self.levels, &other.levels, allowed, Some(&action), budget)
    }

    pub fn is_equivariant(&self, other: &GSimplicialSet, f: &LevelMap) -> bool {
        (0..=self.top()).all(|n| {
            self.group
                .level(n)
                .elements()
                .all(|g| (0..self.levels.count(n)).all(|x| f.apply(n, self.act(n, g, x)) == other.act(n, g, f.apply(n, x))))
        })
    }

    /// Isomorphism of G-objects: an equivariant levelwise bijection.
    pub fn isomorphism_to(&self, other: &GSimplicialSet, budget: u64) -> Result<Option<LevelMap>> {
        if self.levels.counts()[..=self.top()] != other.levels.counts()[..=self.top().min(other.top())] {
            return Ok(None);
        }
        let maps = self.maps_to(other, &|_, _, _| true, budget)?;
        Ok(maps.into_iter().find(|f| f.is_bijective(&other.levels)))
    }

    /// Restriction along `f: G -> H` of an `H`-object.
    pub fn restrict(&self, f: &SimplicialGroupHom, source: &FiniteSimplicialGroup) -> Result<GSimplicialSet> {
        let top = self.top();
        let source = source.with_top(top)?;
        f.validate(&source, &self.group)?;
        let action = (0..=top)
            .map(|n| {
                source
                    .level(n)
                    .elements()
                    .flat_map(|g| (0..self.levels.count(n)).map(move |x| self.act(n, f.maps[n][g], x) as u32))
                    .collect()
            })
            .collect();
        GSimplicialSet::new(source, self.levels.clone(), action)
    }

    /// Induction along `f: G -> H`: `(T × H)/G` with `(g·t, h) ~ (t, h·f(g))`, and `H`
    /// translating the right factor. Returns the object and the projection from `T × H`.
    pub fn induce(&self, f: &SimplicialGroupHom, target: &FiniteSimplicialGroup) -> Result<(GSimplicialSet, LevelMap)> {
        let top = self.top();
        let target = target.with_top(top)?;
        f.validate(&self.group, &target)?;
        let hl = target.underlying();
        let prod = self.levels.product(&hl);
        let w = |n: usize| target.level(n).order();
        // G acts on T × H by g·(t, h) = (g·t, h·f(g)⁻¹)
        let mut seeds = Vec::new();
        for n in 0..=top {
            let hn = target.level(n);
            for g in self.group.level(n).elements().skip(1) {
                let fg = hn.inv(f.maps[n][g]);
                for x in 0..prod.count(n) {
                    let (t, h) = (x / w(n), x % w(n));
                    seeds.push((n, x, self.act(n, g, t) * w(n) + hn.mul(h, fg)));
                }
            }
        }
        let (q, proj) = prod.quotient(&seeds);
        let mut rep: Vec<Vec<usize>> = (0..=top).map(|n| vec![usize::MAX; q.count(n)]).collect();
        for n in 0..=top {
            for x in (0..prod.count(n)).rev() {
                rep[n][proj.apply(n, x)] = x;
            }
        }
        let action = (0..=top)
            .map(|n| {
                let hn = target.level(n);
                hn.elements()
                    .flat_map(|h2| {
                        let rep = &rep;
                        let proj = &proj;
                        (0..q.count(n)).map(move |c| {
                            let x = rep[n][c];
                            proj.apply(n, (x / w(n)) * w(n) + hn.mul(h2, x % w(n))) as u32
                        })
                    })
                    .collect()
            })
            .collect();
        Ok((GSimplicialSet::new(target, q, action)?, proj))
    }

    /// `T/G` and the orbit projection.
    pub fn orbit_quotient(&self) -> (Levels, LevelMap) {
        let mut seeds = Vec::new();
        for n in 0..=self.top() {
            for g in self.group.level(n).elements().skip(1) {
                for x in 0..self.levels.count(n) {
                    let y = self.act(n, g, x);
                    if y != x {
                        seeds.push((n, x, y));
                    }
                }
            }
        }
        self.levels.quotient(&seeds)
    }
}

/// A homomorphism of simplicial groups, `maps[n][g]` on each level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialGroupHom {
    pub maps: Vec<Vec<usize>>,
}

impl SimplicialGroupHom {
    pub fn identity(g: &FiniteSimplicialGroup) -> SimplicialGroupHom {
        SimplicialGroupHom {
            maps: (0..=g.top()).map(|n| g.level(n).elements().collect()).collect(),
        }
    }

    /// A homomorphism of finite groups, applied on every level of constant groups.
    pub fn constant(f: &[usize], top: usize) -> SimplicialGroupHom {
        SimplicialGroupHom {
            maps: vec![f.to_vec(); top + 1],
        }
    }

    pub fn validate(&self, src: &FiniteSimplicialGroup, dst: &FiniteSimplicialGroup) -> Result<()> {
        let top = src.top().min(dst.top());
        if self.maps.len() <= top {
            return Err(Error::InvalidGroup("homomorphism missing levels".into()));
        }
        for n in 0..=top {
            let f = &self.maps[n];
            if f.len() != src.level(n).order() || !src.level(n).is_homomorphism(dst.level(n), f) {
                return Err(Error::InvalidGroup(format!("not a homomorphism on level {n}")));
            }
            for g in src.level(n).elements() {
                if n > 0 && (0..=n).any(|i| self.maps[n - 1][src.face(n, i, g)] != dst.face(n, i, f[g])) {
                    return Err(Error::InvalidGroup(format!("does not commute with faces on level {n}")));
                }
                if n < top && (0..=n).any(|i| self.maps[n + 1][src.degen(n, i, g)] != dst.degen(n, i, f[g])) {
                    return Err(Error::InvalidGroup(format!("does not commute with degeneracies on level {n}")));
                }
            }
        }
        Ok(())
    }
}

/// Sizes of the two hom-sets of an adjunction and whether the unit/counit formulas
/// give mutually inverse bijections between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    pub left: usize,
    pub right: usize,
    pub bijective: bool,
}

fn check_bijection(
    left: &[LevelMap],
    right: &[LevelMap],
    phi: impl Fn(&LevelMap) -> LevelMap,
    psi: impl Fn(&LevelMap) -> LevelMap,
) -> AdjunctionCheck {
    let bijective = left.len() == right.len()
        && left.iter().all(|f| {
            let u = phi(f);
            right.contains(&u) && psi(&u) == *f
        })
        && right.iter().all(|u| left.contains(&psi(u)));
    AdjunctionCheck {
        left: left.len(),
        right: right.len(),
        bijective,
    }
}

/// `Hom_G(free T, Z) ≅ Hom(T, forget Z)` via `F ↦ F(-, e)` and `u ↦ ((t, h) ↦ h·u(t))`.
pub fn free_adjunction(t: &Levels, z: &GSimplicialSet, budget: u64) -> Result<AdjunctionCheck> {
    let free = GSimplicialSet::free(t, &z.group)?;
    let left = free.maps_to(z, &|_, _, _| true, budget)?;
    let right = level_maps(t, &z.levels, &|_, _, _| true, budget)?;
    let k = |n: usize| z.group.level(n).order();
    let phi = |f: &LevelMap| LevelMap::from_fn(t.counts(), |n, x| f.apply(n, x * k(n)));
    let psi = |u: &LevelMap| LevelMap::from_fn(free.levels.counts(), |n, x| z.act(n, x % k(n), u.apply(n, x / k(n))));
    Ok(check_bijection(&left, &right, phi, psi))
}

/// `Hom_H(induce T, Z) ≅ Hom_G(T, restrict Z)` via `F ↦ F[-, e]` and `u ↦ ([t, h] ↦ h·u(t))`.
pub fn induce_adjunction(
    f: &SimplicialGroupHom,
    t: &GSimplicialSet,
    z: &GSimplicialSet,
    budget: u64,
) -> Result<AdjunctionCheck> {
    let (ind, proj) = t.induce(f, &z.group)?;
    let res = z.restrict(f, &t.group)?;
    let left = ind.maps_to(z, &|_, _, _| true, budget)?;
    let right = t.maps_to(&res, &|_, _, _| true, budget)?;
    let w = |n: usize| z.group.level(n).order();
    let phi = |g: &LevelMap| LevelMap::from_fn(t.levels.counts(), |n, x| g.apply(n, proj.apply(n, x * w(n))));
    let mut rep: Vec<Vec<usize>> = (0..=ind.top()).map(|n| vec![0; ind.levels.count(n)]).collect();
    for (n, r) in rep.iter_mut().enumerate() {
        for x in (0..t.levels.count(n) * w(n)).rev() {
            r[proj.apply(n, x)] = x;
        }
    }
    let psi = |u: &LevelMap| {
        LevelMap::from_fn(ind.levels.counts(), |n, c| {
            let x = rep[n][c];
            z.act(n, x % w(n), u.apply(n, x / w(n)))
        })
    };
    Ok(check_bijection(&left, &right, phi, psi))
}

/// Equivariant self-maps of the regular object, level `n` being maps `Δ^n × G -> G`.
#[derive(Clone, Debug)]
pub struct RegularEnd {
    pub levels: Vec<Vec<LevelMap>>,
    /// `table[n][a][b]`: `a` then `b`, i.e. the opposite of composition.
    pub table: Vec<Vec<Vec<usize>>>,
    /// `comparison[n][g]`: the index of right translation by `g ∈ G_n`.
    pub comparison: Vec<Vec<usize>>,
    /// The comparison is a bijective homomorphism on every level and commutes with faces.
    pub is_iso: bool,
}

pub fn end_of_regular(group: &FiniteSimplicialGroup, bound: usize, budget: u64) -> Result<RegularEnd> {
    let g = group.with_top(bound)?;
    let under = g.underlying();
    let reg = GSimplicialSet::regular(&g);
    let mut levels: Vec<Vec<LevelMap>> = Vec::new();
    let mut table = Vec::new();
    let mut comparison: Vec<Vec<usize>> = Vec::new();
    let mut is_iso = true;
    for n in 0..=bound {
        let src = GSimplicialSet::free(&Levels::delta(n, bound), &g)?;
        let maps = src.maps_to(&reg, &|_, _, _| true, budget)?;
        let find = |f: &LevelMap| maps.iter().position(|m| m == f);
        let seqs: Vec<Vec<Vec<usize>>> = (0..=bound).map(|m| monotone_sequences(m, n)).collect();
        let k = |m: usize| g.level(m).order();
        let right = |a: usize| {
            LevelMap::from_fn(src.levels.counts(), |m, x| {
                let theta = &seqs[m][x / k(m)];
                g.level(m).mul(x % k(m), under.apply_monotone(n, theta, a))
            })
        };
        let comp: Vec<Option<usize>> = g.level(n).elements().map(|a| find(&right(a))).collect();
        let tab: Vec<Vec<usize>> = maps
            .iter()
            .map(|a| {
                maps.iter()
                    .map(|b| {
                        // a then b: apply a, then b on the G factor
                        let c = LevelMap::from_fn(src.levels.counts(), |m, x| b.apply(m, (x / k(m)) * k(m) + a.apply(m, x)));
                        find(&c).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        let comp: Vec<usize> = match comp.into_iter().collect::<Option<Vec<_>>>() {
            Some(c) => c,
            None => {
                is_iso = false;
                Vec::new()
            }
        };
        if comp.len() == maps.len() {
            let gn = g.level(n);
            is_iso &= gn.elements().all(|a| gn.elements().all(|b| tab[comp[a]][comp[b]] == comp[gn.mul(a, b)]));
            let mut seen = vec![false; maps.len()];
            is_iso &= comp.iter().all(|&c| !core::mem::replace(&mut seen[c], true));
            if n > 0 {
                is_iso &= gn
                    .elements()
                    .all(|a| (0..=n).all(|i| comparison[n - 1][g.face(n, i, a)] == face_of_end(&levels[n - 1], &maps[comp[a]], n, i, &g, bound)));
            }
        } else {
            is_iso = false;
        }
        levels.push(maps);
        table.push(tab);
        comparison.push(comp);
    }
    Ok(RegularEnd {
        levels,
        table,
        comparison,
        is_iso,
    })
}

/// The `i`-th face of an `n`-simplex `f` of the end: precomposition with `δ^i × id`.
fn face_of_end(lower: &[LevelMap], f: &LevelMap, n: usize, i: usize, g: &FiniteSimplicialGroup, bound: usize) -> usize {
    let k = |m: usize| g.level(m).order();
    let hi: Vec<Vec<Vec<usize>>> = (0..=bound).map(|m| monotone_sequences(m, n)).collect();
    let lo: Vec<Vec<Vec<usize>>> = (0..=bound).map(|m| monotone_sequences(m, n - 1)).collect();
    let counts: Vec<usize> = (0..=bound).map(|m| lo[m].len() * k(m)).collect();
    let d = LevelMap::from_fn(&counts, |m, x| {
        let theta: Vec<usize> = lo[m][x / k(m)].iter().map(|&v| if v < i { v } else { v + 1 }).collect();
        let y = hi[m].iter().position(|s| *s == theta).expect("simplex");
        f.apply(m, y * k(m) + x % k(m))
    });
    lower.iter().position(|m| *m == d).unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::sgroup::eg_dg;

    fn constant(g: &FiniteGroup, top: usize) -> FiniteSimplicialGroup {
        FiniteSimplicialGroup::constant(g, top)
    }

    #[test]
    fn free_and_forget() {
        let s3 = FiniteGroup::symmetric(3);
        let g = constant(&s3, 2);
        let reg = GSimplicialSet::regular(&g);
        assert_eq!(reg.forget(), g.underlying());
        let t = Levels::delta(1, 2);
        let f = GSimplicialSet::free(&t, &g).unwrap();
        f.validate().unwrap();
        for n in 0..=2 {
            assert_eq!(f.levels.count(n), t.count(n) * 6);
        }
        let sq = reg.product(&reg).unwrap();
        sq.validate().unwrap();
        assert_eq!(sq.orbit_quotient().0.count(0), 6);
    }

    #[test]
    fn free_adjunction_bijects() {
        // Hom(Δ^1, U Z) = Z_1 by Yoneda
        let z2 = FiniteGroup::cyclic(2);
        let e = eg_dg(&constant(&z2, 3), 3).unwrap().eg;
        let c = free_adjunction(&Levels::delta(1, 3), &e, u64::MAX).unwrap();
        assert_eq!((c.left, c.right, c.bijective), (4, 4, true));
        let s3 = FiniteGroup::symmetric(3);
        let z = GSimplicialSet::from_gset(&GSet::cosets(&s3, &[0, 1]), 2);
        let c = free_adjunction(&Levels::delta(2, 2), &z, u64::MAX).unwrap();
        assert_eq!((c.left, c.right, c.bijective), (3, 3, true));
    }

    #[test]
    fn change_of_group() {
        let s3 = FiniteGroup::symmetric(3);
        let h = constant(&s3, 1);
        // trivial -> S3: the induced point is S3 itself
        let incl = SimplicialGroupHom::constant(&[0], 1);
        let pt = GSimplicialSet::from_gset(&GSet::trivial_action(&FiniteGroup::trivial(), 1), 1);
        let (ind, _) = pt.induce(&incl, &h).unwrap();
        assert!(ind.isomorphism_to(&GSimplicialSet::regular(&h), u64::MAX).unwrap().is_some());
        // regular S3 restricted to a subgroup of order 2 has 3 free orbits
        let z2 = FiniteGroup::cyclic(2);
        let sub = s3.generated(&[1]);
        assert_eq!(sub.len(), 2);
        let f = z2.extend_hom(&s3, &[1], &[sub[1]]).unwrap();
        let fh = SimplicialGroupHom::constant(&f, 1);
        let g = constant(&z2, 1);
        let res = GSimplicialSet::regular(&h).restrict(&fh, &g).unwrap();
        let (orbits, _) = res.orbit_quotient();
        assert_eq!(orbits.count(0), 3);
        assert!((0..6).all(|x| res.act(0, 1, x) != x));
        // identity: both functors are the identity
        let t = GSimplicialSet::from_gset(&GSet::cosets(&s3, &sub), 1);
        let id = SimplicialGroupHom::identity(&h);
        assert_eq!(t.restrict(&id, &h).unwrap(), t);
        assert!(t.induce(&id, &h).unwrap().0.isomorphism_to(&t, u64::MAX).unwrap().is_some());
        // Hom_H(S3, three points) = 3 on both sides
        let c = induce_adjunction(
            &fh,
            &GSimplicialSet::regular(&g),
            &GSimplicialSet::from_gset(&GSet::cosets(&s3, &sub), 1),
            u64::MAX,
        )
        .unwrap();
        assert_eq!((c.left, c.right, c.bijective), (3, 3, true));
        let bad = SimplicialGroupHom::constant(&[1, 1], 1);
        assert!(GSimplicialSet::regular(&h).restrict(&bad, &g).is_err());
    }

    #[test]
    fn end_of_regular_is_the_group() {
        for (g, bound) in [(FiniteGroup::cyclic(2), 3), (FiniteGroup::symmetric(3), 2), (FiniteGroup::trivial(), 2)] {
            let e = end_of_regular(&constant(&g, bound), bound, u64::MAX).unwrap();
            assert!(e.is_iso);
            assert!(e.levels.iter().all(|l| l.len() == g.order()));
        }
    }
}
