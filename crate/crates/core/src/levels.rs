//! Explicit level tables: every simplex (degenerate or not) of each dimension through a
//! top dimension, with face and degeneracy tables.
//!
//! Constructions that are easiest to describe simplex-by-simplex (products, quotients,
//! EG, nerves, mapping spaces) build a [`Levels`]; [`Levels::normalize`] recovers the
//! Eilenberg–Zilber presentation. [`Expanded`] goes the other way.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::simplex::Simplex;
use crate::sset::SimplicialSet;
use crate::util::{monotone_sequences, Map, UnionFind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Levels {
    counts: Vec<usize>,
    /// `faces[n][x * (n + 1) + i] = d_i x`, empty for `n = 0`.
    faces: Vec<Vec<u32>>,
    /// `degens[n][x * (n + 1) + i] = s_i x` (in level `n + 1`), for `n < top`.
    degens: Vec<Vec<u32>>,
    /// No nondegenerate simplices above `top`.
    complete: bool,
}

impl Levels {
    /// Builds level tables from closures. `face(n, x, i)` for `1 <= n <= top`,
    /// `degen(n, x, i)` for `n < top`.
    pub fn build(
        counts: Vec<usize>,
        complete: bool,
        mut face: impl FnMut(usize, usize, usize) -> usize,
        mut degen: impl FnMut(usize, usize, usize) -> usize,
    ) -> Levels {
        let top = counts.len() - 1;
        let mut faces = Vec::with_capacity(top + 1);
        let mut degens = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut f = Vec::new();
            if n > 0 {
                f.reserve(counts[n] * (n + 1));
                for x in 0..counts[n] {
                    for i in 0..=n {
                        f.push(face(n, x, i) as u32);
                    }
                }
            }
            faces.push(f);
            let mut d = Vec::new();
            if n < top {
                d.reserve(counts[n] * (n + 1));
                for x in 0..counts[n] {
                    for i in 0..=n {
                        d.push(degen(n, x, i) as u32);
                    }
                }
            }
            degens.push(d);
        }
        Levels {
            counts,
            faces,
            degens,
            complete,
        }
    }

    pub fn top(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    #[inline]
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][x * (n + 1) + i] as usize
    }

    #[inline]
    pub fn degen(&self, n: usize, i: usize, x: usize) -> usize {
        self.degens[n][x * (n + 1) + i] as usize
    }

    /// Truncates to a lower top dimension.
    pub fn truncate(&self, top: usize) -> Levels {
        if top >= self.top() {
            return self.clone();
        }
        let mut degens = self.degens[..=top].to_vec();
        degens[top].clear();
        Levels {
            counts: self.counts[..=top].to_vec(),
            faces: self.faces[..=top].to_vec(),
            degens,
            complete: false,
        }
    }

    /// Declares that no nondegenerate simplices exist above `top`. The caller
    /// guarantees it.
    pub fn assume_complete(mut self) -> Levels {
        self.complete = true;
        self
    }

    /// Applies the simplicial operator of a monotone map `θ: [k] -> [n]` to an
    /// `n`-simplex, yielding a `k`-simplex.
    pub fn apply_monotone(&self, n: usize, theta: &[usize], x: usize) -> usize {
        let k = theta.len() - 1;
        // injective part: delete missing vertices from the top down
        let mut image: Vec<usize> = theta.to_vec();
        image.dedup();
        let mut cur = x;
        let mut dim = n;
        for v in (0..=n).rev() {
            if !image.contains(&v) {
                cur = self.face(dim, v, cur);
                dim -= 1;
            }
        }
        // surjective part: repeats, applied from the smallest index
        let mut reps: Vec<usize> = (0..k).filter(|&j| theta[j] == theta[j + 1]).collect();
        reps.sort_unstable();
        for j in reps {
            cur = self.degen(dim, j, cur);
            dim += 1;
        }
        cur
    }

    /// Exhaustive check of all simplicial identities.
    pub fn check_identities(&self) -> Result<()> {
        let top = self.top();
        let fail = |n: usize, x: usize, what: alloc::string::String| {
            Err(invalid(format!("simplex {x} of dimension {n}"), what))
        };
        for n in 0..=top {
            for x in 0..self.count(n) {
                if n >= 2 {
                    for j in 0..=n {
                        for i in 0..j {
                            let a = self.face(n - 1, i, self.face(n, j, x));
                            let b = self.face(n - 1, j - 1, self.face(n, i, x));
                            if a != b {
                                return fail(n, x, format!("d{i} d{j} != d{} d{i}", j - 1));
                            }
                        }
                    }
                }
                if n < top {
                    for j in 0..=n {
                        let s = self.degen(n, j, x);
                        for i in 0..=n + 1 {
                            let lhs = self.face(n + 1, i, s);
                            let rhs = if i == j || i == j + 1 {
                                x
                            } else if i < j {
                                self.degen(n - 1, j - 1, self.face(n, i, x))
                            } else {
                                self.degen(n - 1, j, self.face(n, i - 1, x))
                            };
                            if lhs != rhs {
                                return fail(n, x, format!("d{i} s{j} identity fails"));
                            }
                        }
                        if n + 1 < top {
                            for i in 0..=j {
                                let a = self.degen(n + 1, i, s);
                                let b = self.degen(n + 1, j + 1, self.degen(n, i, x));
                                if a != b {
                                    return fail(n, x, format!("s{i} s{j} identity fails"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Recovers the normal-form presentation. Also returns, per level, the normal form of
    /// every listed simplex and, per dimension, the table index of each nondegenerate base.
    pub fn normalize(&self) -> Result<Normalized> {
        let top = self.top();
        let mut nf: Vec<Vec<Option<Simplex>>> = Vec::with_capacity(top + 1);
        let mut base_index: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
        let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut lvl: Vec<Option<Simplex>> = vec![None; self.count(n)];
            if n > 0 {
                for y in 0..self.count(n - 1) {
                    let below = nf[n - 1][y].as_ref().expect("normalized");
                    for i in 0..n {
                        let z = self.degen(n - 1, i, y);
                        let cand = below.degeneracy(i);
                        match &lvl[z] {
                            Some(prev) if *prev != cand => {
                                return Err(invalid(
                                    format!("simplex {z} of dimension {n}"),
                                    "two different degeneracy normal forms",
                                ))
                            }
                            Some(_) => {}
                            None => lvl[z] = Some(cand),
                        }
                    }
                }
            }
            let mut bases = Vec::new();
            let mut fl = Vec::new();
            for x in 0..self.count(n) {
                if lvl[x].is_none() {
                    lvl[x] = Some(Simplex::nondegenerate(n, bases.len()));
                    bases.push(x);
                    if n > 0 {
                        fl.push(
                            (0..=n)
                                .map(|i| nf[n - 1][self.face(n, i, x)].clone().expect("nf"))
                                .collect(),
                        );
                    } else {
                        fl.push(Vec::new());
                    }
                }
            }
            nf.push(lvl);
            base_index.push(bases);
            faces.push(fl);
        }
        let bound = if self.complete { None } else { Some(top) };
        if self.complete {
            while faces.len() > 1 && faces.last().is_some_and(|l| l.is_empty()) {
                faces.pop();
            }
        }
        let set = SimplicialSet::new_unchecked(faces, None, bound);
        Ok(Normalized {
            set,
            normal_forms: nf
                .into_iter()
                .map(|l| l.into_iter().map(|s| s.expect("nf")).collect())
                .collect(),
            base_index,
        })
    }

    /// Quotient by the smallest simplicial equivalence relation containing the seed
    /// pairs `(n, x, y)`. Returns the quotient and the projection.
    pub fn quotient(&self, seeds: &[(usize, usize, usize)]) -> (Levels, LevelMap) {
        let top = self.top();
        let mut uf: Vec<UnionFind> = (0..=top).map(|n| UnionFind::new(self.count(n))).collect();
        for &(n, x, y) in seeds {
            uf[n].union(x, y);
        }
        loop {
            let mut changed = false;
            for n in 0..=top {
                for x in 0..self.count(n) {
                    let r = uf[n].find(x);
                    if r == x {
                        continue;
                    }
                    if n > 0 {
                        for i in 0..=n {
                            let (a, b) = (self.face(n, i, x), self.face(n, i, r));
                            changed |= uf[n - 1].union(a, b);
                        }
                    }
                    if n < top {
                        for i in 0..=n {
                            let (a, b) = (self.degen(n, i, x), self.degen(n, i, r));
                            changed |= uf[n + 1].union(a, b);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut class = Vec::with_capacity(top + 1);
        let mut reps = Vec::with_capacity(top + 1);
        let mut counts = Vec::with_capacity(top + 1);
        for u in uf.iter_mut() {
            let (c, k) = u.classes();
            let mut r = vec![usize::MAX; k];
            for (x, &cx) in c.iter().enumerate() {
                if r[cx] == usize::MAX {
                    r[cx] = x;
                }
            }
            class.push(c);
            reps.push(r);
            counts.push(k);
        }
        let q = Levels::build(
            counts,
            self.complete,
            |n, x, i| class[n - 1][self.face(n, i, reps[n][x])],
            |n, x, i| class[n + 1][self.degen(n, i, reps[n][x])],
        );
        let map = LevelMap {
            images: class
                .into_iter()
                .map(|c| c.into_iter().map(|v| v as u32).collect())
                .collect(),
        };
        (q, map)
    }

    /// Levelwise product.
    pub fn product(&self, other: &Levels) -> Levels {
        let top = self.top().min(other.top());
        let counts: Vec<usize> = (0..=top).map(|n| self.count(n) * other.count(n)).collect();
        Levels::build(
            counts,
            self.complete && other.complete,
            |n, x, i| {
                let w = other.count(n);
                let wl = other.count(n - 1);
                self.face(n, i, x / w) * wl + other.face(n, i, x % w)
            },
            |n, x, i| {
                let w = other.count(n);
                let wu = other.count(n + 1);
                self.degen(n, i, x / w) * wu + other.degen(n, i, x % w)
            },
        )
    }

    /// Path components: a class per vertex and the number of classes.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.count(0));
        if self.top() >= 1 {
            for e in 0..self.count(1) {
                uf.union(self.face(1, 0, e), self.face(1, 1, e));
            }
        }
        uf.classes()
    }

    /// Disjoint union.
    pub fn coproduct(parts: &[&Levels]) -> Levels {
        let top = parts.iter().map(|l| l.top()).min().unwrap_or(0);
        let offsets: Vec<Vec<usize>> = (0..=top + 1)
            .map(|n| {
                let mut acc = 0;
                parts
                    .iter()
                    .map(|l| {
                        let o = acc;
                        acc += l.count(n);
                        o
                    })
                    .collect()
            })
            .collect();
        let locate = |n: usize, x: usize| -> (usize, usize) {
            let mut k = 0;
            while k + 1 < parts.len() && offsets[n][k + 1] <= x {
                k += 1;
            }
            (k, x - offsets[n][k])
        };
        let counts = (0..=top)
            .map(|n| parts.iter().map(|l| l.count(n)).sum())
            .collect();
        Levels::build(
            counts,
            parts.iter().all(|l| l.complete),
            |n, x, i| {
                let (k, y) = locate(n, x);
                offsets[n - 1][k] + parts[k].face(n, i, y)
            },
            |n, x, i| {
                let (k, y) = locate(n, x);
                offsets[n + 1][k] + parts[k].degen(n, i, y)
            },
        )
    }

    /// The constant simplicial set on `k` points.
    pub fn discrete(k: usize, top: usize) -> Levels {
        Levels::build(vec![k; top + 1], true, |_, x, _| x, |_, x, _| x)
    }

    /// The standard simplex Δ^m through `top`, simplices indexed as in
    /// [`monotone_sequences`].
    pub fn delta(m: usize, top: usize) -> Levels {
        let seqs: Vec<Vec<Vec<usize>>> = (0..=top).map(|n| monotone_sequences(n, m)).collect();
        let index: Vec<Map<Vec<usize>, usize>> = seqs
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let counts = seqs.iter().map(|l| l.len()).collect();
        Levels::build(
            counts,
            top >= m,
            |n, x, i| {
                let mut s = seqs[n][x].clone();
                s.remove(i);
                index[n - 1][&s]
            },
            |n, x, i| {
                let mut s = seqs[n][x].clone();
                s.insert(i, s[i]);
                index[n + 1][&s]
            },
        )
    }
}

/// Result of [`Levels::normalize`].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub set: SimplicialSet,
    pub normal_forms: Vec<Vec<Simplex>>,
    /// Table index of each nondegenerate simplex, per dimension.
    pub base_index: Vec<Vec<usize>>,
}

/// A levelwise function between two [`Levels`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LevelMap {
    pub images: Vec<Vec<u32>>,
}

impl LevelMap {
    pub fn from_fn(counts: &[usize], mut f: impl FnMut(usize, usize) -> usize) -> LevelMap {
        LevelMap {
            images: counts
                .iter()
                .enumerate()
                .map(|(n, &c)| (0..c).map(|x| f(n, x) as u32).collect())
                .collect(),
        }
    }

    pub fn identity(l: &Levels) -> LevelMap {
        LevelMap::from_fn(l.counts(), |_, x| x)
    }

    #[inline]
    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.images[n][x] as usize
    }

    pub fn top(&self) -> usize {
        self.images.len() - 1
    }

    pub fn compose(&self, then: &LevelMap) -> LevelMap {
        LevelMap {
            images: self
                .images
                .iter()
                .enumerate()
                .map(|(n, l)| l.iter().map(|&x| then.images[n][x as usize]).collect())
                .collect(),
        }
    }

    /// Checks that the map commutes with every face and degeneracy.
    pub fn check_simplicial(&self, src: &Levels, dst: &Levels) -> Result<()> {
        let top = self.top().min(src.top()).min(dst.top());
        for n in 0..=top {
            if self.images[n].len() != src.count(n) {
                return Err(Error::InvalidMap(format!("wrong size at dimension {n}")));
            }
            for x in 0..src.count(n) {
                let fx = self.apply(n, x);
                if fx >= dst.count(n) {
                    return Err(Error::InvalidMap(format!("image out of range at dim {n}")));
                }
                if n > 0 {
                    for i in 0..=n {
                        if self.apply(n - 1, src.face(n, i, x)) != dst.face(n, i, fx) {
                            return Err(Error::InvalidMap(format!(
                                "does not commute with d{i} on simplex {x} of dim {n}"
                            )));
                        }
                    }
                }
                if n < top {
                    for i in 0..=n {
                        if self.apply(n + 1, src.degen(n, i, x)) != dst.degen(n, i, fx) {
                            return Err(Error::InvalidMap(format!(
                                "does not commute with s{i} on simplex {x} of dim {n}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The induced map of components, or `None` if it is not a bijection.
    pub fn pi0_bijection(&self, src: &Levels, dst: &Levels) -> Option<Vec<usize>> {
        let (cs, ns) = src.components();
        let (cd, nd) = dst.components();
        if ns != nd {
            return None;
        }
        let mut map = vec![usize::MAX; ns];
        let mut hit = vec![false; nd];
        for v in 0..src.count(0) {
            let c = cd[self.apply(0, v)];
            if map[cs[v]] == usize::MAX {
                if hit[c] {
                    return None;
                }
                hit[c] = true;
                map[cs[v]] = c;
            }
        }
        Some(map)
    }

    pub fn is_bijective(&self, dst: &Levels) -> bool {
        self.images.iter().enumerate().all(|(n, l)| {
            if l.len() != dst.count(n) {
                return false;
            }
            let mut seen = vec![false; l.len()];
            l.iter().all(|&y| !core::mem::replace(&mut seen[y as usize], true))
        })
    }

    pub fn is_surjective(&self, dst: &Levels) -> bool {
        self.images.iter().enumerate().all(|(n, l)| {
            let mut seen = vec![false; dst.count(n)];
            for &y in l {
                seen[y as usize] = true;
            }
            seen.into_iter().all(|b| b)
        })
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> LevelMap {
        LevelMap {
            images: self
                .images
                .iter()
                .map(|l| {
                    let mut inv = vec![0u32; l.len()];
                    for (x, &y) in l.iter().enumerate() {
                        inv[y as usize] = x as u32;
                    }
                    inv
                })
                .collect(),
        }
    }

    pub fn truncate(&self, top: usize) -> LevelMap {
        LevelMap {
            images: self.images.iter().take(top + 1).cloned().collect(),
        }
    }
}

/// A presentation expanded into level tables, with lookup from normal forms.
#[derive(Clone, Debug)]
pub struct Expanded {
    pub levels: Levels,
    pub simplices: Vec<Vec<Simplex>>,
    pub index: Vec<Map<Simplex, u32>>,
}

impl Expanded {
    pub fn new(x: &SimplicialSet, top: usize) -> Result<Expanded> {
        if top > x.known_through() {
            return Err(Error::Truncated {
                what: "expansion".into(),
                needed: top,
                available: x.known_through(),
            });
        }
        let simplices: Vec<Vec<Simplex>> = (0..=top).map(|n| x.simplices(n)).collect();
        let index: Vec<Map<Simplex, u32>> = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
            .collect();
        let counts = simplices.iter().map(|l| l.len()).collect();
        let mut err = None;
        let levels = Levels::build(
            counts,
            x.bound().is_none() && top >= x.dim(),
            |n, i_x, i| {
                let f = x.face(&simplices[n][i_x], i).expect("face in range");
                index[n - 1][&f] as usize
            },
            |n, i_x, i| match x.degeneracy(&simplices[n][i_x], i) {
                Ok(s) => index[n + 1][&s] as usize,
                Err(e) => {
                    err = Some(e);
                    0
                }
            },
        );
        if let Some(e) = err {
            return Err(e);
        }
        Ok(Expanded {
            levels,
            simplices,
            index,
        })
    }

    pub fn lookup(&self, s: &Simplex) -> usize {
        self.index[s.dim()][s] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_levels_are_simplicial_and_normalize() {
        let d2 = Levels::delta(2, 4);
        d2.check_identities().unwrap();
        let nz = d2.normalize().unwrap();
        assert_eq!(nz.set.counts(), vec![3, 3, 1]);
        assert!(!nz.set.is_truncated());
    }

    #[test]
    fn expand_then_normalize_round_trip() {
        let c = SimplicialSet::circle();
        let e = Expanded::new(&c, 4).unwrap();
        e.levels.check_identities().unwrap();
        assert_eq!(e.levels.counts(), &[1, 2, 3, 4, 5]);
        let nz = e.levels.normalize().unwrap();
        assert_eq!(nz.set.counts(), vec![1, 1]);
    }

    #[test]
    fn product_of_intervals() {
        let d1 = Levels::delta(1, 3);
        let p = d1.product(&d1);
        p.check_identities().unwrap();
        let nz = p.normalize().unwrap();
        assert_eq!(nz.set.counts(), vec![4, 5, 2]);
    }

    #[test]
    fn quotient_collapsing_vertices_of_interval() {
        let d1 = Levels::delta(1, 3);
        let (q, map) = d1.quotient(&[(0, 0, 1)]);
        q.check_identities().unwrap();
        map.check_simplicial(&d1, &q).unwrap();
        assert_eq!(q.normalize().unwrap().set.counts(), vec![1, 1]);
    }

    #[test]
    fn monotone_operator_matches_faces() {
        let d2 = Levels::delta(2, 3);
        // top simplex (0,1,2) is index of [0,1,2] among monotone sequences of length 3
        let seqs = monotone_sequences(2, 2);
        let top = seqs.iter().position(|s| s == &vec![0, 1, 2]).unwrap();
        // θ = [0,2] picks the edge (0,2) = d1
        assert_eq!(d2.apply_monotone(2, &[0, 2], top), d2.face(2, 1, top));
        // θ = [1,1] is s0 d0 d2
        let v = d2.face(1, 0, d2.face(2, 2, top));
        assert_eq!(d2.apply_monotone(2, &[1, 1], top), d2.degen(0, 0, v));
    }
}
