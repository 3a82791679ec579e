//! Simplicial objects in finite simplicial sets: pre-Δ°-spaces, their diagonal, Segal
//! maps and the π₀ monoid.
//!
//! A [`DeltaSpace`] stores levels `A_0..A_M` (each a simplicial set through a common
//! internal top) and the maps `d_i: A_m -> A_{m-1}`, `s_i: A_m -> A_{m+1}` induced by
//! cofaces and codegeneracies. Any monotone `θ` acts by factoring it.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::category::FiniteCategory;
use crate::construct::{codegeneracy, coface, collapsed_simplex, delta_map, MappingSpace};
use crate::error::{Error, Result};
use crate::homology::homology_iso_through;
use crate::kan::kan_check;
use crate::levels::{Expanded, LevelMap, Levels};
use crate::pi1::induced_iso;
use crate::sgroup::{decode, encode, nerve_operator, FiniteSimplicialGroup};
use crate::sset::SimplicialSet;
use crate::util::{monotone_sequences, Map};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSpace {
    levels: Vec<Levels>,
    faces: Vec<Vec<LevelMap>>,
    degens: Vec<Vec<LevelMap>>,
    /// Advisories attached by constructions (for example a non-Kan target).
    pub warnings: Vec<String>,
}

impl DeltaSpace {
    /// `faces[m][i]` for `1 <= m <= M` (empty at `m = 0`), `degens[m][i]` for `m < M`.
    pub fn new(levels: Vec<Levels>, faces: Vec<Vec<LevelMap>>, degens: Vec<Vec<LevelMap>>) -> Result<DeltaSpace> {
        let a = DeltaSpace {
            levels,
            faces,
            degens,
            warnings: Vec::new(),
        };
        a.validate()?;
        Ok(a)
    }

    /// Builds the generating maps from an action `op(θ, n, p, x)` of monotone maps
    /// `θ: [k] -> [n]` sending `x ∈ (A_n)_p` to `(A_k)_p`.
    pub fn from_operator(
        levels: Vec<Levels>,
        op: impl Fn(&[usize], usize, usize, usize) -> usize,
    ) -> Result<DeltaSpace> {
        let mb = levels.len() - 1;
        let counts = |m: usize| levels[m].counts().to_vec();
        let faces = (0..=mb)
            .map(|m| {
                if m == 0 {
                    return Vec::new();
                }
                (0..=m)
                    .map(|i| {
                        let th = coface(m, i);
                        LevelMap::from_fn(&counts(m), |p, x| op(&th, m, p, x))
                    })
                    .collect()
            })
            .collect();
        let degens = (0..mb)
            .map(|m| {
                (0..=m)
                    .map(|i| {
                        let th = codegeneracy(m, i);
                        LevelMap::from_fn(&counts(m), |p, x| op(&th, m, p, x))
                    })
                    .collect()
            })
            .collect();
        DeltaSpace::new(levels, faces, degens)
    }

    /// Every level a point.
    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.counts().iter().all(|&c| c == 1))
    }

    pub fn m_bound(&self) -> usize {
        self.levels.len() - 1
    }

    /// Common internal top dimension.
    pub fn p_top(&self) -> usize {
        self.levels[0].top()
    }

    pub fn level(&self, m: usize) -> &Levels {
        &self.levels[m]
    }

    pub fn face(&self, m: usize, i: usize) -> &LevelMap {
        &self.faces[m][i]
    }

    pub fn degen(&self, m: usize, i: usize) -> &LevelMap {
        &self.degens[m][i]
    }

    /// `A(θ): A_n -> A_k` for monotone `θ: [k] -> [n]`, applied to `x ∈ (A_n)_p`.
    pub fn apply(&self, theta: &[usize], n: usize, p: usize, x: usize) -> usize {
        let k = theta.len() - 1;
        let mut image = theta.to_vec();
        image.dedup();
        let (mut cur, mut dim) = (x, n);
        for v in (0..=n).rev() {
            if !image.contains(&v) {
                cur = self.faces[dim][v].apply(p, cur);
                dim -= 1;
            }
        }
        for j in (0..k).filter(|&j| theta[j] == theta[j + 1]) {
            cur = self.degens[dim][j].apply(p, cur);
            dim += 1;
        }
        cur
    }

    pub fn operator(&self, theta: &[usize], n: usize) -> LevelMap {
        LevelMap::from_fn(self.levels[n].counts(), |p, x| self.apply(theta, n, p, x))
    }

    /// Every map simplicial, plus the simplicial identities among the `d_i`, `s_i`.
    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidMap(s));
        let mb = self.m_bound();
        let top = self.p_top();
        if self.levels.iter().any(|l| l.top() != top) {
            return bad("levels have different internal tops".into());
        }
        if self.faces.len() != mb + 1 || self.degens.len() != mb {
            return bad("structure maps missing".into());
        }
        for m in 0..=mb {
            if self.faces[m].len() != if m == 0 { 0 } else { m + 1 } || (m < mb && self.degens[m].len() != m + 1) {
                return bad(format!("wrong number of structure maps at level {m}"));
            }
            for f in &self.faces[m] {
                f.check_simplicial(&self.levels[m], &self.levels[m - 1])?;
            }
            if m < mb {
                for s in &self.degens[m] {
                    s.check_simplicial(&self.levels[m], &self.levels[m + 1])?;
                }
            }
        }
        let eq = |a: LevelMap, b: LevelMap, what: String| if a == b { Ok(()) } else { bad(what) };
        for m in 0..=mb {
            if m >= 2 {
                for j in 1..=m {
                    for i in 0..j {
                        eq(
                            self.faces[m][j].compose(&self.faces[m - 1][i]),
                            self.faces[m][i].compose(&self.faces[m - 1][j - 1]),
                            format!("d{i} d{j} != d{} d{i} on A_{m}", j - 1),
                        )?;
                    }
                }
            }
            if m + 2 <= mb {
                for j in 0..=m {
                    for i in 0..=j {
                        eq(
                            self.degens[m][j].compose(&self.degens[m + 1][i]),
                            self.degens[m][i].compose(&self.degens[m + 1][j + 1]),
                            format!("s{i} s{j} != s{} s{i} on A_{m}", j + 1),
                        )?;
                    }
                }
            }
            if m < mb {
                for j in 0..=m {
                    for i in 0..=m + 1 {
                        let lhs = self.degens[m][j].compose(&self.faces[m + 1][i]);
                        let rhs = if i == j || i == j + 1 {
                            LevelMap::identity(&self.levels[m])
                        } else if m == 0 {
                            continue;
                        } else if i < j {
                            self.faces[m][i].compose(&self.degens[m - 1][j - 1])
                        } else {
                            self.faces[m][i - 1].compose(&self.degens[m - 1][j])
                        };
                        eq(lhs, rhs, format!("d{i} s{j} identity fails on A_{m}"))?;
                    }
                }
            }
        }
        Ok(())
    }

    /// `d(A)_m = (A_m)_m` through `min(M, p_top)`, with diagonal structure maps.
    pub fn diagonal(&self) -> Levels {
        let d = self.m_bound().min(self.p_top());
        let counts: Vec<usize> = (0..=d).map(|m| self.levels[m].count(m)).collect();
        Levels::build(
            counts,
            self.is_trivial() && self.levels[0].is_complete(),
            |m, x, i| self.levels[m - 1].face(m, i, self.faces[m][i].apply(m, x)),
            |m, x, i| self.levels[m + 1].degen(m, i, self.degens[m][i].apply(m, x)),
        )
    }

    /// The Segal map `A_m -> A_1 ×_{A_0} ⋯ ×_{A_0} A_1` and its target.
    pub fn segal_map(&self, m: usize) -> Result<(Levels, LevelMap)> {
        self.segal_data(m).map(|(t, f, _)| (t, f))
    }

    /// Also returns the tuples of `A_1` simplices behind each target simplex.
    fn segal_data(&self, m: usize) -> Result<SegalData> {
        if m > self.m_bound() {
            return Err(Error::Truncated {
                what: "Segal map level".into(),
                needed: m,
                available: self.m_bound(),
            });
        }
        if m <= 1 {
            let l = &self.levels[m];
            let tuples = (0..=l.top()).map(|p| (0..l.count(p) as u32).map(|x| vec![x; m]).collect()).collect();
            return Ok((l.clone(), LevelMap::identity(l), tuples));
        }
        let a1 = &self.levels[1];
        let (src, tgt) = (&self.faces[1][1], &self.faces[1][0]);
        let top = self.p_top();
        // composable m-tuples of A_1 at each internal level
        let mut tuples: Vec<Vec<Vec<u32>>> = Vec::with_capacity(top + 1);
        let mut index: Vec<Map<Vec<u32>, u32>> = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let mut by_source: Map<usize, Vec<u32>> = Map::new();
            for e in 0..a1.count(p) {
                by_source.entry(src.apply(p, e)).or_default().push(e as u32);
            }
            let mut out = Vec::new();
            let mut cur: Vec<u32> = Vec::with_capacity(m);
            extend_tuples(p, m, a1.count(p), &by_source, tgt, &mut cur, &mut out);
            index.push(out.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect());
            tuples.push(out);
        }
        let counts = tuples.iter().map(|t| t.len()).collect();
        let target = Levels::build(
            counts,
            false,
            |p, x, i| {
                let t: Vec<u32> = tuples[p][x].iter().map(|&e| a1.face(p, i, e as usize) as u32).collect();
                index[p - 1][&t] as usize
            },
            |p, x, i| {
                let t: Vec<u32> = tuples[p][x].iter().map(|&e| a1.degen(p, i, e as usize) as u32).collect();
                index[p + 1][&t] as usize
            },
        );
        let spines: Vec<[usize; 2]> = (1..=m).map(|j| [j - 1, j]).collect();
        let mut missing = false;
        let map = LevelMap::from_fn(self.levels[m].counts(), |p, x| {
            let t: Vec<u32> = spines.iter().map(|th| self.apply(th, m, p, x) as u32).collect();
            match index[p].get(&t) {
                Some(&v) => v as usize,
                None => {
                    missing = true;
                    0
                }
            }
        });
        if missing {
            return Err(Error::InvalidMap("spine of a simplex is not composable".into()));
        }
        Ok((target, map, tuples))
    }
}

type SegalData = (Levels, LevelMap, Vec<Vec<Vec<u32>>>);

fn extend_tuples(
    p: usize,
    m: usize,
    count: usize,
    by_source: &Map<usize, Vec<u32>>,
    tgt: &LevelMap,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if cur.len() == m {
        out.push(cur.clone());
        return;
    }
    let next: Vec<u32> = match cur.last() {
        None => (0..count as u32).collect(),
        Some(&e) => by_source.get(&tgt.apply(p, e as usize)).cloned().unwrap_or_default(),
    };
    for e in next {
        cur.push(e);
        extend_tuples(p, m, count, by_source, tgt, cur, out);
        cur.pop();
    }
}

/// A Δ°-space whose level 0 is a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreDeltaSpace(DeltaSpace);

impl PreDeltaSpace {
    pub fn new(a: DeltaSpace) -> Result<PreDeltaSpace> {
        if a.level(0).counts().iter().any(|&c| c != 1) {
            return Err(Error::InvalidMap("level 0 of a pre-Δ°-space must be a point".into()));
        }
        Ok(PreDeltaSpace(a))
    }

    pub fn into_inner(self) -> DeltaSpace {
        self.0
    }

    /// All levels a point.
    pub fn trivial(m_bound: usize, p_top: usize) -> PreDeltaSpace {
        let levels = vec![Levels::discrete(1, p_top).assume_complete(); m_bound + 1];
        PreDeltaSpace(DeltaSpace::from_operator(levels, |_, _, _, _| 0).expect("constant"))
    }

    /// A simplicial set with one vertex viewed as levelwise discrete: `A_m = X_m`.
    pub fn discrete(x: &Levels, m_bound: usize, p_top: usize) -> Result<PreDeltaSpace> {
        if x.top() < m_bound {
            return Err(Error::Truncated {
                what: "discrete pre-Δ°-space".into(),
                needed: m_bound,
                available: x.top(),
            });
        }
        let levels = (0..=m_bound).map(|m| Levels::discrete(x.count(m), p_top)).collect();
        PreDeltaSpace::new(DeltaSpace::from_operator(levels, |th, n, _, v| x.apply_monotone(n, th, v))?)
    }
}

impl Deref for PreDeltaSpace {
    type Target = DeltaSpace;

    fn deref(&self) -> &DeltaSpace {
        &self.0
    }
}

/// `j(G)`: `[m] ↦ G^m` with structure maps from multiplication and diagonals.
pub fn j_embed(g: &FiniteSimplicialGroup, m_bound: usize) -> PreDeltaSpace {
    let orders: Vec<usize> = (0..=g.top()).map(|p| g.level(p).order()).collect();
    let levels = (0..=m_bound).map(|m| g.power_levels(m).0).collect();
    let a = DeltaSpace::from_operator(levels, |th, n, p, x| {
        let t = decode(x, orders[p], n);
        encode(nerve_operator(g.level(p), th, &t), orders[p])
    })
    .expect("multiplication is simplicial");
    PreDeltaSpace(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegalVerdict {
    Iso,
    /// π₀-bijective and a homology isomorphism through the given degree.
    EquivalenceCertified { through: usize },
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegalReport {
    pub m: usize,
    /// Target of the Segal map (the iterated fibre product of `A_1` over `A_0`).
    pub target: Levels,
    pub map: LevelMap,
    pub pi0_bijective: bool,
    /// Highest degree through which the map is certified a homology isomorphism.
    pub homology_through: Option<usize>,
    pub verdict: SegalVerdict,
}

/// Checks the Segal map at level `m`; `bound` is the homology degree to certify when the
/// map is not a bijection.
pub fn segal_check(a: &DeltaSpace, m: usize, bound: usize) -> Result<SegalReport> {
    let (target, map) = a.segal_map(m)?;
    let source = a.level(m);
    if map.is_bijective(&target) {
        return Ok(SegalReport {
            m,
            target,
            map,
            pi0_bijective: true,
            homology_through: Some(bound),
            verdict: SegalVerdict::Iso,
        });
    }
    let pi0_bijective = map.pi0_bijection(source, &target).is_some();
    let mut homology_through = None;
    if pi0_bijective {
        let available = certifiable_degree(source, &target);
        if available.is_none_or(|d| d < bound) {
            return Err(Error::Truncated {
                what: "Segal check homology bound".into(),
                needed: bound + 2,
                available: a.p_top(),
            });
        }
        homology_through = homology_iso_through(&source.normalize()?, &target.normalize()?, &map, bound)?;
    }
    let verdict = match homology_through {
        Some(d) if pi0_bijective && d >= bound => SegalVerdict::EquivalenceCertified { through: d },
        _ => SegalVerdict::Failed,
    };
    Ok(SegalReport {
        m,
        target,
        map,
        pi0_bijective,
        homology_through,
        verdict,
    })
}

/// Highest degree a cone comparison `X -> Y` can certify from the stored levels.
pub(crate) fn certifiable_degree(x: &Levels, y: &Levels) -> Option<usize> {
    let cap = |l: &Levels, slack: usize| {
        if l.is_complete() {
            Some(usize::MAX / 2)
        } else {
            l.top().checked_sub(slack)
        }
    };
    Some(cap(y, 2)?.min(cap(x, 1)?))
}

/// The monoid `π₀(A_1)` with composition induced through `π₀(A_2) ≅ π₀(A_1)²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi0Structure {
    /// A representing vertex of `A_1` per element.
    pub representatives: Vec<usize>,
    pub unit: usize,
    /// `table[a][b]` is `a` followed by `b`.
    pub table: Vec<Vec<usize>>,
    pub is_group: bool,
}

impl Pi0Structure {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order()).find(|&b| self.table[a][b] == self.unit && self.table[b][a] == self.unit)
    }
}

pub fn pi0_structure(a: &PreDeltaSpace) -> Result<Pi0Structure> {
    let undefined = || Error::Undefined("composition on π₀(A_1) undefined: π₀ Segal map at m = 2 is not bijective".into());
    if a.m_bound() < 2 {
        return Err(Error::Truncated {
            what: "π₀ composition needs level 2".into(),
            needed: 2,
            available: a.m_bound(),
        });
    }
    let (target, map, tuples) = a.segal_data(2)?;
    let bij = map.pi0_bijection(a.level(2), &target).ok_or_else(undefined)?;
    let mut back = vec![0; bij.len()];
    for (c, &d) in bij.iter().enumerate() {
        back[d] = c;
    }
    let (c1, n1) = a.level(1).components();
    let (c2, _) = a.level(2).components();
    let (ct, _) = target.components();
    let mut representatives = vec![usize::MAX; n1];
    for v in 0..a.level(1).count(0) {
        if representatives[c1[v]] == usize::MAX {
            representatives[c1[v]] = v;
        }
    }
    // a representing vertex of A_2 for each component
    let mut rep2 = vec![usize::MAX; bij.len()];
    for v in 0..a.level(2).count(0) {
        if rep2[c2[v]] == usize::MAX {
            rep2[c2[v]] = v;
        }
    }
    // vertices of the fibre product are pairs of A_1 vertices; index them
    let mut pair_class: Map<(usize, usize), usize> = Map::new();
    for (t, &cls) in ct.iter().enumerate() {
        let (x, y) = (tuples[0][t][0] as usize, tuples[0][t][1] as usize);
        pair_class.insert((c1[x], c1[y]), cls);
    }
    let compose = a.face(2, 1);
    let mut table = vec![vec![0; n1]; n1];
    for (i, row) in table.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let cls = *pair_class.get(&(i, j)).ok_or_else(undefined)?;
            let v = rep2[back[cls]];
            *cell = c1[compose.apply(0, v)];
        }
    }
    let unit = c1[a.degen(0, 0).apply(0, 0)];
    for x in 0..n1 {
        if table[unit][x] != x || table[x][unit] != x {
            return Err(Error::InvalidGroup("π₀ unit law fails".into()));
        }
        for y in 0..n1 {
            for z in 0..n1 {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Err(Error::InvalidGroup("π₀ composition is not associative".into()));
                }
            }
        }
    }
    let mut s = Pi0Structure {
        representatives,
        unit,
        table,
        is_group: false,
    };
    s.is_group = (0..n1).all(|x| s.inverse(x).is_some());
    Ok(s)
}

/// The nerve of a one-object category (a monoid) as a levelwise discrete pre-Δ°-space.
pub fn nerve_of_monoid(c: &FiniteCategory, m_bound: usize, p_top: usize) -> Result<PreDeltaSpace> {
    if c.object_count() != 1 {
        return Err(Error::InvalidCategory("a monoid has exactly one object".into()));
    }
    let k = c.morphism_count();
    let unit = c.identity(0);
    let levels = (0..=m_bound).map(|m| Levels::discrete(k.pow(m as u32), p_top)).collect();
    let a = DeltaSpace::from_operator(levels, |th, n, _, x| {
        let t = decode(x, k, n);
        let h = (1..th.len()).map(|j| {
            (th[j - 1]..th[j]).fold(unit, |acc, i| c.then(acc, t[i]).expect("one object"))
        });
        encode(h, k)
    })?;
    PreDeltaSpace::new(a)
}

/// `Ω*(X, x)`: level `m` is the pointed mapping space `Hom_*(Δ^m/sk_0 Δ^m, X)` through
/// internal level `p_bound`. The mapping spaces are kept for evaluation.
#[derive(Clone, Debug)]
pub struct Loops {
    pub space: PreDeltaSpace,
    pub maps: Vec<MappingSpace>,
    /// The collapsed simplices `Δ^m_*` and their quotient maps from `Δ^m`.
    pub collapsed: Vec<(Levels, LevelMap)>,
}

pub fn loops(x: &SimplicialSet, base: usize, m_bound: usize, p_bound: usize, budget: u64) -> Result<Loops> {
    if base >= x.count(0) {
        return Err(Error::Parameter("basepoint out of range".into()));
    }
    let mut maps = Vec::with_capacity(m_bound + 1);
    let mut collapsed = Vec::with_capacity(m_bound + 1);
    for m in 0..=m_bound {
        let (src, q) = collapsed_simplex(m, m + p_bound + 1);
        maps.push(MappingSpace::build(&src, m, x, p_bound, Some((0, base)), budget)?);
        collapsed.push((src, q));
    }
    // A(θ) for θ: [k] -> [n] precomposes with θ_* × id
    let induced = |theta: &[usize], n: usize| -> Result<LevelMap> {
        let k = theta.len() - 1;
        let th = collapsed_map(&collapsed[k], &collapsed[n], theta, n);
        let (src, dst) = (&maps[n], &maps[k]);
        let mut out = Vec::with_capacity(p_bound + 1);
        for p in 0..=p_bound {
            let lvl = &dst.levels_by_p[p];
            let row = (0..src.levels_by_p[p].maps.len())
                .map(|f| {
                    let key = src.precompose_key(p, f, lvl, |d, a, b| (th.apply(d, a), b))?;
                    lvl.index
                        .get(&key)
                        .copied()
                        .ok_or_else(|| Error::InvalidMap("precomposite is not an enumerated map".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            out.push(row);
        }
        Ok(LevelMap { images: out })
    };
    let faces = (0..=m_bound)
        .map(|m| {
            if m == 0 {
                Ok(Vec::new())
            } else {
                (0..=m).map(|i| induced(&coface(m, i), m)).collect()
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let degens = (0..m_bound)
        .map(|m| (0..=m).map(|i| induced(&codegeneracy(m, i), m)).collect())
        .collect::<Result<Vec<_>>>()?;
    let levels = maps.iter().map(|s| s.levels.clone()).collect();
    let mut a = DeltaSpace::new(levels, faces, degens)?;
    let kan_dim = (x.dim() + 1).min(3);
    let report = kan_check(x, kan_dim)?;
    if !report.is_kan() {
        a.warnings.push(format!(
            "target is not Kan through dimension {kan_dim} ({} unfillable horns); loop spaces may not have the right homotopy type",
            report.unfillable.len()
        ));
    }
    Ok(Loops {
        space: PreDeltaSpace::new(a)?,
        maps,
        collapsed,
    })
}

/// `θ_*: Δ^k_* -> Δ^n_*` through the lower of the two tops.
fn collapsed_map(from: &(Levels, LevelMap), to: &(Levels, LevelMap), theta: &[usize], n: usize) -> LevelMap {
    let top = from.0.top().min(to.0.top());
    let d = delta_map(theta, n, top);
    let images = (0..=top)
        .map(|dim| {
            let mut img = vec![u32::MAX; from.0.count(dim)];
            for (s, &c) in from.1.images[dim].iter().enumerate() {
                if img[c as usize] == u32::MAX {
                    img[c as usize] = to.1.apply(dim, d.apply(dim, s)) as u32;
                }
            }
            img
        })
        .collect();
    LevelMap { images }
}

/// What a bounded comparison of two simplicial sets established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCertificate {
    pub pi0_bijective: bool,
    /// The map is certified a homology isomorphism through this degree.
    pub homology_through: Option<usize>,
    /// `None` when π₁ was not compared (not reduced, or not enumerated in budget).
    pub pi1_iso: Option<bool>,
    pub verified_bound: usize,
}

impl EquivalenceCertificate {
    /// Every check run succeeded through the bound.
    pub fn is_full(&self) -> bool {
        self.pi0_bijective && self.homology_through == Some(self.verified_bound) && self.pi1_iso != Some(false)
    }

    /// Certificate for a map `f: X -> Y` of level tables, with homology through `bound`.
    pub fn for_map(x: &Levels, y: &Levels, f: &LevelMap, bound: usize) -> Result<EquivalenceCertificate> {
        let pi0_bijective = f.pi0_bijection(x, y).is_some();
        if certifiable_degree(x, y).is_none_or(|d| d < bound) {
            return Err(Error::Truncated {
                what: "equivalence certificate".into(),
                needed: bound + 2,
                available: x.top().min(y.top()),
            });
        }
        let homology_through = homology_iso_through(&x.normalize()?, &y.normalize()?, f, bound)?;
        Ok(EquivalenceCertificate {
            pi0_bijective,
            homology_through,
            pi1_iso: None,
            verified_bound: bound,
        })
    }
}

/// The counit comparison `d(Ω*X) -> X` for reduced `X`.
#[derive(Clone, Debug)]
pub struct CounitComparison {
    pub diagonal: Levels,
    /// `X` as level tables through one more dimension than the diagonal.
    pub target: Levels,
    pub map: LevelMap,
    pub certificate: EquivalenceCertificate,
    pub warnings: Vec<String>,
}

/// Builds `d(Ω*X) -> X` through dimension `dim` (a `p`-simplex, a pointed map
/// `Δ^p_* × Δ^p -> X`, goes to its value on the diagonal `p`-simplex) and certifies it
/// through homological degree `dim - 1`, plus π₁ when both groups enumerate.
pub fn counit_compare(x: &SimplicialSet, dim: usize, budget: u64) -> Result<CounitComparison> {
    if !x.is_reduced() {
        return Err(Error::NotReduced(format!(
            "{} vertices; collapse a maximal tree or the vertices first",
            x.count(0)
        )));
    }
    let lp = loops(x, 0, dim, dim, budget)?;
    let diagonal = lp.space.diagonal();
    let ex = Expanded::new(x, dim + 1)?;
    let images = (0..=dim)
        .map(|p| {
            let sp = &lp.maps[p];
            let (cl, q) = &lp.collapsed[p];
            let seqs = monotone_sequences(p, p);
            let top_simplex = seqs.iter().position(|s| s.iter().enumerate().all(|(i, &v)| v == i)).expect("identity");
            let a = q.apply(p, top_simplex);
            debug_assert!(a < cl.count(p));
            let t = sp.levels_by_p[p].total(p, a, top_simplex);
            (0..sp.levels_by_p[p].maps.len())
                .map(|f| {
                    let v = sp.eval_total(p, f, p, t)?;
                    Ok(ex.lookup(&sp.target.simplices[p][v]) as u32)
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let map = LevelMap { images };
    map.check_simplicial(&diagonal, &ex.levels)?;
    let bound = dim.saturating_sub(1);
    let mut certificate = EquivalenceCertificate::for_map(&diagonal, &ex.levels, &map, bound)?;
    if dim >= 2 {
        let dn = diagonal.normalize()?;
        let xn = ex.levels.normalize()?;
        let edge_images: Vec<Option<usize>> = dn.base_index[1]
            .iter()
            .map(|&t| {
                let s = &xn.normal_forms[1][map.apply(1, t)];
                (!s.is_degenerate()).then_some(s.base)
            })
            .collect();
        certificate.pi1_iso = induced_iso(&dn.set, &xn.set, &edge_images, budget)?;
    }
    Ok(CounitComparison {
        diagonal,
        target: ex.levels,
        map,
        certificate,
        warnings: lp.space.warnings.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::collapsed_simplex;
    use crate::group::FiniteGroup;
    use crate::iso::iso_search;
    use crate::sgroup::nerve_of_group;

    fn constant(g: &FiniteGroup, top: usize) -> FiniteSimplicialGroup {
        FiniteSimplicialGroup::constant(g, top)
    }

    #[test]
    fn trivial_diagonal_is_a_point() {
        assert!(PreDeltaSpace::trivial(3, 3).is_trivial());
        let d = PreDeltaSpace::trivial(3, 3).diagonal().normalize().unwrap().set;
        assert_eq!(d.counts(), vec![1]);
        let t = j_embed(&FiniteSimplicialGroup::trivial(3), 3);
        assert_eq!(*t, *PreDeltaSpace::trivial(3, 3));
    }

    #[test]
    fn j_levels_and_diagonal() {
        let z2 = FiniteGroup::cyclic(2);
        let a = j_embed(&constant(&z2, 4), 4);
        for m in 0..=4 {
            assert!(a.level(m).counts().iter().all(|&c| c == 1 << m));
        }
        let d = a.diagonal();
        assert_eq!(d.counts(), &[1, 2, 4, 8, 16]);
        let dn = d.normalize().unwrap().set;
        let nerve = nerve_of_group(&z2, 4).normalize().unwrap().set;
        assert!(iso_search(&dn, &nerve, 1_000_000).unwrap().is_some());
        let s3 = j_embed(&constant(&FiniteGroup::symmetric(3), 3), 3);
        assert_eq!(s3.diagonal().counts(), &[1, 6, 36, 216]);
    }

    #[test]
    fn segal_maps_of_j_are_isos() {
        let a = j_embed(&constant(&FiniteGroup::symmetric(3), 3), 3);
        for m in 0..=3 {
            assert_eq!(segal_check(&a, m, 0).unwrap().verdict, SegalVerdict::Iso);
        }
    }

    #[test]
    fn degenerate_only_level_two_fails() {
        let circle = collapsed_simplex(1, 4).0;
        let a = PreDeltaSpace::discrete(&circle, 3, 2).unwrap();
        assert_eq!(a.level(2).count(0), 3);
        let r = segal_check(&a, 2, 0).unwrap();
        assert_eq!(r.verdict, SegalVerdict::Failed);
        assert!(!r.pi0_bijective);
        assert!(matches!(pi0_structure(&a), Err(Error::Undefined(_))));
    }

    #[test]
    fn pi0_monoids() {
        let z3 = pi0_structure(&j_embed(&constant(&FiniteGroup::cyclic(3), 2), 2)).unwrap();
        assert_eq!(z3.order(), 3);
        assert!(z3.is_group);
        let m = FiniteCategory::monoid(&[vec![0, 0], vec![0, 1]], None).unwrap();
        let a = nerve_of_monoid(&m, 3, 2).unwrap();
        let s = pi0_structure(&a).unwrap();
        assert_eq!(s.order(), 2);
        assert!(!s.is_group);
        assert_eq!(segal_check(&a, 3, 0).unwrap().verdict, SegalVerdict::Iso);
    }

    fn nerve(g: &FiniteGroup, dim: usize) -> SimplicialSet {
        nerve_of_group(g, dim).normalize().unwrap().set
    }

    #[test]
    fn loops_of_a_point_are_trivial() {
        let l = loops(&SimplicialSet::point(), 0, 3, 2, 1_000_000).unwrap();
        assert!(l.space.is_trivial());
        assert!(l.space.warnings.is_empty());
    }

    #[test]
    fn loops_of_nerves() {
        let s3 = nerve(&FiniteGroup::symmetric(3), 4);
        let l = loops(&s3, 0, 2, 1, 10_000_000).unwrap();
        assert_eq!(l.space.level(1).count(0), 6);
        let z2 = nerve(&FiniteGroup::cyclic(2), 4);
        let l = loops(&z2, 0, 2, 1, 10_000_000).unwrap();
        assert_eq!(l.space.level(1).components().1, 2);
        let s = pi0_structure(&l.space).unwrap();
        assert_eq!(s.order(), 2);
        assert!(s.is_group);
    }

    #[test]
    fn counit_on_point_and_z2() {
        let c = counit_compare(&SimplicialSet::point(), 2, 1_000_000).unwrap();
        assert!(c.certificate.is_full());
        let c = counit_compare(&nerve(&FiniteGroup::cyclic(2), 5), 2, 10_000_000).unwrap();
        assert!(c.certificate.pi0_bijective);
        assert_eq!(c.certificate.homology_through, Some(1));
        assert_eq!(c.certificate.pi1_iso, Some(true));
    }

    #[test]
    fn counit_on_s3() {
        let c = counit_compare(&nerve(&FiniteGroup::symmetric(3), 7), 3, 100_000_000).unwrap();
        assert_eq!(c.certificate.homology_through, Some(2));
        assert!(c.certificate.is_full());
        assert_eq!(c.certificate.pi1_iso, Some(true));
    }
}
