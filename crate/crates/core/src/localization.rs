//! Bounded localization of finite relative categories: zig-zag classes presenting
//! `W⁻¹C`, reduced hammocks presenting the mapping spaces of the simplicial
//! localization, and the natural-transformation criterion for inverse localized functors.
//!
//! Zig-zags are kept in normal form: no identity letters, forward and backward letters
//! alternate. Both enumerations are cut at a length bound and report whether the counts
//! were stable under raising it by one.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{check_natural, FiniteCategory, Functor, Morphism};
use crate::error::{Error, Result};
use crate::levels::Levels;
use crate::sset::SimplicialSet;
use crate::util::{Map, UnionFind};

/// A finite category with a subcategory `W` of marked morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCategory {
    pub category: FiniteCategory,
    marked: Vec<bool>,
}

impl RelativeCategory {
    /// Identities are added to `W`; `W` must be closed under composition.
    pub fn new(category: FiniteCategory, marked: &[usize]) -> Result<RelativeCategory> {
        let mut w = vec![false; category.morphism_count()];
        for &f in marked {
            *w.get_mut(f)
                .ok_or_else(|| Error::InvalidCategory(format!("marked morphism {f} does not exist")))? = true;
        }
        for x in 0..category.object_count() {
            w[category.identity(x)] = true;
        }
        for (f, g, h) in category.composites() {
            if w[f] && w[g] && !w[h] {
                return Err(Error::InvalidCategory(format!(
                    "W is not closed under composition: {} then {}",
                    category.morphisms[f].name, category.morphisms[g].name
                )));
            }
        }
        Ok(RelativeCategory { category, marked: w })
    }

    /// `W` = identities.
    pub fn minimal(category: FiniteCategory) -> RelativeCategory {
        RelativeCategory::new(category, &[]).expect("identities form a subcategory")
    }

    /// `W` = isomorphisms.
    pub fn isomorphisms(category: FiniteCategory) -> RelativeCategory {
        let isos = category.isomorphisms();
        RelativeCategory::new(category, &isos).expect("isomorphisms form a subcategory")
    }

    #[inline]
    pub fn in_w(&self, f: usize) -> bool {
        self.marked[f]
    }

    pub fn marked(&self) -> Vec<usize> {
        (0..self.marked.len()).filter(|&f| self.marked[f]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Forward(usize),
    /// A morphism of `W` traversed from its target to its source.
    Backward(usize),
}

/// A zig-zag from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZigZag {
    pub source: usize,
    pub target: usize,
    pub letters: Vec<Letter>,
}

impl ZigZag {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn render(&self, c: &FiniteCategory) -> String {
        if self.letters.is_empty() {
            return format!("id_{}", c.objects[self.source]);
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match *l {
                Letter::Forward(f) => c.morphisms[f].name.clone(),
                Letter::Backward(w) => format!("{}^-1", c.morphisms[w].name),
            })
            .collect();
        parts.join(" ")
    }
}

fn ends(c: &FiniteCategory, l: Letter) -> (usize, usize) {
    match l {
        Letter::Forward(f) => (c.source(f), c.target(f)),
        Letter::Backward(w) => (c.target(w), c.source(w)),
    }
}

/// Drops identity letters and merges neighbours of the same direction.
pub fn normalize(c: &FiniteCategory, letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        let l = match (out.last().copied(), l) {
            (Some(Letter::Forward(f)), Letter::Forward(g)) => {
                out.pop();
                Letter::Forward(c.then(f, g).expect("composable"))
            }
            (Some(Letter::Backward(u)), Letter::Backward(v)) => {
                out.pop();
                Letter::Backward(c.then(v, u).expect("composable"))
            }
            _ => l,
        };
        let id = match l {
            Letter::Forward(f) | Letter::Backward(f) => c.is_identity(f),
        };
        if !id {
            out.push(l);
        }
    }
    out
}

/// Normal-form zig-zags up to a length, with the congruence they generate.
struct Congruence<'a> {
    rc: &'a RelativeCategory,
    words: Vec<ZigZag>,
    index: Map<(usize, Vec<Letter>), usize>,
    class: Vec<usize>,
}

impl<'a> Congruence<'a> {
    fn new(rc: &'a RelativeCategory, bound: usize) -> Congruence<'a> {
        let c = &rc.category;
        let mut words = Vec::new();
        for x in 0..c.object_count() {
            let mut stack = vec![(x, Vec::<Letter>::new())];
            while let Some((at, w)) = stack.pop() {
                words.push(ZigZag {
                    source: x,
                    target: at,
                    letters: w.clone(),
                });
                if w.len() == bound {
                    continue;
                }
                let last = w.last().copied();
                for f in 0..c.morphism_count() {
                    if c.is_identity(f) {
                        continue;
                    }
                    if c.source(f) == at && !matches!(last, Some(Letter::Forward(_))) {
                        let mut v = w.clone();
                        v.push(Letter::Forward(f));
                        stack.push((c.target(f), v));
                    }
                    if rc.in_w(f) && c.target(f) == at && !matches!(last, Some(Letter::Backward(_))) {
                        let mut v = w.clone();
                        v.push(Letter::Backward(f));
                        stack.push((c.source(f), v));
                    }
                }
            }
        }
        words.sort();
        let index: Map<(usize, Vec<Letter>), usize> = words
            .iter()
            .enumerate()
            .map(|(i, z)| ((z.source, z.letters.clone()), i))
            .collect();
        // W-factorizations u = a ; b
        let factor: Vec<Vec<(usize, usize)>> = (0..c.morphism_count())
            .map(|u| {
                let mut v = Vec::new();
                if rc.in_w(u) {
                    for b in 0..c.morphism_count() {
                        if !rc.in_w(b) || c.target(b) != c.target(u) {
                            continue;
                        }
                        for a in c.hom(c.source(u), c.source(b)) {
                            if rc.in_w(a) && c.then(a, b) == Some(u) {
                                v.push((a, b));
                            }
                        }
                    }
                }
                v
            })
            .collect();
        let mut uf = UnionFind::new(words.len());
        for (i, z) in words.iter().enumerate() {
            // the word itself, and with an identity letter inserted at each gap, so that
            // blocks which composed to an identity can still take part in a move
            let mut variants = vec![z.letters.clone()];
            let mut at = z.source;
            for q in 0..=z.len() {
                for l in [Letter::Forward(c.identity(at)), Letter::Backward(c.identity(at))] {
                    let mut v = z.letters.clone();
                    v.insert(q, l);
                    variants.push(v);
                }
                if q < z.len() {
                    at = ends(c, z.letters[q]).1;
                }
            }
            for l in &variants {
                for p in 0..l.len().saturating_sub(1) {
                    let mut replace = |pair: [Letter; 2]| {
                        let mut v = l[..p].to_vec();
                        v.extend_from_slice(&pair);
                        v.extend_from_slice(&l[p + 2..]);
                        if let Some(&j) = index.get(&(z.source, normalize(c, &v))) {
                            uf.union(i, j);
                        }
                    };
                    match (l[p], l[p + 1]) {
                        // f u⁻¹ with u = a;b and f = h;b  ~  h a⁻¹
                        (Letter::Forward(f), Letter::Backward(u)) => {
                            for &(a, b) in &factor[u] {
                                for h in c.hom(c.source(f), c.source(b)) {
                                    if c.then(h, b) == Some(f) {
                                        replace([Letter::Forward(h), Letter::Backward(a)]);
                                    }
                                }
                            }
                        }
                        // u⁻¹ f with u = a;b and f = a;h  ~  b⁻¹ h
                        (Letter::Backward(u), Letter::Forward(f)) => {
                            for &(a, b) in &factor[u] {
                                for h in c.hom(c.target(a), c.target(f)) {
                                    if c.then(a, h) == Some(f) {
                                        replace([Letter::Backward(b), Letter::Forward(h)]);
                                    }
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
        let (class, _) = uf.classes();
        Congruence { rc, words, index, class }
    }

    fn class_of(&self, source: usize, letters: &[Letter]) -> Option<usize> {
        let v = normalize(&self.rc.category, letters);
        self.index.get(&(source, v)).map(|&i| self.class[i])
    }
}

/// The localized category at one length bound.
#[derive(Clone, Debug)]
pub struct Localization {
    /// `None` when some composite could not be resolved within the bound.
    pub category: Option<FiniteCategory>,
    /// Shortest representative of each morphism class, in the order of `hom_counts`.
    pub representatives: Vec<ZigZag>,
    pub hom_counts: Vec<Vec<usize>>,
    /// The localization functor `C -> W⁻¹C`, when `category` is present.
    pub functor: Option<Functor>,
    pub length_bound: usize,
    /// Counts agree with those at `length_bound + 1` and composition closed.
    pub stabilized: bool,
    class_to_morphism: Map<usize, usize>,
    congruence_bound: usize,
}

impl Localization {
    /// The localized morphism represented by a zig-zag, if resolvable at this bound.
    pub fn morphism_of(&self, rc: &RelativeCategory, z: &ZigZag) -> Option<usize> {
        let cong = Congruence::new(rc, self.congruence_bound);
        cong.class_of(z.source, &z.letters)
            .and_then(|k| self.class_to_morphism.get(&k).copied())
    }
}

fn localize_at(rc: &RelativeCategory, bound: usize) -> Localization {
    let c = &rc.category;
    let ebound = (2 * bound).max(1);
    let cong = Congruence::new(rc, ebound);
    let n = c.object_count();
    // shortest representative per class, among words within the bound
    let mut best: Map<usize, usize> = Map::new();
    for (i, z) in cong.words.iter().enumerate() {
        if z.len() > bound {
            continue;
        }
        let k = cong.class[i];
        let e = best.entry(k).or_insert(i);
        let cur = &cong.words[*e];
        if (z.len(), &z.letters) < (cur.len(), &cur.letters) {
            *e = i;
        }
    }
    let mut reps: Vec<(usize, usize)> = best.iter().map(|(&k, &i)| (k, i)).collect();
    reps.sort_by(|a, b| {
        let (za, zb) = (&cong.words[a.1], &cong.words[b.1]);
        (za.source, za.target, za.len(), &za.letters).cmp(&(zb.source, zb.target, zb.len(), &zb.letters))
    });
    let class_to_morphism: Map<usize, usize> = reps.iter().enumerate().map(|(m, &(k, _))| (k, m)).collect();
    let representatives: Vec<ZigZag> = reps.iter().map(|&(_, i)| cong.words[i].clone()).collect();
    let mut hom_counts = vec![vec![0; n]; n];
    for z in &representatives {
        hom_counts[z.source][z.target] += 1;
    }
    let lookup = |source: usize, letters: &[Letter]| -> Option<usize> {
        cong.class_of(source, letters).and_then(|k| class_to_morphism.get(&k).copied())
    };
    let mut composites = Vec::new();
    let mut closed = true;
    for (a, za) in representatives.iter().enumerate() {
        for (b, zb) in representatives.iter().enumerate() {
            if za.target != zb.source {
                continue;
            }
            let mut w = za.letters.clone();
            w.extend_from_slice(&zb.letters);
            match lookup(za.source, &w) {
                Some(h) => composites.push((a, b, h)),
                None => closed = false,
            }
        }
    }
    let mut category = None;
    let mut functor = None;
    if closed {
        let morphisms = representatives
            .iter()
            .map(|z| Morphism {
                name: z.render(c),
                source: z.source,
                target: z.target,
            })
            .collect();
        let identities: Vec<usize> = (0..n).map(|x| lookup(x, &[]).expect("empty word")).collect();
        if let Ok(cat) = FiniteCategory::new(c.objects.clone(), morphisms, identities, &composites) {
            let f = Functor {
                objects: (0..n).collect(),
                morphisms: (0..c.morphism_count())
                    .map(|f| lookup(c.source(f), &[Letter::Forward(f)]).expect("single letter"))
                    .collect(),
            };
            if f.validate(c, &cat).is_ok() {
                functor = Some(f);
                category = Some(cat);
            }
        }
    }
    Localization {
        category,
        representatives,
        hom_counts,
        functor,
        length_bound: bound,
        stabilized: false,
        class_to_morphism,
        congruence_bound: ebound,
    }
}

/// `W⁻¹C` from zig-zags of length at most `length_bound`, with the congruence checked on
/// zig-zags of twice that length.
pub fn ho_localize(rc: &RelativeCategory, length_bound: usize) -> Localization {
    let mut a = localize_at(rc, length_bound);
    let b = localize_at(rc, length_bound + 1);
    a.stabilized = a.category.is_some() && b.category.is_some() && a.hom_counts == b.hom_counts;
    a
}

/// Raises the bound from 1 until the counts stabilize or `max_bound` is reached.
pub fn ho_localize_until_stable(rc: &RelativeCategory, max_bound: usize) -> Localization {
    let mut l = 1;
    loop {
        let loc = ho_localize(rc, l);
        if loc.stabilized || l >= max_bound {
            return loc;
        }
        l += 1;
    }
}

/// Rows of zig-zags with common column directions, vertical maps in `W` going down,
/// commuting squares, endpoints fixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hammock {
    pub forward: Vec<bool>,
    /// `objects[r][j]`, nodes `0..=n` of row `r`.
    pub objects: Vec<Vec<usize>>,
    /// `horizontal[r][j]` between nodes `j` and `j + 1`.
    pub horizontal: Vec<Vec<usize>>,
    /// `vertical[r][j]` from row `r` to row `r + 1`.
    pub vertical: Vec<Vec<usize>>,
}

impl Hammock {
    pub fn width(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn length(&self) -> usize {
        self.forward.len()
    }

    fn remove_node(&mut self, j: usize) {
        for r in &mut self.objects {
            r.remove(j);
        }
        for v in &mut self.vertical {
            v.remove(j);
        }
    }

    /// Drops all-identity columns and merges neighbouring columns of the same direction.
    fn reduce(mut self, c: &FiniteCategory) -> Hammock {
        loop {
            let n = self.length();
            if let Some(j) = (0..n).find(|&j| self.horizontal.iter().all(|h| c.is_identity(h[j]))) {
                self.forward.remove(j);
                for h in &mut self.horizontal {
                    h.remove(j);
                }
                self.remove_node(if j + 1 < n { j + 1 } else { j });
                continue;
            }
            if let Some(j) = (0..n.saturating_sub(1)).find(|&j| self.forward[j] == self.forward[j + 1]) {
                let fw = self.forward[j];
                for h in &mut self.horizontal {
                    let (a, b) = (h[j], h[j + 1]);
                    h[j] = if fw { c.then(a, b) } else { c.then(b, a) }.expect("composable");
                    h.remove(j + 1);
                }
                self.forward.remove(j + 1);
                self.remove_node(j + 1);
                continue;
            }
            return self;
        }
    }

    fn is_reduced(&self, c: &FiniteCategory) -> bool {
        (0..self.length()).all(|j| !self.horizontal.iter().all(|h| c.is_identity(h[j])))
            && self.forward.windows(2).all(|w| w[0] != w[1])
    }

    fn face(&self, c: &FiniteCategory, i: usize) -> Hammock {
        let k = self.width();
        let mut h = self.clone();
        h.objects.remove(i);
        h.horizontal.remove(i);
        if i == 0 {
            h.vertical.remove(0);
        } else if i == k {
            h.vertical.remove(k - 1);
        } else {
            let below = h.vertical.remove(i);
            for (v, b) in h.vertical[i - 1].iter_mut().zip(below) {
                *v = c.then(*v, b).expect("composable");
            }
        }
        h.reduce(c)
    }

    fn degen(&self, c: &FiniteCategory, i: usize) -> Hammock {
        let mut h = self.clone();
        h.objects.insert(i + 1, self.objects[i].clone());
        h.horizontal.insert(i + 1, self.horizontal[i].clone());
        h.vertical.insert(i, self.objects[i].iter().map(|&x| c.identity(x)).collect());
        h
    }
}

/// A single zig-zag row in a given direction pattern, as objects and maps.
fn rows(rc: &RelativeCategory, x: usize, y: usize, forward: &[bool]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let c = &rc.category;
    let n = forward.len();
    let mut out = Vec::new();
    let mut stack = vec![(vec![x], Vec::<usize>::new())];
    while let Some((objs, maps)) = stack.pop() {
        let j = maps.len();
        let at = objs[j];
        if j == n {
            if at == y {
                out.push((objs, maps));
            }
            continue;
        }
        for f in 0..c.morphism_count() {
            let next = if forward[j] {
                (c.source(f) == at).then(|| c.target(f))
            } else {
                (rc.in_w(f) && c.target(f) == at).then(|| c.source(f))
            };
            if let Some(b) = next {
                if j + 1 == n && b != y {
                    continue;
                }
                let mut o = objs.clone();
                o.push(b);
                let mut m = maps.clone();
                m.push(f);
                stack.push((o, m));
            }
        }
    }
    out.sort();
    out
}

/// All rows below `(objs, maps)` joined to it by `W`-verticals with commuting squares.
fn rows_below(
    rc: &RelativeCategory,
    forward: &[bool],
    objs: &[usize],
    maps: &[usize],
) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let c = &rc.category;
    let n = forward.len();
    let mut out = Vec::new();
    let id0 = c.identity(objs[0]);
    let mut stack = vec![(vec![objs[0]], Vec::<usize>::new(), vec![id0])];
    while let Some((o, m, v)) = stack.pop() {
        let j = m.len();
        if j == n {
            out.push((o, m, v));
            continue;
        }
        // node j + 1: vertical from objs[j + 1], fixed to the identity at the end
        let verts: Vec<usize> = if j + 1 == n {
            vec![c.identity(objs[n])]
        } else {
            (0..c.morphism_count())
                .filter(|&u| rc.in_w(u) && c.source(u) == objs[j + 1])
                .collect()
        };
        for u in verts {
            let b = c.target(u);
            for h in 0..c.morphism_count() {
                let ok = if forward[j] {
                    c.source(h) == o[j]
                        && c.target(h) == b
                        && c.then(v[j], h) == c.then(maps[j], u)
                } else {
                    rc.in_w(h)
                        && c.source(h) == b
                        && c.target(h) == o[j]
                        && c.then(u, h) == c.then(maps[j], v[j])
                };
                if ok {
                    let (mut o2, mut m2, mut v2) = (o.clone(), m.clone(), v.clone());
                    o2.push(b);
                    m2.push(h);
                    v2.push(u);
                    stack.push((o2, m2, v2));
                }
            }
        }
    }
    out.sort();
    out
}

/// Reduced hammocks from `x` to `y` of length at most `length_bound`, by width.
pub fn reduced_hammocks(rc: &RelativeCategory, x: usize, y: usize, length_bound: usize, width: usize) -> Vec<Hammock> {
    let c = &rc.category;
    let mut out = Vec::new();
    for n in 0..=length_bound {
        let patterns: Vec<Vec<bool>> = if n == 0 {
            if x == y {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        } else {
            [true, false]
                .iter()
                .map(|&s| (0..n).map(|j| (j % 2 == 0) == s).collect())
                .collect()
        };
        for forward in patterns {
            let mut partial: Vec<Hammock> = rows(rc, x, y, &forward)
                .into_iter()
                .map(|(o, m)| Hammock {
                    forward: forward.clone(),
                    objects: vec![o],
                    horizontal: vec![m],
                    vertical: Vec::new(),
                })
                .collect();
            for _ in 0..width {
                let mut next = Vec::new();
                for h in &partial {
                    let r = h.objects.len() - 1;
                    for (o, m, v) in rows_below(rc, &forward, &h.objects[r], &h.horizontal[r]) {
                        let mut h2 = h.clone();
                        h2.objects.push(o);
                        h2.horizontal.push(m);
                        h2.vertical.push(v);
                        next.push(h2);
                    }
                }
                partial = next;
            }
            out.extend(partial.into_iter().filter(|h| h.is_reduced(c)));
        }
    }
    out.sort();
    out
}

/// The hammock space `L(C, W)(x, y)` restricted to length at most `length_bound`,
/// through dimension `dim_bound`.
#[derive(Clone, Debug)]
pub struct HammockSpace {
    pub levels: Levels,
    pub set: SimplicialSet,
    /// `simplices[k][i]` is the hammock behind simplex `i` of level `k`.
    pub simplices: Vec<Vec<Hammock>>,
    pub length_bound: usize,
}

pub fn hammock_space(rc: &RelativeCategory, x: usize, y: usize, length_bound: usize, dim_bound: usize) -> Result<HammockSpace> {
    let c = &rc.category;
    let simplices: Vec<Vec<Hammock>> = (0..=dim_bound)
        .map(|k| reduced_hammocks(rc, x, y, length_bound, k))
        .collect();
    let index: Vec<Map<&Hammock, usize>> = simplices
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, h)| (h, i)).collect())
        .collect();
    let counts = simplices.iter().map(|l| l.len()).collect();
    let missing = core::cell::Cell::new(false);
    let look = |k: usize, h: &Hammock| -> usize {
        index[k].get(h).copied().unwrap_or_else(|| {
            missing.set(true);
            0
        })
    };
    let levels = Levels::build(
        counts,
        false,
        |k, i, j| look(k - 1, &simplices[k][i].face(c, j)),
        |k, i, j| look(k + 1, &simplices[k][i].degen(c, j)),
    );
    drop(index);
    if missing.get() {
        return Err(Error::InvalidCategory("hammock face or degeneracy left the enumerated set".into()));
    }
    levels.check_identities()?;
    let set = levels.normalize()?.set;
    Ok(HammockSpace {
        levels,
        set,
        simplices,
        length_bound,
    })
}

/// π₀ of the hammock space against the localized hom-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi0Comparison {
    pub hammock_components: usize,
    /// Length bound at which the hammock components were counted.
    pub hammock_length: usize,
    pub localized_homs: usize,
    /// Components map bijectively onto localized morphisms (via their vertices).
    pub bijective: bool,
    /// The localization stabilized and the component count agreed at three consecutive
    /// lengths starting from the congruence bound. Hammock π₀ can plateau for several
    /// lengths before merging, so this is evidence and not proof.
    pub stabilized: bool,
}

pub fn compare_pi0(rc: &RelativeCategory, loc: &Localization, x: usize, y: usize) -> Result<Pi0Comparison> {
    let lh = loc.congruence_bound;
    let comps = |len: usize| -> Result<(Vec<Hammock>, Vec<usize>, usize)> {
        let hs = hammock_space(rc, x, y, len, 1)?;
        let (comp, k) = hs.levels.components();
        Ok((hs.simplices.into_iter().next().unwrap_or_default(), comp, k))
    };
    let (vertices, comp, k) = comps(lh)?;
    let stable_h = comps(lh + 1)?.2 == k && comps(lh + 2)?.2 == k;
    let cong = Congruence::new(rc, loc.congruence_bound);
    let mut image: Vec<Option<usize>> = vec![None; k];
    let mut ok = loc.category.is_some();
    for (v, h) in vertices.iter().enumerate() {
        let letters: Vec<Letter> = h.horizontal[0]
            .iter()
            .zip(&h.forward)
            .map(|(&f, &fw)| if fw { Letter::Forward(f) } else { Letter::Backward(f) })
            .collect();
        let m = cong
            .class_of(x, &letters)
            .and_then(|cl| loc.class_to_morphism.get(&cl).copied());
        match (image[comp[v]], m) {
            (_, None) => ok = false,
            (None, Some(m)) => image[comp[v]] = Some(m),
            (Some(a), Some(b)) if a != b => ok = false,
            _ => {}
        }
    }
    let localized = loc.hom_counts[x][y];
    let mut hit: Vec<usize> = image.iter().flatten().copied().collect();
    hit.sort_unstable();
    hit.dedup();
    let bijective = ok && hit.len() == k && k == localized;
    Ok(Pi0Comparison {
        hammock_components: k,
        hammock_length: lh,
        localized_homs: localized,
        bijective,
        stabilized: loc.stabilized && stable_h,
    })
}

/// Components of a natural transformation between an identity functor and a composite
/// `G∘F`, in either direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformation {
    pub components: Vec<usize>,
    /// `id => G∘F` when true, `G∘F => id` otherwise.
    pub from_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DkVerdict {
    /// Hypotheses hold and the localized functors were confirmed mutually inverse up to
    /// natural isomorphism at the given bound.
    Holds { length_bound: usize },
    HypothesisViolated(String),
    /// Hypotheses hold but a localization did not stabilize within the bound.
    Unconfirmed(String),
    /// Hypotheses hold, the localizations stabilized, and the confirmation failed.
    Refuted(String),
}

fn check_hypotheses(
    c: &RelativeCategory,
    d: &RelativeCategory,
    f: &Functor,
    g: &Functor,
    t: &Transformation,
    label: &str,
) -> Option<String> {
    let cc = &c.category;
    let gf = f.then(g);
    let id = Functor::identity(cc);
    let (from, to) = if t.from_identity { (&id, &gf) } else { (&gf, &id) };
    if t.components.len() != cc.object_count() {
        return Some(format!("{label} needs one component per object"));
    }
    if let Err(h) = check_natural(cc, cc, from, to, &t.components) {
        return Some(format!("{label} is not natural at {}", cc.morphisms[h].name));
    }
    if let Some(x) = (0..cc.object_count()).find(|&x| !c.in_w(t.components[x])) {
        return Some(format!("{label} component at {} is not in W", cc.objects[x]));
    }
    if let Some(h) = (0..cc.morphism_count()).find(|&h| c.in_w(h) && !d.in_w(f.morphisms[h])) {
        return Some(format!("functor sends {} outside W", cc.morphisms[h].name));
    }
    None
}

/// Induced functor on localizations, by mapping representatives letter by letter.
fn localized_functor(
    lc: &Localization,
    d: &RelativeCategory,
    ld: &Localization,
    f: &Functor,
) -> Option<Functor> {
    let cong = Congruence::new(d, ld.congruence_bound);
    let morphisms = lc
        .representatives
        .iter()
        .map(|z| {
            let letters: Vec<Letter> = z
                .letters
                .iter()
                .map(|l| match *l {
                    Letter::Forward(h) => Letter::Forward(f.morphisms[h]),
                    Letter::Backward(w) => Letter::Backward(f.morphisms[w]),
                })
                .collect();
            cong.class_of(f.objects[z.source], &letters)
                .and_then(|k| ld.class_to_morphism.get(&k).copied())
        })
        .collect::<Option<Vec<usize>>>()?;
    let lf = Functor {
        objects: f.objects.clone(),
        morphisms,
    };
    lf.validate(lc.category.as_ref()?, ld.category.as_ref()?).ok()?;
    Some(lf)
}

fn confirm(lc: &Localization, lf: &Functor, lg: &Functor, t: &Transformation) -> bool {
    let cat = lc.category.as_ref().expect("checked");
    let fc = lc.functor.as_ref().expect("checked");
    let comps: Vec<usize> = t.components.iter().map(|&a| fc.morphisms[a]).collect();
    let gf = lf.then(lg);
    let id = Functor::identity(cat);
    let (from, to) = if t.from_identity { (&id, &gf) } else { (&gf, &id) };
    check_natural(cat, cat, from, to, &comps).is_ok() && comps.iter().all(|&a| cat.inverse_of(a).is_some())
}

/// The criterion for `LF`, `LG` to be inverse: `F`, `G` preserve marked maps and there
/// are natural transformations between `G∘F`, `F∘G` and the identities whose
/// components are marked. The hypotheses are checked exhaustively; the conclusion is then
/// confirmed on the bounded localizations.
pub fn dk_inverse_check(
    c: &RelativeCategory,
    d: &RelativeCategory,
    f: &Functor,
    g: &Functor,
    eta: &Transformation,
    eps: &Transformation,
    length_bound: usize,
) -> Result<DkVerdict> {
    f.validate(&c.category, &d.category)?;
    g.validate(&d.category, &c.category)?;
    if let Some(r) = check_hypotheses(c, d, f, g, eta, "η") {
        return Ok(DkVerdict::HypothesisViolated(r));
    }
    if let Some(r) = check_hypotheses(d, c, g, f, eps, "ε") {
        return Ok(DkVerdict::HypothesisViolated(r));
    }
    let lc = ho_localize(c, length_bound);
    let ld = ho_localize(d, length_bound);
    if !lc.stabilized || !ld.stabilized {
        return Ok(DkVerdict::Unconfirmed(format!(
            "localization not stable at length {length_bound}"
        )));
    }
    let (lf, lg) = match (localized_functor(&lc, d, &ld, f), localized_functor(&ld, c, &lc, g)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(DkVerdict::Refuted("induced functor not well defined on classes".into())),
    };
    if !confirm(&lc, &lf, &lg, eta) {
        return Ok(DkVerdict::Refuted("η does not become a natural isomorphism".into()));
    }
    if !confirm(&ld, &lg, &lf, eps) {
        return Ok(DkVerdict::Refuted("ε does not become a natural isomorphism".into()));
    }
    Ok(DkVerdict::Holds { length_bound })
}

/// Relative posets on at most `max_objects` objects: posets up to isomorphism, with
/// every `W` containing the identities and closed under composition.
pub fn relative_poset_catalog(max_objects: usize) -> Vec<RelativeCategory> {
    let mut out = Vec::new();
    for n in 1..=max_objects {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| a != b).map(move |b| (a, b))).collect();
        let perms = crate::util::tuples(n, n)
            .into_iter()
            .filter(|p| {
                let mut s = p.clone();
                s.sort_unstable();
                s.dedup();
                s.len() == n
            })
            .collect::<Vec<_>>();
        let mut seen = crate::util::Set::new();
        for mask in 0u32..(1 << pairs.len()) {
            let rel: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let has = |a: usize, b: usize| rel.contains(&(a, b));
            let transitive = rel.iter().all(|&(a, b)| (0..n).all(|c| !has(b, c) || a == c || has(a, c)));
            let antisymmetric = rel.iter().all(|&(a, b)| !has(b, a));
            if !transitive || !antisymmetric {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut r: Vec<(usize, usize)> = rel.iter().map(|&(a, b)| (p[a], p[b])).collect();
                    r.sort_unstable();
                    r
                })
                .min()
                .expect("nonempty");
            if !seen.insert(canon) {
                continue;
            }
            let poset = FiniteCategory::poset(n, &rel).expect("partial order");
            let arrows: Vec<usize> = (0..poset.morphism_count()).filter(|&f| !poset.is_identity(f)).collect();
            for wmask in 0u32..(1 << arrows.len()) {
                let w: Vec<usize> = (0..arrows.len()).filter(|&i| wmask >> i & 1 == 1).map(|i| arrows[i]).collect();
                if let Ok(rc) = RelativeCategory::new(poset.clone(), &w) {
                    out.push(rc);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(c: &FiniteCategory, a: usize, b: usize) -> usize {
        c.hom(a, b)[0]
    }

    #[test]
    fn trivial_w_gives_the_category() {
        let chain = FiniteCategory::poset(3, &[(0, 1), (1, 2)]).unwrap();
        let loc = ho_localize(&RelativeCategory::minimal(chain.clone()), 2);
        assert!(loc.stabilized);
        let cat = loc.category.unwrap();
        assert_eq!(cat.morphism_count(), chain.morphism_count());
        let f = loc.functor.unwrap();
        f.validate(&chain, &cat).unwrap();
        let mut m = f.morphisms.clone();
        m.sort_unstable();
        m.dedup();
        assert_eq!(m.len(), chain.morphism_count());
    }

    #[test]
    fn interval_and_chain_examples() {
        let i = FiniteCategory::poset(2, &[(0, 1)]).unwrap();
        let rc = RelativeCategory::new(i.clone(), &[arrow(&i, 0, 1)]).unwrap();
        let loc = ho_localize(&rc, 2);
        assert!(loc.stabilized);
        assert_eq!(loc.hom_counts, vec![vec![1, 1], vec![1, 1]]);
        let chain = FiniteCategory::poset(3, &[(0, 1), (1, 2)]).unwrap();
        let rc = RelativeCategory::new(chain.clone(), &[arrow(&chain, 0, 1)]).unwrap();
        let loc = ho_localize(&rc, 2);
        assert!(loc.stabilized);
        assert_eq!(loc.hom_counts[1][0], 1);
        assert_eq!(loc.hom_counts[2][0], 0);
        assert!(RelativeCategory::new(chain.clone(), &[arrow(&chain, 0, 1), arrow(&chain, 1, 2)]).is_err());
    }

    #[test]
    fn isomorphisms_localize_to_the_category() {
        let z2 = FiniteCategory::monoid(&[vec![0, 1], vec![1, 0]], None).unwrap();
        let loc = ho_localize(&RelativeCategory::isomorphisms(z2.clone()), 2);
        assert!(loc.stabilized);
        let f = loc.functor.unwrap();
        let cat = loc.category.unwrap();
        assert_eq!(cat.morphism_count(), 2);
        assert_eq!(f.morphisms, vec![0, 1]);
        f.validate(&z2, &cat).unwrap();
    }

    #[test]
    fn hammock_spaces() {
        let i = FiniteCategory::poset(2, &[(0, 1)]).unwrap();
        let rc = RelativeCategory::new(i.clone(), &[arrow(&i, 0, 1)]).unwrap();
        let hs = hammock_space(&rc, 0, 0, 3, 2).unwrap();
        hs.set.check_identities().unwrap();
        assert_eq!(hs.levels.components().1, 1);
        // W = identities: each map its own component, and nothing backwards
        let chain = FiniteCategory::poset(3, &[(0, 1), (1, 2)]).unwrap();
        let rc = RelativeCategory::minimal(chain);
        assert_eq!(hammock_space(&rc, 0, 2, 3, 2).unwrap().levels.components().1, 1);
        assert_eq!(hammock_space(&rc, 2, 0, 3, 2).unwrap().levels.count(0), 0);
        let z2 = FiniteCategory::monoid(&[vec![0, 1], vec![1, 0]], None).unwrap();
        let hs = hammock_space(&RelativeCategory::minimal(z2), 0, 0, 2, 1).unwrap();
        assert_eq!(hs.levels.components().1, 2);
    }

    #[test]
    fn dk_criterion_on_the_interval() {
        let pt = FiniteCategory::poset(1, &[]).unwrap();
        let i = FiniteCategory::poset(2, &[(0, 1)]).unwrap();
        let a = arrow(&i, 0, 1);
        let c = RelativeCategory::minimal(pt.clone());
        let d = RelativeCategory::new(i.clone(), &[a]).unwrap();
        let incl = Functor {
            objects: vec![0],
            morphisms: vec![i.identity(0)],
        };
        let constant = Functor {
            objects: vec![0, 0],
            morphisms: vec![pt.identity(0); i.morphism_count()],
        };
        let eta = Transformation {
            components: vec![pt.identity(0)],
            from_identity: true,
        };
        let eps = Transformation {
            components: vec![i.identity(0), a],
            from_identity: false,
        };
        let v = dk_inverse_check(&c, &d, &incl, &constant, &eta, &eps, 2).unwrap();
        assert_eq!(v, DkVerdict::Holds { length_bound: 2 });
        // the same data with the arrow unmarked
        let d0 = RelativeCategory::minimal(i.clone());
        let v = dk_inverse_check(&c, &d0, &incl, &constant, &eta, &eps, 2).unwrap();
        assert!(matches!(v, DkVerdict::HypothesisViolated(ref r) if r.contains("not in W")));
        let id = Functor::identity(&i);
        let ids = Transformation {
            components: vec![i.identity(0), i.identity(1)],
            from_identity: true,
        };
        assert_eq!(
            dk_inverse_check(&d, &d, &id, &id, &ids, &ids, 2).unwrap(),
            DkVerdict::Holds { length_bound: 2 }
        );
    }

    #[test]
    fn catalog_pi0_agrees() {
        let cat = relative_poset_catalog(3);
        assert!(cat.len() > 10);
        for rc in &cat {
            let loc = ho_localize_until_stable(rc, 3);
            let n = rc.category.object_count();
            for x in 0..n {
                for y in 0..n {
                    let cmp = compare_pi0(rc, &loc, x, y).unwrap();
                    if cmp.stabilized {
                        assert!(cmp.bijective, "{:?} {x} {y} {cmp:?}", rc.marked());
                    }
                }
            }
        }
    }
}
