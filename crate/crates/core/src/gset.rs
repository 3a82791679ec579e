//! Finite G-sets, equivariant maps, and natural endomorphisms of the forgetful functor.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::presentation::{generator_of, GroupPresentation, Word};

/// A finite set with a left action of a finite group: `action[g][x] = g·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    pub group: FiniteGroup,
    pub names: Vec<String>,
    action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: FiniteGroup, names: Vec<String>, action: Vec<Vec<usize>>) -> Result<GSet> {
        let s = GSet { group, names, action };
        s.validate()?;
        Ok(s)
    }

    /// From permutations of generators `gens` of the group, extended multiplicatively.
    pub fn from_generators(group: FiniteGroup, names: Vec<String>, gens: &[usize], perms: &[Vec<usize>]) -> Result<GSet> {
        let n = names.len();
        let mut action: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        action[0] = Some((0..n).collect());
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for (k, &s) in gens.iter().enumerate() {
                // (s g)·x = s·(g·x)
                let sg = group.mul(s, g);
                let prev = action[g].clone().expect("visited");
                let img: Vec<usize> = prev.iter().map(|&y| perms[k][y]).collect();
                match &action[sg] {
                    Some(a) if *a != img => {
                        return Err(Error::InvalidGroup("generator permutations do not define an action".into()))
                    }
                    Some(_) => {}
                    None => {
                        action[sg] = Some(img);
                        queue.push(sg);
                    }
                }
            }
        }
        let action = action
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidGroup("generators do not generate the group".into()))?;
        GSet::new(group, names, action)
    }

    /// `G/H` with left translation.
    pub fn cosets(group: &FiniteGroup, h: &[usize]) -> GSet {
        let (cosets, _) = group.left_cosets(h);
        let names = cosets
            .iter()
            .map(|c| format!("{}H", group.label(c[0])))
            .collect();
        let action = group.coset_action(h);
        GSet {
            group: group.clone(),
            names,
            action,
        }
    }

    /// `G` acting on itself by left translation.
    pub fn regular(group: &FiniteGroup) -> GSet {
        GSet::cosets(group, &[0])
    }

    pub fn trivial_action(group: &FiniteGroup, n: usize) -> GSet {
        GSet {
            group: group.clone(),
            names: (0..n).map(|i| format!("{i}")).collect(),
            action: vec![(0..n).collect(); group.order()],
        }
    }

    /// One transitive G-set per conjugacy class of subgroups.
    pub fn transitive_catalog(group: &FiniteGroup) -> Vec<GSet> {
        group
            .subgroups_up_to_conjugacy()
            .iter()
            .map(|h| GSet::cosets(group, h))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let n = self.len();
        if self.action.len() != g.order() || self.action.iter().any(|a| a.len() != n || a.iter().any(|&y| y >= n)) {
            return Err(Error::InvalidGroup("malformed action table".into()));
        }
        if self.action[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidGroup("identity acts nontrivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                for x in 0..n {
                    if self.act(g.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return Err(Error::InvalidGroup("action is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Orbit index of each point and the number of orbits.
    pub fn orbits(&self) -> (Vec<usize>, usize) {
        let mut which = vec![usize::MAX; self.len()];
        let mut k = 0;
        for x in 0..self.len() {
            if which[x] == usize::MAX {
                for g in self.group.elements() {
                    which[self.act(g, x)] = k;
                }
                k += 1;
            }
        }
        (which, k)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().1 == 1
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act(g, x) == x).collect()
    }

    pub fn is_equivariant(&self, other: &GSet, f: &[usize]) -> bool {
        f.len() == self.len()
            && self.group.elements().all(|g| (0..self.len()).all(|x| f[self.act(g, x)] == other.act(g, f[x])))
    }

    /// All equivariant maps `self -> other` (same group).
    pub fn equivariant_maps(&self, other: &GSet) -> Vec<Vec<usize>> {
        let (which, k) = self.orbits();
        let reps: Vec<usize> = (0..k).map(|o| which.iter().position(|&w| w == o).expect("orbit")).collect();
        // an orbit representative may go to y iff its stabilizer fixes y
        let options: Vec<Vec<usize>> = reps
            .iter()
            .map(|&r| {
                let st = self.stabilizer(r);
                (0..other.len()).filter(|&y| st.iter().all(|&g| other.act(g, y) == y)).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut pick = vec![0usize; k];
        if options.iter().any(|o| o.is_empty()) {
            return out;
        }
        loop {
            let mut f = vec![usize::MAX; self.len()];
            for (o, &r) in reps.iter().enumerate() {
                let y = options[o][pick[o]];
                for g in self.group.elements() {
                    f[self.act(g, r)] = other.act(g, y);
                }
            }
            out.push(f);
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < options[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
    }

    /// An equivariant bijection `self -> other`, if one exists.
    pub fn isomorphism_to(&self, other: &GSet) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.group != other.group {
            return None;
        }
        self.equivariant_maps(other).into_iter().find(|f| {
            let mut seen = vec![false; other.len()];
            f.iter().all(|&y| !core::mem::replace(&mut seen[y], true))
        })
    }

    /// Disjoint union.
    pub fn sum(&self, other: &GSet) -> GSet {
        let n = self.len();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&y| y + n)).collect())
            .collect();
        GSet {
            group: self.group.clone(),
            names: self.names.iter().chain(&other.names).cloned().collect(),
            action,
        }
    }
}

/// A set with a right action of a presented group: generator `a` sends `x` to
/// `perms[a][x]`, and a word acts letter by letter from the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGSet {
    pub presentation: GroupPresentation,
    pub perms: Vec<Vec<usize>>,
}

impl PresentedGSet {
    pub fn new(presentation: GroupPresentation, perms: Vec<Vec<usize>>) -> Result<PresentedGSet> {
        let s = PresentedGSet { presentation, perms };
        if s.perms.len() != s.presentation.rank() {
            return Err(Error::InvalidGroup("one permutation per generator required".into()));
        }
        let n = s.len();
        for p in &s.perms {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&y| y >= n || core::mem::replace(&mut seen[y], true)) {
                return Err(Error::InvalidGroup("generator does not act by a permutation".into()));
            }
        }
        for r in &s.presentation.relators {
            if (0..n).any(|x| s.act_word(x, r) != x) {
                return Err(Error::InvalidGroup(format!("relator {r:?} acts nontrivially")));
            }
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.perms.first().map_or(0, |p| p.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn act_word(&self, x: usize, w: &Word) -> usize {
        w.iter().fold(x, |y, &l| {
            let p = &self.perms[generator_of(l)];
            if l > 0 {
                p[y]
            } else {
                p.iter().position(|&z| z == y).expect("permutation")
            }
        })
    }

    /// The left G-set `g·x = x·g⁻¹`, through generator images in `g` (a homomorphism
    /// from the presented group).
    pub fn to_left(&self, group: &FiniteGroup, images: &[usize]) -> Result<GSet> {
        let n = self.len();
        let names = (0..n).map(|i| format!("{i}")).collect();
        // g_k acts on the left by the inverse of its right action
        let perms: Vec<Vec<usize>> = self
            .perms
            .iter()
            .map(|p| {
                let mut inv = vec![0; n];
                for (x, &y) in p.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        GSet::from_generators(group.clone(), names, images, &perms)
    }
}

/// Natural endomorphisms of the forgetful functor restricted to a list of G-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalEnd {
    /// Each family lists a self-map per object.
    pub families: Vec<Vec<Vec<usize>>>,
    /// `table[a][b]` is family `a` followed by family `b` (that is, `b ∘ a`).
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
    pub is_group: bool,
    /// `φ ↦ φ_E(e)⁻¹` when a regular object `E` is listed, and whether it is an
    /// isomorphism of monoids onto the group.
    pub comparison: Option<(Vec<usize>, bool)>,
}

pub fn natural_end(group: &FiniteGroup, objects: &[GSet]) -> Result<NaturalEnd> {
    if objects.iter().any(|o| o.group != *group) {
        return Err(Error::InvalidGroup("objects over different groups".into()));
    }
    let k = objects.len();
    let maps: Vec<Vec<Vec<Vec<usize>>>> = (0..k)
        .map(|i| (0..k).map(|j| objects[i].equivariant_maps(&objects[j])).collect())
        .collect();
    // candidates per object: self-maps commuting with its own endomorphisms
    let cands: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|i| {
            let n = objects[i].len();
            crate::util::tuples(n, n)
                .into_iter()
                .filter(|phi| maps[i][i].iter().all(|f| commutes(f, phi, phi)))
                .collect()
        })
        .collect();
    let mut families = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(k);
    search_families(&cands, &maps, &mut cur, &mut families);
    let families: Vec<Vec<Vec<usize>>> = families
        .into_iter()
        .map(|pick| pick.iter().enumerate().map(|(i, &c)| cands[i][c].clone()).collect())
        .collect();
    let find = |fam: &Vec<Vec<usize>>| families.iter().position(|f| f == fam).expect("closed under composition");
    let table: Vec<Vec<usize>> = families
        .iter()
        .map(|a| {
            families
                .iter()
                .map(|b| {
                    let c: Vec<Vec<usize>> = a.iter().zip(b).map(|(fa, fb)| fa.iter().map(|&x| fb[x]).collect()).collect();
                    find(&c)
                })
                .collect()
        })
        .collect();
    let id: Vec<Vec<usize>> = objects.iter().map(|o| (0..o.len()).collect()).collect();
    let unit = find(&id);
    let is_group = (0..families.len()).all(|a| (0..families.len()).any(|b| table[a][b] == unit && table[b][a] == unit));
    let regular = objects.iter().position(|o| o.len() == group.order() && o.is_transitive());
    let comparison = regular.map(|r| {
        let e = &objects[r];
        // identify x = g·e0 with g
        let elem_of: Vec<usize> = {
            let mut v = vec![0; e.len()];
            for g in group.elements() {
                v[e.act(g, 0)] = g;
            }
            v
        };
        let c: Vec<usize> = families.iter().map(|f| group.inv(elem_of[f[r][0]])).collect();
        let hom = (0..families.len())
            .all(|a| (0..families.len()).all(|b| c[table[a][b]] == group.mul(c[a], c[b])));
        let mut seen = vec![false; group.order()];
        let bij = c.len() == group.order() && c.iter().all(|&g| !core::mem::replace(&mut seen[g], true));
        (c, hom && bij)
    });
    Ok(NaturalEnd {
        families,
        table,
        unit,
        is_group,
        comparison,
    })
}

/// `f ∘ φ_a == φ_b ∘ f`.
fn commutes(f: &[usize], phi_a: &[usize], phi_b: &[usize]) -> bool {
    (0..f.len()).all(|x| f[phi_a[x]] == phi_b[f[x]])
}

fn search_families(
    cands: &[Vec<Vec<usize>>],
    maps: &[Vec<Vec<Vec<usize>>>],
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let i = cur.len();
    if i == cands.len() {
        out.push(cur.clone());
        return;
    }
    for c in 0..cands[i].len() {
        let phi = &cands[i][c];
        let ok = (0..i).all(|j| {
            let pj = &cands[j][cur[j]];
            maps[j][i].iter().all(|f| commutes(f, pj, phi)) && maps[i][j].iter().all(|f| commutes(f, phi, pj))
        });
        if ok {
            cur.push(c);
            search_families(cands, maps, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_and_isomorphisms() {
        let s3 = FiniteGroup::symmetric(3);
        let cat = GSet::transitive_catalog(&s3);
        let mut sizes: Vec<usize> = cat.iter().map(|t| t.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3, 6]);
        for t in &cat {
            assert!(t.is_transitive());
            assert!(t.isomorphism_to(t).is_some());
        }
        assert!(cat[0].isomorphism_to(&cat[1]).is_none());
        // G-maps out of the regular set are determined by the image of e
        let e = GSet::regular(&s3);
        for t in &cat {
            assert_eq!(e.equivariant_maps(t).len(), t.len());
        }
    }

    #[test]
    fn natural_end_recovers_the_group() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            let ne = natural_end(&g, &GSet::transitive_catalog(&g)).unwrap();
            assert_eq!(ne.families.len(), g.order());
            assert!(ne.is_group);
            assert!(ne.comparison.unwrap().1);
        }
        let s3 = FiniteGroup::symmetric(3);
        let only_trivial = natural_end(&s3, &[GSet::trivial_action(&s3, 1)]).unwrap();
        assert_eq!(only_trivial.families.len(), 1);
        let t = FiniteGroup::trivial();
        assert_eq!(natural_end(&t, &GSet::transitive_catalog(&t)).unwrap().families.len(), 1);
    }

    #[test]
    fn presented_actions() {
        // Z acting on two points by the swap
        let p = GroupPresentation::free(1);
        let s = PresentedGSet::new(p, vec![vec![1, 0]]).unwrap();
        assert_eq!(s.act_word(0, &vec![1, 1]), 0);
        let z2 = FiniteGroup::cyclic(2);
        let left = s.to_left(&z2, &[1]).unwrap();
        assert!(left.isomorphism_to(&GSet::regular(&z2)).is_some());
        let bad = GroupPresentation::new(vec!["a".into()], vec![vec![1]]).unwrap();
        assert!(PresentedGSet::new(bad, vec![vec![1, 0]]).is_err());
    }
}
