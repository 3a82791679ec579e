//! Finite groups by multiplication table.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group with elements `0..order`; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a multiplication table (`table[a][b] = ab`). Elements are renumbered so
    /// that the identity comes first if necessary; labels follow their elements.
    pub fn from_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not square over the elements".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inv = vec![0usize; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| table[a][b] == e)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        // move the identity to position 0
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, e);
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("{i}")).collect());
        if labels.len() != n {
            return Err(Error::InvalidGroup("wrong number of labels".into()));
        }
        Ok(FiniteGroup::from_fn(
            n,
            |a, b| perm[table[perm[a]][perm[b]]],
            (0..n).map(|i| labels[perm[i]].clone()).collect(),
        ))
    }

    fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize, labels: Vec<String>) -> FiniteGroup {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b) as u32);
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("inverse") as u32)
            .collect();
        FiniteGroup {
            order: n,
            table,
            inverse,
            labels,
        }
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(n, |a, b| (a + b) % n, (0..n).map(|i| format!("{i}")).collect())
    }

    /// Permutations of `0..n` in lexicographic order, composed as functions
    /// (`(στ)(i) = σ(τ(i))`).
    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        FiniteGroup::from_permutation_list(perms)
    }

    /// The group generated by the given permutations of `0..degree`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || core::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidGroup("not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(id);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p: Vec<usize> = (0..degree).map(|k| g[elems[i][k]]).collect();
                if seen.insert(p.clone()) {
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems[1..].sort();
        Ok(FiniteGroup::from_permutation_list(elems))
    }

    fn from_permutation_list(perms: Vec<Vec<usize>>) -> FiniteGroup {
        let index: BTreeMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let labels: Vec<String> = perms
            .iter()
            .map(|p| p.iter().map(|i| format!("{i}")).collect::<Vec<_>>().join(""))
            .collect();
        let n = perms.len();
        FiniteGroup::from_fn(
            n,
            |a, b| {
                let c: Vec<usize> = (0..perms[a].len()).map(|k| perms[a][perms[b][k]]).collect();
                index[&c]
            },
            labels,
        )
    }

    /// `G × H` with `(g, h)` at index `g * |H| + h`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order;
        FiniteGroup::from_fn(
            self.order * m,
            |a, b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m),
            (0..self.order * m)
                .map(|i| format!("({},{})", self.labels[i / m], other.labels[i % m]))
                .collect(),
        )
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Product of a sequence of elements.
    pub fn product_of(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            for &g in gens {
                let x = self.mul(list[i], g);
                if !inside[x] {
                    inside[x] = true;
                    list.push(x);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// A generating set found greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![0];
        for a in 1..self.order {
            if sub.binary_search(&a).is_err() {
                gens.push(a);
                sub = self.generated(&gens);
            }
        }
        gens
    }

    /// All subgroups as sorted element lists, ordered by size then elements.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![0]);
        let mut frontier = vec![vec![0]];
        while let Some(h) = frontier.pop() {
            for a in 0..self.order {
                if h.binary_search(&a).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(a);
                let k = self.generated(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn conjugate_subgroup(&self, h: &[usize], g: usize) -> Vec<usize> {
        let gi = self.inv(g);
        let mut out: Vec<usize> = h.iter().map(|&x| self.mul(self.mul(g, x), gi)).collect();
        out.sort_unstable();
        out
    }

    /// One representative per conjugacy class of subgroups (the first in
    /// [`FiniteGroup::subgroups`] order).
    pub fn subgroups_up_to_conjugacy(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut reps = Vec::new();
        for h in self.subgroups() {
            if seen.contains(&h) {
                continue;
            }
            for g in 0..self.order {
                seen.insert(self.conjugate_subgroup(&h, g));
            }
            reps.push(h);
        }
        reps
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        (0..self.order).all(|g| self.conjugate_subgroup(h, g) == h)
    }

    /// Left cosets `gH` as sorted element lists, in order of smallest element, and
    /// the coset index of each element.
    pub fn left_cosets(&self, h: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut which = vec![usize::MAX; self.order];
        let mut cosets = Vec::new();
        for g in 0..self.order {
            if which[g] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                which[x] = cosets.len();
            }
            cosets.push(c);
        }
        (cosets, which)
    }

    /// Left translation action on `G/H`: `act[g][c]`.
    pub fn coset_action(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let (cosets, which) = self.left_cosets(h);
        (0..self.order)
            .map(|g| cosets.iter().map(|c| which[self.mul(g, c[0])]).collect())
            .collect()
    }

    /// Normal closure of a set of elements, sorted.
    pub fn normal_closure(&self, xs: &[usize]) -> Vec<usize> {
        let conj: Vec<usize> = xs
            .iter()
            .flat_map(|&x| (0..self.order).map(move |g| (g, x)))
            .map(|(g, x)| self.mul(self.mul(g, x), self.inv(g)))
            .collect();
        self.generated(&conj)
    }

    /// `K / I` for a subgroup `K` and a subgroup `I` normal in `K` (sorted element
    /// lists). Returns the quotient and the class of each element of `K`, in `K` order.
    pub fn subquotient(&self, k: &[usize], i: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let mut class = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for &x in k {
            if class[x] != usize::MAX {
                continue;
            }
            for &y in i {
                class[self.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
        let labels = reps.iter().map(|&r| String::from(self.label(r))).collect();
        let q = FiniteGroup::from_fn(reps.len(), |a, b| class[self.mul(reps[a], reps[b])], labels);
        (q, k.iter().map(|&x| class[x]).collect())
    }

    pub fn is_homomorphism(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.order
            && f.iter().all(|&y| y < target.order)
            && (0..self.order).all(|a| {
                (0..self.order).all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b]))
            })
    }

    /// Extends images of [`FiniteGroup::generators`]-style generators to a
    /// homomorphism, if one exists.
    pub fn extend_hom(&self, target: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut f = vec![usize::MAX; self.order];
        f[0] = 0;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                let v = target.mul(f[x], images[k]);
                if f[y] == usize::MAX {
                    f[y] = v;
                    list.push(y);
                } else if f[y] != v {
                    return None;
                }
            }
            i += 1;
        }
        if f.contains(&usize::MAX) || !self.is_homomorphism(target, &f) {
            return None;
        }
        Some(f)
    }

    /// An isomorphism `self -> other` by search over generator images.
    pub fn isomorphism_to(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let gens = self.generators();
        let orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        let cands: Vec<Vec<usize>> = orders
            .iter()
            .map(|&o| other.elements().filter(|&y| other.element_order(y) == o).collect())
            .collect();
        let mut pick = vec![0usize; gens.len()];
        loop {
            if cands.iter().any(|c| c.is_empty()) {
                return None;
            }
            let images: Vec<usize> = pick.iter().zip(&cands).map(|(&i, c)| c[i]).collect();
            if let Some(f) = self.extend_hom(other, &gens, &images) {
                let mut hit = vec![false; other.order];
                for &y in &f {
                    hit[y] = true;
                }
                if hit.iter().all(|&h| h) {
                    return Some(f);
                }
            }
            // odometer
            let mut k = 0;
            loop {
                if k == pick.len() {
                    return None;
                }
                pick[k] += 1;
                if pick[k] < cands[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_groups() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.label(0), "012");
        assert_eq!(s3.generators().len(), 2);
        let z6 = FiniteGroup::cyclic(6);
        assert!(z6.is_abelian());
        assert_eq!(z6.element_order(1), 6);
        let p = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(3));
        assert!(p.isomorphism_to(&z6).is_some());
        assert!(s3.isomorphism_to(&z6).is_none());
    }

    #[test]
    fn table_round_trip_and_validation() {
        let s3 = FiniteGroup::symmetric(3);
        let again = FiniteGroup::from_table(&s3.table(), Some(s3.labels().to_vec())).unwrap();
        assert_eq!(again, s3);
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(&bad, None).is_err());
        // identity not listed first
        let shifted = vec![vec![1, 0], vec![0, 1]];
        let g = FiniteGroup::from_table(&shifted, None).unwrap();
        assert_eq!(g.label(0), "1");
    }

    #[test]
    fn subgroup_lattice_of_s3() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.subgroups().len(), 6);
        let reps = s3.subgroups_up_to_conjugacy();
        assert_eq!(reps.iter().map(|h| h.len()).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        let act = s3.coset_action(&reps[1]);
        assert_eq!(act[0], vec![0, 1, 2]);
        assert_eq!(act.len(), 6);
        let a3 = &reps[2];
        assert!(s3.is_normal(a3));
        let all: Vec<usize> = s3.elements().collect();
        let (q, _) = s3.subquotient(&all, a3);
        assert_eq!(q.order(), 2);
        assert_eq!(s3.normal_closure(&reps[1][1..]), all);
    }

    #[test]
    fn permutation_generation() {
        let g = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0]]).unwrap();
        assert!(g.isomorphism_to(&FiniteGroup::cyclic(4)).is_some());
        let s4 = FiniteGroup::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(s4.order(), 24);
    }
}
