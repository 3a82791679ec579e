//! Free groups and finite presentations: reduction, coset enumeration,
//! abelianization.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homology::{AbelianGroup, SparseMatrix};

/// A word in a free group: letter `g + 1` is generator `g`, `-(g + 1)` its inverse.
pub type Word = Vec<i32>;

#[inline]
pub fn letter(g: usize, positive: bool) -> i32 {
    if positive {
        g as i32 + 1
    } else {
        -(g as i32 + 1)
    }
}

#[inline]
pub fn generator_of(l: i32) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Free reduction.
pub fn reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut r = reduce(w);
    while r.len() >= 2 && r[0] == -r[r.len() - 1] {
        r.pop();
        r.remove(0);
    }
    r
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn concat(a: &[i32], b: &[i32]) -> Word {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    reduce(&v)
}

/// Value of a word in a finite group under generator images.
pub fn evaluate(g: &FiniteGroup, images: &[usize], w: &[i32]) -> usize {
    w.iter().fold(g.identity(), |acc, &l| {
        let x = images[generator_of(l)];
        g.mul(acc, if l > 0 { x } else { g.inv(x) })
    })
}

/// Certified identification of a presented group with a finite group: the images
/// satisfy every relator, generate the target, and the presented group has the same
/// (certified) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub target: FiniteGroup,
    pub images: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    /// Order certified by a completed coset enumeration.
    pub order: Option<u64>,
    pub witness: Option<Witness>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<GroupPresentation> {
        let n = generators.len();
        for r in &relators {
            if r.iter().any(|&l| l == 0 || generator_of(l) >= n) {
                return Err(Error::InvalidGroup(format!("relator uses an unknown generator: {r:?}")));
            }
        }
        Ok(GroupPresentation {
            generators,
            relators,
            order: None,
            witness: None,
        })
    }

    pub fn free(rank: usize) -> GroupPresentation {
        GroupPresentation {
            generators: (0..rank).map(|i| format!("x{i}")).collect(),
            relators: Vec::new(),
            order: None,
            witness: None,
        }
    }

    /// The multiplication-table presentation of a finite group on its generating set.
    pub fn of_finite(g: &FiniteGroup) -> GroupPresentation {
        let gens = g.generators();
        // express each element as a word via breadth-first search
        let mut word: Vec<Option<Word>> = vec![None; g.order()];
        word[0] = Some(Vec::new());
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if word[y].is_none() {
                    let mut w = word[x].clone().expect("word");
                    w.push(letter(k, true));
                    word[y] = Some(w);
                    queue.push(y);
                }
            }
            i += 1;
        }
        let mut relators = Vec::new();
        for x in 0..g.order() {
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let mut r = word[x].clone().expect("word");
                r.push(letter(k, true));
                r.extend(inverse(word[y].as_ref().expect("word")));
                let r = cyclic_reduce(&r);
                if !r.is_empty() && !relators.contains(&r) {
                    relators.push(r);
                }
            }
        }
        GroupPresentation {
            generators: gens.iter().map(|&s| String::from(g.label(s))).collect(),
            relators,
            order: Some(g.order() as u64),
            witness: Some(Witness {
                target: g.clone(),
                images: gens,
            }),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Drops trivial and repeated relators and eliminates generators that occur
    /// exactly once in some relator.
    pub fn simplify(&self) -> GroupPresentation {
        let mut gens: Vec<Option<String>> = self.generators.iter().cloned().map(Some).collect();
        let mut rels: Vec<Word> = self.relators.iter().map(|r| cyclic_reduce(r)).collect();
        loop {
            rels.retain(|r| !r.is_empty());
            rels.sort();
            rels.dedup();
            let mut elim = None;
            'find: for (ri, r) in rels.iter().enumerate() {
                for (p, &l) in r.iter().enumerate() {
                    let g = generator_of(l);
                    if r.iter().filter(|&&m| generator_of(m) == g).count() == 1 {
                        elim = Some((ri, p));
                        break 'find;
                    }
                }
            }
            let Some((ri, p)) = elim else { break };
            let r = rels.remove(ri);
            let l = r[p];
            // r = u l v = 1  =>  l = u^-1 v^-1
            let mut value = inverse(&r[..p]);
            value.extend(inverse(&r[p + 1..]));
            let value = reduce(&value);
            let value = if l > 0 { value } else { inverse(&value) };
            let g = generator_of(l);
            for rel in rels.iter_mut() {
                let mut out = Vec::new();
                for &m in rel.iter() {
                    if generator_of(m) == g {
                        if m > 0 {
                            out.extend_from_slice(&value);
                        } else {
                            out.extend(inverse(&value));
                        }
                    } else {
                        out.push(m);
                    }
                }
                *rel = cyclic_reduce(&out);
            }
            gens[g] = None;
        }
        // renumber surviving generators
        let mut new_index = vec![usize::MAX; gens.len()];
        let mut names = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if let Some(name) = g {
                new_index[i] = names.len();
                names.push(name.clone());
            }
        }
        let relators = rels
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&l| letter(new_index[generator_of(l)], l > 0))
                    .collect()
            })
            .collect();
        GroupPresentation {
            generators: names,
            relators,
            order: self.order,
            witness: None,
        }
    }

    /// Relation matrix of the abelianization, one row per relator.
    pub fn abelianization(&self) -> AbelianGroup {
        let mut m = SparseMatrix::new(self.rank());
        for r in &self.relators {
            m.push_row(
                r.iter()
                    .map(|&l| (generator_of(l) as u32, if l > 0 { 1 } else { -1 }))
                    .collect(),
            );
        }
        AbelianGroup::from_relations(self.rank(), &m)
    }

    /// Coset enumeration for the subgroup generated by `subgroup`, defining at most
    /// `budget` cosets.
    pub fn coset_table(&self, subgroup: &[Word], budget: u64) -> Result<CosetTable> {
        let mut e = Enumerator::new(self.rank(), budget as usize);
        let enc = |w: &[i32]| -> Vec<usize> { w.iter().map(|&l| column(l)).collect() };
        for h in subgroup {
            e.scan_and_fill(0, &enc(h))?;
        }
        let rels: Vec<Vec<usize>> = self.relators.iter().map(|r| enc(r)).filter(|r| !r.is_empty()).collect();
        let mut c = 0;
        while c < e.table.len() {
            if e.parent[c] == c {
                for r in &rels {
                    e.scan_and_fill(c, r)?;
                    if e.parent[c] != c {
                        break;
                    }
                }
                if e.parent[c] == c {
                    for x in 0..e.cols {
                        if e.table[c][x] == NONE {
                            e.define(c, x)?;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(e.compress())
    }

    /// Certifies the order by enumerating cosets of the trivial subgroup.
    pub fn certify_order(&mut self, budget: u64) -> Result<u64> {
        let t = self.coset_table(&[], budget)?;
        let n = t.len() as u64;
        self.order = Some(n);
        Ok(n)
    }

    /// The presented group as a finite group (regular representation), if the
    /// enumeration completes within budget.
    pub fn to_finite_group(&self, budget: u64) -> Result<(FiniteGroup, Vec<usize>)> {
        let t = self.coset_table(&[], budget)?;
        let perms: Vec<Vec<usize>> = (0..self.rank())
            .map(|g| (0..t.len()).map(|c| t.act(c, letter(g, false))).collect())
            .collect();
        // c ↦ c·g⁻¹ turns the right action into a homomorphism
        let grp = FiniteGroup::from_permutations(t.len(), &perms)?;
        let images = (0..self.rank())
            .map(|g| {
                grp.elements()
                    .find(|&x| grp.label(x) == perm_label(&perms[g]))
                    .expect("generator")
            })
            .collect();
        Ok((grp, images))
    }

    /// Verifies and records a witness that this presentation defines `target`, with
    /// generator `i` sent to `images[i]`.
    pub fn attach_witness(&mut self, target: &FiniteGroup, images: Vec<usize>, budget: u64) -> Result<bool> {
        if images.len() != self.rank() || images.iter().any(|&x| x >= target.order()) {
            return Err(Error::Parameter("witness must give one image per generator".into()));
        }
        if self.relators.iter().any(|r| evaluate(target, &images, r) != 0) {
            return Ok(false);
        }
        if target.generated(&images).len() != target.order() {
            return Ok(false);
        }
        let n = match self.order {
            Some(n) => n,
            None => self.certify_order(budget)?,
        };
        if n != target.order() as u64 {
            return Ok(false);
        }
        self.witness = Some(Witness {
            target: target.clone(),
            images,
        });
        Ok(true)
    }
}

fn perm_label(p: &[usize]) -> String {
    p.iter().map(|i| format!("{i}")).collect::<Vec<_>>().join("")
}

#[inline]
fn column(l: i32) -> usize {
    2 * generator_of(l) + usize::from(l < 0)
}

#[inline]
fn inverse_column(x: usize) -> usize {
    x ^ 1
}

const NONE: u32 = u32::MAX;

/// Completed coset table: `table[c][x]` for column `x = 2g` (generator) or `2g + 1`
/// (inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub table: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Coset reached from `c` by the letter `l` (right action).
    pub fn act(&self, c: usize, l: i32) -> usize {
        self.table[c][column(l)] as usize
    }

    pub fn act_word(&self, c: usize, w: &[i32]) -> usize {
        w.iter().fold(c, |c, &l| self.act(c, l))
    }
}

/// Felsch-free (HLT) coset enumeration state.
struct Enumerator {
    cols: usize,
    table: Vec<Vec<u32>>,
    parent: Vec<usize>,
    limit: usize,
}

impl Enumerator {
    fn new(gens: usize, limit: usize) -> Enumerator {
        Enumerator {
            cols: 2 * gens,
            table: vec![vec![NONE; 2 * gens]],
            parent: vec![0],
            limit,
        }
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.limit {
            return Err(Error::BudgetExceeded(self.limit as u64));
        }
        let n = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.table[c][x] = n as u32;
        self.table[n][inverse_column(x)] = c as u32;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut m = c;
        while self.parent[m] != m {
            m = self.parent[m];
        }
        let mut j = c;
        while self.parent[j] != j {
            let next = self.parent[j];
            self.parent[j] = m;
            j = next;
        }
        m
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                let xi = inverse_column(x);
                if self.table[f][xi] == e as u32 {
                    self.table[f][xi] = NONE;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x] as usize;
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][xi] != NONE {
                    let t = self.table[f1][xi] as usize;
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1 as u32;
                    self.table[f1][xi] = e1 as u32;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j && self.table[f][w[i as usize]] != NONE {
                f = self.table[f][w[i as usize]] as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.table[b][inverse_column(w[j as usize])] != NONE {
                b = self.table[b][inverse_column(w[j as usize])] as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                let x = w[i as usize];
                self.table[f][x] = b as u32;
                self.table[b][inverse_column(x)] = f as u32;
                return Ok(());
            } else {
                self.define(f, w[i as usize])?;
            }
        }
    }

    fn compress(mut self) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.parent[c] == c).collect();
        let mut index = vec![usize::MAX; self.table.len()];
        for (k, &c) in live.iter().enumerate() {
            index[c] = k;
        }
        let table = live
            .iter()
            .map(|&c| {
                (0..self.cols)
                    .map(|x| {
                        let t = self.table[c][x] as usize;
                        let r = self.rep(t);
                        index[r] as u32
                    })
                    .collect()
            })
            .collect();
        CosetTable { table }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: usize, rels: &[&[i32]]) -> GroupPresentation {
        GroupPresentation::new(
            (0..n).map(|i| format!("g{i}")).collect(),
            rels.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(concat(&[1, 2], &inverse(&[1, 2])), Vec::<i32>::new());
    }

    #[test]
    fn coset_enumeration_orders() {
        // S3 = <a, b | a^2, b^3, (ab)^2>
        let mut s3 = pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]);
        assert_eq!(s3.certify_order(10_000).unwrap(), 6);
        // Z/5
        assert_eq!(pres(1, &[&[1, 1, 1, 1, 1]]).coset_table(&[], 1000).unwrap().len(), 5);
        // quaternion group <a, b | a^4, a^2 b^-2, b^-1 a b a>
        let mut q8 = pres(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]]);
        assert_eq!(q8.certify_order(10_000).unwrap(), 8);
        // index of <a> in S3
        assert_eq!(s3.coset_table(&[vec![1]], 1000).unwrap().len(), 3);
    }

    #[test]
    fn infinite_group_exhausts_budget() {
        let z = GroupPresentation::free(1);
        assert!(matches!(z.coset_table(&[], 100), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn abelianization_and_simplify() {
        let s3 = pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]);
        assert_eq!(s3.abelianization(), AbelianGroup::cyclic(2));
        let t = pres(3, &[&[1, 2, -3], &[3, 3]]).simplify();
        assert_eq!(t.rank(), 2);
        assert_eq!(t.abelianization(), pres(3, &[&[1, 2, -3], &[3, 3]]).abelianization());
        let circle_like = pres(1, &[&[1, -1]]).simplify();
        assert!(circle_like.relators.is_empty());
        assert_eq!(circle_like.abelianization(), AbelianGroup::free(1));
    }

    #[test]
    fn witnesses() {
        let g = FiniteGroup::symmetric(3);
        let mut p = GroupPresentation::of_finite(&g);
        let images = p.witness.as_ref().unwrap().images.clone();
        p.order = None;
        assert!(p.attach_witness(&g, images, 10_000).unwrap());
        let (h, imgs) = p.to_finite_group(10_000).unwrap();
        assert_eq!(h.order(), 6);
        assert!(!h.is_abelian());
        assert!(p.relators.iter().all(|r| evaluate(&h, &imgs, r) == 0));
        let mut z2 = pres(1, &[&[1, 1]]);
        assert!(!z2.attach_witness(&FiniteGroup::cyclic(4), vec![1], 1000).unwrap());
    }
}
