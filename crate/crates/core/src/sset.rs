//! Finitely presented simplicial sets.
//!
//! A [`SimplicialSet`] lists its nondegenerate simplices level by level; each
//! nondegenerate `n`-simplex stores its `n + 1` faces as normal-form references.
//! Degenerate simplices never get stored, they exist only as [`Simplex`] values.
//!
//! Objects that are genuinely infinite-dimensional (EG, coskeleta, mapping spaces) are
//! presented through a finite dimension and carry `bound = Some(n)`: nothing above `n`
//! is known, and every operation that would need more reports [`Error::Truncated`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::simplex::{push_face, words_into, DegeneracyWord, FacePush, Simplex};
use crate::util::{subsets, Map, UnionFind};

/// A structure operator `d_i` or `s_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Face(usize),
    Degeneracy(usize),
}

/// The named generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Standard(usize),
    Boundary(usize),
    Horn(usize, usize),
    Circle,
    Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    /// `faces[n][x]`: faces of the nondegenerate `n`-simplex `x` (empty for vertices).
    faces: Vec<Vec<Vec<Simplex>>>,
    labels: Option<Vec<Vec<String>>>,
    bound: Option<usize>,
}

impl SimplicialSet {
    /// Builds and validates a presentation. `counts[0]` vertices are implicit in
    /// `faces[0]`, which must hold one empty face list per vertex.
    pub fn new(
        faces: Vec<Vec<Vec<Simplex>>>,
        labels: Option<Vec<Vec<String>>>,
        bound: Option<usize>,
    ) -> Result<Self> {
        let mut faces = faces;
        if bound.is_none() {
            while faces.len() > 1 && faces.last().is_some_and(|l| l.is_empty()) {
                faces.pop();
            }
        }
        if faces.is_empty() {
            faces.push(Vec::new());
        }
        let x = SimplicialSet {
            faces,
            labels,
            bound,
        };
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(
        faces: Vec<Vec<Vec<Simplex>>>,
        labels: Option<Vec<Vec<String>>>,
        bound: Option<usize>,
    ) -> Self {
        SimplicialSet {
            faces,
            labels,
            bound,
        }
    }

    pub fn empty() -> Self {
        SimplicialSet::new_unchecked(vec![Vec::new()], None, None)
    }

    pub fn generator(kind: Generator) -> Result<Self> {
        match kind {
            Generator::Standard(m) => Ok(simplex_like(m, |_| true)),
            Generator::Boundary(m) => {
                if m == 0 {
                    return Ok(SimplicialSet::empty());
                }
                Ok(simplex_like(m, |s| s.len() < m + 1))
            }
            Generator::Horn(m, k) => {
                if m == 0 || k > m {
                    return Err(Error::Parameter(format!("no horn Λ^{m}_{k}")));
                }
                Ok(simplex_like(m, |s| {
                    s.len() < m + 1 && !(s.len() == m && !s.contains(&k))
                }))
            }
            Generator::Circle => Ok(SimplicialSet::new_unchecked(
                vec![
                    vec![vec![]],
                    vec![vec![Simplex::nondegenerate(0, 0), Simplex::nondegenerate(0, 0)]],
                ],
                Some(vec![vec!["v".into()], vec!["e".into()]]),
                None,
            )),
            Generator::Point => Ok(SimplicialSet::point()),
        }
    }

    pub fn standard(m: usize) -> Self {
        simplex_like(m, |_| true)
    }

    pub fn point() -> Self {
        SimplicialSet::new_unchecked(vec![vec![vec![]]], Some(vec![vec!["*".into()]]), None)
    }

    pub fn circle() -> Self {
        SimplicialSet::generator(Generator::Circle).expect("circle")
    }

    /// `n` isolated vertices.
    pub fn discrete(n: usize) -> Self {
        SimplicialSet::new_unchecked(vec![vec![vec![]; n]], None, None)
    }

    /// Highest dimension holding nondegenerate simplices (or the presented range).
    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    /// `None` when the presentation is complete.
    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    pub fn is_truncated(&self) -> bool {
        self.bound.is_some()
    }

    /// Highest dimension through which the set is fully known.
    pub fn known_through(&self) -> usize {
        self.bound.unwrap_or(usize::MAX)
    }

    pub fn count(&self, n: usize) -> usize {
        self.faces.get(n).map_or(0, |l| l.len())
    }

    /// Nondegenerate counts through the top presented dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(|l| l.len()).collect()
    }

    /// Number of all simplices (degenerate included) in dimension `n`.
    pub fn total_count(&self, n: usize) -> usize {
        (0..=n.min(self.dim()))
            .map(|k| self.count(k) * binomial(n, n - k))
            .sum()
    }

    pub fn faces_of(&self, n: usize, x: usize) -> &[Simplex] {
        &self.faces[n][x]
    }

    pub fn label(&self, n: usize, x: usize) -> String {
        match &self.labels {
            Some(l) if n < l.len() && x < l[n].len() => l[n][x].clone(),
            _ => format!("x{n}_{x}"),
        }
    }

    pub fn labels(&self) -> Option<&Vec<Vec<String>>> {
        self.labels.as_ref()
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = Some(labels);
        self
    }

    fn check_ref(&self, s: &Simplex, loc: &dyn Fn() -> String) -> Result<()> {
        if s.base_dim >= self.faces.len() || s.base >= self.faces[s.base_dim].len() {
            return Err(invalid(loc(), format!("reference {s} does not resolve")));
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if let Some(b) = self.bound {
            if self.faces.len() > b + 1 {
                return Err(invalid("bound", "levels above the declared bound"));
            }
        }
        for v in &self.faces[0] {
            if !v.is_empty() {
                return Err(invalid("dim 0", "vertices have no faces"));
            }
        }
        for n in 1..self.faces.len() {
            for (x, fs) in self.faces[n].iter().enumerate() {
                let loc = || format!("simplex {} (dim {n})", self.label(n, x));
                if fs.len() != n + 1 {
                    return Err(invalid(loc(), format!("expected {} faces", n + 1)));
                }
                for f in fs {
                    self.check_ref(f, &loc)?;
                    if f.dim() != n - 1 {
                        return Err(invalid(loc(), format!("face {f} has wrong dimension")));
                    }
                }
            }
        }
        self.check_identities()
    }

    /// Exhaustive check of `d_i d_j = d_{j-1} d_i` (`i < j`) on every nondegenerate
    /// simplex. On degenerate simplices the identities hold by normal-form algebra.
    pub fn check_identities(&self) -> Result<()> {
        for n in 2..self.faces.len() {
            for x in 0..self.faces[n].len() {
                let s = Simplex::nondegenerate(n, x);
                for j in 0..=n {
                    let dj = self.face(&s, j)?;
                    for i in 0..j {
                        let lhs = self.face(&dj, i)?;
                        let rhs = self.face(&self.face(&s, i)?, j - 1)?;
                        if lhs != rhs {
                            return Err(invalid(
                                format!("simplex {} (dim {n})", self.label(n, x)),
                                format!("d{i} d{j} = {lhs} but d{} d{i} = {rhs}", j - 1),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Result<Simplex> {
        let n = s.dim();
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        Ok(match push_face(i, &s.word) {
            FacePush::Cancelled(word) => Simplex {
                base_dim: s.base_dim,
                base: s.base,
                word,
            },
            FacePush::Face { outer, index } => {
                self.faces[s.base_dim][s.base][index].degenerate_by(&outer)
            }
        })
    }

    pub fn degeneracy(&self, s: &Simplex, i: usize) -> Result<Simplex> {
        let n = s.dim();
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, dim: n });
        }
        if n + 1 > self.known_through() {
            return Err(Error::Truncated {
                what: "degeneracy".into(),
                needed: n + 1,
                available: self.known_through(),
            });
        }
        Ok(s.degeneracy(i))
    }

    pub fn structure_map(&self, s: &Simplex, op: Op) -> Result<Simplex> {
        self.check_ref(s, &|| "structure_map".into())?;
        match op {
            Op::Face(i) => self.face(s, i),
            Op::Degeneracy(i) => self.degeneracy(s, i),
        }
    }

    /// All simplices of dimension `n` in canonical order: nondegenerate first, then
    /// by decreasing base dimension, base index and word.
    pub fn simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::with_capacity(self.total_count(n));
        for k in (0..=n.min(self.dim())).rev() {
            let words = words_into(n, n - k);
            for b in 0..self.count(k) {
                for w in &words {
                    out.push(Simplex {
                        base_dim: k,
                        base: b,
                        word: w.clone(),
                    });
                }
            }
        }
        out
    }

    /// Vertex `k` of a simplex (`k`-th vertex under the last-vertex maps).
    pub fn vertex(&self, s: &Simplex, k: usize) -> Result<usize> {
        let mut cur = s.clone();
        // drop vertices above k, then below
        while cur.dim() > k {
            let d = cur.dim();
            cur = self.face(&cur, d)?;
        }
        while cur.dim() > 0 {
            cur = self.face(&cur, 0)?;
        }
        Ok(cur.base)
    }

    /// Connected components of the vertex set (vertex -> component index) and count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.count(0));
        for fs in self.faces.get(1).map(|v| v.as_slice()).unwrap_or(&[]) {
            uf.union(fs[0].base, fs[1].base);
        }
        uf.classes()
    }

    pub fn is_reduced(&self) -> bool {
        self.count(0) == 1
    }

    /// The `n`-skeleton (complete presentation through `n`).
    pub fn skeleton(&self, n: usize) -> SimplicialSet {
        let mut top = n.min(self.dim());
        let complete = !matches!(self.bound, Some(b) if b < n);
        while complete && top > 0 && self.faces[top].is_empty() {
            top -= 1;
        }
        let faces = self.faces[..=top].to_vec();
        let labels = self
            .labels
            .as_ref()
            .map(|l| l.iter().take(top + 1).cloned().collect());
        let bound = match self.bound {
            Some(b) if b < n => Some(b),
            _ => None,
        };
        SimplicialSet::new_unchecked(faces, labels, bound)
    }

    /// Presentation restricted to dimensions `<= n`, marked as truncated unless
    /// nothing lies above.
    pub fn truncate(&self, n: usize) -> SimplicialSet {
        if self.bound.is_none() && self.dim() <= n {
            return self.clone();
        }
        let mut s = self.skeleton(n);
        s.bound = Some(n.min(self.known_through()));
        s
    }

    /// Disjoint union (coproduct).
    pub fn disjoint_union(&self, other: &SimplicialSet) -> SimplicialSet {
        let top = self.dim().max(other.dim());
        let mut faces = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut lvl: Vec<Vec<Simplex>> = self.faces.get(n).cloned().unwrap_or_default();
            if let Some(o) = other.faces.get(n) {
                for fs in o {
                    lvl.push(
                        fs.iter()
                            .map(|s| Simplex {
                                base: s.base + self.count(s.base_dim),
                                ..s.clone()
                            })
                            .collect(),
                    );
                }
            }
            faces.push(lvl);
        }
        let bound = match (self.bound, other.bound) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX))),
        };
        let mut s = SimplicialSet::new_unchecked(faces, None, None);
        if let Some(b) = bound {
            s = s.truncate(b);
        }
        s
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Subcomplex of Δ^m spanned by the vertex subsets accepted by `keep`
/// (the predicate must be closed under taking subsets).
fn simplex_like(m: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    let mut index: Vec<Map<Vec<usize>, usize>> = Vec::new();
    let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();
    let mut labels: Vec<Vec<String>> = Vec::new();
    for k in 0..=m {
        let mut lvl = Vec::new();
        let mut lab = Vec::new();
        let mut idx = Map::new();
        for s in subsets(m + 1, k + 1) {
            if !keep(&s) {
                continue;
            }
            let fs: Vec<Simplex> = if k == 0 {
                vec![]
            } else {
                (0..=k)
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        Simplex::nondegenerate(k - 1, index[k - 1][&t])
                    })
                    .collect()
            };
            idx.insert(s.clone(), lvl.len());
            lab.push(s.iter().map(|v| format!("{v}")).collect::<String>());
            lvl.push(fs);
        }
        if lvl.is_empty() && k > 0 {
            break;
        }
        index.push(idx);
        faces.push(lvl);
        labels.push(lab);
    }
    SimplicialSet::new_unchecked(faces, Some(labels), None)
}

impl DegeneracyWord {
    /// The word of a degeneracy operator given as an increasing set of indices.
    pub fn from_set(mut indices: Vec<usize>) -> DegeneracyWord {
        indices.sort_unstable_by(|a, b| b.cmp(a));
        indices.dedup();
        DegeneracyWord::new(indices).expect("sorted")
    }
}
