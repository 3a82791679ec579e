//! Finite categories, functors and natural transformations.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// Composition is diagrammatic: `then(f, g)` is `f` followed by `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `table[f * m + g]` for composable `f: x -> y`, `g: y -> z`.
    table: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl FiniteCategory {
    /// `composites` lists `(f, g, h)` with `h = f ; g`; composites with identities may be
    /// omitted. Checks closure, identity and associativity laws.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<FiniteCategory> {
        let m = morphisms.len();
        let bad = |s: String| Error::InvalidCategory(s);
        if identities.len() != objects.len() {
            return Err(bad("one identity per object required".into()));
        }
        for f in &morphisms {
            if f.source >= objects.len() || f.target >= objects.len() {
                return Err(bad(format!("morphism {} has an unknown endpoint", f.name)));
            }
        }
        for (x, &i) in identities.iter().enumerate() {
            if i >= m || morphisms[i].source != x || morphisms[i].target != x {
                return Err(bad(format!("identity of object {x} is not an endomorphism of it")));
            }
        }
        let mut table = vec![NONE; m * m];
        let mut set = |f: usize, g: usize, h: usize| -> Result<()> {
            let cell = &mut table[f * m + g];
            if *cell != NONE && *cell as usize != h {
                return Err(bad(format!("two composites given for ({f}, {g})")));
            }
            *cell = h as u32;
            Ok(())
        };
        for (f, mor) in morphisms.iter().enumerate() {
            set(identities[mor.source], f, f)?;
            set(f, identities[mor.target], f)?;
        }
        for &(f, g, h) in composites {
            if f >= m || g >= m || h >= m {
                return Err(bad(format!("composite ({f}, {g}, {h}) names an unknown morphism")));
            }
            if morphisms[f].target != morphisms[g].source
                || morphisms[h].source != morphisms[f].source
                || morphisms[h].target != morphisms[g].target
            {
                return Err(bad(format!("composite ({f}, {g}, {h}) has mismatched endpoints")));
            }
            set(f, g, h)?;
        }
        let c = FiniteCategory {
            objects,
            morphisms,
            identities,
            table,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let m = self.morphisms.len();
        for f in 0..m {
            for g in 0..m {
                if self.morphisms[f].target == self.morphisms[g].source && self.table[f * m + g] == NONE {
                    return Err(Error::InvalidCategory(format!(
                        "missing composite of {} then {}",
                        self.morphisms[f].name, self.morphisms[g].name
                    )));
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(fg) = self.then(f, g) else { continue };
                for h in 0..m {
                    let Some(gh) = self.then(g, h) else { continue };
                    if self.then(fg, h) != self.then(f, gh) {
                        return Err(Error::InvalidCategory(format!(
                            "composition not associative at ({}, {}, {})",
                            self.morphisms[f].name, self.morphisms[g].name, self.morphisms[h].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The poset on `0..n` generated by `relations` (pairs `a <= b`).
    pub fn poset(n: usize, relations: &[(usize, usize)]) -> Result<FiniteCategory> {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidCategory("relation names an unknown object".into()));
            }
            le[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if le[a][k] && le[k][b] {
                        le[a][b] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le[a][b] && le[b][a] {
                    return Err(Error::InvalidCategory("relations contain a cycle".into()));
                }
            }
        }
        let mut morphisms = Vec::new();
        let mut index = vec![vec![usize::MAX; n]; n];
        for a in 0..n {
            for b in 0..n {
                if le[a][b] {
                    index[a][b] = morphisms.len();
                    morphisms.push(Morphism {
                        name: if a == b { format!("id{a}") } else { format!("{a}<{b}") },
                        source: a,
                        target: b,
                    });
                }
            }
        }
        let mut comps = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if le[a][b] && le[b][c] {
                        comps.push((index[a][b], index[b][c], index[a][c]));
                    }
                }
            }
        }
        FiniteCategory::new(
            (0..n).map(|i| format!("{i}")).collect(),
            morphisms,
            (0..n).map(|a| index[a][a]).collect(),
            &comps,
        )
    }

    /// A one-object category from a monoid table (`table[a][b] = ab`, `a` first).
    pub fn monoid(table: &[Vec<usize>], names: Option<Vec<String>>) -> Result<FiniteCategory> {
        let n = table.len();
        let unit = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidCategory("monoid has no unit".into()))?;
        let names = names.unwrap_or_else(|| (0..n).map(|i| format!("{i}")).collect());
        let morphisms = names
            .into_iter()
            .map(|name| Morphism {
                name,
                source: 0,
                target: 0,
            })
            .collect();
        // diagrammatic f ; g is the product "g after f", written f·g here
        let mut comps = Vec::new();
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCategory("monoid table is not square".into()));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::InvalidCategory("monoid table entry out of range".into()));
                }
                comps.push((a, b, c));
            }
        }
        FiniteCategory::new(vec!["*".into()], morphisms, vec![unit], &comps)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    /// `f` followed by `g`, when composable.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        let v = self.table[f * self.morphisms.len() + g];
        (v != NONE).then_some(v as usize)
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].source == x && self.morphisms[f].target == y)
            .collect()
    }

    pub fn inverse_of(&self, f: usize) -> Option<usize> {
        let (x, y) = (self.source(f), self.target(f));
        self.hom(y, x)
            .into_iter()
            .find(|&g| self.then(f, g) == Some(self.identity(x)) && self.then(g, f) == Some(self.identity(y)))
    }

    pub fn isomorphisms(&self) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.inverse_of(f).is_some()).collect()
    }

    /// Composite triples `(f, g, f;g)` excluding those with identities.
    pub fn composites(&self) -> Vec<(usize, usize, usize)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for f in 0..m {
            for g in 0..m {
                if self.is_identity(f) || self.is_identity(g) {
                    continue;
                }
                if let Some(h) = self.then(f, g) {
                    out.push((f, g, h));
                }
            }
        }
        out
    }
}

/// A functor given on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Functor {
    pub fn identity(c: &FiniteCategory) -> Functor {
        Functor {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
        }
    }

    pub fn validate(&self, c: &FiniteCategory, d: &FiniteCategory) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidCategory(s));
        if self.objects.len() != c.object_count() || self.morphisms.len() != c.morphism_count() {
            return bad("functor data has the wrong size".into());
        }
        for f in 0..c.morphism_count() {
            let g = self.morphisms[f];
            if g >= d.morphism_count()
                || d.source(g) != self.objects[c.source(f)]
                || d.target(g) != self.objects[c.target(f)]
            {
                return bad(format!("image of {} has wrong endpoints", c.morphisms[f].name));
            }
        }
        for x in 0..c.object_count() {
            if self.morphisms[c.identity(x)] != d.identity(self.objects[x]) {
                return bad(format!("identity of {} not preserved", c.objects[x]));
            }
        }
        for (f, g, h) in c.composites() {
            if d.then(self.morphisms[f], self.morphisms[g]) != Some(self.morphisms[h]) {
                return bad(format!(
                    "composite of {} and {} not preserved",
                    c.morphisms[f].name, c.morphisms[g].name
                ));
            }
        }
        Ok(())
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            objects: self.objects.iter().map(|&x| other.objects[x]).collect(),
            morphisms: self.morphisms.iter().map(|&f| other.morphisms[f]).collect(),
        }
    }
}

/// Components of a natural transformation `F => G` (one morphism per object of the
/// source category). Returns the first morphism whose square fails.
pub fn check_natural(
    c: &FiniteCategory,
    d: &FiniteCategory,
    f: &Functor,
    g: &Functor,
    components: &[usize],
) -> core::result::Result<(), usize> {
    for x in 0..c.object_count() {
        let a = components[x];
        if d.source(a) != f.objects[x] || d.target(a) != g.objects[x] {
            return Err(c.identity(x));
        }
    }
    for h in 0..c.morphism_count() {
        let (x, y) = (c.source(h), c.target(h));
        // F(h) ; α_y == α_x ; G(h)
        if d.then(f.morphisms[h], components[y]) != d.then(components[x], g.morphisms[h]) {
            return Err(h);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn posets_and_monoids() {
        let chain = FiniteCategory::poset(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(chain.morphism_count(), 6);
        assert_eq!(chain.hom(0, 2).len(), 1);
        assert!(chain.hom(2, 0).is_empty());
        assert!(FiniteCategory::poset(2, &[(0, 1), (1, 0)]).is_err());
        let m = FiniteCategory::monoid(&[vec![0, 1], vec![1, 1]], None).unwrap();
        assert_eq!(m.then(1, 1), Some(1));
        assert!(m.inverse_of(1).is_none());
        let z2 = FiniteCategory::monoid(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(z2.isomorphisms().len(), 2);
    }

    #[test]
    fn rejects_bad_tables() {
        let mor = vec![
            Morphism { name: "1".into(), source: 0, target: 0 },
            Morphism { name: "a".into(), source: 0, target: 0 },
        ];
        // a;a missing
        assert!(FiniteCategory::new(vec!["*".into()], mor.clone(), vec![0], &[]).is_err());
    }

    #[test]
    fn functors_and_naturality() {
        let i = FiniteCategory::poset(2, &[(0, 1)]).unwrap();
        let id = Functor::identity(&i);
        id.validate(&i, &i).unwrap();
        let constant = Functor {
            objects: vec![1, 1],
            morphisms: vec![i.identity(1); 3],
        };
        constant.validate(&i, &i).unwrap();
        let arrow = i.hom(0, 1)[0];
        assert!(check_natural(&i, &i, &id, &constant, &[arrow, i.identity(1)]).is_ok());
    }
}
