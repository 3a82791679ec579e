//! Simplicial groups with finite levels: constant groups, the classifying
//! construction `d(G)`, the contractible `EG`, π₀ and Moore-complex homotopy.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::gspace::GSimplicialSet;
use crate::levels::{LevelMap, Levels};
use crate::presentation::GroupPresentation;

/// A simplicial group with finite levels `0..=top`. Structure maps are stored on all
/// elements: `faces[n][i][g] = d_i g` for `n >= 1`, `degens[n][i][g] = s_i g` for
/// `n < top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialGroup {
    levels: Vec<FiniteGroup>,
    faces: Vec<Vec<Vec<u32>>>,
    degens: Vec<Vec<Vec<u32>>>,
    /// Every level above `top` repeats `top` with identity structure maps.
    constant: bool,
}

impl FiniteSimplicialGroup {
    /// Validates homomorphisms and simplicial identities.
    pub fn new(
        levels: Vec<FiniteGroup>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<FiniteSimplicialGroup> {
        let conv = |v: Vec<Vec<Vec<usize>>>| -> Vec<Vec<Vec<u32>>> {
            v.into_iter()
                .map(|l| l.into_iter().map(|m| m.into_iter().map(|x| x as u32).collect()).collect())
                .collect()
        };
        let g = FiniteSimplicialGroup {
            levels,
            faces: conv(faces),
            degens: conv(degens),
            constant: false,
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds structure maps from images of each level's generators (as returned by
    /// [`FiniteGroup::generators`]).
    pub fn from_generator_images(
        levels: Vec<FiniteGroup>,
        face_images: &[Vec<Vec<usize>>],
        degen_images: &[Vec<Vec<usize>>],
    ) -> Result<FiniteSimplicialGroup> {
        let top = levels.len() - 1;
        let extend = |n: usize, m: usize, images: &[usize]| -> Result<Vec<usize>> {
            let gens = levels[n].generators();
            if images.len() != gens.len() {
                return Err(Error::InvalidGroup(format!(
                    "level {n} has {} generators, got {} images",
                    gens.len(),
                    images.len()
                )));
            }
            levels[n]
                .extend_hom(&levels[m], &gens, images)
                .ok_or_else(|| Error::InvalidGroup(format!("images from level {n} are not a homomorphism")))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let maps = (0..=n)
                .map(|i| extend(n, n - 1, &face_images[n][i]))
                .collect::<Result<Vec<_>>>()?;
            faces.push(maps);
        }
        let mut degens = Vec::new();
        for n in 0..=top {
            if n == top {
                degens.push(Vec::new());
                continue;
            }
            let maps = (0..=n)
                .map(|i| extend(n, n + 1, &degen_images[n][i]))
                .collect::<Result<Vec<_>>>()?;
            degens.push(maps);
        }
        FiniteSimplicialGroup::new(levels, faces, degens)
    }

    /// The constant simplicial group on `g` through level `top` (extendable).
    pub fn constant(g: &FiniteGroup, top: usize) -> FiniteSimplicialGroup {
        let id: Vec<u32> = (0..g.order() as u32).collect();
        FiniteSimplicialGroup {
            levels: vec![g.clone(); top + 1],
            faces: (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degens: (0..=top).map(|n| if n == top { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            constant: true,
        }
    }

    pub fn trivial(top: usize) -> FiniteSimplicialGroup {
        FiniteSimplicialGroup::constant(&FiniteGroup::trivial(), top)
    }

    /// Same group known through a different level (constant groups extend freely).
    pub fn with_top(&self, top: usize) -> Result<FiniteSimplicialGroup> {
        if top <= self.top() {
            let mut g = self.clone();
            g.levels.truncate(top + 1);
            g.faces.truncate(top + 1);
            g.degens.truncate(top + 1);
            g.degens[top].clear();
            return Ok(g);
        }
        if !self.constant {
            return Err(Error::Truncated {
                what: "simplicial group levels".into(),
                needed: top,
                available: self.top(),
            });
        }
        Ok(FiniteSimplicialGroup::constant(&self.levels[0], top))
    }

    /// Levelwise product.
    pub fn product(&self, other: &FiniteSimplicialGroup) -> FiniteSimplicialGroup {
        let top = self.top().min(other.top());
        let levels: Vec<FiniteGroup> = (0..=top).map(|n| self.levels[n].product(&other.levels[n])).collect();
        let pair = |f: &[u32], g: &[u32], w: usize, v: usize| -> Vec<u32> {
            (0..f.len() * w)
                .map(|x| f[x / w] * v as u32 + g[x % w])
                .collect()
        };
        let faces = (0..=top)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| {
                        pair(
                            &self.faces[n][i],
                            &other.faces[n][i],
                            other.levels[n].order(),
                            other.levels[n - 1].order(),
                        )
                    })
                    .collect()
            })
            .collect();
        let degens = (0..=top)
            .map(|n| {
                if n == top {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| {
                        pair(
                            &self.degens[n][i],
                            &other.degens[n][i],
                            other.levels[n].order(),
                            other.levels[n + 1].order(),
                        )
                    })
                    .collect()
            })
            .collect();
        FiniteSimplicialGroup {
            levels,
            faces,
            degens,
            constant: self.constant && other.constant,
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_constant(&self) -> bool {
        self.constant
    }

    pub fn level(&self, n: usize) -> &FiniteGroup {
        &self.levels[n]
    }

    #[inline]
    pub fn face(&self, n: usize, i: usize, g: usize) -> usize {
        self.faces[n][i][g] as usize
    }

    #[inline]
    pub fn degen(&self, n: usize, i: usize, g: usize) -> usize {
        self.degens[n][i][g] as usize
    }

    pub fn validate(&self) -> Result<()> {
        let top = self.top();
        let check_hom = |src: &FiniteGroup, dst: &FiniteGroup, f: &[u32], what: &str| -> Result<()> {
            let f: Vec<usize> = f.iter().map(|&x| x as usize).collect();
            if !src.is_homomorphism(dst, &f) {
                return Err(Error::InvalidGroup(format!("{what} is not a homomorphism")));
            }
            Ok(())
        };
        if self.faces.len() != top + 1 || self.degens.len() != top + 1 {
            return Err(Error::InvalidGroup("structure maps missing".into()));
        }
        for n in 0..=top {
            if n > 0 {
                if self.faces[n].len() != n + 1 {
                    return Err(Error::InvalidGroup(format!("level {n} needs {} faces", n + 1)));
                }
                for i in 0..=n {
                    check_hom(&self.levels[n], &self.levels[n - 1], &self.faces[n][i], &format!("d{i} on level {n}"))?;
                }
            }
            if n < top {
                if self.degens[n].len() != n + 1 {
                    return Err(Error::InvalidGroup(format!("level {n} needs {} degeneracies", n + 1)));
                }
                for i in 0..=n {
                    check_hom(&self.levels[n], &self.levels[n + 1], &self.degens[n][i], &format!("s{i} on level {n}"))?;
                }
            }
        }
        self.underlying().check_identities()
    }

    /// The underlying simplicial set as level tables.
    pub fn underlying(&self) -> Levels {
        let counts = self.levels.iter().map(|g| g.order()).collect();
        Levels::build(
            counts,
            self.constant && self.levels[0].order() == 1,
            |n, x, i| self.face(n, i, x),
            |n, x, i| self.degen(n, i, x),
        )
    }

    /// Underlying simplicial set of `G^m` (levelwise power), as used by `j`.
    pub fn power_levels(&self, m: usize) -> (Levels, Vec<usize>) {
        let orders: Vec<usize> = self.levels.iter().map(|g| g.order()).collect();
        let counts: Vec<usize> = orders.iter().map(|&k| k.pow(m as u32)).collect();
        let levels = Levels::build(
            counts,
            self.constant && (m == 0 || self.levels[0].order() == 1),
            |n, x, i| {
                let t = decode(x, orders[n], m);
                encode(t.iter().map(|&g| self.face(n, i, g)), orders[n - 1])
            },
            |n, x, i| {
                let t = decode(x, orders[n], m);
                encode(t.iter().map(|&g| self.degen(n, i, g)), orders[n + 1])
            },
        );
        (levels, orders)
    }
}

/// Tuple of base-`k` digits of `x`, most significant first.
pub fn decode(mut x: usize, k: usize, len: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for p in (0..len).rev() {
        t[p] = x % k;
        x /= k;
    }
    t
}

pub fn encode(t: impl IntoIterator<Item = usize>, k: usize) -> usize {
    t.into_iter().fold(0, |acc, d| acc * k + d)
}

/// Action of the monotone `θ: [m] -> [m']` on nerve coordinates:
/// `(g_1..g_m') ↦ (h_1..h_m)` with `h_k = g_{θ(k-1)+1} ⋯ g_{θ(k)}`.
pub fn nerve_operator(g: &FiniteGroup, theta: &[usize], t: &[usize]) -> Vec<usize> {
    (1..theta.len())
        .map(|k| g.product_of((theta[k - 1]..theta[k]).map(|j| t[j])))
        .collect()
}

/// `d(G)` through `dim_bound`: `d(G)_m = G_m^m` with the nerve structure in the outer
/// direction composed with the internal one.
pub fn classifying(g: &FiniteSimplicialGroup, dim_bound: usize) -> Result<Levels> {
    let g = g.with_top(dim_bound)?;
    let orders: Vec<usize> = (0..=dim_bound).map(|n| g.level(n).order()).collect();
    let counts: Vec<usize> = (0..=dim_bound).map(|m| orders[m].pow(m as u32)).collect();
    Ok(Levels::build(
        counts,
        orders.iter().all(|&k| k == 1),
        |m, x, i| {
            let t: Vec<usize> = decode(x, orders[m], m).into_iter().map(|h| g.face(m, i, h)).collect();
            let lower = g.level(m - 1);
            let theta: Vec<usize> = (0..m).map(|v| if v < i { v } else { v + 1 }).collect();
            encode(nerve_operator(lower, &theta, &t), orders[m - 1])
        },
        |m, x, i| {
            let t: Vec<usize> = decode(x, orders[m], m).into_iter().map(|h| g.degen(m, i, h)).collect();
            let upper = g.level(m + 1);
            let theta: Vec<usize> = (0..=m + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
            encode(nerve_operator(upper, &theta, &t), orders[m + 1])
        },
    ))
}

/// The nerve of a finite group, through `dim_bound`.
pub fn nerve_of_group(g: &FiniteGroup, dim_bound: usize) -> Levels {
    classifying(&FiniteSimplicialGroup::constant(g, dim_bound), dim_bound).expect("constant")
}

/// `EG`, `d(G)`, the orbit map and the identification `EG/G ≅ d(G)`.
#[derive(Clone, Debug)]
pub struct EgDg {
    pub eg: GSimplicialSet,
    pub dg: Levels,
    /// `q(h_0, …, h_m) = (h_0⁻¹h_1, …, h_{m-1}⁻¹h_m)`.
    pub q: LevelMap,
    pub orbits: Levels,
    /// `EG/G -> d(G)` induced by `q`; a levelwise bijection.
    pub witness: LevelMap,
}

pub fn eg_dg(g: &FiniteSimplicialGroup, dim_bound: usize) -> Result<EgDg> {
    let g = g.with_top(dim_bound)?;
    let orders: Vec<usize> = (0..=dim_bound).map(|n| g.level(n).order()).collect();
    let counts: Vec<usize> = (0..=dim_bound).map(|m| orders[m].pow(m as u32 + 1)).collect();
    let eg = Levels::build(
        counts.clone(),
        orders.iter().all(|&k| k == 1),
        |m, x, i| {
            let mut t = decode(x, orders[m], m + 1);
            t.remove(i);
            encode(t.into_iter().map(|h| g.face(m, i, h)), orders[m - 1])
        },
        |m, x, i| {
            let mut t = decode(x, orders[m], m + 1);
            t.insert(i, t[i]);
            encode(t.into_iter().map(|h| g.degen(m, i, h)), orders[m + 1])
        },
    );
    let action: Vec<Vec<u32>> = (0..=dim_bound)
        .map(|m| {
            let gm = g.level(m);
            let mut a = Vec::with_capacity(orders[m] * counts[m]);
            for h in 0..orders[m] {
                for x in 0..counts[m] {
                    let t = decode(x, orders[m], m + 1);
                    a.push(encode(t.into_iter().map(|y| gm.mul(h, y)), orders[m]) as u32);
                }
            }
            a
        })
        .collect();
    let eg = GSimplicialSet::new(g.clone(), eg, action)?;
    let dg = classifying(&g, dim_bound)?;
    let q = LevelMap::from_fn(&counts, |m, x| {
        let gm = g.level(m);
        let t = decode(x, orders[m], m + 1);
        encode((1..=m).map(|k| gm.mul(gm.inv(t[k - 1]), t[k])), orders[m])
    });
    let (orbits, proj) = eg.orbit_quotient();
    // q is constant on orbits; read the induced map off one representative each
    let mut images: Vec<Vec<u32>> = (0..=dim_bound).map(|m| vec![u32::MAX; orbits.count(m)]).collect();
    for m in 0..=dim_bound {
        for x in 0..counts[m] {
            let c = proj.apply(m, x);
            let v = q.apply(m, x) as u32;
            if images[m][c] == u32::MAX {
                images[m][c] = v;
            } else if images[m][c] != v {
                return Err(Error::InvalidMap("orbit map is not constant on orbits".into()));
            }
        }
    }
    let witness = LevelMap { images };
    Ok(EgDg {
        eg,
        dg,
        q,
        orbits,
        witness,
    })
}

/// `π₀(G) = G_0 / ⟨d_0(g) d_1(g)⁻¹⟩`, computed exactly, with a witness to the quotient.
pub fn pi0_finite(g: &FiniteSimplicialGroup) -> Result<(FiniteGroup, GroupPresentation)> {
    let g0 = g.level(0);
    let rel: Vec<usize> = if g.top() >= 1 {
        (0..g.level(1).order())
            .map(|x| g0.mul(g.face(1, 0, x), g0.inv(g.face(1, 1, x))))
            .collect()
    } else {
        Vec::new()
    };
    let n = g0.normal_closure(&rel);
    let all: Vec<usize> = g0.elements().collect();
    let (q, _) = g0.subquotient(&all, &n);
    let p = GroupPresentation::of_finite(&q);
    Ok((q, p))
}

/// Homotopy groups `π_n = ker(d_0|N_n) / d_0(N_{n+1})` of the Moore complex
/// `N_n = ∩_{i≥1} ker d_i`, for `n <= nmax`.
pub fn moore_homotopy(g: &FiniteSimplicialGroup, nmax: usize) -> Result<Vec<FiniteGroup>> {
    let g = g.with_top(nmax + 1)?;
    let moore = |n: usize| -> Vec<usize> {
        g.level(n)
            .elements()
            .filter(|&x| (1..=n).all(|i| g.face(n, i, x) == 0))
            .collect()
    };
    let mut out = Vec::new();
    for n in 0..=nmax {
        let nn = moore(n);
        let cycles: Vec<usize> = if n == 0 {
            nn
        } else {
            nn.into_iter().filter(|&x| g.face(n, 0, x) == 0).collect()
        };
        let above: Vec<usize> = moore(n + 1).into_iter().map(|x| g.face(n + 1, 0, x)).collect();
        let bounds = g.level(n).generated(&above);
        if n == 0 {
            // the image of N_1 is normal in G_0
            let all: Vec<usize> = g.level(0).elements().collect();
            out.push(g.level(0).subquotient(&all, &bounds).0);
        } else {
            out.push(g.level(n).subquotient(&cycles, &bounds).0);
        }
    }
    Ok(out)
}
