//! Edge-path presentation of the fundamental group.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::presentation::{letter, GroupPresentation, Word};
use crate::sset::SimplicialSet;

/// `π₁(X, base)`: generators are the nondegenerate edges of the base component off a
/// spanning tree; each nondegenerate 2-simplex `σ` gives `[d₂σ][d₀σ][d₁σ]⁻¹`.
/// Also returns, per nondegenerate edge, its generator (or `None` for tree edges and
/// edges outside the component).
pub fn edge_path_group(x: &SimplicialSet, base: usize) -> Result<(GroupPresentation, Vec<Option<usize>>)> {
    if base >= x.count(0) {
        return Err(Error::Parameter("basepoint out of range".into()));
    }
    let edges = if x.dim() >= 1 { x.count(1) } else { 0 };
    let ends: Vec<(usize, usize)> = (0..edges)
        .map(|e| {
            let f = x.faces_of(1, e);
            (f[1].base, f[0].base)
        })
        .collect();
    // breadth-first spanning tree of the base component
    let mut reached = vec![false; x.count(0)];
    let mut tree = vec![false; edges];
    reached[base] = true;
    let mut queue = vec![base];
    let mut i = 0;
    while i < queue.len() {
        let v = queue[i];
        i += 1;
        for (e, &(s, t)) in ends.iter().enumerate() {
            let other = if s == v { t } else if t == v { s } else { continue };
            if !reached[other] {
                reached[other] = true;
                tree[e] = true;
                queue.push(other);
            }
        }
    }
    let mut gen_of = vec![None; edges];
    let mut names: Vec<String> = Vec::new();
    for e in 0..edges {
        if !tree[e] && reached[ends[e].0] {
            gen_of[e] = Some(names.len());
            names.push(x.label(1, e));
        }
    }
    let edge_word = |s: &crate::simplex::Simplex| -> Word {
        if s.is_degenerate() {
            Vec::new()
        } else {
            gen_of[s.base].map(|g| vec![letter(g, true)]).unwrap_or_default()
        }
    };
    let mut relators = Vec::new();
    if x.dim() >= 2 {
        for b in 0..x.count(2) {
            let f = x.faces_of(2, b);
            if !reached[x.vertex(&f[2], 0)?] {
                continue;
            }
            let mut r = edge_word(&f[2]);
            r.extend(edge_word(&f[0]));
            r.extend(edge_word(&f[1]).iter().rev().map(|&l| -l));
            relators.push(r);
        }
    }
    Ok((GroupPresentation::new(names, relators)?, gen_of))
}

/// Whether a map of reduced simplicial sets induces an isomorphism on edge-path groups,
/// given the image of each nondegenerate edge of the source (`None` for degenerate
/// images). `Ok(None)` when either group is not enumerated within `budget`.
pub fn induced_iso(
    x: &SimplicialSet,
    y: &SimplicialSet,
    edge_images: &[Option<usize>],
    budget: u64,
) -> Result<Option<bool>> {
    if !x.is_reduced() || !y.is_reduced() {
        return Err(Error::NotReduced("π₁ comparison expects one vertex on each side".into()));
    }
    let (px, gx) = edge_path_group(x, 0)?;
    let (py, gy) = edge_path_group(y, 0)?;
    let enumerate = |p: &GroupPresentation| match p.to_finite_group(budget) {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let (Some((fx, _)), Some((fy, iy))) = (enumerate(&px)?, enumerate(&py)?) else {
        return Ok(None);
    };
    if fx.order() != fy.order() {
        return Ok(Some(false));
    }
    let mut images = vec![fy.identity(); px.rank()];
    for (e, g) in gx.iter().enumerate() {
        if let Some(g) = g {
            if let Some(t) = edge_images[e] {
                images[*g] = gy[t].map_or(fy.identity(), |h| iy[h]);
            }
        }
    }
    // a homomorphism between groups of equal finite order is bijective iff onto
    Ok(Some(fy.generated(&images).len() == fy.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::product;
    use crate::homology::AbelianGroup;
    use crate::sgroup::nerve_of_group;
    use crate::group::FiniteGroup;

    #[test]
    fn circle_and_torus() {
        let (p, _) = edge_path_group(&SimplicialSet::circle(), 0).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.relators.is_empty());
        let c = SimplicialSet::circle();
        let t = product(&c, &c, 3).unwrap().set;
        let (pt, _) = edge_path_group(&t, 0).unwrap();
        assert_eq!(pt.abelianization(), AbelianGroup::free(2));
    }

    #[test]
    fn simplex_is_simply_connected() {
        let (mut p, _) = edge_path_group(&SimplicialSet::standard(3), 0).unwrap();
        assert_eq!(p.certify_order(100).unwrap(), 1);
    }

    #[test]
    fn nerve_of_s3() {
        let n = nerve_of_group(&FiniteGroup::symmetric(3), 3).normalize().unwrap().set;
        let (mut p, _) = edge_path_group(&n, 0).unwrap();
        assert_eq!(p.certify_order(10_000).unwrap(), 6);
    }
}
