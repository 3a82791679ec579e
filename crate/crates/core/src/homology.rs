//! Integral homology of normalized chains by exact Smith normal form.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::levels::{LevelMap, Normalized};
use crate::sset::SimplicialSet;
use crate::util::Set;

/// Sparse integer matrix, one sorted `(column, entry)` list per row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: Vec<Vec<(u32, i64)>>,
    pub cols: usize,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows: Vec::new(),
            cols,
        }
    }

    /// Adds a row, merging repeated columns and dropping zeros.
    pub fn push_row(&mut self, mut entries: Vec<(u32, i64)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut row: Vec<(u32, i64)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| e.1 != 0);
        self.rows.push(row);
    }
}

/// Nonzero invariant factors (with multiplicity) of an integer matrix, ascending.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigUint> {
    let (units, rest) = eliminate_unit_pivots(m);
    let mut out: Vec<BigUint> = vec![BigUint::one(); units];
    if !rest.is_empty() {
        out.extend(dense_smith(rest, m.cols));
    }
    out.sort();
    out
}

/// Removes ±1 pivots; returns their count and the remaining nonzero rows.
fn eliminate_unit_pivots(m: &SparseMatrix) -> (usize, Vec<Vec<(u32, i64)>>) {
    let mut rows: Vec<Option<Vec<(u32, i64)>>> = m
        .rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| Some(r.clone()))
        .collect();
    let mut col_rows: Vec<Set<u32>> = vec![Set::default(); m.cols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r.as_ref().expect("row") {
            col_rows[c as usize].insert(i as u32);
        }
    }
    let mut units = 0;
    loop {
        let mut order: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].is_some()).collect();
        order.sort_by_key(|&i| (rows[i].as_ref().map_or(0, |r| r.len()), i));
        let mut progress = false;
        for r in order {
            let Some(row) = rows[r].as_ref() else { continue };
            let pivot = row
                .iter()
                .filter(|e| e.1.abs() == 1)
                .min_by_key(|e| (col_rows[e.0 as usize].len(), e.0))
                .copied();
            let Some((pc, pv)) = pivot else { continue };
            let prow = rows[r].take().expect("row");
            let others: Vec<u32> = col_rows[pc as usize]
                .iter()
                .copied()
                .filter(|&i| i as usize != r)
                .collect();
            let mut overflow = false;
            let mut updates = Vec::with_capacity(others.len());
            for &o in &others {
                let orow = rows[o as usize].as_ref().expect("row");
                let b = orow.iter().find(|e| e.0 == pc).expect("entry").1;
                match axpy(orow, &prow, -b * pv) {
                    Some(new) => updates.push((o, new)),
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            if overflow {
                rows[r] = Some(prow);
                return (units, rows.into_iter().flatten().collect());
            }
            for &(c, _) in &prow {
                col_rows[c as usize].remove(&(r as u32));
            }
            for (o, new) in updates {
                let old = rows[o as usize].take().expect("row");
                for &(c, _) in &old {
                    col_rows[c as usize].remove(&o);
                }
                for &(c, _) in &new {
                    col_rows[c as usize].insert(o);
                }
                rows[o as usize] = if new.is_empty() { None } else { Some(new) };
            }
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    (units, rows.into_iter().flatten().collect())
}

/// `a + k·b` on sorted sparse rows; `None` on overflow.
fn axpy(a: &[(u32, i64)], b: &[(u32, i64)], k: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, b[j].1.checked_mul(k)?));
            j += 1;
        } else {
            let v = a[i].1.checked_add(b[j].1.checked_mul(k)?)?;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Nonzero diagonal of the Smith normal form of a dense matrix.
fn dense_smith(rows: Vec<Vec<(u32, i64)>>, _cols: usize) -> Vec<BigUint> {
    // compress to the columns that occur
    let mut used: Vec<u32> = rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    used.sort_unstable();
    used.dedup();
    let ncols = used.len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); ncols];
            for &(c, x) in r {
                let k = used.binary_search(&c).expect("column");
                v[k] = BigInt::from(x);
            }
            v
        })
        .collect();
    smith_diagonal(&mut a)
}

/// Smith normal form of a dense big-integer matrix (destroyed); returns the nonzero
/// diagonal in divisibility order.
pub fn smith_diagonal(a: &mut [Vec<BigInt>]) -> Vec<BigUint> {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..nc {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest
                let mut bad = None;
                'scan: for i in t + 1..nr {
                    for j in t + 1..nc {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some(i) => {
                        for j in t..nc {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest nonzero of row t / column t into the corner
            let mut best = (t, t);
            for i in t..nr {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..nc {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].magnitude().clone());
        t += 1;
    }
    diag
}

/// One homology group: `Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    /// Torsion coefficients > 1 in divisibility order.
    pub torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> AbelianGroup {
        match n {
            0 => AbelianGroup::free(1),
            1 => AbelianGroup::default(),
            _ => AbelianGroup {
                rank: 0,
                torsion: vec![BigUint::from(n)],
            },
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Group presented by a relation matrix on `generators` generators.
    pub fn from_relations(generators: usize, relations: &SparseMatrix) -> AbelianGroup {
        let factors = invariant_factors(relations);
        AbelianGroup {
            rank: generators - factors.len(),
            torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
        }
    }

    /// Direct sum, normalized to invariant factors.
    pub fn sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let torsion: Vec<&BigUint> = self.torsion.iter().chain(other.torsion.iter()).collect();
        let n = torsion.len();
        let mut m = SparseMatrix::new(n);
        for (k, t) in torsion.iter().enumerate() {
            let v = i64::try_from(*t).unwrap_or(i64::MAX);
            m.push_row(vec![(k as u32, v)]);
        }
        let g = if torsion.iter().all(|t| i64::try_from(*t).is_ok()) {
            AbelianGroup::from_relations(n, &m)
        } else {
            let mut dense: Vec<Vec<BigInt>> = (0..n)
                .map(|k| {
                    let mut r = vec![BigInt::zero(); n];
                    r[k] = BigInt::from((*torsion[k]).clone());
                    r
                })
                .collect();
            let d = smith_diagonal(&mut dense);
            AbelianGroup {
                rank: n - d.len(),
                torsion: d.into_iter().filter(|f| !f.is_one()).collect(),
            }
        };
        AbelianGroup {
            rank: self.rank + other.rank + g.rank,
            torsion: g.torsion,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(alloc::format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(alloc::format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in degrees `0..=nmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub groups: Vec<AbelianGroup>,
}

impl HomologyReport {
    pub fn degree(&self, n: usize) -> &AbelianGroup {
        &self.groups[n]
    }

    /// Reduced homology: drops one free summand in degree 0.
    pub fn reduced(&self) -> HomologyReport {
        let mut groups = self.groups.clone();
        if let Some(g) = groups.first_mut() {
            g.rank = g.rank.saturating_sub(1);
        }
        HomologyReport { groups }
    }

    pub fn sum(&self, other: &HomologyReport) -> HomologyReport {
        HomologyReport {
            groups: self
                .groups
                .iter()
                .zip(other.groups.iter())
                .map(|(a, b)| a.sum(b))
                .collect(),
        }
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, g) in self.groups.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "H{n} = {g}")?;
        }
        Ok(())
    }
}

/// Normalized boundary `C_n -> C_{n-1}` as rows indexed by `n`-simplices.
pub fn boundary_matrix(x: &SimplicialSet, n: usize) -> SparseMatrix {
    let mut m = SparseMatrix::new(x.count(n - 1));
    for b in 0..x.count(n) {
        let row = x
            .faces_of(n, b)
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_degenerate())
            .map(|(i, s)| (s.base as u32, if i % 2 == 0 { 1 } else { -1 }))
            .collect();
        m.push_row(row);
    }
    m
}

/// Homology from chain ranks and boundary matrices `d[n]: C_n -> C_{n-1}`
/// (`d[0]` unused).
pub fn homology_of_complex(ranks: &[usize], d: &[SparseMatrix], nmax: usize) -> HomologyReport {
    let factors: Vec<Vec<BigUint>> = (0..=nmax + 1)
        .map(|n| {
            if n == 0 || n >= d.len() {
                Vec::new()
            } else {
                invariant_factors(&d[n])
            }
        })
        .collect();
    let groups = (0..=nmax)
        .map(|n| {
            let c = ranks.get(n).copied().unwrap_or(0);
            let out = factors[n].len();
            let inc = &factors[n + 1];
            AbelianGroup {
                rank: c - out - inc.len(),
                torsion: inc.iter().filter(|f| !f.is_one()).cloned().collect(),
            }
        })
        .collect();
    HomologyReport { groups }
}

/// Integral homology of `X` in degrees `0..=nmax`.
pub fn homology(x: &SimplicialSet, nmax: usize) -> Result<HomologyReport> {
    if x.is_truncated() && x.known_through() < nmax + 1 {
        return Err(Error::Truncated {
            what: "homology needs the next dimension".into(),
            needed: nmax + 1,
            available: x.known_through(),
        });
    }
    let top = (nmax + 1).min(x.dim());
    let ranks: Vec<usize> = (0..=nmax + 1).map(|n| if n <= x.dim() { x.count(n) } else { 0 }).collect();
    let mut d = vec![SparseMatrix::new(0)];
    for n in 1..=top {
        d.push(boundary_matrix(x, n));
    }
    Ok(homology_of_complex(&ranks, &d, nmax))
}

/// Homology of the mapping cone of `f: X -> Y` in degrees `0..=nmax`, where
/// `C_k = N_k(Y) ⊕ N_{k-1}(X)` and `∂(y, x) = (∂y + f x, -∂x)`.
pub fn cone_homology(x: &Normalized, y: &Normalized, f: &LevelMap, nmax: usize) -> Result<HomologyReport> {
    let (xs, ys) = (&x.set, &y.set);
    if ys.known_through() < nmax + 1 || xs.known_through() < nmax {
        return Err(Error::Truncated {
            what: "mapping cone homology".into(),
            needed: nmax + 1,
            available: ys.known_through().min(xs.known_through().saturating_add(1)),
        });
    }
    let cy = |n: usize| if n <= ys.dim() { ys.count(n) } else { 0 };
    let cx = |n: usize| if n <= xs.dim() { xs.count(n) } else { 0 };
    let ranks: Vec<usize> = (0..=nmax + 1)
        .map(|k| cy(k) + if k > 0 { cx(k - 1) } else { 0 })
        .collect();
    let image = |n: usize, b: usize| -> Option<u32> {
        let t = f.apply(n, x.base_index[n][b]);
        let s = &y.normal_forms[n][t];
        (!s.is_degenerate()).then_some(s.base as u32)
    };
    let mut d = vec![SparseMatrix::new(0)];
    for k in 1..=nmax + 1 {
        let mut m = SparseMatrix::new(ranks[k - 1]);
        if cy(k) > 0 {
            for row in boundary_matrix(ys, k).rows {
                m.push_row(row);
            }
        }
        let shift = cy(k - 1) as u32;
        let dx = (k >= 2 && cx(k - 1) > 0).then(|| boundary_matrix(xs, k - 1));
        for b in 0..cx(k - 1) {
            let mut row = Vec::new();
            if let Some(c) = image(k - 1, b) {
                row.push((c, 1));
            }
            if let Some(dx) = &dx {
                row.extend(dx.rows[b].iter().map(|&(c, v)| (shift + c, -v)));
            }
            m.push_row(row);
        }
        d.push(m);
    }
    Ok(homology_of_complex(&ranks, &d, nmax))
}

/// Largest `d <= limit` such that the cone certifies `f_*` an isomorphism on `H_k` for all
/// `k <= d` (`H_j(C) = 0` for `j <= d + 1`). Conservative: the connecting map is not examined.
/// Reads the cone (needs data through `limit + 2` in `Y`, `limit + 1` in `X`).
pub fn homology_iso_through(x: &Normalized, y: &Normalized, f: &LevelMap, limit: usize) -> Result<Option<usize>> {
    let cone = cone_homology(x, y, f, limit + 1)?;
    match cone.groups.iter().position(|g| !g.is_trivial()) {
        None => Ok(Some(limit)),
        Some(k) if k >= 2 => Ok(Some(k - 2)),
        Some(_) => Ok(None),
    }
}
