//! Small combinatorial helpers shared across modules.

use alloc::vec::Vec;

pub type Map<K, V> = hashbrown::HashMap<K, V>;
pub type Set<K> = hashbrown::HashSet<K>;

/// `k`-subsets of `0..n` as increasing vectors, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Nondecreasing sequences of length `n + 1` with values in `0..=m`, lexicographic.
pub fn monotone_sequences(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = alloc::vec![0usize; n + 1];
    loop {
        out.push(cur.clone());
        let mut i = n + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < m {
                cur[i] += 1;
                let v = cur[i];
                for c in cur.iter_mut().skip(i + 1) {
                    *c = v;
                }
                break;
            }
        }
    }
}

/// All tuples in `0..base` of the given length, little index varying fastest at the end.
pub fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if base == 0 && len > 0 {
        return out;
    }
    let mut cur = alloc::vec![0usize; len];
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < base {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Disjoint-set forest with path halving; the smaller index wins as representative.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Class index per element, classes numbered by first occurrence.
    pub fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = alloc::vec![usize::MAX; n];
        let mut out = alloc::vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[x] = id[r];
        }
        (out, next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_and_sequence_counts() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0).len(), 1);
        assert_eq!(subsets(2, 3).len(), 0);
        // C(n + m + 1, n + 1)
        assert_eq!(monotone_sequences(2, 2).len(), 10);
        assert_eq!(monotone_sequences(0, 3).len(), 4);
        assert_eq!(tuples(3, 2).len(), 9);
        assert_eq!(tuples(5, 0).len(), 1);
    }

    #[test]
    fn union_find_classes() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 1);
        uf.union(4, 3);
        let (cls, n) = uf.classes();
        assert_eq!(n, 3);
        assert_eq!(cls[1], cls[4]);
        assert_ne!(cls[0], cls[1]);
    }
}
