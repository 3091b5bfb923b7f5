//! Weyl group elements as permutations of the root list.
//!
//! An element `w` is stored as `perm[i] = index of w(roots[i])`. Products
//! compose as maps: `(a * b)[i] = a[b[i]]`, so `a * b` applies `b` first.
//! The matrix on the root lattice is recovered from the images of the
//! simple roots.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::linalg::IMat;
use crate::rootsys::{Root, RootSystem, TypeLabel};

pub type Perm = Vec<u16>;

/// Conjugation-invariant data used to identify classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    /// `det(xI − w)` on V, increasing degree.
    pub charpoly: Vec<i64>,
    /// `(cycle length, multiplicity)` of the root permutation, ascending.
    pub cycles: Vec<(u16, u16)>,
    /// `det(xI − w)` on Λ²V, increasing degree.
    pub charpoly_wedge2: Vec<i64>,
}

/// Compact fingerprint for bulk tallies: packed characteristic polynomial
/// and cycle counts by length. Valid while cycle lengths stay below 64.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FastKey {
    pub charpoly: [i16; 17],
    pub cycles: [u16; 64],
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    rs: RootSystem,
    rank: usize,
    nu: usize,
    /// Root coordinates, flattened (`coords[k * rank + j]`).
    coords: Vec<i64>,
    simple_idx: Vec<usize>,
    gens: Vec<Perm>,
}

impl WeylGroup {
    pub fn new(rs: RootSystem) -> Self {
        let rank = rs.rank();
        let nu = rs.nu();
        let coords: Vec<i64> = rs.roots().iter().flatten().copied().collect();
        let simple_idx: Vec<usize> = (0..rank)
            .map(|j| rs.root_index(&rs.simple_root(j)).expect("simple root"))
            .collect();
        let gens = (0..rank)
            .map(|i| {
                let a = rs.simple_root(i);
                rs.roots()
                    .iter()
                    .map(|r| rs.root_index(&rs.reflect(&a, r)).expect("root") as u16)
                    .collect()
            })
            .collect();
        WeylGroup {
            rs,
            rank,
            nu,
            coords,
            simple_idx,
            gens,
        }
    }

    pub fn of_type(label: &TypeLabel) -> Self {
        Self::new(RootSystem::new(label))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn label(&self) -> &TypeLabel {
        self.rs.label()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn num_roots(&self) -> usize {
        2 * self.nu
    }

    pub fn order(&self) -> u64 {
        self.rs.weyl_order()
    }

    pub fn generator(&self, i: usize) -> &Perm {
        &self.gens[i]
    }

    pub fn simple_index(&self, j: usize) -> usize {
        self.simple_idx[j]
    }

    #[inline]
    pub fn coord(&self, root: usize, j: usize) -> i64 {
        self.coords[root * self.rank + j]
    }

    pub fn identity(&self) -> Perm {
        (0..self.num_roots() as u16).collect()
    }

    pub fn compose(a: &[u16], b: &[u16]) -> Perm {
        b.iter().map(|&x| a[x as usize]).collect()
    }

    pub fn compose_into(a: &[u16], b: &[u16], out: &mut [u16]) {
        for (o, &x) in out.iter_mut().zip(b) {
            *o = a[x as usize];
        }
    }

    pub fn inverse(p: &[u16]) -> Perm {
        let mut inv = vec![0u16; p.len()];
        for (i, &x) in p.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        inv
    }

    /// `w * s_i`.
    pub fn right_mul_simple(&self, w: &[u16], i: usize) -> Perm {
        Self::compose(w, &self.gens[i])
    }

    /// Element `s_{i1} s_{i2} ⋯ s_{ik}`.
    pub fn from_word(&self, word: &[usize]) -> Perm {
        let mut w = self.identity();
        for &i in word {
            w = self.right_mul_simple(&w, i);
        }
        w
    }

    /// Reflection in an arbitrary root (given by index).
    pub fn reflection(&self, root: usize) -> Perm {
        let a = self.rs.root(root);
        self.rs
            .roots()
            .iter()
            .map(|r| self.rs.root_index(&self.rs.reflect(a, r)).expect("root") as u16)
            .collect()
    }

    pub fn from_matrix(&self, m: &IMat) -> Option<Perm> {
        self.rs
            .root_permutation(m)
            .map(|p| p.into_iter().map(|x| x as u16).collect())
    }

    pub fn to_matrix(&self, w: &[u16]) -> IMat {
        let cols: Vec<Vec<i64>> = (0..self.rank)
            .map(|j| self.rs.root(w[self.simple_idx[j]] as usize).clone())
            .collect();
        IMat::from_columns(&cols)
    }

    pub fn apply(&self, w: &[u16], v: &[i64]) -> Root {
        self.to_matrix(w).apply(v)
    }

    #[inline]
    pub fn is_positive_index(&self, k: u16) -> bool {
        (k as usize) < self.nu
    }

    pub fn length(&self, w: &[u16]) -> usize {
        w[..self.nu].iter().filter(|&&k| !self.is_positive_index(k)).count()
    }

    pub fn det(&self, w: &[u16]) -> i64 {
        if self.length(w).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(w: &[u16]) -> bool {
        w.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `s_i` is a right descent of `w` iff `w(α_i) < 0`.
    pub fn has_right_descent(&self, w: &[u16], i: usize) -> bool {
        !self.is_positive_index(w[self.simple_idx[i]])
    }

    pub fn has_left_descent(&self, w: &[u16], i: usize) -> bool {
        let target = self.simple_idx[i] as u16;
        let pre = w.iter().position(|&x| x == target).expect("permutation");
        pre >= self.nu
    }

    /// Reduced word, obtained by repeatedly stripping the smallest right
    /// descent.
    pub fn word(&self, w: &[u16]) -> Vec<usize> {
        let mut cur = w.to_vec();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 0..self.rank {
                if self.has_right_descent(&cur, i) {
                    cur = self.right_mul_simple(&cur, i);
                    rev.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    /// Longest element.
    pub fn longest(&self) -> Perm {
        let mut w = self.identity();
        'outer: loop {
            for i in 0..self.rank {
                if !self.has_right_descent(&w, i) {
                    w = self.right_mul_simple(&w, i);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Power sums `tr(w^k)` on V for `k = 1..=rank`.
    fn power_traces(&self, w: &[u16]) -> Vec<i64> {
        let r = self.rank;
        let mut tr = vec![0i64; r + 1];
        for j in 0..r {
            let mut idx = self.simple_idx[j];
            for t in tr.iter_mut().skip(1) {
                idx = w[idx] as usize;
                *t += self.coords[idx * r + j];
            }
        }
        tr
    }

    /// Characteristic polynomial on V (increasing degree), from power sums
    /// via Newton's identities.
    pub fn charpoly(&self, w: &[u16]) -> Vec<i64> {
        let r = self.rank;
        let p = self.power_traces(w);
        let mut e = vec![0i64; r + 1];
        e[0] = 1;
        for k in 1..=r {
            let mut s = 0i64;
            for i in 1..=k {
                let term = e[k - i] * p[i];
                if i % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            debug_assert_eq!(s % k as i64, 0);
            e[k] = s / k as i64;
        }
        let mut c = vec![0i64; r + 1];
        for (k, ek) in e.iter().enumerate() {
            c[r - k] = if k % 2 == 0 { *ek } else { -*ek };
        }
        c
    }

    pub fn cycle_type(&self, w: &[u16]) -> Vec<(u16, u16)> {
        let n = w.len();
        let mut seen = vec![false; n];
        let mut counts: std::collections::BTreeMap<u16, u16> = Default::default();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0u16;
            let mut k = s;
            while !seen[k] {
                seen[k] = true;
                k = w[k] as usize;
                len += 1;
            }
            *counts.entry(len).or_default() += 1;
        }
        counts.into_iter().collect()
    }

    /// Element order (lcm of root-cycle lengths; the root action is faithful).
    pub fn element_order(&self, w: &[u16]) -> u64 {
        self.cycle_type(w)
            .iter()
            .fold(1u64, |acc, &(l, _)| num_integer::lcm(acc, l as u64))
    }

    pub fn fast_key(&self, w: &[u16]) -> FastKey {
        let r = self.rank;
        assert!(r <= 16, "fast key supports rank ≤ 16");
        let mut key = FastKey {
            charpoly: [0; 17],
            cycles: [0; 64],
        };
        for (k, c) in self.charpoly(w).into_iter().enumerate() {
            key.charpoly[k] = c as i16;
        }
        let n = w.len();
        let mut seen = [0u64; 8];
        for s in 0..n {
            if seen[s >> 6] >> (s & 63) & 1 == 1 {
                continue;
            }
            let mut len = 0usize;
            let mut k = s;
            while seen[k >> 6] >> (k & 63) & 1 == 0 {
                seen[k >> 6] |= 1 << (k & 63);
                k = w[k] as usize;
                len += 1;
            }
            assert!(len < 64, "cycle length {len} exceeds fast key range");
            key.cycles[len] += 1;
        }
        key
    }

    pub fn fingerprint(&self, w: &[u16]) -> Fingerprint {
        let m = self.to_matrix(w);
        Fingerprint {
            charpoly: self.charpoly(w),
            cycles: self.cycle_type(w),
            charpoly_wedge2: wedge2(&m).charpoly(),
        }
    }

    /// Conjugacy class of `w`, by closure under conjugation by generators.
    pub fn conjugacy_class(&self, w: &[u16], limit: usize) -> Option<Vec<Perm>> {
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(x) = queue.pop_front() {
            for g in &self.gens {
                let y = Self::compose(&Self::compose(g, &x), g);
                if !seen.contains(&y) {
                    if seen.len() >= limit {
                        return None;
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<Perm> = seen.into_iter().collect();
        out.sort_unstable();
        Some(out)
    }
}

/// Matrix of the induced action on Λ²V in the basis `e_i ∧ e_j`, `i < j`.
pub fn wedge2(m: &IMat) -> IMat {
    let n = m.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = IMat::zeros(pairs.len());
    for (c, &(i, j)) in pairs.iter().enumerate() {
        for (r, &(k, l)) in pairs.iter().enumerate() {
            let v = m.get(k, i) * m.get(l, j) - m.get(l, i) * m.get(k, j);
            out.set(r, c, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeylGroup {
        WeylGroup::of_type(&s.parse().unwrap())
    }

    #[test]
    fn generators_are_involutions() {
        let g = w("E6");
        for i in 0..6 {
            let s = g.generator(i);
            assert!(WeylGroup::is_identity(&WeylGroup::compose(s, s)));
            assert_eq!(g.length(s), 1);
            assert_eq!(g.det(s), -1);
        }
    }

    #[test]
    fn word_roundtrip_and_length() {
        let g = w("D5");
        let x = g.from_word(&[0, 1, 2, 3, 4, 2, 1, 0, 3]);
        let word = g.word(&x);
        assert_eq!(word.len(), g.length(&x));
        assert_eq!(g.from_word(&word), x);
    }

    #[test]
    fn longest_element_is_minus_one_in_e8() {
        let g = w("E8");
        let w0 = g.longest();
        assert_eq!(g.length(&w0), 120);
        assert_eq!(g.to_matrix(&w0), IMat::identity(8).neg());
    }

    #[test]
    fn charpoly_matches_matrix() {
        let g = w("E7");
        let x = g.from_word(&[0, 2, 3, 1, 4, 3, 5, 6, 5]);
        assert_eq!(g.charpoly(&x), g.to_matrix(&x).charpoly());
        let c = g.from_word(&[0, 1, 2, 3, 4, 5, 6]);
        // Coxeter element of E7 has order 18.
        assert_eq!(g.element_order(&c), 18);
    }

    #[test]
    fn matrix_roundtrip() {
        let g = w("A3xA2");
        let x = g.from_word(&[0, 1, 3, 2, 4]);
        assert_eq!(g.from_matrix(&g.to_matrix(&x)).unwrap(), x);
    }

    #[test]
    fn class_of_reflection() {
        let g = w("D4");
        let cls = g.conjugacy_class(g.generator(0), 1000).unwrap();
        assert_eq!(cls.len(), 12);
        let e8 = w("E8");
        assert_eq!(e8.conjugacy_class(e8.generator(3), 1000).unwrap().len(), 120);
    }

    #[test]
    fn wedge2_of_identity() {
        let m = wedge2(&IMat::identity(4));
        assert!(m.is_identity());
        assert_eq!(m.dim(), 6);
    }
}
