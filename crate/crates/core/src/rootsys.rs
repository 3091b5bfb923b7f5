//! Simply-laced root systems (types A, D, E and their products), root
//! subsystems, and affine Dynkin data.
//!
//! Roots are integer vectors in the simple-root basis. The inner product is
//! `x^T C y` with `C` the Cartan matrix, so every root has norm 2.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IMat;

pub type Root = Vec<i64>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    E,
    D,
    A,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::D => 'D',
            Series::E => 'E',
        }
    }
}

/// One simple factor `X_m`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub series: Series,
    pub rank: usize,
}

impl Factor {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Factor { series, rank })
        } else {
            Err(Error::UnsupportedType(format!("{}{}", series.letter(), rank)))
        }
    }

    /// Number of positive roots.
    pub fn nu(&self) -> usize {
        let m = self.rank;
        match (self.series, m) {
            (Series::A, _) => m * (m + 1) / 2,
            (Series::D, _) => m * (m - 1),
            (Series::E, 6) => 36,
            (Series::E, 7) => 63,
            (Series::E, _) => 120,
        }
    }

    /// Degrees of the basic polynomial invariants.
    pub fn degrees(&self) -> Vec<u64> {
        let m = self.rank as u64;
        match (self.series, m) {
            (Series::A, _) => (2..=m + 1).collect(),
            (Series::D, _) => {
                let mut d: Vec<u64> = (1..m).map(|k| 2 * k).collect();
                d.push(m);
                d.sort_unstable();
                d
            }
            (Series::E, 6) => vec![2, 5, 6, 8, 9, 12],
            (Series::E, 7) => vec![2, 6, 8, 10, 12, 14, 18],
            (Series::E, _) => vec![2, 8, 12, 14, 18, 20, 24, 30],
        }
    }

    /// Cartan matrix in Bourbaki numbering.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut edge = |a: usize, b: usize| {
            c[a][b] = -1;
            c[b][a] = -1;
        };
        match self.series {
            Series::A => {
                for i in 0..n.saturating_sub(1) {
                    edge(i, i + 1);
                }
            }
            Series::D => {
                for i in 0..n - 2 {
                    edge(i, i + 1);
                }
                edge(n - 3, n - 1);
            }
            Series::E => {
                edge(0, 2);
                edge(1, 3);
                for i in 2..n - 1 {
                    edge(i, i + 1);
                }
            }
        }
        c
    }

    fn sort_key(&self) -> (Series, std::cmp::Reverse<usize>) {
        (self.series, std::cmp::Reverse(self.rank))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

/// Product type label, factors in canonical order (E, D, A; rank descending).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct TypeLabel {
    factors: Vec<Factor>,
}

impl TypeLabel {
    pub fn new(mut factors: Vec<Factor>) -> Self {
        factors.sort_by_key(|f| f.sort_key());
        TypeLabel { factors }
    }

    pub fn simple(series: Series, rank: usize) -> Result<Self> {
        Ok(TypeLabel::new(vec![Factor::new(series, rank)?]))
    }

    pub fn empty() -> Self {
        TypeLabel::default()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn nu(&self) -> usize {
        self.factors.iter().map(Factor::nu).sum()
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.factors.iter().flat_map(Factor::degrees).collect();
        d.sort_unstable();
        d
    }

    pub fn weyl_order(&self) -> u64 {
        self.degrees().iter().product()
    }

    /// Compact form, e.g. `A2^2A1^2`, `D4A3`, `∅`.
    pub fn compact(&self) -> String {
        if self.factors.is_empty() {
            return "∅".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.factors.len() {
            let f = self.factors[i];
            let mut k = 1;
            while i + k < self.factors.len() && self.factors[i + k] == f {
                k += 1;
            }
            out.push_str(&f.to_string());
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
            i += k;
        }
        out
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    /// Parses `E8`, `D5xA3`, `a4xA4`; a factor may carry a power (`A1^4`).
    /// The empty type is written `∅`, `-` or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "-" || s == "1" {
            return Ok(TypeLabel::empty());
        }
        let mut factors = Vec::new();
        for part in s.split(['x', 'X', '*']) {
            let part = part.trim();
            let bad = || Error::UnsupportedType(part.to_string());
            let mut chars = part.chars();
            let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Series::A,
                Some('D') => Series::D,
                Some('E') => Series::E,
                _ => return Err(bad()),
            };
            let rest: String = chars.collect();
            let (rank_s, pow_s) = match rest.split_once('^') {
                Some((r, p)) => (r, Some(p)),
                None => (rest.as_str(), None),
            };
            let rank: usize = rank_s.parse().map_err(|_| bad())?;
            let pow: usize = match pow_s {
                Some(p) => p.parse().map_err(|_| bad())?,
                None => 1,
            };
            let f = Factor::new(series, rank).map_err(|_| bad())?;
            for _ in 0..pow {
                factors.push(f);
            }
        }
        let label = TypeLabel::new(factors);
        if label.rank() > 16 {
            return Err(Error::UnsupportedType(format!("{s} (total rank > 16)")));
        }
        Ok(label)
    }
}

/// A root system with an explicit list of roots.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: TypeLabel,
    cartan: Vec<Vec<i64>>,
    /// Positive roots (sorted by height, then lexicographically) followed by
    /// their negatives in the same order.
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn new(label: &TypeLabel) -> Self {
        let rank = label.rank();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut off = 0;
        for f in label.factors() {
            let c = f.cartan();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    cartan[off + i][off + j] = c[i][j];
                }
            }
            off += f.rank;
        }
        Self::from_cartan(label.clone(), cartan)
    }

    fn from_cartan(label: TypeLabel, cartan: Vec<Vec<i64>>) -> Self {
        let rank = cartan.len();
        let mut pos: BTreeSet<(i64, Root)> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..rank {
            let mut r = vec![0; rank];
            r[i] = 1;
            pos.insert((1, r.clone()));
            queue.push_back(r);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..rank {
                let p: i64 = (0..rank).map(|k| r[k] * cartan[k][i]).sum();
                if p < 0 {
                    let mut s = r.clone();
                    s[i] -= p;
                    let h = s.iter().sum();
                    if pos.insert((h, s.clone())) {
                        queue.push_back(s);
                    }
                }
            }
        }
        let mut roots: Vec<Root> = pos.into_iter().map(|(_, r)| r).collect();
        let neg: Vec<Root> = roots
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        roots.extend(neg);
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        RootSystem {
            label,
            cartan,
            roots,
            index,
        }
    }

    pub fn label(&self) -> &TypeLabel {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn nu(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.nu()]
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// Index of `-roots[i]`.
    pub fn negative_of(&self, i: usize) -> usize {
        let nu = self.nu();
        if i < nu {
            i + nu
        } else {
            i - nu
        }
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank()];
        r[i] = 1;
        r
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.label.degrees()
    }

    pub fn weyl_order(&self) -> u64 {
        self.label.weyl_order()
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * self.cartan[i][j] * y[j];
            }
        }
        s
    }

    /// `s_α(x) = x − ⟨x, α⟩ α` for a root α.
    pub fn reflect(&self, alpha: &[i64], x: &[i64]) -> Root {
        let p = self.inner(x, alpha);
        x.iter().zip(alpha).map(|(a, b)| a - p * b).collect()
    }

    /// Matrix of the reflection in `alpha` on the root lattice.
    pub fn reflection_matrix(&self, alpha: &[i64]) -> IMat {
        let cols: Vec<Vec<i64>> = (0..self.rank())
            .map(|j| self.reflect(alpha, &self.simple_root(j)))
            .collect();
        IMat::from_columns(&cols)
    }

    pub fn simple_reflection(&self, i: usize) -> IMat {
        self.reflection_matrix(&self.simple_root(i))
    }

    /// Permutation of root indices induced by a lattice automorphism.
    pub fn root_permutation(&self, m: &IMat) -> Option<Vec<usize>> {
        self.roots
            .iter()
            .map(|r| self.root_index(&m.apply(r)))
            .collect()
    }

    pub fn is_positive(r: &[i64]) -> bool {
        r.iter().any(|&x| x > 0)
    }

    /// Highest root (unique root of maximal height) of a simple system.
    pub fn highest_root(&self) -> Root {
        self.positive_roots().last().cloned().unwrap_or_default()
    }
}

/// Build the root system of a type label.
pub fn build_root_system(label: &TypeLabel) -> Result<RootSystem> {
    if label.rank() > 16 {
        return Err(Error::UnsupportedType(label.to_string()));
    }
    Ok(RootSystem::new(label))
}

/// Dynkin-diagram component of a subsystem, with its simple roots listed in
/// Bourbaki order for the identified type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub factor: Factor,
    pub simple: Vec<Root>,
}

/// A reflection-closed subset of roots of a parent system.
#[derive(Clone, Debug)]
pub struct SubSystem {
    /// Indices into the parent's root list, sorted.
    pub roots: Vec<usize>,
    pub label: TypeLabel,
    /// Components in canonical order; simple roots in Bourbaki order.
    pub components: Vec<Component>,
    pub nu: usize,
}

impl SubSystem {
    /// Simple roots of the whole subsystem, concatenated over components.
    pub fn simple_roots(&self) -> Vec<Root> {
        self.components
            .iter()
            .flat_map(|c| c.simple.iter().cloned())
            .collect()
    }
}

/// Smallest reflection-closed subsystem of `rs` containing `seeds`.
pub fn subsystem_closure(rs: &RootSystem, seeds: &[Root]) -> Result<SubSystem> {
    let mut set: BTreeSet<usize> = BTreeSet::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in seeds {
        let i = rs
            .root_index(s)
            .ok_or_else(|| Error::Precondition(format!("{s:?} is not a root")))?;
        for j in [i, rs.negative_of(i)] {
            if set.insert(j) {
                queue.push_back(j);
            }
        }
    }
    while let Some(i) = queue.pop_front() {
        let current: Vec<usize> = set.iter().copied().collect();
        for j in current {
            for (a, b) in [(i, j), (j, i)] {
                let img = rs.reflect(rs.root(a), rs.root(b));
                let k = rs.root_index(&img).expect("reflection of a root is a root");
                if set.insert(k) {
                    queue.push_back(k);
                }
            }
        }
    }
    let roots: Vec<usize> = set.into_iter().collect();
    let vecs: Vec<Root> = roots.iter().map(|&i| rs.root(i).clone()).collect();
    let components = decompose(rs, &vecs);
    let label = TypeLabel::new(components.iter().map(|c| c.factor).collect());
    let nu = roots.len() / 2;
    if label.nu() != nu {
        return Err(Error::invariant(format!(
            "subsystem identified as {label} but has {nu} positive roots"
        )));
    }
    Ok(SubSystem {
        roots,
        label,
        components,
        nu,
    })
}

/// Subsystem with a prescribed simple system (e.g. a subdiagram of the
/// affine diagram).
pub fn subsystem_from_simple(rs: &RootSystem, simple: &[Root]) -> Result<SubSystem> {
    subsystem_closure(rs, simple)
}

fn lex_positive(r: &[i64]) -> bool {
    let h: i64 = r.iter().sum();
    if h != 0 {
        return h > 0;
    }
    r.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Split a closed root set into simple components, each with Bourbaki-ordered
/// simple roots; components sorted canonically.
fn decompose(rs: &RootSystem, roots: &[Root]) -> Vec<Component> {
    let pos: Vec<&Root> = roots.iter().filter(|r| lex_positive(r)).collect();
    let posset: BTreeSet<&Root> = pos.iter().copied().collect();
    let simple: Vec<Root> = pos
        .iter()
        .filter(|r| {
            !pos.iter().any(|a| {
                let d: Root = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                posset.contains(&d)
            })
        })
        .map(|r| (*r).clone())
        .collect();
    let k = simple.len();
    let adj = |a: usize, b: usize| a != b && rs.inner(&simple[a], &simple[b]) != 0;
    let mut seen = vec![false; k];
    let mut comps = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut q = 0;
        while q < comp.len() {
            let v = comp[q];
            q += 1;
            for w in 0..k {
                if !seen[w] && adj(v, w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(order_component(&simple, &comp, &adj));
    }
    comps.sort_by(|a, b| {
        a.factor
            .sort_key()
            .cmp(&b.factor.sort_key())
            .then_with(|| a.simple.cmp(&b.simple))
    });
    comps
}

fn order_component(
    simple: &[Root],
    comp: &[usize],
    adj: &dyn Fn(usize, usize) -> bool,
) -> Component {
    let n = comp.len();
    let nbrs = |v: usize| -> Vec<usize> { comp.iter().copied().filter(|&w| adj(v, w)).collect() };
    let branch = comp.iter().copied().find(|&v| nbrs(v).len() == 3);
    // Walk from `from` away from `prev` until a leaf, returning the path.
    let walk = |from: usize, prev: usize| -> Vec<usize> {
        let mut path = vec![from];
        let (mut cur, mut last) = (from, prev);
        loop {
            let next: Vec<usize> = nbrs(cur).into_iter().filter(|&w| w != last).collect();
            match next.first() {
                Some(&w) => {
                    path.push(w);
                    last = cur;
                    cur = w;
                }
                None => return path,
            }
        }
    };
    let (factor, order) = match branch {
        None => {
            let order = if n == 1 {
                vec![comp[0]]
            } else {
                let end = comp
                    .iter()
                    .copied()
                    .find(|&v| nbrs(v).len() == 1)
                    .expect("path has an end");
                walk(end, usize::MAX)
            };
            (Factor { series: Series::A, rank: n }, order)
        }
        Some(b) => {
            let mut arms: Vec<Vec<usize>> = nbrs(b).into_iter().map(|w| walk(w, b)).collect();
            arms.sort_by_key(|a| (a.len(), a[0]));
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            match lens.as_slice() {
                [1, 1, r] => {
                    // D_n: long arm from its leaf to the branch, then the two short leaves.
                    let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
                    order.push(b);
                    order.push(arms[0][0]);
                    order.push(arms[1][0]);
                    (Factor { series: Series::D, rank: r + 3 }, order)
                }
                [1, 2, r] if (2..=4).contains(r) => {
                    // E_n: 1-3-4-5-..., 2 attached to 4.
                    let mut order = vec![arms[1][1], arms[0][0], arms[1][0], b];
                    order.extend(arms[2].iter().copied());
                    (Factor { series: Series::E, rank: r + 4 }, order)
                }
                _ => panic!("non-simply-laced or infinite-type diagram in a root system"),
            }
        }
    };
    Component {
        factor,
        simple: order.into_iter().map(|i| simple[i].clone()).collect(),
    }
}

/// Affine Dynkin data of a simple root system.
#[derive(Clone, Debug)]
pub struct AffineDiagram {
    /// Node 0 is the affine node; nodes `1..=r` are the simple roots.
    pub marks: Vec<i64>,
    /// Affine node vectors: `-θ` followed by the simple roots.
    pub nodes: Vec<Root>,
    /// Diagram automorphisms induced by the fundamental group, as node
    /// permutations (`omega[k][i]` is the image of node `i`). Index 0 is the
    /// identity.
    pub omega: Vec<Vec<usize>>,
}

impl AffineDiagram {
    /// Order of the fundamental group.
    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn rank(&self) -> usize {
        self.marks.len() - 1
    }
}

pub fn affine_diagram(rs: &RootSystem) -> Result<AffineDiagram> {
    if !rs.label().is_simple() {
        return Err(Error::Precondition(format!(
            "affine diagram requires a simple type, got {}",
            rs.label()
        )));
    }
    let r = rs.rank();
    let theta = rs.highest_root();
    let mut marks = vec![1i64];
    marks.extend(theta.iter().copied());
    let mut nodes = vec![theta.iter().map(|x| -x).collect::<Root>()];
    for i in 0..r {
        nodes.push(rs.simple_root(i));
    }
    let lcm = marks
        .iter()
        .fold(1i64, |acc, &m| num_integer::lcm(acc, m));
    // Alcove vertices in coweight coordinates scaled by lcm: v_0 = 0,
    // v_i = lcm/a_i · e_i.
    let vertex = |i: usize| -> Vec<i64> {
        let mut v = vec![0; r];
        if i > 0 {
            v[i - 1] = lcm / marks[i];
        }
        v
    };
    let w0 = longest_element(rs, &(0..r).collect::<Vec<_>>());
    let mut omega = vec![(0..=r).collect::<Vec<usize>>()];
    for j in 1..=r {
        if marks[j] != 1 {
            continue;
        }
        let others: Vec<usize> = (0..r).filter(|&k| k != j - 1).collect();
        let w0j = longest_element(rs, &others);
        let wj = w0j.mul(&w0);
        let perm = alcove_permutation(rs, &wj, j, &vertex, lcm)
            .or_else(|| {
                let inv = wj.inverse_unimodular().expect("Weyl elements are unimodular");
                alcove_permutation(rs, &inv, j, &vertex, lcm)
            })
            .ok_or_else(|| Error::invariant("fundamental group action not found"))?;
        omega.push(perm);
    }
    Ok(AffineDiagram {
        marks,
        nodes,
        omega,
    })
}

/// Node permutation of `x ↦ w x + ω_j^∨` on the alcove vertices, if that map
/// preserves the fundamental alcove.
fn alcove_permutation(
    rs: &RootSystem,
    w: &IMat,
    j: usize,
    vertex: &dyn Fn(usize) -> Vec<i64>,
    lcm: i64,
) -> Option<Vec<usize>> {
    let r = rs.rank();
    let winv = w.inverse_unimodular()?;
    let verts: Vec<Vec<i64>> = (0..=r).map(vertex).collect();
    let mut perm = Vec::with_capacity(r + 1);
    for v in &verts {
        // ⟨α_k, w x⟩ = ⟨w^{-1} α_k, x⟩; coweight coords pair with root coords.
        let mut img: Vec<i64> = (0..r)
            .map(|k| {
                let col = winv.column(k);
                (0..r).map(|m| col[m] * v[m]).sum()
            })
            .collect();
        img[j - 1] += lcm;
        let k = verts.iter().position(|u| *u == img)?;
        perm.push(k);
    }
    Some(perm)
}

/// Longest element of the standard parabolic subgroup on `subset`, as a
/// matrix on the full root lattice.
pub fn longest_element(rs: &RootSystem, subset: &[usize]) -> IMat {
    let mut w = IMat::identity(rs.rank());
    loop {
        let mut extended = false;
        for &i in subset {
            // Right-multiplying by s_i lengthens w iff w(α_i) > 0.
            if RootSystem::is_positive(&w.column(i)) {
                w = w.mul(&rs.simple_reflection(i));
                extended = true;
            }
        }
        if !extended {
            return w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        build_root_system(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn nu_values() {
        assert_eq!(rs("A1").nu(), 1);
        assert_eq!(rs("E8").nu(), 120);
        assert_eq!(rs("D8").nu(), 56);
        assert_eq!(rs("A8").nu(), 36);
        assert_eq!(rs("A4xA4").nu(), 20);
        let e7 = rs("E7");
        assert_eq!(e7.nu(), 63);
        let from_degrees: u64 = e7.degrees().iter().map(|d| d - 1).sum();
        assert_eq!(from_degrees, 63);
    }

    #[test]
    fn label_grammar() {
        let l: TypeLabel = "a3xd5".parse().unwrap();
        assert_eq!(l.to_string(), "D5xA3");
        let l: TypeLabel = "A1^2xA3".parse().unwrap();
        assert_eq!(l.to_string(), "A3xA1xA1");
        assert_eq!(l.compact(), "A3A1^2");
        assert!("D3".parse::<TypeLabel>().is_err());
        assert!("E9".parse::<TypeLabel>().is_err());
        assert!("B2".parse::<TypeLabel>().is_err());
        let err = "A2xF4".parse::<TypeLabel>().unwrap_err();
        assert!(err.to_string().contains("F4"));
        assert!("".parse::<TypeLabel>().unwrap().is_empty());
    }

    #[test]
    fn cartan_is_simply_laced() {
        for s in ["A5", "D6", "E6", "E7", "E8", "D4xA2"] {
            let r = rs(s);
            let c = r.cartan();
            for i in 0..c.len() {
                assert_eq!(c[i][i], 2);
                for j in 0..c.len() {
                    assert_eq!(c[i][j], c[j][i]);
                    if i != j {
                        assert!(c[i][j] == 0 || c[i][j] == -1);
                    }
                }
            }
            for root in r.roots() {
                assert_eq!(r.inner(root, root), 2);
            }
        }
    }

    #[test]
    fn subsystem_examples() {
        let e8 = rs("E8");
        let empty = subsystem_closure(&e8, &[]).unwrap();
        assert!(empty.label.is_empty());
        assert_eq!(empty.nu, 0);

        let a3 = rs("A3");
        let s = subsystem_closure(&a3, &[vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(s.label.to_string(), "A1xA1");
        assert_eq!(s.nu, 2);

        // Order-2 torsion in E8: drop one of the two mark-2 nodes.
        let aff = affine_diagram(&e8).unwrap();
        let drop = |j: usize| -> Vec<Root> {
            (0..=8)
                .filter(|&i| i != j)
                .map(|i| aff.nodes[i].clone())
                .collect()
        };
        let e7a1 = subsystem_closure(&e8, &drop(8)).unwrap();
        assert_eq!(e7a1.label.to_string(), "E7xA1");
        let keep: Vec<Root> = (0..=8)
            .filter(|&i| i != 1)
            .map(|i| aff.nodes[i].clone())
            .collect();
        let d8 = subsystem_closure(&e8, &keep).unwrap();
        assert_eq!(d8.label.to_string(), "D8");
        assert_eq!(d8.nu, 56);
    }

    #[test]
    fn closure_is_idempotent() {
        let e7 = rs("E7");
        let s = subsystem_closure(&e7, &[e7.root(5).clone(), e7.root(40).clone()]).unwrap();
        let again: Vec<Root> = s.roots.iter().map(|&i| e7.root(i).clone()).collect();
        let t = subsystem_closure(&e7, &again).unwrap();
        assert_eq!(s.roots, t.roots);
    }

    #[test]
    fn affine_data() {
        let e8 = affine_diagram(&rs("E8")).unwrap();
        assert_eq!(e8.marks, vec![1, 2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(e8.n(), 1);
        assert_eq!(affine_diagram(&rs("E6")).unwrap().n(), 3);
        assert_eq!(affine_diagram(&rs("E7")).unwrap().n(), 2);
        let a4 = affine_diagram(&rs("A4")).unwrap();
        assert_eq!(a4.n(), 5);
        assert!(a4.marks.iter().all(|&m| m == 1));
        for d in ["D4", "D5", "D6", "D7"] {
            assert_eq!(affine_diagram(&rs(d)).unwrap().n(), 4);
        }
        assert!(affine_diagram(&rs("A2xA1")).is_err());
    }

    #[test]
    fn omega_preserves_marks_and_adjacency() {
        for s in ["A5", "D4", "D5", "D6", "E6", "E7"] {
            let r = rs(s);
            let aff = affine_diagram(&r).unwrap();
            for p in &aff.omega {
                for i in 0..p.len() {
                    assert_eq!(aff.marks[i], aff.marks[p[i]]);
                    for j in 0..p.len() {
                        assert_eq!(
                            r.inner(&aff.nodes[i], &aff.nodes[j]),
                            r.inner(&aff.nodes[p[i]], &aff.nodes[p[j]])
                        );
                    }
                }
            }
            // Ω acts simply transitively on mark-1 nodes.
            let images: BTreeSet<usize> = aff.omega.iter().map(|p| p[0]).collect();
            assert_eq!(images.len(), aff.n());
        }
    }

    #[test]
    fn highest_root_from_marks() {
        for s in ["A6", "D7", "E6", "E7", "E8"] {
            let r = rs(s);
            let aff = affine_diagram(&r).unwrap();
            let theta: Root = aff.marks[1..].to_vec();
            assert_eq!(theta, r.highest_root());
            let max_height = r.positive_roots().iter().map(|x| x.iter().sum::<i64>()).max();
            assert_eq!(Some(theta.iter().sum::<i64>()), max_height);
        }
    }
}
