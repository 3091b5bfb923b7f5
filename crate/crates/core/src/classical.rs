//! Classes and characters of W(A_n) and W(D_n) from partition combinatorics,
//! and class identification through the natural (signed) permutation
//! action.

use std::collections::HashMap;

use crate::chartab::{CharTable, ClassInfo, IrrChar};
use crate::combinat::{
    bipartitions, bn_character, factorial, mn_character, partitions, z_bn, z_lambda, Partition,
};
use crate::rootsys::{Factor, Series, TypeLabel};
use crate::weyl::{Perm, WeylGroup};

/// Coordinates of the roots of a classical simple factor in the standard
/// basis `e_1..e_N` (`N = n+1` for `A_n`, `N = n` for `D_n`).
#[derive(Clone, Debug)]
pub struct StandardModel {
    pub factor: Factor,
    pub dim: usize,
    pub ecoords: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl StandardModel {
    pub fn new(g: &WeylGroup) -> Self {
        let label = g.label();
        assert!(label.is_simple(), "standard model needs a simple factor");
        let factor = label.factors()[0];
        let n = factor.rank;
        let (dim, simple): (usize, Vec<Vec<i64>>) = match factor.series {
            Series::A => {
                let simple = (0..n)
                    .map(|i| {
                        let mut v = vec![0; n + 1];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                (n + 1, simple)
            }
            Series::D => {
                let mut simple: Vec<Vec<i64>> = (0..n - 1)
                    .map(|i| {
                        let mut v = vec![0; n];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                let mut last = vec![0; n];
                last[n - 2] = 1;
                last[n - 1] = 1;
                simple.push(last);
                (n, simple)
            }
            Series::E => panic!("no standard model for type E"),
        };
        let ecoords: Vec<Vec<i64>> = g
            .root_system()
            .roots()
            .iter()
            .map(|r| {
                let mut v = vec![0i64; dim];
                for (c, s) in r.iter().zip(&simple) {
                    for (x, y) in v.iter_mut().zip(s) {
                        *x += c * y;
                    }
                }
                v
            })
            .collect();
        let index = ecoords
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        StandardModel {
            factor,
            dim,
            ecoords,
            index,
        }
    }

    /// Root permutation of the signed permutation `e_i ↦ sign_i e_{image_i}`.
    pub fn perm_of_signed(&self, image: &[usize], sign: &[i64]) -> Perm {
        self.ecoords
            .iter()
            .map(|v| {
                let mut out = vec![0i64; self.dim];
                for i in 0..self.dim {
                    out[image[i]] += sign[i] * v[i];
                }
                self.index[&out] as u16
            })
            .collect()
    }

    /// Signed permutation of a root permutation (all signs +1 in type A).
    pub fn signed_of_perm(&self, w: &[u16]) -> (Vec<usize>, Vec<i64>) {
        let img = |v: &Vec<i64>| -> &Vec<i64> { &self.ecoords[w[self.index[v]] as usize] };
        let n = self.dim;
        let unit = |i: usize, j: usize, s: i64| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[j] = s;
            v
        };
        let mut image = vec![0; n];
        let mut sign = vec![1; n];
        match self.factor.series {
            Series::A => {
                // w(e_i − e_j) = e_{σi} − e_{σj}.
                for (i, im) in image.iter_mut().enumerate() {
                    let j = if i == 0 { 1 } else { 0 };
                    *im = img(&unit(i, j, -1)).iter().position(|&x| x == 1).unwrap();
                }
            }
            Series::D => {
                for i in 0..n {
                    let j = if i + 1 < n { i + 1 } else { i - 1 };
                    let a = img(&unit(i, j, -1));
                    let b = img(&unit(i, j, 1));
                    let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| (x + y) / 2).collect();
                    let p = s.iter().position(|&x| x != 0).unwrap();
                    image[i] = p;
                    sign[i] = s[p];
                }
            }
            Series::E => unreachable!(),
        }
        (image, sign)
    }
}

/// Signed cycle structure: positive cycle lengths and negative cycle
/// lengths, both descending.
pub fn signed_cycle_type(image: &[usize], sign: &[i64]) -> (Partition, Partition) {
    let n = image.len();
    let mut seen = vec![false; n];
    let (mut pos, mut neg) = (vec![], vec![]);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let (mut len, mut prod, mut k) = (0, 1, s);
        while !seen[k] {
            seen[k] = true;
            prod *= sign[k];
            k = image[k];
            len += 1;
        }
        if prod == 1 {
            pos.push(len);
        } else {
            neg.push(len);
        }
    }
    pos.sort_unstable_by(|a, b| b.cmp(a));
    neg.sort_unstable_by(|a, b| b.cmp(a));
    (pos, neg)
}

/// Standard signed permutation with consecutive blocks: positive cycles
/// `lam` first, then negative cycles `mu`.
fn standard_signed(n: usize, lam: &[usize], mu: &[usize]) -> (Vec<usize>, Vec<i64>) {
    let mut image = vec![0; n];
    let mut sign = vec![1; n];
    let mut p = 0;
    for (k, neg) in lam.iter().map(|&k| (k, false)).chain(mu.iter().map(|&k| (k, true))) {
        for t in 0..k {
            image[p + t] = p + (t + 1) % k;
        }
        if neg {
            sign[p + k - 1] = -1;
        }
        p += k;
    }
    (image, sign)
}

/// Whether a D-class of positive cycle type `lam` (no negative cycles) is
/// split, i.e. all parts even.
pub fn is_split(lam: &[usize], mu: &[usize]) -> bool {
    mu.is_empty() && !lam.is_empty() && lam.iter().all(|k| k % 2 == 0)
}

/// For an element with all cycles positive of even length: `true` if it is
/// conjugate to the standard representative by an element with an even
/// number of sign changes.
pub fn split_parity_plus(image: &[usize], sign: &[i64]) -> bool {
    let n = image.len();
    let mut seen = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut c = vec![];
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            c.push(k);
            k = image[k];
        }
        cycles.push(c);
    }
    let mut negatives = 0;
    for c in &cycles {
        // ε_0 = 1, ε_{t+1} = ε_t · sign(c_t).
        let mut eps = 1;
        for &x in &c[..c.len() - 1] {
            eps *= sign[x];
            if eps < 0 {
                negatives += 1;
            }
        }
    }
    negatives % 2 == 0
}

/// Class key of a classical element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalKey {
    pub pos: Partition,
    pub neg: Partition,
    /// `Some(true)` for the `+` half of a split class.
    pub half: Option<bool>,
}

pub fn classical_key(model: &StandardModel, w: &[u16]) -> ClassicalKey {
    let (image, sign) = model.signed_of_perm(w);
    let (pos, neg) = signed_cycle_type(&image, &sign);
    let half = match model.factor.series {
        Series::D if is_split(&pos, &neg) => Some(split_parity_plus(&image, &sign)),
        _ => None,
    };
    ClassicalKey { pos, neg, half }
}

fn part_name(p: &[usize]) -> String {
    let s: Vec<String> = p.iter().map(usize::to_string).collect();
    s.join(".")
}

pub fn class_name(key: &ClassicalKey, series: Series) -> String {
    match series {
        Series::A => format!("[{}]", part_name(&key.pos)),
        _ => {
            let half = match key.half {
                Some(true) => "+",
                Some(false) => "-",
                None => "",
            };
            format!("[{};{}]{half}", part_name(&key.pos), part_name(&key.neg))
        }
    }
}

/// Class keys in canonical order, each with a representative.
pub fn classical_classes(g: &WeylGroup, model: &StandardModel) -> Vec<(ClassicalKey, Perm, u64)> {
    let n = model.factor.rank;
    let mut out = Vec::new();
    match model.factor.series {
        Series::A => {
            let total = factorial(n as u64 + 1);
            for lam in partitions(n + 1) {
                let mut lam_desc = lam.clone();
                lam_desc.sort_unstable_by(|a, b| b.cmp(a));
                let (image, sign) = standard_signed(n + 1, &lam_desc, &[]);
                let perm = model.perm_of_signed(&image, &sign);
                let key = ClassicalKey {
                    pos: lam_desc.clone(),
                    neg: vec![],
                    half: None,
                };
                out.push((key, perm, total / z_lambda(&lam_desc)));
            }
        }
        Series::D => {
            let bn = (1u64 << n) * factorial(n as u64);
            for k in (0..=n).rev() {
                for lam in partitions(k) {
                    for mu in partitions(n - k) {
                        if mu.len() % 2 == 1 {
                            continue;
                        }
                        let size = bn / z_bn(&lam, &mu);
                        let (image, sign) = standard_signed(n, &lam, &mu);
                        let perm = model.perm_of_signed(&image, &sign);
                        if is_split(&lam, &mu) {
                            let mut flip = vec![1i64; n];
                            flip[0] = -1;
                            let t = model.perm_of_signed(&(0..n).collect::<Vec<_>>(), &flip);
                            let minus = WeylGroup::compose(&WeylGroup::compose(&t, &perm), &t);
                            for (half, p) in [(true, perm.clone()), (false, minus)] {
                                let key = ClassicalKey {
                                    pos: lam.clone(),
                                    neg: mu.clone(),
                                    half: Some(half),
                                };
                                out.push((key, p, size / 2));
                            }
                        } else {
                            let key = ClassicalKey {
                                pos: lam.clone(),
                                neg: mu.clone(),
                                half: None,
                            };
                            out.push((key, perm, size));
                        }
                    }
                }
            }
        }
        Series::E => unreachable!(),
    }
    let _ = g;
    out
}

/// Combinatorial parameter of a classical irreducible character: a
/// partition (`beta` empty, `half` unset) for type A, an unordered
/// bipartition for type D with `half` marking the two constituents of a
/// split pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharParam {
    pub alpha: Partition,
    pub beta: Partition,
    pub half: Option<bool>,
    pub series: Series,
}

impl CharParam {
    pub fn name(&self) -> String {
        match self.series {
            Series::A => format!("[{}]", part_name(&self.alpha)),
            _ => {
                let tag = match self.half {
                    Some(true) => "+",
                    Some(false) => "-",
                    None => "",
                };
                format!("[{};{}]{tag}", part_name(&self.alpha), part_name(&self.beta))
            }
        }
    }
}

/// Irreducible characters of a classical factor, indexed combinatorially,
/// with values on the given classes.
pub fn classical_characters(factor: Factor, classes: &[ClassicalKey]) -> Vec<(CharParam, Vec<i64>)> {
    let n = factor.rank;
    match factor.series {
        Series::A => partitions(n + 1)
            .into_iter()
            .rev()
            .map(|lam| {
                let vals = classes.iter().map(|c| mn_character(&lam, &c.pos)).collect();
                let p = CharParam {
                    alpha: lam,
                    beta: vec![],
                    half: None,
                    series: Series::A,
                };
                (p, vals)
            })
            .collect(),
        Series::D => {
            let mut out = Vec::new();
            for (a, b) in bipartitions(n) {
                if a < b {
                    continue;
                }
                let full: Vec<i64> = classes
                    .iter()
                    .map(|c| bn_character(&a, &b, &c.pos, &c.neg))
                    .collect();
                let param = |half| CharParam {
                    alpha: a.clone(),
                    beta: b.clone(),
                    half,
                    series: Series::D,
                };
                if a != b {
                    out.push((param(None), full));
                    continue;
                }
                for plus in [true, false] {
                    let vals = classes
                        .iter()
                        .zip(&full)
                        .map(|(c, &v)| match c.half {
                            None => v / 2,
                            Some(h) => {
                                let rho: Vec<usize> = c.pos.iter().map(|k| k / 2).collect();
                                let delta = split_delta(&a, &rho);
                                let s = if h == plus { 1 } else { -1 };
                                (v + s * delta) / 2
                            }
                        })
                        .collect();
                    out.push((param(Some(plus)), vals));
                }
            }
            out
        }
        Series::E => unreachable!(),
    }
}

/// `χ⁺ − χ⁻` on the `+` half of the split class with cycle type `2ρ`.
fn split_delta(alpha: &[usize], rho: &[usize]) -> i64 {
    (1i64 << rho.len()) * mn_character(alpha, rho)
}

/// Character table of a simple classical factor, labelled by the
/// combinatorial parameters.
pub fn classical_table(g: &WeylGroup) -> (CharTable, Vec<Perm>, StandardModel) {
    let (t, reps, model, _) = classical_table_with_params(g);
    (t, reps, model)
}

pub fn classical_table_with_params(
    g: &WeylGroup,
) -> (CharTable, Vec<Perm>, StandardModel, Vec<CharParam>) {
    let model = StandardModel::new(g);
    let classes = classical_classes(g, &model);
    let series = model.factor.series;
    let keys: Vec<ClassicalKey> = classes.iter().map(|c| c.0.clone()).collect();
    let chars = classical_characters(model.factor, &keys);
    let table = CharTable {
        group: TypeLabel::new(vec![model.factor]),
        order: g.order(),
        classes: classes
            .iter()
            .map(|(k, p, s)| ClassInfo {
                name: class_name(k, series),
                size: *s,
                word: g.word(p),
            })
            .collect(),
        chars: chars
            .iter()
            .map(|(p, values)| IrrChar {
                label: p.name(),
                values: values.clone(),
            })
            .collect(),
        families: vec![],
    };
    let reps = classes.into_iter().map(|c| c.1).collect();
    let params = chars.into_iter().map(|c| c.0).collect();
    (table, reps, model, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::of_type(&s.parse().unwrap())
    }

    #[test]
    fn class_counts() {
        for (s, k) in [("A1", 2), ("A2", 3), ("A4", 7), ("D4", 13), ("D5", 18), ("D6", 37)] {
            let g = group(s);
            let (t, _, _) = classical_table(&g);
            assert_eq!(t.num_classes(), k, "{s}");
            let total: u64 = t.classes.iter().map(|c| c.size).sum();
            assert_eq!(total, g.order(), "{s}");
        }
    }

    #[test]
    fn representatives_identify_to_themselves() {
        for s in ["A3", "D4", "D6"] {
            let g = group(s);
            let model = StandardModel::new(&g);
            for (key, perm, _) in classical_classes(&g, &model) {
                assert_eq!(classical_key(&model, &perm), key, "{s}");
            }
        }
    }

    #[test]
    fn identification_is_conjugation_invariant() {
        let g = group("D4");
        let model = StandardModel::new(&g);
        for (key, perm, size) in classical_classes(&g, &model) {
            let cls = g.conjugacy_class(&perm, 1000).unwrap();
            assert_eq!(cls.len() as u64, size, "{key:?}");
            for x in cls {
                assert_eq!(classical_key(&model, &x), key);
            }
        }
    }

    #[test]
    fn tables_are_orthogonal() {
        for s in ["A1", "A2", "A3", "A5", "A7", "D4", "D5", "D6", "D7", "D8"] {
            let (t, _, _) = classical_table(&group(s));
            t.verify().unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }
}
