//! Partitions, Murnaghan–Nakayama, and hyperoctahedral characters.

use std::collections::HashMap;

pub type Partition = Vec<usize>;

/// All partitions of `n`, parts descending, in ascending lexicographic
/// order (so `1^n` comes first and `(n)` last).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.reverse();
    out
}

/// Ordered pairs of partitions `(α, β)` with `|α| + |β| = n`.
pub fn bipartitions(n: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for a in partitions(k).into_iter().rev() {
            for b in partitions(n - k).into_iter().rev() {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

/// `n(λ) = Σ (i−1) λ_i`.
pub fn n_of(lambda: &[usize]) -> usize {
    lambda.iter().enumerate().map(|(i, &l)| i * l).sum()
}

pub fn conjugate(lambda: &[usize]) -> Partition {
    let m = lambda.first().copied().unwrap_or(0);
    (1..=m)
        .map(|j| lambda.iter().filter(|&&l| l >= j).count())
        .collect()
}

/// Centraliser order of a permutation of cycle type `lambda`.
pub fn z_lambda(lambda: &[usize]) -> u64 {
    let mut mult: HashMap<usize, u64> = HashMap::new();
    for &p in lambda {
        *mult.entry(p).or_default() += 1;
    }
    mult.iter()
        .map(|(&k, &a)| (k as u64).pow(a as u32) * (1..=a).product::<u64>())
        .product()
}

/// Beta-set of `lambda` with `len` beads.
fn beta_set(lambda: &[usize], len: usize) -> Vec<usize> {
    (0..len)
        .map(|i| lambda.get(i).copied().unwrap_or(0) + len - 1 - i)
        .collect()
}

/// Ways to remove a rim hook of length `k`: each result is the new
/// beta-set and the sign `(−1)^{leg length}`.
fn remove_hooks(beta: &[usize], k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let t = b - k;
        let between = beta.iter().filter(|&&x| x > t && x < b).count();
        let mut nb = beta.to_vec();
        nb[idx] = t;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        out.push((nb, if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

fn mn_beta(beta: &[usize], cycles: &[usize]) -> i64 {
    match cycles.split_first() {
        None => 1,
        Some((&k, rest)) => remove_hooks(beta, k)
            .into_iter()
            .map(|(nb, s)| s * mn_beta(&nb, rest))
            .sum(),
    }
}

/// `χ^λ(ρ)` for the symmetric group by Murnaghan–Nakayama.
pub fn mn_character(lambda: &[usize], rho: &[usize]) -> i64 {
    let n: usize = lambda.iter().sum();
    assert_eq!(n, rho.iter().sum::<usize>(), "sizes differ");
    let len = lambda.len().max(1);
    mn_beta(&beta_set(lambda, len), rho)
}

/// Hyperoctahedral character `χ_{(α,β)}` on the class with positive cycles
/// `lam` and negative cycles `mu`. `χ_{((n),∅)}` is trivial and
/// `χ_{(∅,(n))}` is `(−1)^{#negative cycles}`.
pub fn bn_character(alpha: &[usize], beta: &[usize], lam: &[usize], mu: &[usize]) -> i64 {
    let mut cycles: Vec<(usize, bool)> = lam.iter().map(|&k| (k, false)).collect();
    cycles.extend(mu.iter().map(|&k| (k, true)));
    cycles.sort_by(|a, b| b.cmp(a));
    let ba = beta_set(alpha, alpha.len().max(1) + 1);
    let bb = beta_set(beta, beta.len().max(1) + 1);
    bn_rec(&ba, &bb, &cycles)
}

fn bn_rec(ba: &[usize], bb: &[usize], cycles: &[(usize, bool)]) -> i64 {
    let Some((&(k, neg), rest)) = cycles.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (na, s) in remove_hooks(ba, k) {
        total += s * bn_rec(&na, bb, rest);
    }
    let eps = if neg { -1 } else { 1 };
    for (nb, s) in remove_hooks(bb, k) {
        total += eps * s * bn_rec(ba, &nb, rest);
    }
    total
}

/// Centraliser order in `W(B_n)` of the class with positive cycles `lam`
/// and negative cycles `mu`.
pub fn z_bn(lam: &[usize], mu: &[usize]) -> u64 {
    let mut count: HashMap<(usize, bool), u64> = HashMap::new();
    for &k in lam {
        *count.entry((k, false)).or_default() += 1;
    }
    for &k in mu {
        *count.entry((k, true)).or_default() += 1;
    }
    count
        .iter()
        .map(|(&(k, _), &a)| (2 * k as u64).pow(a as u32) * (1..=a).product::<u64>())
        .product()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Symbol of a bipartition for type D, with a fixed number of
/// beads per row; entries are returned as a sorted multiset.
pub fn d_symbol_entries(alpha: &[usize], beta: &[usize], beads: usize) -> Vec<usize> {
    let mut e = beta_set(alpha, beads);
    e.extend(beta_set(beta, beads));
    e.sort_unstable();
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(partitions(3), vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
        assert_eq!(bipartitions(4).len(), 20);
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
        assert_eq!(conjugate(&[2, 2]), vec![2, 2]);
    }

    #[test]
    fn s5_standard_character() {
        let vals: Vec<i64> = partitions(5)
            .iter()
            .map(|rho| mn_character(&[4, 1], rho))
            .collect();
        // 1^5, 21^3, 2^21, 31^2, 32, 41, 5
        assert_eq!(vals, vec![4, 2, 0, 1, -1, 0, -1]);
    }

    #[test]
    fn sn_column_orthogonality_at_identity() {
        for n in 1..8 {
            let id = vec![1; n];
            let s: i64 = partitions(n)
                .iter()
                .map(|l| mn_character(l, &id).pow(2))
                .sum();
            assert_eq!(s as u64, factorial(n as u64));
        }
    }

    #[test]
    fn bn_linear_characters() {
        assert_eq!(bn_character(&[3], &[], &[2], &[1]), 1);
        assert_eq!(bn_character(&[], &[3], &[2], &[1]), -1);
        assert_eq!(bn_character(&[], &[3], &[], &[2, 1]), 1);
        // (1^3, ∅) is the sign of S_3 pulled back.
        assert_eq!(bn_character(&[1, 1, 1], &[], &[2], &[1]), -1);
    }

    #[test]
    fn bn_degrees_square_sum() {
        for n in 1..6 {
            let id = vec![1; n];
            let s: i64 = bipartitions(n)
                .iter()
                .map(|(a, b)| bn_character(a, b, &id, &[]).pow(2))
                .sum();
            assert_eq!(s as u64, (1u64 << n) * factorial(n as u64));
        }
    }
}
