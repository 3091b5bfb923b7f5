//! Character tables from class multiplication coefficients (Dixon–Schneider
//! over a large prime field).
//!
//! For a class `C_i` the matrix `M_i[j][k] = #{y ∈ C_i : y z_k ∈ C_j}` has
//! the central-character vectors `(|C_j| χ(z_j)/χ(1))_j` as common right
//! eigenvectors with eigenvalue `|C_i| χ(z_i)/χ(1)`. Splitting the space by
//! several such matrices isolates every character.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::modp;
use crate::weyl::{Perm, WeylGroup};

/// Classes of a group given by representatives, sizes and an identifier.
pub struct ClassSystem<'a> {
    pub g: &'a WeylGroup,
    pub reps: Vec<Perm>,
    pub sizes: Vec<u64>,
    pub identify: &'a (dyn Fn(&[u16]) -> usize + Sync),
}

/// Largest class that will be enumerated element by element.
pub const MAX_SPLIT_CLASS: usize = 400_000;

/// Class multiplication matrix `M_i` (rows `j`, columns `k`).
pub fn class_matrix(cs: &ClassSystem<'_>, i: usize) -> Result<Vec<Vec<u64>>> {
    let n = cs.reps.len();
    let elems = cs
        .g
        .conjugacy_class(&cs.reps[i], cs.sizes[i] as usize + 1)
        .ok_or_else(|| Error::invariant("class larger than its recorded size"))?;
    if elems.len() as u64 != cs.sizes[i] {
        return Err(Error::invariant(format!(
            "class {i} has {} elements, expected {}",
            elems.len(),
            cs.sizes[i]
        )));
    }
    let column = |k: usize| -> Vec<u64> {
        let mut col = vec![0u64; n];
        let mut buf = vec![0u16; cs.g.num_roots()];
        for y in &elems {
            WeylGroup::compose_into(y, &cs.reps[k], &mut buf);
            col[(cs.identify)(&buf)] += 1;
        }
        col
    };
    #[cfg(feature = "parallel")]
    let cols: Vec<Vec<u64>> = (0..n).into_par_iter().map(column).collect();
    #[cfg(not(feature = "parallel"))]
    let cols: Vec<Vec<u64>> = (0..n).map(column).collect();
    Ok((0..n).map(|j| (0..n).map(|k| cols[k][j]).collect()).collect())
}

fn integer_eigenvalues(m: &[Vec<u64>], bound: i64) -> Vec<i64> {
    let cp = modp::charpoly(m);
    (-bound..=bound)
        .filter(|&x| modp::eval(&cp, modp::from_i64(x)) == 0)
        .collect()
}

/// Basis of `U ∩ ker(M − λ)` where `U` is spanned by `basis`.
fn intersect_kernel(m: &[Vec<u64>], lambda: i64, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = m.len();
    let d = basis.len();
    let l = modp::from_i64(lambda);
    // Columns: (M − λ) u_t.
    let image: Vec<Vec<u64>> = basis
        .iter()
        .map(|u| {
            (0..n)
                .map(|r| {
                    let mut s = 0u64;
                    for (c, &uc) in u.iter().enumerate() {
                        if uc != 0 {
                            s = modp::add(s, modp::mul(m[r][c], uc));
                        }
                    }
                    modp::sub(s, modp::mul(l, u[r]))
                })
                .collect()
        })
        .collect();
    let rows: Vec<Vec<u64>> = (0..n).map(|r| (0..d).map(|t| image[t][r]).collect()).collect();
    modp::nullspace(&rows, d)
        .into_iter()
        .map(|c| {
            (0..n)
                .map(|r| {
                    let mut s = 0u64;
                    for (t, &ct) in c.iter().enumerate() {
                        s = modp::add(s, modp::mul(ct, basis[t][r]));
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Irreducible characters (rows, values on the classes) in no particular
/// order. `id` is the index of the identity class.
pub fn dixon_schneider(cs: &ClassSystem<'_>, id: usize) -> Result<Vec<Vec<i64>>> {
    let n = cs.reps.len();
    let order: u64 = cs.sizes.iter().sum();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()];
    let mut by_size: Vec<usize> = (0..n).filter(|&i| i != id).collect();
    by_size.sort_by_key(|&i| (cs.sizes[i], i));
    for i in by_size {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        if cs.sizes[i] as usize > MAX_SPLIT_CLASS {
            break;
        }
        let m = class_matrix(cs, i)?;
        let eig = integer_eigenvalues(&m, cs.sizes[i] as i64);
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
                continue;
            }
            let mut got = 0;
            for &l in &eig {
                let piece = intersect_kernel(&m, l, &s);
                if !piece.is_empty() {
                    got += piece.len();
                    next.push(piece);
                }
            }
            if got != s.len() {
                return Err(Error::invariant(
                    "class matrix is not diagonalisable with integer eigenvalues",
                ));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::invariant(
            "small classes do not separate all irreducible characters",
        ));
    }
    let mut rows = Vec::with_capacity(n);
    for s in spaces {
        let v = &s[0];
        let scale = modp::inv(v[id]);
        let omega: Vec<i64> = v.iter().map(|&x| modp::lift(modp::mul(x, scale))).collect();
        let mut norm = BigRational::zero();
        for k in 0..n {
            norm += BigRational::new(BigInt::from(omega[k]).pow(2), BigInt::from(cs.sizes[k]));
        }
        let d2 = BigRational::from_integer(BigInt::from(order)) / norm;
        if !d2.is_integer() {
            return Err(Error::invariant("non-integral squared degree"));
        }
        let d2 = d2.to_integer();
        let d = d2.sqrt();
        if &d * &d != d2 {
            return Err(Error::invariant("squared degree is not a square"));
        }
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let num = BigInt::from(omega[k]) * &d;
            let den = BigInt::from(cs.sizes[k]);
            if !(&num % &den).is_zero() {
                return Err(Error::invariant("non-integral character value"));
            }
            let val = (num / den)
                .to_i64()
                .ok_or_else(|| Error::invariant("character value overflow"))?;
            row.push(val);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{classical_key, classical_table, ClassicalKey, StandardModel};
    use std::collections::HashMap;

    fn brute_table(s: &str) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let g = WeylGroup::of_type(&s.parse().unwrap());
        let (table, reps, _) = classical_table(&g);
        let model = StandardModel::new(&g);
        let keys: HashMap<ClassicalKey, usize> = reps
            .iter()
            .enumerate()
            .map(|(i, r)| (classical_key(&model, r), i))
            .collect();
        let ident = |w: &[u16]| keys[&classical_key(&model, w)];
        let cs = ClassSystem {
            g: &g,
            reps,
            sizes: table.classes.iter().map(|c| c.size).collect(),
            identify: &ident,
        };
        let mut ds = dixon_schneider(&cs, 0).unwrap();
        let mut mn: Vec<Vec<i64>> = table.chars.iter().map(|c| c.values.clone()).collect();
        ds.sort();
        mn.sort();
        (ds, mn)
    }

    #[test]
    fn s4_and_s5_match_murnaghan_nakayama() {
        for s in ["A3", "A4"] {
            let (ds, mn) = brute_table(s);
            assert_eq!(ds, mn, "{s}");
        }
    }

    #[test]
    fn d4_matches_hyperoctahedral_restriction() {
        for s in ["D4", "D5", "D6"] {
            let (ds, mn) = brute_table(s);
            assert_eq!(ds, mn, "{s}");
        }
    }
}
