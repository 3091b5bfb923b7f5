//! Small dense integer matrices and modular linear algebra.
//!
//! Weyl group elements are represented by their matrices on the root
//! lattice (columns are images of simple roots), so everything here is
//! exact. The modular part backs the class-algebra eigenspace splitting
//! used when generating character tables.

use std::fmt;

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    n: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn zeros(n: usize) -> Self {
        IMat {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n, "non-square matrix");
            m.data[i * n..(i + 1) * n].copy_from_slice(r);
        }
        m
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n, "non-square matrix");
            for i in 0..n {
                m.data[i * n + j] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.data
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.data[i * n + j] * v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IMat {
        let n = self.n;
        let mut out = IMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == IMat::identity(self.n)
    }

    pub fn neg(&self) -> IMat {
        IMat {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Characteristic polynomial `det(t·I − A)`, coefficients in increasing
    /// degree (length `n + 1`, monic). Faddeev–LeVerrier; every division is
    /// exact for integer input.
    pub fn charpoly(&self) -> Vec<i64> {
        let n = self.n;
        let mut coeffs = vec![0i64; n + 1];
        coeffs[n] = 1;
        let mut m = IMat::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let tr = am.trace();
            debug_assert_eq!(tr % k as i64, 0);
            let c = -tr / k as i64;
            coeffs[n - k] = c;
            m = am;
            for i in 0..n {
                m.data[i * n + i] += c;
            }
        }
        coeffs
    }

    /// Determinant via the characteristic polynomial (n is small).
    pub fn det(&self) -> i64 {
        let cp = self.charpoly();
        if self.n.is_multiple_of(2) {
            cp[0]
        } else {
            -cp[0]
        }
    }

    /// Multiplicative order, assuming the matrix has finite order ≤ `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Inverse of a unimodular integer matrix (exact; `None` otherwise).
    pub fn inverse_unimodular(&self) -> Option<IMat> {
        let n = self.n;
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) as i128).collect())
            .collect();
        let mut inv: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i128).collect())
            .collect();
        // Integer row reduction with unimodular steps (Euclid on pivots).
        for col in 0..n {
            loop {
                let mut best: Option<usize> = None;
                for r in col..n {
                    if a[r][col] != 0 && best.is_none_or(|b| a[r][col].abs() < a[b][col].abs()) {
                        best = Some(r);
                    }
                }
                let p = best?;
                a.swap(col, p);
                inv.swap(col, p);
                let mut done = true;
                for r in col + 1..n {
                    if a[r][col] != 0 {
                        let q = a[r][col] / a[col][col];
                        for j in 0..n {
                            a[r][j] -= q * a[col][j];
                            inv[r][j] -= q * inv[col][j];
                        }
                        if a[r][col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if a[col][col].abs() != 1 {
                return None;
            }
        }
        for col in (0..n).rev() {
            let s = a[col][col];
            for j in 0..n {
                a[col][j] *= s;
                inv[col][j] *= s;
            }
            for r in 0..col {
                let q = a[r][col];
                if q != 0 {
                    for j in 0..n {
                        a[r][j] -= q * a[col][j];
                        inv[r][j] -= q * inv[col][j];
                    }
                }
            }
        }
        let rows: Vec<Vec<i64>> = inv
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect();
        Some(IMat::from_rows(&rows))
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IMat({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Arithmetic modulo the Mersenne prime 2^61 − 1.
pub mod modp {
    pub const P: u64 = (1u64 << 61) - 1;

    #[inline]
    pub fn reduce(x: u128) -> u64 {
        let lo = (x as u64) & P;
        let hi = (x >> 61) as u64;
        let mut s = lo + (hi & P) + ((x >> 122) as u64);
        while s >= P {
            s -= P;
        }
        s
    }

    #[inline]
    pub fn add(a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= P {
            s - P
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + P - b
        }
    }

    #[inline]
    pub fn mul(a: u64, b: u64) -> u64 {
        reduce(a as u128 * b as u128)
    }

    pub fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64) -> u64 {
        assert!(a != 0, "inverse of zero mod p");
        pow(a, P - 2)
    }

    pub fn from_i64(x: i64) -> u64 {
        if x >= 0 {
            x as u64 % P
        } else {
            sub(0, ((-x) as u64) % P)
        }
    }

    /// Symmetric lift to `(-P/2, P/2]`.
    pub fn lift(a: u64) -> i64 {
        if a > P / 2 {
            -((P - a) as i64)
        } else {
            a as i64
        }
    }

    /// Row-reduced basis of the null space of `m` (rows × cols, row-major).
    /// Returned vectors have length `cols`.
    pub fn nullspace(m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut a: Vec<Vec<u64>> = m.to_vec();
        let rows = a.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, p);
            let iv = inv(a[r][c]);
            for x in a[r].iter_mut() {
                *x = mul(*x, iv);
            }
            for i in 0..rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..cols {
                        a[i][j] = sub(a[i][j], mul(f, a[r][j]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; cols];
                v[f] = 1;
                for (ri, &pc) in pivots.iter().enumerate() {
                    v[pc] = sub(0, a[ri][f]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial of a square matrix mod p (Hessenberg
    /// reduction followed by the standard recurrence). Increasing degree.
    pub fn charpoly(m: &[Vec<u64>]) -> Vec<u64> {
        let n = m.len();
        let mut h: Vec<Vec<u64>> = m.to_vec();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| h[i][c] != 0) else {
                continue;
            };
            if p != c + 1 {
                h.swap(p, c + 1);
                for row in h.iter_mut() {
                    row.swap(p, c + 1);
                }
            }
            let iv = inv(h[c + 1][c]);
            for i in c + 2..n {
                let f = mul(h[i][c], iv);
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = mul(f, h[c + 1][j]);
                    h[i][j] = sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = mul(f, row[i]);
                    row[c + 1] = add(row[c + 1], t);
                }
            }
        }
        // p_k(t) = det(t - H_k) for leading k×k block.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            // p_{k+1} = (t - h_kk) p_k - sum_{i<k} h_ik * prod_{j=i+1..k} h_{j,j-1} * p_i
            let mut next = vec![0u64; k + 2];
            for (d, &c) in polys[k].iter().enumerate() {
                next[d + 1] = add(next[d + 1], c);
                next[d] = sub(next[d], mul(h[k][k], c));
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = mul(prod, h[i + 1][i]);
                let f = mul(h[i][k], prod);
                if f != 0 {
                    for (d, &c) in polys[i].iter().enumerate() {
                        next[d] = sub(next[d], mul(f, c));
                    }
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| add(mul(acc, x), c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_rotation() {
        // Coxeter element of A2 on the root lattice: order 3, charpoly t^2+t+1.
        let m = IMat::from_rows(&[vec![-1, 1], vec![-1, 0]]);
        assert_eq!(m.charpoly(), vec![1, 1, 1]);
        assert_eq!(m.order(10), Some(3));
        assert_eq!(m.det(), 1);
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = IMat::from_rows(&[vec![2, 1, 0], vec![1, 1, 0], vec![0, 3, 1]]);
        let inv = m.inverse_unimodular().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = IMat::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(sing.inverse_unimodular().is_none());
    }

    #[test]
    fn modular_charpoly_matches_integer() {
        let m = IMat::from_rows(&[vec![1, 2, 0], vec![-3, 4, 1], vec![5, 0, -2]]);
        let cp = m.charpoly();
        let mm: Vec<Vec<u64>> = (0..3)
            .map(|i| (0..3).map(|j| modp::from_i64(m.get(i, j))).collect())
            .collect();
        let cpm = modp::charpoly(&mm);
        let lifted: Vec<i64> = cpm.iter().map(|&c| modp::lift(c)).collect();
        assert_eq!(lifted, cp);
    }

    #[test]
    fn modular_nullspace() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = modp::nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &m {
                let s = row
                    .iter()
                    .zip(&v)
                    .fold(0, |acc, (&a, &b)| modp::add(acc, modp::mul(a, b)));
                assert_eq!(s, 0);
            }
        }
    }
}
