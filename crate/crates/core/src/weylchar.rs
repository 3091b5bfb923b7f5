//! Weyl groups with their character tables, fake degrees and b-invariants.
//!
//! Classical factors are built from partition combinatorics, exceptional
//! factors are loaded from data files and re-verified, and products are
//! assembled from their factors. Built groups are cached per data source.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::chartab::{CharTable, IrrChar};
use crate::classical::{classical_key, classical_table_with_params, CharParam, ClassicalKey, StandardModel};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rootsys::{Series, SubSystem, TypeLabel};
use crate::weyl::{Perm, WeylGroup};

/// Environment variable naming an alternative data directory.
pub const DATA_DIR_ENV: &str = "REG235_DATA_DIR";

const PACKAGED: [(&str, &str); 3] = [
    ("E6", include_str!("../data/E6.tbl")),
    ("E7", include_str!("../data/E7.tbl")),
    ("E8", include_str!("../data/E8.tbl")),
];

/// Where exceptional tables come from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DataSource {
    pub dir: Option<PathBuf>,
}

impl DataSource {
    pub fn packaged() -> Self {
        DataSource { dir: None }
    }

    pub fn dir(path: impl Into<PathBuf>) -> Self {
        DataSource {
            dir: Some(path.into()),
        }
    }

    /// Flag value, then the environment variable, then packaged data.
    pub fn resolve(flag: Option<&Path>) -> Self {
        match flag {
            Some(p) => Self::dir(p),
            None => match std::env::var_os(DATA_DIR_ENV) {
                Some(p) if !p.is_empty() => Self::dir(PathBuf::from(p)),
                _ => Self::packaged(),
            },
        }
    }

    /// Text and display path of `<name>.tbl`.
    pub fn read_table(&self, name: &str) -> Result<(String, PathBuf)> {
        match &self.dir {
            Some(d) => {
                let path = d.join(format!("{name}.tbl"));
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Io {
                    path: path.clone(),
                    source: e,
                })?;
                Ok((text, path))
            }
            None => {
                let text = PACKAGED
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, t)| t.to_string())
                    .ok_or_else(|| Error::data(format!("<packaged>/{name}.tbl"), "no such table"))?;
                Ok((text, PathBuf::from(format!("<packaged>/{name}.tbl"))))
            }
        }
    }
}

/// Conjugacy-invariant key for exceptional groups. The cycle type on a
/// minuscule weight orbit is included for E6 and E7.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExceptionalKey {
    pub charpoly: Vec<i64>,
    pub cycles: Vec<(u16, u16)>,
    pub weight_cycles: Vec<(u16, u16)>,
}

/// Computes [`ExceptionalKey`]s.
#[derive(Clone, Debug)]
pub struct ExceptionalKeyer {
    orbit: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl ExceptionalKeyer {
    pub fn new(g: &WeylGroup) -> Self {
        let rs = g.root_system();
        let label = g.label();
        let node = match label.factors() {
            [f] if f.series == Series::E && f.rank == 6 => Some(0),
            [f] if f.series == Series::E && f.rank == 7 => Some(6),
            _ => None,
        };
        let mut orbit = Vec::new();
        if let Some(k) = node {
            // A multiple of the fundamental weight ω_k in root coordinates:
            // solve C x = 12 e_k by Gaussian elimination over the rationals.
            let seed = fundamental_weight_scaled(rs.cartan(), k);
            let mut seen: std::collections::HashSet<Vec<i64>> = Default::default();
            seen.insert(seed.clone());
            orbit.push(seed);
            let mut i = 0;
            while i < orbit.len() {
                let v = orbit[i].clone();
                i += 1;
                for j in 0..rs.rank() {
                    let img = rs.reflect(&rs.simple_root(j), &v);
                    if seen.insert(img.clone()) {
                        orbit.push(img);
                    }
                }
            }
            orbit.sort();
        }
        let index = orbit.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        ExceptionalKeyer { orbit, index }
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    pub fn weight_cycles(&self, g: &WeylGroup, w: &[u16]) -> Vec<(u16, u16)> {
        if self.orbit.is_empty() {
            return vec![];
        }
        let m = g.to_matrix(w);
        let perm: Vec<u16> = self
            .orbit
            .iter()
            .map(|v| self.index[&m.apply(v)] as u16)
            .collect();
        g.cycle_type(&perm)
    }

    pub fn key(&self, g: &WeylGroup, w: &[u16]) -> ExceptionalKey {
        ExceptionalKey {
            charpoly: g.charpoly(w),
            cycles: g.cycle_type(w),
            weight_cycles: self.weight_cycles(g, w),
        }
    }
}

fn fundamental_weight_scaled(cartan: &[Vec<i64>], k: usize) -> Vec<i64> {
    use num_rational::Rational64;
    let n = cartan.len();
    let mut a: Vec<Vec<Rational64>> = cartan
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.push(Rational64::from_integer(i64::from(i == k)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != Rational64::from_integer(0)).unwrap();
        a.swap(c, p);
        let piv = a[c][c];
        for x in a[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                if f != Rational64::from_integer(0) {
                    for j in 0..=n {
                        let t = a[c][j] * f;
                        a[r][j] -= t;
                    }
                }
            }
        }
    }
    let den = a
        .iter()
        .fold(1i64, |acc, r| num_integer::lcm(acc, *r[n].denom()));
    a.iter().map(|r| (r[n] * den).to_integer()).collect()
}

enum Identifier {
    Trivial,
    Classical {
        model: StandardModel,
        keys: HashMap<ClassicalKey, usize>,
    },
    Exceptional {
        keyer: ExceptionalKeyer,
        keys: HashMap<ExceptionalKey, usize>,
    },
    Product,
}

/// A Weyl group with verified character table and per-character invariants.
pub struct Group {
    pub weyl: WeylGroup,
    pub table: CharTable,
    /// Class representatives (root permutations), aligned with the table.
    pub reps: Vec<Perm>,
    /// Determinant of each class on V.
    pub det: Vec<i64>,
    pub fake: Vec<Poly>,
    pub b: Vec<usize>,
    pub b_prime: Vec<usize>,
    /// Index of `E ⊗ sgn` for each `E`.
    pub sign_twist: Vec<usize>,
    /// Combinatorial parameters for classical simple groups.
    pub params: Option<Vec<CharParam>>,
    ident: Identifier,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("label", self.label())
            .field("classes", &self.table.num_classes())
            .finish()
    }
}

impl Group {
    pub fn label(&self) -> &TypeLabel {
        self.weyl.label()
    }

    pub fn nu(&self) -> usize {
        self.weyl.nu()
    }

    pub fn order(&self) -> u64 {
        self.table.order
    }

    pub fn num_chars(&self) -> usize {
        self.table.chars.len()
    }

    pub fn char_index(&self, label: &str) -> Result<usize> {
        self.table
            .char_index(label)
            .ok_or_else(|| Error::Usage(format!("{label} is not an irreducible of W({})", self.label())))
    }

    pub fn degree(&self, e: usize) -> i64 {
        self.table.chars[e].degree()
    }

    /// Index of the class containing `w`. Only simple groups and the
    /// trivial group identify arbitrary elements.
    pub fn identify(&self, w: &[u16]) -> Result<usize> {
        let found = match &self.ident {
            Identifier::Trivial => Some(0),
            Identifier::Classical { model, keys } => keys.get(&classical_key(model, w)).copied(),
            Identifier::Exceptional { keyer, keys } => keys.get(&keyer.key(&self.weyl, w)).copied(),
            Identifier::Product => {
                return Err(Error::Precondition(format!(
                    "class identification in product group {}",
                    self.label()
                )))
            }
        };
        found.ok_or_else(|| Error::invariant(format!("element not in any class of W({})", self.label())))
    }

    pub fn trivial_index(&self) -> usize {
        self.table
            .chars
            .iter()
            .position(|c| c.values.iter().all(|&v| v == 1))
            .expect("trivial character")
    }

    pub fn sign_index(&self) -> usize {
        self.sign_twist[self.trivial_index()]
    }
}

/// `Π(1 − q^{d_i}) / det(1 − q w)`.
fn class_poly(degrees: &[u64], charpoly: &[i64]) -> Result<Poly> {
    let num = degrees.iter().fold(Poly::one(), |acc, &d| {
        let mut c = vec![0i64; d as usize + 1];
        c[0] = 1;
        c[d as usize] = -1;
        &acc * &Poly::from_i64(&c)
    });
    let rev: Vec<i64> = charpoly.iter().rev().copied().collect();
    num.div_exact(&Poly::from_i64(&rev))
        .ok_or_else(|| Error::invariant("characteristic polynomial does not divide the degree product"))
}

/// `Σ_C |C| χ(w_C) Π(1−q^{d_i})/det(1−q w_C) / |W|` for every character.
pub fn fake_degrees(g: &WeylGroup, table: &CharTable, reps: &[Perm]) -> Result<Vec<Poly>> {
    let degrees = g.root_system().degrees();
    let polys: Vec<Poly> = reps
        .iter()
        .map(|w| class_poly(&degrees, &g.charpoly(w)))
        .collect::<Result<_>>()?;
    let order = BigInt::from(table.order);
    table
        .chars
        .iter()
        .map(|ch| {
            let mut acc = Poly::zero();
            for ((cls, p), &v) in table.classes.iter().zip(&polys).zip(&ch.values) {
                if v != 0 {
                    acc = &acc + &p.scale(&(BigInt::from(cls.size) * v));
                }
            }
            acc.div_scalar_exact(&order).ok_or_else(|| {
                Error::invariant(format!("fake degree of {} is not integral", ch.label))
            })
        })
        .collect()
}

pub fn b_invariants(fd: &Poly) -> Result<(usize, usize)> {
    match (fd.min_support(), fd.max_support()) {
        (Some(b), Some(bp)) => Ok((b, bp)),
        _ => Err(Error::Precondition("zero fake degree".into())),
    }
}

/// Index of the character `χ · det`.
pub fn tensor_sign(table: &CharTable, det: &[i64], e: usize) -> Result<usize> {
    let target: Vec<i64> = table.chars[e].values.iter().zip(det).map(|(v, d)| v * d).collect();
    table
        .chars
        .iter()
        .position(|c| c.values == target)
        .ok_or_else(|| Error::invariant(format!("{} ⊗ sgn not found in table", table.chars[e].label)))
}

/// `phi_{D,b}` labels; ties in `(D, b)` get primes in the given order.
pub fn phi_labels(keys: &[(i64, usize)]) -> Vec<String> {
    let mut seen: HashMap<(i64, usize), usize> = HashMap::new();
    keys.iter()
        .map(|&(d, b)| {
            let k = seen.entry((d, b)).or_default();
            let s = format!("phi_{{{d},{b}}}{}", "'".repeat(*k));
            *k += 1;
            s
        })
        .collect()
}

fn finish(
    weyl: WeylGroup,
    mut table: CharTable,
    reps: Vec<Perm>,
    params: Option<Vec<CharParam>>,
    ident: Identifier,
    relabel: bool,
) -> Result<Group> {
    let fake = fake_degrees(&weyl, &table, &reps)?;
    let mut bb = Vec::with_capacity(fake.len());
    for (f, ch) in fake.iter().zip(&table.chars) {
        let (b, bp) = b_invariants(f)?;
        if f.eval(&BigInt::from(1)) != BigInt::from(ch.degree()) {
            return Err(Error::invariant(format!("fake degree of {} has wrong value at 1", ch.label)));
        }
        bb.push((b, bp));
    }
    let mut order: Vec<usize> = (0..table.chars.len()).collect();
    let mut params = params;
    if relabel {
        order.sort_by_key(|&i| (bb[i].0, table.chars[i].degree(), i));
        let keys: Vec<(i64, usize)> = order.iter().map(|&i| (table.chars[i].degree(), bb[i].0)).collect();
        let labels = phi_labels(&keys);
        let chars: Vec<IrrChar> = order
            .iter()
            .zip(labels)
            .map(|(&i, label)| IrrChar {
                label,
                values: table.chars[i].values.clone(),
            })
            .collect();
        table.chars = chars;
        params = params.map(|p| order.iter().map(|&i| p[i].clone()).collect());
    }
    let fake: Vec<Poly> = order.iter().map(|&i| fake[i].clone()).collect();
    let (b, b_prime): (Vec<usize>, Vec<usize>) = order.iter().map(|&i| bb[i]).unzip();
    let det: Vec<i64> = reps.iter().map(|w| weyl.det(w)).collect();
    let sign_twist = (0..table.chars.len())
        .map(|e| tensor_sign(&table, &det, e))
        .collect::<Result<Vec<_>>>()?;
    let nu = weyl.nu();
    for e in 0..table.chars.len() {
        let s = sign_twist[e];
        if b[e] + b_prime[s] != nu {
            return Err(Error::invariant(format!(
                "duality b(E) = ν − b'(E⊗sgn) fails for {}",
                table.chars[e].label
            )));
        }
    }
    Ok(Group {
        weyl,
        table,
        reps,
        det,
        fake,
        b,
        b_prime,
        sign_twist,
        params,
        ident,
    })
}

fn build_classical(label: &TypeLabel) -> Result<Group> {
    let weyl = WeylGroup::of_type(label);
    let (table, reps, model, params) = classical_table_with_params(&weyl);
    table.verify().map_err(Error::invariant)?;
    let keys = reps
        .iter()
        .enumerate()
        .map(|(i, r)| (classical_key(&model, r), i))
        .collect();
    finish(weyl, table, reps, Some(params), Identifier::Classical { model, keys }, true)
}

fn build_exceptional(label: &TypeLabel, src: &DataSource) -> Result<Group> {
    let name = label.to_string();
    let (text, path) = src.read_table(&name)?;
    let table = CharTable::parse(&text, &path)?;
    if table.group != *label {
        return Err(Error::data(&path, format!("file describes {} not {name}", table.group)));
    }
    let weyl = WeylGroup::of_type(label);
    if table.order != weyl.order() {
        return Err(Error::data(&path, "group order does not match the root system"));
    }
    let reps: Vec<Perm> = table
        .classes
        .iter()
        .map(|c| {
            if c.word.iter().any(|&i| i >= weyl.rank()) {
                Err(Error::data(&path, format!("class {} word uses a missing generator", c.name)))
            } else {
                Ok(weyl.from_word(&c.word))
            }
        })
        .collect::<Result<_>>()?;
    let keyer = ExceptionalKeyer::new(&weyl);
    let mut keys = HashMap::new();
    for (i, r) in reps.iter().enumerate() {
        if keys.insert(keyer.key(&weyl, r), i).is_some() {
            return Err(Error::data(&path, format!("class {} repeats a fingerprint", table.classes[i].name)));
        }
    }
    let g = finish(weyl, table, reps, None, Identifier::Exceptional { keyer, keys }, false)?;
    for (i, ch) in g.table.chars.iter().enumerate() {
        let expect = format!("phi_{{{},{}}}", ch.degree(), g.b[i]);
        if !ch.label.starts_with(&expect) || !ch.label[expect.len()..].chars().all(|c| c == '\'') {
            return Err(Error::data(&path, format!("label {} disagrees with computed {expect}", ch.label)));
        }
    }
    Ok(g)
}

impl Group {
    /// Assemble a freshly computed exceptional table. Characters are
    /// relabelled `phi_{D,b}`; ties keep their given order.
    pub fn from_parts(weyl: WeylGroup, table: CharTable, reps: Vec<Perm>, keyer: ExceptionalKeyer) -> Result<Group> {
        let keys = reps.iter().enumerate().map(|(i, r)| (keyer.key(&weyl, r), i)).collect();
        finish(weyl, table, reps, None, Identifier::Exceptional { keyer, keys }, true)
    }
}

fn build_product(label: &TypeLabel, src: &DataSource) -> Result<Group> {
    let mut table = CharTable::trivial();
    let mut shift = 0;
    for f in label.factors() {
        let part = group(&TypeLabel::new(vec![*f]), src)?;
        table = if shift == 0 {
            part.table.clone()
        } else {
            table.product(&part.table, shift)
        };
        shift += f.rank;
    }
    table.group = label.clone();
    let weyl = WeylGroup::of_type(label);
    let reps: Vec<Perm> = table.classes.iter().map(|c| weyl.from_word(&c.word)).collect();
    let ident = if label.is_empty() {
        Identifier::Trivial
    } else {
        Identifier::Product
    };
    finish(weyl, table, reps, None, ident, false)
}

fn build(label: &TypeLabel, src: &DataSource) -> Result<Group> {
    match label.factors() {
        [] => build_product(label, src),
        [f] if f.series == Series::E => build_exceptional(label, src),
        [_] => build_classical(label),
        _ => build_product(label, src),
    }
}

type Cache = Mutex<HashMap<(TypeLabel, DataSource), Arc<Group>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The verified group of a type label, built once per data source.
pub fn group(label: &TypeLabel, src: &DataSource) -> Result<Arc<Group>> {
    let key = (label.clone(), src.clone());
    if let Some(g) = cache().lock().expect("cache poisoned").get(&key) {
        return Ok(g.clone());
    }
    let g = Arc::new(build(label, src)?);
    cache()
        .lock()
        .expect("cache poisoned")
        .entry(key)
        .or_insert_with(|| g.clone());
    Ok(g)
}

/// Class of `g` containing each class of the reflection subgroup `sub`.
pub fn fusion_map(g: &Group, sub: &SubSystem, src: &DataSource) -> Result<Vec<usize>> {
    let rs = g.weyl.root_system();
    let sg = group(&sub.label, src)?;
    let refl: Vec<Perm> = sub
        .simple_roots()
        .iter()
        .map(|r| {
            rs.root_index(r)
                .map(|i| g.weyl.reflection(i))
                .ok_or_else(|| Error::invariant("subsystem root outside the root system"))
        })
        .collect::<Result<_>>()?;
    sg.table
        .classes
        .iter()
        .map(|c| {
            let w = c
                .word
                .iter()
                .fold(g.weyl.identity(), |acc, &i| WeylGroup::compose(&acc, &refl[i]));
            g.identify(&w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Arc<Group> {
        group(&s.parse().unwrap(), &DataSource::packaged()).unwrap()
    }

    #[test]
    fn a1_table() {
        let a1 = g("A1");
        let vals: Vec<Vec<i64>> = a1.table.chars.iter().map(|c| c.values.clone()).collect();
        assert_eq!(vals, vec![vec![1, 1], vec![1, -1]]);
        assert_eq!(a1.table.chars[1].label, "phi_{1,1}");
    }

    #[test]
    fn a2_fake_degrees() {
        let a2 = g("A2");
        let refl = a2.char_index("phi_{2,1}").unwrap();
        assert_eq!(a2.fake[refl], Poly::from_i64(&[0, 1, 1]));
        assert_eq!((a2.b[refl], a2.b_prime[refl]), (1, 2));
        assert_eq!(a2.sign_twist[refl], refl);
        let sizes: Vec<u64> = a2.table.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn s5_degree_four() {
        let a4 = g("A4");
        let e = a4.char_index("phi_{4,1}").unwrap();
        let mut v = a4.table.chars[e].values.clone();
        v.sort();
        assert_eq!(v, vec![-1, -1, 0, 0, 1, 2, 4]);
    }

    #[test]
    fn trivial_group() {
        let t = g("-");
        assert_eq!(t.num_chars(), 1);
        assert_eq!(t.b, vec![0]);
    }

    #[test]
    fn product_table() {
        let p = g("A2xA1");
        assert_eq!(p.num_chars(), 6);
        p.table.verify().unwrap();
        let s = p.sign_index();
        assert_eq!(p.b[s], 4);
    }
}
