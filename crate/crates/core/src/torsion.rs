//! Torsion classes of adjoint simple groups in Kac coordinates, and the
//! 235-triples built from them.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{affine_diagram, subsystem_closure, AffineDiagram, RootSystem, SubSystem, TypeLabel};

/// Conjugacy class of an element `g` with `g^n = 1` in the adjoint group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionClass {
    pub group: String,
    pub n: u32,
    /// Canonical (lexicographically minimal under Ω) Kac coordinates.
    pub kac: Vec<u32>,
    pub centralizer: String,
    pub nu: usize,
    /// Order of the Ω-stabilizer of `kac`.
    pub stabilizer: usize,
    /// Exact order of the element; divides `n`.
    pub exact_order: u32,
}

impl TorsionClass {
    pub fn is_identity(&self) -> bool {
        self.exact_order == 1
    }

    pub fn centralizer_label(&self) -> TypeLabel {
        self.centralizer.parse().expect("centralizer labels round-trip")
    }
}

/// Exact non-negative rational, serialized as `"p/q"` or `"p"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Count(pub Ratio<i64>);

impl std::fmt::Display for Count {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Count {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<Ratio<i64>>()
            .map(Count)
            .map_err(|e| serde::de::Error::custom(format!("bad count {s:?}: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    pub group: String,
    /// Indices into the order-2, order-3 and order-5 class lists.
    pub classes: [usize; 3],
    pub triple_types: [String; 3],
    pub defect: i64,
    pub regular: bool,
    /// Some class in the triple is the identity.
    pub degenerate: bool,
    /// `N / (N_2 N_3 N_5)`.
    pub count: Count,
    pub iota_partner_index: usize,
}

impl TripleReport {
    pub fn types_compact(&self) -> String {
        format!("({})", self.triple_types.join(","))
    }
}

/// Alcove data of one adjoint simple group.
#[derive(Clone, Debug)]
pub struct Torsion {
    rs: RootSystem,
    aff: AffineDiagram,
}

fn kac_tuples(marks: &[i64], n: i64) -> Vec<Vec<u32>> {
    fn go(marks: &[i64], i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == marks.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut s = 0;
        while s * marks[i] <= left {
            cur.push(s as u32);
            go(marks, i + 1, left - s * marks[i], cur, out);
            cur.pop();
            s += 1;
        }
    }
    let mut out = Vec::new();
    go(marks, 0, n, &mut Vec::new(), &mut out);
    out
}

impl Torsion {
    pub fn new(label: &TypeLabel) -> Result<Self> {
        let rs = RootSystem::new(label);
        let aff = affine_diagram(&rs)?;
        Ok(Torsion { rs, aff })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn affine(&self) -> &AffineDiagram {
        &self.aff
    }

    /// `N = |Ω|`.
    pub fn omega_order(&self) -> usize {
        self.aff.n()
    }

    fn omega_images(&self, s: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
        let s = s.to_vec();
        self.aff.omega.iter().map(move |w| {
            let mut t = vec![0; s.len()];
            for (i, &x) in s.iter().enumerate() {
                t[w[i]] = x;
            }
            t
        })
    }

    pub fn canonical(&self, s: &[u32]) -> Vec<u32> {
        self.omega_images(s).min().expect("Ω contains the identity")
    }

    fn stabilizer(&self, s: &[u32]) -> usize {
        self.omega_images(s).filter(|t| t == s).count()
    }

    /// Root subsystem spanned by the affine nodes with `s_i = 0`.
    pub fn centralizer(&self, kac: &[u32]) -> Result<SubSystem> {
        let seeds: Vec<_> = kac
            .iter()
            .zip(&self.aff.nodes)
            .filter(|(&s, _)| s == 0)
            .map(|(_, r)| r.clone())
            .collect();
        subsystem_closure(&self.rs, &seeds)
    }

    fn class_of(&self, kac: Vec<u32>, n: u32) -> Result<TorsionClass> {
        let sub = self.centralizer(&kac)?;
        let g = kac.iter().fold(0u32, |acc, &x| acc.gcd(&x));
        Ok(TorsionClass {
            group: self.rs.label().compact(),
            n,
            stabilizer: self.stabilizer(&kac),
            exact_order: n / g,
            centralizer: sub.label.compact(),
            nu: sub.nu,
            kac,
        })
    }

    /// Classes of elements with `g^n = 1`, sorted by exact order and then by
    /// canonical coordinates.
    pub fn classes(&self, n: u32) -> Result<Vec<TorsionClass>> {
        if n == 0 {
            return Err(Error::Usage("element order must be positive".into()));
        }
        let mut reps: Vec<Vec<u32>> = kac_tuples(&self.aff.marks, n as i64)
            .into_iter()
            .map(|s| self.canonical(&s))
            .collect();
        reps.sort_unstable();
        reps.dedup();
        let mut out: Vec<TorsionClass> =
            reps.into_iter().map(|s| self.class_of(s, n)).collect::<Result<_>>()?;
        out.sort_by(|a, b| (a.exact_order, &a.kac).cmp(&(b.exact_order, &b.kac)));
        Ok(out)
    }

    /// Class of `g^k` for `g` in the class with coordinates `kac`: scale the
    /// alcove point and fold it back into the fundamental alcove.
    pub fn power(&self, kac: &[u32], n: u32, k: u32) -> Vec<u32> {
        let r = self.rs.rank();
        let n = n as i64;
        let marks = &self.aff.marks;
        let mut c: Vec<i64> = kac[1..].iter().map(|&x| x as i64 * k as i64).collect();
        let theta = self.rs.highest_root();
        let pair_theta: Vec<i64> = (0..r)
            .map(|j| self.rs.inner(&self.rs.simple_root(j), &theta))
            .collect();
        let cartan = self.rs.cartan();
        loop {
            let h: i64 = (0..r).map(|i| marks[i + 1] * c[i]).sum();
            if h > n {
                let e = h - n;
                for j in 0..r {
                    c[j] -= e * pair_theta[j];
                }
            } else if let Some(i) = (0..r).find(|&i| c[i] < 0) {
                let ci = c[i];
                for j in 0..r {
                    c[j] -= ci * cartan[i][j];
                }
            } else {
                let mut s = vec![(n - h) as u32];
                s.extend(c.iter().map(|&x| x as u32));
                return self.canonical(&s);
            }
        }
    }

    /// All 235-triples, in lexicographic order of class indices.
    pub fn triples(&self) -> Result<TripleList> {
        let lists = [self.classes(2)?, self.classes(3)?, self.classes(5)?];
        let nu = self.rs.nu() as i64;
        let r = self.rs.rank() as i64;
        let big_n = self.omega_order() as i64;
        let squares: Vec<usize> = lists[2]
            .iter()
            .map(|c| {
                let sq = self.power(&c.kac, 5, 2);
                lists[2]
                    .iter()
                    .position(|d| d.kac == sq)
                    .expect("squares of order-5 classes are order-5 classes")
            })
            .collect();
        let (l3, l5) = (lists[1].len(), lists[2].len());
        let mut reports = Vec::with_capacity(lists[0].len() * l3 * l5);
        for (i2, c2) in lists[0].iter().enumerate() {
            for (i3, c3) in lists[1].iter().enumerate() {
                for (i5, c5) in lists[2].iter().enumerate() {
                    let cs = [c2, c3, c5];
                    let defect = nu - cs.iter().map(|c| c.nu as i64).sum::<i64>() - r;
                    let den: i64 = cs.iter().map(|c| c.stabilizer as i64).product();
                    reports.push(TripleReport {
                        group: self.rs.label().compact(),
                        classes: [i2, i3, i5],
                        triple_types: cs.map(|c| c.centralizer.clone()),
                        defect,
                        regular: defect == 0,
                        degenerate: cs.iter().any(|c| c.is_identity()),
                        count: Count(Ratio::new(big_n, den)),
                        iota_partner_index: (i2 * l3 + i3) * l5 + squares[i5],
                    });
                }
            }
        }
        Ok(TripleList {
            classes: lists,
            reports,
        })
    }
}

/// Every 235-triple of a group together with the class lists it indexes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleList {
    pub classes: [Vec<TorsionClass>; 3],
    pub reports: Vec<TripleReport>,
}

impl TripleList {
    pub fn regular(&self) -> impl Iterator<Item = &TripleReport> {
        self.reports.iter().filter(|t| t.regular)
    }

    pub fn class(&self, t: &TripleReport, k: usize) -> &TorsionClass {
        &self.classes[k][t.classes[k]]
    }

    pub fn iota_image(&self, t: &TripleReport) -> &TripleReport {
        &self.reports[t.iota_partner_index]
    }
}

pub fn torsion_classes(label: &TypeLabel, n: u32) -> Result<Vec<TorsionClass>> {
    Torsion::new(label)?.classes(n)
}

pub fn enumerate_235_triples(label: &TypeLabel) -> Result<TripleList> {
    Torsion::new(label)?.triples()
}

/// Number of regular homomorphisms in the family of `t`.
pub fn hom_count(t: &TripleReport) -> Result<Ratio<i64>> {
    if !t.regular {
        return Err(Error::Precondition(format!(
            "hom_count needs a regular triple; {} {} has defect {}",
            t.group,
            t.types_compact(),
            t.defect
        )));
    }
    Ok(t.count.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> TypeLabel {
        s.parse().unwrap()
    }

    #[test]
    fn a1_involution() {
        let cs = torsion_classes(&label("A1"), 2).unwrap();
        let nontrivial: Vec<_> = cs.iter().filter(|c| !c.is_identity()).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].centralizer, "∅");
        assert_eq!(nontrivial[0].nu, 0);
        assert_eq!(nontrivial[0].stabilizer, 2);
    }

    #[test]
    fn squaring_twice_inverts() {
        // -w0 = 1 in these types, so every class is closed under inversion.
        for l in ["A1", "D4", "D6", "E7"] {
            let t = Torsion::new(&label(l)).unwrap();
            for c in t.classes(5).unwrap() {
                assert_eq!(t.power(&c.kac, 5, 1), c.kac);
                let sq = t.power(&c.kac, 5, 2);
                assert_eq!(t.power(&sq, 5, 2), c.kac, "{l} {:?}", c.kac);
            }
        }
    }
}
