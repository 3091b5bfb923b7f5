//! Subgroup invariants `b_n`, `a_n` of the reflection subgroups attached to
//! a 235-triple, the inequalities they satisfy, and the E8 family table.

use std::fmt;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{families, FamilySet};
use crate::poly::Poly;
use crate::rootsys::{Series, SubSystem, TypeLabel};
use crate::torsion::{Torsion, TorsionClass, TripleList, TripleReport};
use crate::weylchar::{fusion_map, group, DataSource, Group};

/// Class fusion of a reflection subgroup into the ambient Weyl group.
#[derive(Clone, Debug)]
pub struct FusionMap {
    pub subsystem: SubSystem,
    pub sub: Arc<Group>,
    /// Ambient class of each subgroup class.
    pub map: Vec<usize>,
}

impl FusionMap {
    pub fn class_names(&self, g: &Group) -> Vec<(String, String)> {
        self.sub
            .table
            .classes
            .iter()
            .zip(&self.map)
            .map(|(c, &m)| (c.name.clone(), g.table.classes[m].name.clone()))
            .collect()
    }
}

/// Fuse the classes of `W(sub)` into `W(g)`. Every fused pair is checked
/// to have matching characteristic polynomials on the reflection
/// representation.
pub fn fusion(g: &Group, sub: &SubSystem, src: &DataSource) -> Result<FusionMap> {
    let map = fusion_map(g, sub, src)?;
    let sg = group(&sub.label, src)?;
    let missing = g.weyl.rank() - sg.weyl.rank();
    let fixed = (0..missing).fold(Poly::one(), |acc, _| &acc * &Poly::from_i64(&[-1, 1]));
    for (c, &m) in map.iter().enumerate() {
        let inner = &Poly::from_i64(&sg.weyl.charpoly(&sg.reps[c])) * &fixed;
        let outer = Poly::from_i64(&g.weyl.charpoly(&g.reps[m]));
        if inner != outer {
            return Err(Error::invariant(format!(
                "class {} of W({}) fused to {} of W({}) with a different characteristic polynomial",
                sg.table.classes[c].name,
                sub.label,
                g.table.classes[m].name,
                g.label()
            )));
        }
    }
    Ok(FusionMap {
        subsystem: sub.clone(),
        sub: sg,
        map,
    })
}

/// Restriction data of every irreducible of `W` to one reflection subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupData {
    pub fusion: FusionMap,
    /// `mult[E][M] = [E|_{W_n} : M]`.
    pub mult: Vec<Vec<i64>>,
    pub b: Vec<usize>,
    pub b_prime: Vec<usize>,
}

impl SubgroupData {
    pub fn new(g: &Group, fusion: FusionMap) -> Result<Self> {
        let sub = &fusion.sub;
        let order = sub.order() as i128;
        let mut mult = Vec::with_capacity(g.num_chars());
        let mut b = Vec::with_capacity(g.num_chars());
        let mut b_prime = Vec::with_capacity(g.num_chars());
        for ch in &g.table.chars {
            let res: Vec<i64> = fusion.map.iter().map(|&c| ch.values[c]).collect();
            let row: Vec<i64> = sub
                .table
                .chars
                .iter()
                .map(|m| {
                    let s = sub.table.weighted_product(&res, &m.values);
                    if s % order != 0 || s < 0 {
                        Err(Error::invariant(format!(
                            "restriction of {} to W({}) has multiplicity {s}/{order} at {}",
                            ch.label, fusion.subsystem.label, m.label
                        )))
                    } else {
                        Ok((s / order) as i64)
                    }
                })
                .collect::<Result<_>>()?;
            let dim: i64 = row.iter().zip(&sub.table.chars).map(|(k, m)| k * m.degree()).sum();
            if dim != ch.degree() {
                return Err(Error::invariant(format!(
                    "restriction of {} to W({}) loses dimension",
                    ch.label, fusion.subsystem.label
                )));
            }
            let constituents = || row.iter().enumerate().filter(|(_, &k)| k > 0).map(|(m, _)| m);
            b.push(constituents().map(|m| sub.b[m]).min().expect("non-zero restriction"));
            b_prime.push(constituents().map(|m| sub.b_prime[m]).max().expect("non-zero restriction"));
            mult.push(row);
        }
        Ok(SubgroupData {
            fusion,
            mult,
            b,
            b_prime,
        })
    }

    pub fn nu(&self) -> usize {
        self.fusion.subsystem.nu
    }

    /// `b_n(E) = ν_n − b′_n(E ⊗ sgn)` for every `E`.
    pub fn check_duality(&self, g: &Group) -> Result<()> {
        for e in 0..g.num_chars() {
            let t = g.sign_twist[e];
            if self.b[e] + self.b_prime[t] != self.nu() {
                return Err(Error::invariant(format!(
                    "subgroup duality fails for {} in W({})",
                    g.table.chars[e].label, self.fusion.subsystem.label
                )));
            }
        }
        Ok(())
    }
}

/// `(b_n(E), b′_n(E))`.
pub fn restrict_b_invariants(g: &Group, e: usize, fusion: &FusionMap) -> Result<(usize, usize)> {
    let data = SubgroupData::new(g, fusion.clone())?;
    Ok((data.b[e], data.b_prime[e]))
}

/// `(a_n(ℱ), a′_n(ℱ))`.
pub fn family_subgroup_invariants(fs: &FamilySet, f: usize, data: &SubgroupData) -> (usize, usize) {
    let m = &fs.families[f].members;
    (
        m.iter().map(|&e| data.b[e]).min().expect("families are non-empty"),
        m.iter().map(|&e| data.b_prime[e]).max().expect("families are non-empty"),
    )
}

/// Subgroup data for the three classes of a triple.
pub fn triple_subgroups(
    g: &Group,
    torsion: &Torsion,
    classes: [&TorsionClass; 3],
    src: &DataSource,
) -> Result<[SubgroupData; 3]> {
    let one = |c: &TorsionClass| -> Result<SubgroupData> {
        let sub = torsion.centralizer(&c.kac)?;
        SubgroupData::new(g, fusion(g, &sub, src)?)
    };
    Ok([one(classes[0])?, one(classes[1])?, one(classes[2])?])
}

/// One family's side of both inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub degree: i64,
    pub a: usize,
    pub a_prime: usize,
    pub a_n: [usize; 3],
    pub a_n_prime: [usize; 3],
    /// `a − Σ a_n`, bounded by `rhs_a = r`.
    pub lhs_a: i64,
    pub rhs_a: i64,
    /// `Σ a′_n − a′`, bounded by `rhs_b = −ν + Σ ν_n + r`.
    pub lhs_b: i64,
    pub rhs_b: i64,
    pub is_trivial: bool,
    pub is_sign: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observed {
    Strict,
    Equal,
    Violated,
}

impl Observed {
    fn of(lhs: i64, rhs: i64) -> Self {
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => Observed::Strict,
            std::cmp::Ordering::Equal => Observed::Equal,
            std::cmp::Ordering::Greater => Observed::Violated,
        }
    }
}

impl fmt::Display for Observed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Observed::Strict => "strict",
            Observed::Equal => "equal",
            Observed::Violated => "violated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Falsification {
    pub family_d: i64,
    pub family_a: usize,
    pub inequality: String,
    pub lhs: i64,
    pub rhs: i64,
    pub expected_strict: bool,
    pub observed: Observed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop22Report {
    pub group: String,
    pub triple_types: [String; 3],
    pub regular: bool,
    pub families: Vec<FamilyCheck>,
    pub falsifications: Vec<Falsification>,
}

impl Prop22Report {
    pub fn passed(&self) -> bool {
        self.falsifications.is_empty()
    }
}

/// Whether the inequalities are asserted for this triple rather than only
/// expected: the triple is regular, or the group has rank at most 8 and is
/// not E8.
pub fn hypothesis_holds(label: &TypeLabel, t: &TripleReport) -> bool {
    t.regular
        || label
            .factors()
            .iter()
            .all(|f| f.rank <= 8 && !(f.series == Series::E && f.rank == 8))
}

/// Evaluate both inequalities for every family against precomputed
/// subgroup data.
pub fn check_families(
    fs: &FamilySet,
    t: &TripleReport,
    subs: [&SubgroupData; 3],
) -> Prop22Report {
    let g = &fs.group;
    let r = g.weyl.rank() as i64;
    let nu = g.nu() as i64;
    let nu_sum: i64 = subs.iter().map(|s| s.nu() as i64).sum();
    let (triv, sgn) = (g.trivial_index(), g.sign_index());
    let mut checks = Vec::with_capacity(fs.len());
    let mut falsifications = Vec::new();
    for (fi, f) in fs.families.iter().enumerate() {
        let inv = subs.map(|s| family_subgroup_invariants(fs, fi, s));
        let a_n = inv.map(|x| x.0);
        let a_n_prime = inv.map(|x| x.1);
        let c = FamilyCheck {
            degree: f.degree,
            a: f.a,
            a_prime: f.a_prime,
            a_n,
            a_n_prime,
            lhs_a: f.a as i64 - a_n.iter().sum::<usize>() as i64,
            rhs_a: r,
            lhs_b: a_n_prime.iter().sum::<usize>() as i64 - f.a_prime as i64,
            rhs_b: -nu + nu_sum + r,
            is_trivial: f.members == [triv],
            is_sign: f.members == [sgn],
        };
        let cases = [
            ("a", c.lhs_a, c.rhs_a, !(t.regular && c.is_sign)),
            ("b", c.lhs_b, c.rhs_b, !(t.regular && c.is_trivial)),
        ];
        for (name, lhs, rhs, expected_strict) in cases {
            let observed = Observed::of(lhs, rhs);
            let ok = match observed {
                Observed::Strict => expected_strict,
                Observed::Equal => !expected_strict,
                Observed::Violated => false,
            };
            if !ok {
                falsifications.push(Falsification {
                    family_d: c.degree,
                    family_a: c.a,
                    inequality: name.to_string(),
                    lhs,
                    rhs,
                    expected_strict,
                    observed,
                });
            }
        }
        checks.push(c);
    }
    Prop22Report {
        group: g.label().compact(),
        triple_types: t.triple_types.clone(),
        regular: t.regular,
        families: checks,
        falsifications,
    }
}

/// Check both inequalities and their equality pattern for one triple.
/// Outside the hypothesis the request is refused.
pub fn verify_prop22(
    label: &TypeLabel,
    list: &TripleList,
    t: &TripleReport,
    src: &DataSource,
) -> Result<Prop22Report> {
    if !hypothesis_holds(label, t) {
        return Err(Error::Precondition(format!(
            "{} {} is not regular and {label} is outside rank <= 8 without E8: conjectural, skipped",
            t.group,
            t.types_compact()
        )));
    }
    let fs = families(label, src)?;
    let torsion = Torsion::new(label)?;
    let classes = [list.class(t, 0), list.class(t, 1), list.class(t, 2)];
    let subs = triple_subgroups(&fs.group, &torsion, classes, src)?;
    Ok(check_families(&fs, t, [&subs[0], &subs[1], &subs[2]]))
}

/// Reports for every triple of `label` within the hypothesis; the other
/// triples are returned separately as skipped.
pub fn verify_prop22_all(
    label: &TypeLabel,
    regular_only: bool,
    src: &DataSource,
) -> Result<(Vec<Prop22Report>, Vec<TripleReport>)> {
    let fs = families(label, src)?;
    let torsion = Torsion::new(label)?;
    let list = torsion.triples()?;
    let g = &fs.group;
    let per_class = |k: usize| -> Result<Vec<Option<SubgroupData>>> {
        list.classes[k]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let needed = list.reports.iter().any(|t| {
                    t.classes[k] == i && (t.regular || !regular_only) && hypothesis_holds(label, t)
                });
                needed
                    .then(|| {
                        let sub = torsion.centralizer(&c.kac)?;
                        let data = SubgroupData::new(g, fusion(g, &sub, src)?)?;
                        data.check_duality(g)?;
                        Ok(data)
                    })
                    .transpose()
            })
            .collect()
    };
    let data = [per_class(0)?, per_class(1)?, per_class(2)?];
    let selected: Vec<&TripleReport> = list
        .reports
        .iter()
        .filter(|t| t.regular || !regular_only)
        .collect();
    let check = |t: &&TripleReport| -> Option<Prop22Report> {
        if !hypothesis_holds(label, t) {
            return None;
        }
        let subs = [0, 1, 2].map(|k| data[k][t.classes[k]].as_ref().expect("computed above"));
        Some(check_families(&fs, t, subs))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Option<Prop22Report>> = selected.par_iter().map(check).collect();
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Option<Prop22Report>> = selected.iter().map(check).collect();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for (t, r) in selected.into_iter().zip(results) {
        match r {
            Some(r) => reports.push(r),
            None => skipped.push(t.clone()),
        }
    }
    Ok((reports, skipped))
}

/// One line of the E8 family table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyLine {
    #[serde(rename = "D")]
    pub d: i64,
    pub a: usize,
    pub a2: usize,
    pub a3: usize,
    pub a5: usize,
    pub diff: i64,
}

impl FamilyLine {
    pub fn key(&self) -> (usize, i64) {
        (self.a, self.d)
    }

    pub fn tsv(&self) -> String {
        format!("{} {} {} {} {} {}", self.d, self.a, self.a2, self.a3, self.a5, self.diff)
    }
}

impl fmt::Display for FamilyLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}-{}-{}-{}={}", self.d, self.a, self.a2, self.a3, self.a5, self.diff)
    }
}

const GOLDEN_24: &str = include_str!("../data/table24.txt");

/// The packaged reference table, in file order.
pub fn golden_table24() -> Result<Vec<FamilyLine>> {
    GOLDEN_24
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            let v: Vec<i64> = l
                .split_whitespace()
                .map(|x| x.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::data("<builtin>/table24.txt", format!("line {}: {e}", i + 1)))?;
            if v.len() != 6 || v[1..5].iter().any(|&x| x < 0) {
                return Err(Error::data("<builtin>/table24.txt", format!("line {}: expected 6 fields", i + 1)));
            }
            Ok(FamilyLine {
                d: v[0],
                a: v[1] as usize,
                a2: v[2] as usize,
                a3: v[3] as usize,
                a5: v[4] as usize,
                diff: v[5],
            })
        })
        .collect()
}

/// Family lines of E8 for its unique regular triple, sorted by `a` then `D`.
pub fn table_24(src: &DataSource) -> Result<Vec<FamilyLine>> {
    let label: TypeLabel = "E8".parse()?;
    let torsion = Torsion::new(&label)?;
    let list = torsion.triples()?;
    let regular: Vec<&TripleReport> = list.regular().collect();
    let [t] = regular[..] else {
        return Err(Error::invariant(format!("E8 has {} regular triples", regular.len())));
    };
    let report = verify_prop22(&label, &list, t, src)?;
    let mut lines: Vec<FamilyLine> = report
        .families
        .iter()
        .map(|c| FamilyLine {
            d: c.degree,
            a: c.a,
            a2: c.a_n[0],
            a3: c.a_n[1],
            a5: c.a_n[2],
            diff: c.lhs_a,
        })
        .collect();
    lines.sort_by_key(FamilyLine::key);
    Ok(lines)
}

/// Differences between computed and reference lines, keyed by `(D, a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDiff {
    /// Reference lines whose key is missing from the computed table.
    pub missing: Vec<FamilyLine>,
    /// Computed lines whose key is absent from the reference.
    pub extra: Vec<FamilyLine>,
    /// Same key, different columns: (reference, computed).
    pub changed: Vec<(FamilyLine, FamilyLine)>,
    /// Keys listed more than once in the reference.
    pub duplicated: Vec<(i64, usize)>,
}

impl TableDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.changed.is_empty() && self.duplicated.is_empty()
    }
}

impl fmt::Display for TableDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.missing {
            writeln!(f, "- {l}    (D={}, a={}) not computed", l.d, l.a)?;
        }
        for l in &self.extra {
            writeln!(f, "+ {l}    (D={}, a={}) not in reference", l.d, l.a)?;
        }
        for (g, c) in &self.changed {
            writeln!(f, "- {g}\n+ {c}    (D={}, a={})", c.d, c.a)?;
        }
        for (d, a) in &self.duplicated {
            writeln!(f, "! (D={d}, a={a}) appears more than once in the reference")?;
        }
        Ok(())
    }
}

pub fn diff_table24(golden: &[FamilyLine], computed: &[FamilyLine]) -> TableDiff {
    let mut out = TableDiff::default();
    let mut seen = std::collections::HashSet::new();
    for g in golden {
        if !seen.insert((g.d, g.a)) {
            out.duplicated.push((g.d, g.a));
            continue;
        }
        match computed.iter().find(|c| (c.d, c.a) == (g.d, g.a)) {
            None => out.missing.push(g.clone()),
            Some(c) if c != g => out.changed.push((g.clone(), c.clone())),
            Some(_) => {}
        }
    }
    out.extra = computed
        .iter()
        .filter(|c| !golden.iter().any(|g| (g.d, g.a) == (c.d, c.a)))
        .cloned()
        .collect();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src() -> DataSource {
        DataSource::packaged()
    }

    #[test]
    fn a2_reflection_fuses_to_transpositions() {
        let g = group(&"A2".parse().unwrap(), &src()).unwrap();
        let rs = g.weyl.root_system();
        let sub = crate::rootsys::subsystem_closure(rs, &[rs.simple_root(0)]).unwrap();
        let fm = fusion(&g, &sub, &src()).unwrap();
        let refl = fm.sub.table.classes.iter().position(|c| c.size == 1 && !c.word.is_empty()).unwrap();
        let target = &g.table.classes[fm.map[refl]];
        assert_eq!(target.size, 3);
    }

    #[test]
    fn golden_table_parses() {
        let g = golden_table24().unwrap();
        assert_eq!(g.len(), 45);
        assert_eq!(g[0].tsv(), "1 0 0 0 0 0");
        assert_eq!(g[44].to_string(), "1; 120-56-36-20=8");
        let inconsistent: Vec<String> = g
            .iter()
            .filter(|l| l.diff != l.a as i64 - (l.a2 + l.a3 + l.a5) as i64)
            .map(|l| l.to_string())
            .collect();
        assert_eq!(inconsistent, ["2800; 13-4-3-1=6"]);
    }

    #[test]
    fn type_a_triples_satisfy_both_inequalities() {
        for l in ["A1", "A2", "A3"] {
            let (reports, skipped) = verify_prop22_all(&l.parse().unwrap(), false, &src()).unwrap();
            assert!(skipped.is_empty());
            for r in reports {
                assert!(r.passed(), "{l} {:?}", r.falsifications);
            }
        }
    }
}
