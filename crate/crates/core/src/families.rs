//! Families of irreducible characters and their invariants `a`, `a′`.
//!
//! Type A families are singletons and type D families come from symbols.
//! Exceptional families are read from the data files and checked against
//! the computed b-invariants. [`derive_families`] reconstructs them from
//! induction out of maximal parabolic subgroups.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::combinat::d_symbol_entries;
use crate::error::{Error, Result};
use crate::rootsys::{subsystem_from_simple, Series, TypeLabel};
use crate::weylchar::{fusion_map, group, DataSource, Group};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Family {
    /// Character indices, ascending.
    pub members: Vec<usize>,
    pub labels: Vec<String>,
    pub a: usize,
    pub a_prime: usize,
    /// Index of the special character (the unique member with `b = a`).
    pub special: usize,
    /// Degree of the special character.
    pub degree: i64,
}

impl Family {
    pub fn key(&self) -> (i64, usize) {
        (self.degree, self.a)
    }
}

/// Families of one group together with the character-to-family map.
#[derive(Debug)]
pub struct FamilySet {
    pub group: Arc<Group>,
    pub families: Vec<Family>,
    pub of_char: Vec<usize>,
}

impl FamilySet {
    /// Build from member lists, computing and checking all invariants.
    pub fn from_members(group: Arc<Group>, lists: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.num_chars();
        let mut of_char = vec![usize::MAX; n];
        let mut families = Vec::with_capacity(lists.len());
        for (fi, mut members) in lists.into_iter().enumerate() {
            members.sort_unstable();
            if members.is_empty() {
                return Err(Error::invariant("empty family"));
            }
            for &e in &members {
                if e >= n || of_char[e] != usize::MAX {
                    return Err(Error::invariant(format!(
                        "character {e} of W({}) is not in exactly one family",
                        group.label()
                    )));
                }
                of_char[e] = fi;
            }
            let a = members.iter().map(|&e| group.b[e]).min().unwrap();
            let a_prime = members.iter().map(|&e| group.b_prime[e]).max().unwrap();
            let specials: Vec<usize> = members.iter().copied().filter(|&e| group.b[e] == a).collect();
            let [special] = specials[..] else {
                return Err(Error::invariant(format!(
                    "family of W({}) with a = {a} has {} members with b = a",
                    group.label(),
                    specials.len()
                )));
            };
            families.push(Family {
                labels: members.iter().map(|&e| group.table.chars[e].label.clone()).collect(),
                members,
                a,
                a_prime,
                special,
                degree: group.degree(special),
            });
        }
        if let Some(e) = of_char.iter().position(|&f| f == usize::MAX) {
            return Err(Error::invariant(format!(
                "{} lies in no family",
                group.table.chars[e].label
            )));
        }
        families.sort_by_key(|f| (f.a, f.degree, f.members.clone()));
        for (fi, f) in families.iter().enumerate() {
            for &e in &f.members {
                of_char[e] = fi;
            }
        }
        let set = FamilySet {
            group,
            families,
            of_char,
        };
        set.check_duality()?;
        Ok(set)
    }

    fn check_duality(&self) -> Result<()> {
        let nu = self.group.nu();
        for (i, f) in self.families.iter().enumerate() {
            let d = self.dual(i)?;
            if f.a + self.families[d].a_prime != nu {
                return Err(Error::invariant(format!(
                    "a(F) = ν − a'(F⊗sgn) fails for family ({}, {}) of W({})",
                    f.degree,
                    f.a,
                    self.group.label()
                )));
            }
        }
        Ok(())
    }

    /// Index of `{E ⊗ sgn : E ∈ F}`, checking it is a family.
    pub fn dual(&self, f: usize) -> Result<usize> {
        let mut twisted: Vec<usize> = self.families[f]
            .members
            .iter()
            .map(|&e| self.group.sign_twist[e])
            .collect();
        twisted.sort_unstable();
        let d = self.of_char[twisted[0]];
        if self.families[d].members != twisted {
            return Err(Error::invariant("sign twist of a family is not a family"));
        }
        Ok(d)
    }

    pub fn by_key(&self, degree: i64, a: usize) -> Option<usize> {
        self.families.iter().position(|f| f.degree == degree && f.a == a)
    }

    /// `a` of each character's family.
    pub fn a_of_char(&self) -> Vec<usize> {
        self.of_char.iter().map(|&f| self.families[f].a).collect()
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }
}

fn type_d_families(g: &Group) -> Result<Vec<Vec<usize>>> {
    let params = g
        .params
        .as_ref()
        .ok_or_else(|| Error::invariant("type D group without character parameters"))?;
    let beads = g.weyl.rank() + 1;
    let mut by: BTreeMap<(Vec<usize>, Option<bool>), Vec<usize>> = BTreeMap::new();
    for (e, p) in params.iter().enumerate() {
        let entries = d_symbol_entries(&p.alpha, &p.beta, beads);
        by.entry((entries, p.half)).or_default().push(e);
    }
    Ok(by.into_values().collect())
}

fn exceptional_families(g: &Group) -> Result<Vec<Vec<usize>>> {
    if g.table.families.is_empty() {
        return Err(Error::data(
            format!("<{}>", g.label()),
            "character table has no FAMILY records",
        ));
    }
    let mut lists = Vec::new();
    for rec in &g.table.families {
        let members = rec
            .members
            .iter()
            .map(|l| {
                g.table.char_index(l).ok_or_else(|| {
                    Error::data(format!("<{}>", g.label()), format!("FAMILY names unknown {l}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        lists.push((rec.degree, rec.a, members));
    }
    for (d, a, m) in &lists {
        let min_b = m.iter().map(|&e| g.b[e]).min().unwrap_or(usize::MAX);
        let special: Vec<usize> = m.iter().copied().filter(|&e| g.b[e] == min_b).collect();
        if min_b != *a || special.len() != 1 || g.degree(special[0]) != *d {
            return Err(Error::data(
                format!("<{}>", g.label()),
                format!("FAMILY {d},{a} disagrees with computed b-invariants"),
            ));
        }
    }
    Ok(lists.into_iter().map(|(_, _, m)| m).collect())
}

fn product_families(label: &TypeLabel, src: &DataSource, g: &Arc<Group>) -> Result<Vec<Vec<usize>>> {
    let mut lists: Vec<Vec<usize>> = vec![vec![0]];
    for f in label.factors() {
        let part = families(&TypeLabel::new(vec![*f]), src)?;
        let m = part.group.num_chars();
        let mut next = Vec::new();
        for l in &lists {
            for pf in &part.families {
                next.push(
                    l.iter()
                        .flat_map(|&x| pf.members.iter().map(move |&y| x * m + y))
                        .collect(),
                );
            }
        }
        lists = next;
    }
    debug_assert_eq!(lists.iter().map(Vec::len).sum::<usize>(), g.num_chars());
    Ok(lists)
}

fn build(label: &TypeLabel, src: &DataSource) -> Result<FamilySet> {
    let g = group(label, src)?;
    let lists = match label.factors() {
        [f] => match f.series {
            Series::A => (0..g.num_chars()).map(|e| vec![e]).collect(),
            Series::D => type_d_families(&g)?,
            Series::E => exceptional_families(&g)?,
        },
        _ => product_families(label, src, &g)?,
    };
    FamilySet::from_members(g, lists)
}

type Cache = Mutex<HashMap<(TypeLabel, DataSource), Arc<FamilySet>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Families of `W(label)`.
pub fn families(label: &TypeLabel, src: &DataSource) -> Result<Arc<FamilySet>> {
    let key = (label.clone(), src.clone());
    if let Some(f) = cache().lock().expect("cache poisoned").get(&key) {
        return Ok(f.clone());
    }
    let f = Arc::new(build(label, src)?);
    cache()
        .lock()
        .expect("cache poisoned")
        .entry(key)
        .or_insert_with(|| f.clone());
    Ok(f)
}

/// The sign-twisted family.
pub fn family_dual(set: &FamilySet, f: usize) -> Result<&Family> {
    Ok(&set.families[set.dual(f)?])
}

/// `Σ_reflections χ(s) / χ(1)` for every character.
pub fn reflection_weights(g: &Group) -> Result<Vec<i64>> {
    let r = g.weyl.rank();
    // (q − 1)^{r−1} (q + 1)
    let mut refl = vec![1i64];
    for k in 0..r {
        let c = if k == 0 { 1 } else { -1 };
        let mut next = vec![0i64; refl.len() + 1];
        for (i, &x) in refl.iter().enumerate() {
            next[i] += c * x;
            next[i + 1] += x;
        }
        refl = next;
    }
    let classes: Vec<usize> = (0..g.table.num_classes())
        .filter(|&c| g.weyl.charpoly(&g.reps[c]) == refl)
        .collect();
    g.table
        .chars
        .iter()
        .map(|ch| {
            let s: i64 = classes
                .iter()
                .map(|&c| g.table.classes[c].size as i64 * ch.values[c])
                .sum();
            let d = ch.degree();
            if s % d != 0 {
                Err(Error::invariant(format!("central character of {} is not integral", ch.label)))
            } else {
                Ok(s / d)
            }
        })
        .collect()
}

/// Multiplicity `[Res E : M]` for all `E` of `g` and `M` of `sub`.
pub fn restriction_multiplicities(g: &Group, sub: &Group, fusion: &[usize]) -> Vec<Vec<i64>> {
    let order = sub.order() as i128;
    g.table
        .chars
        .iter()
        .map(|ch| {
            let res: Vec<i64> = fusion.iter().map(|&c| ch.values[c]).collect();
            sub.table
                .chars
                .iter()
                .map(|m| {
                    let s = sub.table.weighted_product(&res, &m.values);
                    (s / order) as i64
                })
                .collect()
        })
        .collect()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Families of a simple group from its maximal parabolic subgroups: a-values
/// are pinned between induction bounds, then characters are linked through
/// truncated induction of subgroup families and finally grouped by their
/// `(a, ω)` invariants around the unique special member.
pub fn derive_families(g: &Group, src: &DataSource) -> Result<Vec<Vec<usize>>> {
    let n = g.num_chars();
    let rs = g.weyl.root_system();
    let r = rs.rank();
    let omega = reflection_weights(g)?;
    let mut lb = vec![0usize; n];
    let mut exact: Vec<Option<usize>> = vec![None; n];
    let mut induced = vec![false; n];
    let pin = |e: usize, v: i64, exact: &mut Vec<Option<usize>>| -> Result<()> {
        let v = usize::try_from(v).map_err(|_| Error::invariant("negative a-value"))?;
        match exact[e] {
            Some(w) if w != v => Err(Error::invariant(format!(
                "conflicting a-values for {}",
                g.table.chars[e].label
            ))),
            _ => {
                exact[e] = Some(v);
                Ok(())
            }
        }
    };
    let mut links: Vec<(Vec<Vec<i64>>, Arc<FamilySet>)> = Vec::new();
    for drop in 0..r {
        let simple: Vec<_> = (0..r).filter(|&j| j != drop).map(|j| rs.simple_root(j)).collect();
        let sub = subsystem_from_simple(rs, &simple)?;
        let fs = families(&sub.label, src)?;
        let fusion = fusion_map(g, &sub, src)?;
        let mult = restriction_multiplicities(g, &fs.group, &fusion);
        let om = reflection_weights(&fs.group)?;
        let am = fs.a_of_char();
        for e in 0..n {
            for (m, &k) in mult[e].iter().enumerate() {
                if k > 0 {
                    let direct = am[m] as i64;
                    let twisted = am[m] as i64 + om[m] - omega[e];
                    lb[e] = lb[e].max(direct.max(twisted).max(0) as usize);
                }
            }
        }
        // Truncated induction of a special character is irreducible and
        // keeps the a-value.
        for f in &fs.families {
            let m = f.special;
            let bm = fs.group.b[m];
            if fs.group.fake[m].coeff(bm) != 1.into() {
                continue;
            }
            let hit: Vec<usize> = (0..n).filter(|&e| mult[e][m] > 0 && g.b[e] == bm).collect();
            if let [e] = hit[..] {
                induced[e] = true;
                induced[g.sign_twist[e]] = true;
                pin(e, f.a as i64, &mut exact)?;
                pin(g.sign_twist[e], f.a as i64 + omega[e], &mut exact)?;
            }
        }
        links.push((mult, fs));
    }
    let mut lo = vec![0usize; n];
    let mut hi = vec![0usize; n];
    for e in 0..n {
        let s = g.sign_twist[e];
        let ub = (g.b[e] as i64).min(g.b[s] as i64 - omega[e]);
        if (lb[e] as i64) > ub {
            return Err(Error::invariant(format!(
                "a-value bounds cross for {}",
                g.table.chars[e].label
            )));
        }
        (lo[e], hi[e]) = (lb[e], ub as usize);
        if let Some(v) = exact[e] {
            if v < lo[e] || v > hi[e] {
                return Err(Error::invariant(format!(
                    "induced a-value of {} violates bounds",
                    g.table.chars[e].label
                )));
            }
            (lo[e], hi[e]) = (v, v);
        }
    }
    // Remaining freedom: a(E) is b(S) for a special S with the same ω, the
    // sign twist shifts a by ω, and at most one special character (that of
    // the cuspidal family) is neither obtained by truncated induction nor
    // the sign twist of such a character.
    loop {
        let special: Vec<bool> = (0..n).map(|e| lo[e] == hi[e] && lo[e] == g.b[e]).collect();
        let cuspidal = (0..n).filter(|&e| special[e] && !induced[e]).count();
        if cuspidal > 1 {
            return Err(Error::invariant(format!(
                "W({}) has {cuspidal} specials outside truncated induction",
                g.label()
            )));
        }
        let mut changed = false;
        for e in 0..n {
            if lo[e] == hi[e] {
                continue;
            }
            let t = g.sign_twist[e];
            let (tlo, thi) = (lo[t] as i64, hi[t] as i64);
            let twist_ok = |v: usize| (tlo..=thi).contains(&(v as i64 + omega[e]));
            let mut options: Vec<usize> = (0..n)
                .filter(|&s| special[s] && omega[s] == omega[e] && g.b[s] < g.b[e])
                .map(|s| g.b[s])
                .filter(|&v| v >= lo[e] && v <= hi[e] && twist_ok(v))
                .collect();
            let may_be_special = cuspidal == 0 && hi[e] == g.b[e] && twist_ok(g.b[e]);
            if may_be_special {
                options.push(g.b[e]);
            }
            options.sort_unstable();
            options.dedup();
            match options[..] {
                [] => {
                    return Err(Error::invariant(format!(
                        "no admissible a-value for {}",
                        g.table.chars[e].label
                    )))
                }
                [v] => {
                    (lo[e], hi[e]) = (v, v);
                    changed = true;
                }
                _ => {
                    let (p0, p1) = (options[0], options[options.len() - 1]);
                    if (p0, p1) != (lo[e], hi[e]) {
                        (lo[e], hi[e]) = (p0, p1);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let a = lo;
    let mut dsu = Dsu((0..n).collect());
    for (mult, fs) in &links {
        for f in &fs.families {
            let hit: Vec<usize> = (0..n)
                .filter(|&e| a[e] == f.a && f.members.iter().any(|&m| mult[e][m] > 0))
                .collect();
            for w in hit.windows(2) {
                dsu.union(w[0], w[1]);
                dsu.union(g.sign_twist[w[0]], g.sign_twist[w[1]]);
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..n {
        let root = dsu.find(e);
        comps.entry(root).or_default().push(e);
    }
    let mut by_inv: BTreeMap<(usize, i64), Vec<Vec<usize>>> = BTreeMap::new();
    for comp in comps.into_values() {
        let e0 = comp[0];
        if comp.iter().any(|&e| a[e] != a[e0] || omega[e] != omega[e0]) {
            return Err(Error::invariant("linked characters have different a or ω"));
        }
        by_inv.entry((a[e0], omega[e0])).or_default().push(comp);
    }
    let mut out = Vec::new();
    for ((av, _), comps) in by_inv {
        let (with, without): (Vec<_>, Vec<_>) = comps
            .into_iter()
            .partition(|c| c.iter().any(|&e| g.b[e] == av));
        if with.is_empty() {
            return Err(Error::invariant(format!("no special character with a = {av}")));
        }
        if !without.is_empty() && with.len() != 1 {
            return Err(Error::invariant(format!(
                "unlinked characters with a = {av} match several families"
            )));
        }
        let mut with = with;
        for c in without {
            with[0].extend(c);
        }
        for mut c in with {
            c.sort_unstable();
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str) -> Arc<FamilySet> {
        families(&s.parse().unwrap(), &DataSource::packaged()).unwrap()
    }

    #[test]
    fn a2_singletons() {
        let f = fam("A2");
        let a: Vec<usize> = f.families.iter().map(|x| x.a).collect();
        assert_eq!(a, vec![0, 1, 3]);
        assert!(f.families.iter().all(|x| x.members.len() == 1));
    }

    #[test]
    fn d4_symbols() {
        let f = fam("D4");
        assert_eq!(f.group.num_chars(), 13);
        let sizes: usize = f.families.iter().map(|x| x.members.len()).sum();
        assert_eq!(sizes, 13);
        // The only non-singleton family of W(D4) has three members.
        let big: Vec<usize> = f.families.iter().map(|x| x.members.len()).filter(|&l| l > 1).collect();
        assert_eq!(big, vec![3]);
    }

    #[test]
    fn derivation_agrees_with_symbols() {
        for s in ["A3", "A4", "A5", "D4", "D5", "D6", "D7"] {
            let label: TypeLabel = s.parse().unwrap();
            let f = fam(s);
            let mut want: Vec<Vec<usize>> = f.families.iter().map(|x| x.members.clone()).collect();
            let mut got = derive_families(&f.group, &DataSource::packaged()).unwrap();
            want.sort();
            got.sort();
            assert_eq!(got, want, "{label}");
        }
    }

    #[test]
    fn product_families_multiply() {
        let f = fam("A1xA1");
        assert_eq!(f.len(), 4);
        let a: Vec<usize> = f.families.iter().map(|x| x.a).collect();
        assert_eq!(a, vec![0, 1, 1, 2]);
    }
}
