//! Generation of the exceptional character-table files.

use std::collections::HashMap;
use std::path::Path;

use crate::chartab::{CharTable, ClassInfo, FamilyRecord, IrrChar};
use crate::dixon::{dixon_schneider, ClassSystem};
use crate::enumerate::{tally_classes, Enumerator};
use crate::error::{Error, Result};
use crate::families::{derive_families, families};
use crate::rootsys::{Series, TypeLabel};
use crate::weyl::{Perm, WeylGroup};
use crate::weylchar::{b_invariants, fake_degrees, group, DataSource, ExceptionalKey, ExceptionalKeyer, Group};

/// Spreadsheet-style suffix: a..z, aa, ab, ...
fn letters(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

struct RawClass {
    key: ExceptionalKey,
    size: u64,
    rep: Perm,
    word: Vec<usize>,
    order: u64,
}

fn collect_classes(g: &WeylGroup, keyer: &ExceptionalKeyer) -> Result<Vec<RawClass>> {
    let en = Enumerator::new(g);
    let tally = tally_classes(&en, |w| (g.fast_key(w), keyer.weight_cycles(g, w)));
    let mut classes: Vec<RawClass> = tally
        .into_values()
        .map(|t| {
            let word = en.word(t.best.1, t.best.2);
            let rep = g.from_word(&word);
            RawClass {
                key: keyer.key(g, &rep),
                size: t.count,
                order: g.element_order(&rep),
                rep,
                word,
            }
        })
        .collect();
    let total: u64 = classes.iter().map(|c| c.size).sum();
    if total != g.order() {
        return Err(Error::invariant("class sizes do not add up to the group order"));
    }
    classes.sort_by(|a, b| (a.order, a.size, &a.key).cmp(&(b.order, b.size, &b.key)));
    Ok(classes)
}

fn class_names(classes: &[RawClass]) -> Vec<String> {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    classes
        .iter()
        .map(|c| {
            let k = seen.entry(c.order).or_default();
            let name = format!("{}{}", c.order, letters(*k));
            *k += 1;
            name
        })
        .collect()
}

/// Character table of a simple exceptional Weyl group with its families.
/// Parabolic subgroups of type E are read from `parabolic_src`.
pub fn generate(label: &TypeLabel, parabolic_src: &DataSource) -> Result<CharTable> {
    match label.factors() {
        [f] if f.series == Series::E => {}
        _ => return Err(Error::UnsupportedType(format!("table generation for {label}"))),
    }
    let g = WeylGroup::of_type(label);
    let keyer = ExceptionalKeyer::new(&g);
    let raw = collect_classes(&g, &keyer)?;
    let names = class_names(&raw);
    let index: HashMap<ExceptionalKey, usize> =
        raw.iter().enumerate().map(|(i, c)| (c.key.clone(), i)).collect();
    if index.len() != raw.len() {
        return Err(Error::invariant("class keys are not distinct"));
    }
    let identify = |w: &[u16]| index[&keyer.key(&g, w)];
    let cs = ClassSystem {
        g: &g,
        reps: raw.iter().map(|c| c.rep.clone()).collect(),
        sizes: raw.iter().map(|c| c.size).collect(),
        identify: &identify,
    };
    let rows = dixon_schneider(&cs, 0)?;
    let mut table = CharTable {
        group: label.clone(),
        order: g.order(),
        classes: raw
            .iter()
            .zip(&names)
            .map(|(c, n)| ClassInfo {
                name: n.clone(),
                size: c.size,
                word: c.word.clone(),
            })
            .collect(),
        chars: rows
            .into_iter()
            .enumerate()
            .map(|(i, values)| IrrChar {
                label: format!("x{i}"),
                values,
            })
            .collect(),
        families: vec![],
    };
    table.verify().map_err(Error::invariant)?;
    let reps: Vec<Perm> = raw.into_iter().map(|c| c.rep).collect();
    let fake = fake_degrees(&g, &table, &reps)?;
    let bb: Vec<(usize, usize)> = fake.iter().map(b_invariants).collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..table.chars.len()).collect();
    order.sort_by(|&i, &j| {
        let ki = (bb[i].0, table.chars[i].degree(), bb[i].1);
        let kj = (bb[j].0, table.chars[j].degree(), bb[j].1);
        ki.cmp(&kj)
            .then_with(|| table.chars[j].values.cmp(&table.chars[i].values))
    });
    table.chars = order.iter().map(|&i| table.chars[i].clone()).collect();
    let grp = Group::from_parts(g, table.clone(), reps, keyer)?;
    let lists = derive_families(&grp, parabolic_src)?;
    let mut records: Vec<FamilyRecord> = lists
        .into_iter()
        .map(|m| {
            let a = m.iter().map(|&e| grp.b[e]).min().unwrap_or(0);
            let special = m.iter().copied().find(|&e| grp.b[e] == a).unwrap_or(0);
            FamilyRecord {
                degree: grp.degree(special),
                a,
                members: m.iter().map(|&e| grp.table.chars[e].label.clone()).collect(),
            }
        })
        .collect();
    records.sort_by_key(|r| (r.a, r.degree));
    let mut out = grp.table.clone();
    out.families = records;
    Ok(out)
}

/// Generate E6, E7 and E8 into `dir`, each step reading the previous
/// files, and reload every file through the verifying loader.
pub fn generate_all(dir: &Path, ranks: &[usize], mut log: impl FnMut(&str)) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    let src = DataSource::dir(dir);
    for &r in ranks {
        let label = TypeLabel::simple(Series::E, r)?;
        log(&format!("generating {label}"));
        let table = generate(&label, &src)?;
        let path = dir.join(format!("{label}.tbl"));
        std::fs::write(&path, table.to_text()).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
        let fs = families(&label, &src)?;
        let g = group(&label, &src)?;
        log(&format!(
            "{label}: {} classes, {} families",
            g.table.num_classes(),
            fs.len()
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_suffixes() {
        assert_eq!(letters(0), "a");
        assert_eq!(letters(25), "z");
        assert_eq!(letters(26), "aa");
        assert_eq!(letters(27), "ab");
    }
}
