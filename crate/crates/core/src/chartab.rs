//! Character tables: storage, the packaged text format, integrity checks and
//! direct products.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::TypeLabel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub name: String,
    pub size: u64,
    /// Representative as a word in the simple reflections (0-based).
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrChar {
    pub label: String,
    pub values: Vec<i64>,
}

impl IrrChar {
    pub fn degree(&self) -> i64 {
        self.values[0]
    }
}

/// Family membership as recorded in a data file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub degree: i64,
    pub a: usize,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTable {
    pub group: TypeLabel,
    pub order: u64,
    /// Class 0 is the identity class.
    pub classes: Vec<ClassInfo>,
    pub chars: Vec<IrrChar>,
    pub families: Vec<FamilyRecord>,
}

impl CharTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn char_index(&self, label: &str) -> Option<usize> {
        self.chars.iter().position(|c| c.label == label)
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// `Σ_C |C| χ(C) ψ(C)`.
    pub fn weighted_product(&self, x: &[i64], y: &[i64]) -> i128 {
        self.classes
            .iter()
            .zip(x.iter().zip(y))
            .map(|(c, (&a, &b))| c.size as i128 * a as i128 * b as i128)
            .sum()
    }

    /// Multiplicity `⟨χ, ψ⟩` if it is an integer.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Option<i64> {
        let s = self.weighted_product(x, y);
        let o = self.order as i128;
        (s % o == 0).then(|| (s / o) as i64)
    }

    /// Row orthogonality, `Σ χ(1)² = |W|`, class-size sum, and centraliser
    /// orders from column orthogonality.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let k = self.classes.len();
        if self.chars.len() != k {
            return Err(format!("{} characters for {k} classes", self.chars.len()));
        }
        if self.classes.first().map(|c| (c.size, c.word.is_empty())) != Some((1, true)) {
            return Err("class 0 must be the identity".into());
        }
        let total: u64 = self.classes.iter().map(|c| c.size).sum();
        if total != self.order {
            return Err(format!("class sizes sum to {total}, expected {}", self.order));
        }
        for ch in &self.chars {
            if ch.values.len() != k {
                return Err(format!("{}: {} values for {k} classes", ch.label, ch.values.len()));
            }
        }
        let sq: i128 = self.chars.iter().map(|c| (c.degree() as i128).pow(2)).sum();
        if sq != self.order as i128 {
            return Err(format!("sum of squared degrees {sq} ≠ {}", self.order));
        }
        for (i, x) in self.chars.iter().enumerate() {
            for (j, y) in self.chars.iter().enumerate().skip(i) {
                let s = self.weighted_product(&x.values, &y.values);
                let expect = if i == j { self.order as i128 } else { 0 };
                if s != expect {
                    return Err(format!(
                        "row orthogonality fails for {} and {}: {s}",
                        x.label, y.label
                    ));
                }
            }
        }
        for (c, cls) in self.classes.iter().enumerate() {
            let cent: i128 = self.chars.iter().map(|x| (x.values[c] as i128).pow(2)).sum();
            if cent * cls.size as i128 != self.order as i128 {
                return Err(format!(
                    "class {}: centraliser order {cent} inconsistent with size {}",
                    cls.name, cls.size
                ));
            }
        }
        Ok(())
    }

    /// Checksum recorded in data files: `Σ_χ Σ_C |C| χ(C)²`.
    pub fn ortho_checksum(&self) -> BigInt {
        self.chars
            .iter()
            .map(|c| BigInt::from(self.weighted_product(&c.values, &c.values)))
            .fold(BigInt::zero(), |a, b| a + b)
    }

    /// Trivial group table.
    pub fn trivial() -> Self {
        CharTable {
            group: TypeLabel::empty(),
            order: 1,
            classes: vec![ClassInfo {
                name: "1".into(),
                size: 1,
                word: vec![],
            }],
            chars: vec![IrrChar {
                label: "phi_{1,0}".into(),
                values: vec![1],
            }],
            families: vec![],
        }
    }

    /// Direct product; class and character indices run lexicographically
    /// with the first factor most significant. Generator indices of `other`
    /// are shifted by `shift`.
    pub fn product(&self, other: &CharTable, shift: usize) -> CharTable {
        let mut classes = Vec::new();
        for a in &self.classes {
            for b in &other.classes {
                let mut word = a.word.clone();
                word.extend(b.word.iter().map(|i| i + shift));
                classes.push(ClassInfo {
                    name: join_names(&a.name, &b.name),
                    size: a.size * b.size,
                    word,
                });
            }
        }
        let mut chars = Vec::new();
        for x in &self.chars {
            for y in &other.chars {
                let values = x
                    .values
                    .iter()
                    .flat_map(|&u| y.values.iter().map(move |&v| u * v))
                    .collect();
                chars.push(IrrChar {
                    label: join_names(&x.label, &y.label),
                    values,
                });
            }
        }
        let mut factors = self.group.factors().to_vec();
        factors.extend_from_slice(other.group.factors());
        CharTable {
            group: TypeLabel::new(factors),
            order: self.order * other.order,
            classes,
            chars,
            families: vec![],
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "GROUP {} ORDER {} CLASSES {} IRRS {}",
            self.group,
            self.order,
            self.classes.len(),
            self.chars.len()
        );
        for c in &self.classes {
            let word: Vec<String> = c.word.iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(s, "CLASS {} SIZE {} WORD {}", c.name, c.size, word.join(","));
        }
        for ch in &self.chars {
            let vals: Vec<String> = ch.values.iter().map(i64::to_string).collect();
            let _ = writeln!(s, "CHAR {} : {}", ch.label, vals.join(" "));
        }
        for f in &self.families {
            let _ = writeln!(s, "FAMILY {},{} : {}", f.degree, f.a, f.members.join(" "));
        }
        let _ = writeln!(s, "CHECK ORTHO {}", self.ortho_checksum());
        s
    }

    /// Parse the packaged format; `path` is used in error messages only.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::data(path, format!("line {line}: {msg}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::data(path, "empty file"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 8 || h[0] != "GROUP" || h[2] != "ORDER" || h[4] != "CLASSES" || h[6] != "IRRS"
        {
            return Err(err(ln, "malformed GROUP header"));
        }
        let group: TypeLabel = h[1].parse().map_err(|_| err(ln, "bad group label"))?;
        let num = |s: &str| -> Result<u64> { s.parse().map_err(|_| err(ln, "bad number")) };
        let order = num(h[3])?;
        let nclasses = num(h[5])? as usize;
        let nirr = num(h[7])? as usize;
        let mut table = CharTable {
            group,
            order,
            classes: vec![],
            chars: vec![],
            families: vec![],
        };
        let mut checksum: Option<BigInt> = None;
        for (ln, line) in lines {
            let (tag, rest) = line.split_once(' ').unwrap_or((line, ""));
            match tag {
                "CLASS" => {
                    let t: Vec<&str> = rest.split_whitespace().collect();
                    if !(t.len() == 4 || t.len() == 5) || t[1] != "SIZE" || t[3] != "WORD" {
                        return Err(err(ln, "malformed CLASS line"));
                    }
                    let size = t[2].parse().map_err(|_| err(ln, "bad class size"))?;
                    let word = match t.get(4) {
                        None => vec![],
                        Some(w) => w
                            .split(',')
                            .map(|x| match x.parse::<usize>() {
                                Ok(i) if i >= 1 => Ok(i - 1),
                                _ => Err(err(ln, "bad word letter")),
                            })
                            .collect::<Result<_>>()?,
                    };
                    table.classes.push(ClassInfo {
                        name: t[0].to_string(),
                        size,
                        word,
                    });
                }
                "CHAR" => {
                    let (label, vals) = rest
                        .split_once(':')
                        .ok_or_else(|| err(ln, "CHAR line needs ':'"))?;
                    let values = vals
                        .split_whitespace()
                        .map(|v| v.parse().map_err(|_| err(ln, "bad character value")))
                        .collect::<Result<_>>()?;
                    table.chars.push(IrrChar {
                        label: label.trim().to_string(),
                        values,
                    });
                }
                "FAMILY" => {
                    let (key, members) = rest
                        .split_once(':')
                        .ok_or_else(|| err(ln, "FAMILY line needs ':'"))?;
                    let (d, a) = key
                        .trim()
                        .split_once(',')
                        .ok_or_else(|| err(ln, "FAMILY key must be D,a"))?;
                    table.families.push(FamilyRecord {
                        degree: d.trim().parse().map_err(|_| err(ln, "bad family degree"))?,
                        a: a.trim().parse().map_err(|_| err(ln, "bad family a"))?,
                        members: members.split_whitespace().map(String::from).collect(),
                    });
                }
                "CHECK" => {
                    let t: Vec<&str> = rest.split_whitespace().collect();
                    if t.len() != 2 || t[0] != "ORTHO" {
                        return Err(err(ln, "malformed CHECK line"));
                    }
                    checksum = Some(t[1].parse().map_err(|_| err(ln, "bad checksum"))?);
                }
                _ => return Err(err(ln, &format!("unknown record {tag}"))),
            }
        }
        if table.classes.len() != nclasses {
            return Err(Error::data(
                path,
                format!("header promises {nclasses} classes, found {}", table.classes.len()),
            ));
        }
        if table.chars.len() != nirr {
            return Err(Error::data(
                path,
                format!("header promises {nirr} characters, found {}", table.chars.len()),
            ));
        }
        match checksum {
            None => return Err(Error::data(path, "missing CHECK ORTHO line")),
            Some(c) if c != table.ortho_checksum() => {
                return Err(Error::data(path, "CHECK ORTHO checksum mismatch"));
            }
            _ => {}
        }
        table.verify().map_err(|m| Error::data(path, m))?;
        Ok(table)
    }
}

fn join_names(a: &str, b: &str) -> String {
    format!("{a}x{b}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> CharTable {
        CharTable {
            group: "A2".parse().unwrap(),
            order: 6,
            classes: vec![
                ClassInfo { name: "1a".into(), size: 1, word: vec![] },
                ClassInfo { name: "2a".into(), size: 3, word: vec![0] },
                ClassInfo { name: "3a".into(), size: 2, word: vec![0, 1] },
            ],
            chars: vec![
                IrrChar { label: "phi_{1,0}".into(), values: vec![1, 1, 1] },
                IrrChar { label: "phi_{2,1}".into(), values: vec![2, 0, -1] },
                IrrChar { label: "phi_{1,3}".into(), values: vec![1, -1, 1] },
            ],
            families: vec![],
        }
    }

    #[test]
    fn roundtrip_text() {
        let t = s3();
        t.verify().unwrap();
        let text = t.to_text();
        let back = CharTable::parse(&text, Path::new("s3")).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn corrupt_value_rejected() {
        let text = s3().to_text().replace("2 0 -1", "2 0 1");
        let e = CharTable::parse(&text, Path::new("s3.tbl")).unwrap_err();
        assert!(e.to_string().contains("s3.tbl"));
        assert_eq!(e.exit_code(), 4);
    }

    #[test]
    fn product_is_a_table() {
        let p = s3().product(&s3(), 2);
        assert_eq!(p.num_classes(), 9);
        p.verify().unwrap();
        assert_eq!(p.classes[5].word, vec![0, 2, 3]);
    }
}
