//! Counting solutions of `abc = 1` over conjugacy classes of small finite
//! groups, by character sums over `Q(√5)` and by exhaustive enumeration.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::path::PathBuf;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// `a + b√5` with rational `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Q5 {
    pub a: Q,
    pub b: Q,
}

impl Q5 {
    pub fn new(a: Q, b: Q) -> Self {
        Q5 { a, b }
    }

    pub fn int(n: i128) -> Self {
        Q5::new(Q::from_integer(n), Q::zero())
    }

    pub fn conj(self) -> Self {
        Q5::new(self.a, -self.b)
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(self) -> Q {
        self.a * self.a - Q::from_integer(5) * self.b * self.b
    }

    pub fn to_integer(self) -> Option<i128> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }
}

impl Zero for Q5 {
    fn zero() -> Self {
        Q5::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Q5 {
    fn one() -> Self {
        Q5::int(1)
    }
}

impl Add for Q5 {
    type Output = Q5;
    fn add(self, o: Q5) -> Q5 {
        Q5::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Q5 {
    type Output = Q5;
    fn sub(self, o: Q5) -> Q5 {
        Q5::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Q5 {
    type Output = Q5;
    fn neg(self) -> Q5 {
        Q5::new(-self.a, -self.b)
    }
}

impl Mul for Q5 {
    type Output = Q5;
    fn mul(self, o: Q5) -> Q5 {
        let five = Q::from_integer(5);
        Q5::new(self.a * o.a + five * self.b * o.b, self.a * o.b + self.b * o.a)
    }
}

impl Div for Q5 {
    type Output = Q5;
    /// Panics on division by zero.
    fn div(self, o: Q5) -> Q5 {
        let n = o.norm();
        let p = self * o.conj();
        Q5::new(p.a / n, p.b / n)
    }
}

impl fmt::Display for Q5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}r5", self.b),
            (false, false) if self.b < Q::zero() => write!(f, "{}-{}r5", self.a, -self.b),
            (false, false) => write!(f, "{}+{}r5", self.a, self.b),
        }
    }
}

impl std::str::FromStr for Q5 {
    type Err = String;

    /// Sums of terms `p`, `p/q`, `r5`, `p/q r5` (e.g. `1/2-1/2r5`, `-r5`).
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty value".into());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut out = Q5::zero();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(t)),
            };
            let (coef, surd) = match body.strip_suffix("r5") {
                Some(c) => (c.trim_end_matches('*'), true),
                None => (body, false),
            };
            let q: Q = if coef.is_empty() && surd {
                Q::one()
            } else {
                coef.parse().map_err(|_| format!("bad term {t:?} in {s:?}"))?
            };
            let q = q * Q::from_integer(sign);
            out = out + if surd { Q5::new(Q::zero(), q) } else { Q5::new(q, Q::zero()) };
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteClass {
    pub name: String,
    pub size: u64,
    pub order: u64,
    /// Word in the generators (1-based) for a representative.
    pub word: Vec<usize>,
}

/// Character table of a small finite group given as a permutation group.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    pub name: String,
    pub order: u64,
    pub degree: usize,
    pub gens: Vec<Vec<u16>>,
    pub classes: Vec<FiniteClass>,
    pub chars: Vec<(String, Vec<Q5>)>,
    /// `power[k][c]` is the class of `g^k` for `g` in class `c`.
    pub power: BTreeMap<u64, Vec<usize>>,
}

const BUILTIN: &[(&str, &str)] = &[
    ("A5", include_str!("../data/groups/A5.grp")),
    ("S5", include_str!("../data/groups/S5.grp")),
    ("S4", include_str!("../data/groups/S4.grp")),
    ("SL2_5", include_str!("../data/groups/SL2_5.grp")),
    ("Dih6", include_str!("../data/groups/Dih6.grp")),
    ("Dih8", include_str!("../data/groups/Dih8.grp")),
    ("Dih10", include_str!("../data/groups/Dih10.grp")),
    ("Dih12", include_str!("../data/groups/Dih12.grp")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

/// A built-in table, parsed and verified.
pub fn builtin(name: &str) -> Result<FiniteGroupTable> {
    let (_, text) = BUILTIN
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| {
            Error::Usage(format!(
                "unknown finite group {name}; available: {}",
                builtin_names().join(", ")
            ))
        })?;
    FiniteGroupTable::parse(text, format!("<builtin>/{name}.grp"))
}

impl FiniteGroupTable {
    pub fn parse(text: &str, path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let bad = |line: usize, msg: &str| Error::data(&path, format!("line {line}: {msg}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| bad(0, "empty file"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 10
            || h[0] != "GROUP"
            || h[2] != "ORDER"
            || h[4] != "CLASSES"
            || h[6] != "IRRS"
            || h[8] != "DEGREE"
        {
            return Err(bad(ln, "expected GROUP <name> ORDER <n> CLASSES <k> IRRS <m> DEGREE <d>"));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad(ln, "bad number in header"));
        let mut t = FiniteGroupTable {
            name: h[1].to_string(),
            order: num(h[3])?,
            degree: num(h[9])? as usize,
            gens: vec![],
            classes: vec![],
            chars: vec![],
            power: BTreeMap::new(),
        };
        let (k, m) = (num(h[5])? as usize, num(h[7])? as usize);
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "GEN" => {
                    let p: Vec<u16> = toks[1..]
                        .iter()
                        .map(|x| x.parse::<u16>().ok().filter(|&v| v >= 1).map(|v| v - 1))
                        .collect::<Option<_>>()
                        .ok_or_else(|| bad(ln, "bad generator"))?;
                    let mut seen = p.clone();
                    seen.sort_unstable();
                    if p.len() != t.degree || seen.iter().enumerate().any(|(i, &v)| v as usize != i) {
                        return Err(bad(ln, "generator is not a permutation of the stated degree"));
                    }
                    t.gens.push(p);
                }
                "CLASS" => {
                    if !(toks.len() == 7 || toks.len() == 8)
                        || toks[2] != "SIZE"
                        || toks[4] != "ORDER"
                        || toks[6] != "WORD"
                    {
                        return Err(bad(ln, "expected CLASS <name> SIZE <s> ORDER <o> WORD <w>"));
                    }
                    let word = match toks.get(7) {
                        Some(w) => w
                            .split(',')
                            .map(|x| x.parse::<usize>().ok().filter(|&v| v >= 1 && v <= t.gens.len()))
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| bad(ln, "bad word"))?,
                        None => vec![],
                    };
                    t.classes.push(FiniteClass {
                        name: toks[1].to_string(),
                        size: toks[3].parse().map_err(|_| bad(ln, "bad size"))?,
                        order: toks[5].parse().map_err(|_| bad(ln, "bad order"))?,
                        word,
                    });
                }
                "CHAR" => {
                    if toks.len() != k + 3 || toks[2] != ":" {
                        return Err(bad(ln, "expected CHAR <label> : v1 .. vk"));
                    }
                    let vals = toks[3..]
                        .iter()
                        .map(|v| v.parse::<Q5>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|e| bad(ln, &e))?;
                    t.chars.push((toks[1].to_string(), vals));
                }
                "POWER" => {
                    if toks.len() != k + 3 || toks[2] != ":" {
                        return Err(bad(ln, "expected POWER <k> : c1 .. ck"));
                    }
                    let p: u64 = toks[1].parse().map_err(|_| bad(ln, "bad power"))?;
                    let map = toks[3..]
                        .iter()
                        .map(|c| t.classes.iter().position(|x| x.name == *c))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| bad(ln, "unknown class in power map"))?;
                    t.power.insert(p, map);
                }
                other => return Err(bad(ln, &format!("unknown record {other}"))),
            }
        }
        if t.classes.len() != k || t.chars.len() != m {
            return Err(Error::data(&path, "class or character count differs from header"));
        }
        t.verify().map_err(|e| Error::data(&path, e))?;
        Ok(t)
    }

    /// Class sizes, row orthogonality, degree sum and power-map orders.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let total: u64 = self.classes.iter().map(|c| c.size).sum();
        if total != self.order {
            return Err(format!("class sizes sum to {total}, not {}", self.order));
        }
        if self.chars.len() != self.classes.len() {
            return Err("table is not square".into());
        }
        let order = Q5::int(self.order as i128);
        for (i, (li, x)) in self.chars.iter().enumerate() {
            for (lj, y) in &self.chars[i..] {
                // All tables here are real-valued, so no complex conjugation.
                let ip = self
                    .classes
                    .iter()
                    .zip(x.iter().zip(y))
                    .fold(Q5::zero(), |acc, (c, (&a, &b))| acc + Q5::int(c.size as i128) * a * b);
                let want = if li == lj { order } else { Q5::zero() };
                if ip != want {
                    return Err(format!("<{li},{lj}> = {ip}, expected {want}"));
                }
            }
        }
        for (&k, map) in &self.power {
            for (c, &img) in self.classes.iter().zip(map) {
                let expect = c.order / c.order.gcd(&k);
                if self.classes[img].order != expect {
                    return Err(format!("POWER {k} sends {} to a class of order {}", c.name, self.classes[img].order));
                }
            }
        }
        Ok(())
    }

    pub fn class_index(&self, name: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::Usage(format!("{} has no class {name}", self.name)))
    }

    /// Class of `g^k`, composing the stored prime power maps.
    pub fn power_class(&self, c: usize, k: u64) -> Result<usize> {
        let mut c = c;
        let mut k = k % self.classes[c].order;
        if k == 0 {
            return self.class_index_of_order_one();
        }
        let mut p = 2;
        while k > 1 {
            while k.is_multiple_of(p) {
                let map = self.power.get(&p).ok_or_else(|| {
                    Error::Usage(format!("{} has no POWER {p} map", self.name))
                })?;
                c = map[c];
                k /= p;
            }
            p += 1;
        }
        Ok(c)
    }

    fn class_index_of_order_one(&self) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.order == 1)
            .ok_or_else(|| Error::invariant("no identity class"))
    }

    pub fn inverse_class(&self, c: usize) -> Result<usize> {
        self.power_class(c, self.classes[c].order - 1)
    }
}

/// Solutions of `abc = 1` with `a ∈ A`, `b ∈ B`, `c ∈ C`, from the
/// character sum `|A||B||C|/|G| · Σ_ρ ρ(a)ρ(b)ρ(c)/ρ(1)`.
pub fn triple_count(t: &FiniteGroupTable, a: usize, b: usize, c: usize) -> Result<u64> {
    let sum = t.chars.iter().fold(Q5::zero(), |acc, (_, v)| {
        acc + v[a] * v[b] * v[c] / v[t.class_index_of_order_one().unwrap_or(0)]
    });
    let sizes: i128 = [a, b, c].iter().map(|&i| t.classes[i].size as i128).product();
    let val = sum * Q5::int(sizes) / Q5::int(t.order as i128);
    match val.to_integer() {
        Some(n) if n >= 0 => Ok(n as u64),
        _ => Err(Error::invariant(format!(
            "{}: character sum for ({}, {}, {}) is {val}, not a non-negative integer",
            t.name, t.classes[a].name, t.classes[b].name, t.classes[c].name
        ))),
    }
}

pub type Perm = Vec<u16>;

fn compose(a: &[u16], b: &[u16]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

/// Explicit elements of a table's permutation group, each tagged with the
/// table class it belongs to.
#[derive(Clone, Debug)]
pub struct Elements {
    pub elts: Vec<Perm>,
    pub class_of: HashMap<Perm, usize>,
}

/// Upper bound on the group order for exhaustive work.
pub const MAX_ORDER: usize = 10_000;

pub fn elements(t: &FiniteGroupTable) -> Result<Elements> {
    let id: Perm = (0..t.degree as u16).collect();
    let mut seen: HashMap<Perm, ()> = HashMap::from([(id.clone(), ())]);
    let mut elts = vec![id.clone()];
    let mut queue = VecDeque::from([id.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in &t.gens {
            let y = compose(&x, g);
            if !seen.contains_key(&y) {
                if elts.len() >= MAX_ORDER {
                    return Err(Error::Precondition(format!("{} exceeds {MAX_ORDER} elements", t.name)));
                }
                seen.insert(y.clone(), ());
                elts.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    if elts.len() as u64 != t.order {
        return Err(Error::invariant(format!("{} generates {} elements, table says {}", t.name, elts.len(), t.order)));
    }
    let inverse = |p: &[u16]| {
        let mut q = vec![0u16; p.len()];
        for (i, &x) in p.iter().enumerate() {
            q[x as usize] = i as u16;
        }
        q
    };
    let mut class_of = HashMap::new();
    for (ci, c) in t.classes.iter().enumerate() {
        let rep = c.word.iter().fold(id.clone(), |acc, &k| compose(&acc, &t.gens[k - 1]));
        if class_of.contains_key(&rep) {
            return Err(Error::invariant(format!("{}: class {} repeats another class", t.name, c.name)));
        }
        let mut size = 0u64;
        for g in &elts {
            let y = compose(&compose(g, &rep), &inverse(g));
            if class_of.insert(y, ci).is_none() {
                size += 1;
            }
        }
        if size != c.size {
            return Err(Error::invariant(format!("{}: class {} has {size} elements, table says {}", t.name, c.name, c.size)));
        }
    }
    for (&k, map) in &t.power {
        for (ci, c) in t.classes.iter().enumerate() {
            let rep = c.word.iter().fold(id.clone(), |acc, &j| compose(&acc, &t.gens[j - 1]));
            let pw = (0..k).fold(id.clone(), |acc, _| compose(&acc, &rep));
            if class_of[&pw] != map[ci] {
                return Err(Error::invariant(format!("{}: POWER {k} is wrong at {}", t.name, c.name)));
            }
        }
    }
    Ok(Elements { elts, class_of })
}

/// Literal count of pairs `(a, b) ∈ A × B` with `(ab)⁻¹ ∈ C`.
pub fn brute_force_triple_count(e: &Elements, a: usize, b: usize, c: usize) -> u64 {
    let of = |k: usize| e.elts.iter().filter(move |x| e.class_of[*x] == k);
    let mut n = 0;
    for x in of(a) {
        for y in of(b) {
            let xy = compose(x, y);
            let mut inv = vec![0u16; xy.len()];
            for (i, &v) in xy.iter().enumerate() {
                inv[v as usize] = i as u16;
            }
            if e.class_of[&inv] == c {
                n += 1;
            }
        }
    }
    n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedDimReport {
    pub dim: i128,
    /// `dim V^{x_n}` for `n = 2, 3, 5`.
    pub fixed: [i128; 3],
    pub invariants: i128,
    pub holds: bool,
}

/// Fixed-space dimensions of a character of `A5` at the elements of order
/// 2, 3 and 5 and on the whole group, by character averaging.
pub fn fixed_dim_identity(t: &FiniteGroupTable, chi: &[Q5]) -> Result<FixedDimReport> {
    if chi.len() != t.classes.len() {
        return Err(Error::Usage("character length differs from the class count".into()));
    }
    let integral = |q: Q5, what: &str| {
        q.to_integer().ok_or_else(|| {
            Error::Usage(format!("{what} = {q} is not an integer; input is not a character"))
        })
    };
    let id = t.class_index_of_order_one()?;
    let mut fixed = [0i128; 3];
    for (slot, n) in [2u64, 3, 5].into_iter().enumerate() {
        let x = t
            .classes
            .iter()
            .position(|c| c.order == n)
            .ok_or_else(|| Error::Usage(format!("{} has no element of order {n}", t.name)))?;
        let mut s = Q5::zero();
        for j in 0..n {
            s = s + chi[t.power_class(x, j)?];
        }
        fixed[slot] = integral(s / Q5::int(n as i128), &format!("dim V^x{n}"))?;
    }
    let avg = t
        .classes
        .iter()
        .zip(chi)
        .fold(Q5::zero(), |acc, (c, &v)| acc + Q5::int(c.size as i128) * v)
        / Q5::int(t.order as i128);
    let invariants = integral(avg, "dim V^G")?;
    let dim = integral(chi[id], "dim V")?;
    Ok(FixedDimReport {
        dim,
        fixed,
        invariants,
        holds: fixed.iter().sum::<i128>() == dim + 2 * invariants,
    })
}
