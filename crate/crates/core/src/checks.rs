//! Whole-table consistency checks shared by the command line and the tests.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use crate::dixon::{dixon_schneider, ClassSystem};
use crate::error::{Error, Result};
use crate::families::FamilySet;
use crate::poly::Poly;
use crate::weyl::{Perm, WeylGroup};
use crate::weylchar::Group;

/// `Σ_E dim(E) · FakeDegree_E(q) = Π (q^{d_i} − 1)/(q − 1)`.
pub fn poincare_identity(g: &Group) -> Result<()> {
    let lhs = g
        .fake
        .iter()
        .zip(&g.table.chars)
        .fold(Poly::zero(), |acc, (f, ch)| &acc + &f.scale(&BigInt::from(ch.degree())));
    let q_minus_one = Poly::q_power_minus_one(1);
    let rhs = g.label().degrees().iter().try_fold(Poly::one(), |acc, &d| {
        Poly::q_power_minus_one(d as usize)
            .div_exact(&q_minus_one)
            .map(|p| &acc * &p)
    });
    match rhs {
        Some(rhs) if rhs == lhs => Ok(()),
        _ => Err(Error::invariant(format!("Poincaré identity fails for W({})", g.label()))),
    }
}

/// Orthogonality, class-size sum and `Σ χ(1)² = |W|`.
pub fn orthogonality(g: &Group) -> Result<()> {
    g.table.verify().map_err(Error::invariant)?;
    let total: i128 = g.table.chars.iter().map(|c| (c.degree() as i128).pow(2)).sum();
    if total != g.order() as i128 {
        return Err(Error::invariant(format!(
            "Σ χ(1)² = {total} but |W({})| = {}",
            g.label(),
            g.order()
        )));
    }
    Ok(())
}

/// `b(E) = ν − b′(E⊗sgn)` for every character and `a(ℱ) = ν − a′(ℱ⊗sgn)`
/// for every family. Returns the number of identities checked.
pub fn dualities(fs: &FamilySet) -> Result<usize> {
    let g = &fs.group;
    let nu = g.nu();
    for e in 0..g.num_chars() {
        if g.b[e] + g.b_prime[g.sign_twist[e]] != nu {
            return Err(Error::invariant(format!("b-duality fails at {}", g.table.chars[e].label)));
        }
    }
    for (i, f) in fs.families.iter().enumerate() {
        let d = &fs.families[fs.dual(i)?];
        if f.a + d.a_prime != nu {
            return Err(Error::invariant(format!("a-duality fails at family ({}, {})", f.degree, f.a)));
        }
    }
    Ok(g.num_chars() + fs.len())
}

/// Character table of `g` recomputed from scratch: every element is
/// listed, classes are conjugation orbits, and the characters come out of
/// the class algebra. Rows are sorted; columns follow `g.table`.
pub fn brute_force_table(g: &Group, max_order: u64) -> Result<Vec<Vec<i64>>> {
    if g.order() > max_order {
        return Err(Error::Precondition(format!(
            "|W({})| = {} exceeds the enumeration bound {max_order}",
            g.label(),
            g.order()
        )));
    }
    let w = &g.weyl;
    let gens: Vec<Perm> = (0..w.rank()).map(|i| w.generator(i).clone()).collect();
    let mut class_of: HashMap<Perm, usize> = HashMap::new();
    let mut reps: Vec<Perm> = Vec::new();
    let mut sizes: Vec<u64> = Vec::new();
    let mut all = vec![w.identity()];
    let mut seen: HashMap<Perm, ()> = HashMap::from([(w.identity(), ())]);
    let mut i = 0;
    while i < all.len() {
        for s in &gens {
            let y = WeylGroup::compose(&all[i], s);
            if seen.insert(y.clone(), ()).is_none() {
                all.push(y);
            }
        }
        i += 1;
    }
    for x in &all {
        if class_of.contains_key(x) {
            continue;
        }
        let id = reps.len();
        let mut queue = VecDeque::from([x.clone()]);
        class_of.insert(x.clone(), id);
        let mut size = 1;
        while let Some(y) = queue.pop_front() {
            for s in &gens {
                let z = WeylGroup::compose(&WeylGroup::compose(s, &y), s);
                if !class_of.contains_key(&z) {
                    class_of.insert(z.clone(), id);
                    queue.push_back(z);
                    size += 1;
                }
            }
        }
        reps.push(x.clone());
        sizes.push(size);
    }
    if all.len() as u64 != g.order() {
        return Err(Error::invariant("enumeration does not reach the group order"));
    }
    let ident = |p: &[u16]| class_of[p];
    let cs = ClassSystem {
        g: w,
        reps,
        sizes,
        identify: &ident,
    };
    let id = class_of[&w.identity()];
    let rows = dixon_schneider(&cs, id)?;
    let cols: Vec<usize> = g.reps.iter().map(|r| class_of[r]).collect();
    let mut out: Vec<Vec<i64>> = rows
        .iter()
        .map(|row| cols.iter().map(|&c| row[c]).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// Compare the table of `g` with [`brute_force_table`].
pub fn matches_brute_force(g: &Group, max_order: u64) -> Result<()> {
    let brute = brute_force_table(g, max_order)?;
    let mut ours: Vec<Vec<i64>> = g.table.chars.iter().map(|c| c.values.clone()).collect();
    ours.sort();
    if ours != brute {
        return Err(Error::invariant(format!(
            "table of W({}) differs from the enumerated table",
            g.label()
        )));
    }
    Ok(())
}
