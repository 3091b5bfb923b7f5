//! Full enumeration of a Weyl group through a chain of parabolic subgroups.
//!
//! With `W_k` generated by the first `k` simple reflections, every element of
//! `W_k` factors uniquely as `v x` with `v ∈ W_{k-1}` and `x` a minimal
//! right coset representative; lengths add. The group is split into a
//! prefix subgroup, materialised once, and a suffix set of coset products;
//! each element is then one permutation composition away.

use std::collections::{HashMap, HashSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::weyl::{Perm, WeylGroup};

/// One element of a coset-representative set.
#[derive(Clone, Debug)]
pub struct CosetRep {
    pub perm: Perm,
    pub word: Vec<usize>,
}

/// Minimal right coset representatives of `W_J` in `W_{J ∪ {k}}`.
pub fn coset_reps(g: &WeylGroup, j: &[usize], k: usize) -> Vec<CosetRep> {
    let mut all: Vec<usize> = j.to_vec();
    all.push(k);
    let mut out = vec![CosetRep {
        perm: g.identity(),
        word: Vec::new(),
    }];
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(g.identity());
    let mut frontier = 0;
    while frontier < out.len() {
        let cur = out[frontier].clone();
        frontier += 1;
        for &i in &all {
            if g.has_right_descent(&cur.perm, i) {
                continue;
            }
            let y = g.right_mul_simple(&cur.perm, i);
            if j.iter().any(|&s| g.has_left_descent(&y, s)) || seen.contains(&y) {
                continue;
            }
            seen.insert(y.clone());
            let mut word = cur.word.clone();
            word.push(i);
            out.push(CosetRep { perm: y, word });
        }
    }
    out
}

/// Enumeration plan for a group: prefix elements times suffix elements.
pub struct Enumerator<'a> {
    g: &'a WeylGroup,
    prefix: Vec<CosetRep>,
    suffix: Vec<CosetRep>,
}

/// View of one element during a fold.
pub struct ElementRef<'e> {
    pub perm: &'e [u16],
    pub length: usize,
    pub prefix: u32,
    pub suffix: u32,
}

const PREFIX_TARGET: u64 = 60_000;

impl<'a> Enumerator<'a> {
    pub fn new(g: &'a WeylGroup) -> Self {
        let r = g.rank();
        let mut levels: Vec<Vec<CosetRep>> = Vec::with_capacity(r);
        for k in 0..r {
            let j: Vec<usize> = (0..k).collect();
            levels.push(coset_reps(g, &j, k));
        }
        // Largest leading block whose group order stays near the target.
        let mut split = 0;
        let mut order = 1u64;
        while split < r && order * levels[split].len() as u64 <= PREFIX_TARGET {
            order *= levels[split].len() as u64;
            split += 1;
        }
        let prefix = product(g, &levels[..split]);
        let suffix = product(g, &levels[split..]);
        Enumerator { g, prefix, suffix }
    }

    pub fn group_order(&self) -> u64 {
        self.prefix.len() as u64 * self.suffix.len() as u64
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn suffix_len(&self) -> usize {
        self.suffix.len()
    }

    /// Reduced word of the element with the given indices.
    pub fn word(&self, prefix: u32, suffix: u32) -> Vec<usize> {
        let mut w = self.prefix[prefix as usize].word.clone();
        w.extend_from_slice(&self.suffix[suffix as usize].word);
        w
    }

    /// Every element, in enumeration order.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::with_capacity(self.group_order() as usize);
        for p in &self.prefix {
            for s in &self.suffix {
                out.push(WeylGroup::compose(&p.perm, &s.perm));
            }
        }
        out
    }

    fn fold_prefix<A, F>(&self, acc: &mut A, pi: usize, buf: &mut [u16], f: &F)
    where
        F: Fn(&mut A, ElementRef<'_>),
    {
        let p = &self.prefix[pi];
        for (si, s) in self.suffix.iter().enumerate() {
            WeylGroup::compose_into(&p.perm, &s.perm, buf);
            f(
                acc,
                ElementRef {
                    perm: buf,
                    length: p.word.len() + s.word.len(),
                    prefix: pi as u32,
                    suffix: si as u32,
                },
            );
        }
    }

    /// Fold over all elements sequentially.
    pub fn fold_sequential<A, I, F>(&self, init: I, f: F) -> A
    where
        I: Fn() -> A,
        F: Fn(&mut A, ElementRef<'_>),
    {
        let mut acc = init();
        let mut buf = vec![0u16; self.g.num_roots()];
        for pi in 0..self.prefix.len() {
            self.fold_prefix(&mut acc, pi, &mut buf, &f);
        }
        acc
    }

    /// Fold over all elements, in parallel over prefix elements when the
    /// `parallel` feature is enabled. `merge` must be associative; results
    /// are then independent of scheduling.
    pub fn fold<A, I, F, M>(&self, init: I, f: F, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(&mut A, ElementRef<'_>) + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            let n = self.g.num_roots();
            (0..self.prefix.len())
                .into_par_iter()
                .fold(
                    || (init(), vec![0u16; n]),
                    |(mut acc, mut buf), pi| {
                        self.fold_prefix(&mut acc, pi, &mut buf, &f);
                        (acc, buf)
                    },
                )
                .map(|(acc, _)| acc)
                .reduce(&init, &merge)
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = merge;
            self.fold_sequential(init, f)
        }
    }
}

fn product(g: &WeylGroup, levels: &[Vec<CosetRep>]) -> Vec<CosetRep> {
    let mut acc = vec![CosetRep {
        perm: g.identity(),
        word: Vec::new(),
    }];
    for level in levels {
        let mut next = Vec::with_capacity(acc.len() * level.len());
        for a in &acc {
            for x in level {
                let mut word = a.word.clone();
                word.extend_from_slice(&x.word);
                next.push(CosetRep {
                    perm: WeylGroup::compose(&a.perm, &x.perm),
                    word,
                });
            }
        }
        acc = next;
    }
    acc
}

/// Per-key statistics collected by [`tally_classes`].
#[derive(Clone, Debug)]
pub struct Tally {
    pub count: u64,
    /// Minimal length, then first in enumeration order.
    pub best: (usize, u32, u32),
}

/// Count elements by a conjugation-invariant key.
pub fn tally_classes<K, F>(en: &Enumerator<'_>, key: F) -> HashMap<K, Tally>
where
    K: std::hash::Hash + Eq + Send + Clone,
    F: Fn(&[u16]) -> K + Sync + Send,
{
    en.fold(
        HashMap::new,
        |acc: &mut HashMap<K, Tally>, e| {
            let k = key(e.perm);
            let cand = (e.length, e.prefix, e.suffix);
            acc.entry(k)
                .and_modify(|t| {
                    t.count += 1;
                    if cand < t.best {
                        t.best = cand;
                    }
                })
                .or_insert(Tally {
                    count: 1,
                    best: cand,
                });
        },
        merge_tallies,
    )
}

fn merge_tallies<K: std::hash::Hash + Eq>(
    mut a: HashMap<K, Tally>,
    b: HashMap<K, Tally>,
) -> HashMap<K, Tally> {
    for (k, t) in b {
        a.entry(k)
            .and_modify(|x| {
                x.count += t.count;
                if t.best < x.best {
                    x.best = t.best;
                }
            })
            .or_insert(t);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_whole_group() {
        for s in ["A3", "D4", "A2xA1", "E6"] {
            let g = WeylGroup::of_type(&s.parse().unwrap());
            let en = Enumerator::new(&g);
            assert_eq!(en.group_order(), g.order(), "{s}");
        }
    }

    #[test]
    fn elements_are_distinct_and_words_match() {
        let g = WeylGroup::of_type(&"D4".parse().unwrap());
        let en = Enumerator::new(&g);
        let els = en.elements();
        let set: HashSet<&Perm> = els.iter().collect();
        assert_eq!(set.len(), 192);
        let i = 137u32;
        let (p, s) = (i / en.suffix_len() as u32, i % en.suffix_len() as u32);
        let w = en.word(p, s);
        assert_eq!(g.from_word(&w), els[i as usize]);
        assert_eq!(g.length(&els[i as usize]), w.len());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let g = WeylGroup::of_type(&"A4".parse().unwrap());
        let en = Enumerator::new(&g);
        let a = tally_classes(&en, |w| g.fast_key(w));
        let b = en.fold_sequential(HashMap::new, |acc: &mut HashMap<_, u64>, e| {
            *acc.entry(g.fast_key(e.perm)).or_default() += 1;
        });
        assert_eq!(a.len(), 7);
        for (k, t) in &a {
            assert_eq!(b[k], t.count);
        }
    }
}
