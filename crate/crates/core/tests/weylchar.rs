use reg235::checks::{matches_brute_force, orthogonality, poincare_identity};
use reg235::rootsys::TypeLabel;
use reg235::weylchar::{group, DataSource};

fn load(s: &str) -> std::sync::Arc<reg235::weylchar::Group> {
    group(&s.parse::<TypeLabel>().unwrap(), &DataSource::packaged()).unwrap()
}

fn partitions(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}

#[test]
fn class_counts() {
    for n in 1..=8 {
        assert_eq!(load(&format!("A{n}")).table.num_classes(), partitions(n + 1), "A{n}");
    }
    for (l, k) in [("D4", 13), ("D5", 18), ("D6", 37), ("D7", 55), ("D8", 100), ("E6", 25), ("E7", 60)] {
        assert_eq!(load(l).table.num_classes(), k, "{l}");
    }
}

#[test]
fn group_orders() {
    for (l, n) in [("A4", 120), ("D4", 192), ("D5", 1920), ("E6", 51840), ("E7", 2903040)] {
        assert_eq!(load(l).order(), n, "{l}");
    }
}

#[test]
fn poincare_identity_small_and_exceptional() {
    for l in ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7"] {
        poincare_identity(&load(l)).unwrap();
    }
}

#[test]
fn tables_are_orthogonal() {
    for l in ["A3", "A6", "D4", "D7", "E6", "E7"] {
        orthogonality(&load(l)).unwrap();
    }
}

#[test]
fn classical_tables_match_enumeration() {
    for l in ["A1", "A2", "A3", "A4", "A5", "D4", "D5"] {
        matches_brute_force(&load(l), 50_000).unwrap();
    }
}

#[test]
fn trivial_sign_and_reflection_invariants() {
    for l in ["A4", "D5", "E6", "E7"] {
        let g = load(l);
        let one = g.trivial_index();
        let sgn = g.sign_index();
        assert_eq!((g.b[one], g.b_prime[one]), (0, 0), "{l}");
        assert_eq!((g.b[sgn], g.b_prime[sgn]), (g.nu(), g.nu()), "{l}");
        let refl = (0..g.num_chars())
            .find(|&e| g.degree(e) as usize == g.label().rank() && g.b[e] == 1)
            .expect("reflection representation");
        assert_eq!(g.b_prime[refl], g.label().degrees().iter().max().unwrap().to_owned() as usize - 1);
    }
}

#[test]
fn e6_labels() {
    let g = load("E6");
    for (lab, d, b) in [("phi_{1,0}", 1, 0), ("phi_{6,1}", 6, 1), ("phi_{20,2}", 20, 2), ("phi_{90,8}", 90, 8), ("phi_{1,36}", 1, 36)] {
        let e = g.char_index(lab).unwrap();
        assert_eq!((g.degree(e), g.b[e]), (d, b), "{lab}");
    }
}

#[test]
fn e7_tie_labels_are_distinct() {
    let g = load("E7");
    let mut labels: Vec<&str> = g.table.chars.iter().map(|c| c.label.as_str()).collect();
    labels.sort();
    labels.dedup();
    assert_eq!(labels.len(), 60);
}

#[test]
fn unsupported_types_are_rejected() {
    for l in ["B3", "G2", "F4", "C5", "E9", "D3"] {
        assert!(l.parse::<TypeLabel>().is_err(), "{l}");
    }
}
