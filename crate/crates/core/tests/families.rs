use reg235::checks::dualities;
use reg235::families::{families, family_dual};
use reg235::rootsys::TypeLabel;
use reg235::weylchar::DataSource;

fn fams(s: &str) -> std::sync::Arc<reg235::families::FamilySet> {
    families(&s.parse::<TypeLabel>().unwrap(), &DataSource::packaged()).unwrap()
}

fn sizes(s: &str) -> Vec<usize> {
    let mut v: Vec<usize> = fams(s).families.iter().map(|f| f.members.len()).collect();
    v.sort();
    v
}

#[test]
fn type_a_families_are_singletons() {
    for n in 1..=7 {
        assert!(sizes(&format!("A{n}")).iter().all(|&k| k == 1));
    }
}

#[test]
fn family_counts() {
    for (l, k) in [("D4", 11), ("D5", 14), ("E6", 17), ("E7", 35)] {
        assert_eq!(fams(l).len(), k, "{l}");
    }
}

#[test]
fn family_size_profile() {
    assert_eq!(sizes("D4"), [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 3]);
    let count = |v: &[usize], k: usize| v.iter().filter(|&&x| x == k).count();
    let e6 = sizes("E6");
    assert_eq!([1, 2, 3, 5].map(|k| count(&e6, k)), [14, 0, 2, 1]);
    let e7 = sizes("E7");
    assert_eq!([1, 2, 3, 5].map(|k| count(&e7, k)), [24, 1, 8, 2]);
}

#[test]
fn every_family_has_one_special_member() {
    for l in ["D5", "D6", "E6", "E7"] {
        let fs = fams(l);
        let g = &fs.group;
        for f in &fs.families {
            let special: Vec<usize> = f.members.iter().copied().filter(|&e| g.b[e] == f.a).collect();
            assert_eq!(special, [f.special], "{l}");
            assert_eq!(g.degree(f.special), f.degree);
        }
    }
}

#[test]
fn dualities_hold() {
    for l in ["A5", "D4", "D6", "E6", "E7"] {
        let fs = fams(l);
        assert_eq!(dualities(&fs).unwrap(), fs.group.num_chars() + fs.len());
    }
}

#[test]
fn e6_family_invariants() {
    let fs = fams("E6");
    let f = fs.by_key(30, 3).expect("family (30, 3)");
    assert_eq!(fs.families[f].members.len(), 3);
    let d = family_dual(&fs, f).unwrap();
    assert_eq!(d.key(), (30, 15));
    let one = fs.by_key(1, 0).unwrap();
    assert_eq!(family_dual(&fs, one).unwrap().key(), (1, 36));
}
