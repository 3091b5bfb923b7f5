use reg235::frobcount::{
    brute_force_triple_count, builtin, builtin_names, elements, fixed_dim_identity, triple_count, FiniteGroupTable, Q5,
};
use reg235::Error;

fn idx(t: &FiniteGroupTable, name: &str) -> usize {
    t.class_index(name).unwrap()
}

#[test]
fn a5_involution_three_five() {
    let t = builtin("A5").unwrap();
    let (a, b) = (idx(&t, "2a"), idx(&t, "3a"));
    for c in ["5a", "5b"] {
        assert_eq!(triple_count(&t, a, b, idx(&t, c)).unwrap(), 60);
    }
}

#[test]
fn dihedral_transpositions() {
    let t = builtin("Dih6").unwrap();
    let (s, r) = (idx(&t, "s"), idx(&t, "r1"));
    assert_eq!(triple_count(&t, s, s, r).unwrap(), 6);
    assert_eq!(triple_count(&t, s, s, s).unwrap(), 0);
}

#[test]
fn trivial_triple_counts_once() {
    for name in builtin_names() {
        let t = builtin(name).unwrap();
        let one = idx(&t, t.classes[0].name.as_str());
        assert_eq!(triple_count(&t, one, one, one).unwrap(), 1, "{name}");
    }
}

#[test]
fn character_formula_matches_enumeration() {
    for name in ["S4", "Dih8", "Dih10", "Dih12", "A5"] {
        let t = builtin(name).unwrap();
        let e = elements(&t).unwrap();
        let k = t.classes.len();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    assert_eq!(
                        triple_count(&t, a, b, c).unwrap(),
                        brute_force_triple_count(&e, a, b, c),
                        "{name} ({a},{b},{c})"
                    );
                }
            }
        }
    }
}

#[test]
fn builtin_tables_verify() {
    for name in builtin_names() {
        builtin(name).unwrap().verify().unwrap();
    }
    assert_eq!(builtin("SL2_5").unwrap().classes.len(), 9);
}

#[test]
fn unknown_group_is_a_usage_error() {
    assert!(matches!(builtin("M11"), Err(Error::Usage(_))));
}

#[test]
fn fixed_dimensions_for_a5() {
    let t = builtin("A5").unwrap();
    let want = [("1", [1, 1, 1], 1), ("3a", [1, 1, 1], 0), ("3b", [1, 1, 1], 0), ("4", [2, 2, 0], 0), ("5", [3, 1, 1], 0)];
    for (lab, fixed, inv) in want {
        let chi = &t.chars.iter().find(|(l, _)| l == lab).unwrap().1;
        let r = fixed_dim_identity(&t, chi).unwrap();
        assert_eq!((r.fixed, r.invariants), (fixed, inv), "{lab}");
        assert!(r.holds, "{lab}");
    }
}

#[test]
fn fixed_dimension_rejects_non_characters() {
    let t = builtin("A5").unwrap();
    let bogus = vec![Q5::int(2), Q5::int(0), Q5::int(0), Q5::int(0), Q5::int(0)];
    assert!(fixed_dim_identity(&t, &bogus).is_err());
}

#[test]
fn parse_rejects_bad_class_sizes() {
    let text = include_str!("../data/groups/Dih6.grp").replace("SIZE 3", "SIZE 4");
    let t = FiniteGroupTable::parse(&text, "bad.grp");
    assert!(t.is_err() || t.unwrap().verify().is_err());
}

#[test]
fn golden_ratio_arithmetic() {
    let phi: Q5 = "1/2+1/2r5".parse().unwrap();
    assert_eq!(phi * phi, phi + Q5::int(1));
    assert_eq!((phi * phi.conj()).to_integer(), Some(-1));
    assert_eq!("-r5".parse::<Q5>().unwrap() * "r5".parse::<Q5>().unwrap(), Q5::int(-5));
}
