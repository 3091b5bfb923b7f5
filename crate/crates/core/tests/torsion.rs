use num_rational::Ratio;
use reg235::rootsys::TypeLabel;
use reg235::torsion::{enumerate_235_triples, hom_count, torsion_classes, TripleList};
use reg235::Error;

fn label(s: &str) -> TypeLabel {
    s.parse().unwrap()
}

fn regular_types(list: &TripleList) -> Vec<String> {
    let mut v: Vec<String> = list.regular().map(|t| t.types_compact()).collect();
    v.sort();
    v
}

#[test]
fn type_a_regular_triples() {
    let expected: [(&str, &[&str]); 5] = [
        ("A1", &["(∅,∅,∅)", "(∅,∅,∅)"]),
        ("A2", &["(A1,∅,∅)", "(A1,∅,∅)"]),
        ("A3", &["(A1^2,A1,∅)"]),
        ("A4", &["(A2A1,A1^2,∅)"]),
        ("A5", &["(A2^2,A1^3,A1)"]),
    ];
    for (g, types) in expected {
        assert_eq!(regular_types(&enumerate_235_triples(&label(g)).unwrap()), types, "{g}");
    }
    for g in ["A6", "A7", "A8", "A9"] {
        assert_eq!(enumerate_235_triples(&label(g)).unwrap().regular().count(), 0, "{g}");
    }
}

#[test]
fn type_d_regular_triples() {
    let expected: [(&str, &[&str]); 4] = [
        ("D4", &["(A1^4,A1^3,A1)", "(A1^4,A1^3,A1)", "(A1^4,A2,A1)", "(A1^4,A2,A1)"]),
        ("D5", &["(A3A1^2,A2A1^2,A1^2)"]),
        ("D6", &["(A3^2,A3A1^2,A1^4)", "(A3^2,A3A1^2,A2A1)", "(A3^2,A3A1^2,A2A1)"]),
        ("D8", &["(D4^2,A4A3,A2^2A1^2)"]),
    ];
    for (g, types) in expected {
        assert_eq!(regular_types(&enumerate_235_triples(&label(g)).unwrap()), types, "{g}");
    }
    for g in ["D7", "D9", "D10", "D11"] {
        assert_eq!(enumerate_235_triples(&label(g)).unwrap().regular().count(), 0, "{g}");
    }
}

#[test]
fn neighbouring_d4_and_d8_types_are_not_regular() {
    // ν − Σν_n − r for D4 (A1^4,A1^3,∅), D4 (A1^4,A2,∅) and D8 (D4A3,A4A3,A2^2A1^2).
    let nu = |s: &str| label(s).nu() as i64;
    assert_eq!(12 - nu("A1^4") - nu("A1^3") - 4, 1);
    assert_eq!(12 - nu("A1^4") - nu("A2") - 4, 1);
    assert_eq!(56 - nu("D4xA3") - nu("A4xA3") - nu("A2^2xA1^2") - 8, 6);
}

#[test]
fn type_e_regular_triples() {
    let expected = [
        ("E6", vec!["(A5A1,A2^3,A2A1^2)"; 2]),
        ("E7", vec!["(A7,A5A2,A3A2A1)"; 2]),
        ("E8", vec!["(D8,A8,A4^2)"]),
    ];
    for (g, types) in expected {
        assert_eq!(regular_types(&enumerate_235_triples(&label(g)).unwrap()), types, "{g}");
    }
}

#[test]
fn hom_counts() {
    let cases = [
        ("A1", 1),
        ("A2", 1),
        ("A3", 2),
        ("A4", 1),
        ("A5", 1),
        ("D4", 1),
        ("D5", 2),
        ("D6", 1),
        ("D8", 1),
        ("E6", 1),
        ("E7", 1),
        ("E8", 1),
    ];
    for (g, n) in cases {
        let list = enumerate_235_triples(&label(g)).unwrap();
        for t in list.regular() {
            assert_eq!(hom_count(t).unwrap(), Ratio::from_integer(n), "{g}");
        }
    }
    let total = |g: &str| -> Ratio<i64> {
        enumerate_235_triples(&label(g))
            .unwrap()
            .regular()
            .map(|t| hom_count(t).unwrap())
            .sum()
    };
    assert_eq!(total("D4"), Ratio::from_integer(4));
    assert_eq!(total("D5"), Ratio::from_integer(2));
}

#[test]
fn hom_count_refuses_non_regular() {
    let list = enumerate_235_triples(&label("A3")).unwrap();
    let t = list.reports.iter().find(|t| !t.regular).unwrap();
    assert!(matches!(hom_count(t), Err(Error::Precondition(_))));
}

#[test]
fn iota_pairings() {
    let swapped = |g: &str| {
        let list = enumerate_235_triples(&label(g)).unwrap();
        list.regular()
            .map(|t| {
                let i = list.iota_image(t);
                assert!(i.regular);
                assert_eq!(&list.reports[i.iota_partner_index], t, "{g}");
                i != t
            })
            .collect::<Vec<bool>>()
    };
    assert_eq!(swapped("E6"), [true, true]);
    assert_eq!(swapped("E7"), [true, true]);
    assert_eq!(swapped("E8"), [false]);
    assert_eq!(swapped("D4"), [true; 4]);
    assert_eq!(swapped("A1"), [true, true]);
    assert_eq!(swapped("D6"), [false, true, true]);
}

#[test]
fn iota_fixes_triples_with_trivial_fifth_class() {
    let list = enumerate_235_triples(&label("D5")).unwrap();
    for t in &list.reports {
        if list.class(t, 2).is_identity() {
            assert_eq!(list.iota_image(t), t);
        }
    }
}

#[test]
fn torsion_class_examples() {
    let e8 = torsion_classes(&label("E8"), 5).unwrap();
    assert!(e8.iter().any(|c| c.centralizer == "A4^2"));
    let d4 = torsion_classes(&label("D4"), 3).unwrap();
    assert!(d4.iter().any(|c| c.centralizer == "A1^3"));
    assert!(d4.iter().any(|c| c.centralizer == "A2"));
}

#[test]
fn json_round_trip() {
    let list = enumerate_235_triples(&label("D4")).unwrap();
    let text = serde_json::to_string(&list).unwrap();
    let back: TripleList = serde_json::from_str(&text).unwrap();
    assert_eq!(back.reports, list.reports);
    assert_eq!(back.classes, list.classes);
}
