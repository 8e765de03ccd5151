use richrt::repetition::exponent;
use richrt::search::forbidden::{parse_power_notation, verify_forbidden_family};
use richrt::search::trees::{build_return_tree, zero_zero_image_is_excluded, LeafColor, TreeKind};
use richrt::word::parse_digits;
use richrt::Rational;

#[test]
fn power_notation() {
    assert_eq!(parse_power_notation("1(20102)^{2}1").unwrap(), parse_digits("120102201021").unwrap());
    let w = parse_power_notation("(021012)^{13/6}").unwrap();
    assert_eq!(w.len(), 13);
    assert_eq!(exponent(&w).unwrap(), Rational::new(13, 6).unwrap());
    assert!(parse_power_notation("(01)^{3/4}").is_err());
    assert!(parse_power_notation("(01").is_err());
}

#[test]
fn listed_factors_only() {
    assert!(verify_forbidden_family(&[0, 1, 2], 1).is_err());
    let checks = verify_forbidden_family(&parse_digits("212").unwrap(), 2).unwrap();
    assert_eq!(checks.len(), 9);
    assert!(checks.iter().all(|c| c.ok && c.max_exponent >= Rational::new(16, 7).unwrap()));
}

#[test]
fn trees_have_green_leaves() {
    assert!(zero_zero_image_is_excluded());
    for kind in TreeKind::ALL {
        let leaves = build_return_tree(kind).unwrap();
        assert!(leaves.iter().any(|l| l.color == LeafColor::Green), "{kind:?}");
        assert!(leaves.iter().all(|l| !l.reason.is_empty()));
    }
    assert_eq!("fig3".parse::<TreeKind>().unwrap(), TreeKind::Returns2InY);
}
