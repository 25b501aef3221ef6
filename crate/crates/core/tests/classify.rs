mod common;

use common::*;
use monoweyl::exactnum::{int, Rational};
use monoweyl::{
    check_exhaustiveness, classify_second_order, find_chain_splittings, symmetric_family_rational,
    CaseLabel, Error, ExhaustivenessReport, ExponentSet, Mode,
};
use proptest::prelude::*;

fn normalized_set(r: &mut rand_chacha::ChaCha8Rng) -> ExponentSet {
    loop {
        let s = natural_set(r, 12, 3, 7);
        let n = monoweyl::normalize(&s).set;
        if n.len() >= 3 && monoweyl::exactnum::to_natural(n.max()).unwrap() <= 14 {
            return n;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn count_matches_nullspace(set in seeded(normalized_set)) {
        let fam = classify_second_order(&set).unwrap();
        prop_assert_eq!(fam.parameter_count, invariant_dimension(&set, 2));
        for t in &fam.basis {
            prop_assert!(t.order() <= 2);
            prop_assert!(preserves_monomials(t, &set));
        }
    }

    #[test]
    fn splittings_partition_the_set(set in seeded(normalized_set)) {
        for sp in find_chain_splittings(&set) {
            let mut all: Vec<Rational> = sp.chains.iter().flatten().cloned().collect();
            all.sort();
            prop_assert_eq!(all.as_slice(), set.exponents());
            prop_assert!(sp.chains.len() <= 2);
            for c in &sp.chains {
                for w in c.windows(2) {
                    prop_assert_eq!(&(&w[0] - &w[1]), &sp.step);
                }
                // a chain starts at a top: top + step is not in the set
                prop_assert!(!set.contains(&(&c[0] + &sp.step)));
            }
        }
    }
}

fn label(v: &[i64]) -> (CaseLabel, usize) {
    let f = classify_second_order(&set_of(v)).unwrap();
    (f.case_label, f.parameter_count)
}

#[test]
fn labelled_families() {
    use monoweyl::classify::{CaseASub, CaseBSub, GenericExtra};
    assert_eq!(label(&[0, 1, 3]), (CaseLabel::CaseA(CaseASub::B), 8));
    assert_eq!(label(&[0, 2, 3]), (CaseLabel::CaseA(CaseASub::C), 7));
    assert_eq!(label(&[0, 1, 4]), (CaseLabel::CaseA(CaseASub::A), 7));
    assert_eq!(label(&[0, 2, 5, 7]), (CaseLabel::CaseB(CaseBSub::None), 5));
    assert_eq!(label(&[0, 1, 3, 4]), (CaseLabel::CaseB(CaseBSub::A), 6));
    assert_eq!(label(&[0, 1, 2, 3, 4, 6]).1, 7);
    assert_eq!(label(&[0, 2, 3, 4, 5, 6]).1, 6);
    assert_eq!(label(&[0, 2, 4, 5, 7]), (CaseLabel::GenericTwoChain(GenericExtra::None), 4));
    assert_eq!(label(&[0, 1, 2, 3, 4, 5]), (CaseLabel::FullPolynomialSpace, 9));
}

/// Each labelled case, checked on more than one set against the nullspace
/// count.
#[test]
fn counts_on_several_instances() {
    let sets: &[&[i64]] = &[
        &[0, 1, 3],
        &[0, 2, 3],
        &[0, 1, 4],
        &[0, 1, 5],
        &[0, 3, 4],
        &[0, 2, 5, 7],
        &[0, 3, 7, 10],
        &[0, 1, 3, 4],
        &[0, 1, 2, 3, 4, 6],
        &[0, 1, 2, 3, 4, 5, 7],
        &[0, 2, 3, 4, 5, 6],
        &[0, 2, 3, 4, 5, 6, 7],
        &[0, 2, 4, 5, 7],
        &[0, 3, 6, 7, 10],
        &[0, 1, 2, 3],
        &[0, 1, 2, 3, 4, 5, 6, 7],
    ];
    for v in sets {
        let s = set_of(v);
        let f = classify_second_order(&s).unwrap();
        assert_eq!(f.parameter_count, invariant_dimension(&s, 2), "{s}");
    }
}

#[test]
fn preconditions() {
    assert!(matches!(classify_second_order(&set_of(&[0, 1])), Err(Error::TooSmall(2))));
    assert!(matches!(
        classify_second_order(&set_of(&[1, 2, 4])),
        Err(Error::NotNormalized(_))
    ));
    assert!(matches!(
        classify_second_order(&set_of(&[0, 2, 4])),
        Err(Error::NotNormalized(_))
    ));
}

#[test]
fn hundred_element_example() {
    let mut v: Vec<u32> = (0..=98).collect();
    v.push(100);
    let s = ExponentSet::natural(v).unwrap();
    let steps: Vec<Rational> = find_chain_splittings(&s).into_iter().map(|c| c.step).collect();
    assert_eq!(steps, vec![int(1), int(2)]);
}

#[test]
fn exhaustiveness_shapes() {
    assert!(matches!(
        check_exhaustiveness(&set_of(&[0, 1, 2, 3, 4, 6])),
        ExhaustivenessReport::CaseC { n: 6 }
    ));
    assert!(matches!(
        check_exhaustiveness(&set_of(&[0, 2, 3, 4, 5, 6])),
        ExhaustivenessReport::CaseD { n: 6 }
    ));
    assert!(matches!(
        check_exhaustiveness(&set_of(&[0, 2, 4, 5, 7])),
        ExhaustivenessReport::Unique { .. }
    ));
}

#[test]
fn symmetric_rational_family() {
    let s = set_of(&[0, 2, 4, 5, 7]).with_mode(Mode::Rational).unwrap();
    let split = find_chain_splittings(&s)
        .into_iter()
        .find(|c| c.step == int(2))
        .unwrap();
    let fam = symmetric_family_rational(&s, &split).unwrap();
    for t in &fam {
        assert!(preserves_monomials(t, &s));
    }
    // needs rational mode
    let n = set_of(&[0, 2, 4, 5, 7]);
    assert!(symmetric_family_rational(&n, &split).is_err());
}
