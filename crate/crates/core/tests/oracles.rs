mod common;

use common::*;

#[test]
fn reduction_matches_full_scans_small_groups() {
    for spec in corpus_up_to(120) {
        reduction_agrees(&spec).unwrap();
    }
}

#[test]
fn reduction_matches_full_scans_up_to_360() {
    for spec in corpus_up_to(360)
        .into_iter()
        .filter(|s| s.expected_order().unwrap() > 120)
    {
        reduction_agrees(&spec).unwrap();
    }
}

#[test]
fn symcomb_matches_brute_force_alternating() {
    for n in 3..=9 {
        symcomb_agrees(n).unwrap();
    }
}

#[test]
fn number_theory_matches_ground_truth() {
    number_theory_agrees().unwrap();
}

#[test]
fn ppd_exceptions() {
    assert_eq!(ppd_by_trial_division(2, 6), None);
    assert_eq!(ppd_by_trial_division(7, 2), None);
    assert_eq!(ppd_by_trial_division(2, 4), Some(5));
}

#[test]
fn brute_classes_of_s4() {
    let g = permcheck::atlas::symmetric(4);
    let bc = BruteClasses::new(&g);
    let mut sizes: Vec<usize> = bc.members.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
}

#[test]
fn full_scans_detect_violations() {
    let a5 = permcheck::atlas::alternating(5);
    assert!(!full_star_violations(&a5, &BruteClasses::new(&a5)).is_empty());
    let s3 = permcheck::atlas::symmetric(3);
    assert!(!full_commuting_violations(&s3, &BruteClasses::new(&s3)).is_empty());
    let s4 = permcheck::atlas::symmetric(4);
    assert!(full_star_violations(&s4, &BruteClasses::new(&s4)).is_empty());
}
