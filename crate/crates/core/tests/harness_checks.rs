use permcheck::atlas::{self, GroupSpec};
use permcheck::harness::{
    diagonal_identity_trials, find_normalizing_pair, replay, run_check, run_corpus_text,
    table_d_scan, CheckId, GroupContext, HarnessError, Outcome, RunConfig, VerdictReport,
};
use permcheck::structure::{generated, is_nilpotent, normal_closure, pair_nilpotent};
use permcheck::{GroupTable, Permutation};

fn ctx(spec: &str) -> GroupContext {
    GroupContext::new(&GroupSpec::parse(spec).unwrap(), &RunConfig::default()).unwrap()
}

fn run(spec: &str, check: CheckId) -> VerdictReport {
    run_check(&ctx(spec), check)
}

fn order_of(text: &str, degree: usize) -> u64 {
    Permutation::parse(text, degree).unwrap().order()
}

#[test]
fn star_holds_for_s4() {
    let r = run("S:4", CheckId::PropertyStar);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert!(r.witness.is_none());
}

#[test]
fn star_witness_in_a5_has_orders_10_and_60() {
    let r = run("A:5", CheckId::PropertyStar);
    assert_eq!(r.outcome, Outcome::WitnessFound);
    let hit = r.witness_items().iter().find(|w| {
        order_of(&w.elements["x"], 5) == 5
            && w.orders["<x,y_solvable>"] == 10
            && w.orders["<x,y_nonsolvable>"] == 60
    });
    assert!(hit.is_some(), "{:#?}", r.witness);
}

#[test]
fn star_witness_in_psl2_8_has_an_order_9_element() {
    let r = run("PSL2:8", CheckId::PropertyStar);
    assert_eq!(r.outcome, Outcome::WitnessFound);
    let hit = r
        .witness_items()
        .iter()
        .find(|w| order_of(&w.elements["x"], 9) == 9)
        .expect("order-9 witness");
    assert_eq!(hit.orders["<x,y_nonsolvable>"], 504);
}

#[test]
fn thm_solvable_is_consistent_on_examples() {
    for spec in ["S:4", "A:5", "M:11"] {
        let r = run(spec, CheckId::SolvableCriterion);
        assert_eq!(r.outcome, Outcome::Consistent, "{spec}");
    }
}

#[test]
fn nilpotent_condition_examples() {
    let r = run("C:12", CheckId::NilpotentCondition);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(
        run("C:12", CheckId::NilpotentCriterion).outcome,
        Outcome::Consistent
    );

    let r = run("S:3", CheckId::NilpotentCondition);
    assert_eq!(r.outcome, Outcome::WitnessFound);
    let w = r
        .witness_items()
        .iter()
        .find(|w| order_of(&w.elements["x"], 3) == 3)
        .expect("3-cycle witness");
    assert_eq!(order_of(&w.elements["y"], 3), 2);
    assert_eq!(
        run("S:3", CheckId::NilpotentCriterion).outcome,
        Outcome::Consistent
    );

    let r = run("A:4", CheckId::NilpotentCondition);
    assert!(r
        .witness_items()
        .iter()
        .any(|w| { order_of(&w.elements["x"], 4) == 3 && order_of(&w.elements["y"], 4) == 2 }));
}

#[test]
fn normalizing_pairs() {
    let r = run("A:5", CheckId::NormalizingPair);
    assert_eq!(r.outcome, Outcome::WitnessFound);
    let w = &r.witness_items()[0];
    assert_eq!(w.orders["|x|"], 5);
    assert_eq!(w.orders["|C(x)|"], 5);
    assert_eq!(w.orders["|y|"], 2);

    let r = run("M:11", CheckId::NormalizingPair);
    assert_eq!(r.outcome, Outcome::WitnessFound);
    assert!(r.facts.contains_key("limitation"));

    assert!(matches!(
        run("S:4", CheckId::NormalizingPair).outcome,
        Outcome::Skipped(_)
    ));
}

#[test]
fn normalizing_pair_in_m12_uses_an_order_4_normalizer() {
    let t = GroupTable::new(&atlas::mathieu(12, false).unwrap(), 1_000_000).unwrap();
    let pair = find_normalizing_pair(&t, false, &|xo, yo, e| xo == 5 && yo == 4 && e == 2)
        .expect("order-5/order-4 pair");
    assert_eq!(pair.x.conjugate_by(&pair.y), pair.x.pow(2));
    let centralizer = t.centralizer(t.index_of(&pair.x).unwrap());
    assert!(!centralizer.has(&pair.y));
}

#[test]
fn normalizing_pair_over_cap_uses_symcomb() {
    for spec in ["A:10", "A:24"] {
        let c = ctx(spec);
        assert!(c.table().is_none());
        let r = run_check(&c, CheckId::NormalizingPair);
        assert_eq!(r.outcome, Outcome::WitnessFound, "{spec}");
        assert_eq!(replay(&r, &c).unwrap(), 1);
    }
}

#[test]
fn real_centralizer_scan() {
    let r = run("M:12", CheckId::RealCentralizers);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.fact_bool("real_odd_centralizer_nontrivial"), Some(false));

    let r = run("M:11", CheckId::RealCentralizers);
    assert_eq!(r.outcome, Outcome::WitnessFound);
    assert!(r
        .witness_items()
        .iter()
        .any(|w| w.orders["|x|"] == 5 && w.orders["|C(x)|"] == 5));

    let r = run("A:24", CheckId::RealCentralizers);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.fact_bool("real_odd_centralizer_prime_power"), Some(false));
}

#[test]
fn direct_factor_examples() {
    let r = run("C:6", CheckId::DirectFactor);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.facts["sylow2_order"], 2);

    let r = run("S:3", CheckId::DirectFactor);
    assert_eq!(r.outcome, Outcome::Skipped("hypothesis fails".into()));
    assert!(r.witness.is_some());

    let r = run("prod(Q:8,C:3)", CheckId::DirectFactor);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.facts["sylow2_order"], 8);
    assert_eq!(r.facts["odd_part_order"], 3);
}

#[test]
fn radical_membership_examples() {
    let r = run("F:5:4", CheckId::RadicalMembership);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.facts["radical_order"], 20);
    assert!(r
        .witness_items()
        .iter()
        .all(|w| w.note.contains("x in R(G)")));

    let r = run("A:5", CheckId::RadicalMembership);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert!(r
        .witness_items()
        .iter()
        .all(|w| w.note == "hypothesis fails"));

    let r = run("prod(S:5,C:5)", CheckId::RadicalMembership);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.facts["radical_order"], 5);
}

#[test]
fn graph_equality_examples() {
    let r = run("D:10", CheckId::GraphEqualities);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.fact_bool("expanded_scc_eq_solvable_graph"), Some(true));
    assert_eq!(r.fact_bool("expanded_scc_eq_expanded_ncc"), Some(false));

    let r = run("C:8", CheckId::GraphEqualities);
    assert_eq!(r.fact_bool("expanded_scc_eq_solvable_graph"), Some(true));
    assert_eq!(r.fact_bool("expanded_scc_eq_expanded_ncc"), Some(true));

    let r = run("PSL2:7", CheckId::GraphEqualities);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.fact_bool("expanded_scc_eq_solvable_graph"), Some(false));
}

#[test]
fn minimal_non_nilpotent_examples() {
    let r = run("S:3", CheckId::MinimalNonNilpotent);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.fact_bool("minimal_non_nilpotent"), Some(true));
    assert_eq!(r.fact_bool("pair_condition"), Some(true));

    let r = run("S:4", CheckId::MinimalNonNilpotent);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.fact_bool("minimal_non_nilpotent"), Some(false));
    assert_eq!(r.fact_bool("pair_condition"), Some(false));

    assert!(matches!(
        run("Q:8", CheckId::MinimalNonNilpotent).outcome,
        Outcome::Skipped(_)
    ));
}

#[test]
fn radical_quotient_examples() {
    let r = run("A:5", CheckId::RadicalQuotient);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.facts["quotient_order"], 60);
    assert_eq!(r.outcome, run("PSL2:13", CheckId::RadicalQuotient).outcome);
    assert!(matches!(
        run("S:4", CheckId::RadicalQuotient).outcome,
        Outcome::Skipped(_)
    ));
}

#[test]
fn radical_quotient_by_nontrivial_radical() {
    // A5 x C2 is nonsolvable with radical C2; the hypothesis is decided by the scan
    let r = run("prod(A:5,C:2)", CheckId::RadicalQuotient);
    assert!(!r.outcome.is_inconsistent());
    if r.outcome == Outcome::Consistent {
        assert_eq!(r.facts["quotient_order"], 60);
    }
}

#[test]
fn baer_suzuki_examples_in_s4() {
    let s4 = atlas::symmetric(4);
    let v4_gen = Permutation::parse("(1,2)(3,4)", 4).unwrap();
    let closure = normal_closure(&s4, std::slice::from_ref(&v4_gen)).unwrap();
    assert_eq!(closure.order(), 4);
    assert!(is_nilpotent(&closure));
    let elements = s4.enumerate(100).unwrap();
    assert!(elements
        .iter()
        .all(|g| pair_nilpotent(&v4_gen, &v4_gen.conjugate_by(g))));

    let t = Permutation::parse("(1,2)", 4).unwrap();
    assert!(!is_nilpotent(
        &normal_closure(&s4, std::slice::from_ref(&t)).unwrap()
    ));
    let bad = elements
        .iter()
        .map(|g| t.conjugate_by(g))
        .find(|y| !pair_nilpotent(&t, y))
        .unwrap();
    assert_eq!(generated(4, &[t, bad]).order(), 6);

    assert_eq!(run("S:4", CheckId::BaerSuzuki).outcome, Outcome::Consistent);
}

#[test]
fn p_core_membership_in_f73() {
    let r = run("F:7:3", CheckId::PCoreMembership);
    assert_eq!(r.outcome, Outcome::Consistent);
    for w in r.witness_items() {
        if w.orders["p"] == 7 {
            assert_eq!(w.orders["|O_p(G)|"], 7);
        }
    }
}

#[test]
fn table_d_row_for_m11_and_a5_control() {
    let r = run("M:11", CheckId::TableDM11);
    assert_eq!(r.outcome, Outcome::Consistent);
    assert_eq!(r.facts["solvable_pairs"], 0);

    let t = GroupTable::new(&atlas::alternating(5), 1000).unwrap();
    let scan = table_d_scan(&t, 2, 5);
    assert!(scan.solvable_pairs > 0);
    assert!(scan.subgroup_orders.contains(&10));
    let (x, y) = scan.solvable_example.unwrap();
    assert_eq!(generated(5, &[x, y]).order(), 10);

    assert!(matches!(
        run("A:5", CheckId::TableDM11).outcome,
        Outcome::Skipped(_)
    ));
}

#[test]
fn diagonal_identity_holds() {
    assert_eq!(diagonal_identity_trials(&atlas::symmetric(3), 2, 10, 1), 0);
    assert_eq!(
        diagonal_identity_trials(&atlas::alternating(4), 3, 100, 2),
        0
    );
    assert_eq!(
        run("S:3", CheckId::DiagonalIdentity).outcome,
        Outcome::Consistent
    );
}

#[test]
fn witnesses_replay_from_scratch() {
    for spec in [
        "S:3", "A:4", "D:5", "A:5", "S:5", "PSL2:7", "PSL2:8", "F:7:3",
    ] {
        let c = ctx(spec);
        for check in [
            CheckId::PropertyStar,
            CheckId::NilpotentCondition,
            CheckId::NormalizingPair,
            CheckId::DirectFactor,
        ] {
            let r = run_check(&c, check);
            let replayed = replay(&r, &c).unwrap_or_else(|e| panic!("{spec} {check}: {e}"));
            assert_eq!(replayed, r.witness_items().len());
        }
    }
}

#[test]
fn tampered_witness_does_not_replay() {
    let c = ctx("A:5");
    let mut r = run_check(&c, CheckId::PropertyStar);
    let item = &mut r.witness.as_mut().unwrap()[0];
    item.orders.insert("<x,y_solvable>".into(), 13);
    assert!(matches!(replay(&r, &c), Err(HarnessError::Replay(_))));
}

#[test]
fn corpus_runs_and_skips_out_of_cap_groups() {
    let reports = run_corpus_text("A:5\nM:23\n", "thm-solvable", &RunConfig::default()).unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0].outcome, Outcome::Consistent);
    assert!(matches!(reports[1].outcome, Outcome::Skipped(_)));
}

#[test]
fn over_cap_groups_skip_pair_scans() {
    let config = RunConfig {
        cap: 100,
        ..RunConfig::default()
    };
    let reports = run_corpus_text("PSL2:7", "property-star", &config).unwrap();
    assert!(matches!(&reports[0].outcome, Outcome::Skipped(r) if r.contains("cap")));
}
