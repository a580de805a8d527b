use hooklab::enumerate::{enum_binary, enum_ordered, enum_tbar, BranchingOracle, FamilySpec};
use hooklab::exact::{Polynomial, Rational, RationalFunction};
use hooklab::identities::{
    completion_census, han2_report, han_lhs, han_report, tbar_report, yang_lhs, yang_report,
};
use hooklab::sampler::{grow, labeling_count, trajectory_rng};
use hooklab::stats::{chi_squared_gof, minimum_samples, run_census};
use hooklab::trees::{Address, BinaryTree, OrderedTree, RootedTree, SlotTree};
use hooklab::Error;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

#[test]
fn catalan_counts() {
    let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430];
    for n in 1..=8 {
        assert_eq!(enum_binary(n).unwrap().count(), catalan[n]);
        assert_eq!(enum_ordered(n).unwrap().count(), catalan[n - 1]);
    }
}

#[test]
fn encodings_by_hand() {
    let right_only = BinaryTree::new(None, Some(BinaryTree::leaf()));
    assert_eq!(right_only.encode(), "(.,(.,.))");
    let star = OrderedTree::new(vec![OrderedTree::leaf(); 3]);
    assert_eq!(star.encode(), "(()()())");
    let hooks = BinaryTree::decode("((.,.),(.,.))").unwrap().hook_lengths();
    assert_eq!(hooks[&Address::root()], 3);
}

#[test]
fn decoder_errors_carry_positions() {
    match BinaryTree::decode("((.,.)") {
        Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
        other => panic!("{other:?}"),
    }
    assert!(OrderedTree::decode("()x").is_err());
    assert!(SlotTree::decode("").is_err());
}

#[test]
fn figure_subtrees() {
    let fig = BranchingOracle::from_json(r#"{"": 2, "0": 3, "1": 1, "default": "const:2"}"#).unwrap();
    assert_eq!(enum_tbar(&fig, 3).unwrap().count(), 5);
    let r = tbar_report(&fig, 3).unwrap();
    assert!(r.holds);
    assert_eq!(r.term_count, 5);
}

#[test]
fn identity_reports() {
    for n in 1..=7 {
        assert!(han_report(n).unwrap().holds);
        assert!(yang_report(n).unwrap().holds);
        assert!(han2_report(n).unwrap().holds);
    }
    assert_eq!(han_lhs(4).unwrap(), q(1, 24));
    assert_eq!(yang_lhs(5).unwrap(), RationalFunction::constant(q(1, 120)));
    let zero = yang_lhs(5).unwrap() - RationalFunction::constant(q(1, 120));
    assert!(zero.is_zero());
    assert_eq!(Polynomial::binomial(2).eval(&q(5, 1)), q(10, 1));
}

#[test]
fn completion_census_rows() {
    let rows = completion_census(3).unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.last().unwrap().running_total.is_one());
    let json = serde_json::to_value(&rows[0]).unwrap();
    assert!(json["completion_labelings"].is_string());
}

#[test]
fn increasing_binary_trees_number_n_factorial() {
    for (n, f) in [(1u32, 1u32), (3, 6), (5, 120), (6, 720)] {
        assert_eq!(labeling_count(&FamilySpec::Binary, n as usize).unwrap(), f.into());
    }
}

#[test]
fn census_and_fit() {
    let census = run_census(&FamilySpec::Binary, 3, 20_000, 2).unwrap();
    assert_eq!(census.rows.len(), 6);
    assert_eq!(census.rows.iter().map(|r| r.observed).sum::<u64>(), 20_000);
    let total: Rational = census.rows.iter().map(|r| r.expected.clone()).sum();
    assert_eq!(total, Rational::from(20_000u64));
    let report = chi_squared_gof(&census, 0.001).unwrap();
    assert_eq!(report.dof, 5);
    assert!(report.pass, "{report:?}");
    assert!(minimum_samples(&FamilySpec::Binary, 3).unwrap() <= 20_000);
}

#[test]
fn seeds_are_independent_of_call_order() {
    let fam = FamilySpec::Binary;
    let forward: Vec<String> = (0..10).map(|i| grow(&fam, 5, &mut trajectory_rng(8, i)).unwrap().encode()).collect();
    let mut backward: Vec<String> = (0..10).rev().map(|i| grow(&fam, 5, &mut trajectory_rng(8, i)).unwrap().encode()).collect();
    backward.reverse();
    assert_eq!(forward, backward);
}
