//! Exact evaluation of the hook length sums and of the labeling counts they
//! rest on.
//!
//! Every sum here is a sum over all trees of one size in a family of a
//! product over vertices. Each of Han's, the infinite-tree and the
//! complete-tree sums equals `1/n!` (respectively `1/(2n+1)!`). The ordered
//! sum is carried out symbolically in the weight variable `m` and must come
//! out as the constant `1/n!`.
//!
//! Yang's original weighting carries a second parameter `s` with weight
//! `s^{c_v}` per vertex. That only multiplies every term by `s^{n-1}`, so the
//! `s`-free form is the one evaluated here.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::enumerate::{enum_binary, enum_ordered, enum_tbar, Branching};
use crate::error::{Error, Result};
use crate::exact::{factorial, ExactValue, Polynomial, Rational, RationalFunction};
use crate::trees::{BinaryTree, RootedTree, Skeleton};

/// Largest tree [`brute_force_labelings`] accepts by default.
pub const DEFAULT_LABELING_BOUND: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityKind {
    Han,
    Yang,
    Tbar,
    Han2,
}

impl std::fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IdentityKind::Han => "han",
            IdentityKind::Yang => "yang",
            IdentityKind::Tbar => "tbar",
            IdentityKind::Han2 => "han2",
        })
    }
}

/// Outcome of checking one identity at one size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    pub n: usize,
    pub lhs: ExactValue,
    pub expected: Rational,
    pub holds: bool,
    pub term_count: u64,
}

impl IdentityReport {
    fn new(identity: IdentityKind, n: usize, lhs: ExactValue, expected: Rational, term_count: u64) -> Self {
        let holds = match &lhs {
            ExactValue::Number(r) => *r == expected,
            ExactValue::Function(f) => f.as_constant().as_ref() == Some(&expected),
        };
        IdentityReport {
            identity,
            n,
            lhs,
            expected,
            holds,
            term_count,
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Config("tree size must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `1 / n!`.
pub fn inverse_factorial(n: usize) -> Rational {
    Rational::from(factorial(n as u64)).recip().expect("n! > 0")
}

fn pow_u(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// Sums unit fractions `1/d`, grouping equal denominators first.
#[derive(Default)]
struct UnitFractionSum {
    counts: HashMap<BigUint, u64>,
    terms: u64,
}

impl UnitFractionSum {
    fn add(&mut self, denominator: BigUint) {
        *self.counts.entry(denominator).or_insert(0) += 1;
        self.terms += 1;
    }

    fn total(self) -> (Rational, u64) {
        let sum = self
            .counts
            .into_iter()
            .map(|(d, c)| Rational::new(c, d).expect("positive denominator"))
            .sum();
        (sum, self.terms)
    }
}

/// Denominator of `prod 1/(h_v * 2^{h_v - 1})`.
fn han_denominator(sk: &Skeleton) -> BigUint {
    let hooks = sk.hooks();
    let prod: BigUint = hooks.iter().map(|&h| BigUint::from(h)).product();
    let exp: usize = hooks.iter().map(|h| h - 1).sum();
    prod << exp
}

/// One term of Han's sum: `prod_v 1/(h_v 2^{h_v - 1})`.
pub fn han_term<T: RootedTree>(t: &T) -> Rational {
    Rational::new(1, han_denominator(&t.skeleton())).expect("positive")
}

/// `sum over binary trees T with n vertices of prod_v 1/(h_v 2^{h_v-1})`.
pub fn han_lhs(n: usize) -> Result<Rational> {
    Ok(han_sum(n)?.0)
}

fn han_sum(n: usize) -> Result<(Rational, u64)> {
    check_n(n)?;
    let mut acc = UnitFractionSum::default();
    for t in enum_binary(n)? {
        acc.add(han_denominator(&t.skeleton()));
    }
    Ok(acc.total())
}

pub fn han_report(n: usize) -> Result<IdentityReport> {
    let (lhs, terms) = han_sum(n)?;
    Ok(IdentityReport::new(IdentityKind::Han, n, lhs.into(), inverse_factorial(n), terms))
}

/// The weight `w(T) = prod_v C(m, c_v)` of an ordered tree, as a polynomial.
pub fn yang_weight<T: RootedTree>(t: &T) -> Polynomial {
    t.skeleton()
        .child_counts()
        .into_iter()
        .fold(Polynomial::one(), |acc, c| &acc * &Polynomial::binomial(c))
}

/// One term of the ordered sum:
/// `prod_v C(m, c_v) / ((prod_v h_v) * m^{sum_v (h_v - 1)})`, reduced.
pub fn yang_term<T: RootedTree>(t: &T) -> RationalFunction {
    let sk = t.skeleton();
    yang_term_from(&sk, &mut BinomialCache::default())
}

#[derive(Default)]
struct BinomialCache(Vec<Polynomial>);

impl BinomialCache {
    fn get(&mut self, k: usize) -> &Polynomial {
        while self.0.len() <= k {
            self.0.push(Polynomial::binomial(self.0.len()));
        }
        &self.0[k]
    }
}

fn yang_term_from(sk: &Skeleton, cache: &mut BinomialCache) -> RationalFunction {
    let hooks = sk.hooks();
    let weight = sk
        .child_counts()
        .into_iter()
        .fold(Polynomial::one(), |acc, c| &acc * cache.get(c));
    let prod: BigUint = hooks.iter().map(|&h| BigUint::from(h)).product();
    let exp: usize = hooks.iter().map(|h| h - 1).sum();
    let den = Polynomial::monomial(Rational::from(prod), exp);
    RationalFunction::new(weight, den).expect("nonzero denominator")
}

/// The ordered sum `sum_T w(T) prod_v 1/(h_v m^{h_v-1})` as a reduced
/// rational function of `m`, accumulated term by term.
pub fn yang_lhs(n: usize) -> Result<RationalFunction> {
    Ok(yang_sum(n)?.0)
}

fn yang_sum(n: usize) -> Result<(RationalFunction, u64)> {
    check_n(n)?;
    let mut cache = BinomialCache::default();
    let mut total = RationalFunction::zero();
    let mut terms = 0;
    for t in enum_ordered(n)? {
        total = &total + &yang_term_from(&t.skeleton(), &mut cache);
        terms += 1;
    }
    Ok((total, terms))
}

pub fn yang_report(n: usize) -> Result<IdentityReport> {
    let (lhs, terms) = yang_sum(n)?;
    Ok(IdentityReport::new(IdentityKind::Yang, n, lhs.into(), inverse_factorial(n), terms))
}

/// The ordered sum with `m = m0` substituted into every term before
/// summing, so no symbolic normalization is involved.
pub fn yang_lhs_at(n: usize, m0: &Rational) -> Result<Rational> {
    check_n(n)?;
    let mut cache = BinomialCache::default();
    let mut total = Rational::zero();
    for t in enum_ordered(n)? {
        let sk = t.skeleton();
        let hooks = sk.hooks();
        let mut weight = Rational::one();
        for c in sk.child_counts() {
            weight *= cache.get(c).eval(m0);
        }
        let prod: BigUint = hooks.iter().map(|&h| BigUint::from(h)).product();
        let exp: usize = hooks.iter().map(|h| h - 1).sum();
        let den = Rational::from(prod) * m0.pow(exp as i32)?;
        if den.is_zero() {
            return Err(Error::Pole(m0.to_string()));
        }
        total += weight.checked_div(&den)?;
    }
    Ok(total)
}

fn tbar_denominator<B: Branching>(sk: &Skeleton, oracle: &B) -> BigUint {
    let hooks = sk.hooks();
    sk.nodes()
        .iter()
        .zip(&hooks)
        .map(|(node, &h)| BigUint::from(h) * pow_u(oracle.children(&node.address), h - 1))
        .product()
}

/// One term of the infinite-tree sum: `prod_v 1/(h_v cbar_v^{h_v-1})`, with
/// `cbar_v` read from the oracle at the vertex's address.
pub fn tbar_term<T: RootedTree, B: Branching>(t: &T, oracle: &B) -> Rational {
    Rational::new(1, tbar_denominator(&t.skeleton(), oracle)).expect("positive")
}

/// Sum of [`tbar_term`] over all `n`-vertex subtrees containing the root.
pub fn tbar_lhs<B: Branching>(oracle: &B, n: usize) -> Result<Rational> {
    Ok(tbar_sum(oracle, n)?.0)
}

fn tbar_sum<B: Branching>(oracle: &B, n: usize) -> Result<(Rational, u64)> {
    check_n(n)?;
    let mut acc = UnitFractionSum::default();
    for t in enum_tbar(oracle, n)? {
        acc.add(tbar_denominator(&t.skeleton(), oracle));
    }
    Ok(acc.total())
}

pub fn tbar_report<B: Branching>(oracle: &B, n: usize) -> Result<IdentityReport> {
    let (lhs, terms) = tbar_sum(oracle, n)?;
    Ok(IdentityReport::new(IdentityKind::Tbar, n, lhs.into(), inverse_factorial(n), terms))
}

fn han2_denominator(sk: &Skeleton) -> BigUint {
    let hooks = sk.hooks();
    let prod: BigUint = hooks.iter().map(|&h| BigUint::from(2 * h + 1)).product();
    let exp: usize = hooks.iter().map(|h| 2 * h - 1).sum();
    prod << exp
}

/// One term of Han's second sum: `prod_v 1/((2h_v+1) 2^{2h_v-1})`.
pub fn han2_term<T: RootedTree>(t: &T) -> Rational {
    Rational::new(1, han2_denominator(&t.skeleton())).expect("positive")
}

pub fn han2_lhs(n: usize) -> Result<Rational> {
    Ok(han2_sum(n)?.0)
}

fn han2_sum(n: usize) -> Result<(Rational, u64)> {
    check_n(n)?;
    let mut acc = UnitFractionSum::default();
    for t in enum_binary(n)? {
        acc.add(han2_denominator(&t.skeleton()));
    }
    Ok(acc.total())
}

pub fn han2_report(n: usize) -> Result<IdentityReport> {
    let (lhs, terms) = han2_sum(n)?;
    let expected = inverse_factorial(2 * n + 1);
    Ok(IdentityReport::new(IdentityKind::Han2, n, lhs.into(), expected, terms))
}

/// Number of increasing labelings by the hook length formula,
/// `n! / prod_v h_v`.
pub fn hook_count<T: RootedTree>(t: &T) -> Result<BigUint> {
    let sk = t.skeleton();
    let prod: BigUint = sk.hooks().into_iter().map(BigUint::from).product();
    let (q, r) = factorial(sk.len() as u64).div_rem(&prod);
    if !r.is_zero() {
        return Err(Error::Consistency(format!(
            "product of hook lengths {prod} does not divide {}!",
            sk.len()
        )));
    }
    Ok(q)
}

/// Counts increasing labelings by exhaustive backtracking, refusing trees
/// larger than [`DEFAULT_LABELING_BOUND`].
pub fn brute_force_labelings<T: RootedTree>(t: &T) -> Result<u64> {
    brute_force_labelings_bounded(t, DEFAULT_LABELING_BOUND)
}

pub fn brute_force_labelings_bounded<T: RootedTree>(t: &T, bound: usize) -> Result<u64> {
    let sk = t.skeleton();
    if sk.len() > bound {
        return Err(Error::TooLarge {
            what: "tree size for brute-force labeling",
            size: sk.len() as u128,
            limit: bound as u128,
        });
    }
    let mut count = 0u64;
    sk.for_each_labeling(|_| count += 1);
    Ok(count)
}

/// Increasing labelings of the completion of `t`, via
/// `(2n+1)! / prod_{v in t} (2h_v + 1)`.
pub fn completion_count(t: &BinaryTree) -> Result<BigUint> {
    let sk = t.skeleton();
    let prod: BigUint = sk.hooks().into_iter().map(|h| BigUint::from(2 * h + 1)).product();
    let (q, r) = factorial(2 * sk.len() as u64 + 1).div_rem(&prod);
    if !r.is_zero() {
        return Err(Error::Consistency(format!(
            "{prod} does not divide (2*{}+1)!",
            sk.len()
        )));
    }
    Ok(q)
}

/// `sum over binary T of f^T prod_v 1/2^{h_v - 1}`, which is `n!` times
/// Han's sum and so should be exactly 1.
pub fn binary_labeling_mass(n: usize) -> Result<Rational> {
    check_n(n)?;
    let mut total = Rational::zero();
    for t in enum_binary(n)? {
        let sk = t.skeleton();
        let exp: usize = sk.hooks().iter().map(|h| h - 1).sum();
        total += Rational::new(hook_count(&t)?, BigUint::one() << exp)?;
    }
    Ok(total)
}

/// One binary tree's data for the complete-tree labeling census.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub tree: String,
    /// Hook lengths, sorted descending.
    pub hooks: Vec<usize>,
    pub completion_labelings: BigUintString,
    /// `prod_v 1/2^{2h_v - 1}`.
    pub weight: Rational,
    /// Sum of `completion_labelings * weight` over this and earlier rows.
    pub running_total: Rational,
}

/// A big integer serialized as its decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigUintString(pub BigUint);

impl Serialize for BigUintString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

/// For every binary tree with `n` vertices: the labelings of its completion
/// and the weight `prod 1/2^{2h_v-1}`. The final running total is 1 exactly
/// when Han's second identity holds at `n`.
pub fn completion_census(n: usize) -> Result<Vec<CensusRow>> {
    check_n(n)?;
    let mut rows = Vec::new();
    let mut total = Rational::zero();
    for t in enum_binary(n)? {
        let sk = t.skeleton();
        let mut hooks = sk.hooks();
        let exp: usize = hooks.iter().map(|h| 2 * h - 1).sum();
        let weight = Rational::new(1, BigUint::one() << exp)?;
        let f = completion_count(&t)?;
        total += Rational::from(f.clone()) * &weight;
        hooks.sort_unstable_by(|a, b| b.cmp(a));
        rows.push(CensusRow {
            tree: t.encode(),
            hooks,
            completion_labelings: BigUintString(f),
            weight,
            running_total: total.clone(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::BranchingOracle;
    use crate::trees::OrderedTree;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn han_small_sizes() {
        assert_eq!(han_lhs(1).unwrap(), q(1, 1));
        assert_eq!(han_lhs(2).unwrap(), q(1, 2));
        assert_eq!(han_lhs(3).unwrap(), q(1, 6));
        assert!(han_lhs(0).is_err());
    }

    #[test]
    fn han_terms_of_size_three() {
        let mut terms: Vec<Rational> = enum_binary(3).unwrap().map(|t| han_term(&t)).collect();
        terms.sort();
        assert_eq!(terms, vec![q(1, 48), q(1, 48), q(1, 48), q(1, 48), q(1, 12)]);
    }

    #[test]
    fn yang_small_sizes() {
        assert!(yang_lhs(1).unwrap().is_one());
        assert_eq!(yang_lhs(2).unwrap(), RationalFunction::constant(q(1, 2)));
        let r = yang_report(3).unwrap();
        assert!(r.holds);
        assert_eq!(r.term_count, 2);
    }

    #[test]
    fn yang_weights_of_size_four() {
        let m = Polynomial::var();
        let c2 = Polynomial::binomial(2);
        let c3 = Polynomial::binomial(3);
        let mut got: Vec<String> = enum_ordered(4)
            .unwrap()
            .map(|t| yang_weight(&t).to_string())
            .collect();
        got.sort();
        let mut want = vec![
            m.pow(3).to_string(),
            (&m * &c2).to_string(),
            (&m * &c2).to_string(),
            (&m * &c2).to_string(),
            c3.to_string(),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn yang_evaluated_at_two_is_han() {
        for n in 1..=6 {
            assert_eq!(yang_lhs_at(n, &q(2, 1)).unwrap(), han_lhs(n).unwrap());
        }
        assert!(matches!(yang_lhs_at(3, &Rational::zero()), Err(Error::Pole(_))));
    }

    #[test]
    fn tbar_examples() {
        for n in 1..=6 {
            assert_eq!(tbar_lhs(&BranchingOracle::Constant(1), n).unwrap(), inverse_factorial(n));
        }
        assert_eq!(tbar_lhs(&BranchingOracle::Constant(2), 3).unwrap(), q(1, 6));
        let fig = BranchingOracle::from_json(r#"{"": 2, "0": 3, "1": 1, "default": "const:2"}"#).unwrap();
        assert_eq!(tbar_lhs(&fig, 3).unwrap(), q(1, 6));
        let mut terms: Vec<Rational> = enum_tbar(&fig, 3).unwrap().map(|t| tbar_term(&t, &fig)).collect();
        terms.sort();
        assert_eq!(terms, vec![q(1, 72), q(1, 72), q(1, 72), q(1, 24), q(1, 12)]);
    }

    #[test]
    fn han2_small_sizes() {
        assert_eq!(han2_lhs(1).unwrap(), q(1, 6));
        assert_eq!(han2_lhs(2).unwrap(), q(1, 120));
        assert_eq!(han2_lhs(3).unwrap(), q(1, 5040));
        for t in enum_binary(2).unwrap() {
            assert_eq!(han2_term(&t), q(1, 240));
        }
    }

    #[test]
    fn hook_count_examples() {
        assert_eq!(hook_count(&OrderedTree::path(6)).unwrap(), BigUint::one());
        let cherry: BinaryTree = "((.,.),(.,.))".parse().unwrap();
        assert_eq!(hook_count(&cherry).unwrap(), BigUint::from(2u32));
        assert_eq!(hook_count(&BinaryTree::leaf().completion()).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn brute_force_examples_and_bound() {
        assert_eq!(brute_force_labelings(&OrderedTree::leaf()).unwrap(), 1);
        assert_eq!(brute_force_labelings(&OrderedTree::path(4)).unwrap(), 1);
        let star = OrderedTree::new(vec![OrderedTree::leaf(); 4]);
        assert_eq!(brute_force_labelings(&star).unwrap(), 24);
        assert!(matches!(
            brute_force_labelings(&OrderedTree::path(12)),
            Err(Error::TooLarge { .. })
        ));
        assert_eq!(brute_force_labelings_bounded(&OrderedTree::path(12), 12).unwrap(), 1);
    }

    #[test]
    fn completion_count_examples() {
        assert_eq!(completion_count(&BinaryTree::leaf()).unwrap(), BigUint::from(2u32));
        let two: BinaryTree = "((.,.),.)".parse().unwrap();
        assert_eq!(completion_count(&two).unwrap(), BigUint::from(8u32));
        assert_eq!(brute_force_labelings(&two.completion()).unwrap(), 8);
        let balanced: BinaryTree = "((.,.),(.,.))".parse().unwrap();
        assert_eq!(completion_count(&balanced).unwrap(), BigUint::from(80u32));
        assert_eq!(brute_force_labelings(&balanced.completion()).unwrap(), 80);
    }

    #[test]
    fn census_rows() {
        let one = completion_census(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].completion_labelings.0, BigUint::from(2u32));
        assert_eq!(one[0].weight, q(1, 2));
        assert!(one[0].running_total.is_one());
        let two = completion_census(2).unwrap();
        assert_eq!(two.len(), 2);
        for row in &two {
            assert_eq!(row.completion_labelings.0, BigUint::from(8u32));
            assert_eq!(row.weight, q(1, 16));
            assert_eq!(row.hooks, vec![2, 1]);
        }
        assert!(two[1].running_total.is_one());
    }

    #[test]
    fn report_json_shape() {
        let r = han_report(3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "identity": "han", "n": 3, "lhs": "1/6", "expected": "1/6",
                "holds": true, "term_count": 5
            })
        );
        let y = serde_json::to_value(yang_report(1).unwrap()).unwrap();
        assert_eq!(y["lhs"], "1");
    }
}
