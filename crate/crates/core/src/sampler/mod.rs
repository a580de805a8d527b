//! The random growth process on increasing labelings.
//!
//! Start from the root labeled 1. While the tree has fewer than `n`
//! vertices, list every leaf that could be added, pick one with the
//! family's probability, and give it the next label:
//!
//! * binary trees: an empty slot at depth `d` has probability `1/2^d`;
//! * ordered trees: inserting at any of the `c_p + 1` positions under a
//!   parent with `c_p` children has probability `(m - c_p)/((c_p + 1) m^d)`;
//! * subtrees of a fixed infinite tree: a missing child of `p` has
//!   probability `prod 1/cbar_x` over `p` and its ancestors.
//!
//! In each case the probabilities sum to 1 and the final labeling `L` of a
//! shape `T` has probability depending on `T` alone.

mod draw;
mod probability;

use std::fmt;

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use draw::pick;
pub use probability::{for_each_labeled_tree, labeling_count, labeling_probability, shape_probability};

use crate::enumerate::{Branching, FamilySpec, WeightParam};
use crate::error::{Error, Result};
use crate::exact::{ExactValue, Polynomial, Rational, RationalFunction};
use crate::trees::{Address, LabeledTree};

/// A place where the next leaf may be attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddableSite {
    pub parent: Address,
    pub parent_label: usize,
    /// Binary and infinite-tree families: the empty child slot. Ordered
    /// family: the insertion position among the parent's current children.
    pub slot: usize,
    /// Depth the new vertex would have.
    pub depth: usize,
}

/// A labeled tree in the middle of the growth process.
#[derive(Clone, Debug)]
pub struct GrowthState<'a> {
    family: &'a FamilySpec,
    tree: LabeledTree,
}

impl<'a> GrowthState<'a> {
    /// The single root labeled 1.
    pub fn new(family: &'a FamilySpec) -> Result<Self> {
        let tree = LabeledTree::root(family.kind(), family.slots_at(&Address::root()))?;
        Ok(GrowthState { family, tree })
    }

    /// Resumes the process from an arbitrary increasing labeling of a tree
    /// in the family.
    pub fn from_tree(family: &'a FamilySpec, tree: LabeledTree) -> Result<Self> {
        check_membership(family, &tree)?;
        Ok(GrowthState { family, tree })
    }

    pub fn family(&self) -> &FamilySpec {
        self.family
    }

    pub fn tree(&self) -> &LabeledTree {
        &self.tree
    }

    pub fn into_tree(self) -> LabeledTree {
        self.tree
    }

    /// Every legal site with its exact probability, ordered by parent
    /// address and then slot.
    pub fn sites(&self) -> Result<Vec<(AddableSite, ExactValue)>> {
        let tree = &self.tree;
        if let FamilySpec::Ordered(WeightParam::Value(m)) = self.family {
            let most = tree.nodes().iter().map(|v| v.children.len()).max().unwrap_or(0);
            check_weight(m, most)?;
        }
        // preorder visits parents in address order
        let mut out = Vec::new();
        for v in tree.preorder() {
            let node = tree.node(v);
            let address = tree.address(v);
            let depth = address.depth() + 1;
            let site = |slot| AddableSite {
                parent: address.clone(),
                parent_label: v + 1,
                slot,
                depth,
            };
            match self.family {
                FamilySpec::Binary | FamilySpec::Slotted(_) => {
                    let arity = node.slots.expect("slotted vertex");
                    let p = path_weight(tree, v);
                    let mut taken = node.children.iter().map(|&c| tree.node(c).slot).peekable();
                    for slot in 0..arity {
                        if taken.peek() == Some(&slot) {
                            taken.next();
                        } else {
                            out.push((site(slot), ExactValue::Number(p.clone())));
                        }
                    }
                }
                FamilySpec::Ordered(m) => {
                    let c = node.children.len();
                    let p = ordered_site_probability(m, c, depth)?;
                    for slot in 0..=c {
                        out.push((site(slot), p.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Attaches the next label at `site`.
    pub fn attach(&mut self, site: &AddableSite) -> Result<()> {
        let parent = site.parent_label.checked_sub(1).ok_or_else(|| {
            Error::InvalidLabeling("site parent label must be positive".into())
        })?;
        let slots = self.family.slots_at(&site.parent.child(site.slot));
        self.tree.attach(parent, site.slot, slots)?;
        Ok(())
    }
}

/// `prod 1/cbar_x` over `v` and its ancestors; with every `cbar = 2` this
/// is the binary `1/2^d`.
fn path_weight(tree: &LabeledTree, v: usize) -> Rational {
    let denominator: BigUint = std::iter::once(v)
        .chain(tree.ancestors(v))
        .map(|x| BigUint::from(tree.node(x).slots.expect("slotted vertex")))
        .product();
    Rational::new(1, denominator).expect("positive")
}

fn check_weight(m: &Rational, children: usize) -> Result<()> {
    if *m < Rational::from(children + 1) {
        return Err(Error::NegativeProbability {
            m: m.to_string(),
            children,
        });
    }
    Ok(())
}

/// `(m - c)/((c + 1) m^d)`.
fn ordered_site_probability(m: &WeightParam, c: usize, d: usize) -> Result<ExactValue> {
    Ok(match m {
        WeightParam::Symbolic => {
            let num = Polynomial::new(vec![-Rational::from(c), Rational::one()]);
            let den = Polynomial::monomial(Rational::from(c + 1), d);
            ExactValue::Function(RationalFunction::new(num, den)?)
        }
        WeightParam::Value(m) => {
            let den = Rational::from(c + 1) * m.pow(d as i32)?;
            ExactValue::Number((m - &Rational::from(c)).checked_div(&den)?)
        }
    })
}

fn check_membership(family: &FamilySpec, tree: &LabeledTree) -> Result<()> {
    if tree.kind() != family.kind() {
        return Err(Error::InvalidLabeling(format!(
            "a {:?} tree is not in the {family} family",
            tree.kind()
        )));
    }
    if let FamilySpec::Slotted(oracle) = family {
        for v in 0..tree.len() {
            let a = tree.address(v);
            let want = oracle.children(&a);
            if tree.node(v).slots != Some(want) {
                return Err(Error::InvalidLabeling(format!(
                    "vertex {} at {a:?} has {:?} child slots but the oracle gives {want}",
                    v + 1,
                    tree.node(v).slots
                )));
            }
        }
    }
    Ok(())
}

/// The sites of `state` with their probabilities.
pub fn addable_sites(state: &GrowthState) -> Result<Vec<(AddableSite, ExactValue)>> {
    state.sites()
}

/// Whether the site probabilities of `state` sum to exactly 1 (the
/// constant 1 when `m` is symbolic).
pub fn lemma_check(state: &GrowthState) -> Result<bool> {
    let total = state
        .sites()?
        .into_iter()
        .fold(ExactValue::zero(), |acc, (_, p)| acc.add(&p));
    Ok(total.is_one())
}

/// Rejects families that cannot be sampled to size `n`: a symbolic `m`, or
/// a concrete `m` below `n - 1`, which would give some site a negative
/// probability.
pub fn check_growable(family: &FamilySpec, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Config("tree size must be at least 1".into()));
    }
    match family {
        FamilySpec::Ordered(WeightParam::Symbolic) => {
            Err(Error::Config("sampling needs a concrete value of m".into()))
        }
        FamilySpec::Ordered(WeightParam::Value(m)) if *m < Rational::from(n - 1) => {
            Err(Error::Config(format!("m = {m} is below n - 1 = {}", n - 1)))
        }
        _ => Ok(()),
    }
}

/// The random stream for trajectory `index` under master seed `seed`.
/// Streams are independent of how trajectories are spread over threads.
pub fn trajectory_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One step of a traced growth run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthStep {
    pub label: usize,
    pub site: AddableSite,
    pub probability: Rational,
}

impl fmt::Display for GrowthStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "label={} parent={} slot={} depth={} p={}",
            self.label, self.site.parent_label, self.site.slot, self.site.depth, self.probability
        )
    }
}

/// Runs the growth process to `n` vertices.
pub fn grow<R: RngCore>(family: &FamilySpec, n: usize, rng: &mut R) -> Result<LabeledTree> {
    run(family, n, rng, None)
}

/// Like [`grow`], also returning the site and probability of every step.
pub fn grow_traced<R: RngCore>(
    family: &FamilySpec,
    n: usize,
    rng: &mut R,
) -> Result<(LabeledTree, Vec<GrowthStep>)> {
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    let tree = run(family, n, rng, Some(&mut steps))?;
    Ok((tree, steps))
}

fn run<R: RngCore>(
    family: &FamilySpec,
    n: usize,
    rng: &mut R,
    mut trace: Option<&mut Vec<GrowthStep>>,
) -> Result<LabeledTree> {
    check_growable(family, n)?;
    let mut state = GrowthState::new(family)?;
    while state.tree().len() < n {
        let sites = state.sites()?;
        let probs: Vec<Rational> = sites
            .iter()
            .map(|(_, p)| p.as_number().cloned().expect("concrete probabilities"))
            .collect();
        let i = pick(&probs, rng.next_u64())?;
        let (site, p) = sites.into_iter().nth(i).expect("index in range");
        state.attach(&site)?;
        if let Some(t) = trace.as_deref_mut() {
            t.push(GrowthStep {
                label: state.tree().len(),
                site,
                probability: p.as_number().cloned().expect("concrete"),
            });
        }
    }
    Ok(state.into_tree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::BranchingOracle;
    use crate::trees::TreeKind;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn numbers(sites: &[(AddableSite, ExactValue)]) -> Vec<Rational> {
        sites.iter().map(|(_, p)| p.as_number().unwrap().clone()).collect()
    }

    fn state<'a>(family: &'a FamilySpec, encoded: &str) -> GrowthState<'a> {
        let tree = LabeledTree::decode(family.kind(), encoded).unwrap();
        GrowthState::from_tree(family, tree).unwrap()
    }

    #[test]
    fn binary_figure_sites() {
        // root a, left child b, b's right child e
        let fam = FamilySpec::Binary;
        let s = state(&fam, "(:1(:2.,(:3.,.)),.)");
        let sites = s.sites().unwrap();
        assert_eq!(numbers(&sites), vec![q(1, 2), q(1, 4), q(1, 8), q(1, 8)]);
        let places: Vec<(String, usize)> = sites.iter().map(|(s, _)| (s.parent.to_string(), s.slot)).collect();
        assert_eq!(
            places,
            vec![("".into(), 1), ("0".into(), 0), ("0/1".into(), 0), ("0/1".into(), 1)]
        );
        assert!(lemma_check(&s).unwrap());
    }

    #[test]
    fn ordered_figure_sites() {
        // root with children c, e; e has child i
        let fam = FamilySpec::Ordered(WeightParam::Symbolic);
        let s = state(&fam, "(:1(:2)(:3(:4)))");
        let m = |num: &[i64], den: &[i64]| {
            let p = |cs: &[i64]| Polynomial::new(cs.iter().map(|&c| Rational::from(c)).collect());
            RationalFunction::new(p(num), p(den)).unwrap()
        };
        let got: Vec<RationalFunction> = s.sites().unwrap().into_iter().map(|(_, p)| p.to_function()).collect();
        let third = m(&[-2, 1], &[0, 3]);
        let inv_m = m(&[1], &[0, 1]);
        let half = m(&[-1, 1], &[0, 0, 2]);
        let inv_m2 = m(&[1], &[0, 0, 1]);
        assert_eq!(
            got,
            vec![third.clone(), third.clone(), third, inv_m, half.clone(), half, inv_m2]
        );
        assert!(lemma_check(&s).unwrap());
    }

    #[test]
    fn tbar_figure_sites() {
        let fam = FamilySpec::Slotted(
            BranchingOracle::from_json(r#"{"": 2, "0": 3, "1": 1, "default": "const:2"}"#).unwrap(),
        );
        let s = state(&fam, "(:1(:2.,.,.),(:3.))");
        let mut got = numbers(&s.sites().unwrap());
        got.sort();
        assert_eq!(got, vec![q(1, 6), q(1, 6), q(1, 6), q(1, 2)]);
        assert!(lemma_check(&s).unwrap());
    }

    #[test]
    fn root_state_sums_to_one() {
        for fam in [
            FamilySpec::Binary,
            FamilySpec::Ordered(WeightParam::Symbolic),
            FamilySpec::Ordered(WeightParam::Value(q(7, 2))),
            FamilySpec::Slotted(BranchingOracle::Constant(5)),
        ] {
            assert!(lemma_check(&GrowthState::new(&fam).unwrap()).unwrap(), "{fam}");
        }
    }

    #[test]
    fn small_weight_is_rejected() {
        let fam = FamilySpec::Ordered(WeightParam::Value(q(2, 1)));
        let s = state(&fam, "(:1(:2)(:3))");
        assert_eq!(
            s.sites(),
            Err(Error::NegativeProbability { m: "2".into(), children: 2 })
        );
        assert!(matches!(check_growable(&fam, 4), Err(Error::Config(_))));
        assert!(check_growable(&fam, 3).is_ok());
        let symbolic = FamilySpec::Ordered(WeightParam::Symbolic);
        assert!(matches!(grow(&symbolic, 3, &mut trajectory_rng(0, 0)), Err(Error::Config(_))));
    }

    #[test]
    fn mismatched_tree_is_rejected() {
        let fam = FamilySpec::Slotted(BranchingOracle::Constant(3));
        let t = LabeledTree::decode(TreeKind::Slotted, "(:1.,.)").unwrap();
        assert!(GrowthState::from_tree(&fam, t).is_err());
        let t = LabeledTree::decode(TreeKind::Binary, "(:1.,.)").unwrap();
        assert!(GrowthState::from_tree(&fam, t).is_err());
    }

    #[test]
    fn single_vertex_growth() {
        for fam in [
            FamilySpec::Binary,
            FamilySpec::Ordered(WeightParam::Value(q(1, 1))),
            FamilySpec::Slotted(BranchingOracle::Constant(3)),
        ] {
            let t = grow(&fam, 1, &mut trajectory_rng(3, 0)).unwrap();
            assert_eq!(t.len(), 1);
        }
        assert!(grow(&FamilySpec::Binary, 0, &mut trajectory_rng(3, 0)).is_err());
    }

    #[test]
    fn path_oracle_is_deterministic() {
        let fam = FamilySpec::Slotted(BranchingOracle::Constant(1));
        for seed in 0..5 {
            let t = grow(&fam, 4, &mut trajectory_rng(seed, seed)).unwrap();
            assert_eq!(t.encode(), "(:1(:2(:3(:4.))))");
        }
    }

    #[test]
    fn seeds_reproduce() {
        let fam = FamilySpec::Ordered(WeightParam::Value(q(6, 1)));
        let a: Vec<String> = (0..20).map(|i| grow(&fam, 6, &mut trajectory_rng(11, i)).unwrap().encode()).collect();
        let b: Vec<String> = (0..20).map(|i| grow(&fam, 6, &mut trajectory_rng(11, i)).unwrap().encode()).collect();
        assert_eq!(a, b);
        let c: Vec<String> = (0..20).map(|i| grow(&fam, 6, &mut trajectory_rng(12, i)).unwrap().encode()).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn trace_matches_the_tree() {
        let fam = FamilySpec::Binary;
        let (tree, steps) = grow_traced(&fam, 5, &mut trajectory_rng(4, 2)).unwrap();
        assert_eq!(steps.len(), 4);
        let mut replay = GrowthState::new(&fam).unwrap();
        let mut prob = Rational::one();
        for s in &steps {
            replay.attach(&s.site).unwrap();
            prob *= &s.probability;
        }
        assert_eq!(replay.tree(), &tree);
        assert_eq!(ExactValue::Number(prob), labeling_probability(&tree, &fam).unwrap());
        assert!(steps[0].to_string().starts_with("label=2 parent=1 slot="));
    }

    #[test]
    fn two_vertex_binary_is_a_fair_coin() {
        let fam = FamilySpec::Binary;
        let left = (0..2000)
            .filter(|&i| grow(&fam, 2, &mut trajectory_rng(5, i)).unwrap().encode() == "(:1(:2.,.),.)")
            .count();
        assert!((900..1100).contains(&left), "{left}");
    }
}
