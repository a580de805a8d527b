use num_bigint::BigUint;

use crate::enumerate::{Branching, FamilySpec, WeightParam};
use crate::error::{Error, Result};
use crate::exact::{ExactValue, Polynomial, Rational, RationalFunction};
use crate::identities::hook_count;
use crate::trees::{LabeledTree, RootedTree, Skeleton};

use super::{check_membership, check_weight, ordered_site_probability};

/// Probability that the growth process ends at `tree`.
///
/// Each vertex contributes the probability of the site it arrived through,
/// read off from the vertices with smaller labels: its parent's child count
/// at that moment is the number of the parent's children with a smaller
/// label, and its depth is fixed.
pub fn labeling_probability(tree: &LabeledTree, family: &FamilySpec) -> Result<ExactValue> {
    check_membership(family, tree)?;
    let n = tree.len();
    match family {
        FamilySpec::Binary | FamilySpec::Slotted(_) => {
            let mut denominator = BigUint::from(1u8);
            for v in 1..n {
                for x in tree.ancestors(v) {
                    denominator *= tree.node(x).slots.expect("slotted vertex");
                }
            }
            Ok(ExactValue::Number(Rational::new(1, denominator)?))
        }
        FamilySpec::Ordered(m) => {
            if let (WeightParam::Value(m), true) = (m, n > 1) {
                // the last step is taken from the tree on labels 1..n-1
                let most = tree
                    .nodes()
                    .iter()
                    .map(|p| p.children.iter().filter(|&&c| c < n - 1).count())
                    .max()
                    .unwrap_or(0);
                check_weight(m, most)?;
            }
            let mut total = ExactValue::one();
            for v in 1..n {
                let p = tree.node(v).parent.expect("non-root");
                let earlier = tree.node(p).children.iter().filter(|&&c| c < v).count();
                let site = ordered_site_probability(m, earlier, tree.depth_of(v))?;
                total = total.mul(&site);
            }
            Ok(total)
        }
    }
}

/// The closed form the labeling probability takes on a shape `T`:
/// `prod 1/2^{h_v-1}` for binary trees, `prod C(m, c_v)/m^{h_v-1}` for
/// ordered trees and `prod 1/cbar_v^{h_v-1}` for subtrees of the infinite
/// tree.
pub fn shape_probability<T: RootedTree>(tree: &T, family: &FamilySpec) -> Result<ExactValue> {
    let sk = tree.skeleton();
    let hooks = sk.hooks();
    match family {
        FamilySpec::Binary => {
            let exp: usize = hooks.iter().map(|h| h - 1).sum();
            Ok(ExactValue::Number(Rational::new(1, BigUint::from(1u8) << exp)?))
        }
        FamilySpec::Slotted(oracle) => {
            let denominator: BigUint = sk
                .nodes()
                .iter()
                .zip(&hooks)
                .map(|(v, &h)| num_traits::pow(BigUint::from(oracle.children(&v.address)), h - 1))
                .product();
            Ok(ExactValue::Number(Rational::new(1, denominator)?))
        }
        FamilySpec::Ordered(m) => {
            let exp: usize = hooks.iter().map(|h| h - 1).sum();
            let weight = sk
                .child_counts()
                .into_iter()
                .fold(Polynomial::one(), |acc, c| &acc * &Polynomial::binomial(c));
            let f = RationalFunction::new(weight, Polynomial::monomial(Rational::one(), exp))?;
            Ok(match m {
                WeightParam::Symbolic => ExactValue::Function(f),
                WeightParam::Value(m) => ExactValue::Number(f.eval(m)?),
            })
        }
    }
}

/// Number of increasing labelings of all size-`n` trees in the family.
pub fn labeling_count(family: &FamilySpec, n: usize) -> Result<BigUint> {
    let mut total = BigUint::from(0u8);
    for sk in family.shapes(n)? {
        total += hook_count(&sk)?;
    }
    Ok(total)
}

/// Calls `visit` with the shape and every increasing labeling of it, for
/// every size-`n` tree in the family.
pub fn for_each_labeled_tree(
    family: &FamilySpec,
    n: usize,
    mut visit: impl FnMut(&Skeleton, LabeledTree),
) -> Result<()> {
    let kind = family.kind();
    for sk in family.shapes(n)? {
        let mut failure = None;
        sk.for_each_labeling(|labels| {
            if failure.is_some() {
                return;
            }
            match LabeledTree::from_skeleton(kind, &sk, labels) {
                Ok(t) => visit(&sk, t),
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(Error::Consistency(format!("enumerated labeling rejected: {e}")));
        }
    }
    Ok(())
}

impl RootedTree for Skeleton {
    fn skeleton(&self) -> Skeleton {
        self.clone()
    }

    fn len(&self) -> usize {
        Skeleton::len(self)
    }
}
