//! Exhaustive, streaming generators for the three tree families.
//!
//! Every generator walks a word of child-slot decisions in preorder and
//! steps to the lexicographic successor, so trees come out in the order of
//! their canonical encodings while only the current word is kept in memory.

mod oracle;

use std::fmt;

pub use oracle::{Branching, BranchingOracle, FromFn};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::trees::{
    binary_from, ordered_from, slotted_from, Address, BinaryTree, OrderedTree, Skeleton,
    SkeletonNode, SlotTree, TreeKind,
};

/// The weight variable of the ordered family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightParam {
    Symbolic,
    Value(Rational),
}

impl fmt::Display for WeightParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightParam::Symbolic => f.write_str("symbolic"),
            WeightParam::Value(m) => m.fmt(f),
        }
    }
}

/// One of the tree families the growth process runs on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Binary,
    Ordered(WeightParam),
    Slotted(BranchingOracle),
}

impl FamilySpec {
    pub fn kind(&self) -> TreeKind {
        match self {
            FamilySpec::Binary => TreeKind::Binary,
            FamilySpec::Ordered(_) => TreeKind::Ordered,
            FamilySpec::Slotted(_) => TreeKind::Slotted,
        }
    }

    /// Skeletons of every shape of size `n` in the family, in canonical order.
    pub fn shapes(&self, n: usize) -> Result<Box<dyn Iterator<Item = Skeleton> + '_>> {
        check_size(n)?;
        Ok(match self {
            FamilySpec::Binary => Box::new(SlotWords::new(n, BranchingOracle::Constant(2)).map(|w| w.skeleton)),
            FamilySpec::Ordered(_) => Box::new(DyckWords::new(n).map(|w| w.skeleton)),
            FamilySpec::Slotted(oracle) => Box::new(SlotWords::new(n, oracle).map(|w| w.skeleton)),
        })
    }

    /// The slot count of a vertex newly placed at `v`.
    pub fn slots_at(&self, v: &Address) -> Option<usize> {
        match self {
            FamilySpec::Binary => Some(2),
            FamilySpec::Ordered(_) => None,
            FamilySpec::Slotted(oracle) => Some(oracle.children(v)),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Binary => f.write_str("binary"),
            FamilySpec::Ordered(m) => write!(f, "ordered(m={m})"),
            FamilySpec::Slotted(o) => write!(f, "tbar({o})"),
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Config("tree size must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// All binary trees with `n` vertices, in canonical-encoding order.
pub fn enum_binary(n: usize) -> Result<impl Iterator<Item = BinaryTree>> {
    check_size(n)?;
    Ok(SlotWords::new(n, BranchingOracle::Constant(2)).map(|w| binary_from(&w.skeleton, 0)))
}

/// All ordered trees with `n` vertices, in canonical-encoding order.
pub fn enum_ordered(n: usize) -> Result<impl Iterator<Item = OrderedTree>> {
    check_size(n)?;
    Ok(DyckWords::new(n).map(|w| ordered_from(&w.skeleton, 0)))
}

/// All `n`-vertex subtrees of the infinite tree that contain its root, in
/// canonical-encoding order. Only vertices of depth below `n` are queried.
pub fn enum_tbar<B: Branching>(oracle: B, n: usize) -> Result<impl Iterator<Item = SlotTree>> {
    check_size(n)?;
    Ok(SlotWords::new(n, oracle).map(|w| slotted_from(&w.skeleton, 0)))
}

/// A generated word together with the tree it spells.
struct Spelled {
    skeleton: Skeleton,
}

struct Frame {
    node: usize,
    arity: usize,
    next: usize,
}

/// Preorder slot decisions (`true` = the slot holds a vertex) for trees
/// whose vertices have a fixed number of slots given by `arity`.
struct SlotWords<B> {
    n: usize,
    arity: B,
    word: Vec<bool>,
    started: bool,
    done: bool,
}

impl<B: Branching> SlotWords<B> {
    fn new(n: usize, arity: B) -> Self {
        SlotWords {
            n,
            arity,
            word: Vec::new(),
            started: false,
            done: false,
        }
    }

    /// Replays `word`, then extends it greedily (vertices first) into the
    /// smallest complete word with that prefix. Returns the spelled tree.
    fn complete(&mut self) -> Spelled {
        let mut nodes = vec![SkeletonNode {
            address: Address::root(),
            parent: None,
            children: Vec::new(),
            slots: None,
        }];
        let root_arity = self.arity.children(&Address::root());
        nodes[0].slots = Some(root_arity);
        let mut stack = vec![Frame {
            node: 0,
            arity: root_arity,
            next: 0,
        }];
        let mut placed = 1;
        let mut i = 0;
        while let Some(top) = stack.last_mut() {
            let d = if i < self.word.len() {
                self.word[i]
            } else {
                let d = placed < self.n;
                self.word.push(d);
                d
            };
            i += 1;
            let slot = top.next;
            top.next += 1;
            let parent = top.node;
            if d {
                placed += 1;
                let address = nodes[parent].address.child(slot);
                let arity = self.arity.children(&address);
                let me = nodes.len();
                nodes.push(SkeletonNode {
                    address,
                    parent: Some(parent),
                    children: Vec::new(),
                    slots: Some(arity),
                });
                nodes[parent].children.push(me);
                stack.push(Frame {
                    node: me,
                    arity,
                    next: 0,
                });
            }
            while stack.last().is_some_and(|f| f.next == f.arity) {
                stack.pop();
            }
        }
        debug_assert_eq!(i, self.word.len());
        debug_assert_eq!(placed, self.n);
        Spelled {
            skeleton: Skeleton::from_nodes(nodes),
        }
    }

    /// Moves to the successor word; false when the current one is last.
    fn advance(&mut self) -> bool {
        // open slots before each decision
        let mut open = self.arity.children(&Address::root());
        let mut pivot = None;
        let mut stack = vec![(Address::root(), open, 0usize)];
        for (i, &d) in self.word.iter().enumerate() {
            if d && open >= 2 {
                pivot = Some(i);
            }
            let top = stack.last_mut().expect("word longer than the tree");
            let slot = top.2;
            top.2 += 1;
            open -= 1;
            if d {
                let address = top.0.child(slot);
                let arity = self.arity.children(&address);
                open += arity;
                stack.push((address, arity, 0));
            }
            while stack.last().is_some_and(|f| f.2 == f.1) {
                stack.pop();
            }
        }
        match pivot {
            None => false,
            Some(i) => {
                self.word.truncate(i);
                self.word.push(false);
                true
            }
        }
    }
}

impl<B: Branching> Iterator for SlotWords<B> {
    type Item = Spelled;

    fn next(&mut self) -> Option<Spelled> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.complete())
    }
}

/// Balanced-parenthesis words (`true` = open) of length `2(n - 1)`,
/// spelling the children of an ordered tree's root.
struct DyckWords {
    n: usize,
    word: Vec<bool>,
    started: bool,
    done: bool,
}

impl DyckWords {
    fn new(n: usize) -> Self {
        DyckWords {
            n,
            word: Vec::new(),
            started: false,
            done: false,
        }
    }

    fn complete(&mut self) -> Spelled {
        let opens = self.word.iter().filter(|&&b| b).count();
        let closes = self.word.len() - opens;
        let remaining = self.n - 1 - opens;
        self.word.extend(std::iter::repeat_n(true, remaining));
        self.word
            .extend(std::iter::repeat_n(false, self.n - 1 - closes));

        let mut nodes = vec![SkeletonNode {
            address: Address::root(),
            parent: None,
            children: Vec::new(),
            slots: None,
        }];
        let mut current = 0;
        for &open in &self.word {
            if open {
                let me = nodes.len();
                let address = nodes[current].address.child(nodes[current].children.len());
                nodes.push(SkeletonNode {
                    address,
                    parent: Some(current),
                    children: Vec::new(),
                    slots: None,
                });
                nodes[current].children.push(me);
                current = me;
            } else {
                current = nodes[current].parent.expect("balanced word");
            }
        }
        Spelled {
            skeleton: Skeleton::from_nodes(nodes),
        }
    }

    fn advance(&mut self) -> bool {
        let mut depth = 0usize;
        let mut pivot = None;
        for (i, &open) in self.word.iter().enumerate() {
            if open {
                if depth >= 1 {
                    pivot = Some(i);
                }
                depth += 1;
            } else {
                depth -= 1;
            }
        }
        match pivot {
            None => false,
            Some(i) => {
                self.word.truncate(i);
                self.word.push(false);
                true
            }
        }
    }
}

impl Iterator for DyckWords {
    type Item = Spelled;

    fn next(&mut self) -> Option<Spelled> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.complete())
    }
}


#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, HashSet};

    use super::*;
    use crate::trees::RootedTree;

    /// Catalan numbers by the additive recurrence C(n) = sum C(i) C(n-1-i).
    fn catalan(n: usize) -> u64 {
        let mut c = vec![1u64];
        for k in 1..=n {
            c.push((0..k).map(|i| c[i] * c[k - 1 - i]).sum());
        }
        c[n]
    }

    #[test]
    fn binary_counts() {
        assert_eq!(enum_binary(1).unwrap().count(), 1);
        assert_eq!(enum_binary(3).unwrap().count(), 5);
        assert_eq!(enum_binary(5).unwrap().count(), 42);
        for n in 1..=10 {
            assert_eq!(enum_binary(n).unwrap().count() as u64, catalan(n), "n={n}");
        }
    }

    #[test]
    fn ordered_counts() {
        assert_eq!(enum_ordered(1).unwrap().count(), 1);
        assert_eq!(enum_ordered(4).unwrap().count(), 5);
        assert_eq!(enum_ordered(6).unwrap().count(), 42);
        for n in 1..=10 {
            assert_eq!(enum_ordered(n).unwrap().count() as u64, catalan(n - 1), "n={n}");
        }
    }

    #[test]
    fn zero_size_is_rejected() {
        assert!(enum_binary(0).is_err());
        assert!(enum_ordered(0).is_err());
        assert!(enum_tbar(BranchingOracle::Constant(2), 0).is_err());
    }

    #[test]
    fn binary_order_is_lexicographic_and_distinct() {
        for n in 1..=8 {
            let codes: Vec<String> = enum_binary(n).unwrap().map(|t| t.encode()).collect();
            let mut sorted = codes.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(codes, sorted, "n={n}");
            for (c, t) in codes.iter().zip(enum_binary(n).unwrap()) {
                assert_eq!(t.len(), n);
                assert_eq!(&BinaryTree::decode(c).unwrap(), &t);
            }
        }
        let three: Vec<String> = enum_binary(3).unwrap().map(|t| t.encode()).collect();
        assert_eq!(
            three,
            [
                "(((.,.),.),.)",
                "((.,(.,.)),.)",
                "((.,.),(.,.))",
                "(.,((.,.),.))",
                "(.,(.,(.,.)))",
            ]
        );
    }

    #[test]
    fn ordered_order_is_lexicographic_and_distinct() {
        for n in 1..=8 {
            let codes: Vec<String> = enum_ordered(n).unwrap().map(|t| t.encode()).collect();
            let mut sorted = codes.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(codes, sorted, "n={n}");
            assert!(enum_ordered(n).unwrap().all(|t| t.len() == n));
        }
    }

    #[test]
    fn tbar_with_two_children_is_binary() {
        for n in 1..=8 {
            let a: Vec<String> = enum_tbar(BranchingOracle::Constant(2), n)
                .unwrap()
                .map(|t| t.encode())
                .collect();
            let b: Vec<String> = enum_binary(n).unwrap().map(|t| t.encode()).collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn tbar_hook_multisets_match_binary() {
        fn multiset<T: RootedTree>(ts: impl Iterator<Item = T>) -> Vec<Vec<usize>> {
            let mut out: Vec<Vec<usize>> = ts
                .map(|t| {
                    let mut h = t.skeleton().hooks();
                    h.sort();
                    h
                })
                .collect();
            out.sort();
            out
        }
        for n in 1..=8 {
            assert_eq!(
                multiset(enum_tbar(BranchingOracle::Constant(2), n).unwrap()),
                multiset(enum_binary(n).unwrap())
            );
        }
    }

    #[test]
    fn tbar_unary_is_a_single_path() {
        for n in 1..=9 {
            let all: Vec<SlotTree> = enum_tbar(BranchingOracle::Constant(1), n).unwrap().collect();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].shape(), OrderedTree::path(n));
        }
    }

    fn figure_oracle() -> BranchingOracle {
        BranchingOracle::table(
            BTreeMap::from([
                (Address::root(), 2),
                (Address::from(vec![0]), 3),
                (Address::from(vec![1]), 1),
            ]),
            BranchingOracle::Constant(2),
        )
        .unwrap()
    }

    #[test]
    fn figure_subtrees_of_size_three() {
        let all: Vec<String> = enum_tbar(figure_oracle(), 3).unwrap().map(|t| t.encode()).collect();
        assert_eq!(
            all,
            [
                "(((.,.),.,.),.)",
                "((.,(.,.),.),.)",
                "((.,.,(.,.)),.)",
                "((.,.,.),(.))",
                "(.,((.,.)))",
            ]
        );
        assert_eq!(all.len(), 5);
        let sets: HashSet<Vec<Address>> = enum_tbar(figure_oracle(), 3)
            .unwrap()
            .map(|t| t.skeleton().nodes().iter().map(|n| n.address.clone()).collect())
            .collect();
        let expected: HashSet<Vec<Address>> = [
            vec![vec![], vec![0], vec![0, 0]],
            vec![vec![], vec![0], vec![0, 1]],
            vec![vec![], vec![0], vec![0, 2]],
            vec![vec![], vec![0], vec![1]],
            vec![vec![], vec![1], vec![1, 0]],
        ]
        .into_iter()
        .map(|v| v.into_iter().map(Address::from).collect())
        .collect();
        assert_eq!(sets, expected);
    }

    #[test]
    fn tbar_respects_the_oracle() {
        let oracles = [
            BranchingOracle::Constant(3),
            BranchingOracle::by_depth(vec![2, 3]).unwrap(),
            BranchingOracle::by_depth(vec![3, 1, 2]).unwrap(),
            figure_oracle(),
        ];
        for o in &oracles {
            for n in 1..=6 {
                let mut seen = HashSet::new();
                for t in enum_tbar(o, n).unwrap() {
                    assert!(seen.insert(t.encode()), "duplicate under {o}");
                    let sk = t.skeleton();
                    assert_eq!(sk.len(), n);
                    for node in sk.nodes() {
                        let cbar = o.children(&node.address);
                        assert_eq!(node.slots, Some(cbar));
                        for &c in &node.children {
                            assert!(*sk.node(c).address.steps().last().unwrap() < cbar);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tbar_queries_stay_above_depth_n() {
        for n in 1..=7 {
            let probe = move |v: &Address| {
                assert!(v.depth() < n, "queried depth {} for n={n}", v.depth());
                3
            };
            assert!(enum_tbar(FromFn(probe), n).unwrap().count() > 0);
        }
    }

    #[test]
    fn family_shapes_match_generators() {
        let fam = FamilySpec::Slotted(BranchingOracle::by_depth(vec![2, 3]).unwrap());
        assert_eq!(fam.shapes(4).unwrap().count(), enum_tbar(BranchingOracle::by_depth(vec![2, 3]).unwrap(), 4).unwrap().count());
        assert_eq!(FamilySpec::Binary.shapes(4).unwrap().count(), 14);
        assert_eq!(FamilySpec::Ordered(WeightParam::Symbolic).shapes(4).unwrap().count(), 5);
        assert!(FamilySpec::Binary.shapes(0).is_err());
    }
}
