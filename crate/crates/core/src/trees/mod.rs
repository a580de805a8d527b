//! Finite rooted trees: binary, ordered, and slotted (finite subtrees of a
//! fixed infinite ordered tree), plus increasing labelings of them.
//!
//! Every tree kind can be flattened into a [`Skeleton`], a preorder vertex
//! table carrying addresses, parents and children. Hook lengths, depths and
//! labeling enumeration all work on that table.

mod address;
mod binary;
mod codec;
mod labeled;
mod ordered;
mod slotted;

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub use address::Address;
pub use binary::BinaryTree;
pub use codec::MAX_NESTING;
pub(crate) use codec::{binary_from, ordered_from, slotted_from};
pub use labeled::{LabeledNode, LabeledTree, TreeKind};
pub use ordered::OrderedTree;
pub use slotted::SlotTree;

/// One vertex of a [`Skeleton`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonNode {
    pub address: Address,
    pub parent: Option<usize>,
    /// Preorder indices of the children, in child order.
    pub children: Vec<usize>,
    /// Number of child slots for binary (always 2) and slotted trees.
    pub slots: Option<usize>,
}

/// Preorder vertex table of a tree. Index 0 is the root, and every parent
/// precedes its children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    nodes: Vec<SkeletonNode>,
}

impl Skeleton {
    pub(crate) fn from_nodes(nodes: Vec<SkeletonNode>) -> Self {
        debug_assert!(!nodes.is_empty());
        Skeleton { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[SkeletonNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &SkeletonNode {
        &self.nodes[i]
    }

    /// Hook length of every vertex, in preorder.
    pub fn hooks(&self) -> Vec<usize> {
        let mut hooks = vec![1usize; self.nodes.len()];
        for i in (1..self.nodes.len()).rev() {
            let p = self.nodes[i].parent.expect("non-root vertex has a parent");
            hooks[p] += hooks[i];
        }
        hooks
    }

    pub fn depths(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.address.depth()).collect()
    }

    pub fn child_counts(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.children.len()).collect()
    }

    /// Calls `visit` once per increasing labeling, passing the label of each
    /// vertex in preorder. Labels are placed in order 1, 2, ..., each on a
    /// vertex whose parent already carries a smaller label.
    pub fn for_each_labeling(&self, mut visit: impl FnMut(&[usize])) {
        fn place(
            sk: &Skeleton,
            next: usize,
            frontier: &mut Vec<usize>,
            labels: &mut [usize],
            visit: &mut dyn FnMut(&[usize]),
        ) {
            if next > labels.len() {
                visit(labels);
                return;
            }
            for k in 0..frontier.len() {
                let v = frontier.swap_remove(k);
                labels[v] = next;
                let before = frontier.len();
                frontier.extend_from_slice(&sk.nodes[v].children);
                place(sk, next + 1, frontier, labels, visit);
                frontier.truncate(before);
                frontier.push(v);
                let last = frontier.len() - 1;
                frontier.swap(k, last);
                labels[v] = 0;
            }
        }
        let mut labels = vec![0; self.nodes.len()];
        labels[0] = 1;
        let mut frontier = self.nodes[0].children.clone();
        place(self, 2, &mut frontier, &mut labels, &mut visit);
    }

    pub fn index_of(&self, v: &Address) -> Option<usize> {
        // preorder of an ordered structure is sorted by address
        self.nodes.binary_search_by(|n| n.address.cmp(v)).ok()
    }
}

/// Common queries over the finite tree kinds.
pub trait RootedTree {
    fn skeleton(&self) -> Skeleton;

    /// Number of vertices.
    fn len(&self) -> usize {
        self.skeleton().len()
    }

    fn is_empty(&self) -> bool {
        false
    }

    /// `h_v`, the number of descendants of `v` including `v`.
    fn hook_lengths(&self) -> BTreeMap<Address, usize> {
        let sk = self.skeleton();
        let hooks = sk.hooks();
        sk.nodes.into_iter().map(|n| n.address).zip(hooks).collect()
    }

    fn contains(&self, v: &Address) -> bool {
        self.skeleton().index_of(v).is_some()
    }

    /// Length of the root-to-`v` path.
    fn depth(&self, v: &Address) -> Result<usize> {
        if self.contains(v) {
            Ok(v.depth())
        } else {
            Err(Error::InvalidAddress(v.clone()))
        }
    }
}
