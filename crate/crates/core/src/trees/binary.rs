use crate::trees::{Address, RootedTree, Skeleton, SkeletonNode};

/// A finite binary tree. A vertex with a single child records which side
/// the child occupies, so left-only and right-only trees differ.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinaryTree {
    pub left: Option<Box<BinaryTree>>,
    pub right: Option<Box<BinaryTree>>,
}

impl BinaryTree {
    /// A single vertex.
    pub fn leaf() -> Self {
        BinaryTree::default()
    }

    pub fn new(left: Option<BinaryTree>, right: Option<BinaryTree>) -> Self {
        BinaryTree {
            left: left.map(Box::new),
            right: right.map(Box::new),
        }
    }

    /// Child in slot 0 (left) or 1 (right).
    pub fn slot(&self, index: usize) -> Option<&BinaryTree> {
        match index {
            0 => self.left.as_deref(),
            1 => self.right.as_deref(),
            _ => None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.left.is_none() && self.right.is_none()
    }

    pub fn is_complete(&self) -> bool {
        match (&self.left, &self.right) {
            (None, None) => true,
            (Some(l), Some(r)) => l.is_complete() && r.is_complete(),
            _ => false,
        }
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            [&self.left, &self.right]
                .into_iter()
                .flatten()
                .map(|c| c.leaf_count())
                .sum()
        }
    }

    /// The complete binary tree obtained by hanging a new leaf in every
    /// empty slot: `2n + 1` vertices, `n + 1` of them leaves.
    pub fn completion(&self) -> BinaryTree {
        let fill = |c: &Option<Box<BinaryTree>>| {
            Some(Box::new(match c {
                Some(c) => c.completion(),
                None => BinaryTree::leaf(),
            }))
        };
        BinaryTree {
            left: fill(&self.left),
            right: fill(&self.right),
        }
    }

    fn count(&self) -> usize {
        1 + [&self.left, &self.right]
            .into_iter()
            .flatten()
            .map(|c| c.count())
            .sum::<usize>()
    }
}

fn flatten(t: &BinaryTree, address: Address, parent: Option<usize>, out: &mut Vec<SkeletonNode>) {
    let me = out.len();
    out.push(SkeletonNode {
        address: address.clone(),
        parent,
        children: Vec::new(),
        slots: Some(2),
    });
    if let Some(p) = parent {
        out[p].children.push(me);
    }
    for (i, c) in [&t.left, &t.right].into_iter().enumerate() {
        if let Some(c) = c {
            flatten(c, address.child(i), Some(me), out);
        }
    }
}

impl RootedTree for BinaryTree {
    fn skeleton(&self) -> Skeleton {
        let mut nodes = Vec::new();
        flatten(self, Address::root(), None, &mut nodes);
        Skeleton::from_nodes(nodes)
    }

    fn len(&self) -> usize {
        self.count()
    }

    fn contains(&self, v: &Address) -> bool {
        let mut node = self;
        for &s in v.steps() {
            match node.slot(s) {
                Some(c) => node = c,
                None => return false,
            }
        }
        true
    }
}
