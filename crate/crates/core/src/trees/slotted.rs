use crate::trees::{Address, OrderedTree, RootedTree, Skeleton, SkeletonNode};

/// A finite rooted subtree of a fixed infinite ordered tree.
///
/// Each vertex carries one slot per child it has in the infinite tree
/// (`slots.len()` is that child count, at least 1), and a slot is filled
/// when the subtree contains that child. Two subtrees are equal exactly when
/// they contain the same vertices, which is structural equality here.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotTree {
    pub slots: Vec<Option<Box<SlotTree>>>,
}

impl SlotTree {
    /// A vertex with `arity` empty slots.
    pub fn leaf(arity: usize) -> Self {
        SlotTree {
            slots: vec![None; arity],
        }
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn slot(&self, index: usize) -> Option<&SlotTree> {
        self.slots.get(index).and_then(|s| s.as_deref())
    }

    /// Forgets the empty slots.
    pub fn shape(&self) -> OrderedTree {
        OrderedTree::new(self.slots.iter().flatten().map(|c| c.shape()).collect())
    }

    /// Looks up the subtree rooted at `v`.
    pub fn get(&self, v: &Address) -> Option<&SlotTree> {
        let mut node = self;
        for &s in v.steps() {
            node = node.slot(s)?;
        }
        Some(node)
    }
}

fn flatten(t: &SlotTree, address: Address, parent: Option<usize>, out: &mut Vec<SkeletonNode>) {
    let me = out.len();
    out.push(SkeletonNode {
        address: address.clone(),
        parent,
        children: Vec::new(),
        slots: Some(t.arity()),
    });
    if let Some(p) = parent {
        out[p].children.push(me);
    }
    for (i, c) in t.slots.iter().enumerate() {
        if let Some(c) = c {
            flatten(c, address.child(i), Some(me), out);
        }
    }
}

impl RootedTree for SlotTree {
    fn skeleton(&self) -> Skeleton {
        let mut nodes = Vec::new();
        flatten(self, Address::root(), None, &mut nodes);
        Skeleton::from_nodes(nodes)
    }

    fn len(&self) -> usize {
        1 + self.slots.iter().flatten().map(|c| c.len()).sum::<usize>()
    }

    fn contains(&self, v: &Address) -> bool {
        self.get(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addresses_skip_empty_slots() {
        // root with 2 slots; only slot 1 filled, which has 3 slots
        let t: SlotTree = "(.,(.,.,.))".parse().unwrap();
        let sk = t.skeleton();
        assert_eq!(sk.node(1).address, Address::from(vec![1]));
        assert_eq!(sk.node(1).slots, Some(3));
        assert_eq!(t.shape().encode(), "(())");
        assert_eq!(t.len(), 2);
        assert!(t.get(&Address::from(vec![0])).is_none());
    }
}
