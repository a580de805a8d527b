use crate::trees::{Address, RootedTree, Skeleton, SkeletonNode};

/// A finite rooted tree whose children form a sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OrderedTree {
    pub children: Vec<OrderedTree>,
}

impl OrderedTree {
    pub fn leaf() -> Self {
        OrderedTree::default()
    }

    pub fn new(children: Vec<OrderedTree>) -> Self {
        OrderedTree { children }
    }

    /// The path on `n` vertices.
    pub fn path(n: usize) -> Self {
        assert!(n >= 1);
        (1..n).fold(OrderedTree::leaf(), |t, _| OrderedTree::new(vec![t]))
    }
}

fn flatten(t: &OrderedTree, address: Address, parent: Option<usize>, out: &mut Vec<SkeletonNode>) {
    let me = out.len();
    out.push(SkeletonNode {
        address: address.clone(),
        parent,
        children: Vec::new(),
        slots: None,
    });
    if let Some(p) = parent {
        out[p].children.push(me);
    }
    for (i, c) in t.children.iter().enumerate() {
        flatten(c, address.child(i), Some(me), out);
    }
}

impl RootedTree for OrderedTree {
    fn skeleton(&self) -> Skeleton {
        let mut nodes = Vec::new();
        flatten(self, Address::root(), None, &mut nodes);
        Skeleton::from_nodes(nodes)
    }

    fn len(&self) -> usize {
        1 + self.children.iter().map(|c| c.len()).sum::<usize>()
    }

    fn contains(&self, v: &Address) -> bool {
        let mut node = self;
        for &s in v.steps() {
            match node.children.get(s) {
                Some(c) => node = c,
                None => return false,
            }
        }
        true
    }
}
