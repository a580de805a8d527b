use std::fmt;

use crate::error::{Error, Result};
use crate::trees::{
    Address, BinaryTree, OrderedTree, RootedTree, Skeleton, SkeletonNode, SlotTree,
};

/// Which family of shapes a labeled tree lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeKind {
    Binary,
    Ordered,
    Slotted,
}

/// One vertex of a [`LabeledTree`]. Indices are `label - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledNode {
    pub parent: Option<usize>,
    /// Binary and slotted trees: the occupied slot of the parent. Ordered
    /// trees: the position among the parent's children.
    pub slot: usize,
    /// Children in slot / sibling order.
    pub children: Vec<usize>,
    pub slots: Option<usize>,
}

/// A tree together with an increasing labeling: the root carries 1, labels
/// increase from parent to child, and the labels are exactly `1..=n`.
///
/// Vertices are stored by label, so `nodes()[k]` is the vertex labeled
/// `k + 1`; the increasing property is `parent < index` for every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledTree {
    kind: TreeKind,
    nodes: Vec<LabeledNode>,
}

impl LabeledTree {
    /// The single root labeled 1. Slotted roots need their slot count.
    pub fn root(kind: TreeKind, slots: Option<usize>) -> Result<Self> {
        let slots = check_slots(kind, slots)?;
        Ok(LabeledTree {
            kind,
            nodes: vec![LabeledNode {
                parent: None,
                slot: 0,
                children: Vec::new(),
                slots,
            }],
        })
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[LabeledNode] {
        &self.nodes
    }

    pub fn node(&self, index: usize) -> &LabeledNode {
        &self.nodes[index]
    }

    /// Adds a vertex labeled `len() + 1` under `parent` (an index, i.e.
    /// label - 1) and returns its index. For ordered trees `slot` is an
    /// insertion position in `0..=c_p`; later siblings shift right.
    pub fn attach(&mut self, parent: usize, slot: usize, slots: Option<usize>) -> Result<usize> {
        let slots = check_slots(self.kind, slots)?;
        let p = self
            .nodes
            .get(parent)
            .ok_or_else(|| Error::InvalidLabeling(format!("no vertex labeled {}", parent + 1)))?;
        let me = self.nodes.len();
        let position = match self.kind {
            TreeKind::Ordered => {
                if slot > p.children.len() {
                    return Err(Error::InvalidLabeling(format!(
                        "insertion position {slot} beyond {} children",
                        p.children.len()
                    )));
                }
                slot
            }
            TreeKind::Binary | TreeKind::Slotted => {
                let arity = p.slots.expect("slotted vertex");
                if slot >= arity {
                    return Err(Error::InvalidLabeling(format!("slot {slot} out of range 0..{arity}")));
                }
                match p.children.binary_search_by_key(&slot, |&c| self.nodes[c].slot) {
                    Ok(_) => {
                        return Err(Error::InvalidLabeling(format!(
                            "slot {slot} of vertex {} is occupied",
                            parent + 1
                        )))
                    }
                    Err(pos) => pos,
                }
            }
        };
        self.nodes.push(LabeledNode {
            parent: Some(parent),
            slot,
            children: Vec::new(),
            slots,
        });
        self.nodes[parent].children.insert(position, me);
        if self.kind == TreeKind::Ordered {
            let siblings = self.nodes[parent].children.clone();
            for (pos, c) in siblings.into_iter().enumerate() {
                self.nodes[c].slot = pos;
            }
        }
        Ok(me)
    }

    /// Address of the vertex at `index` in the current tree.
    pub fn address(&self, index: usize) -> Address {
        let mut steps = Vec::new();
        let mut v = index;
        while let Some(p) = self.nodes[v].parent {
            steps.push(self.nodes[v].slot);
            v = p;
        }
        steps.reverse();
        Address::from(steps)
    }

    pub fn depth_of(&self, index: usize) -> usize {
        let mut d = 0;
        let mut v = index;
        while let Some(p) = self.nodes[v].parent {
            d += 1;
            v = p;
        }
        d
    }

    /// Strict ancestors of the vertex at `index`, nearest first.
    pub fn ancestors(&self, index: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.nodes[index].parent, |&v| self.nodes[v].parent)
    }

    /// Vertex indices in preorder.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.nodes[v].children.iter().rev());
        }
        out
    }

    /// Labels listed in the preorder of the underlying shape.
    pub fn preorder_labels(&self) -> Vec<usize> {
        self.preorder().into_iter().map(|v| v + 1).collect()
    }

    /// Builds a labeled tree from a shape skeleton and the label of each
    /// skeleton vertex (in preorder), validating that the labeling is an
    /// increasing bijection onto `1..=n`.
    pub fn from_skeleton(kind: TreeKind, skeleton: &Skeleton, labels: &[usize]) -> Result<Self> {
        let n = skeleton.len();
        if labels.len() != n {
            return Err(Error::InvalidLabeling(format!("{} labels for {n} vertices", labels.len())));
        }
        let mut seen = vec![false; n];
        for &l in labels {
            if l == 0 || l > n || std::mem::replace(&mut seen[l - 1], true) {
                return Err(Error::InvalidLabeling(format!(
                    "labels must be a permutation of 1..={n}"
                )));
            }
        }
        let mut nodes: Vec<Option<LabeledNode>> = vec![None; n];
        for (i, sk) in skeleton.nodes().iter().enumerate() {
            let parent = sk.parent.map(|p| labels[p] - 1);
            if let Some(p) = parent {
                if p >= labels[i] - 1 {
                    return Err(Error::InvalidLabeling(format!(
                        "label {} is below its parent's label {}",
                        labels[i],
                        p + 1
                    )));
                }
            }
            nodes[labels[i] - 1] = Some(LabeledNode {
                parent,
                slot: sk.address.steps().last().copied().unwrap_or(0),
                children: sk.children.iter().map(|&c| labels[c] - 1).collect(),
                slots: sk.slots,
            });
        }
        let nodes: Vec<LabeledNode> = nodes.into_iter().map(|n| n.expect("bijection")).collect();
        let tree = LabeledTree { kind, nodes };
        for v in &tree.nodes {
            check_slots(kind, v.slots)?;
        }
        Ok(tree)
    }

    pub fn to_binary(&self) -> Option<BinaryTree> {
        fn build(t: &LabeledTree, v: usize) -> BinaryTree {
            let mut out = BinaryTree::leaf();
            for &c in &t.nodes[v].children {
                let sub = Some(Box::new(build(t, c)));
                match t.nodes[c].slot {
                    0 => out.left = sub,
                    _ => out.right = sub,
                }
            }
            out
        }
        (self.kind == TreeKind::Binary).then(|| build(self, 0))
    }

    pub fn to_ordered(&self) -> OrderedTree {
        fn build(t: &LabeledTree, v: usize) -> OrderedTree {
            OrderedTree::new(t.nodes[v].children.iter().map(|&c| build(t, c)).collect())
        }
        build(self, 0)
    }

    pub fn to_slotted(&self) -> Option<SlotTree> {
        fn build(t: &LabeledTree, v: usize) -> SlotTree {
            let mut out = SlotTree::leaf(t.nodes[v].slots.unwrap_or(0));
            for &c in &t.nodes[v].children {
                out.slots[t.nodes[c].slot] = Some(Box::new(build(t, c)));
            }
            out
        }
        (self.kind != TreeKind::Ordered).then(|| build(self, 0))
    }

    /// Canonical text form, e.g. `(:1(:2.,.),.)` for a binary tree.
    pub fn encode(&self) -> String {
        let mut out = String::new();
        self.write_node(0, &mut out);
        out
    }

    fn write_node(&self, v: usize, out: &mut String) {
        use std::fmt::Write;
        let node = &self.nodes[v];
        write!(out, "(:{}", v + 1).expect("string write");
        match node.slots {
            None => {
                for &c in &node.children {
                    self.write_node(c, out);
                }
            }
            Some(arity) => {
                let mut kids = node.children.iter().peekable();
                for s in 0..arity {
                    if s > 0 {
                        out.push(',');
                    }
                    match kids.peek() {
                        Some(&&c) if self.nodes[c].slot == s => {
                            kids.next();
                            self.write_node(c, out);
                        }
                        _ => out.push('.'),
                    }
                }
            }
        }
        out.push(')');
    }
}

fn check_slots(kind: TreeKind, slots: Option<usize>) -> Result<Option<usize>> {
    match (kind, slots) {
        (TreeKind::Binary, None | Some(2)) => Ok(Some(2)),
        (TreeKind::Ordered, None) => Ok(None),
        (TreeKind::Slotted, Some(k)) if k >= 1 => Ok(Some(k)),
        _ => Err(Error::InvalidLabeling(format!(
            "slot count {slots:?} does not fit a {kind:?} tree"
        ))),
    }
}

impl RootedTree for LabeledTree {
    fn skeleton(&self) -> Skeleton {
        let order = self.preorder();
        let mut position = vec![0usize; self.nodes.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let nodes = order
            .iter()
            .map(|&v| {
                let n = &self.nodes[v];
                SkeletonNode {
                    address: self.address(v),
                    parent: n.parent.map(|p| position[p]),
                    children: n.children.iter().map(|&c| position[c]).collect(),
                    slots: n.slots,
                }
            })
            .collect();
        Skeleton::from_nodes(nodes)
    }

    fn len(&self) -> usize {
        self.nodes.len()
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}
