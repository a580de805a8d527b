//! Canonical parenthesized encodings.
//!
//! Binary and slotted trees list every child slot: `node = "(" sub ("," sub)* ")"`
//! with `sub = node | "."`, so a binary vertex always has exactly two subs.
//! Ordered trees list children only: `node = "(" node* ")"`. Labeled trees
//! write `":k"` right after each `"("`. Encodings are ASCII, whitespace-free,
//! and equal trees always produce equal strings.

use std::fmt::{self, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::trees::{
    Address, BinaryTree, LabeledTree, OrderedTree, Skeleton, SkeletonNode, SlotTree, TreeKind,
};

/// Deepest nesting the decoder accepts.
pub const MAX_NESTING: usize = 2048;

#[derive(Clone, Copy)]
enum Grammar {
    Slots(Option<usize>),
    Sequence,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    grammar: Grammar,
    labeled: bool,
    nodes: Vec<SkeletonNode>,
    labels: Vec<usize>,
}

impl<'a> Parser<'a> {
    fn parse(s: &'a str, grammar: Grammar, labeled: bool) -> Result<(Skeleton, Vec<usize>)> {
        let mut p = Parser {
            bytes: s.as_bytes(),
            pos: 0,
            grammar,
            labeled,
            nodes: Vec::new(),
            labels: Vec::new(),
        };
        p.node(Address::root(), None, 0)?;
        if p.pos != p.bytes.len() {
            return Err(Error::parse(p.pos, "trailing input after the root"));
        }
        Ok((Skeleton::from_nodes(p.nodes), p.labels))
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(b) => Error::parse(self.pos, format!("expected {wanted}, found {:?}", b as char)),
            None => Error::parse(self.pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&format!("{:?}", b as char)))
        }
    }

    fn label(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.bytes[start..self.pos];
        if digits.is_empty() {
            return Err(self.unexpected("a label"));
        }
        if digits[0] == b'0' {
            return Err(Error::parse(start, "labels are positive and have no leading zeros"));
        }
        std::str::from_utf8(digits)
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::parse(start, "label out of range"))
    }

    fn node(&mut self, address: Address, parent: Option<usize>, depth: usize) -> Result<()> {
        if depth >= MAX_NESTING {
            return Err(Error::parse(self.pos, format!("nesting deeper than {MAX_NESTING}")));
        }
        self.expect(b'(')?;
        let me = self.nodes.len();
        self.nodes.push(SkeletonNode {
            address: address.clone(),
            parent,
            children: Vec::new(),
            slots: None,
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(me);
        }
        if self.peek() == Some(b':') {
            if !self.labeled {
                return Err(Error::parse(self.pos, "unexpected label in an unlabeled tree"));
            }
            self.pos += 1;
            let l = self.label()?;
            self.labels.push(l);
        } else if self.labeled {
            return Err(self.unexpected("':' and a label"));
        }
        match self.grammar {
            Grammar::Sequence => {
                let mut i = 0;
                loop {
                    match self.peek() {
                        Some(b'(') => {
                            self.node(address.child(i), Some(me), depth + 1)?;
                            i += 1;
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.unexpected("'(' or ')'")),
                    }
                }
            }
            Grammar::Slots(arity) => {
                let mut s = 0;
                loop {
                    match self.peek() {
                        Some(b'.') => self.pos += 1,
                        Some(b'(') => self.node(address.child(s), Some(me), depth + 1)?,
                        _ => return Err(self.unexpected("'(' or '.'")),
                    }
                    s += 1;
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => break,
                        _ => return Err(self.unexpected("',' or ')'")),
                    }
                }
                if let Some(k) = arity.filter(|&k| k != s) {
                    return Err(Error::parse(self.pos, format!("vertex has {s} slots, expected {k}")));
                }
                self.pos += 1;
                self.nodes[me].slots = Some(s);
            }
        }
        Ok(())
    }
}

pub(crate) fn binary_from(sk: &Skeleton, i: usize) -> BinaryTree {
    let mut t = BinaryTree::leaf();
    for &c in &sk.node(i).children {
        let sub = Some(Box::new(binary_from(sk, c)));
        match sk.node(c).address.steps().last() {
            Some(0) => t.left = sub,
            _ => t.right = sub,
        }
    }
    t
}

pub(crate) fn ordered_from(sk: &Skeleton, i: usize) -> OrderedTree {
    OrderedTree::new(sk.node(i).children.iter().map(|&c| ordered_from(sk, c)).collect())
}

pub(crate) fn slotted_from(sk: &Skeleton, i: usize) -> SlotTree {
    let mut t = SlotTree::leaf(sk.node(i).slots.unwrap_or(0));
    for &c in &sk.node(i).children {
        let s = *sk.node(c).address.steps().last().expect("child");
        t.slots[s] = Some(Box::new(slotted_from(sk, c)));
    }
    t
}

fn write_binary(t: &BinaryTree, out: &mut String) {
    out.push('(');
    for (i, c) in [&t.left, &t.right].into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        match c {
            Some(c) => write_binary(c, out),
            None => out.push('.'),
        }
    }
    out.push(')');
}

fn write_ordered(t: &OrderedTree, out: &mut String) {
    out.push('(');
    for c in &t.children {
        write_ordered(c, out);
    }
    out.push(')');
}

fn write_slotted(t: &SlotTree, out: &mut String) {
    out.push('(');
    for (i, c) in t.slots.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        match c {
            Some(c) => write_slotted(c, out),
            None => out.push('.'),
        }
    }
    out.push(')');
}

impl BinaryTree {
    pub fn encode(&self) -> String {
        let mut s = String::new();
        write_binary(self, &mut s);
        s
    }

    pub fn decode(s: &str) -> Result<Self> {
        let (sk, _) = Parser::parse(s, Grammar::Slots(Some(2)), false)?;
        Ok(binary_from(&sk, 0))
    }
}

impl OrderedTree {
    pub fn encode(&self) -> String {
        let mut s = String::new();
        write_ordered(self, &mut s);
        s
    }

    pub fn decode(s: &str) -> Result<Self> {
        let (sk, _) = Parser::parse(s, Grammar::Sequence, false)?;
        Ok(ordered_from(&sk, 0))
    }
}

impl SlotTree {
    pub fn encode(&self) -> String {
        let mut s = String::new();
        write_slotted(self, &mut s);
        s
    }

    pub fn decode(s: &str) -> Result<Self> {
        let (sk, _) = Parser::parse(s, Grammar::Slots(None), false)?;
        Ok(slotted_from(&sk, 0))
    }
}

impl LabeledTree {
    /// Parses a labeled encoding of the given kind and validates the
    /// labeling.
    pub fn decode(kind: TreeKind, s: &str) -> Result<Self> {
        let grammar = match kind {
            TreeKind::Binary => Grammar::Slots(Some(2)),
            TreeKind::Slotted => Grammar::Slots(None),
            TreeKind::Ordered => Grammar::Sequence,
        };
        let (sk, labels) = Parser::parse(s, grammar, true)?;
        LabeledTree::from_skeleton(kind, &sk, &labels)
    }
}

macro_rules! text_form {
    ($ty:ty) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.encode())
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_char('`')?;
                f.write_str(&self.encode())?;
                f.write_char('`')
            }
        }

        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                Self::decode(s)
            }
        }
    };
}

text_form!(BinaryTree);
text_form!(OrderedTree);
text_form!(SlotTree);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::RootedTree;

    fn parse_err_pos<T>(r: Result<T>) -> usize {
        match r {
            Err(Error::Parse { position, .. }) => position,
            Err(e) => panic!("expected a parse error, got {e:?}"),
            Ok(_) => panic!("expected a parse error"),
        }
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(BinaryTree::leaf().encode(), "(.,.)");
        assert_eq!(BinaryTree::new(None, Some(BinaryTree::leaf())).encode(), "(.,(.,.))");
        assert_eq!(OrderedTree::new(vec![OrderedTree::leaf(); 3]).encode(), "(()()())");
    }

    #[test]
    fn malformed_binary_reports_position() {
        assert_eq!(parse_err_pos(BinaryTree::decode("")), 0);
        assert_eq!(parse_err_pos(BinaryTree::decode("(.)")), 2);
        assert_eq!(parse_err_pos(BinaryTree::decode("(.,.,.)")), 6);
        assert_eq!(parse_err_pos(BinaryTree::decode("(.,.)x")), 5);
        assert_eq!(parse_err_pos(BinaryTree::decode("(.,x)")), 3);
        assert_eq!(parse_err_pos(BinaryTree::decode("( .,.)")), 1);
        assert_eq!(parse_err_pos(BinaryTree::decode("(:1.,.)")), 1);
    }

    #[test]
    fn malformed_ordered() {
        assert_eq!(parse_err_pos(OrderedTree::decode("(()")), 3);
        assert_eq!(parse_err_pos(OrderedTree::decode("())")), 2);
        assert_eq!(parse_err_pos(OrderedTree::decode(")")), 0);
        assert!(OrderedTree::decode("(.,.)").is_err());
    }

    #[test]
    fn slotted_roundtrip() {
        let s = "((.,.,.),(.))";
        let t = SlotTree::decode(s).unwrap();
        assert_eq!(t.arity(), 2);
        assert_eq!(t.slot(0).unwrap().arity(), 3);
        assert_eq!(t.encode(), s);
        assert_eq!(t.len(), 3);
        // a vertex needs at least one slot
        assert!(SlotTree::decode("()").is_err());
    }

    #[test]
    fn labeled_decoding() {
        let t = LabeledTree::decode(TreeKind::Binary, "(:1(:3.,.),(:2.,.))").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.address(2), Address::from(vec![0]));
        let o = LabeledTree::decode(TreeKind::Ordered, "(:1(:2(:4))(:3))").unwrap();
        assert_eq!(o.encode(), "(:1(:2(:4))(:3))");
        // decreasing label along an edge
        assert!(matches!(
            LabeledTree::decode(TreeKind::Ordered, "(:2(:1))"),
            Err(Error::InvalidLabeling(_))
        ));
        // missing label
        assert_eq!(parse_err_pos(LabeledTree::decode(TreeKind::Ordered, "(:1())")), 4);
        // leading zero
        assert_eq!(parse_err_pos(LabeledTree::decode(TreeKind::Ordered, "(:01)")), 2);
        // gap in the labels
        assert!(LabeledTree::decode(TreeKind::Ordered, "(:1(:3))").is_err());
        // overflow
        assert!(LabeledTree::decode(TreeKind::Ordered, "(:99999999999999999999999)").is_err());
    }

    #[test]
    fn nesting_limit() {
        let deep = "(".repeat(MAX_NESTING + 1) + &")".repeat(MAX_NESTING + 1);
        assert!(OrderedTree::decode(&deep).is_err());
        let ok = "(".repeat(MAX_NESTING) + &")".repeat(MAX_NESTING);
        assert_eq!(OrderedTree::decode(&ok).unwrap().len(), MAX_NESTING);
    }
}
