//! Replays the checked-in fuzz corpus through the same checks the fuzz
//! targets make, and throws arbitrary strings at every decoder.

use std::fs;
use std::path::PathBuf;

use hooklab::enumerate::{Branching, BranchingOracle};
use hooklab::exact::Rational;
use hooklab::trees::{Address, BinaryTree, LabeledTree, OrderedTree, RootedTree, SlotTree, TreeKind};
use proptest::prelude::*;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<Vec<u8>> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| fs::read(entry.unwrap().path()).unwrap())
        .collect();
    assert!(!out.is_empty(), "no seeds for {target}");
    out.sort();
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

fn check_binary(s: &str) -> bool {
    match BinaryTree::decode(s) {
        Ok(t) => {
            assert_eq!(t.encode(), s);
            assert_eq!(t.completion().len(), 2 * t.len() + 1);
            true
        }
        Err(_) => false,
    }
}

fn check_ordered(s: &str) -> bool {
    match OrderedTree::decode(s) {
        Ok(t) => {
            assert_eq!(t.encode(), s);
            assert_eq!(t.skeleton().hooks()[0], t.len());
            true
        }
        Err(_) => false,
    }
}

fn check_slotted(s: &str) -> bool {
    match SlotTree::decode(s) {
        Ok(t) => {
            assert_eq!(t.encode(), s);
            true
        }
        Err(_) => false,
    }
}

fn check_labeled(kind: TreeKind, s: &str) -> bool {
    match LabeledTree::decode(kind, s) {
        Ok(t) => {
            assert_eq!(t.encode(), s);
            assert!(t.nodes().iter().enumerate().all(|(i, v)| v.parent.map_or(i == 0, |p| p < i)));
            true
        }
        Err(_) => false,
    }
}

fn check_rule(s: &str) -> bool {
    match s.parse::<BranchingOracle>() {
        Ok(o) => {
            assert_eq!(o.to_string().parse::<BranchingOracle>().unwrap(), o);
            true
        }
        Err(_) => false,
    }
}

fn check_json(s: &str) -> bool {
    match BranchingOracle::from_json(s) {
        Ok(o) => {
            assert!(o.children(&Address::root()) >= 1);
            true
        }
        Err(_) => false,
    }
}

fn check_rational(s: &str) -> bool {
    match s.parse::<Rational>() {
        Ok(r) => {
            assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
            true
        }
        Err(_) => false,
    }
}

fn check_address(s: &str) -> bool {
    match s.parse::<Address>() {
        Ok(a) => {
            assert_eq!(a.to_string().parse::<Address>().unwrap(), a);
            true
        }
        Err(_) => false,
    }
}

#[test]
fn corpus_seeds() {
    let accepted = |target: &str, check: fn(&str) -> bool| -> usize {
        seeds(target).iter().filter(|s| check(text(s))).count()
    };
    assert_eq!(accepted("decode_binary", check_binary), 3);
    assert_eq!(accepted("decode_ordered", check_ordered), 3);
    assert_eq!(accepted("decode_slotted", check_slotted), 3);
    assert_eq!(accepted("oracle_rule", check_rule), 2);
    assert_eq!(accepted("oracle_json", check_json), 2);
    assert_eq!(accepted("rational", check_rational), 3);
    assert_eq!(accepted("address", check_address), 2);
    let labeled = seeds("decode_labeled")
        .iter()
        .filter(|s| {
            let kind = [TreeKind::Binary, TreeKind::Ordered, TreeKind::Slotted][s[0] as usize % 3];
            check_labeled(kind, text(&s[1..]))
        })
        .count();
    assert_eq!(labeled, 4);
}

#[test]
fn deep_nesting_is_refused_not_overflowed() {
    let deep = "(".repeat(100_000);
    assert!(BinaryTree::decode(&deep).is_err());
    assert!(OrderedTree::decode(&deep).is_err());
    assert!(SlotTree::decode(&deep).is_err());
    assert!(LabeledTree::decode(TreeKind::Ordered, &"(:1".repeat(100_000)).is_err());
}

proptest! {
    #[test]
    fn decoders_never_panic(s in "[().,:0-9]{0,40}") {
        check_binary(&s);
        check_ordered(&s);
        check_slotted(&s);
        for kind in [TreeKind::Binary, TreeKind::Ordered, TreeKind::Slotted] {
            check_labeled(kind, &s);
        }
    }

    #[test]
    fn small_parsers_never_panic(s in "[-/:,a-z0-9{}\" ]{0,30}") {
        check_rule(&s);
        check_json(&s);
        check_rational(&s);
        check_address(&s);
    }
}
