#![no_main]
use hooklab::trees::{BinaryTree, RootedTree};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(t) = BinaryTree::decode(data) {
        assert_eq!(t.encode(), data);
        let full = t.completion();
        assert!(full.is_complete());
        assert_eq!(full.len(), 2 * t.len() + 1);
    }
});
