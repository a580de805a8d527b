#![no_main]
use hooklab::trees::{OrderedTree, RootedTree};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(t) = OrderedTree::decode(data) {
        assert_eq!(t.encode(), data);
        let hooks = t.skeleton().hooks();
        assert_eq!(hooks[0], t.len());
    }
});
