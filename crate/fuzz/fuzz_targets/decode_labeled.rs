#![no_main]
use hooklab::trees::{LabeledTree, TreeKind};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let kind = match selector % 3 {
        0 => TreeKind::Binary,
        1 => TreeKind::Ordered,
        _ => TreeKind::Slotted,
    };
    if let Ok(t) = LabeledTree::decode(kind, text) {
        assert_eq!(t.encode(), text);
        for (i, v) in t.nodes().iter().enumerate() {
            if let Some(p) = v.parent {
                assert!(p < i);
            }
        }
    }
});
