#![no_main]
use hooklab::trees::SlotTree;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(t) = SlotTree::decode(data) {
        assert_eq!(t.encode(), data);
        assert_eq!(SlotTree::decode(&t.encode()).unwrap(), t);
    }
});
