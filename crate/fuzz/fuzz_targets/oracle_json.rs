#![no_main]
use hooklab::enumerate::{Branching, BranchingOracle};
use hooklab::trees::Address;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(o) = BranchingOracle::from_json(data) {
        if let BranchingOracle::Table { entries, .. } = &o {
            for (a, &k) in entries {
                assert_eq!(o.children(a), k);
            }
        }
        assert!(o.children(&Address::root()) >= 1);
    }
});
