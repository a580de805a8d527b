#![no_main]
use hooklab::enumerate::{Branching, BranchingOracle};
use hooklab::trees::Address;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(o) = data.parse::<BranchingOracle>() {
        let again: BranchingOracle = o.to_string().parse().unwrap();
        assert_eq!(again, o);
        for depth in 0..6 {
            assert!(o.children(&Address::from(vec![0; depth])) >= 1);
        }
    }
});
