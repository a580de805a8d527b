#![no_main]
use hooklab::trees::Address;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(a) = data.parse::<Address>() {
        let again: Address = a.to_string().parse().unwrap();
        assert_eq!(again, a);
        assert_eq!(a.ancestors().count(), a.depth());
    }
});
