#![no_main]
use hooklab::exact::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if data.len() > 256 {
        return;
    }
    if let Ok(r) = data.parse::<Rational>() {
        let again: Rational = r.to_string().parse().unwrap();
        assert_eq!(again, r);
        assert!(r.denom() > &0.into());
    }
});
