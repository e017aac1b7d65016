#![no_main]

use libfuzzer_sys::fuzz_target;
use tlwb_ring::DeltaPoly;

fuzz_target!(|data: &str| {
    if let Ok(p) = data.parse::<DeltaPoly>() {
        assert_eq!(p.to_string().parse::<DeltaPoly>().unwrap(), p);
    }
});
