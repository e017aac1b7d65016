#![no_main]

use libfuzzer_sys::fuzz_target;
use tlwb_diagram::RuleSet;

fuzz_target!(|data: &str| {
    let _ = data.parse::<RuleSet>();
});
