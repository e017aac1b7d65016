#![no_main]

use libfuzzer_sys::fuzz_target;
use tlwb_diagram::{DiagramElement, RuleSet};

fuzz_target!(|data: &str| {
    let Ok(a) = data.parse::<DiagramElement>() else {
        return;
    };
    assert_eq!(a.to_string().parse::<DiagramElement>().unwrap(), a);
    let _ = a.reduced(&RuleSet::default());
});
