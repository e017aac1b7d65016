#![no_main]

use libfuzzer_sys::fuzz_target;
use tlwb_diagram::text::parse_raw;
use tlwb_diagram::{is_admissible, reduce, Diagram, RuleSet};

fuzz_target!(|data: &str| {
    let _ = parse_raw(data);
    let Ok(d) = data.parse::<Diagram>() else {
        return;
    };
    assert_eq!(d.to_string().parse::<Diagram>().unwrap(), d);
    let _ = is_admissible(&d);
    let _ = reduce(d.raw().clone(), &RuleSet::default());
});
