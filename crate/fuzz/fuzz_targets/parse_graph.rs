#![no_main]

use libfuzzer_sys::fuzz_target;
use tlwb_coxeter::CoxeterGraph;

fuzz_target!(|data: &str| {
    if let Ok(g) = data.parse::<CoxeterGraph>() {
        assert_eq!(g.to_string().parse::<CoxeterGraph>().unwrap(), g);
    }
});
