#![no_main]

use libfuzzer_sys::fuzz_target;
use tlwb_coxeter::CoxeterGraph;
use tlwb_tl::TlElement;

fuzz_target!(|data: &str| {
    let Ok(a) = data.parse::<TlElement>() else {
        return;
    };
    assert_eq!(a.to_string().parse::<TlElement>().unwrap(), a);
    if data.len() < 256 {
        let g = CoxeterGraph::affine_d(2).unwrap();
        let _ = a.canonicalize(&g);
    }
});
