#![no_main]

use libfuzzer_sys::fuzz_target;
use tlwb_fullcomm::Word;

fuzz_target!(|data: &str| {
    if let Ok(w) = data.parse::<Word>() {
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }
});
