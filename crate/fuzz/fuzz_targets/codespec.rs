#![no_main]

use idcode::codes::{parse_codespec, serialize_codespec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(code) = parse_codespec(text) {
        let out = serialize_codespec(&code);
        let again = parse_codespec(&out).expect("serialized codespec parses");
        assert_eq!(again, code);
        assert_eq!(serialize_codespec(&again), out);
    }
});
