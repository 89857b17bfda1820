#![no_main]

use idcode_cli::parse_window;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((w, h)) = parse_window(text) {
        assert!(w >= 1 && h >= 1);
        assert_eq!(parse_window(&format!("{w}x{h}")), Ok((w, h)));
    }
});
