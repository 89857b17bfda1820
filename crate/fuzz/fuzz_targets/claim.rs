#![no_main]

use idcode::bounds::frames::Claim;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(claim) = text.parse::<Claim>() {
        let shown = claim.to_string();
        assert_eq!(shown.parse::<Claim>().unwrap(), claim);
    }
});
