#![no_main]

use idcode::lattice::SqRadius;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = text.parse::<SqRadius>() {
        assert_eq!(r.to_string().parse::<SqRadius>().unwrap(), r);
        let k = r.floor_root() as i128;
        let (n, d) = (r.num() as i128, r.den() as i128);
        assert!(k * k * d <= n && (k + 1) * (k + 1) * d > n);
        assert!(r.floor() <= r.ceil() && r.ceil() - r.floor() <= 1);
    }
});
