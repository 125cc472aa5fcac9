#![no_main]

use frft_riesz::{parse_angle, parse_angle_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(a) = parse_angle(text) {
        assert!(a.radians().is_finite());
        assert!(parse_angle(&a.to_string()).unwrap().same_bits(&a));
    }
    let _ = parse_angle_list(text);
});
