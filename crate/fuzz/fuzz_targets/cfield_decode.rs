#![no_main]

use frft_riesz::io::{decode_cfield, encode_cfield};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(grid) = decode_cfield(data) {
        assert_eq!(encode_cfield(&grid).unwrap(), data);
    }
});
