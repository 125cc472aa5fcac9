#![no_main]

use frft_riesz::crypto::EncryptionKey;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(key) = EncryptionKey::parse(text) {
        let again = EncryptionKey::parse(&key.to_text()).unwrap();
        assert!(again.same_bits(&key));
    }
});
