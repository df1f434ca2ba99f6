#![no_main]

use libfuzzer_sys::fuzz_target;

use bellnum_cli::parse_complex_literal;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 4096 {
        return;
    }
    if let Ok(z) = parse_complex_literal(s, 96) {
        // parsed parts are finite, normalized values
        let _ = z.norm_sqr();
    }
});
