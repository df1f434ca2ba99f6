#![no_main]

use libfuzzer_sys::fuzz_target;

use bellnum::real::Real;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // cap pathological lengths so the fuzzer explores structure, not size
    if s.len() > 4096 {
        return;
    }
    for bits in [64u32, 192] {
        if let Ok(v) = Real::parse_decimal(s, bits) {
            // formatting what we parsed must parse again to a nearby value
            let printed = v.to_decimal(v.roundtrip_digits());
            let back = Real::parse_decimal(&printed, bits).expect("own output parses");
            let diff = (&v - &back).abs();
            if !v.is_zero() {
                assert!(diff.cmp_real(&v.abs().scaled_eps(bits - 8)).is_le());
            } else {
                assert!(back.is_zero());
            }
        }
    }
});
