#![no_main]

use libfuzzer_sys::fuzz_target;

use bellnum_cli::record::OutputRecord;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 1 << 16 {
        return;
    }
    if let Ok(rec) = OutputRecord::from_json(s) {
        // emit/parse is the identity on accepted records
        let json = rec.to_json();
        let back = OutputRecord::from_json(&json).expect("own output parses");
        assert_eq!(back, rec);
        assert_eq!(back.to_json(), json);
    }
});
