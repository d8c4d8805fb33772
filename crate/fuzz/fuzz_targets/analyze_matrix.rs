#![no_main]

use idcolor::autocheck::analyze;
use idcolor::matrix::ColorMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(m) = data.parse::<ColorMatrix>() else {
        return;
    };
    if m.rows() * m.cols() > 64 {
        return;
    }
    if let Ok(report) = analyze(&m) {
        if let Some(w) = report.witness() {
            assert!(w.preserves(&m));
            assert!(!w.is_identity());
        }
    }
});
