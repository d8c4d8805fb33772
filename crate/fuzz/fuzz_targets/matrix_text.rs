#![no_main]

use idcolor::matrix::ColorMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(m) = data.parse::<ColorMatrix>() {
        // Whatever parses must print back to text that parses to the same matrix.
        let again: ColorMatrix = m.to_string().parse().expect("writer output reparses");
        assert_eq!(again, m);
    }
});
