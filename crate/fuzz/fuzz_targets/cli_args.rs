#![no_main]

use clap::Parser;
use idcolor::cli::{self, Args, Command};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let argv = std::iter::once("idcolor").chain(data.split_whitespace());
    let Ok(args) = Args::try_parse_from(argv) else {
        return;
    };
    // Only the pure commands run; the rest touch the filesystem or may be slow.
    if let Command::Decide { .. } = args.command {
        let out = cli::execute(args);
        assert!(matches!(out.code, 0 | 1 | 2));
        assert!(out.stdout.ends_with('\n'));
    }
});
