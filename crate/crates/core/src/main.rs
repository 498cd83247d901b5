use std::io::{self, Write};

fn main() {
    let verbose = std::env::args().filter(|a| a == "-v" || a == "--verbose").count();
    let level = ["warn", "info", "debug"][verbose.min(2)];
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .target(env_logger::Target::Stderr)
        .init();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = numtope::cli::run(std::env::args_os(), &mut out);
    let _ = out.flush();
    std::process::exit(code);
}
