fn main() {
    let stdout = std::io::stdout();
    // unlocked: scan workers report progress on stderr from other threads
    let mut stderr = std::io::stderr();
    let code = h3euler::cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr);
    std::process::exit(code);
}
