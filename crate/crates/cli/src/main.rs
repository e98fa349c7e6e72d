fn main() {
    let (code, out) = rplace_cli::run(std::env::args());
    if code == rplace_cli::EXIT_OK {
        println!("{out}");
    } else {
        eprintln!("{out}");
    }
    std::process::exit(code);
}
