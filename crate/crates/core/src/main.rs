fn main() {
    let (code, out) = ramified::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
