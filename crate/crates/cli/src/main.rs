fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let result = caec_cli::run(&args);
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    std::process::exit(result.code);
}
