fn main() {
    let out = shiftlab::cli::run(std::env::args_os());
    if !out.human.is_empty() {
        eprintln!("{}", out.human.trim_end());
    }
    if !out.json.is_empty() {
        println!("{}", out.json);
    }
    std::process::exit(out.code);
}
