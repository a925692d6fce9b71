use std::io::Write;

fn main() {
    let out = derham_cli::run(std::env::args_os());
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        let _ = writeln!(std::io::stderr(), "{}", out.stderr.trim_end());
    }
    std::process::exit(out.code);
}
