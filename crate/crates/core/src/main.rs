use std::io::{self, Write};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = afftrans::cli::run(&args, &mut out, &mut stderr.lock());
    let _ = out.flush();
    std::process::exit(code);
}
