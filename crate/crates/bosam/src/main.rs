use std::process::exit;

fn main() {
    exit(bosam::cli::run(std::env::args_os()));
}
