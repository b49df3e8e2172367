fn main() {
    std::process::exit(lnp::cli::run(std::env::args_os()));
}
