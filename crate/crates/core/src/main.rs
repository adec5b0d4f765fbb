fn main() {
    std::process::exit(nash_fpt::cli::cli_main(std::env::args_os()));
}
