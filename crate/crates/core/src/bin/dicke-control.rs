fn main() {
    std::process::exit(dicke_control::cli::cli_main());
}
