fn main() {
    std::process::exit(csbm_attention::experiments::cli::cli_main(std::env::args_os()));
}
