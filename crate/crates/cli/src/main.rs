fn main() {
    std::process::exit(srs_atlas_cli::run(std::env::args_os()));
}
