fn main() -> std::process::ExitCode {
    lossgain::cli::run()
}
