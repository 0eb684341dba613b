fn main() {
    std::process::exit(sextic_heun::cli::main_run());
}
