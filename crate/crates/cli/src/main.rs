fn main() {
    std::process::exit(tlwb::run(std::env::args_os()));
}
