fn main() {
    std::process::exit(biratio::run(std::env::args_os()));
}
