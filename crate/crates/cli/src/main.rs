fn main() {
    std::process::exit(parry_pascal_cli::main_with_env());
}
