fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("MUSTAFIN_LOG")).init();
    std::process::exit(mustafin::cli::main_with_args(std::env::args_os()));
}
