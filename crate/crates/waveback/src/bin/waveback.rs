//! Thin binary wrapper: all behaviour lives in [`waveback::app`].

fn main() {
    std::process::exit(waveback::app::run_from(std::env::args()));
}
