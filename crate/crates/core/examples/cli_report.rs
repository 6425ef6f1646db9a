//! Driving the `abel-center` command line in-process: a full report on
//! `examples/data/odd_cubic.json` in the flattened text format.
//!
//! The same report is available from the binary:
//! `cargo run --release -- full --format text crates/core/examples/data/odd_cubic.json`.

fn main() {
    let input = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/odd_cubic.json");
    let args = ["abel-center", "full", "--format", "text", input];
    let outcome = abel_center::cli::run(args, &mut std::io::empty());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
