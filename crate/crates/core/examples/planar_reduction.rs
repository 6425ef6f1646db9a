//! Reducing a planar system `ẋ = −y + P_n`, `ẏ = x + Q_n` with homogeneous
//! `P_n`, `Q_n` to a trigonometric Abel equation.
//!
//! Loads `examples/data/planar_quadratic.json` (`P = x²`, `Q = 0`).
//!
//! Run with `cargo run --example planar_reduction`.

use abel_center::planar::{reduce_planar, PlanarSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/planar_quadratic.json"
    );
    let planar: PlanarSystem = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let red = reduce_planar(&planar)?;
    println!("A(θ) = {}", red.a);
    println!("B(θ) = {}", red.b);
    println!("{}", serde_json::to_string_pretty(&red.system)?);
    match red.system.moment_report(4) {
        Ok(m) => println!(
            "moments: {:?}",
            m.moments
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        ),
        Err(e) => println!("moments undefined: {e}"),
    }
    println!("(valid only where 1 + B(θ) r^(n-1) > 0)");
    Ok(())
}
