//! Searching for a composition witness: `F = F̃∘W`, `G = G̃∘W` with
//! `W(a) = W(b)`, which makes the system a center.
//!
//! Loads `examples/data/composite.json` (built from `W = t² + t` on
//! `[-1, 0]`) and also shows a system with no witness.
//!
//! Run with `cargo run --example composition`.

use abel_center::pcc::{check_pcc, right_factor, verify_witness};
use abel_center::returnmap::compute_return_series;
use abel_center::{AbelSystem, Poly};

fn report(label: &str, sys: &AbelSystem) -> abel_center::Result<()> {
    println!("{label}");
    match check_pcc(sys)? {
        Some(w) => {
            println!("  W = {}", w.w);
            println!("  F = ({})∘W, G = ({})∘W", w.f_tilde, w.g_tilde);
            println!("  W(a) = W(b) = {}", w.common_value);
            println!("  independently verified: {}", verify_witness(sys, &w)?);
            let series = compute_return_series(sys, 10)?;
            println!(
                "  r_k(b) = 0 for k <= 10: {}",
                series.center_order().is_none()
            );
        }
        None => println!("  no composition witness"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/composite.json"
    ))?;
    let sys: AbelSystem = serde_json::from_str(&text)?;
    report("composite system", &sys)?;

    let p = Poly::from_ints(&[0, 0, 1, 2, 1]);
    println!("right factor of degree 2 of {p}: {}", right_factor(&p, 2)?);

    let plain = AbelSystem::on_unit_interval(Poly::from_ints(&[1]), Poly::from_ints(&[0, 1]));
    report("f = 1, g = t", &plain)?;
    Ok(())
}
