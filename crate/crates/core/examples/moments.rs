//! Exact moments `m_k = ∫ f·G^k` of a trigonometric Abel system.
//!
//! The system `f = sin θ − sin 2θ + sin 3θ`, `g = cos θ + 2 cos 2θ` has
//! vanishing `m_0, m_1, m_2` but `m_3 = π/2`, so it is not a center even
//! though the first three moments vanish.
//!
//! Run with `cargo run --example moments`.

use abel_center::arith::int;
use abel_center::{AbelSystem, TrigPoly};

fn main() -> abel_center::Result<()> {
    let f = TrigPoly::new(int(0), vec![], vec![int(1), int(-1), int(1)]);
    let g = TrigPoly::new(int(0), vec![int(1), int(2)], vec![]);
    let sys = AbelSystem::trigonometric(f, g);

    println!("∫ g over a period = {}", sys.g_integral());
    let report = sys.moment_report(6)?;
    for (k, m) in report.moments.iter().enumerate() {
        println!("m_{k} = {m}  (≈ {:.6})", m.to_f64());
    }
    match report.first_nonzero_index {
        Some(k) => println!("first nonzero moment: m_{k}"),
        None => println!("all moments up to m_6 vanish"),
    }
    Ok(())
}
