//! Numeric displacement `d(ρ) = x(b) − ρ` with an adaptive Dormand–Prince
//! integrator, cross-checked against the exact return-map series.
//!
//! For the focus `f = 1`, `g = t` the ratio `d(ρ)/ρ³` approaches
//! `r_3(1) = 2`; for the center `f = t³ − t`, `g = t` the displacement is at
//! rounding level.
//!
//! Run with `cargo run --release --example displacement`.

use abel_center::ode::{cross_validate, displacement_scan, Tolerances, DEFAULT_GRID};
use abel_center::returnmap::compute_return_series;
use abel_center::{AbelSystem, Poly};

fn scan(label: &str, sys: &AbelSystem) -> abel_center::Result<()> {
    let tol = Tolerances::default();
    let scan = displacement_scan(sys, &DEFAULT_GRID, &tol);
    println!("{label}");
    for (rho, d) in scan.displacements() {
        println!("  d({rho:+.3}) = {d:+.3e}");
    }
    if let Some(fit) = &scan.estimated_order {
        println!("  fitted order {} (slope {:.3})", fit.order, fit.slope);
    }
    let series = compute_return_series(sys, 12)?;
    let cv = cross_validate(sys, &series, &scan)?;
    match cv.expected_coefficient {
        Some(v) => {
            for (rho, ratio) in &cv.ratios {
                println!("  d/ρ^k at {rho:+.3}: {ratio:.5} (exact {v})");
            }
        }
        None => println!("  max |d| = {:.2e}", cv.max_abs_displacement.unwrap_or(0.0)),
    }
    Ok(())
}

fn main() -> abel_center::Result<()> {
    scan(
        "f = 1, g = t",
        &AbelSystem::on_unit_interval(Poly::from_ints(&[1]), Poly::from_ints(&[0, 1])),
    )?;
    scan(
        "f = t^3 - t, g = t",
        &AbelSystem::on_unit_interval(Poly::from_ints(&[0, -1, 0, 1]), Poly::from_ints(&[0, 1])),
    )?;
    Ok(())
}
