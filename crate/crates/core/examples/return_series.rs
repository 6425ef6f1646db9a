//! Exact return-map coefficients `x(t, ρ) = ρ + Σ r_k(t) ρ^k`.
//!
//! Prints `r_k(1)` for a focus (`f = 1`, `g = t`) and for a center
//! (`f = t³ − t`, `g = t`), together with the integral identities the
//! coefficients must satisfy and the symbolic residual of the truncation.
//!
//! Run with `cargo run --example return_series`.

use abel_center::arith::format_short;
use abel_center::returnmap::{
    compute_return_series, h_series_identities, low_order_identities, residual,
};
use abel_center::{AbelSystem, Poly};

fn show(label: &str, sys: &AbelSystem, order: usize) -> abel_center::Result<()> {
    let series = compute_return_series(sys, order)?;
    println!("{label}");
    for k in 2..=order {
        println!("  r_{k}(b) = {}", format_short(series.endpoint(k)));
    }
    match series.center_order() {
        Some(k) => println!("  first nonzero coefficient at order {k}"),
        None => println!("  every coefficient up to order {order} vanishes"),
    }
    let mut checks = low_order_identities(sys, &series)?.to_vec();
    checks.extend(h_series_identities(sys, &series)?);
    let held = checks.iter().filter(|c| c.holds()).count();
    println!(
        "  integral identities: {held}/{} hold exactly",
        checks.len()
    );
    let clean = residual(sys, &series)?.iter().all(Poly::is_zero);
    println!("  residual vanishes through ρ^{order}: {clean}");
    Ok(())
}

fn main() -> abel_center::Result<()> {
    let focus = AbelSystem::on_unit_interval(Poly::from_ints(&[1]), Poly::from_ints(&[0, 1]));
    show("f = 1, g = t", &focus, 6)?;
    let center =
        AbelSystem::on_unit_interval(Poly::from_ints(&[0, -1, 0, 1]), Poly::from_ints(&[0, 1]));
    show("f = t^3 - t, g = t", &center, 10)?;
    Ok(())
}
