//! The linear system on the even coefficients `a_0, a_2, a_4` of `f`
//! imposed by `m_0 = m_1 = m_2 = 0` when `g = t^{n-1}` on `[-1, 1]`.
//!
//! The determinant is compared with its closed form; a nonzero determinant
//! means the three moment conditions force the even part of a degree-5 `f`
//! to vanish.
//!
//! Run with `cargo run --example moment_matrix`.

use abel_center::arith::format_short;
use abel_center::system::{
    closed_form_determinant, moment_linear_system, DEFAULT_EVEN_DEGREES, DEFAULT_MOMENT_INDICES,
};

fn main() -> abel_center::Result<()> {
    for n in [2, 4, 6, 8] {
        let mm = moment_linear_system(n, &DEFAULT_EVEN_DEGREES, &DEFAULT_MOMENT_INDICES)?;
        let det = mm.determinant.expect("square system");
        println!("n = {n}");
        for row in &mm.normalized {
            let cells: Vec<String> = row.iter().map(format_short).collect();
            println!("  [{}]", cells.join(", "));
        }
        println!("  det    = {}", format_short(&det));
        println!("  closed = {}", format_short(&closed_form_determinant(n)));
        println!("  kernel dimension = {}", mm.kernel.len());
    }
    Ok(())
}
