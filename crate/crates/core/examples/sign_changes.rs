//! Sturm-sequence sign-change counting and the moment-propagation check
//! for `g = t^{n-1}` on `[-1, 1]`.
//!
//! When the even part `p(t²)` of `f` changes sign at most twice on `(0, 1)`
//! and `m_0 = m_1 = m_2 = 0`, every higher moment vanishes too.
//!
//! Run with `cargo run --example sign_changes`.

use abel_center::arith::rat;
use abel_center::signs::{even_odd_split, moment_propagation_check, psi_eval, sturm_sign_changes};
use abel_center::{Error, Poly};

fn main() -> abel_center::Result<()> {
    // (t - 1/4)(t - 1/2)^2 (t - 3/4): the double root is not a sign change
    let p = &(&Poly::from_ints(&[-1, 4]) * &Poly::from_ints(&[-3, 4]))
        * &Poly::from_ints(&[-1, 2]).pow(2);
    let report = sturm_sign_changes(&p, &rat(0, 1), &rat(1, 1))?;
    println!("p = {p}");
    println!("sign changes on (0, 1): {}", report.count);
    for (lo, hi) in &report.intervals {
        println!("  one change in ({}, {})", lo.0, hi.0);
    }

    let f = Poly::from_ints(&[0, -1, 0, 1, 0, 3]);
    let split = even_odd_split(&f);
    println!(
        "f = {f}: even part p = {}, odd part q = {}",
        split.p, split.q
    );
    let e = Poly::from_ints(&[1, 0, -3]);
    for u in [rat(-1, 2), rat(-1, 4), rat(0, 1)] {
        println!("psi[{e}]({u}) = {:?}", psi_eval(&e, 2, &u)?);
    }
    let checked = moment_propagation_check(&f, 2, 12)?;
    println!("odd f: moments vanish through m_{}", checked.max_k);

    match moment_propagation_check(&Poly::from_ints(&[1]), 2, 12) {
        Err(Error::HypothesisFailed(why)) => println!("f = 1: hypothesis fails ({why})"),
        other => println!("f = 1: unexpected {other:?}"),
    }
    Ok(())
}
