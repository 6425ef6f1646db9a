//! Polynomial composition condition: find `W` with `F = F̃∘W`, `G = G̃∘W`
//! and `W(a) = W(b)`, which is sufficient for a center.
//!
//! `W` is reported in normal form (monic, zero constant term). Any affine
//! change `λW + μ` is absorbed into `F̃` and `G̃` and leaves `W(a) = W(b)`
//! unchanged, so the normal form loses nothing.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{int, Degree, Poly, Rational};
use crate::error::{Error, Result};
use crate::system::AbelSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PccWitness {
    #[serde(rename = "W")]
    pub w: Poly,
    #[serde(rename = "Ftilde")]
    pub f_tilde: Poly,
    #[serde(rename = "Gtilde")]
    pub g_tilde: Poly,
    /// `W(a) = W(b)`.
    #[serde(with = "crate::arith::serde_short")]
    pub common_value: Rational,
}

impl PccWitness {
    /// True when one of the outer polynomials is constant (so `f = 0` or `g = 0`).
    pub fn is_degenerate(&self) -> bool {
        self.f_tilde.is_constant() || self.g_tilde.is_constant()
    }
}

/// The monic `W` with `W(0) = 0`, `deg W = d` and `P = Q∘W` for some `Q`.
///
/// The top `d` coefficients of `P` fix `W` (they must agree with those of
/// `lc(P)·W^e`, `e = deg P / d`), then a `W`-adic expansion confirms it.
pub fn right_factor(p: &Poly, d: usize) -> Result<Poly> {
    if d < 2 {
        return Err(Error::Domain(format!(
            "factor degree {d} must be at least 2"
        )));
    }
    let m = match p.degree() {
        Degree::Finite(m) if m >= 1 => m,
        other => {
            return Err(Error::DegreeMismatch {
                degree: d,
                poly_degree: other.to_string(),
            })
        }
    };
    if m % d != 0 {
        return Err(Error::DegreeMismatch {
            degree: d,
            poly_degree: m.to_string(),
        });
    }
    let e = m / d;
    let target = p.monic();
    let mut w = vec![Rational::zero(); d + 1];
    w[d] = Rational::one();
    for j in 1..d {
        let partial = Poly::new(w.clone()).pow(e as u32);
        let residue = target.coeff(m - j) - partial.coeff(m - j);
        w[d - j] = residue / int(e as i64);
    }
    let w = Poly::new(w);
    match decompose_over(p, &w) {
        Some(_) => Ok(w),
        None => Err(Error::NoFactor { degree: d }),
    }
}

/// `Q` with `P = Q∘W`, via repeated division by `W`; `None` if some
/// remainder is not a constant.
pub fn decompose_over(p: &Poly, w: &Poly) -> Option<Poly> {
    if w.is_constant() {
        return None;
    }
    let mut digits = Vec::new();
    let mut rest = p.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(w);
        if !r.is_constant() {
            return None;
        }
        digits.push(r.coeff(0));
        rest = q;
    }
    Some(Poly::new(digits))
}

fn divisors_desc(n: usize) -> Vec<usize> {
    (2..=n).rev().filter(|d| n.is_multiple_of(*d)).collect()
}

/// Searches for a composition witness, preferring the largest `deg W`.
pub fn check_pcc(sys: &AbelSystem) -> Result<Option<PccWitness>> {
    let p = sys.as_poly()?;
    let big_f = p.primitive_f();
    let big_g = p.primitive_g();

    if big_f.is_zero() && big_g.is_zero() {
        // any W with W(a) = W(b) works; take the quadratic one
        let w = Poly::new(vec![Rational::zero(), -(&p.a + &p.b), Rational::one()]);
        let common_value = w.eval(&p.a);
        return Ok(Some(PccWitness {
            w,
            f_tilde: Poly::zero(),
            g_tilde: Poly::zero(),
            common_value,
        }));
    }

    let degree_pool = match (big_f.degree().finite(), big_g.degree().finite()) {
        (Some(df), Some(dg)) => df.gcd(&dg),
        (Some(df), None) => df,
        (None, Some(dg)) => dg,
        (None, None) => unreachable!(),
    };
    let sources: Vec<&Poly> = [&big_f, &big_g]
        .into_iter()
        .filter(|q| !q.is_zero())
        .collect();

    for d in divisors_desc(degree_pool) {
        for src in &sources {
            let Ok(w) = right_factor(src, d) else {
                continue;
            };
            if w.eval(&p.a) != w.eval(&p.b) {
                continue;
            }
            if let (Some(f_tilde), Some(g_tilde)) =
                (decompose_over(&big_f, &w), decompose_over(&big_g, &w))
            {
                let common_value = w.eval(&p.a);
                return Ok(Some(PccWitness {
                    w,
                    f_tilde,
                    g_tilde,
                    common_value,
                }));
            }
        }
    }
    Ok(None)
}

/// Recomposes exactly and checks `W(a) = W(b)` and `deg W >= 2`.
pub fn verify_witness(sys: &AbelSystem, witness: &PccWitness) -> Result<bool> {
    let p = sys.as_poly()?;
    let ok = witness.w.degree() >= Degree::Finite(2)
        && witness.f_tilde.compose(&witness.w) == p.primitive_f()
        && witness.g_tilde.compose(&witness.w) == p.primitive_g()
        && witness.w.eval(&p.a) == witness.w.eval(&p.b);
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn right_factor_examples() {
        assert_eq!(
            right_factor(&p(&[0, 0, 0, 0, 1]), 2).unwrap(),
            p(&[0, 0, 1])
        );
        assert_eq!(
            right_factor(&p(&[0, 0, 0, 2, 0, 0, 1]), 3).unwrap(),
            p(&[0, 0, 0, 1])
        );
        assert!(matches!(
            right_factor(&p(&[0, 0, 0, 1, 1]), 2),
            Err(Error::NoFactor { degree: 2 })
        ));
        assert!(matches!(
            right_factor(&p(&[0, 0, 0, 1]), 2),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn right_factor_normalizes_affine_images() {
        // P = 3(2W + 5)^2 - (2W + 5), W = t^2 - t
        let w = p(&[0, -1, 1]);
        let inner = &w.scale(&int(2)) + &Poly::constant(int(5));
        let outer = p(&[0, -1, 3]);
        let big = outer.compose(&inner);
        assert_eq!(right_factor(&big, 2).unwrap(), w);
    }

    #[test]
    fn witness_examples() {
        let sys = AbelSystem::on_unit_interval(p(&[0, 0, 0, 4]), p(&[0, 0, 0, 0, 0, 6]));
        let w = check_pcc(&sys).unwrap().unwrap();
        assert_eq!(w.w, p(&[0, 0, 1]));
        assert_eq!(w.common_value, int(1));
        // F = t^4 - 1 and G = t^6 - 1 since primitives vanish at -1
        assert_eq!(w.f_tilde, p(&[-1, 0, 1]));
        assert_eq!(w.g_tilde, p(&[-1, 0, 0, 1]));
        assert!(verify_witness(&sys, &w).unwrap());

        let odd = AbelSystem::on_unit_interval(p(&[0, -1, 0, 1]), p(&[0, 1]));
        let w = check_pcc(&odd).unwrap().unwrap();
        assert_eq!(w.w, p(&[0, 0, 1]));

        let focus = AbelSystem::on_unit_interval(p(&[1]), p(&[0, 1]));
        assert_eq!(check_pcc(&focus).unwrap(), None);
    }

    #[test]
    fn verify_rejects_tampering() {
        let sys = AbelSystem::on_unit_interval(p(&[0, -1, 0, 1]), p(&[0, 1]));
        let good = check_pcc(&sys).unwrap().unwrap();
        let mut bad = good.clone();
        bad.w = p(&[1, 0, 1]);
        assert!(!verify_witness(&sys, &bad).unwrap());

        let zero = AbelSystem::on_unit_interval(Poly::zero(), Poly::zero());
        let trivial = PccWitness {
            w: p(&[0, 0, 1]),
            f_tilde: Poly::zero(),
            g_tilde: Poly::zero(),
            common_value: int(1),
        };
        assert!(verify_witness(&zero, &trivial).unwrap());
    }

    #[test]
    fn zero_system_gets_quadratic_witness() {
        let sys = AbelSystem::polynomial(Poly::zero(), Poly::zero(), int(0), int(2)).unwrap();
        let w = check_pcc(&sys).unwrap().unwrap();
        assert_eq!(w.w, p(&[0, -2, 1]));
        assert!(verify_witness(&sys, &w).unwrap());
    }

    #[test]
    fn one_sided_systems() {
        // f = 0: PCC reduces to G alone
        let sys = AbelSystem::on_unit_interval(Poly::zero(), p(&[0, 2, 0, 4]));
        let w = check_pcc(&sys).unwrap().unwrap();
        assert!(w.f_tilde.is_zero());
        assert!(w.is_degenerate());
        assert!(verify_witness(&sys, &w).unwrap());
        // g = 0 with F = (t^2 - 1)^2 on [-1, 1]
        let f = p(&[-1, 0, 1]).pow(2).derivative();
        let sys = AbelSystem::on_unit_interval(f, Poly::zero());
        let w = check_pcc(&sys).unwrap().unwrap();
        assert!(w.g_tilde.is_zero());
        assert!(verify_witness(&sys, &w).unwrap());
    }

    #[test]
    fn endpoint_condition_is_enforced() {
        // F = t^4 + ..., W = t^2 - t on [0, 1] but the interval is [0, 2]
        let w = p(&[0, -1, 1]);
        let f = w.pow(2).derivative();
        let g = w.pow(3).derivative();
        let off = AbelSystem::polynomial(f.clone(), g.clone(), int(0), int(2)).unwrap();
        assert_eq!(check_pcc(&off).unwrap(), None);
        let on = AbelSystem::polynomial(f, g, int(0), int(1)).unwrap();
        let found = check_pcc(&on).unwrap().unwrap();
        assert_eq!(found.w, w);
        assert_eq!(found.common_value, rat(0, 1));
    }

    #[test]
    fn trig_rejected() {
        let sys = AbelSystem::trigonometric(crate::TrigPoly::zero(), crate::TrigPoly::zero());
        assert!(check_pcc(&sys).is_err());
    }
}
