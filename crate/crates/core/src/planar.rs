//! Reduction of `ẋ = −y + P_n(x, y)`, `ẏ = x + Q_n(x, y)` (homogeneous
//! `P_n`, `Q_n` of degree `n`) to a trigonometric Abel equation.
//!
//! In polar coordinates `ṙ = A(θ) rⁿ`, `θ̇ = 1 + B(θ) r^{n−1}` with
//!
//! ```text
//! A = cos θ · P_n(cos θ, sin θ) + sin θ · Q_n(cos θ, sin θ)
//! B = cos θ · Q_n(cos θ, sin θ) − sin θ · P_n(cos θ, sin θ)
//! ```
//!
//! and `γ = r^{n−1} / (1 + B r^{n−1})` satisfies
//! `γ' = −(n−1)AB γ³ + [(n−1)A − B'] γ²`.
//!
//! The change of variables is only valid where `1 + B r^{n−1} > 0`; that
//! region is not checked here.

use serde::{Deserialize, Serialize};

use crate::arith::{int, serde_rational_vec, Rational};
use crate::error::{Error, ParseError, Result};
use crate::system::AbelSystem;
use crate::trig::TrigPoly;

/// Coefficients are ordered by descending power of `x`: entry `j` multiplies
/// `x^{n−j} y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PlanarRepr")]
pub struct PlanarSystem {
    pub n: usize,
    #[serde(rename = "P", with = "serde_rational_vec")]
    pub p: Vec<Rational>,
    #[serde(rename = "Q", with = "serde_rational_vec")]
    pub q: Vec<Rational>,
}

#[derive(Deserialize)]
struct PlanarRepr {
    n: usize,
    #[serde(rename = "P", with = "serde_rational_vec")]
    p: Vec<Rational>,
    #[serde(rename = "Q", with = "serde_rational_vec")]
    q: Vec<Rational>,
}

impl TryFrom<PlanarRepr> for PlanarSystem {
    type Error = ParseError;
    fn try_from(r: PlanarRepr) -> std::result::Result<Self, ParseError> {
        PlanarSystem::new(r.n, r.p, r.q).map_err(|e| ParseError::Schema(e.to_string()))
    }
}

impl PlanarSystem {
    pub fn new(n: usize, p: Vec<Rational>, q: Vec<Rational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("degree n = {n} must be at least 2")));
        }
        if p.len() != n + 1 || q.len() != n + 1 {
            return Err(Error::Domain(format!(
                "homogeneous degree-{n} forms need {} coefficients, got P: {}, Q: {}",
                n + 1,
                p.len(),
                q.len()
            )));
        }
        Ok(PlanarSystem { n, p, q })
    }

    pub fn from_ints(n: usize, p: &[i64], q: &[i64]) -> Result<Self> {
        Self::new(
            n,
            p.iter().map(|&c| int(c)).collect(),
            q.iter().map(|&c| int(c)).collect(),
        )
    }
}

/// `Σ_j coeffs[j] · cos^{n−j} θ · sin^j θ` in Fourier form.
pub fn trig_expand_homogeneous(coeffs: &[Rational], n: usize) -> Result<TrigPoly> {
    if coeffs.len() != n + 1 {
        return Err(Error::Domain(format!(
            "expected {} coefficients for degree {n}, got {}",
            n + 1,
            coeffs.len()
        )));
    }
    let cos = TrigPoly::cos_term(int(1), 1);
    let sin = TrigPoly::sin_term(int(1), 1);
    let mut cos_pows = vec![TrigPoly::constant(int(1))];
    let mut sin_pows = vec![TrigPoly::constant(int(1))];
    for k in 1..=n {
        cos_pows.push(&cos_pows[k - 1] * &cos);
        sin_pows.push(&sin_pows[k - 1] * &sin);
    }
    Ok(coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .fold(TrigPoly::zero(), |acc, (j, c)| {
            &acc + &(&cos_pows[n - j] * &sin_pows[j]).scale(c)
        }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarReduction {
    #[serde(rename = "A")]
    pub a: TrigPoly,
    #[serde(rename = "B")]
    pub b: TrigPoly,
    pub system: AbelSystem,
}

/// Computes `A`, `B` and the Abel system with `f = −(n−1)AB`,
/// `g = (n−1)A − B'` on `[0, 2π]`.
pub fn reduce_planar(sys: &PlanarSystem) -> Result<PlanarReduction> {
    let n = sys.n;
    let p = trig_expand_homogeneous(&sys.p, n)?;
    let q = trig_expand_homogeneous(&sys.q, n)?;
    let cos = TrigPoly::cos_term(int(1), 1);
    let sin = TrigPoly::sin_term(int(1), 1);
    let a = &(&cos * &p) + &(&sin * &q);
    let b = &(&cos * &q) - &(&sin * &p);
    let m = int(n as i64 - 1);
    let f = (&a * &b).scale(&-m.clone());
    let g = &a.scale(&m) - &b.derivative();
    Ok(PlanarReduction {
        a,
        b,
        system: AbelSystem::trigonometric(f, g),
    })
}
