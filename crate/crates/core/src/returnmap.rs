//! Exact solution series `x(t, ρ) = ρ + Σ_{k≥2} r_k(t) ρ^k` of a polynomial
//! Abel equation and the center certificates read off from it.
//!
//! Substituting the series into `x' = f x³ + g x²` with `c_1 = 1`,
//! `c_k = r_k` gives
//!
//! ```text
//! r_m(t) = ∫_a^t [ f · Σ_{i+j+l=m} c_i c_j c_l + g · Σ_{i+j=m} c_i c_j ] ds
//! ```
//!
//! The quadratic convolutions are memoized so the cubic one is a single
//! sum `Σ_i c_i · S2_{m-i}`.

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{Poly, Rational};
use crate::error::{Error, Result};
use crate::system::{AbelSystem, PolySystem};

pub const DEFAULT_ORDER: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReturnMapSeries {
    pub order: usize,
    /// `r_2, …, r_N`.
    pub r: Vec<Poly>,
    /// `r_k(b)` for `k = 2..=N`.
    #[serde(with = "crate::arith::serde_short_vec")]
    pub endpoint_values: Vec<Rational>,
    /// `[∫g, ∫f, ∫f·r_2, …, ∫f·r_N]`, the ρ-expansion of `H(b, ρ)`.
    #[serde(with = "crate::arith::serde_short_vec")]
    pub h_coeffs: Vec<Rational>,
}

impl ReturnMapSeries {
    /// `r_k` for `2 <= k <= order`.
    pub fn r_k(&self, k: usize) -> &Poly {
        &self.r[k - 2]
    }

    pub fn endpoint(&self, k: usize) -> &Rational {
        &self.endpoint_values[k - 2]
    }

    /// Least `k` with `r_k(b) != 0`; `None` means a center up to `order`.
    pub fn center_order(&self) -> Option<usize> {
        self.endpoint_values
            .iter()
            .position(|v| !v.is_zero())
            .map(|i| i + 2)
    }
}

/// Free-function form of [`ReturnMapSeries::center_order`].
pub fn center_order(series: &ReturnMapSeries) -> Option<usize> {
    series.center_order()
}

pub fn compute_return_series(sys: &AbelSystem, order: usize) -> Result<ReturnMapSeries> {
    let p = sys.as_poly()?;
    if order < 2 {
        return Err(Error::Domain(format!(
            "series order {order} must be at least 2"
        )));
    }
    // c[k] for k = 0..=order, c[0] unused
    let mut c: Vec<Poly> = vec![Poly::zero(), Poly::one()];
    // s2[m] = Σ_{i+j=m} c_i c_j
    let mut s2: Vec<Poly> = vec![Poly::zero(); order + 1];
    for m in 2..=order {
        s2[m] = quadratic_convolution(&c, m);
        let s3 = (1..=m.saturating_sub(2))
            .filter(|&i| m - i >= 2)
            .fold(Poly::zero(), |acc, i| &acc + &(&c[i] * &s2[m - i]));
        let deriv = &(&p.f * &s3) + &(&p.g * &s2[m]);
        c.push(deriv.antiderivative_from(&p.a));
    }
    let r: Vec<Poly> = c.split_off(2);
    let endpoint_values = r.iter().map(|rk| rk.eval(&p.b)).collect();
    let mut h_coeffs = vec![p.integrate(&p.g), p.integrate(&p.f)];
    h_coeffs.extend(r.iter().map(|rk| p.integrate(&(&p.f * rk))));
    Ok(ReturnMapSeries {
        order,
        r,
        endpoint_values,
        h_coeffs,
    })
}

fn quadratic_convolution(c: &[Poly], m: usize) -> Poly {
    let mut acc = Poly::zero();
    for i in 1..m {
        let j = m - i;
        if i > j {
            break;
        }
        let prod = &c[i] * &c[j];
        acc = if i == j {
            &acc + &prod
        } else {
            &acc + &(&prod + &prod)
        };
    }
    acc
}

/// `[∫g, ∫f·r_2, …, ∫f·r_N]`, recomputed from the system. All zero up to
/// the series order is the integral form of the center certificate.
pub fn integral_center_conditions(
    sys: &AbelSystem,
    series: &ReturnMapSeries,
) -> Result<Vec<Rational>> {
    let p = sys.as_poly()?;
    let mut out = vec![p.integrate(&p.g)];
    out.extend(series.r.iter().map(|rk| p.integrate(&(&p.f * rk))));
    Ok(out)
}

/// One side-by-side exact identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    #[serde(with = "crate::arith::serde_short")]
    pub lhs: Rational,
    #[serde(with = "crate::arith::serde_short")]
    pub rhs: Rational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// The low-order integral identities linking the series to `F` and `G`:
///
/// * `h_1 = ∫ f`
/// * `∫ f·r_2 = ∫ f·G`
/// * `∫ f·r_3 = ∫ f·G² + ∫ f·F`
///
/// Left sides come from the series, right sides are recomputed from the
/// system alone.
pub fn low_order_identities(
    sys: &AbelSystem,
    series: &ReturnMapSeries,
) -> Result<[IdentityCheck; 3]> {
    let p = sys.as_poly()?;
    if series.order < 3 {
        return Err(Error::Domain(
            "identity check needs series order >= 3".into(),
        ));
    }
    let big_g = p.primitive_g();
    let big_f = p.primitive_f();
    Ok([
        IdentityCheck {
            name: "h1 = int f",
            lhs: series.h_coeffs[1].clone(),
            rhs: p.integrate(&p.f),
        },
        IdentityCheck {
            name: "int f*r2 = int f*G",
            lhs: series.h_coeffs[2].clone(),
            rhs: p.integrate(&(&p.f * &big_g)),
        },
        IdentityCheck {
            name: "int f*r3 = int f*G^2 + int f*F",
            lhs: series.h_coeffs[3].clone(),
            rhs: p.integrate(&(&p.f * &(&big_g * &big_g))) + p.integrate(&(&p.f * &big_f)),
        },
    ])
}

/// `∫ f·r_j` recomputed from scratch for `j = 2..=N`, compared with the
/// stored `h_coeffs[j]`.
pub fn h_series_identities(
    sys: &AbelSystem,
    series: &ReturnMapSeries,
) -> Result<Vec<IdentityCheck>> {
    let p = sys.as_poly()?;
    Ok((2..=series.order)
        .map(|j| IdentityCheck {
            name: "h_j = int f*r_j",
            lhs: series.h_coeffs[j].clone(),
            rhs: p.integrate(&(&p.f * series.r_k(j))),
        })
        .collect())
}

/// Truncated product of two ρ-series with polynomial coefficients.
fn series_mul(x: &[Poly], y: &[Poly], order: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); order + 1];
    for (i, xi) in x.iter().enumerate().take(order + 1) {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate().take(order + 1 - i) {
            out[i + j] = &out[i + j] + &(xi * yj);
        }
    }
    out
}

/// Coefficients of `ρ^0..ρ^N` in `x_N' − f·x_N³ − g·x_N²`, where `x_N` is
/// the truncated series. Every entry is zero when the series is correct.
pub fn residual(sys: &AbelSystem, series: &ReturnMapSeries) -> Result<Vec<Poly>> {
    let p: &PolySystem = sys.as_poly()?;
    let n = series.order;
    let mut x = vec![Poly::zero(), Poly::one()];
    x.extend(series.r.iter().cloned());
    let x2 = series_mul(&x, &x, n);
    let x3 = series_mul(&x2, &x, n);
    Ok((0..=n)
        .map(|k| &(&x[k].derivative() - &(&p.f * &x3[k])) - &(&p.g * &x2[k]))
        .collect())
}
