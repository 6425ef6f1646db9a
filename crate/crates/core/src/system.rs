//! Abel systems `x' = f(t)x³ + g(t)x²`, their primitives and moments.
//!
//! The moments `m_k = ∫ f·G^k` over the interval (with `G` the primitive of
//! `g` vanishing at the left endpoint) are computed by exact expansion, never
//! by quadrature. For trigonometric systems on `[0, 2π]` the value is an
//! exact rational multiple of π.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{format_short, int, serde_rational, Poly, Rational};
use crate::error::{Error, ParseError, Result};
use crate::linalg;
use crate::trig::TrigPoly;

fn default_a() -> Rational {
    int(-1)
}

fn default_b() -> Rational {
    int(1)
}

/// Polynomial coefficients on an interval `[a, b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySystem {
    pub f: Poly,
    pub g: Poly,
    #[serde(with = "serde_rational", default = "default_a")]
    pub a: Rational,
    #[serde(with = "serde_rational", default = "default_b")]
    pub b: Rational,
}

/// Trigonometric coefficients on the fixed period `[0, 2π]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigSystem {
    pub f: TrigPoly,
    pub g: TrigPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", try_from = "SystemRepr")]
pub enum AbelSystem {
    #[serde(rename = "poly")]
    Polynomial(PolySystem),
    #[serde(rename = "trig")]
    Trigonometric(TrigSystem),
}

#[derive(Deserialize)]
#[serde(tag = "kind")]
enum SystemRepr {
    #[serde(rename = "poly")]
    Polynomial(PolySystem),
    #[serde(rename = "trig")]
    Trigonometric(TrigSystem),
}

impl TryFrom<SystemRepr> for AbelSystem {
    type Error = ParseError;
    fn try_from(r: SystemRepr) -> std::result::Result<Self, ParseError> {
        match r {
            SystemRepr::Polynomial(p) => {
                if p.a >= p.b {
                    return Err(ParseError::Schema(format!(
                        "interval [{}, {}] must satisfy a < b",
                        p.a, p.b
                    )));
                }
                Ok(AbelSystem::Polynomial(p))
            }
            SystemRepr::Trigonometric(t) => Ok(AbelSystem::Trigonometric(t)),
        }
    }
}

impl AbelSystem {
    /// Polynomial system on `[a, b]`.
    pub fn polynomial(f: Poly, g: Poly, a: Rational, b: Rational) -> Result<Self> {
        if a >= b {
            return Err(Error::InvalidInterval {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        Ok(AbelSystem::Polynomial(PolySystem { f, g, a, b }))
    }

    /// Polynomial system on the default interval `[-1, 1]`.
    pub fn on_unit_interval(f: Poly, g: Poly) -> Self {
        AbelSystem::Polynomial(PolySystem {
            f,
            g,
            a: default_a(),
            b: default_b(),
        })
    }

    /// `g = t^{n-1}` on `[-1, 1]`.
    pub fn with_monomial_g(f: Poly, n: usize) -> Self {
        assert!(n >= 1, "n must be positive");
        Self::on_unit_interval(f, Poly::monomial(Rational::one(), n - 1))
    }

    pub fn trigonometric(f: TrigPoly, g: TrigPoly) -> Self {
        AbelSystem::Trigonometric(TrigSystem { f, g })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            AbelSystem::Polynomial(_) => "poly",
            AbelSystem::Trigonometric(_) => "trig",
        }
    }

    pub fn as_poly(&self) -> Result<&PolySystem> {
        match self {
            AbelSystem::Polynomial(p) => Ok(p),
            AbelSystem::Trigonometric(_) => Err(Error::InvalidKind {
                expected: "poly",
                found: "trig",
            }),
        }
    }

    pub fn is_trig(&self) -> bool {
        matches!(self, AbelSystem::Trigonometric(_))
    }

    /// `G`, the primitive of `g` vanishing at the left endpoint.
    pub fn primitive_g(&self) -> Result<Primitive> {
        match self {
            AbelSystem::Polynomial(p) => Ok(Primitive::Poly(p.primitive_g())),
            AbelSystem::Trigonometric(t) => t.g.antiderivative_from_zero().map(Primitive::Trig),
        }
    }

    /// `F`, the primitive of `f` vanishing at the left endpoint.
    pub fn primitive_f(&self) -> Result<Primitive> {
        match self {
            AbelSystem::Polynomial(p) => Ok(Primitive::Poly(p.primitive_f())),
            AbelSystem::Trigonometric(t) => t.f.antiderivative_from_zero().map(Primitive::Trig),
        }
    }

    /// `∫ g` over the interval.
    pub fn g_integral(&self) -> ExactValue {
        match self {
            AbelSystem::Polynomial(p) => ExactValue::rational(p.g.definite_integral(&p.a, &p.b)),
            AbelSystem::Trigonometric(t) => ExactValue::pi_multiple(t.g.integral_over_period()),
        }
    }

    /// `m_k = ∫ f·G^k` over the interval.
    pub fn moment(&self, k: u32) -> Result<ExactValue> {
        match self {
            AbelSystem::Polynomial(p) => {
                let integrand = &p.f * &p.primitive_g().pow(k);
                Ok(ExactValue::rational(
                    integrand.definite_integral(&p.a, &p.b),
                ))
            }
            AbelSystem::Trigonometric(t) => {
                let big_g = t.g.antiderivative_from_zero()?;
                let integrand = &t.f * &big_g.pow(k);
                Ok(ExactValue::pi_multiple(integrand.integral_over_period()))
            }
        }
    }

    /// Moments `m_0..=m_max_k` plus `∫ g`, with `G^k` built incrementally.
    pub fn moment_report(&self, max_k: usize) -> Result<MomentReport> {
        let moments = match self {
            AbelSystem::Polynomial(p) => {
                let big_g = p.primitive_g();
                let mut power = Poly::one();
                let mut out = Vec::with_capacity(max_k + 1);
                for _ in 0..=max_k {
                    let v = (&p.f * &power).definite_integral(&p.a, &p.b);
                    out.push(ExactValue::rational(v));
                    power = &power * &big_g;
                }
                out
            }
            AbelSystem::Trigonometric(t) => {
                let big_g = t.g.antiderivative_from_zero()?;
                let mut power = TrigPoly::constant(Rational::one());
                let mut out = Vec::with_capacity(max_k + 1);
                for _ in 0..=max_k {
                    out.push(ExactValue::pi_multiple(
                        (&t.f * &power).integral_over_period(),
                    ));
                    power = &power * &big_g;
                }
                out
            }
        };
        let first_nonzero_index = moments.iter().position(|m| !m.is_zero());
        Ok(MomentReport {
            moments,
            g_integral: self.g_integral(),
            first_nonzero_index,
        })
    }

    /// Both sides of `∫ f·F = ½(F(b)² − F(a)²)`.
    pub fn ff_identity(&self) -> Result<(Rational, Rational)> {
        let p = self.as_poly()?;
        let big_f = p.primitive_f();
        let lhs = (&p.f * &big_f).definite_integral(&p.a, &p.b);
        let (fa, fb) = (big_f.eval(&p.a), big_f.eval(&p.b));
        let rhs = (&fb * &fb - &fa * &fa) / int(2);
        Ok((lhs, rhs))
    }
}

impl PolySystem {
    pub fn primitive_g(&self) -> Poly {
        self.g.antiderivative_from(&self.a)
    }

    pub fn primitive_f(&self) -> Poly {
        self.f.antiderivative_from(&self.a)
    }

    pub fn integrate(&self, p: &Poly) -> Rational {
        p.definite_integral(&self.a, &self.b)
    }
}

impl fmt::Display for AbelSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelSystem::Polynomial(p) => write!(
                f,
                "x' = ({})x^3 + ({})x^2, t in [{}, {}]",
                p.f, p.g, p.a, p.b
            ),
            AbelSystem::Trigonometric(t) => {
                write!(f, "x' = ({})x^3 + ({})x^2, θ in [0, 2π]", t.f, t.g)
            }
        }
    }
}

/// Either a polynomial or trigonometric primitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Primitive {
    Poly(Poly),
    Trig(TrigPoly),
}

impl Primitive {
    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Primitive::Poly(p) => Some(p),
            Primitive::Trig(_) => None,
        }
    }

    pub fn as_trig(&self) -> Option<&TrigPoly> {
        match self {
            Primitive::Trig(p) => Some(p),
            Primitive::Poly(_) => None,
        }
    }
}

/// An exact real: a rational, or a rational multiple of π.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactValue {
    pub value: Rational,
    pub times_pi: bool,
}

impl ExactValue {
    pub fn rational(value: Rational) -> Self {
        ExactValue {
            value,
            times_pi: false,
        }
    }

    /// `value·π`; zero is stored as the plain rational zero so that equal
    /// reals compare equal.
    pub fn pi_multiple(value: Rational) -> Self {
        let times_pi = !value.is_zero();
        ExactValue { value, times_pi }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let v = crate::arith::to_f64(&self.value);
        if self.times_pi {
            v * std::f64::consts::PI
        } else {
            v
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_short(&self.value))?;
        if self.times_pi && !self.value.is_zero() {
            f.write_str("*pi")?;
        }
        Ok(())
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub moments: Vec<ExactValue>,
    pub g_integral: ExactValue,
    pub first_nonzero_index: Option<usize>,
}

impl MomentReport {
    pub fn all_zero(&self) -> bool {
        self.first_nonzero_index.is_none()
    }
}

/// The linear system on even coefficients of `f` imposed by vanishing
/// moments when `g = t^{n-1}` on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentMatrix {
    pub n: usize,
    pub even_degrees: Vec<usize>,
    pub moment_indices: Vec<usize>,
    /// `∫_{-1}^1 t^d ((t^n − 1)/n)^k dt`, rows indexed by moment, columns by degree.
    pub raw: Vec<Vec<Rational>>,
    /// Row `k` of `raw` scaled by `(−1)^k / (2·k!)`, giving entries
    /// `1/∏_{i=0..k} (d + 1 + i·n)` for even `d`.
    pub normalized: Vec<Vec<Rational>>,
    /// Determinant of `normalized`, when square.
    pub determinant: Option<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

pub const DEFAULT_EVEN_DEGREES: [usize; 3] = [0, 2, 4];
pub const DEFAULT_MOMENT_INDICES: [usize; 3] = [0, 1, 2];

/// Builds the moment matrix for `g = t^{n-1}`. `n` must be even and positive.
pub fn moment_linear_system(
    n: usize,
    even_degrees: &[usize],
    moment_indices: &[usize],
) -> Result<MomentMatrix> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("n = {n} must be even and positive")));
    }
    let big_g = (Poly::monomial(Rational::one(), n) - Poly::one())
        .scale(&Rational::new(1.into(), (n as i64).into()));
    let (lo, hi) = (int(-1), int(1));
    let mut raw = Vec::with_capacity(moment_indices.len());
    let mut normalized = Vec::with_capacity(moment_indices.len());
    for &k in moment_indices {
        let gk = big_g.pow(k as u32);
        let factorial: Rational = (1..=k as i64).map(int).product();
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let scale = sign / (int(2) * factorial);
        let row: Vec<Rational> = even_degrees
            .iter()
            .map(|&d| (&Poly::monomial(Rational::one(), d) * &gk).definite_integral(&lo, &hi))
            .collect();
        normalized.push(row.iter().map(|x| x * &scale).collect());
        raw.push(row);
    }
    let determinant = linalg::determinant(&normalized);
    let kernel = if even_degrees.is_empty() {
        Vec::new()
    } else {
        linalg::kernel(&normalized)
    };
    Ok(MomentMatrix {
        n,
        even_degrees: even_degrees.to_vec(),
        moment_indices: moment_indices.to_vec(),
        raw,
        normalized,
        determinant,
        kernel,
    })
}

/// `−16 / (15(n+1)(n+3)(n+5)(1+2n)(3+2n)(5+2n))`.
pub fn closed_form_determinant(n: usize) -> Rational {
    let n = n as i64;
    let den = 15 * (n + 1) * (n + 3) * (n + 5) * (1 + 2 * n) * (3 + 2 * n) * (5 + 2 * n);
    Rational::new((-16).into(), den.into())
}
