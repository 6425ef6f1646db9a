//! Trigonometric polynomials `c + Σ (a_k cos kθ + b_k sin kθ)` with exact
//! rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_ratio, int, rat, serde_rational, serde_rational_vec, to_f64, Rational};
use crate::error::{Error, Result};

/// Finite Fourier sum. `cos[k-1]` and `sin[k-1]` hold the coefficients of
/// harmonic `k`; each list is trimmed of trailing zeros independently.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "TrigRepr", into = "TrigRepr")]
pub struct TrigPoly {
    constant: Rational,
    cos: Vec<Rational>,
    sin: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct TrigRepr {
    #[serde(with = "serde_rational", default = "Rational::zero")]
    constant: Rational,
    #[serde(with = "serde_rational_vec", default)]
    cos: Vec<Rational>,
    #[serde(with = "serde_rational_vec", default)]
    sin: Vec<Rational>,
}

impl From<TrigRepr> for TrigPoly {
    fn from(r: TrigRepr) -> Self {
        TrigPoly::new(r.constant, r.cos, r.sin)
    }
}

impl From<TrigPoly> for TrigRepr {
    fn from(p: TrigPoly) -> Self {
        TrigRepr {
            constant: p.constant,
            cos: p.cos,
            sin: p.sin,
        }
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

impl TrigPoly {
    pub fn new(constant: Rational, mut cos: Vec<Rational>, mut sin: Vec<Rational>) -> Self {
        trim(&mut cos);
        trim(&mut sin);
        TrigPoly { constant, cos, sin }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(c, vec![], vec![])
    }

    /// `c·cos kθ`; `k = 0` gives the constant `c`.
    pub fn cos_term(c: Rational, k: usize) -> Self {
        if k == 0 {
            return Self::constant(c);
        }
        let mut cos = vec![Rational::zero(); k];
        cos[k - 1] = c;
        Self::new(Rational::zero(), cos, vec![])
    }

    /// `c·sin kθ`.
    pub fn sin_term(c: Rational, k: usize) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut sin = vec![Rational::zero(); k];
        sin[k - 1] = c;
        Self::new(Rational::zero(), vec![], sin)
    }

    /// Builds from integer coefficient lists; handy in tests and examples.
    pub fn from_ints(constant: i64, cos: &[i64], sin: &[i64]) -> Self {
        Self::new(
            int(constant),
            cos.iter().map(|&c| int(c)).collect(),
            sin.iter().map(|&c| int(c)).collect(),
        )
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn cos_coeffs(&self) -> &[Rational] {
        &self.cos
    }

    pub fn sin_coeffs(&self) -> &[Rational] {
        &self.sin
    }

    pub fn cos_coeff(&self, k: usize) -> Rational {
        if k == 0 {
            return self.constant.clone();
        }
        self.cos.get(k - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn sin_coeff(&self, k: usize) -> Rational {
        if k == 0 {
            return Rational::zero();
        }
        self.sin.get(k - 1).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest harmonic with a nonzero coefficient (0 for constants, including zero).
    pub fn degree(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.cos.is_empty() && self.sin.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> TrigPoly {
        TrigPoly::new(
            &self.constant * c,
            self.cos.iter().map(|a| a * c).collect(),
            self.sin.iter().map(|b| b * c).collect(),
        )
    }

    /// Full cosine table `[c_0, c_1, …, c_N]` and sine table `[0, s_1, …, s_N]`.
    fn tables(&self, n: usize) -> (Vec<Rational>, Vec<Rational>) {
        let cos = (0..=n).map(|k| self.cos_coeff(k)).collect();
        let sin = (0..=n).map(|k| self.sin_coeff(k)).collect();
        (cos, sin)
    }

    fn from_tables(mut cos: Vec<Rational>, mut sin: Vec<Rational>) -> Self {
        let constant = if cos.is_empty() {
            Rational::zero()
        } else {
            cos.remove(0)
        };
        if !sin.is_empty() {
            sin.remove(0);
        }
        TrigPoly::new(constant, cos, sin)
    }

    pub fn derivative(&self) -> TrigPoly {
        // cos kθ → -k sin kθ, sin kθ → k cos kθ
        let cos = self
            .sin
            .iter()
            .enumerate()
            .map(|(i, b)| b * int(i as i64 + 1))
            .collect();
        let sin = self
            .cos
            .iter()
            .enumerate()
            .map(|(i, a)| -(a * int(i as i64 + 1)))
            .collect();
        TrigPoly::new(Rational::zero(), cos, sin)
    }

    /// The primitive `P` with `P' = self` and `P(0) = 0`. Only defined for
    /// mean-zero inputs.
    pub fn antiderivative_from_zero(&self) -> Result<TrigPoly> {
        if !self.constant.is_zero() {
            return Err(Error::NonZeroMean {
                mean: format_ratio(&self.constant),
            });
        }
        // a cos kθ → (a/k) sin kθ ; b sin kθ → -(b/k) cos kθ
        let sin: Vec<Rational> = self
            .cos
            .iter()
            .enumerate()
            .map(|(i, a)| a / int(i as i64 + 1))
            .collect();
        let cos: Vec<Rational> = self
            .sin
            .iter()
            .enumerate()
            .map(|(i, b)| -(b / int(i as i64 + 1)))
            .collect();
        // P(0) = constant + Σ cos coefficients
        let constant = -cos.iter().fold(Rational::zero(), |acc, c| acc + c);
        Ok(TrigPoly::new(constant, cos, sin))
    }

    /// `q` such that `∫_0^{2π} self dθ = q·π`.
    pub fn integral_over_period(&self) -> Rational {
        &self.constant * int(2)
    }

    pub fn eval_f64(&self, theta: f64) -> f64 {
        let mut acc = to_f64(&self.constant);
        for (i, a) in self.cos.iter().enumerate() {
            acc += to_f64(a) * ((i + 1) as f64 * theta).cos();
        }
        for (i, b) in self.sin.iter().enumerate() {
            acc += to_f64(b) * ((i + 1) as f64 * theta).sin();
        }
        acc
    }

    pub fn pow(&self, k: u32) -> TrigPoly {
        (0..k).fold(TrigPoly::constant(int(1)), |acc, _| &acc * self)
    }
}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrigPoly({self})")
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Rational, String)> = Vec::new();
        if !self.constant.is_zero() {
            terms.push((self.constant.clone(), String::new()));
        }
        for k in 1..=self.degree() {
            let k_str = if k == 1 { String::new() } else { k.to_string() };
            let a = self.cos_coeff(k);
            if !a.is_zero() {
                terms.push((a, format!("cos {k_str}θ")));
            }
            let b = self.sin_coeff(k);
            if !b.is_zero() {
                terms.push((b, format!("sin {k_str}θ")));
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, name)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag == int(1) && !name.is_empty();
            if !unit {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            f.write_str(name)?;
        }
        Ok(())
    }
}

impl Add<&TrigPoly> for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let n = self.degree().max(rhs.degree());
        let (c1, s1) = self.tables(n);
        let (c2, s2) = rhs.tables(n);
        TrigPoly::from_tables(
            c1.iter().zip(&c2).map(|(x, y)| x + y).collect(),
            s1.iter().zip(&s2).map(|(x, y)| x + y).collect(),
        )
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(&int(-1))
    }
}

impl Sub<&TrigPoly> for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl Mul<&TrigPoly> for &TrigPoly {
    type Output = TrigPoly;
    /// Product-to-sum expansion:
    /// cos a·cos b = ½[cos(a−b) + cos(a+b)], sin a·sin b = ½[cos(a−b) − cos(a+b)],
    /// sin a·cos b = ½[sin(a+b) + sin(a−b)].
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let (n1, n2) = (self.degree(), rhs.degree());
        let n = n1 + n2;
        let (c1, s1) = self.tables(n1);
        let (c2, s2) = rhs.tables(n2);
        let mut cos = vec![Rational::zero(); n + 1];
        let mut sin = vec![Rational::zero(); n + 1];
        let half = rat(1, 2);
        for a in 0..=n1 {
            for b in 0..=n2 {
                let (sum, diff) = (a + b, a.abs_diff(b));
                // sign of sin(a - b) once folded to the nonnegative harmonic
                let diff_sign = if a >= b { int(1) } else { int(-1) };
                if !c1[a].is_zero() && !c2[b].is_zero() {
                    let w = &c1[a] * &c2[b] * &half;
                    cos[diff] += &w;
                    cos[sum] += &w;
                }
                if !s1[a].is_zero() && !s2[b].is_zero() {
                    let w = &s1[a] * &s2[b] * &half;
                    cos[diff] += &w;
                    cos[sum] -= &w;
                }
                if !s1[a].is_zero() && !c2[b].is_zero() {
                    let w = &s1[a] * &c2[b] * &half;
                    sin[sum] += &w;
                    sin[diff] += &w * &diff_sign;
                }
                if !c1[a].is_zero() && !s2[b].is_zero() {
                    // cos a·sin b = ½[sin(a+b) − sin(a−b)]
                    let w = &c1[a] * &s2[b] * &half;
                    sin[sum] += &w;
                    sin[diff] -= &w * &diff_sign;
                }
            }
        }
        // sin 0θ vanishes identically
        sin[0] = Rational::zero();
        TrigPoly::from_tables(cos, sin)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<TrigPoly> for TrigPoly {
            type Output = TrigPoly;
            fn $m(self, rhs: TrigPoly) -> TrigPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TrigPoly> for TrigPoly {
            type Output = TrigPoly;
            fn $m(self, rhs: &TrigPoly) -> TrigPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cos(k: usize) -> TrigPoly {
        TrigPoly::cos_term(int(1), k)
    }
    fn sin(k: usize) -> TrigPoly {
        TrigPoly::sin_term(int(1), k)
    }

    #[test]
    fn product_examples() {
        let half = rat(1, 2);
        assert_eq!(
            &cos(1) * &cos(1),
            TrigPoly::new(half.clone(), vec![int(0), half.clone()], vec![])
        );
        assert_eq!(
            &sin(1) * &cos(1),
            TrigPoly::new(int(0), vec![], vec![int(0), half.clone()])
        );
        let p = TrigPoly::from_ints(0, &[1, 2], &[]);
        let expected = TrigPoly::new(rat(5, 2), vec![int(2), rat(1, 2), int(2), int(2)], vec![]);
        assert_eq!(&p * &p, expected);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(cos(2).derivative(), TrigPoly::sin_term(int(-2), 2));
        assert_eq!(TrigPoly::constant(int(7)).derivative(), TrigPoly::zero());
        assert_eq!(
            (&sin(1) + &cos(3)).derivative(),
            &cos(1) + &TrigPoly::sin_term(int(-3), 3)
        );
    }

    #[test]
    fn primitive_examples() {
        let g = TrigPoly::from_ints(0, &[1, 2], &[]);
        assert_eq!(
            g.antiderivative_from_zero().unwrap(),
            TrigPoly::from_ints(0, &[], &[1, 1])
        );
        assert_eq!(
            TrigPoly::zero().antiderivative_from_zero().unwrap(),
            TrigPoly::zero()
        );
        assert_eq!(
            sin(1).antiderivative_from_zero().unwrap(),
            TrigPoly::from_ints(1, &[-1], &[])
        );
        assert!(matches!(
            TrigPoly::constant(int(1)).antiderivative_from_zero(),
            Err(Error::NonZeroMean { .. })
        ));
    }

    #[test]
    fn period_integral_examples() {
        assert_eq!(TrigPoly::constant(int(1)).integral_over_period(), int(2));
        assert_eq!(cos(5).integral_over_period(), int(0));
        let f = TrigPoly::from_ints(0, &[], &[1, -1, 1]);
        let g = TrigPoly::from_ints(0, &[], &[1, 1]);
        let integrand = &f * &g.pow(3);
        assert_eq!(integrand.integral_over_period(), rat(1, 2));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cos(1).eval_f64(0.0), 1.0);
        assert_eq!(sin(1).eval_f64(0.0), 0.0);
        let c2 = TrigPoly::new(rat(1, 2), vec![int(0), rat(1, 2)], vec![]);
        assert!(c2.eval_f64(std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn json_shape() {
        let p = TrigPoly::from_ints(0, &[1, 2], &[]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"constant":"0/1","cos":["1/1","2/1"],"sin":[]}"#);
        let back: TrigPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let p = TrigPoly::from_ints(0, &[], &[1, -1, 1]);
        assert_eq!(p.to_string(), "sin θ - sin 2θ + sin 3θ");
    }

    fn mean_zero() -> impl Strategy<Value = TrigPoly> {
        (
            prop::collection::vec(-5i64..=5, 0..6),
            prop::collection::vec(-5i64..=5, 0..6),
        )
            .prop_map(|(c, s)| TrigPoly::from_ints(0, &c, &s))
    }

    fn any_trig() -> impl Strategy<Value = TrigPoly> {
        (-5i64..=5, mean_zero()).prop_map(|(c, p)| &p + &TrigPoly::constant(int(c)))
    }

    proptest! {
        #[test]
        fn primitive_round_trip(p in mean_zero()) {
            let prim = p.antiderivative_from_zero().unwrap();
            prop_assert_eq!(prim.derivative(), p);
            prop_assert!(prim.eval_f64(0.0).abs() < 1e-12);
        }

        #[test]
        fn orthogonality(k in 0usize..=8, l in 0usize..=8, kind in 0u8..4) {
            let (a, b) = match kind {
                0 => (cos(k), cos(l)),
                1 => (sin(k), sin(l)),
                2 => (sin(k), cos(l)),
                _ => (cos(k), sin(l)),
            };
            let q = (&a * &b).integral_over_period();
            let expected = match kind {
                0 if k == l && k == 0 => int(2),
                0 | 1 if k == l && k > 0 => int(1),
                _ => int(0),
            };
            prop_assert_eq!(q, expected);
        }

        #[test]
        fn product_matches_pointwise(p in any_trig(), q in any_trig(), theta in 0.0f64..6.3) {
            let lhs = (&p * &q).eval_f64(theta);
            let rhs = p.eval_f64(theta) * q.eval_f64(theta);
            prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
        }

        #[test]
        fn product_degree(p in any_trig(), q in any_trig()) {
            prop_assert!((&p * &q).degree() <= p.degree() + q.degree());
        }
    }

    #[test]
    fn product_degree_equality_for_generic_leading_harmonics() {
        let p = TrigPoly::from_ints(1, &[2, 3], &[0, 1]);
        let q = TrigPoly::from_ints(0, &[1, 0, 4], &[]);
        assert_eq!((&p * &q).degree(), 5);
    }
}
