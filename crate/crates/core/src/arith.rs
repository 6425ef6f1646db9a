//! Exact rational scalars and dense univariate polynomials over them.
//!
//! Every symbolic identity in the crate is checked with these types, so
//! nothing in here touches floating point except the explicit `*_f64`
//! evaluation helpers used by the numeric verifier.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `"num/den"` with the denominator always spelled out, e.g. `"-1/1"`.
pub fn format_ratio(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Short form used in reports: `"0"`, `"2"`, `"-16/496125"`.
pub fn format_short(q: &Rational) -> String {
    q.to_string()
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Rational(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    // BigRational::to_f64 rounds correctly even when numerator and
    // denominator individually overflow f64.
    q.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter for a single [`Rational`] as a `"num/den"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` as an array of `"num/den"` strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_ratio(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter for a computed scalar in short form (`"0"`, `"-2/3"`).
pub mod serde_short {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_short(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub mod serde_short_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_short(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        serde_rational_vec::deserialize(d)
    }
}

/// Degree of a polynomial. The zero polynomial has degree minus infinity,
/// which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense univariate polynomial with rational coefficients, ascending order.
///
/// The last stored coefficient is never zero; the zero polynomial stores
/// nothing.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// `self ∘ inner`, Horner-style in `inner`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// The primitive `P` with `P' = self` and `P(a) = 0`.
    pub fn antiderivative_from(&self, a: &Rational) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / int(i as i64 + 1));
        }
        let mut p = Poly::new(coeffs);
        let shift = p.eval(a);
        if !shift.is_zero() {
            p.coeffs[0] = -shift;
            p = Poly::new(p.coeffs);
        }
        p
    }

    /// Exact `∫_a^b self(t) dt`.
    pub fn definite_integral(&self, a: &Rational, b: &Rational) -> Rational {
        self.antiderivative_from(a).eval(b)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Sign of `self(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Substitutes `t^k` for `t`.
    pub fn inflate(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly::new(coeffs)
    }

    /// Parity check: `Some(true)` if even, `Some(false)` if odd, `None` if
    /// neither. Zero is reported as even.
    pub fn parity(&self) -> Option<bool> {
        let has_even = self.coeffs.iter().step_by(2).any(|c| !c.is_zero());
        let has_odd = self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero());
        match (has_even, has_odd) {
            (_, false) => Some(true),
            (false, true) => Some(false),
            (true, true) => None,
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_rational_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        serde_rational_vec::deserialize(d).map(Poly::new)
    }
}

fn zip_with(a: &Poly, b: &Poly, op: impl Fn(&Rational, &Rational) -> Rational) -> Poly {
    let zero = Rational::zero();
    let len = a.coeffs.len().max(b.coeffs.len());
    Poly::new(
        (0..len)
            .map(|i| {
                op(
                    a.coeffs.get(i).unwrap_or(&zero),
                    b.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect(),
    )
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Sign of a rational as an `Ordering` against zero.
pub fn sign(q: &Rational) -> Ordering {
    q.cmp(&Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(p(&[1, 1]) * p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(Poly::zero() + p(&[3, 0, 2]), p(&[3, 0, 2]));
        assert_eq!(p(&[0, 2]) * p(&[0, 0, 3]), p(&[0, 0, 0, 6]));
        assert_eq!(p(&[1, 2]) - p(&[1, 2]), Poly::zero());
        assert_eq!(
            p(&[1, 2]).scale(&rat(1, 2)),
            Poly::new(vec![rat(1, 2), int(1)])
        );
    }

    #[test]
    fn zero_degree_is_minus_infinity() {
        assert_eq!(Poly::zero().degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        assert_eq!(p(&[0, 0, 0]).degree(), Degree::MinusInfinity);
        assert_eq!(p(&[5]).degree(), Degree::Finite(0));
    }

    #[test]
    fn compose_examples() {
        let t2 = p(&[0, 0, 1]);
        assert_eq!(t2.compose(&t2), p(&[0, 0, 0, 0, 1]));
        let q = p(&[3, -1, 0, 7]);
        assert_eq!(p(&[1, 1]).compose(&q), &q + &Poly::one());
        assert_eq!(p(&[0, 0, 0, 1]).compose(&t2), p(&[0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert_eq!(p(&[5]).derivative(), Poly::zero());
        let q = Poly::new(vec![int(0), int(-1), int(0), int(0), rat(1, 4)]);
        assert_eq!(q.derivative(), p(&[-1, 0, 0, 1]));
    }

    #[test]
    fn antiderivative_examples() {
        for n in [2usize, 4, 6] {
            let g = Poly::monomial(int(1), n - 1);
            let expected = (Poly::monomial(int(1), n) - Poly::one()).scale(&rat(1, n as i64));
            assert_eq!(g.antiderivative_from(&int(-1)), expected);
        }
        assert_eq!(Poly::zero().antiderivative_from(&rat(3, 7)), Poly::zero());
        assert_eq!(Poly::one().antiderivative_from(&int(-1)), p(&[1, 1]));
    }

    #[test]
    fn definite_integral_examples() {
        let (a, b) = (int(-1), int(1));
        assert_eq!(p(&[0, 1]).definite_integral(&a, &b), int(0));
        assert_eq!(p(&[0, 0, 1]).definite_integral(&a, &b), rat(2, 3));
        let half = Poly::new(vec![rat(-1, 2), int(0), rat(1, 2)]);
        assert_eq!(half.definite_integral(&a, &b), rat(-2, 3));
    }

    #[test]
    fn eval_examples() {
        let q = p(&[-1, 0, 1]);
        assert_eq!(q.eval(&int(1)), int(0));
        assert_eq!(q.eval(&int(0)), int(-1));
        assert_eq!(p(&[0, 0, 0, 0, 1]).eval(&rat(1, 2)), rat(1, 16));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let g = (p(&[-1, 0, 1]) * p(&[2, 1])).gcd(&(p(&[1, 1]) * p(&[5, 0, 1])));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn json_shape() {
        let q = p(&[-1, 0, 1]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"["-1/1","0/1","1/1"]"#);
        let back: Poly = serde_json::from_str(r#"["-1/1","0","1/1","0/3"]"#).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Poly>(r#"["1/0"]"#).is_err());
        assert!(serde_json::from_str::<Poly>(r#"["x"]"#).is_err());
    }

    #[test]
    fn display() {
        let q = Poly::new(vec![rat(1, 4), int(0), rat(-1, 2), int(0), rat(1, 4)]);
        assert_eq!(q.to_string(), "(1/4)t^4 - (1/2)t^2 + (1/4)");
        assert_eq!(p(&[0, -1, 0, 1]).to_string(), "t^3 - t");
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-6i64..=6, 1i64..=4), 0..6)
            .prop_map(|v| Poly::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn antiderivative_round_trip(q in small_poly(), an in -3i64..=3, ad in 1i64..=3) {
            let a = rat(an, ad);
            let prim = q.antiderivative_from(&a);
            prop_assert_eq!(prim.derivative(), q.clone());
            prop_assert!(prim.eval(&a).is_zero());
        }

        #[test]
        fn integral_consistency(q in small_poly(), an in -3i64..=3, bn in -3i64..=3) {
            let (a, b) = (int(an), int(bn));
            let prim = q.antiderivative_from(&a);
            prop_assert_eq!(q.definite_integral(&a, &b), prim.eval(&b) - prim.eval(&a));
        }

        #[test]
        fn compose_associative(
            f in prop::collection::vec(-3i64..=3, 0..4),
            g in prop::collection::vec(-3i64..=3, 0..4),
            h in prop::collection::vec(-3i64..=3, 0..4),
        ) {
            let (f, g, h) = (Poly::from_ints(&f), Poly::from_ints(&g), Poly::from_ints(&h));
            prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        }
    }
}
