//! Even/odd splitting, the `ψ(u)` function and exact sign-change counting
//! for Abel systems with `g = t^{n-1}` on `[-1, 1]`.
//!
//! With `f(t) = p(t²) + t·q(t²)` and `G = (t^n − 1)/n`, the level sets of
//! `G` pair up `t` and `−t`, so only the even part `p` matters for the
//! moment argument. Sign changes of `p(t²)` on `[-1, 1] \ {0}` correspond to
//! sign changes of `p` on `(0, 1)`.

use serde::Serialize;

use crate::arith::{int, rat, serde_short, to_f64, Poly, Rational};
use crate::error::{Error, Result};
use crate::system::{AbelSystem, MomentReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenOddSplit {
    pub p: Poly,
    pub q: Poly,
}

impl EvenOddSplit {
    /// `p(t²) + t·q(t²)`.
    pub fn recompose(&self) -> Poly {
        &self.p.inflate(2) + &(&Poly::t() * &self.q.inflate(2))
    }
}

pub fn even_odd_split(f: &Poly) -> EvenOddSplit {
    let even = f.coeffs().iter().step_by(2).cloned().collect();
    let odd = f.coeffs().iter().skip(1).step_by(2).cloned().collect();
    EvenOddSplit {
        p: Poly::new(even),
        q: Poly::new(odd),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiValue {
    Value(f64),
    /// At `u = −1/n` the prefactor blows up; only the limiting sign is
    /// meaningful: 0 when `p(0) = 0`, otherwise the sign of `p(0)`.
    EndpointLimit(i8),
}

/// `ψ(u) = (1+nu)^{-(n-1)/n} [f((1+nu)^{1/n}) + f(−(1+nu)^{1/n})]` for
/// `u ∈ [−1/n, 0]`.
pub fn psi_eval(f: &Poly, n: usize, u: &Rational) -> Result<PsiValue> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("n = {n} must be even and positive")));
    }
    let lower = rat(-1, n as i64);
    if *u < lower || *u > int(0) {
        return Err(Error::Domain(format!("u = {u} outside [{lower}, 0]")));
    }
    let base = int(1) + int(n as i64) * u;
    if base == int(0) {
        return Ok(PsiValue::EndpointLimit(f.sign_at(&int(0))));
    }
    let base = to_f64(&base);
    let s = base.powf(1.0 / n as f64);
    let prefactor = base.powf(-((n - 1) as f64) / n as f64);
    Ok(PsiValue::Value(
        prefactor * (f.eval_f64(s) + f.eval_f64(-s)),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignChangeReport {
    pub count: usize,
    /// Disjoint open intervals, each holding exactly one sign change.
    pub intervals: Vec<(Endpoint, Endpoint)>,
}

/// A rational interval endpoint serialized in short form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Endpoint(#[serde(with = "serde_short")] pub Rational);

/// Yun's square-free factorization: `p = c · ∏ factors[i]^(i+1)`.
pub fn square_free_factors(p: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    while !b.is_constant() {
        let a = b.gcd(&d);
        let b_next = b.div_rem(&a).0;
        let c_next = d.div_rem(&a).0;
        d = &c_next - &b_next.derivative();
        b = b_next;
        out.push(a);
    }
    out
}

/// Product of the odd-multiplicity square-free factors: exactly the roots
/// where `p` changes sign, each simple.
pub fn sign_change_part(p: &Poly) -> Poly {
    square_free_factors(p)
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(Poly::one(), |acc, (_, f)| &acc * f)
        .monic()
}

struct SturmChain(Vec<Poly>);

impl SturmChain {
    fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[k - 2].rem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(-r);
        }
        SturmChain(chain)
    }

    fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<i8> = self
            .0
            .iter()
            .map(|q| q.sign_at(x))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots in `(l, r)`; both endpoints must be non-roots.
    fn count(&self, l: &Rational, r: &Rational) -> usize {
        self.variations(l) - self.variations(r)
    }
}

/// Splitting point in `(l, r)` that is not a root of `p`.
fn split_point(p: &Poly, l: &Rational, r: &Rational) -> Rational {
    let width = r - l;
    (2i64..)
        .flat_map(|den| (1..den).map(move |num| rat(num, den)))
        .map(|frac| l + &width * frac)
        .find(|m| p.sign_at(m) != 0)
        .expect("a nonzero polynomial has finitely many roots")
}

/// Exact number of sign changes of `p` on the open interval `(a, b)`, with
/// isolating intervals.
pub fn sturm_sign_changes(p: &Poly, a: &Rational, b: &Rational) -> Result<SignChangeReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a >= b {
        return Err(Error::Domain(format!("empty interval ({a}, {b})")));
    }
    let mut core = sign_change_part(p);
    // boundary roots are not interior sign changes
    for x in [a, b] {
        if core.sign_at(x) == 0 {
            let linear = Poly::new(vec![-x.clone(), int(1)]);
            core = core.div_rem(&linear).0;
        }
    }
    if core.is_constant() {
        return Ok(SignChangeReport {
            count: 0,
            intervals: Vec::new(),
        });
    }
    let chain = SturmChain::new(&core);
    let mut intervals = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((l, r)) = stack.pop() {
        match chain.count(&l, &r) {
            0 => {}
            1 => intervals.push((Endpoint(l), Endpoint(r))),
            _ => {
                let m = split_point(&core, &l, &r);
                stack.push((m.clone(), r));
                stack.push((l, m));
            }
        }
    }
    intervals.sort();
    Ok(SignChangeReport {
        count: intervals.len(),
        intervals,
    })
}

/// Outcome of checking the moment-propagation theorem on a concrete `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropagationReport {
    pub n: usize,
    pub f: Poly,
    pub split: EvenOddSplit,
    /// Sign changes of `p` on `(0, 1)`; zero when `p = 0`.
    pub sign_changes: SignChangeReport,
    pub max_k: usize,
    pub moments: MomentReport,
}

/// Largest sign-change count of `p` on `(0, 1)` accepted as the hypothesis.
pub const MAX_SIGN_CHANGES: usize = 2;

/// Checks the hypotheses (at most two sign changes of the even part, and
/// `m_0 = m_1 = m_2 = 0`) for `g = t^{n-1}`; if they hold, confirms
/// `m_k = 0` for every `k <= max_k`.
pub fn moment_propagation_check(f: &Poly, n: usize, max_k: usize) -> Result<PropagationReport> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("n = {n} must be even and positive")));
    }
    let split = even_odd_split(f);
    let sign_changes = if split.p.is_zero() {
        SignChangeReport {
            count: 0,
            intervals: Vec::new(),
        }
    } else {
        sturm_sign_changes(&split.p, &int(0), &int(1))?
    };
    if sign_changes.count > MAX_SIGN_CHANGES {
        return Err(Error::HypothesisFailed(format!(
            "even part p = {} changes sign {} times on (0, 1)",
            split.p, sign_changes.count
        )));
    }
    let sys = AbelSystem::with_monomial_g(f.clone(), n);
    let moments = sys.moment_report(max_k.max(2))?;
    if let Some(k) = moments.first_nonzero_index {
        if k <= 2 {
            return Err(Error::HypothesisFailed(format!(
                "m_{k} = {} != 0",
                moments.moments[k]
            )));
        }
        return Err(Error::AssertionFailed(format!(
            "m_0 = m_1 = m_2 = 0 but m_{k} = {} != 0",
            moments.moments[k]
        )));
    }
    Ok(PropagationReport {
        n,
        f: f.clone(),
        split,
        sign_changes,
        max_k,
        moments,
    })
}
