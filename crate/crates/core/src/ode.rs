//! Floating-point oracle: integrate the Abel equation with an adaptive
//! Dormand–Prince 5(4) scheme and measure the displacement
//! `d(ρ) = x(b) − ρ`.
//!
//! Nothing here feeds back into the exact modules; it only cross-checks
//! them.

use serde::Serialize;

use crate::arith::to_f64;
use crate::error::{Error, Result};
use crate::returnmap::ReturnMapSeries;
use crate::system::AbelSystem;

pub const DEFAULT_GRID: [f64; 12] = [
    -0.05, -0.02, -0.01, -0.005, -0.002, -0.001, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05,
];

/// `|d|` below this counts as numerically zero when no finite order is expected.
pub const ZERO_DISPLACEMENT_TOL: f64 = 1e-10;

/// Relative agreement required between `d(ρ)/ρ^k` and `r_k(b)`.
pub const RATIO_REL_TOL: f64 = 0.05;

/// Points must exceed this multiple of the integration tolerance to enter
/// an order fit.
const NOISE_FACTOR: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// `|x|` beyond this aborts with `BlowUp`.
    pub blow_up: f64,
    pub max_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            blow_up: 1e6,
            max_steps: 1_000_000,
        }
    }
}

impl Tolerances {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Tolerances {
            rel_tol,
            ..Self::default()
        }
    }

    /// Local error scale at magnitude `x`.
    fn scale(&self, x: f64) -> f64 {
        self.abs_tol + self.rel_tol * x.abs()
    }
}

#[derive(Clone, Debug)]
enum FloatFn {
    Poly(Vec<f64>),
    Trig {
        constant: f64,
        cos: Vec<f64>,
        sin: Vec<f64>,
    },
}

impl FloatFn {
    fn eval(&self, t: f64) -> f64 {
        match self {
            FloatFn::Poly(c) => c.iter().rev().fold(0.0, |acc, &x| acc * t + x),
            FloatFn::Trig { constant, cos, sin } => {
                let mut acc = *constant;
                for (k, a) in cos.iter().enumerate() {
                    acc += a * ((k + 1) as f64 * t).cos();
                }
                for (k, b) in sin.iter().enumerate() {
                    acc += b * ((k + 1) as f64 * t).sin();
                }
                acc
            }
        }
    }
}

/// An [`AbelSystem`] with coefficients rounded to `f64` once.
#[derive(Clone, Debug)]
pub struct FloatSystem {
    f: FloatFn,
    g: FloatFn,
    pub a: f64,
    pub b: f64,
}

impl FloatSystem {
    pub fn new(sys: &AbelSystem) -> Self {
        let floats = |v: &[crate::Rational]| v.iter().map(to_f64).collect::<Vec<_>>();
        match sys {
            AbelSystem::Polynomial(p) => FloatSystem {
                f: FloatFn::Poly(floats(p.f.coeffs())),
                g: FloatFn::Poly(floats(p.g.coeffs())),
                a: to_f64(&p.a),
                b: to_f64(&p.b),
            },
            AbelSystem::Trigonometric(t) => {
                let trig = |p: &crate::TrigPoly| FloatFn::Trig {
                    constant: to_f64(p.constant_term()),
                    cos: floats(p.cos_coeffs()),
                    sin: floats(p.sin_coeffs()),
                };
                FloatSystem {
                    f: trig(&t.f),
                    g: trig(&t.g),
                    a: 0.0,
                    b: std::f64::consts::TAU,
                }
            }
        }
    }

    fn rhs(&self, t: f64, x: f64) -> f64 {
        let x2 = x * x;
        self.f.eval(t) * x2 * x + self.g.eval(t) * x2
    }

    /// `x(b)` for `x(a) = ρ`, with step statistics.
    pub fn integrate(&self, rho: f64, tol: &Tolerances) -> Result<Integration> {
        if !rho.is_finite() {
            return Err(Error::Domain(format!("initial value {rho} is not finite")));
        }
        if !(tol.rel_tol > 0.0 && tol.abs_tol > 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        if rho == 0.0 {
            return Ok(Integration {
                x_end: 0.0,
                steps: 0,
                rejected: 0,
            });
        }
        let span = self.b - self.a;
        let h_min = span * 1e-14;
        let h_max = span / 16.0;
        let (mut t, mut x) = (self.a, rho);
        let mut h = span / 64.0;
        let (mut steps, mut rejected) = (0usize, 0usize);
        while t < self.b {
            if steps + rejected >= tol.max_steps {
                return Err(Error::StepFailure { t, h });
            }
            let last = t + h >= self.b;
            if last {
                h = self.b - t;
            }
            let (x_new, err) = dopri_step(|s, y| self.rhs(s, y), t, x, h);
            if !x_new.is_finite() || x_new.abs() > tol.blow_up {
                // shrink first; only give up when the step cannot shrink further
                if h <= h_min {
                    return Err(Error::BlowUp {
                        t,
                        bound: tol.blow_up,
                    });
                }
                h *= 0.25;
                rejected += 1;
                continue;
            }
            let ratio = err / tol.scale(x.abs().max(x_new.abs()));
            if ratio <= 1.0 {
                t = if last { self.b } else { t + h };
                x = x_new;
                steps += 1;
            } else {
                rejected += 1;
            }
            let factor = if ratio == 0.0 {
                5.0
            } else {
                (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
            };
            h = (h * factor).min(h_max);
            if h < h_min && t < self.b {
                return Err(Error::StepFailure { t, h });
            }
        }
        Ok(Integration {
            x_end: x,
            steps,
            rejected,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Integration {
    pub x_end: f64,
    pub steps: usize,
    pub rejected: usize,
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
/// Fifth- minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// One step; returns the fifth-order value and the embedded error estimate.
fn dopri_step(rhs: impl Fn(f64, f64) -> f64, t: f64, x: f64, h: f64) -> (f64, f64) {
    let mut k = [0.0f64; 7];
    for i in 0..7 {
        let xi = x + h * (0..i).map(|j| A[i][j] * k[j]).sum::<f64>();
        k[i] = rhs(t + C[i] * h, xi);
    }
    let x_new = x + h * (0..7).map(|i| B5[i] * k[i]).sum::<f64>();
    let err = (h * (0..7).map(|i| E[i] * k[i]).sum::<f64>()).abs();
    (x_new, err)
}

/// `x(b)` from `x(a) = ρ`.
pub fn integrate_abel(sys: &AbelSystem, rho: f64, tol: &Tolerances) -> Result<f64> {
    FloatSystem::new(sys).integrate(rho, tol).map(|r| r.x_end)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub rho: f64,
    pub d: Option<f64>,
    pub steps: usize,
    pub status: String,
}

impl ScanPoint {
    pub fn is_ok(&self) -> bool {
        self.d.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrderFit {
    pub order: usize,
    /// Least-squares slope of `ln|d|` against `ln|ρ|`.
    pub slope: f64,
    /// `|slope − order|`.
    pub misfit: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisplacementScan {
    pub tolerances: Tolerances,
    pub points: Vec<ScanPoint>,
    pub estimated_order: Option<OrderFit>,
}

impl DisplacementScan {
    pub fn rho_grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.rho).collect()
    }

    pub fn displacements(&self) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter_map(|p| p.d.map(|d| (p.rho, d)))
            .collect()
    }

    pub fn failures(&self) -> Vec<(f64, String)> {
        self.points
            .iter()
            .filter(|p| !p.is_ok())
            .map(|p| (p.rho, p.status.clone()))
            .collect()
    }

    pub fn max_abs_displacement(&self) -> Option<f64> {
        self.displacements()
            .iter()
            .map(|(_, d)| d.abs())
            .fold(None, |m, d| Some(m.map_or(d, |m: f64| m.max(d))))
    }

    /// Successful points clearly above integration noise, smallest `|ρ|`
    /// first.
    fn signal_points(&self) -> Vec<(f64, f64)> {
        let mut pts: Vec<(f64, f64)> = self
            .displacements()
            .into_iter()
            .filter(|&(rho, d)| rho != 0.0 && d.abs() > NOISE_FACTOR * self.tolerances.scale(rho))
            .collect();
        pts.sort_by(|x, y| x.0.abs().total_cmp(&y.0.abs()));
        pts
    }

    /// Writes `rho,d,steps,status` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho,d,steps,status\n");
        for p in &self.points {
            let d = p.d.map(|d| format!("{d:e}")).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", p.rho, d, p.steps, p.status));
        }
        out
    }
}

fn fit_order(points: &[(f64, f64)]) -> Option<OrderFit> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .take(3)
        .map(|&(rho, d)| (rho.abs().ln(), d.abs().ln()))
        .collect();
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if pts.len() < 2 || sxx < 1e-12 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let order = slope.round();
    if order < 1.0 {
        return None;
    }
    Some(OrderFit {
        order: order as usize,
        slope,
        misfit: (slope - order).abs(),
    })
}

/// `d(ρ) = x(b) − ρ` on every grid point, plus a fitted leading order.
pub fn displacement_scan(
    sys: &AbelSystem,
    rho_values: &[f64],
    tol: &Tolerances,
) -> DisplacementScan {
    let float_sys = FloatSystem::new(sys);
    let points: Vec<ScanPoint> = std::thread::scope(|scope| {
        let handles: Vec<_> = rho_values
            .iter()
            .map(|&rho| {
                let float_sys = &float_sys;
                scope.spawn(move || match float_sys.integrate(rho, tol) {
                    Ok(r) => ScanPoint {
                        rho,
                        d: Some(r.x_end - rho),
                        steps: r.steps,
                        status: "ok".into(),
                    },
                    Err(e) => ScanPoint {
                        rho,
                        d: None,
                        steps: 0,
                        status: e.to_string(),
                    },
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("integration thread panicked"))
            .collect()
    });
    let mut scan = DisplacementScan {
        tolerances: *tol,
        points,
        estimated_order: None,
    };
    scan.estimated_order = fit_order(&scan.signal_points());
    scan
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossValidation {
    pub center_order: Option<usize>,
    /// `r_k(b)` as a float, when a finite order exists.
    pub expected_coefficient: Option<f64>,
    /// `(ρ, d(ρ)/ρ^k)` over the points used.
    pub ratios: Vec<(f64, f64)>,
    pub max_abs_displacement: Option<f64>,
}

/// Checks the numeric displacement against the exact series: a finite
/// order `k` requires `d(ρ)/ρ^k` within 5% of `r_k(b)` on the three
/// smallest usable `|ρ|`; no finite order requires `|d| <= 1e-10`.
pub fn cross_validate(
    sys: &AbelSystem,
    series: &ReturnMapSeries,
    scan: &DisplacementScan,
) -> Result<CrossValidation> {
    sys.as_poly()?;
    let center_order = series.center_order();
    let max_abs_displacement = scan.max_abs_displacement();
    match center_order {
        Some(k) => {
            let v = to_f64(series.endpoint(k));
            let ratios: Vec<(f64, f64)> = scan
                .signal_points()
                .into_iter()
                .take(3)
                .map(|(rho, d)| (rho, d / rho.powi(k as i32)))
                .collect();
            if ratios.is_empty() {
                return Err(Error::Mismatch(format!(
                    "r_{k}(b) = {v} but no displacement rose above integration noise"
                )));
            }
            if let Some(&(rho, ratio)) = ratios
                .iter()
                .find(|(_, ratio)| (ratio - v).abs() > RATIO_REL_TOL * v.abs())
            {
                return Err(Error::Mismatch(format!(
                    "d(ρ)/ρ^{k} = {ratio} at ρ = {rho}, expected r_{k}(b) = {v} within 5%"
                )));
            }
            Ok(CrossValidation {
                center_order,
                expected_coefficient: Some(v),
                ratios,
                max_abs_displacement,
            })
        }
        None => {
            if let Some((rho, d)) = scan
                .displacements()
                .into_iter()
                .find(|(_, d)| d.abs() > ZERO_DISPLACEMENT_TOL)
            {
                return Err(Error::Mismatch(format!(
                    "series vanishes to order {} but |d({rho})| = {:e}",
                    series.order,
                    d.abs()
                )));
            }
            if scan.points.iter().all(|p| !p.is_ok()) {
                return Err(Error::Mismatch(
                    "every grid point failed to integrate".into(),
                ));
            }
            Ok(CrossValidation {
                center_order,
                expected_coefficient: None,
                ratios: Vec::new(),
                max_abs_displacement,
            })
        }
    }
}

/// True if every successful displacement is numerically zero.
pub fn numerically_flat(scan: &DisplacementScan) -> bool {
    scan.displacements()
        .iter()
        .all(|(_, d)| d.abs() <= ZERO_DISPLACEMENT_TOL)
        && scan.points.iter().any(ScanPoint::is_ok)
}
