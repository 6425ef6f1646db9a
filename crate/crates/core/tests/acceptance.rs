//! Acceptance checks, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so every line is printed on
//! each `cargo test`; the process fails if any criterion fails.

use std::time::{Duration, Instant};

use abel_center::arith::{int, rat, Rational};
use abel_center::ode::{cross_validate, displacement_scan, Tolerances, DEFAULT_GRID};
use abel_center::planar::{reduce_planar, PlanarSystem};
use abel_center::returnmap::{
    compute_return_series, h_series_identities, low_order_identities, residual,
};
use abel_center::signs::sturm_sign_changes;
use abel_center::system::{
    closed_form_determinant, moment_linear_system, DEFAULT_EVEN_DEGREES, DEFAULT_MOMENT_INDICES,
};
use abel_center::{AbelSystem, ExactValue, Poly, TrigPoly};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<Rational> = (0..=deg)
        .map(|_| rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=3)))
        .collect();
    Poly::new(coeffs)
}

fn random_interval(rng: &mut ChaCha8Rng) -> (Rational, Rational) {
    let a = rat(rng.gen_range(-4..=1), rng.gen_range(1..=2));
    let b = &a + rat(rng.gen_range(1..=4), rng.gen_range(1..=2));
    (a, b)
}

fn trig_counterexample_moments() -> Verdict {
    let f = TrigPoly::from_ints(0, &[], &[1, -1, 1]);
    let g = TrigPoly::from_ints(0, &[1, 2], &[]);
    let report = AbelSystem::trigonometric(f, g)
        .moment_report(3)
        .map_err(|e| e.to_string())?;
    let expected = [
        ExactValue::rational(int(0)),
        ExactValue::rational(int(0)),
        ExactValue::rational(int(0)),
        ExactValue::pi_multiple(rat(1, 2)),
    ];
    ensure(report.moments == expected, || {
        format!(
            "moments {:?}",
            report
                .moments
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        )
    })?;
    Ok("m_0 = m_1 = m_2 = 0, m_3 = 1/2*pi".into())
}

fn determinant_and_kernel() -> Verdict {
    for n in [2usize, 4, 6, 8] {
        let mm = moment_linear_system(n, &DEFAULT_EVEN_DEGREES, &DEFAULT_MOMENT_INDICES)
            .map_err(|e| e.to_string())?;
        let nn = int(n as i64);
        let formula = rat(-16, 15)
            / ((&nn + int(1))
                * (&nn + int(3))
                * (&nn + int(5))
                * (int(1) + int(2) * &nn)
                * (int(3) + int(2) * &nn)
                * (int(5) + int(2) * &nn));
        ensure(mm.determinant.as_ref() == Some(&formula), || {
            format!("n = {n}: det {:?} != {formula}", mm.determinant)
        })?;
        ensure(closed_form_determinant(n) == formula, || {
            format!("n = {n}: closed form disagrees")
        })?;
        ensure(mm.kernel.is_empty(), || {
            format!("n = {n}: kernel {:?}", mm.kernel)
        })?;
    }
    // Degree-5 f with g = t^{n-1}: m_0 = m_1 = m_2 = 0 exactly when the even part vanishes.
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut passing = 0;
    for i in 0..200 {
        let n = [2usize, 4][i % 2];
        let mut c: Vec<i64> = (0..6).map(|_| rng.gen_range(-3..=3)).collect();
        if i % 4 < 2 {
            for j in [0, 2, 4] {
                c[j] = 0;
            }
        }
        let f = Poly::from_ints(&c);
        let sys = AbelSystem::with_monomial_g(f.clone(), n);
        let report = sys.moment_report(2).map_err(|e| e.to_string())?;
        let even_zero = c[0] == 0 && c[2] == 0 && c[4] == 0;
        ensure(report.all_zero() == even_zero, || {
            format!(
                "f = {f}, n = {n}: moments zero {} but even part zero {even_zero}",
                report.all_zero()
            )
        })?;
        passing += usize::from(report.all_zero());
    }
    Ok(format!("det matches for n in {{2,4,6,8}}, kernel empty; {passing}/200 random f pass only with a0 = a2 = a4 = 0"))
}

fn integral_identities() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0;
    for _ in 0..50 {
        let (a, b) = random_interval(&mut rng);
        let sys = AbelSystem::polynomial(
            random_poly(&mut rng, 6, 5),
            random_poly(&mut rng, 6, 5),
            a,
            b,
        )
        .map_err(|e| e.to_string())?;
        let series = compute_return_series(&sys, 8).map_err(|e| e.to_string())?;
        let mut all = low_order_identities(&sys, &series)
            .map_err(|e| e.to_string())?
            .to_vec();
        all.extend(h_series_identities(&sys, &series).map_err(|e| e.to_string())?);
        if let Some(bad) = all.iter().find(|c| !c.holds()) {
            return Err(format!(
                "{}: {} != {} for {}",
                bad.name,
                bad.lhs,
                bad.rhs,
                serde_json::to_string(&sys).unwrap()
            ));
        }
        checks += all.len();
    }
    Ok(format!("{checks} exact identities on 50 systems"))
}

fn composition_centers() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let one = int(1);
    for i in 0..200 {
        // W = (t - a)(t - b)V + c has W(a) = W(b)
        let (a, b) = (int(-1), int(1));
        let v = random_poly(&mut rng, 1, 3);
        let v = if v.is_zero() { Poly::one() } else { v };
        let w = &(&Poly::new(vec![-&a, one.clone()]) * &Poly::new(vec![-&b, one.clone()])) * &v;
        let w = &w + &Poly::constant(int(rng.gen_range(-2..=2)));
        let ft = random_poly(&mut rng, 2, 4);
        let gt = random_poly(&mut rng, 2, 4);
        let f = ft.compose(&w).derivative();
        let g = gt.compose(&w).derivative();
        let sys = AbelSystem::polynomial(f, g, a, b).map_err(|e| e.to_string())?;
        let m = sys.moment_report(2).map_err(|e| e.to_string())?;
        ensure(m.all_zero(), || {
            format!("instance {i}: W = {w}, moments {:?}", m.moments)
        })?;
        let series = compute_return_series(&sys, 10).map_err(|e| e.to_string())?;
        ensure(series.center_order().is_none(), || {
            format!(
                "instance {i}: W = {w}, r_{:?}(1) != 0",
                series.center_order()
            )
        })?;
    }
    Ok("200 composite systems: m_0..m_2 = 0 and r_k(1) = 0 for k <= 10".into())
}

fn odd_f_centers_and_focus() -> Verdict {
    let tol = Tolerances::default();
    for n in [2usize, 4] {
        let sys = AbelSystem::with_monomial_g(Poly::from_ints(&[0, -1, 0, 1]), n);
        let series = compute_return_series(&sys, 12).map_err(|e| e.to_string())?;
        ensure(
            series.endpoint_values.iter().all(num_traits::Zero::is_zero),
            || format!("n = {n}: r_k(1) = {:?}", series.endpoint_values),
        )?;
        let m = sys.moment_report(20).map_err(|e| e.to_string())?;
        ensure(m.all_zero(), || format!("n = {n}: moments not all zero"))?;
        let scan = displacement_scan(&sys, &DEFAULT_GRID, &tol);
        let max = scan.max_abs_displacement();
        ensure(
            scan.failures().is_empty() && max.is_some_and(|d| d < 1e-10),
            || format!("n = {n}: max |d| = {max:?}, failures {:?}", scan.failures()),
        )?;
    }
    let focus = AbelSystem::on_unit_interval(Poly::from_ints(&[1]), Poly::from_ints(&[0, 1]));
    let series = compute_return_series(&focus, 12).map_err(|e| e.to_string())?;
    ensure(
        series.center_order() == Some(3) && *series.endpoint(3) == int(2),
        || {
            format!(
                "focus: order {:?}, r_3(1) = {}",
                series.center_order(),
                series.endpoint(3)
            )
        },
    )?;
    let scan = displacement_scan(&focus, &DEFAULT_GRID, &tol);
    let cv = cross_validate(&focus, &series, &scan).map_err(|e| e.to_string())?;
    let worst = cv
        .ratios
        .iter()
        .map(|(_, r)| ((r - 2.0) / 2.0).abs())
        .fold(0.0f64, f64::max);
    Ok(format!(
        "odd f centers for n in {{2,4}}; focus r_3(1) = 2, d/ρ³ within {:.3}%",
        100.0 * worst
    ))
}

fn residual_property() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..20 {
        let (a, b) = random_interval(&mut rng);
        let sys = AbelSystem::polynomial(
            random_poly(&mut rng, 4, 5),
            random_poly(&mut rng, 4, 5),
            a,
            b,
        )
        .map_err(|e| e.to_string())?;
        let series = compute_return_series(&sys, 8).map_err(|e| e.to_string())?;
        let res = residual(&sys, &series).map_err(|e| e.to_string())?;
        ensure(res.len() == 9 && res.iter().all(Poly::is_zero), || {
            format!(
                "system {i}: residual {:?}",
                res.iter().map(ToString::to_string).collect::<Vec<_>>()
            )
        })?;
    }
    Ok("x_8' - f x_8³ - g x_8² has no terms through ρ^8 on 20 systems".into())
}

/// Sign changes of `p` between consecutive midpoints of a uniform grid on `(a, b)`.
fn sampled_sign_changes(p: &Poly, a: f64, b: f64, samples: usize) -> usize {
    let h = (b - a) / samples as f64;
    let mut last = 0.0f64;
    let mut count = 0;
    for i in 0..samples {
        let v = p.eval_f64(a + (i as f64 + 0.5) * h);
        if v != 0.0 {
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = v;
        }
    }
    count
}

fn sturm_against_sampling() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let candidates: Vec<i64> = (-8..=24).collect();
    let mut total = 0;
    for i in 0..50 {
        // distinct roots on a 1/16 grid, with an optional root-free quadratic factor
        let with_quadratic = rng.gen_bool(0.4);
        let roots = rng.gen_range(0..=if with_quadratic { 4 } else { 6 });
        let mut p = Poly::constant(int(
            rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 }
        ));
        for &r in candidates.choose_multiple(&mut rng, roots) {
            p = &p * &Poly::new(vec![rat(-r, 16), int(1)]);
        }
        if with_quadratic {
            p = &p * &Poly::from_ints(&[rng.gen_range(1..=4), rng.gen_range(-1..=1), 1]);
        }
        let sturm = sturm_sign_changes(&p, &int(0), &int(1)).map_err(|e| e.to_string())?;
        let sampled = sampled_sign_changes(&p, 0.0, 1.0, 1_000_000);
        ensure(sturm.count == sampled, || {
            format!(
                "case {i}: p = {p}: Sturm {} vs sampled {sampled}",
                sturm.count
            )
        })?;
        total += sampled;
    }
    Ok(format!(
        "50 square-free polynomials agree ({total} sign changes in total)"
    ))
}

/// `(A, B, B')` at `θ` straight from the planar forms.
fn direct_planar_forms(sys: &PlanarSystem, theta: f64) -> (f64, f64, f64) {
    let n = sys.n;
    let (c, s) = (theta.cos(), theta.sin());
    let form = |coeffs: &[Rational]| -> (f64, f64) {
        // value and θ-derivative of Σ k_j cos^{n-j} sin^j
        let mut value = 0.0;
        let mut deriv = 0.0;
        for (j, k) in coeffs.iter().enumerate() {
            let k = abel_center::arith::to_f64(k);
            let (pc, ps) = ((n - j) as i32, j as i32);
            value += k * c.powi(pc) * s.powi(ps);
            if pc > 0 {
                deriv -= k * pc as f64 * c.powi(pc - 1) * s.powi(ps + 1);
            }
            if ps > 0 {
                deriv += k * ps as f64 * c.powi(pc + 1) * s.powi(ps - 1);
            }
        }
        (value, deriv)
    };
    let (p, dp) = form(&sys.p);
    let (q, dq) = form(&sys.q);
    let a = c * p + s * q;
    let b = c * q - s * p;
    let db = -s * q + c * dq - c * p - s * dp;
    (a, b, db)
}

fn planar_reduction() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for i in 0..50 {
        let n = [2usize, 3, 4][i % 3];
        let p: Vec<i64> = (0..=n).map(|_| rng.gen_range(-4..=4)).collect();
        let q: Vec<i64> = (0..=n).map(|_| rng.gen_range(-4..=4)).collect();
        let planar = PlanarSystem::from_ints(n, &p, &q).map_err(|e| e.to_string())?;
        let red = reduce_planar(&planar).map_err(|e| e.to_string())?;
        let AbelSystem::Trigonometric(t) = &red.system else {
            return Err("reduction is not trigonometric".into());
        };
        ensure(t.f.degree() <= 2 * (n + 1) && t.g.degree() <= n + 1, || {
            format!(
                "case {i}: deg f = {}, deg g = {}, n = {n}",
                t.f.degree(),
                t.g.degree()
            )
        })?;
        for _ in 0..100 {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let (a, b, db) = direct_planar_forms(&planar, theta);
            let m = (n - 1) as f64;
            let err_f = (t.f.eval_f64(theta) + m * a * b).abs();
            let err_g = (t.g.eval_f64(theta) - (m * a - db)).abs();
            worst = worst.max(err_f).max(err_g);
        }
    }
    ensure(worst < 1e-10, || format!("max pointwise error {worst:e}"))?;
    Ok(format!(
        "50 systems within degree bounds; max pointwise error {worst:.1e}"
    ))
}

fn main() {
    type Check = fn() -> Verdict;
    let criteria: [(&str, Check, Duration); 8] = [
        (
            "trigonometric moments of the standard counterexample",
            trig_counterexample_moments,
            Duration::from_secs(1),
        ),
        (
            "moment matrix determinant and empty kernel",
            determinant_and_kernel,
            Duration::from_secs(1),
        ),
        (
            "integral identities for the return-map coefficients",
            integral_identities,
            Duration::from_secs(30),
        ),
        (
            "composition witnesses imply vanishing obstructions",
            composition_centers,
            Duration::from_secs(120),
        ),
        (
            "odd f centers and the cubic focus, exact and numeric",
            odd_f_centers_and_focus,
            Duration::from_secs(60),
        ),
        (
            "truncated series residual",
            residual_property,
            Duration::from_secs(60),
        ),
        (
            "Sturm counts against a sampling oracle",
            sturm_against_sampling,
            Duration::from_secs(60),
        ),
        (
            "planar reduction degree bounds and pointwise agreement",
            planar_reduction,
            Duration::from_secs(30),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > *limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!(
                "criterion {}: PASS  {name} ({detail}) [{elapsed:.2?}]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
