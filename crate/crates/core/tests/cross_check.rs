//! Closed-form series vs the independent Volterra march, at moderate
//! resolution. The acceptance suite in the CLI crate repeats this at the
//! production step size; here the point is the cross-validation logic itself
//! and the gamma-mode discrimination.

use fke_core::closed_form::{build_solution, eval_solution, GammaMode, KineticProblem, Variant};
use fke_core::oracle::{solve_numeric, OracleConfig};
use fke_core::special::AccuracyPolicy;
use fke_core::srivastava::SrivastavaPoly;

fn suite_problem(variant: Variant, alpha: f64) -> KineticProblem {
    let poly = SrivastavaPoly::new(3, 1, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
    let (d, lambda) = match variant {
        Variant::T1 => (None, 0.0),
        Variant::T2 => (Some(1.2), 0.0),
        Variant::T3 => (None, 0.4),
        Variant::T4 => (Some(1.2), 0.4),
    };
    KineticProblem::new(variant, 1.0, alpha, 1.0, d, lambda, poly).unwrap()
}

/// Max deviation over nodes >= min_index, normalized by the closed form's
/// sup norm on those nodes (the solutions cross zero, so pointwise relative
/// error is not meaningful).
fn oracle_deviation(problem: &KineticProblem, mode: GammaMode, cfg: &OracleConfig) -> f64 {
    let policy = AccuracyPolicy::default();
    let sol = build_solution(problem, mode);
    let curve = solve_numeric(problem, cfg).unwrap();
    let mut max_abs: f64 = 0.0;
    let mut sup: f64 = 0.0;
    for i in cfg.t_eval_min_index..curve.len() {
        let closed = eval_solution(&sol, curve.time(i), &policy).unwrap();
        max_abs = max_abs.max((closed - curve.values()[i]).abs());
        sup = sup.max(closed.abs());
    }
    max_abs / sup.max(1e-12)
}

#[test]
fn derived_series_tracks_oracle() {
    let cfg = OracleConfig::new(1.0 / 256.0, 512).unwrap(); // t in (0, 2]
    for variant in [Variant::T1, Variant::T2, Variant::T3, Variant::T4] {
        for alpha in [0.5, 0.9] {
            let problem = suite_problem(variant, alpha);
            let dev = oracle_deviation(&problem, GammaMode::Derived, &cfg);
            assert!(
                dev <= 5e-3,
                "{} alpha={alpha}: deviation {dev} exceeds 5e-3",
                problem.variant().name()
            );
        }
    }
}

#[test]
fn paper_literal_mode_deviates_more() {
    // For T1/T3 with w >= 1 and alpha != 1 the printed Gamma(alpha k + 1)
    // coefficient does not satisfy the equation. The difference between the
    // two series can cross zero at isolated points (for this suite, T3 with
    // alpha = 0.9 does so near t = 1.07), so the pointwise comparison skips
    // nodes where the mode gap is below the oracle's own error scale; the
    // max deviation over t >= 0.5 must always favor the derived series.
    let policy = AccuracyPolicy::default();
    let cfg = OracleConfig::new(1.0 / 256.0, 512).unwrap();
    for variant in [Variant::T1, Variant::T3] {
        for alpha in [0.5, 0.9] {
            let problem = suite_problem(variant, alpha);
            let derived = build_solution(&problem, GammaMode::Derived);
            let literal = build_solution(&problem, GammaMode::PaperLiteral);
            let curve = solve_numeric(&problem, &cfg).unwrap();
            let mut max_derived: f64 = 0.0;
            let mut max_literal: f64 = 0.0;
            for i in 0..curve.len() {
                let t = curve.time(i);
                if t < 0.5 {
                    continue;
                }
                let oracle = curve.values()[i];
                let err_derived = (eval_solution(&derived, t, &policy).unwrap() - oracle).abs();
                let err_literal = (eval_solution(&literal, t, &policy).unwrap() - oracle).abs();
                max_derived = max_derived.max(err_derived);
                max_literal = max_literal.max(err_literal);
                if err_literal > 1e-2 {
                    assert!(
                        err_derived < err_literal,
                        "{} alpha={alpha} t={t}: derived {err_derived} !< literal {err_literal}",
                        problem.variant().name()
                    );
                }
            }
            assert!(
                max_derived < max_literal,
                "{} alpha={alpha}: max derived {max_derived} !< max literal {max_literal}",
                problem.variant().name()
            );
        }
    }
}

#[test]
fn residual_suite_derived_mode() {
    let policy = AccuracyPolicy::default();
    for variant in [Variant::T1, Variant::T2, Variant::T3, Variant::T4] {
        for alpha in [0.5, 0.9] {
            let problem = suite_problem(variant, alpha);
            let sol = build_solution(&problem, GammaMode::Derived);
            for t in [0.5, 1.0, 2.0] {
                let n_t = eval_solution(&sol, t, &policy).unwrap();
                let r = fke_core::closed_form::residual(&problem, &sol, t, &policy).unwrap();
                assert!(
                    r <= 1e-8 * (1.0 + n_t.abs()),
                    "{} alpha={alpha} t={t}: residual {r}",
                    problem.variant().name()
                );
            }
        }
    }
}
