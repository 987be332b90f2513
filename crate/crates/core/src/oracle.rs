//! Independent numerical solver for the defining integral equation.
//!
//! The closed forms in [`crate::closed_form`] come from a Laplace-transform
//! derivation; this module never touches them. It discretizes
//!
//! ```text
//! N(t) = N0 f(t) - r^a (I^a N)(t)
//! ```
//!
//! directly as a weakly singular Volterra equation of the second kind and
//! marches it with implicit product-trapezoid steps. Agreement between the
//! two routes is the ground-truth check for the series coefficients.

use alloc::format;
use alloc::vec::Vec;

use crate::closed_form::KineticProblem;
use crate::error::{Error, Result};
use crate::frac_ops::{rl_integral_power, ProductTrapezoid, SampledCurve};
use crate::special::recip_gamma;
use crate::srivastava::{eval_monomials, MonomialTerm};

/// Grid configuration for the Volterra march.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub h: f64,
    pub n_steps: usize,
    /// Nodes below this index are excluded from error metrics; the first
    /// intervals carry the quadrature error of a singular forcing.
    pub t_eval_min_index: usize,
}

impl OracleConfig {
    pub fn new(h: f64, n_steps: usize) -> Result<Self> {
        if !(h > 0.0) || !(h <= 0.1) {
            return Err(Error::Domain(format!(
                "step h must lie in (0, 0.1], got {h}"
            )));
        }
        if n_steps == 0 {
            return Err(Error::Domain("n_steps must be >= 1".into()));
        }
        if h * n_steps as f64 > 16.0 {
            return Err(Error::Domain(format!(
                "grid extends to {} > 16, refusing runaway grid",
                h * n_steps as f64
            )));
        }
        Ok(OracleConfig {
            h,
            n_steps,
            t_eval_min_index: 10,
        })
    }

    pub fn with_min_index(mut self, index: usize) -> Self {
        self.t_eval_min_index = index;
        self
    }
}

/// Monomial expansion of the forcing f(t) for the problem's variant.
pub fn forcing_terms(problem: &KineticProblem) -> Result<Vec<MonomialTerm>> {
    let (scale_power, scale_coeff) = if problem.variant().uses_decay_rate() {
        (problem.alpha(), libm::pow(problem.c(), problem.alpha()))
    } else {
        (1.0, 1.0)
    };
    problem
        .poly()
        .frac_derivative_terms(problem.lambda(), scale_power, scale_coeff)
}

/// Forcing f(t): S(t), S(c^a t^a), or a lambda-derivative of either.
/// Singular at t = 0 when lambda > 0.
pub fn forcing(problem: &KineticProblem, t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("t must be finite and >= 0, got {t}")));
    }
    let terms = forcing_terms(problem)?;
    eval_monomials(&terms, t)
}

/// March the discretized Volterra equation on the grid `t_n = n h`.
///
/// The forcing part is handled exactly: substituting `M = N - N0 f` turns
/// the equation into
///
/// ```text
/// M(t) = -r^a (I^a N0 f)(t) - r^a (I^a M)(t)
/// ```
///
/// whose inhomogeneity is a finite monomial sum integrated by the analytic
/// monomial rule, so the t^(-lambda) singularity of f never meets the
/// quadrature. `M(0) = 0` and M is continuous, and each step is a scalar
/// linear solve with product-trapezoid weights `w`:
///
/// ```text
/// M_n = (g_n - r^a / Gamma(a) * sum_{j<n} w_{n,j} M_j)
///       / (1 + r^a w_{n,n} / Gamma(a))
/// ```
///
/// The returned samples are `N_n = N0 f(t_n) + M_n`. Node 0 is `N0 f(0)`
/// when finite; for singular forcings (lambda > 0) it is linearly
/// extrapolated from nodes 1-2 and never enters error metrics.
pub fn solve_numeric(problem: &KineticProblem, cfg: &OracleConfig) -> Result<SampledCurve> {
    let alpha = problem.alpha();
    let terms = forcing_terms(problem)?;
    let weights = ProductTrapezoid::new(alpha, cfg.h, cfg.n_steps)?;
    let r_alpha = libm::pow(problem.rate_base(), alpha);
    let damping = r_alpha * recip_gamma(alpha);

    // I^a applied termwise to N0 f: monomials of power p_i + alpha
    let integrated: Vec<MonomialTerm> = terms
        .iter()
        .map(|term| {
            Ok(MonomialTerm {
                coeff: problem.n0() * term.coeff * rl_integral_power(term.power, alpha, 1.0)?,
                power: term.power + alpha,
            })
        })
        .collect::<Result<_>>()?;

    let mut m = Vec::with_capacity(cfg.n_steps + 1);
    m.push(0.0);
    for n in 1..=cfg.n_steps {
        let g_n = -r_alpha * eval_monomials(&integrated, n as f64 * cfg.h)?;
        let mut history = 0.0;
        for (j, mj) in m.iter().enumerate() {
            history += weights.weight(n, j) * mj;
        }
        m.push((g_n - damping * history) / (1.0 + damping * weights.weight(n, n)));
    }

    let mut values = Vec::with_capacity(cfg.n_steps + 1);
    values.push(0.0); // placeholder until nodes 1-2 exist
    for (n, &mn) in m.iter().enumerate().skip(1) {
        values.push(problem.n0() * eval_monomials(&terms, n as f64 * cfg.h)? + mn);
    }
    values[0] = match eval_monomials(&terms, 0.0) {
        Ok(f0) => problem.n0() * f0,
        Err(Error::SingularEvaluation) if cfg.n_steps >= 2 => 2.0 * values[1] - values[2],
        Err(Error::SingularEvaluation) => values[1],
        Err(e) => return Err(e),
    };
    SampledCurve::new(0.0, cfg.h, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::Variant;
    use crate::srivastava::SrivastavaPoly;
    use alloc::vec;
    use approx::assert_relative_eq;

    fn poly(w: u32, coeffs: Vec<f64>) -> SrivastavaPoly {
        SrivastavaPoly::new(w, 1, coeffs).unwrap()
    }

    #[test]
    fn config_guards() {
        assert!(OracleConfig::new(0.2, 10).is_err());
        assert!(OracleConfig::new(0.1, 200).is_err()); // 20 > 16
        assert!(OracleConfig::new(0.0, 10).is_err());
        assert!(OracleConfig::new(0.01, 0).is_err());
        assert_eq!(OracleConfig::new(0.01, 100).unwrap().t_eval_min_index, 10);
    }

    #[test]
    fn forcing_examples() {
        // T1, (1 - t)^2 at t = 0.5
        let t1 = KineticProblem::new(
            Variant::T1,
            1.0,
            0.5,
            1.0,
            None,
            0.0,
            poly(2, vec![1.0, 1.0, 1.0]),
        )
        .unwrap();
        assert_relative_eq!(forcing(&t1, 0.5).unwrap(), 0.25, max_relative = 1e-13);

        // T2 with a constant polynomial: f == 1 for any t
        let t2 = KineticProblem::new(
            Variant::T2,
            1.0,
            0.5,
            2.0,
            Some(1.0),
            0.0,
            poly(0, vec![1.0]),
        )
        .unwrap();
        assert_eq!(forcing(&t2, 1.7).unwrap(), 1.0);

        // T3 with S(t) = -t, lambda = 1/2: f(1) = -1/Gamma(3/2)
        let t3 = KineticProblem::new(
            Variant::T3,
            1.0,
            0.5,
            1.0,
            None,
            0.5,
            poly(1, vec![0.0, 1.0]),
        )
        .unwrap();
        assert_relative_eq!(
            forcing(&t3, 1.0).unwrap(),
            -1.1283791670955126,
            max_relative = 1e-12
        );
        // A_0 = 0 keeps the t^{-lambda} term silent; f(0) = 0 there
        assert_eq!(forcing(&t3, 0.0).unwrap(), 0.0);
        let t3_singular = KineticProblem::new(
            Variant::T3,
            1.0,
            0.5,
            1.0,
            None,
            0.5,
            poly(1, vec![1.0, 1.0]),
        )
        .unwrap();
        assert!(matches!(
            forcing(&t3_singular, 0.0),
            Err(Error::SingularEvaluation)
        ));
    }

    #[test]
    fn classical_march_matches_exponential() {
        // T1, w = 0, alpha = 1, c = 2, N0 = 3: N(t) = 3 e^{-2t}
        let problem =
            KineticProblem::new(Variant::T1, 3.0, 1.0, 2.0, None, 0.0, poly(0, vec![1.0])).unwrap();
        let h = 1.0 / 2048.0;
        let cfg = OracleConfig::new(h, 2048).unwrap();
        let curve = solve_numeric(&problem, &cfg).unwrap();
        let got = curve.values()[2048];
        assert!((got - 0.4060058497098381).abs() < 1e-6, "got {got}");
    }

    #[test]
    fn classical_march_converges_at_order_two() {
        let problem =
            KineticProblem::new(Variant::T1, 3.0, 1.0, 2.0, None, 0.0, poly(0, vec![1.0])).unwrap();
        let max_err = |n: usize| -> f64 {
            let h = 2.0 / n as f64;
            let cfg = OracleConfig::new(h, n).unwrap();
            let curve = solve_numeric(&problem, &cfg).unwrap();
            let mut worst: f64 = 0.0;
            for i in (n / 4)..=n {
                let t = curve.time(i);
                worst = worst.max((curve.values()[i] - 3.0 * libm::exp(-2.0 * t)).abs());
            }
            worst
        };
        let e1 = max_err(512);
        let e2 = max_err(1024);
        assert!(
            e1 / e2 >= 3.0,
            "halving h only improved error by {}",
            e1 / e2
        );
    }

    #[test]
    fn damping_never_amplifies() {
        // Nonnegative forcing, alpha <= 1: solution stays below N0 * max f.
        let problem =
            KineticProblem::new(Variant::T1, 2.0, 0.8, 1.5, None, 0.0, poly(0, vec![1.0])).unwrap();
        let cfg = OracleConfig::new(0.01, 400).unwrap();
        let curve = solve_numeric(&problem, &cfg).unwrap();
        for &v in curve.values() {
            assert!(v <= 2.0 + 1e-12, "oracle value {v} exceeds N0 * max f = 2");
        }
    }
}
