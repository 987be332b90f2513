//! Riemann-Liouville fractional integral: exact on monomials, product
//! integration on sampled curves.
//!
//! The numeric route integrates the kernel `(t_n - u)^(a-1)` exactly against
//! the piecewise-linear interpolant of the samples (product trapezoid), the
//! standard treatment for weakly singular Volterra kernels: O(h^2) for smooth
//! integrands, and the diagonal weight is available for implicit marching.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::special::{gamma, recip_gamma};

/// Uniformly sampled curve: value i sits at `t0 + i h`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    t0: f64,
    h: f64,
    values: Vec<f64>,
}

impl SampledCurve {
    pub fn new(t0: f64, h: f64, values: Vec<f64>) -> Result<Self> {
        if !(t0 >= 0.0) || !t0.is_finite() {
            return Err(Error::Validation(format!(
                "t0 must be finite and >= 0, got {t0}"
            )));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Validation(format!(
                "step h must be positive, got {h}"
            )));
        }
        if values.len() < 2 {
            return Err(Error::Validation("need at least 2 samples".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("samples must be finite".into()));
        }
        Ok(SampledCurve { t0, h, values })
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Abscissa of sample i.
    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.h
    }
}

/// Closed-form RL integral of a monomial:
/// `I^alpha t^mu = Gamma(mu+1)/Gamma(mu+1+alpha) t^(mu+alpha)`.
pub fn rl_integral_power(mu: f64, alpha: f64, t: f64) -> Result<f64> {
    if !(mu > -1.0) {
        return Err(Error::Domain(format!(
            "monomial power must exceed -1, got {mu}"
        )));
    }
    if !(alpha > 0.0) {
        return Err(Error::Domain(format!(
            "integral order alpha must be > 0, got {alpha}"
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("t must be >= 0, got {t}")));
    }
    let g = gamma(mu + 1.0).expect("mu + 1 > 0");
    Ok(g * recip_gamma(mu + 1.0 + alpha) * libm::pow(t, mu + alpha))
}

/// Product-trapezoid convolution weights on a uniform grid.
///
/// `weight(n, j)` is `w_{n,j}` in
/// `integral_0^{t_n} (t_n - u)^(alpha-1) f(u) du ~= sum_{j<=n} w_{n,j} f_j`
/// (note: the `1/Gamma(alpha)` of the RL operator is NOT included). Power
/// tables are precomputed once so each weight is O(1); summation order is
/// ascending j by contract.
#[derive(Debug, Clone)]
pub struct ProductTrapezoid {
    alpha: f64,
    scale: f64,       // h^alpha / (alpha (alpha + 1))
    pow_a: Vec<f64>,  // m^alpha
    pow_a1: Vec<f64>, // m^(alpha+1)
}

impl ProductTrapezoid {
    pub fn new(alpha: f64, h: f64, n_max: usize) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be > 0, got {alpha}")));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Domain(format!("h must be > 0, got {h}")));
        }
        let mut pow_a = Vec::with_capacity(n_max + 2);
        let mut pow_a1 = Vec::with_capacity(n_max + 2);
        for m in 0..=(n_max + 1) {
            let mf = m as f64;
            pow_a.push(libm::pow(mf, alpha));
            pow_a1.push(libm::pow(mf, alpha + 1.0));
        }
        let scale = libm::pow(h, alpha) / (alpha * (alpha + 1.0));
        Ok(ProductTrapezoid {
            alpha,
            scale,
            pow_a,
            pow_a1,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Kernel-moment weight for node j when integrating up to node n >= 1.
    pub fn weight(&self, n: usize, j: usize) -> f64 {
        debug_assert!(n >= 1 && j <= n && n < self.pow_a1.len() - 1);
        let a = self.alpha;
        let raw = if j == n {
            1.0
        } else if j == 0 {
            self.pow_a1[n - 1] - self.pow_a1[n] + (a + 1.0) * self.pow_a[n]
        } else {
            let m = n - j;
            self.pow_a1[m + 1] - 2.0 * self.pow_a1[m] + self.pow_a1[m - 1]
        };
        self.scale * raw
    }
}

/// RL fractional integral of a sampled curve, node by node.
///
/// Requires `t0 = 0` (the operator's lower limit). Node 0 of the result is
/// exactly 0.
pub fn rl_integral_samples(curve: &SampledCurve, alpha: f64) -> Result<SampledCurve> {
    if curve.t0() != 0.0 {
        return Err(Error::Domain(format!(
            "rl_integral_samples requires t0 = 0, got {}",
            curve.t0()
        )));
    }
    let n_max = curve.len() - 1;
    let weights = ProductTrapezoid::new(alpha, curve.h(), n_max)?;
    let rg_alpha = recip_gamma(alpha);
    let f = curve.values();
    let mut out = Vec::with_capacity(curve.len());
    out.push(0.0);
    for n in 1..=n_max {
        let mut sum = 0.0;
        for (j, fj) in f.iter().enumerate().take(n + 1) {
            sum += weights.weight(n, j) * fj;
        }
        out.push(rg_alpha * sum);
    }
    SampledCurve::new(0.0, curve.h(), out)
}
