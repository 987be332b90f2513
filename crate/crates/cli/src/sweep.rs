//! Sweep execution: closed-form tables over (alpha, t) cells and
//! oracle-backed verification reports.

use fke_core::closed_form::{build_solution, eval_solution, GammaMode, KineticProblem, Variant};
use fke_core::oracle::{solve_numeric, OracleConfig};
use fke_core::special::AccuracyPolicy;
use fke_core::srivastava::SrivastavaPoly;
use fke_core::Error;
use serde::Serialize;

use crate::error::CliError;
use crate::rows::Row;

/// Everything of a [`KineticProblem`] except alpha, which the sweep varies.
#[derive(Debug, Clone)]
pub struct ProblemTemplate {
    pub variant: Variant,
    pub n0: f64,
    pub c: f64,
    pub d: Option<f64>,
    pub lambda: f64,
    pub poly: SrivastavaPoly,
}

impl ProblemTemplate {
    pub fn instantiate(&self, alpha: f64) -> Result<KineticProblem, CliError> {
        Ok(KineticProblem::new(
            self.variant,
            self.n0,
            alpha,
            self.c,
            self.d,
            self.lambda,
            self.poly.clone(),
        )?)
    }
}

/// A validated sweep: time grid, alpha set, gamma convention.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub template: ProblemTemplate,
    pub alphas: Vec<f64>,
    pub t_start: f64,
    pub t_end: f64,
    pub t_steps: usize,
    pub gamma_mode: GammaMode,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.alphas.is_empty() {
            return Err(CliError::Validation(
                "at least one --alpha is required".into(),
            ));
        }
        if self.alphas.iter().any(|a| !(*a > 0.0)) {
            return Err(CliError::Validation("all alphas must be > 0".into()));
        }
        if !(self.t_end > self.t_start) {
            return Err(CliError::Validation(format!(
                "t_end ({}) must exceed t_start ({})",
                self.t_end, self.t_start
            )));
        }
        if !(self.t_start >= 0.0) {
            return Err(CliError::Validation(format!(
                "t_start must be >= 0, got {}",
                self.t_start
            )));
        }
        if self.t_steps < 2 {
            return Err(CliError::Validation("t_steps must be >= 2".into()));
        }
        Ok(())
    }

    fn t_at(&self, i: usize) -> f64 {
        self.t_start + (self.t_end - self.t_start) * i as f64 / (self.t_steps - 1) as f64
    }
}

/// Evaluate the closed-form solution on every (alpha, t) cell.
///
/// Singular cells (t = 0 under a lambda > 0 forcing) yield `n: None`; the
/// emitters render the placeholder instead of fabricating a 0.
pub fn run_solve(spec: &SweepSpec) -> Result<Vec<Row>, CliError> {
    spec.validate()?;
    let policy = AccuracyPolicy::default();
    let mut rows = Vec::with_capacity(spec.alphas.len() * spec.t_steps);
    for &alpha in &spec.alphas {
        let problem = spec.template.instantiate(alpha)?;
        let solution = build_solution(&problem, spec.gamma_mode);
        for i in 0..spec.t_steps {
            let t = spec.t_at(i);
            let n = match eval_solution(&solution, t, &policy) {
                Ok(v) => Some(v),
                Err(Error::SingularEvaluation) => None,
                Err(e) => return Err(e.into()),
            };
            rows.push(Row {
                variant: problem.variant().name().to_string(),
                gamma_mode: spec.gamma_mode.name().to_string(),
                alpha,
                lambda: problem.lambda(),
                c: problem.c(),
                d: problem.d(),
                t,
                n,
            });
        }
    }
    Ok(rows)
}

/// One verification cell: closed form vs oracle for a single alpha.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyCell {
    pub alpha: f64,
    pub gamma_mode: String,
    pub nodes: usize,
    pub max_abs_dev: f64,
    pub max_rel_dev: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Cross-validate the closed form against the Volterra oracle on t in
/// (0, t_end], one cell per alpha.
///
/// The relative deviation is normalized by the closed form's sup norm over
/// the evaluated nodes (the solutions cross zero, so pointwise ratios are
/// meaningless); nodes below `t_eval_min_index` are excluded.
pub fn run_verify(spec: &SweepSpec, h: f64, tol: f64) -> Result<Vec<VerifyCell>, CliError> {
    spec.validate()?;
    if !(tol > 0.0) {
        return Err(CliError::Validation(format!(
            "tolerance must be > 0, got {tol}"
        )));
    }
    let n_steps = (spec.t_end / h).ceil() as usize;
    let cfg = OracleConfig::new(h, n_steps)?;
    let policy = AccuracyPolicy::default();
    let mut cells = Vec::with_capacity(spec.alphas.len());
    for &alpha in &spec.alphas {
        let problem = spec.template.instantiate(alpha)?;
        let solution = build_solution(&problem, spec.gamma_mode);
        let curve = solve_numeric(&problem, &cfg)?;
        let mut max_abs: f64 = 0.0;
        let mut sup: f64 = 0.0;
        let mut nodes = 0usize;
        for i in cfg.t_eval_min_index..curve.len() {
            let closed = eval_solution(&solution, curve.time(i), &policy)?;
            max_abs = max_abs.max((closed - curve.values()[i]).abs());
            sup = sup.max(closed.abs());
            nodes += 1;
        }
        let max_rel = max_abs / sup.max(1e-12);
        cells.push(VerifyCell {
            alpha,
            gamma_mode: spec.gamma_mode.name().to_string(),
            nodes,
            max_abs_dev: max_abs,
            max_rel_dev: max_rel,
            tol,
            pass: max_rel <= tol,
        });
    }
    Ok(cells)
}

pub fn emit_verify_csv(cells: &[VerifyCell]) -> String {
    let mut out = String::from("alpha,gamma_mode,nodes,max_abs_dev,max_rel_dev,tol,pass\n");
    for c in cells {
        out.push_str(&format!(
            "{},{},{},{:.16e},{:.16e},{},{}\n",
            c.alpha, c.gamma_mode, c.nodes, c.max_abs_dev, c.max_rel_dev, c.tol, c.pass
        ));
    }
    out
}

pub fn emit_verify_json(cells: &[VerifyCell]) -> Result<String, CliError> {
    let mut out = serde_json::to_string_pretty(cells)
        .map_err(|e| CliError::Validation(format!("JSON serialization failed: {e}")))?;
    out.push('\n');
    Ok(out)
}
