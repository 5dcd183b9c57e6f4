//! Exact solver: bounded simplex relaxations inside a deterministic
//! branch-and-bound, seeded by a greedy guard set and finished by an
//! independent check of the returned set.

mod bnb;
mod heuristic;
mod simplex;

pub use bnb::{branch_and_bound, SearchLimits, SearchOutcome, SearchStatus};
pub use heuristic::greedy_guard_set;
pub use simplex::{
    solve_lp, solve_lp_warm, DenseLp, LpError, LpSolution, LpStatus, WarmBasis, DEFAULT_ITER_CAP,
    FEAS_TOL, INT_TOL,
};

use crate::certify::{verify, GuardSet};
use crate::formulations::{Formulation, FormulationError};
use crate::graphs::Graph;
use crate::model::LinearModel;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Formulation(#[from] FormulationError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("optimal guard set failed verification: {witness}")]
    CertificateFailed { witness: String },
    #[error("solution vector is missing variable {0}")]
    MissingVariable(String),
}

#[derive(Debug, Clone, Default)]
pub struct SolveConfig {
    pub time_limit_s: Option<f64>,
    pub node_limit: Option<usize>,
}

impl SolveConfig {
    fn limits(&self) -> SearchLimits {
        SearchLimits {
            time_limit: self.time_limit_s.map(Duration::from_secs_f64),
            node_limit: self.node_limit,
            lp_iteration_cap: DEFAULT_ITER_CAP,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SolveReport {
    pub model: String,
    pub status: SearchStatus,
    pub objective: Option<f64>,
    pub lower_bound: Option<f64>,
    pub nodes: usize,
    pub lp_iterations: usize,
    pub wall_time_s: f64,
    /// 1-based guard vertices; present only when solving a formulation.
    pub guard_set: Option<Vec<usize>>,
    /// Outcome of the independent property check on `guard_set`.
    pub verified: Option<bool>,
}

/// Solves a bare model (say one read back from an MPS file). The only
/// warm start available here is rounding the root relaxation.
pub fn solve_model(m: &LinearModel, cfg: &SolveConfig) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let lp = DenseLp::from_model(m);
    let seed = round_seed(&lp);
    let out = branch_and_bound(&lp, seed, &cfg.limits())?;
    Ok(report_from(m.name().to_string(), out, started, None, None))
}

/// Builds the named encoding for `g`, seeds the search with a greedy
/// guard set, solves, and re-checks the answer against the property.
pub fn solve_formulation(
    g: &Graph,
    f: &dyn Formulation,
    cfg: &SolveConfig,
) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let m = f.build(g)?;
    let lp = DenseLp::from_model(&m);
    let seed = greedy_guard_set(g, f.property()).map(|s| {
        let mut x = vec![0.0; lp.ncols];
        for v in s.iter() {
            if let Some(idx) = m.var_index(&format!("x_{}", v + 1)) {
                x[idx] = 1.0;
            }
        }
        (s.len() as f64, x)
    });
    let out = branch_and_bound(&lp, seed, &cfg.limits())?;

    let mut guard = None;
    let mut verified = None;
    if let Some((_, x)) = &out.incumbent {
        let s = assignment_guard_set(&m, g, x)?;
        let cert = verify(g, &s, f.property()).expect("set built for this graph");
        if !cert.holds {
            return Err(SolveError::CertificateFailed {
                witness: cert
                    .witness
                    .map_or_else(|| "no witness".to_string(), |w| w.to_string()),
            });
        }
        verified = Some(true);
        guard = Some(s.iter().map(|v| v + 1).collect());
    }
    Ok(report_from(m.name().to_string(), out, started, guard, verified))
}

fn report_from(
    model: String,
    out: SearchOutcome,
    started: Instant,
    guard_set: Option<Vec<usize>>,
    verified: Option<bool>,
) -> SolveReport {
    SolveReport {
        model,
        status: out.status,
        objective: out.incumbent.as_ref().map(|(obj, _)| *obj),
        lower_bound: out.lower_bound,
        nodes: out.nodes,
        lp_iterations: out.lp_iterations,
        wall_time_s: started.elapsed().as_secs_f64(),
        guard_set,
        verified,
    }
}

/// Reads the guard set out of a solution vector by variable name.
pub fn assignment_guard_set(
    m: &LinearModel,
    g: &Graph,
    x: &[f64],
) -> Result<GuardSet, SolveError> {
    let mut s = GuardSet::empty(g.n());
    for v in 0..g.n() {
        let name = format!("x_{}", v + 1);
        let idx = m
            .var_index(&name)
            .ok_or(SolveError::MissingVariable(name))?;
        if x[idx] > 0.5 {
            s.insert(v);
        }
    }
    Ok(s)
}

/// One root relaxation, binaries rounded; kept only if it satisfies
/// every row outright.
fn round_seed(lp: &DenseLp) -> Option<(f64, Vec<f64>)> {
    let sol = solve_lp(lp, &lp.lower, &lp.upper, DEFAULT_ITER_CAP).ok()?;
    if sol.status != LpStatus::Optimal {
        return None;
    }
    let mut x = sol.x;
    for &j in &lp.binaries {
        x[j] = x[j].round();
    }
    if lp.residual(&x) > FEAS_TOL {
        return None;
    }
    Some((lp.objective_value(&x), x))
}
