//! Depth-first branch and bound over the declared binary columns.
//!
//! Branching always picks the most fractional binary (ties to the
//! lowest index) and explores the guard-placing child first. With an
//! all-ones objective over binaries the bound is rounded up before
//! pruning. The search is deterministic: no randomness, no
//! work-stealing, one node order.

use super::simplex::{solve_lp_warm, DenseLp, LpError, LpStatus, WarmBasis, INT_TOL};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SearchStatus {
    Optimal,
    Timeout,
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct SearchLimits {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<usize>,
    pub lp_iteration_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            time_limit: None,
            node_limit: None,
            lp_iteration_cap: super::simplex::DEFAULT_ITER_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// Best objective and assignment seen, if any.
    pub incumbent: Option<(f64, Vec<f64>)>,
    /// Valid lower bound on the optimum; `None` when nothing was
    /// evaluated before stopping.
    pub lower_bound: Option<f64>,
    pub nodes: usize,
    pub lp_iterations: usize,
}

struct Node {
    lower: Vec<f64>,
    upper: Vec<f64>,
    bound: f64,
}

/// `seed` is an externally known feasible objective with an assignment
/// whose binary prefix is meaningful (a heuristic guard set); it
/// prunes like any incumbent and survives as the answer if nothing in
/// the tree beats it.
pub fn branch_and_bound(
    lp: &DenseLp,
    seed: Option<(f64, Vec<f64>)>,
    limits: &SearchLimits,
) -> Result<SearchOutcome, LpError> {
    let started = Instant::now();
    let integral = lp.integral_objective();
    let mut best = seed;
    let mut nodes = 0usize;
    let mut lp_iterations = 0usize;
    // Basis of the most recent LP, handed to the next node so its
    // solve can restart warm instead of from scratch.
    let mut warm: Option<WarmBasis> = None;
    let mut stack = vec![Node {
        lower: lp.lower.clone(),
        upper: lp.upper.clone(),
        bound: f64::NEG_INFINITY,
    }];

    let can_prune = |bound: f64, best: &Option<(f64, Vec<f64>)>| -> bool {
        let Some((obj, _)) = best else { return false };
        if integral {
            (bound - INT_TOL).ceil() >= obj - 1e-9
        } else {
            bound >= obj - 1e-9
        }
    };

    let outcome = |status: SearchStatus,
                   best: Option<(f64, Vec<f64>)>,
                   open: &[Node],
                   extra: Option<f64>,
                   nodes: usize,
                   lp_iterations: usize| {
        let mut lb = match &best {
            Some((obj, _)) => Some(*obj),
            None => None,
        };
        if status != SearchStatus::Optimal {
            let mut open_min = extra.unwrap_or(f64::INFINITY);
            for n in open {
                open_min = open_min.min(n.bound);
            }
            lb = match lb {
                Some(b) => Some(b.min(open_min)),
                None if open_min.is_finite() => Some(open_min),
                None => None,
            };
        }
        SearchOutcome {
            status,
            incumbent: best,
            lower_bound: lb,
            nodes,
            lp_iterations,
        }
    };

    while let Some(node) = stack.pop() {
        let out_of_time = limits
            .time_limit
            .is_some_and(|t| started.elapsed() >= t);
        let out_of_nodes = limits.node_limit.is_some_and(|n| nodes >= n);
        if out_of_time || out_of_nodes {
            return Ok(outcome(
                SearchStatus::Timeout,
                best,
                &stack,
                Some(node.bound),
                nodes,
                lp_iterations,
            ));
        }
        if can_prune(node.bound, &best) {
            continue;
        }
        nodes += 1;
        if nodes % 1000 == 0 {
            eprintln!(
                "DBG bnb nodes={} best={:?} lp_it={} depth_stack={} t={:.1}s",
                nodes,
                best.as_ref().map(|(o, _)| *o),
                lp_iterations,
                stack.len(),
                started.elapsed().as_secs_f64()
            );
        }
        let (sol, basis) = solve_lp_warm(
            lp,
            &node.lower,
            &node.upper,
            limits.lp_iteration_cap,
            warm.as_ref(),
        )?;
        if basis.is_some() {
            warm = basis;
        }
        lp_iterations += sol.iterations;
        match sol.status {
            LpStatus::Infeasible => continue,
            LpStatus::Unbounded => return Err(LpError::NumericalBreakdown),
            LpStatus::Optimal => {}
        }
        if can_prune(sol.objective, &best) {
            continue;
        }
        // Most fractional declared binary, ties to the lowest index.
        let mut pick: Option<(usize, f64)> = None;
        for &j in &lp.binaries {
            let dist = (sol.x[j] - sol.x[j].round()).abs();
            if dist > INT_TOL && pick.map_or(true, |(_, d)| dist > d) {
                pick = Some((j, dist));
            }
        }
        match pick {
            None => {
                let mut x = sol.x;
                for &j in &lp.binaries {
                    x[j] = x[j].round();
                }
                let obj = sol.objective;
                if best.as_ref().map_or(true, |(b, _)| obj < b - 1e-9) {
                    best = Some((obj, x));
                }
            }
            Some((j, _)) => {
                let mut zero = Node {
                    lower: node.lower.clone(),
                    upper: node.upper.clone(),
                    bound: sol.objective,
                };
                zero.upper[j] = 0.0;
                let mut one = Node {
                    lower: node.lower,
                    upper: node.upper,
                    bound: sol.objective,
                };
                one.lower[j] = 1.0;
                stack.push(zero);
                stack.push(one);
            }
        }
    }

    if best.is_none() {
        return Ok(SearchOutcome {
            status: SearchStatus::Infeasible,
            incumbent: None,
            lower_bound: None,
            nodes,
            lp_iterations,
        });
    }
    Ok(outcome(
        SearchStatus::Optimal,
        best,
        &[],
        None,
        nodes,
        lp_iterations,
    ))
}
