//! Bounded-variable primal simplex in revised product form.
//!
//! The basis inverse is never stored: a dense LU factorization plus a
//! short chain of eta updates stands in for it, and a fresh
//! factorization replaces the chain every so many pivots, so roundoff
//! has nowhere to accumulate. Rows become equalities with one slack
//! each; the slack's bounds encode the sense. Rows whose starting
//! slack cannot carry the crash-start residual get a phase-1
//! artificial, so artificials exist only where the starting point is
//! infeasible. Pricing works from freshly computed duals every
//! iteration, picks the most negative reduced cost, and falls back to
//! Bland's rule after a long degenerate stretch. Every answer is
//! re-checked against the original rows before it is returned.

use crate::model::{LinearModel, Sense, VarKind};

pub const FEAS_TOL: f64 = 1e-7;
pub const INT_TOL: f64 = 1e-6;
const PRICE_TOL: f64 = 1e-7;
const PIVOT_CAND_TOL: f64 = 1e-9;
const PIVOT_EXEC_TOL: f64 = 1e-10;
const STALL_TOL: f64 = 1e-12;
// Solve results below this are rounding noise; snapping them to zero
// keeps noise out of pivot candidacy.
const DROP_TOL: f64 = 1e-11;
// A pivot this small scales its eta column hard enough to eat the
// factorization's accuracy, so one is allowed only with a fresh
// factorization scheduled right behind it.
const SAFE_PIVOT: f64 = 1e-6;
// Rows blocking within this much of the minimum ratio are equally
// acceptable leaving rows; taking the best-conditioned one displaces
// a variable from its bound by far less than the feasibility
// tolerance.
const HARRIS_WINDOW: f64 = 1e-8;
// Rank decision while factoring: a basis column whose best available
// pivot is below this is treated as dependent and replaced.
const RANK_TOL: f64 = 1e-9;
// Eta chain length that triggers a scheduled refactorization.
const REFACTOR_EVERY: usize = 120;
// Retries of a failed final residual check, each behind a fresh
// factorization, before the solve gives up.
const MAX_REBUILDS: usize = 3;
const STALL_LIMIT: usize = 5_000;
pub const DEFAULT_ITER_CAP: usize = 50_000;
// Scale of the deterministic cost tilt that breaks the massive
// objective ties covering problems produce; removed again before
// anything is reported.
const PERT_BASE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Structural variable values; empty unless status is Optimal.
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("simplex iteration cap exhausted")]
    IterationLimit,
    #[error("numerical breakdown in the simplex basis")]
    NumericalBreakdown,
}

/// A model lowered to plain floats, shared by every node of a search.
#[derive(Debug, Clone)]
pub struct DenseLp {
    pub ncols: usize,
    pub cost: Vec<f64>,
    /// (sparse coefficients, sense, rhs) per row.
    pub rows: Vec<(Vec<(usize, f64)>, Sense, f64)>,
    pub lower: Vec<f64>,
    /// `f64::INFINITY` where the model has no upper bound.
    pub upper: Vec<f64>,
    pub binaries: Vec<usize>,
}

impl DenseLp {
    pub fn from_model(m: &LinearModel) -> Self {
        let to_f = |r: &crate::model::Rat| *r.numer() as f64 / *r.denom() as f64;
        let ncols = m.vars().len();
        let mut cost = vec![0.0; ncols];
        for (i, c) in m.objective() {
            cost[*i] = to_f(c);
        }
        let rows = m
            .constraints()
            .iter()
            .map(|c| {
                let coefs = c.terms.iter().map(|(i, v)| (*i, to_f(v))).collect();
                (coefs, c.sense, to_f(&c.rhs))
            })
            .collect();
        let lower = m.vars().iter().map(|v| to_f(&v.lower)).collect();
        let upper = m
            .vars()
            .iter()
            .map(|v| v.upper.as_ref().map_or(f64::INFINITY, to_f))
            .collect();
        let binaries = m
            .vars()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == VarKind::Binary)
            .map(|(i, _)| i)
            .collect();
        DenseLp {
            ncols,
            cost,
            rows,
            lower,
            upper,
            binaries,
        }
    }

    /// Absolute violation of the worst row or bound at `x`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.residual_with_bounds(x, &self.lower, &self.upper)
    }

    /// Residual against substituted bound vectors instead of the
    /// model's own.
    pub fn residual_with_bounds(&self, x: &[f64], lower: &[f64], upper: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.ncols {
            worst = worst.max(lower[j] - x[j]);
            if upper[j].is_finite() {
                worst = worst.max(x[j] - upper[j]);
            }
        }
        for (coefs, sense, rhs) in &self.rows {
            let act: f64 = coefs.iter().map(|&(j, a)| a * x[j]).sum();
            let v = match sense {
                Sense::Le => act - rhs,
                Sense::Ge => rhs - act,
                Sense::Eq => (act - rhs).abs(),
            };
            worst = worst.max(v);
        }
        worst
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.cost.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// True when the objective is guaranteed integral at every mixed
    /// solution whose binaries are integral, which justifies rounding
    /// the bound up during the search.
    pub fn integral_objective(&self) -> bool {
        let is_binary = {
            let mut b = vec![false; self.ncols];
            for &j in &self.binaries {
                b[j] = true;
            }
            b
        };
        self.cost
            .iter()
            .enumerate()
            .all(|(j, &c)| c == 0.0 || (is_binary[j] && c.fract() == 0.0))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColState {
    Basic,
    AtLower,
    AtUpper,
}

/// Sparse LU of the basis matrix in pivot order.
///
/// Simplex bases are mostly unit slack columns, so the factorization
/// peels column and row singletons first, which costs no arithmetic
/// and creates no fill, and only the small remaining kernel is
/// factored densely. L and U are stored column-wise by pivot index.
struct Factor {
    m: usize,
    /// Pivot k: (original row, basis position, pivot value).
    pivots: Vec<(usize, usize, f64)>,
    /// Below-pivot multipliers of pivot column k: (original row, l).
    lcols: Vec<Vec<(usize, f64)>>,
    /// Above-pivot entries of pivot column k: (earlier pivot, u).
    ucols: Vec<Vec<(usize, f64)>>,
}

impl Factor {
    fn empty() -> Self {
        Factor {
            m: 0,
            pivots: Vec::new(),
            lcols: Vec::new(),
            ucols: Vec::new(),
        }
    }

    /// Solves B y = a in place: enters indexed by original row,
    /// leaves indexed by basis position.
    fn solve(&self, v: &mut [f64]) {
        for (k, &(r, _, _)) in self.pivots.iter().enumerate() {
            let t = v[r];
            if t != 0.0 {
                for &(i, l) in &self.lcols[k] {
                    v[i] -= l * t;
                }
            }
        }
        let mut out = vec![0.0f64; self.m];
        for k in (0..self.m).rev() {
            let (r, c, p) = self.pivots[k];
            let t = v[r] / p;
            out[c] = t;
            if t != 0.0 {
                for &(k2, u) in &self.ucols[k] {
                    v[self.pivots[k2].0] -= u * t;
                }
            }
        }
        v.copy_from_slice(&out);
    }

    /// Solves transposed(B) y = c in place: enters indexed by basis
    /// position, leaves indexed by original row.
    fn solve_t(&self, v: &mut [f64]) {
        let mut t = vec![0.0f64; self.m];
        for (k, &(_, c, p)) in self.pivots.iter().enumerate() {
            let mut s = v[c];
            for &(k2, u) in &self.ucols[k] {
                let tk = t[k2];
                if tk != 0.0 {
                    s -= u * tk;
                }
            }
            t[k] = s / p;
        }
        let mut out = vec![0.0f64; self.m];
        for k in (0..self.m).rev() {
            let mut s = t[k];
            for &(i, l) in &self.lcols[k] {
                let xi = out[i];
                if xi != 0.0 {
                    s -= l * xi;
                }
            }
            out[self.pivots[k].0] = s;
        }
        v.copy_from_slice(&out);
    }
}

enum Step {
    /// The entering column hits its other bound first; carries delta.
    Flip(f64),
    Pivot {
        row: usize,
        leaving_to_upper: bool,
        t: f64,
    },
    Unbounded,
}

/// One product-form update of the basis inverse, stored sparsely.
struct Eta {
    p: usize,
    pivot: f64,
    /// Off-pivot nonzeros by basis position.
    entries: Vec<(usize, f64)>,
}

struct Simplex<'a> {
    lp: &'a DenseLp,
    m: usize,
    nv: usize,
    ncols: usize,
    /// Sparse column view of the equality system: structurals, then
    /// one unit slack per row, then signed unit artificials.
    cols: Vec<Vec<(usize, f64)>>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    state: Vec<ColState>,
    /// Position -> basic column.
    basis: Vec<usize>,
    /// Basic values by position.
    beta: Vec<f64>,
    /// Row -> artificial column, or usize::MAX.
    art_col_of: Vec<usize>,
    /// Artificial ordinal -> row.
    art_row: Vec<usize>,
    factor: Factor,
    etas: Vec<Eta>,
    /// Costs of the active phase.
    cost: Vec<f64>,
    z: f64,
    iterations: usize,
    iter_cap: usize,
    stalled: usize,
    bland: bool,
    force_refactor: bool,
}

impl<'a> Simplex<'a> {
    fn nonbasic_value(&self, j: usize) -> f64 {
        match self.state[j] {
            ColState::AtUpper => self.upper[j],
            _ => self.lower[j],
        }
    }

    /// Entering column expressed over the current basis.
    fn ftran(&self, e: usize) -> Vec<f64> {
        let mut v = vec![0.0f64; self.m];
        for &(r, a) in &self.cols[e] {
            v[r] = a;
        }
        self.factor.solve(&mut v);
        for e in &self.etas {
            let t = v[e.p] / e.pivot;
            v[e.p] = t;
            if t != 0.0 {
                for &(i, wi) in &e.entries {
                    v[i] -= wi * t;
                }
            }
        }
        for vi in v.iter_mut() {
            if vi.abs() < DROP_TOL {
                *vi = 0.0;
            }
        }
        v
    }

    /// Duals of the current basis under the active costs.
    fn btran_pi(&self) -> Vec<f64> {
        let mut u: Vec<f64> = (0..self.m).map(|r| self.cost[self.basis[r]]).collect();
        for e in self.etas.iter().rev() {
            let mut s = 0.0;
            for &(i, wi) in &e.entries {
                let ui = u[i];
                if ui != 0.0 {
                    s += ui * wi;
                }
            }
            u[e.p] = (u[e.p] - s) / e.pivot;
        }
        self.factor.solve_t(&mut u);
        u
    }

    /// Most negative effective reduced cost, or the first eligible one
    /// under Bland's rule. None means priced out.
    fn price(&self, pi: &[f64]) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64, f64)> = None;
        for j in 0..self.ncols {
            let st = self.state[j];
            if st == ColState::Basic || self.lower[j] >= self.upper[j] {
                continue;
            }
            let mut d = self.cost[j];
            for &(r, a) in &self.cols[j] {
                d -= pi[r] * a;
            }
            let eff = if st == ColState::AtLower { d } else { -d };
            if eff < -PRICE_TOL {
                if self.bland {
                    return Some((j, d));
                }
                if best.map_or(true, |(_, _, s)| eff < s) {
                    best = Some((j, d, eff));
                }
            }
        }
        best.map(|(j, d, _)| (j, d))
    }

    /// Bounded-variable ratio test for entering column `e` moving in
    /// direction `dir` with basis image `w`.
    fn ratio(&self, e: usize, dir: f64, w: &[f64]) -> Step {
        let span = self.upper[e] - self.lower[e];
        let mut t_row = f64::INFINITY;
        let mut row = usize::MAX;
        let mut g_row = 0.0f64;
        for (r, &wr) in w.iter().enumerate() {
            let g = dir * wr;
            if g.abs() <= PIVOT_CAND_TOL {
                continue;
            }
            let bj = self.basis[r];
            let t = if g > 0.0 {
                if !self.lower[bj].is_finite() {
                    continue;
                }
                ((self.beta[r] - self.lower[bj]) / g).max(0.0)
            } else {
                if !self.upper[bj].is_finite() {
                    continue;
                }
                ((self.upper[bj] - self.beta[r]) / -g).max(0.0)
            };
            let better = if t < t_row - STALL_TOL {
                true
            } else if t <= t_row + STALL_TOL && row != usize::MAX {
                if self.bland {
                    self.basis[r] < self.basis[row]
                } else {
                    g.abs() > g_row.abs()
                }
            } else {
                row == usize::MAX && t < t_row
            };
            if better {
                t_row = t;
                row = r;
                g_row = g;
            }
        }
        // A tiny winning pivot invites error amplification; a row
        // blocking essentially as early with a solid pivot is a better
        // exchange at negligible displacement.
        if row != usize::MAX && g_row.abs() < SAFE_PIVOT {
            let mut alt = usize::MAX;
            let mut alt_g = 0.0f64;
            let mut alt_t = 0.0f64;
            for (r, &wr) in w.iter().enumerate() {
                let g = dir * wr;
                if g.abs() < SAFE_PIVOT {
                    continue;
                }
                let bj = self.basis[r];
                let t = if g > 0.0 {
                    if !self.lower[bj].is_finite() {
                        continue;
                    }
                    ((self.beta[r] - self.lower[bj]) / g).max(0.0)
                } else {
                    if !self.upper[bj].is_finite() {
                        continue;
                    }
                    ((self.upper[bj] - self.beta[r]) / -g).max(0.0)
                };
                if t <= t_row + HARRIS_WINDOW && (alt == usize::MAX || g.abs() > alt_g.abs()) {
                    alt = r;
                    alt_g = g;
                    alt_t = t;
                }
            }
            if alt != usize::MAX {
                row = alt;
                g_row = alt_g;
                t_row = alt_t;
            }
        }
        if t_row.is_infinite() {
            return if span.is_finite() {
                Step::Flip(dir * span)
            } else {
                Step::Unbounded
            };
        }
        if span.is_finite() && span <= t_row {
            return Step::Flip(dir * span);
        }
        Step::Pivot {
            row,
            leaving_to_upper: g_row < 0.0,
            t: t_row,
        }
    }

    fn execute_pivot(
        &mut self,
        e: usize,
        dir: f64,
        d_e: f64,
        w: Vec<f64>,
        row: usize,
        leaving_to_upper: bool,
        t: f64,
    ) -> Result<(), LpError> {
        let p = w[row];
        if p.abs() < PIVOT_EXEC_TOL {
            return Err(LpError::NumericalBreakdown);
        }
        if p.abs() < SAFE_PIVOT {
            self.force_refactor = true;
        }
        let delta = dir * t;
        if delta != 0.0 {
            for (i, &wi) in w.iter().enumerate() {
                if wi != 0.0 {
                    self.beta[i] -= delta * wi;
                }
            }
        }
        let leaving = self.basis[row];
        self.state[leaving] = if leaving_to_upper {
            ColState::AtUpper
        } else {
            ColState::AtLower
        };
        let from = if dir > 0.0 {
            self.lower[e]
        } else {
            self.upper[e]
        };
        self.beta[row] = from + delta;
        self.basis[row] = e;
        self.state[e] = ColState::Basic;
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for (i, &wi) in w.iter().enumerate() {
            if i != row && wi != 0.0 {
                entries.push((i, wi));
            }
        }
        self.etas.push(Eta {
            p: row,
            pivot: w[row],
            entries,
        });
        self.z += d_e * delta;
        Ok(())
    }

    /// Factors the current basis. Column singletons pivot with no
    /// arithmetic; row singletons contribute multipliers but no fill,
    /// because no other column holds the pivot row. What survives both
    /// peels is gathered into a dense kernel and eliminated with
    /// partial pivoting. When the kernel exposes a dependent basis
    /// column, that column is evicted to its nearest bound and the
    /// slack (or artificial) of a still-uncovered row takes its place;
    /// such a unit column passes unchanged through every elimination
    /// step done so far, so rank always recovers.
    fn factor_basis(&mut self) -> Result<(), LpError> {
        let m = self.m;
        let nv = self.nv;
        if m == 0 {
            self.factor = Factor::empty();
            return Ok(());
        }
        let mut work: Vec<Vec<(usize, f64)>> = self
            .basis
            .iter()
            .map(|&bj| self.cols[bj].clone())
            .collect();
        // Entries at already pivoted rows, migrated out of `work`.
        let mut upart: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
        let mut slack_basic = vec![false; m];
        let mut art_basic = vec![false; m];
        for &bj in &self.basis {
            if (nv..nv + m).contains(&bj) {
                slack_basic[bj - nv] = true;
            } else if bj >= nv + m {
                art_basic[self.art_row[bj - nv - m]] = true;
            }
        }
        let mut row_pivot = vec![usize::MAX; m];
        let mut col_done = vec![false; m];
        // Singletons with a tiny pivot value are left to the kernel.
        let mut deferred = vec![false; m];
        let mut pivots: Vec<(usize, usize, f64)> = Vec::with_capacity(m);
        let mut lcols: Vec<Vec<(usize, f64)>> = Vec::with_capacity(m);
        let mut ucols: Vec<Vec<(usize, f64)>> = Vec::with_capacity(m);
        loop {
            let mut changed = false;
            for c in 0..m {
                if col_done[c] || deferred[c] {
                    continue;
                }
                let col = &mut work[c];
                let up = &mut upart[c];
                col.retain(|&(r, v)| {
                    if row_pivot[r] != usize::MAX {
                        up.push((row_pivot[r], v));
                        false
                    } else {
                        true
                    }
                });
                if col.len() == 1 {
                    let (r, p) = col[0];
                    if p.abs() < RANK_TOL {
                        deferred[c] = true;
                        continue;
                    }
                    row_pivot[r] = pivots.len();
                    col_done[c] = true;
                    pivots.push((r, c, p));
                    lcols.push(Vec::new());
                    ucols.push(std::mem::take(up));
                    changed = true;
                }
            }
            loop {
                let mut cnt = vec![0u32; m];
                let mut owner = vec![usize::MAX; m];
                for c in 0..m {
                    if col_done[c] || deferred[c] {
                        continue;
                    }
                    for &(r, _) in &work[c] {
                        if row_pivot[r] == usize::MAX {
                            cnt[r] += 1;
                            owner[r] = c;
                        }
                    }
                }
                let Some(r) = (0..m).find(|&r| row_pivot[r] == usize::MAX && cnt[r] == 1)
                else {
                    break;
                };
                let c = owner[r];
                let col = &mut work[c];
                let up = &mut upart[c];
                col.retain(|&(i, v)| {
                    if row_pivot[i] != usize::MAX {
                        up.push((row_pivot[i], v));
                        false
                    } else {
                        true
                    }
                });
                let p = col.iter().find(|&&(i, _)| i == r).map(|&(_, v)| v).unwrap();
                if p.abs() < RANK_TOL {
                    deferred[c] = true;
                    continue;
                }
                let lc: Vec<(usize, f64)> = col
                    .iter()
                    .filter(|&&(i, _)| i != r)
                    .map(|&(i, v)| (i, v / p))
                    .collect();
                row_pivot[r] = pivots.len();
                col_done[c] = true;
                pivots.push((r, c, p));
                lcols.push(lc);
                ucols.push(std::mem::take(up));
                changed = true;
            }
            if !changed {
                break;
            }
        }
        let active_rows: Vec<usize> = (0..m).filter(|&r| row_pivot[r] == usize::MAX).collect();
        let active_cols: Vec<usize> = (0..m).filter(|&c| !col_done[c]).collect();
        let s = active_rows.len();
        if s > 0 {
            let mut rowidx = vec![usize::MAX; m];
            for (i, &r) in active_rows.iter().enumerate() {
                rowidx[r] = i;
            }
            let mut d = vec![0.0f64; s * s];
            for (jd, &c) in active_cols.iter().enumerate() {
                for &(r, v) in &work[c] {
                    if row_pivot[r] != usize::MAX {
                        upart[c].push((row_pivot[r], v));
                    } else {
                        d[rowidx[r] * s + jd] = v;
                    }
                }
            }
            // Original row currently at each kernel position.
            let mut rowmap = active_rows.clone();
            let base = pivots.len();
            for kd in 0..s {
                let mut best = kd;
                let mut best_abs = d[kd * s + kd].abs();
                for i in kd + 1..s {
                    let a = d[i * s + kd].abs();
                    if a > best_abs {
                        best = i;
                        best_abs = a;
                    }
                }
                if best_abs < RANK_TOL {
                    let mut found = None;
                    for (q, &r) in rowmap.iter().enumerate().skip(kd) {
                        if !slack_basic[r] {
                            found = Some((q, nv + r));
                            break;
                        }
                        if self.art_col_of[r] != usize::MAX && !art_basic[r] {
                            found = Some((q, self.art_col_of[r]));
                            break;
                        }
                    }
                    let Some((q, col)) = found else {
                        return Err(LpError::NumericalBreakdown);
                    };
                    let cpos = active_cols[kd];
                    let old = self.basis[cpos];
                    if (nv..nv + m).contains(&old) {
                        slack_basic[old - nv] = false;
                    } else if old >= nv + m {
                        art_basic[self.art_row[old - nv - m]] = false;
                    }
                    let v = self.beta[cpos];
                    self.state[old] = if !self.lower[old].is_finite() {
                        ColState::AtUpper
                    } else if !self.upper[old].is_finite()
                        || (v - self.lower[old]).abs() <= (self.upper[old] - v).abs()
                    {
                        ColState::AtLower
                    } else {
                        ColState::AtUpper
                    };
                    let r_used = rowmap[q];
                    if col >= nv + m {
                        art_basic[r_used] = true;
                    } else {
                        slack_basic[r_used] = true;
                    }
                    self.basis[cpos] = col;
                    self.state[col] = ColState::Basic;
                    let val = self.cols[col][0].1;
                    for i in 0..s {
                        d[i * s + kd] = 0.0;
                    }
                    d[q * s + kd] = val;
                    upart[cpos].clear();
                    best = q;
                }
                if best != kd {
                    for j in 0..s {
                        d.swap(kd * s + j, best * s + j);
                    }
                    rowmap.swap(kd, best);
                }
                let piv = d[kd * s + kd];
                let (top, bottom) = d.split_at_mut((kd + 1) * s);
                let krow = &top[kd * s..];
                for row in bottom.chunks_exact_mut(s) {
                    let f = row[kd] / piv;
                    row[kd] = f;
                    if f != 0.0 {
                        for j in kd + 1..s {
                            row[j] -= f * krow[j];
                        }
                    }
                }
            }
            for kd in 0..s {
                let cpos = active_cols[kd];
                let mut uc = std::mem::take(&mut upart[cpos]);
                for i in 0..kd {
                    let u = d[i * s + kd];
                    if u != 0.0 {
                        uc.push((base + i, u));
                    }
                }
                let mut lc: Vec<(usize, f64)> = Vec::new();
                for i in kd + 1..s {
                    let l = d[i * s + kd];
                    if l != 0.0 {
                        lc.push((rowmap[i], l));
                    }
                }
                pivots.push((rowmap[kd], cpos, d[kd * s + kd]));
                lcols.push(lc);
                ucols.push(uc);
            }
        }
        self.factor = Factor {
            m,
            pivots,
            lcols,
            ucols,
        };
        Ok(())
    }

    /// Exact basic values and a truthful objective from the current
    /// factorization and nonbasic states.
    fn recompute_state(&mut self) {
        let mut v = vec![0.0f64; self.m];
        for (r, (_, _, rhs)) in self.lp.rows.iter().enumerate() {
            v[r] = *rhs;
        }
        for j in 0..self.ncols {
            if self.state[j] == ColState::Basic {
                continue;
            }
            let val = self.nonbasic_value(j);
            if val != 0.0 && val.is_finite() {
                for &(r, a) in &self.cols[j] {
                    v[r] -= a * val;
                }
            }
        }
        self.factor.solve(&mut v);
        for b in v.iter_mut() {
            if b.abs() < DROP_TOL {
                *b = 0.0;
            }
        }
        self.beta = v;
        let mut z = 0.0;
        for j in 0..self.ncols {
            if self.state[j] == ColState::Basic {
                continue;
            }
            let val = self.nonbasic_value(j);
            if val != 0.0 && val.is_finite() {
                z += self.cost[j] * val;
            }
        }
        for (r, &bj) in self.basis.iter().enumerate() {
            z += self.cost[bj] * self.beta[r];
        }
        self.z = z;
    }

    /// Fresh factorization, exact basic values, truthful objective.
    fn refactor(&mut self) -> Result<(), LpError> {
        self.factor_basis()?;
        self.etas.clear();
        self.recompute_state();
        self.force_refactor = false;
        Ok(())
    }

    /// Iterates the active phase to optimality or unboundedness.
    fn run(&mut self) -> Result<LpStatus, LpError> {
        loop {
            if self.force_refactor || self.etas.len() >= REFACTOR_EVERY {
                self.refactor()?;
            }
            let pi = self.btran_pi();
            let Some((e, d_e)) = self.price(&pi) else {
                if self.etas.is_empty() {
                    return Ok(LpStatus::Optimal);
                }
                // Confirm on exact numbers before declaring victory.
                self.refactor()?;
                let pi = self.btran_pi();
                if self.price(&pi).is_none() {
                    return Ok(LpStatus::Optimal);
                }
                continue;
            };
            let dir = if self.state[e] == ColState::AtLower {
                1.0
            } else {
                -1.0
            };
            let w = self.ftran(e);
            let delta = match self.ratio(e, dir, &w) {
                Step::Unbounded => return Ok(LpStatus::Unbounded),
                Step::Flip(delta) => {
                    if delta != 0.0 {
                        for (i, &wi) in w.iter().enumerate() {
                            if wi != 0.0 {
                                self.beta[i] -= delta * wi;
                            }
                        }
                    }
                    self.state[e] = match self.state[e] {
                        ColState::AtLower => ColState::AtUpper,
                        _ => ColState::AtLower,
                    };
                    self.z += d_e * delta;
                    delta
                }
                Step::Pivot {
                    row,
                    leaving_to_upper,
                    t,
                } => {
                    self.execute_pivot(e, dir, d_e, w, row, leaving_to_upper, t)?;
                    dir * t
                }
            };
            let improvement = -(d_e * delta);
            if improvement < STALL_TOL {
                self.stalled += 1;
                if self.stalled >= STALL_LIMIT {
                    self.bland = true;
                }
            } else {
                self.stalled = 0;
                self.bland = false;
            }
            self.iterations += 1;
            if self.iterations % 5000 == 0 {
                eprintln!(
                    "DBG it={} z={:.9} stalled={} bland={} etas={}",
                    self.iterations,
                    self.z,
                    self.stalled,
                    self.bland,
                    self.etas.len()
                );
            }
            if self.iterations >= self.iter_cap {
                return Err(LpError::IterationLimit);
            }
        }
    }

    /// Row `r` of the basis inverse: enters as a position unit vector,
    /// leaves indexed by original row.
    fn btran_row(&self, r: usize) -> Vec<f64> {
        let mut u = vec![0.0f64; self.m];
        u[r] = 1.0;
        for e in self.etas.iter().rev() {
            let mut s = 0.0;
            for &(i, wi) in &e.entries {
                let ui = u[i];
                if ui != 0.0 {
                    s += ui * wi;
                }
            }
            u[e.p] = (u[e.p] - s) / e.pivot;
        }
        self.factor.solve_t(&mut u);
        u
    }

    /// Dual iterations from a dually feasible basis until the basic
    /// values fit their bounds again. Returns Infeasible when some
    /// violated row admits no entering column, and None when the work
    /// exceeds what a cold solve would cost.
    fn dual_run(&mut self) -> Result<Option<LpStatus>, LpError> {
        let budget = self.iterations + (2 * self.m).max(400);
        loop {
            if self.force_refactor || self.etas.len() >= REFACTOR_EVERY {
                self.refactor()?;
            }
            let mut row = usize::MAX;
            let mut worst = FEAS_TOL;
            let mut target_upper = false;
            for (r, &bj) in self.basis.iter().enumerate() {
                let b = self.beta[r];
                let low_gap = self.lower[bj] - b;
                let high_gap = b - self.upper[bj];
                if low_gap > worst {
                    worst = low_gap;
                    row = r;
                    target_upper = false;
                }
                if high_gap > worst {
                    worst = high_gap;
                    row = r;
                    target_upper = true;
                }
            }
            if row == usize::MAX {
                return Ok(Some(LpStatus::Optimal));
            }
            if self.iterations >= budget {
                return Ok(None);
            }
            let pi = self.btran_pi();
            let rho = self.btran_row(row);
            let leaving = self.basis[row];
            let beta_r = self.beta[row];
            let target = if target_upper {
                self.upper[leaving]
            } else {
                self.lower[leaving]
            };
            // Admissible entering columns move the violated basic back
            // toward its bound without breaking dual feasibility; the
            // smallest |d|/|alpha| ratio wins, ties to the larger
            // |alpha|, Bland mode to the lowest index.
            let mut pick: Option<(usize, f64, f64, f64)> = None;
            for j in 0..self.ncols {
                let st = self.state[j];
                if st == ColState::Basic || self.lower[j] >= self.upper[j] {
                    continue;
                }
                let mut alpha = 0.0;
                for &(r, a) in &self.cols[j] {
                    let v = rho[r];
                    if v != 0.0 {
                        alpha += a * v;
                    }
                }
                if alpha.abs() <= PIVOT_CAND_TOL {
                    continue;
                }
                let raising = beta_r < target;
                let admissible = match st {
                    ColState::AtLower => {
                        if raising {
                            alpha < 0.0
                        } else {
                            alpha > 0.0
                        }
                    }
                    _ => {
                        if raising {
                            alpha > 0.0
                        } else {
                            alpha < 0.0
                        }
                    }
                };
                if !admissible {
                    continue;
                }
                let mut d = self.cost[j];
                for &(r, a) in &self.cols[j] {
                    d -= pi[r] * a;
                }
                let ratio = d.abs() / alpha.abs();
                let better = match pick {
                    None => true,
                    Some((bj2, br, ba, _)) => {
                        if self.bland {
                            j < bj2
                        } else if ratio < br - STALL_TOL {
                            true
                        } else if ratio <= br + STALL_TOL {
                            alpha.abs() > ba.abs()
                        } else {
                            false
                        }
                    }
                };
                if better {
                    pick = Some((j, ratio, alpha, d));
                }
            }
            let Some((e, _, alpha_e, d_e)) = pick else {
                // No column can move the violated basic: infeasible,
                // but only an exact factorization gets to say so.
                if !self.etas.is_empty() {
                    self.refactor()?;
                    continue;
                }
                return Ok(Some(LpStatus::Infeasible));
            };
            let dir = if self.state[e] == ColState::AtLower {
                1.0
            } else {
                -1.0
            };
            let w = self.ftran(e);
            let w_r = w[row];
            if w_r.abs() < PIVOT_EXEC_TOL || w_r * alpha_e < 0.0 {
                // The eta chain and the fresh column disagree; retry
                // on exact numbers once, then give up on the warm path.
                if self.etas.is_empty() {
                    return Ok(None);
                }
                self.refactor()?;
                continue;
            }
            let t = (beta_r - target) / (dir * w_r);
            if t < 0.0 {
                if self.etas.is_empty() {
                    return Ok(None);
                }
                self.refactor()?;
                continue;
            }
            let span_e = self.upper[e] - self.lower[e];
            let gain;
            if span_e.is_finite() && t > span_e + STALL_TOL {
                // Fixing the row outright would carry the entering
                // column past its far bound. Walk it only that far, as
                // a bound flip: no basis change, the violation shrinks,
                // and the next pass continues with another column.
                let delta = dir * span_e;
                if delta != 0.0 {
                    for (i, &wi) in w.iter().enumerate() {
                        if wi != 0.0 {
                            self.beta[i] -= delta * wi;
                        }
                    }
                }
                self.state[e] = match self.state[e] {
                    ColState::AtLower => ColState::AtUpper,
                    _ => ColState::AtLower,
                };
                self.z += d_e * delta;
                gain = worst.min(w_r.abs() * span_e);
            } else {
                gain = worst.min(d_e.abs() * t);
                self.execute_pivot(e, dir, d_e, w, row, target_upper, t)?;
            }
            if gain < STALL_TOL {
                self.stalled += 1;
                if self.stalled >= STALL_LIMIT {
                    self.bland = true;
                }
            } else {
                self.stalled = 0;
                self.bland = false;
            }
            self.iterations += 1;
            if self.iterations >= self.iter_cap {
                return Err(LpError::IterationLimit);
            }
        }
    }
}

/// Structural costs with a fixed per-column tilt, so that plateau
/// vertices stop looking alike to the pricing step. The tilt is a
/// hash of the column index: identical in every solve, no state.
fn perturbed_cost(cost2: &[f64], nv: usize) -> Vec<f64> {
    let mut c = cost2.to_vec();
    for (j, cj) in c.iter_mut().enumerate().take(nv) {
        let h = (j.wrapping_mul(2_654_435_761)) % 97;
        *cj += PERT_BASE * (1.0 + h as f64 / 97.0);
    }
    c
}

/// Greedy pass over the structural columns choosing, for each, the
/// bound whose adoption lowers the total starting row violation. Two
/// sweeps are enough in practice; the result is deterministic.
fn crash_start(lp: &DenseLp, lower: &[f64], upper: &[f64]) -> Vec<f64> {
    let nv = lp.ncols;
    let m = lp.rows.len();
    let mut start: Vec<f64> = (0..nv)
        .map(|j| if lower[j].is_finite() { lower[j] } else { 0.0 })
        .collect();
    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nv];
    for (r, (coefs, _, _)) in lp.rows.iter().enumerate() {
        for &(j, a) in coefs {
            cols[j].push((r, a));
        }
    }
    let mut act = vec![0.0f64; m];
    for (r, (coefs, _, _)) in lp.rows.iter().enumerate() {
        act[r] = coefs.iter().map(|&(j, a)| a * start[j]).sum();
    }
    let viol = |r: usize, a: f64| -> f64 {
        let (_, sense, rhs) = &lp.rows[r];
        match sense {
            Sense::Le => (a - rhs).max(0.0),
            Sense::Ge => (rhs - a).max(0.0),
            Sense::Eq => (a - rhs).abs(),
        }
    };
    for _ in 0..2 {
        let mut changed = false;
        for j in 0..nv {
            if !lower[j].is_finite() || !upper[j].is_finite() || lower[j] == upper[j] {
                continue;
            }
            let target = if start[j] == lower[j] { upper[j] } else { lower[j] };
            let shift = target - start[j];
            let gain: f64 = cols[j]
                .iter()
                .map(|&(r, a)| viol(r, act[r] + a * shift) - viol(r, act[r]))
                .sum();
            if gain < -1e-9 {
                for &(r, a) in &cols[j] {
                    act[r] += a * shift;
                }
                start[j] = target;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    start
}

/// A basis snapshot that a later solve over the same system can start
/// from.
#[derive(Clone)]
pub struct WarmBasis {
    basis: Vec<usize>,
    state: Vec<ColState>,
    /// (row, sign) per artificial column, in column order.
    arts: Vec<(usize, f64)>,
}

fn snapshot(s: &Simplex, arts: &[(usize, f64)]) -> WarmBasis {
    WarmBasis {
        basis: s.basis.clone(),
        state: s.state.clone(),
        arts: arts.to_vec(),
    }
}

/// Two-phase solve of the LP relaxation under substituted bounds.
pub fn solve_lp(
    lp: &DenseLp,
    lower: &[f64],
    upper: &[f64],
    iter_cap: usize,
) -> Result<LpSolution, LpError> {
    solve_lp_warm(lp, lower, upper, iter_cap, None).map(|(sol, _)| sol)
}

/// Shared ending of every solve: primal iterations to optimality, then
/// extraction, with a refactor retry before a bad residual is fatal.
fn finish(
    mut s: Simplex<'_>,
    lp: &DenseLp,
    lower: &[f64],
    upper: &[f64],
    arts: &[(usize, f64)],
    true_cost: &[f64],
) -> Result<(LpSolution, Option<WarmBasis>), LpError> {
    let nv = lp.ncols;
    let mut retries = 0usize;
    let mut cleaned = false;
    loop {
        let status = s.run()?;
        if status == LpStatus::Unbounded {
            return Ok((
                LpSolution {
                    status,
                    x: Vec::new(),
                    objective: f64::NEG_INFINITY,
                    iterations: s.iterations,
                },
                None,
            ));
        }
        if !cleaned {
            // The run above priced a tilted objective. Restore the real
            // one and let the primal iterate the last few steps on it,
            // so the value reported downstream is exact.
            cleaned = true;
            if s.cost != true_cost {
                s.cost = true_cost.to_vec();
                s.stalled = 0;
                s.bland = false;
                s.refactor()?;
                continue;
            }
        }
        let mut x = vec![0.0f64; nv];
        for j in 0..nv {
            x[j] = match s.state[j] {
                ColState::AtLower => s.lower[j],
                ColState::AtUpper => s.upper[j],
                ColState::Basic => 0.0,
            };
        }
        for (r, &bj) in s.basis.iter().enumerate() {
            if bj < nv {
                x[bj] = s.beta[r];
            }
        }
        // Never hand back a vector that violates what was asked. A fresh
        // factorization restores exact basic values, so a failed check
        // earns a retry before it is fatal.
        let final_res = lp.residual_with_bounds(&x, lower, upper);
        if final_res > FEAS_TOL {
            if retries >= MAX_REBUILDS {
                return Err(LpError::NumericalBreakdown);
            }
            retries += 1;
            s.refactor()?;
            continue;
        }
        let wb = snapshot(&s, arts);
        return Ok((
            LpSolution {
                status: LpStatus::Optimal,
                objective: lp.objective_value(&x),
                x,
                iterations: s.iterations,
            },
            Some(wb),
        ));
    }
}

/// `solve_lp` with an optional basis left behind by an earlier solve
/// of the same system under different bounds, the branch and bound
/// situation. Bound changes leave reduced costs intact, so the old
/// basis is dually feasible up to bound flips and a few dual steps
/// re-optimize it; any trouble on that route falls back to the cold
/// start. The returned basis seeds the next solve.
pub fn solve_lp_warm(
    lp: &DenseLp,
    lower: &[f64],
    upper: &[f64],
    iter_cap: usize,
    warm: Option<&WarmBasis>,
) -> Result<(LpSolution, Option<WarmBasis>), LpError> {
    let nv = lp.ncols;
    for j in 0..nv {
        if lower[j] > upper[j] {
            return Ok((
                LpSolution {
                    status: LpStatus::Infeasible,
                    x: Vec::new(),
                    objective: f64::INFINITY,
                    iterations: 0,
                },
                None,
            ));
        }
    }
    if let Some(wb) = warm {
        if let Some(done) = try_warm(lp, lower, upper, iter_cap, wb) {
            return Ok(done);
        }
    }
    let m = lp.rows.len();
    let x0 = crash_start(lp, lower, upper);

    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nv];
    for (r, (coefs, _, _)) in lp.rows.iter().enumerate() {
        for &(j, a) in coefs {
            cols[j].push((r, a));
        }
    }
    let mut low = lower.to_vec();
    let mut up = upper.to_vec();
    for (_, sense, _) in &lp.rows {
        let (slo, sup) = match sense {
            Sense::Le => (0.0, f64::INFINITY),
            Sense::Ge => (f64::NEG_INFINITY, 0.0),
            Sense::Eq => (0.0, 0.0),
        };
        low.push(slo);
        up.push(sup);
    }
    for r in 0..m {
        cols.push(vec![(r, 1.0)]);
    }

    let mut state: Vec<ColState> = (0..nv)
        .map(|j| {
            if x0[j] == up[j] && up[j] > low[j] {
                ColState::AtUpper
            } else {
                ColState::AtLower
            }
        })
        .collect();
    let mut basis = Vec::with_capacity(m);
    let mut beta = Vec::with_capacity(m);
    let mut art_col_of = vec![usize::MAX; m];
    // (row, sign) per artificial, in column order.
    let mut arts: Vec<(usize, f64)> = Vec::new();
    for (r, (coefs, _, rhs)) in lp.rows.iter().enumerate() {
        let act: f64 = coefs.iter().map(|&(j, a)| a * x0[j]).sum();
        let res = rhs - act;
        let sval = res.clamp(low[nv + r], up[nv + r]);
        if (res - sval).abs() <= 1e-12 {
            basis.push(nv + r);
            beta.push(res);
            state.push(ColState::Basic);
        } else {
            state.push(if res > sval {
                ColState::AtUpper
            } else {
                ColState::AtLower
            });
            let dev = res - sval;
            let acol = nv + m + arts.len();
            art_col_of[r] = acol;
            basis.push(acol);
            beta.push(dev.abs());
            arts.push((r, dev.signum()));
        }
    }
    let mut art_row = Vec::with_capacity(arts.len());
    for &(r, sigma) in &arts {
        cols.push(vec![(r, sigma)]);
        low.push(0.0);
        up.push(f64::INFINITY);
        state.push(ColState::Basic);
        art_row.push(r);
    }
    let ncols = nv + m + arts.len();
    let mut cost2 = vec![0.0f64; ncols];
    cost2[..nv].copy_from_slice(&lp.cost);
    let phase1 = !arts.is_empty();
    let cost = if phase1 {
        let mut c = vec![0.0f64; ncols];
        for c_j in c.iter_mut().skip(nv + m) {
            *c_j = 1.0;
        }
        c
    } else {
        perturbed_cost(&cost2, nv)
    };

    let mut s = Simplex {
        lp,
        m,
        nv,
        ncols,
        cols,
        lower: low,
        upper: up,
        state,
        basis,
        beta,
        art_col_of,
        art_row,
        factor: Factor::empty(),
        etas: Vec::new(),
        cost,
        z: 0.0,
        iterations: 0,
        iter_cap,
        stalled: 0,
        bland: false,
        force_refactor: false,
    };
    s.refactor()?;

    if phase1 {
        match s.run()? {
            LpStatus::Optimal => {}
            _ => return Err(LpError::NumericalBreakdown),
        }
        if s.z > FEAS_TOL {
            let wb = snapshot(&s, &arts);
            return Ok((
                LpSolution {
                    status: LpStatus::Infeasible,
                    x: Vec::new(),
                    objective: f64::INFINITY,
                    iterations: s.iterations,
                },
                Some(wb),
            ));
        }
        // Freeze artificials at zero and price with the real costs.
        for j in nv + m..ncols {
            s.lower[j] = 0.0;
            s.upper[j] = 0.0;
            if s.state[j] == ColState::AtUpper {
                s.state[j] = ColState::AtLower;
            }
        }
        s.cost = perturbed_cost(&cost2, nv);
        s.stalled = 0;
        s.bland = false;
        s.refactor()?;
    }
    finish(s, lp, lower, upper, &arts, &cost2)
}

/// The warm route: rebuild the column frame around the old basis,
/// restore dual feasibility by parking mispriced nonbasics on their
/// other bound, then run dual steps until the basic values fit the new
/// bounds. None means the cold path should take over.
fn try_warm(
    lp: &DenseLp,
    lower: &[f64],
    upper: &[f64],
    iter_cap: usize,
    wb: &WarmBasis,
) -> Option<(LpSolution, Option<WarmBasis>)> {
    let nv = lp.ncols;
    let m = lp.rows.len();
    let ncols = nv + m + wb.arts.len();
    if wb.basis.len() != m || wb.state.len() != ncols {
        return None;
    }
    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nv];
    for (r, (coefs, _, _)) in lp.rows.iter().enumerate() {
        for &(j, a) in coefs {
            cols[j].push((r, a));
        }
    }
    let mut low = lower.to_vec();
    let mut up = upper.to_vec();
    for (_, sense, _) in &lp.rows {
        let (slo, sup) = match sense {
            Sense::Le => (0.0, f64::INFINITY),
            Sense::Ge => (f64::NEG_INFINITY, 0.0),
            Sense::Eq => (0.0, 0.0),
        };
        low.push(slo);
        up.push(sup);
    }
    for r in 0..m {
        cols.push(vec![(r, 1.0)]);
    }
    let mut art_col_of = vec![usize::MAX; m];
    let mut art_row = Vec::with_capacity(wb.arts.len());
    for (k, &(r, sigma)) in wb.arts.iter().enumerate() {
        art_col_of[r] = nv + m + k;
        art_row.push(r);
        cols.push(vec![(r, sigma)]);
        low.push(0.0);
        up.push(0.0);
    }
    let mut state = wb.state.clone();
    let mut seen = vec![false; ncols];
    for &bj in &wb.basis {
        if bj >= ncols || seen[bj] || state[bj] != ColState::Basic {
            return None;
        }
        seen[bj] = true;
    }
    if state.iter().filter(|&&st| st == ColState::Basic).count() != m {
        return None;
    }
    for j in 0..ncols {
        match state[j] {
            ColState::Basic => {}
            ColState::AtLower if low[j].is_infinite() => {
                if up[j].is_finite() {
                    state[j] = ColState::AtUpper;
                } else {
                    return None;
                }
            }
            ColState::AtUpper if up[j].is_infinite() => {
                if low[j].is_finite() {
                    state[j] = ColState::AtLower;
                } else {
                    return None;
                }
            }
            _ => {}
        }
    }
    let mut cost2 = vec![0.0f64; ncols];
    cost2[..nv].copy_from_slice(&lp.cost);
    let cost = perturbed_cost(&cost2, nv);
    let mut s = Simplex {
        lp,
        m,
        nv,
        ncols,
        cols,
        lower: low,
        upper: up,
        state,
        basis: wb.basis.clone(),
        beta: vec![0.0; m],
        art_col_of,
        art_row,
        factor: Factor::empty(),
        etas: Vec::new(),
        cost,
        z: 0.0,
        iterations: 0,
        iter_cap,
        stalled: 0,
        bland: false,
        force_refactor: false,
    };
    s.refactor().ok()?;
    let pi = s.btran_pi();
    let mut flipped = false;
    for j in 0..s.ncols {
        if s.state[j] == ColState::Basic || s.lower[j] >= s.upper[j] {
            continue;
        }
        let mut d = s.cost[j];
        for &(r, a) in &s.cols[j] {
            d -= pi[r] * a;
        }
        if s.state[j] == ColState::AtLower && d < -PRICE_TOL {
            if !s.upper[j].is_finite() {
                return None;
            }
            s.state[j] = ColState::AtUpper;
            flipped = true;
        } else if s.state[j] == ColState::AtUpper && d > PRICE_TOL {
            if !s.lower[j].is_finite() {
                return None;
            }
            s.state[j] = ColState::AtLower;
            flipped = true;
        }
    }
    if flipped {
        s.recompute_state();
    }
    match s.dual_run().ok()? {
        None => None,
        Some(LpStatus::Infeasible) => {
            let wb2 = snapshot(&s, &wb.arts);
            Some((
                LpSolution {
                    status: LpStatus::Infeasible,
                    x: Vec::new(),
                    objective: f64::INFINITY,
                    iterations: s.iterations,
                },
                Some(wb2),
            ))
        }
        Some(_) => finish(s, lp, lower, upper, &wb.arts, &cost2).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{rat, LinearModel, Rat, Sense};
    use num_traits::Zero;

    fn solve_model(m: &LinearModel) -> LpSolution {
        let lp = DenseLp::from_model(m);
        solve_lp(&lp, &lp.lower, &lp.upper, DEFAULT_ITER_CAP).unwrap()
    }

    #[test]
    fn tiny_lp_optimum() {
        // min x + 2y  s.t. x + y >= 3, x <= 2, y <= 4, x,y >= 0
        let mut m = LinearModel::new("t");
        let x = m.add_continuous("x", Rat::zero(), Some(rat(2))).unwrap();
        let y = m.add_continuous("y", Rat::zero(), Some(rat(4))).unwrap();
        m.set_objective(vec![(x, rat(1)), (y, rat(2))]).unwrap();
        m.add_constraint("c", vec![(x, rat(1)), (y, rat(1))], Sense::Ge, rat(3))
            .unwrap();
        let s = solve_model(&m);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 4.0).abs() < 1e-9);
        assert!((s.x[0] - 2.0).abs() < 1e-9);
        assert!((s.x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn equality_rows_and_negative_costs() {
        // min -x - y  s.t. x + y = 1, both in [0, 1]
        let mut m = LinearModel::new("t");
        let x = m.add_binary("x").unwrap();
        let y = m.add_binary("y").unwrap();
        m.set_objective(vec![(x, rat(-1)), (y, rat(-1))]).unwrap();
        m.add_constraint("c", vec![(x, rat(1)), (y, rat(1))], Sense::Eq, rat(1))
            .unwrap();
        let s = solve_model(&m);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective + 1.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_detected() {
        let mut m = LinearModel::new("t");
        let x = m.add_binary("x").unwrap();
        m.add_constraint("hi", vec![(x, rat(1))], Sense::Ge, rat(2))
            .unwrap();
        m.set_objective(vec![(x, rat(1))]).unwrap();
        let s = solve_model(&m);
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let mut m = LinearModel::new("t");
        let x = m.add_continuous("x", Rat::zero(), None).unwrap();
        m.set_objective(vec![(x, rat(-1))]).unwrap();
        m.add_constraint("c", vec![(x, rat(-1))], Sense::Le, rat(0))
            .unwrap();
        let s = solve_model(&m);
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn fixed_columns_respected() {
        // Fixing x to 1 through the substituted bounds.
        let mut m = LinearModel::new("t");
        let x = m.add_binary("x").unwrap();
        let y = m.add_binary("y").unwrap();
        m.set_objective(vec![(x, rat(1)), (y, rat(1))]).unwrap();
        m.add_constraint("c", vec![(x, rat(1)), (y, rat(1))], Sense::Ge, rat(1))
            .unwrap();
        let lp = DenseLp::from_model(&m);
        let lower = vec![1.0, 0.0];
        let upper = vec![1.0, 1.0];
        let s = solve_lp(&lp, &lower, &upper, DEFAULT_ITER_CAP).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.x[0] - 1.0).abs() < 1e-9);
        assert!(s.x[1].abs() < 1e-9);
    }

    #[test]
    fn lp_relaxation_of_triangle_cover() {
        // Secure domination relaxation of the triangle: fractional
        // optimum 1 with every vertex at 1/3 is not reachable, but the
        // relaxation still sits at 1.
        let g = crate::graphs::Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let m = crate::formulations::lookup("improved")
            .unwrap()
            .build(&g)
            .unwrap();
        let s = solve_model(&m);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 1.0).abs() < 1e-6);
    }

    #[test]
    fn respects_negative_lower_bounds() {
        let mut m = LinearModel::new("t");
        let x = m.add_continuous("x", rat(-5), Some(rat(5))).unwrap();
        m.set_objective(vec![(x, rat(1))]).unwrap();
        m.add_constraint("c", vec![(x, rat(1))], Sense::Ge, rat(-3))
            .unwrap();
        let s = solve_model(&m);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective + 3.0).abs() < 1e-9);
    }
}
