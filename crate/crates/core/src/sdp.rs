//! Small dense SDP solver by consensus ADMM.
//!
//! Maximise `<C, X>` over `X` in the affine set `{<A_i, X> = b_i}` that
//! also lies in the spectral cone (`X >= 0`, or `0 <= X <= I`) and, when
//! sign or zero masks are present, in the elementwise box. The affine
//! iterate `X` is split against one copy per cone; each copy is updated
//! by an exact projection with over-relaxation and a scaled dual.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::eigen::{eigen_decomposition_from, eigenvalues, EigenDecomposition, SymMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdpProblem {
    pub objective: SymMatrix,
    pub constraints: Vec<(SymMatrix, f64)>,
    pub nonnegative: bool,
    /// Nonzero entries are forced to zero.
    pub zero_pattern: Option<SymMatrix>,
    /// Nonzero entries are forced to be nonpositive.
    pub nonpositive_pattern: Option<SymMatrix>,
    /// Adds `I - X >= 0`.
    pub upper_identity: bool,
}

impl SdpProblem {
    pub fn new(objective: SymMatrix) -> Self {
        SdpProblem {
            objective,
            constraints: Vec::new(),
            nonnegative: false,
            zero_pattern: None,
            nonpositive_pattern: None,
            upper_identity: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.objective.dim()
    }

    pub fn equality(mut self, a: SymMatrix, b: f64) -> Self {
        self.constraints.push((a, b));
        self
    }

    pub fn nonnegative(mut self) -> Self {
        self.nonnegative = true;
        self
    }

    pub fn zero_on(mut self, mask: SymMatrix) -> Self {
        self.zero_pattern = Some(mask);
        self
    }

    pub fn nonpositive_on(mut self, mask: SymMatrix) -> Self {
        self.nonpositive_pattern = Some(mask);
        self
    }

    pub fn upper_identity(mut self) -> Self {
        self.upper_identity = true;
        self
    }

    fn has_elementwise(&self) -> bool {
        self.nonnegative || self.zero_pattern.is_some() || self.nonpositive_pattern.is_some()
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        if n == 0 {
            return Err(Error::ParameterOutOfRange("SDP dimension must be >= 1".into()));
        }
        let mats = self
            .constraints
            .iter()
            .map(|(a, _)| a)
            .chain(self.zero_pattern.iter())
            .chain(self.nonpositive_pattern.iter());
        for a in mats {
            if a.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: a.dim() });
            }
        }
        Ok(())
    }

    /// Per-entry elementwise bounds `(lo, hi)`.
    fn entry_bounds(&self) -> Vec<(f64, f64)> {
        let n = self.dim();
        let mut out = vec![(f64::NEG_INFINITY, f64::INFINITY); n * n];
        for (k, b) in out.iter_mut().enumerate() {
            if self.nonnegative {
                b.0 = 0.0;
            }
            if self.nonpositive_pattern.as_ref().is_some_and(|m| m.as_slice()[k] != 0.0) {
                b.1 = 0.0;
            }
            if self.zero_pattern.as_ref().is_some_and(|m| m.as_slice()[k] != 0.0) {
                *b = (0.0, 0.0);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SdpSettings {
    pub tol: f64,
    pub max_iterations: usize,
    pub relaxation: f64,
    pub rho: f64,
}

impl Default for SdpSettings {
    fn default() -> Self {
        SdpSettings { tol: 1e-7, max_iterations: 100_000, relaxation: 1.6, rho: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SdpStatus {
    Converged,
    MaxIterations,
    InfeasibleSuspected,
}

impl SdpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SdpStatus::Converged => "converged",
            SdpStatus::MaxIterations => "max_iterations",
            SdpStatus::InfeasibleSuspected => "infeasible_suspected",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// Largest affine constraint violation of the returned primal.
    pub primal: f64,
    /// ADMM dual residual at the last iteration.
    pub dual: f64,
    /// Largest spectral or elementwise cone violation of the returned primal.
    pub cone: f64,
}

/// Iterates that let a later solve resume where this one stopped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdpState {
    x: Vec<f64>,
    z: Vec<Vec<f64>>,
    u: Vec<Vec<f64>>,
    rho: f64,
    basis: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub value: f64,
    pub primal: SymMatrix,
    pub residuals: Residuals,
    pub iterations: usize,
    pub state: SdpState,
}

impl SdpSolution {
    pub fn is_converged(&self) -> bool {
        self.status == SdpStatus::Converged
    }

    /// Errors unless converged.
    pub fn converged(self) -> Result<Self> {
        if self.is_converged() {
            Ok(self)
        } else {
            Err(Error::SdpNotConverged {
                status: self.status.as_str(),
                primal: self.residuals.primal,
                dual: self.residuals.dual,
            })
        }
    }

    /// Plain-text dump: dimensions, constraint summary, final residuals.
    pub fn debug_dump(&self, p: &SdpProblem) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "dim {}", p.dim());
        let _ = writeln!(s, "equality_constraints {}", p.constraints.len());
        for (i, (a, b)) in p.constraints.iter().enumerate() {
            let nnz = a.as_slice().iter().filter(|x| **x != 0.0).count();
            let _ = writeln!(s, "  [{i}] nnz {nnz} rhs {b:.12e}");
        }
        let count = |m: &Option<SymMatrix>| m.as_ref().map_or(0, |m| m.as_slice().iter().filter(|x| **x != 0.0).count());
        let _ = writeln!(s, "nonnegative {}", p.nonnegative);
        let _ = writeln!(s, "zero_pattern_entries {}", count(&p.zero_pattern));
        let _ = writeln!(s, "nonpositive_pattern_entries {}", count(&p.nonpositive_pattern));
        let _ = writeln!(s, "upper_identity {}", p.upper_identity);
        let _ = writeln!(s, "status {}", self.status.as_str());
        let _ = writeln!(s, "iterations {}", self.iterations);
        let _ = writeln!(s, "rho {:.6e}", self.state.rho);
        let _ = writeln!(s, "residual_primal {:.6e}", self.residuals.primal);
        let _ = writeln!(s, "residual_dual {:.6e}", self.residuals.dual);
        let _ = writeln!(s, "residual_cone {:.6e}", self.residuals.cone);
        let _ = writeln!(s, "value {:.12}", self.value);
        s
    }
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn inner(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Projection onto `{<A_i, X> = b_i}` through the constraint Gram matrix.
struct AffineProjector {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    /// Lower-triangular Cholesky factor of the Gram matrix.
    chol: Vec<f64>,
}

impl AffineProjector {
    fn new(p: &SdpProblem) -> Result<Self> {
        let rows: Vec<Vec<f64>> = p.constraints.iter().map(|(a, _)| a.as_slice().to_vec()).collect();
        let rhs: Vec<f64> = p.constraints.iter().map(|(_, b)| *b).collect();
        let m = rows.len();
        let mut chol = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..=i {
                let mut s = inner(&rows[i], &rows[j]);
                for k in 0..j {
                    s -= chol[i * m + k] * chol[j * m + k];
                }
                if i == j {
                    if s <= 1e-12 * (1.0 + inner(&rows[i], &rows[i])) {
                        return Err(Error::Precondition(format!(
                            "equality constraint {i} is linearly dependent on earlier ones"
                        )));
                    }
                    chol[i * m + i] = s.sqrt();
                } else {
                    chol[i * m + j] = s / chol[j * m + j];
                }
            }
        }
        Ok(AffineProjector { rows, rhs, chol })
    }

    fn project(&self, v: &mut [f64]) {
        let m = self.rows.len();
        if m == 0 {
            return;
        }
        let mut mu: Vec<f64> = (0..m).map(|i| inner(&self.rows[i], v) - self.rhs[i]).collect();
        for i in 0..m {
            let s: f64 = (0..i).map(|k| self.chol[i * m + k] * mu[k]).sum();
            mu[i] = (mu[i] - s) / self.chol[i * m + i];
        }
        for i in (0..m).rev() {
            let s: f64 = (i + 1..m).map(|k| self.chol[k * m + i] * mu[k]).sum();
            mu[i] = (mu[i] - s) / self.chol[i * m + i];
        }
        for (row, w) in self.rows.iter().zip(&mu) {
            for (x, a) in v.iter_mut().zip(row) {
                *x -= w * a;
            }
        }
    }

    fn violation(&self, x: &[f64]) -> f64 {
        self.rows.iter().zip(&self.rhs).map(|(a, b)| (inner(a, x) - b).abs()).fold(0.0, f64::max)
    }
}

/// Spectral projection onto `X >= 0`, or onto `0 <= X <= I` when `upper`.
fn project_spectral(n: usize, v: &[f64], upper: bool, basis: &mut Vec<f64>) -> Result<Vec<f64>> {
    let m = SymMatrix::from_raw(n, v.to_vec());
    let d: EigenDecomposition = eigen_decomposition_from(&m, basis)?;
    let out = if upper {
        d.reconstruct(|l| l.clamp(0.0, 1.0))
    } else {
        d.reconstruct(|l| l.max(0.0))
    };
    *basis = d.vectors;
    Ok(out.into_raw())
}

fn project_box(v: &mut [f64], bounds: &[(f64, f64)]) {
    for (x, &(lo, hi)) in v.iter_mut().zip(bounds) {
        *x = x.clamp(lo, hi);
    }
}

fn spectral_violation(n: usize, x: &[f64], upper: bool) -> Result<f64> {
    let s = eigenvalues(&SymMatrix::from_raw(n, x.to_vec()))?;
    let low = (-s.smallest()).max(0.0);
    let high = if upper { (s.largest() - 1.0).max(0.0) } else { 0.0 };
    Ok(low.max(high))
}

fn box_violation(x: &[f64], bounds: &[(f64, f64)]) -> f64 {
    x.iter().zip(bounds).map(|(v, &(lo, hi))| (lo - v).max(v - hi).max(0.0)).fold(0.0, f64::max)
}

pub fn solve_sdp(p: &SdpProblem) -> Result<SdpSolution> {
    solve_sdp_with(p, &SdpSettings::default(), None)
}

/// Solves `p`, optionally resuming from the state of an earlier solve of
/// a problem with the same shape.
pub fn solve_sdp_with(p: &SdpProblem, settings: &SdpSettings, warm: Option<&SdpState>) -> Result<SdpSolution> {
    p.validate()?;
    let n = p.dim();
    let nn = n * n;
    let affine = AffineProjector::new(p)?;
    let bounds = p.entry_bounds();
    let copies = if p.has_elementwise() { 2 } else { 1 };
    let c = p.objective.as_slice();
    let alpha = settings.relaxation;

    let mut state = match warm {
        Some(w) if w.x.len() == nn && w.z.len() == copies => w.clone(),
        _ => {
            let mut identity = vec![0.0; nn];
            for i in 0..n {
                identity[i * n + i] = 1.0;
            }
            SdpState {
                x: vec![0.0; nn],
                z: vec![vec![0.0; nn]; copies],
                u: vec![vec![0.0; nn]; copies],
                rho: settings.rho,
                basis: identity,
            }
        }
    };

    let mut status = SdpStatus::MaxIterations;
    let mut iterations = 0;
    let mut dual_res = f64::INFINITY;
    let mut v = vec![0.0; nn];
    let mut window_best = f64::INFINITY;
    let mut previous_window_best = f64::INFINITY;
    const WINDOW: usize = 2000;

    while iterations < settings.max_iterations {
        iterations += 1;
        let SdpState { x, z, u, rho, basis } = &mut state;

        // X-update: affine projection of the averaged targets.
        for (k, vk) in v.iter_mut().enumerate() {
            let mut s = 0.0;
            for j in 0..copies {
                s += z[j][k] - u[j][k];
            }
            *vk = s / copies as f64 + c[k] / (copies as f64 * *rho);
        }
        affine.project(&mut v);
        x.copy_from_slice(&v);

        // Z-updates with over-relaxation, then scaled dual ascent.
        let mut primal_sq = 0.0;
        let mut dual_sq = 0.0;
        for j in 0..copies {
            let relaxed: Vec<f64> = (0..nn).map(|k| alpha * x[k] + (1.0 - alpha) * z[j][k]).collect();
            let target: Vec<f64> = relaxed.iter().zip(&u[j]).map(|(a, b)| a + b).collect();
            let new_z = if j == 0 {
                project_spectral(n, &target, p.upper_identity, basis)?
            } else {
                let mut t = target;
                project_box(&mut t, &bounds);
                t
            };
            for k in 0..nn {
                u[j][k] += relaxed[k] - new_z[k];
                primal_sq += (x[k] - new_z[k]).powi(2);
                dual_sq += (new_z[k] - z[j][k]).powi(2);
            }
            z[j] = new_z;
        }
        let primal_res = primal_sq.sqrt();
        dual_res = *rho * dual_sq.sqrt();

        let x_norm = norm(x);
        let z_norm = z.iter().map(|zj| norm(zj)).fold(0.0, f64::max);
        let y_norm = *rho * u.iter().map(|uj| norm(uj)).fold(0.0, f64::max);
        let eps_primal = settings.tol * (1.0 + x_norm.max(z_norm));
        let eps_dual = settings.tol * (1.0 + y_norm);
        if primal_res <= eps_primal && dual_res <= eps_dual {
            status = SdpStatus::Converged;
            break;
        }

        // Residual balancing, with the scaled duals rescaled to match.
        if iterations % 50 == 0 {
            let rp = primal_res / eps_primal;
            let rd = dual_res / eps_dual;
            let factor = if rp > 10.0 * rd && *rho < 1e6 {
                2.0
            } else if rd > 10.0 * rp && *rho > 1e-6 {
                0.5
            } else {
                1.0
            };
            if factor != 1.0 {
                *rho *= factor;
                for uj in u.iter_mut() {
                    for w in uj.iter_mut() {
                        *w /= factor;
                    }
                }
            }
        }

        // Stalled primal residual well above tolerance: sets do not meet.
        let rel = primal_res / (1.0 + x_norm.max(z_norm));
        window_best = window_best.min(rel);
        if iterations % WINDOW == 0 {
            if window_best > 1e-4 && window_best >= 0.9 * previous_window_best {
                status = SdpStatus::InfeasibleSuspected;
                break;
            }
            previous_window_best = window_best;
            window_best = f64::INFINITY;
        }
    }

    let primal = state.z[0].clone();
    let value = inner(c, &primal);
    let cone = spectral_violation(n, &primal, p.upper_identity)?.max(box_violation(&primal, &bounds));
    let residuals = Residuals { primal: affine.violation(&primal), dual: dual_res, cone };
    Ok(SdpSolution { status, value, primal: SymMatrix::from_raw(n, primal), residuals, iterations, state })
}

/// Positive-energy SDP `max <A, X> : 0 <= X <= I`.
pub fn positive_energy_problem(g: &Graph) -> SdpProblem {
    SdpProblem::new(g.adjacency_matrix()).upper_identity()
}

/// Schrijver theta: `max <J, X> : X >= 0 (psd), X >= 0 (entrywise), tr X = 1, X o A = 0`.
pub fn theta_minus_problem(g: &Graph) -> SdpProblem {
    let n = g.n();
    SdpProblem::new(SymMatrix::ones(n))
        .equality(SymMatrix::identity(n), 1.0)
        .nonnegative()
        .zero_on(g.adjacency_matrix())
}

/// Szegedy theta: `max <J, Y> : Y >= 0 (psd), tr Y = 1, Y o A <= 0`.
pub fn theta_plus_problem(g: &Graph) -> SdpProblem {
    let n = g.n();
    SdpProblem::new(SymMatrix::ones(n))
        .equality(SymMatrix::identity(n), 1.0)
        .nonpositive_on(g.adjacency_matrix())
}

/// Lovász theta: `max <J, X> : X >= 0 (psd), tr X = 1, X o A = 0`.
pub fn lovasz_theta_problem(g: &Graph) -> SdpProblem {
    let n = g.n();
    SdpProblem::new(SymMatrix::ones(n))
        .equality(SymMatrix::identity(n), 1.0)
        .zero_on(g.adjacency_matrix())
}

fn solved_value(p: &SdpProblem) -> Result<f64> {
    Ok(solve_sdp(p)?.converged()?.value)
}

pub fn positive_energy_sdp(g: &Graph) -> Result<f64> {
    solved_value(&positive_energy_problem(g))
}

pub fn theta_minus(g: &Graph) -> Result<f64> {
    solved_value(&theta_minus_problem(g))
}

pub fn theta_plus(g: &Graph) -> Result<f64> {
    solved_value(&theta_plus_problem(g))
}

pub fn lovasz_theta(g: &Graph) -> Result<f64> {
    solved_value(&lovasz_theta_problem(g))
}

/// Feasible point `Y = sum over positive eigenvalues of lambda_i E_i` of
/// the dual `min <I, Y> : Y >= 0, Y - M >= 0`.
pub fn positive_energy_dual_point(m: &SymMatrix) -> Result<SymMatrix> {
    let d = crate::eigen::eigen_decomposition(m)?;
    Ok(d.reconstruct(|l| l.max(0.0)))
}
