//! Dense two-phase primal simplex with Bland's rule.
//!
//! Problems are brought to standard form `min c'x, Ax = b, x >= 0, b >= 0`
//! by shifting finite lower bounds, splitting free variables, adding
//! slack/surplus columns and, where no slack can start the basis, an
//! artificial column. The tableau is rebuilt from the original columns
//! every [`REFACTOR_EVERY`] pivots to shed accumulated rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-10;
const REFACTOR_EVERY: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub row: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

/// Dense LP. Every variable has a lower bound, `f64::NEG_INFINITY` for
/// a free variable; there are no upper bounds beyond explicit rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub sense: Sense,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<f64>,
}

impl LinearProgram {
    /// New problem over `vars` nonnegative variables.
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let vars = objective.len();
        LinearProgram { objective, sense, constraints: Vec::new(), lower_bounds: vec![0.0; vars] }
    }

    pub fn minimize(objective: Vec<f64>) -> Self {
        Self::new(Sense::Minimize, objective)
    }

    pub fn maximize(objective: Vec<f64>) -> Self {
        Self::new(Sense::Maximize, objective)
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(mut self, row: Vec<f64>, relation: Relation, rhs: f64) -> Self {
        self.constraints.push(Constraint { row, relation, rhs });
        self
    }

    pub fn push(&mut self, row: Vec<f64>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint { row, relation, rhs });
    }

    pub fn with_lower_bound(mut self, var: usize, bound: f64) -> Self {
        self.lower_bounds[var] = bound;
        self
    }

    pub fn free(self, var: usize) -> Self {
        self.with_lower_bound(var, f64::NEG_INFINITY)
    }

    fn validate(&self) -> Result<()> {
        let n = self.vars();
        if self.lower_bounds.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.lower_bounds.len() });
        }
        for c in &self.constraints {
            if c.row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.row.len() });
            }
        }
        let finite = self.objective.iter().chain(self.constraints.iter().flat_map(|c| c.row.iter()))
            .chain(self.constraints.iter().map(|c| &c.rhs))
            .all(|x| x.is_finite());
        if !finite || self.lower_bounds.iter().any(|l| l.is_nan() || *l == f64::INFINITY) {
            return Err(Error::Precondition("linear program has non-finite data".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        }
    }
}

/// Solver result. On optimality `dual` holds one multiplier per
/// constraint such that, with reduced costs `r = c - A'y`,
/// `value = b'y + sum_j l_j r_j` over finite lower bounds `l_j`.
/// `primal` and `dual` are empty otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    pub primal: Vec<f64>,
    pub dual: Vec<f64>,
    pub pivots: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    /// Errors unless optimal.
    pub fn optimal(self) -> Result<Self> {
        if self.is_optimal() {
            Ok(self)
        } else {
            Err(Error::LpStatus(self.status.as_str()))
        }
    }
}

/// How an original variable maps into standard-form columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    Shifted { col: usize, lower: f64 },
    Split { pos: usize, neg: usize },
}

struct StandardForm {
    /// Column-major `m x cols` constraint matrix.
    columns: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    cost: Vec<f64>,
    /// +1 or -1 per row: multiplier applied to make `rhs >= 0`.
    row_sign: Vec<f64>,
    artificial_from: usize,
    initial_basis: Vec<usize>,
    vars: Vec<VarMap>,
}

fn standardize(p: &LinearProgram) -> StandardForm {
    let m = p.constraints.len();
    let flip = if p.sense == Sense::Maximize { -1.0 } else { 1.0 };
    let mut columns = Vec::new();
    let mut cost = Vec::new();
    let mut vars = Vec::with_capacity(p.vars());
    let mut rhs: Vec<f64> = p.constraints.iter().map(|c| c.rhs).collect();
    for j in 0..p.vars() {
        let col: Vec<f64> = p.constraints.iter().map(|c| c.row[j]).collect();
        let cj = flip * p.objective[j];
        let lower = p.lower_bounds[j];
        if lower.is_finite() {
            if lower != 0.0 {
                for (b, a) in rhs.iter_mut().zip(&col) {
                    *b -= a * lower;
                }
            }
            vars.push(VarMap::Shifted { col: columns.len(), lower });
            columns.push(col);
            cost.push(cj);
        } else {
            let neg: Vec<f64> = col.iter().map(|a| -a).collect();
            vars.push(VarMap::Split { pos: columns.len(), neg: columns.len() + 1 });
            columns.push(col);
            columns.push(neg);
            cost.push(cj);
            cost.push(-cj);
        }
    }
    let mut row_sign = vec![1.0; m];
    let mut relations: Vec<Relation> = p.constraints.iter().map(|c| c.relation).collect();
    for i in 0..m {
        if rhs[i] < 0.0 {
            row_sign[i] = -1.0;
            rhs[i] = -rhs[i];
            for col in columns.iter_mut() {
                col[i] = -col[i];
            }
            relations[i] = match relations[i] {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }
    let mut basis = vec![usize::MAX; m];
    for i in 0..m {
        let sign = match relations[i] {
            Relation::Le => 1.0,
            Relation::Ge => -1.0,
            Relation::Eq => continue,
        };
        let mut col = vec![0.0; m];
        col[i] = sign;
        if sign > 0.0 {
            basis[i] = columns.len();
        }
        columns.push(col);
        cost.push(0.0);
    }
    let artificial_from = columns.len();
    for i in 0..m {
        if basis[i] == usize::MAX {
            let mut col = vec![0.0; m];
            col[i] = 1.0;
            basis[i] = columns.len();
            columns.push(col);
            cost.push(0.0);
        }
    }
    StandardForm { columns, rhs, cost, row_sign, artificial_from, initial_basis: basis, vars }
}

/// Row-major tableau `B^-1 [A | b]` plus the current basis.
struct Tableau<'a> {
    sf: &'a StandardForm,
    m: usize,
    width: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
    pivots: usize,
    since_refactor: usize,
}

impl<'a> Tableau<'a> {
    fn new(sf: &'a StandardForm) -> Self {
        let m = sf.rhs.len();
        let width = sf.columns.len() + 1;
        let mut t = vec![0.0; m * width];
        for i in 0..m {
            for (j, col) in sf.columns.iter().enumerate() {
                t[i * width + j] = col[i];
            }
            t[i * width + width - 1] = sf.rhs[i];
        }
        // The initial basis columns are unit vectors, so this is B^-1 [A | b].
        Tableau { sf, m, width, t, basis: sf.initial_basis.clone(), pivots: 0, since_refactor: 0 }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width;
        let p = self.t[row * w + col];
        for j in 0..w {
            self.t[row * w + j] /= p;
        }
        self.t[row * w + col] = 1.0;
        let (before, rest) = self.t.split_at_mut(row * w);
        let (prow, after) = rest.split_at_mut(w);
        for r in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = r[col];
            if f != 0.0 {
                for j in 0..w {
                    r[j] -= f * prow[j];
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
        self.pivots += 1;
        self.since_refactor += 1;
        if self.since_refactor >= REFACTOR_EVERY {
            self.refactor();
        }
    }

    /// Rebuilds the tableau from the original columns by Gauss-Jordan
    /// elimination with partial pivoting on `[B | A b]`.
    fn refactor(&mut self) {
        self.since_refactor = 0;
        let (m, w) = (self.m, self.width);
        let mut b: Vec<f64> = vec![0.0; m * m];
        for (k, &j) in self.basis.iter().enumerate() {
            for i in 0..m {
                b[i * m + k] = self.sf.columns[j][i];
            }
        }
        let mut t = vec![0.0; m * w];
        for i in 0..m {
            for (j, col) in self.sf.columns.iter().enumerate() {
                t[i * w + j] = col[i];
            }
            t[i * w + w - 1] = self.sf.rhs[i];
        }
        for k in 0..m {
            let piv = (k..m).max_by(|&x, &y| b[x * m + k].abs().total_cmp(&b[y * m + k].abs())).unwrap();
            if b[piv * m + k].abs() < 1e-14 {
                // Numerically singular basis: keep the incrementally updated tableau.
                return;
            }
            if piv != k {
                for j in 0..m {
                    b.swap(k * m + j, piv * m + j);
                }
                for j in 0..w {
                    t.swap(k * w + j, piv * w + j);
                }
            }
            let p = b[k * m + k];
            for j in 0..m {
                b[k * m + j] /= p;
            }
            for j in 0..w {
                t[k * w + j] /= p;
            }
            for i in 0..m {
                if i == k {
                    continue;
                }
                let f = b[i * m + k];
                if f != 0.0 {
                    for j in 0..m {
                        b[i * m + j] -= f * b[k * m + j];
                    }
                    for j in 0..w {
                        t[i * w + j] -= f * t[k * w + j];
                    }
                }
            }
        }
        // Row k of B^-1 [A|b] now corresponds to basis position k.
        for (k, &j) in self.basis.iter().enumerate() {
            for i in 0..m {
                t[i * w + j] = if i == k { 1.0 } else { 0.0 };
            }
        }
        self.t = t;
    }

    fn reduced_cost(&self, cost: &[f64], j: usize) -> f64 {
        let mut r = cost[j];
        for i in 0..self.m {
            let a = self.at(i, j);
            if a != 0.0 {
                r -= cost[self.basis[i]] * a;
            }
        }
        r
    }

    /// Runs Bland's rule on `cost` over columns `< allowed`. Returns
    /// `Ok(false)` when the problem is unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: usize, budget: usize) -> Result<bool> {
        loop {
            if self.pivots > budget {
                return Err(Error::LpCycling(self.pivots));
            }
            let scale = 1.0 + cost.iter().fold(0.0f64, |s, c| s.max(c.abs()));
            let Some(enter) = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j) < -COST_TOL * scale)
            else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.at(i, enter);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i).max(0.0) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((r, best)) => {
                            if ratio < best - 1e-12 * (1.0 + best)
                                || (ratio <= best + 1e-12 * (1.0 + best) && self.basis[i] < self.basis[r])
                            {
                                Some((i, ratio))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(false),
                Some((row, _)) => self.pivot(row, enter),
            }
        }
    }

    /// Solves `B' y = c_B` for the simplex multipliers.
    fn multipliers(&self, cost: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut a = vec![0.0; m * (m + 1)];
        for (k, &j) in self.basis.iter().enumerate() {
            for i in 0..m {
                a[k * (m + 1) + i] = self.sf.columns[j][i];
            }
            a[k * (m + 1) + m] = cost[j];
        }
        solve_dense(m, &mut a)
    }
}

/// Gaussian elimination with partial pivoting on an `m x (m+1)` augmented
/// system; singular pivots give zero components.
fn solve_dense(m: usize, a: &mut [f64]) -> Vec<f64> {
    let w = m + 1;
    for k in 0..m {
        let piv = (k..m).max_by(|&x, &y| a[x * w + k].abs().total_cmp(&a[y * w + k].abs())).unwrap();
        if a[piv * w + k].abs() < 1e-14 {
            continue;
        }
        for j in 0..w {
            a.swap(k * w + j, piv * w + j);
        }
        for i in k + 1..m {
            let f = a[i * w + k] / a[k * w + k];
            if f != 0.0 {
                for j in k..w {
                    a[i * w + j] -= f * a[k * w + j];
                }
            }
        }
    }
    let mut x = vec![0.0; m];
    for k in (0..m).rev() {
        let d = a[k * w + k];
        if d.abs() < 1e-14 {
            continue;
        }
        let s: f64 = (k + 1..m).map(|j| a[k * w + j] * x[j]).sum();
        x[k] = (a[k * w + m] - s) / d;
    }
    x
}

/// Solves `p` to optimality or classifies it as infeasible/unbounded.
pub fn solve_lp(p: &LinearProgram) -> Result<LpSolution> {
    p.validate()?;
    let sf = standardize(p);
    let m = sf.rhs.len();
    let cols = sf.columns.len();
    let budget = 50_000 + 200 * (m + cols);
    let mut tab = Tableau::new(&sf);

    if sf.artificial_from < cols {
        let phase1: Vec<f64> = (0..cols).map(|j| if j >= sf.artificial_from { 1.0 } else { 0.0 }).collect();
        tab.optimize(&phase1, cols, budget)?;
        tab.refactor();
        let infeasibility: f64 =
            (0..m).filter(|&i| tab.basis[i] >= sf.artificial_from).map(|i| tab.rhs(i)).sum();
        let scale = 1.0 + sf.rhs.iter().fold(0.0f64, |s, b| s.max(b.abs()));
        if infeasibility > 1e-8 * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                value: f64::NAN,
                primal: Vec::new(),
                dual: Vec::new(),
                pivots: tab.pivots,
            });
        }
        // Drive zero-level artificials out where a structural column allows.
        for i in 0..m {
            if tab.basis[i] >= sf.artificial_from {
                if let Some(j) = (0..sf.artificial_from)
                    .filter(|j| !tab.basis.contains(j))
                    .find(|&j| tab.at(i, j).abs() > PIVOT_TOL)
                {
                    tab.pivot(i, j);
                }
            }
        }
    }

    let bounded = tab.optimize(&sf.cost, sf.artificial_from, budget)?;
    if !bounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: if p.sense == Sense::Maximize { f64::INFINITY } else { f64::NEG_INFINITY },
            primal: Vec::new(),
            dual: Vec::new(),
            pivots: tab.pivots,
        });
    }
    tab.refactor();

    let mut x_std = vec![0.0; cols];
    for i in 0..m {
        x_std[tab.basis[i]] = tab.rhs(i).max(0.0);
    }
    let primal: Vec<f64> = sf
        .vars
        .iter()
        .map(|v| match *v {
            VarMap::Shifted { col, lower } => lower + x_std[col],
            VarMap::Split { pos, neg } => x_std[pos] - x_std[neg],
        })
        .collect();
    let value: f64 = p.objective.iter().zip(&primal).map(|(c, x)| c * x).sum();

    let flip = if p.sense == Sense::Maximize { -1.0 } else { 1.0 };
    let y_std = tab.multipliers(&sf.cost);
    let dual: Vec<f64> = (0..m).map(|i| flip * sf.row_sign[i] * y_std[i]).collect();

    Ok(LpSolution { status: LpStatus::Optimal, value, primal, dual, pivots: tab.pivots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn edge_cover_lp(n: usize, cliques: &[Vec<usize>]) -> LinearProgram {
        let mut lp = LinearProgram::minimize(vec![1.0; cliques.len()]);
        for v in 0..n {
            let row = cliques.iter().map(|c| if c.contains(&v) { 1.0 } else { 0.0 }).collect();
            lp.push(row, Relation::Ge, 1.0);
        }
        lp
    }

    /// `value = b'y + sum l_j r_j`, `y` sign-feasible, `r` sign-feasible.
    fn check_certificate(p: &LinearProgram, s: &LpSolution, tol: f64) {
        let n = p.vars();
        let max = p.sense == Sense::Maximize;
        let mut r = p.objective.clone();
        for (c, &y) in p.constraints.iter().zip(&s.dual) {
            for j in 0..n {
                r[j] -= c.row[j] * y;
            }
            // Minimisation: Ge rows carry y >= 0, Le rows y <= 0.
            let signed = if max { -y } else { y };
            match c.relation {
                Relation::Ge => assert!(signed >= -tol, "dual sign {y}"),
                Relation::Le => assert!(signed <= tol, "dual sign {y}"),
                Relation::Eq => {}
            }
        }
        let mut bound: f64 = p.constraints.iter().zip(&s.dual).map(|(c, y)| c.rhs * y).sum();
        for j in 0..n {
            let l = p.lower_bounds[j];
            let signed = if max { -r[j] } else { r[j] };
            if l.is_finite() {
                assert!(signed >= -tol, "reduced cost {j} = {}", r[j]);
                bound += l * r[j];
            } else {
                assert!(r[j].abs() <= tol, "free reduced cost {j} = {}", r[j]);
            }
        }
        assert!((bound - s.value).abs() <= tol * (1.0 + s.value.abs()), "{bound} vs {}", s.value);
    }

    fn check_feasible(p: &LinearProgram, x: &[f64], tol: f64) {
        for (j, &l) in p.lower_bounds.iter().enumerate() {
            assert!(x[j] >= l - tol);
        }
        for c in &p.constraints {
            let lhs: f64 = c.row.iter().zip(x).map(|(a, b)| a * b).sum();
            match c.relation {
                Relation::Le => assert!(lhs <= c.rhs + tol),
                Relation::Ge => assert!(lhs >= c.rhs - tol),
                Relation::Eq => assert!((lhs - c.rhs).abs() <= tol),
            }
        }
    }

    #[test]
    fn single_variable() {
        let p = LinearProgram::maximize(vec![1.0]).constrain(vec![1.0], Relation::Le, 1.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-12);
        assert!((s.dual[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cycle_and_petersen_covers() {
        let c5: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5]).collect();
        let p = edge_cover_lp(5, &c5);
        let s = solve_lp(&p).unwrap();
        assert!((s.value - 2.5).abs() < 1e-9);
        check_certificate(&p, &s, 1e-9);

        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push(vec![i, (i + 1) % 5]);
            edges.push(vec![i, i + 5]);
            edges.push(vec![5 + i, 5 + (i + 2) % 5]);
        }
        let p = edge_cover_lp(10, &edges);
        let s = solve_lp(&p).unwrap();
        assert!((s.value - 5.0).abs() < 1e-9);
        check_feasible(&p, &s.primal, 1e-8);
        check_certificate(&p, &s, 1e-9);
    }

    #[test]
    fn statuses() {
        let infeasible = LinearProgram::minimize(vec![1.0])
            .constrain(vec![1.0], Relation::Le, 1.0)
            .constrain(vec![1.0], Relation::Ge, 2.0);
        assert_eq!(solve_lp(&infeasible).unwrap().status, LpStatus::Infeasible);
        let unbounded = LinearProgram::maximize(vec![1.0, 1.0]).constrain(vec![1.0, -1.0], Relation::Le, 1.0);
        assert_eq!(solve_lp(&unbounded).unwrap().status, LpStatus::Unbounded);
        assert!(solve_lp(&unbounded).unwrap().optimal().is_err());
        let zero = LinearProgram::minimize(vec![0.0, 0.0]).constrain(vec![1.0, 1.0], Relation::Eq, 3.0);
        let s = solve_lp(&zero).unwrap();
        assert_eq!(s.value, 0.0);
        check_feasible(&zero, &s.primal, 1e-9);
    }

    #[test]
    fn dimension_mismatch() {
        let p = LinearProgram::minimize(vec![1.0, 1.0]).constrain(vec![1.0], Relation::Le, 1.0);
        assert!(matches!(solve_lp(&p), Err(Error::DimensionMismatch { expected: 2, found: 1 })));
    }

    #[test]
    fn free_and_shifted_variables() {
        // min x + 2y, x free, y >= -3, x + y >= 1, x - y <= 4
        let p = LinearProgram::minimize(vec![1.0, 2.0])
            .free(0)
            .with_lower_bound(1, -3.0)
            .constrain(vec![1.0, 1.0], Relation::Ge, 1.0)
            .constrain(vec![1.0, -1.0], Relation::Le, 4.0);
        let s = solve_lp(&p).unwrap();
        // Optimum at x - y = 4, x + y = 1: x = 2.5, y = -1.5.
        assert!((s.value - (2.5 - 3.0)).abs() < 1e-9, "{}", s.value);
        check_feasible(&p, &s.primal, 1e-9);
        check_certificate(&p, &s, 1e-9);
    }

    #[test]
    fn degenerate_redundant_equalities() {
        let p = LinearProgram::maximize(vec![1.0, 1.0, 1.0])
            .constrain(vec![1.0, 1.0, 0.0], Relation::Eq, 1.0)
            .constrain(vec![2.0, 2.0, 0.0], Relation::Eq, 2.0)
            .constrain(vec![0.0, 0.0, 1.0], Relation::Le, 0.0);
        let s = solve_lp(&p).unwrap();
        assert!((s.value - 1.0).abs() < 1e-9);
        check_feasible(&p, &s.primal, 1e-9);
        check_certificate(&p, &s, 1e-9);
    }

    #[test]
    fn long_run_crosses_refactor_boundary() {
        // Klee-Minty cube in 8 dimensions needs many Bland pivots.
        let d = 8;
        let mut obj = vec![0.0; d];
        for j in 0..d {
            obj[j] = 2f64.powi((d - 1 - j) as i32);
        }
        let mut p = LinearProgram::maximize(obj);
        for i in 0..d {
            let mut row = vec![0.0; d];
            for j in 0..i {
                row[j] = 2f64.powi((i - j + 1) as i32);
            }
            row[i] = 1.0;
            p.push(row, Relation::Le, 5f64.powi(i as i32 + 1));
        }
        let s = solve_lp(&p).unwrap();
        assert!((s.value - 5f64.powi(d as i32)).abs() < 1e-6 * 5f64.powi(d as i32));
        check_certificate(&p, &s, 1e-7);
    }

    fn packing() -> impl Strategy<Value = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(-2.0f64..5.0, n),
                proptest::collection::vec(proptest::collection::vec(0.1f64..3.0, n), m),
                proptest::collection::vec(0.5f64..10.0, m),
            )
        })
    }

    proptest! {
        #[test]
        fn weak_duality_on_packing((c, rows, b) in packing()) {
            let mut p = LinearProgram::maximize(c);
            for (row, rhs) in rows.into_iter().zip(b) {
                p.push(row, Relation::Le, rhs);
            }
            let s = solve_lp(&p).unwrap();
            prop_assert!(s.is_optimal());
            check_feasible(&p, &s.primal, 1e-8);
            check_certificate(&p, &s, 1e-6);
        }

        #[test]
        fn weak_duality_on_covering((c, rows, b) in packing(), eq in proptest::bool::ANY) {
            // Rows are tight or slack at x = (1, ..., 1), so the problem is feasible.
            let c: Vec<f64> = c.iter().map(|x| x.abs() + 0.1).collect();
            let mut p = LinearProgram::minimize(c);
            for (k, (row, frac)) in rows.into_iter().zip(b).enumerate() {
                let at_ones: f64 = row.iter().sum();
                if eq && k == 0 {
                    p.push(row, Relation::Eq, at_ones);
                } else {
                    p.push(row, Relation::Ge, at_ones * frac / 10.0);
                }
            }
            let s = solve_lp(&p).unwrap();
            prop_assert!(s.is_optimal());
            check_feasible(&p, &s.primal, 1e-8);
            check_certificate(&p, &s, 1e-6);
        }

        #[test]
        fn objective_scaling((c, rows, b) in packing(), t in 0.1f64..20.0) {
            let mut p = LinearProgram::maximize(c.clone());
            for (row, rhs) in rows.into_iter().zip(b) {
                p.push(row, Relation::Le, rhs);
            }
            let base = solve_lp(&p).unwrap();
            p.objective = c.iter().map(|x| x * t).collect();
            let scaled = solve_lp(&p).unwrap();
            prop_assert!((scaled.value - t * base.value).abs() <= 1e-8 * (1.0 + scaled.value.abs()));
            // Same pivot sequence, hence the same vertex and support.
            let support = |x: &[f64]| x.iter().map(|v| *v > 1e-9).collect::<Vec<_>>();
            prop_assert_eq!(support(&base.primal), support(&scaled.primal));
        }
    }
}
