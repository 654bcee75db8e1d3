//! Dense symmetric eigenvalue problems by cyclic Jacobi rotations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Real symmetric matrix in full row-major storage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    /// All-ones matrix `J`.
    pub fn ones(dim: usize) -> Self {
        SymMatrix { dim, data: vec![1.0; dim * dim] }
    }

    /// Builds from rows, rejecting anything that is not exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        for i in 0..dim {
            for j in 0..i {
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix { dim, data })
    }

    /// Builds from the lower triangle of `f`; the upper triangle mirrors it.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
        self.data[j * self.dim + i] = value;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Wraps row-major storage the caller knows to be symmetric.
    pub(crate) fn from_raw(dim: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        SymMatrix { dim, data }
    }

    pub(crate) fn into_raw(self) -> Vec<f64> {
        self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius inner product `<self, other>`.
    pub fn dot(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, factor: f64) -> SymMatrix {
        SymMatrix { dim: self.dim, data: self.data.iter().map(|x| x * factor).collect() }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: f64, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim);
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + factor * b).collect(),
        }
    }

    /// `P^T M P` for the permutation matrix sending row `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SymMatrix {
        assert_eq!(perm.len(), self.dim);
        let mut out = SymMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[perm[i] * self.dim + perm[j]] = self.get(i, j);
            }
        }
        out
    }

    /// `Q^T M Q` for a dense `n x k` matrix `q` stored row-major.
    pub fn congruence(&self, q: &[f64], k: usize) -> SymMatrix {
        let n = self.dim;
        assert_eq!(q.len(), n * k);
        // mq = M Q  (n x k)
        let mut mq = vec![0.0; n * k];
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a != 0.0 {
                    for c in 0..k {
                        mq[i * k + c] += a * q[l * k + c];
                    }
                }
            }
        }
        SymMatrix::from_fn(k, |r, c| (0..n).map(|i| q[i * k + r] * mq[i * k + c]).sum())
    }
}

/// Eigenvalues sorted non-increasingly, with the scale of the source matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    /// Largest absolute entry of the source matrix.
    scale: f64,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn source_dim(&self) -> usize {
        self.values.len()
    }

    /// Eigenvalues whose magnitude is below this are treated as zero.
    pub fn zero_threshold(&self) -> f64 {
        1e-9 * self.values.len() as f64 * self.scale
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    /// `lambda_2`; equals `lambda_1` for a 1x1 matrix.
    pub fn second(&self) -> f64 {
        *self.values.get(1).unwrap_or(&self.values[0])
    }

    pub fn smallest(&self) -> f64 {
        *self.values.last().expect("spectrum is non-empty")
    }

    pub fn spread(&self) -> f64 {
        self.largest() - self.smallest()
    }

    pub fn energy(&self) -> f64 {
        self.values.iter().map(|x| x.abs()).sum()
    }

    pub fn positive_energy(&self) -> f64 {
        let tol = self.zero_threshold();
        self.values.iter().filter(|&&x| x > tol).sum()
    }

    /// Singular values of the (symmetric) source: `|lambda_i|` sorted descending.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.values.iter().map(|x| x.abs()).collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }
}

/// Eigenvalues and orthonormal eigenvectors. `vectors` is row-major with
/// eigenvector `j` in column `j`, matching the order of `values`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V diag(f(lambda)) V^T`.
    pub fn reconstruct(&self, mut f: impl FnMut(f64) -> f64) -> SymMatrix {
        let n = self.dim();
        let weights: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let active: Vec<usize> = (0..n).filter(|&j| weights[j] != 0.0).collect();
        let mut out = SymMatrix::zeros(n);
        for i in 0..n {
            let vi = &self.vectors[i * n..(i + 1) * n];
            for k in 0..=i {
                let vk = &self.vectors[k * n..(k + 1) * n];
                let s: f64 = active.iter().map(|&j| weights[j] * vi[j] * vk[j]).sum();
                out.data[i * n + k] = s;
                out.data[k * n + i] = s;
            }
        }
        out
    }
}

/// In-place cyclic Jacobi on a full symmetric `a`; accumulates rotations
/// into `v` when given. Returns the number of sweeps used.
fn jacobi_in_place(n: usize, a: &mut [f64], mut v: Option<&mut [f64]>, reference_norm: f64) -> Result<usize> {
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..i {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };
    let target = OFF_DIAGONAL_TOL * reference_norm;
    for sweep in 0..MAX_SWEEPS {
        let off = off_norm(a);
        if off <= target || off == 0.0 {
            return Ok(sweep);
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                if t == 0.0 {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let h = a[r * n + q];
                    let rp = g - s * (h + g * tau);
                    let rq = h + s * (g - h * tau);
                    a[r * n + p] = rp;
                    a[p * n + r] = rp;
                    a[r * n + q] = rq;
                    a[q * n + r] = rq;
                }
                if let Some(v) = v.as_deref_mut() {
                    for r in 0..n {
                        let g = v[r * n + p];
                        let h = v[r * n + q];
                        v[r * n + p] = g - s * (h + g * tau);
                        v[r * n + q] = h + s * (g - h * tau);
                    }
                }
            }
        }
    }
    let off = off_norm(a);
    if off <= target {
        Ok(MAX_SWEEPS)
    } else {
        Err(Error::EigenNoConvergence { off_norm: off })
    }
}

fn sort_descending(values: &mut [f64]) {
    values.sort_by(|a, b| b.total_cmp(a));
}

/// Eigenvalues of `m`, sorted non-increasingly.
pub fn eigenvalues(m: &SymMatrix) -> Result<Spectrum> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::ParameterOutOfRange("matrix dimension must be >= 1".into()));
    }
    let mut a = m.data.clone();
    jacobi_in_place(n, &mut a, None, m.frobenius_norm())?;
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    sort_descending(&mut values);
    Ok(Spectrum { values, scale: m.max_abs() })
}

/// Full eigendecomposition, eigenpairs sorted by value descending.
pub fn eigen_decomposition(m: &SymMatrix) -> Result<EigenDecomposition> {
    let n = m.dim();
    let mut v = SymMatrix::identity(n).data;
    let mut a = m.data.clone();
    jacobi_in_place(n, &mut a, Some(&mut v), m.frobenius_norm())?;
    Ok(sorted_pairs(n, &a, v))
}

/// Eigendecomposition started from an orthonormal `basis` (row-major,
/// columns are basis vectors), typically the eigenvectors of a nearby
/// matrix. Jacobi then only has to clean up a nearly diagonal matrix.
pub fn eigen_decomposition_from(m: &SymMatrix, basis: &[f64]) -> Result<EigenDecomposition> {
    let n = m.dim();
    assert_eq!(basis.len(), n * n);
    // b = V^T M V
    let mut mv = vec![0.0; n * n];
    for i in 0..n {
        for l in 0..n {
            let x = m.data[i * n + l];
            if x != 0.0 {
                let row = &basis[l * n..(l + 1) * n];
                let out = &mut mv[i * n..(i + 1) * n];
                for (o, r) in out.iter_mut().zip(row) {
                    *o += x * r;
                }
            }
        }
    }
    let mut b = vec![0.0; n * n];
    for l in 0..n {
        let vrow = &basis[l * n..(l + 1) * n];
        let mrow = &mv[l * n..(l + 1) * n];
        for i in 0..n {
            let x = vrow[i];
            if x != 0.0 {
                let out = &mut b[i * n..(i + 1) * n];
                for (o, r) in out.iter_mut().zip(mrow) {
                    *o += x * r;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            let s = 0.5 * (b[i * n + j] + b[j * n + i]);
            b[i * n + j] = s;
            b[j * n + i] = s;
        }
    }
    let mut v = basis.to_vec();
    jacobi_in_place(n, &mut b, Some(&mut v), m.frobenius_norm())?;
    Ok(sorted_pairs(n, &b, v))
}

fn sorted_pairs(n: usize, a: &[f64], v: Vec<f64>) -> EigenDecomposition {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for r in 0..n {
        for (c, &src) in order.iter().enumerate() {
            vectors[r * n + c] = v[r * n + src];
        }
    }
    EigenDecomposition { values, vectors }
}

/// Adjacency spectrum of `g`.
pub fn graph_spectrum(g: &Graph) -> Result<Spectrum> {
    eigenvalues(&g.adjacency_matrix())
}

/// `E(G)`: sum of absolute adjacency eigenvalues.
pub fn energy(g: &Graph) -> Result<f64> {
    Ok(graph_spectrum(g)?.energy())
}

/// Sum of the strictly positive eigenvalues of `m`.
pub fn positive_energy(m: &SymMatrix) -> Result<f64> {
    Ok(eigenvalues(m)?.positive_energy())
}

/// `(lambda_max, lambda_min)`.
pub fn spread_endpoints(m: &SymMatrix) -> Result<(f64, f64)> {
    let s = eigenvalues(m)?;
    Ok((s.largest(), s.smallest()))
}
