//! Energy bounds from weighted resolutions of the identity and from
//! fractional vertex covers by induced subgraphs.

use serde::{Deserialize, Serialize};

use crate::eigen::{eigenvalues, SymMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;

const RESOLUTION_TOL: f64 = 1e-9;

/// One term `(Q, k, y)`: `Q` is `n x k`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub q: Vec<f64>,
    pub k: usize,
    pub weight: f64,
}

/// Weighted family with `sum y_i Q_i Q_i' = I`, checked on construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    n: usize,
    blocks: Vec<Block>,
}

impl Decomposition {
    pub fn new(n: usize, blocks: Vec<Block>) -> Result<Self> {
        let mut sum = vec![0.0; n * n];
        for b in &blocks {
            if b.q.len() != n * b.k {
                return Err(Error::DimensionMismatch { expected: n * b.k, found: b.q.len() });
            }
            if !(b.weight >= 0.0) {
                return Err(Error::Precondition(format!("negative block weight {}", b.weight)));
            }
            for i in 0..n {
                for j in 0..n {
                    let s: f64 = (0..b.k).map(|c| b.q[i * b.k + c] * b.q[j * b.k + c]).sum();
                    sum[i * n + j] += b.weight * s;
                }
            }
        }
        let mut max_deviation: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                max_deviation = max_deviation.max((sum[i * n + j] - target).abs());
            }
        }
        if max_deviation > RESOLUTION_TOL {
            return Err(Error::InvalidDecomposition { max_deviation });
        }
        Ok(Decomposition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }
}

/// Weighted vertex subsets covering every vertex with total weight one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalCover {
    n: usize,
    parts: Vec<(Vec<usize>, f64)>,
}

impl FractionalCover {
    pub fn new(n: usize, parts: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        let mut cover = vec![0.0; n];
        for (s, y) in &parts {
            if !(*y >= 0.0) {
                return Err(Error::Precondition(format!("negative cover weight {y}")));
            }
            let mut seen = vec![false; n];
            for &v in s {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
                if seen[v] {
                    return Err(Error::DuplicateVertex(v));
                }
                seen[v] = true;
                cover[v] += y;
            }
        }
        if let Some((vertex, &weight)) = cover.iter().enumerate().find(|(_, w)| (**w - 1.0).abs() > RESOLUTION_TOL) {
            return Err(Error::InvalidCover { vertex, weight });
        }
        Ok(FractionalCover { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[(Vec<usize>, f64)] {
        &self.parts
    }

    pub fn total_weight(&self) -> f64 {
        self.parts.iter().map(|(_, y)| y).sum()
    }

    /// The same cover as 0/1 column-selection blocks.
    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let blocks = self
            .parts
            .iter()
            .map(|(s, y)| {
                let k = s.len();
                let mut q = vec![0.0; self.n * k];
                for (c, &v) in s.iter().enumerate() {
                    q[v * k + c] = 1.0;
                }
                Block { q, k, weight: *y }
            })
            .collect();
        Decomposition::new(self.n, blocks)
    }
}

/// `sum y_i E(Q_i' M Q_i)`, a lower bound on `E(M)`.
pub fn decomposition_bound(m: &SymMatrix, d: &Decomposition) -> Result<f64> {
    if m.dim() != d.n {
        return Err(Error::DimensionMismatch { expected: d.n, found: m.dim() });
    }
    let mut total = 0.0;
    for b in &d.blocks {
        if b.k == 0 || b.weight == 0.0 {
            continue;
        }
        total += b.weight * eigenvalues(&m.congruence(&b.q, b.k))?.energy();
    }
    Ok(total)
}

/// `sum y_i E(G[S_i])`, a lower bound on `E(G)`.
pub fn fractional_cover_bound(g: &Graph, c: &FractionalCover) -> Result<f64> {
    if g.n() != c.n {
        return Err(Error::DimensionMismatch { expected: g.n(), found: c.n });
    }
    let mut total = 0.0;
    for (s, y) in &c.parts {
        if s.is_empty() || *y == 0.0 {
            continue;
        }
        total += y * crate::eigen::energy(&g.induced_subgraph(s)?)?;
    }
    Ok(total)
}
