//! Principal-component summaries of occurrence matrices.
//!
//! Columns are standardized, their Pearson correlation matrix is
//! diagonalized with cyclic Jacobi rotations, and the leading
//! eigenvectors scaled by √λ become factor loadings. Because the
//! correlation matrix has unit diagonal, total variance equals the
//! number of non-constant columns, which makes per-factor variance
//! fractions straightforward.
//!
//! Also home to the connected-component decomposition shared with the
//! layout stage.

// index loops here walk flat row-major tables in step with computed
// offsets; iterator forms would bury the subscripts that mirror the math
#![allow(clippy::needless_range_loop)]

use crate::occurrence::OccurrenceMatrix;
use thiserror::Error;

/// Off-diagonal mass at which Jacobi iteration stops.
const JACOBI_TARGET: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("correlation undefined: {0}")]
    DegenerateMatrix(String),
    #[error("factor count {k} outside 1..={max}")]
    BadK { k: usize, max: usize },
}

/// Outcome of a factor analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorResult {
    /// Indices of the matrix columns that were not constant and thus
    /// entered the correlation matrix.
    pub kept_columns: Vec<usize>,
    /// Every eigenvalue of the correlation matrix, descending.
    pub eigenvalues: Vec<f64>,
    /// Loadings per kept column: `loadings[c][f]` is column `c`'s loading
    /// on factor `f`. Each factor column is sign-fixed so its largest
    /// absolute loading is nonnegative.
    pub loadings: Vec<Vec<f64>>,
    /// Variance fraction of each retained factor.
    pub variance_fractions: Vec<f64>,
}

/// Connected components of a symmetric adjacency structure.
///
/// Components are ordered by their smallest node id and each lists its
/// nodes ascending.
pub fn connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Fraction of total variance carried by the `k` largest eigenvalues.
pub fn variance_explained(eigenvalues: &[f64], k: usize) -> f64 {
    let total: f64 = eigenvalues.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    let top: f64 = eigenvalues.iter().take(k).sum();
    top / total
}

/// Principal components of a matrix's columns.
///
/// Constant columns carry no correlation and are dropped (their indices
/// are reported in `kept_columns`' complement). Requires at least two
/// documents, at least one varying column, and `1 ≤ k ≤` kept columns.
pub fn factor_analysis(matrix: &OccurrenceMatrix, k: usize) -> Result<FactorResult, FactorError> {
    let n = matrix.n_docs();
    if n < 2 {
        return Err(FactorError::DegenerateMatrix(format!(
            "{n} document(s); need at least 2"
        )));
    }

    // center columns, dropping the constant ones
    let mut kept_columns = Vec::new();
    let mut centered: Vec<Vec<f64>> = Vec::new();
    let mut norms: Vec<f64> = Vec::new();
    for j in 0..matrix.n_attrs() {
        let col: Vec<f64> = matrix.rows.iter().map(|r| r[j] as f64).collect();
        let mean = col.iter().sum::<f64>() / n as f64;
        let dev: Vec<f64> = col.iter().map(|v| v - mean).collect();
        let ss: f64 = dev.iter().map(|v| v * v).sum();
        if ss <= 0.0 {
            continue;
        }
        kept_columns.push(j);
        norms.push(ss.sqrt());
        centered.push(dev);
    }
    let p = kept_columns.len();
    if p == 0 {
        return Err(FactorError::DegenerateMatrix(
            "every column is constant".to_string(),
        ));
    }
    if k == 0 || k > p {
        return Err(FactorError::BadK { k, max: p });
    }

    // Pearson correlations
    let mut corr = vec![vec![0.0f64; p]; p];
    for a in 0..p {
        corr[a][a] = 1.0;
        for b in a + 1..p {
            let dot: f64 = centered[a].iter().zip(&centered[b]).map(|(x, y)| x * y).sum();
            let r = (dot / (norms[a] * norms[b])).clamp(-1.0, 1.0);
            corr[a][b] = r;
            corr[b][a] = r;
        }
    }

    let (mut eigenvalues, mut vectors) = jacobi_eigen(corr);

    // sort descending, carrying eigenvector columns along
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| eigenvalues[b].partial_cmp(&eigenvalues[a]).unwrap());
    eigenvalues = order.iter().map(|&i| eigenvalues[i]).collect();
    vectors = (0..p)
        .map(|row| order.iter().map(|&i| vectors[row][i]).collect())
        .collect();

    let mut loadings = vec![vec![0.0f64; k]; p];
    for f in 0..k {
        let scale = eigenvalues[f].max(0.0).sqrt();
        for c in 0..p {
            loadings[c][f] = vectors[c][f] * scale;
        }
        // orient the factor: its largest-magnitude loading points up
        let mut arg = 0usize;
        for c in 1..p {
            if loadings[c][f].abs() > loadings[arg][f].abs() {
                arg = c;
            }
        }
        if loadings[arg][f] < 0.0 {
            for c in 0..p {
                loadings[c][f] = -loadings[c][f];
            }
        }
    }

    let variance_fractions = (1..=k)
        .map(|i| variance_explained(&eigenvalues, i) - variance_explained(&eigenvalues, i - 1))
        .collect();

    Ok(FactorResult {
        kept_columns,
        eigenvalues,
        loadings,
        variance_fractions,
    })
}

/// Cyclic Jacobi diagonalization of a symmetric matrix.
///
/// Returns (eigenvalues, eigenvector matrix with eigenvectors as columns),
/// unsorted. Sweeps row by row until the off-diagonal Frobenius mass
/// drops below the target.
fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    if n < 2 {
        let eig = (0..n).map(|i| a[i][i]).collect();
        return (eig, v);
    }

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                off += 2.0 * a[i][j] * a[i][j];
            }
        }
        if off.sqrt() < JACOBI_TARGET {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    // tan ≈ 1/(2θ) when the rotation is nearly identity
                    1.0 / (2.0 * theta)
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = aip - s * (aiq + tau * aip);
                    a[p][i] = a[i][p];
                    a[i][q] = aiq + s * (aip - tau * aiq);
                    a[q][i] = a[i][q];
                }
                for row in v.iter_mut() {
                    let vip = row[p];
                    let viq = row[q];
                    row[p] = vip - s * (viq + tau * vip);
                    row[q] = viq + s * (vip - tau * viq);
                }
            }
        }
    }
    let eig = (0..n).map(|i| a[i][i]).collect();
    (eig, v)
}
