//! Factor-analysis results checked against an independently written
//! classical Jacobi eigensolver (largest off-diagonal pivot, not the
//! cyclic sweeps the library uses) and against algebraic identities of
//! correlation matrices.

// index loops here walk flat row-major tables in step with computed
// offsets; iterator forms would bury the subscripts that mirror the math
#![allow(clippy::needless_range_loop)]

use heteromap::attributes::{Attribute, AttributeClass};
use heteromap::factors::{factor_analysis, variance_explained};
use heteromap::occurrence::OccurrenceMatrix;
use proptest::prelude::*;

fn matrix_of(rows: Vec<Vec<u8>>) -> OccurrenceMatrix {
    let n_attrs = rows.first().map_or(0, |r| r.len());
    OccurrenceMatrix {
        doc_ids: (0..rows.len()).collect(),
        attributes: (0..n_attrs)
            .map(|j| Attribute {
                class: AttributeClass::ALL[j % 3],
                label: format!("a{j}"),
                frequency: 0,
            })
            .collect(),
        rows,
    }
}

fn binary_matrix() -> impl Strategy<Value = OccurrenceMatrix> {
    (3usize..10, 2usize..6).prop_flat_map(|(docs, attrs)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), attrs), docs).prop_map(
            |cells| {
                matrix_of(
                    cells
                        .into_iter()
                        .map(|row| row.into_iter().map(u8::from).collect())
                        .collect(),
                )
            },
        )
    })
}

/// Pearson correlations of the non-constant columns, from the definition.
fn correlation_oracle(m: &OccurrenceMatrix) -> (Vec<usize>, Vec<Vec<f64>>) {
    let n = m.n_docs() as f64;
    let mut kept = Vec::new();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for j in 0..m.n_attrs() {
        let col: Vec<f64> = m.rows.iter().map(|r| r[j] as f64).collect();
        let mean = col.iter().sum::<f64>() / n;
        let var: f64 = col.iter().map(|v| (v - mean) * (v - mean)).sum();
        if var > 0.0 {
            kept.push(j);
            cols.push(col.iter().map(|v| v - mean).collect());
        }
    }
    let p = kept.len();
    let mut r = vec![vec![0.0; p]; p];
    for a in 0..p {
        let na: f64 = cols[a].iter().map(|v| v * v).sum::<f64>().sqrt();
        for b in 0..p {
            let nb: f64 = cols[b].iter().map(|v| v * v).sum::<f64>().sqrt();
            let dot: f64 = cols[a].iter().zip(&cols[b]).map(|(x, y)| x * y).sum();
            r[a][b] = dot / (na * nb);
        }
    }
    (kept, r)
}

/// Classical Jacobi: always rotate the largest off-diagonal element.
fn classical_jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n < 2 {
        return (0..n).map(|i| a[i][i]).collect();
    }
    for _ in 0..20_000 {
        // find the dominant off-diagonal entry
        let (mut p, mut q, mut biggest) = (0, 1, 0.0f64);
        for i in 0..n {
            for j in i + 1..n {
                if a[i][j].abs() > biggest {
                    biggest = a[i][j].abs();
                    p = i;
                    q = j;
                }
            }
        }
        if biggest < 1e-13 {
            break;
        }
        let apq = a[p][q];
        let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        // full similarity transform, column/row at a time
        for i in 0..n {
            let aip = a[i][p];
            let aiq = a[i][q];
            a[i][p] = c * aip - s * aiq;
            a[i][q] = s * aip + c * aiq;
        }
        for j in 0..n {
            let apj = a[p][j];
            let aqj = a[q][j];
            a[p][j] = c * apj - s * aqj;
            a[q][j] = s * apj + c * aqj;
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eig
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn eigenvalues_match_classical_jacobi(m in binary_matrix()) {
        let (kept, corr) = correlation_oracle(&m);
        prop_assume!(!kept.is_empty());
        let r = factor_analysis(&m, 1).unwrap();
        prop_assert_eq!(&r.kept_columns, &kept);
        let oracle = classical_jacobi_eigenvalues(corr);
        prop_assert_eq!(r.eigenvalues.len(), oracle.len());
        for (lib, orc) in r.eigenvalues.iter().zip(&oracle) {
            prop_assert!((lib - orc).abs() < 1e-8, "{lib} vs {orc}");
        }
    }

    #[test]
    fn full_loadings_reconstruct_the_correlation_matrix(m in binary_matrix()) {
        let (kept, corr) = correlation_oracle(&m);
        prop_assume!(!kept.is_empty());
        let p = kept.len();
        let r = factor_analysis(&m, p).unwrap();
        // with every factor retained, L·Lᵀ = V Λ Vᵀ = R
        for a in 0..p {
            for b in 0..p {
                let recon: f64 = (0..p).map(|f| r.loadings[a][f] * r.loadings[b][f]).sum();
                prop_assert!(
                    (recon - corr[a][b]).abs() < 1e-8,
                    "({a},{b}): {recon} vs {}",
                    corr[a][b]
                );
            }
        }
    }

    #[test]
    fn eigenvector_columns_are_orthonormal(m in binary_matrix()) {
        let (kept, _) = correlation_oracle(&m);
        prop_assume!(kept.len() >= 2);
        let p = kept.len();
        let r = factor_analysis(&m, p).unwrap();
        // recover eigenvectors from loadings where λ is away from zero
        let live: Vec<usize> = (0..p).filter(|&f| r.eigenvalues[f] > 1e-6).collect();
        for &f1 in &live {
            for &f2 in &live {
                let dot: f64 = (0..p)
                    .map(|c| {
                        (r.loadings[c][f1] / r.eigenvalues[f1].sqrt())
                            * (r.loadings[c][f2] / r.eigenvalues[f2].sqrt())
                    })
                    .sum();
                let expected = if f1 == f2 { 1.0 } else { 0.0 };
                prop_assert!((dot - expected).abs() < 1e-7, "({f1},{f2}): {dot}");
            }
        }
    }

    #[test]
    fn spectrum_is_invariant_under_column_permutation(m in binary_matrix()) {
        let (kept, _) = correlation_oracle(&m);
        prop_assume!(kept.len() >= 2);
        let r1 = factor_analysis(&m, 1).unwrap();
        // reverse the columns
        let reversed = matrix_of(
            m.rows
                .iter()
                .map(|row| row.iter().rev().copied().collect())
                .collect(),
        );
        let r2 = factor_analysis(&reversed, 1).unwrap();
        prop_assert_eq!(r1.eigenvalues.len(), r2.eigenvalues.len());
        for (a, b) in r1.eigenvalues.iter().zip(&r2.eigenvalues) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn spectrum_is_nonnegative_and_sums_to_dimension(m in binary_matrix()) {
        let (kept, _) = correlation_oracle(&m);
        prop_assume!(!kept.is_empty());
        let r = factor_analysis(&m, 1).unwrap();
        let sum: f64 = r.eigenvalues.iter().sum();
        prop_assert!((sum - kept.len() as f64).abs() < 1e-8);
        for &ev in &r.eigenvalues {
            prop_assert!(ev > -1e-9, "negative eigenvalue {ev}");
        }
        for k in 1..=kept.len() {
            let ve = variance_explained(&r.eigenvalues, k);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&ve));
        }
        prop_assert!((variance_explained(&r.eigenvalues, kept.len()) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn variance_fractions_are_the_eigenvalue_shares(m in binary_matrix()) {
        let (kept, _) = correlation_oracle(&m);
        prop_assume!(kept.len() >= 2);
        let k = kept.len().min(3);
        let r = factor_analysis(&m, k).unwrap();
        let total: f64 = r.eigenvalues.iter().sum();
        for (f, frac) in r.variance_fractions.iter().enumerate() {
            prop_assert!((frac - r.eigenvalues[f] / total).abs() < 1e-9);
        }
    }
}
