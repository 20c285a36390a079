//! Symmetric eigendecomposition by cyclic Jacobi rotations.

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Eigendecomposition `M = U diag(l) U^T` of a symmetric matrix.
///
/// Eigenvalues are sorted descending; column `i` of `eigenvectors` pairs
/// with `eigenvalues[i]`. Column signs are canonicalized so the entry of
/// largest magnitude in each eigenvector is positive (first index wins on
/// ties), which keeps downstream sampling reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U diag(l) U^T`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.n();
        let u = &self.eigenvectors;
        Matrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| u[(i, k)] * self.eigenvalues[k] * u[(j, k)]).sum()
        })
    }

    /// `U coeffs`: linear combination of eigenvectors.
    pub fn linear_combination(&self, coeffs: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(coeffs.len(), n);
        let u = &self.eigenvectors;
        let mut out = vec![0.0; n];
        for (r, o) in out.iter_mut().enumerate() {
            *o = u.row(r).iter().zip(coeffs.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// `U^T v`: coordinates of `v` in the eigenbasis.
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(v.len(), n);
        let u = &self.eigenvectors;
        let mut out = vec![0.0; n];
        for r in 0..n {
            let vr = v[r];
            for (o, &urow) in out.iter_mut().zip(u.row(r).iter()) {
                *o += urow * vr;
            }
        }
        out
    }

    /// `U diag(g(l_i)) U^T v`.
    pub fn apply_filter(&self, g: impl Fn(f64) -> f64, v: &[f64]) -> Vec<f64> {
        let mut coords = self.project(v);
        for (c, &l) in coords.iter_mut().zip(self.eigenvalues.iter()) {
            *c *= g(l);
        }
        self.linear_combination(&coords)
    }

    /// `U diag(g(l_i)) U^T` as a dense matrix.
    pub fn filter_matrix(&self, g: impl Fn(f64) -> f64) -> Matrix {
        let n = self.n();
        let u = &self.eigenvectors;
        let gains: Vec<f64> = self.eigenvalues.iter().map(|&l| g(l)).collect();
        Matrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| u[(i, k)] * gains[k] * u[(j, k)]).sum()
        })
    }
}

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a symmetric matrix by the cyclic Jacobi method.
///
/// Rotations annihilate one off-diagonal element at a time; the rotation
/// product accumulates the eigenvectors. Reliable for every real symmetric
/// matrix at the problem sizes used here (n up to a few hundred).
pub fn sym_eig(m: &Matrix) -> Result<EigenDecomposition> {
    if !m.is_square() {
        return Err(Error::Argument(format!(
            "eigendecomposition requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_symmetric() {
        return Err(Error::Argument("matrix is not symmetric".into()));
    }

    let n = m.rows();
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];
    let mut converged = false;

    for sweep in 0..MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += a[(p, q)].abs();
                }
            }
            s
        };
        if off == 0.0 {
            converged = true;
            break;
        }
        // Threshold strategy: during the first sweeps only rotate on the
        // larger elements, afterwards on everything.
        let tresh = if sweep < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };

        for p in 0..n {
            for q in (p + 1)..n {
                let g = 100.0 * a[(p, q)].abs();
                if sweep > 3
                    && d[p].abs() + g == d[p].abs()
                    && d[q].abs() + g == d[q].abs()
                {
                    a[(p, q)] = 0.0;
                } else if a[(p, q)].abs() > tresh {
                    let mut h = d[q] - d[p];
                    let t = if h.abs() + g == h.abs() {
                        a[(p, q)] / h
                    } else {
                        let theta = 0.5 * h / a[(p, q)];
                        let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                        if theta < 0.0 {
                            t = -t;
                        }
                        t
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);
                    h = t * a[(p, q)];
                    z[p] -= h;
                    z[q] += h;
                    d[p] -= h;
                    d[q] += h;
                    a[(p, q)] = 0.0;

                    let rotate = |m: &mut Matrix, i: usize, j: usize, k: usize, l: usize| {
                        let g = m[(i, j)];
                        let h = m[(k, l)];
                        m[(i, j)] = g - s * (h + g * tau);
                        m[(k, l)] = h + s * (g - h * tau);
                    };
                    for j in 0..p {
                        rotate(&mut a, j, p, j, q);
                    }
                    for j in (p + 1)..q {
                        rotate(&mut a, p, j, j, q);
                    }
                    for j in (q + 1)..n {
                        rotate(&mut a, p, j, q, j);
                    }
                    for j in 0..n {
                        rotate(&mut v, j, p, j, q);
                    }
                }
            }
        }

        for p in 0..n {
            b[p] += z[p];
            d[p] = b[p];
            z[p] = 0.0;
        }
    }

    if !converged {
        // One more exactness check: the final sweep may have zeroed it.
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].abs())
            .sum();
        if off != 0.0 {
            return Err(Error::NoConvergence {
                what: format!("Jacobi eigensolver ({MAX_SWEEPS} sweeps)"),
            });
        }
    }

    // Sort eigenpairs descending by eigenvalue.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        // Sign convention: largest-magnitude entry positive.
        let mut lead = 0;
        for r in 1..n {
            if v[(r, old_col)].abs() > v[(lead, old_col)].abs() {
                lead = r;
            }
        }
        let flip = if v[(lead, old_col)] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            eigenvectors[(r, new_col)] = flip * v[(r, old_col)];
        }
    }

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rng;

    #[test]
    fn two_by_two_exchange_matrix() {
        let m = Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let eig = sym_eig(&m).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-12);
        let s = 1.0 / 2.0_f64.sqrt();
        // Columns are (1,1)/sqrt(2) and (1,-1)/sqrt(2) up to sign.
        let c0 = eig.eigenvectors.col(0);
        let c1 = eig.eigenvectors.col(1);
        assert!((c0[0].abs() - s).abs() < 1e-12 && (c0[1].abs() - s).abs() < 1e-12);
        assert!((c0[0] - c0[1]).abs() < 1e-12);
        assert!((c1[0] + c1[1]).abs() < 1e-12);
    }

    #[test]
    fn identity_eigenvalues_all_one() {
        let eig = sym_eig(&Matrix::identity(5)).unwrap();
        for &l in &eig.eigenvalues {
            assert!((l - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_non_symmetric() {
        let m = Matrix::from_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(sym_eig(&m), Err(Error::Argument(_))));
    }

    #[test]
    fn reconstruction_and_orthonormality_on_random_matrices() {
        let mut rng = Rng::new(11);
        for trial in 0..20 {
            let n = 20;
            let mut m = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let x = rng.next_uniform() * 2.0 - 1.0;
                    m[(i, j)] = x;
                    m[(j, i)] = x;
                }
            }
            let eig = sym_eig(&m).unwrap();
            let rebuilt = eig.reconstruct();
            let resid = rebuilt.sub(&m).unwrap().frobenius_norm();
            assert!(
                resid <= 1e-8 * m.frobenius_norm(),
                "trial {trial}: reconstruction residual {resid}"
            );
            let u = &eig.eigenvectors;
            let gram = u.transpose().matmul(u).unwrap();
            let ortho = gram.sub(&Matrix::identity(n)).unwrap().frobenius_norm();
            assert!(ortho <= 1e-8, "trial {trial}: orthonormality residual {ortho}");
            for w in eig.eigenvalues.windows(2) {
                assert!(w[0] >= w[1], "eigenvalues not sorted descending");
            }
        }
    }

    #[test]
    fn filter_matrix_matches_apply_filter() {
        let m = Matrix::from_rows(&[&[2.0, 1.0, 0.0], &[1.0, 3.0, 1.0], &[0.0, 1.0, 4.0]]);
        let eig = sym_eig(&m).unwrap();
        let g = |l: f64| 1.0 / (1.0 + l * l);
        let v = vec![0.3, -1.2, 0.7];
        let via_matrix = eig.filter_matrix(g).matvec(&v).unwrap();
        let via_apply = eig.apply_filter(g, &v);
        for (a, b) in via_matrix.iter().zip(via_apply.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
