//! Dense real linear algebra and random sampling primitives.
//!
//! Everything is 64-bit and deliberately dependency-free: the graphs in
//! this problem have a few dozen nodes, so simple dense algorithms
//! (partial-pivot LU, cyclic Jacobi) are both fast enough and easy to
//! keep bit-reproducible.

mod eigen;
mod matrix;
mod rng;

pub use eigen::{sym_eig, EigenDecomposition};
pub use matrix::{solve, Matrix};
pub use rng::Rng;

use crate::error::{Error, Result};

/// Relative cutoff below which an eigenvalue is treated as zero when
/// inverting through an eigendecomposition.
pub const DEFAULT_PINV_RTOL: f64 = 1e-10;

/// Default absolute pseudoinverse cutoff for a decomposition: scales the
/// relative cutoff by the largest eigenvalue magnitude.
pub fn default_pinv_tol(eig: &EigenDecomposition) -> f64 {
    DEFAULT_PINV_RTOL * spectral_radius(eig)
}

/// Applies the pseudoinverse `U diag(g(l_i)) U^T rhs` with
/// `g(l) = 1/l` when `|l| > tol` and `0` otherwise.
///
/// Total function: eigencomponents at (numerically) zero eigenvalues are
/// projected out rather than blown up.
pub fn pinv_apply(eig: &EigenDecomposition, rhs: &[f64], tol: f64) -> Vec<f64> {
    eig.apply_filter(|l| if l.abs() > tol { 1.0 / l } else { 0.0 }, rhs)
}

/// Draws one sample from `N(0, P^+)` where `P` is the symmetric positive
/// semidefinite precision matrix whose eigendecomposition is given.
///
/// The sample is `U diag(s(l_i)) e` with `e` i.i.d. standard normal and
/// `s(l) = l^{-1/2}` when `l > tol`, else `0`: zero-eigenvalue directions
/// of the precision carry no variance (covariance = pseudoinverse).
pub fn mvn_sample(precision_eig: &EigenDecomposition, rng: &mut Rng) -> Result<Vec<f64>> {
    let min = precision_eig
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b));
    if min < -1e-10 {
        return Err(Error::Argument(format!(
            "precision matrix must be positive semidefinite, got eigenvalue {min:.3e}"
        )));
    }
    let tol = default_pinv_tol(precision_eig);
    let n = precision_eig.eigenvalues.len();
    let coeffs: Vec<f64> = precision_eig
        .eigenvalues
        .iter()
        .map(|&l| {
            let scale = if l > tol { l.powf(-0.5) } else { 0.0 };
            scale * rng.next_standard_normal()
        })
        .collect();
    debug_assert_eq!(coeffs.len(), n);
    Ok(precision_eig.linear_combination(&coeffs))
}

/// Largest eigenvalue magnitude of the decomposed matrix.
pub fn spectral_radius(eig: &EigenDecomposition) -> f64 {
    eig.eigenvalues.iter().fold(0.0_f64, |a, &b| a.max(b.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_symmetric(n: usize, rng: &mut Rng) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = rng.next_uniform() * 2.0 - 1.0;
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    #[test]
    fn pinv_diagonal_case() {
        // diag(2, 0) applied to (4, 5): invertible part gives 2, null part 0.
        let eig = sym_eig(&Matrix::from_rows(&[&[2.0, 0.0], &[0.0, 0.0]])).unwrap();
        let out = pinv_apply(&eig, &[4.0, 5.0], default_pinv_tol(&eig));
        assert!((out[0] - 2.0).abs() < 1e-12);
        assert!(out[1].abs() < 1e-12);
    }

    #[test]
    fn pinv_agrees_with_solve_on_invertible_instances() {
        let mut rng = Rng::new(42);
        for trial in 0..100 {
            let n = 2 + (trial % 7);
            // Diagonally dominant symmetric matrices are safely invertible.
            let mut m = random_symmetric(n, &mut rng);
            for i in 0..n {
                m[(i, i)] += n as f64;
            }
            let rhs: Vec<f64> = (0..n).map(|_| rng.next_uniform() * 2.0 - 1.0).collect();
            let direct = solve(&m, &rhs).unwrap();
            let eig = sym_eig(&m).unwrap();
            let via_pinv = pinv_apply(&eig, &rhs, default_pinv_tol(&eig));
            let scale = direct.iter().fold(1e-30_f64, |a, &b| a.max(b.abs()));
            for (a, b) in direct.iter().zip(via_pinv.iter()) {
                assert!((a - b).abs() <= 1e-8 * scale, "trial {trial}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn mvn_identity_precision_matches_standard_normal() {
        // Precision = I: empirical covariance of 1e5 draws ~ I within 5%.
        let n = 6;
        let eig = sym_eig(&Matrix::identity(n)).unwrap();
        let mut rng = Rng::new(7);
        let draws = 100_000;
        let mut cov = Matrix::zeros(n, n);
        for _ in 0..draws {
            let x = mvn_sample(&eig, &mut rng).unwrap();
            for i in 0..n {
                for j in 0..n {
                    cov[(i, j)] += x[i] * x[j];
                }
            }
        }
        cov.scale_in_place(1.0 / draws as f64);
        let diff = cov.sub(&Matrix::identity(n)).unwrap().frobenius_norm();
        let rel = diff / Matrix::identity(n).frobenius_norm();
        assert!(rel < 0.05, "relative error {rel}");
    }

    #[test]
    fn mvn_rejects_indefinite_precision() {
        let eig = sym_eig(&Matrix::from_rows(&[&[1.0, 0.0], &[0.0, -1.0]])).unwrap();
        let mut rng = Rng::new(1);
        assert!(matches!(
            mvn_sample(&eig, &mut rng),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn mvn_sample_mean_is_small() {
        // Sample mean over 1e5 draws has infinity-norm <= 0.05 for 10-node
        // precision matrices with eigenvalues in [0.1, 2].
        let n = 10;
        let mut rng = Rng::new(99);
        let mut m = random_symmetric(n, &mut rng);
        for i in 0..n {
            m[(i, i)] += n as f64;
        }
        let raw = sym_eig(&m).unwrap();
        // Rebuild with eigenvalues mapped into [0.1, 2].
        let lo = raw.eigenvalues.last().copied().unwrap();
        let hi = raw.eigenvalues[0];
        let mapped: Vec<f64> = raw
            .eigenvalues
            .iter()
            .map(|&l| 0.1 + (l - lo) / (hi - lo) * 1.9)
            .collect();
        let eig = EigenDecomposition {
            eigenvalues: mapped,
            eigenvectors: raw.eigenvectors.clone(),
        };
        let draws = 100_000;
        let mut mean = vec![0.0; n];
        for _ in 0..draws {
            let x = mvn_sample(&eig, &mut rng).unwrap();
            for (m, v) in mean.iter_mut().zip(x.iter()) {
                *m += v;
            }
        }
        let max = mean
            .iter()
            .map(|v| (v / draws as f64).abs())
            .fold(0.0_f64, f64::max);
        assert!(max <= 0.05, "sample mean infinity-norm {max}");
    }

    #[test]
    fn spectral_radius_examples() {
        let eig = sym_eig(&Matrix::identity(4)).unwrap();
        assert!((spectral_radius(&eig) - 1.0).abs() < 1e-12);

        let m = Matrix::from_rows(&[&[0.0, -3.0], &[-3.0, 0.0]]);
        let eig = sym_eig(&m).unwrap();
        assert!((spectral_radius(&eig) - 3.0).abs() < 1e-12);
    }
}
