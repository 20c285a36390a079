//! Benefit sampling and equilibrium actions for three network games.
//!
//! All three games reduce to spectral filters of the normalized adjacency:
//! linear quadratic actions solve `(I - beta A) x = b`, linear influence
//! actions apply the pseudoinverse of `A` to `b`, and the Barik-Honorio
//! conformity game concentrates on the leading eigenvector of `A` with
//! bounded per-player deviation. Benefits `b` are drawn from a Gaussian
//! whose precision `(1 - alpha) I + alpha L` interpolates between
//! independent (`alpha = 0`) and graph-smooth (`alpha = 1`) characteristics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::NormalizedGraph;
use crate::linalg::{self, solve, EigenDecomposition, Matrix, Rng};

/// Utility family governing action generation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GameKind {
    LinearQuadratic { beta: f64 },
    LinearInfluence,
    BarikHonorio { noise_std: f64, epsilon: f64 },
}

/// A game family plus the benefit-smoothness parameter `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameSpec {
    #[serde(flatten)]
    pub kind: GameKind,
    pub alpha: f64,
}

impl GameSpec {
    pub fn linear_quadratic(beta: f64, alpha: f64) -> Self {
        GameSpec {
            kind: GameKind::LinearQuadratic { beta },
            alpha,
        }
    }

    pub fn linear_influence(alpha: f64) -> Self {
        GameSpec {
            kind: GameKind::LinearInfluence,
            alpha,
        }
    }

    pub fn barik_honorio(noise_std: f64, epsilon: f64) -> Self {
        GameSpec {
            kind: GameKind::BarikHonorio { noise_std, epsilon },
            // alpha is unused by the BH game; kept for a uniform record.
            alpha: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::Argument(format!(
                "alpha must be in [0, 1], got {}",
                self.alpha
            )));
        }
        match self.kind {
            GameKind::LinearQuadratic { beta } => {
                if !(beta.abs() < 1.0) {
                    return Err(Error::Argument(format!(
                        "linear quadratic requires |beta| < 1, got {beta}"
                    )));
                }
            }
            GameKind::LinearInfluence => {}
            GameKind::BarikHonorio { noise_std, epsilon } => {
                if epsilon <= 0.0 {
                    return Err(Error::Argument(format!("epsilon must be positive, got {epsilon}")));
                }
                if noise_std < 0.0 {
                    return Err(Error::Argument(format!(
                        "noise std must be non-negative, got {noise_std}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> &'static str {
        match self.kind {
            GameKind::LinearQuadratic { .. } => "lq",
            GameKind::LinearInfluence => "lig",
            GameKind::BarikHonorio { .. } => "bh",
        }
    }
}

/// Per-player marginal benefits (or tolerance thresholds).
#[derive(Debug, Clone, PartialEq)]
pub struct BenefitVector(pub Vec<f64>);

/// Eigendecomposition of the benefit precision `(1 - alpha) I + alpha L`.
///
/// `L = I - A` shares eigenvectors with `A`, so the precision eigenvalues
/// are `1 - alpha * lambda_i(A)` on the same basis; pairs are reversed to
/// keep the decomposition sorted descending.
pub fn benefit_precision_eig(ng: &NormalizedGraph, alpha: f64) -> EigenDecomposition {
    let n = ng.n();
    let adj_eig = &ng.eig;
    let mut eigenvalues: Vec<f64> = adj_eig
        .eigenvalues
        .iter()
        .rev()
        .map(|&l| 1.0 - alpha * l)
        .collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for new_col in 0..n {
        let old_col = n - 1 - new_col;
        for r in 0..n {
            eigenvectors[(r, new_col)] = adj_eig.eigenvectors[(r, old_col)];
        }
    }
    // Guard against descending-order violations from repeated adjacency
    // eigenvalues perturbed by roundoff.
    for i in 1..n {
        if eigenvalues[i] > eigenvalues[i - 1] {
            eigenvalues[i] = eigenvalues[i - 1];
        }
    }
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// Draws `b ~ N(0, ((1 - alpha) I + alpha L)^+)`.
pub fn sample_benefits(ng: &NormalizedGraph, alpha: f64, rng: &mut Rng) -> Result<BenefitVector> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Argument(format!("alpha must be in [0, 1], got {alpha}")));
    }
    let precision = benefit_precision_eig(ng, alpha);
    Ok(BenefitVector(linalg::mvn_sample(&precision, rng)?))
}

/// Linear quadratic equilibrium: solves `(I - beta A) x = b`.
pub fn equilibrium_lq(ng: &NormalizedGraph, beta: f64, b: &BenefitVector) -> Result<Vec<f64>> {
    if !(beta.abs() < 1.0) {
        return Err(Error::Argument(format!("|beta| must be below 1, got {beta}")));
    }
    let system = Matrix::identity(ng.n()).sub(&ng.adjacency.scale(beta))?;
    solve(&system, &b.0)
}

/// Linear influence equilibrium: `x = A^+ b` on the cached spectrum.
pub fn equilibrium_lig(ng: &NormalizedGraph, b: &BenefitVector) -> Vec<f64> {
    linalg::pinv_apply(&ng.eig, &b.0, linalg::default_pinv_tol(&ng.eig))
}

/// Barik-Honorio equilibrium with bounded deviation: the leading unit
/// eigenvector of `A` plus isotropic Gaussian noise scaled so that
/// `max_i |x_i - (A x)_i| <= epsilon` holds exactly.
pub fn equilibrium_bh(
    ng: &NormalizedGraph,
    noise_std: f64,
    epsilon: f64,
    rng: &mut Rng,
) -> Result<Vec<f64>> {
    if epsilon <= 0.0 {
        return Err(Error::Argument(format!("epsilon must be positive, got {epsilon}")));
    }
    if noise_std < 0.0 {
        return Err(Error::Argument(format!("noise std must be non-negative, got {noise_std}")));
    }
    let n = ng.n();
    if n >= 2 && ng.eig.eigenvalues[1] > 1.0 - 1e-8 {
        log::warn!(
            "leading adjacency eigenvalue has multiplicity > 1 (second eigenvalue {}); \
             taking the first eigenvector",
            ng.eig.eigenvalues[1]
        );
    }
    let leading = ng.eig.eigenvectors.col(0);
    if noise_std == 0.0 {
        return Ok(leading);
    }
    let noise: Vec<f64> = (0..n).map(|_| rng.next_normal(0.0, noise_std)).collect();
    // x = u1 + e has residual (I - A)(u1 + e) = (I - A)e since A u1 = u1.
    let deviation = ng.laplacian.matvec(&noise)?;
    let max_dev = deviation.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
    let factor = if max_dev > epsilon { epsilon / max_dev } else { 1.0 };
    Ok(leading
        .iter()
        .zip(noise.iter())
        .map(|(&u, &e)| u + factor * e)
        .collect())
}

/// Samples one equilibrium action vector for the given game.
///
/// Linear quadratic and linear influence games draw fresh benefits from
/// the smoothness prior; the Barik-Honorio game has no benefit term.
pub fn generic_equilibrium(spec: &GameSpec, ng: &NormalizedGraph, rng: &mut Rng) -> Result<Vec<f64>> {
    spec.validate()?;
    match spec.kind {
        GameKind::LinearQuadratic { beta } => {
            let b = sample_benefits(ng, spec.alpha, rng)?;
            equilibrium_lq(ng, beta, &b)
        }
        GameKind::LinearInfluence => {
            let b = sample_benefits(ng, spec.alpha, rng)?;
            Ok(equilibrium_lig(ng, &b))
        }
        GameKind::BarikHonorio { noise_std, epsilon } => equilibrium_bh(ng, noise_std, epsilon, rng),
    }
}

/// Analytic covariance of equilibrium actions as a spectral filter of `A`.
///
/// Thresholding mirrors the sampling path exactly: benefit components with
/// precision eigenvalue at numerical zero carry no variance, and linear
/// influence additionally projects out numerically zero adjacency
/// eigenvalues. Not defined for the Barik-Honorio game (its actions are
/// not zero-mean Gaussian).
pub fn analytic_covariance(spec: &GameSpec, ng: &NormalizedGraph) -> Result<Matrix> {
    spec.validate()?;
    let alpha = spec.alpha;
    let benefit_tol = {
        let max = ng
            .eig
            .eigenvalues
            .iter()
            .map(|&l| (1.0 - alpha * l).abs())
            .fold(0.0_f64, f64::max);
        linalg::DEFAULT_PINV_RTOL * max
    };
    let benefit_var = move |l: f64| {
        let precision = 1.0 - alpha * l;
        if precision > benefit_tol {
            1.0 / precision
        } else {
            0.0
        }
    };
    match spec.kind {
        GameKind::LinearQuadratic { beta } => Ok(ng.eig.filter_matrix(|l| {
            let gain = 1.0 / (1.0 - beta * l);
            gain * gain * benefit_var(l)
        })),
        GameKind::LinearInfluence => {
            let adj_tol = linalg::default_pinv_tol(&ng.eig);
            Ok(ng.eig.filter_matrix(move |l| {
                if l.abs() > adj_tol {
                    benefit_var(l) / (l * l)
                } else {
                    0.0
                }
            }))
        }
        GameKind::BarikHonorio { .. } => Err(Error::Argument(
            "analytic covariance is defined for linear quadratic and linear influence games only".into(),
        )),
    }
}
