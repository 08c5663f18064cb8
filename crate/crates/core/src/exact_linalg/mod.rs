//! Exact scalar and matrix arithmetic over ℚ(i): kernels, ranks, spans, Smith
//! normal form, and the real/imaginary splitting ℂ^g ≅ ℝ^{2g}.

mod gaussian;
mod matrix;
mod smith;

use num_rational::BigRational;
use thiserror::Error;

pub(crate) use gaussian::serialize_rationals;
pub use gaussian::{format_rational, parse_rational, rational_mod, GaussianRational, ParseGaussianError};
pub use matrix::{kernel_basis, rank_of, span_equal, ExactMatrix, Vector};
pub use smith::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {left:?} against {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("vector {index} has dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("matrix of shape {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({row},{col}) is not an integer")]
    NonIntegral { row: usize, col: usize },
}

/// `(Re z₁, …, Re z_g, Im z₁, …, Im z_g)` as real Gaussian rationals.
pub fn realify(v: &[GaussianRational]) -> Vector {
    v.iter()
        .map(|z| GaussianRational::real(z.re.clone()))
        .chain(v.iter().map(|z| GaussianRational::real(z.im.clone())))
        .collect()
}

/// Inverse of [`realify`]: pairs the two halves of a real vector into ℂ^g.
/// Only the real parts of the entries are read.
pub fn complexify(v: &[GaussianRational]) -> Vector {
    let g = v.len() / 2;
    (0..g).map(|j| GaussianRational::new(v[j].re.clone(), v[g + j].re.clone())).collect()
}

/// The 2g×2g real matrix of a ℂ-linear map `z ↦ M z` on ℝ^{2g} = ℂ^g:
/// `[[Re M, −Im M], [Im M, Re M]]`.
pub fn realify_matrix(m: &ExactMatrix) -> ExactMatrix {
    let (r, c) = m.shape();
    ExactMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let z = &m[(i % r, j % c)];
        let part: BigRational = match (i < r, j < c) {
            (true, true) | (false, false) => z.re.clone(),
            (true, false) => -z.im.clone(),
            (false, true) => z.im.clone(),
        };
        GaussianRational::real(part)
    })
}

/// Recovers `M` from its realification, or `None` when the real matrix does not
/// commute with multiplication by `i` (that is, is not ℂ-linear).
pub fn complexify_matrix(real: &ExactMatrix) -> Option<ExactMatrix> {
    let (r2, c2) = real.shape();
    if r2 % 2 != 0 || c2 % 2 != 0 || !real.is_real() {
        return None;
    }
    let (r, c) = (r2 / 2, c2 / 2);
    let m = ExactMatrix::from_fn(r, c, |i, j| GaussianRational::new(real[(i, j)].re.clone(), real[(r + i, j)].re.clone()));
    (realify_matrix(&m) == *real).then_some(m)
}
