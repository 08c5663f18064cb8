//! The homomorphism `φ_L : V → V̄*` by three independent routes.
//!
//! Every route returns the g×g complex matrix `M` with `φ_L(v) = ℓ_{Mv}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use super::AppellHumbertBundle;
use crate::exact_linalg::{complexify_matrix, realify, ExactMatrix, GaussianRational, Vector};
use crate::ext_calculus::{chern_form, contract_and_project};
use crate::torus::{functional_with_pairings, TorsionPoint};

/// Upper bound on refinement levels in [`phi_from_translations`].
const MAX_LEVELS: usize = 96;

/// Number of consecutive refinement levels that must agree before a lift is accepted.
const STABLE_LEVELS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhiError {
    #[error("sample order must be at least 2, got {0}")]
    SampleOrder(u32),
    #[error("translation samples are inconsistent with a ℂ-linear map after {levels} refinements")]
    Inconsistent { levels: usize },
    #[error("translated bundle has nonzero degree; translation does not preserve H")]
    DegreeDrift,
}

/// `v ↦ H(v, ·)`, whose coefficient vector is `Hᵀ v`.
pub fn phi_from_hermitian(b: &AppellHumbertBundle) -> ExactMatrix {
    b.hermitian().matrix().transpose()
}

/// `φ_L` through the Chern form: contract the invariant (1,1) representative of
/// `c₁` with each basis vector and read the result in `H¹(O) = V̄*`.
pub fn phi_from_chern(b: &AppellHumbertBundle) -> ExactMatrix {
    let g = b.dim();
    let form = chern_form(b.hermitian());
    let columns: Vec<Vector> = ExactMatrix::identity(g)
        .to_rows()
        .iter()
        .map(|e| contract_and_project(&form, e).expect("chern form has bidegree (1,1)"))
        .collect();
    ExactMatrix::from_columns(&columns, g).expect("columns of length g")
}

/// Dual-torus points `(τ_x^* L) ⊗ L^*` for `x = λ_j / order`, lifted to the
/// representative nearest the origin and scaled by `order`.
fn scaled_samples(b: &AppellHumbertBundle, order: &BigInt) -> Result<Vec<Vector>, PhiError> {
    let lattice = b.lattice();
    let rank = lattice.rank();
    let dual = b.dual();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let scale = GaussianRational::from(order.clone());
    (0..rank)
        .map(|j| {
            let x = TorsionPoint::generator_fraction(rank, j, order);
            let difference = b.translate(&x).tensor(&dual).expect("same lattice");
            let point = difference.chi_to_dual_point().map_err(|_| PhiError::DegreeDrift)?;
            // pairings lie in [0, 1); move to (-1/2, 1/2]
            let centered: Vec<BigRational> = lattice
                .generators()
                .iter()
                .map(|lambda| {
                    let p = point.pairing(lambda);
                    if p > half {
                        p - BigRational::one()
                    } else {
                        p
                    }
                })
                .collect();
            let ell = functional_with_pairings(lattice, &centered);
            Ok(ell.coeffs.iter().map(|c| c * &scale).collect())
        })
        .collect()
}

/// Assembles the ℝ-linear map sending `λ_j` to `images[j]` and returns its
/// complex matrix when it is ℂ-linear.
fn assemble(b: &AppellHumbertBundle, images: &[Vector]) -> Option<ExactMatrix> {
    let lattice = b.lattice();
    let rank = lattice.rank();
    let image_rows: Vec<Vector> = images.iter().map(|v| realify(v)).collect();
    let image_matrix = ExactMatrix::from_rows(&image_rows, rank).ok()?;
    // rows: P Φᵀ = L
    let phi_t = &lattice.real_matrix().inverse().ok()? * &image_matrix;
    complexify_matrix(&phi_t.transpose())
}

/// Derivative of `x ↦ (τ_x^* L) ⊗ L^*` at the origin.
///
/// Samples the map on the points `λ_j / N` for `N = n, n², n³, …`. Near the
/// origin the sampled dual-torus points are small, so the representative
/// nearest zero times `N` is the image of `λ_j`. The lift is accepted once
/// several consecutive levels agree and the assembled map is ℂ-linear.
pub fn phi_from_translations(b: &AppellHumbertBundle, n: u32) -> Result<ExactMatrix, PhiError> {
    if n < 2 {
        return Err(PhiError::SampleOrder(n));
    }
    let base = BigInt::from(n);
    let mut order = base.clone();
    let mut previous: Option<Vec<Vector>> = None;
    let mut streak = 1;
    for _ in 0..MAX_LEVELS {
        let samples = scaled_samples(b, &order)?;
        if previous.as_ref() == Some(&samples) {
            streak += 1;
        } else {
            streak = 1;
        }
        if streak >= STABLE_LEVELS {
            if let Some(m) = assemble(b, &samples) {
                return Ok(m);
            }
        }
        previous = Some(samples);
        order *= &base;
    }
    Err(PhiError::Inconsistent { levels: MAX_LEVELS })
}

/// Outcome of comparing the three constructions.
#[derive(Clone, Debug, Serialize)]
pub struct PhiAgreement {
    pub hermitian: ExactMatrix,
    pub chern: ExactMatrix,
    /// `(n, matrix)` for each sample order tried.
    pub translations: Vec<(u32, ExactMatrix)>,
    pub agree: bool,
}

pub fn phi_agreement(b: &AppellHumbertBundle, orders: &[u32]) -> Result<PhiAgreement, PhiError> {
    let hermitian = phi_from_hermitian(b);
    let chern = phi_from_chern(b);
    let translations = orders
        .iter()
        .map(|&n| phi_from_translations(b, n).map(|m| (n, m)))
        .collect::<Result<Vec<_>, _>>()?;
    let agree = chern == hermitian && translations.iter().all(|(_, m)| *m == hermitian);
    Ok(PhiAgreement { hermitian, chern, translations, agree })
}
