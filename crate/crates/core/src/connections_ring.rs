//! Graded dimensions of the ring of algebraic functions on the moduli of
//! λ-connections on a line bundle.
//!
//! Degree `d` functions are bounded above by `1 + Σ_{i ≤ d} dim ker β_i`,
//! where `β_i : Sym^i(W) → W̄* ⊗ Sym^{i−1}(W)` is the derivation extension of
//! `v ↦ H(v, ·)`, and bounded below by `dim Sym^d(V_ξ ⊕ ℂ)` through the
//! polynomial functions pulled back along `ρ`. Both tallies are computed and
//! compared per instance.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact_linalg::{ExactMatrix, GaussianRational, Vector};
use crate::line_bundles::{radical, AppellHumbertBundle, HermitianForm, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("β is defined for degree at least 1")]
    ZeroDegree,
    #[error("degree {degree}: upper bound {upper} disagrees with lower bound {lower}")]
    Certification { degree: usize, upper: usize, lower: usize },
    #[error("degree {degree}: dim ker β = {found}, expected {expected}")]
    KernelLaw { degree: usize, found: usize, expected: usize },
}

/// `C(n, k)` as a machine integer; `0` when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    num_integer::binomial(n, k)
}

/// Monomials of degree `d` in `g` variables, as exponent vectors, in
/// descending lexicographic order (`z_1^d` first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymBasis {
    degree: usize,
    dim: usize,
    monomials: Vec<Vec<usize>>,
}

impl SymBasis {
    pub fn new(dim: usize, degree: usize) -> Self {
        fn go(var: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if var + 1 == cur.len() {
                cur[var] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[var] = e;
                go(var + 1, left - e, cur, out);
            }
        }
        let mut monomials = Vec::new();
        if dim == 0 {
            if degree == 0 {
                monomials.push(Vec::new());
            }
        } else {
            go(0, degree, &mut vec![0; dim], &mut monomials);
        }
        SymBasis { degree, dim, monomials }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    pub fn index_of(&self, exponents: &[usize]) -> Option<usize> {
        self.monomials.iter().position(|m| m == exponents)
    }
}

/// Matrix of `β_d` in monomial bases. Rows are indexed by `(k, m)` with `k` a
/// coordinate of `W̄*` and `m` a monomial of degree `d − 1`, flattened as
/// `k · |Sym^{d−1}| + m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaMatrix {
    pub degree: usize,
    pub matrix: ExactMatrix,
}

pub fn beta_matrix(h: &HermitianForm, d: usize) -> Result<BetaMatrix, RingError> {
    if d == 0 {
        return Err(RingError::ZeroDegree);
    }
    let g = h.dim();
    let source = SymBasis::new(g, d);
    let target = SymBasis::new(g, d - 1);
    let mut m = ExactMatrix::zeros(g * target.len(), source.len());
    for (col, alpha) in source.monomials().iter().enumerate() {
        for a in 0..g {
            if alpha[a] == 0 {
                continue;
            }
            let mut lowered = alpha.clone();
            lowered[a] -= 1;
            let row_m = target.index_of(&lowered).expect("degree d-1 monomial");
            let mult = GaussianRational::from(alpha[a] as i64);
            for k in 0..g {
                let hk = &h.matrix()[(a, k)];
                if !hk.is_zero() {
                    m[(k * target.len() + row_m, col)] += &(hk * &mult);
                }
            }
        }
    }
    Ok(BetaMatrix { degree: d, matrix: m })
}

/// `dim ker β_d`, checked against `C(k + d − 1, d)` with `k = dim radical(H)`.
pub fn beta_kernel_dim(h: &HermitianForm, d: usize) -> Result<usize, RingError> {
    let beta = beta_matrix(h, d)?;
    let found = beta.matrix.cols() - beta.matrix.rank();
    let k = radical(h).dim();
    let expected = binomial(k + d - 1, d);
    if found != expected {
        return Err(RingError::KernelLaw { degree: d, found, expected });
    }
    Ok(found)
}

/// `1 + Σ_{i=1}^d dim ker β_i`.
pub fn h0_dimension_bound(h: &HermitianForm, d: usize) -> Result<usize, RingError> {
    Ok(1 + kernel_dims(h, d)?.iter().sum::<usize>())
}

fn kernel_dims(h: &HermitianForm, d: usize) -> Result<Vec<usize>, RingError> {
    (1..=d).map(|i| beta_kernel_dim(h, i)).collect()
}

/// `dim Sym^d(V_ξ ⊕ ℂ) = C(k + d, d)`.
pub fn sym_lower_dimension(k: usize, d: usize) -> usize {
    binomial(k + d, d)
}

/// Both tallies behind a certified degree-`d` dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingCertificate {
    pub degree: usize,
    pub radical_dim: usize,
    /// `dim ker β_i` for `i = 1..=d`.
    pub kernel_dims: Vec<usize>,
    pub upper_bound: usize,
    pub lower_bound: usize,
    pub dimension: usize,
}

pub fn function_ring_dimension(b: &AppellHumbertBundle, d: usize) -> Result<RingCertificate, RingError> {
    let h = b.hermitian();
    let radical_dim = radical(h).dim();
    let kernel_dims = kernel_dims(h, d)?;
    let upper_bound = 1 + kernel_dims.iter().sum::<usize>();
    let lower_bound = sym_lower_dimension(radical_dim, d);
    if upper_bound != lower_bound {
        return Err(RingError::Certification { degree: d, upper: upper_bound, lower: lower_bound });
    }
    Ok(RingCertificate { degree: d, radical_dim, kernel_dims, upper_bound, lower_bound, dimension: upper_bound })
}

/// Certificates for every degree `0..=max_degree`.
pub fn function_ring_table(b: &AppellHumbertBundle, max_degree: usize) -> Result<Vec<RingCertificate>, RingError> {
    (0..=max_degree).map(|d| function_ring_dimension(b, d)).collect()
}

/// Splitting data for `V* → V_ξ*`.
///
/// `restriction` is the `k × g` matrix sending a functional (coefficient
/// vector) to its values on the radical basis. `section` is the chosen
/// splitting `γ`, whose image annihilates the standard-Hermitian orthogonal
/// complement of `V_ξ`; `projector = section · restriction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoProjection {
    pub radical: Subspace,
    pub restriction: ExactMatrix,
    pub section: ExactMatrix,
    pub projector: ExactMatrix,
}

pub fn rho_projection(b: &AppellHumbertBundle) -> RhoProjection {
    let g = b.dim();
    let radical = radical(b.hermitian());
    let r = radical.as_columns();
    let restriction = r.transpose();
    let gram = &restriction * &r.conj();
    let section = &r.conj() * &gram.inverse().expect("radical basis is independent");
    let projector = if radical.dim() == 0 { ExactMatrix::zeros(g, g) } else { &section * &restriction };
    RhoProjection { radical, restriction, section, projector }
}

/// `Sym^d` of a subspace, as a list of vectors in the monomial basis of `Sym^d(ℂ^g)`.
pub fn sym_power_span(space: &Subspace, d: usize) -> Vec<Vector> {
    let g = space.ambient_dim();
    let target = SymBasis::new(g, d);
    let inner = SymBasis::new(space.dim(), d);
    inner
        .monomials()
        .iter()
        .map(|alpha| {
            // product of basis vectors raised to alpha, expanded in monomials
            let mut poly: Vec<(Vec<usize>, GaussianRational)> = vec![(vec![0; g], GaussianRational::from(1))];
            for (idx, &e) in alpha.iter().enumerate() {
                for _ in 0..e {
                    let v = &space.basis()[idx];
                    let mut next = Vec::new();
                    for (mono, c) in &poly {
                        for (a, va) in v.iter().enumerate() {
                            if va.is_zero() {
                                continue;
                            }
                            let mut m = mono.clone();
                            m[a] += 1;
                            next.push((m, c * va));
                        }
                    }
                    poly = next;
                }
            }
            let mut out = vec![GaussianRational::zero(); target.len()];
            for (mono, c) in poly {
                out[target.index_of(&mono).expect("degree d")] += &c;
            }
            out
        })
        .collect()
}

/// Basis of `ker β_d` in the monomial basis of `Sym^d`.
pub fn beta_kernel(h: &HermitianForm, d: usize) -> Result<Vec<Vector>, RingError> {
    Ok(beta_matrix(h, d)?.matrix.kernel_basis())
}
