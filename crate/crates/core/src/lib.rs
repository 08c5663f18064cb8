//! Exact computations with line bundles, extension classes and rank-one
//! λ-connections on complex tori.
//!
//! A torus `A = V/Λ` is given by `2g` generators of `Λ ⊂ ℂ^g` with
//! Gaussian-rational coordinates. Line bundles are Appell–Humbert pairs
//! `(H, χ)`. Everything except [`monodromy`] is exact over `ℚ(i)`, so the
//! identities checked here are decided by equality rather than tolerance.
//!
//! | module | contents |
//! |---|---|
//! | [`exact_linalg`] | `ℚ(i)` scalars and matrices, RREF, kernels, Smith normal form |
//! | [`torus`] | period lattices, the dual torus `V̄*/Λ̄`, torsion points |
//! | [`line_bundles`] | `(H, χ)` data, tensor/dual/translate, radicals, `φ_L`, stabilizers |
//! | [`ext_calculus`] | invariant forms, extension classes, the Atiyah/moduli pushout |
//! | [`connections_ring`] | β-matrices on symmetric powers and certified ring dimensions |
//! | [`monodromy`] | λ-connections, monodromy characters, the covering map `ψ` |
//! | [`cli`] | JSON workspaces, seeded generators, verification suites |
//!
//! # Conventions
//!
//! | object | convention |
//! |---|---|
//! | Hermitian form | `H(v, w) = Σ H_jk v_j conj(w_k)`, `E = Im H` |
//! | dual torus | `ℓ_c(v) = Σ c_j conj(v_j)`, pairing `⟨ℓ, v⟩ = Im ℓ(v)` |
//! | semicharacter | `χ(λ_j) = exp(πi·a_j)`, `a_j ∈ [0, 2)` |
//! | `φ_L` | `v ↦ H(v, ·)`, matrix `Hᵀ` |
//! | Chern form | `ω = −(i/2) Σ H_jk dz_j ∧ dz̄_k`, so `ω(v, w) = E(v, w)` |
//! | monodromy | `t(λ) = exp(2πi·Im x(λ))·exp(−ω(λ))` |
//!
//! ```
//! use abelian_connections::exact_linalg::ExactMatrix;
//! use abelian_connections::line_bundles::{phi_from_hermitian, phi_from_translations, AppellHumbertBundle};
//! use abelian_connections::torus::PeriodLattice;
//! use num_rational::BigRational;
//! use num_traits::Zero;
//!
//! let lattice = PeriodLattice::standard(1);
//! let h = ExactMatrix::from_i64_rows(&[&[1]]);
//! let b = AppellHumbertBundle::new(lattice, h, vec![BigRational::zero(); 2]).unwrap();
//! assert_eq!(phi_from_translations(&b, 3).unwrap(), phi_from_hermitian(&b));
//! ```

pub mod cli;
pub mod connections_ring;
pub mod exact_linalg;
pub mod ext_calculus;
pub mod line_bundles;
pub mod monodromy;
pub mod torus;

pub use exact_linalg::{ExactMatrix, GaussianRational};
pub use line_bundles::{AppellHumbertBundle, HermitianForm};
pub use torus::PeriodLattice;
