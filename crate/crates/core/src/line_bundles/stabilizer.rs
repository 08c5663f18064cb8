//! The group `K(ξ) = Λ(ξ)/Λ` of translations fixing a bundle, where
//! `Λ(ξ) = {v : E(v, Λ) ⊆ ℤ}`.
//!
//! The identity component has Lie algebra equal to the real kernel of `E`; the
//! component group is `⊕ ℤ/e_i` over the nonzero Smith invariants `e_i` of the
//! integral matrix `E(λ_j, λ_k)`. For nondegenerate `E` the invariants come in
//! equal pairs `(d_1, d_1, …, d_g, d_g)` and the order is `|det E| = Π d_i²`.
//!
//! When `E = 0` every translate fixes the bundle and the whole torus is
//! reported as the identity component.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{AppellHumbertBundle, Subspace};
use crate::exact_linalg::{smith_normal_form, SmithForm};
use crate::torus::torsion_points;

#[derive(Clone, Debug, Serialize)]
pub struct Stabilizer {
    /// Tangent directions of the identity component, as a ℂ-subspace of `V`.
    pub direction: Subspace,
    /// Real dimension of the identity component.
    pub identity_real_dim: usize,
    /// Full Smith diagonal of `E` on the lattice generators (length 2g).
    #[serde(serialize_with = "serialize_ints")]
    pub smith_diagonal: Vec<BigInt>,
    /// Nonzero Smith invariants.
    #[serde(serialize_with = "serialize_ints")]
    pub elementary_divisors: Vec<BigInt>,
    #[serde(serialize_with = "serialize_int")]
    pub component_order: BigInt,
    pub nondegenerate: bool,
}

fn serialize_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.to_string()))
}

fn serialize_int<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl Stabilizer {
    /// `|K(ξ) ∩ (1/N)Λ/Λ|` predicted from the Smith invariants: each zero
    /// invariant contributes `N`, each nonzero `e` contributes `gcd(e, N)`.
    pub fn predicted_fixed_count(&self, n: u32) -> BigInt {
        let n = BigInt::from(n);
        self.smith_diagonal
            .iter()
            .map(|e| if e.is_zero() { n.clone() } else { e.gcd(&n) })
            .fold(BigInt::one(), |acc, x| acc * x)
    }
}

pub fn stabilizer(b: &AppellHumbertBundle) -> Stabilizer {
    let e = b.e_matrix();
    let snf: SmithForm = smith_normal_form(&e).expect("E is integral on a valid bundle");
    // E(Σ t_j λ_j, λ_k) = (Eᵀ t)_k
    let kernel = e.transpose().kernel_basis();
    let identity_real_dim = kernel.len();
    let vectors: Vec<_> = kernel
        .iter()
        .map(|t| {
            let coords: Vec<BigRational> = t.iter().map(|z| z.re.clone()).collect();
            b.lattice().point(&coords)
        })
        .collect();
    let direction = Subspace::from_spanning(b.dim(), &vectors);
    let elementary_divisors = snf.nonzero_divisors();
    let component_order = elementary_divisors.iter().fold(BigInt::one(), |acc, d| acc * d);
    Stabilizer {
        direction,
        identity_real_dim,
        nondegenerate: elementary_divisors.len() == e.rows(),
        smith_diagonal: snf.divisors,
        elementary_divisors,
        component_order,
    }
}

/// Number of points `x` of order dividing `n` with `τ_x^* ξ ≅ ξ`, by enumeration.
pub fn brute_force_fixed_count(b: &AppellHumbertBundle, n: u32) -> usize {
    torsion_points(b.lattice(), n)
        .expect("n > 0")
        .iter()
        .filter(|x| b.translate(x).is_isomorphic(b))
        .count()
}
