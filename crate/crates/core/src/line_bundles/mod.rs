//! Line bundles on a complex torus presented by Appell–Humbert data `(H, χ)`.
//!
//! Conventions, fixed crate-wide:
//!
//! * `H(v, w) = Σ H_jk v_j conj(w_k)`, linear in the first slot; `E = Im H`.
//! * `χ(λ_j) = exp(πi·a_j)` with exponents `a_j ∈ [0, 2)` stored per generator,
//!   extended to `Λ` by `χ(λ+μ) = χ(λ)χ(μ)exp(πi·E(λ,μ))`.
//! * Translation by `x` multiplies `χ(λ)` by `exp(2πi·E(x̃, λ))`.
//! * A degree-0 bundle with exponents `a` is the point `ℓ ∈ V̄*` with
//!   `Im ℓ(λ_k) = a_k/2`.

mod phi;
mod stabilizer;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact_linalg::{complexify, rational_mod, span_equal, ExactMatrix, GaussianRational, Vector};
use crate::torus::{functional_with_pairings, AntilinearFunctional, PeriodLattice, TorsionPoint};

pub use phi::{phi_from_chern, phi_from_hermitian, phi_from_translations, PhiError, PhiAgreement, phi_agreement};
pub use stabilizer::{brute_force_fixed_count, stabilizer, Stabilizer};

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
pub enum BundleDiagnostic {
    #[error("H must be {g}x{g}, found {rows}x{cols}")]
    HShape { g: usize, rows: usize, cols: usize },
    #[error("expected {expected} semicharacter exponents, found {found}")]
    ChiLength { expected: usize, found: usize },
    #[error("H is not Hermitian: H[{row}][{col}] != conj(H[{col}][{row}])")]
    NotHermitian { row: usize, col: usize },
    #[error("E = Im H is not integral on generators ({i}, {j}): E = {value}")]
    NonIntegralE { i: usize, j: usize, value: String },
    #[error("bundles live on different lattices")]
    LatticeMismatch,
    #[error("operation needs a degree-0 bundle (H = 0)")]
    NotDegreeZero,
}

/// A validated Hermitian form on `ℂ^g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HermitianForm {
    matrix: ExactMatrix,
}

impl HermitianForm {
    pub fn new(matrix: ExactMatrix) -> Result<Self, BundleDiagnostic> {
        if !matrix.is_square() {
            return Err(BundleDiagnostic::HShape { g: matrix.rows(), rows: matrix.rows(), cols: matrix.cols() });
        }
        for r in 0..matrix.rows() {
            for c in r..matrix.cols() {
                if matrix[(r, c)] != matrix[(c, r)].conj() {
                    return Err(BundleDiagnostic::NotHermitian { row: r, col: c });
                }
            }
        }
        Ok(HermitianForm { matrix })
    }

    pub fn zero(g: usize) -> Self {
        HermitianForm { matrix: ExactMatrix::zeros(g, g) }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn eval(&self, v: &[GaussianRational], w: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (k, wk) in w.iter().enumerate() {
                acc += &(&(&self.matrix[(j, k)] * vj) * &wk.conj());
            }
        }
        acc
    }

    /// `E(v, w) = Im H(v, w)`.
    pub fn imaginary_part(&self, v: &[GaussianRational], w: &[GaussianRational]) -> BigRational {
        self.eval(v, w).im
    }

    /// 2g×2g matrix `S` of `E` in real coordinates: `E(v, w) = realify(v)ᵀ S realify(w)`.
    pub fn real_e_matrix(&self) -> ExactMatrix {
        let g = self.dim();
        let basis = |r: usize| {
            let mut v = vec![GaussianRational::zero(); g];
            v[r % g] = if r < g { GaussianRational::one() } else { GaussianRational::i() };
            v
        };
        ExactMatrix::from_fn(2 * g, 2 * g, |r, c| GaussianRational::real(self.imaginary_part(&basis(r), &basis(c))))
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        HermitianForm { matrix: self.matrix.scale(&GaussianRational::real(s.clone())) }
    }
}

/// A ℂ-subspace of `ℂ^g` with a linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Extracts an independent subset of a spanning set.
    pub fn from_spanning(ambient: usize, vectors: &[Vector]) -> Self {
        let m = ExactMatrix::from_columns(vectors, ambient).expect("vectors of ambient length");
        let (_, pivots) = m.rref();
        Subspace { ambient, basis: pivots.into_iter().map(|p| vectors[p].clone()).collect() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: ExactMatrix::identity(ambient).to_rows() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && span_equal(&self.basis, &other.basis).unwrap_or(false)
    }

    /// g×k matrix with the basis vectors as columns.
    pub fn as_columns(&self) -> ExactMatrix {
        ExactMatrix::from_columns(&self.basis, self.ambient).expect("basis vectors of ambient length")
    }
}

/// An ℝ-subspace of `ℂ^g = ℝ^{2g}` given by ℝ-independent vectors in complex coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealSubspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl RealSubspace {
    pub fn real_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// ℂ-span of the vectors.
    pub fn complex_span(&self) -> Subspace {
        Subspace::from_spanning(self.ambient, &self.basis)
    }
}

/// Appell–Humbert data `(H, χ)` on a fixed period lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppellHumbertBundle {
    lattice: PeriodLattice,
    h: HermitianForm,
    #[serde(serialize_with = "crate::exact_linalg::serialize_rationals")]
    chi: Vec<BigRational>,
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

fn reduce_exponents(chi: Vec<BigRational>) -> Vec<BigRational> {
    let m = two();
    chi.into_iter().map(|a| rational_mod(&a, &m)).collect()
}

/// Checks the Appell–Humbert existence conditions without building a bundle.
pub fn validate(lattice: &PeriodLattice, h: &ExactMatrix, chi: &[BigRational]) -> Result<(), BundleDiagnostic> {
    let g = lattice.dim();
    if h.shape() != (g, g) {
        return Err(BundleDiagnostic::HShape { g, rows: h.rows(), cols: h.cols() });
    }
    if chi.len() != 2 * g {
        return Err(BundleDiagnostic::ChiLength { expected: 2 * g, found: chi.len() });
    }
    let form = HermitianForm::new(h.clone())?;
    let gens = lattice.generators();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let e = form.imaginary_part(&gens[i], &gens[j]);
            if !e.is_integer() {
                return Err(BundleDiagnostic::NonIntegralE { i, j, value: crate::exact_linalg::format_rational(&e) });
            }
        }
    }
    Ok(())
}

impl AppellHumbertBundle {
    pub fn new(lattice: PeriodLattice, h: ExactMatrix, chi: Vec<BigRational>) -> Result<Self, BundleDiagnostic> {
        validate(&lattice, &h, &chi)?;
        Ok(AppellHumbertBundle { lattice, h: HermitianForm { matrix: h }, chi: reduce_exponents(chi) })
    }

    pub fn trivial(lattice: PeriodLattice) -> Self {
        let g = lattice.dim();
        AppellHumbertBundle { lattice, h: HermitianForm::zero(g), chi: vec![BigRational::zero(); 2 * g] }
    }

    pub fn lattice(&self) -> &PeriodLattice {
        &self.lattice
    }

    pub fn hermitian(&self) -> &HermitianForm {
        &self.h
    }

    /// Exponents `a_j ∈ [0, 2)`.
    pub fn chi(&self) -> &[BigRational] {
        &self.chi
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Integral 2g×2g matrix `E(λ_j, λ_k)`.
    pub fn e_matrix(&self) -> ExactMatrix {
        let gens = self.lattice.generators();
        ExactMatrix::from_fn(gens.len(), gens.len(), |j, k| GaussianRational::real(self.h.imaginary_part(&gens[j], &gens[k])))
    }

    /// Exponent of `χ(Σ n_j λ_j)` modulo 2, via the semicharacter cocycle.
    pub fn semicharacter_exponent(&self, n: &[BigInt]) -> BigRational {
        let e = self.e_matrix();
        let mut acc = BigRational::zero();
        for (j, nj) in n.iter().enumerate() {
            acc += &self.chi[j] * BigRational::from_integer(nj.clone());
            for (k, nk) in n.iter().enumerate().skip(j + 1) {
                acc += &e[(j, k)].re * BigRational::from_integer(nj * nk);
            }
        }
        rational_mod(&acc, &two())
    }

    pub fn tensor(&self, other: &AppellHumbertBundle) -> Result<AppellHumbertBundle, BundleDiagnostic> {
        if self.lattice != other.lattice {
            return Err(BundleDiagnostic::LatticeMismatch);
        }
        Ok(AppellHumbertBundle {
            lattice: self.lattice.clone(),
            h: HermitianForm { matrix: self.h.matrix() + other.h.matrix() },
            chi: reduce_exponents(self.chi.iter().zip(&other.chi).map(|(a, b)| a + b).collect()),
        })
    }

    pub fn dual(&self) -> AppellHumbertBundle {
        AppellHumbertBundle {
            lattice: self.lattice.clone(),
            h: HermitianForm { matrix: -self.h.matrix() },
            chi: reduce_exponents(self.chi.iter().map(|a| -a).collect()),
        }
    }

    /// `τ_x^* L`: same `H`, exponents shifted by `2E(x̃, λ_j)`.
    pub fn translate(&self, x: &TorsionPoint) -> AppellHumbertBundle {
        let lift = x.lift(&self.lattice);
        let shifted = self
            .lattice
            .generators()
            .iter()
            .zip(&self.chi)
            .map(|(lambda, a)| a + two() * self.h.imaginary_part(&lift, lambda))
            .collect();
        AppellHumbertBundle { lattice: self.lattice.clone(), h: self.h.clone(), chi: reduce_exponents(shifted) }
    }

    /// Appell–Humbert data is a complete invariant on a fixed lattice; exponents
    /// are already in the canonical range.
    pub fn is_isomorphic(&self, other: &AppellHumbertBundle) -> bool {
        self.lattice == other.lattice && self.h == other.h && self.chi == other.chi
    }

    /// The point of the dual torus presenting a degree-0 bundle, as the
    /// representative with pairings `a_k/2 ∈ [0, 1)`.
    pub fn chi_to_dual_point(&self) -> Result<AntilinearFunctional, BundleDiagnostic> {
        if !self.h.is_zero() {
            return Err(BundleDiagnostic::NotDegreeZero);
        }
        let pairings: Vec<BigRational> = self.chi.iter().map(|a| a / two()).collect();
        Ok(functional_with_pairings(&self.lattice, &pairings))
    }

    /// `true` iff the dual Atiyah sequence splits, which happens exactly when `c₁ = 0`.
    pub fn has_holomorphic_connection(&self) -> bool {
        self.h.is_zero()
    }
}

/// Complex radical `{v : H(v, ·) = 0}`, the kernel of `Hᵀ`.
pub fn radical(h: &HermitianForm) -> Subspace {
    let basis = h.matrix().transpose().kernel_basis();
    Subspace { ambient: h.dim(), basis }
}

/// Real kernel of `E = Im H` on `ℝ^{2g}`, computed without reference to the complex structure.
pub fn real_radical(h: &HermitianForm) -> RealSubspace {
    let basis = h.real_e_matrix().transpose().kernel_basis().iter().map(|x| complexify(x)).collect();
    RealSubspace { ambient: h.dim(), basis }
}

/// The radical computed both ways agrees: same ℂ-span and real dimension twice the complex one.
pub fn radicals_agree(h: &HermitianForm) -> bool {
    let complex = radical(h);
    let real = real_radical(h);
    real.real_dim() == 2 * complex.dim() && complex.same_span(&real.complex_span())
}

/// `φ_ξ` restricted to the radical; a partial connection along the radical
/// foliation exists iff this vanishes.
pub fn partial_connection_obstruction(b: &AppellHumbertBundle) -> ExactMatrix {
    let rad = radical(b.hermitian());
    &phi_from_hermitian(b) * &rad.as_columns()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> ExactMatrix {
        let v: Vec<Vector> = rows.iter().map(|r| r.iter().map(|s| gr(s)).collect()).collect();
        ExactMatrix::from_rows(&v, v[0].len()).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn zeros(n: usize) -> Vec<BigRational> {
        vec![BigRational::zero(); n]
    }

    fn square() -> PeriodLattice {
        PeriodLattice::standard(1)
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&square(), &mat(&[&["1"]]), &zeros(2)).is_ok());
        assert_eq!(
            validate(&square(), &mat(&[&["1/2"]]), &zeros(2)),
            Err(BundleDiagnostic::NonIntegralE { i: 0, j: 1, value: "-1/2".into() })
        );
        let chi = vec![rat(1, 3), rat(7, 5)];
        assert!(validate(&square(), &mat(&[&["0"]]), &chi).is_ok());
        assert_eq!(
            validate(&PeriodLattice::standard(2), &mat(&[&["1", "i"], &["i", "1"]]), &zeros(4)),
            Err(BundleDiagnostic::NotHermitian { row: 0, col: 1 })
        );
        assert!(matches!(validate(&square(), &mat(&[&["1"]]), &zeros(3)), Err(BundleDiagnostic::ChiLength { .. })));
        assert!(matches!(validate(&square(), &mat(&[&["1", "0"]]), &zeros(2)), Err(BundleDiagnostic::HShape { .. })));
    }

    #[test]
    fn group_law() {
        let l = AppellHumbertBundle::new(square(), mat(&[&["3"]]), vec![rat(1, 2), rat(3, 2)]).unwrap();
        let triv = l.tensor(&l.dual()).unwrap();
        assert!(triv.is_isomorphic(&AppellHumbertBundle::trivial(square())));
        let a = AppellHumbertBundle::new(square(), mat(&[&["1"]]), zeros(2)).unwrap();
        let b = AppellHumbertBundle::new(square(), mat(&[&["2"]]), zeros(2)).unwrap();
        assert_eq!(a.tensor(&b).unwrap().hermitian().matrix(), &mat(&[&["3"]]));
        let d = AppellHumbertBundle::new(square(), mat(&[&["0"]]), vec![rat(1, 3), rat(0, 1)]).unwrap().dual();
        assert_eq!(d.chi(), &[rat(5, 3), rat(0, 1)]);
        let other = AppellHumbertBundle::trivial(PeriodLattice::new(vec![vec![gr("1")], vec![gr("2*i")]]).unwrap());
        assert_eq!(a.tensor(&other), Err(BundleDiagnostic::LatticeMismatch));
    }

    #[test]
    fn translation_examples() {
        let half = TorsionPoint::new(vec![rat(1, 2), rat(0, 1)]);
        let l2 = AppellHumbertBundle::new(square(), mat(&[&["2"]]), zeros(2)).unwrap();
        assert!(l2.translate(&TorsionPoint::origin(2)).is_isomorphic(&l2));
        assert!(l2.translate(&half).is_isomorphic(&l2));
        let l1 = AppellHumbertBundle::new(square(), mat(&[&["1"]]), zeros(2)).unwrap();
        let t = l1.translate(&half);
        // E(1/2, i) = -1/2 shifts the second exponent by -1
        assert_eq!(t.chi(), &[rat(0, 1), rat(1, 1)]);
        assert!(!t.is_isomorphic(&l1));
    }

    #[test]
    fn semicharacter_cocycle_holds() {
        let l = PeriodLattice::standard(2);
        let b = AppellHumbertBundle::new(l, mat(&[&["2", "1+i"], &["1-i", "3"]]), vec![rat(1, 2), rat(1, 3), rat(0, 1), rat(3, 2)])
            .unwrap();
        let e = b.e_matrix();
        let lam: Vec<BigInt> = [1, -2, 0, 3].into_iter().map(BigInt::from).collect();
        let mu: Vec<BigInt> = [0, 1, 4, -1].into_iter().map(BigInt::from).collect();
        let sum: Vec<BigInt> = lam.iter().zip(&mu).map(|(a, b)| a + b).collect();
        let mut e_lm = BigRational::zero();
        for j in 0..4 {
            for k in 0..4 {
                e_lm += &e[(j, k)].re * BigRational::from_integer(&lam[j] * &mu[k]);
            }
        }
        let lhs = b.semicharacter_exponent(&sum);
        let rhs = rational_mod(&(b.semicharacter_exponent(&lam) + b.semicharacter_exponent(&mu) + e_lm), &two());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn radical_examples() {
        let zero = HermitianForm::zero(2);
        assert_eq!(radical(&zero).dim(), 2);
        let d = HermitianForm::new(mat(&[&["1", "0"], &["0", "0"]])).unwrap();
        let r = radical(&d);
        assert!(r.same_span(&Subspace::from_spanning(2, &[vec![gr("0"), gr("1")]])));
        assert_eq!(real_radical(&d).real_dim(), 2);
        assert!(radicals_agree(&d));
        let pd = HermitianForm::new(mat(&[&["2", "i"], &["-i", "1"]])).unwrap();
        assert_eq!(radical(&pd).dim(), 0);
        assert_eq!(real_radical(&pd).real_dim(), 0);
    }

    #[test]
    fn radical_uses_first_slot() {
        // ker H and ker Hᵀ differ here; the radical must be the latter.
        let h = HermitianForm::new(mat(&[&["1", "i"], &["-i", "1"]])).unwrap();
        let r = radical(&h);
        assert_eq!(r.dim(), 1);
        let v = &r.basis()[0];
        for w in ExactMatrix::identity(2).to_rows() {
            assert!(h.eval(v, &w).is_zero());
        }
        assert!(radicals_agree(&h));
    }

    #[test]
    fn obstruction_and_connections() {
        let d = AppellHumbertBundle::new(PeriodLattice::standard(2), mat(&[&["1", "0"], &["0", "0"]]), zeros(4)).unwrap();
        let obs = partial_connection_obstruction(&d);
        assert_eq!(obs.shape(), (2, 1));
        assert!(obs.is_zero());
        assert!(!d.has_holomorphic_connection());
        let pd = AppellHumbertBundle::new(square(), mat(&[&["1"]]), zeros(2)).unwrap();
        assert_eq!(partial_connection_obstruction(&pd).shape(), (1, 0));
        assert!(!pd.has_holomorphic_connection());
        let flat = AppellHumbertBundle::trivial(square());
        assert!(flat.has_holomorphic_connection());
        assert!(partial_connection_obstruction(&flat).is_zero());
    }

    #[test]
    fn degree_zero_points() {
        let b = AppellHumbertBundle::new(square(), mat(&[&["0"]]), vec![rat(1, 1), rat(1, 2)]).unwrap();
        let ell = b.chi_to_dual_point().unwrap();
        let gens = square().generators().to_vec();
        assert_eq!(ell.pairing(&gens[0]), rat(1, 2));
        assert_eq!(ell.pairing(&gens[1]), rat(1, 4));
        let ample = AppellHumbertBundle::new(square(), mat(&[&["1"]]), zeros(2)).unwrap();
        assert_eq!(ample.chi_to_dual_point(), Err(BundleDiagnostic::NotDegreeZero));
    }
}
