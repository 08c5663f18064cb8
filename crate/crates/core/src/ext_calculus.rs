//! Invariant forms, extension classes, and the pushout identity relating the
//! moduli sequence of rank-one λ-connections to the dual Atiyah sequence.
//!
//! # Identifications
//!
//! | space | coordinates |
//! |---|---|
//! | `H⁰(X, TX)` | tangent vectors at 0, i.e. the ambient `ℂ^g` of the lattice |
//! | `H⁰(X, Ω¹_X)` | coefficients of `Σ t_k dz_k` |
//! | `H¹(X, O_X)` | Dolbeault class of `Σ c_k dz̄_k`, read as the antilinear functional `ℓ_c` |
//! | `H¹(A^∨, O)` | `V`, through the same coefficient convention applied to `V̄*` |
//! | `H^{1,1}(X)` | invariant forms `Σ α_jk dz_j ∧ dz̄_k` |
//!
//! An extension class valued in `H¹(X, O) ⊗ F` is stored as a matrix with one
//! row per `H¹(X, O)` coordinate and one column per basis vector of `F`.
//!
//! The harmonic representative of `c₁` is `ω = −(i/2) Σ H_jk dz_j ∧ dz̄_k`,
//! which evaluates to `E = Im H` on real tangent vectors. Reading
//! `ι_v ω ∈ H¹(O)` as a map `T → H¹(O)` carries the factor
//! [`CONTRACTION_NORMALIZATION`] `= 2i`, which makes `v ↦ [ι_v ω]` equal to
//! `v ↦ H(v, ·)`.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exact_linalg::{ExactMatrix, GaussianRational, LinalgError, Vector};
use crate::line_bundles::{phi_from_translations, AppellHumbertBundle, HermitianForm, PhiError};
use crate::torus::{dual_lattice, PeriodLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("expected bidegree {expected:?}, got {found:?}")]
    WrongBidegree { expected: (usize, usize), found: (usize, usize) },
    #[error("vector has dimension {found}, form lives on dimension {expected}")]
    Dimension { expected: usize, found: usize },
    #[error(transparent)]
    Shape(#[from] LinalgError),
    #[error(transparent)]
    Phi(#[from] PhiError),
}

/// Scalar `−i/2` relating `Σ H_jk dz_j ∧ dz̄_k` to the real form `E`.
pub fn chern_form_scale() -> GaussianRational {
    GaussianRational::new(num_rational::BigRational::zero(), num_rational::BigRational::new((-1).into(), 2.into()))
}

/// `2i = 1 / (−i/2)`.
pub const CONTRACTION_NORMALIZATION: (i64, i64) = (0, 2);

fn contraction_normalization() -> GaussianRational {
    GaussianRational::from_ints(CONTRACTION_NORMALIZATION.0, CONTRACTION_NORMALIZATION.1)
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Translation-invariant `(p, q)`-form `Σ α_{I,J} dz_I ∧ dz̄_J` on `ℂ^g`, over
/// sorted multi-indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantForm {
    dim: usize,
    p: usize,
    q: usize,
    holo_basis: Vec<Vec<usize>>,
    anti_basis: Vec<Vec<usize>>,
    /// Row-major over `(holo index, anti index)`.
    coeffs: Vec<GaussianRational>,
}

impl InvariantForm {
    pub fn zero(dim: usize, p: usize, q: usize) -> Self {
        let holo_basis = combinations(dim, p);
        let anti_basis = combinations(dim, q);
        let coeffs = vec![GaussianRational::zero(); holo_basis.len() * anti_basis.len()];
        InvariantForm { dim, p, q, holo_basis, anti_basis, coeffs }
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn slot(&self, holo: &[usize], anti: &[usize]) -> Option<usize> {
        let a = self.holo_basis.iter().position(|i| i == holo)?;
        let b = self.anti_basis.iter().position(|j| j == anti)?;
        Some(a * self.anti_basis.len() + b)
    }

    pub fn coeff(&self, holo: &[usize], anti: &[usize]) -> GaussianRational {
        self.slot(holo, anti).map_or_else(GaussianRational::zero, |s| self.coeffs[s].clone())
    }

    /// Adds `c · dz_{holo} ∧ dz̄_{anti}` for arbitrary (unsorted) index lists.
    pub fn add_term(&mut self, holo: &[usize], anti: &[usize], c: &GaussianRational) {
        let (Some((hs, hsign)), Some((as_, asign))) = (sort_with_sign(holo), sort_with_sign(anti)) else {
            return;
        };
        let slot = self.slot(&hs, &as_).expect("indices within dimension");
        let mut c = c.clone();
        if hsign != asign {
            c = -c;
        }
        self.coeffs[slot] += &c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Interior product with the (1,0)-vector `Σ v_j ∂/∂z_j`.
    pub fn interior_product(&self, v: &[GaussianRational]) -> Result<InvariantForm, ExtError> {
        if v.len() != self.dim {
            return Err(ExtError::Dimension { expected: self.dim, found: v.len() });
        }
        if self.p == 0 {
            return Ok(InvariantForm::zero(self.dim, 0, self.q));
        }
        let mut out = InvariantForm::zero(self.dim, self.p - 1, self.q);
        for (a, holo) in self.holo_basis.iter().enumerate() {
            for (b, anti) in self.anti_basis.iter().enumerate() {
                let c = &self.coeffs[a * self.anti_basis.len() + b];
                if c.is_zero() {
                    continue;
                }
                for (pos, &idx) in holo.iter().enumerate() {
                    let mut rest = holo.clone();
                    rest.remove(pos);
                    let mut term = c * &v[idx];
                    if pos % 2 == 1 {
                        term = -term;
                    }
                    out.add_term(&rest, anti, &term);
                }
            }
        }
        Ok(out)
    }

    /// Value of a (1,1)-form on a pair of real tangent vectors given in complex
    /// coordinates: `(dz_j ∧ dz̄_k)(v, w) = v_j conj(w_k) − w_j conj(v_k)`.
    pub fn evaluate(&self, v: &[GaussianRational], w: &[GaussianRational]) -> Result<GaussianRational, ExtError> {
        if self.bidegree() != (1, 1) {
            return Err(ExtError::WrongBidegree { expected: (1, 1), found: self.bidegree() });
        }
        let mut acc = GaussianRational::zero();
        for j in 0..self.dim {
            for k in 0..self.dim {
                let c = self.coeff(&[j], &[k]);
                if c.is_zero() {
                    continue;
                }
                let pairing = &(&v[j] * &w[k].conj()) - &(&w[j] * &v[k].conj());
                acc += &(&c * &pairing);
            }
        }
        Ok(acc)
    }
}

/// Sorts distinct indices, returning the permutation parity; `None` on repeats.
fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Harmonic representative of `c₁` for the Hermitian form.
pub fn chern_form(h: &HermitianForm) -> InvariantForm {
    let g = h.dim();
    let scale = chern_form_scale();
    let mut form = InvariantForm::zero(g, 1, 1);
    for j in 0..g {
        for k in 0..g {
            let c = &h.matrix()[(j, k)];
            if !c.is_zero() {
                form.add_term(&[j], &[k], &(c * &scale));
            }
        }
    }
    form
}

/// `H^{1,1} ⊗ H⁰(T) → H¹(O)`: contract with `v`, keep the (0,1)-part, and read
/// it as a point of `V̄*`.
pub fn contract_and_project(form: &InvariantForm, v: &[GaussianRational]) -> Result<Vector, ExtError> {
    if form.bidegree() != (1, 1) {
        return Err(ExtError::WrongBidegree { expected: (1, 1), found: form.bidegree() });
    }
    let contracted = form.interior_product(v)?;
    let k = contraction_normalization();
    Ok((0..form.dim()).map(|j| &contracted.coeff(&[], &[j]) * &k).collect())
}

/// Which torus an extension class lives on, relative to the lattice it was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Base {
    Torus,
    DualTorus,
}

/// The fiber `F` of the kernel bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Fiber {
    /// `H⁰(base, Ω¹)`.
    FormsOnBase,
    /// `H⁰(dual of base, Ω¹)`.
    FormsOnDualOfBase,
}

/// Extension class in `H¹(base, O) ⊗ F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtClass {
    pub base: Base,
    pub fiber: Fiber,
    pub matrix: ExactMatrix,
}

impl ExtClass {
    /// A class is zero exactly when its sequence splits.
    pub fn is_split(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn negate(&self) -> ExtClass {
        ExtClass { base: self.base, fiber: self.fiber, matrix: -&self.matrix }
    }
}

/// `c₁(L) ∈ H¹(X, O) ⊗ H⁰(X, Ω¹)` for a bundle on `X`, built by contracting the
/// Chern form with each tangent basis vector.
pub fn chern_class_tensor(b: &AppellHumbertBundle) -> ExtClass {
    let g = b.dim();
    let form = chern_form(b.hermitian());
    let columns: Vec<Vector> = ExactMatrix::identity(g)
        .to_rows()
        .iter()
        .map(|e| contract_and_project(&form, e).expect("bidegree (1,1)"))
        .collect();
    ExtClass {
        base: Base::Torus,
        fiber: Fiber::FormsOnBase,
        matrix: ExactMatrix::from_columns(&columns, g).expect("length g"),
    }
}

/// Class of the moduli sequence `0 → A^∨ × H⁰(A, Ω¹) → M → O → 0` on `A^∨`:
/// minus the identity of `V`.
pub fn moduli_extension_class(lattice: &PeriodLattice) -> ExtClass {
    ExtClass {
        base: Base::DualTorus,
        fiber: Fiber::FormsOnDualOfBase,
        matrix: -&ExactMatrix::identity(lattice.dim()),
    }
}

/// The class induced by the canonical isomorphism `H⁰(A, TA) ≅ H¹(A^∨, O)`: the identity.
pub fn canonical_class(lattice: &PeriodLattice) -> ExtClass {
    moduli_extension_class(lattice).negate()
}

/// `(Id ⊗ f)(e)` for `f : F → F'`, given as a `dim F' × dim F` matrix.
pub fn pushforward(e: &ExtClass, f: &ExactMatrix, target: Fiber) -> Result<ExtClass, ExtError> {
    if f.cols() != e.matrix.cols() {
        return Err(ExtError::Shape(LinalgError::ShapeMismatch { left: f.shape(), right: e.matrix.shape() }));
    }
    Ok(ExtClass { base: e.base, fiber: target, matrix: e.matrix.checked_mul(&f.transpose())? })
}

/// Both sides of the pushout identity for a line bundle on `A^∨`.
#[derive(Clone, Debug, Serialize)]
pub struct Prop1Report {
    /// `φ*_L : H⁰(A, Ω¹) → H⁰(A^∨, Ω¹)` obtained from the translation map.
    pub phi_star: ExactMatrix,
    /// Pushforward of the moduli class along `φ*_L`; the class of `W`.
    pub delta_tilde: ExtClass,
    /// Pushforward of the canonical class along `φ*_L`.
    pub c_tilde: ExtClass,
    /// `c₁(L)`, the class of the dual Atiyah sequence.
    pub atiyah: ExtClass,
    pub holds: bool,
}

/// Checks `δ̃₀ = −c̃₀ = −c₁(L)` for `L` on `A^∨`, where `A` is the torus whose
/// dual is `L`'s lattice.
pub fn prop1_check(l: &AppellHumbertBundle) -> Result<Prop1Report, ExtError> {
    let a = dual_lattice(l.lattice());
    // φ_L : T(A^∨) → T(A) from x ↦ τ_x^*L ⊗ L^*; its dual pulls back forms.
    let phi = phi_from_translations(l, 2)?;
    let phi_star = phi.transpose();
    let delta_tilde = pushforward(&moduli_extension_class(&a), &phi_star, Fiber::FormsOnBase)?;
    let c_tilde = pushforward(&canonical_class(&a), &phi_star, Fiber::FormsOnBase)?;
    let mut atiyah = chern_class_tensor(l);
    atiyah.base = Base::DualTorus;
    let holds = delta_tilde == atiyah.negate() && c_tilde == atiyah;
    Ok(Prop1Report { phi_star, delta_tilde, c_tilde, atiyah, holds })
}

/// `true` iff the identity element of `H¹ ⊗ F` has been scaled by exactly `s`.
pub fn is_scalar_identity(e: &ExtClass, s: &GaussianRational) -> bool {
    let n = e.matrix.rows();
    e.matrix.is_square() && e.matrix == ExactMatrix::identity(n).scale(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line_bundles::phi_from_hermitian;
    use num_rational::BigRational;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> ExactMatrix {
        let v: Vec<Vector> = rows.iter().map(|r| r.iter().map(|s| gr(s)).collect()).collect();
        ExactMatrix::from_rows(&v, v[0].len()).unwrap()
    }

    fn bundle(lattice: PeriodLattice, h: ExactMatrix) -> AppellHumbertBundle {
        let n = lattice.rank();
        AppellHumbertBundle::new(lattice, h, vec![BigRational::zero(); n]).unwrap()
    }

    #[test]
    fn chern_form_evaluates_to_e() {
        let h = HermitianForm::new(mat(&[&["2", "1+i"], &["1-i", "3"]])).unwrap();
        let form = chern_form(&h);
        let vs = [vec![gr("1"), gr("0")], vec![gr("i"), gr("2")], vec![gr("1/2-i"), gr("3i")]];
        for v in &vs {
            for w in &vs {
                let value = form.evaluate(v, w).unwrap();
                assert_eq!(value, GaussianRational::real(h.imaginary_part(v, w)));
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let zero = InvariantForm::zero(2, 1, 1);
        assert_eq!(contract_and_project(&zero, &[gr("1"), gr("i")]).unwrap(), vec![gr("0"), gr("0")]);
        let h1 = HermitianForm::new(mat(&[&["1"]])).unwrap();
        assert_eq!(contract_and_project(&chern_form(&h1), &[gr("1")]).unwrap(), vec![gr("1")]);
        let wrong = InvariantForm::zero(2, 2, 0);
        assert!(matches!(contract_and_project(&wrong, &[gr("1"), gr("0")]), Err(ExtError::WrongBidegree { .. })));
    }

    #[test]
    fn contraction_is_complex_linear() {
        let h = HermitianForm::new(mat(&[&["2", "1+i"], &["1-i", "3"]])).unwrap();
        let form = chern_form(&h);
        let v = [gr("1-i"), gr("2")];
        let w = [gr("1/3"), gr("i")];
        let (a, b) = (gr("2+i"), gr("-1/2"));
        let combo: Vec<_> = v.iter().zip(&w).map(|(x, y)| &(&a * x) + &(&b * y)).collect();
        let lhs = contract_and_project(&form, &combo).unwrap();
        let cv = contract_and_project(&form, &v).unwrap();
        let cw = contract_and_project(&form, &w).unwrap();
        let rhs: Vec<_> = cv.iter().zip(&cw).map(|(x, y)| &(&a * x) + &(&b * y)).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_product_signs() {
        // ι_{∂1}(dz0 ∧ dz1 ∧ dz̄0) = −dz0 ∧ dz̄0
        let mut f = InvariantForm::zero(2, 2, 1);
        f.add_term(&[0, 1], &[0], &gr("1"));
        let out = f.interior_product(&[gr("0"), gr("1")]).unwrap();
        assert_eq!(out.coeff(&[0], &[0]), gr("-1"));
        let mut g = InvariantForm::zero(2, 2, 0);
        g.add_term(&[1, 0], &[], &gr("1"));
        assert_eq!(g.coeff(&[0, 1], &[]), gr("-1"));
    }

    #[test]
    fn moduli_class_is_minus_identity() {
        let one = moduli_extension_class(&PeriodLattice::standard(1));
        assert_eq!(one.matrix, mat(&[&["-1"]]));
        let three = moduli_extension_class(&PeriodLattice::standard(3));
        assert!(is_scalar_identity(&three, &gr("-1")));
        assert!(is_scalar_identity(&canonical_class(&PeriodLattice::standard(3)), &gr("1")));
        assert_ne!(three, canonical_class(&PeriodLattice::standard(3)));
    }

    #[test]
    fn pushforward_identity_zero_and_functoriality() {
        let e = ExtClass { base: Base::Torus, fiber: Fiber::FormsOnBase, matrix: mat(&[&["1", "i"], &["2", "0"]]) };
        assert_eq!(pushforward(&e, &ExactMatrix::identity(2), Fiber::FormsOnBase).unwrap().matrix, e.matrix);
        assert!(pushforward(&e, &ExactMatrix::zeros(3, 2), Fiber::FormsOnBase).unwrap().is_split());
        let f = mat(&[&["1", "2"], &["0", "i"], &["1", "1"]]);
        let g = mat(&[&["0", "1"], &["1", "1"]]);
        let composed = pushforward(&e, &(&f * &g), Fiber::FormsOnBase).unwrap();
        let stepwise = pushforward(&pushforward(&e, &g, Fiber::FormsOnBase).unwrap(), &f, Fiber::FormsOnBase).unwrap();
        assert_eq!(composed, stepwise);
        assert!(pushforward(&e, &ExactMatrix::zeros(2, 3), Fiber::FormsOnBase).is_err());
    }

    #[test]
    fn chern_class_matches_phi() {
        let b = bundle(PeriodLattice::standard(2), mat(&[&["2", "1+i"], &["1-i", "3"]]));
        assert_eq!(chern_class_tensor(&b).matrix, phi_from_hermitian(&b));
        assert!(chern_class_tensor(&AppellHumbertBundle::trivial(PeriodLattice::standard(2))).is_split());
    }

    #[test]
    fn prop1_examples() {
        let flat = AppellHumbertBundle::trivial(dual_lattice(&PeriodLattice::standard(1)));
        let r = prop1_check(&flat).unwrap();
        assert!(r.holds && r.delta_tilde.is_split() && r.atiyah.is_split());

        let l = bundle(dual_lattice(&PeriodLattice::standard(1)), mat(&[&["1"]]));
        let r = prop1_check(&l).unwrap();
        assert!(r.holds);
        assert_eq!(r.atiyah.matrix, mat(&[&["1"]]));
        assert_eq!(r.delta_tilde.matrix, mat(&[&["-1"]]));
    }
}
