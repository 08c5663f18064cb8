//! Period lattices, the torus `A = V/Λ`, its dual `A^∨ = V̄*/Λ̄`, and torsion points.
//!
//! Vectors of `V = ℂ^g` are plain coordinate vectors. A point of `V̄*` is an
//! [`AntilinearFunctional`] `ℓ_c(z) = Σ c_j·conj(z_j)` stored by its coefficient
//! vector `c`. The duality pairing is `⟨ℓ, v⟩ = Im ℓ(v)`; the dual lattice is the
//! set of functionals whose pairing with every lattice vector is an integer.
//!
//! Since `V̄*` is itself a copy of `ℂ^g` in these coordinates, a dual lattice is
//! returned as an ordinary [`PeriodLattice`], and everything that accepts a
//! lattice works unchanged on `A^∨`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::{complexify, realify, ExactMatrix, GaussianRational, LinalgError, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("a period lattice needs complex dimension at least 1")]
    ZeroDimension,
    #[error("expected {expected} generators for g = {g}, found {found}")]
    GeneratorCount { g: usize, expected: usize, found: usize },
    #[error("generator {index} has {found} coordinates, expected {expected}")]
    GeneratorLength { index: usize, expected: usize, found: usize },
    #[error("generators are linearly dependent over ℝ")]
    Degenerate,
    #[error("torsion order must be positive")]
    ZeroOrder,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A rank-2g lattice in `ℂ^g` given by exact generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vector>", into = "Vec<Vector>")]
pub struct PeriodLattice {
    g: usize,
    generators: Vec<Vector>,
}

impl TryFrom<Vec<Vector>> for PeriodLattice {
    type Error = TorusError;
    fn try_from(generators: Vec<Vector>) -> Result<Self, TorusError> {
        PeriodLattice::new(generators)
    }
}

impl From<PeriodLattice> for Vec<Vector> {
    fn from(l: PeriodLattice) -> Self {
        l.generators
    }
}

impl PeriodLattice {
    pub fn new(generators: Vec<Vector>) -> Result<Self, TorusError> {
        let g = generators.first().map_or(0, Vec::len);
        if g == 0 {
            return Err(TorusError::ZeroDimension);
        }
        if generators.len() != 2 * g {
            return Err(TorusError::GeneratorCount { g, expected: 2 * g, found: generators.len() });
        }
        for (index, v) in generators.iter().enumerate() {
            if v.len() != g {
                return Err(TorusError::GeneratorLength { index, expected: g, found: v.len() });
            }
        }
        let lattice = PeriodLattice { g, generators };
        if lattice.real_matrix().determinant()?.is_zero() {
            return Err(TorusError::Degenerate);
        }
        Ok(lattice)
    }

    /// `ℤ^g + iℤ^g` with generators `e_1, …, e_g, i·e_1, …, i·e_g`.
    pub fn standard(g: usize) -> Self {
        let generators = (0..2 * g)
            .map(|j| {
                let mut v = vec![GaussianRational::zero(); g];
                v[j % g] = if j < g { GaussianRational::one() } else { GaussianRational::i() };
                v
            })
            .collect();
        PeriodLattice { g, generators }
    }

    pub fn dim(&self) -> usize {
        self.g
    }

    pub fn rank(&self) -> usize {
        2 * self.g
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn generator(&self, j: usize) -> &Vector {
        &self.generators[j]
    }

    /// 2g×2g rational matrix whose row `j` is `(Re λ_j, Im λ_j)`.
    pub fn real_matrix(&self) -> ExactMatrix {
        let rows: Vec<Vector> = self.generators.iter().map(|v| realify(v)).collect();
        ExactMatrix::from_rows(&rows, 2 * self.g).expect("generator lengths checked")
    }

    /// `Σ t_j λ_j` for real lattice coordinates `t`.
    pub fn point(&self, coords: &[BigRational]) -> Vector {
        let mut out = vec![GaussianRational::zero(); self.g];
        for (t, lambda) in coords.iter().zip(&self.generators) {
            if t.is_zero() {
                continue;
            }
            let t = GaussianRational::real(t.clone());
            for (o, l) in out.iter_mut().zip(lambda) {
                *o += &(&t * l);
            }
        }
        out
    }

    /// Real coordinates of `v` with respect to the generators.
    pub fn coordinates(&self, v: &[GaussianRational]) -> Result<Vec<BigRational>, TorusError> {
        let inv = self.real_matrix().transpose().inverse()?;
        Ok(inv.mul_vec(&realify(v))?.into_iter().map(|z| z.re).collect())
    }

    /// Whether two generating sets define the same subgroup of `ℂ^g`.
    pub fn same_lattice(&self, other: &PeriodLattice) -> bool {
        if self.g != other.g {
            return false;
        }
        // Change of basis T with T·other = self must be integral and unimodular.
        let Ok(inv) = other.real_matrix().inverse() else {
            return false;
        };
        let t = &self.real_matrix() * &inv;
        let integral = (0..t.rows()).all(|r| (0..t.cols()).all(|c| t[(r, c)].to_integer().is_some()));
        integral && t.determinant().ok().and_then(|d| d.to_integer()).is_some_and(|d| d.abs().is_one())
    }
}

/// `ℓ_c(z) = Σ c_j·conj(z_j)`, a point of `V̄*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AntilinearFunctional {
    pub coeffs: Vector,
}

impl AntilinearFunctional {
    pub fn new(coeffs: Vector) -> Self {
        AntilinearFunctional { coeffs }
    }

    pub fn zero(g: usize) -> Self {
        AntilinearFunctional { coeffs: vec![GaussianRational::zero(); g] }
    }

    pub fn eval(&self, v: &[GaussianRational]) -> GaussianRational {
        self.coeffs.iter().zip(v).map(|(c, z)| c * &z.conj()).sum()
    }

    /// `⟨ℓ, v⟩ = Im ℓ(v)`.
    pub fn pairing(&self, v: &[GaussianRational]) -> BigRational {
        self.eval(v).im
    }
}

/// `Im ℓ(v)`.
pub fn pairing(ell: &AntilinearFunctional, v: &[GaussianRational]) -> BigRational {
    ell.pairing(v)
}

/// Matrix `Q` of the pairing in real coordinates: `⟨ℓ_c, v⟩ = realify(c)ᵀ · Q · realify(v)`.
fn pairing_form(g: usize) -> ExactMatrix {
    // Im(c·conj z) = Im c·Re z − Re c·Im z
    ExactMatrix::from_fn(2 * g, 2 * g, |r, c| {
        if r < g && c == r + g {
            GaussianRational::from(-1)
        } else if r >= g && c + g == r {
            GaussianRational::from(1)
        } else {
            GaussianRational::zero()
        }
    })
}

/// The basis `ℓ_1, …, ℓ_{2g}` of `V̄*` dual to the generators:
/// `⟨ℓ_k, λ_j⟩ = δ_kj`. These generate the dual lattice.
pub fn dual_basis(lattice: &PeriodLattice) -> Vec<AntilinearFunctional> {
    let g = lattice.dim();
    // rows of C satisfy C · Q · Pᵀ = I
    let qp = &pairing_form(g) * &lattice.real_matrix().transpose();
    let c = qp.inverse().expect("lattice is nondegenerate");
    c.to_rows().iter().map(|row| AntilinearFunctional::new(complexify(row))).collect()
}

/// The dual lattice `Λ̄ ⊂ V̄*`, in antilinear coordinates.
pub fn dual_lattice(lattice: &PeriodLattice) -> PeriodLattice {
    let generators = dual_basis(lattice).into_iter().map(|l| l.coeffs).collect();
    PeriodLattice::new(generators).expect("dual of a nondegenerate lattice is nondegenerate")
}

/// The functional with prescribed pairings against the generators.
pub fn functional_with_pairings(lattice: &PeriodLattice, values: &[BigRational]) -> AntilinearFunctional {
    let basis = dual_basis(lattice);
    let mut coeffs = vec![GaussianRational::zero(); lattice.dim()];
    for (v, l) in values.iter().zip(&basis) {
        let v = GaussianRational::real(v.clone());
        for (o, c) in coeffs.iter_mut().zip(&l.coeffs) {
            *o += &(&v * c);
        }
    }
    AntilinearFunctional::new(coeffs)
}

/// A torsion point of `A`, stored by its lattice coordinates modulo 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionPoint {
    coeffs: Vec<BigRational>,
    order: BigInt,
}

impl TorsionPoint {
    /// Reduces every coordinate into `[0, 1)`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let coeffs: Vec<BigRational> = coeffs.into_iter().map(|c| &c - c.floor()).collect();
        let order = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        TorsionPoint { coeffs, order }
    }

    pub fn origin(rank: usize) -> Self {
        TorsionPoint::new(vec![BigRational::zero(); rank])
    }

    /// `λ_j / n`.
    pub fn generator_fraction(rank: usize, j: usize, n: &BigInt) -> Self {
        let mut coeffs = vec![BigRational::zero(); rank];
        coeffs[j] = BigRational::new(BigInt::one(), n.clone());
        TorsionPoint::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn is_origin(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The representative `x̃ ∈ V` with coordinates in `[0, 1)`.
    pub fn lift(&self, lattice: &PeriodLattice) -> Vector {
        lattice.point(&self.coeffs)
    }

    pub fn add(&self, other: &TorsionPoint) -> TorsionPoint {
        TorsionPoint::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }
}

/// All `n^{2g}` points of `(1/n)Λ/Λ`, lexicographic in the coordinates with the
/// first generator varying slowest.
pub fn torsion_points(lattice: &PeriodLattice, n: u32) -> Result<Vec<TorsionPoint>, TorusError> {
    if n == 0 {
        return Err(TorusError::ZeroOrder);
    }
    let rank = lattice.rank();
    let total = (n as usize).pow(rank as u32);
    let denom = BigInt::from(n);
    Ok((0..total)
        .map(|mut idx| {
            let mut digits = vec![0usize; rank];
            for d in digits.iter_mut().rev() {
                *d = idx % n as usize;
                idx /= n as usize;
            }
            TorsionPoint::new(digits.into_iter().map(|k| BigRational::new(k.into(), denom.clone())).collect())
        })
        .collect())
}
