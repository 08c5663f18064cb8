//! Rank-one λ-connections and the Riemann–Hilbert map onto `(ℂ*)^{2g}`.
//!
//! A λ-connection on a degree-zero bundle is stored in the flat-unitary
//! splitting as `(x, c, ω)`: `x` represents the bundle `L ∈ V̄*/Λ̄`, `c` is the
//! scale in the Leibniz rule, and `D = c·∇^L + ω` with `ω(v) = Σ ω_k v_k` an
//! invariant (1,0)-form.
//!
//! This module works in `f64`. Monodromy of a genuine connection (`c = 1`) is
//! `t(λ) = e^{2πi·Im x(λ)} · e^{−ω(λ)}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::torus::PeriodLattice;

/// Tolerance for unit scale, lattice-coset equality, and round trips.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error("monodromy is defined for c = 1, got c = {0}")]
    NotAConnection(Complex64),
    #[error("connections live over different points of the dual torus")]
    BasePointMismatch,
    #[error("character value at generator {0} is zero")]
    ZeroValue(usize),
    #[error("expected {expected} entries, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("character value at generator {0} is not finite")]
    NotFinite(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaConnection {
    /// Coefficients of the antilinear functional `v ↦ Σ x_k conj(v_k)`.
    pub x: Vec<Complex64>,
    pub c: Complex64,
    /// Coefficients of the linear functional `v ↦ Σ ω_k v_k`.
    pub omega: Vec<Complex64>,
}

/// A homomorphism `Λ → ℂ*`, given on the lattice generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Character {
    values: Vec<Complex64>,
}

impl Character {
    pub fn new(values: Vec<Complex64>) -> Result<Self, MonodromyError> {
        for (j, t) in values.iter().enumerate() {
            if !(t.re.is_finite() && t.im.is_finite()) {
                return Err(MonodromyError::NotFinite(j));
            }
            if t.norm() == 0.0 {
                return Err(MonodromyError::ZeroValue(j));
            }
        }
        Ok(Character { values })
    }

    pub fn trivial(rank: usize) -> Self {
        Character { values: vec![Complex64::new(1.0, 0.0); rank] }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Largest per-generator distance to another character.
    pub fn max_distance(&self, other: &Character) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

fn float_generators(lattice: &PeriodLattice) -> Vec<Vec<Complex64>> {
    lattice.generators().iter().map(|g| g.iter().map(|z| z.to_complex64()).collect()).collect()
}

fn linear(coeffs: &[Complex64], v: &[Complex64]) -> Complex64 {
    coeffs.iter().zip(v).map(|(c, z)| c * z).sum()
}

fn antilinear(coeffs: &[Complex64], v: &[Complex64]) -> Complex64 {
    coeffs.iter().zip(v).map(|(c, z)| c * z.conj()).sum()
}

fn check_len(expected: usize, found: usize) -> Result<(), MonodromyError> {
    if expected == found {
        Ok(())
    } else {
        Err(MonodromyError::Dimension { expected, found })
    }
}

/// Distance from `r` to the nearest integer.
fn integer_distance(r: f64) -> f64 {
    (r - r.round()).abs()
}

/// Solves the square real system `a · u = b` by partial-pivot elimination.
fn solve_real(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("nonempty");
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut u = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * u[k]).sum();
        u[row] = (b[row] - s) / a[row][row];
    }
    u
}

/// One real row per generator. With `linear_part` the unknowns are
/// `(Re ω, Im ω)` and the row computes `Re ω(λ)`; otherwise they are
/// `(Re x, Im x)` and the row computes `Im x(λ)`.
fn generator_system(gens: &[Vec<Complex64>], linear_part: bool) -> Vec<Vec<f64>> {
    gens.iter()
        .map(|lambda| {
            let mut row: Vec<f64> = Vec::with_capacity(2 * lambda.len());
            if linear_part {
                // Re((p + iq) λ) = p Re λ − q Im λ
                row.extend(lambda.iter().map(|z| z.re));
                row.extend(lambda.iter().map(|z| -z.im));
            } else {
                // Im((a + ib) conj λ) = b Re λ − a Im λ
                row.extend(lambda.iter().map(|z| -z.im));
                row.extend(lambda.iter().map(|z| z.re));
            }
            row
        })
        .collect()
}

fn recombine(u: &[f64]) -> Vec<Complex64> {
    let g = u.len() / 2;
    (0..g).map(|k| Complex64::new(u[k], u[g + k])).collect()
}

impl LambdaConnection {
    pub fn new(x: Vec<Complex64>, c: Complex64, omega: Vec<Complex64>) -> Result<Self, MonodromyError> {
        check_len(x.len(), omega.len())?;
        Ok(LambdaConnection { x, c, omega })
    }

    /// `(0, 1, 0)`: the trivial bundle with its trivial connection.
    pub fn trivial(g: usize) -> Self {
        LambdaConnection { x: vec![Complex64::new(0.0, 0.0); g], c: Complex64::new(1.0, 0.0), omega: vec![Complex64::new(0.0, 0.0); g] }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `e^{2πi·Im x(λ_j)}` on each generator.
    pub fn unitary_character(&self, lattice: &PeriodLattice) -> Result<Character, MonodromyError> {
        check_len(lattice.dim(), self.dim())?;
        let values = float_generators(lattice)
            .iter()
            .map(|lambda| Complex64::from_polar(1.0, 2.0 * PI * antilinear(&self.x, lambda).im))
            .collect();
        Ok(Character { values })
    }
}

/// Sum in the fiber over a common base point.
pub fn add(lattice: &PeriodLattice, a: &LambdaConnection, b: &LambdaConnection) -> Result<LambdaConnection, MonodromyError> {
    check_len(a.dim(), b.dim())?;
    if !same_dual_point(lattice, &a.x, &b.x, DEFAULT_TOLERANCE)? {
        return Err(MonodromyError::BasePointMismatch);
    }
    Ok(LambdaConnection {
        x: a.x.clone(),
        c: a.c + b.c,
        omega: a.omega.iter().zip(&b.omega).map(|(p, q)| p + q).collect(),
    })
}

pub fn scale(alpha: Complex64, a: &LambdaConnection) -> LambdaConnection {
    LambdaConnection { x: a.x.clone(), c: alpha * a.c, omega: a.omega.iter().map(|w| alpha * w).collect() }
}

/// The scale `c`, which is the only algebraic invariant of a λ-connection.
pub fn forgetful(a: &LambdaConnection) -> Complex64 {
    a.c
}

pub fn monodromy(lattice: &PeriodLattice, a: &LambdaConnection, tol: f64) -> Result<Character, MonodromyError> {
    if (a.c - Complex64::new(1.0, 0.0)).norm() > tol {
        return Err(MonodromyError::NotAConnection(a.c));
    }
    let unitary = a.unitary_character(lattice)?;
    let values = float_generators(lattice)
        .iter()
        .zip(unitary.values())
        .map(|(lambda, u)| u * (-linear(&a.omega, lambda)).exp())
        .collect();
    Ok(Character { values })
}

/// Inverse of [`monodromy`]: the unique `(x, 1, ω)` with the given character,
/// with `x` normalised so that `2π·Im x(λ_j) ∈ [0, 2π)`.
pub fn character_to_connection(lattice: &PeriodLattice, t: &Character) -> Result<LambdaConnection, MonodromyError> {
    check_len(lattice.rank(), t.values().len())?;
    let gens = float_generators(lattice);
    let log_moduli: Vec<f64> = t.values().iter().map(|z| -z.norm().ln()).collect();
    let omega = recombine(&solve_real(generator_system(&gens, true), log_moduli));
    let phases: Vec<f64> = gens
        .iter()
        .zip(t.values())
        .map(|(lambda, tj)| {
            let u = tj * linear(&omega, lambda).exp();
            u.arg().rem_euclid(2.0 * PI) / (2.0 * PI)
        })
        .collect();
    let x = recombine(&solve_real(generator_system(&gens, false), phases));
    Ok(LambdaConnection { x, c: Complex64::new(1.0, 0.0), omega })
}

/// A point of `V̄*/Λ̄`, recorded by its pairings `Im x(λ_j)` reduced to `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualTorusPoint {
    pub pairings: Vec<f64>,
}

impl DualTorusPoint {
    pub fn from_pairings(values: impl IntoIterator<Item = f64>) -> Self {
        DualTorusPoint { pairings: values.into_iter().map(|p| p.rem_euclid(1.0)).map(|p| if p >= 1.0 { 0.0 } else { p }).collect() }
    }

    pub fn of_functional(lattice: &PeriodLattice, x: &[Complex64]) -> Self {
        Self::from_pairings(float_generators(lattice).iter().map(|lambda| antilinear(x, lambda).im))
    }

    pub fn is_origin(&self, tol: f64) -> bool {
        self.pairings.iter().all(|&p| integer_distance(p) <= tol)
    }

    pub fn same_point(&self, other: &DualTorusPoint, tol: f64) -> bool {
        self.pairings.len() == other.pairings.len()
            && self.pairings.iter().zip(&other.pairings).all(|(a, b)| integer_distance(a - b) <= tol)
    }

    /// `true` iff `n·x` is the origin.
    pub fn is_torsion_of_order_dividing(&self, n: u32, tol: f64) -> bool {
        self.pairings.iter().all(|&p| integer_distance(p * f64::from(n)) <= tol)
    }
}

/// `x ≡ y` modulo the dual lattice.
pub fn same_dual_point(lattice: &PeriodLattice, x: &[Complex64], y: &[Complex64], tol: f64) -> Result<bool, MonodromyError> {
    check_len(lattice.dim(), x.len())?;
    check_len(lattice.dim(), y.len())?;
    let diff: Vec<Complex64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    Ok(DualTorusPoint::of_functional(lattice, &diff).is_origin(tol))
}

/// The covering map `ω ↦` the bundle with unitary character `e^{ω̄(λ) − ω(λ)} = e^{−2i·Im ω(λ)}`.
pub fn psi_cover(lattice: &PeriodLattice, omega: &[Complex64]) -> Result<DualTorusPoint, MonodromyError> {
    check_len(lattice.dim(), omega.len())?;
    Ok(DualTorusPoint::from_pairings(float_generators(lattice).iter().map(|lambda| -linear(omega, lambda).im / PI)))
}

/// Deck criterion: `Im(ω − ω′)(λ_j) ∈ πℤ` for every generator.
pub fn psi_same_fiber(lattice: &PeriodLattice, omega: &[Complex64], other: &[Complex64], tol: f64) -> Result<bool, MonodromyError> {
    check_len(lattice.dim(), omega.len())?;
    check_len(lattice.dim(), other.len())?;
    let diff: Vec<Complex64> = omega.iter().zip(other).map(|(a, b)| a - b).collect();
    Ok(float_generators(lattice).iter().all(|lambda| integer_distance(linear(&diff, lambda).im / PI) <= tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn fiber_operations() {
        let l = PeriodLattice::standard(1);
        let x = vec![c(0.25, 0.0)];
        let a = LambdaConnection::new(x.clone(), c(1.0, 0.0), vec![c(0.5, 1.0)]).unwrap();
        let zero = LambdaConnection::new(x.clone(), c(0.0, 0.0), vec![c(0.0, 0.0)]).unwrap();
        assert_eq!(add(&l, &a, &zero).unwrap(), a);
        let doubled = scale(c(2.0, 0.0), &a);
        assert_eq!((doubled.c, doubled.omega[0]), (c(2.0, 0.0), c(1.0, 2.0)));
        let b = LambdaConnection::new(x.clone(), c(2.0, 0.0), vec![c(-1.0, 0.0)]).unwrap();
        let s = add(&l, &a, &b).unwrap();
        assert_eq!((s.c, s.omega[0]), (c(3.0, 0.0), c(-0.5, 1.0)));
        let elsewhere = LambdaConnection::new(vec![c(0.3, 0.0)], c(1.0, 0.0), vec![c(0.0, 0.0)]).unwrap();
        assert_eq!(add(&l, &a, &elsewhere), Err(MonodromyError::BasePointMismatch));
        // representatives differing by a dual-lattice vector name the same bundle
        let shifted = LambdaConnection::new(vec![c(0.25, 1.0)], c(1.0, 0.0), vec![c(0.0, 0.0)]).unwrap();
        assert!(add(&l, &a, &shifted).is_ok());
    }

    #[test]
    fn forgetful_examples() {
        let higgs = LambdaConnection::new(vec![c(0.1, 0.2)], c(0.0, 0.0), vec![c(3.0, 0.0)]).unwrap();
        assert_eq!(forgetful(&higgs), c(0.0, 0.0));
        assert_eq!(forgetful(&LambdaConnection::trivial(2)), c(1.0, 0.0));
        let alpha = c(0.5, -2.0);
        assert_eq!(forgetful(&scale(alpha, &LambdaConnection::trivial(2))), alpha);
    }

    #[test]
    fn monodromy_examples() {
        let l = PeriodLattice::standard(1);
        let t = monodromy(&l, &LambdaConnection::trivial(1), DEFAULT_TOLERANCE).unwrap();
        assert!(t.values().iter().all(|&z| close(z, c(1.0, 0.0))));

        let a = LambdaConnection::new(vec![c(0.0, 0.0)], c(1.0, 0.0), vec![c(1.0, 0.0)]).unwrap();
        let t = monodromy(&l, &a, DEFAULT_TOLERANCE).unwrap();
        assert!(close(t.values()[0], c(-1.0, 0.0).exp()));
        assert!(close(t.values()[1], c(0.0, -1.0).exp()));

        // Im x(1) = Im(x̄-coefficient) = 1/2
        let half = LambdaConnection::new(vec![c(0.0, 0.5)], c(1.0, 0.0), vec![c(0.0, 0.0)]).unwrap();
        assert!(close(monodromy(&l, &half, DEFAULT_TOLERANCE).unwrap().values()[0], c(-1.0, 0.0)));

        let higgs = scale(c(0.0, 0.0), &a);
        assert!(matches!(monodromy(&l, &higgs, DEFAULT_TOLERANCE), Err(MonodromyError::NotAConnection(_))));
    }

    #[test]
    fn inverse_examples() {
        let l = PeriodLattice::standard(1);
        let a = character_to_connection(&l, &Character::trivial(2)).unwrap();
        assert!(close(a.x[0], c(0.0, 0.0)) && close(a.omega[0], c(0.0, 0.0)) && a.c == c(1.0, 0.0));

        let t = Character::new(vec![c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        let a = character_to_connection(&l, &t).unwrap();
        assert!(close(a.omega[0], c(-(2f64.ln()), 0.0)));
        let expected = vec![c(2f64.ln() / (2.0 * PI), 0.0)];
        assert!(same_dual_point(&l, &a.x, &expected, 1e-12).unwrap());
        assert!(monodromy(&l, &a, DEFAULT_TOLERANCE).unwrap().max_distance(&t) < 1e-12);

        assert_eq!(Character::new(vec![c(1.0, 0.0), c(0.0, 0.0)]), Err(MonodromyError::ZeroValue(1)));
    }

    #[test]
    fn round_trip_on_skew_lattice() {
        let gr = |s: &str| s.parse().unwrap();
        let l = PeriodLattice::new(vec![
            vec![gr("1"), gr("0")],
            vec![gr("1/2"), gr("2")],
            vec![gr("i"), gr("1+i")],
            vec![gr("0"), gr("3*i")],
        ])
        .unwrap();
        let a = LambdaConnection::new(vec![c(0.3, -1.2), c(2.0, 0.7)], c(1.0, 0.0), vec![c(-0.4, 0.9), c(0.1, 0.2)]).unwrap();
        let t = monodromy(&l, &a, DEFAULT_TOLERANCE).unwrap();
        let back = character_to_connection(&l, &t).unwrap();
        for (p, q) in back.omega.iter().zip(&a.omega) {
            assert!((p - q).norm() < 1e-12);
        }
        assert!(same_dual_point(&l, &back.x, &a.x, 1e-12).unwrap());
    }

    #[test]
    fn psi_examples() {
        let l = PeriodLattice::standard(1);
        assert!(psi_cover(&l, &[c(0.0, 0.0)]).unwrap().is_origin(1e-12));
        let deck = [c(PI, 0.0)];
        assert!(psi_cover(&l, &deck).unwrap().is_origin(1e-12));
        assert!(psi_same_fiber(&l, &deck, &[c(0.0, 0.0)], 1e-12).unwrap());
        let half = psi_cover(&l, &[c(PI / 2.0, 0.0)]).unwrap();
        assert!(!half.is_origin(1e-6));
        assert!(half.is_torsion_of_order_dividing(2, 1e-12));
        assert!(!psi_same_fiber(&l, &[c(PI / 2.0, 0.0)], &[c(0.0, 0.0)], 1e-6).unwrap());
    }

    #[test]
    fn psi_matches_unitary_part() {
        // the unitary character of ψ(ω) is e^{−2i Im ω(λ)}
        let l = PeriodLattice::standard(2);
        let omega = [c(0.3, 1.1), c(-0.7, 0.25)];
        let p = psi_cover(&l, &omega).unwrap();
        for (lambda, pair) in float_generators(&l).iter().zip(&p.pairings) {
            let expected = Complex64::from_polar(1.0, -2.0 * linear(&omega, lambda).im);
            assert!(close(Complex64::from_polar(1.0, 2.0 * PI * pair), expected));
        }
    }
}
