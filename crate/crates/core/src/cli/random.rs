//! Seeded generation of valid Appell–Humbert data with a prescribed radical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact_linalg::{ExactMatrix, GaussianRational, Vector};
use crate::line_bundles::{radical, AppellHumbertBundle};
use crate::torus::PeriodLattice;

pub const MAX_RANDOM_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("need 1 ≤ g ≤ {MAX_RANDOM_DIM} and k ≤ g, got g = {g}, k = {k}")]
    Infeasible { g: usize, k: usize },
    #[error("type has {found} entries for g = {g}")]
    TypeLength { g: usize, found: usize },
    #[error("generated bundle failed a post-construction check: {0}")]
    Unsound(String),
}

fn gaussian_unit(rng: &mut ChaCha8Rng) -> GaussianRational {
    let (re, im) = *[(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (2, 0)].choose(rng).expect("nonempty");
    GaussianRational::from_ints(re, im)
}

/// Product of a permutation and a few elementary transvections with
/// Gaussian-integer entries; invertible over `ℤ[i]`.
fn gaussian_unimodular(g: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let mut perm: Vec<usize> = (0..g).collect();
    perm.shuffle(rng);
    let mut m = ExactMatrix::from_fn(g, g, |r, c| if perm[r] == c { GaussianRational::from(1) } else { GaussianRational::zero() });
    if g == 1 {
        if rng.gen_bool(0.5) {
            m = m.scale(&GaussianRational::i());
        }
        return m;
    }
    for _ in 0..rng.gen_range(1..=g + 1) {
        let r = rng.gen_range(0..g);
        let mut c = rng.gen_range(0..g - 1);
        if c >= r {
            c += 1;
        }
        let mut t = ExactMatrix::identity(g);
        t[(r, c)] = gaussian_unit(rng);
        m = &t * &m;
    }
    m
}

/// Random element of `GL_n(ℤ)` as a product of integer transvections, sign
/// flips and a permutation.
fn integer_unimodular(n: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = ExactMatrix::from_fn(n, n, |r, c| {
        if perm[r] == c {
            GaussianRational::from(if rng.gen_bool(0.25) { -1 } else { 1 })
        } else {
            GaussianRational::zero()
        }
    });
    for _ in 0..rng.gen_range(1..=n) {
        let r = rng.gen_range(0..n);
        let mut c = rng.gen_range(0..n - 1);
        if c >= r {
            c += 1;
        }
        let mut t = ExactMatrix::identity(n);
        t[(r, c)] = GaussianRational::from(*[-2i64, -1, 1, 2].choose(rng).expect("nonempty"));
        m = &t * &m;
    }
    m
}

fn random_chi(rank: usize, rng: &mut ChaCha8Rng) -> Vec<BigRational> {
    (0..rank)
        .map(|_| {
            let q: i64 = rng.gen_range(1..=4);
            let p: i64 = rng.gen_range(0..2 * q);
            BigRational::new(BigInt::from(p), BigInt::from(q))
        })
        .collect()
}

/// Moves `(Λ_std, H)` to `(T·Λ_std, (T⁻¹)ᵀ H conj(T⁻¹))` with generators
/// mixed by a random `GL_{2g}(ℤ)` element. `E` on generators changes by the
/// integral congruence only, so integrality and the Smith type survive.
fn transport(h_std: &ExactMatrix, rng: &mut ChaCha8Rng) -> (PeriodLattice, ExactMatrix) {
    let g = h_std.rows();
    let mut t = gaussian_unimodular(g, rng);
    let s = match rng.gen_range(0..4) {
        0 => GaussianRational::from(1),
        1 => GaussianRational::from(2),
        2 => GaussianRational::ratio(1, 2),
        _ => GaussianRational::from_ints(1, 1),
    };
    t = t.scale(&s);
    let t_inv = t.inverse().expect("invertible");
    let h = &(&t_inv.transpose() * h_std) * &t_inv.conj();
    let std = PeriodLattice::standard(g);
    let moved: Vec<Vector> = std.generators().iter().map(|l| t.mul_vec(l).expect("length g")).collect();
    let u = integer_unimodular(2 * g, rng);
    let mixed: Vec<Vector> = (0..2 * g)
        .map(|i| {
            let mut v = vec![GaussianRational::zero(); g];
            for (j, lambda) in moved.iter().enumerate() {
                let c = &u[(i, j)];
                if !c.is_zero() {
                    for (o, l) in v.iter_mut().zip(lambda) {
                        *o += &(c * l);
                    }
                }
            }
            v
        })
        .collect();
    (PeriodLattice::new(mixed).expect("unimodular image of a lattice"), h)
}

/// A bundle whose `E` has Smith type `(d_1, d_1, …, d_g, d_g)` up to
/// reordering, with `H` positive semidefinite when all `d_i ≥ 0`.
pub fn random_bundle_of_type(diag: &[u32], seed: u64) -> Result<AppellHumbertBundle, GeneratorError> {
    let g = diag.len();
    if g == 0 || g > MAX_RANDOM_DIM {
        return Err(GeneratorError::TypeLength { g, found: diag.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = ExactMatrix::from_fn(g, g, |r, c| if r == c { GaussianRational::from(i64::from(diag[r])) } else { GaussianRational::zero() });
    let q = gaussian_unimodular(g, &mut rng);
    let h_std = &(&q.conj_transpose() * &d) * &q;
    let (lattice, h) = transport(&h_std, &mut rng);
    let chi = random_chi(2 * g, &mut rng);
    AppellHumbertBundle::new(lattice, h, chi).map_err(|e| GeneratorError::Unsound(e.to_string()))
}

/// A pseudo-random valid bundle on a `g`-dimensional torus whose Hermitian form
/// has radical of dimension exactly `k`.
pub fn random_bundle(g: usize, k: usize, seed: u64) -> Result<AppellHumbertBundle, GeneratorError> {
    if g == 0 || g > MAX_RANDOM_DIM || k > g {
        return Err(GeneratorError::Infeasible { g, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000_0000_0000);
    let diag: Vec<u32> = (0..g).map(|i| if i < g - k { rng.gen_range(1..=3) } else { 0 }).collect();
    let b = random_bundle_of_type(&diag, rng.gen())?;
    let found = radical(b.hermitian()).dim();
    if found != k {
        return Err(GeneratorError::Unsound(format!("radical dimension {found}, requested {k}")));
    }
    Ok(b)
}
