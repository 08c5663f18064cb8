//! Randomized invariants across the exact and floating layers.

use std::f64::consts::PI;

use abelian_connections::cli::random_bundle;
use abelian_connections::connections_ring::{beta_kernel_dim, function_ring_dimension};
use abelian_connections::exact_linalg::{smith_normal_form, span_equal, ExactMatrix, GaussianRational, Vector};
use abelian_connections::ext_calculus::{pushforward, Base, ExtClass, Fiber};
use abelian_connections::line_bundles::{radical, AppellHumbertBundle};
use abelian_connections::monodromy::{
    character_to_connection, monodromy, psi_cover, psi_same_fiber, same_dual_point, Character, LambdaConnection,
};
use abelian_connections::torus::{dual_basis, dual_lattice, functional_with_pairings, TorsionPoint};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, -6i64..=6, 1i64..=4).prop_map(|(a, b, d)| GaussianRational::from_ints(a, b) / GaussianRational::from(d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(gaussian(), rows * cols)
        .prop_map(move |v| ExactMatrix::from_fn(rows, cols, |r, c| v[r * cols + c].clone()))
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(-9i64..=9, rows * cols)
        .prop_map(move |v| ExactMatrix::from_fn(rows, cols, |r, c| GaussianRational::from(v[r * cols + c])))
}

/// Integer unimodular matrix from a list of transvections.
fn unimodular(n: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec((0..n, 0..n, -3i64..=3), 0..6).prop_map(move |ops| {
        let mut m = ExactMatrix::identity(n);
        for (r, c, k) in ops {
            if r != c {
                let mut t = ExactMatrix::identity(n);
                t[(r, c)] = GaussianRational::from(k);
                m = &t * &m;
            }
        }
        m
    })
}

fn bundle() -> impl Strategy<Value = AppellHumbertBundle> {
    (1usize..=3, 0usize..=3, any::<u64>()).prop_map(|(g, k, seed)| random_bundle(g, k.min(g), seed).unwrap())
}

fn complex(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..=r, -r..=r).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_operations_invert(a in gaussian(), b in gaussian()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a * &b) / &b, a.clone());
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn rank_plus_nullity(m in matrix(3, 4)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), 4);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(3, 3)) {
        prop_assume!(!m.determinant().unwrap().is_zero());
        let inv = m.inverse().unwrap();
        prop_assert_eq!(&m * &inv, ExactMatrix::identity(3));
        prop_assert_eq!(&inv * &m, ExactMatrix::identity(3));
    }

    #[test]
    fn span_equality_is_an_equivalence(a in matrix(2, 3), b in matrix(2, 3), mix in matrix(2, 2)) {
        let va = a.to_rows();
        let vb = b.to_rows();
        prop_assert!(span_equal(&va, &va).unwrap());
        prop_assert_eq!(span_equal(&va, &vb).unwrap(), span_equal(&vb, &va).unwrap());
        // invertible recombinations keep the span
        if !mix.determinant().unwrap().is_zero() {
            let mixed = (&mix * &a).to_rows();
            prop_assert!(span_equal(&va, &mixed).unwrap());
            if span_equal(&va, &vb).unwrap() {
                prop_assert!(span_equal(&mixed, &vb).unwrap());
            }
        }
    }

    #[test]
    fn smith_form_certificate_and_chain(m in int_matrix(4, 4)) {
        let s = smith_normal_form(&m).unwrap();
        prop_assert!(s.verify(&m));
        for w in s.divisors.windows(2) {
            prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(s.divisors.iter().all(|d| *d >= BigInt::zero()));
    }

    #[test]
    fn smith_form_is_invariant_under_unimodular_change(m in int_matrix(4, 4), u in unimodular(4), v in unimodular(4)) {
        let changed = &(&u * &m) * &v;
        prop_assert_eq!(smith_normal_form(&changed).unwrap().divisors, smith_normal_form(&m).unwrap().divisors);
    }

    #[test]
    fn dual_basis_pairs_to_identity(b in bundle()) {
        let lattice = b.lattice();
        for (k, l) in dual_basis(lattice).iter().enumerate() {
            for (j, lambda) in lattice.generators().iter().enumerate() {
                let expected = if j == k { BigRational::one() } else { BigRational::zero() };
                prop_assert_eq!(l.pairing(lambda), expected);
            }
        }
        prop_assert!(dual_lattice(&dual_lattice(lattice)).same_lattice(lattice));
    }

    #[test]
    fn translation_is_an_action(b in bundle(), p in proptest::collection::vec(0i64..6, 6), q in proptest::collection::vec(0i64..6, 6)) {
        let rank = b.lattice().rank();
        let point = |v: &[i64]| TorsionPoint::new(v[..rank].iter().map(|&k| BigRational::new(k.into(), 6.into())).collect());
        let (x, y) = (point(&p), point(&q));
        prop_assert_eq!(b.translate(&x).translate(&y), b.translate(&x.add(&y)));
        prop_assert_eq!(b.translate(&TorsionPoint::origin(rank)), b.clone());
    }

    #[test]
    fn semicharacter_cocycle(b in bundle(), n in proptest::collection::vec(-3i64..=3, 6), m in proptest::collection::vec(-3i64..=3, 6)) {
        let rank = b.lattice().rank();
        let n: Vec<BigInt> = n[..rank].iter().map(|&k| k.into()).collect();
        let m: Vec<BigInt> = m[..rank].iter().map(|&k| k.into()).collect();
        let sum: Vec<BigInt> = n.iter().zip(&m).map(|(a, c)| a + c).collect();
        let e = b.e_matrix();
        let mut cross = BigRational::zero();
        for j in 0..rank {
            for k in 0..rank {
                cross += &e[(j, k)].re * BigRational::from_integer(&n[j] * &m[k]);
            }
        }
        let lhs = b.semicharacter_exponent(&sum);
        let rhs = b.semicharacter_exponent(&n) + b.semicharacter_exponent(&m) + cross;
        let two = BigRational::from_integer(2.into());
        prop_assert!(((lhs - rhs) / two).is_integer());
    }

    #[test]
    fn tensor_with_dual_is_trivial(b in bundle()) {
        let t = b.tensor(&b.dual()).unwrap();
        prop_assert!(t.is_isomorphic(&AppellHumbertBundle::trivial(b.lattice().clone())));
    }

    #[test]
    fn pushforward_is_functorial(e in matrix(2, 3), f in matrix(4, 2), h in matrix(2, 3)) {
        let class = ExtClass { base: Base::Torus, fiber: Fiber::FormsOnBase, matrix: e };
        let composed = pushforward(&class, &(&f * &h), Fiber::FormsOnBase).unwrap();
        let stepwise = pushforward(&pushforward(&class, &h, Fiber::FormsOnBase).unwrap(), &f, Fiber::FormsOnBase).unwrap();
        prop_assert_eq!(composed, stepwise);
    }

    #[test]
    fn kernel_dimension_ignores_rescaling(b in bundle(), num in 1i64..=5, den in 1i64..=5, d in 1usize..=3) {
        let s = BigRational::new(num.into(), den.into());
        let h = b.hermitian();
        prop_assert_eq!(beta_kernel_dim(&h.scaled(&s), d).unwrap(), beta_kernel_dim(h, d).unwrap());
    }

    #[test]
    fn ring_dimension_is_nondecreasing(b in bundle()) {
        let dims: Vec<usize> = (0..=4).map(|d| function_ring_dimension(&b, d).unwrap().dimension).collect();
        prop_assert!(dims.windows(2).all(|w| w[0] <= w[1]));
        if radical(b.hermitian()).dim() == 0 {
            prop_assert!(dims.iter().all(|&d| d == 1));
        }
    }

    #[test]
    fn character_round_trip(b in bundle(), logs in proptest::collection::vec((-2.0f64..=2.0, 0.0..2.0 * PI), 6)) {
        let lattice = b.lattice();
        let t = Character::new(logs[..lattice.rank()].iter().map(|&(r, th)| Complex64::from_polar(r.exp(), th)).collect()).unwrap();
        let a = character_to_connection(lattice, &t).unwrap();
        prop_assert!(monodromy(lattice, &a, 1e-9).unwrap().max_distance(&t) < 1e-9);
    }

    #[test]
    fn connection_round_trip(b in bundle(), x in proptest::collection::vec(complex(3.0), 3), w in proptest::collection::vec(complex(1.0), 3)) {
        let lattice = b.lattice();
        let g = lattice.dim();
        let a = LambdaConnection::new(x[..g].to_vec(), Complex64::new(1.0, 0.0), w[..g].to_vec()).unwrap();
        let back = character_to_connection(lattice, &monodromy(lattice, &a, 1e-9).unwrap()).unwrap();
        for (p, q) in back.omega.iter().zip(&a.omega) {
            prop_assert!((p - q).norm() < 1e-9);
        }
        prop_assert!(same_dual_point(lattice, &back.x, &a.x, 1e-9).unwrap());
    }

    #[test]
    fn psi_fiber_law(b in bundle(), w in proptest::collection::vec(complex(2.0), 3), n in proptest::collection::vec(-3i64..=3, 6), off in 0.05f64..0.95) {
        let lattice = b.lattice();
        let g = lattice.dim();
        let rank = lattice.rank();
        let omega: Vec<Complex64> = w[..g].to_vec();
        // a deck motion: linear δ with Im δ(λ_j) = π n_j, i.e. δ = π·conj(ℓ) with Im ℓ(λ_j) = −n_j
        let deck = |values: Vec<BigRational>, scale: f64| -> Vec<Complex64> {
            functional_with_pairings(lattice, &values).coeffs.iter().map(|c| c.to_complex64().conj() * scale).collect()
        };
        let delta = deck(n[..rank].iter().map(|&k| BigRational::from_integer((-k).into())).collect(), PI);
        let moved: Vec<Complex64> = omega.iter().zip(&delta).map(|(a, d)| a + d).collect();
        prop_assert!(psi_same_fiber(lattice, &omega, &moved, 1e-9).unwrap());
        prop_assert!(psi_cover(lattice, &omega).unwrap().same_point(&psi_cover(lattice, &moved).unwrap(), 1e-9));
        // a non-integral shift on the first generator leaves the fiber
        let mut frac = vec![BigRational::zero(); rank];
        frac[0] = -BigRational::one();
        let nudge: Vec<Complex64> = deck(frac, PI * off);
        let off_fiber: Vec<Complex64> = omega.iter().zip(&nudge).map(|(a, d)| a + d).collect();
        prop_assert!(!psi_same_fiber(lattice, &omega, &off_fiber, 1e-6).unwrap());
        prop_assert!(!psi_cover(lattice, &omega).unwrap().same_point(&psi_cover(lattice, &off_fiber).unwrap(), 1e-6));
    }
}

#[test]
fn kernel_law_on_a_fixed_grid() {
    for g in 1..=3 {
        for k in 0..=g {
            let b = random_bundle(g, k, 101).unwrap();
            for d in 1..=4 {
                let expected = num_integer::binomial(k + d - 1, d);
                assert_eq!(beta_kernel_dim(b.hermitian(), d).unwrap(), expected, "g={g} k={k} d={d}");
            }
        }
    }
}

#[test]
fn radical_basis_vectors_annihilate_h() {
    let b = random_bundle(3, 1, 4).unwrap();
    let rad = radical(b.hermitian());
    let probes: Vec<Vector> = ExactMatrix::identity(3).to_rows();
    for v in rad.basis() {
        for w in &probes {
            assert!(b.hermitian().eval(v, w).is_zero());
        }
    }
}
