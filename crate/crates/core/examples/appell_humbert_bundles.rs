//! Building line bundles from `(H, χ)` data and acting on them.
//!
//! ```bash
//! cargo run --example appell_humbert_bundles
//! ```

use abelian_connections::line_bundles::validate;
use abelian_connections::torus::{PeriodLattice, TorsionPoint};
use abelian_connections::{AppellHumbertBundle, ExactMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    let lattice = PeriodLattice::standard(2);
    let h = ExactMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
    let chi = vec![q(0, 1), q(1, 1), q(1, 2), q(0, 1)];

    // H with a half-integral imaginary part is rejected with the offending pair.
    let bad = ExactMatrix::from_rows(
        &[vec!["1".parse().unwrap(), "1/2*i".parse().unwrap()], vec!["-1/2*i".parse().unwrap(), "0".parse().unwrap()]],
        2,
    )
    .unwrap();
    println!("invalid form: {}", validate(&lattice, &bad, &chi).unwrap_err());

    let l = AppellHumbertBundle::new(lattice.clone(), h, chi).unwrap();
    println!("E on generators:\n{}", l.e_matrix());
    let n: Vec<BigInt> = [1, 1, 0, 1].iter().map(|&k| BigInt::from(k)).collect();
    println!("χ(λ_0 + λ_1 + λ_3) = exp(πi·{})", l.semicharacter_exponent(&n));

    let trivial = l.tensor(&l.dual()).unwrap();
    println!("L ⊗ L^* is trivial: {}", trivial.is_isomorphic(&AppellHumbertBundle::trivial(lattice.clone())));

    let x = TorsionPoint::new(vec![q(1, 2), q(0, 1), q(0, 1), q(0, 1)]);
    let moved = l.translate(&x);
    println!("translate by λ_0/2: exponents {:?}", moved.chi().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("fixed by that translation: {}", moved.is_isomorphic(&l));
}
