//! The map `φ_L : V → V̄*` from the Hermitian form, from the Chern form, and
//! from the derivative of `x ↦ τ_x^*L ⊗ L^*`.
//!
//! ```bash
//! cargo run --example phi_three_ways
//! ```

use abelian_connections::line_bundles::phi_agreement;
use abelian_connections::torus::PeriodLattice;
use abelian_connections::{AppellHumbertBundle, ExactMatrix, GaussianRational};
use num_rational::BigRational;
use num_traits::Zero;

fn gr(s: &str) -> GaussianRational {
    s.parse().unwrap()
}

fn main() {
    let lattice = PeriodLattice::new(vec![
        vec![gr("1"), gr("0")],
        vec![gr("0"), gr("1")],
        vec![gr("i"), gr("1")],
        vec![gr("0"), gr("i")],
    ])
    .unwrap();
    let h = ExactMatrix::from_rows(&[vec![gr("3"), gr("1+i")], vec![gr("1-i"), gr("2")]], 2).unwrap();
    let b = AppellHumbertBundle::new(lattice, h, vec![BigRational::zero(); 4]).unwrap();

    let a = phi_agreement(&b, &[2, 3, 5]).unwrap();
    println!("from H:\n{}\n", a.hermitian);
    println!("from the Chern form:\n{}\n", a.chern);
    for (n, m) in &a.translations {
        println!("from translations sampled at 1/{n}^k:\n{m}\n");
    }
    println!("all agree: {}", a.agree);
}
