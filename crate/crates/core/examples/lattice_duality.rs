//! Period lattices, the dual torus and torsion points.
//!
//! ```bash
//! cargo run --example lattice_duality
//! ```

use abelian_connections::torus::{dual_basis, dual_lattice, torsion_points, PeriodLattice};
use abelian_connections::GaussianRational;

fn gr(s: &str) -> GaussianRational {
    s.parse().expect("valid entry")
}

fn main() {
    // A rectangular elliptic curve ℂ/(ℤ + 2iℤ).
    let lattice = PeriodLattice::new(vec![vec![gr("1")], vec![gr("2*i")]]).unwrap();
    println!("generators: {:?}", lattice.generators());

    // ℓ_k with Im ℓ_k(λ_j) = δ_kj
    for (k, ell) in dual_basis(&lattice).iter().enumerate() {
        println!("ℓ_{k} = {:?}", ell.coeffs);
        for (j, lambda) in lattice.generators().iter().enumerate() {
            println!("  Im ℓ_{k}(λ_{j}) = {}", ell.pairing(lambda));
        }
    }

    let dual = dual_lattice(&lattice);
    println!("dual of dual is the original lattice: {}", dual_lattice(&dual).same_lattice(&lattice));

    let points = torsion_points(&lattice, 2).unwrap();
    println!("{} points of order dividing 2:", points.len());
    for p in &points {
        let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
        println!("  {coeffs:?} -> {:?}", p.lift(&lattice));
    }
}
