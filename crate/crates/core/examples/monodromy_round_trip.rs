//! Monodromy of rank-one connections and its inverse.
//!
//! ```bash
//! cargo run --example monodromy_round_trip
//! ```

use abelian_connections::monodromy::{
    character_to_connection, forgetful, monodromy, psi_cover, same_dual_point, scale, Character, LambdaConnection, DEFAULT_TOLERANCE,
};
use abelian_connections::cli::report::format_complex_vec as show;
use abelian_connections::torus::PeriodLattice;
use num_complex::Complex64;

fn main() {
    let lattice = PeriodLattice::standard(1);

    let a = LambdaConnection::new(vec![Complex64::new(0.1, 0.3)], Complex64::new(1.0, 0.0), vec![Complex64::new(0.5, -0.2)]).unwrap();
    let t = monodromy(&lattice, &a, DEFAULT_TOLERANCE).unwrap();
    println!("monodromy: {:?}", show(t.values()));

    let back = character_to_connection(&lattice, &t).unwrap();
    println!("recovered ω = {:?}, x = {:?}", show(&back.omega), show(&back.x));
    println!("same base point: {}", same_dual_point(&lattice, &back.x, &a.x, DEFAULT_TOLERANCE).unwrap());

    let t = Character::new(vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
    let a = character_to_connection(&lattice, &t).unwrap();
    println!("t = (2, 1) comes from ω = {:?}", show(&a.omega));

    // A Higgs field has c = 0 and no monodromy.
    let higgs = scale(Complex64::new(0.0, 0.0), &a);
    println!("forgetful(Higgs) = {}, monodromy: {}", forgetful(&higgs), monodromy(&lattice, &higgs, DEFAULT_TOLERANCE).unwrap_err());

    let half = psi_cover(&lattice, &[Complex64::new(std::f64::consts::FRAC_PI_2, 0.0)]).unwrap();
    println!("ψ(π/2·z) = {:?}, 2-torsion: {}", half.pairings, half.is_torsion_of_order_dividing(2, 1e-12));
}
