//! Chern forms, Atiyah classes and the pushout of the moduli extension.
//!
//! ```bash
//! cargo run --example extension_classes
//! ```

use abelian_connections::cli::random_bundle;
use abelian_connections::ext_calculus::{chern_class_tensor, chern_form, contract_and_project, moduli_extension_class, prop1_check};
use abelian_connections::torus::PeriodLattice;
use abelian_connections::GaussianRational;

fn main() {
    let b = random_bundle(2, 0, 8).unwrap();
    let form = chern_form(b.hermitian());
    let v = b.lattice().generator(0).clone();
    let w = b.lattice().generator(2).clone();
    println!("ω(λ_0, λ_2) = {}", form.evaluate(&v, &w).unwrap());
    println!("E(λ_0, λ_2) = {}", b.hermitian().imaginary_part(&v, &w));
    let e0 = vec![GaussianRational::from(1), GaussianRational::from(0)];
    println!("[ι_e0 ω] = {:?}", contract_and_project(&form, &e0).unwrap());

    println!("moduli class on a surface:\n{}", moduli_extension_class(&PeriodLattice::standard(2)).matrix);

    let report = prop1_check(&b).unwrap();
    println!("δ̃₀:\n{}", report.delta_tilde.matrix);
    println!("c₁(L):\n{}", report.atiyah.matrix);
    println!("δ̃₀ = −c̃₀ = −c₁(L): {}", report.holds);

    for k in [0, 1, 2] {
        let b = random_bundle(2, k, 1).unwrap();
        println!(
            "radical dim {k}: Atiyah class split = {}, holomorphic connection = {}",
            chern_class_tensor(&b).is_split(),
            b.has_holomorphic_connection()
        );
    }
}
