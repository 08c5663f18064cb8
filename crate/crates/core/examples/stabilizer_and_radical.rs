//! Radical of `H`, and the group of translations fixing a bundle.
//!
//! ```bash
//! cargo run --example stabilizer_and_radical
//! ```

use abelian_connections::cli::random_bundle_of_type;
use abelian_connections::line_bundles::{brute_force_fixed_count, radical, radicals_agree, stabilizer};

fn main() {
    // E of type (2, 2, 0, 0) on a randomized lattice: one radical direction,
    // a component group of order 4.
    let b = random_bundle_of_type(&[2, 0], 3).unwrap();
    println!("lattice: {:?}", b.lattice().generators());
    println!("H:\n{}", b.hermitian().matrix());

    let rad = radical(b.hermitian());
    println!("radical dimension {}: {:?}", rad.dim(), rad.basis());
    println!("complex and real radicals agree: {}", radicals_agree(b.hermitian()));

    let s = stabilizer(&b);
    println!("Smith diagonal of E: {:?}", s.smith_diagonal);
    println!("component group order: {}", s.component_order);
    println!("identity component has real dimension {}", s.identity_real_dim);
    for n in [2, 4] {
        println!(
            "points of order dividing {n} fixing the bundle: {} counted, {} predicted",
            brute_force_fixed_count(&b, n),
            s.predicted_fixed_count(n)
        );
    }
}
