//! β-matrices on symmetric powers and certified dimensions of the ring of
//! algebraic functions on the moduli of λ-connections.
//!
//! ```bash
//! cargo run --example function_ring
//! ```

use abelian_connections::connections_ring::{beta_kernel, beta_matrix, function_ring_table, rho_projection, SymBasis};
use abelian_connections::line_bundles::AppellHumbertBundle;
use abelian_connections::torus::PeriodLattice;
use abelian_connections::ExactMatrix;
use num_rational::BigRational;
use num_traits::Zero;

fn main() {
    let h = ExactMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]);
    let b = AppellHumbertBundle::new(PeriodLattice::standard(2), h, vec![BigRational::zero(); 4]).unwrap();

    println!("Sym^2 basis: {:?}", SymBasis::new(2, 2).monomials());
    println!("β_2:\n{}", beta_matrix(b.hermitian(), 2).unwrap().matrix);
    println!("ker β_2: {:?}", beta_kernel(b.hermitian(), 2).unwrap());

    for c in function_ring_table(&b, 4).unwrap() {
        println!("d={}: kernels {:?}, upper {}, lower {} -> {} (certified)", c.degree, c.kernel_dims, c.upper_bound, c.lower_bound, c.dimension);
    }

    let rho = rho_projection(&b);
    println!("projection onto radical coordinates:\n{}", rho.projector);

    let ample = AppellHumbertBundle::new(PeriodLattice::standard(2), ExactMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]), vec![BigRational::zero(); 4]).unwrap();
    let dims: Vec<usize> = function_ring_table(&ample, 6).unwrap().iter().map(|c| c.dimension).collect();
    println!("ample form, degrees 0..=6: {dims:?}");
}
