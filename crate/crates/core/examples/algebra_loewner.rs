//! Matrix-algebra elements, the Loewner order and positive square roots.

use nalgebra::DMatrix;
use num_complex::Complex64;
use opframe::{AlgebraDescriptor, AlgebraElement};

fn main() -> opframe::Result<()> {
    let c = |re, im| Complex64::new(re, im);
    let a =
        AlgebraElement::full(DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]))?;
    println!("a = {}", a.matrix());
    println!("eigenvalues of a: {:?}", a.hermitian_eigenvalues());

    let root = a.hermitian_sqrt(1e-10)?;
    let back = root.multiply(&root)?;
    println!("‖√a·√a − a‖ = {:.2e}", back.sub(&a)?.operator_norm());

    let id = AlgebraElement::identity(AlgebraDescriptor::full(2)?);
    println!("I ⪯ a: {}", id.loewner_leq(&a, 1e-10)?);
    println!("a ⪯ 3I: {}", a.loewner_leq(&id.scale_real(3.0), 1e-10)?);
    println!("a ⪯ 2I: {}", a.loewner_leq(&id.scale_real(2.0), 1e-10)?);

    let inv = a.inverse()?;
    println!("a⁻¹ = {}", inv.matrix());
    println!("‖a‖² = {:.6}, ‖a*a‖ = {:.6}", a.operator_norm().powi(2), a.adjoint().multiply(&a)?.operator_norm());

    let d = AlgebraElement::real_diagonal(&[4.0, 0.25])?;
    println!("√diag(4, 1/4) = {:?}", d.hermitian_sqrt(1e-10)?.diagonal_entries());
    Ok(())
}
