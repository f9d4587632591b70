//! Recovering a vector from `y = S_T x`, directly and by relaxation iteration.

use opframe::catalog;
use opframe::reconstruction::{self, Relaxation};
use opframe::{AlgebraElement, ModuleVector};

fn main() -> opframe::Result<()> {
    let family = catalog::ramp_family(32)?;
    let data = family.frame_operator();
    let x = ModuleVector::new(vec![AlgebraElement::real_diagonal(&[1.0, -2.0])?])?;
    let y = family.synthesis(&family.analysis(&x)?)?;

    let direct = reconstruction::reconstruct_direct(&data, &y)?;
    println!("direct: error {:.2e}", direct.x_hat.sub(&x)?.norm());

    for relaxation in [Relaxation::InverseUpper, Relaxation::Balanced] {
        let r = reconstruction::reconstruct_neumann(&data, &y, relaxation, 1e-12, 1000)?;
        println!("{relaxation:?}: {:?}, {} iterations, error {:.2e}", r.method, r.iterations, r.x_hat.sub(&x)?.norm());
        let ratios: Vec<String> =
            r.residual_history.windows(2).take(4).map(|w| format!("{:.4}", w[1] / w[0])).collect();
        println!("  first residual ratios: {}", ratios.join(", "));
    }

    match reconstruction::reconstruct_neumann(&data, &y, Relaxation::Fixed(7.0), 1e-12, 1000) {
        Err(e) => println!("λ = 7 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
