//! Canonical dual of the ramp family and verification of the resolution of the identity.

use opframe::{catalog, duals};

fn main() -> opframe::Result<()> {
    let family = catalog::ramp_family(32)?;
    let dual = duals::canonical_dual(&family)?;
    let slope = dual.coefficients().expect("parametric")[1].block(0, 0).diagonal_entries();
    println!("dual family ω ↦ diag({:.12}ω, {:.12}ω)", slope[0].re, slope[1].re);
    println!("expected     diag(3ω, 2√3ω) = diag(3ω, {:.12}ω)", 2.0 * 3f64.sqrt());

    let bounds = duals::dual_bounds(&family)?;
    println!("dual bounds: [{}, {}]", bounds.lower, bounds.upper);

    let report = duals::is_dual_pair(&family, &dual, 1e-10)?;
    println!("∫ T*Λ − I residual: {:.2e} (dual pair: {})", report.resolution_residual, report.is_dual);

    let paired = catalog::ramp_dual_family(32)?;
    println!("closed-form family residual: {:.2e}", duals::is_dual_pair(&family, &paired, 1e-10)?.resolution_residual);

    let self_pair = duals::is_dual_pair(&family, &family, 1e-10)?;
    println!(
        "ramp paired with itself: residual {:.4}, dual pair: {}",
        self_pair.resolution_residual, self_pair.is_dual
    );
    Ok(())
}
