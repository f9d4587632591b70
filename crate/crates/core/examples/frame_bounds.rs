//! Optimal frame bounds of the ramp family `ω ↦ diag(ω, (√3/2)ω)` on `[0, 1]`.

use opframe::catalog;
use opframe::frames::Extremum;

fn main() -> opframe::Result<()> {
    let nodes: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(32);
    let family = catalog::ramp_family(nodes)?;
    let data = family.frame_operator();
    let report = data.classify(1e-8);
    println!("frame operator element s = {:?}", data.s().block(0, 0).diagonal_entries());
    println!("A = {}, B = {}", report.lower_bound, report.upper_bound);
    println!("classification: {:?}", report.classification);
    println!("spectrum: {:?}", report.spectrum);
    println!("{}", report.diagnostics);

    let low = data.extremal_vector(Extremum::Lower);
    println!("vector attaining A: {:?}", low.components()[0].diagonal_entries());

    let estimate = family.norm_bounds_estimate(500, 1);
    println!("sampled estimate from 500 random vectors: [{:.6}, {:.6}]", estimate.lower, estimate.upper);
    let bb = family.below_bounded_check(1e-8);
    println!("analysis operator bounded below: {} (σ_min² = {:.6})", bb.bounded_below, bb.sigma_min.powi(2));
    Ok(())
}
