//! Relative perturbations with positive weight profiles `a`, `b` and slack `α`, `β`.

use num_complex::Complex64;
use opframe::catalog;
use opframe::perturbation::{self, RelativePerturbation, WeightProfile};

fn main() -> opframe::Result<()> {
    let family = catalog::ramp_family(32)?;
    let bounds = family.frame_operator().optimal_bounds();
    for factor in [1.0, 1.05, 1.3, 2.0] {
        let other = family.scale_nodes(&vec![Complex64::new(factor, 0.0); family.rule().len()])?;
        let p = RelativePerturbation::new(WeightProfile::constant(1.0), WeightProfile::constant(1.0), 0.4, 0.4)?;
        let xs = perturbation::criterion_samples(&family, &other, 200, 7);
        let sampled = perturbation::relative_criterion_check(&family, &other, &p, &xs, 1e-10)?;
        let exact = perturbation::relative_criterion_operator_check(&family, &other, &p, 1e-10)?;
        let envelope = perturbation::relative_envelope(bounds, &p, family.rule())?;
        let actual = other.frame_operator().optimal_bounds();
        println!(
            "Λ = {factor}·T: hypothesis sampled {sampled}, exact {exact}; envelope [{:.4}, {:.4}], Λ bounds [{:.4}, {:.4}]",
            envelope.lower, envelope.upper, actual.lower, actual.upper
        );
    }

    let p = RelativePerturbation::new(
        WeightProfile::Polynomial(vec![1.0, 1.0]),
        WeightProfile::Polynomial(vec![2.0, -1.0]),
        0.2,
        0.1,
    )?;
    let c = p.confinement(family.rule())?;
    println!(
        "a = 1 + ω, b = 2 − ω on [0, 1]: inf a {:.4}, sup a {:.4}, inf b {:.4}, sup b {:.4}",
        c.inf_a, c.sup_a, c.inf_b, c.sup_b
    );
    Ok(())
}
