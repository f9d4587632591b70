//! Additive perturbations `T_ω + c(ω)K` and their predicted bound envelope.

use opframe::perturbation::{self, AdditivePerturbation, ScalarProfile};
use opframe::{catalog, ModuleOperator};

fn main() -> opframe::Result<()> {
    let family = catalog::ramp_family(32)?;
    let k = ModuleOperator::identity(family.descriptor(), 1);
    for c in [0.0, 0.2, 0.4, 0.49, 0.6] {
        let p = AdditivePerturbation::new(k.clone(), ScalarProfile::constant(c))?;
        let a = perturbation::additive_admissible(&family, &p, 1e-12)?;
        if !a.admissible {
            println!("c = {c}: R = {:.4} ≥ A = {:.4}, not admissible", a.strength, a.lower_bound);
            continue;
        }
        let envelope = perturbation::additive_envelope(a.lower_bound, a.upper_bound, a.strength)?;
        let bounds = perturbation::perturb_additive(&family, &p)?.frame_operator().optimal_bounds();
        println!(
            "c = {c}: R = {:.4}, envelope [{:.4}, {:.4}], perturbed bounds [{:.4}, {:.4}]",
            a.strength, envelope.lower, envelope.upper, bounds.lower, bounds.upper
        );
    }
    Ok(())
}
