//! Independence of a family and below-boundedness of its analysis operator.

use opframe::{AlgebraDescriptor, AlgebraElement, ModuleOperator, OperatorFamily, QuadratureRule};

fn main() -> opframe::Result<()> {
    let d = AlgebraDescriptor::diagonal(2)?;
    let rule = QuadratureRule::counting(2)?;

    let split = OperatorFamily::sampled(
        rule.clone(),
        vec![
            ModuleOperator::scalar(AlgebraElement::real_diagonal(&[1.0, 0.0])?),
            ModuleOperator::scalar(AlgebraElement::real_diagonal(&[0.0, 1.0])?),
        ],
    )?;
    let repeated = OperatorFamily::sampled(rule.clone(), vec![ModuleOperator::identity(d, 1); 2])?;
    let partial = OperatorFamily::constant(rule, ModuleOperator::scalar(AlgebraElement::real_diagonal(&[1.0, 0.0])?))?;
    let single = OperatorFamily::constant(
        QuadratureRule::counting(1)?,
        ModuleOperator::scalar(AlgebraElement::real_diagonal(&[2.0, 0.5])?),
    )?;

    for (name, family) in [
        ("complementary projections", split),
        ("repeated identity", repeated),
        ("one projection", partial),
        ("single invertible node", single),
    ] {
        let ind = family.independence_check(1e-10);
        let bb = family.below_bounded_check(1e-10);
        println!(
            "{name}: independent {}, kernel {}/{}, bounded below {} (σ_min {:.3})",
            ind.independent, ind.kernel_dim, ind.domain_dim, bb.bounded_below, bb.sigma_min
        );
    }
    Ok(())
}
