use opframe::algebra::{AlgebraDescriptor, AlgebraKind};
use opframe::quadrature::RuleKind;
use opframe::sampling::{self, rng_from_seed};
use opframe::scenario::{
    operator_table, AdditiveSpec, FamilySpec, MeasureSpec, PerturbationSpec, ProfileSpec, Scenario, Tolerances,
};
use opframe::{OperatorFamily, QuadratureRule};
use proptest::prelude::*;

fn build(diag: bool, dim: usize, rank: usize, nodes: usize, sampled: bool, scale: f64, seed: u64) -> Scenario {
    let d = AlgebraDescriptor::new(if diag { AlgebraKind::Diagonal } else { AlgebraKind::Full }, dim).unwrap();
    let mut rng = rng_from_seed(seed);
    let rule = QuadratureRule::gauss_legendre(-1.0, 3.0, nodes).unwrap();
    let family = if sampled {
        let ops = (0..nodes).map(|_| sampling::random_operator(d, rank, &mut rng).scale_real(scale)).collect();
        OperatorFamily::sampled(rule, ops).unwrap()
    } else {
        let coeffs = (0..3).map(|_| sampling::random_operator(d, rank, &mut rng).scale_real(scale)).collect();
        OperatorFamily::parametric(rule, coeffs).unwrap()
    };
    let k = sampling::random_operator(d, rank, &mut rng);
    Scenario {
        schema_version: 1,
        name: Some(format!("random {seed}")),
        algebra: d,
        module_rank: rank,
        measure: MeasureSpec::LebesgueInterval { interval: [-1.0, 3.0], rule: RuleKind::GaussLegendre, nodes },
        family: FamilySpec::from_family(&family),
        perturbation: Some(PerturbationSpec {
            additive: Some(AdditiveSpec {
                k: operator_table(&k),
                c: ProfileSpec::Polynomial(vec![[scale, -scale / 3.0]]),
            }),
            relative: None,
        }),
        signal: None,
        tolerances: Tolerances { positivity: scale * 1e-9, ..Tolerances::default() },
        seed: Some(seed),
    }
}

proptest! {
    #[test]
    fn scenario_json_round_trips(
        diag in any::<bool>(),
        dim in 1usize..=3,
        rank in 1usize..=2,
        nodes in 1usize..=6,
        sampled in any::<bool>(),
        scale in 1e-8f64..1e8,
        seed in any::<u64>(),
    ) {
        let s = build(diag, dim, rank, nodes, sampled, scale, seed);
        s.validate().unwrap();
        let text = s.to_json_pretty();
        let back = Scenario::from_json_str(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_json_pretty(), text);
    }
}
