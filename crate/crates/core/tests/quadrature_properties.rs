use opframe::algebra::{AlgebraDescriptor, AlgebraKind};
use opframe::quadrature::QuadratureRule;
use opframe::sampling::{self, rng_from_seed};
use proptest::prelude::*;

fn descriptor() -> impl Strategy<Value = AlgebraDescriptor> {
    (1usize..=4, any::<bool>()).prop_map(|(dim, diag)| {
        AlgebraDescriptor::new(if diag { AlgebraKind::Diagonal } else { AlgebraKind::Full }, dim).unwrap()
    })
}

fn rule() -> impl Strategy<Value = QuadratureRule> {
    prop_oneof![
        (1usize..=40).prop_map(|n| QuadratureRule::gauss_legendre(-1.0, 2.0, n).unwrap()),
        (1usize..=40).prop_map(|n| QuadratureRule::midpoint(0.0, 1.0, n).unwrap()),
        (1usize..=10).prop_map(|n| QuadratureRule::counting(n).unwrap()),
    ]
}

proptest! {
    #[test]
    fn integration_preserves_positivity(d in descriptor(), rule in rule(), seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let samples: Vec<_> = (0..rule.len()).map(|_| sampling::random_positive(d, &mut rng)).collect();
        prop_assert!(samples.iter().all(|s| s.is_positive(1e-12)));
        prop_assert!(rule.integrate(&samples).unwrap().is_positive(1e-10));
        prop_assert!(rule.weights().iter().all(|&w| w > 0.0));
    }

    #[test]
    fn integration_is_linear(d in descriptor(), rule in rule(), seed in any::<u64>(), alpha in -4.0f64..4.0) {
        let mut rng = rng_from_seed(seed);
        let f: Vec<_> = (0..rule.len()).map(|_| sampling::random_element(d, &mut rng)).collect();
        let g: Vec<_> = (0..rule.len()).map(|_| sampling::random_element(d, &mut rng)).collect();
        let combined: Vec<_> = f.iter().zip(&g).map(|(a, b)| a.scale_real(alpha).add(b).unwrap()).collect();
        let lhs = rule.integrate(&combined).unwrap();
        let rhs = rule.integrate(&f).unwrap().scale_real(alpha).add(&rule.integrate(&g).unwrap()).unwrap();
        let scale = 1.0 + lhs.operator_norm();
        prop_assert!(lhs.sub(&rhs).unwrap().operator_norm() <= 1e-13 * scale);
    }

    #[test]
    fn gauss_legendre_is_exact_to_degree_2n_minus_1(n in 1usize..=32, p_frac in 0.0f64..1.0) {
        let rule = QuadratureRule::gauss_legendre(0.0, 1.0, n).unwrap();
        let p = ((2 * n - 1) as f64 * p_frac).round() as i32;
        let got = rule.integrate_scalar(|x| x.powi(p));
        prop_assert!((got - 1.0 / (p + 1) as f64).abs() <= 1e-13, "n = {n}, p = {p}: {got}");
    }
}

#[test]
fn one_node_rule_misses_quadratics() {
    let rule = QuadratureRule::gauss_legendre(0.0, 1.0, 1).unwrap();
    assert!((rule.integrate_scalar(|x| x) - 0.5).abs() < 1e-15);
    assert!((rule.integrate_scalar(|x| x * x) - 1.0 / 3.0).abs() > 0.05);
}
