//! Gauss–Legendre and midpoint rules on an interval.

use opframe::QuadratureRule;

fn main() -> opframe::Result<()> {
    let exact = 1.0 / 3.0;
    for n in [1, 2, 4, 8] {
        let gl = QuadratureRule::gauss_legendre(0.0, 1.0, n)?;
        let mp = QuadratureRule::midpoint(0.0, 1.0, n)?;
        println!(
            "N = {n}: ∫ω² Gauss–Legendre error {:.1e}, midpoint error {:.1e}",
            (gl.integrate_scalar(|w| w * w) - exact).abs(),
            (mp.integrate_scalar(|w| w * w) - exact).abs()
        );
    }
    let gl = QuadratureRule::gauss_legendre(-1.0, 1.0, 3)?;
    println!("3-point nodes {:?}", gl.nodes());
    println!("3-point weights {:?}", gl.weights());
    let counting = QuadratureRule::counting(4)?;
    println!("counting measure on 4 points: Σ ω = {}", counting.integrate_scalar(|w| w));
    Ok(())
}
