//! Log-gamma, scaled modified Bessel functions and their ratios.

use lie_squeeze::special::{bessel_i_scaled, bessel_ratio, log_binomial, log_gamma};

fn main() -> lie_squeeze::Result<()> {
    for x in [0.5, 1.0, 10.5, 171.0] {
        println!("ln Γ({x}) = {}", log_gamma(x)?);
    }
    println!("ln C(40, 7) = {}", log_binomial(40.0, 7.0)?);

    for (nu, x) in [(0.5, 1.0), (3.0, 20.0), (0.0, 700.0)] {
        println!("e^-x I_{nu}({x}) = {:e}", bessel_i_scaled(nu, x)?);
    }
    // the only Bessel quantity the Barut–Girardello formulas need
    for (n, a) in [(0.5, 1.0), (2.0, 10.0), (2.0, 500.0)] {
        let r = bessel_ratio(2.0 * n - 1.0, 2.0 * a)?;
        println!("n = {n}, |z| = {a}: I_2n/I_2n-1 = {r}");
    }
    Ok(())
}
