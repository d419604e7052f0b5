//! Amplitudes and initial moments of the three coherent-state families,
//! computed in closed form and by direct summation.

use std::f64::consts::PI;

use lie_squeeze::coherent::{
    coefficients, moments_closed, moments_series, BarutGirardelloState, BlochState,
    CoherentState, PerelomovState, DEFAULT_CUTOFF_CAP,
};

fn main() -> lie_squeeze::Result<()> {
    let states: [CoherentState; 3] = [
        PerelomovState::from_polar(0.25, 0.8, PI / 2.0)?.into(),
        BarutGirardelloState::from_polar(2.0, 10.0, PI)?.into(),
        BlochState::from_polar(5.0, 0.5, PI / 2.0)?.into(),
    ];
    for s in &states {
        let c = coefficients(s, 1e-12, DEFAULT_CUTOFF_CAP)?;
        let closed = moments_closed(s);
        let series = moments_series(&c);
        println!("{} ({} basis states, norm 1 - {:.1e})", s.name(), c.len(), 1.0 - c.norm_sqr());
        println!("  <Kz> = {:.10}   <K+> = {:.6}", closed.kz, closed.kp);
        println!("  Var Kx = {:.10}   Var Ky = {:.10}", closed.variance_x(), closed.variance_y());
        println!("  closed vs series: {:.1e}", closed.relative_gap(&series));
    }
    Ok(())
}
