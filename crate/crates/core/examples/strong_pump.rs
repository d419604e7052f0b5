//! Strong classical pumping turns the su(1,1) pair operators into ordinary
//! single-mode quadratures.

use lie_squeeze::algebra::strong_pump_reduction;
use num_complex::Complex64;

fn main() {
    let r = strong_pump_reduction(1.5, 0.4, 0.3);
    println!("{r:#?}");
    println!("[Lx, Ly]/i = {} (Lz = {})", r.commutator_over_i(), r.lz);
    let a = Complex64::new(2.0, -1.0);
    println!("coherent amplitude {a}: <Lx> = {:.6}, <Ly> = {:.6}", r.lx_mean(a), r.ly_mean(a));
}
