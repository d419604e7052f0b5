//! su(2) squeezing of Bloch states: deeper for small |μ|, absent at t = 0.

use lie_squeeze::algebra::{structure_frequency, AlgebraKind};
use lie_squeeze::cli::figure_preset;
use lie_squeeze::squeezing::{sweep, time_grid};

fn main() {
    for id in ["fig3-mu0.5", "fig3-mu10", "fig3-mu100"] {
        let s = figure_preset(id).unwrap();
        let period = structure_frequency(&s.model.couplings, AlgebraKind::Su2)
            .quoted_period()
            .unwrap();
        let rec = sweep(&s.model, &s.state, &time_grid(period, 2000)).unwrap();
        let (t_min, s_min) = rec
            .iter()
            .filter_map(|r| r.sx.map(|s| (r.t, s)))
            .fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        println!("{id:>11}: s1(0) = {:.3e}, min s1 = {s_min:+.4} at t = {t_min:.3}", rec[0].sx.unwrap());
    }
}
