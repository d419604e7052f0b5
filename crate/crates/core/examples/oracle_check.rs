//! Compares the closed-form variances with brute-force evolution in an
//! explicit (truncated for su(1,1)) representation.

use lie_squeeze::cli::figure_preset;
use lie_squeeze::oracle::{OracleConfig, VarianceOracle};
use lie_squeeze::squeezing::{time_grid, variances};

fn main() -> lie_squeeze::Result<()> {
    for id in ["fig1b", "fig2", "fig3-mu0.5"] {
        let s = figure_preset(id).unwrap();
        let mut oracle = VarianceOracle::new(&s.state, &s.model.couplings, OracleConfig::default())?;
        let mut worst: f64 = 0.0;
        let mut trunc: f64 = 0.0;
        for t in time_grid(s.t_max, 20) {
            let o = oracle.sample(t)?;
            let v = variances(&s.model, &s.state, t)?;
            worst = worst.max((o.vx - v.vx).abs() / v.vx).max((o.vy - v.vy).abs() / v.vy);
            trunc = trunc.max(o.trunc_estimate);
        }
        println!(
            "{id:>10}: dim {:>4}, max relative gap {worst:.2e}, truncation estimate {trunc:.1e}",
            oracle.dim()
        );
    }
    Ok(())
}
