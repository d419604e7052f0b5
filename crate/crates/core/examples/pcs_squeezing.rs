//! Squeezing of Perelomov states over two periods, for the three phase and
//! amplitude settings of the su(1,1) figures.

use lie_squeeze::algebra::{AlgebraKind, CouplingTriple};
use lie_squeeze::cli::figure_preset;
use lie_squeeze::squeezing::{sweep, time_grid, Model, QuadratureRecord};

fn main() {
    for id in ["fig1a", "fig1b", "fig1c"] {
        let s = figure_preset(id).expect("preset");
        let rec = s.records().expect("compatible preset");
        let min = |f: fn(&QuadratureRecord) -> Option<f64>| {
            rec.iter().filter_map(f).fold(f64::INFINITY, f64::min)
        };
        println!(
            "{id}: sx(0) = {:+.6}, sy(0) = {:+.6}, min sx = {:+.4}, min sy = {:+.4}",
            rec[0].sx.unwrap(),
            rec[0].sy.unwrap(),
            min(|r| r.sx),
            min(|r| r.sy),
        );
    }

    // the same state in the amplifying regime
    let s = figure_preset("fig1a").unwrap();
    let model = Model::new(CouplingTriple::new(1.0, 0.25, 0.1), AlgebraKind::Su11);
    for r in sweep(&model, &s.state, &time_grid(20.0, 8)).unwrap() {
        println!("t = {:5.2}  vx = {:12.4e}  sx = {:+.4}", r.t, r.vx, r.sx.unwrap());
    }
}
