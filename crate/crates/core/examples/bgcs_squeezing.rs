//! A Barut–Girardello state starts at minimum uncertainty and develops
//! squeezing under the evolution.

use std::f64::consts::PI;

use lie_squeeze::algebra::CouplingTriple;
use lie_squeeze::coherent::BarutGirardelloState;
use lie_squeeze::squeezing::{squeezing_factor, uncertainty_record, variances_bgcs};

fn main() -> lie_squeeze::Result<()> {
    let s = BarutGirardelloState::from_polar(2.0, 10.0, PI)?;
    let c = CouplingTriple::new(0.1, 0.25, 1.0);
    println!("{:>6} {:>12} {:>12} {:>12} {:>9} {:>9}", "t", "vx", "vy", "kz", "sx", "sy");
    for i in 0..=12 {
        let t = i as f64;
        let v = variances_bgcs(&s, &c, t);
        let u = uncertainty_record(v.vx, v.vy, v.kz);
        assert!(u.satisfied);
        println!(
            "{t:6.1} {:12.6} {:12.6} {:12.6} {:+9.4} {:+9.4}",
            v.vx,
            v.vy,
            v.kz,
            squeezing_factor(v.vx, v.kz).unwrap(),
            squeezing_factor(v.vy, v.kz).unwrap(),
        );
    }
    Ok(())
}
