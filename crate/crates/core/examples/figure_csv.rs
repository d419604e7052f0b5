//! Writes a figure preset as CSV.
//!
//! ```text
//! cargo run --example figure_csv -- fig2 /tmp/fig2.csv
//! ```

use std::path::PathBuf;

use lie_squeeze::cli::{figure_preset, run};

fn main() {
    let mut args = std::env::args().skip(1);
    let id = args.next().unwrap_or_else(|| "fig1a".into());
    let out = args.next().map_or_else(|| std::env::temp_dir().join(format!("{id}.csv")), PathBuf::from);
    let mut s = match figure_preset(&id) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    s.out = Some(out.clone());
    let rows = run(&s).expect("preset runs");
    println!("wrote {rows} rows to {}", out.display());
}
