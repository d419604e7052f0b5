//! Closed-form Heisenberg flow of `H = α₁K_x + α₂K_y + α₃K_z`.
//!
//! ```text
//! cargo run --example flow_matrix
//! ```

use lie_squeeze::algebra::{
    evolution_matrix, metric_residual, structure_frequency, AlgebraKind, CouplingTriple,
};

fn main() {
    for (c, kind) in [
        (CouplingTriple::new(0.1, 0.25, 1.0), AlgebraKind::Su11),
        (CouplingTriple::new(0.1, 0.25, 1.0), AlgebraKind::Su2),
        (CouplingTriple::new(1.0, 0.25, 0.1), AlgebraKind::Su11),
    ] {
        let sf = structure_frequency(&c, kind);
        println!("{kind} {:?}: g² = {:.6} ({:?})", c.as_array(), sf.g_squared, sf.regime);
        let t = sf.period().unwrap_or(5.0);
        let m = evolution_matrix(&c, kind, t);
        for row in m.rows() {
            println!("  [{:>12.6} {:>12.6} {:>12.6}]", row[0], row[1], row[2]);
        }
        println!(
            "  t = {t:.6}, det = {:.3e}, metric residual = {:.1e}",
            m.determinant(),
            metric_residual(&m, kind)
        );
    }
}
