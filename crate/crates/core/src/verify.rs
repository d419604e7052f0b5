//! Invariant suites behind `lie-squeeze verify`.

use std::f64::consts::PI;
use std::io::{self, Write};

use clap::ValueEnum;
use nalgebra::Matrix3;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{
    evolution_matrix, heisenberg_generator, metric_residual, structure_frequency, AlgebraKind,
    CouplingTriple,
};
use crate::cli::figure_preset;
use crate::coherent::{
    coefficients, moments_closed, moments_series, BarutGirardelloState, BlochState,
    CoherentState, PerelomovState, DEFAULT_CUTOFF_CAP,
};
use crate::oracle::{build_rep, ladder_residual, OracleConfig, VarianceOracle};
use crate::squeezing::{
    mixing_amplitudes, squeezing_factor, time_grid, variances, variances_bloch, Variances,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    States,
    Oracle,
    All,
}

/// One measured residual against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.tolerance
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Informational lines; never affect the verdict.
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    fn check(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        self.checks.push(Check::new(name, residual, tolerance));
    }

    fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn write<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(w, "{verdict} {:<34} residual={:.3e} tol={:.0e}", c.name, c.residual, c.tolerance)?;
        }
        for n in &self.notes {
            writeln!(w, "info {n}")?;
        }
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        writeln!(w, "{ok}/{} checks passed", self.checks.len())
    }
}

pub fn run_suite(suite: Suite) -> Report {
    match suite {
        Suite::Algebra => algebra_suite(),
        Suite::States => states_suite(),
        Suite::Oracle => oracle_suite(),
        Suite::All => {
            let mut r = algebra_suite();
            r.extend(states_suite());
            r.extend(oracle_suite());
            r
        }
    }
}

const FIG: CouplingTriple = CouplingTriple::new(0.1, 0.25, 1.0);

fn kinds() -> [AlgebraKind; 2] {
    [AlgebraKind::Su11, AlgebraKind::Su2]
}

pub fn algebra_suite() -> Report {
    let mut r = Report::default();
    let mut rng = StdRng::seed_from_u64(0x5eed);

    let mut metric: f64 = 0.0;
    let mut det: f64 = 0.0;
    let mut expm: f64 = 0.0;
    for _ in 0..1000 {
        let c = CouplingTriple::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let t = rng.random_range(0.0..20.0);
        for kind in kinds() {
            let m = evolution_matrix(&c, kind, t);
            let scale = m.m.amax().max(1.0);
            metric = metric.max(metric_residual(&m, kind) / (scale * scale));
            det = det.max((m.determinant() - 1.0).abs() / scale.powi(3));
            if t < 5.0 {
                let e = (heisenberg_generator(&c, kind) * t).exp();
                expm = expm.max((e - m.m).amax() / scale);
            }
        }
    }
    r.check("algebra.metric_preserved", metric, 1e-11);
    r.check("algebra.unit_determinant", det, 1e-10);
    r.check("algebra.matches_matrix_exponential", expm, 1e-10);

    let sf = structure_frequency(&FIG, AlgebraKind::Su11);
    let quoted = sf.quoted_period().expect("periodic couplings");
    let mut periodic: f64 = 0.0;
    for t in time_grid(quoted, 199) {
        let a = evolution_matrix(&FIG, AlgebraKind::Su11, t);
        let b = evolution_matrix(&FIG, AlgebraKind::Su11, t + quoted);
        periodic = periodic.max(a.max_abs_diff(&b));
    }
    r.check("algebra.periodic_4pi_over_g", periodic, 1e-9);

    let mut minimal: f64 = 0.0;
    for kind in kinds() {
        let p = structure_frequency(&FIG, kind).period().expect("periodic couplings");
        minimal = minimal.max((evolution_matrix(&FIG, kind, p).m - Matrix3::identity()).amax());
    }
    r.check("algebra.identity_at_2pi_over_g", minimal, 1e-9);

    let h = 1e-5;
    let mut ode: f64 = 0.0;
    for c in [FIG, CouplingTriple::new(1.0, 0.25, 0.1), CouplingTriple::new(-0.6, 1.3, 0.4)] {
        for kind in kinds() {
            let a = heisenberg_generator(&c, kind);
            for t in time_grid(6.0, 30) {
                let fwd = evolution_matrix(&c, kind, t + h).m;
                let back = evolution_matrix(&c, kind, t - h).m;
                let m = evolution_matrix(&c, kind, t).m;
                let deriv = (fwd - back) / (2.0 * h);
                ode = ode.max((deriv - a * m).amax() / m.amax().max(1.0));
            }
        }
    }
    r.check("algebra.ode_residual", ode, 1e-7);

    r.note(format!(
        "minimal period 2π/g = {:.12}; 4π/g = {:.12} is also a period",
        sf.period().unwrap_or(f64::NAN),
        quoted
    ));
    r
}

/// States covered by the moment-path comparison.
pub fn moment_state_grid() -> Vec<CoherentState> {
    let mut out: Vec<CoherentState> = Vec::new();
    for k in [0.25, 0.75, 1.0, 2.0] {
        for xi in [0.1, 0.5, 0.8] {
            out.push(PerelomovState::from_polar(k, xi, 0.9).expect("grid state").into());
        }
    }
    for n in [0.5, 2.0] {
        for z in [1.0, 10.0] {
            out.push(BarutGirardelloState::from_polar(n, z, 2.1).expect("grid state").into());
        }
    }
    for j in [0.5, 1.0, 5.0] {
        for mu in [0.5, 10.0] {
            out.push(BlochState::from_polar(j, mu, -0.4).expect("grid state").into());
        }
    }
    out
}

pub fn states_suite() -> Report {
    let mut r = Report::default();
    let grid = moment_state_grid();

    let mut path: f64 = 0.0;
    let mut norm: f64 = 0.0;
    let mut commutator: f64 = 0.0;
    for s in &grid {
        let closed = moments_closed(s);
        let c = coefficients(s, 1e-15, DEFAULT_CUTOFF_CAP).expect("grid cutoff");
        path = path.max(closed.relative_gap(&moments_series(&c)));
        let coarse = coefficients(s, 1e-10, DEFAULT_CUTOFF_CAP).expect("grid cutoff");
        norm = norm.max(1.0 - coarse.norm_sqr() - 1e-10);
        let beta = s.kind().beta();
        commutator = commutator
            .max((closed.kmkp - closed.kpkm + 2.0 * beta * closed.kz).abs() / closed.kz.abs().max(1.0));
    }
    r.check("states.closed_vs_series_moments", path, 1e-10);
    r.check("states.truncated_tail_excess", norm.max(0.0), 1e-14);
    r.check("states.ladder_commutator", commutator, 1e-12);

    let mut min_unc: f64 = 0.0;
    let mut bg_s: f64 = 0.0;
    for n in [0.5, 2.0] {
        for z in [1.0, 10.0] {
            let m = moments_closed(&BarutGirardelloState::from_polar(n, z, PI).expect("grid state").into());
            let bound = 0.25 * m.kz * m.kz;
            min_unc = min_unc.max((m.variance_x() * m.variance_y() - bound).abs() / bound);
            let sx = squeezing_factor(m.variance_x(), m.kz).unwrap_or(f64::INFINITY);
            let sy = squeezing_factor(m.variance_y(), m.kz).unwrap_or(f64::INFINITY);
            bg_s = bg_s.max(sx.abs()).max(sy.abs());
        }
    }
    r.check("states.bgcs_minimum_uncertainty", min_unc, 1e-12);
    r.check("states.bgcs_unsqueezed_at_zero", bg_s, 1e-12);

    let mut pcs_s: f64 = 0.0;
    for xi in [0.5, 0.8] {
        let want = -2.0 * xi * xi / (1.0 + xi * xi);
        for k in [0.25, 0.75, 1.0, 2.0] {
            let m = moments_closed(&PerelomovState::from_polar(k, xi, PI / 2.0).expect("grid state").into());
            let sx = squeezing_factor(m.variance_x(), m.kz).unwrap_or(f64::INFINITY);
            pcs_s = pcs_s.max((sx - want).abs());
        }
    }
    r.check("states.pcs_initial_squeezing", pcs_s, 1e-12);
    r
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn variance_gap(a: &Variances, vx: f64, vy: f64, kz: f64) -> f64 {
    rel(vx, a.vx).max(rel(vy, a.vy)).max(rel(kz, a.kz))
}

pub fn oracle_suite() -> Report {
    let mut r = Report::default();
    let config = OracleConfig::default();

    for id in ["fig1a", "fig1b", "fig1c", "fig2", "fig3-mu0.5"] {
        let s = figure_preset(id).expect("known preset");
        let tol = match s.model.kind {
            AlgebraKind::Su11 => 1e-6,
            AlgebraKind::Su2 => 1e-8,
        };
        let result = VarianceOracle::new(&s.state, &s.model.couplings, config).and_then(|mut o| {
            let first0 = o.sample(0.0)?.first;
            let mut gap: f64 = 0.0;
            let mut flow: f64 = 0.0;
            for t in time_grid(s.t_max, 49) {
                let sample = o.sample(t)?;
                let v = variances(&s.model, &s.state, t)?;
                gap = gap.max(variance_gap(&v, sample.vx, sample.vy, sample.kz));
                let m = evolution_matrix(&s.model.couplings, s.model.kind, t).apply(first0);
                for i in 0..3 {
                    flow = flow.max((sample.first[i] - m[i]).abs());
                }
            }
            Ok((gap, flow, o.dim()))
        });
        match result {
            Ok((gap, flow, dim)) => {
                r.check(format!("oracle.{id}.variances"), gap, tol);
                r.check(format!("oracle.{id}.adjoint_flow"), flow, 1e-8);
                r.note(format!("{id}: oracle dimension {dim}"));
            }
            Err(e) => {
                r.check(format!("oracle.{id}.variances"), f64::INFINITY, tol);
                r.note(format!("{id}: {e}"));
            }
        }
    }

    let mut ladder: f64 = 0.0;
    let ops = build_rep(AlgebraKind::Su11, 1.0, 40).expect("valid rep");
    ladder = ladder.max(ladder_residual(&ops, 39));
    for j in [0.5, 1.0, 2.5, 5.0] {
        let ops = build_rep(AlgebraKind::Su2, j, (2.0 * j) as usize + 1).expect("valid rep");
        ladder = ladder.max(ladder_residual(&ops, ops.space.dim));
    }
    r.check("oracle.ladder_relations", ladder, 1e-12);

    alternate_bloch_forms(&mut r);
    r
}

/// Reports how far two rejected variants of the Bloch formulas land from
/// the oracle, for the record.
fn alternate_bloch_forms(r: &mut Report) {
    let s = figure_preset("fig3-mu0.5").expect("known preset");
    let CoherentState::Bloch(b) = s.state else {
        return;
    };
    let c = s.model.couplings;
    let t = 3.0;
    let Ok(sample) = VarianceOracle::new(&s.state, &c, OracleConfig::default()).and_then(|mut o| o.sample(t)) else {
        return;
    };
    let v = variances_bloch(&b, &c, t);
    let y = b.mu.norm_sqr();
    r.note(format!(
        "bloch kz with prefactor 2j/(1+|μ|²): {:.6} vs oracle {:.6}",
        2.0 * v.kz,
        sample.kz
    ));
    let cs = crate::algebra::coefficient_set(&c, AlgebraKind::Su2, t);
    let g = mixing_amplitudes(&cs).g_amp;
    let q = 2.0 * (b.mu.conj() * g).re;
    let shift = cs.v_plus;
    let alt = 2.0 * b.j * ((shift - q) * q / (1.0 + y) + g.norm_sqr() + y * (shift - q).powi(2) / (1.0 + y).powi(2));
    r.note(format!("bloch vy paired with V⁺: {alt:.6} vs oracle {:.6}", sample.vy));
}
