//! Command-line front end: scenarios, figure presets, CSV output and the
//! verification harness.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{evolution_matrix, structure_frequency, AlgebraKind, CouplingTriple};
use crate::coherent::{
    BarutGirardelloState, BlochState, CoherentState, PerelomovState, DEFAULT_CUTOFF_CAP,
};
use crate::error::Error;
use crate::squeezing::{sweep, time_grid, Model, QuadratureRecord};
use crate::verify::{self, Suite};

pub const CSV_HEADER: &str = "t,vx,vy,kz,sx,sy,product,bound";

pub const PRESET_IDS: [&str; 7] = [
    "fig1a",
    "fig1b",
    "fig1c",
    "fig2",
    "fig3-mu0.5",
    "fig3-mu10",
    "fig3-mu100",
];

pub const DEFAULT_STEPS: usize = 2000;
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;
/// Sweep length used when the dynamics has no period.
pub const APERIODIC_TMAX: f64 = 20.0;

const FIGURE_COUPLINGS: CouplingTriple = CouplingTriple::new(0.1, 0.25, 1.0);

/// Everything needed for one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub model: Model,
    pub state: CoherentState,
    pub t_max: f64,
    pub steps: usize,
    pub tail_tol: f64,
    /// `None` writes to standard output.
    pub out: Option<PathBuf>,
}

impl Scenario {
    pub fn grid(&self) -> Vec<f64> {
        time_grid(self.t_max, self.steps)
    }

    pub fn records(&self) -> Result<Vec<QuadratureRecord>, Error> {
        sweep(&self.model, &self.state, &self.grid())
    }
}

/// Two periods `8π/g` for periodic models, [`APERIODIC_TMAX`] otherwise.
pub fn default_tmax(c: &CouplingTriple, kind: AlgebraKind) -> f64 {
    structure_frequency(c, kind)
        .quoted_period()
        .map_or(APERIODIC_TMAX, |p| 2.0 * p)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("unknown figure preset `{0}` (valid: {list})", list = PRESET_IDS.join(", "))]
pub struct UnknownPreset(pub String);

pub fn figure_preset(id: &str) -> Result<Scenario, UnknownPreset> {
    let pcs = |xi_abs, phi| {
        CoherentState::from(PerelomovState::from_polar(0.25, xi_abs, phi).expect("preset state"))
    };
    let bloch = |mu_abs| {
        CoherentState::from(BlochState::from_polar(5.0, mu_abs, PI / 2.0).expect("preset state"))
    };
    let state = match id {
        "fig1a" => pcs(0.5, PI / 2.0),
        "fig1b" => pcs(0.8, PI / 2.0),
        "fig1c" => pcs(0.5, PI / 4.0),
        "fig2" => BarutGirardelloState::from_polar(2.0, 10.0, PI)
            .expect("preset state")
            .into(),
        "fig3-mu0.5" => bloch(0.5),
        "fig3-mu10" => bloch(10.0),
        "fig3-mu100" => bloch(100.0),
        _ => return Err(UnknownPreset(id.to_string())),
    };
    let kind = state.kind();
    Ok(Scenario {
        model: Model::new(FIGURE_COUPLINGS, kind),
        state,
        t_max: default_tmax(&FIGURE_COUPLINGS, kind),
        steps: DEFAULT_STEPS,
        tail_tol: DEFAULT_TAIL_TOL,
        out: None,
    })
}

/// Shortest representation that parses back to the same `f64`. Very large
/// and very small magnitudes switch to exponent notation.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else if v != 0.0 && (v.abs() >= 1e16 || v.abs() < 1e-5) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

fn format_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "nan".into(), format_float)
}

pub fn csv_row(r: &QuadratureRecord) -> String {
    [
        format_float(r.t),
        format_float(r.vx),
        format_float(r.vy),
        format_float(r.kz),
        format_opt(r.sx),
        format_opt(r.sy),
        format_float(r.product),
        format_float(r.bound),
    ]
    .join(",")
}

pub fn write_csv<W: Write>(mut w: W, records: &[QuadratureRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", csv_row(r))?;
    }
    w.flush()
}

/// Parses one CSV line back into a record (`nan` squeezing entries become
/// `None`).
pub fn parse_csv_row(line: &str) -> Option<QuadratureRecord> {
    let f: Vec<f64> = line
        .split(',')
        .map(|s| s.parse::<f64>().ok())
        .collect::<Option<_>>()?;
    let [t, vx, vy, kz, sx, sy, product, bound] = f.try_into().ok()?;
    let opt = |v: f64| (!v.is_nan()).then_some(v);
    Some(QuadratureRecord {
        t,
        vx,
        vy,
        kz,
        sx: opt(sx),
        sy: opt(sy),
        product,
        bound,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) | RunError::Model(Error::Incompatible { .. })
            | RunError::Model(Error::InvalidState { .. })
            | RunError::Model(Error::Domain { .. }) => 2,
            _ => 1,
        }
    }
}

fn open_output(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn check_tail_tol(tail_tol: f64) -> Result<(), RunError> {
    if tail_tol > 0.0 && tail_tol <= 1e-6 {
        Ok(())
    } else {
        Err(RunError::Usage(format!(
            "--tail-tol {tail_tol} outside (0, 1e-6]"
        )))
    }
}

/// Evaluates the scenario and writes its CSV. Returns the number of rows.
pub fn run(s: &Scenario) -> Result<usize, RunError> {
    check_tail_tol(s.tail_tol)?;
    if !(s.t_max >= 0.0 && s.t_max.is_finite()) {
        return Err(RunError::Usage(format!("--tmax {} must be finite and >= 0", s.t_max)));
    }
    s.model.check_state(&s.state)?;
    // the amplitudes backing the oracle must fit under the cap
    s.state.cutoff(s.tail_tol, DEFAULT_CUTOFF_CAP)?;
    let records = s.records()?;
    write_csv(open_output(&s.out)?, &records)?;
    Ok(records.len())
}

/// Writes `t,m11,…,m33` rows of the flow matrix.
pub fn write_matrix<W: Write>(
    mut w: W,
    c: &CouplingTriple,
    kind: AlgebraKind,
    grid: &[f64],
) -> io::Result<()> {
    writeln!(w, "t,m11,m12,m13,m21,m22,m23,m31,m32,m33")?;
    for &t in grid {
        let mut line = format_float(t);
        for row in evolution_matrix(c, kind, t).rows() {
            for x in row {
                let _ = write!(line, ",{}", format_float(x));
            }
        }
        writeln!(w, "{line}")?;
    }
    w.flush()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Su11,
    Su2,
}

impl From<ModelArg> for AlgebraKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Su11 => AlgebraKind::Su11,
            ModelArg::Su2 => AlgebraKind::Su2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    Pcs,
    Bgcs,
    Bloch,
}

#[derive(Debug, Parser)]
#[command(
    name = "lie-squeeze",
    version,
    about = "Quadrature squeezing of su(1,1) and su(2) coherent states under linear Hamiltonians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep one scenario and write its CSV.
    Sweep,
    /// Sweep a named figure preset.
    Figure { id: String },
    /// Dump the flow matrix rows over the time grid.
    Matrix,
    /// Run an invariant suite and report each check.
    Verify { suite: Suite },
}

#[derive(Debug, Clone, Args)]
pub struct Params {
    /// Algebra; defaults to the one matching --state.
    #[arg(long, global = true, value_enum)]
    pub model: Option<ModelArg>,
    /// Couplings α₁,α₂,α₃.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub lambda: Option<Vec<f64>>,
    #[arg(long, global = true, value_enum, default_value = "pcs")]
    pub state: StateArg,
    /// Bargmann index of the Perelomov state.
    #[arg(long, global = true, default_value_t = 0.25)]
    pub k: f64,
    #[arg(long = "xi-abs", global = true, default_value_t = 0.5)]
    pub xi_abs: f64,
    /// Perelomov phase, ξ = |ξ|e^{−iφ}.
    #[arg(long, global = true, default_value_t = PI / 2.0, allow_negative_numbers = true)]
    pub phi: f64,
    /// Bargmann index of the Barut–Girardello state.
    #[arg(long, global = true, default_value_t = 2.0)]
    pub n: f64,
    #[arg(long = "z-abs", global = true, default_value_t = 10.0)]
    pub z_abs: f64,
    #[arg(long = "z-arg", global = true, default_value_t = PI, allow_negative_numbers = true)]
    pub z_arg: f64,
    /// Spin of the Bloch state (half-integer).
    #[arg(long, global = true, default_value_t = 5.0)]
    pub j: f64,
    #[arg(long = "mu-abs", global = true, default_value_t = 0.5)]
    pub mu_abs: f64,
    #[arg(long = "mu-arg", global = true, default_value_t = PI / 2.0, allow_negative_numbers = true)]
    pub mu_arg: f64,
    /// End of the time grid; defaults to two periods 8π/g.
    #[arg(long, global = true)]
    pub tmax: Option<f64>,
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    #[arg(long = "tail-tol", global = true)]
    pub tail_tol: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Params {
    pub fn couplings(&self) -> Result<CouplingTriple, RunError> {
        match self.lambda.as_deref() {
            None => Ok(FIGURE_COUPLINGS),
            Some(&[a, b, c]) if [a, b, c].iter().all(|x| x.is_finite()) => {
                Ok(CouplingTriple::new(a, b, c))
            }
            Some(v) => Err(RunError::Usage(format!(
                "--lambda needs three finite numbers, got {v:?}"
            ))),
        }
    }

    pub fn coherent_state(&self) -> Result<CoherentState, Error> {
        Ok(match self.state {
            StateArg::Pcs => PerelomovState::from_polar(self.k, self.xi_abs, self.phi)?.into(),
            StateArg::Bgcs => BarutGirardelloState::from_polar(self.n, self.z_abs, self.z_arg)?.into(),
            StateArg::Bloch => BlochState::from_polar(self.j, self.mu_abs, self.mu_arg)?.into(),
        })
    }

    fn kind_for(&self, state: Option<&CoherentState>) -> AlgebraKind {
        match (self.model, state) {
            (Some(m), _) => m.into(),
            (None, Some(s)) => s.kind(),
            (None, None) => AlgebraKind::Su11,
        }
    }

    pub fn scenario(&self) -> Result<Scenario, RunError> {
        let state = self.coherent_state()?;
        let couplings = self.couplings()?;
        let kind = self.kind_for(Some(&state));
        Ok(Scenario {
            model: Model::new(couplings, kind),
            state,
            t_max: self.tmax.unwrap_or_else(|| default_tmax(&couplings, kind)),
            steps: self.steps.unwrap_or(DEFAULT_STEPS),
            tail_tol: self.tail_tol.unwrap_or(DEFAULT_TAIL_TOL),
            out: self.out.clone(),
        })
    }

    /// Applies grid and output overrides to a preset.
    pub fn override_preset(&self, mut s: Scenario) -> Scenario {
        if let Some(t) = self.tmax {
            s.t_max = t;
        }
        if let Some(n) = self.steps {
            s.steps = n;
        }
        if let Some(tol) = self.tail_tol {
            s.tail_tol = tol;
        }
        s.out = self.out.clone();
        s
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Sweep => cli.params.scenario().and_then(|s| run(&s)).map(|_| 0),
        Command::Figure { id } => figure_preset(id)
            .map_err(|e| RunError::Usage(e.to_string()))
            .and_then(|s| run(&cli.params.override_preset(s)))
            .map(|_| 0),
        Command::Matrix => matrix(&cli.params).map(|_| 0),
        Command::Verify { suite } => {
            let report = verify::run_suite(*suite);
            let mut out = io::stdout().lock();
            report
                .write(&mut out)
                .map_err(RunError::from)
                .map(|_| if report.passed() { 0 } else { 1 })
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("lie-squeeze: {e}");
        e.exit_code()
    })
}

fn matrix(p: &Params) -> Result<(), RunError> {
    let c = p.couplings()?;
    let kind = p.kind_for(None);
    let t_max = p.tmax.unwrap_or_else(|| default_tmax(&c, kind));
    let grid = time_grid(t_max, p.steps.unwrap_or(DEFAULT_STEPS));
    write_matrix(open_output(&p.out)?, &c, kind, &grid)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let s = figure_preset("fig1a").unwrap();
        assert_eq!(s.model.kind, AlgebraKind::Su11);
        assert_eq!(s.model.couplings, FIGURE_COUPLINGS);
        match s.state {
            CoherentState::Perelomov(p) => {
                assert_eq!(p.k, 0.25);
                assert!((p.xi.norm() - 0.5).abs() < 1e-15);
            }
            _ => panic!("fig1a is a Perelomov preset"),
        }
        let g = structure_frequency(&FIGURE_COUPLINGS, AlgebraKind::Su11).g_abs;
        assert!((s.t_max - 8.0 * PI / g).abs() < 1e-12);
        assert_eq!(s.steps, 2000);

        let s = figure_preset("fig2").unwrap();
        assert!(matches!(s.state, CoherentState::BarutGirardello(b) if b.n == 2.0 && (b.z.re + 10.0).abs() < 1e-12));
        let s = figure_preset("fig3-mu0.5").unwrap();
        assert_eq!(s.model.kind, AlgebraKind::Su2);
        for id in PRESET_IDS {
            assert!(figure_preset(id).is_ok());
        }
        let err = figure_preset("fig4").unwrap_err().to_string();
        assert!(err.contains("fig4") && err.contains("fig3-mu100"));
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(-0.4), "-0.4");
        assert_eq!(format_float(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(format_float(1e-7), "1e-7");
        assert_eq!(format_float(2.5e20), "2.5e20");
        assert_eq!(format_float(f64::NAN), "nan");
        for v in [1.0 / 3.0, -7.25e-9, 123456.789, 1e300, f64::MIN_POSITIVE] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_round_trip() {
        let s = Scenario {
            steps: 50,
            ..figure_preset("fig1a").unwrap()
        };
        let records = s.records().unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let parsed: Vec<_> = lines.map(|l| parse_csv_row(l).unwrap()).collect();
        assert_eq!(parsed, records);
        assert!((parsed[0].sx.unwrap() + 0.4).abs() < 1e-9);
    }

    #[test]
    fn undefined_factor_prints_nan() {
        let r = QuadratureRecord {
            t: 1.0,
            vx: 1.0,
            vy: 2.0,
            kz: 0.0,
            sx: None,
            sy: None,
            product: 2.0,
            bound: 0.0,
        };
        assert_eq!(csv_row(&r), "1,1,2,0,nan,nan,2,0");
    }

    #[test]
    fn zero_steps_single_row() {
        let s = Scenario {
            steps: 0,
            ..figure_preset("fig3-mu0.5").unwrap()
        };
        let r = s.records().unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].t, 0.0);
        assert!(r[0].sx.unwrap() > 0.0);
    }

    #[test]
    fn argument_parsing() {
        let cli = Cli::try_parse_from([
            "lie-squeeze", "sweep", "--lambda", "-1,0.25,0.1", "--state", "bgcs", "--steps", "3",
        ])
        .unwrap();
        let s = cli.params.scenario().unwrap();
        assert_eq!(s.model.couplings, CouplingTriple::new(-1.0, 0.25, 0.1));
        assert_eq!(s.model.kind, AlgebraKind::Su11);
        assert_eq!(s.t_max, APERIODIC_TMAX);

        let cli = Cli::try_parse_from(["lie-squeeze", "sweep", "--state", "bloch", "--j", "1.5"]).unwrap();
        assert_eq!(cli.params.scenario().unwrap().model.kind, AlgebraKind::Su2);

        let cli = Cli::try_parse_from(["lie-squeeze", "sweep", "--lambda", "1,2"]).unwrap();
        assert_eq!(cli.params.scenario().unwrap_err().exit_code(), 2);

        let cli = Cli::try_parse_from(["lie-squeeze", "--model", "su2", "sweep"]).unwrap();
        let s = cli.params.scenario().unwrap();
        assert_eq!(run(&s).unwrap_err().exit_code(), 2);

        assert!(Cli::try_parse_from(["lie-squeeze", "verify", "bogus"]).is_err());
    }
}
