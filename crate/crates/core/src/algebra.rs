//! Closed-form Heisenberg dynamics of the generator triple (K_x, K_y, K_z)
//! under `H = α₁K_x + α₂K_y + α₃K_z`.
//!
//! The generators obey `[K_x, K_y] = iβK_z`, `[K_y, K_z] = iK_x`,
//! `[K_z, K_x] = iK_y` with `β = −1` for su(1,1) and `β = +1` for su(2).
//! The Heisenberg equations are linear in the generators, so the flow is a
//! 3×3 real matrix `M(t) = exp(tA)` acting on the initial triple:
//!
//! ```text
//!          ⎡ R₁   J⁻   βS⁺ ⎤
//!   M(t) = ⎢ J⁺   R₂   βV⁻ ⎥
//!          ⎣ S⁻   V⁺   R₃  ⎦
//! ```
//!
//! Every entry is built from three kernels of `τ = g² = α₃² + β(α₁² + α₂²)`
//! (see [`trig_kernels`]), which are entire functions of `τ`; the same code
//! covers the oscillating (`g² > 0`), degenerate and hyperbolic (`g² < 0`)
//! regimes.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

pub mod pump;

pub use pump::{strong_pump_reduction, PumpQuadrature, ReducedQuadratures};

/// Below this value of `|τ|·t²` the kernels are evaluated from their Taylor
/// series.
pub const TAYLOR_THRESHOLD: f64 = 1e-4;

/// Relative size of `|g²|` (against `α₁² + α₂² + α₃²`) below which a model is
/// classified as degenerate.
pub const DEGENERATE_REL: f64 = 1e-12;

/// Which real form of the three-generator algebra is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    /// Non-compact su(1,1), `β = −1`.
    Su11,
    /// Compact su(2), `β = +1`.
    Su2,
}

impl AlgebraKind {
    /// The signed unit `β` in `[K_x, K_y] = iβK_z`.
    pub fn beta(self) -> f64 {
        match self {
            AlgebraKind::Su11 => -1.0,
            AlgebraKind::Su2 => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Su11 => "su11",
            AlgebraKind::Su2 => "su2",
        }
    }
}

impl std::fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Coupling strengths `(α₁, α₂, α₃)` of `H = α₁K_x + α₂K_y + α₃K_z`.
///
/// Couplings and time are dimensionless; only the products `α_j t` matter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingTriple {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

impl CouplingTriple {
    pub const fn new(alpha1: f64, alpha2: f64, alpha3: f64) -> Self {
        Self {
            alpha1,
            alpha2,
            alpha3,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha1, self.alpha2, self.alpha3]
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|a| a.is_finite())
    }

    /// True when at least one coupling is nonzero.
    pub fn is_nontrivial(&self) -> bool {
        self.as_array().iter().any(|&a| a != 0.0)
    }

    fn norm_sq(&self) -> f64 {
        self.as_array().iter().map(|a| a * a).sum()
    }
}

impl From<[f64; 3]> for CouplingTriple {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `g² > 0`: periodic motion.
    Trigonometric,
    /// `g² ≈ 0`: polynomial growth.
    Degenerate,
    /// `g² < 0`: exponential growth.
    Hyperbolic,
}

/// `g² = α₃² + β(α₁² + α₂²)` together with its regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureFrequency {
    pub g_squared: f64,
    pub regime: Regime,
    /// `√|g²|`.
    pub g_abs: f64,
}

impl StructureFrequency {
    /// Smallest period of the flow matrix, `2π/g`. `None` outside the
    /// trigonometric regime.
    pub fn period(&self) -> Option<f64> {
        match self.regime {
            Regime::Trigonometric => Some(2.0 * PI / self.g_abs),
            _ => None,
        }
    }

    /// The period `4π/g` quoted for the operator solutions; a multiple of
    /// [`StructureFrequency::period`].
    pub fn quoted_period(&self) -> Option<f64> {
        self.period().map(|p| 2.0 * p)
    }
}

pub fn structure_frequency(c: &CouplingTriple, kind: AlgebraKind) -> StructureFrequency {
    let g_squared = c.alpha3 * c.alpha3 + kind.beta() * (c.alpha1 * c.alpha1 + c.alpha2 * c.alpha2);
    let regime = if g_squared.abs() <= DEGENERATE_REL * c.norm_sq() {
        Regime::Degenerate
    } else if g_squared > 0.0 {
        Regime::Trigonometric
    } else {
        Regime::Hyperbolic
    };
    StructureFrequency {
        g_squared,
        regime,
        g_abs: g_squared.abs().sqrt(),
    }
}

/// The three building blocks `cos(√τ t)`, `sin(√τ t)/√τ` and
/// `sin²(√τ t/2)/τ`, continued analytically to all real `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigKernels {
    pub c: f64,
    pub s1: f64,
    pub s2: f64,
}

pub fn trig_kernels(tau: f64, t: f64) -> TrigKernels {
    let u = tau * t * t;
    if u.abs() < TAYLOR_THRESHOLD {
        // u = τt²; series through u⁴.
        let c = 1.0 - u / 2.0 + u * u / 24.0 - u.powi(3) / 720.0 + u.powi(4) / 40_320.0;
        let s1 = t
            * (1.0 - u / 6.0 + u * u / 120.0 - u.powi(3) / 5_040.0 + u.powi(4) / 362_880.0);
        let s2 = t
            * t
            * (0.25 - u / 48.0 + u * u / 1_440.0 - u.powi(3) / 80_640.0
                + u.powi(4) / 7_257_600.0);
        return TrigKernels { c, s1, s2 };
    }
    let w = tau.abs().sqrt();
    if tau > 0.0 {
        let half = (0.5 * w * t).sin();
        TrigKernels {
            c: (w * t).cos(),
            s1: (w * t).sin() / w,
            s2: half * half / tau,
        }
    } else {
        let half = (0.5 * w * t).sinh();
        TrigKernels {
            c: (w * t).cosh(),
            s1: (w * t).sinh() / w,
            s2: half * half / (-tau),
        }
    }
}

/// The nine time-dependent functions that make up the flow matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSet {
    pub r1: f64,
    pub r2: f64,
    /// Evaluated with the `β`-factor replaced by `+1`; `g` keeps the model's `β`.
    pub r3: f64,
    pub j_plus: f64,
    pub j_minus: f64,
    pub s_plus: f64,
    pub s_minus: f64,
    pub v_plus: f64,
    pub v_minus: f64,
    pub t: f64,
}

pub fn coefficient_set(c: &CouplingTriple, kind: AlgebraKind, t: f64) -> CoefficientSet {
    let beta = kind.beta();
    let tau = structure_frequency(c, kind).g_squared;
    let TrigKernels { c: cos, s1, s2 } = trig_kernels(tau, t);
    let (a1, a2, a3) = (c.alpha1, c.alpha2, c.alpha3);
    CoefficientSet {
        r1: cos + 2.0 * beta * a1 * a1 * s2,
        r2: cos + 2.0 * beta * a2 * a2 * s2,
        r3: cos + 2.0 * a3 * a3 * s2,
        j_plus: 2.0 * beta * a1 * a2 * s2 + a3 * s1,
        j_minus: 2.0 * beta * a1 * a2 * s2 - a3 * s1,
        s_plus: 2.0 * a1 * a3 * s2 + a2 * s1,
        s_minus: 2.0 * a1 * a3 * s2 - a2 * s1,
        v_plus: 2.0 * a2 * a3 * s2 + a1 * s1,
        v_minus: 2.0 * a2 * a3 * s2 - a1 * s1,
        t,
    }
}

/// `M(t)`: row `i` gives `K_i(t)` as a combination of `K_x(0), K_y(0), K_z(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionMatrix {
    pub m: Matrix3<f64>,
    pub t: f64,
}

impl EvolutionMatrix {
    pub fn from_coefficients(cs: &CoefficientSet, kind: AlgebraKind) -> Self {
        let beta = kind.beta();
        #[rustfmt::skip]
        let m = Matrix3::new(
            cs.r1,      cs.j_minus, beta * cs.s_plus,
            cs.j_plus,  cs.r2,      beta * cs.v_minus,
            cs.s_minus, cs.v_plus,  cs.r3,
        );
        Self { m, t: cs.t }
    }

    /// Maps a vector of initial expectations `(⟨K_x⟩, ⟨K_y⟩, ⟨K_z⟩)` at `t = 0`
    /// to their values at `t`.
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let out = self.m * Vector3::from(v);
        [out[0], out[1], out[2]]
    }

    pub fn determinant(&self) -> f64 {
        self.m.determinant()
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.m[(i, j)];
            }
        }
        out
    }

    /// Largest entrywise difference between two flow matrices.
    pub fn max_abs_diff(&self, other: &EvolutionMatrix) -> f64 {
        (self.m - other.m).amax()
    }
}

pub fn evolution_matrix(c: &CouplingTriple, kind: AlgebraKind, t: f64) -> EvolutionMatrix {
    EvolutionMatrix::from_coefficients(&coefficient_set(c, kind, t), kind)
}

/// The constant matrix `A` of `d/dt (K_x, K_y, K_z)ᵀ = A (K_x, K_y, K_z)ᵀ`.
pub fn heisenberg_generator(c: &CouplingTriple, kind: AlgebraKind) -> Matrix3<f64> {
    let beta = kind.beta();
    let (a1, a2, a3) = (c.alpha1, c.alpha2, c.alpha3);
    #[rustfmt::skip]
    let a = Matrix3::new(
        0.0, -a3,  beta * a2,
        a3,  0.0, -beta * a1,
        -a2, a1,   0.0,
    );
    a
}

/// The metric `η = diag(β, β, 1)` left invariant by the flow.
pub fn metric(kind: AlgebraKind) -> Matrix3<f64> {
    let beta = kind.beta();
    Matrix3::from_diagonal(&Vector3::new(beta, beta, 1.0))
}

/// Max-norm of `mᵀ η m − η`.
pub fn metric_residual(m: &EvolutionMatrix, kind: AlgebraKind) -> f64 {
    let eta = metric(kind);
    (m.m.transpose() * eta * m.m - eta).amax()
}
