//! Time-dependent quadrature variances, squeezing factors and the
//! uncertainty check for the three coherent-state families.
//!
//! Writing the flow in ladder form,
//!
//! ```text
//! K_x(t) = f K₊ + f* K₋ + βS⁺ K_z
//! K_y(t) = g K₊ + g* K₋ + βV⁻ K_z
//! K_z(t) = h K₊ + h* K₋ + R₃  K_z
//! ```
//!
//! with `f = ½(R₁ − iJ⁻)`, `g = ½(J⁺ − iR₂)`, `h = ½(S⁻ − iV⁺)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{coefficient_set, AlgebraKind, CoefficientSet, CouplingTriple, EvolutionMatrix};
use crate::coherent::{
    BarutGirardelloState, BlochState, CoherentState, MomentTable, PerelomovState,
};
use crate::error::{Error, Result};

/// Ladder-form amplitudes of the evolved generators (`f`, `g`, `h`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAmplitudes {
    pub f_amp: Complex64,
    pub g_amp: Complex64,
    pub h_amp: Complex64,
}

pub fn mixing_amplitudes(cs: &CoefficientSet) -> MixingAmplitudes {
    MixingAmplitudes {
        f_amp: Complex64::new(0.5 * cs.r1, -0.5 * cs.j_minus),
        g_amp: Complex64::new(0.5 * cs.j_plus, -0.5 * cs.r2),
        h_amp: Complex64::new(0.5 * cs.s_minus, -0.5 * cs.v_plus),
    }
}

/// `⟨(ΔK_x)²⟩`, `⟨(ΔK_y)²⟩` and `⟨K_z⟩` at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Variances {
    pub vx: f64,
    pub vy: f64,
    pub kz: f64,
}

/// `w* a + w a*` for complex `w`, `a`.
fn sym(w: Complex64, a: Complex64) -> f64 {
    2.0 * (w.conj() * a).re
}

/// Perelomov state under an su(1,1) model.
pub fn variances_pcs(s: &PerelomovState, c: &CouplingTriple, t: f64) -> Variances {
    let cs = coefficient_set(c, AlgebraKind::Su11, t);
    let MixingAmplitudes { f_amp, g_amp, h_amp } = mixing_amplitudes(&cs);
    let x = s.xi.norm_sqr();
    let d = 1.0 - x;
    let quad = |amp: Complex64, shift: f64| {
        let q = sym(s.xi, amp);
        2.0 * s.k * (amp.norm_sqr() + (shift - q).powi(2) / (d * d) + shift * (q - shift) / d)
    };
    Variances {
        vx: quad(f_amp, cs.s_plus),
        vy: quad(g_amp, cs.v_minus),
        kz: s.k / d * ((1.0 + x) * cs.r3 + 2.0 * sym(s.xi, h_amp)),
    }
}

/// Barut–Girardello state under an su(1,1) model. Bessel functions enter
/// only through `I_{2n}(2|z|)/I_{2n−1}(2|z|)`.
pub fn variances_bgcs(s: &BarutGirardelloState, c: &CouplingTriple, t: f64) -> Variances {
    let cs = coefficient_set(c, AlgebraKind::Su11, t);
    let MixingAmplitudes { f_amp, g_amp, h_amp } = mixing_amplitudes(&cs);
    let a = s.z.norm();
    let r = s.bessel_quotient();
    let kz0 = s.n + a * r;
    let spread = a * (a * (1.0 - r * r) + (1.0 - 2.0 * s.n) * r);
    let quad = |amp: Complex64, shift: f64| {
        2.0 * amp.norm_sqr() * kz0 - shift * sym(s.z, amp) + shift * shift * spread
    };
    Variances {
        vx: quad(f_amp, cs.s_plus),
        vy: quad(g_amp, cs.v_minus),
        kz: cs.r3 * kz0 + sym(s.z, h_amp),
    }
}

/// Bloch state under an su(2) model.
///
/// The `K_y` variance pairs `g` with `V⁻`, the `(2,3)` entry of the flow
/// matrix; `⟨K_z⟩` carries the prefactor `j/(1+|μ|²)`, which reproduces
/// `⟨K_z(0)⟩ = j(|μ|²−1)/(1+|μ|²)`.
pub fn variances_bloch(s: &BlochState, c: &CouplingTriple, t: f64) -> Variances {
    let cs = coefficient_set(c, AlgebraKind::Su2, t);
    let MixingAmplitudes { f_amp, g_amp, h_amp } = mixing_amplitudes(&cs);
    let y = s.mu.norm_sqr();
    let e = 1.0 + y;
    let quad = |amp: Complex64, shift: f64| {
        let q = sym(s.mu, amp);
        2.0 * s.j * ((shift - q) * q / e + amp.norm_sqr() + y * (shift - q).powi(2) / (e * e))
    };
    Variances {
        vx: quad(f_amp, cs.s_plus),
        vy: quad(g_amp, cs.v_minus),
        kz: s.j / e * (cs.r3 * (y - 1.0) + 2.0 * sym(s.mu, h_amp)),
    }
}

/// Variances for any state by pushing its initial covariance matrix through
/// the flow: `Var K_i(t) = (M Σ Mᵀ)_ii`. Independent of the per-family
/// closed forms.
pub fn variances_from_moments(moments: &MomentTable, m: &EvolutionMatrix) -> Variances {
    let cov = moments.covariance();
    let sigma = nalgebra::Matrix3::from_fn(|i, j| cov[i][j]);
    let evolved = m.m * sigma * m.m.transpose();
    let kz = m.apply(moments.first_moments())[2];
    Variances {
        vx: evolved[(0, 0)],
        vy: evolved[(1, 1)],
        kz,
    }
}

/// Relative size of `|⟨K_z⟩|` (against `max(1, v)`) below which the
/// squeezing factor is undefined.
pub const SQUEEZING_FLOOR: f64 = 1e-12;

/// `S = (v − ½|⟨K_z⟩|) / (½|⟨K_z⟩|)`; `None` when `⟨K_z⟩` vanishes.
///
/// `S < 0` signals squeezing and `S = −1` is complete squeezing.
pub fn squeezing_factor(v: f64, kz: f64) -> Option<f64> {
    let half = 0.5 * kz.abs();
    if kz.abs() < SQUEEZING_FLOOR * v.abs().max(1.0) {
        None
    } else {
        Some((v - half) / half)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyRecord {
    pub product: f64,
    pub bound: f64,
    pub satisfied: bool,
}

/// Checks `⟨(ΔK_x)²⟩⟨(ΔK_y)²⟩ ≥ ¼⟨K_z⟩²` with a roundoff allowance of
/// `1e-9·max(1, bound)`.
pub fn uncertainty_record(vx: f64, vy: f64, kz: f64) -> UncertaintyRecord {
    let product = vx * vy;
    let bound = 0.25 * kz * kz;
    UncertaintyRecord {
        product,
        bound,
        satisfied: product >= bound - 1e-9 * bound.max(1.0),
    }
}

/// One time sample of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRecord {
    pub t: f64,
    pub vx: f64,
    pub vy: f64,
    pub kz: f64,
    /// First-quadrature squeezing factor; `None` where undefined.
    pub sx: Option<f64>,
    pub sy: Option<f64>,
    pub product: f64,
    pub bound: f64,
}

impl QuadratureRecord {
    pub fn from_variances(t: f64, v: Variances) -> Self {
        let u = uncertainty_record(v.vx, v.vy, v.kz);
        Self {
            t,
            vx: v.vx,
            vy: v.vy,
            kz: v.kz,
            sx: squeezing_factor(v.vx, v.kz),
            sy: squeezing_factor(v.vy, v.kz),
            product: u.product,
            bound: u.bound,
        }
    }

    pub fn satisfies_uncertainty(&self) -> bool {
        self.product >= self.bound - 1e-9 * self.bound.max(1.0)
    }
}

/// A Hamiltonian `α₁K_x + α₂K_y + α₃K_z` over a given algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    pub couplings: CouplingTriple,
    pub kind: AlgebraKind,
}

impl Model {
    pub fn new(couplings: CouplingTriple, kind: AlgebraKind) -> Self {
        Self { couplings, kind }
    }

    pub fn check_state(&self, state: &CoherentState) -> Result<()> {
        if state.kind() == self.kind {
            Ok(())
        } else {
            Err(Error::Incompatible {
                state: state.name(),
                kind: self.kind,
            })
        }
    }
}

/// Closed-form variances of `state` at time `t`.
pub fn variances(model: &Model, state: &CoherentState, t: f64) -> Result<Variances> {
    model.check_state(state)?;
    let c = &model.couplings;
    Ok(match state {
        CoherentState::Perelomov(s) => variances_pcs(s, c, t),
        CoherentState::BarutGirardello(s) => variances_bgcs(s, c, t),
        CoherentState::Bloch(s) => variances_bloch(s, c, t),
    })
}

/// `steps + 1` equally spaced instants covering `[0, t_max]`.
pub fn time_grid(t_max: f64, steps: usize) -> Vec<f64> {
    if steps == 0 {
        return vec![0.0];
    }
    (0..=steps)
        .map(|i| t_max * i as f64 / steps as f64)
        .collect()
}

/// One record per grid instant, in grid order.
pub fn sweep(model: &Model, state: &CoherentState, t_grid: &[f64]) -> Result<Vec<QuadratureRecord>> {
    model.check_state(state)?;
    Ok(t_grid
        .par_iter()
        .map(|&t| {
            let v = variances(model, state, t).expect("compatibility checked above");
            QuadratureRecord::from_variances(t, v)
        })
        .collect())
}
