//! Strong-pump reduction of the su(1,1) three-mode generators.
//!
//! With modes 1 and 2 replaced by classical amplitudes `|Γ_j| e^{iφ_j}` and
//! `φ₂ = φ₁ + π/2`, the pair operators collapse onto single-mode quadratures
//! of mode 3:
//!
//! ```text
//! L_x = −|Γ₂| [A₃ e^{−iφ₁} + A₃† e^{iφ₁}]
//! L_y =  i|Γ₁| [A₃ e^{−iφ₁} − A₃† e^{iφ₁}]
//! L_z = −2|Γ₁||Γ₂|
//! ```

use num_complex::Complex64;

/// `amplitude · [A e^{−iφ} ± A† e^{iφ}]`, with the sign fixed by the role.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpQuadrature {
    pub amplitude: f64,
    pub phase: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedQuadratures {
    /// Coefficient pair of `A e^{−iφ} + A† e^{iφ}`.
    pub lx: PumpQuadrature,
    /// Coefficient pair of `i[A e^{−iφ} − A† e^{iφ}]`.
    pub ly: PumpQuadrature,
    /// The c-number left in place of `L_z`.
    pub lz: f64,
}

impl ReducedQuadratures {
    /// `⟨L_x⟩` in a mode-3 coherent state of amplitude `a`.
    pub fn lx_mean(&self, a: Complex64) -> f64 {
        let rotated = a * Complex64::from_polar(1.0, -self.lx.phase);
        self.lx.amplitude * 2.0 * rotated.re
    }

    /// `⟨L_y⟩` in a mode-3 coherent state of amplitude `a`.
    pub fn ly_mean(&self, a: Complex64) -> f64 {
        let rotated = a * Complex64::from_polar(1.0, -self.ly.phase);
        -self.ly.amplitude * 2.0 * rotated.im
    }

    /// The c-number `[L_x, L_y]/i` of the reduced operators.
    ///
    /// `[A, A†] = 1` gives `2 · lx.amplitude · ly.amplitude · (−1)`, which
    /// equals `β·L_z` with `β = −1`.
    pub fn commutator_over_i(&self) -> f64 {
        -2.0 * self.lx.amplitude * self.ly.amplitude
    }
}

pub fn strong_pump_reduction(gamma1_abs: f64, gamma2_abs: f64, phi1: f64) -> ReducedQuadratures {
    ReducedQuadratures {
        lx: PumpQuadrature {
            amplitude: -gamma2_abs,
            phase: phi1,
        },
        ly: PumpQuadrature {
            amplitude: gamma1_abs,
            phase: phi1,
        },
        lz: -2.0 * gamma1_abs * gamma2_abs,
    }
}
