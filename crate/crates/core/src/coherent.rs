//! Perelomov, Barut–Girardello and Bloch coherent states: parameters, basis
//! amplitudes and initial-time moments.
//!
//! Basis conventions follow the ladder rules of the discrete series:
//!
//! * su(1,1), Bargmann index `k`: `K_z|m;k⟩ = (m+k)|m;k⟩`,
//!   `K₊|m;k⟩ = √((m+1)(m+2k)) |m+1;k⟩`, `m = 0, 1, …`
//! * su(2), spin `j`: `K_z|m;j⟩ = m|m;j⟩`,
//!   `K₊|m;j⟩ = √((j−m)(j+m+1)) |m+1;j⟩`, `m = −j, …, j`
//!
//! With these rules `[K₋, K₊] = −2βK_z`.
//!
//! Moments are available along two independent routes: [`moments_series`]
//! sums the ladder action over the amplitudes, and [`moments_closed`] uses
//! closed forms derived from the generating functions of each family.

use num_complex::Complex64;

use crate::algebra::AlgebraKind;
use crate::error::{Error, Result};
use crate::special::{bessel_ratio, bessel_i_scaled, log_binomial, log_gamma};

/// Default upper bound on the number of basis states kept for su(1,1) states.
pub const DEFAULT_CUTOFF_CAP: usize = 4096;

/// Perelomov state `|ξ; k⟩`, a squeezed-vacuum-type su(1,1) coherent state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerelomovState {
    pub k: f64,
    pub xi: Complex64,
}

impl PerelomovState {
    pub fn new(k: f64, xi: Complex64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(invalid("perelomov", format!("Bargmann index k = {k} must be > 0")));
        }
        if !(xi.norm() < 1.0) {
            return Err(invalid("perelomov", format!("|xi| = {} must be < 1", xi.norm())));
        }
        Ok(Self { k, xi })
    }

    /// `ξ = |ξ| e^{−iφ}`.
    pub fn from_polar(k: f64, xi_abs: f64, phi: f64) -> Result<Self> {
        if xi_abs < 0.0 {
            return Err(invalid("perelomov", format!("|xi| = {xi_abs} must be >= 0")));
        }
        Self::new(k, Complex64::from_polar(xi_abs, -phi))
    }
}

/// Barut–Girardello state `|z; n⟩`, eigenstate of `K₋` with eigenvalue `z`.
/// The Bargmann index of the carrier representation is `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarutGirardelloState {
    pub n: f64,
    pub z: Complex64,
}

impl BarutGirardelloState {
    pub fn new(n: f64, z: Complex64) -> Result<Self> {
        if !(n > 0.0) || !n.is_finite() {
            return Err(invalid("barut-girardello", format!("index n = {n} must be > 0")));
        }
        if !z.norm().is_finite() {
            return Err(invalid("barut-girardello", "z must be finite".into()));
        }
        Ok(Self { n, z })
    }

    /// `z = |z| e^{i·arg}`.
    pub fn from_polar(n: f64, z_abs: f64, z_arg: f64) -> Result<Self> {
        if z_abs < 0.0 {
            return Err(invalid("barut-girardello", format!("|z| = {z_abs} must be >= 0")));
        }
        Self::new(n, Complex64::from_polar(z_abs, z_arg))
    }

    /// `I_{2n}(2|z|) / I_{2n−1}(2|z|)`.
    pub fn bessel_quotient(&self) -> f64 {
        bessel_ratio(2.0 * self.n - 1.0, 2.0 * self.z.norm()).expect("n > 0 keeps the order above -1")
    }
}

/// Bloch (spin-coherent) state `|μ, j⟩` of the `(2j+1)`-dimensional su(2)
/// representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub j: f64,
    pub mu: Complex64,
}

impl BlochState {
    pub fn new(j: f64, mu: Complex64) -> Result<Self> {
        let two_j = 2.0 * j;
        if !(j >= 0.5) || two_j.fract() != 0.0 || !two_j.is_finite() {
            return Err(invalid("bloch", format!("j = {j} must be a positive half-integer")));
        }
        if !mu.norm().is_finite() {
            return Err(invalid("bloch", "mu must be finite".into()));
        }
        Ok(Self { j, mu })
    }

    /// `μ = |μ| e^{i·arg}`.
    pub fn from_polar(j: f64, mu_abs: f64, mu_arg: f64) -> Result<Self> {
        if mu_abs < 0.0 {
            return Err(invalid("bloch", format!("|mu| = {mu_abs} must be >= 0")));
        }
        Self::new(j, Complex64::from_polar(mu_abs, mu_arg))
    }

    pub fn dim(&self) -> usize {
        (2.0 * self.j).round() as usize + 1
    }
}

fn invalid(state: &'static str, reason: String) -> Error {
    Error::InvalidState { state, reason }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoherentState {
    Perelomov(PerelomovState),
    BarutGirardello(BarutGirardelloState),
    Bloch(BlochState),
}

impl CoherentState {
    /// The algebra whose representation carries this state.
    pub fn kind(&self) -> AlgebraKind {
        match self {
            CoherentState::Bloch(_) => AlgebraKind::Su2,
            _ => AlgebraKind::Su11,
        }
    }

    /// Representation label: `k` (Perelomov), `n` (Barut–Girardello) or `j`.
    pub fn index(&self) -> f64 {
        match self {
            CoherentState::Perelomov(s) => s.k,
            CoherentState::BarutGirardello(s) => s.n,
            CoherentState::Bloch(s) => s.j,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CoherentState::Perelomov(_) => "pcs",
            CoherentState::BarutGirardello(_) => "bgcs",
            CoherentState::Bloch(_) => "bloch",
        }
    }

    /// Probability of basis state `i` (position in the ladder basis).
    fn log_weight(&self, i: usize) -> f64 {
        let m = i as f64;
        match self {
            CoherentState::Perelomov(s) => {
                let x = s.xi.norm_sqr();
                if x == 0.0 {
                    return if i == 0 { 0.0 } else { f64::NEG_INFINITY };
                }
                // (1−x)^{2k} Γ(m+2k) / (m! Γ(2k)) x^m
                2.0 * s.k * (-x).ln_1p()
                    + log_binomial(m + 2.0 * s.k - 1.0, m).expect("k > 0")
                    + m * x.ln()
            }
            CoherentState::BarutGirardello(s) => {
                let a = s.z.norm();
                if a == 0.0 {
                    return if i == 0 { 0.0 } else { f64::NEG_INFINITY };
                }
                // a^{2m} / (m! Γ(m+2n)) normalized by a^{1−2n} I_{2n−1}(2a)
                let nu = 2.0 * s.n - 1.0;
                let log_norm = -nu * a.ln()
                    + bessel_i_scaled(nu, 2.0 * a).expect("order > -1").ln()
                    + 2.0 * a;
                2.0 * m * a.ln()
                    - log_gamma(m + 1.0).expect("m >= 0")
                    - log_gamma(m + 2.0 * s.n).expect("n > 0")
                    - log_norm
            }
            CoherentState::Bloch(s) => {
                let y = s.mu.norm_sqr();
                let two_j = 2.0 * s.j;
                if y == 0.0 {
                    return if i == 0 { 0.0 } else { f64::NEG_INFINITY };
                }
                // C(2j, j+m) y^{j+m} / (1+y)^{2j}, with j + m = i
                log_binomial(two_j, m).expect("0 <= i <= 2j") + m * y.ln() - two_j * y.ln_1p()
            }
        }
    }

    fn phase_base(&self) -> f64 {
        match self {
            CoherentState::Perelomov(s) => s.xi.arg(),
            CoherentState::BarutGirardello(s) => s.z.arg(),
            CoherentState::Bloch(s) => s.mu.arg(),
        }
    }

    /// Exact amplitudes of the first `dim` ladder basis states. su(1,1)
    /// truncations are not renormalized; for Bloch states `dim` is clamped
    /// to `2j+1`.
    pub fn basis_amplitudes(&self, dim: usize) -> Vec<Complex64> {
        let dim = match self {
            CoherentState::Bloch(s) => dim.min(s.dim()),
            _ => dim,
        };
        let phase = self.phase_base();
        let mut amps: Vec<Complex64> = (0..dim)
            .map(|i| {
                let lw = self.log_weight(i);
                if lw == f64::NEG_INFINITY {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::from_polar((0.5 * lw).exp(), i as f64 * phase)
                }
            })
            .collect();
        // A complete su(2) multiplet is normalized exactly; only log-space
        // roundoff is removed here.
        if matches!(self, CoherentState::Bloch(s) if dim == s.dim()) {
            let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|c| *c /= norm);
        }
        amps
    }

    /// Upper bound on `Σ_{m ≥ dim} |c_m|²`. Zero for Bloch states whose full
    /// dimension is covered.
    pub fn tail_bound(&self, dim: usize) -> f64 {
        let m = dim as f64;
        let ratio_sup = match self {
            CoherentState::Perelomov(s) => {
                let x = s.xi.norm_sqr();
                if x == 0.0 {
                    return if dim >= 1 { 0.0 } else { 1.0 };
                }
                // p_{m+1}/p_m = x (m+2k)/(m+1), monotone in m towards x
                x * ((m + 2.0 * s.k) / (m + 1.0)).max(1.0)
            }
            CoherentState::BarutGirardello(s) => {
                let a2 = s.z.norm_sqr();
                if a2 == 0.0 {
                    return if dim >= 1 { 0.0 } else { 1.0 };
                }
                // p_{m+1}/p_m = a² / ((m+1)(m+2n)), decreasing in m
                a2 / ((m + 1.0) * (m + 2.0 * s.n))
            }
            CoherentState::Bloch(s) => {
                if dim >= s.dim() {
                    return 0.0;
                }
                return 1.0;
            }
        };
        if ratio_sup >= 1.0 {
            return 1.0;
        }
        let p = self.log_weight(dim).exp();
        (p / (1.0 - ratio_sup)).min(1.0)
    }

    /// Smallest `M` whose discarded tail is certified below `tail_tol`.
    pub fn cutoff(&self, tail_tol: f64, cap: usize) -> Result<usize> {
        if let CoherentState::Bloch(s) = self {
            return Ok(s.dim());
        }
        let mut m = 1;
        while self.tail_bound(m) >= tail_tol {
            m += 1;
            if m > cap {
                return Err(Error::CutoffExceeded { cap });
            }
        }
        Ok(m)
    }
}

impl From<PerelomovState> for CoherentState {
    fn from(s: PerelomovState) -> Self {
        CoherentState::Perelomov(s)
    }
}

impl From<BarutGirardelloState> for CoherentState {
    fn from(s: BarutGirardelloState) -> Self {
        CoherentState::BarutGirardello(s)
    }
}

impl From<BlochState> for CoherentState {
    fn from(s: BlochState) -> Self {
        CoherentState::Bloch(s)
    }
}

/// Amplitudes of a coherent state in the ladder basis of its representation.
///
/// `amps[i]` multiplies `|m;k⟩` with `m = i` (su(1,1)) or `|m;j⟩` with
/// `m = −j + i` (su(2)).
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub kind: AlgebraKind,
    /// `k` for su(1,1), `j` for su(2).
    pub index: f64,
    pub amps: Vec<Complex64>,
}

impl Coefficients {
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `K_z` eigenvalue of basis position `i`.
    pub fn kz_eigenvalue(&self, i: usize) -> f64 {
        match self.kind {
            AlgebraKind::Su11 => i as f64 + self.index,
            AlgebraKind::Su2 => i as f64 - self.index,
        }
    }

    /// Matrix element `⟨i+1| K₊ |i⟩`.
    pub fn raise_element(&self, i: usize) -> f64 {
        ladder_element(self.kind, self.index, i)
    }

    /// `K₊ ψ`; the result is one entry longer (su(1,1)) or the same length
    /// with the top state annihilated (su(2)).
    pub fn raise(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len() + 1];
        for (i, c) in v.iter().enumerate() {
            out[i + 1] = c * self.raise_element(i);
        }
        if self.kind == AlgebraKind::Su2 {
            out.truncate(v.len());
        }
        out
    }

    /// `K₋ ψ`.
    pub fn lower(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for i in 1..v.len() {
            out[i - 1] = v[i] * self.raise_element(i - 1);
        }
        out
    }

    /// `K_z ψ`.
    pub fn apply_kz(&self, v: &[Complex64]) -> Vec<Complex64> {
        v.iter()
            .enumerate()
            .map(|(i, c)| c * self.kz_eigenvalue(i))
            .collect()
    }
}

/// `⟨i+1| K₊ |i⟩` in the ladder basis (positions counted from the lowest
/// weight).
pub fn ladder_element(kind: AlgebraKind, index: f64, i: usize) -> f64 {
    let i = i as f64;
    match kind {
        AlgebraKind::Su11 => ((i + 1.0) * (i + 2.0 * index)).sqrt(),
        AlgebraKind::Su2 => {
            let m = i - index;
            ((index - m) * (index + m + 1.0)).max(0.0).sqrt()
        }
    }
}

fn truncated(state: CoherentState, tail_tol: f64, cap: usize) -> Result<Coefficients> {
    if !(tail_tol > 0.0 && tail_tol <= 1e-6) {
        return Err(Error::Domain {
            function: "coefficients",
            value: tail_tol,
            domain: "0 < tail_tol <= 1e-6",
        });
    }
    let dim = state.cutoff(tail_tol, cap)?;
    Ok(Coefficients {
        kind: state.kind(),
        index: state.index(),
        amps: state.basis_amplitudes(dim),
    })
}

pub fn pcs_coefficients(s: &PerelomovState, tail_tol: f64) -> Result<Coefficients> {
    truncated((*s).into(), tail_tol, DEFAULT_CUTOFF_CAP)
}

pub fn bgcs_coefficients(s: &BarutGirardelloState, tail_tol: f64) -> Result<Coefficients> {
    truncated((*s).into(), tail_tol, DEFAULT_CUTOFF_CAP)
}

/// All `2j+1` amplitudes, normalized by `(1+|μ|²)^{−j}`.
pub fn bloch_coefficients(s: &BlochState) -> Coefficients {
    Coefficients {
        kind: AlgebraKind::Su2,
        index: s.j,
        amps: CoherentState::Bloch(*s).basis_amplitudes(s.dim()),
    }
}

/// Amplitudes for any coherent state; `tail_tol` and `cap` only matter for
/// su(1,1) states.
pub fn coefficients(state: &CoherentState, tail_tol: f64, cap: usize) -> Result<Coefficients> {
    match state {
        CoherentState::Bloch(s) => Ok(bloch_coefficients(s)),
        _ => truncated(*state, tail_tol, cap),
    }
}

/// Initial-time expectation values up to second order.
///
/// `⟨K₋ …⟩` entries follow by conjugation: `⟨K₋⟩ = conj(kp)` and so on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentTable {
    pub kz: f64,
    pub kz2: f64,
    /// `⟨K₊⟩`
    pub kp: Complex64,
    /// `⟨K₊²⟩`
    pub kp2: Complex64,
    /// `⟨K_z K₊⟩`
    pub kzkp: Complex64,
    /// `⟨K₊K₋⟩`
    pub kpkm: f64,
    /// `⟨K₋K₊⟩`
    pub kmkp: f64,
}

impl MomentTable {
    pub fn km(&self) -> Complex64 {
        self.kp.conj()
    }

    /// `(⟨K_x⟩, ⟨K_y⟩, ⟨K_z⟩)`.
    pub fn first_moments(&self) -> [f64; 3] {
        [self.kp.re, self.kp.im, self.kz]
    }

    /// Symmetrized covariance `½⟨{K_a, K_b}⟩ − ⟨K_a⟩⟨K_b⟩` of the generator
    /// triple, rows/columns ordered x, y, z.
    pub fn covariance(&self) -> [[f64; 3]; 3] {
        let [x, y, z] = self.first_moments();
        let xx = 0.25 * (2.0 * self.kp2.re + self.kpkm + self.kmkp) - x * x;
        let yy = 0.25 * (self.kpkm + self.kmkp - 2.0 * self.kp2.re) - y * y;
        let zz = self.kz2 - z * z;
        let xy = 0.5 * self.kp2.im - x * y;
        // ⟨{K_z, K₊}⟩ = 2⟨K_z K₊⟩ − ⟨K₊⟩
        let anti = 2.0 * self.kzkp - self.kp;
        let xz = 0.5 * anti.re - x * z;
        let yz = 0.5 * anti.im - y * z;
        [[xx, xy, xz], [xy, yy, yz], [xz, yz, zz]]
    }

    pub fn variance_x(&self) -> f64 {
        self.covariance()[0][0]
    }

    pub fn variance_y(&self) -> f64 {
        self.covariance()[1][1]
    }

    /// Largest entrywise relative difference to another table.
    pub fn relative_gap(&self, other: &MomentTable) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
        let rel_c = |a: Complex64, b: Complex64| (a - b).norm() / a.norm().max(b.norm()).max(1e-300);
        [
            rel(self.kz, other.kz),
            rel(self.kz2, other.kz2),
            rel_c(self.kp, other.kp),
            rel_c(self.kp2, other.kp2),
            rel_c(self.kzkp, other.kzkp),
            rel(self.kpkm, other.kpkm),
            rel(self.kmkp, other.kmkp),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Moments by direct summation of the ladder action over the amplitudes.
pub fn moments_series(coeffs: &Coefficients) -> MomentTable {
    let psi = &coeffs.amps;
    let kz_psi = coeffs.apply_kz(psi);
    let up = coeffs.raise(psi);
    let up2 = coeffs.raise(&up);
    let down = coeffs.lower(psi);
    let kz_up = coeffs.apply_kz(&up);

    let kz = inner(psi, &kz_psi).re;
    let kz2 = inner(&kz_psi, &kz_psi).re;
    MomentTable {
        kz,
        kz2,
        kp: inner(psi, &up),
        kp2: inner(psi, &up2),
        kzkp: inner(psi, &kz_up),
        kpkm: inner(&down, &down).re,
        kmkp: inner(&up, &up).re,
    }
}

/// Closed-form moments.
///
/// Perelomov (`x = |ξ|²`, `D = 1 − x`): with `F = (1 − ξξ*)^{−2k}`,
/// `⟨K₋^l K_z^m K₊^n⟩ = D^{2k} ∂_{ξ*}^l ∂_ξ^n (k + ξ∂_ξ)^m F`, giving
///
/// ```text
/// ⟨K_z⟩   = k(1+x)/D            ⟨K_z²⟩  = [k²(1+x)² + 2kx]/D²
/// ⟨K₊⟩    = 2kξ*/D              ⟨K₊²⟩   = 2k(2k+1)ξ*²/D²
/// ⟨K₋K₊⟩  = 2k(1+2kx)/D²        ⟨K_zK₊⟩ = 2kξ*[(k+1)/D + (2k+1)x/D²]
/// ```
///
/// Barut–Girardello (`a = |z|`, `r = I_{2n}(2a)/I_{2n−1}(2a)`): applying
/// `(x/2 ∂_x)^m` to `x I_{2n−1}(x)` and reducing with the Bessel recurrences,
///
/// ```text
/// ⟨K_z⟩ = n + ar      ⟨K_z²⟩ = n² + a² + ar
/// ⟨K₊⟩ = z*   ⟨K₊²⟩ = z*²   ⟨K₊K₋⟩ = a²   ⟨K_zK₊⟩ = z*(⟨K_z⟩ + 1)
/// ```
///
/// Bloch (`y = |μ|²`, `E = 1 + y`): with `F = E^{2j}` and `K_z → μ∂_μ − j`,
///
/// ```text
/// ⟨K_z⟩   = j(y−1)/E            ⟨K_z²⟩  = j² − 4j²y/E + 2jy/E + 2j(2j−1)y²/E²
/// ⟨K₊⟩    = 2jμ*/E              ⟨K₊²⟩   = 2j(2j−1)μ*²/E²
/// ⟨K₋K₊⟩  = 2j(1+2jy)/E²        ⟨K_zK₊⟩ = 2jμ*[(1−j)/E + (2j−1)y/E²]
/// ```
///
/// The remaining normal/antinormal product follows from
/// `K₊K₋ = K₋K₊ + 2βK_z`.
pub fn moments_closed(state: &CoherentState) -> MomentTable {
    let beta = state.kind().beta();
    match state {
        CoherentState::Perelomov(s) => {
            let k = s.k;
            let x = s.xi.norm_sqr();
            let d = 1.0 - x;
            let xs = s.xi.conj();
            let kz = k * (1.0 + x) / d;
            let kmkp = 2.0 * k * (1.0 + 2.0 * k * x) / (d * d);
            MomentTable {
                kz,
                kz2: (k * k * (1.0 + x).powi(2) + 2.0 * k * x) / (d * d),
                kp: xs * (2.0 * k / d),
                kp2: xs * xs * (2.0 * k * (2.0 * k + 1.0) / (d * d)),
                kzkp: xs * (2.0 * k * ((k + 1.0) / d + (2.0 * k + 1.0) * x / (d * d))),
                kpkm: kmkp + 2.0 * beta * kz,
                kmkp,
            }
        }
        CoherentState::BarutGirardello(s) => {
            let a = s.z.norm();
            let r = s.bessel_quotient();
            let zs = s.z.conj();
            let kz = s.n + a * r;
            let kpkm = a * a;
            MomentTable {
                kz,
                kz2: s.n * s.n + a * a + a * r,
                kp: zs,
                kp2: zs * zs,
                kzkp: zs * (kz + 1.0),
                kpkm,
                kmkp: kpkm - 2.0 * beta * kz,
            }
        }
        CoherentState::Bloch(s) => {
            let j = s.j;
            let y = s.mu.norm_sqr();
            let e = 1.0 + y;
            let ms = s.mu.conj();
            let kz = j * (y - 1.0) / e;
            let kmkp = 2.0 * j * (1.0 + 2.0 * j * y) / (e * e);
            MomentTable {
                kz,
                kz2: j * j - 4.0 * j * j * y / e
                    + 2.0 * j * y / e
                    + 2.0 * j * (2.0 * j - 1.0) * y * y / (e * e),
                kp: ms * (2.0 * j / e),
                kp2: ms * ms * (2.0 * j * (2.0 * j - 1.0) / (e * e)),
                kzkp: ms * (2.0 * j * ((1.0 - j) / e + (2.0 * j - 1.0) * y / (e * e))),
                kpkm: kmkp + 2.0 * beta * kz,
                kmkp,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pcs(k: f64, xi_abs: f64, phi: f64) -> PerelomovState {
        PerelomovState::from_polar(k, xi_abs, phi).unwrap()
    }

    fn state_grid() -> Vec<CoherentState> {
        let mut out = Vec::new();
        for k in [0.25, 0.75, 1.0, 2.0] {
            for xi in [0.1, 0.5, 0.8] {
                out.push(pcs(k, xi, 0.9).into());
            }
        }
        for n in [0.5, 2.0] {
            for z in [1.0, 10.0] {
                out.push(BarutGirardelloState::from_polar(n, z, 2.1).unwrap().into());
            }
        }
        for j in [0.5, 1.0, 5.0] {
            for mu in [0.5, 10.0] {
                out.push(BlochState::from_polar(j, mu, -0.4).unwrap().into());
            }
        }
        out
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
    }

    fn close_c(a: Complex64, b: Complex64, rel: f64) -> bool {
        (a - b).norm() <= rel * a.norm().max(b.norm()).max(1e-300)
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(PerelomovState::new(0.0, Complex64::new(0.1, 0.0)).is_err());
        assert!(PerelomovState::new(0.5, Complex64::new(1.0, 0.0)).is_err());
        assert!(BarutGirardelloState::new(-1.0, Complex64::new(1.0, 0.0)).is_err());
        assert!(BlochState::new(0.3, Complex64::new(1.0, 0.0)).is_err());
        assert!(BlochState::new(0.0, Complex64::new(1.0, 0.0)).is_err());
        assert!(BlochState::new(1.5, Complex64::new(1.0, 0.0)).is_ok());
    }

    #[test]
    fn pcs_vacuum_and_weight_ratio() {
        let c = pcs_coefficients(&pcs(0.25, 0.0, 0.0), 1e-10).unwrap();
        assert_eq!(c.amps[0], Complex64::new(1.0, 0.0));
        assert!(c.amps[1..].iter().all(|a| a.norm() == 0.0));

        let c = pcs_coefficients(&pcs(0.25, 0.5, 0.0), 1e-10).unwrap();
        let ratio = c.amps[1].norm_sqr() / c.amps[0].norm_sqr();
        assert!((ratio - 0.125).abs() < 1e-14);
    }

    #[test]
    fn truncated_sequences_are_normalized() {
        for tol in [1e-6, 1e-10] {
            for s in state_grid() {
                let c = coefficients(&s, tol, DEFAULT_CUTOFF_CAP).unwrap();
                let n = c.norm_sqr();
                assert!(n <= 1.0 + 1e-13 && n >= 1.0 - tol, "{s:?}: {n}");
            }
        }
        let c = bgcs_coefficients(
            &BarutGirardelloState::from_polar(2.0, 10.0, PI).unwrap(),
            1e-10,
        )
        .unwrap();
        assert!((c.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn tail_bound_is_honest() {
        for s in [
            CoherentState::from(pcs(0.25, 0.8, 0.0)),
            pcs(2.0, 0.8, 0.0).into(),
            BarutGirardelloState::from_polar(2.0, 10.0, PI).unwrap().into(),
        ] {
            let m = s.cutoff(1e-10, DEFAULT_CUTOFF_CAP).unwrap();
            let far = s.basis_amplitudes(m + 2000);
            let tail: f64 = far[m..].iter().map(|c| c.norm_sqr()).sum();
            assert!(tail < 1e-10, "{s:?}: tail {tail}");
        }
    }

    #[test]
    fn cutoff_cap_is_enforced() {
        let s = pcs(0.5, 0.999_999, 0.0);
        assert_eq!(
            pcs_coefficients(&s, 1e-10),
            Err(Error::CutoffExceeded { cap: DEFAULT_CUTOFF_CAP })
        );
    }

    #[test]
    fn bgcs_is_a_lowering_eigenstate() {
        let s = BarutGirardelloState::from_polar(2.0, 10.0, PI).unwrap();
        assert_eq!(
            bgcs_coefficients(&BarutGirardelloState::new(2.0, Complex64::new(0.0, 0.0)).unwrap(), 1e-10)
                .unwrap()
                .amps[0],
            Complex64::new(1.0, 0.0)
        );
        let c = bgcs_coefficients(&s, 1e-12).unwrap();
        let down = c.lower(&c.amps);
        // the last entry loses its partner above the cutoff
        for i in 0..c.len() - 1 {
            assert!((down[i] - s.z * c.amps[i]).norm() < 1e-10, "i={i}");
        }
    }

    #[test]
    fn bloch_coefficients_examples() {
        let c = bloch_coefficients(&BlochState::new(2.0, Complex64::new(0.0, 0.0)).unwrap());
        assert_eq!(c.len(), 5);
        assert_eq!(c.amps[0], Complex64::new(1.0, 0.0));

        let c = bloch_coefficients(&BlochState::new(0.5, Complex64::new(1.0, 0.0)).unwrap());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((c.amps[0].re - h).abs() < 1e-15 && (c.amps[1].re - h).abs() < 1e-15);

        let c = bloch_coefficients(&BlochState::new(3.0, Complex64::new(0.0, 1e8)).unwrap());
        assert!(c.amps[6].norm_sqr() > 1.0 - 1e-14);

        for j in [0.5, 1.0, 2.5, 7.0] {
            for mu in [0.01, 0.7, 3.0, 100.0] {
                let c = bloch_coefficients(&BlochState::from_polar(j, mu, 1.1).unwrap());
                assert!((c.norm_sqr() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn closed_moment_examples() {
        let m = moments_closed(&pcs(0.25, 0.5, 0.3).into());
        assert!((m.kz - 5.0 / 12.0).abs() < 1e-15);

        let s = BarutGirardelloState::from_polar(2.0, 10.0, PI).unwrap();
        let closed = moments_closed(&s.into());
        let series = moments_series(&bgcs_coefficients(&s, 1e-14).unwrap());
        assert!(close(closed.kz, series.kz, 1e-10));
        assert!((closed.km() - s.z).norm() < 1e-15);

        let b = BlochState::new(3.5, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(moments_closed(&b.into()).kz, -3.5);
    }

    #[test]
    fn series_moment_examples() {
        let m = moments_series(&pcs_coefficients(&pcs(0.25, 0.5, 0.0), 1e-14).unwrap());
        assert!((m.kz - 5.0 / 12.0).abs() < 1e-12);

        for (n, z) in [(0.5, 1.0), (2.0, 10.0), (1.3, 4.0)] {
            let s = BarutGirardelloState::from_polar(n, z, 0.8).unwrap();
            let m = moments_series(&bgcs_coefficients(&s, 1e-14).unwrap());
            assert!((m.km() - s.z).norm() < 1e-10 * z);
        }

        let b = BlochState::from_polar(1.0, 1.0, 0.4).unwrap();
        let m = moments_series(&bloch_coefficients(&b));
        assert!(m.kz.abs() < 1e-15);
    }

    #[test]
    fn closed_and_series_paths_agree() {
        for s in state_grid() {
            let closed = moments_closed(&s);
            let series = moments_series(&coefficients(&s, 1e-15, DEFAULT_CUTOFF_CAP).unwrap());
            let tol = 1e-10;
            assert!(close(closed.kz, series.kz, tol), "{s:?} kz");
            assert!(close(closed.kz2, series.kz2, tol), "{s:?} kz2");
            assert!(close_c(closed.kp, series.kp, tol), "{s:?} kp");
            assert!(close_c(closed.kp2, series.kp2, tol), "{s:?} kp2");
            assert!(close_c(closed.kzkp, series.kzkp, tol), "{s:?} kzkp");
            assert!(close(closed.kpkm, series.kpkm, tol), "{s:?} kpkm");
            assert!(close(closed.kmkp, series.kmkp, tol), "{s:?} kmkp");
        }
    }

    #[test]
    fn commutator_in_expectation() {
        for s in state_grid() {
            let beta = s.kind().beta();
            for m in [
                moments_closed(&s),
                moments_series(&coefficients(&s, 1e-15, DEFAULT_CUTOFF_CAP).unwrap()),
            ] {
                let lhs = m.kmkp - m.kpkm;
                let rhs = -2.0 * beta * m.kz;
                assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1.0), "{s:?}");
                assert!(m.kz2 >= m.kz * m.kz - 1e-12 * m.kz2.abs());
            }
        }
    }

    #[test]
    fn bgcs_has_minimum_uncertainty() {
        for n in [0.5, 2.0] {
            for z in [1.0, 10.0] {
                let s = BarutGirardelloState::from_polar(n, z, 0.3).unwrap();
                let m = moments_closed(&s.into());
                let product = m.variance_x() * m.variance_y();
                let bound = 0.25 * m.kz * m.kz;
                assert!(((product - bound) / bound).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_rotation_covariance() {
        let chi = 0.77;
        let rot = Complex64::from_polar(1.0, chi);
        let pairs: Vec<(CoherentState, CoherentState)> = vec![
            (pcs(0.75, 0.5, 0.2).into(), PerelomovState::new(0.75, pcs(0.75, 0.5, 0.2).xi * rot).unwrap().into()),
            (
                BarutGirardelloState::from_polar(2.0, 3.0, 0.2).unwrap().into(),
                BarutGirardelloState::from_polar(2.0, 3.0, 0.2 + chi).unwrap().into(),
            ),
            (
                BlochState::from_polar(2.0, 0.6, 0.2).unwrap().into(),
                BlochState::from_polar(2.0, 0.6, 0.2 + chi).unwrap().into(),
            ),
        ];
        for (a, b) in pairs {
            let ma = moments_closed(&a);
            let mb = moments_closed(&b);
            assert!((mb.kp - ma.kp * rot.conj()).norm() < 1e-14);
            assert!((mb.kz - ma.kz).abs() < 1e-14);
            assert!((mb.kpkm - ma.kpkm).abs() < 1e-13);
        }
    }
}
