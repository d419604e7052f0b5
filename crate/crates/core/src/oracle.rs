//! Brute-force reference path: explicit generator matrices, exact unitary
//! evolution by Hermitian diagonalization, and expectation values in the
//! coherent-state vectors.
//!
//! su(2) representations are finite and exact. su(1,1) modules are
//! truncated; every su(1,1) result is certified by repeating it at twice the
//! dimension.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{AlgebraKind, CouplingTriple};
use crate::coherent::{ladder_element, CoherentState};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Smallest basis the oracle will use.
pub const MIN_DIM: usize = 2;

/// A (possibly truncated) ladder basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepSpace {
    pub kind: AlgebraKind,
    /// `k` for su(1,1), `j` for su(2).
    pub index: f64,
    pub dim: usize,
    /// Tail probability the dimension was chosen for; `None` for su(2).
    pub tail_tol: Option<f64>,
}

impl RepSpace {
    /// Exact `2j+1` dimensional su(2) module.
    pub fn su2(j: f64) -> Result<Self> {
        let two_j = 2.0 * j;
        if !(two_j >= 1.0 && two_j.fract() == 0.0) {
            return Err(Error::InvalidState {
                state: "bloch",
                reason: format!("j = {j} is not a positive half-integer"),
            });
        }
        Ok(Self {
            kind: AlgebraKind::Su2,
            index: j,
            dim: two_j as usize + 1,
            tail_tol: None,
        })
    }

    /// Basis sized for `state` (see [`truncation_dim`]).
    pub fn for_state(state: &CoherentState, tail_tol: f64, cap: usize) -> Result<Self> {
        let dim = truncation_dim(state, tail_tol, cap)?;
        Ok(Self {
            kind: state.kind(),
            index: state.index(),
            dim,
            tail_tol: (state.kind() == AlgebraKind::Su11).then_some(tail_tol),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub entries: DMatrix<Complex64>,
    pub hermitian: bool,
}

impl OperatorMatrix {
    fn new(entries: DMatrix<Complex64>) -> Self {
        let hermitian = hermiticity_residual(&entries) < 1e-13;
        Self { entries, hermitian }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }
}

/// `max |A − A†|`.
pub fn hermiticity_residual(a: &DMatrix<Complex64>) -> f64 {
    let mut r: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            r = r.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    r
}

/// Generator matrices in one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct RepOperators {
    pub space: RepSpace,
    pub kx: OperatorMatrix,
    pub ky: OperatorMatrix,
    pub kz: OperatorMatrix,
}

impl RepOperators {
    pub fn raising(&self) -> DMatrix<Complex64> {
        raising_matrix(self.space.kind, self.space.index, self.space.dim)
    }

    pub fn as_array(&self) -> [&OperatorMatrix; 3] {
        [&self.kx, &self.ky, &self.kz]
    }
}

fn raising_matrix(kind: AlgebraKind, index: f64, dim: usize) -> DMatrix<Complex64> {
    let mut kp = DMatrix::from_element(dim, dim, ZERO);
    for i in 0..dim - 1 {
        kp[(i + 1, i)] = Complex64::new(ladder_element(kind, index, i), 0.0);
    }
    kp
}

/// `K_x`, `K_y`, `K_z` on the first `dim` ladder states.
pub fn build_rep(kind: AlgebraKind, index: f64, dim: usize) -> Result<RepOperators> {
    let space = match kind {
        AlgebraKind::Su2 => {
            let space = RepSpace::su2(index)?;
            if dim != space.dim {
                return Err(Error::DimensionMismatch {
                    j: index,
                    expected: space.dim,
                    requested: dim,
                });
            }
            space
        }
        AlgebraKind::Su11 => {
            if !(index > 0.0 && index.is_finite()) {
                return Err(Error::InvalidState {
                    state: "su11",
                    reason: format!("Bargmann index {index} must be positive"),
                });
            }
            if dim < MIN_DIM {
                return Err(Error::Domain {
                    function: "build_rep",
                    value: dim as f64,
                    domain: "dim >= 2",
                });
            }
            RepSpace {
                kind,
                index,
                dim,
                tail_tol: None,
            }
        }
    };
    let kp = raising_matrix(kind, index, dim);
    let km = kp.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let minus_half_i = Complex64::new(0.0, -0.5);
    let offset = match kind {
        AlgebraKind::Su11 => index,
        AlgebraKind::Su2 => -index,
    };
    let kz = DMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(i as f64 + offset, 0.0)
        } else {
            ZERO
        }
    });
    Ok(RepOperators {
        space,
        kx: OperatorMatrix::new((&kp + &km) * half),
        ky: OperatorMatrix::new((&kp - &km) * minus_half_i),
        kz: OperatorMatrix::new(kz),
    })
}

/// `α₁K_x + α₂K_y + α₃K_z`.
pub fn hamiltonian_matrix(ops: &RepOperators, c: &CouplingTriple) -> OperatorMatrix {
    let [a1, a2, a3] = c.as_array();
    let h = &ops.kx.entries * Complex64::new(a1, 0.0)
        + &ops.ky.entries * Complex64::new(a2, 0.0)
        + &ops.kz.entries * Complex64::new(a3, 0.0);
    OperatorMatrix::new(h)
}

/// Spectral form of `e^{−iHt}`.
#[derive(Debug, Clone)]
pub struct Propagator {
    pub energies: DVector<f64>,
    pub vectors: DMatrix<Complex64>,
}

impl Propagator {
    pub fn new(h: &OperatorMatrix) -> Self {
        let eig = h.entries.clone().symmetric_eigen();
        Self {
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        }
    }

    /// `e^{−iHt} ψ`.
    pub fn evolve(&self, psi: &DVector<Complex64>, t: f64) -> DVector<Complex64> {
        let mut coeffs = self.vectors.ad_mul(psi);
        for (c, e) in coeffs.iter_mut().zip(self.energies.iter()) {
            *c *= Complex64::from_polar(1.0, -e * t);
        }
        &self.vectors * coeffs
    }

    /// `U(t) = e^{−iHt}` as a dense matrix.
    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let phases = DVector::from_iterator(
            self.energies.len(),
            self.energies.iter().map(|e| Complex64::from_polar(1.0, -e * t)),
        );
        let scaled = DMatrix::from_fn(self.vectors.nrows(), self.vectors.ncols(), |i, j| {
            self.vectors[(i, j)] * phases[j]
        });
        scaled * self.vectors.adjoint()
    }

    /// `K(t) = U† K U`.
    pub fn heisenberg(&self, op: &OperatorMatrix, t: f64) -> DMatrix<Complex64> {
        let u = self.unitary(t);
        u.adjoint() * &op.entries * u
    }
}

/// Expectations of the evolved generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergMoments {
    /// `⟨K_x(t)⟩, ⟨K_y(t)⟩, ⟨K_z(t)⟩`.
    pub first: [f64; 3],
    /// `⟨K_x(t)²⟩, ⟨K_y(t)²⟩, ⟨K_z(t)²⟩`.
    pub second: [f64; 3],
    /// `‖U(t)ψ‖`.
    pub norm: f64,
}

impl HeisenbergMoments {
    pub fn variances(&self) -> [f64; 3] {
        std::array::from_fn(|i| self.second[i] - self.first[i] * self.first[i])
    }
}

/// `⟨ψ|K_j(t)|ψ⟩ = ⟨U(t)ψ|K_j|U(t)ψ⟩` and the matching second moments.
pub fn heisenberg_expectation(
    prop: &Propagator,
    ops: &RepOperators,
    psi: &DVector<Complex64>,
    t: f64,
) -> HeisenbergMoments {
    let phi = prop.evolve(psi, t);
    let mut first = [0.0; 3];
    let mut second = [0.0; 3];
    for (i, op) in ops.as_array().into_iter().enumerate() {
        let k_phi = &op.entries * &phi;
        first[i] = phi.dotc(&k_phi).re;
        second[i] = k_phi.norm_squared();
    }
    HeisenbergMoments {
        first,
        second,
        norm: phi.norm(),
    }
}

/// Coherent-state vector in `space`, renormalized after truncation.
pub fn state_vector(state: &CoherentState, dim: usize) -> DVector<Complex64> {
    let amps = state.basis_amplitudes(dim);
    let v = DVector::from_vec(amps);
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

/// Basis size for `state`: the certified cutoff for `tail_tol` with a
/// margin factor of 2 (time evolution spreads the state), or exactly `2j+1`
/// for Bloch states.
pub fn truncation_dim(state: &CoherentState, tail_tol: f64, cap: usize) -> Result<usize> {
    if let CoherentState::Bloch(s) = state {
        return Ok(s.dim());
    }
    let m = state.cutoff(tail_tol, cap)?;
    let dim = (2 * m).max(MIN_DIM);
    if dim > cap {
        return Err(Error::CutoffExceeded { cap });
    }
    Ok(dim)
}

/// Max entry of `[K_x(t), K_y(t)] − iβK_z(t)` over the leading
/// `interior × interior` block.
pub fn commutator_residual(
    kx: &DMatrix<Complex64>,
    ky: &DMatrix<Complex64>,
    kz: &DMatrix<Complex64>,
    beta: f64,
    interior: usize,
) -> f64 {
    let r = kx * ky - ky * kx - kz * Complex64::new(0.0, beta);
    let n = interior.min(r.nrows());
    r.view((0, 0), (n, n)).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Max entry of `[K₋, K₊] + 2βK_z` and `[K_z, K₊] − K₊` on the leading
/// `interior` block of a static representation, relative to
/// `max(1, max |K_z|)`.
pub fn ladder_residual(ops: &RepOperators, interior: usize) -> f64 {
    let kp = ops.raising();
    let km = kp.adjoint();
    let kz = &ops.kz.entries;
    let beta = Complex64::new(ops.space.kind.beta(), 0.0);
    let a = &km * &kp - &kp * &km + kz * (beta * 2.0);
    let b = kz * &kp - &kp * kz - &kp;
    let n = interior.min(ops.space.dim);
    let scale = kz.iter().map(|c| c.norm()).fold(1.0, f64::max);
    a.view((0, 0), (n, n))
        .iter()
        .chain(b.view((0, 0), (n, n)).iter())
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        / scale
}

/// Oracle settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Discarded initial probability for the starting truncation.
    pub tail_tol: f64,
    /// Required agreement between dimensions `D` and `2D`, relative to
    /// `max(1, |value|)`.
    pub convergence_tol: f64,
    /// Largest dimension tried.
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            tail_tol: 1e-10,
            convergence_tol: 1e-9,
            cap: 2048,
        }
    }
}

/// Oracle output at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSample {
    pub t: f64,
    pub vx: f64,
    pub vy: f64,
    pub kz: f64,
    pub first: [f64; 3],
    /// Largest relative change between dimensions `D` and `2D`; zero for
    /// su(2).
    pub trunc_estimate: f64,
    pub dim: usize,
}

/// One diagonalized representation with its state vector.
#[derive(Debug, Clone)]
pub struct PreparedRep {
    pub ops: RepOperators,
    pub propagator: Propagator,
    pub psi: DVector<Complex64>,
}

impl PreparedRep {
    pub fn new(state: &CoherentState, c: &CouplingTriple, dim: usize) -> Result<Self> {
        let ops = build_rep(state.kind(), state.index(), dim)?;
        let h = hamiltonian_matrix(&ops, c);
        Ok(Self {
            propagator: Propagator::new(&h),
            psi: state_vector(state, dim),
            ops,
        })
    }

    pub fn moments(&self, t: f64) -> HeisenbergMoments {
        heisenberg_expectation(&self.propagator, &self.ops, &self.psi, t)
    }
}

fn observables(m: &HeisenbergMoments) -> [f64; 6] {
    let v = m.variances();
    [v[0], v[1], m.first[0], m.first[1], m.first[2], v[2]]
}

fn relative_gap(a: &HeisenbergMoments, b: &HeisenbergMoments) -> f64 {
    observables(a)
        .iter()
        .zip(observables(b))
        .map(|(x, y)| (x - y).abs() / y.abs().max(1.0))
        .fold(0.0, f64::max)
}

/// Reusable oracle for one `(state, couplings)` pair, evaluated at many
/// times. For su(1,1) it holds two diagonalized truncations, `D` and `2D`,
/// and doubles both whenever they disagree by more than the tolerance.
#[derive(Debug, Clone)]
pub struct VarianceOracle {
    state: CoherentState,
    couplings: CouplingTriple,
    config: OracleConfig,
    coarse: PreparedRep,
    fine: Option<PreparedRep>,
}

impl VarianceOracle {
    pub fn new(state: &CoherentState, c: &CouplingTriple, config: OracleConfig) -> Result<Self> {
        let dim = truncation_dim(state, config.tail_tol, config.cap)?;
        let coarse = PreparedRep::new(state, c, dim)?;
        let fine = match state.kind() {
            AlgebraKind::Su2 => None,
            AlgebraKind::Su11 => {
                if 2 * dim > config.cap {
                    return Err(Error::CutoffExceeded { cap: config.cap });
                }
                Some(PreparedRep::new(state, c, 2 * dim)?)
            }
        };
        Ok(Self {
            state: *state,
            couplings: *c,
            config,
            coarse,
            fine,
        })
    }

    /// Dimension of the representation the reported values come from.
    pub fn dim(&self) -> usize {
        self.fine.as_ref().unwrap_or(&self.coarse).ops.space.dim
    }

    pub fn sample(&mut self, t: f64) -> Result<OracleSample> {
        loop {
            let Some(fine) = &self.fine else {
                let m = self.coarse.moments(t);
                return Ok(sample_from(t, &m, 0.0, self.coarse.ops.space.dim));
            };
            let mf = fine.moments(t);
            let gap = relative_gap(&self.coarse.moments(t), &mf);
            if gap <= self.config.convergence_tol {
                return Ok(sample_from(t, &mf, gap, fine.ops.space.dim));
            }
            let dim = fine.ops.space.dim;
            if 2 * dim > self.config.cap {
                return Err(Error::NotConverged {
                    estimate: gap,
                    tolerance: self.config.convergence_tol,
                    dim,
                });
            }
            let next = PreparedRep::new(&self.state, &self.couplings, 2 * dim)?;
            self.coarse = self.fine.replace(next).expect("su(1,1) oracle has a fine level");
        }
    }
}

fn sample_from(t: f64, m: &HeisenbergMoments, estimate: f64, dim: usize) -> OracleSample {
    let v = m.variances();
    OracleSample {
        t,
        vx: v[0],
        vy: v[1],
        kz: m.first[2],
        first: m.first,
        trunc_estimate: estimate,
        dim,
    }
}

/// One-shot oracle evaluation with the default settings and the given tail
/// tolerance.
pub fn variance_oracle(
    state: &CoherentState,
    c: &CouplingTriple,
    t: f64,
    tail_tol: f64,
) -> Result<OracleSample> {
    let config = OracleConfig {
        tail_tol,
        ..OracleConfig::default()
    };
    VarianceOracle::new(state, c, config)?.sample(t)
}
