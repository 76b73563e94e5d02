//! Joint ΛΛ̄ spin density matrices and an entanglement diagnostic.

use num_complex::Complex;

use super::cg::clebsch_gordan;
use super::cmatrix::{CMat2, CMat4};
use crate::error::{Error, Result};
use crate::real::Real;

/// Tolerance on Hermiticity and trace of a constructed density matrix.
const VALIDITY_TOL: f64 = 1e-14;
/// Eigenvalues are allowed to undershoot zero by this much (rounding in the
/// 4×4 Hermitian eigensolve).
const EIGEN_FLOOR: f64 = -1e-12;

/// 4×4 density matrix over the ΛΛ̄ spin space, basis ordered
/// `(↑↑, ↑↓, ↓↑, ↓↓)`: the first arrow is the Λ spin along `k̂(Λ)`, the
/// second the Λ̄ spin along `k̂(Λ̄)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDensityMatrix<T> {
    rho: CMat4<T>,
}

impl<T: Real> JointDensityMatrix<T> {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness.
    pub fn new(rho: CMat4<T>) -> Result<Self> {
        let herm = rho.hermiticity_defect();
        if herm > T::of(VALIDITY_TOL) {
            return Err(Error::DomainError {
                what: "hermiticity defect",
                value: herm.to_f64().unwrap_or(f64::NAN),
                domain: "<= 1e-14",
            });
        }
        let tr = rho.trace();
        if (tr.re - T::one()).abs() > T::of(VALIDITY_TOL) || tr.im.abs() > T::of(VALIDITY_TOL) {
            return Err(Error::DomainError {
                what: "trace",
                value: tr.re.to_f64().unwrap_or(f64::NAN),
                domain: "1 +- 1e-14",
            });
        }
        let eig = rho.hermitian_eigenvalues();
        if eig[3] < T::of(EIGEN_FLOOR) {
            return Err(Error::DomainError {
                what: "smallest eigenvalue",
                value: eig[3].to_f64().unwrap_or(f64::NAN),
                domain: ">= -1e-12",
            });
        }
        Ok(Self { rho })
    }

    pub fn matrix(&self) -> &CMat4<T> {
        &self.rho
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.rho.a[i][j]
    }

    pub fn eigenvalues(&self) -> [T; 4] {
        self.rho.hermitian_eigenvalues()
    }

    /// Reduced Λ density matrix.
    pub fn lambda_marginal(&self) -> CMat2<T> {
        self.rho.partial_trace_second()
    }

    /// Reduced Λ̄ density matrix.
    pub fn lambda_bar_marginal(&self) -> CMat2<T> {
        self.rho.partial_trace_first()
    }

    /// Maximally mixed two-spin state `I/4`.
    pub fn maximally_mixed() -> Self {
        Self {
            rho: CMat4::identity().scaled(T::of(0.25)),
        }
    }
}

/// Spin-triplet state `|1, m⟩` of the pair, written in the product of the
/// two helicity bases: the second (Λ̄) factor is spin-flipped relative to
/// the canonical common-axis basis because `k̂(Λ̄) = −k̂(Λ)`; the flip
/// carries no relative phase between the two basis states.
fn triplet_in_helicity_bases<T: Real>(m: i32) -> [Complex<T>; 4] {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let rsqrt2 = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    // Canonical: |1,1⟩ = ↑↑, |1,0⟩ = (↑↓ + ↓↑)/√2, |1,−1⟩ = ↓↓;
    // flip the second arrow to express the Λ̄ spin along k̂(Λ̄).
    match m {
        1 => [zero, one, zero, zero],          // ↑↑ → ↑↓
        0 => [rsqrt2, zero, zero, rsqrt2],     // (↑↓ + ↓↑)/√2 → (↑↑ + ↓↓)/√2
        -1 => [zero, zero, one, zero],         // ↓↓ → ↓↑
        _ => unreachable!(),
    }
}

/// Joint ΛΛ̄ density matrix of the pure D-wave decay of a vector state with
/// spin projection `sz`, built by coupling `|2, m_L⟩ ⊗ |1, m_S⟩` to
/// `|1, sz⟩` and tracing over the orbital projection.
pub fn dwave_joint_density<T: Real>(sz: i32) -> Result<JointDensityMatrix<T>> {
    if !(-1..=1).contains(&sz) {
        return Err(Error::InvalidQuantumNumbers(format!(
            "sz must be -1, 0 or +1; got {sz}"
        )));
    }
    let mut rho = CMat4::<T>::zeros();
    for m_s in -1..=1i32 {
        let m_l = sz - m_s;
        if m_l.abs() > 2 {
            continue;
        }
        let c: T = clebsch_gordan(2.0, m_l as f64, 1.0, m_s as f64, 1.0, sz as f64)?;
        let w = c * c;
        if w == T::zero() {
            continue;
        }
        let v = triplet_in_helicity_bases::<T>(m_s);
        rho = rho.add(&CMat4::projector(&v).scaled(w));
    }
    JointDensityMatrix::new(rho)
}

/// Entanglement negativity: the absolute sum of the negative eigenvalues of
/// the partial transpose over the Λ̄ factor. Zero for every separable
/// (convex-product) state; 1/2 for a Bell state.
pub fn negativity<T: Real>(rho: &JointDensityMatrix<T>) -> T {
    let pt = rho.matrix().partial_transpose_second();
    let eig = pt.hermitian_eigenvalues();
    let mut neg = T::zero();
    for e in eig {
        if e < T::zero() {
            neg += -e;
        }
    }
    neg
}
