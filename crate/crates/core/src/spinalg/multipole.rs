//! Joint multipole parameters of the two-hyperon spin state.
//!
//! The joint parameters `t^{l1,l2}_{m1,m2}` are expectation values of
//! irreducible tensor-operator pairs on the joint density matrix,
//! `t = Tr(ρ · T^{l1}_{m1} ⊗ T^{l2}_{m2})`, with the spin-1/2 operators
//! normalized so that a single polarized spin with vector `P` carries
//! `t^1_0 = P_z/√3` and `t^1_{±1} = ∓(P_x ± iP_y)/√6`:
//!
//! ```text
//! T^0_0 = I,   T^1_0 = σ_z/√3,   T^1_{±1} = ∓(σ_x ± iσ_y)/√6.
//! ```
//!
//! The first index pair refers to the Λ side, the second to the Λ̄ side,
//! each in its own helicity basis.

use num_complex::Complex;

use super::cmatrix::CMat2;
use super::density::{dwave_joint_density, JointDensityMatrix};
use crate::error::Result;
use crate::real::Real;

/// Transverse single-hyperon multipole magnitude of the D-wave decay,
/// `√6/20`. See [`dwave_multipoles`].
pub fn dwave_transverse_multipole<T: Real>() -> T {
    T::of(6.0).sqrt() / T::of(20.0)
}

/// Joint multipole parameters for `l1, l2 ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipoleSet<T> {
    /// Indexed by the flattened single-side mode `(l, m)`:
    /// `0 ↔ (0,0)`, `1 ↔ (1,−1)`, `2 ↔ (1,0)`, `3 ↔ (1,+1)`;
    /// first index Λ, second Λ̄.
    t: [[Complex<T>; 4]; 4],
}

/// Flattened index of a single-side `(l, m)` mode.
pub fn mode_index(l: u32, m: i32) -> usize {
    match (l, m) {
        (0, 0) => 0,
        (1, -1) => 1,
        (1, 0) => 2,
        (1, 1) => 3,
        _ => panic!("unsupported multipole mode (l = {l}, m = {m})"),
    }
}

/// All `(l, m)` modes in flattened order.
pub const MODES: [(u32, i32); 4] = [(0, 0), (1, -1), (1, 0), (1, 1)];

impl<T: Real> MultipoleSet<T> {
    pub fn get(&self, l1: u32, m1: i32, l2: u32, m2: i32) -> Complex<T> {
        self.t[mode_index(l1, m1)][mode_index(l2, m2)]
    }

    pub fn entries(&self) -> &[[Complex<T>; 4]; 4] {
        &self.t
    }

    /// Normalization anchor `t^{0,0}_{0,0}`; 1 for any unit-trace state.
    pub fn anchor(&self) -> Complex<T> {
        self.t[0][0]
    }

    /// Largest violation of the conjugation relation
    /// `t^{l1,l2}_{−m1,−m2} = (−1)^{m1+m2} conj(t^{l1,l2}_{m1,m2})`.
    pub fn hermiticity_defect(&self) -> T {
        let mut worst = T::zero();
        for (l1, m1) in MODES {
            for (l2, m2) in MODES {
                let lhs = self.get(l1, -m1, l2, -m2);
                let rhs = self.get(l1, m1, l2, m2).conj();
                let sign = if (m1 + m2).rem_euclid(2) == 0 {
                    T::one()
                } else {
                    -T::one()
                };
                let d = lhs - rhs * Complex::new(sign, T::zero());
                worst = worst.max(d.norm());
            }
        }
        worst
    }
}

/// Spin-1/2 tensor operator `T^l_m` in the normalization documented at the
/// module level.
pub fn tensor_operator<T: Real>(l: u32, m: i32) -> CMat2<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut op = CMat2::zeros();
    match (l, m) {
        (0, 0) => {
            op = CMat2::identity();
        }
        (1, 0) => {
            let v = T::one() / T::of(3.0).sqrt();
            op.a[0][0] = Complex::new(v, T::zero());
            op.a[1][1] = Complex::new(-v, T::zero());
        }
        (1, 1) => {
            let v = -(T::of(2.0) / T::of(3.0)).sqrt();
            op.a[0][1] = Complex::new(v, T::zero());
            op.a[1][0] = zero;
        }
        (1, -1) => {
            let v = (T::of(2.0) / T::of(3.0)).sqrt();
            op.a[1][0] = Complex::new(v, T::zero());
        }
        _ => panic!("unsupported tensor operator (l = {l}, m = {m})"),
    }
    op
}

/// Joint multipole parameters of a density matrix,
/// `t^{l1,l2}_{m1,m2} = Tr(ρ · T^{l1}_{m1} ⊗ T^{l2}_{m2})`.
pub fn multipole_from_density<T: Real>(rho: &JointDensityMatrix<T>) -> MultipoleSet<T> {
    let ops: Vec<CMat2<T>> = MODES.iter().map(|&(l, m)| tensor_operator(l, m)).collect();
    let mut t = [[Complex::new(T::zero(), T::zero()); 4]; 4];
    for (i, op1) in ops.iter().enumerate() {
        for (j, op2) in ops.iter().enumerate() {
            t[i][j] = rho.matrix().trace_product(&op1.kron(op2));
        }
    }
    MultipoleSet { t }
}

/// Joint multipole set of the D-wave decay for spin projection `sz`.
///
/// The longitudinal and double-flip entries are the trace of
/// [`dwave_joint_density`] against the tensor operators. The four ΔM = ±1
/// entries `t^{1,0}_{±1,0} = t^{0,1}_{0,±1} = ∓√6/20` are the mean
/// transverse polarization each hyperon acquires in the D-wave decay; a
/// direction-averaged joint density matrix is block diagonal in the total
/// spin projection and carries no ΔM = ±1 coherence, so these entries are
/// not derivable from the 4×4 state and enter as fixed constants of the
/// decay analysis (for sz = 0 they vanish). They produce the single-azimuth
/// cosine modulation of the joint angular distribution and cancel in the
/// fold to the decay-plane angle.
pub fn dwave_multipoles<T: Real>(sz: i32) -> Result<MultipoleSet<T>> {
    let rho = dwave_joint_density::<T>(sz)?;
    let mut set = multipole_from_density(&rho);
    if sz != 0 {
        let v = dwave_transverse_multipole::<T>();
        let plus = Complex::new(-v, T::zero());
        let minus = Complex::new(v, T::zero());
        set.t[mode_index(1, 1)][mode_index(0, 0)] = plus;
        set.t[mode_index(1, -1)][mode_index(0, 0)] = minus;
        set.t[mode_index(0, 0)][mode_index(1, 1)] = plus;
        set.t[mode_index(0, 0)][mode_index(1, -1)] = minus;
    }
    Ok(set)
}
