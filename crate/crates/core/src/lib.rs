//! Decay-plane angle correlations in `J/ψ → ΛΛ̄ → pπ⁻p̄π⁺`.
//!
//! The observable is the dihedral angle α between the Λ and Λ̄ decay planes
//! in the J/ψ rest frame. Two predictions for its distribution are
//! implemented side by side:
//!
//! - a joint (quantum-mechanical) model in which the ΛΛ̄ spins are described
//!   by a single two-particle density matrix, giving
//!   `W(α) = 1/π + A·cos α` with `A = 4a²/(3π³)`, and
//! - an independent-decay (hidden-variable) model in which each hyperon
//!   carries a definite, shared polarization vector, giving a flat
//!   `W(α) = 1/π`.
//!
//! The crate provides the spin algebra that produces both, a deterministic
//! Monte Carlo generator for either hypothesis, and the histogram/fit/toy
//! machinery used to quantify how well an experiment can tell them apart.
//!
//! All of the numerical core is generic over the scalar type through the
//! [`Real`] trait; concrete `f64` aliases are exported at the crate root.

pub mod analysis;
pub mod checks;
pub mod error;
pub mod generator;
pub mod io;
pub mod kinematics;
pub mod models;
pub mod quadrature;
pub mod real;
pub mod spinalg;
pub mod stats;

pub use error::Error;
pub use real::Real;

/// Scalar precision used by the event generator, analysis and CLI.
pub type Scalar = f64;

pub type Vec3D = kinematics::Vec3<Scalar>;
pub type FourVectorD = kinematics::FourVector<Scalar>;
pub type FrameD = kinematics::Frame<Scalar>;
pub type JointDensityMatrixD = spinalg::JointDensityMatrix<Scalar>;
pub type MultipoleSetD = spinalg::MultipoleSet<Scalar>;
pub type AsymmetryParamD = models::AsymmetryParam<Scalar>;
pub type AlphaPdfD = models::AlphaPdf<Scalar>;
pub type PolarizationVectorD = models::PolarizationVector<Scalar>;

pub type Vec3F = kinematics::Vec3<f32>;
pub type FourVectorF = kinematics::FourVector<f32>;
pub type FrameF = kinematics::Frame<f32>;
pub type AlphaPdfF = models::AlphaPdf<f32>;

/// Particle masses in GeV, used to assemble lab-frame four-momenta.
///
/// These are the standard particle-data values; they can be overridden per
/// call where a function takes a [`MassTable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassTable {
    pub jpsi: f64,
    pub lambda: f64,
    pub proton: f64,
    pub pion: f64,
}

impl Default for MassTable {
    fn default() -> Self {
        Self {
            jpsi: 3.0969,
            lambda: 1.115683,
            proton: 0.938272,
            pion: 0.139570,
        }
    }
}

/// Decay asymmetry parameter of `Λ → pπ⁻`.
pub const LAMBDA_ASYMMETRY: f64 = 0.642;
