//! Complex spin algebra for the two-hyperon system: Clebsch-Gordan
//! coefficients, spherical harmonics, joint density matrices, joint
//! multipole parameters, and the negativity diagnostic.

pub mod cg;
pub mod cmatrix;
pub mod density;
pub mod multipole;
pub mod ylm;

pub use cg::clebsch_gordan;
pub use cmatrix::{CMat, CMat2, CMat4};
pub use density::{dwave_joint_density, negativity, JointDensityMatrix};
pub use multipole::{
    dwave_multipoles, dwave_transverse_multipole, multipole_from_density, MultipoleSet, MODES,
};
pub use ylm::ylm;
