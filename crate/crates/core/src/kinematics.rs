//! Three-vectors, four-vectors, helicity frames, and the decay-plane angle.
//!
//! Conventions: the J/ψ rest frame carries a fixed right-handed basis
//! (x̂, ŷ, ẑ) with ẑ the reference axis `k̂₀`. The helicity frame of a
//! hyperon flying along `p̂` has `k̂ = p̂`, `ĵ ∝ k̂₀ × k̂` and `î = ĵ × k̂`.
//! The Λ̄ frame is the Λ frame with `ĵ` and `k̂` negated (`î` shared).

use crate::error::{Error, Result};
use crate::real::Real;
use crate::MassTable;

const DEGENERATE_CROSS: f64 = 1e-12;

/// Cartesian three-vector. Directions are unit vectors; momenta are in GeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= T::zero() {
            return Err(Error::ZeroVector);
        }
        Ok(self.scaled(T::one() / n))
    }

    pub fn neg(&self) -> Self {
        self.scaled(-T::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }

    /// Unit direction from spherical angles relative to the fixed
    /// (x̂, ŷ, ẑ) basis.
    pub fn from_polar(cos_theta: T, phi: T) -> Result<Self> {
        if cos_theta.abs() > T::one() {
            return Err(Error::DomainError {
                what: "cos_theta",
                value: cos_theta.to_f64().unwrap_or(f64::NAN),
                domain: "[-1, 1]",
            });
        }
        let sin_theta = (T::one() - cos_theta * cos_theta).sqrt();
        Ok(Self::new(
            sin_theta * phi.cos(),
            sin_theta * phi.sin(),
            cos_theta,
        ))
    }
}

/// On-shell four-vector `(E, p)` in GeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector<T> {
    pub e: T,
    pub p: Vec3<T>,
}

impl<T: Real> FourVector<T> {
    pub fn new(e: T, p: Vec3<T>) -> Self {
        Self { e, p }
    }

    /// Builds `(sqrt(m² + |p|²), p)`.
    pub fn from_mass_momentum(mass: T, p: Vec3<T>) -> Self {
        Self::new((mass * mass + p.dot(&p)).sqrt(), p)
    }

    pub fn mass_squared(&self) -> T {
        self.e * self.e - self.p.dot(&self.p)
    }

    pub fn mass(&self) -> T {
        self.mass_squared().max(T::zero()).sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.e + other.e, self.p.add(&other.p))
    }

    /// Boosts by velocity `beta` (i.e. into the frame in which a particle
    /// moving with `-beta` is at rest). `|beta| < 1`.
    pub fn boosted(&self, beta: Vec3<T>) -> Self {
        let b2 = beta.dot(&beta);
        if b2 <= T::zero() {
            return *self;
        }
        let gamma = T::one() / (T::one() - b2).sqrt();
        let bp = beta.dot(&self.p);
        let coef = (gamma - T::one()) * bp / b2 + gamma * self.e;
        Self::new(
            gamma * (self.e + bp),
            self.p.add(&beta.scaled(coef)),
        )
    }
}

/// Right-handed orthonormal helicity basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame<T> {
    pub i_hat: Vec3<T>,
    pub j_hat: Vec3<T>,
    pub k_hat: Vec3<T>,
}

impl<T: Real> Frame<T> {
    /// Componentwise deviation from orthonormality and right-handedness,
    /// `max |î×ĵ − k̂|` together with the worst norm/orthogonality defect.
    pub fn defect(&self) -> T {
        let mut worst = (self.i_hat.norm() - T::one()).abs();
        worst = worst.max((self.j_hat.norm() - T::one()).abs());
        worst = worst.max((self.k_hat.norm() - T::one()).abs());
        worst = worst.max(self.i_hat.dot(&self.j_hat).abs());
        worst = worst.max(self.j_hat.dot(&self.k_hat).abs());
        worst = worst.max(self.k_hat.dot(&self.i_hat).abs());
        let c = self.i_hat.cross(&self.j_hat).sub(&self.k_hat);
        worst
            .max(c.x.abs())
            .max(c.y.abs())
            .max(c.z.abs())
    }
}

/// Helicity frame of a particle flying along `p_dir`, with the parent-frame
/// axis `z_ref` fixing the azimuth origin: `k̂ = p̂`, `ĵ ∝ z_ref × p̂`,
/// `î = ĵ × k̂`.
pub fn helicity_frame<T: Real>(p_dir: Vec3<T>, z_ref: Vec3<T>) -> Result<Frame<T>> {
    let j_raw = z_ref.cross(&p_dir);
    let n = j_raw.norm();
    if n <= T::of(DEGENERATE_CROSS) {
        return Err(Error::DegenerateFrame {
            cross_norm: n.to_f64().unwrap_or(0.0),
        });
    }
    let j_hat = j_raw.scaled(T::one() / n);
    let k_hat = p_dir;
    let i_hat = j_hat.cross(&k_hat);
    Ok(Frame { i_hat, j_hat, k_hat })
}

/// The antiparticle's helicity frame: `î` shared, `ĵ` and `k̂` negated.
/// Involutive, and preserves right-handedness.
pub fn conjugate_frame<T: Real>(f: &Frame<T>) -> Frame<T> {
    Frame {
        i_hat: f.i_hat,
        j_hat: f.j_hat.neg(),
        k_hat: f.k_hat.neg(),
    }
}

/// Spherical angles of `p` in frame `f`: `cosθ = p̂·k̂`,
/// `φ = atan2(p̂·ĵ, p̂·î)` mapped to `[0, 2π)`.
pub fn angles_in_frame<T: Real>(p: &Vec3<T>, f: &Frame<T>) -> Result<(T, T)> {
    let p_hat = p.normalized()?;
    let cos_theta = p_hat.dot(&f.k_hat).max(-T::one()).min(T::one());
    let mut phi = p_hat.dot(&f.j_hat).atan2(p_hat.dot(&f.i_hat));
    if phi < T::zero() {
        phi += T::of(2.0) * T::PI();
    }
    // atan2 can return exactly 2π after the shift when the y-component is
    // a tiny negative number; fold it back.
    if phi >= T::of(2.0) * T::PI() {
        phi = T::zero();
    }
    Ok((cos_theta, phi))
}

/// Unit vector with spherical angles `(cosθ, φ)` in frame `f`.
pub fn direction_from_angles<T: Real>(cos_theta: T, phi: T, f: &Frame<T>) -> Result<Vec3<T>> {
    if cos_theta.abs() > T::one() {
        return Err(Error::DomainError {
            what: "cos_theta",
            value: cos_theta.to_f64().unwrap_or(f64::NAN),
            domain: "[-1, 1]",
        });
    }
    let sin_theta = (T::one() - cos_theta * cos_theta).sqrt();
    Ok(f
        .i_hat
        .scaled(sin_theta * phi.cos())
        .add(&f.j_hat.scaled(sin_theta * phi.sin()))
        .add(&f.k_hat.scaled(cos_theta)))
}

/// Which hypothesis generated an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Qm,
    Hvt,
}

impl Model {
    pub fn as_str(&self) -> &'static str {
        match self {
            Model::Qm => "qm",
            Model::Hvt => "hvt",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qm" => Ok(Model::Qm),
            "hvt" => Ok(Model::Hvt),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown model `{other}`"),
            }),
        }
    }
}

/// One simulated decay. Angles of the π⁻ are in the Λ helicity frame,
/// angles of the π⁺ in the Λ̄ helicity frame, and the Λ direction in the
/// J/ψ frame. `alpha` is filled from the azimuth fold and always lies in
/// `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub event_id: u64,
    pub model: Model,
    /// J/ψ spin projection used for the draw; 0 for HVT events.
    pub sz: i8,
    pub cos_theta_lambda: f64,
    pub phi_lambda: f64,
    pub cos_theta_m: f64,
    pub phi_m: f64,
    pub cos_theta_p: f64,
    pub phi_p: f64,
    pub alpha: f64,
    pub seed: u64,
    pub stream_index: u64,
}

/// Lab-frame (J/ψ rest frame) four-momenta of an event's final state, in
/// the order `(p, π⁻, p̄, π⁺)`.
pub type LabMomenta = (
    FourVector<f64>,
    FourVector<f64>,
    FourVector<f64>,
    FourVector<f64>,
);

/// Momentum magnitude of either daughter in a two-body decay `M → m1 m2`.
fn two_body_momentum(m: f64, m1: f64, m2: f64) -> f64 {
    let a = m * m - (m1 + m2) * (m1 + m2);
    let b = m * m - (m1 - m2) * (m1 - m2);
    (a * b).max(0.0).sqrt() / (2.0 * m)
}

/// Realizes the full decay chain for an event: two-body kinematics applied
/// twice with the masses from `masses`, daughters boosted from each hyperon
/// rest frame into the J/ψ rest frame.
pub fn build_lab_event(event: &Event, masses: &MassTable) -> Result<LabMomenta> {
    let z_ref = Vec3::new(0.0, 0.0, 1.0);
    let lambda_dir = Vec3::from_polar(event.cos_theta_lambda, event.phi_lambda)?;

    let p_lambda = two_body_momentum(masses.jpsi, masses.lambda, masses.lambda);
    let e_lambda = (masses.lambda * masses.lambda + p_lambda * p_lambda).sqrt();
    let beta = p_lambda / e_lambda;

    let frame_lambda = helicity_frame(lambda_dir, z_ref)?;
    let frame_lambda_bar = conjugate_frame(&frame_lambda);

    let q = two_body_momentum(masses.lambda, masses.proton, masses.pion);

    // Λ → p π⁻ in the Λ rest frame, axes expressed in J/ψ coordinates.
    let pim_dir = direction_from_angles(event.cos_theta_m, event.phi_m, &frame_lambda)?;
    let pim_rest = FourVector::from_mass_momentum(masses.pion, pim_dir.scaled(q));
    let proton_rest = FourVector::from_mass_momentum(masses.proton, pim_dir.scaled(-q));

    // Λ̄ → p̄ π⁺ in the Λ̄ rest frame.
    let pip_dir = direction_from_angles(event.cos_theta_p, event.phi_p, &frame_lambda_bar)?;
    let pip_rest = FourVector::from_mass_momentum(masses.pion, pip_dir.scaled(q));
    let pbar_rest = FourVector::from_mass_momentum(masses.proton, pip_dir.scaled(-q));

    let boost_lambda = lambda_dir.scaled(beta);
    let boost_lambda_bar = lambda_dir.scaled(-beta);

    Ok((
        proton_rest.boosted(boost_lambda),
        pim_rest.boosted(boost_lambda),
        pbar_rest.boosted(boost_lambda_bar),
        pip_rest.boosted(boost_lambda_bar),
    ))
}

/// Dihedral angle between the Λ and Λ̄ decay planes, from J/ψ-frame momenta.
///
/// Both plane normals are taken about the Λ flight direction,
/// `n̂₁ = p̂_Λ × p_π⁻` and `n̂₂ = p̂_Λ × p_π⁺`; this is the sign convention
/// under which the geometric angle reproduces the azimuth-sum fold
/// branch by branch. (Using the Λ̄ direction for the second normal flips
/// it and would map α to π − α.)
pub fn decay_plane_alpha<T: Real>(
    p_lambda_dir: &Vec3<T>,
    p_pim: &Vec3<T>,
    p_pip: &Vec3<T>,
) -> Result<T> {
    let n1 = p_lambda_dir.cross(p_pim);
    let n2 = p_lambda_dir.cross(p_pip);
    for n in [&n1, &n2] {
        let norm = n.norm();
        if norm <= T::of(DEGENERATE_CROSS) {
            return Err(Error::DegeneratePlane {
                cross_norm: norm.to_f64().unwrap_or(0.0),
            });
        }
    }
    let c = n1.normalized()?.dot(&n2.normalized()?);
    Ok(c.max(-T::one()).min(T::one()).acos())
}
