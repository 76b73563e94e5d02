//! Probability densities for the two hypotheses.
//!
//! The joint (QM) model treats the ΛΛ̄ pair as one spin state: the
//! four-angle density is the double multipole sum over the joint parameters
//! of [`crate::spinalg::dwave_multipoles`], its azimuthal marginal is
//!
//! ```text
//! W'(φ⁻, φ⁺) = 1/(4π²) + 3a/(20π³)·(cos φ⁻ + cos φ⁺)
//!            + 3a²/(10π⁴)·cos(φ⁻ + φ⁺)
//! ```
//!
//! for spin projection ±1, and folding the azimuth sum into `α ∈ [0, π]`
//! gives `W(α) = 1/π + A cos α` with `A = 6a²/(5π³)` (±1), `8a²/(5π³)` (0),
//! and `4a²/(3π³)` for the equal mixture. The independent-decay (HVT) model
//! gives each hyperon a definite shared polarization vector; the folded
//! distribution is flat for any polarization magnitude.
//!
//! The four-angle density is normalized over the product measure
//! `dθ⁻ dφ⁻ dθ⁺ dφ⁺` (a flat angle measure, not solid angle): this is the
//! measure under which the multipole sum integrates to one and reproduces
//! the azimuthal marginal above, which is what fixes every downstream α
//! distribution. The single-hyperon HVT density is the usual solid-angle
//! form; the α observable only involves azimuths and is insensitive to the
//! polar measure.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kinematics::Vec3;
use crate::quadrature::GaussLegendre;
use crate::real::Real;
use crate::spinalg::{dwave_multipoles, multipole::MODES, ylm, MultipoleSet};

/// Decay asymmetry parameter of `Λ → pπ⁻`, `|a| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymmetryParam<T> {
    a: T,
}

impl<T: Real> AsymmetryParam<T> {
    pub fn new(a: T) -> Result<Self> {
        if a.abs() > T::one() {
            return Err(Error::DomainError {
                what: "asymmetry parameter a",
                value: a.to_f64().unwrap_or(f64::NAN),
                domain: "[-1, 1]",
            });
        }
        Ok(Self { a })
    }

    pub fn value(&self) -> T {
        self.a
    }
}

impl<T: Real> Default for AsymmetryParam<T> {
    fn default() -> Self {
        Self {
            a: T::of(crate::LAMBDA_ASYMMETRY),
        }
    }
}

/// One-parameter decay-plane angle density `W(α) = 1/π + A·cos α` on
/// `[0, π]`. Non-negative iff `|A| ≤ 1/π`; integrates to one for any `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaPdf<T> {
    amplitude: T,
}

impl<T: Real> AlphaPdf<T> {
    pub fn new(amplitude: T) -> Result<Self> {
        if amplitude.abs() > T::one() / T::PI() {
            return Err(Error::DomainError {
                what: "cos-amplitude A",
                value: amplitude.to_f64().unwrap_or(f64::NAN),
                domain: "[-1/pi, 1/pi]",
            });
        }
        Ok(Self { amplitude })
    }

    pub fn amplitude(&self) -> T {
        self.amplitude
    }

    pub fn density(&self, alpha: T) -> T {
        T::one() / T::PI() + self.amplitude * alpha.cos()
    }

    /// Exact antiderivative `α/π + A·sin α`, zero at `α = 0`.
    pub fn cdf(&self, alpha: T) -> T {
        alpha / T::PI() + self.amplitude * alpha.sin()
    }

    /// Probability content of `[lo, hi] ⊆ [0, π]`.
    pub fn bin_probability(&self, lo: T, hi: T) -> T {
        self.cdf(hi) - self.cdf(lo)
    }
}

/// Polarization vector with `|P| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationVector<T> {
    p: Vec3<T>,
}

impl<T: Real> PolarizationVector<T> {
    pub fn new(p: Vec3<T>) -> Result<Self> {
        if p.norm() > T::one() + T::of(1e-12) {
            return Err(Error::DomainError {
                what: "|P|",
                value: p.norm().to_f64().unwrap_or(f64::NAN),
                domain: "[0, 1]",
            });
        }
        Ok(Self { p })
    }

    pub fn zero() -> Self {
        Self { p: Vec3::zero() }
    }

    pub fn vector(&self) -> &Vec3<T> {
        &self.p
    }

    pub fn negated(&self) -> Self {
        Self { p: self.p.neg() }
    }
}

fn check_azimuth<T: Real>(name: &'static str, phi: T) -> Result<()> {
    if phi < T::zero() || phi >= T::of(2.0) * T::PI() {
        return Err(Error::DomainError {
            what: name,
            value: phi.to_f64().unwrap_or(f64::NAN),
            domain: "[0, 2pi)",
        });
    }
    Ok(())
}

/// Folds the azimuth sum `s = φ⁻ + φ⁺ ∈ [0, 4π)` into the decay-plane
/// angle `α ∈ [0, π]`:
///
/// ```text
/// α = s         s ∈ [0, π]
///     2π − s    s ∈ (π, 2π]
///     s − 2π    s ∈ (2π, 3π]
///     4π − s    s ∈ (3π, 4π)
/// ```
///
/// (`s = 2π` sits on two branches that both give 0; the lower one is used.)
pub fn fold_alpha_angles<T: Real>(phi_m: T, phi_p: T) -> Result<T> {
    check_azimuth("phi_m", phi_m)?;
    check_azimuth("phi_p", phi_p)?;
    let pi = T::PI();
    let two_pi = T::of(2.0) * pi;
    let s = phi_m + phi_p;
    Ok(if s <= pi {
        s
    } else if s <= two_pi {
        two_pi - s
    } else if s <= two_pi + pi {
        s - two_pi
    } else {
        T::of(4.0) * pi - s
    })
}

/// Joint azimuthal density of the two pions for the spin-projection ±1
/// joint state, `W'(φ⁻, φ⁺)`; normalized over `[0, 2π)²`.
pub fn qm_phi_pdf<T: Real>(phi_m: T, phi_p: T, a: AsymmetryParam<T>) -> Result<T> {
    check_azimuth("phi_m", phi_m)?;
    check_azimuth("phi_p", phi_p)?;
    let pi = T::PI();
    let a = a.value();
    let k = T::of(0.25) / (pi * pi);
    let c1 = T::of(3.0) * a / (T::of(20.0) * pi.powi(3));
    let c2 = T::of(3.0) * a * a / (T::of(10.0) * pi.powi(4));
    Ok(k + c1 * (phi_m.cos() + phi_p.cos()) + c2 * (phi_m + phi_p).cos())
}

/// Coefficients `(constant, single-cos, double-cos)` of the azimuthal
/// marginal for a given spin projection, derived from the joint multipole
/// set: `W' = K + c₁(cos φ⁻ + cos φ⁺) + c₂ cos(φ⁻ + φ⁺)`.
pub fn qm_phi_marginal_coefficients<T: Real>(
    sz: i32,
    a: AsymmetryParam<T>,
) -> Result<(T, T, T)> {
    let set = dwave_multipoles::<T>(sz)?;
    let pi = T::PI();
    let a = a.value();
    let k = T::of(0.25) / (pi * pi);
    // Transverse single-side strength; the Λ and Λ̄ entries coincide.
    let tv = -set.get(1, 1, 0, 0).re;
    let c1 = T::of(3.0) * a * tv / (T::of(6.0).sqrt() * pi.powi(3));
    let t11 = set.get(1, 1, 1, 1).re;
    let c2 = T::of(3.0) * a * a * t11 / pi.powi(4);
    Ok((k, c1, c2))
}

/// Azimuthal marginal density for spin projection `sz`.
pub fn qm_phi_pdf_for_sz<T: Real>(
    phi_m: T,
    phi_p: T,
    sz: i32,
    a: AsymmetryParam<T>,
) -> Result<T> {
    check_azimuth("phi_m", phi_m)?;
    check_azimuth("phi_p", phi_p)?;
    let (k, c1, c2) = qm_phi_marginal_coefficients(sz, a)?;
    Ok(k + c1 * (phi_m.cos() + phi_p.cos()) + c2 * (phi_m + phi_p).cos())
}

/// Four-angle joint density of the two pion directions for one spin
/// projection, as the double multipole sum over `Y_{l1 m1}(θ⁻, φ⁻)
/// Y_{l2 m2}(θ⁺, φ⁺)` with vertex constants `C₀ = 2/π`, `C₁ = 2a/π`,
/// divided by a numerically computed normalization over the flat angle
/// measure (the constant is 1 up to quadrature error; it is still computed
/// and applied).
#[derive(Debug, Clone)]
pub struct QmAngularPdf<T> {
    coef: [[Complex<T>; 4]; 4],
    norm: T,
    sz: i32,
}

impl<T: Real> QmAngularPdf<T> {
    pub fn new(sz: i32, a: AsymmetryParam<T>) -> Result<Self> {
        let set: MultipoleSet<T> = dwave_multipoles(sz)?;
        let pi = T::PI();
        let c_l = [T::of(2.0) / pi, T::of(2.0) * a.value() / pi];
        let quarter_pi = T::of(0.25) / pi;
        let mut coef = [[Complex::new(T::zero(), T::zero()); 4]; 4];
        for (i, &(l1, m1)) in MODES.iter().enumerate() {
            for (j, &(l2, m2)) in MODES.iter().enumerate() {
                let scale = quarter_pi * c_l[l1 as usize] * c_l[l2 as usize];
                coef[i][j] = set.get(l1, m1, l2, m2) * Complex::new(scale, T::zero());
            }
        }
        let mut pdf = Self {
            coef,
            norm: T::one(),
            sz,
        };
        pdf.norm = pdf.quadrature_normalization(64);
        Ok(pdf)
    }

    pub fn sz(&self) -> i32 {
        self.sz
    }

    pub fn normalization(&self) -> T {
        self.norm
    }

    /// The `(1/4π)·C_{l1}·C_{l2}·t^{l1,l2}_{m1,m2}` coefficient matrix in
    /// flattened mode order.
    pub fn coefficient_matrix(&self) -> [[Complex<T>; 4]; 4] {
        self.coef
    }

    /// The raw complex multipole sum, before normalization. Its imaginary
    /// part is a rounding residue (the set is conjugation-symmetric).
    pub fn complex_sum(&self, theta_m: T, phi_m: T, theta_p: T, phi_p: T) -> Complex<T> {
        let mut ym = [Complex::new(T::zero(), T::zero()); 4];
        let mut yp = [Complex::new(T::zero(), T::zero()); 4];
        for (i, &(l, m)) in MODES.iter().enumerate() {
            ym[i] = ylm(l, m, theta_m, phi_m).expect("modes are valid");
            yp[i] = ylm(l, m, theta_p, phi_p).expect("modes are valid");
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..4 {
            for j in 0..4 {
                acc = acc + self.coef[i][j] * ym[i] * yp[j];
            }
        }
        acc
    }

    /// Normalized density at `(cos θ⁻, φ⁻, cos θ⁺, φ⁺)`, over the measure
    /// `dθ⁻ dφ⁻ dθ⁺ dφ⁺`. The imaginary residue of the sum is discarded.
    pub fn density(&self, cos_theta_m: T, phi_m: T, cos_theta_p: T, phi_p: T) -> Result<T> {
        for c in [cos_theta_m, cos_theta_p] {
            if c.abs() > T::one() {
                return Err(Error::DomainError {
                    what: "cos_theta",
                    value: c.to_f64().unwrap_or(f64::NAN),
                    domain: "[-1, 1]",
                });
            }
        }
        check_azimuth("phi_m", phi_m)?;
        check_azimuth("phi_p", phi_p)?;
        let theta_m = cos_theta_m.acos();
        let theta_p = cos_theta_p.acos();
        Ok(self.complex_sum(theta_m, phi_m, theta_p, phi_p).re / self.norm)
    }

    /// Tensor-product Gauss-Legendre normalization over
    /// `[0, π] × [0, 2π]` per side; the 4-D integral separates into
    /// products of per-mode 2-D integrals.
    fn quadrature_normalization(&self, n: usize) -> T {
        let quad = GaussLegendre::<T>::new(n);
        let pi = T::PI();
        let two_pi = T::of(2.0) * pi;
        let mut mode_integrals = [Complex::new(T::zero(), T::zero()); 4];
        for (i, &(l, m)) in MODES.iter().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (theta, wt) in quad.mapped(T::zero(), pi) {
                for (phi, wp) in quad.mapped(T::zero(), two_pi) {
                    acc = acc
                        + ylm::<T>(l, m, theta, phi).expect("modes are valid")
                            * Complex::new(wt * wp, T::zero());
                }
            }
            mode_integrals[i] = acc;
        }
        let mut norm = Complex::new(T::zero(), T::zero());
        for i in 0..4 {
            for j in 0..4 {
                norm = norm + self.coef[i][j] * mode_integrals[i] * mode_integrals[j];
            }
        }
        norm.re
    }
}

/// Convenience wrapper building the distribution on the fly; prefer
/// [`QmAngularPdf`] in loops.
pub fn qm_full_pdf<T: Real>(
    cos_th_m: T,
    phi_m: T,
    cos_th_p: T,
    phi_p: T,
    sz: i32,
    a: AsymmetryParam<T>,
) -> Result<T> {
    QmAngularPdf::new(sz, a)?.density(cos_th_m, phi_m, cos_th_p, phi_p)
}

/// Evaluates the branch decomposition of the folded density
/// `W(α) = ∫ W'(φ⁻, φ⁺) δ(α − fold(φ⁻ + φ⁺))` by Gauss-Legendre quadrature
/// on each branch's `φ⁻` interval:
///
/// ```text
/// W(α) = ∫₀^α W'(φ, α−φ) dφ + ∫₀^{2π−α} W'(φ, 2π−α−φ) dφ
///      + ∫_α^{2π} W'(φ, 2π+α−φ) dφ + ∫_{2π−α}^{2π} W'(φ, 4π−α−φ) dφ.
/// ```
pub fn fold_alpha_pdf<T: Real, F: Fn(T, T) -> T>(
    joint_phi_pdf: F,
    alpha: T,
    n_quad: usize,
) -> Result<T> {
    if alpha < T::zero() || alpha > T::PI() {
        return Err(Error::DomainError {
            what: "alpha",
            value: alpha.to_f64().unwrap_or(f64::NAN),
            domain: "[0, pi]",
        });
    }
    if n_quad < 64 {
        return Err(Error::DomainError {
            what: "n_quad",
            value: n_quad as f64,
            domain: ">= 64",
        });
    }
    let quad = GaussLegendre::<T>::new(n_quad);
    let two_pi = T::of(2.0) * T::PI();
    let four_pi = T::of(4.0) * T::PI();
    let mut total = T::zero();
    // (lo, hi, φ⁺ as a function of φ⁻) per branch; Gauss nodes are interior,
    // so φ⁺ stays inside [0, 2π) on every branch.
    total += quad.integrate(T::zero(), alpha, |phi| joint_phi_pdf(phi, alpha - phi));
    total += quad.integrate(T::zero(), two_pi - alpha, |phi| {
        joint_phi_pdf(phi, two_pi - alpha - phi)
    });
    total += quad.integrate(alpha, two_pi, |phi| joint_phi_pdf(phi, two_pi + alpha - phi));
    total += quad.integrate(two_pi - alpha, two_pi, |phi| {
        joint_phi_pdf(phi, four_pi - alpha - phi)
    });
    Ok(total)
}

/// Closed-form folded amplitude for one spin projection:
/// `A(±1) = 6a²/(5π³)`, `A(0) = 8a²/(5π³)`.
pub fn qm_alpha_pdf_for_sz<T: Real>(sz: i32, a: AsymmetryParam<T>) -> Result<AlphaPdf<T>> {
    let (_, _, c2) = qm_phi_marginal_coefficients(sz, a)?;
    // Folding the constant gives 1/π; folding c₂·cos(φ⁻+φ⁺) gives
    // 4π·c₂·cos α (each branch contributes its length times cos α).
    AlphaPdf::new(T::of(4.0) * T::PI() * c2)
}

/// Folded density for the equal spin-projection mixture:
/// `W(α) = 1/π + 4a²/(3π³)·cos α`.
pub fn qm_alpha_pdf<T: Real>(a: AsymmetryParam<T>) -> AlphaPdf<T> {
    let av = a.value();
    let amplitude = T::of(4.0) * av * av / (T::of(3.0) * T::PI().powi(3));
    AlphaPdf::new(amplitude).expect("|4a²/3π³| < 1/π for |a| <= 1")
}

/// Single-hyperon decay density over solid angle,
/// `(1/4π)(1 + a P·p̂(θ, φ))`; non-negative since `|aP| ≤ 1`.
pub fn hvt_single_pdf<T: Real>(
    cos_th: T,
    phi: T,
    pol: &PolarizationVector<T>,
    a: AsymmetryParam<T>,
) -> Result<T> {
    if cos_th.abs() > T::one() {
        return Err(Error::DomainError {
            what: "cos_theta",
            value: cos_th.to_f64().unwrap_or(f64::NAN),
            domain: "[-1, 1]",
        });
    }
    check_azimuth("phi", phi)?;
    let p_hat = Vec3::from_polar(cos_th, phi)?;
    let quarter_pi = T::of(0.25) / T::PI();
    Ok(quarter_pi * (T::one() + a.value() * pol.vector().dot(&p_hat)))
}

/// Folded density of the independent-decay model: flat, `W(α) = 1/π`, for
/// any polarization magnitude once the shared direction is isotropic.
pub fn hvt_alpha_pdf<T: Real>() -> AlphaPdf<T> {
    AlphaPdf::new(T::zero()).expect("zero amplitude is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn a_default() -> AsymmetryParam<f64> {
        AsymmetryParam::default()
    }

    #[test]
    fn fold_branch_examples() {
        assert_abs_diff_eq!(fold_alpha_angles(0.3, 0.4).unwrap(), 0.7, epsilon = 1e-15);
        // s = 5π/2 lies on the third branch: α = s − 2π = π/2.
        assert_abs_diff_eq!(
            fold_alpha_angles(PI, 1.5 * PI).unwrap(),
            PI / 2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(fold_alpha_angles(0.0, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        // s = 2π: both adjacent branches give 0.
        assert_abs_diff_eq!(fold_alpha_angles(PI, PI).unwrap(), 0.0, epsilon = 1e-15);
        // Second branch: s = 3π/2 → 2π − s = π/2.
        assert_abs_diff_eq!(
            fold_alpha_angles(PI, PI / 2.0).unwrap(),
            PI / 2.0,
            epsilon = 1e-15
        );
        // Fourth branch: s = 3.6π → 4π − s = 0.4π.
        assert_abs_diff_eq!(
            fold_alpha_angles(1.8 * PI, 1.8 * PI).unwrap(),
            0.4 * PI,
            epsilon = 1e-12
        );
    }

    #[test]
    fn fold_rejects_out_of_range_azimuths() {
        assert!(fold_alpha_angles(-0.1, 0.0).is_err());
        assert!(fold_alpha_angles(0.0, 2.0 * PI).is_err());
    }

    #[test]
    fn fold_stays_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10_000 {
            let pm = rng.random_range(0.0..2.0 * PI);
            let pp = rng.random_range(0.0..2.0 * PI);
            let alpha = fold_alpha_angles(pm, pp).unwrap();
            assert!((0.0..=PI).contains(&alpha));
        }
    }

    #[test]
    fn qm_phi_pdf_normalizes_and_is_symmetric() {
        let a = a_default();
        let quad = GaussLegendre::<f64>::new(64);
        let total = quad.integrate(0.0, 2.0 * PI, |x| {
            quad.integrate(0.0, 2.0 * PI, |y| qm_phi_pdf(x, y, a).unwrap())
        });
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
        for (x, y) in [(0.3, 5.1), (2.2, 0.9), (4.0, 4.5)] {
            assert_abs_diff_eq!(
                qm_phi_pdf(x, y, a).unwrap(),
                qm_phi_pdf(y, x, a).unwrap(),
                epsilon = 1e-16
            );
        }
    }

    #[test]
    fn qm_phi_pdf_without_asymmetry_is_flat() {
        let a = AsymmetryParam::new(0.0).unwrap();
        for (x, y) in [(0.0, 0.0), (1.0, 2.0), (3.0, 6.0)] {
            assert_abs_diff_eq!(
                qm_phi_pdf(x, y, a).unwrap(),
                0.25 / (PI * PI),
                epsilon = 1e-16
            );
        }
    }

    #[test]
    fn per_sz_marginal_matches_closed_form_for_plus_minus_one() {
        let a = a_default();
        for sz in [1, -1] {
            for (x, y) in [(0.3, 5.1), (2.2, 0.9), (0.01, 6.2)] {
                assert_abs_diff_eq!(
                    qm_phi_pdf_for_sz(x, y, sz, a).unwrap(),
                    qm_phi_pdf(x, y, a).unwrap(),
                    epsilon = 1e-15
                );
            }
        }
    }

    #[test]
    fn sz_zero_marginal_has_no_single_cos_terms() {
        let a = a_default();
        let (k, c1, c2) = qm_phi_marginal_coefficients(0, a).unwrap();
        assert_abs_diff_eq!(k, 0.25 / (PI * PI), epsilon = 1e-16);
        assert_abs_diff_eq!(c1, 0.0, epsilon = 1e-16);
        let want = 2.0 * 0.642f64.powi(2) / (5.0 * PI.powi(4));
        assert_abs_diff_eq!(c2, want, epsilon = 1e-16);
    }

    #[test]
    fn folding_a_flat_density_gives_one_over_pi() {
        let flat = |_: f64, _: f64| 0.25 / (PI * PI);
        for alpha in [0.0, 0.3, PI / 2.0, 2.9, PI] {
            let w = fold_alpha_pdf(flat, alpha, 64).unwrap();
            assert_abs_diff_eq!(w, 1.0 / PI, epsilon = 1e-12);
        }
    }

    #[test]
    fn folding_reproduces_closed_forms_on_a_grid() {
        let a = a_default();
        let av = a.value();
        // sz = ±1 fold: 1/π + 6a²/(5π³) cos α; sz = 0: 8a²/(5π³).
        for (sz, coeff) in [(1, 6.0 / 5.0), (0, 8.0 / 5.0)] {
            for i in 0..=100 {
                let alpha = PI * i as f64 / 100.0;
                let num = fold_alpha_pdf(
                    |x, y| qm_phi_pdf_for_sz(x, y, sz, a).unwrap(),
                    alpha,
                    256,
                )
                .unwrap();
                let want = 1.0 / PI + coeff * av * av / PI.powi(3) * alpha.cos();
                assert_abs_diff_eq!(num, want, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn single_cos_terms_cancel_in_the_fold() {
        // Project the folded residual (after removing 1/π + A cos α) back
        // onto cos α; the fitted coefficient must vanish.
        let a = a_default();
        let pdf = qm_alpha_pdf_for_sz(1, a).unwrap();
        let n = 101;
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            let alpha = PI * (i as f64 + 0.5) / n as f64;
            let w = fold_alpha_pdf(|x, y| qm_phi_pdf(x, y, a).unwrap(), alpha, 256).unwrap();
            let resid = w - pdf.density(alpha);
            num += resid * alpha.cos();
            den += alpha.cos().powi(2);
        }
        assert!((num / den).abs() < 1e-9);
    }

    #[test]
    fn mixture_amplitude_matches_exact_weights() {
        let a = a_default();
        let av = a.value();
        let mixed = qm_alpha_pdf(a);
        assert_abs_diff_eq!(
            mixed.amplitude(),
            4.0 * av * av / (3.0 * PI.powi(3)),
            epsilon = 1e-16
        );
        // (1/3)·8/5 + (2/3)·6/5 = 4/3 exactly.
        let a0 = qm_alpha_pdf_for_sz(0, a).unwrap().amplitude();
        let a1 = qm_alpha_pdf_for_sz(1, a).unwrap().amplitude();
        assert_abs_diff_eq!(a0 / 3.0 + 2.0 * a1 / 3.0, mixed.amplitude(), epsilon = 1e-15);
        // Numeric value of the default-a amplitude.
        assert_abs_diff_eq!(mixed.amplitude(), 0.0177240, epsilon = 5e-7);
    }

    #[test]
    fn alpha_pdf_rejects_oversized_amplitude() {
        assert!(AlphaPdf::new(1.0 / PI + 1e-6).is_err());
        assert!(AlphaPdf::new(-0.4).is_err());
        let pdf = AlphaPdf::new(0.2).unwrap();
        assert!(pdf.density(PI) > 0.0);
        assert_abs_diff_eq!(pdf.bin_probability(0.0, PI), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn a_zero_mixture_is_uniform() {
        let pdf = qm_alpha_pdf(AsymmetryParam::new(0.0).unwrap());
        assert_abs_diff_eq!(pdf.amplitude(), 0.0, epsilon = 1e-18);
        assert_abs_diff_eq!(pdf.density(0.1), 1.0 / PI, epsilon = 1e-16);
    }

    #[test]
    fn qm_angular_pdf_normalization_is_unity() {
        // The flat-measure integral of the multipole sum is analytically 1;
        // frozen as the regression value for every spin projection.
        for sz in [-1, 0, 1] {
            let pdf = QmAngularPdf::<f64>::new(sz, a_default()).unwrap();
            assert_abs_diff_eq!(pdf.normalization(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn qm_angular_pdf_is_flat_without_asymmetry() {
        let pdf = QmAngularPdf::<f64>::new(1, AsymmetryParam::new(0.0).unwrap()).unwrap();
        let want = 0.25 / PI.powi(4);
        for (c1, p1, c2, p2) in [(0.3, 1.0, -0.8, 4.0), (0.0, 0.0, 0.99, 6.0)] {
            assert_abs_diff_eq!(pdf.density(c1, p1, c2, p2).unwrap(), want, epsilon = 1e-15);
        }
    }

    #[test]
    fn qm_angular_pdf_imaginary_residue_is_tiny() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let pdf = QmAngularPdf::<f64>::new(1, a_default()).unwrap();
        for _ in 0..10_000 {
            let t1 = rng.random_range(0.0..PI);
            let p1 = rng.random_range(0.0..2.0 * PI);
            let t2 = rng.random_range(0.0..PI);
            let p2 = rng.random_range(0.0..2.0 * PI);
            let v = pdf.complex_sum(t1, p1, t2, p2);
            assert!(v.im.abs() < 1e-12);
            assert!(v.re > 0.0, "density must stay positive");
        }
    }

    /// Full 4-D product-quadrature oracle for the normalization, not the
    /// separable shortcut used by the implementation.
    #[test]
    fn four_dimensional_quadrature_normalization_oracle() {
        let pdf = QmAngularPdf::<f64>::new(1, a_default()).unwrap();
        let quad = GaussLegendre::<f64>::new(24);
        let mut total = 0.0;
        for (t1, w1) in quad.mapped(0.0, PI) {
            for (p1, w2) in quad.mapped(0.0, 2.0 * PI) {
                for (t2, w3) in quad.mapped(0.0, PI) {
                    for (p2, w4) in quad.mapped(0.0, 2.0 * PI) {
                        total += pdf.complex_sum(t1, p1, t2, p2).re * w1 * w2 * w3 * w4;
                    }
                }
            }
        }
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
    }

    /// Marginalizing the polar angles out of the four-angle density must
    /// reproduce the closed-form azimuthal marginal pointwise.
    #[test]
    fn polar_marginal_matches_phi_pdf_on_grid() {
        let a = a_default();
        let quad = GaussLegendre::<f64>::new(48);
        for sz in [1, 0] {
            let pdf = QmAngularPdf::<f64>::new(sz, a).unwrap();
            for i in 0..32 {
                for j in 0..32 {
                    let p1 = (i as f64 + 0.5) * 2.0 * PI / 32.0;
                    let p2 = (j as f64 + 0.5) * 2.0 * PI / 32.0;
                    let marginal = quad.integrate(0.0, PI, |t1| {
                        quad.integrate(0.0, PI, |t2| pdf.complex_sum(t1, p1, t2, p2).re)
                    });
                    let want = qm_phi_pdf_for_sz(p1, p2, sz, a).unwrap();
                    assert!(
                        (marginal - want).abs() / want < 1e-8,
                        "sz={sz} ({p1:.3},{p2:.3}): {marginal:e} vs {want:e}"
                    );
                }
            }
        }
    }

    #[test]
    fn hvt_single_pdf_properties() {
        let a = a_default();
        // Unpolarized: flat over solid angle.
        let flat = hvt_single_pdf(0.3, 1.0, &PolarizationVector::zero(), a).unwrap();
        assert_abs_diff_eq!(flat, 0.25 / PI, epsilon = 1e-16);
        // Normalization over solid angle for random polarization vectors.
        let quad = GaussLegendre::<f64>::new(32);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let c: f64 = rng.random_range(-1.0..1.0);
            let ph: f64 = rng.random_range(0.0..2.0 * PI);
            let mag: f64 = rng.random_range(0.1..1.0);
            let pol =
                PolarizationVector::new(Vec3::from_polar(c, ph).unwrap().scaled(mag)).unwrap();
            let total = quad.integrate(-1.0, 1.0, |ct| {
                quad.integrate(0.0, 2.0 * PI, |phi| hvt_single_pdf(ct, phi, &pol, a).unwrap())
            });
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
            // Maximum at p̂ ∥ P.
            let (cp, pp) = crate::kinematics::angles_in_frame(
                pol.vector(),
                &crate::kinematics::Frame {
                    i_hat: Vec3::new(1.0, 0.0, 0.0),
                    j_hat: Vec3::new(0.0, 1.0, 0.0),
                    k_hat: Vec3::new(0.0, 0.0, 1.0),
                },
            )
            .unwrap();
            let peak = hvt_single_pdf(cp, pp, &pol, a).unwrap();
            assert_abs_diff_eq!(
                peak,
                (1.0 + a.value() * mag) / (4.0 * PI),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn hvt_alpha_pdf_is_flat_and_normalized() {
        let pdf = hvt_alpha_pdf::<f64>();
        assert_abs_diff_eq!(pdf.density(0.0), 1.0 / PI, epsilon = 1e-16);
        assert_abs_diff_eq!(pdf.density(PI), 1.0 / PI, epsilon = 1e-16);
        assert_abs_diff_eq!(pdf.bin_probability(0.0, PI), 1.0, epsilon = 1e-16);
    }

    #[test]
    fn polarization_vector_rejects_oversized_input() {
        assert!(PolarizationVector::new(Vec3::new(0.8, 0.8, 0.0)).is_err());
        assert!(PolarizationVector::new(Vec3::new(0.6, 0.0, 0.8)).is_ok());
    }

    #[test]
    fn f32_models_are_usable() {
        let a = AsymmetryParam::<f32>::default();
        let pdf = qm_alpha_pdf(a);
        assert!((pdf.amplitude() - 0.0177240f32).abs() < 1e-5);
        let alpha = fold_alpha_angles(0.3f32, 0.4).unwrap();
        assert!((alpha - 0.7).abs() < 1e-6);
    }
}
