//! Orthonormal spherical harmonics with the Condon-Shortley phase, `l ≤ 2`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

/// `Y_lm(θ, φ)` for `0 ≤ l ≤ 2`, `|m| ≤ l`.
pub fn ylm<T: Real>(l: u32, m: i32, theta: T, phi: T) -> Result<Complex<T>> {
    if l > 2 || m.unsigned_abs() > l {
        return Err(Error::InvalidQuantumNumbers(format!(
            "ylm supports l <= 2, |m| <= l; got l = {l}, m = {m}"
        )));
    }
    let pi = T::PI();
    let (sin_t, cos_t) = theta.sin_cos();
    let radial = match (l, m) {
        (0, 0) => T::of(0.5) / pi.sqrt(),
        (1, 0) => (T::of(3.0) / (T::of(4.0) * pi)).sqrt() * cos_t,
        (1, 1) => -(T::of(3.0) / (T::of(8.0) * pi)).sqrt() * sin_t,
        (1, -1) => (T::of(3.0) / (T::of(8.0) * pi)).sqrt() * sin_t,
        (2, 0) => {
            (T::of(5.0) / (T::of(16.0) * pi)).sqrt()
                * (T::of(3.0) * cos_t * cos_t - T::one())
        }
        (2, 1) => -(T::of(15.0) / (T::of(8.0) * pi)).sqrt() * sin_t * cos_t,
        (2, -1) => (T::of(15.0) / (T::of(8.0) * pi)).sqrt() * sin_t * cos_t,
        (2, 2) => (T::of(15.0) / (T::of(32.0) * pi)).sqrt() * sin_t * sin_t,
        (2, -2) => (T::of(15.0) / (T::of(32.0) * pi)).sqrt() * sin_t * sin_t,
        _ => unreachable!(),
    };
    let phase = T::of(m as f64) * phi;
    Ok(Complex::new(radial * phase.cos(), radial * phase.sin()))
}
