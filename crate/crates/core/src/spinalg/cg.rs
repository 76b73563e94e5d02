//! Clebsch-Gordan coefficients in the Condon-Shortley convention.

use crate::error::{Error, Result};
use crate::real::Real;

const MAX_FACT: usize = 64;

fn factorials() -> [f64; MAX_FACT] {
    let mut f = [1.0f64; MAX_FACT];
    for i in 1..MAX_FACT {
        f[i] = f[i - 1] * i as f64;
    }
    f
}

/// Doubled representation of a (half-)integer, or an error if `x` is not a
/// multiple of 1/2 within 1e-9.
fn doubled(name: &str, x: f64) -> Result<i64> {
    let two = 2.0 * x;
    let r = two.round();
    if (two - r).abs() > 1e-9 || !r.is_finite() {
        return Err(Error::InvalidQuantumNumbers(format!(
            "{name} = {x} is not a (half-)integer"
        )));
    }
    Ok(r as i64)
}

/// `⟨j1 m1; j2 m2 | J M⟩`.
///
/// Returns zero when `M ≠ m1 + m2` or the triangle rule fails, and an
/// `InvalidQuantumNumbers` error when the arguments are not valid
/// (half-)integers with `|m| ≤ j` and `j − m` integral.
pub fn clebsch_gordan<T: Real>(j1: f64, m1: f64, j2: f64, m2: f64, j: f64, m: f64) -> Result<T> {
    let tj1 = doubled("j1", j1)?;
    let tm1 = doubled("m1", m1)?;
    let tj2 = doubled("j2", j2)?;
    let tm2 = doubled("m2", m2)?;
    let tj = doubled("J", j)?;
    let tm = doubled("M", m)?;

    for (jn, mn, jv, mv) in [
        ("j1", "m1", tj1, tm1),
        ("j2", "m2", tj2, tm2),
        ("J", "M", tj, tm),
    ] {
        if jv < 0 {
            return Err(Error::InvalidQuantumNumbers(format!("{jn} < 0")));
        }
        if mv.abs() > jv {
            return Err(Error::InvalidQuantumNumbers(format!("|{mn}| > {jn}")));
        }
        if (jv - mv) % 2 != 0 {
            return Err(Error::InvalidQuantumNumbers(format!(
                "{jn} - {mn} is not an integer"
            )));
        }
    }

    // Selection rules give an exact zero, not an error.
    if tm1 + tm2 != tm {
        return Ok(T::zero());
    }
    if tj < (tj1 - tj2).abs() || tj > tj1 + tj2 || (tj1 + tj2 + tj) % 2 != 0 {
        return Ok(T::zero());
    }

    let f = factorials();
    // All of these are genuine integers in the doubled representation.
    let fact = |x: i64| -> f64 {
        debug_assert!(x % 2 == 0 && x >= 0);
        f[(x / 2) as usize]
    };

    let prefactor = ((tj + 1) as f64).ln()
        + (fact(tj1 + tj2 - tj).ln() + fact(tj1 - tj2 + tj).ln() + fact(-tj1 + tj2 + tj).ln()
            - fact(tj1 + tj2 + tj + 2).ln())
        + (fact(tj + tm).ln()
            + fact(tj - tm).ln()
            + fact(tj1 - tm1).ln()
            + fact(tj1 + tm1).ln()
            + fact(tj2 - tm2).ln()
            + fact(tj2 + tm2).ln());

    let k_min = 0
        .max((tj2 - tj - tm1) / 2)
        .max((tj1 + tm2 - tj) / 2);
    let k_max = ((tj1 + tj2 - tj) / 2)
        .min((tj1 - tm1) / 2)
        .min((tj2 + tm2) / 2);

    let mut sum = 0.0f64;
    for k in k_min..=k_max {
        let denom = f[k as usize]
            * fact(tj1 + tj2 - tj - 2 * k)
            * fact(tj1 - tm1 - 2 * k)
            * fact(tj2 + tm2 - 2 * k)
            * fact(tj - tj2 + tm1 + 2 * k)
            * fact(tj - tj1 - tm2 + 2 * k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / denom;
    }

    Ok(T::of((0.5 * prefactor).exp() * sum))
}
