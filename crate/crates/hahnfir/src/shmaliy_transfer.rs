//! Transfer function H_m(z, N) of the Shmaliy smoother: the direct
//! z-transform sum (ground truth), the closed Jacobi-polynomial form, and a
//! precision-aware evaluator that measures the catastrophic cancellation
//! between the two Jacobi terms at small omega*T.
//!
//! The closed form
//!
//!   H = 1 - (1/(1-z))^(m+1) * ((m+1)!/(N)_{m+1})
//!         * [P_{m+1}^{(N-1,-2-2m)}(1-2z) - z^(1-N) P_m^{(1-N,-2-2m)}(1-2z)]
//!
//! is an exact rational identity (tested at rational z with zero tolerance);
//! numerically its bracket loses roughly as many digits as the prefactor
//! gains, which is the phenomenon the cancellation report quantifies.

use serde::Serialize;

use crate::decimal::{MpComplex, MpFloat};
use crate::error::{Error, Result};
use crate::exact::{factorial, pochhammer_i};
use crate::orthopoly::jacobi_eval;
use crate::scalar::Scalar;
use crate::shmaliy::{shmaliy_hyp_simple, CoefficientVector};
use crate::{rat, Rational};

/// Horner evaluation of sum_n taps[n] z^(-n) for any scalar type.
pub fn transfer_direct_taps<T: Scalar>(coeffs: &CoefficientVector, z: &T) -> Result<T> {
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let w = T::lift_int(1, z) / z.clone(); // z^{-1}
    let mut acc = T::zero();
    for tap in coeffs.taps.iter().rev() {
        acc = acc * w.clone() + T::lift_rational(tap, z);
    }
    Ok(acc)
}

/// Direct N-term sum for the order-m window-N smoother; exact when `z` is
/// rational.
pub fn transfer_direct<T: Scalar>(order: usize, window: usize, z: &T) -> Result<T> {
    let coeffs = shmaliy_hyp_simple(order, window)?;
    transfer_direct_taps(&coeffs, z)
}

/// Taps converted to the working precision once, so sweeps do not repeat
/// the (potentially huge) exact-rational-to-decimal conversions per point.
pub fn lift_taps(coeffs: &CoefficientVector, digits: u32) -> Vec<MpComplex> {
    coeffs
        .taps
        .iter()
        .map(|t| MpComplex::from_rational(t, digits))
        .collect()
}

/// Horner evaluation over pre-lifted taps; bit-identical to
/// [`transfer_direct_taps`] at the same precision.
pub fn transfer_direct_lifted(taps: &[MpComplex], z: &MpComplex) -> Result<MpComplex> {
    if z.is_zero_value() {
        return Err(Error::ZeroArgument);
    }
    let w = z.recip();
    let mut acc = MpComplex::from_i64(0, z.digits());
    for tap in taps.iter().rev() {
        acc = acc * w.clone() + tap.clone();
    }
    Ok(acc)
}

/// The closed Jacobi form without any singularity guard; callers must keep
/// z away from 0 and 1.
fn transfer_closed_unchecked<T: Scalar>(order: usize, window: usize, z: &T) -> T {
    let m = order as i64;
    let n = window as i64;
    let one = T::lift_int(1, z);
    let gamma_ratio =
        Rational::from_integer(factorial(order + 1)) / pochhammer_i(n, order + 1);
    let x = one.clone() - T::lift_int(2, z) * z.clone(); // 1 - 2z
    let p_hi = jacobi_eval(order + 1, &rat(n - 1), &rat(-2 - 2 * m), &x);
    let p_lo = jacobi_eval(order, &rat(1 - n), &rat(-2 - 2 * m), &x);
    let pref = (one.clone() / (one.clone() - z.clone())).powi(m + 1);
    let bracket = p_hi - z.powi(1 - n) * p_lo;
    one - pref * T::lift_rational(&gamma_ratio, z) * bracket
}

/// Closed form on the exact rational path; z = 1 is the (removable) pole of
/// the prefactor and is rejected.
pub fn transfer_closed_exact(order: usize, window: usize, z: &Rational) -> Result<Rational> {
    if z == &rat(0) {
        return Err(Error::ZeroArgument);
    }
    if z == &rat(1) {
        return Err(Error::NearSingular {
            guard: "z = 1 exactly".into(),
        });
    }
    Ok(transfer_closed_unchecked(order, window, z))
}

/// Squared guard radius around z = 1: the closed form is refused when
/// |z - 1|^2 < 10^(-digits), i.e. |z - 1| < 10^(-digits/2).
///
/// The (1-z)^-(m+1) prefactor amplifies roundoff quadratically in the digits
/// lost, so half the working digits is where the closed form stops being
/// trustworthy. Working with squares keeps the half-exponent exact.
pub fn near_singular_guard_sq(digits: u32) -> MpFloat {
    MpFloat::from_rational(&Scalar::powi(&rat(10), -(digits as i64)), digits.max(12))
}

/// True when `z` is inside the |z - 1| < 10^(-digits/2) guard band.
/// Exact-constant inputs (sentinel precision) use the default digit count.
pub fn within_guard_band(z: &MpComplex) -> bool {
    let digits = if z.digits() == crate::decimal::DIGITS_EXACT {
        crate::decimal::DEFAULT_DIGITS
    } else {
        z.digits()
    };
    let dist_sq = (z.clone() - MpComplex::from_i64(1, digits)).norm_sqr();
    dist_sq.cmp_value(&near_singular_guard_sq(digits)) == std::cmp::Ordering::Less
}

/// Closed form at a decimal working precision taken from `z`. Returns
/// [`Error::NearSingular`] inside the guard band, where callers should fall
/// back to [`transfer_direct`].
pub fn transfer_closed(order: usize, window: usize, z: &MpComplex) -> Result<MpComplex> {
    if z.is_zero_value() {
        return Err(Error::ZeroArgument);
    }
    if within_guard_band(z) {
        return Err(Error::NearSingular {
            guard: format!("10^-{}/2 radius", z.digits()),
        });
    }
    Ok(transfer_closed_unchecked(order, window, z))
}

/// One evaluated point of a frequency sweep.
#[derive(Clone, Debug, Serialize)]
pub struct ResponseSample {
    pub omega_t: f64,
    pub value: MpComplex,
    pub magnitude: f64,
    pub phase: f64,
    pub digits: u32,
}

impl ResponseSample {
    pub fn from_value(omega_t: f64, value: MpComplex, digits: u32) -> Self {
        let magnitude = value.abs().to_f64();
        let phase = value.arg_f64();
        ResponseSample {
            omega_t,
            value,
            magnitude,
            phase,
            digits,
        }
    }
}

/// CSV with header `omega_t,re,im,abs,arg,digits` and a trailing newline.
pub fn response_csv(samples: &[ResponseSample]) -> String {
    let mut out = String::from("omega_t,re,im,abs,arg,digits\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            s.omega_t,
            s.value.re(),
            s.value.im(),
            s.magnitude,
            s.phase,
            s.digits
        ));
    }
    out
}

fn validate_grid(grid: &[f64], digits: u32) -> Result<()> {
    if digits < 9 {
        return Err(Error::InvalidParameter(
            "digits must be at least 9".into(),
        ));
    }
    for &w in grid {
        if !(w > 0.0 && w < 2.0 * std::f64::consts::PI) {
            return Err(Error::InvalidParameter(format!(
                "omega_t {w} outside (0, 2*pi)"
            )));
        }
    }
    Ok(())
}

/// Sweep the closed form over a grid of omega*T values (radians), falling
/// back to the direct sum inside the z = 1 guard band. Grid order is
/// preserved.
pub fn frequency_response(
    order: usize,
    window: usize,
    grid: &[f64],
    digits: u32,
) -> Result<Vec<ResponseSample>> {
    validate_grid(grid, digits)?;
    let coeffs = shmaliy_hyp_simple(order, window)?;
    let lifted = lift_taps(&coeffs, digits);
    grid.iter()
        .map(|&omega| {
            let z = MpComplex::unit_circle(omega, digits);
            let value = match transfer_closed(order, window, &z) {
                Ok(v) => v,
                Err(Error::NearSingular { .. }) => transfer_direct_lifted(&lifted, &z)?,
                Err(e) => return Err(e),
            };
            Ok(ResponseSample::from_value(omega, value, digits))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CancellationPoint {
    pub omega_t: f64,
    pub low: MpComplex,
    pub high: MpComplex,
    pub oracle: MpComplex,
    pub rel_err_low: f64,
    pub rel_err_high: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CancellationReport {
    pub order: usize,
    pub window: usize,
    pub low_digits: u32,
    pub high_digits: u32,
    pub points: Vec<CancellationPoint>,
    pub max_rel_err_low: f64,
    pub max_rel_err_high: f64,
}

/// Per grid point: the closed form at both precisions and the direct-sum
/// oracle at the high precision, with relative errors of each closed-form
/// evaluation against the oracle.
pub fn cancellation_report(
    order: usize,
    window: usize,
    grid: &[f64],
    low_digits: u32,
    high_digits: u32,
) -> Result<CancellationReport> {
    if low_digits >= high_digits {
        return Err(Error::InvalidParameter(
            "low_digits must be smaller than high_digits".into(),
        ));
    }
    validate_grid(grid, low_digits)?;
    let coeffs = shmaliy_hyp_simple(order, window)?;
    let lifted = lift_taps(&coeffs, high_digits);
    let mut points = Vec::with_capacity(grid.len());
    let mut max_low = 0.0f64;
    let mut max_high = 0.0f64;
    for &omega in grid {
        let z_hi = MpComplex::unit_circle(omega, high_digits);
        let oracle = transfer_direct_lifted(&lifted, &z_hi)?;
        let high = transfer_closed(order, window, &z_hi)?;
        let z_lo = MpComplex::unit_circle(omega, low_digits);
        let low = transfer_closed(order, window, &z_lo)?;
        let denom = oracle.abs().to_f64();
        let rel_err_low = (low.clone() - oracle.clone()).abs().to_f64() / denom;
        let rel_err_high = (high.clone() - oracle.clone()).abs().to_f64() / denom;
        max_low = max_low.max(rel_err_low);
        max_high = max_high.max(rel_err_high);
        points.push(CancellationPoint {
            omega_t: omega,
            low,
            high,
            oracle,
            rel_err_low,
            rel_err_high,
        });
    }
    Ok(CancellationReport {
        order,
        window,
        low_digits,
        high_digits,
        points,
        max_rel_err_low: max_low,
        max_rel_err_high: max_high,
    })
}

/// Logarithmic or linear frequency grid (radians), `points >= 1`.
pub fn omega_grid(log_spaced: bool, min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::InvalidParameter("points must be >= 1".into()));
    }
    if !(min > 0.0 && min <= max && max < 2.0 * std::f64::consts::PI) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < min <= max < 2*pi, got [{min}, {max}]"
        )));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    let n = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            // pin the endpoints so they survive the log round-trip exactly
            if i == 0 {
                min
            } else if i == points - 1 {
                max
            } else {
                let t = i as f64 / n;
                if log_spaced {
                    (min.ln() + t * (max.ln() - min.ln())).exp()
                } else {
                    min + t * (max - min)
                }
            }
        })
        .collect())
}
