//! The order-zero orthogonal UFIR low-pass filter built from Hahn
//! polynomials, its transfer functions, the unbiasedness-integral check, and
//! FIR application to sampled signals, plus the general discrete orthogonal
//! difference the filter is the n = 0 case of.
//!
//! The low-pass kernel keeps the published summation bounds m = 0..N-1 (one
//! point short of the full Hahn support 0..N); those bounds are exactly what
//! makes the DC gain N/(N+alpha+1). The orthogonal difference is provided
//! with both bounds: the truncated kernel matches the low-pass filter, the
//! full-support kernel is the one that reproduces derivatives of low-degree
//! polynomials exactly.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, pochhammer, pochhammer_vanishes, pochhammer_zero_index};
use crate::hypergeom::{eval_pfq, PfqSpec};
use crate::orthopoly::{hahn_eval, hahn_norm_ratio, hahn_weight, jacobi_eval, HahnParams};
use crate::scalar::Scalar;
use crate::shmaliy::{CoefficientVector, Family, Route};
use crate::shmaliy_transfer::ResponseSample;
use crate::{rat, rational_string, Rational};

/// A finite real-valued signal with index metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    pub samples: Vec<f64>,
    pub origin: i64,
    pub period: f64,
}

impl Signal {
    pub fn new(samples: Vec<f64>, origin: i64, period: f64) -> Result<Self> {
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        if period.is_nan() || period <= 0.0 {
            return Err(Error::InvalidParameter("sample period must be positive".into()));
        }
        Ok(Signal {
            samples,
            origin,
            period,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// The N+1 kernel values Gamma(N+1)/(alpha+2)_N * w(m; alpha, beta, N) over
/// the full Hahn support m = 0..=N.
pub fn lowpass_full_kernel(
    alpha: &Rational,
    beta: &Rational,
    window: usize,
) -> Result<Vec<Rational>> {
    let a2 = alpha + rat(2);
    if pochhammer_vanishes(&a2, window) {
        return Err(Error::SingularLowerParameter {
            index: pochhammer_zero_index(&a2).unwrap_or(0),
            parameter: a2,
        });
    }
    let pref = Rational::from_integer(factorial(window)) / pochhammer(&(alpha + rat(2)), window);
    (0..=window)
        .map(|m| Ok(&pref * hahn_weight(m, alpha, beta, window)?))
        .collect()
}

/// The n = 0 low-pass weight vector with the published truncation
/// m = 0..N-1: taps[m] = Gamma(N+1)/(alpha+2)_N * (alpha+1)_m (beta+1)_{N-m}
/// / ((N-m)! m!).
pub fn lowpass_weights(
    alpha: &Rational,
    beta: &Rational,
    window: usize,
) -> Result<CoefficientVector> {
    if window == 0 {
        return Err(Error::InvalidParameter("window must be >= 1".into()));
    }
    let mut taps = lowpass_full_kernel(alpha, beta, window)?;
    taps.pop(); // published bounds stop at m = N-1
    Ok(CoefficientVector {
        family: Family::HahnLowPass {
            alpha: rational_string(alpha),
            beta: rational_string(beta),
        },
        window,
        taps,
        route: Route::Weights,
    })
}

/// Direct N-term z-transform sum of the low-pass taps; exact at rational z.
pub fn lp_transfer_direct<T: Scalar>(
    alpha: &Rational,
    beta: &Rational,
    window: usize,
    z: &T,
) -> Result<T> {
    let coeffs = lowpass_weights(alpha, beta, window)?;
    crate::shmaliy_transfer::transfer_direct_taps(&coeffs, z)
}

/// DC gain N/(N + alpha + 1) of the beta = 0 filter (the z -> 1 limit).
pub fn lp_dc_gain(alpha: u32, window: usize) -> Rational {
    rat(window as i64) / rat(window as i64 + alpha as i64 + 1)
}

/// Closed transfer form for beta = 0:
/// (N/(N+alpha+1)) z^(1-N) 2F1(1-N, 1; alpha+2; 1-z), terminating after N-1
/// terms. The equivalent Jacobi-polynomial route is computed alongside and
/// asserted equal whenever the scalar type is exact; z = 1 returns the exact
/// limit.
pub fn lp_transfer_closed<T: Scalar>(alpha: u32, window: usize, z: &T) -> Result<T> {
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let one = T::lift_int(1, z);
    if *z == one {
        return Ok(T::lift_rational(&lp_dc_gain(alpha, window), z));
    }
    let n = window as i64;
    let spec = PfqSpec::new(
        vec![rat(1 - n), rat(1)],
        vec![rat(alpha as i64 + 2)],
        one - z.clone(),
        window - 1,
    );
    let f21 = T::lift_rational(&lp_dc_gain(alpha, window), z) * z.powi(1 - n) * eval_pfq(&spec)?;
    if T::EXACT {
        let jac = lp_transfer_closed_jacobi(alpha, window, z)?;
        assert!(
            f21 == jac,
            "2F1 and Jacobi routes disagree at alpha={alpha} N={window}"
        );
    }
    Ok(f21)
}

/// The Jacobi-polynomial rendering of the beta = 0 closed form:
/// (Gamma(N+1)/(alpha+2)_N) z^(1-N) P_{N-1}^{(alpha+1, -alpha-N)}(2z - 1).
pub fn lp_transfer_closed_jacobi<T: Scalar>(alpha: u32, window: usize, z: &T) -> Result<T> {
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let one = T::lift_int(1, z);
    if *z == one {
        return Ok(T::lift_rational(&lp_dc_gain(alpha, window), z));
    }
    let n = window as i64;
    let a = alpha as i64;
    let pref = Rational::from_integer(factorial(window)) / pochhammer(&rat(a + 2), window);
    let x = T::lift_int(2, z) * z.clone() - one; // 2z - 1
    Ok(T::lift_rational(&pref, z)
        * z.powi(1 - n)
        * jacobi_eval(window - 1, &rat(a + 1), &rat(-a - n), &x))
}

/// General-beta closed form
///
///   ((beta+1)_N/(alpha+2)_N) 2F1(-N, alpha+1; -beta-N; 1/z)
///     - ((alpha+1)_N/(alpha+2)_N) z^(-N)
///
/// valid only when no lower Pochhammer (-beta-N)_k vanishes through term N;
/// in particular beta = 0 is rejected.
pub fn lp_transfer_general_beta<T: Scalar>(
    alpha: &Rational,
    beta: &Rational,
    window: usize,
    z: &T,
) -> Result<T> {
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let n = window as i64;
    let lower = -beta - rat(n);
    if beta == &rat(0) || pochhammer_vanishes(&lower, window + 1) {
        return Err(Error::SingularLowerParameter {
            index: pochhammer_zero_index(&lower).unwrap_or(window + 1),
            parameter: lower,
        });
    }
    let a2 = alpha + rat(2);
    if pochhammer_vanishes(&a2, window) {
        return Err(Error::SingularLowerParameter {
            index: pochhammer_zero_index(&a2).unwrap_or(0),
            parameter: a2,
        });
    }
    let c1 = pochhammer(&(beta + rat(1)), window) / pochhammer(&(alpha + rat(2)), window);
    let c2 = pochhammer(&(alpha + rat(1)), window) / pochhammer(&(alpha + rat(2)), window);
    let inv_z = T::lift_int(1, z) / z.clone();
    let spec = PfqSpec::new(
        vec![rat(-n), alpha + rat(1)],
        vec![lower],
        inv_z,
        window,
    );
    Ok(T::lift_rational(&c1, z) * eval_pfq(&spec)? - T::lift_rational(&c2, z) * z.powi(-n))
}

/// Frequency sweep of the low-pass filter via the direct tap sum.
///
/// The closed 2F1/Jacobi forms are exact-verification routes, not sweep
/// evaluators: their N-1-term series loses ~N*log10(3) digits to binomial
/// cancellation as |1 - z| approaches 2, while the direct sum of the
/// positive taps is unconditionally stable on the unit circle (and has no
/// z = 1 singularity at all).
pub fn lp_frequency_response(
    alpha: &Rational,
    beta: &Rational,
    window: usize,
    grid: &[f64],
    digits: u32,
) -> Result<Vec<ResponseSample>> {
    use crate::decimal::MpComplex;
    if digits < 9 {
        return Err(Error::InvalidParameter("digits must be at least 9".into()));
    }
    let coeffs = lowpass_weights(alpha, beta, window)?;
    let lifted = crate::shmaliy_transfer::lift_taps(&coeffs, digits);
    grid.iter()
        .map(|&omega| {
            if !(omega > 0.0 && omega < 2.0 * std::f64::consts::PI) {
                return Err(Error::InvalidParameter(format!(
                    "omega_t {omega} outside (0, 2*pi)"
                )));
            }
            let z = MpComplex::unit_circle(omega, digits);
            let value = crate::shmaliy_transfer::transfer_direct_lifted(&lifted, &z)?;
            Ok(ResponseSample::from_value(omega, value, digits))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct UnbiasednessReport {
    pub alpha: String,
    pub window: usize,
    pub quad_points: usize,
    pub i1_re: f64,
    pub i1_im: f64,
    pub i2: f64,
    pub oracle1: f64,
    pub oracle2: f64,
    pub dev1: f64,
    pub dev2: f64,
    /// The integrals equal 2*pi*taps[0] and 2*pi*sum(taps^2) by the Fourier
    /// and Parseval identities; they are not zero for these kernels.
    pub integrals_vanish: bool,
}

/// Uniform-grid trapezoid quadrature of H and |H|^2 over the unit circle
/// (exact for trigonometric polynomials of degree below `quad_points`),
/// compared against the Fourier-coefficient and Parseval oracles.
pub fn unbiasedness_integrals(
    alpha: &Rational,
    window: usize,
    quad_points: usize,
) -> Result<UnbiasednessReport> {
    if quad_points < 4 * window {
        return Err(Error::InvalidParameter(format!(
            "quad_points must be at least 4N = {}",
            4 * window
        )));
    }
    let taps = lowpass_weights(alpha, &rat(0), window)?.taps_f64();
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut i1 = Complex64::new(0.0, 0.0);
    let mut i2 = 0.0f64;
    for j in 0..quad_points {
        let omega = two_pi * j as f64 / quad_points as f64;
        let z = Complex64::from_polar(1.0, omega);
        let w = z.conj(); // z^{-1} on the unit circle
        let mut h = Complex64::new(0.0, 0.0);
        for tap in taps.iter().rev() {
            h = h * w + Complex64::new(*tap, 0.0);
        }
        i1 += h;
        i2 += h.norm_sqr();
    }
    let step = two_pi / quad_points as f64;
    i1 *= step;
    i2 *= step;
    let oracle1 = two_pi * taps[0];
    let oracle2 = two_pi * taps.iter().map(|t| t * t).sum::<f64>();
    Ok(UnbiasednessReport {
        alpha: rational_string(alpha),
        window,
        quad_points,
        i1_re: i1.re,
        i1_im: i1.im,
        i2,
        oracle1,
        oracle2,
        dev1: (i1.re - oracle1).abs().max(i1.im.abs()),
        dev2: (i2 - oracle2).abs(),
        integrals_vanish: false,
    })
}

/// Which summation bound an orthogonal-difference kernel uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportBound {
    /// k = 0..N-1: one point short of the Hahn support, matching the
    /// low-pass kernel and its N/(N+alpha+1) DC gain.
    Truncated,
    /// k = 0..N: the full support; this is the variant that reproduces the
    /// n-th derivative of degree-n polynomials exactly.
    Full,
}

/// Exact kernel of the order-n orthogonal difference with delta = 1:
/// coefficient k is (k_n n!/h_n) Q_n(k; alpha, beta, N) w(k; alpha, beta, N).
pub fn orthogonal_difference_kernel(
    order: usize,
    alpha: &Rational,
    beta: &Rational,
    window: usize,
    bound: SupportBound,
) -> Result<Vec<Rational>> {
    if order > window {
        return Err(Error::OrderExceedsWindow {
            order,
            window,
        });
    }
    let ratio = hahn_norm_ratio(order, alpha, beta, window)?
        * Rational::from_integer(factorial(order));
    let params = HahnParams::new(alpha.clone(), beta.clone(), rat(window as i64), order);
    let top = match bound {
        SupportBound::Truncated => window - 1,
        SupportBound::Full => window,
    };
    (0..=top)
        .map(|k| {
            Ok(&ratio
                * hahn_eval(&params, &rat(k as i64))?
                * hahn_weight(k, alpha, beta, window)?)
        })
        .collect()
}

fn window_slice(signal: &Signal, x: usize, needed: usize) -> Result<&[f64]> {
    let len = signal.len();
    if x + needed > len {
        return Err(Error::WindowOutOfRange {
            start: x as i64,
            start_plus_len: (x + needed) as i64,
            signal_len: len,
        });
    }
    Ok(&signal.samples[x..x + needed])
}

/// Order-n orthogonal difference at offset `x`, with the published
/// truncated bound k = 0..N-1 (consumes N samples).
pub fn orthogonal_difference(
    signal: &Signal,
    order: usize,
    alpha: &Rational,
    beta: &Rational,
    window: usize,
    x: usize,
) -> Result<f64> {
    let kernel = orthogonal_difference_kernel(order, alpha, beta, window, SupportBound::Truncated)?;
    let data = window_slice(signal, x, window)?;
    Ok(kernel
        .iter()
        .zip(data)
        .map(|(c, v)| c.to_f64().unwrap_or(f64::NAN) * v)
        .sum())
}

/// Order-n orthogonal difference over the full Hahn support k = 0..N
/// (consumes N+1 samples); exact on degree-n polynomial inputs.
pub fn orthogonal_difference_full(
    signal: &Signal,
    order: usize,
    alpha: &Rational,
    beta: &Rational,
    window: usize,
    x: usize,
) -> Result<f64> {
    let kernel = orthogonal_difference_kernel(order, alpha, beta, window, SupportBound::Full)?;
    let data = window_slice(signal, x, window + 1)?;
    Ok(kernel
        .iter()
        .zip(data)
        .map(|(c, v)| c.to_f64().unwrap_or(f64::NAN) * v)
        .sum())
}

/// Convolve a signal with an FIR tap vector:
/// output[x] = sum_n taps[n] signal[x+n], output length len - N + 1.
pub fn apply_fir(signal: &Signal, coeffs: &CoefficientVector) -> Result<Signal> {
    let n = coeffs.taps.len();
    if signal.len() < n {
        return Err(Error::SignalTooShort {
            len: signal.len(),
            needed: n,
        });
    }
    let taps = coeffs.taps_f64();
    let out: Vec<f64> = (0..=signal.len() - n)
        .map(|x| {
            taps.iter()
                .zip(&signal.samples[x..x + n])
                .map(|(t, v)| t * v)
                .sum()
        })
        .collect();
    Signal::new(out, signal.origin, signal.period)
}

/// Exact-rational FIR application; used wherever polynomial reproduction is
/// asserted with zero tolerance.
pub fn apply_fir_exact(samples: &[Rational], coeffs: &CoefficientVector) -> Result<Vec<Rational>> {
    let n = coeffs.taps.len();
    if samples.len() < n {
        return Err(Error::SignalTooShort {
            len: samples.len(),
            needed: n,
        });
    }
    Ok((0..=samples.len() - n)
        .map(|x| {
            coeffs
                .taps
                .iter()
                .zip(&samples[x..x + n])
                .map(|(t, v)| t * v)
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use crate::shmaliy::shmaliy_hyp_simple;

    #[test]
    fn uniform_weights_at_alpha_zero() {
        let w = lowpass_weights(&rat(0), &rat(0), 8).unwrap();
        assert_eq!(w.taps, vec![ratio(1, 9); 8]);
    }

    #[test]
    fn alpha_one_weights() {
        let w = lowpass_weights(&rat(1), &rat(0), 4).unwrap();
        assert_eq!(
            w.taps,
            vec![ratio(2, 30), ratio(4, 30), ratio(6, 30), ratio(8, 30)]
        );
        assert_eq!(w.tap_sum(), ratio(2, 3));
    }

    #[test]
    fn dc_gain_identity() {
        for alpha in 0..=6u32 {
            for window in 2usize..=50 {
                let w = lowpass_weights(&rat(alpha as i64), &rat(0), window).unwrap();
                assert_eq!(w.tap_sum(), lp_dc_gain(alpha, window));
            }
        }
    }

    #[test]
    fn direct_transfer_examples() {
        assert_eq!(
            lp_transfer_direct(&rat(0), &rat(0), 3, &rat(2)).unwrap(),
            ratio(7, 16)
        );
        // z = 1 gives the tap sum
        for (alpha, window) in [(0i64, 5usize), (2, 7), (4, 12)] {
            assert_eq!(
                lp_transfer_direct(&rat(alpha), &rat(0), window, &rat(1)).unwrap(),
                lp_dc_gain(alpha as u32, window)
            );
        }
        // alternating cancellation for even N
        assert_eq!(
            lp_transfer_direct(&rat(0), &rat(0), 8, &rat(-1)).unwrap(),
            rat(0)
        );
    }

    #[test]
    fn closed_routes_agree_exactly() {
        for alpha in 0..=2u32 {
            for window in 2usize..=10 {
                for z in [rat(2), ratio(1, 2), rat(-3)] {
                    let direct =
                        lp_transfer_direct(&rat(alpha as i64), &rat(0), window, &z).unwrap();
                    // lp_transfer_closed asserts the 2F1 and Jacobi routes agree
                    let closed = lp_transfer_closed(alpha, window, &z).unwrap();
                    assert_eq!(direct, closed, "alpha={alpha} N={window} z={z}");
                }
            }
        }
    }

    #[test]
    fn closed_form_at_z_equal_one_is_the_limit() {
        assert_eq!(lp_transfer_closed(3, 9, &rat(1)).unwrap(), ratio(9, 13));
    }

    #[test]
    fn printed_low_order_closed_forms() {
        // alpha = 0: z^(1-N) (z^N - 1) / ((N+1)(z-1))
        // alpha = 1: 2 z^(1-N) (z^(N+1) - (N+1) z + N) / ((N+1)(N+2)(z-1)^2)
        // alpha = 2: 3 z^(1-N) (2 z^(N+2) - (N+1)(N+2) z^2 + 2N(N+2) z - N(N+1))
        //            / ((N+1)(N+2)(N+3)(z-1)^3)
        for window in 2usize..=8 {
            let n = window as i64;
            for z in [rat(2), ratio(1, 2), rat(-3)] {
                let zi = |e: i64| Scalar::powi(&z, e);
                let a0 = zi(1 - n) * (zi(n) - rat(1)) / (rat(n + 1) * (&z - rat(1)));
                assert_eq!(lp_transfer_closed(0, window, &z).unwrap(), a0);
                let a1 = rat(2) * zi(1 - n) * (zi(n + 1) - rat(n + 1) * &z + rat(n))
                    / (rat((n + 1) * (n + 2)) * Scalar::powi(&(&z - rat(1)), 2));
                assert_eq!(lp_transfer_closed(1, window, &z).unwrap(), a1);
                let a2 = rat(3)
                    * zi(1 - n)
                    * (rat(2) * zi(n + 2) - rat((n + 1) * (n + 2)) * &z * &z
                        + rat(2 * n * (n + 2)) * &z
                        - rat(n * (n + 1)))
                    / (rat((n + 1) * (n + 2) * (n + 3)) * Scalar::powi(&(&z - rat(1)), 3));
                assert_eq!(lp_transfer_closed(2, window, &z).unwrap(), a2);
            }
        }
    }

    #[test]
    fn general_beta_route_matches_direct() {
        for (alpha, beta) in [(rat(0), rat(1)), (rat(1), rat(1)), (rat(2), rat(2))] {
            for window in 2usize..=9 {
                for z in [rat(2), ratio(1, 2), rat(-3)] {
                    let direct = lp_transfer_direct(&alpha, &beta, window, &z).unwrap();
                    let closed = lp_transfer_general_beta(&alpha, &beta, window, &z).unwrap();
                    assert_eq!(direct, closed, "alpha={alpha} beta={beta} N={window}");
                }
            }
        }
    }

    #[test]
    fn general_beta_rejects_beta_zero() {
        assert!(matches!(
            lp_transfer_general_beta(&rat(0), &rat(0), 3, &rat(2)),
            Err(Error::SingularLowerParameter { .. })
        ));
    }

    #[test]
    fn single_tap_window() {
        let direct = lp_transfer_direct(&rat(0), &rat(1), 1, &rat(2)).unwrap();
        let closed = lp_transfer_general_beta(&rat(0), &rat(1), 1, &rat(2)).unwrap();
        assert_eq!(direct, closed);
        let w = lowpass_weights(&rat(0), &rat(1), 1).unwrap();
        assert_eq!(direct, w.taps[0].clone());
    }

    #[test]
    fn quadrature_matches_oracles() {
        for (alpha, window) in [(0i64, 8usize), (1, 8), (3, 16)] {
            let rep = unbiasedness_integrals(&rat(alpha), window, 1024).unwrap();
            assert!(rep.dev1 <= 1e-10, "I1 dev {}", rep.dev1);
            assert!(rep.dev2 <= 1e-10, "I2 dev {}", rep.dev2);
            assert!(rep.i1_im.abs() <= 1e-12);
            assert!(!rep.integrals_vanish);
            assert!(rep.oracle1 > 0.0 && rep.oracle2 > 0.0);
        }
        // alpha = 0, N = 8: I1 ~ 2 pi/(N+1), I2 ~ 2 pi N/(N+1)^2
        let rep = unbiasedness_integrals(&rat(0), 8, 1024).unwrap();
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!((rep.i1_re - two_pi / 9.0).abs() <= 1e-10);
        assert!((rep.i2 - two_pi * 8.0 / 81.0).abs() <= 1e-10);
    }

    #[test]
    fn quadrature_needs_enough_points() {
        assert!(matches!(
            unbiasedness_integrals(&rat(0), 16, 32),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn truncated_difference_at_order_zero_matches_lowpass() {
        let signal = Signal::new(vec![3.0, 1.0, 4.0, 1.0, 5.0, 9.0], 0, 1.0).unwrap();
        let window = 4usize;
        let coeffs = lowpass_weights(&rat(1), &rat(0), window).unwrap();
        for x in 0..=2usize {
            let by_diff =
                orthogonal_difference(&signal, 0, &rat(1), &rat(0), window, x).unwrap();
            let by_taps: f64 = coeffs
                .taps_f64()
                .iter()
                .zip(&signal.samples[x..x + window])
                .map(|(t, v)| t * v)
                .sum();
            assert!((by_diff - by_taps).abs() < 1e-14);
        }
    }

    #[test]
    fn truncated_difference_dc_gain_on_constants() {
        // order 0 on a constant c gives c * N/(N+alpha+1) for beta = 0
        let c = 2.5f64;
        for (alpha, window) in [(0u32, 5usize), (1, 4), (2, 6)] {
            let signal = Signal::new(vec![c; window + 2], 0, 1.0).unwrap();
            let v = orthogonal_difference(&signal, 0, &rat(alpha as i64), &rat(0), window, 0)
                .unwrap();
            let gain = lp_dc_gain(alpha, window).to_f64().unwrap();
            assert!((v - c * gain).abs() < 1e-13, "alpha={alpha} N={window}");
        }
    }

    #[test]
    fn full_support_difference_reproduces_first_derivative() {
        // exact value 1 on f(t) = t for any parameters, any offset
        for (alpha, beta, window) in [
            (rat(0), rat(0), 5usize),
            (rat(1), rat(0), 4),
            (ratio(1, 2), ratio(1, 3), 5),
            (rat(2), rat(1), 6),
        ] {
            let kernel =
                orthogonal_difference_kernel(1, &alpha, &beta, window, SupportBound::Full)
                    .unwrap();
            for x0 in [-3i64, 0, 7] {
                let exact: Rational = kernel
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * rat(x0 + k as i64))
                    .sum();
                assert_eq!(exact, rat(1), "alpha={alpha} beta={beta} N={window} x={x0}");
            }
        }
        // and through the f64 signal path
        let signal = Signal::new((0..8).map(|i| i as f64).collect(), 0, 1.0).unwrap();
        let v = orthogonal_difference_full(&signal, 1, &rat(1), &rat(0), 5, 1).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_support_difference_reproduces_second_derivative() {
        // exact value 2 on f(t) = t^2
        let kernel =
            orthogonal_difference_kernel(2, &rat(1), &rat(2), 6, SupportBound::Full).unwrap();
        let exact: Rational = kernel
            .iter()
            .enumerate()
            .map(|(k, c)| c * rat((k as i64 - 4) * (k as i64 - 4)))
            .sum();
        assert_eq!(exact, rat(2));
    }

    #[test]
    fn truncated_difference_first_derivative_bias_is_the_dropped_endpoint() {
        // with the truncated bound the order-1 difference of f(t) = t is NOT 1;
        // the defect is exactly the dropped k = N kernel term
        let (alpha, beta, window) = (rat(1), rat(0), 4usize);
        let full =
            orthogonal_difference_kernel(1, &alpha, &beta, window, SupportBound::Full).unwrap();
        let trunc =
            orthogonal_difference_kernel(1, &alpha, &beta, window, SupportBound::Truncated)
                .unwrap();
        for x0 in [0i64, 5] {
            let got: Rational = trunc
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat(x0 + k as i64))
                .sum();
            let dropped = &full[window] * rat(x0 + window as i64);
            assert_eq!(got, rat(1) - dropped, "x0={x0}");
            assert_ne!(got, rat(1));
        }
        // frozen spot value: alpha=1, beta=0, N=4, x0=0 gives -1/7
        let got: Rational = trunc
            .iter()
            .enumerate()
            .map(|(k, c)| c * rat(k as i64))
            .sum();
        assert_eq!(got, ratio(-1, 7));
    }

    #[test]
    fn fir_application_shapes_and_errors() {
        let coeffs = lowpass_weights(&rat(0), &rat(0), 4).unwrap();
        let signal = Signal::new(vec![1.0; 4], 0, 1.0).unwrap();
        let out = apply_fir(&signal, &coeffs).unwrap();
        assert_eq!(out.len(), 1);
        assert!((out.samples[0] - 4.0 / 5.0).abs() < 1e-15);
        let short = Signal::new(vec![1.0; 3], 0, 1.0).unwrap();
        assert_eq!(
            apply_fir(&short, &coeffs).unwrap_err(),
            Error::SignalTooShort { len: 3, needed: 4 }
        );
    }

    #[test]
    fn fir_polynomial_reproduction_exact() {
        // degree-m polynomial through the order-m smoother reproduces inputs
        let (order, window) = (2usize, 6usize);
        let coeffs = shmaliy_hyp_simple(order, window).unwrap();
        let poly = |t: i64| ratio(3, 4) * rat(t * t) - rat(2 * t) + ratio(1, 3);
        let samples: Vec<Rational> = (0..12).map(poly).collect();
        let out = apply_fir_exact(&samples, &coeffs).unwrap();
        assert_eq!(out.len(), 12 - window + 1);
        for (x, v) in out.iter().enumerate() {
            assert_eq!(v, &samples[x]);
        }
    }

    #[test]
    fn signal_rejects_non_finite() {
        assert!(matches!(
            Signal::new(vec![1.0, f64::NAN], 0, 1.0),
            Err(Error::NonFiniteSample(1))
        ));
        assert!(matches!(
            Signal::new(vec![1.0, f64::INFINITY], 0, 1.0),
            Err(Error::NonFiniteSample(1))
        ));
    }
}
