//! Shmaliy/Hahn unbiased-FIR smoothing filters.
//!
//! The crate builds the degree-m Shmaliy smoothing polynomials h_m(n, N) by
//! five independent routes and verifies them against each other in exact
//! rational arithmetic, identifies them as Hahn polynomials, evaluates the
//! closed-form transfer function under a configurable decimal precision
//! (exposing the catastrophic cancellation between its two Jacobi terms at
//! small frequencies), and machine-checks a catalog of terminating-series
//! transformations.
//!
//! Numeric code is generic over a [`scalar::Scalar`] so the same evaluators
//! run over exact rationals ([`Rational`]), `f64`, and the multi-precision
//! decimal types [`MpFloat`]/[`MpComplex`].

pub mod decimal;
pub mod error;
pub mod exact;
pub mod hahn_lowpass;
pub mod hypergeom;
pub mod identity_suite;
pub mod orthopoly;
mod sampling;
pub mod scalar;
pub mod shmaliy;
pub mod shmaliy_transfer;

pub use decimal::{MpComplex, MpFloat, DEFAULT_DIGITS};
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact arbitrary-size fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Shorthand for the exact fraction p/q.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// f64 value of a rational, for CSV emission.
pub fn rational_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// The value as a nonnegative integer, when it is one.
pub fn rational_as_nonneg_int(q: &Rational) -> Option<u32> {
    use num_traits::ToPrimitive;
    if q.is_integer() {
        q.numer().to_u32()
    } else {
        None
    }
}

/// Canonical "numerator/denominator" rendering used in CSV and JSON output.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse a plain decimal literal (optional sign, fraction part, exponent)
/// into an exact rational.
pub fn parse_decimal_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().ok()?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(pos) => (&digits[..pos], &digits[pos + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let numer: num_bigint::BigInt = joined.parse().ok()?;
    let scale = frac_part.len() as i64;
    let ten = rat(10);
    let mut value = Rational::from_integer(numer) * rat(sign);
    let net = exp - scale;
    value *= Scalar::powi(&ten, net);
    Some(value)
}
