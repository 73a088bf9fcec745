//! Arbitrary-precision decimal floating point with an explicit decimal-digit
//! precision, and the complex wrapper used for unit-circle evaluation.
//!
//! A value is `mantissa * 10^exp10`, with the mantissa held to at most
//! `digits` significant decimal digits. Every arithmetic operation rounds its
//! result (half away from zero) to the *minimum* precision of its operands
//! and raises a sticky `precision_mixed` flag when two distinct finite
//! precisions meet. Small integer constants (`Zero::zero`, `One::one`,
//! `exact_int`) carry the [`DIGITS_EXACT`] sentinel and adopt the precision
//! of whatever they are combined with.
//!
//! Rounding half away from zero is symmetric under negation, so conjugating
//! the inputs of a complex computation conjugates its output bit for bit.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::Rational;

/// Sentinel precision of exact integer constants.
pub const DIGITS_EXACT: u32 = u32::MAX;

/// Default working precision (decimal digits) when none is configured.
pub const DEFAULT_DIGITS: u32 = 64;

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u8).pow(k)
}

/// Number of decimal digits of |m| (1 for zero).
fn dec_len(m: &BigInt) -> u32 {
    if m.is_zero() {
        1
    } else {
        m.magnitude().to_string().len() as u32
    }
}

/// Rounded integer division, half away from zero. `den > 0`.
fn round_div_half_away(num: &BigInt, den: &BigInt) -> BigInt {
    debug_assert!(den.is_positive());
    let (q, r) = num.div_rem(den);
    if r.abs() * 2 >= *den {
        if num.is_negative() {
            q - BigInt::one()
        } else {
            q + BigInt::one()
        }
    } else {
        q
    }
}

#[derive(Clone, Debug)]
pub struct MpFloat {
    mantissa: BigInt,
    exp10: i64,
    digits: u32,
    mixed: bool,
}

fn join_precision(a: &MpFloat, b: &MpFloat) -> (u32, bool) {
    let digits = a.digits.min(b.digits);
    let mixed = a.mixed
        || b.mixed
        || (a.digits != DIGITS_EXACT && b.digits != DIGITS_EXACT && a.digits != b.digits);
    (digits, mixed)
}

/// Round to `digits` significant decimal digits and strip trailing zeros, so
/// every value has a unique canonical representation.
fn normalized(mut mantissa: BigInt, mut exp10: i64, digits: u32, mixed: bool) -> MpFloat {
    if mantissa.is_zero() {
        return MpFloat {
            mantissa,
            exp10: 0,
            digits,
            mixed,
        };
    }
    if digits != DIGITS_EXACT {
        let len = dec_len(&mantissa);
        if len > digits {
            let excess = len - digits;
            mantissa = round_div_half_away(&mantissa, &pow10(excess));
            exp10 += excess as i64;
            let len2 = dec_len(&mantissa);
            if len2 > digits {
                // carry out of the top digit (e.g. 999.. rounded up)
                mantissa = round_div_half_away(&mantissa, &pow10(len2 - digits));
                exp10 += (len2 - digits) as i64;
            }
        }
    }
    let ten = BigInt::from(10u8);
    while !mantissa.is_zero() && (&mantissa % &ten).is_zero() {
        mantissa /= &ten;
        exp10 += 1;
    }
    MpFloat {
        mantissa,
        exp10,
        digits,
        mixed,
    }
}

impl MpFloat {
    pub fn from_i64(v: i64, digits: u32) -> Self {
        normalized(BigInt::from(v), 0, digits, false)
    }

    /// Exact integer constant; adopts the precision of whatever it meets.
    pub fn exact_int(v: i64) -> Self {
        normalized(BigInt::from(v), 0, DIGITS_EXACT, false)
    }

    pub fn from_bigint(v: &BigInt, digits: u32) -> Self {
        normalized(v.clone(), 0, digits, false)
    }

    pub fn from_rational(q: &Rational, digits: u32) -> Self {
        let num = q.numer();
        let den = q.denom();
        if num.is_zero() {
            return normalized(BigInt::zero(), 0, digits, false);
        }
        let work = if digits == DIGITS_EXACT { DEFAULT_DIGITS } else { digits };
        if den.is_one() {
            return normalized(num.clone(), 0, digits, false);
        }
        let shift = (work + 3 + dec_len(den)).saturating_sub(dec_len(num));
        let m = round_div_half_away(&(num * pow10(shift)), den);
        normalized(
            m,
            -(shift as i64),
            if digits == DIGITS_EXACT { work } else { digits },
            false,
        )
    }

    /// Exact conversion of the f64 value (every finite f64 is a finite
    /// decimal), then rounding to `digits`.
    pub fn from_f64(v: f64, digits: u32) -> Self {
        let q = Rational::from_float(v).expect("finite f64");
        Self::from_rational(&q, digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn precision_mixed(&self) -> bool {
        self.mixed
    }

    /// Same value re-tagged with a different precision (no rounding up;
    /// rounds down if `digits` is smaller than the current length).
    pub fn with_digits(&self, digits: u32) -> Self {
        normalized(self.mantissa.clone(), self.exp10, digits, self.mixed)
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> Self {
        MpFloat {
            mantissa: self.mantissa.abs(),
            ..self.clone()
        }
    }

    /// Decimal exponent of the leading digit: |x| is in [10^(k-1), 10^k).
    fn top_exp(&self) -> i64 {
        self.exp10 + dec_len(&self.mantissa) as i64
    }

    /// Exact numeric comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let sa = self.mantissa.sign();
        let sb = other.mantissa.sign();
        if sa != sb {
            return match (self.mantissa.is_negative(), other.mantissa.is_negative()) {
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                _ => {
                    // one of them is zero
                    if self.mantissa.is_zero() && other.mantissa.is_zero() {
                        Ordering::Equal
                    } else if self.mantissa.is_zero() {
                        if other.mantissa.is_negative() {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        }
                    } else if self.mantissa.is_negative() {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                }
            };
        }
        if self.mantissa.is_zero() {
            return Ordering::Equal;
        }
        let negative = self.mantissa.is_negative();
        let mag = if self.top_exp() != other.top_exp() {
            self.top_exp().cmp(&other.top_exp())
        } else {
            let shift = self.exp10 - other.exp10;
            if shift >= 0 {
                (self.mantissa.abs() * pow10(shift as u32)).cmp(&other.mantissa.abs())
            } else {
                self.mantissa.abs().cmp(&(other.mantissa.abs() * pow10((-shift) as u32)))
            }
        };
        if negative {
            mag.reverse()
        } else {
            mag
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        format!("{}e{}", self.mantissa, self.exp10)
            .parse::<f64>()
            .unwrap_or(f64::NAN)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.mantissa.is_zero() {
            return self.clone();
        }
        let work = if self.digits == DIGITS_EXACT { DEFAULT_DIGITS } else { self.digits };
        let len = dec_len(&self.mantissa) as i64;
        let mut k = (2 * (work as i64 + 3) - len).max(0);
        if (self.exp10 - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let scaled = &self.mantissa * pow10(k as u32);
        let root = scaled.sqrt();
        normalized(root, (self.exp10 - k) / 2, work.min(self.digits), self.mixed)
    }

    pub fn powi(&self, e: i64) -> Self {
        if e == 0 {
            return MpFloat::exact_int(1).with_digits(self.digits);
        }
        let mut base = if e < 0 {
            MpFloat::exact_int(1) / self.clone()
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc: Option<MpFloat> = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a * base.clone(),
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc.unwrap()
    }

    /// pi to `digits` significant digits (Machin's formula, cached).
    pub fn pi(digits: u32) -> Self {
        static CACHE: OnceLock<Mutex<BTreeMap<u32, (BigInt, i64)>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
        {
            let guard = cache.lock().unwrap();
            if let Some((m, e)) = guard.get(&digits) {
                return MpFloat {
                    mantissa: m.clone(),
                    exp10: *e,
                    digits,
                    mixed: false,
                };
            }
        }
        let p = digits + 12;
        fn atan_inv_scaled(x: u64, p: u32) -> BigInt {
            let x = BigInt::from(x);
            let x2 = &x * &x;
            let mut term = pow10(p) / &x;
            let mut sum = term.clone();
            let mut k = 1u64;
            while !term.is_zero() {
                term /= &x2;
                let contrib = &term / BigInt::from(2 * k + 1);
                if contrib.is_zero() {
                    break;
                }
                if k % 2 == 1 {
                    sum -= contrib;
                } else {
                    sum += contrib;
                }
                k += 1;
            }
            sum
        }
        let scaled = atan_inv_scaled(5, p) * 16u8 - atan_inv_scaled(239, p) * 4u8;
        let v = normalized(scaled, -(p as i64), digits, false);
        cache
            .lock()
            .unwrap()
            .insert(digits, (v.mantissa.clone(), v.exp10));
        v
    }

    /// floor(self / div) as an exact integer; `div > 0`.
    fn floor_div_value(&self, div: &MpFloat) -> BigInt {
        debug_assert!(div.mantissa.is_positive());
        let shift = self.exp10 - div.exp10;
        if shift >= 0 {
            (&self.mantissa * pow10(shift as u32)).div_floor(&div.mantissa)
        } else {
            self.mantissa.div_floor(&(&div.mantissa * pow10((-shift) as u32)))
        }
    }

    /// (sin, cos) of self, rounded to self's precision.
    pub fn sin_cos(&self) -> (Self, Self) {
        let digits = if self.digits == DIGITS_EXACT { DEFAULT_DIGITS } else { self.digits };
        if self.is_negative() {
            let (s, c) = self.clone().neg().sin_cos();
            return (-s, c);
        }
        let w = digits + 12;
        let theta = MpFloat {
            digits: w,
            mixed: false,
            ..self.clone()
        };
        let pi = Self::pi(w);
        let half = MpFloat {
            mantissa: BigInt::from(5),
            exp10: -1,
            digits: DIGITS_EXACT,
            mixed: false,
        };
        let two_pi = pi.clone() * MpFloat::exact_int(2);
        let half_pi = pi.clone() * half.clone();
        let quarter_pi = half_pi.clone() * half;
        let mut r = theta;
        let whole = r.floor_div_value(&two_pi);
        if !whole.is_zero() {
            r = r - MpFloat::from_bigint(&whole, DIGITS_EXACT) * two_pi;
        }
        if r.is_negative() {
            // reduction landed an ulp below zero
            r = MpFloat::from_i64(0, w);
        }
        let quad = r
            .floor_div_value(&half_pi)
            .to_u32()
            .unwrap_or(0)
            .min(3);
        let mut t = r - MpFloat::from_bigint(&BigInt::from(quad), DIGITS_EXACT) * half_pi.clone();
        if t.is_negative() {
            t = MpFloat::from_i64(0, w);
        }
        let swap = t.cmp_value(&quarter_pi) == Ordering::Greater;
        if swap {
            t = half_pi - t;
        }
        let (s, c) = taylor_sin_cos(&t, w);
        let (s, c) = if swap { (c, s) } else { (s, c) };
        let (s, c) = match quad {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        };
        (
            normalized(s.mantissa, s.exp10, digits.min(self.digits), self.mixed),
            normalized(c.mantissa, c.exp10, digits.min(self.digits), self.mixed),
        )
    }
}

/// Taylor series on |t| <= pi/4 at working precision `w`.
fn taylor_sin_cos(t: &MpFloat, w: u32) -> (MpFloat, MpFloat) {
    let cutoff = -(w as i64 + 4);
    let t2 = t.clone() * t.clone();
    let mut sin = t.clone();
    let mut term = t.clone();
    let mut k = 1i64;
    while !term.mantissa.is_zero() && term.top_exp() > cutoff && k < 2000 {
        term = -(term * t2.clone()) / MpFloat::exact_int((2 * k) * (2 * k + 1));
        sin = sin + term.clone();
        k += 1;
    }
    let mut cos = MpFloat::from_i64(1, w);
    term = MpFloat::from_i64(1, w);
    k = 1;
    while !term.mantissa.is_zero() && term.top_exp() > cutoff && k < 2000 {
        term = -(term * t2.clone()) / MpFloat::exact_int((2 * k - 1) * (2 * k));
        cos = cos + term.clone();
        k += 1;
    }
    (sin, cos)
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        // canonical representation: value equality is representation equality
        self.mantissa == other.mantissa && (self.mantissa.is_zero() || self.exp10 == other.exp10)
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> MpFloat {
        MpFloat {
            mantissa: -self.mantissa,
            ..self
        }
    }
}

impl Add for MpFloat {
    type Output = MpFloat;
    fn add(self, rhs: MpFloat) -> MpFloat {
        let (digits, mixed) = join_precision(&self, &rhs);
        if self.mantissa.is_zero() {
            return normalized(rhs.mantissa, rhs.exp10, digits, mixed);
        }
        if rhs.mantissa.is_zero() {
            return normalized(self.mantissa, self.exp10, digits, mixed);
        }
        let (hi, lo) = if self.exp10 >= rhs.exp10 {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if digits != DIGITS_EXACT && hi.top_exp() - lo.top_exp() > digits as i64 + 4 {
            return normalized(hi.mantissa, hi.exp10, digits, mixed);
        }
        let shift = (hi.exp10 - lo.exp10) as u32;
        let m = hi.mantissa * pow10(shift) + lo.mantissa;
        normalized(m, lo.exp10, digits, mixed)
    }
}

impl Sub for MpFloat {
    type Output = MpFloat;
    fn sub(self, rhs: MpFloat) -> MpFloat {
        self + (-rhs)
    }
}

impl Mul for MpFloat {
    type Output = MpFloat;
    fn mul(self, rhs: MpFloat) -> MpFloat {
        let (digits, mixed) = join_precision(&self, &rhs);
        normalized(
            self.mantissa * rhs.mantissa,
            self.exp10 + rhs.exp10,
            digits,
            mixed,
        )
    }
}

impl Div for MpFloat {
    type Output = MpFloat;
    fn div(self, rhs: MpFloat) -> MpFloat {
        assert!(!rhs.mantissa.is_zero(), "division by zero");
        let (digits, mixed) = join_precision(&self, &rhs);
        if self.mantissa.is_zero() {
            return normalized(BigInt::zero(), 0, digits, mixed);
        }
        let work = if digits == DIGITS_EXACT { DEFAULT_DIGITS } else { digits };
        let la = dec_len(&self.mantissa) as i64;
        let lb = dec_len(&rhs.mantissa) as i64;
        let shift = (work as i64 + 3 + lb - la).max(0) as u32;
        let num = &self.mantissa * pow10(shift);
        let den_abs = rhs.mantissa.abs();
        let (q, r) = num.div_rem(&den_abs);
        let exact = r.is_zero();
        let q = if exact {
            q
        } else {
            round_div_half_away(&num, &den_abs)
        };
        let q = if rhs.mantissa.is_negative() { -q } else { q };
        let out_digits = if digits == DIGITS_EXACT && !exact { work } else { digits };
        normalized(q, self.exp10 - rhs.exp10 - shift as i64, out_digits, mixed)
    }
}

impl Zero for MpFloat {
    fn zero() -> Self {
        MpFloat::exact_int(0)
    }
    fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
}

impl One for MpFloat {
    fn one() -> Self {
        MpFloat::exact_int(1)
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa.is_zero() {
            return write!(f, "0");
        }
        let digits = self.mantissa.magnitude().to_string();
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        let sci_exp = self.exp10 + digits.len() as i64 - 1;
        if digits.len() == 1 {
            write!(f, "{sign}{digits}e{sci_exp}")
        } else {
            write!(f, "{sign}{}.{}e{sci_exp}", &digits[..1], &digits[1..])
        }
    }
}

/// Complex value with both components at a shared decimal precision.
#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    re: MpFloat,
    im: MpFloat,
}

impl MpComplex {
    pub fn new(re: MpFloat, im: MpFloat) -> Self {
        MpComplex { re, im }
    }

    pub fn from_rational(q: &Rational, digits: u32) -> Self {
        MpComplex {
            re: MpFloat::from_rational(q, digits),
            im: MpFloat::from_i64(0, digits),
        }
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        MpComplex {
            re: MpFloat::from_i64(v, digits),
            im: MpFloat::from_i64(0, digits),
        }
    }

    /// e^(i * omega_t) at the given precision.
    pub fn unit_circle(omega_t: f64, digits: u32) -> Self {
        let theta = MpFloat::from_f64(omega_t, digits);
        let (s, c) = theta.sin_cos();
        MpComplex { re: c, im: s }
    }

    pub fn re(&self) -> &MpFloat {
        &self.re
    }

    pub fn im(&self) -> &MpFloat {
        &self.im
    }

    pub fn digits(&self) -> u32 {
        self.re.digits.min(self.im.digits)
    }

    pub fn precision_mixed(&self) -> bool {
        self.re.mixed || self.im.mixed
    }

    pub fn is_zero_value(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        MpComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> MpFloat {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn abs(&self) -> MpFloat {
        self.norm_sqr().sqrt()
    }

    /// Argument via f64 (enough for reporting; the value itself stays exact
    /// to its precision).
    pub fn arg_f64(&self) -> f64 {
        // rescale so the conversion cannot over/underflow
        let top = self.re.top_exp().max(self.im.top_exp());
        let re = normalized(self.re.mantissa.clone(), self.re.exp10 - top, 20, false).to_f64();
        let im = normalized(self.im.mantissa.clone(), self.im.exp10 - top, 20, false).to_f64();
        im.atan2(re)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        MpComplex {
            re: self.re.clone() / d.clone(),
            im: -self.im.clone() / d,
        }
    }

    pub fn powi(&self, e: i64) -> Self {
        if e == 0 {
            return MpComplex::from_i64(1, self.digits());
        }
        let mut base = if e < 0 { self.recip() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc: Option<MpComplex> = None;
        while n > 0 {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a * base.clone(),
                });
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc.unwrap()
    }
}

impl Neg for MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: MpComplex) -> MpComplex {
        MpComplex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: MpComplex) -> MpComplex {
        MpComplex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: MpComplex) -> MpComplex {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        MpComplex { re, im }
    }
}

impl Div for MpComplex {
    type Output = MpComplex;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: MpComplex) -> MpComplex {
        self * rhs.recip()
    }
}

impl Zero for MpComplex {
    fn zero() -> Self {
        MpComplex {
            re: MpFloat::zero(),
            im: MpFloat::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }
}

impl One for MpComplex {
    fn one() -> Self {
        MpComplex {
            re: MpFloat::one(),
            im: MpFloat::zero(),
        }
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

impl Serialize for MpComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("MpComplex", 3)?;
        s.serialize_field("re", &self.re.to_string())?;
        s.serialize_field("im", &self.im.to_string())?;
        s.serialize_field("digits", &self.digits())?;
        s.end()
    }
}
