//! Scalar abstraction over the number types the series and transfer
//! evaluators run on: exact rationals, f64, and the multi-precision
//! decimal types.
//!
//! Series coefficients are always exact rationals; the only thing an
//! algorithm needs from its scalar type is field arithmetic plus a way to
//! inject a rational constant *at the right precision*. Since precision is a
//! per-value property of [`MpFloat`]/[`MpComplex`], injection takes a context
//! value (any operand already in play) whose precision the constant adopts.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use crate::decimal::{MpComplex, MpFloat};
use crate::Rational;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// True when arithmetic in this type is exact (no rounding), so equality
    /// of two algebraic routes can be asserted rather than toleranced.
    const EXACT: bool;

    /// Inject an exact rational, matching the precision of `ctx`.
    fn lift_rational(q: &Rational, ctx: &Self) -> Self;

    fn lift_int(v: i64, ctx: &Self) -> Self {
        Self::lift_rational(&Rational::from_integer(v.into()), ctx)
    }

    /// Integer power (negative exponents allowed for nonzero values).
    fn powi(&self, e: i64) -> Self;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn lift_rational(q: &Rational, _ctx: &Self) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn powi(&self, e: i64) -> Self {
        f64::powi(*self, e as i32)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn lift_rational(q: &Rational, _ctx: &Self) -> Self {
        q.clone()
    }

    fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            num_traits::pow::pow(self.clone(), e as usize)
        } else {
            num_traits::pow::pow(self.clone(), (-e) as usize).recip()
        }
    }
}

impl Scalar for MpFloat {
    const EXACT: bool = false;

    fn lift_rational(q: &Rational, ctx: &Self) -> Self {
        MpFloat::from_rational(q, ctx.digits())
    }

    fn powi(&self, e: i64) -> Self {
        MpFloat::powi(self, e)
    }
}

impl Scalar for MpComplex {
    const EXACT: bool = false;

    fn lift_rational(q: &Rational, ctx: &Self) -> Self {
        MpComplex::from_rational(q, ctx.digits())
    }

    fn powi(&self, e: i64) -> Self {
        MpComplex::powi(self, e)
    }
}
