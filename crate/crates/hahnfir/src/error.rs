//! Error type shared by all modules.

use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A lower Pochhammer symbol `(parameter)_k` vanishes at `index = k`
    /// inside the requested truncation range.
    #[error("singular lower parameter: ({parameter})_{index} = 0")]
    SingularLowerParameter { index: usize, parameter: Rational },

    #[error("unknown transformation form `{0}`")]
    InvalidForm(String),

    #[error("order exceeds window: need m + 1 <= N, got m = {order}, N = {window}")]
    OrderTooLarge { order: usize, window: usize },

    #[error("point x = {x} outside support 0..={support}")]
    OutOfSupport { x: i64, support: i64 },

    #[error("transfer function argument z must be nonzero")]
    ZeroArgument,

    /// The closed transfer form was asked for inside the guard band around the
    /// removable singularity at z = 1; callers should use the direct sum.
    #[error("z within {guard} of the z = 1 singularity of the closed form")]
    NearSingular { guard: String },

    #[error("window [{start}, {start_plus_len}) not contained in signal of length {signal_len}")]
    WindowOutOfRange {
        start: i64,
        start_plus_len: i64,
        signal_len: usize,
    },

    #[error("difference order {order} exceeds window length {window}")]
    OrderExceedsWindow { order: usize, window: usize },

    #[error("signal has {len} samples, filter needs at least {needed}")]
    SignalTooShort { len: usize, needed: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("signal contains a non-finite sample at index {0}")]
    NonFiniteSample(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
