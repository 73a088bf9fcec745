//! The Shmaliy smoothing polynomial h_m(n, N) built by five independent
//! routes, all required to agree tap-for-tap in exact arithmetic:
//!
//! 1. Hankel-minor solve of the moment system,
//! 2. the three-term recurrence,
//! 3. the full hypergeometric form with symbolically pre-cancelled
//!    Pochhammer quotients,
//! 4. the simple hypergeometric form,
//! 5. the Hahn-polynomial identification Q_m(-1-n; 1, 0, -1-N).
//!
//! Route 1 is definitional: the tap polynomial's coefficient vector a solves
//! H_m(N) a = e_1, which is exactly what makes the taps sum to one and
//! annihilate the first m moments.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, pochhammer_i};
use crate::hypergeom::{eval_pfq, PfqSpec};
use crate::orthopoly::{hahn_eval, hankel_build, HahnParams};
use crate::scalar::Scalar;
use crate::{rat, rational_string, Rational};

/// Which filter family a coefficient vector belongs to.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Shmaliy {
        order: usize,
    },
    #[serde(rename = "hahn-lp")]
    HahnLowPass {
        alpha: String,
        beta: String,
    },
}

/// Which construction produced a coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Hankel,
    Recurrence,
    HypFull,
    HypSimple,
    HahnClosed,
    Weights,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Hankel => "hankel",
            Route::Recurrence => "recurrence",
            Route::HypFull => "hyp_full",
            Route::HypSimple => "hyp_simple",
            Route::HahnClosed => "hahn_closed",
            Route::Weights => "weights",
        }
    }
}

/// An FIR impulse response of length N with exact rational taps.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector {
    pub family: Family,
    pub window: usize,
    pub taps: Vec<Rational>,
    pub route: Route,
}

impl CoefficientVector {
    pub fn tap_sum(&self) -> Rational {
        self.taps.iter().sum()
    }

    /// sum_n n^q taps[n].
    pub fn moment(&self, q: usize) -> Rational {
        self.taps
            .iter()
            .enumerate()
            .map(|(n, t)| Scalar::powi(&rat(n as i64), q as i64) * t)
            .sum()
    }

    pub fn taps_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.taps.iter().map(|t| t.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// CSV with header `n,numerator,denominator,float64` and a trailing
    /// newline.
    pub fn to_csv(&self) -> String {
        use num_traits::ToPrimitive;
        let mut out = String::from("n,numerator,denominator,float64\n");
        for (n, t) in self.taps.iter().enumerate() {
            out.push_str(&format!(
                "{n},{},{},{}\n",
                t.numer(),
                t.denom(),
                t.to_f64().unwrap_or(f64::NAN)
            ));
        }
        out
    }
}

impl Serialize for CoefficientVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        use num_traits::ToPrimitive;
        #[derive(Serialize)]
        struct Tap {
            n: usize,
            rational: String,
            float64: f64,
        }
        let taps: Vec<Tap> = self
            .taps
            .iter()
            .enumerate()
            .map(|(n, t)| Tap {
                n,
                rational: rational_string(t),
                float64: t.to_f64().unwrap_or(f64::NAN),
            })
            .collect();
        let mut s = serializer.serialize_struct("CoefficientVector", 6)?;
        match &self.family {
            Family::Shmaliy { order } => {
                s.serialize_field("family", "shmaliy")?;
                s.serialize_field("order", order)?;
            }
            Family::HahnLowPass { alpha, beta } => {
                s.serialize_field("family", "hahn-lp")?;
                s.serialize_field("alpha", alpha)?;
                s.serialize_field("beta", beta)?;
            }
        }
        s.serialize_field("window", &self.window)?;
        s.serialize_field("route", &self.route)?;
        s.serialize_field("taps", &taps)?;
        s.end()
    }
}

fn check_order(order: usize, window: usize) -> Result<()> {
    if order + 1 > window {
        Err(Error::OrderTooLarge { order, window })
    } else {
        Ok(())
    }
}

fn vector(order: usize, window: usize, taps: Vec<Rational>, route: Route) -> CoefficientVector {
    debug_assert_eq!(taps.len(), window);
    CoefficientVector {
        family: Family::Shmaliy { order },
        window,
        taps,
        route,
    }
}

/// Route 1: exact first-column minors and determinant of the Hankel moment
/// matrix (fraction-free elimination).
pub fn shmaliy_hankel(order: usize, window: usize) -> Result<CoefficientVector> {
    check_order(order, window)?;
    let h = hankel_build(order, window)?;
    let det = Rational::from_integer(h.determinant());
    // a_i = (-1)^i M_{(i+1),1} / det; the tap polynomial is sum_i a_i n^i
    let coeffs: Vec<Rational> = (0..=order)
        .map(|i| {
            let sign = if i % 2 == 1 { -rat(1) } else { rat(1) };
            sign * Rational::from_integer(h.first_column_minor(i)) / &det
        })
        .collect();
    let taps = (0..window)
        .map(|n| {
            let nr = rat(n as i64);
            // Horner in n
            coeffs
                .iter()
                .rev()
                .fold(rat(0), |acc, c| acc * &nr + c)
        })
        .collect();
    Ok(vector(order, window, taps, Route::Hankel))
}

/// Route 2: the three-term recurrence with h_{-1} = 0, h_0 = 1/N, read as a
/// standard recurrence (second term applied to h_{m-2}).
pub fn shmaliy_recurrence(order: usize, window: usize) -> Result<CoefficientVector> {
    check_order(order, window)?;
    let n = window as i64;
    let mut prev: Vec<Rational> = vec![rat(0); window]; // h_{-1}
    let mut cur: Vec<Rational> = vec![Rational::new(1.into(), n.into()); window]; // h_0
    for m in 1..=order as i64 {
        let denom_a = rat(m * (2 * m - 1) * (n + m));
        let b = rat((2 * m + 1) * (n - m)) / rat((2 * m - 1) * (n + m));
        let next: Vec<Rational> = (0..window)
            .map(|tap| {
                let a = rat(2) * rat(m * m * (2 * n - 1) - (4 * m * m - 1) * tap as i64)
                    / &denom_a;
                a * &cur[tap] - &b * &prev[tap]
            })
            .collect();
        prev = cur;
        cur = next;
    }
    Ok(vector(order, window, cur, Route::Recurrence))
}

/// Route 3: the full hypergeometric form. Its lower parameters (n - m) and
/// (1 - N - m + n) can be nonpositive integers, so each term is built from
/// the symbolically pre-cancelled quotients
///
///   (n-m)_m / (n-m)_k = (n-m+k)_{m-k}
///   (N-n)_m / (1-N-m+n)_k = (-1)^k (N-n)_{m-k}
///
/// leaving a finite product with no zero divisions for any 0 <= n <= N-1.
pub fn shmaliy_hyp_full(order: usize, window: usize) -> Result<CoefficientVector> {
    check_order(order, window)?;
    let m = order as i64;
    let n_len = window as i64;
    let sign = if order % 2 == 1 { -rat(1) } else { rat(1) };
    let base = sign * rat(m + 1)
        / (Rational::from_integer(factorial(order)) * pochhammer_i(n_len, order + 1));
    let taps = (0..n_len)
        .map(|n| {
            let mut sum = rat(0);
            for k in 0..=order {
                let ki = k as i64;
                let mut term = pochhammer_i(-m, k) * pochhammer_i(n + 1, k)
                    * pochhammer_i(1 - n_len + n, k)
                    / Rational::from_integer(factorial(k));
                term *= pochhammer_i(n - m + ki, order - k);
                term *= pochhammer_i(n_len - n, order - k);
                if k % 2 == 1 {
                    term = -term;
                }
                sum += term;
            }
            &base * sum
        })
        .collect();
    Ok(vector(order, window, taps, Route::HypFull))
}

/// Route 4: the simple hypergeometric form
/// ((m+1)^2 / N) 3F2(-m, n+1, m+2; 2, 1+N; 1), truncated at m terms; its
/// lower parameters are positive so direct evaluation applies.
pub fn shmaliy_hyp_simple(order: usize, window: usize) -> Result<CoefficientVector> {
    check_order(order, window)?;
    let m = order as i64;
    let n_len = window as i64;
    let pref = rat((m + 1) * (m + 1)) / rat(n_len);
    let taps: Result<Vec<Rational>> = (0..n_len)
        .map(|n| {
            let spec = PfqSpec::new(
                vec![rat(-m), rat(n + 1), rat(m + 2)],
                vec![rat(2), rat(1 + n_len)],
                rat(1),
                order,
            );
            Ok(&pref * eval_pfq(&spec)?)
        })
        .collect();
    Ok(vector(order, window, taps?, Route::HypSimple))
}

/// Route 5: the Hahn identification
/// h_m(n, N) = ((m+1)^2 / N) Q_m(-1-n; 1, 0, -1-N).
pub fn shmaliy_hahn_closed(order: usize, window: usize) -> Result<CoefficientVector> {
    check_order(order, window)?;
    let m = order as i64;
    let n_len = window as i64;
    let pref = rat((m + 1) * (m + 1)) / rat(n_len);
    let params = HahnParams::new(rat(1), rat(0), rat(-1 - n_len), order);
    let taps: Result<Vec<Rational>> = (0..n_len)
        .map(|n| Ok(&pref * hahn_eval(&params, &rat(-1 - n))?))
        .collect();
    Ok(vector(order, window, taps?, Route::HahnClosed))
}

/// All five routes in a fixed order.
pub fn shmaliy_all_routes(order: usize, window: usize) -> Result<[CoefficientVector; 5]> {
    Ok([
        shmaliy_hankel(order, window)?,
        shmaliy_recurrence(order, window)?,
        shmaliy_hyp_full(order, window)?,
        shmaliy_hyp_simple(order, window)?,
        shmaliy_hahn_closed(order, window)?,
    ])
}

/// True iff all five routes produce identical taps.
pub fn routes_agree(order: usize, window: usize) -> Result<bool> {
    let routes = shmaliy_all_routes(order, window)?;
    Ok(routes[1..].iter().all(|r| r.taps == routes[0].taps))
}

/// Orthogonality weight rho(n, N) = 2n / (N (N-1)).
pub fn weight_rho(n: usize, window: usize) -> Rational {
    rat(2 * n as i64) / rat((window as i64) * (window as i64 - 1))
}

/// Squared norm (d_m)^2 = (m+1) (N-m-1)_m / (N (N)_{m+1}).
///
/// This is the Gamma-ratio form; the elementary rendering that replaces
/// (N-m-1)_m by the single factor (N-m-1) only agrees at m = 1 (see
/// [`norm_d_squared_elementary`] and the tests).
pub fn norm_d_squared(order: usize, window: usize) -> Rational {
    let m = order as i64;
    let n = window as i64;
    rat(m + 1) * pochhammer_i(n - m - 1, order) / (rat(n) * pochhammer_i(n, order + 1))
}

/// The elementary rendering (m+1)(N-m-1) / (N (N)_{m+1}); kept for the
/// catalog tests, which demonstrate it disagrees with the brute-force inner
/// product for every m except 1.
pub fn norm_d_squared_elementary(order: usize, window: usize) -> Rational {
    let m = order as i64;
    let n = window as i64;
    rat((m + 1) * (n - m - 1)) / (rat(n) * pochhammer_i(n, order + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub order: usize,
    pub window: usize,
    pub checks: Vec<PropertyCheck>,
    pub all_ok: bool,
}

/// Exact verification of the defining properties of h_m:
/// unit sum, moment annihilation for 1 <= q <= m, and rho-weighted
/// orthogonality against h_q for q <= m with the printed squared norm.
pub fn verify_shmaliy_properties(order: usize, window: usize) -> Result<PropertyReport> {
    check_order(order, window)?;
    if window < 2 {
        return Err(Error::InvalidParameter(
            "property checks need N >= 2".into(),
        ));
    }
    let h = shmaliy_hankel(order, window)?;
    let mut checks = Vec::new();
    let mut push = |name: String, lhs: Rational, rhs: Rational| {
        checks.push(PropertyCheck {
            name,
            ok: lhs == rhs,
            lhs: rational_string(&lhs),
            rhs: rational_string(&rhs),
        });
    };
    push("sum of taps = 1".into(), h.tap_sum(), rat(1));
    for q in 1..=order {
        push(format!("moment q={q} annihilated"), h.moment(q), rat(0));
    }
    for q in 0..=order {
        let hq = shmaliy_hankel(q, window)?;
        let inner: Rational = (0..window)
            .map(|n| weight_rho(n, window) * &h.taps[n] * &hq.taps[n])
            .sum();
        let expected = if q == order {
            norm_d_squared(order, window)
        } else {
            rat(0)
        };
        push(
            format!("rho-weighted <h_{order}, h_{q}>"),
            inner,
            expected,
        );
    }
    let all_ok = checks.iter().all(|c| c.ok);
    Ok(PropertyReport {
        order,
        window,
        checks,
        all_ok,
    })
}
