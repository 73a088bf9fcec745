//! Classical polynomial machinery: power sums, the Hankel moment matrix with
//! fraction-free determinants, Hahn polynomials (weight, norm ratio), and a
//! Jacobi evaluator valid for arbitrary — including negative-integer —
//! parameters.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    bernoulli_number, bernoulli_polynomial, binomial, factorial, pochhammer, pochhammer_vanishes,
    pochhammer_zero_index,
};
use crate::hypergeom::{eval_pfq, PfqSpec};
use crate::scalar::Scalar;
use crate::{rat, ratio, Rational};

/// c_k(N) = sum_{i=0}^{N-1} i^k with 0^0 = 1, computed both directly and via
/// Bernoulli polynomials; the two routes are required to agree.
pub fn power_sum(k: usize, window: usize) -> Rational {
    assert!(window >= 1, "power_sum needs N >= 1");
    let mut direct = BigInt::zero();
    for i in 0..window {
        if k == 0 {
            direct += 1u8; // 0^0 taken as 1 so that c_0(N) = N
        } else {
            direct += BigInt::from(i).pow(k as u32);
        }
    }
    let direct = Rational::from_integer(direct);
    let n = rat(window as i64);
    let bernoulli =
        (bernoulli_polynomial(k + 1, &n) - bernoulli_number(k + 1)) / rat(k as i64 + 1);
    assert_eq!(direct, bernoulli, "power-sum routes disagree at k={k} N={window}");
    direct
}

/// The (m+1) x (m+1) Hankel matrix of power-sum moments, entry(i,j) =
/// c_{i+j}(N). Entries are integers; `entry` exposes them as rationals.
#[derive(Clone, Debug)]
pub struct HankelMatrix {
    order: usize,
    window: usize,
    entries: Vec<BigInt>, // row-major (m+1)^2
}

pub fn hankel_build(order: usize, window: usize) -> Result<HankelMatrix> {
    if order + 1 > window {
        return Err(Error::OrderTooLarge { order, window });
    }
    let moments: Vec<BigInt> = (0..=2 * order)
        .map(|k| power_sum(k, window).numer().clone())
        .collect();
    let dim = order + 1;
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            entries.push(moments[i + j].clone());
        }
    }
    Ok(HankelMatrix {
        order,
        window,
        entries,
    })
}

impl HankelMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn dim(&self) -> usize {
        self.order + 1
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        Rational::from_integer(self.entries[i * self.dim() + j].clone())
    }

    pub fn determinant(&self) -> BigInt {
        let dim = self.dim();
        let rows: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| self.entries[i * dim..(i + 1) * dim].to_vec())
            .collect();
        bareiss_determinant(rows)
    }

    /// Minor obtained by deleting row `i` (0-based) and the first column.
    pub fn first_column_minor(&self, i: usize) -> BigInt {
        let dim = self.dim();
        let rows: Vec<Vec<BigInt>> = (0..dim)
            .filter(|&r| r != i)
            .map(|r| self.entries[r * dim + 1..(r + 1) * dim].to_vec())
            .collect();
        bareiss_determinant(rows)
    }
}

/// Fraction-free (Bareiss) determinant over the integers; every intermediate
/// division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search below row k
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by Sylvester's identity
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Parameters of a Hahn polynomial Q_n(y; alpha, beta, M), evaluated as the
/// k = 0..=n truncated 3F2. M may be rational or negative; the polynomial is
/// defined whenever no lower Pochhammer vanishes through term n.
#[derive(Clone, Debug, PartialEq)]
pub struct HahnParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub m_param: Rational,
    pub degree: usize,
}

impl HahnParams {
    pub fn new(alpha: Rational, beta: Rational, m_param: Rational, degree: usize) -> Self {
        HahnParams {
            alpha,
            beta,
            m_param,
            degree,
        }
    }
}

/// Q_n(y; alpha, beta, M) = 3F2(-n, n+alpha+beta+1, -y; alpha+1, -M; 1)
/// summed for k = 0..=n.
pub fn hahn_eval(p: &HahnParams, y: &Rational) -> Result<Rational> {
    let n = p.degree as i64;
    let spec = PfqSpec::new(
        vec![
            rat(-n),
            &p.alpha + &p.beta + rat(n + 1),
            -y.clone(),
        ],
        vec![&p.alpha + rat(1), -p.m_param.clone()],
        rat(1),
        p.degree,
    );
    eval_pfq(&spec)
}

/// w(x; alpha, beta, M) = (alpha+1)_x (beta+1)_{M-x} / (x! (M-x)!) on the
/// support x = 0..=M.
pub fn hahn_weight(x: usize, alpha: &Rational, beta: &Rational, m_sup: usize) -> Result<Rational> {
    if x > m_sup {
        return Err(Error::OutOfSupport {
            x: x as i64,
            support: m_sup as i64,
        });
    }
    Ok(pochhammer(&(alpha + rat(1)), x) * pochhammer(&(beta + rat(1)), m_sup - x)
        / (Rational::from_integer(factorial(x)) * Rational::from_integer(factorial(m_sup - x))))
}

/// k_n / h_n: ratio of the leading coefficient of Q_n to its squared norm,
/// for integer support parameter M.
///
/// (-1)^n (2n+a+b+1)/(b+1)_n * (n+a+b+1)_n/(n+a+b+1)_{M+1} * M!/n!
pub fn hahn_norm_ratio(
    n: usize,
    alpha: &Rational,
    beta: &Rational,
    m_sup: usize,
) -> Result<Rational> {
    let nn = rat(n as i64);
    let s = alpha + beta + &nn + rat(1); // n + a + b + 1
    let bp1 = beta + rat(1);
    for (base, len) in [(&bp1, n), (&s, m_sup + 1)] {
        if pochhammer_vanishes(base, len) {
            return Err(Error::SingularLowerParameter {
                index: pochhammer_zero_index(base).unwrap_or(0),
                parameter: base.clone(),
            });
        }
    }
    let two_n_abp1 = alpha + beta + rat(2 * n as i64 + 1);
    let sign = if n % 2 == 1 { -rat(1) } else { rat(1) };
    Ok(sign * two_n_abp1 / pochhammer(&bp1, n) * pochhammer(&s, n) / pochhammer(&s, m_sup + 1)
        * Rational::from_integer(factorial(m_sup))
        / Rational::from_integer(factorial(n)))
}

/// Jacobi polynomial P_n^{(a,b)}(x) by the all-parameter-safe finite sum
///
///   (1/n!) sum_k C(n,k) (n+a+b+1)_k (a+k+1)_{n-k} ((x-1)/2)^k
///
/// which is a polynomial identity in (a, b): no division by any
/// parameter-dependent Pochhammer, so negative-integer parameters are fine.
pub fn jacobi_eval<T: Scalar>(n: usize, a: &Rational, b: &Rational, x: &T) -> T {
    let half = T::lift_rational(&ratio(1, 2), x);
    let u = (x.clone() - T::lift_int(1, x)) * half; // (x-1)/2
    let n_fact = Rational::from_integer(factorial(n));
    let s = a + b + rat(n as i64 + 1); // n + a + b + 1
    let mut sum = T::zero();
    let mut upow = T::lift_int(1, x);
    for k in 0..=n {
        let coeff = Rational::from_integer(binomial(n, k)) * pochhammer(&s, k)
            * pochhammer(&(a + rat(k as i64 + 1)), n - k)
            / &n_fact;
        sum = sum + T::lift_rational(&coeff, x) * upow.clone();
        if k < n {
            upow = upow * u.clone();
        }
    }
    sum
}
