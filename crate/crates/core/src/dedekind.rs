//! Evaluation of normalized Dedekind sums `S(m, n) = 12 s(m, n)`.
//!
//! Two independent routes are provided: [`dedekind_oracle`] sums the defining
//! series term by term in O(n), and [`dedekind_fast`] runs a Euclidean descent
//! on the reciprocity law in O(log n). [`three_term`] evaluates both sides of
//! the Rademacher-Dieter three-term relation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{extended_gcd, gcd_u128, reduce, Rational};
use crate::error::{Error, Result};

/// Largest modulus evaluated with the i128 kernel; `n * S(m, n)` is bounded by
/// `n^2` and the descent multiplies it by at most `n`, so `n^3` must fit.
pub const I128_LIMIT: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Fast,
}

/// An evaluated sum: canonical argument `m` in `[0, n)` and `value = S(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DedekindEval {
    pub m: u64,
    pub n: u64,
    pub value: Rational,
    pub method: Method,
}

impl DedekindEval {
    pub fn new(m: i128, n: u64, method: Method) -> Result<Self> {
        let value = match method {
            Method::Oracle => dedekind_oracle(m, n)?,
            Method::Fast => dedekind_fast(m, n)?,
        };
        Ok(DedekindEval {
            m: reduce(m, n),
            n,
            value,
            method,
        })
    }

    /// `s(m, n) = S(m, n) / 12`.
    pub fn little(&self) -> Rational {
        &self.value / &Rational::from(12i64)
    }
}

/// The sawtooth function `((t))`: zero at integers, `t - floor(t) - 1/2` elsewhere.
pub fn sawtooth(t: &Rational) -> Rational {
    if t.is_integer() {
        return Rational::zero();
    }
    t - &Rational::from_integer(t.floor()) - Rational::new(1, 2)
}

/// Reduces `m` mod `n` and checks coprimality.
pub(crate) fn canonical(m: i128, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let r = reduce(m, n);
    let g = gcd_u128(r as u128, n as u128);
    if g != 1 {
        return Err(Error::NotCoprime {
            a: m,
            b: n as i128,
            gcd: g,
        });
    }
    Ok(r)
}

/// `S(m, n)` by literal summation of `12 Σ_{k=1}^{n} ((k/n)) ((mk/n))`.
///
/// Both sawtooth values are taken over the common denominator `2n`:
/// `((j/n)) = (2 (j mod n) - n) / (2n)` unless `n | j`. O(n).
pub fn dedekind_oracle(m: i128, n: u64) -> Result<Rational> {
    let m = canonical(m, n)?;
    let nn = n as i128;
    let mut acc: i128 = 0;
    let mut mk: u64 = 0;
    for k in 1..n {
        mk = ((mk as u128 + m as u128) % n as u128) as u64;
        if mk == 0 {
            continue;
        }
        acc += (2 * k as i128 - nn) * (2 * mk as i128 - nn);
    }
    // 12 * acc / (4 n^2)
    Ok(Rational::new(3 * acc, nn * nn))
}

/// `S(m, n)` by Euclidean descent on reciprocity. O(log n).
pub fn dedekind_fast(m: i128, n: u64) -> Result<Rational> {
    let m = canonical(m, n)?;
    let scaled = if n <= I128_LIMIT {
        BigInt::from(scaled_kernel(m, n))
    } else {
        scaled_kernel_big(m, n)
    };
    Ok(Rational::new(scaled, n))
}

/// `n * S(m, n)` as an integer, for `n <= I128_LIMIT`.
pub fn scaled_sum(m: i128, n: u64) -> Result<i128> {
    if n > I128_LIMIT {
        return Err(Error::Overflow(format!("modulus {n} exceeds 2^40")));
    }
    Ok(scaled_kernel(canonical(m, n)?, n))
}

/// The pairs `(m, n)` visited by the descent, outermost first, ending before
/// the base case `m = 1`.
fn descent(mut m: u64, mut n: u64) -> (Vec<(u64, u64)>, u64) {
    let mut stack = Vec::new();
    while m > 1 {
        stack.push((m, n));
        (m, n) = (n % m, m);
    }
    (stack, n)
}

// With F(m, n) = n S(m, n), reciprocity for coprime 0 < m < n reads
//   m F(m, n) = m^2 + n^2 + 1 - 3mn - n F(n mod m, m),
// and F(1, n) = (n - 1)(n - 2).
pub(crate) fn scaled_kernel(m: u64, n: u64) -> i128 {
    if n == 1 {
        return 0;
    }
    let (stack, base) = descent(m, n);
    let b = base as i128;
    let mut f = (b - 1) * (b - 2);
    for &(m, n) in stack.iter().rev() {
        let (m, n) = (m as i128, n as i128);
        let num = m * m + n * n + 1 - 3 * m * n - n * f;
        debug_assert_eq!(num % m, 0);
        f = num / m;
    }
    f
}

fn scaled_kernel_big(m: u64, n: u64) -> BigInt {
    if n == 1 {
        return BigInt::zero();
    }
    let (stack, base) = descent(m, n);
    let b = BigInt::from(base);
    let mut f: BigInt = (&b - 1u8) * (&b - 2u8);
    for &(m, n) in stack.iter().rev() {
        let (m, n) = (BigInt::from(m), BigInt::from(n));
        let num = &m * &m + &n * &n + 1u8 - BigInt::from(3u8) * &m * &n - &n * &f;
        f = num.div_floor(&m);
    }
    f
}

/// Both sides of the three-term relation
/// `S(m,n) = S(c,d) + S(r,q) + n/(dq) + d/(nq) + q/(nd) - 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeTerm {
    pub j: i128,
    pub k: i128,
    pub r: i128,
    pub q: u64,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ThreeTerm {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates the three-term relation for `q = md - nc > 0`, with `(j, k)`
/// solving `-cj + dk = 1` from the extended Euclidean algorithm and
/// `r = -nk + mj`.
pub fn three_term(m: i128, n: u64, c: i128, d: u64) -> Result<ThreeTerm> {
    canonical(m, n)?;
    canonical(c, d)?;
    let (ni, di) = (n as i128, d as i128);
    let q = m
        .checked_mul(di)
        .zip(ni.checked_mul(c))
        .and_then(|(a, b)| a.checked_sub(b))
        .ok_or_else(|| Error::Overflow("md - nc".into()))?;
    if q <= 0 {
        return Err(Error::NonPositiveQ(q));
    }
    let q = u64::try_from(q).map_err(|_| Error::Overflow(format!("q = {q}")))?;
    // c x + d y = 1  =>  -c (-x) + d y = 1
    let (g, x, y) = extended_gcd(c, di);
    debug_assert_eq!(g, 1);
    let (j, k) = (-x, y);
    let r = m * j - ni * k;
    let lhs = dedekind_fast(m, n)?;
    let (nr, dr, qr) = (Rational::from(n), Rational::from(d), Rational::from(q));
    let rhs = dedekind_fast(c, d)?
        + dedekind_fast(r, q)?
        + &nr / &(&dr * &qr)
        + &dr / &(&nr * &qr)
        + &qr / &(&nr * &dr)
        - Rational::from(3i64);
    Ok(ThreeTerm {
        j,
        k,
        r,
        q,
        lhs,
        rhs,
    })
}

/// `true` when `n * value` is an even integer, as every `S(m, n)` must be.
pub fn has_even_scaling(value: &Rational, n: u64) -> bool {
    let scaled = value * &Rational::from(n);
    scaled.is_integer()
        && scaled
            .numer()
            .to_i128()
            .map_or_else(|| scaled.numer().is_even(), |v| v % 2 == 0)
}
