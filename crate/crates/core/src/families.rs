//! Families of arguments with provably equal Dedekind sums.
//!
//! Power moduli: `S(ε + dnm, dn²) = ε (2/(dn²) + d - 3)` for every `m` prime
//! to `n`, its reparametrization over `l^k`, and the complete description of
//! classes containing `ε + p^r m` when `r >= k/2`.
//!
//! Square-free moduli: `S(1 + mt, nt) = 2/(nt) + t/n - 3` whenever
//! `t ≡ m - m* (mod n)`; the solutions `m` come from `m² - tm - 1 ≡ 0 (mod n)`,
//! solved prime by prime and glued with the CRT.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    crt, factorize, gcd_u128, is_prime, is_square_free, legendre, mod_inverse, mul_mod, odd_primes,
    reduce, sqrt_mod_prime, Rational,
};
use crate::dedekind::dedekind_fast;
use crate::equality::EqualityClass;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn apply(self, r: Rational) -> Rational {
        match self {
            Sign::Plus => r,
            Sign::Minus => -r,
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::BadEps(v)),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PowerParams {
    Theorem1 {
        d: u64,
        n: u64,
        eps: Sign,
    },
    Corollary1 {
        l: u64,
        k: u32,
        r: u32,
        q: u64,
        eps: Sign,
    },
    Corollary3 {
        p: u64,
        eps: Sign,
    },
}

/// Members `ε + (step) m` of a power-modulus family with their common value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerFamily {
    pub params: PowerParams,
    pub modulus: u64,
    pub predicted_value: Rational,
    /// Reduced into `[0, modulus)`, ascending.
    pub members: Vec<u64>,
}

impl PowerFamily {
    pub fn verify(&self) -> Verification {
        verify_members(self.modulus, &self.members, &self.predicted_value)
    }
}

/// Result of re-evaluating every member with the fast evaluator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub checked: usize,
    pub mismatches: Vec<(u64, Rational)>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn verify_members(modulus: u64, members: &[u64], want: &Rational) -> Verification {
    let mismatches: Vec<(u64, Rational)> = members
        .par_iter()
        .filter_map(|&m| match dedekind_fast(m as i128, modulus) {
            Ok(v) if &v == want => None,
            Ok(v) => Some((m, v)),
            Err(_) => Some((m, Rational::zero())),
        })
        .collect();
    Verification {
        checked: members.len(),
        mismatches,
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

/// `{ε + step·m mod modulus : 0 <= m < count, gcd(m, count) = 1}`, ascending.
fn stepped_members(eps: Sign, step: u64, count: u64, modulus: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (0..count)
        .filter(|&m| gcd_u128(m as u128, count as u128) == 1)
        .map(|m| reduce(eps.value() as i128 + step as i128 * m as i128, modulus))
        .collect();
    out.sort_unstable();
    out
}

pub fn theorem1_value(d: u64, n: u64, eps: Sign) -> Result<Rational> {
    let modulus = d
        .checked_mul(n)
        .and_then(|x| x.checked_mul(n))
        .ok_or_else(|| overflow("d n^2"))?;
    Ok(eps.apply(Rational::new(2, modulus) + Rational::from(d) - Rational::from(3i64)))
}

/// `S(ε + dnm, dn²)` for all `0 <= m < n` prime to `n`.
pub fn theorem1_family(d: u64, n: u64, eps: Sign) -> Result<PowerFamily> {
    if d == 0 || n == 0 {
        return Err(Error::RangeViolated("d and n must be positive".into()));
    }
    let predicted_value = theorem1_value(d, n, eps)?;
    let modulus = d * n * n;
    Ok(PowerFamily {
        params: PowerParams::Theorem1 { d, n, eps },
        modulus,
        predicted_value,
        members: stepped_members(eps, d * n, n, modulus),
    })
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::HypothesisViolated(msg.into())
}

/// `S(ε + l^r q m, l^k)` for all `m` prime to `l^(k-r) / q`.
pub fn corollary1_family(l: u64, k: u32, r: u32, q: u64, eps: Sign) -> Result<PowerFamily> {
    if l == 0 || k == 0 || r == 0 || q == 0 {
        return Err(hypothesis("l, k, r, q must be positive"));
    }
    if r > k {
        return Err(hypothesis(format!("r <= k (r = {r}, k = {k})")));
    }
    let modulus = l.checked_pow(k).ok_or_else(|| overflow("l^k"))?;
    let upper = l.pow(k - r);
    if !upper.is_multiple_of(q) {
        return Err(hypothesis(format!(
            "q | l^(k-r) ({q} does not divide {upper})"
        )));
    }
    if q.is_multiple_of(l) {
        return Err(hypothesis(format!("l does not divide q ({l} divides {q})")));
    }
    let q2 = q.checked_mul(q).ok_or_else(|| overflow("q^2"))?;
    // d = l^(2r-k) q^2, integral in both cases
    let d = if 2 * r >= k {
        l.pow(2 * r - k)
            .checked_mul(q2)
            .ok_or_else(|| overflow("l^(2r-k) q^2"))?
    } else {
        let below = l.pow(k - 2 * r);
        if q2 % below != 0 {
            return Err(hypothesis(format!(
                "r >= k/2 or l^(k-2r) | q^2 ({below} does not divide {q2})"
            )));
        }
        q2 / below
    };
    let exact_d = Rational::from(l).pow_signed(2 * r as i64 - k as i64) * Rational::from(q2);
    assert_eq!(exact_d, Rational::from(d), "l^(2r-k) q^2 must be integral");
    let count = upper / q;
    debug_assert_eq!(d * count * count, modulus);
    let predicted_value = eps.apply(Rational::new(2, modulus) + exact_d - Rational::from(3i64));
    Ok(PowerFamily {
        params: PowerParams::Corollary1 { l, k, r, q, eps },
        modulus,
        predicted_value,
        members: stepped_members(eps, l.pow(r) * q, count, modulus),
    })
}

/// `S(ε + pm, p²)` for `m = 1, ..., p - 1`, all equal to `ε (2/p² - 2)`.
pub fn corollary3_family(p: u64, eps: Sign) -> Result<PowerFamily> {
    if !is_prime(p) {
        return Err(hypothesis(format!("{p} is not prime")));
    }
    let mut fam = theorem1_family(1, p, eps)?;
    fam.params = PowerParams::Corollary3 { p, eps };
    Ok(fam)
}

/// The complete equality class of `ε + p^r` modulo `p^k` for `k/2 <= r <= k`:
/// exactly the residues `ε + p^r m'` with `p ∤ m'`.
pub fn corollary2_classify(p: u64, k: u32, r: u32, eps: Sign) -> Result<EqualityClass> {
    if !is_prime(p) {
        return Err(hypothesis(format!("{p} is not prime")));
    }
    if k == 0 || 2 * r < k || r > k {
        return Err(Error::RangeViolated(format!(
            "need k/2 <= r <= k, got k = {k}, r = {r}"
        )));
    }
    let modulus = p.checked_pow(k).ok_or_else(|| overflow("p^k"))?;
    let step = p.pow(r);
    let count = p.pow(k - r);
    let mut members: Vec<u64> = if r == k {
        vec![reduce(eps.value() as i128, modulus)]
    } else {
        (0..count)
            .filter(|m| m % p != 0)
            .map(|m| reduce(eps.value() as i128 + (step * m) as i128, modulus))
            .collect()
    };
    members.sort_unstable();
    members.dedup();
    let value = eps.apply(
        Rational::new(2, modulus) + Rational::from(p).pow_signed(2 * r as i64 - k as i64)
            - Rational::from(3i64),
    );
    Ok(EqualityClass {
        modulus,
        value,
        members,
    })
}

/// `2/(nt) + t/n - 3`.
pub fn theorem2_value(n: u64, t: u64) -> Rational {
    let nt = n as u128 * t as u128;
    Rational::new(2, nt) + Rational::new(t, n) - Rational::from(3i64)
}

/// Splits `t² + 4 = q k²` with `q` square-free.
pub fn decompose(t: u64) -> Result<(u64, u64)> {
    let v = t
        .checked_mul(t)
        .and_then(|x| x.checked_add(4))
        .ok_or_else(|| overflow("t^2 + 4"))?;
    let (mut q, mut k) = (1u64, 1u64);
    for (p, e) in factorize(v) {
        if e % 2 == 1 {
            q *= p;
        }
        k *= p.pow(e / 2);
    }
    Ok((q, k))
}

/// Residues `1 + mt` modulo `nt` for the solutions of `m² - tm - 1 ≡ 0 (mod n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticFamily {
    pub t: u64,
    pub q: u64,
    pub k: u64,
    pub primes: Vec<u64>,
    pub n: u64,
    pub nt: u64,
    /// All `2^r` solutions mod `n`, ascending.
    pub solutions: Vec<u64>,
    /// `1 + m t mod nt`, ascending.
    pub arguments: Vec<u64>,
    pub predicted_value: Rational,
    /// Set when `nt` has a square factor. The common value still holds.
    pub nt_not_square_free: bool,
}

impl QuadraticFamily {
    pub fn verify(&self) -> Verification {
        verify_members(self.nt, &self.arguments, &self.predicted_value)
    }

    fn with_t(&self, t: u64) -> Result<QuadraticFamily> {
        let (q, k) = decompose(t)?;
        let nt = self.n.checked_mul(t).ok_or_else(|| overflow("n t"))?;
        let mut arguments: Vec<u64> = self
            .solutions
            .iter()
            .map(|&m| reduce(1 + m as i128 * t as i128, nt))
            .collect();
        arguments.sort_unstable();
        Ok(QuadraticFamily {
            t,
            q,
            k,
            primes: self.primes.clone(),
            n: self.n,
            nt,
            solutions: self.solutions.clone(),
            arguments,
            predicted_value: theorem2_value(self.n, t),
            nt_not_square_free: !is_square_free(nt),
        })
    }
}

/// The two roots `(t ± √q k) 2*` of `m² - tm - 1` modulo an eligible prime.
fn roots_mod_prime(t: u64, q: u64, k: u64, p: u64) -> Result<[u64; 2]> {
    let ineligible = |reason: String| Error::IneligiblePrime { p, reason };
    if p == 2 || !is_prime(p) {
        return Err(ineligible("not an odd prime".into()));
    }
    if k.is_multiple_of(p) {
        return Err(ineligible(format!("divides k = {k}")));
    }
    let symbol = legendre(q as i128, p)?;
    if symbol != 1 {
        return Err(ineligible(format!("Legendre symbol ({q}/{p}) = {symbol}")));
    }
    let sqrt_q = sqrt_mod_prime(q as i128, p)?[0];
    let half = mod_inverse(2, p)?;
    let root_k = mul_mod(sqrt_q, k % p, p);
    let t = t % p;
    let plus = mul_mod((t + root_k) % p, half, p);
    let minus = mul_mod((t + p - root_k) % p, half, p);
    if plus == minus {
        return Err(ineligible("both roots coincide".into()));
    }
    for m in [plus, minus] {
        let val = (mul_mod(m, m, p) + p - mul_mod(t, m, p) + p - 1) % p;
        assert_eq!(val, 0, "root {m} of m^2 - {t}m - 1 mod {p}");
    }
    Ok([plus.min(minus), plus.max(minus)])
}

/// Builds the family for `t` over the given odd primes.
pub fn corollary4_family(t: u64, primes: &[u64]) -> Result<QuadraticFamily> {
    if t == 0 {
        return Err(Error::RangeViolated("t must be positive".into()));
    }
    let mut seen = BTreeSet::new();
    for &p in primes {
        if !seen.insert(p) {
            return Err(Error::DuplicatePrime(p));
        }
    }
    let primes: Vec<u64> = seen.into_iter().collect();
    let (q, k) = decompose(t)?;
    let per_prime: Vec<[u64; 2]> = primes
        .iter()
        .map(|&p| roots_mod_prime(t, q, k, p))
        .collect::<Result<_>>()?;
    let n = primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| overflow("product of primes"))?;
    let r = primes.len();
    if r >= 32 {
        return Err(overflow("too many primes"));
    }
    let mut solutions = Vec::with_capacity(1 << r);
    for mask in 0u64..(1 << r) {
        let parts: Vec<(u64, u64)> = per_prime
            .iter()
            .zip(&primes)
            .enumerate()
            .map(|(i, (roots, &p))| (roots[((mask >> i) & 1) as usize], p))
            .collect();
        solutions.push(crt(&parts)?.0);
    }
    solutions.sort_unstable();
    solutions.dedup();
    assert_eq!(solutions.len(), 1 << r, "solutions must be distinct mod n");
    for &m in &solutions {
        let (mm, tt, nn) = (m as u128, t as u128 % n as u128, n as u128);
        let val = (mm * mm % nn + nn - tt * mm % nn + nn - 1 % nn) % nn;
        assert_eq!(val, 0, "solution {m} of m^2 - tm - 1 mod {n}");
        assert_eq!(gcd_u128(mm, nn), 1);
    }
    let skeleton = QuadraticFamily {
        t,
        q,
        k,
        primes,
        n,
        nt: 0,
        solutions,
        arguments: Vec::new(),
        predicted_value: Rational::zero(),
        nt_not_square_free: false,
    };
    skeleton.with_t(t)
}

/// Replaces `t` by `t + l n`; the solutions mod `n` are unchanged.
pub fn shift_t(family: &QuadraticFamily, l: u64) -> Result<QuadraticFamily> {
    if l == 0 {
        return Err(Error::RangeViolated("shift l must be positive".into()));
    }
    let t1 = l
        .checked_mul(family.n)
        .and_then(|x| x.checked_add(family.t))
        .ok_or_else(|| overflow("t + l n"))?;
    family.with_t(t1)
}

/// Ascending odd primes `p` with `p ∤ k` and `(q/p) = 1`, optionally skipping
/// divisors of `t`.
pub fn table1_sieve(t: u64, count: usize, exclude_divisors_of_t: bool) -> Result<Vec<u64>> {
    let (q, k) = decompose(t)?;
    Ok(odd_primes()
        .filter(|&p| k % p != 0)
        .filter(|&p| !(exclude_divisors_of_t && t.is_multiple_of(p)))
        .filter(|&p| legendre(q as i128, p) == Ok(1))
        .take(count)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub t: u64,
    pub q: u64,
    pub k: u64,
    pub primes: Vec<u64>,
}

/// The `t` values of the published table: square-free `t <= 10`.
pub const TABLE1_T: [u64; 7] = [1, 2, 3, 5, 6, 7, 10];

/// One table row with the first six eligible primes; `t` must be square-free.
pub fn table1_row(t: u64) -> Result<Table1Row> {
    if !is_square_free(t) {
        return Err(Error::NotSquareFree(t));
    }
    let (q, k) = decompose(t)?;
    Ok(Table1Row {
        t,
        q,
        k,
        primes: table1_sieve(t, 6, true)?,
    })
}

pub fn table1() -> Vec<Table1Row> {
    TABLE1_T
        .iter()
        .map(|&t| table1_row(t).expect("table t values are square-free"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedekind::dedekind_oracle;
    use crate::equality::UnitTable;

    #[test]
    fn sign_parsing() {
        assert_eq!(Sign::try_from(1).unwrap(), Sign::Plus);
        assert_eq!(Sign::try_from(-1).unwrap(), Sign::Minus);
        assert_eq!(Sign::try_from(0), Err(Error::BadEps(0)));
    }

    #[test]
    fn theorem1_example() {
        let f = theorem1_family(8, 5, Sign::Plus).unwrap();
        assert_eq!(f.modulus, 200);
        assert_eq!(f.predicted_value, Rational::new(501, 100));
        assert_eq!(f.members, vec![41, 81, 121, 161]);
        assert!(f.verify().passed());
    }

    #[test]
    fn theorem1_degenerate_and_negated() {
        let f = theorem1_family(3, 1, Sign::Plus).unwrap();
        assert_eq!(f.members, vec![1]);
        assert_eq!(f.predicted_value, Rational::new(2, 3));
        assert_eq!(f.predicted_value, dedekind_oracle(1, 3).unwrap());
        for (d, n) in [(8, 5), (2, 7), (5, 6)] {
            let plus = theorem1_family(d, n, Sign::Plus).unwrap();
            let minus = theorem1_family(d, n, Sign::Minus).unwrap();
            assert_eq!(minus.predicted_value, -plus.predicted_value.clone());
            assert_eq!(minus.members.len() as u64, crate::arith::euler_phi(n));
            assert!(minus.verify().passed());
        }
        assert!(theorem1_family(0, 5, Sign::Plus).is_err());
    }

    #[test]
    fn corollary1_examples() {
        let f = corollary1_family(6, 4, 2, 4, Sign::Plus).unwrap();
        assert_eq!(f.modulus, 1296);
        assert_eq!(
            f.predicted_value,
            Rational::new(2, 1296) + Rational::from(13i64)
        );
        let want: Vec<u64> = [1, 2, 4, 5, 7, 8].iter().map(|m| 1 + 144 * m).collect();
        assert_eq!(f.members, want);
        assert!(f.verify().passed());

        let f = corollary1_family(12, 3, 1, 6, Sign::Plus).unwrap();
        assert_eq!(f.modulus, 1728);
        assert_eq!(f.predicted_value, Rational::new(2, 1728));
        let want: Vec<u64> = [1, 5, 7, 11, 13, 17, 19, 23]
            .iter()
            .map(|m| 1 + 72 * m)
            .collect();
        assert_eq!(f.members, want);
        assert!(f.verify().passed());

        let f = corollary1_family(5, 3, 3, 1, Sign::Minus).unwrap();
        assert_eq!(f.members, vec![124]);
        assert_eq!(
            f.predicted_value,
            -(Rational::new(2, 125) + Rational::from(125i64 - 3))
        );
    }

    #[test]
    fn corollary1_hypotheses() {
        let err = |r: Result<PowerFamily>| match r {
            Err(Error::HypothesisViolated(msg)) => msg,
            other => panic!("{other:?}"),
        };
        assert!(err(corollary1_family(6, 4, 2, 5, Sign::Plus)).contains("q | l^(k-r)"));
        assert!(err(corollary1_family(6, 4, 1, 6, Sign::Plus)).contains("l does not divide q"));
        assert!(err(corollary1_family(6, 4, 1, 2, Sign::Plus)).contains("l^(k-2r) | q^2"));
        assert!(err(corollary1_family(6, 2, 3, 1, Sign::Plus)).contains("r <= k"));
    }

    #[test]
    fn corollary3_matches_theorem() {
        let f = corollary3_family(5, Sign::Plus).unwrap();
        assert_eq!(f.members, vec![6, 11, 16, 21]);
        assert_eq!(
            f.predicted_value,
            Rational::new(2, 25) - Rational::from(2i64)
        );
        let g = corollary3_family(7, Sign::Minus).unwrap();
        assert_eq!(g.members, vec![6, 13, 20, 27, 34, 41]);
        assert!(g.verify().passed());
        assert!(corollary3_family(9, Sign::Plus).is_err());
    }

    #[test]
    fn corollary2_examples() {
        let c = corollary2_classify(5, 2, 1, Sign::Plus).unwrap();
        assert_eq!(c.members, vec![6, 11, 16, 21]);
        assert_eq!(c.value, Rational::new(2, 25) - Rational::from(2i64));
        let c = corollary2_classify(3, 4, 2, Sign::Plus).unwrap();
        assert_eq!(c.members, vec![10, 19, 37, 46, 64, 73]);
        assert_eq!(c.value, Rational::new(2, 81) + Rational::from(1i64 - 3));
        let c = corollary2_classify(7, 3, 3, Sign::Minus).unwrap();
        assert_eq!(c.members, vec![342]);
        assert_eq!(
            c.value,
            -(Rational::new(2, 343) + Rational::from(343i64 - 3))
        );
        assert!(matches!(
            corollary2_classify(3, 5, 2, Sign::Plus),
            Err(Error::RangeViolated(_))
        ));
        assert!(matches!(
            corollary2_classify(3, 2, 3, Sign::Plus),
            Err(Error::RangeViolated(_))
        ));
    }

    #[test]
    fn corollary2_matches_brute_force_classes() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for k in 1..=11u32 {
                let Some(pk) = p.checked_pow(k).filter(|&v| v <= 3000) else {
                    break;
                };
                let table = UnitTable::new(pk).unwrap();
                let classes = table.classes();
                for r in k.div_ceil(2)..=k {
                    for eps in [Sign::Plus, Sign::Minus] {
                        let want = corollary2_classify(p, k, r, eps).unwrap();
                        let got = classes
                            .iter()
                            .find(|c| c.contains(want.members[0]))
                            .unwrap();
                        assert_eq!(got, &want, "p={p} k={k} r={r} eps={eps}");
                    }
                }
            }
        }
    }

    #[test]
    fn theorem2_values() {
        let v = theorem2_value(70499, 7);
        assert_eq!(v.to_decimal(10), "-2.9998966551");
        assert_eq!(
            theorem2_value(70499, 141005).to_decimal(10),
            "-0.9999007076"
        );
        assert_eq!(theorem2_value(1, 1), Rational::zero());
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(7).unwrap(), (53, 1));
        assert_eq!(decompose(2).unwrap(), (2, 2));
        assert_eq!(decompose(6).unwrap(), (10, 2));
        assert_eq!(decompose(11).unwrap(), (5, 5));
    }

    #[test]
    fn decompose_never_gives_three() {
        for t in 1..=10_000u64 {
            let (q, k) = decompose(t).unwrap();
            assert_eq!(q * k * k, t * t + 4);
            assert!(is_square_free(q));
            assert_ne!(q, 3, "t = {t}");
        }
    }

    #[test]
    fn corollary4_single_primes() {
        let f = corollary4_family(7, &[11]).unwrap();
        assert_eq!(f.solutions, vec![2, 5]);
        let brute: Vec<u64> = (0..11u64)
            .filter(|m| (m * m + 121 - 7 * m - 1) % 11 == 0)
            .collect();
        assert_eq!(f.solutions, brute);
        let f = corollary4_family(1, &[11]).unwrap();
        assert_eq!(f.q, 5);
        assert_eq!(f.solutions, vec![4, 8]);
        let f = corollary4_family(5, &[]).unwrap();
        assert_eq!(f.solutions, vec![0]);
        assert_eq!(f.arguments, vec![1]);
        assert!(f.verify().passed());
    }

    #[test]
    fn corollary4_paper_example() {
        let f = corollary4_family(7, &[11, 13, 17, 29]).unwrap();
        assert_eq!((f.n, f.nt), (70499, 493493));
        assert_eq!(f.solutions.len(), 16);
        assert!(f.solutions.contains(&706));
        assert_eq!(&f.arguments[..5], &[4943, 58535, 79556, 94669, 148261]);
        let inverses: Vec<u64> = f.arguments[..5]
            .iter()
            .map(|&a| mod_inverse(a as i128, f.nt).unwrap())
            .collect();
        assert_eq!(inverses, vec![488601, 435009, 413988, 398875, 345283]);
        assert_eq!(
            f.predicted_value,
            Rational::new(2, 493493) + Rational::new(7, 70499) - Rational::from(3i64)
        );
        assert!(!f.nt_not_square_free);
        assert!(f.verify().passed());

        let g = shift_t(&f, 2).unwrap();
        assert_eq!(g.t, 141005);
        assert_eq!(g.arguments.len(), 16);
        assert_eq!(g.predicted_value.to_decimal(10), "-0.9999007076");
        assert!(g.verify().passed());
        assert!(shift_t(&f, 0).is_err());
    }

    #[test]
    fn corollary4_rejections() {
        let ineligible = |r: Result<QuadraticFamily>| match r {
            Err(Error::IneligiblePrime { reason, .. }) => reason,
            other => panic!("{other:?}"),
        };
        assert!(ineligible(corollary4_family(7, &[2])).contains("odd prime"));
        assert!(ineligible(corollary4_family(7, &[15])).contains("odd prime"));
        assert!(ineligible(corollary4_family(11, &[5])).contains("divides k"));
        assert!(ineligible(corollary4_family(7, &[19])).contains("Legendre"));
        assert_eq!(
            corollary4_family(7, &[11, 13, 11]),
            Err(Error::DuplicatePrime(11))
        );
    }

    #[test]
    fn solutions_satisfy_t_congruence() {
        for t in [1u64, 2, 3, 5, 6, 7, 10] {
            let primes = table1_sieve(t, 3, true).unwrap();
            let f = corollary4_family(t, &primes).unwrap();
            for &m in &f.solutions {
                let inv = mod_inverse(m as i128, f.n).unwrap();
                assert_eq!(reduce(m as i128 - inv as i128, f.n), t % f.n);
            }
            let mut args = f.arguments.clone();
            args.dedup();
            assert_eq!(args.len(), f.solutions.len());
            assert!(f.verify().passed());
        }
    }

    #[test]
    fn non_square_free_flag() {
        // (13/3) = 1 and 3 ∤ k, so p = 3 is eligible for t = 3, but nt = 9
        let f = corollary4_family(3, &[3]).unwrap();
        assert_eq!(f.nt, 9);
        assert!(f.nt_not_square_free);
        assert!(f.verify().passed());
        assert!(!corollary4_family(3, &[17]).unwrap().nt_not_square_free);
    }

    #[test]
    fn table_rows() {
        let rows = table1();
        let want: [(u64, u64, u64, [u64; 6]); 7] = [
            (1, 5, 1, [11, 19, 29, 31, 41, 59]),
            (2, 2, 2, [7, 17, 23, 31, 41, 47]),
            (3, 13, 1, [17, 23, 29, 43, 53, 61]),
            (5, 29, 1, [7, 13, 23, 53, 59, 67]),
            (6, 10, 2, [13, 31, 37, 41, 43, 53]),
            (7, 53, 1, [11, 13, 17, 29, 37, 43]),
            (10, 26, 2, [11, 17, 19, 23, 37, 59]),
        ];
        for (row, (t, q, k, primes)) in rows.iter().zip(want) {
            assert_eq!((row.t, row.q, row.k), (t, q, k));
            assert_eq!(row.primes, primes.to_vec());
        }
        assert_eq!(table1_row(4), Err(Error::NotSquareFree(4)));
    }
}
