use std::fmt;

use crate::error::{Error, Result};

use super::primes::is_prime;

/// Greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128) as u64
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
///
/// The Bezout coefficients are the ones produced by the plain iterative
/// algorithm, which satisfy `|x| <= |b| / g` and `|y| <= |a| / g`.
pub fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Reduces `a` into `[0, n)`.
pub fn reduce(a: i128, n: u64) -> u64 {
    a.rem_euclid(n as i128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse of `m` modulo `n`, reduced into `[0, n)`.
pub fn mod_inverse(m: i128, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let a = reduce(m, n) as i128;
    let (g, x, _) = extended_gcd(a, n as i128);
    if g != 1 {
        return Err(Error::NotCoprime {
            a: m,
            b: n as i128,
            gcd: g as u128,
        });
    }
    Ok(reduce(x, n))
}

/// Chinese remainder theorem over pairwise coprime moduli.
///
/// Returns `(x, M)` with `M` the product of the moduli and `x` in `[0, M)`
/// congruent to every part. An empty list yields `(0, 1)`.
pub fn crt(parts: &[(u64, u64)]) -> Result<(u64, u64)> {
    let mut acc: (u64, u64) = (0, 1);
    for (i, &(r, m)) in parts.iter().enumerate() {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        for &(_, prev) in &parts[..i] {
            if gcd_u128(prev as u128, m as u128) != 1 {
                return Err(Error::ModuliNotCoprime { a: prev, b: m });
            }
        }
        let (x, big) = acc;
        let product = big
            .checked_mul(m)
            .ok_or_else(|| Error::Overflow("product of CRT moduli exceeds u64".into()))?;
        // x + big * u ≡ r (mod m)  =>  u ≡ (r - x) * big^{-1} (mod m)
        let inv = mod_inverse(big as i128, m)?;
        let diff = reduce(r as i128 - x as i128, m);
        let u = mul_mod(diff, inv, m);
        let combined = x as u128 + big as u128 * u as u128;
        acc = ((combined % product as u128) as u64, product);
    }
    Ok(acc)
}

/// Legendre symbol `(q / p)` for an odd prime `p`.
pub fn legendre(q: i128, p: u64) -> Result<i8> {
    check_odd_prime(p)?;
    let a = reduce(q, p);
    if a == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    })
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Square roots of `a` modulo an odd prime `p`, ascending.
///
/// Empty when `a` is a non-residue, `[0]` when `p | a`, otherwise `[x, p - x]`.
pub fn sqrt_mod_prime(a: i128, p: u64) -> Result<Vec<u64>> {
    let a = reduce(a, p);
    match legendre(a as i128, p)? {
        0 => return Ok(vec![0]),
        -1 => return Ok(vec![]),
        _ => {}
    }
    let x = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    debug_assert_eq!(mul_mod(x, x, p), a);
    let y = p - x;
    Ok(vec![x.min(y), x.max(y)])
}

// Requires a to be a nonzero quadratic residue and p ≡ 1 (mod 4).
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// A residue class `value mod modulus`, always canonically reduced.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i128, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Residue {
            value: reduce(value, modulus),
            modulus,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_unit(&self) -> bool {
        gcd_u128(self.value as u128, self.modulus as u128) == 1
    }

    pub fn inverse(&self) -> Result<Residue> {
        Ok(Residue {
            value: mod_inverse(self.value as i128, self.modulus)?,
            modulus: self.modulus,
        })
    }

    pub fn mul(&self, other: &Residue) -> Residue {
        assert_eq!(self.modulus, other.modulus, "mismatched moduli");
        Residue {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(41, 200), 1);
        assert_eq!(gcd(144, 1296), 144);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(-12, 18), 6);
    }

    #[test]
    fn extended_gcd_bezout() {
        for a in -30i128..30 {
            for b in -30i128..30 {
                let (g, x, y) = extended_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g as u128, gcd_u128(a.unsigned_abs(), b.unsigned_abs()));
            }
        }
    }

    #[test]
    fn inverse_examples() {
        for n in 2..50 {
            assert_eq!(mod_inverse(1, n).unwrap(), 1);
        }
        assert_eq!(mod_inverse(41, 200).unwrap(), 161);
        assert_eq!(mod_inverse(4943, 493493).unwrap(), 488601);
        assert_eq!(mod_inverse(-1, 7).unwrap(), 6);
        assert_eq!(mod_inverse(3, 1).unwrap(), 0);
        assert!(matches!(
            mod_inverse(6, 9),
            Err(Error::NotCoprime { gcd: 3, .. })
        ));
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[(0, 1)]).unwrap(), (0, 1));
        assert_eq!(crt(&[(2, 11), (2, 13)]).unwrap(), (2, 143));
        assert_eq!(crt(&[]).unwrap(), (0, 1));
        assert_eq!(
            crt(&[(1, 6), (1, 4)]),
            Err(Error::ModuliNotCoprime { a: 6, b: 4 })
        );
    }

    #[test]
    fn crt_combines_quadratic_roots() {
        // roots of m^2 - 7m - 1 found by brute force per prime
        let roots = |p: u64| -> Vec<u64> {
            (0..p)
                .filter(|&m| (m * m + p * p - 7 * m - 1).is_multiple_of(p))
                .collect()
        };
        assert_eq!(roots(11), vec![2, 5]);
        let parts: Vec<(u64, u64)> = [11u64, 13, 17, 29]
            .iter()
            .map(|&p| (*roots(p).iter().find(|&&r| r == 706 % p).unwrap(), p))
            .collect();
        assert_eq!(parts, vec![(2, 11), (4, 13), (9, 17), (10, 29)]);
        let (m, n) = crt(&parts).unwrap();
        assert_eq!((m, n), (706, 70499));
        let m = m as i128;
        assert_eq!((m * m - 7 * m - 1).rem_euclid(70499), 0);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(53, 11).unwrap(), 1);
        assert_eq!(legendre(5, 11).unwrap(), 1);
        assert_eq!(legendre(49, 13).unwrap(), 1);
        assert_eq!(legendre(22, 11).unwrap(), 0);
        assert_eq!(legendre(2, 5).unwrap(), -1);
        assert_eq!(legendre(3, 2), Err(Error::NotOddPrime(2)));
        assert_eq!(legendre(3, 15), Err(Error::NotOddPrime(15)));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod_prime(0, 7).unwrap(), vec![0]);
        assert_eq!(sqrt_mod_prime(53, 11).unwrap(), vec![3, 8]);
        assert_eq!(sqrt_mod_prime(2, 7).unwrap(), vec![3, 4]);
        assert_eq!(sqrt_mod_prime(3, 7).unwrap(), Vec::<u64>::new());
        // p ≡ 1 mod 8 exercises Tonelli-Shanks with s >= 3
        assert_eq!(sqrt_mod_prime(2, 17).unwrap(), vec![6, 11]);
    }

    #[test]
    fn residue_is_canonical() {
        let r = Residue::new(-1, 7).unwrap();
        assert_eq!(r.value(), 6);
        assert_eq!(r.inverse().unwrap().value(), 6);
        assert!(Residue::new(3, 0).is_err());
        assert!(!Residue::new(6, 9).unwrap().is_unit());
        let a = Residue::new(41, 200).unwrap();
        assert_eq!(a.mul(&a.inverse().unwrap()).value(), 1);
    }
}
