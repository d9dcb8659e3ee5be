//! Exact rationals and modular-arithmetic primitives.

mod modular;
mod primes;
mod rational;

pub use modular::{
    crt, extended_gcd, gcd, legendre, mod_inverse, pow_mod, reduce, sqrt_mod_prime, Residue,
};
pub(crate) use modular::{gcd_u128, mul_mod};
pub use primes::{euler_phi, factorize, is_prime, is_square_free, odd_primes};
pub use rational::{ParseRationalError, Rational};
