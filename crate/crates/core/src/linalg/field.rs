use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = (1 << 31) - 1;

const MERSENNE31: u64 = DEFAULT_PRIME;

/// Deterministic Miller-Rabin; exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let odd = (n - 1) >> s;
    'witness: for &w in &WITNESSES {
        let mut x = pow(w, odd);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Integers modulo a prime `p < 2^63`. Elements are plain `u64` in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::OutOfRange(format!("modulus {p} must be below 2^63")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Products of two reduced elements fit in a `u64`.
    #[inline]
    fn is_small(&self) -> bool {
        self.p < 1 << 32
    }

    /// Reduces `x < p^2` when the modulus is small.
    #[inline(always)]
    fn reduce_small(&self, x: u64) -> u64 {
        if self.p == MERSENNE31 {
            let x = (x & MERSENNE31) + (x >> 31);
            let x = (x & MERSENNE31) + (x >> 31);
            if x >= MERSENNE31 {
                x - MERSENNE31
            } else {
                x
            }
        } else {
            x % self.p
        }
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.is_small() {
            self.reduce_small(a * b)
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        field_inverse(a, self.p)
    }

    /// `dst[j] += factor * src[j]` for all `j`.
    #[inline]
    pub fn axpy(&self, dst: &mut [u64], src: &[u64], factor: u64) {
        debug_assert_eq!(dst.len(), src.len());
        if factor == 0 {
            return;
        }
        if self.is_small() {
            // (p-1)^2 + (p-1) < 2^64 for p < 2^32
            for (x, &y) in dst.iter_mut().zip(src) {
                *x = self.reduce_small(*x + factor * y);
            }
        } else {
            for (x, &y) in dst.iter_mut().zip(src) {
                *x = self.add(*x, self.mul(factor, y));
            }
        }
    }

    pub fn scale(&self, row: &mut [u64], factor: u64) {
        for x in row {
            *x = self.mul(*x, factor);
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(1..self.p)
    }
}

/// Inverse of `a` modulo the prime `p` by the extended Euclidean algorithm.
pub fn field_inverse(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::ZeroInverse);
    }
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    Ok(old_s.rem_euclid(p as i128) as u64)
}
