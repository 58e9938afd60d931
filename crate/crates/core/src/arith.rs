//! Exact modular arithmetic on `Z_n`: factorization, units, inverses and the
//! Chinese-remainder split into prime-power components.
//!
//! Residues are stored as `u64` and moduli used for tables and braces are at
//! most `2^31`, so the product of two residues always fits before reduction.
//! Factorization and counting accept larger inputs (trial division up to
//! [`MAX_FACTOR_INPUT`]) because the prime-power census reaches `7^15`.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use crate::error::{Error, Result};

/// Largest modulus accepted by residue arithmetic, braces and solutions.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Largest integer [`factorize`] accepts.
pub const MAX_FACTOR_INPUT: u64 = 1 << 50;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1 % n;
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

/// Deterministic trial-division primality check.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInt {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInt {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(p_i, k_i)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The prime-power components `p_i^{k_i}` in prime order.
    pub fn prime_powers(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, k)| p.pow(k)).collect()
    }

    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, k)| k).max().unwrap_or(0)
    }

    /// Exponent of `p` in `n` (zero when `p` does not divide `n`).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map(|&(_, k)| k)
            .unwrap_or(0)
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, k)| {
                if k == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Factor `n` by trial division. `n = 1` yields the empty factorization.
pub fn factorize(n: u64) -> Result<FactoredInt> {
    if n == 0 || n > MAX_FACTOR_INPUT {
        return Err(Error::InvalidParameters(format!(
            "cannot factor {n}: expected 1 <= n <= 2^50"
        )));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut k = 0;
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            factors.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredInt { n, factors })
}

pub fn euler_phi(n: u64) -> u64 {
    let f = factorize(n).expect("phi of a supported positive integer");
    f.factors().iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: &FactoredInt) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, k) in n.factors() {
        let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
        for &d in &out {
            let mut q = d;
            for _ in 0..=k {
                next.push(q);
                q *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

/// `t mod n` lies in the nilradical of `Z_n`, i.e. every prime of `n` divides `t`.
pub fn is_nilpotent(t: u64, n: &FactoredInt) -> bool {
    let t = t % n.n();
    t == 0 || n.factors().iter().all(|&(p, _)| t % p == 0)
}

/// The products `p_1^{t_1}···p_s^{t_s}` with `1 <= t_i <= k_i`, ascending.
pub fn canonical_nilpotents(n: &FactoredInt) -> Vec<u64> {
    if n.n() == 1 {
        return Vec::new();
    }
    let mut out = vec![1u64];
    for &(p, k) in n.factors() {
        let mut next = Vec::new();
        for &d in &out {
            let mut q = d * p;
            for _ in 1..=k {
                next.push(q);
                q *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

/// An element of `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` modulo `modulus`.
    pub fn new(value: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(Error::ModulusOutOfRange(modulus));
        }
        Ok(Residue {
            value: value % modulus,
            modulus,
        })
    }

    pub fn from_signed(value: i64, modulus: u64) -> Result<Self> {
        if modulus == 0 || modulus > MAX_MODULUS {
            return Err(Error::ModulusOutOfRange(modulus));
        }
        Ok(Residue {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }
}

impl Add for Residue {
    type Output = Residue;

    fn add(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        Residue {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;

    fn mul(self, other: Residue) -> Residue {
        debug_assert_eq!(self.modulus, other.modulus);
        Residue {
            value: mul_mod(self.value, other.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Residues coprime to `n`, ascending. By convention `units(1) = {0}`.
pub fn units(n: u64) -> Result<Vec<Residue>> {
    if n == 0 || n > MAX_MODULUS {
        return Err(Error::ModulusOutOfRange(n));
    }
    if n == 1 {
        return Ok(vec![Residue {
            value: 0,
            modulus: 1,
        }]);
    }
    Ok((1..n)
        .filter(|&x| gcd(x, n) == 1)
        .map(|value| Residue { value, modulus: n })
        .collect())
}

/// Extended Euclid: returns `(g, x)` with `a·x ≡ g (mod m)`.
fn ext_gcd(a: i128, m: i128) -> (i128, i128) {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r, old_s)
}

pub fn mod_inverse(a: Residue) -> Result<Residue> {
    let n = a.modulus;
    if n == 1 {
        return Ok(a);
    }
    let (g, x) = ext_gcd(a.value as i128, n as i128);
    if g != 1 {
        return Err(Error::NotInvertible {
            value: a.value,
            modulus: n,
        });
    }
    Ok(Residue {
        value: x.rem_euclid(n as i128) as u64,
        modulus: n,
    })
}

/// Inverse of `a` modulo `n` on raw integers.
pub fn inverse_mod(a: u64, n: u64) -> Result<u64> {
    mod_inverse(Residue::new(a, n)?).map(Residue::value)
}

/// Reduce `x` into each prime-power component of `n`.
pub fn crt_split(x: Residue, n: &FactoredInt) -> Result<Vec<Residue>> {
    if x.modulus != n.n() {
        return Err(Error::ModulusMismatch { n: n.n() });
    }
    n.prime_powers()
        .into_iter()
        .map(|q| Residue::new(x.value % q, q))
        .collect()
}

/// Reassemble a residue mod `n` from its prime-power components.
pub fn crt_join(parts: &[Residue], n: &FactoredInt) -> Result<Residue> {
    let moduli = n.prime_powers();
    if parts.len() != moduli.len() || parts.iter().zip(&moduli).any(|(r, &q)| r.modulus != q) {
        return Err(Error::ModulusMismatch { n: n.n() });
    }
    let total = n.n();
    let mut acc = 0u64;
    for (r, &q) in parts.iter().zip(&moduli) {
        let cofactor = total / q;
        let inv = inverse_mod(cofactor % q, q)?;
        let basis = mul_mod(cofactor, inv, total);
        acc = (acc + mul_mod(r.value, basis, total)) % total;
    }
    Residue::new(acc, total)
}

/// Least `s >= 0` with `n | t^s`, or `None` when no power of `t` vanishes.
pub fn nilpotency_index(t: u64, n: &FactoredInt) -> Option<u32> {
    let mut s = 0u32;
    for &(p, k) in n.factors() {
        let mut e = 0u32;
        let mut q = t;
        if q == 0 {
            // t = 0 (equivalently t = n): one factor suffices
            s = s.max(1);
            continue;
        }
        while q % p == 0 {
            q /= p;
            e += 1;
        }
        if e == 0 {
            return None;
        }
        s = s.max(k.div_ceil(e));
    }
    Some(s)
}
