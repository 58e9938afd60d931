//! Splitting a constructed solution into prime-power components.
//!
//! For `K(n, t, a)` with `t = t_1···t_s` the map
//! `x ↦ ((t/t_i)·x mod p_i^{k_i})_i` is an isomorphism onto
//! `∏ K(p_i^{k_i}, t_i, (t/t_i)·a)`. For the `FourN` family on `Z_{4m}` the map
//! `x ↦ (t·x mod 4, 2x mod m)` is an isomorphism onto
//! `K~(4, 2, ta mod 4) × K(m, t, 2a mod m)`.

use crate::arith::{factorize, mul_mod};
use crate::error::{Error, Result};
use crate::solution::construct::{make_k, Family, KParams};
use crate::solution::group::Permutation;
use crate::solution::iso::is_isomorphism;
use crate::solution::SolutionTable;

/// `Φ(x) = (multiplier_i · x mod modulus_i)_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness {
    pub moduli: Vec<u64>,
    pub multipliers: Vec<u64>,
}

impl SplitWitness {
    pub fn apply(&self, x: u64) -> Vec<u64> {
        self.moduli
            .iter()
            .zip(&self.multipliers)
            .map(|(&q, &c)| mul_mod(c, x, q))
            .collect()
    }

    /// Position of `Φ(x)` in the lexicographically indexed product carrier.
    pub fn index(&self, x: u64) -> u64 {
        self.apply(x)
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&v, &q)| acc * q + v)
    }

    pub fn as_permutation(&self, n: u64) -> Result<Permutation> {
        Permutation::from_images((0..n).map(|x| self.index(x) as u32).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub source: KParams,
    pub components: Vec<KParams>,
    pub witness: SplitWitness,
}

impl Split {
    /// Product of the component tables in order.
    pub fn product_table(&self) -> Result<SolutionTable> {
        let mut it = self.components.iter();
        let first = make_k(it.next().expect("at least one component"))?;
        it.try_fold(first, |acc, p| acc.product(&make_k(p)?))
    }

    /// Check entrywise that the witness is a solution isomorphism onto the product.
    pub fn certify(&self) -> Result<bool> {
        let source = make_k(&self.source)?;
        let target = self.product_table()?;
        let phi = match self.witness.as_permutation(self.source.n()) {
            Ok(p) => p,
            Err(_) => return Ok(false),
        };
        Ok(is_isomorphism(&source, &target, &phi))
    }
}

/// Decompose `p` into prime-power components with the witness map.
pub fn split_solution(p: &KParams) -> Result<Split> {
    let n = p.n();
    match p.family() {
        Family::Tilde4 => Ok(identity_split(p)),
        Family::Standard => {
            let f = factorize(n)?;
            if f.factors().len() <= 1 {
                return Ok(identity_split(p));
            }
            // t = 0 stands for t = n
            let t = if p.t() == 0 { n } else { p.t() };
            let mut parts = Vec::new();
            let mut rest = t;
            for &(q, k) in f.factors() {
                let mut ti = 1u64;
                let mut e = 0;
                while rest % q == 0 {
                    rest /= q;
                    ti *= q;
                    e += 1;
                }
                if e == 0 || e > k {
                    return Err(Error::InvalidParameters(format!(
                        "t = {t} is not of the form p_1^t_1···p_s^t_s with 1 <= t_i <= k_i for n = {n}"
                    )));
                }
                parts.push((q.pow(k), ti));
            }
            if rest != 1 {
                return Err(Error::InvalidParameters(format!(
                    "t = {t} has prime factors not dividing n = {n}"
                )));
            }
            let mut components = Vec::new();
            let mut moduli = Vec::new();
            let mut multipliers = Vec::new();
            for &(qk, ti) in &parts {
                let cofactor = (t / ti) % qk;
                components.push(KParams::standard(qk, ti, mul_mod(cofactor, p.a(), qk))?);
                moduli.push(qk);
                multipliers.push(cofactor);
            }
            Ok(Split {
                source: *p,
                components,
                witness: SplitWitness {
                    moduli,
                    multipliers,
                },
            })
        }
        Family::FourN => {
            let m = n / 4;
            let t = p.t();
            let tilde = KParams::tilde4(mul_mod(t, p.a(), 4))?;
            if m == 1 {
                return Ok(Split {
                    source: *p,
                    components: vec![tilde],
                    witness: SplitWitness {
                        moduli: vec![4],
                        multipliers: vec![t % 4],
                    },
                });
            }
            let odd = KParams::standard(m, t % m, mul_mod(2, p.a(), m))?;
            Ok(Split {
                source: *p,
                components: vec![tilde, odd],
                witness: SplitWitness {
                    moduli: vec![4, m],
                    multipliers: vec![t % 4, 2 % m],
                },
            })
        }
    }
}

fn identity_split(p: &KParams) -> Split {
    Split {
        source: *p,
        components: vec![*p],
        witness: SplitWitness {
            moduli: vec![p.n()],
            multipliers: vec![1 % p.n()],
        },
    }
}
