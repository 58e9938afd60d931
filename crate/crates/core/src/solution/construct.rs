//! Constructors for the cocyclic families on `Z_n`.
//!
//! * `Standard`: `σ_b(c) = a + c + tab + tac + t²abc (mod n)`.
//! * `Tilde4`: the four-element level-2 solution `σ_b(c) = a + c + 2ab (mod 4)`.
//! * `FourN`: on `Z_{4m}` with `m` odd,
//!   `σ_b(c) = a + c + 2tab + 4t·h·ac + 4t²abc (mod 4m)` where `2h ≡ 1 (mod m)`.
//!
//! In every case `τ` is the involutive completion of `σ`.

use std::fmt;

use crate::arith::{factorize, gcd, inverse_mod, is_nilpotent, mul_mod, MAX_MODULUS};
use crate::error::{Error, Result};
use crate::solution::table::MAX_TABLE_SIZE;
use crate::solution::SolutionTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Standard,
    Tilde4,
    FourN,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Standard => "standard",
            Family::Tilde4 => "tilde4",
            Family::FourN => "fourn",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Family::Standard),
            "tilde4" => Ok(Family::Tilde4),
            "fourn" => Ok(Family::FourN),
            other => Err(Error::InvalidParameters(format!(
                "unknown family '{other}'"
            ))),
        }
    }
}

/// Validated parameters of one constructed solution.
///
/// `t` and `a` are stored reduced modulo `n`. For `Standard`, `t = n` is stored
/// as `0`. For `FourN`, `t` is odd and only its reduction modulo the odd part
/// `m = n/4` has to be nilpotent; its residue modulo `4` matters, so it is
/// never collapsed to `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KParams {
    n: u64,
    t: u64,
    a: u64,
    family: Family,
}

fn check_modulus(n: u64) -> Result<()> {
    if n == 0 || n > MAX_MODULUS {
        Err(Error::ModulusOutOfRange(n))
    } else {
        Ok(())
    }
}

fn check_unit(a: u64, n: u64) -> Result<()> {
    if gcd(a % n, n) != 1 {
        Err(Error::InvalidParameters(format!(
            "a = {a} is not a unit modulo {n}"
        )))
    } else {
        Ok(())
    }
}

impl KParams {
    pub fn standard(n: u64, t: u64, a: u64) -> Result<Self> {
        check_modulus(n)?;
        let f = factorize(n)?;
        if !is_nilpotent(t, &f) {
            return Err(Error::NotNilpotent { t, n });
        }
        check_unit(a, n)?;
        let t = t % n;
        if n % 4 == 0 && t % 4 != 0 {
            return Err(Error::InvalidParameters(format!(
                "4 | n requires 4 | t for a cyclic permutation group (n = {n}, t = {t}); \
                 use the tilde4 or fourn family"
            )));
        }
        Ok(KParams {
            n,
            t,
            a: a % n,
            family: Family::Standard,
        })
    }

    pub fn tilde4(a: u64) -> Result<Self> {
        check_unit(a, 4)?;
        Ok(KParams {
            n: 4,
            t: 2,
            a: a % 4,
            family: Family::Tilde4,
        })
    }

    pub fn four_n(n: u64, t: u64, a: u64) -> Result<Self> {
        check_modulus(n)?;
        if n % 8 != 4 {
            return Err(Error::InvalidParameters(format!(
                "fourn family needs n ≡ 4 (mod 8), got {n}"
            )));
        }
        let m = n / 4;
        let t = t % n;
        if t % 2 == 0 {
            return Err(Error::InvalidParameters(format!(
                "fourn family needs odd t, got {t}"
            )));
        }
        if !is_nilpotent(t, &factorize(m)?) {
            return Err(Error::NotNilpotent { t, n: m });
        }
        check_unit(a, n)?;
        Ok(KParams {
            n,
            t,
            a: a % n,
            family: Family::FourN,
        })
    }

    pub fn new(family: Family, n: u64, t: u64, a: u64) -> Result<Self> {
        match family {
            Family::Standard => Self::standard(n, t, a),
            Family::Tilde4 => {
                if n != 4 || t % 4 != 2 {
                    return Err(Error::InvalidParameters(
                        "tilde4 family requires n = 4 and t = 2".into(),
                    ));
                }
                Self::tilde4(a)
            }
            Family::FourN => Self::four_n(n, t, a),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// `σ_b(c)` evaluated directly from the formula.
    pub fn sigma(&self, b: u64, c: u64) -> u64 {
        let n = self.n;
        let (t, a) = (self.t, self.a);
        match self.family {
            Family::Standard => {
                let ab = mul_mod(a, b, n);
                let ac = mul_mod(a, c, n);
                let tt = mul_mod(t, t, n);
                let abc = mul_mod(ab, c, n);
                (a + c + mul_mod(t, ab, n) + mul_mod(t, ac, n) + mul_mod(tt, abc, n)) % n
            }
            Family::Tilde4 => (a + c + 2 * a * b) % 4,
            Family::FourN => {
                let m = n / 4;
                let half = if m == 1 {
                    0
                } else {
                    inverse_mod(2, m).expect("m is odd")
                };
                let ab = mul_mod(a, b, n);
                let ac = mul_mod(a, c, n);
                let abc = mul_mod(ab, c, n);
                let two_t = mul_mod(2, t, n);
                let four_t_half = mul_mod(mul_mod(4, t, n), half, n);
                let four_tt = mul_mod(4, mul_mod(t, t, n), n);
                (a + c
                    + mul_mod(two_t, ab, n)
                    + mul_mod(four_t_half, ac, n)
                    + mul_mod(four_tt, abc, n))
                    % n
            }
        }
    }

    /// Multipermutation level predicted from the parameters.
    pub fn predicted_level(&self) -> u32 {
        let f = factorize(self.n).expect("validated modulus");
        match self.family {
            Family::Standard => crate::arith::nilpotency_index(self.t, &f).expect("nilpotent t"),
            Family::Tilde4 => 2,
            Family::FourN => {
                let m = factorize(self.n / 4).expect("validated modulus");
                crate::arith::nilpotency_index(self.t % m.n(), &m)
                    .expect("nilpotent t")
                    .max(2)
            }
        }
    }
}

impl fmt::Display for KParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Standard => write!(f, "K({},{},{})", self.n, self.t, self.a),
            Family::Tilde4 => write!(f, "K~(4,2,{})", self.a),
            Family::FourN => write!(f, "K4n({},{},{})", self.n, self.t, self.a),
        }
    }
}

/// Materialize the solution table for `p`.
pub fn make_k(p: &KParams) -> Result<SolutionTable> {
    let n = p.n as usize;
    if n > MAX_TABLE_SIZE {
        return Err(Error::Resource(format!(
            "carrier of size {n} exceeds the table limit {MAX_TABLE_SIZE}"
        )));
    }
    let mut sigma = Vec::with_capacity(n * n);
    for b in 0..p.n {
        for c in 0..p.n {
            sigma.push(p.sigma(b, c) as u32);
        }
    }
    SolutionTable::from_flat_sigma(n, sigma)
}

/// The solutions `σ_x(y) = rx + y + 1`, `τ_y(x) = x − 1 − r(y + 1)` on `Z_n`,
/// with tables taken literally and then verified.
pub fn rump_example(n: u64, r: u64) -> Result<SolutionTable> {
    check_modulus(n)?;
    if n as usize > MAX_TABLE_SIZE {
        return Err(Error::Resource(format!("carrier of size {n} is too large")));
    }
    if !is_nilpotent(r, &factorize(n)?) {
        return Err(Error::NotNilpotent { t: r, n });
    }
    let r = r % n;
    let size = n as usize;
    let mut sigma = Vec::with_capacity(size * size);
    let mut tau = Vec::with_capacity(size * size);
    for x in 0..n {
        for y in 0..n {
            sigma.push(((mul_mod(r, x, n) + y + 1) % n) as u32);
            // x − 1 − r(y+1) computed as x + (n−1) + (n − r(y+1) mod n)
            let ry = mul_mod(r, (y + 1) % n, n);
            tau.push(((x + (n - 1) + (n - ry)) % n) as u32);
        }
    }
    let s = SolutionTable::from_flat(size, sigma, tau);
    let report = s.verify();
    if !report.all_pass() {
        return Err(Error::InvalidParameters(format!(
            "the tables for n = {n}, r = {r} do not form a solution ({report:?})"
        )));
    }
    Ok(s)
}
