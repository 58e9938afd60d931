//! Isomorphism of solutions: a backtracking bijection search and the
//! closed-form congruence criterion for the constructed families.

use crate::arith::{gcd, inverse_mod, mul_mod};
use crate::error::{Error, Result};
use crate::solution::construct::{Family, KParams};
use crate::solution::group::Permutation;
use crate::solution::SolutionTable;

/// Default size cap for the bijection search.
pub const DEFAULT_ISO_CAP: usize = 16;

/// Configuration of the bijection search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoSearch {
    pub max_size: usize,
}

impl Default for IsoSearch {
    fn default() -> Self {
        IsoSearch {
            max_size: DEFAULT_ISO_CAP,
        }
    }
}

/// Result of an exhaustive search, with the number of search nodes visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<Permutation>,
    pub nodes: u64,
}

impl IsoSearch {
    pub fn with_cap(max_size: usize) -> Self {
        IsoSearch { max_size }
    }

    /// Lexicographically least bijection `Φ` (as the image vector) with
    /// `Φ(σ_b(c)) = σ'_{Φ(b)}(Φ(c))`, or `None` when none exists.
    pub fn find(&self, s1: &SolutionTable, s2: &SolutionTable) -> Result<Option<Permutation>> {
        self.search(s1, s2).map(|o| o.witness)
    }

    pub fn search(&self, s1: &SolutionTable, s2: &SolutionTable) -> Result<SearchOutcome> {
        if s1.size() != s2.size() {
            return Ok(SearchOutcome {
                witness: None,
                nodes: 0,
            });
        }
        let n = s1.size();
        if n > self.max_size {
            return Err(Error::Resource(format!(
                "bijection search on {n} points exceeds the cap {}; \
                 use the closed-form criterion or raise the cap",
                self.max_size
            )));
        }
        let mut state = Search::new(s1, s2);
        let found = state.run();
        let nodes = state.nodes;
        let witness = if found {
            let images = state.phi.iter().map(|v| v.unwrap() as u32).collect();
            let phi = Permutation::from_images(images)?;
            debug_assert!(is_isomorphism(s1, s2, &phi));
            Some(phi)
        } else {
            None
        };
        Ok(SearchOutcome { witness, nodes })
    }
}

/// `isomorphic_bruteforce` with the default cap.
pub fn isomorphic_bruteforce(
    s1: &SolutionTable,
    s2: &SolutionTable,
) -> Result<Option<Permutation>> {
    IsoSearch::default().find(s1, s2)
}

/// Checks `Φ(σ_b(c)) = σ'_{Φb}(Φc)` and `Φ(τ_c(b)) = τ'_{Φc}(Φb)` for all `b, c`.
pub fn is_isomorphism(s1: &SolutionTable, s2: &SolutionTable, phi: &Permutation) -> bool {
    let n = s1.size();
    if s2.size() != n || phi.degree() != n {
        return false;
    }
    (0..n).all(|b| {
        (0..n).all(|c| {
            let (pb, pc) = (phi.apply(b), phi.apply(c));
            phi.apply(s1.sigma(b, c)) == s2.sigma(pb, pc)
                && phi.apply(s1.tau(b, c)) == s2.tau(pb, pc)
        })
    })
}

struct Search<'a> {
    s1: &'a SolutionTable,
    s2: &'a SolutionTable,
    n: usize,
    phi: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(s1: &'a SolutionTable, s2: &'a SolutionTable) -> Self {
        let n = s1.size();
        Search {
            s1,
            s2,
            n,
            phi: vec![None; n],
            used: vec![false; n],
            assigned: Vec::with_capacity(n),
            nodes: 0,
        }
    }

    fn assign(&mut self, x: usize, v: usize) {
        self.phi[x] = Some(v);
        self.used[v] = true;
        self.assigned.push(x);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().unwrap();
            let v = self.phi[x].take().unwrap();
            self.used[v] = false;
        }
    }

    /// Check one constraint `Φ(σ_b(c)) = σ'_{Φb}(Φc)`, extending Φ when forced.
    fn constrain(&mut self, b: usize, c: usize, queue: &mut Vec<usize>) -> bool {
        let (pb, pc) = (self.phi[b].unwrap(), self.phi[c].unwrap());
        let src = self.s1.sigma(b, c);
        let dst = self.s2.sigma(pb, pc);
        match self.phi[src] {
            Some(v) => v == dst,
            None => {
                if self.used[dst] {
                    return false;
                }
                self.assign(src, dst);
                queue.push(src);
                true
            }
        }
    }

    /// Propagate the consequences of the newly assigned points in `queue`.
    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(x) = queue.pop() {
            // points assigned during this loop are checked when they are popped
            let known = self.assigned.len();
            for i in 0..known {
                let y = self.assigned[i];
                if !self.constrain(x, y, &mut queue) || !self.constrain(y, x, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self) -> bool {
        let Some(x) = (0..self.n).find(|&i| self.phi[i].is_none()) else {
            return true;
        };
        for v in 0..self.n {
            if self.used[v] {
                continue;
            }
            self.nodes += 1;
            let mark = self.assigned.len();
            self.assign(x, v);
            if self.propagate(vec![x]) && self.run() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// A certificate `(1 + h)·a ≡ a'·(1 + z·t) (mod n)` with `h` in the socle of `B_t(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsomorphismWitness {
    pub h: u64,
    pub z: u64,
}

/// Verdict of the closed-form criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KIsoVerdict {
    pub isomorphic: bool,
    /// Modulus of the congruence on `a` (`gcd(t, n/t)` for the standard family).
    pub modulus: u64,
    pub witness: Option<IsomorphismWitness>,
}

/// `gcd(g, n/g)` with `g = gcd(t, n)` (so `t = 0` reads as `t = n`).
pub fn congruence_modulus(n: u64, t: u64) -> u64 {
    let g = gcd(t % n, n);
    let g = if g == 0 { n } else { g };
    gcd(g, n / g)
}

/// Solve `(1 + h)a ≡ a'(1 + zt) (mod n)` over `h` in `{h : th ≡ 0}`.
fn find_witness(n: u64, t: u64, a: u64, a2: u64) -> Option<IsomorphismWitness> {
    let g = {
        let g = gcd(t, n);
        if g == 0 {
            n
        } else {
            g
        }
    };
    let a2_inv = inverse_mod(a2, n).ok()?;
    let step = n / g;
    for j in 0..g {
        let h = j * step;
        // v = (1+h)·a·a'^{-1} − 1 must equal z·t
        let v = (mul_mod(mul_mod((1 + h) % n, a, n), a2_inv, n) + n - 1 % n) % n;
        if v % g != 0 {
            continue;
        }
        let z = if t % n == 0 {
            if v != 0 {
                continue;
            }
            0
        } else {
            let m = n / g;
            let tg = (t / g) % m;
            let inv = if m == 1 { 0 } else { inverse_mod(tg, m).ok()? };
            mul_mod(v / g, inv, m.max(1))
        };
        debug_assert_eq!(
            mul_mod((1 + h) % n, a, n),
            mul_mod(a2, (1 + mul_mod(z, t, n)) % n, n)
        );
        return Some(IsomorphismWitness { h, z });
    }
    None
}

/// Closed-form isomorphism test for two parameter sets in the same `(n, t, family)`.
pub fn isomorphic_k(p1: &KParams, p2: &KParams) -> Result<KIsoVerdict> {
    if p1.n() != p2.n() || p1.t() != p2.t() || p1.family() != p2.family() {
        return Err(Error::FamilyMismatch);
    }
    let n = p1.n();
    match p1.family() {
        Family::Standard => {
            let d = congruence_modulus(n, p1.t());
            let isomorphic = p1.a() % d == p2.a() % d;
            let witness = if isomorphic {
                find_witness(n, p1.t(), p1.a(), p2.a())
            } else {
                None
            };
            Ok(KIsoVerdict {
                isomorphic,
                modulus: d,
                witness,
            })
        }
        Family::Tilde4 => Ok(KIsoVerdict {
            isomorphic: true,
            modulus: 1,
            witness: None,
        }),
        Family::FourN => {
            // the class is that of K(m, t, 2a) on the odd part; 2 is a unit there
            let m = n / 4;
            let d = congruence_modulus(m, p1.t() % m);
            let d = if m == 1 { 1 } else { d };
            Ok(KIsoVerdict {
                isomorphic: p1.a() % d == p2.a() % d,
                modulus: d,
                witness: None,
            })
        }
    }
}

/// The isomorphism `x ↦ r^{-1}x` from `K(n,t,a)` to `K(n, rt, a·r^{-1})`.
pub fn scaling_map(n: u64, r: u64) -> Result<Permutation> {
    let inv = inverse_mod(r, n)?;
    Permutation::from_images((0..n).map(|x| mul_mod(inv, x, n) as u32).collect())
}
