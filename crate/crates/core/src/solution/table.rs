use rayon::prelude::*;

use crate::error::{Error, Result};

/// A finite set-theoretic solution on `{0..n-1}`.
///
/// `sigma(x, y)` is `σ_x(y)` (row `x` of the sigma table is the permutation
/// `σ_x`) and `tau(x, y)` is `τ_y(x)` (column `y` of the tau table is the
/// permutation `τ_y`), so the solution map is `r(x, y) = (sigma(x, y), tau(x, y))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionTable {
    n: usize,
    sigma: Vec<u32>,
    tau: Vec<u32>,
}

/// Outcome of the three exhaustive axiom checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyReport {
    pub non_degenerate: bool,
    pub involutive: bool,
    pub braid: bool,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.non_degenerate && self.involutive && self.braid
    }
}

/// Largest carrier for which full tables are materialized.
pub const MAX_TABLE_SIZE: usize = 2048;

fn is_permutation(values: impl Iterator<Item = u32>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for v in values {
        let v = v as usize;
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::MalformedTable("empty carrier".into()));
    }
    if n > MAX_TABLE_SIZE {
        return Err(Error::Resource(format!(
            "carrier of size {n} exceeds the table limit {MAX_TABLE_SIZE}"
        )));
    }
    Ok(())
}

fn flatten(rows: &[Vec<u32>], n: usize, name: &str) -> Result<Vec<u32>> {
    if rows.len() != n {
        return Err(Error::MalformedTable(format!(
            "{name} has {} rows, expected {n}",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!(
                "{name} row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&v) = row.iter().find(|&&v| v as usize >= n) {
            return Err(Error::MalformedTable(format!(
                "{name} row {i} contains {v}, outside 0..{n}"
            )));
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

/// Involutive completion: `τ_y(x) = σ^{-1}_{σ_x(y)}(x)`.
pub fn tau_from_sigma(sigma: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let n = sigma.len();
    check_size(n)?;
    let flat = flatten(sigma, n, "sigma")?;
    let tau = complete_tau(&flat, n)?;
    Ok(tau.chunks(n).map(<[u32]>::to_vec).collect())
}

fn complete_tau(sigma: &[u32], n: usize) -> Result<Vec<u32>> {
    let mut inv = vec![0u32; n * n];
    for x in 0..n {
        let row = &sigma[x * n..(x + 1) * n];
        if !is_permutation(row.iter().copied(), n) {
            return Err(Error::MalformedTable(format!(
                "sigma row {x} is not a bijection"
            )));
        }
        for (y, &v) in row.iter().enumerate() {
            inv[x * n + v as usize] = y as u32;
        }
    }
    let mut tau = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let u = sigma[x * n + y] as usize;
            tau[x * n + y] = inv[u * n + x];
        }
    }
    Ok(tau)
}

impl SolutionTable {
    /// Build from explicit tables, checking only shape and range.
    pub fn from_tables(sigma: &[Vec<u32>], tau: &[Vec<u32>]) -> Result<Self> {
        let n = sigma.len();
        check_size(n)?;
        let sigma = flatten(sigma, n, "sigma")?;
        let tau = flatten(tau, n, "tau")?;
        Ok(SolutionTable { n, sigma, tau })
    }

    /// Build from a sigma table, completing tau involutively.
    pub fn from_sigma(sigma: &[Vec<u32>]) -> Result<Self> {
        let n = sigma.len();
        check_size(n)?;
        let sigma = flatten(sigma, n, "sigma")?;
        Self::from_flat_sigma(n, sigma)
    }

    /// Build from a sigma function, completing tau involutively.
    pub fn from_sigma_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        check_size(n)?;
        let mut sigma = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "sigma({x},{y}) = {v} is outside 0..{n}"
                    )));
                }
                sigma.push(v as u32);
            }
        }
        Self::from_flat_sigma(n, sigma)
    }

    pub(crate) fn from_flat_sigma(n: usize, sigma: Vec<u32>) -> Result<Self> {
        let tau = complete_tau(&sigma, n)?;
        Ok(SolutionTable { n, sigma, tau })
    }

    pub(crate) fn from_flat(n: usize, sigma: Vec<u32>, tau: Vec<u32>) -> Self {
        debug_assert_eq!(sigma.len(), n * n);
        debug_assert_eq!(tau.len(), n * n);
        SolutionTable { n, sigma, tau }
    }

    /// The flip solution `r(x, y) = (y, x)`.
    pub fn flip(n: usize) -> Result<Self> {
        check_size(n)?;
        let sigma: Vec<u32> = (0..n).flat_map(|_| 0..n as u32).collect();
        let tau: Vec<u32> = (0..n)
            .flat_map(|x| std::iter::repeat_n(x as u32, n))
            .collect();
        Ok(SolutionTable { n, sigma, tau })
    }

    pub fn trivial() -> Self {
        SolutionTable {
            n: 1,
            sigma: vec![0],
            tau: vec![0],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sigma(&self, x: usize, y: usize) -> usize {
        self.sigma[x * self.n + y] as usize
    }

    /// `τ_y(x)`.
    #[inline]
    pub fn tau(&self, x: usize, y: usize) -> usize {
        self.tau[x * self.n + y] as usize
    }

    /// The permutation `σ_x` as a slice.
    pub fn sigma_row(&self, x: usize) -> &[u32] {
        &self.sigma[x * self.n..(x + 1) * self.n]
    }

    pub fn sigma_rows(&self) -> Vec<Vec<u32>> {
        self.sigma.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    pub fn tau_rows(&self) -> Vec<Vec<u32>> {
        self.tau.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    pub(crate) fn sigma_flat(&self) -> &[u32] {
        &self.sigma
    }

    /// `r(x, y) = (σ_x(y), τ_y(x))`.
    #[inline]
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        let i = x * self.n + y;
        (self.sigma[i] as usize, self.tau[i] as usize)
    }

    pub fn is_non_degenerate(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| is_permutation(self.sigma_row(x).iter().copied(), n))
            && (0..n).all(|y| is_permutation((0..n).map(|x| self.tau[x * n + y]), n))
    }

    pub fn is_involutive(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let (u, v) = self.r(x, y);
                self.r(u, v) == (x, y)
            })
        })
    }

    /// Exhaustive check of `(id×r)(r×id)(id×r) = (r×id)(id×r)(r×id)` on all triples.
    pub fn satisfies_braid(&self) -> bool {
        let n = self.n;
        (0..n).into_par_iter().all(|x| {
            for y in 0..n {
                for z in 0..n {
                    // (id×r)(r×id)(id×r)
                    let (y1, z1) = self.r(y, z);
                    let (x2, y2) = self.r(x, y1);
                    let (y3, z3) = self.r(y2, z1);
                    let left = (x2, y3, z3);
                    // (r×id)(id×r)(r×id)
                    let (x1, y1) = self.r(x, y);
                    let (y2, z2) = self.r(y1, z);
                    let (x3, y3) = self.r(x1, y2);
                    if left != (x3, y3, z2) {
                        return false;
                    }
                }
            }
            true
        })
    }

    pub fn verify(&self) -> VerifyReport {
        VerifyReport {
            non_degenerate: self.is_non_degenerate(),
            involutive: self.is_involutive(),
            braid: self.satisfies_braid(),
        }
    }

    /// Direct product on pairs, indexed lexicographically as `i·n2 + j`.
    pub fn product(&self, other: &SolutionTable) -> Result<SolutionTable> {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        check_size(n)?;
        let mut sigma = vec![0u32; n * n];
        let mut tau = vec![0u32; n * n];
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                let x = x1 * n2 + x2;
                for y1 in 0..n1 {
                    for y2 in 0..n2 {
                        let y = y1 * n2 + y2;
                        sigma[x * n + y] = (self.sigma(x1, y1) * n2 + other.sigma(x2, y2)) as u32;
                        tau[x * n + y] = (self.tau(x1, y1) * n2 + other.tau(x2, y2)) as u32;
                    }
                }
            }
        }
        Ok(SolutionTable { n, sigma, tau })
    }

    /// Relabel the carrier along the bijection `phi`: the result satisfies
    /// `σ'_{phi(x)}(phi(y)) = phi(σ_x(y))`.
    pub fn relabel(&self, phi: &[u32]) -> Result<SolutionTable> {
        let n = self.n;
        if phi.len() != n || !is_permutation(phi.iter().copied(), n) {
            return Err(Error::MalformedTable(
                "relabeling is not a bijection".into(),
            ));
        }
        let mut sigma = vec![0u32; n * n];
        let mut tau = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let i = phi[x] as usize * n + phi[y] as usize;
                sigma[i] = phi[self.sigma(x, y)];
                tau[i] = phi[self.tau(x, y)];
            }
        }
        Ok(SolutionTable { n, sigma, tau })
    }
}

/// Product of the solutions in order (left fold of [`SolutionTable::product`]).
pub fn product_solution(s1: &SolutionTable, s2: &SolutionTable) -> Result<SolutionTable> {
    s1.product(s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_passes_all_checks() {
        let f = SolutionTable::flip(5).unwrap();
        assert!(f.verify().all_pass());
        assert_eq!(SolutionTable::trivial().verify(), f.verify());
    }

    #[test]
    fn identity_sigma_completes_to_identity_tau() {
        let sigma: Vec<Vec<u32>> = (0..4).map(|_| (0..4).collect()).collect();
        let tau = tau_from_sigma(&sigma).unwrap();
        // τ_y = id means tau(x, y) = x
        for (x, row) in tau.iter().enumerate() {
            assert!(row.iter().all(|&v| v as usize == x));
        }
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(matches!(
            SolutionTable::from_tables(&[vec![0, 1], vec![0]], &[vec![0, 1], vec![0, 1]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            SolutionTable::from_tables(&[vec![0, 2], vec![0, 1]], &[vec![0, 1], vec![0, 1]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            tau_from_sigma(&[vec![0, 0], vec![0, 1]]),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn degenerate_tables_fail_non_degeneracy() {
        let s = SolutionTable::from_tables(&[vec![0, 0], vec![1, 1]], &[vec![0, 0], vec![1, 1]])
            .unwrap();
        assert!(!s.verify().non_degenerate);
    }

    #[test]
    fn flip_times_flip_is_flip() {
        let p = SolutionTable::flip(2)
            .unwrap()
            .product(&SolutionTable::flip(3).unwrap())
            .unwrap();
        assert_eq!(p, SolutionTable::flip(6).unwrap());
    }
}
