//! Permutations and the permutation group `G(X) = ⟨σ_x⟩` of a solution.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::solution::SolutionTable;

/// A permutation of `0..n` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v as usize >= n || seen[v as usize] {
                return Err(Error::MalformedTable(
                    "images do not form a bijection".into(),
                ));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation, e.g. `(147)(285)`; the identity prints as `()`.
    /// Points are separated by commas once the degree exceeds ten.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.degree() > 10 { "," } else { "" };
        for c in cycles {
            let pts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", pts.join(sep))?;
        }
        Ok(())
    }
}

/// Default bound on the number of group elements enumerated by closure.
pub const DEFAULT_GROUP_BOUND: usize = 1_000_000;

/// A permutation group given by generators together with its element set.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Breadth-first closure of `generators` under composition.
    pub fn generate(degree: usize, generators: Vec<Permutation>, bound: usize) -> Result<Self> {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::MalformedTable("generator of wrong degree".into()));
            }
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut elements = vec![id.clone()];
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    if elements.len() >= bound {
                        return Err(Error::Resource(format!(
                            "permutation group exceeds {bound} elements"
                        )));
                    }
                    elements.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators: gens,
            elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Distinct non-identity generators.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn is_cyclic(&self) -> bool {
        let order = self.order() as u64;
        self.elements.iter().any(|g| g.order() == order)
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        orbit(self.degree, &self.generators, x)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }
}

/// Orbit of `x` under the group generated by `generators`, sorted.
pub fn orbit(degree: usize, generators: &[Permutation], x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for g in generators {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    (0..degree).filter(|&i| seen[i]).collect()
}

fn sigma_generators(s: &SolutionTable) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = (0..s.size())
        .map(|x| Permutation(s.sigma_row(x).to_vec()))
        .collect();
    gens.sort();
    gens.dedup();
    gens
}

/// `G(X)` with the default element bound.
pub fn permutation_group(s: &SolutionTable) -> Result<PermGroup> {
    permutation_group_bounded(s, DEFAULT_GROUP_BOUND)
}

pub fn permutation_group_bounded(s: &SolutionTable, bound: usize) -> Result<PermGroup> {
    PermGroup::generate(s.size(), sigma_generators(s), bound)
}

/// `G(X)` acts transitively on the carrier.
pub fn is_indecomposable(s: &SolutionTable) -> bool {
    orbit(s.size(), &sigma_generators(s), 0).len() == s.size()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        let p = Permutation::from_images((0..9).map(|x| (4 * x % 9) as u32).collect()).unwrap();
        assert_eq!(p.to_string(), "(147)(285)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(p.order(), 3);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(9));
    }

    #[test]
    fn flip_group_is_trivial() {
        let g = permutation_group(&SolutionTable::flip(4).unwrap()).unwrap();
        assert_eq!(g.order(), 1);
        assert!(!g.is_transitive());
        assert!(g.is_cyclic());
        assert!(!is_indecomposable(&SolutionTable::flip(2).unwrap()));
    }

    #[test]
    fn closure_respects_bound() {
        // S_5 generated by a 5-cycle and a transposition
        let c = Permutation::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        let t = Permutation::from_images(vec![1, 0, 2, 3, 4]).unwrap();
        let g = PermGroup::generate(5, vec![c.clone(), t.clone()], 1000).unwrap();
        assert_eq!(g.order(), 120);
        assert!(!g.is_cyclic());
        assert!(!g.is_abelian());
        assert!(matches!(
            PermGroup::generate(5, vec![c, t], 50),
            Err(Error::Resource(_))
        ));
    }
}
