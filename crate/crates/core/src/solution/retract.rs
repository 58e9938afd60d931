use std::collections::HashMap;

use crate::solution::SolutionTable;

/// The retraction together with the class label of every original point.
#[derive(Debug, Clone)]
pub struct Retraction {
    pub solution: SolutionTable,
    /// `labels[x]` is the class of `x`; classes are numbered by smallest member.
    pub labels: Vec<u32>,
}

/// Quotient by `x ~ y ⇔ σ_x = σ_y`, classes relabeled by smallest member.
pub fn retract_with_labels(s: &SolutionTable) -> Retraction {
    let n = s.size();
    let mut first_seen: HashMap<&[u32], u32> = HashMap::new();
    let mut labels = Vec::with_capacity(n);
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        let next = reps.len() as u32;
        let label = *first_seen.entry(s.sigma_row(x)).or_insert_with(|| {
            reps.push(x);
            next
        });
        labels.push(label);
    }
    let m = reps.len();
    let mut sigma = Vec::with_capacity(m * m);
    let mut tau = Vec::with_capacity(m * m);
    for &x in &reps {
        for &y in &reps {
            sigma.push(labels[s.sigma(x, y)]);
            tau.push(labels[s.tau(x, y)]);
        }
    }
    Retraction {
        solution: SolutionTable::from_flat(m, sigma, tau),
        labels,
    }
}

pub fn retract(s: &SolutionTable) -> SolutionTable {
    retract_with_labels(s).solution
}

/// Sizes `|X|, |Ret(X)|, |Ret²(X)|, …` until the size stops shrinking.
pub fn retraction_sizes(s: &SolutionTable) -> Vec<usize> {
    let mut sizes = vec![s.size()];
    let mut current = s.clone();
    while current.size() > 1 {
        let next = retract(&current);
        if next.size() == current.size() {
            break;
        }
        sizes.push(next.size());
        current = next;
    }
    sizes
}

/// Least `m` with `|Ret^m(X)| = 1`; `None` when the retraction stalls above one point.
pub fn multipermutation_level(s: &SolutionTable) -> Option<u32> {
    let mut current = s.clone();
    // each productive step shrinks the carrier, so n steps always suffice
    for level in 0..=s.size() as u32 {
        if current.size() == 1 {
            return Some(level);
        }
        let next = retract(&current);
        if next.size() == current.size() {
            return None;
        }
        current = next;
    }
    None
}

/// `Ret^m(X)`.
pub fn retract_times(s: &SolutionTable, m: u32) -> SolutionTable {
    let mut current = s.clone();
    for _ in 0..m {
        if current.size() == 1 {
            break;
        }
        current = retract(&current);
    }
    current
}
