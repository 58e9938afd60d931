//! Canonical invariants `(n, t, a)` of indecomposable cocyclic solutions,
//! counting and enumeration of classes, an exhaustive oracle over
//! translation-form solutions, and the (order, socle index) counterexamples.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::arith::{divisors, euler_phi, factorize, gcd, nilpotency_index, MAX_FACTOR_INPUT};
use crate::brace::make_bt;
use crate::error::{Error, Result};
use crate::solution::iso::SearchOutcome;
use crate::solution::table::MAX_TABLE_SIZE;
use crate::solution::{
    isomorphic_k, make_k, multipermutation_level, permutation_group, retract, retraction_sizes,
    IsoSearch, KParams, SolutionTable,
};

/// Bijection-search cap used when matching an input against candidate classes.
/// The search is fast on cocyclic inputs since fixing one image forces the rest.
pub const CANONICAL_ISO_CAP: usize = MAX_TABLE_SIZE;

/// Largest order at which `refute_rump` also runs an exhaustive bijection search.
pub const REFUTE_ISO_CAP: usize = 256;

/// Default size cap of the exhaustive oracle.
pub const DEFAULT_ORACLE_CAP: usize = 8;

/// Order reachable by the oracle with the slow flag.
pub const SLOW_ORACLE_LIMIT: usize = 9;

/// The complete invariant `(n, t, a)`; two solutions are isomorphic iff their triples agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocyclicInvariants {
    pub n: u64,
    pub t: u64,
    pub a: u64,
}

impl CocyclicInvariants {
    /// Validates the parameter ranges and that `a` is the canonical representative.
    pub fn new(n: u64, t: u64, a: u64) -> Result<Self> {
        if !valid_t(n)?.contains(&t) {
            return Err(Error::InvalidParameters(format!(
                "t = {t} is not an admissible parameter for n = {n}"
            )));
        }
        if !class_representatives(n, t).contains(&a) {
            return Err(Error::InvalidParameters(format!(
                "a = {a} is not a canonical class representative for n = {n}, t = {t}"
            )));
        }
        Ok(CocyclicInvariants { n, t, a })
    }

    /// `s = n/t`, the size of the retraction.
    pub fn socle_index(&self) -> u64 {
        self.n / self.t
    }

    /// `gcd(t, n/t)`, the modulus of the class of `a`.
    pub fn class_modulus(&self) -> u64 {
        gcd(self.t, self.n / self.t)
    }

    /// The constructor parameters of this class. For `n ≡ 4 (mod 8)` with `t`
    /// exactly divisible by 2 this is the `FourN` family with parameter `t/2`
    /// (the `Tilde4` solution when `n = 4`); otherwise `K(n, t, a)`.
    pub fn to_kparams(&self) -> Result<KParams> {
        let (n, t, a) = (self.n, self.t, self.a);
        if n % 8 == 4 && t % 4 == 2 {
            if n == 4 {
                KParams::tilde4(a)
            } else {
                KParams::four_n(n, t / 2, a)
            }
        } else {
            KParams::standard(n, t, a)
        }
    }

    pub fn materialize(&self) -> Result<SolutionTable> {
        make_k(&self.to_kparams()?)
    }

    /// Least `s` with `n | t^s`, raised to at least 2 for the tilde component.
    pub fn level(&self) -> u32 {
        if self.n == 1 {
            return 0;
        }
        let f = factorize(self.n).expect("validated order");
        let s = nilpotency_index(self.t % self.n, &f).expect("every prime of n divides t");
        if self.n % 8 == 4 && self.t % 4 == 2 {
            // the odd part behaves as K(m, t/2, ·), the 2-part has level 2
            let m = self.n / 4;
            let odd = if m == 1 {
                0
            } else {
                nilpotency_index((self.t / 2) % m, &factorize(m).expect("validated order"))
                    .expect("nilpotent")
            };
            odd.max(2)
        } else {
            s
        }
    }
}

impl fmt::Display for CocyclicInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.t, self.a)
    }
}

/// Admissible `t`: divisors of `n` divisible by every prime of `n`, with `4 | t` when `8 | n`.
pub fn valid_t(n: u64) -> Result<Vec<u64>> {
    if n == 0 || n > MAX_FACTOR_INPUT {
        return Err(Error::ModulusOutOfRange(n));
    }
    let f = factorize(n)?;
    let rad = f.radical();
    Ok(divisors(&f)
        .into_iter()
        .filter(|&t| t % rad == 0 && (n % 8 != 0 || t % 4 == 0))
        .collect())
}

/// Canonical `a` for each unit class modulo `gcd(t, n/t)`: the least positive
/// member of the class that is coprime to `n`, ascending.
pub fn class_representatives(n: u64, t: u64) -> Vec<u64> {
    if n == 0 || t == 0 || n % t != 0 {
        return Vec::new();
    }
    let d = gcd(t, n / t);
    let mut reps: Vec<u64> = (1..=d.max(1))
        .filter(|&r| gcd(r, d) == 1)
        .map(|r| {
            let mut a = r;
            while gcd(a, n) != 1 {
                a += d;
            }
            a
        })
        .collect();
    reps.sort_unstable();
    reps
}

/// Number of classes with a given `t`, i.e. the units modulo `gcd(t, n/t)`.
fn classes_for_t(n: u64, t: u64) -> u64 {
    euler_phi(gcd(t, n / t))
}

/// Count with its breakdown over `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: u64,
    pub total: u64,
    /// `(t, number of classes with that t)`, ascending in `t`.
    pub per_t: Vec<(u64, u64)>,
}

pub fn count_cocyclic(n: u64) -> Result<CountReport> {
    let per_t: Vec<(u64, u64)> = valid_t(n)?
        .into_iter()
        .map(|t| (t, classes_for_t(n, t)))
        .collect();
    Ok(CountReport {
        n,
        total: per_t.iter().map(|&(_, c)| c).sum(),
        per_t,
    })
}

/// Closed-form class count at order `p^k`.
pub fn prime_power_count(p: u64, k: u32) -> u64 {
    let half = k / 2;
    if p == 2 {
        match k {
            0 | 1 => 1,
            2 => 2,
            _ => 2u64.pow(half) + 2u64.pow(k - half - 1) - 2,
        }
    } else if k == 0 {
        1
    } else {
        p.pow(half) + p.pow(k - half - 1) - 1
    }
}

/// One representative per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub n: u64,
    pub classes: Vec<CocyclicInvariants>,
    pub total: u64,
    pub per_level: BTreeMap<u32, u64>,
}

impl EnumerationReport {
    fn from_classes(n: u64, classes: Vec<CocyclicInvariants>) -> Self {
        let mut per_level = BTreeMap::new();
        for c in &classes {
            *per_level.entry(c.level()).or_insert(0) += 1;
        }
        EnumerationReport {
            n,
            total: classes.len() as u64,
            classes,
            per_level,
        }
    }

    /// Pairwise non-isomorphism: classes with different `t` have retractions of
    /// different sizes, classes with equal `t` are separated by the closed-form criterion.
    pub fn certify_pairwise(&self) -> Result<bool> {
        let params: Vec<KParams> = self
            .classes
            .iter()
            .map(CocyclicInvariants::to_kparams)
            .collect::<Result<_>>()?;
        for i in 0..params.len() {
            for j in (i + 1)..params.len() {
                if self.classes[i].t != self.classes[j].t {
                    continue;
                }
                if isomorphic_k(&params[i], &params[j])?.isomorphic {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// All classes of order `n`, listed by decreasing `t` (increasing level) and increasing `a`.
pub fn enumerate_all(n: u64) -> Result<EnumerationReport> {
    let mut classes = Vec::new();
    for t in valid_t(n)?.into_iter().rev() {
        for a in class_representatives(n, t) {
            classes.push(CocyclicInvariants { n, t, a });
        }
    }
    Ok(EnumerationReport::from_classes(n, classes))
}

pub fn level_histogram(n: u64) -> Result<BTreeMap<u32, u64>> {
    Ok(enumerate_all(n)?.per_level)
}

fn not_cocyclic() -> Error {
    Error::NotCocyclic("not an indecomposable cocyclic solution".into())
}

/// `canonical_invariants_with` using [`CANONICAL_ISO_CAP`].
pub fn canonical_invariants(s: &SolutionTable) -> Result<CocyclicInvariants> {
    canonical_invariants_with(s, IsoSearch::with_cap(CANONICAL_ISO_CAP))
}

/// `t = n / |Ret(S)|`, then `a` is the candidate whose construction is
/// isomorphic to `S` under the bijection search.
pub fn canonical_invariants_with(
    s: &SolutionTable,
    search: IsoSearch,
) -> Result<CocyclicInvariants> {
    if !s.verify().all_pass() {
        return Err(not_cocyclic());
    }
    let group = permutation_group(s)?;
    if !group.is_cyclic() || !group.is_transitive() || !group.is_regular() {
        return Err(not_cocyclic());
    }
    let n = s.size() as u64;
    if n == 1 {
        return Ok(CocyclicInvariants { n: 1, t: 1, a: 1 });
    }
    let t = n / retract(s).size() as u64;
    if !valid_t(n)?.contains(&t) {
        return Err(not_cocyclic());
    }
    let candidates = class_representatives(n, t);
    if candidates.len() == 1 {
        return Ok(CocyclicInvariants {
            n,
            t,
            a: candidates[0],
        });
    }
    for a in candidates {
        let inv = CocyclicInvariants { n, t, a };
        if search.find(s, &inv.materialize()?)?.is_some() {
            return Ok(inv);
        }
    }
    Err(not_cocyclic())
}

/// Configuration of the exhaustive oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub cap: usize,
    pub allow_slow: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap: DEFAULT_ORACLE_CAP,
            allow_slow: false,
        }
    }
}

impl OracleConfig {
    pub fn effective_cap(&self) -> usize {
        if self.allow_slow {
            self.cap.max(SLOW_ORACLE_LIMIT)
        } else {
            self.cap
        }
    }
}

/// Classes found by the oracle, each paired with the enumerated class it matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub n: u64,
    /// Sigma tables of `σ_x(y) = y + e(x)` that pass every axiom and generate `Z_n`.
    pub survivors: u64,
    /// Lexicographically least sigma table of each class, sorted.
    pub representatives: Vec<SolutionTable>,
    /// For each representative, the enumerated class it is isomorphic to.
    pub matched: Vec<Option<CocyclicInvariants>>,
    pub enumeration: EnumerationReport,
}

impl OracleReport {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Class counts agree and the matching is a bijection.
    pub fn agrees(&self) -> bool {
        if self.representatives.len() as u64 != self.enumeration.total {
            return false;
        }
        let mut seen: Vec<CocyclicInvariants> = self.matched.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.matched.len() && self.matched.iter().all(Option::is_some)
    }
}

/// Odometer over exponent maps with the braid condition checked after each row.
struct Odometer {
    n: usize,
    e: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Odometer {
    /// For translations the braid relation reads
    /// `e(x) + e(y − e(x)) = e(y) + e(x − e(y))`; check every instance whose
    /// indices are all assigned and which involves the newest row `k`.
    fn consistent(&self, k: usize) -> bool {
        let n = self.n;
        let e = &self.e;
        for x in 0..=k {
            for y in 0..=k {
                let u = (y + n - e[x]) % n;
                let v = (x + n - e[y]) % n;
                if u > k || v > k || (x != k && y != k && u != k && v != k) {
                    continue;
                }
                if (e[x] + e[u]) % n != (e[y] + e[v]) % n {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) {
        if k == self.n {
            self.found.push(self.e.clone());
            return;
        }
        for v in 0..self.n {
            self.e[k] = v;
            if self.consistent(k) {
                self.run(k + 1);
            }
        }
    }
}

/// Exponent maps passing the pruned search, in odometer order.
fn exponent_maps(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .into_par_iter()
        .map(|e0| {
            let mut odo = Odometer {
                n,
                e: vec![0; n],
                found: Vec::new(),
            };
            odo.e[0] = e0;
            if odo.consistent(0) {
                odo.run(1);
            }
            odo.found
        })
        .collect::<Vec<_>>()
        .concat()
}

/// Exponent maps without pruning, for cross-checking the pruned search.
pub fn exponent_maps_unpruned(n: usize) -> Vec<Vec<usize>> {
    let total = (n as u64).pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut e = vec![0; n];
            for slot in e.iter_mut().rev() {
                *slot = (code % n as u64) as usize;
                code /= n as u64;
            }
            e
        })
        .filter(|e| translation_solution(e).verify().all_pass())
        .collect()
}

/// Exponent maps that survive the pruned odometer and the full axiom check.
pub fn exponent_maps_pruned(n: usize) -> Vec<Vec<usize>> {
    exponent_maps(n)
        .into_par_iter()
        .filter(|e| translation_solution(e).verify().all_pass())
        .collect()
}

/// `σ_x(y) = y + e(x) (mod n)` with the involutive completion.
pub fn translation_solution(e: &[usize]) -> SolutionTable {
    let n = e.len();
    SolutionTable::from_sigma_fn(n, |x, y| (y + e[x]) % n).expect("translations are bijective")
}

/// Exhaustive search over cyclic-regular solutions of order `n`.
///
/// A regular cyclic permutation group can be conjugated onto `⟨c⟩`, `c: i ↦ i+1`,
/// so every class has a representative with `σ_x = c^{e(x)}`.
pub fn oracle_exhaustive_cyclic(n: u64, config: OracleConfig) -> Result<OracleReport> {
    let size = n as usize;
    if n == 0 || size > config.effective_cap() {
        return Err(Error::Resource(format!(
            "oracle order {n} exceeds the cap {}",
            config.effective_cap()
        )));
    }
    let mut survivors: Vec<SolutionTable> = exponent_maps_pruned(size)
        .into_iter()
        .filter(|e| e.iter().fold(n, |g, &x| gcd(g, x as u64)) == 1)
        .map(|e| translation_solution(&e))
        .collect();
    survivors.sort_by(|a, b| a.sigma_flat().cmp(b.sigma_flat()));
    let search = IsoSearch::with_cap(size.max(1));

    let mut reps: Vec<(Vec<usize>, SolutionTable)> = Vec::new();
    for s in &survivors {
        let key = retraction_sizes(s);
        let mut known = false;
        for (k, r) in &reps {
            if *k == key && search.find(r, s)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            reps.push((key, s.clone()));
        }
    }
    let representatives: Vec<SolutionTable> = reps.into_iter().map(|(_, s)| s).collect();

    let enumeration = enumerate_all(n)?;
    let tables: Vec<SolutionTable> = enumeration
        .classes
        .iter()
        .map(CocyclicInvariants::materialize)
        .collect::<Result<_>>()?;
    let mut matched = Vec::new();
    for r in &representatives {
        let mut hit = None;
        for (c, t) in enumeration.classes.iter().zip(&tables) {
            if search.find(r, t)?.is_some() {
                hit = Some(*c);
                break;
            }
        }
        matched.push(hit);
    }
    Ok(OracleReport {
        n,
        survivors: survivors.len() as u64,
        representatives,
        matched,
        enumeration,
    })
}

/// Socle indices admitted by the (order, socle index) classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RumpPrediction {
    pub n: u64,
    pub socle_indices: Vec<u64>,
    pub predicted: u64,
}

/// Divisors `s` of `n` with `ps | n` for every prime `p | n`, and `4s | n` when `8 | n`.
pub fn rump_prediction(n: u64) -> Result<RumpPrediction> {
    if n == 0 || n > MAX_FACTOR_INPUT {
        return Err(Error::ModulusOutOfRange(n));
    }
    let f = factorize(n)?;
    let socle_indices: Vec<u64> = divisors(&f)
        .into_iter()
        .filter(|&s| {
            f.factors().iter().all(|&(p, _)| n % (p * s) == 0) && (n % 8 != 0 || n % (4 * s) == 0)
        })
        .collect();
    Ok(RumpPrediction {
        n,
        predicted: socle_indices.len() as u64,
        socle_indices,
    })
}

/// How the two solutions of a refutation were shown non-isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonIsoCertificate {
    /// Nodes of a completed bijection search that found no isomorphism.
    pub exhaustive_nodes: Option<u64>,
    /// Modulus of the closed-form congruence separating the two `a` values.
    pub congruence_modulus: u64,
}

/// Two non-isomorphic solutions sharing order and socle index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RumpRefutation {
    pub n: u64,
    pub socle_index: u64,
    pub predicted: u64,
    pub actual: u64,
    pub first: CocyclicInvariants,
    pub second: CocyclicInvariants,
    pub first_table: SolutionTable,
    pub second_table: SolutionTable,
    pub certificate: NonIsoCertificate,
}

pub fn refute_rump(n: u64) -> Result<RumpRefutation> {
    let prediction = rump_prediction(n)?;
    let count = count_cocyclic(n)?;
    if count.total <= prediction.predicted {
        return Err(Error::NoCounterexample { n });
    }
    let &(t, _) = count
        .per_t
        .iter()
        .find(|&&(_, c)| c >= 2)
        .expect("some t has two classes when the count exceeds the prediction");
    let reps = class_representatives(n, t);
    let first = CocyclicInvariants { n, t, a: reps[0] };
    let second = CocyclicInvariants { n, t, a: reps[1] };
    let first_table = first.materialize()?;
    let second_table = second.materialize()?;
    for table in [&first_table, &second_table] {
        if retract(table).size() as u64 != n / t {
            return Err(Error::InvalidParameters(format!(
                "retraction of a constructed solution has the wrong size at n = {n}"
            )));
        }
    }
    let verdict = isomorphic_k(&first.to_kparams()?, &second.to_kparams()?)?;
    if verdict.isomorphic {
        return Err(Error::InvalidParameters(format!(
            "closed-form criterion does not separate the chosen pair at n = {n}"
        )));
    }
    let exhaustive_nodes = if (n as usize) <= REFUTE_ISO_CAP {
        let SearchOutcome { witness, nodes } =
            IsoSearch::with_cap(REFUTE_ISO_CAP).search(&first_table, &second_table)?;
        if witness.is_some() {
            return Err(Error::InvalidParameters(format!(
                "bijection search found an isomorphism at n = {n}"
            )));
        }
        Some(nodes)
    } else {
        None
    };
    Ok(RumpRefutation {
        n,
        socle_index: n / t,
        predicted: prediction.predicted,
        actual: count.total,
        first,
        second,
        first_table,
        second_table,
        certificate: NonIsoCertificate {
            exhaustive_nodes,
            congruence_modulus: verdict.modulus,
        },
    })
}

/// The grid of class counts at order `p^k` for `p ∈ {2,3,5,7}`, `k ∈ 2..=15`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1 {
    pub primes: Vec<u64>,
    pub exponents: Vec<u32>,
    /// `cells[i][j]` is the count at order `primes[i]^exponents[j]`.
    pub cells: Vec<Vec<u64>>,
}

impl Table1 {
    pub fn get(&self, p: u64, k: u32) -> Option<u64> {
        let i = self.primes.iter().position(|&q| q == p)?;
        let j = self.exponents.iter().position(|&e| e == k)?;
        Some(self.cells[i][j])
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("p");
        for k in &self.exponents {
            out.push_str(&format!(",k={k}"));
        }
        out.push('\n');
        for (p, row) in self.primes.iter().zip(&self.cells) {
            out.push_str(&p.to_string());
            for c in row {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn table1() -> Table1 {
    let primes = vec![2, 3, 5, 7];
    let exponents: Vec<u32> = (2..=15).collect();
    let cells = primes
        .iter()
        .map(|&p| exponents.iter().map(|&k| prime_power_count(p, k)).collect())
        .collect();
    Table1 {
        primes,
        exponents,
        cells,
    }
}

/// Levels of `K(p^k, p^w, 1)` and of the solution associated with `B_{p^w}(p^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelComparison {
    pub p: u64,
    pub k: u32,
    pub w: u32,
    pub solution_level: Option<u32>,
    pub brace_level: Option<u32>,
}

impl LevelComparison {
    pub fn coincide(&self) -> bool {
        self.solution_level == self.brace_level
    }
}

/// Experiment only: both levels are computed from tables, nothing is asserted.
pub fn level_coincidence(p: u64, k: u32, w: u32) -> Result<LevelComparison> {
    let n = p
        .checked_pow(k)
        .filter(|&n| n as usize <= MAX_TABLE_SIZE)
        .ok_or_else(|| Error::Resource(format!("{p}^{k} is too large")))?;
    if w == 0 || w > k {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= w <= k, got w = {w}"
        )));
    }
    let t = p.pow(w);
    let solution = make_k(&KParams::standard(n, t, 1)?)?;
    let brace = make_bt(n, t)?.associated_solution()?;
    Ok(LevelComparison {
        p,
        k,
        w,
        solution_level: multipermutation_level(&solution),
        brace_level: multipermutation_level(&brace),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_examples() {
        assert_eq!(count_cocyclic(9).unwrap().total, 3);
        assert_eq!(count_cocyclic(675).unwrap().total, 25);
        assert_eq!(count_cocyclic(16).unwrap().total, 4);
        assert_eq!(count_cocyclic(2187).unwrap().total, 53);
        assert_eq!(count_cocyclic(7u64.pow(5)).unwrap().total, 97);
        assert_eq!(count_cocyclic(36).unwrap().total, 6);
        assert_eq!(count_cocyclic(1).unwrap().total, 1);
    }

    #[test]
    fn closed_form_matches_sum() {
        for p in [2u64, 3, 5, 7] {
            for k in 1..=15 {
                let n = p.pow(k);
                assert_eq!(
                    count_cocyclic(n).unwrap().total,
                    prime_power_count(p, k),
                    "{p}^{k}"
                );
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let r = enumerate_all(9).unwrap();
        let mut got: Vec<_> = r.classes.iter().map(|c| (c.n, c.t, c.a)).collect();
        got.sort_unstable();
        assert_eq!(got, vec![(9, 3, 1), (9, 3, 2), (9, 9, 1)]);
        assert_eq!(enumerate_all(4).unwrap().total, 2);
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(enumerate_all(p).unwrap().total, 1);
        }
        assert!(r.certify_pairwise().unwrap());
    }

    #[test]
    fn representatives_of_36() {
        assert_eq!(class_representatives(36, 12), vec![1, 5]);
        assert_eq!(class_representatives(36, 6), vec![1, 5]);
        assert_eq!(class_representatives(36, 18), vec![1]);
        assert_eq!(class_representatives(36, 36), vec![1]);
    }

    #[test]
    fn histogram_examples() {
        let h = level_histogram(675).unwrap();
        assert_eq!(h, BTreeMap::from([(1, 1), (2, 14), (3, 10)]));
        assert_eq!(level_histogram(7).unwrap(), BTreeMap::from([(1, 1)]));
        assert_eq!(
            level_histogram(27).unwrap(),
            BTreeMap::from([(1, 1), (2, 2), (3, 2)])
        );
    }

    #[test]
    fn rump_prediction_examples() {
        let r = rump_prediction(9).unwrap();
        assert_eq!((r.socle_indices, r.predicted), (vec![1, 3], 2));
        assert_eq!(rump_prediction(7).unwrap().socle_indices, vec![1]);
        let r = rump_prediction(27).unwrap();
        assert_eq!((r.socle_indices, r.predicted), (vec![1, 3, 9], 3));
    }

    #[test]
    fn prediction_counts_valid_t() {
        for n in 1..=300 {
            assert_eq!(
                rump_prediction(n).unwrap().predicted as usize,
                valid_t(n).unwrap().len(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn refute_examples() {
        let r = refute_rump(9).unwrap();
        assert_eq!((r.first.a, r.second.a, r.first.t), (1, 2, 3));
        assert_eq!((r.predicted, r.actual, r.socle_index), (2, 3, 3));
        assert!(r.certificate.exhaustive_nodes.is_some());
        let r = refute_rump(25).unwrap();
        assert_eq!((r.predicted, r.actual), (2, 5));
        assert_eq!(refute_rump(8), Err(Error::NoCounterexample { n: 8 }));
    }

    #[test]
    fn table_examples() {
        let t = table1();
        assert_eq!(t.get(3, 2), Some(3));
        assert_eq!(t.get(2, 15), Some(254));
        assert_eq!(t.get(7, 14), Some(941191));
        let csv = t.to_csv();
        assert!(csv.starts_with("p,k=2,k=3,"));
        assert!(csv.contains("\n3,3,5,11,17,"));
    }

    #[test]
    fn canonical_examples() {
        let s = make_k(&KParams::standard(9, 3, 7).unwrap()).unwrap();
        assert_eq!(
            canonical_invariants(&s).unwrap(),
            CocyclicInvariants { n: 9, t: 3, a: 1 }
        );
        assert_eq!(
            canonical_invariants(&SolutionTable::trivial()).unwrap(),
            CocyclicInvariants { n: 1, t: 1, a: 1 }
        );
        let s = make_k(&KParams::four_n(36, 3, 5).unwrap()).unwrap();
        assert_eq!(
            canonical_invariants(&s).unwrap(),
            CocyclicInvariants { n: 36, t: 6, a: 5 }
        );
        // the flip on two points is decomposable
        let flip = SolutionTable::flip(2).unwrap();
        assert!(matches!(
            canonical_invariants(&flip),
            Err(Error::NotCocyclic(_))
        ));
    }

    #[test]
    fn pruned_oracle_matches_unpruned() {
        for n in 1..=6 {
            let mut pruned = exponent_maps_pruned(n);
            pruned.sort();
            assert_eq!(pruned, exponent_maps_unpruned(n), "n = {n}");
        }
    }

    #[test]
    fn oracle_small() {
        for (n, classes) in [(1, 1), (2, 1), (4, 2), (6, 1)] {
            let r = oracle_exhaustive_cyclic(n, OracleConfig::default()).unwrap();
            assert_eq!(r.class_count(), classes, "n = {n}");
            assert!(r.agrees());
        }
        assert!(matches!(
            oracle_exhaustive_cyclic(9, OracleConfig::default()),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn level_experiment_runs() {
        let c = level_coincidence(3, 3, 1).unwrap();
        assert_eq!(c.solution_level, Some(3));
        assert!(c.brace_level.is_some());
    }
}
