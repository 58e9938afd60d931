//! Finite left braces on residues: the parametric family `B_t(n)` with
//! `a∘b = a + b + tab`, explicit-table braces (the exceptional four-element
//! cocyclic brace and direct products), socles, the star operation and
//! nilpotency chains, socle quotients and associated solutions.

use std::collections::BTreeMap;

use crate::arith::{factorize, gcd, inverse_mod, is_nilpotent, mul_mod, MAX_MODULUS};
use crate::error::{Error, Result};
use crate::solution::table::MAX_TABLE_SIZE;
use crate::solution::SolutionTable;

/// Largest carrier accepted for user-supplied operation tables.
pub const MAX_EXPLICIT_SIZE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraceKind {
    /// `a∘b = a + b + t·a·b (mod n)` with `t` nilpotent, stored reduced (`t = n` as `0`).
    Parametric { t: u64 },
    /// Row-major `n×n` tables for `+` and `∘`.
    ExplicitTables { add: Vec<u32>, circ: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceTable {
    n: u64,
    kind: BraceKind,
    // cached for explicit tables: additive negation and circ-inverse
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// The socle `{a : a∘b = a + b for all b}`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleSet {
    pub members: Vec<u64>,
}

impl SocleSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.members.binary_search(&a).is_ok()
    }
}

/// Left and right nilpotency degrees (`None` when a chain stalls above `{0}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NilpotencyDegrees {
    pub left: Option<u32>,
    pub right: Option<u32>,
}

/// Shape of the abelian group `(B, ∘)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupShape {
    pub order: u64,
    pub cyclic: bool,
    /// Invariant factors `d_1 | d_2 | …`, ascending; empty for the trivial group.
    pub invariant_factors: Vec<u64>,
}

/// Build `B_t(n)`.
pub fn make_bt(n: u64, t: u64) -> Result<BraceTable> {
    BraceTable::parametric(n, t)
}

/// The cocyclic non-cyclic brace of order four: `B_2(4)` with `+` and `∘` swapped.
pub fn make_exceptional4() -> BraceTable {
    let b = BraceTable::parametric(4, 2).expect("2 is nilpotent mod 4");
    let mut add = Vec::with_capacity(16);
    let mut circ = Vec::with_capacity(16);
    for x in 0..4 {
        for y in 0..4 {
            add.push(b.circ(x, y) as u32);
            circ.push(b.add(x, y) as u32);
        }
    }
    BraceTable::explicit_unchecked(4, add, circ)
}

/// Direct product with carrier indexed as `i·n2 + j`.
pub fn product_brace(b1: &BraceTable, b2: &BraceTable) -> Result<BraceTable> {
    b1.product(b2)
}

impl BraceTable {
    pub fn parametric(n: u64, t: u64) -> Result<Self> {
        if n == 0 || n > MAX_MODULUS {
            return Err(Error::ModulusOutOfRange(n));
        }
        if !is_nilpotent(t, &factorize(n)?) {
            return Err(Error::NotNilpotent { t, n });
        }
        Ok(BraceTable {
            n,
            kind: BraceKind::Parametric { t: t % n },
            neg: Vec::new(),
            inv: Vec::new(),
        })
    }

    /// Explicit operation tables; the brace axioms are checked exhaustively.
    pub fn from_tables(add: &[Vec<u32>], circ: &[Vec<u32>]) -> Result<Self> {
        let n = add.len();
        if n == 0 || n > MAX_EXPLICIT_SIZE {
            return Err(Error::MalformedTable(format!(
                "explicit braces need 1 <= n <= {MAX_EXPLICIT_SIZE}, got {n}"
            )));
        }
        let flat = |rows: &[Vec<u32>], name: &str| -> Result<Vec<u32>> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::MalformedTable(format!(
                    "{name} table is not {n}×{n}"
                )));
            }
            let v: Vec<u32> = rows.concat();
            if v.iter().any(|&x| x as usize >= n) {
                return Err(Error::MalformedTable(format!(
                    "{name} table entry out of range"
                )));
            }
            Ok(v)
        };
        let add = flat(add, "add")?;
        let circ = flat(circ, "circ")?;
        for (name, table) in [("add", &add), ("circ", &circ)] {
            if (0..n).any(|x| table[x] as usize != x || table[x * n] as usize != x) {
                return Err(Error::BraceAxiom(format!("0 is not neutral for {name}")));
            }
            for x in 0..n {
                if !(0..n).any(|y| table[x * n + y] == 0) {
                    return Err(Error::BraceAxiom(format!("{x} has no {name} inverse")));
                }
            }
        }
        let b = BraceTable::explicit_unchecked(n, add, circ);
        b.verify_axioms()?;
        Ok(b)
    }

    fn explicit_unchecked(n: usize, add: Vec<u32>, circ: Vec<u32>) -> Self {
        let find_inverse = |table: &[u32], x: usize| -> u32 {
            (0..n).find(|&y| table[x * n + y] == 0).unwrap_or(0) as u32
        };
        let neg = (0..n).map(|x| find_inverse(&add, x)).collect();
        let inv = (0..n).map(|x| find_inverse(&circ, x)).collect();
        BraceTable {
            n: n as u64,
            kind: BraceKind::ExplicitTables { add, circ },
            neg,
            inv,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn kind(&self) -> &BraceKind {
        &self.kind
    }

    /// `Some(t)` for the parametric family.
    pub fn parameter(&self) -> Option<u64> {
        match self.kind {
            BraceKind::Parametric { t } => Some(t),
            BraceKind::ExplicitTables { .. } => None,
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.kind {
            BraceKind::Parametric { .. } => (a + b) % self.n,
            BraceKind::ExplicitTables { add, .. } => add[(a * self.n + b) as usize] as u64,
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        match &self.kind {
            BraceKind::Parametric { .. } => (self.n - a % self.n) % self.n,
            BraceKind::ExplicitTables { .. } => self.neg[a as usize] as u64,
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn circ(&self, a: u64, b: u64) -> u64 {
        match &self.kind {
            BraceKind::Parametric { t } => {
                let n = self.n;
                (a + b + mul_mod(mul_mod(*t, a, n), b, n)) % n
            }
            BraceKind::ExplicitTables { circ, .. } => circ[(a * self.n + b) as usize] as u64,
        }
    }

    /// Inverse in `(B, ∘)`; for `B_t(n)` this is `−a(1 + ta)^{-1}`.
    pub fn circ_inverse(&self, a: u64) -> u64 {
        match &self.kind {
            BraceKind::Parametric { t } => {
                let n = self.n;
                if n == 1 {
                    return 0;
                }
                let unit = (1 + mul_mod(*t, a, n)) % n;
                let inv = inverse_mod(unit, n).expect("1 + ta is a unit for nilpotent t");
                mul_mod((n - a % n) % n, inv, n)
            }
            BraceKind::ExplicitTables { .. } => self.inv[a as usize] as u64,
        }
    }

    /// `λ_a(b) = a∘b − a`.
    #[inline]
    pub fn lambda(&self, a: u64, b: u64) -> u64 {
        self.sub(self.circ(a, b), a)
    }

    /// `a∗b = a∘b − a − b`.
    #[inline]
    pub fn star(&self, a: u64, b: u64) -> u64 {
        self.sub(self.sub(self.circ(a, b), a), b)
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.circ(a, b) == self.add(a, b)))
    }

    /// Exhaustive check of both group structures and `a∘b + a∘c = a∘(b+c) + a`.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            if self.add(a, 0) != a || self.circ(a, 0) != a || self.circ(0, a) != a {
                return Err(Error::BraceAxiom(format!("0 is not neutral at {a}")));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(Error::BraceAxiom(format!("{a} has no additive inverse")));
            }
            let inv = self.circ_inverse(a);
            if self.circ(a, inv) != 0 || self.circ(inv, a) != 0 {
                return Err(Error::BraceAxiom(format!("{a} has no circ inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::BraceAxiom(format!("+ not commutative at ({a},{b})")));
                }
                for c in 0..n {
                    self.check_triple(a, b, c)?;
                }
            }
        }
        Ok(())
    }

    /// Associativity of both operations and the brace law on one triple.
    pub fn check_triple(&self, a: u64, b: u64, c: u64) -> Result<()> {
        if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
            return Err(Error::BraceAxiom(format!(
                "+ not associative at ({a},{b},{c})"
            )));
        }
        if self.circ(self.circ(a, b), c) != self.circ(a, self.circ(b, c)) {
            return Err(Error::BraceAxiom(format!(
                "∘ not associative at ({a},{b},{c})"
            )));
        }
        let lhs = self.add(self.circ(a, b), self.circ(a, c));
        let rhs = self.add(self.circ(a, self.add(b, c)), a);
        if lhs != rhs {
            return Err(Error::BraceAxiom(format!(
                "brace law fails at ({a},{b},{c})"
            )));
        }
        Ok(())
    }

    pub fn socle(&self) -> SocleSet {
        let members = match self.kind {
            BraceKind::Parametric { t } => {
                let n = self.n;
                (0..n).filter(|&a| mul_mod(t, a, n) == 0).collect()
            }
            BraceKind::ExplicitTables { .. } => (0..self.n)
                .filter(|&a| (0..self.n).all(|b| self.lambda(a, b) == b))
                .collect(),
        };
        SocleSet { members }
    }

    /// Additive subgroup generated by `gens`, as a membership vector.
    fn additive_span(&self, gens: &[u64]) -> Vec<bool> {
        let n = self.n as usize;
        let mut member = vec![false; n];
        member[0] = true;
        let mut elements = vec![0u64];
        let mut gens: Vec<u64> = gens.iter().copied().filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &g in &gens {
                let y = self.add(x, g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        member
    }

    fn chain_degree(&self, left: bool) -> Option<u32> {
        let n = self.n;
        let mut current = vec![true; n as usize];
        let mut size = n as usize;
        let mut k = 1u32;
        loop {
            if size == 1 {
                return Some(k - 1);
            }
            let members: Vec<u64> = (0..n).filter(|&x| current[x as usize]).collect();
            let mut gens = Vec::new();
            for a in 0..n {
                for &b in &members {
                    gens.push(if left {
                        self.star(a, b)
                    } else {
                        self.star(b, a)
                    });
                }
            }
            let next = self.additive_span(&gens);
            let next_size = next.iter().filter(|&&m| m).count();
            if next_size == size {
                return None;
            }
            current = next;
            size = next_size;
            k += 1;
        }
    }

    /// Degrees of the chains `B^{k+1} = B∗B^k` and `B^{(k+1)} = B^{(k)}∗B`:
    /// the least `m >= 0` with the `(m+1)`-st term equal to `{0}`.
    pub fn nilpotency_chains(&self) -> NilpotencyDegrees {
        NilpotencyDegrees {
            left: self.chain_degree(true),
            right: self.chain_degree(false),
        }
    }

    /// `σ_x(y) = λ_x(y)`, `τ_y(x) = λ^{-1}_{λ_x(y)}(x)`.
    pub fn associated_solution(&self) -> Result<SolutionTable> {
        let n = self.n as usize;
        if n > MAX_TABLE_SIZE {
            return Err(Error::Resource(format!("brace of order {n} is too large")));
        }
        let mut sigma = Vec::with_capacity(n * n);
        let mut tau = Vec::with_capacity(n * n);
        for x in 0..self.n {
            for y in 0..self.n {
                let u = self.lambda(x, y);
                sigma.push(u as u32);
                // λ is a homomorphism from (B,∘), so λ_u^{-1} = λ_{ū}
                tau.push(self.lambda(self.circ_inverse(u), x) as u32);
            }
        }
        Ok(SolutionTable::from_flat(n, sigma, tau))
    }

    /// `B / Soc(B)`. For `B_t(n)` this is `B_{t mod n'}(n')` with `n' = n / gcd(t, n)`;
    /// explicit braces are quotiented by cosets labeled by their smallest member.
    pub fn quotient_by_socle(&self) -> Result<BraceTable> {
        match self.kind {
            BraceKind::Parametric { t } => {
                let g = gcd(t, self.n);
                let g = if g == 0 { self.n } else { g };
                let m = self.n / g;
                BraceTable::parametric(m, t % m)
            }
            BraceKind::ExplicitTables { .. } => {
                let socle = self.socle();
                let n = self.n;
                let mut label = vec![u32::MAX; n as usize];
                let mut reps = Vec::new();
                for a in 0..n {
                    if label[a as usize] != u32::MAX {
                        continue;
                    }
                    let l = reps.len() as u32;
                    reps.push(a);
                    for &s in &socle.members {
                        label[self.add(a, s) as usize] = l;
                    }
                }
                let m = reps.len();
                let mut add = Vec::with_capacity(m * m);
                let mut circ = Vec::with_capacity(m * m);
                for &x in &reps {
                    for &y in &reps {
                        add.push(label[self.add(x, y) as usize]);
                        circ.push(label[self.circ(x, y) as usize]);
                    }
                }
                Ok(BraceTable::explicit_unchecked(m, add, circ))
            }
        }
    }

    /// Direct product with carrier indexed as `i·n2 + j`.
    pub fn product(&self, other: &BraceTable) -> Result<BraceTable> {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        if n as usize > MAX_TABLE_SIZE {
            return Err(Error::Resource(format!(
                "product of order {n} is too large"
            )));
        }
        let mut add = Vec::with_capacity((n * n) as usize);
        let mut circ = Vec::with_capacity((n * n) as usize);
        for x in 0..n {
            let (x1, x2) = (x / n2, x % n2);
            for y in 0..n {
                let (y1, y2) = (y / n2, y % n2);
                add.push((self.add(x1, y1) * n2 + other.add(x2, y2)) as u32);
                circ.push((self.circ(x1, y1) * n2 + other.circ(x2, y2)) as u32);
            }
        }
        Ok(BraceTable::explicit_unchecked(n as usize, add, circ))
    }

    /// Order of `a` in `(B, ∘)`.
    pub fn circ_order(&self, a: u64) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.circ(x, a);
            k += 1;
        }
        k
    }

    /// Cyclicity and invariant factors of the abelian group `(B, ∘)`.
    pub fn multiplicative_group_shape(&self) -> Result<GroupShape> {
        let n = self.n;
        for a in 0..n {
            for b in (a + 1)..n {
                if self.circ(a, b) != self.circ(b, a) {
                    return Err(Error::NonAbelian);
                }
            }
        }
        let orders: Vec<u64> = (0..n).map(|a| self.circ_order(a)).collect();
        let cyclic = orders.contains(&n);
        // elementary divisors per prime from counts of elements killed by p^j
        let mut elementary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &(p, k) in factorize(n)?.factors() {
            let mut prev = 1u64;
            let mut ranks = Vec::new();
            for j in 1..=k {
                let pj = p.pow(j);
                let count = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
                let mut r = 0u32;
                let mut q = count / prev;
                while q > 1 {
                    q /= p;
                    r += 1;
                }
                ranks.push(r);
                prev = count;
            }
            // ranks[j-1] = number of cyclic factors of order >= p^j
            let mut exps = Vec::new();
            for j in 1..=k as usize {
                let at_least = ranks[j - 1];
                let more = if j < k as usize { ranks[j] } else { 0 };
                for _ in 0..(at_least - more) {
                    exps.push(j as u32);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            elementary.insert(p, exps);
        }
        let width = elementary.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; width];
        for (&p, exps) in &elementary {
            for (i, &e) in exps.iter().enumerate() {
                // largest exponents go to the last (largest) invariant factor
                factors[width - 1 - i] *= p.pow(e);
            }
        }
        Ok(GroupShape {
            order: n,
            cyclic,
            invariant_factors: factors,
        })
    }
}

/// One component `B_{t_i}(p_i^{k_i})` of the splitting, with multiplier `t/t_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitComponent {
    pub modulus: u64,
    pub t: u64,
    pub multiplier: u64,
}

/// The isomorphism `a ↦ (a·t/t_i mod p_i^{k_i})_i` from `B_t(n)` onto `∏ B_{t_i}(p_i^{k_i})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingIso {
    pub n: u64,
    pub t: u64,
    pub components: Vec<SplitComponent>,
}

/// Build the splitting map for `t = t_1···t_s`, each `t_i > 1` a power of `p_i`
/// not exceeding `p_i^{k_i}`. Here `t` is taken literally (pass `n` for the
/// trivial brace).
pub fn bt_splitting_iso(n: u64, t: u64) -> Result<SplittingIso> {
    let f = factorize(n)?;
    if n == 1 || t == 0 || n % t != 0 {
        return Err(Error::InvalidParameters(format!(
            "t = {t} must be a divisor of n = {n} of the form t_1···t_s"
        )));
    }
    let mut components = Vec::new();
    for &(p, k) in f.factors() {
        let q = p.pow(k);
        let ti = gcd(t, q);
        if ti == 1 {
            return Err(Error::InvalidParameters(format!(
                "t = {t} has no factor of {p}"
            )));
        }
        components.push(SplitComponent {
            modulus: q,
            t: ti,
            multiplier: (t / ti) % q,
        });
    }
    Ok(SplittingIso { n, t, components })
}

impl SplittingIso {
    pub fn apply(&self, a: u64) -> Vec<u64> {
        self.components
            .iter()
            .map(|c| mul_mod(a, c.multiplier, c.modulus))
            .collect()
    }

    /// Index of `f(a)` in the lexicographic product carrier.
    pub fn index(&self, a: u64) -> u64 {
        self.apply(a)
            .iter()
            .zip(&self.components)
            .fold(0, |acc, (&v, c)| acc * c.modulus + v)
    }

    pub fn component_braces(&self) -> Result<Vec<BraceTable>> {
        self.components
            .iter()
            .map(|c| BraceTable::parametric(c.modulus, c.t))
            .collect()
    }

    /// Entrywise check that the map is a bijection respecting `+` and `∘`.
    pub fn certify(&self) -> Result<bool> {
        let source = BraceTable::parametric(self.n, self.t)?;
        let parts = self.component_braces()?;
        let images: Vec<Vec<u64>> = (0..self.n).map(|a| self.apply(a)).collect();
        let mut seen = vec![false; self.n as usize];
        for a in 0..self.n {
            let i = self.index(a) as usize;
            if seen[i] {
                return Ok(false);
            }
            seen[i] = true;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                let sum = &images[source.add(a, b) as usize];
                let prod = &images[source.circ(a, b) as usize];
                for (i, part) in parts.iter().enumerate() {
                    let (fa, fb) = (images[a as usize][i], images[b as usize][i]);
                    if part.add(fa, fb) != sum[i] || part.circ(fa, fb) != prod[i] {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}
