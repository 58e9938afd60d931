use proptest::prelude::*;

use cocyclic::arith::{factorize, gcd, inverse_mod, is_nilpotent, mul_mod};
use cocyclic::brace::{bt_splitting_iso, make_bt};
use cocyclic::classify::{
    canonical_invariants, class_representatives, count_cocyclic, enumerate_all, refute_rump,
    valid_t, CocyclicInvariants,
};
use cocyclic::solution::iso::{is_isomorphism, scaling_map};
use cocyclic::solution::{make_k, retract, split_solution, IsoSearch, KParams, SolutionTable};

fn nilpotents(n: u64) -> Vec<u64> {
    let f = factorize(n).unwrap();
    (0..n).filter(|&t| is_nilpotent(t, &f)).collect()
}

fn units(n: u64) -> Vec<u64> {
    (1..=n).filter(|&a| gcd(a, n) == 1).map(|a| a % n).collect()
}

/// Every valid constructor triple of order `n`, all families.
fn all_params(n: u64) -> Vec<KParams> {
    let mut out = Vec::new();
    for t in nilpotents(n) {
        if n % 4 != 0 || t % 4 == 0 {
            out.extend(
                units(n)
                    .into_iter()
                    .map(|a| KParams::standard(n, t, a).unwrap()),
            );
        }
    }
    if n % 8 == 4 {
        let m = factorize(n / 4).unwrap();
        for t in (1..n).step_by(2).filter(|&t| is_nilpotent(t, &m)) {
            out.extend(
                units(n)
                    .into_iter()
                    .map(|a| KParams::four_n(n, t, a).unwrap()),
            );
        }
    }
    if n == 4 {
        out.extend([1, 3].map(|a| KParams::tilde4(a).unwrap()));
    }
    out
}

/// Number of isomorphism classes among `tables`, by bijection search.
fn count_classes(tables: &[SolutionTable]) -> usize {
    let search = IsoSearch::with_cap(32);
    let mut reps: Vec<&SolutionTable> = Vec::new();
    for s in tables {
        if !reps.iter().any(|r| search.find(r, s).unwrap().is_some()) {
            reps.push(s);
        }
    }
    reps.len()
}

#[test]
fn brace_law_exhaustive_small() {
    for n in 1..=50 {
        for t in nilpotents(n) {
            make_bt(n, t).unwrap().verify_axioms().unwrap();
        }
    }
}

proptest! {
    #[test]
    fn brace_law_sampled(n in 51u64..5000, t_seed in any::<u64>(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = factorize(n).unwrap();
        let t = (t_seed % (n / f.radical())) * f.radical();
        let br = make_bt(n, t).unwrap();
        prop_assert!(br.check_triple(a % n, b % n, c % n).is_ok());
    }

    #[test]
    fn lambda_is_additive(n in 2u64..2000, t_seed in any::<u64>(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let rad = factorize(n).unwrap().radical();
        let br = make_bt(n, (t_seed % (n / rad)) * rad).unwrap();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(br.lambda(a, br.add(b, c)), br.add(br.lambda(a, b), br.lambda(a, c)));
        prop_assert_eq!(br.lambda(br.circ(a, b), c), br.lambda(a, br.lambda(b, c)));
    }
}

#[test]
fn parametric_socle_is_kernel_of_t() {
    for n in 1..=120 {
        for t in nilpotents(n) {
            let b = make_bt(n, t).unwrap();
            let generic: Vec<u64> = (0..n)
                .filter(|&a| (0..n).all(|x| b.lambda(a, x) == x))
                .collect();
            assert_eq!(b.socle().members, generic, "B_{t}({n})");
            assert!(generic.iter().all(|&a| mul_mod(t, a, n) == 0));
        }
    }
}

#[test]
fn nilpotency_degree_is_ring_degree() {
    for n in 2..=100 {
        for t in nilpotents(n) {
            let ring = (1..)
                .find(|&m| (0..m).fold(1 % n, |acc, _| mul_mod(acc, t, n)) == 0)
                .unwrap();
            let d = make_bt(n, t).unwrap().nilpotency_chains();
            assert_eq!(d.right, Some(ring), "B_{t}({n})");
            assert_eq!(d.left, d.right, "B_{t}({n})");
        }
    }
}

#[test]
fn associated_solutions_verify() {
    for n in 1..=40 {
        for t in nilpotents(n) {
            let s = make_bt(n, t).unwrap().associated_solution().unwrap();
            assert!(s.verify().all_pass(), "B_{t}({n})");
        }
    }
}

#[test]
fn splitting_iso_certified_up_to_1000() {
    for n in 2..=1000 {
        let f = factorize(n).unwrap();
        if f.factors().len() < 2 {
            continue;
        }
        for t in valid_t(n).unwrap() {
            // t_i <= p_i^{k_i} always holds for divisors of n
            assert!(
                bt_splitting_iso(n, t).unwrap().certify().unwrap(),
                "B_{t}({n})"
            );
        }
    }
}

#[test]
fn scaling_gives_isomorphism() {
    for n in 2..=30u64 {
        for p in all_params(n) {
            if p.family() != cocyclic::solution::Family::Standard {
                continue;
            }
            for r in units(n) {
                let rt = mul_mod(r, p.t(), n);
                let ar = mul_mod(p.a(), inverse_mod(r, n).unwrap(), n);
                let Ok(q) = KParams::standard(n, rt, ar) else {
                    continue;
                };
                let phi = scaling_map(n, r).unwrap();
                assert!(
                    is_isomorphism(&make_k(&p).unwrap(), &make_k(&q).unwrap(), &phi),
                    "{p} -> {q} with r = {r}"
                );
            }
        }
    }
}

#[test]
fn split_witnesses_certified() {
    for n in 2..=100 {
        for p in all_params(n) {
            let split = split_solution(&p);
            // standard t must factor as p_1^{t_1}···p_s^{t_s}
            let Ok(split) = split else { continue };
            assert!(split.certify().unwrap(), "{p}");
        }
    }
}

#[test]
fn closed_form_count_matches_bruteforce() {
    for n in 1..=12 {
        let tables: Vec<SolutionTable> = all_params(n).iter().map(|p| make_k(p).unwrap()).collect();
        assert_eq!(
            count_classes(&tables) as u64,
            count_cocyclic(n).unwrap().total,
            "n = {n}"
        );
    }
}

#[test]
fn fourn_range_matches_bruteforce() {
    for n in [12u64, 20] {
        let params: Vec<KParams> = all_params(n)
            .into_iter()
            .filter(|p| p.family() == cocyclic::solution::Family::FourN)
            .collect();
        let tables: Vec<SolutionTable> = params.iter().map(|p| make_k(p).unwrap()).collect();
        let predicted: usize = valid_t(n)
            .unwrap()
            .into_iter()
            .filter(|t| t % 4 == 2)
            .map(|t| class_representatives(n, t).len())
            .sum();
        assert_eq!(count_classes(&tables), predicted, "n = {n}");
    }
}

#[test]
fn round_trip_and_socle_index() {
    for n in 1..=200 {
        let report = enumerate_all(n).unwrap();
        assert_eq!(report.total, count_cocyclic(n).unwrap().total);
        assert!(report.certify_pairwise().unwrap());
        for class in &report.classes {
            let s = class.materialize().unwrap();
            assert_eq!(retract(&s).size() as u64, class.socle_index(), "{class}");
            assert_eq!(canonical_invariants(&s).unwrap(), *class);
        }
    }
}

#[test]
fn invariants_are_validated() {
    assert!(CocyclicInvariants::new(36, 12, 5).is_ok());
    assert!(CocyclicInvariants::new(36, 12, 2).is_err());
    assert!(CocyclicInvariants::new(36, 4, 1).is_err());
    assert!(CocyclicInvariants::new(16, 2, 1).is_err());
}

#[test]
fn count_is_multiplicative() {
    for a in 1..=60u64 {
        for b in 1..=60u64 {
            if gcd(a, b) == 1 {
                assert_eq!(
                    count_cocyclic(a * b).unwrap().total,
                    count_cocyclic(a).unwrap().total * count_cocyclic(b).unwrap().total,
                    "{a}·{b}"
                );
            }
        }
    }
}

#[test]
fn refutation_for_odd_prime_squares() {
    for p in [3u64, 5, 7, 11, 13] {
        let r = refute_rump(p * p).unwrap();
        assert_eq!(r.actual, p);
        assert_eq!(r.predicted, 2);
        assert_eq!(r.socle_index, p);
        assert!(r.certificate.exhaustive_nodes.is_some());
    }
}
