use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use rootavg::cyclotomic::{CyclotomicRing, ExpSum};
use rootavg::integrality::mu_exponents;
use rootavg::modfun::PolyModN;
use rootavg::search::FunctionSpace;
use rootavg::{
    character_table, degree, enumerate_functions, galois_equivariance_check, interpolate, is_mu_integral, is_perfect,
    mu_isometry, mu_numerator, passes_a1, passes_all, reduce, separation_condition, shift_reduction_check,
    stothers_holds, verify_conjecture, verify_theorem, w_set, CycInt, ModFunction, SearchConfig,
};

fn coprime(k: i64, n: usize) -> bool {
    num_integer::gcd(k, n as i64) == 1
}

fn exp_sum(n: usize, max_count: u64) -> impl Strategy<Value = ExpSum> {
    prop::collection::vec(0..=max_count, n).prop_map(move |c| ExpSum::from_counts(n, c).unwrap())
}

fn function(n: usize) -> impl Strategy<Value = ModFunction> {
    prop::collection::vec(0..n, n).prop_map(move |t| ModFunction::new(n, t).unwrap())
}

fn function_any() -> impl Strategy<Value = ModFunction> {
    (1usize..=8).prop_flat_map(function)
}

fn element(n: usize) -> impl Strategy<Value = CycInt> {
    let rank = CyclotomicRing::new(n).unwrap().rank();
    prop::collection::vec(-50i64..50, rank).prop_map(move |c| CycInt::from_i64s(n, &c).unwrap())
}

#[test]
fn full_orbit_vanishes() {
    for n in 2..=30 {
        assert!(reduce(&ExpSum::from_counts(n, vec![1; n]).unwrap()).is_zero(), "n={n}");
    }
    assert_eq!(
        reduce(&ExpSum::from_counts(1, vec![1]).unwrap()),
        CycInt::from_integer(1, 1).unwrap()
    );
}

#[test]
fn linear_tables_are_distinct() {
    for n in 1..=8usize {
        let tables: BTreeSet<_> = (0..n as i64)
            .flat_map(|a| (0..n as i64).map(move |b| ModFunction::linear(n, a, b).unwrap()))
            .collect();
        assert_eq!(tables.len(), n * n);
    }
}

#[test]
fn linear_soundness_up_to_8() {
    for n in 1..=8usize {
        for alpha in 0..n {
            for beta in 0..n {
                let f = ModFunction::from_poly(&PolyModN::new(n, vec![beta, alpha]).unwrap());
                assert!(passes_all(&f), "n={n} α={alpha} β={beta}");
            }
        }
    }
}

#[test]
fn a_zero_row_is_always_integral() {
    for n in 1..=6 {
        for f in enumerate_functions(n).unwrap().step_by(7) {
            for b in 0..n as i64 {
                assert!(is_mu_integral(&f, 0, b).integral);
            }
        }
    }
}

#[test]
fn stothers_exhaustive_small_primes() {
    for p in [2, 3, 5] {
        assert!(enumerate_functions(p).unwrap().all(|f| stothers_holds(&f).unwrap()));
    }
}

#[test]
fn linear_representation_iff_degree_at_most_one() {
    for p in [2, 3, 5] {
        for f in enumerate_functions(p).unwrap() {
            assert_eq!(
                f.linear_representation().is_some(),
                degree(&f).unwrap().at_most(1),
                "{f}"
            );
        }
    }
}

/// Over a prime the exponent multiset has p entries, so the sum is
/// integral iff it is constant or vanishes, and vanishes iff it is a
/// permutation of Z_p.
#[test]
fn prime_dichotomy_exhaustive() {
    for p in [2usize, 3, 5] {
        for f in enumerate_functions(p).unwrap() {
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    let w = is_mu_integral(&f, a, b);
                    let constant = mu_exponents(&f, a, b).is_concentrated();
                    assert_eq!(w.integral, constant || w.numerator.is_zero());
                }
            }
            for b in 0..p as i64 {
                let zero = mu_numerator(&f, 1, b).is_zero();
                assert_eq!(zero, f.add_linear(b, 0).is_permutation());
            }
        }
    }
}

#[test]
fn a1_slice_equals_full_grid_at_primes() {
    for p in [2, 3, 5] {
        for f in enumerate_functions(p).unwrap() {
            assert_eq!(passes_a1(&f).unwrap(), passes_all(&f), "{f}");
        }
    }
}

#[test]
fn theorem_passers_are_the_linear_tables() {
    for p in [2usize, 3, 5] {
        let passers: BTreeSet<_> = enumerate_functions(p)
            .unwrap()
            .filter(|f| passes_a1(f).unwrap())
            .collect();
        let linear: BTreeSet<_> = (0..p as i64)
            .flat_map(|a| (0..p as i64).map(move |b| ModFunction::linear(p, a, b).unwrap()))
            .collect();
        assert_eq!(passers, linear);
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let cfg = |w| SearchConfig::default().with_workers(w);
    let base = verify_conjecture(5, &cfg(1)).unwrap().without_timing();
    for workers in [2, 3, 8] {
        let r = verify_conjecture(5, &cfg(workers)).unwrap();
        assert_eq!(
            r.without_timing(),
            rootavg::SearchReport {
                workers,
                ..base.clone()
            }
        );
    }
    let t1 = verify_theorem(5, &cfg(1)).unwrap();
    let t4 = verify_theorem(5, &cfg(4)).unwrap();
    assert_eq!(t1.counterexamples, t4.counterexamples);
    assert_eq!((t1.passing, t1.total_functions), (t4.passing, t4.total_functions));
}

#[test]
fn isometry_sum_matches_direct_sum() {
    for p in [2usize, 3, 5] {
        for f in enumerate_functions(p).unwrap().filter(ModFunction::is_permutation) {
            for a in 0..p {
                for b in 0..p {
                    assert_eq!(mu_isometry(&f, a, b).unwrap(), mu_numerator(&f, a as i64, b as i64));
                }
            }
        }
    }
}

#[test]
fn separation_holds_for_every_bijection() {
    use itertools::Itertools;
    for p in [2usize, 3, 5, 7] {
        for table in (0..p).permutations(p) {
            let f = ModFunction::new(p, table).unwrap();
            assert!(separation_condition(&f).unwrap(), "{f}");
        }
    }
}

#[test]
fn character_orthogonality() {
    for p in [2, 3, 5, 7] {
        let t = character_table(p).unwrap();
        assert!(t.is_orthogonal(), "p={p}");
        let one = CycInt::from_integer(p, 1).unwrap();
        assert!(t.row(0).iter().all(|v| *v == one));
    }
}

#[test]
fn perfect_set_is_a_group() {
    use itertools::Itertools;
    for p in [2usize, 3, 5] {
        let perfect: BTreeSet<ModFunction> = (0..p)
            .permutations(p)
            .map(|t| ModFunction::new(p, t).unwrap())
            .filter(|f| is_perfect(f).unwrap().perfect)
            .collect();
        for f in &perfect {
            assert!(perfect.contains(&f.inverse().unwrap()));
            for g in &perfect {
                assert!(perfect.contains(&f.compose(g).unwrap()));
            }
        }
    }
}

#[test]
fn shift_invariance_exhaustive_n4() {
    for f in enumerate_functions(4).unwrap() {
        for c in 0..4 {
            for d in 0..4 {
                assert!(shift_reduction_check(&f, c, d));
            }
        }
    }
}

proptest! {
    #[test]
    fn reduce_is_additive((s, t) in (1usize..=24).prop_flat_map(|n| (exp_sum(n, 19), exp_sum(n, 19)))) {
        prop_assert_eq!(reduce(&s.merge(&t).unwrap()), reduce(&s).add(&reduce(&t)).unwrap());
    }

    #[test]
    fn full_orbit_does_not_change_value(s in (1usize..=30).prop_flat_map(|n| exp_sum(n, 9))) {
        let orbit = ExpSum::from_counts(s.n(), vec![1; s.n()]).unwrap();
        let shifted = reduce(&s.merge(&orbit).unwrap());
        if s.n() == 1 {
            prop_assert_eq!(shifted, reduce(&s).add(&CycInt::from_integer(1, 1).unwrap()).unwrap());
        } else {
            prop_assert_eq!(shifted, reduce(&s));
        }
    }

    #[test]
    fn word_and_bigint_reduction_agree(s in (1usize..=40).prop_flat_map(|n| exp_sum(n, 1 << 20))) {
        let ring = CyclotomicRing::new(s.n()).unwrap();
        let big = ring.reduce_poly(s.counts().iter().copied().map(BigInt::from).collect());
        prop_assert_eq!(ring.reduce(&s), big);
    }

    #[test]
    fn galois_composes(
        (x, k, l) in (1usize..=20).prop_flat_map(|n| (element(n), 1i64..60, 1i64..60))
    ) {
        let n = x.n();
        prop_assume!(coprime(k, n) && coprime(l, n));
        let lhs = x.galois_conjugate(l).unwrap().galois_conjugate(k).unwrap();
        prop_assert_eq!(lhs, x.galois_conjugate((k * l) % n as i64).unwrap());
    }

    #[test]
    fn galois_preserves_divisibility(
        (x, k, m) in (1usize..=20).prop_flat_map(|n| (element(n), 1i64..60, 1u64..8))
    ) {
        prop_assume!(coprime(k, x.n()));
        let scaled = x.scalar_mul(&BigInt::from(m));
        prop_assert!(scaled.galois_conjugate(k).unwrap().is_divisible_by(m));
        prop_assert_eq!(x.is_divisible_by(m), x.galois_conjugate(k).unwrap().is_divisible_by(m));
    }

    #[test]
    fn galois_is_a_ring_map((x, y, k) in (1usize..=15).prop_flat_map(|n| (element(n), element(n), 1i64..30))) {
        prop_assume!(coprime(k, x.n()));
        let prod = x.mul(&y).unwrap().galois_conjugate(k).unwrap();
        prop_assert_eq!(prod, x.galois_conjugate(k).unwrap().mul(&y.galois_conjugate(k).unwrap()).unwrap());
    }

    #[test]
    fn interpolation_round_trip_p7(coeffs in prop::collection::vec(0usize..7, 0..=7)) {
        let poly = PolyModN::new(7, coeffs).unwrap();
        prop_assert_eq!(interpolate(&ModFunction::from_poly(&poly)).unwrap(), poly);
    }

    #[test]
    fn linear_representation_reproduces_table(f in function_any()) {
        if let Some((alpha, beta)) = f.linear_representation() {
            let line = ModFunction::from_poly(&PolyModN::new(f.n(), vec![beta, alpha]).unwrap());
            prop_assert_eq!(line, f);
        }
    }

    #[test]
    fn linear_iff_low_degree_p7(f in function(7)) {
        prop_assert_eq!(f.linear_representation().is_some(), degree(&f).unwrap().at_most(1));
    }

    #[test]
    fn w_sets_translate((f, mu) in prop::sample::select(vec![2usize, 3, 5, 7]).prop_flat_map(|p| (function(p), 0..p))) {
        let p = f.n();
        let shifted = w_set(&f.add_linear(mu as i64, 0)).unwrap();
        let base = w_set(&f).unwrap();
        for lambda in 0..p {
            prop_assert_eq!(shifted.contains(lambda), base.contains((lambda + mu) % p));
        }
    }

    #[test]
    fn stothers_p7(f in function(7)) {
        prop_assert!(stothers_holds(&f).unwrap());
    }

    #[test]
    fn prime_dichotomy_p7((f, a, b) in (function(7), 0i64..7, 0i64..7)) {
        let w = is_mu_integral(&f, a, b);
        prop_assert_eq!(w.integral, mu_exponents(&f, a, b).is_concentrated() || w.numerator.is_zero());
    }

    #[test]
    fn equivariance_n6((f, a, b) in (function(6), 0i64..6, 0i64..6)) {
        for k in [1, 5, -1, 7] {
            prop_assert!(galois_equivariance_check(&f, a, b, k).unwrap());
        }
    }

    #[test]
    fn shift_invariance_sampled(
        (f, c, d) in prop::sample::select(vec![5usize, 6]).prop_flat_map(|n| (function(n), 0..n as i64, 0..n as i64))
    ) {
        prop_assert!(shift_reduction_check(&f, c, d));
    }

    #[test]
    fn enumeration_index_matches_table(n in 1usize..=6, frac in 0.0f64..1.0) {
        let space = FunctionSpace::new(n).unwrap();
        let index = ((space.len() as f64) * frac) as u64 % space.len();
        let via_iter = space.iter_range(index..index + 1).next().unwrap();
        prop_assert_eq!(via_iter.table().to_vec(), space.table_at(index));
        let value = via_iter.table().iter().fold(0u64, |acc, &d| acc * n as u64 + d as u64);
        prop_assert_eq!(value, index);
    }
}
