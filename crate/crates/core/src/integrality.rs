//! The averages `μ_f^{a,b} = (1/n) Σ_x ω^{a·f(x) + b·x}` and their
//! integrality.
//!
//! `Z[ω]` has no division, so everything is phrased on the numerator
//! `Σ_x ω^{a·f(x) + b·x}`: the average is an algebraic integer iff the
//! numerator is divisible by `n` in `Z[ω]`.

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, residue};
use crate::cyclotomic::{reduce, CycInt, CyclotomicRing, ExpSum};
use crate::error::{Error, Result};
use crate::modfun::ModFunction;

/// One evaluated `(a, b)` cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuWitness {
    pub a: usize,
    pub b: usize,
    pub numerator: CycInt,
    pub integral: bool,
}

/// The multiset `{a·f(x) + b·x mod n : x ∈ Z_n}`.
pub fn mu_exponents(f: &ModFunction, a: i64, b: i64) -> ExpSum {
    let n = f.n();
    let (a, b) = (residue(a, n), residue(b, n));
    let mut s = ExpSum::empty(n).expect("ModFunction has positive modulus");
    for (x, &v) in f.table().iter().enumerate() {
        s.push(((a * v + b * x) % n) as i64);
    }
    s
}

pub fn mu_numerator(f: &ModFunction, a: i64, b: i64) -> CycInt {
    reduce(&mu_exponents(f, a, b))
}

pub fn is_mu_integral(f: &ModFunction, a: i64, b: i64) -> MuWitness {
    let n = f.n();
    let numerator = mu_numerator(f, a, b);
    let integral = numerator.is_divisible_by(n as u64);
    MuWitness {
        a: residue(a, n),
        b: residue(b, n),
        numerator,
        integral,
    }
}

/// All `n²` witnesses, row-major in `a`.
pub fn witness_grid(f: &ModFunction) -> Vec<MuWitness> {
    let n = f.n() as i64;
    (0..n)
        .flat_map(|a| (0..n).map(move |b| is_mu_integral(f, a, b)))
        .collect()
}

/// Integrality for every `(a, b) ∈ Z_n²`.
pub fn passes_all(f: &ModFunction) -> bool {
    IntegralityChecker::new(f.n())
        .expect("positive modulus")
        .passes_all(f.table())
}

/// Integrality for `a = 1` and every `b`; prime moduli only.
pub fn passes_a1(f: &ModFunction) -> Result<bool> {
    if !is_prime(f.n()) {
        return Err(Error::NotPrime(f.n()));
    }
    Ok(IntegralityChecker::new(f.n())?.passes_a1(f.table()))
}

/// Checks that "the average of the roots in `s` is an algebraic integer"
/// agrees with "the sum vanishes or all roots coincide". Both sides are
/// evaluated independently; returns whether they agree.
pub fn dichotomy_check(s: &ExpSum) -> Result<bool> {
    let total = s.total();
    if total == 0 {
        return Err(Error::EmptySum);
    }
    let sum = reduce(s);
    let average_integral = sum.is_divisible_by(total);
    let vanishes_or_equal = sum.is_zero() || s.is_concentrated();
    Ok(average_integral == vanishes_or_equal)
}

/// Whether `numerator(ka, kb) == σ_k(numerator(a, b))`.
pub fn galois_equivariance_check(f: &ModFunction, a: i64, b: i64, k: i64) -> Result<bool> {
    let n = f.n();
    let conjugated = mu_numerator(f, a, b).galois_conjugate(k)?;
    let k = residue(k, n) as i64;
    let scaled = mu_numerator(f, k * residue(a, n) as i64, k * residue(b, n) as i64);
    Ok(scaled == conjugated)
}

/// Reusable integrality tester for a fixed modulus. Keeps scratch buffers
/// and a word-size copy of `Φ_n` so that exhaustive scans do not allocate
/// per cell.
#[derive(Debug, Clone)]
pub struct IntegralityChecker {
    ring: CyclotomicRing,
    counts: Vec<i64>,
    reduced: Vec<i64>,
}

impl IntegralityChecker {
    pub fn new(n: usize) -> Result<Self> {
        let ring = CyclotomicRing::new(n)?;
        Ok(Self {
            counts: vec![0; n],
            reduced: Vec::with_capacity(n),
            ring,
        })
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    /// Integrality of `μ^{a,b}` for the function with the given table;
    /// `a` and `b` must already be residues.
    pub fn is_integral(&mut self, table: &[usize], a: usize, b: usize) -> bool {
        let n = self.n();
        debug_assert_eq!(table.len(), n);
        self.counts.iter_mut().for_each(|c| *c = 0);
        for (x, &v) in table.iter().enumerate() {
            self.counts[(a * v + b * x) % n] += 1;
        }
        let m = n as i64;
        if self.ring.reduce_small(&self.counts, &mut self.reduced) {
            return self.reduced.iter().all(|c| c % m == 0);
        }
        let counts = self.counts.iter().map(|&c| c as u64).collect();
        let s = ExpSum::from_counts(n, counts).expect("length n");
        self.ring.reduce(&s).is_divisible_by(n as u64)
    }

    pub fn passes_all(&mut self, table: &[usize]) -> bool {
        let n = self.n();
        (0..n).all(|a| (0..n).all(|b| self.is_integral(table, a, b)))
    }

    /// Only meaningful for prime `n`; the caller is responsible for that.
    pub fn passes_a1(&mut self, table: &[usize]) -> bool {
        let n = self.n();
        let a = 1 % n;
        (0..n).all(|b| self.is_integral(table, a, b))
    }
}
