//! Perfect self-isometries of the cyclic group `C_p` induced by bijections
//! of its irreducible characters.
//!
//! With `C_p = ⟨u⟩` the characters are `χ_x(u^a) = ω^{ax}`. A bijection `f`
//! of `{0, …, p-1}` induces `I_f(χ_x) = χ_{f(x)}`, and
//!
//! ```text
//! μ_I(u^a, u^b) = Σ_x I_f(χ_x)(u^a) · χ_x(u^b)
//! ```
//!
//! `I_f` permutes an orthonormal basis of the character lattice, so it is
//! always an isometry for the standard inner product of characters; only the
//! integrality and separation conditions need computing. The isometry is
//! represented by `f` alone and never materialized as a matrix. Group
//! elements are exponents of `u`, with the identity at `a = 0`.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{checked_factorial, is_prime};
use crate::cyclotomic::{CycInt, CyclotomicRing, ExpSum};
use crate::error::{Error, Result};
use crate::modfun::ModFunction;
use crate::search::SearchConfig;

/// Character table of `C_p`: `entries[x][a] = χ_x(u^a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCharacterTable {
    p: usize,
    entries: Vec<Vec<CycInt>>,
}

pub fn character_table(p: usize) -> Result<CyclicCharacterTable> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let ring = CyclotomicRing::new(p)?;
    let entries = (0..p)
        .map(|x| (0..p).map(|a| ring.root((a * x % p) as i64)).collect())
        .collect();
    Ok(CyclicCharacterTable { p, entries })
}

impl CyclicCharacterTable {
    pub fn p(&self) -> usize {
        self.p
    }

    /// `χ_x(u^a)`.
    pub fn value(&self, x: usize, a: usize) -> &CycInt {
        &self.entries[x % self.p][a % self.p]
    }

    /// Exponent `e` with `χ_x(u^a) = ω^e`.
    pub fn value_exponent(&self, x: usize, a: usize) -> usize {
        (x % self.p) * (a % self.p) % self.p
    }

    pub fn row(&self, x: usize) -> &[CycInt] {
        &self.entries[x]
    }

    /// `Σ_a χ_x(u^a) · conj(χ_y(u^a))`, conjugation being `σ_{p-1}`.
    pub fn inner_sum(&self, x: usize, y: usize) -> CycInt {
        let ring = CyclotomicRing::new(self.p).expect("prime modulus");
        let conj = (self.p as i64 - 1).max(1);
        self.entries[x]
            .iter()
            .zip(&self.entries[y])
            .fold(ring.zero(), |acc, (u, v)| {
                let term = u
                    .mul(&v.galois_conjugate(conj).expect("p - 1 is a unit"))
                    .expect("same ring");
                acc.add(&term).expect("same ring")
            })
    }

    /// Whether `inner_sum(x, y) = p·δ_{xy}` for all pairs.
    pub fn is_orthogonal(&self) -> bool {
        let p = self.p;
        let scaled_one = CycInt::from_integer(p, p as i64).expect("prime modulus");
        let zero = CycInt::zero(p).expect("prime modulus");
        (0..p).all(|x| (0..p).all(|y| self.inner_sum(x, y) == if x == y { scaled_one.clone() } else { zero.clone() }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryReport {
    pub p: usize,
    /// The bijection on character indices, as a table.
    #[serde(with = "table_only")]
    pub f: ModFunction,
    pub integrality_ok: bool,
    pub separation_ok: bool,
    pub perfect: bool,
    pub linear_form: Option<(usize, usize)>,
}

mod table_only {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::modfun::ModFunction;

    pub fn serialize<S: Serializer>(f: &ModFunction, s: S) -> Result<S::Ok, S::Error> {
        f.table().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ModFunction, D::Error> {
        use serde::de::Error as _;
        let table = Vec::<usize>::deserialize(d)?;
        ModFunction::new(table.len(), table).map_err(D::Error::custom)
    }
}

fn require_bijection(f: &ModFunction) -> Result<()> {
    if !is_prime(f.n()) {
        return Err(Error::NotPrime(f.n()));
    }
    if !f.is_permutation() {
        return Err(Error::NotBijection(f.n()));
    }
    Ok(())
}

/// Evaluates `μ_I` through a character table without re-validating `f`.
struct IsometryEvaluator {
    table: CyclicCharacterTable,
    ring: CyclotomicRing,
}

impl IsometryEvaluator {
    fn new(p: usize) -> Result<Self> {
        Ok(Self {
            table: character_table(p)?,
            ring: CyclotomicRing::new(p)?,
        })
    }

    /// `Σ_x χ_{f(x)}(u^a)·χ_x(u^b)`; products of roots of unity are taken
    /// by adding character exponents.
    fn mu(&self, f: &ModFunction, a: usize, b: usize) -> CycInt {
        let p = self.table.p;
        let mut s = ExpSum::empty(p).expect("prime modulus");
        for x in 0..p {
            let e = self.table.value_exponent(f.apply(x), a) + self.table.value_exponent(x, b);
            s.push(e as i64);
        }
        self.ring.reduce(&s)
    }

    fn integrality(&self, f: &ModFunction) -> bool {
        let p = self.table.p;
        (0..p).all(|a| (0..p).all(|b| self.mu(f, a, b).is_divisible_by(p as u64)))
    }

    fn separation(&self, f: &ModFunction) -> bool {
        let p = self.table.p;
        (0..p).all(|a| (0..p).all(|b| (a == 0) == (b == 0) || self.mu(f, a, b).is_zero()))
    }

    fn report(&self, f: &ModFunction) -> IsometryReport {
        let integrality_ok = self.integrality(f);
        let separation_ok = self.separation(f);
        let linear_form = f.linear_representation().filter(|&(alpha, _)| alpha != 0);
        IsometryReport {
            p: self.table.p,
            f: f.clone(),
            integrality_ok,
            separation_ok,
            perfect: integrality_ok && separation_ok,
            linear_form,
        }
    }
}

/// `μ_I(u^a, u^b)` for the isometry induced by the bijection `f`.
pub fn mu_isometry(f: &ModFunction, a: usize, b: usize) -> Result<CycInt> {
    require_bijection(f)?;
    Ok(IsometryEvaluator::new(f.n())?.mu(f, a % f.n(), b % f.n()))
}

/// `μ_I(g, h)/p` is an algebraic integer for every pair of group elements.
pub fn integrality_condition(f: &ModFunction) -> Result<bool> {
    require_bijection(f)?;
    Ok(IsometryEvaluator::new(f.n())?.integrality(f))
}

/// `μ_I(g, h) ≠ 0` only when `g`, `h` are both the identity or both not.
pub fn separation_condition(f: &ModFunction) -> Result<bool> {
    require_bijection(f)?;
    Ok(IsometryEvaluator::new(f.n())?.separation(f))
}

pub fn is_perfect(f: &ModFunction) -> Result<IsometryReport> {
    require_bijection(f)?;
    Ok(IsometryEvaluator::new(f.n())?.report(f))
}

/// Reports for every perfect isometry among the `p!` character bijections,
/// in lexicographic table order.
pub fn classify_perfect(p: usize, cfg: &SearchConfig) -> Result<Vec<IsometryReport>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    cfg.check_budget(checked_factorial(p), || format!("{p}!"))?;
    let evaluator = IsometryEvaluator::new(p)?;
    let bijections: Vec<Vec<usize>> = (0..p).permutations(p).collect();
    let mut perfect: Vec<IsometryReport> = cfg.pool().install(|| {
        bijections
            .into_par_iter()
            .filter_map(|table| {
                let f = ModFunction::new(p, table).expect("permutation of 0..p");
                let report = evaluator.report(&f);
                report.perfect.then_some(report)
            })
            .collect()
    });
    perfect.sort_by(|x, y| x.f.cmp(&y.f));
    Ok(perfect)
}
