//! Exact arithmetic in the ring `Z[ω]`, `ω = e^{2πi/n}`.
//!
//! Elements are stored as integer coefficient vectors in the power basis
//! `1, ω, …, ω^{φ(n)-1}`, i.e. as remainders modulo the cyclotomic
//! polynomial `Φ_n`. Two elements are equal iff their vectors are equal.
//!
//! Divisibility is the integrality test used everywhere else in the crate:
//! for `x ∈ Z[ω]` and a positive integer `m`, `x/m` is an algebraic integer
//! iff every coefficient of `x` is divisible by `m`. This relies on the
//! classical fact that `Z[ω]` is the full ring of integers of `Q(ω)` and the
//! powers of `ω` form an integral basis (see e.g. Washington, *Introduction
//! to Cyclotomic Fields*, Theorem 2.6).
//!
//! `ω` is never approximated numerically.

mod poly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, residue};
use crate::error::{Error, Result};

/// The cyclotomic polynomial `Φ_n`, monic, ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPoly {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl CycPoly {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `φ(n)`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<CycPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CycPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn phi(n: usize) -> Arc<CycPoly> {
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    // X^n - 1 divided by Φ_d for every proper divisor d.
    let mut coeffs = poly::x_pow_minus_one(n);
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        coeffs = poly::exact_div_monic(&coeffs, phi(d).coeffs()).expect("Φ_d divides X^n - 1 for d | n");
    }
    let computed = Arc::new(CycPoly { n, coeffs });
    let mut guard = cache().write().expect("cyclotomic cache poisoned");
    Arc::clone(guard.entry(n).or_insert(computed))
}

/// Computes `Φ_n` by exact recursive division of `X^n - 1`. Results are
/// cached per `n`.
pub fn cyclotomic_poly(n: usize) -> Result<CycPoly> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok((*phi(n)).clone())
}

/// Formal sum `Σ counts[e]·ω^e` before reduction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpSum {
    n: usize,
    counts: Vec<u64>,
}

impl ExpSum {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { n, counts: vec![0; n] })
    }

    pub fn from_counts(n: usize, counts: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        if counts.len() != n {
            return Err(Error::CoeffLength {
                len: counts.len(),
                expected: n,
            });
        }
        Ok(Self { n, counts })
    }

    /// Builds the multiset from exponents, reducing each modulo `n`.
    pub fn from_exponents<I: IntoIterator<Item = i64>>(n: usize, exps: I) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for e in exps {
            s.push(e);
        }
        Ok(s)
    }

    pub fn push(&mut self, exponent: i64) {
        self.counts[residue(exponent, self.n)] += 1;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Number of roots of unity in the sum.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// True when every summand is the same root of unity.
    pub fn is_concentrated(&self) -> bool {
        self.counts.iter().filter(|&&c| c > 0).count() == 1
    }

    /// Multiset union.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        check_same(self.n, other.n)?;
        let counts = self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect();
        Ok(Self { n: self.n, counts })
    }
}

/// Canonical element of `Z[ω]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(n={}, [", self.n)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("])")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c < &BigInt::zero() { "-" } else { "+" };
            let mag = c.magnitude();
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("w")?,
                (1, false) => write!(f, "{mag}*w")?,
                (_, true) => write!(f, "w^{i}")?,
                (_, false) => write!(f, "{mag}*w^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn check_same(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ModulusMismatch { left, right })
    }
}

impl CycInt {
    /// Wraps a coefficient vector of length `φ(n)`. Any such vector is
    /// already canonical.
    pub fn new(n: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        let ring = CyclotomicRing::new(n)?;
        if coeffs.len() != ring.rank() {
            return Err(Error::CoeffLength {
                len: coeffs.len(),
                expected: ring.rank(),
            });
        }
        Ok(Self { n, coeffs })
    }

    pub fn from_i64s(n: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(n, coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Ok(CyclotomicRing::new(n)?.zero())
    }

    /// The rational integer `k` viewed in `Z[ω]`.
    pub fn from_integer(n: usize, k: i64) -> Result<Self> {
        let mut z = Self::zero(n)?;
        z.coeffs[0] = BigInt::from(k);
        Ok(z)
    }

    /// `ω^e`.
    pub fn root(n: usize, e: i64) -> Result<Self> {
        Ok(CyclotomicRing::new(n)?.root(e))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as `i64`, when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(self.n, other.n)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { n: self.n, coeffs })
    }

    pub fn negate(&self) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate())
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(self.n, other.n)?;
        let ring = CyclotomicRing::new(self.n)?;
        Ok(ring.reduce_poly(poly::mul(&self.coeffs, &other.coeffs)))
    }

    /// Whether `self / m` is an algebraic integer. `m = 0` is treated as
    /// dividing only zero.
    pub fn is_divisible_by(&self, m: u64) -> bool {
        if m == 0 {
            return self.is_zero();
        }
        let m = BigInt::from(m);
        self.coeffs.iter().all(|c| c.is_multiple_of(&m))
    }

    /// The Galois conjugate `σ_k(self)` where `σ_k(ω) = ω^k`.
    pub fn galois_conjugate(&self, k: i64) -> Result<Self> {
        let n = self.n;
        if k.gcd(&(n as i64)) != 1 {
            return Err(Error::NotCoprime { k, n });
        }
        let ring = CyclotomicRing::new(n)?;
        let k = residue(k, n);
        let mut lifted = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            lifted[(i * k) % n] += c;
        }
        Ok(ring.reduce_poly(lifted))
    }
}

impl std::ops::Neg for CycInt {
    type Output = CycInt;

    fn neg(self) -> CycInt {
        self.negate()
    }
}

/// Reduces a formal sum of roots of unity to its canonical form.
pub fn reduce(s: &ExpSum) -> CycInt {
    CyclotomicRing::new(s.n).expect("ExpSum has positive modulus").reduce(s)
}

/// Handle on `Z[ω]` for a fixed `n`: the modulus polynomial plus a
/// machine-word copy of it for the hot reduction path.
#[derive(Debug, Clone)]
pub struct CyclotomicRing {
    phi: Arc<CycPoly>,
    phi_small: Option<Vec<i64>>,
}

impl CyclotomicRing {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let phi = phi(n);
        let phi_small = phi.coeffs.iter().map(ToPrimitive::to_i64).collect();
        Ok(Self { phi, phi_small })
    }

    pub fn n(&self) -> usize {
        self.phi.n
    }

    /// `φ(n)`, the length of every canonical coefficient vector.
    pub fn rank(&self) -> usize {
        self.phi.degree()
    }

    pub fn modulus(&self) -> &CycPoly {
        &self.phi
    }

    pub fn zero(&self) -> CycInt {
        CycInt {
            n: self.n(),
            coeffs: vec![BigInt::zero(); self.rank()],
        }
    }

    pub fn root(&self, e: i64) -> CycInt {
        let mut s = ExpSum::empty(self.n()).expect("positive modulus");
        s.push(e);
        self.reduce(&s)
    }

    pub fn reduce(&self, s: &ExpSum) -> CycInt {
        assert_eq!(s.n, self.n(), "ExpSum modulus does not match ring");
        let mut scratch = Vec::with_capacity(s.n);
        let small: Option<Vec<i64>> = s.counts.iter().map(|&c| i64::try_from(c).ok()).collect();
        if let Some(small) = small {
            if self.reduce_small(&small, &mut scratch) {
                let coeffs = scratch.iter().copied().map(BigInt::from).collect();
                return CycInt { n: self.n(), coeffs };
            }
        }
        self.reduce_poly(s.counts.iter().copied().map(BigInt::from).collect())
    }

    /// Arbitrary-precision reduction of an integer polynomial in `ω`.
    pub fn reduce_poly(&self, mut p: Vec<BigInt>) -> CycInt {
        if p.len() < self.rank() {
            p.resize(self.rank(), BigInt::zero());
        }
        poly::rem_monic_in_place(&mut p, &self.phi.coeffs);
        CycInt { n: self.n(), coeffs: p }
    }

    /// Word-size reduction of `Σ coeffs[e]·ω^e` into `out`. Returns `false`
    /// on overflow, in which case `out` is unspecified and the caller must
    /// fall back to [`reduce_poly`](Self::reduce_poly).
    pub fn reduce_small(&self, coeffs: &[i64], out: &mut Vec<i64>) -> bool {
        let Some(phi) = &self.phi_small else {
            return false;
        };
        let d = phi.len() - 1;
        out.clear();
        out.extend_from_slice(coeffs);
        if out.len() < d {
            out.resize(d, 0);
        }
        for i in (d..out.len()).rev() {
            let c = out[i];
            if c == 0 {
                continue;
            }
            for (j, &pj) in phi[..d].iter().enumerate() {
                if pj == 0 {
                    continue;
                }
                let Some(v) = c.checked_mul(pj).and_then(|t| out[i - d + j].checked_sub(t)) else {
                    return false;
                };
                out[i - d + j] = v;
            }
        }
        out.truncate(d);
        true
    }
}

// JSON: {"n": <int>, "coeffs": [<int>, ...]}. Coefficients outside the i64
// range are written as decimal strings.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(c: &BigInt) -> Self {
        c.to_i64().map_or_else(|| JsonInt::Big(c.to_string()), JsonInt::Small)
    }
}

#[derive(Serialize, Deserialize)]
struct CycIntJson {
    n: usize,
    coeffs: Vec<JsonInt>,
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CycIntJson {
            n: self.n,
            coeffs: self.coeffs.iter().map(JsonInt::from).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CycIntJson::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .into_iter()
            .map(|c| match c {
                JsonInt::Small(v) => Ok(BigInt::from(v)),
                JsonInt::Big(s) => s.parse::<BigInt>().map_err(D::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()?;
        CycInt::new(raw.n, coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    fn sum(n: usize, counts: &[u64]) -> CycInt {
        reduce(&ExpSum::from_counts(n, counts.to_vec()).unwrap())
    }

    #[test]
    fn phi_small_cases() {
        assert_eq!(cyclotomic_poly(1).unwrap().coeffs(), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(3).unwrap().coeffs(), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(6).unwrap().coeffs(), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12).unwrap().coeffs(), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_poly(0), Err(Error::ZeroModulus));
    }

    #[test]
    fn phi_105_has_a_minus_two() {
        // Smallest n with a coefficient outside {-1, 0, 1}.
        let p = cyclotomic_poly(105).unwrap();
        assert_eq!(p.degree(), 48);
        assert_eq!(p.coeffs()[7], BigInt::from(-2));
        assert_eq!(p.coeffs()[41], BigInt::from(-2));
    }

    #[test]
    fn reduce_examples() {
        assert!(sum(3, &[1, 1, 1]).is_zero());
        assert_eq!(sum(3, &[3, 0, 0]).coeffs(), ints(&[3, 0]));
        assert!(sum(4, &[1, 0, 1, 0]).is_zero());
        // n = 1 collapses everything onto ω^0 = 1.
        assert_eq!(sum(1, &[7]).coeffs(), ints(&[7]));
    }

    #[test]
    fn ring_operations() {
        let x = sum(5, &[1, 2, 0, 0, 2]);
        assert!(x.add(&x.negate()).unwrap().is_zero());
        assert!(x.scalar_mul(&BigInt::zero()).is_zero());
        let unit = sum(3, &[1, 0, 0]);
        assert_eq!(unit.scalar_mul(&BigInt::from(2)).coeffs(), ints(&[2, 0]));
        let err = x.add(&unit).unwrap_err();
        assert_eq!(err, Error::ModulusMismatch { left: 5, right: 3 });
    }

    #[test]
    fn multiplication_of_roots_adds_exponents() {
        for n in 1..=12 {
            let ring = CyclotomicRing::new(n).unwrap();
            for i in 0..n as i64 {
                for j in 0..n as i64 {
                    assert_eq!(ring.root(i).mul(&ring.root(j)).unwrap(), ring.root(i + j));
                }
            }
        }
    }

    #[test]
    fn divisibility_examples() {
        assert!(CycInt::zero(7).unwrap().is_divisible_by(13));
        assert!(sum(3, &[3, 0, 0]).is_divisible_by(3));
        // 1 + 2ω + 2ω⁴ with ω⁴ = -(1+ω+ω²+ω³)
        let x = sum(5, &[1, 2, 0, 0, 2]);
        assert_eq!(x.coeffs(), ints(&[-1, 0, -2, -2]));
        assert!(!x.is_divisible_by(5));
    }

    #[test]
    fn galois_examples() {
        let x = sum(5, &[1, 2, 0, 0, 2]);
        assert_eq!(x.galois_conjugate(1).unwrap(), x);
        let w = CycInt::root(4, 1).unwrap();
        assert_eq!(w.galois_conjugate(3).unwrap().coeffs(), ints(&[0, -1]));
        // {0,1,1,4,4} -> {0,2,2,3,3}
        assert_eq!(x.galois_conjugate(2).unwrap(), sum(5, &[1, 0, 2, 2, 0]));
        assert_eq!(x.galois_conjugate(5), Err(Error::NotCoprime { k: 5, n: 5 }));
        assert_eq!(x.galois_conjugate(-1).unwrap(), x.galois_conjugate(4).unwrap());
    }

    #[test]
    fn small_path_overflow_falls_back() {
        let ring = CyclotomicRing::new(6).unwrap();
        let mut out = Vec::new();
        assert!(!ring.reduce_small(&[0, 0, 0, 0, i64::MAX, i64::MIN], &mut out));
        let s = ExpSum::from_counts(6, vec![0, 0, 0, 0, u64::MAX, u64::MAX]).unwrap();
        let expected = ring.reduce_poly(s.counts().iter().copied().map(BigInt::from).collect());
        assert_eq!(ring.reduce(&s), expected);
    }

    #[test]
    fn json_shape() {
        let x = sum(5, &[1, 2, 0, 0, 2]);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"n":5,"coeffs":[-1,0,-2,-2]}"#);
        let back: CycInt = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CycInt>(r#"{"n":5,"coeffs":[1]}"#).is_err());
        let huge = CycInt::new(2, vec![BigInt::from(u64::MAX) * 4]).unwrap();
        let back: CycInt = serde_json::from_str(&serde_json::to_string(&huge).unwrap()).unwrap();
        assert_eq!(back, huge);
    }

    #[test]
    fn display() {
        assert_eq!(sum(5, &[1, 2, 0, 0, 2]).to_string(), "-1 - 2*w^2 - 2*w^3");
        assert_eq!(CycInt::zero(4).unwrap().to_string(), "0");
        assert_eq!(CycInt::root(4, 3).unwrap().to_string(), "-w");
        assert_eq!(sum(5, &[0, 3, 1, 0, 0]).to_string(), "3*w + w^2");
    }
}
