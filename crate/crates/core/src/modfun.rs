//! Functions `Z_n → Z_n` stored as value tables, and polynomials over `Z_n`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_inverse, residue};
use crate::error::{Error, Result};

/// A function `Z_n → Z_n`; `table[x] = f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ModFunctionJson")]
pub struct ModFunction {
    n: usize,
    table: Vec<usize>,
}

#[derive(Deserialize)]
struct ModFunctionJson {
    n: usize,
    table: Vec<usize>,
}

impl TryFrom<ModFunctionJson> for ModFunction {
    type Error = Error;

    fn try_from(raw: ModFunctionJson) -> Result<Self> {
        ModFunction::new(raw.n, raw.table)
    }
}

impl ModFunction {
    pub fn new(n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        if table.len() != n {
            return Err(Error::TableLength { len: table.len(), n });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::EntryOutOfRange { index, value, n });
        }
        Ok(Self { n, table })
    }

    /// Builds the table from a closure whose output is reduced mod `n`.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self {
            n,
            table: (0..n).map(|x| residue(f(x), n)).collect(),
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |x| x as i64)
    }

    pub fn constant(n: usize, c: i64) -> Result<Self> {
        Self::from_fn(n, |_| c)
    }

    /// `x ↦ αx + β`.
    pub fn linear(n: usize, alpha: i64, beta: i64) -> Result<Self> {
        Self::from_fn(n, |x| alpha * x as i64 + beta)
    }

    /// Evaluation table of `poly`.
    pub fn from_poly(poly: &PolyModN) -> Self {
        let n = poly.n;
        Self {
            n,
            table: (0..n).map(|x| poly.eval(x)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn into_table(self) -> Vec<usize> {
        self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x % self.n]
    }

    /// `x ↦ f(x) + c·x + d`.
    pub fn add_linear(&self, c: i64, d: i64) -> Self {
        let n = self.n;
        let c = residue(c, n);
        let d = residue(d, n);
        Self {
            n,
            table: self
                .table
                .iter()
                .enumerate()
                .map(|(x, &v)| (v + c * x + d) % n)
                .collect(),
        }
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            table: other.table.iter().map(|&y| self.table[y]).collect(),
        })
    }

    /// The inverse bijection, if `self` is one.
    pub fn inverse(&self) -> Option<Self> {
        let mut inv = vec![usize::MAX; self.n];
        for (x, &y) in self.table.iter().enumerate() {
            if inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(Self { n: self.n, table: inv })
    }

    pub fn is_permutation(&self) -> bool {
        is_bijective(self.n, self.table.iter().copied())
    }

    /// Smallest `(α, β)` in lexicographic order with `f(x) ≡ αx + β` for
    /// every `x`, found by scanning all `n²` pairs.
    pub fn linear_representation(&self) -> Option<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|alpha| (0..n).map(move |beta| (alpha, beta)))
            .find(|&(alpha, beta)| self.table.iter().enumerate().all(|(x, &v)| (alpha * x + beta) % n == v))
    }
}

impl fmt::Display for ModFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ") mod {}", self.n)
    }
}

fn is_bijective(n: usize, values: impl Iterator<Item = usize>) -> bool {
    let mut seen = vec![false; n];
    for v in values {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    true
}

/// Degree of a polynomial; the zero polynomial sits below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn at_most(self, d: usize) -> bool {
        self <= Degree::Finite(d)
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        *self == Degree::Finite(*other)
    }
}

impl PartialOrd<usize> for Degree {
    fn partial_cmp(&self, other: &usize) -> Option<Ordering> {
        self.partial_cmp(&Degree::Finite(*other))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Polynomial over `Z_n`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyModNJson")]
pub struct PolyModN {
    n: usize,
    coeffs: Vec<usize>,
}

#[derive(Deserialize)]
struct PolyModNJson {
    n: usize,
    coeffs: Vec<i64>,
}

impl TryFrom<PolyModNJson> for PolyModN {
    type Error = Error;

    fn try_from(raw: PolyModNJson) -> Result<Self> {
        PolyModN::from_i64s(raw.n, &raw.coeffs)
    }
}

impl PolyModN {
    /// Reduces and trims `coeffs`.
    pub fn new(n: usize, coeffs: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut coeffs: Vec<usize> = coeffs.into_iter().map(|c| c % n).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Self { n, coeffs })
    }

    pub fn from_i64s(n: usize, coeffs: &[i64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        Self::new(n, coeffs.iter().map(|&c| residue(c, n)).collect())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            len => Degree::Finite(len - 1),
        }
    }

    /// Horner evaluation, reducing at every step.
    pub fn eval(&self, x: usize) -> usize {
        let n = self.n as u128;
        let x = x as u128 % n;
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x + c as u128) % n) as usize
    }
}

impl fmt::Display for PolyModN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "X".into(),
                (1, c) => format!("{c}X"),
                (i, 1) => format!("X^{i}"),
                (i, c) => format!("{c}X^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0 (mod {})", self.n)
        } else {
            write!(f, "{} (mod {})", terms.join(" + "), self.n)
        }
    }
}

fn require_prime(n: usize) -> Result<()> {
    if is_prime(n) {
        Ok(())
    } else {
        Err(Error::NotPrime(n))
    }
}

/// The unique polynomial of degree at most `p - 1` agreeing with `f` on
/// `Z_p`, by Lagrange interpolation.
pub fn interpolate(f: &ModFunction) -> Result<PolyModN> {
    let p = f.n;
    require_prime(p)?;
    // N(X) = Π_j (X - j); each basis polynomial is N(X)/(X - i) scaled by
    // the inverse of Π_{j≠i} (i - j).
    let mut full = vec![1usize];
    for j in 0..p {
        full = mul_linear(&full, (p - j) % p, p);
    }
    let mut acc = vec![0usize; p];
    for (i, &y) in f.table.iter().enumerate() {
        if y == 0 {
            continue;
        }
        let basis = div_linear(&full, i, p);
        let denom = (0..p)
            .filter(|&j| j != i)
            .fold(1usize, |d, j| d * ((i + p - j) % p) % p);
        let scale = y * mod_inverse(denom, p).expect("nonzero residue mod a prime") % p;
        for (k, &c) in basis.iter().enumerate() {
            acc[k] = (acc[k] + scale * c) % p;
        }
    }
    PolyModN::new(p, acc)
}

/// `q(X)·(X + c)` mod `p`.
fn mul_linear(q: &[usize], c: usize, p: usize) -> Vec<usize> {
    let mut out = vec![0usize; q.len() + 1];
    for (k, &a) in q.iter().enumerate() {
        out[k] = (out[k] + a * c) % p;
        out[k + 1] = (out[k + 1] + a) % p;
    }
    out
}

/// Quotient of `q(X)` by `(X - r)` mod `p` (synthetic division; the
/// remainder is discarded, it is zero for the callers here).
fn div_linear(q: &[usize], r: usize, p: usize) -> Vec<usize> {
    let mut out = vec![0usize; q.len() - 1];
    let mut carry = 0usize;
    for k in (1..q.len()).rev() {
        carry = (q[k] + carry * r) % p;
        out[k - 1] = carry;
    }
    out
}

pub fn degree(f: &ModFunction) -> Result<Degree> {
    Ok(interpolate(f)?.degree())
}

/// The set of slopes `λ` for which `x ↦ f(x) + λx` permutes `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WSet {
    p: usize,
    members: Vec<usize>,
}

impl WSet {
    pub fn p(&self) -> usize {
        self.p
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, lambda: usize) -> bool {
        self.members.binary_search(&lambda).is_ok()
    }
}

pub fn w_set(f: &ModFunction) -> Result<WSet> {
    let p = f.n;
    require_prime(p)?;
    let members = (0..p).filter(|&lambda| slope_permutes(f, lambda)).collect();
    Ok(WSet { p, members })
}

fn slope_permutes(f: &ModFunction, lambda: usize) -> bool {
    let p = f.n;
    is_bijective(p, f.table.iter().enumerate().map(|(x, &v)| (v + lambda * x) % p))
}

/// Whether "`|W_f| > (p-3)/2` implies `deg f ≤ 1`" holds for this `f`.
pub fn stothers_holds(f: &ModFunction) -> Result<bool> {
    let p = f.n;
    require_prime(p)?;
    // 2|W| > p - 3, kept in integers so p = 2 needs no special case.
    let w = w_set(f)?.len();
    if 2 * w + 3 <= p {
        return Ok(true);
    }
    Ok(degree(f)?.at_most(1))
}
