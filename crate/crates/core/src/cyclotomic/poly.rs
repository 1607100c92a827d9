//! Dense integer polynomials, ascending coefficients. Only what the
//! cyclotomic layer needs: products, exact division and remainder by a
//! monic divisor.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// `X^n - 1`.
pub(crate) fn x_pow_minus_one(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = -BigInt::one();
    p[n] += BigInt::one();
    trim(&mut p);
    p
}

/// Reduce `p` in place modulo the monic polynomial `m`, leaving exactly
/// `deg(m)` coefficients.
pub(crate) fn rem_monic_in_place(p: &mut Vec<BigInt>, m: &[BigInt]) {
    let d = m.len() - 1;
    debug_assert!(m[d].is_one());
    for i in (d..p.len()).rev() {
        if p[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut p[i]);
        for (j, mj) in m[..d].iter().enumerate() {
            if !mj.is_zero() {
                p[i - d + j] -= &c * mj;
            }
        }
    }
    p.resize(d, BigInt::zero());
}

/// Quotient of `num` by the monic `den`, or `None` when the division
/// leaves a nonzero remainder.
pub(crate) fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = den.len() - 1;
    if num.len() < den.len() {
        return num.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - d];
    for i in (d..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut rem[i]);
        for (j, dj) in den[..d].iter().enumerate() {
            rem[i - d + j] -= &c * dj;
        }
        quot[i - d] = c;
    }
    if !rem.iter().all(Zero::is_zero) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}
