//! The number `t_n` of efficient chains from `0_n` to `1_n`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// `t_1, …, t_limit`, from `t_1 = t_2 = 1` and `2 t_n = Σ_{σ ∈ NC(n)} ∏_{W ∈ σ} t_{|W|}`.
///
/// The right side is the free moment of order `n` whose cumulants are the
/// `t_k`; with `t_n` itself set to zero it evaluates to `t_n`.
pub fn count_efficient_chains_0n(limit: usize) -> Result<Vec<u128>> {
    if limit == 0 {
        return domain("limit must be positive");
    }
    let overflow = || domain(format!("t_n overflows u128 before n = {limit}"));
    let mut t: Vec<u128> = vec![0, 1];
    // m[k]: free moments with cumulants t, m[0] = 1.
    let mut m: Vec<u128> = vec![1, 1];
    for n in 2..=limit {
        // pw[j] = [z^j] (1 + M(z))^s, updated for s = 1, 2, …
        let mut pw: Vec<u128> = m[..n].to_vec();
        let mut without = 0u128;
        for s in 1..n {
            let term = t[s].checked_mul(pw[n - s]).ok_or(()).or_else(|_| overflow())?;
            without = without.checked_add(term).ok_or(()).or_else(|_| overflow())?;
            let mut next = vec![0u128; n];
            for (i, &a) in pw.iter().enumerate() {
                for (j, &b) in m[..n - i].iter().enumerate() {
                    let v = a.checked_mul(b).ok_or(()).or_else(|_| overflow())?;
                    next[i + j] = next[i + j].checked_add(v).ok_or(()).or_else(|_| overflow())?;
                }
            }
            pw = next;
        }
        let tn = if n == 2 { 1 } else { without };
        t.push(tn);
        m.push(without.checked_add(tn).ok_or(()).or_else(|_| overflow())?);
    }
    Ok(t.split_off(1))
}

/// Checks `U(zU(z)) = (2 − z) U(z) − 1` modulo `z^{len+1}` for
/// `U = 2T − z + 1`, where `T = Σ t_n z^n` is given by its first `len` terms.
pub fn series_identity_holds(t: &[u128]) -> bool {
    let len = t.len();
    let mut u: Vec<BigInt> = vec![BigInt::one()];
    u.extend(t.iter().map(|&v| BigInt::from(v) * 2));
    u[1] -= 1;
    // w = z U(z), truncated
    let mut w = vec![BigInt::zero(); len + 1];
    for k in 0..len {
        w[k + 1] = u[k].clone();
    }
    let mul = |a: &[BigInt], b: &[BigInt]| {
        let mut out = vec![BigInt::zero(); len + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate().take(len + 1 - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut lhs = vec![BigInt::zero(); len + 1];
    let mut power = vec![BigInt::zero(); len + 1];
    power[0] = BigInt::one();
    for uk in &u {
        for (l, p) in lhs.iter_mut().zip(&power) {
            *l += uk * p;
        }
        power = mul(&power, &w);
    }
    let mut rhs = vec![BigInt::zero(); len + 1];
    for k in 0..=len {
        rhs[k] = &u[k] * 2 - if k > 0 { u[k - 1].clone() } else { BigInt::zero() };
    }
    rhs[0] -= 1;
    lhs == rhs
}
