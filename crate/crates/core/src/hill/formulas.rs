//! Closed-form crossing counts, all in exact integer arithmetic.

use crate::error::{Error, Result};

fn checked_product(factors: &[u64]) -> Result<u64> {
    factors
        .iter()
        .try_fold(1u64, |acc, &f| acc.checked_mul(f))
        .ok_or_else(|| Error::Domain("closed form overflows u64".into()))
}

/// `H(n) = 1/4 * floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2)`.
pub fn hill_number(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::Domain(format!("hill_number needs n >= 3, got {n}")));
    }
    let product = checked_product(&[n / 2, (n - 1) / 2, (n - 2) / 2, (n - 3) / 2])?;
    debug_assert_eq!(product % 4, 0);
    Ok(product / 4)
}

/// Crossings in which the edges at any one vertex of a Hill drawing of
/// `K_n` participate: `(n-2)^2 (n-4) / 16`, for even `n >= 6`.
pub fn per_vertex_target(n: u64) -> Result<u64> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::Domain(format!(
            "per_vertex_target needs an even n >= 6, got {n}"
        )));
    }
    Ok(checked_product(&[n - 2, n - 2, n - 4])? / 16)
}

/// `k(k-1)(k-2)(k-3)/4`: crossings of the antipodal drawing of `M_{2k}`.
pub fn dn_crossings(k: u64) -> u64 {
    if k < 4 {
        return 0;
    }
    k * (k - 1) * (k - 2) * (k - 3) / 4
}

/// `(k-1)(k-2)/2`: arcs crossed by any half-circle added to that drawing.
pub fn half_circle_increment(k: u64) -> u64 {
    if k < 3 {
        return 0;
    }
    (k - 1) * (k - 2) / 2
}

/// `H(n) - t(k-1)(k-2)/2` for `n = 2k` and `0 <= t <= k`.
pub fn m_nt_target(n: u64, t: u64) -> Result<u64> {
    if !n.is_multiple_of(2) || n < 6 {
        return Err(Error::Domain(format!(
            "m_nt_target needs an even n >= 6, got {n}"
        )));
    }
    let k = n / 2;
    if t > k {
        return Err(Error::Domain(format!("t = {t} exceeds k = {k}")));
    }
    Ok(hill_number(n)? - t * half_circle_increment(k))
}
