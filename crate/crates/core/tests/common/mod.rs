//! Test-only oracles that avoid the Smith-normal-form path entirely.

#![allow(dead_code)]

use mfhh_core::DiagonalPolynomial;

/// Decides `sum_j c_j chi_j = u chi` straight from the relations.
///
/// Unstabilized: the relation rows are `k_j e_j - e_chi`, so the equality
/// holds iff every `c_j = lambda_j k_j` and `u = sum lambda_j`.
/// Stabilized: the extra row `e_0 + sum e_j - e_chi` enters with multiplier
/// `lambda_0 = c_0`, so the equality holds iff `k_j | (c_j - c_0)` and
/// `u = c_0 + sum (c_j - c_0) / k_j`.
///
/// `c` is indexed by variable; `c[0]` is ignored when unstabilized.
pub fn multiple_of_chi_by_divisibility(p: &DiagonalPolynomial, c: &[i64]) -> Option<i64> {
    let base = if p.is_stabilized() { c[0] } else { 0 };
    let mut u = base;
    for (j, &k) in p.exponents().iter().enumerate() {
        let diff = c[j + 1] - base;
        let k = i64::from(k);
        if diff.rem_euclid(k) != 0 {
            return None;
        }
        u += diff.div_euclid(k);
    }
    Some(u)
}

/// Phase numerators of every element of ker(chi), as plain tuples, together
/// with the fixed-variable mask (index 0 = z0).
pub fn ker_chi_by_phases(p: &DiagonalPolynomial) -> Vec<Vec<bool>> {
    let ks = p.exponents();
    let lcm = ks.iter().fold(1u64, |a, &k| num_integer::lcm(a, u64::from(k)));
    let mut out = Vec::new();
    let total: u64 = ks.iter().map(|&k| u64::from(k)).product();
    for code in 0..total {
        let mut rest = code;
        let mut nums = vec![0u64; ks.len()];
        for i in (0..ks.len()).rev() {
            nums[i] = rest % u64::from(ks[i]);
            rest /= u64::from(ks[i]);
        }
        // phase of z0 in units of 1/lcm
        let s: u64 = nums.iter().zip(ks).map(|(&n, &k)| n * (lcm / u64::from(k))).sum();
        let mut fixed = vec![p.is_stabilized() && s % lcm == 0];
        fixed.extend(nums.iter().map(|&n| n == 0));
        out.push(fixed);
    }
    out
}

/// `dim HH^k` by a double loop over (gamma, monomial, a0) using only the
/// divisibility test above.
pub fn hh_by_divisibility(p: &DiagonalPolynomial, k: i64, a0_max: i64) -> u64 {
    let n = p.num_vars();
    let mut count = 0;
    for fixed in ker_chi_by_phases(p) {
        let moving: Vec<usize> = (0..=n)
            .filter(|&j| !fixed[j] && (j > 0 || p.is_stabilized()))
            .collect();
        let z0_fixed = p.is_stabilized() && fixed[0];
        let box_vars: Vec<usize> = (1..=n).filter(|&j| fixed[j]).collect();
        let mut points = vec![vec![0i64; n + 1]];
        for &j in &box_vars {
            let top = i64::from(p.exponents()[j - 1]) - 2;
            points = points
                .into_iter()
                .flat_map(|a| {
                    (0..=top).map(move |e| {
                        let mut b = a.clone();
                        b[j] = e;
                        b
                    })
                })
                .collect();
        }
        for odd in [false, true] {
            if odd && !z0_fixed {
                continue;
            }
            for a in &points {
                for a0 in 0..=if z0_fixed { a0_max } else { 0 } {
                    let mut c = a.clone();
                    c[0] = a0 - i64::from(odd);
                    for &j in &moving {
                        c[j] -= 1;
                    }
                    if let Some(u) = multiple_of_chi_by_divisibility(p, &c) {
                        if 2 * u + moving.len() as i64 + i64::from(odd) == k {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    count
}

pub fn stab(ks: &[u32]) -> DiagonalPolynomial {
    DiagonalPolynomial::new(ks.to_vec(), true).unwrap()
}

pub fn unstab(ks: &[u32]) -> DiagonalPolynomial {
    DiagonalPolynomial::new(ks.to_vec(), false).unwrap()
}
