//! Alternating binomial sums and their closed forms.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{binomial, binomial_signed, multinomial};

fn signed(odd: bool, v: BigInt) -> BigInt {
    if odd {
        -v
    } else {
        v
    }
}

/// `Σ_s (−1)^s C(n,s)^p`.
pub fn power_sum_lhs(n: u64, p: u32) -> BigInt {
    (0..=n)
        .map(|s| signed(s % 2 == 1, BigInt::from(binomial(n, s).pow(p))))
        .sum()
}

/// `Σ_s (−1)^s C(n,s)^3`.
pub fn dixon_lhs(n: u64) -> BigInt {
    power_sum_lhs(n, 3)
}

/// `0` for odd `n`, else `(−1)^{n/2} (3n/2)! / ((n/2)!)^3`.
pub fn dixon_rhs(n: u64) -> BigInt {
    if n % 2 == 1 {
        return BigInt::default();
    }
    let h = n / 2;
    signed(h % 2 == 1, BigInt::from(multinomial(&[h, h, h])))
}

/// `0` for odd `n`, else `(−1)^{n/2} C(n, n/2)`.
pub fn aigner_rhs(n: u64) -> BigInt {
    if n % 2 == 1 {
        return BigInt::default();
    }
    signed((n / 2) % 2 == 1, BigInt::from(binomial(n, n / 2)))
}

/// `Σ_s (−1)^s C(n3,s) C(n2,n1−s) C(n1,n2−n3+s)` over
/// `max(0, n1−n2, n3−n2) ≤ s ≤ min(n1, n3, n1+n3−n2)`; an empty range sums to 0.
pub fn three_f2_lhs(n1: u64, n2: u64, n3: u64) -> BigInt {
    let (a, b, c) = (n1 as i64, n2 as i64, n3 as i64);
    let lo = 0.max(a - b).max(c - b);
    let hi = a.min(c).min(a + c - b);
    (lo..=hi)
        .map(|s| {
            let term = binomial_signed(c, s) * binomial_signed(b, a - s) * binomial_signed(a, b - c + s);
            signed(s % 2 == 1, term)
        })
        .sum()
}

/// `0` for odd `N = n1+n2+n3`, else `(−1)^{N/2−n2} (N/2)! / ((N/2−n1)! (N/2−n2)! (N/2−n3)!)`,
/// taken as 0 when a factorial argument is negative.
pub fn three_f2_rhs(n1: u64, n2: u64, n3: u64) -> BigInt {
    let total = n1 + n2 + n3;
    if total % 2 == 1 {
        return BigInt::default();
    }
    let h = total / 2;
    if n1 > h || n2 > h || n3 > h {
        return BigInt::default();
    }
    signed((h - n2) % 2 == 1, BigInt::from(multinomial(&[h - n1, h - n2, h - n3])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub args: Vec<u64>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub lhs: BigInt,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub rhs: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityTable {
    pub name: String,
    pub total: usize,
    pub passed: usize,
    pub rows: Vec<IdentityRow>,
}

impl IdentityTable {
    fn collect(name: &str, rows: impl Iterator<Item = (Vec<u64>, BigInt, BigInt)>) -> Self {
        let rows: Vec<IdentityRow> = rows
            .map(|(args, lhs, rhs)| IdentityRow {
                holds: lhs == rhs,
                args,
                lhs,
                rhs,
            })
            .collect();
        IdentityTable {
            name: name.to_string(),
            total: rows.len(),
            passed: rows.iter().filter(|r| r.holds).count(),
            rows,
        }
    }

    pub fn all_hold(&self) -> bool {
        self.passed == self.total
    }
}

/// Dixon's identity for `1 ≤ n ≤ n_max`.
pub fn verify_dixon(n_max: u64) -> IdentityTable {
    IdentityTable::collect("dixon", (1..=n_max).map(|n| (vec![n], dixon_lhs(n), dixon_rhs(n))))
}

/// The well-poised transformation for every triple with entries `≤ max`.
pub fn verify_three_f2(max: u64) -> IdentityTable {
    let triples = (0..=max).flat_map(move |a| (0..=max).flat_map(move |b| (0..=max).map(move |c| (a, b, c))));
    IdentityTable::collect(
        "3f2",
        triples.map(|(a, b, c)| (vec![a, b, c], three_f2_lhs(a, b, c), three_f2_rhs(a, b, c))),
    )
}

/// Squares against the central binomial for `1 ≤ n ≤ n_max`.
pub fn verify_aigner(n_max: u64) -> IdentityTable {
    IdentityTable::collect(
        "aigner",
        (1..=n_max).map(|n| (vec![n], power_sum_lhs(n, 2), aigner_rhs(n))),
    )
}

/// Plain alternating sum of binomials, which vanishes for `n ≥ 1`.
pub fn verify_alternating_binomial(n_max: u64) -> IdentityTable {
    IdentityTable::collect(
        "alternating-binomial",
        (1..=n_max).map(|n| (vec![n], power_sum_lhs(n, 1), BigInt::default())),
    )
}
