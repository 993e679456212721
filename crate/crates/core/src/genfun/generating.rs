//! Generating functions for shift-vector columns of homology facets.
//!
//! A column of a homology facet's shift vectors is a monomial `x^a y^b z^c`
//! with `min(a,b,c) = 1 < max(a,b,c)`; `P` sums all of them.

use num_bigint::BigInt;

use super::series::{one_minus_product, MSeries};
use crate::error::{Error, Result};

fn xyz(t: u32) -> MSeries {
    MSeries::monomial(3, t, &[1, 1, 1], 1)
}

/// `1 / (1 − x_i)`.
fn geometric(t: u32, i: usize) -> MSeries {
    one_minus_product(3, t, &[i]).invert_unit().expect("unit constant term")
}

/// `f(x,y,z) = x y² z² / ((1−y)(1−z))`.
fn f_part(t: u32) -> MSeries {
    MSeries::monomial(3, t, &[1, 2, 2], 1)
        .mul(&geometric(t, 1))
        .mul(&geometric(t, 2))
}

/// `h(x,y,z) = x y z² / (1−z)`.
fn h_part(t: u32) -> MSeries {
    MSeries::monomial(3, t, &[1, 1, 2], 1).mul(&geometric(t, 2))
}

/// `f(x,y,z) + f(y,x,z) + f(z,y,x) + h(x,y,z) + h(x,z,y) + h(z,y,x)`.
pub fn series_p_from_parts(t: u32) -> MSeries {
    let f = f_part(t);
    let h = h_part(t);
    [
        f.clone(),
        f.permute(&[1, 0, 2]),
        f.permute(&[2, 1, 0]),
        h.clone(),
        h.permute(&[0, 2, 1]),
        h.permute(&[2, 1, 0]),
    ]
    .iter()
    .fold(MSeries::zero(3, t), |acc, s| acc.add(s))
}

/// `xyz ((1 − xyz) / ((1−x)(1−y)(1−z)) − 1)`.
pub fn series_p_closed(t: u32) -> MSeries {
    let one = MSeries::one(3, t);
    let q = one_minus_product(3, t, &[0, 1, 2]).invert_unit().expect("unit constant term");
    xyz(t).mul(&one.sub(&xyz(t)).mul(&q).sub(&one))
}

/// `P` truncated at `t`, after checking both constructions agree.
pub fn series_p(t: u32) -> Result<MSeries> {
    if t < 2 {
        return Err(Error::domain(format!("P needs truncation at least 2, got {t}")));
    }
    let closed = series_p_closed(t);
    if closed != series_p_from_parts(t) {
        return Err(Error::Inconsistent(format!(
            "the two constructions of P differ at truncation {t}"
        )));
    }
    Ok(closed)
}

/// `g_r = P^r`.
pub fn series_g(r: u32, t: u32) -> Result<MSeries> {
    if r == 0 {
        return Err(Error::domain("g_r needs r ≥ 1"));
    }
    if t < 2 * r {
        return Err(Error::domain(format!("g_{r} needs truncation at least {}, got {t}", 2 * r)));
    }
    Ok(series_p(t)?.pow(r))
}

/// `(1−x)(1−y)(1−z) + xyz`.
pub fn xy_denominator(t: u32) -> MSeries {
    one_minus_product(3, t, &[0, 1, 2]).add(&xyz(t))
}

/// `xyz / ((1−x)(1−y)(1−z) + xyz)`.
pub fn series_xy_closed(t: u32) -> MSeries {
    xyz(t).mul(&xy_denominator(t).invert_unit().expect("unit constant term"))
}

/// `(P + xyz) Σ_{r≥1} (−P)^{r−1}`; every power of `P` beyond `t` vanishes.
pub fn series_xy_from_p(t: u32) -> MSeries {
    let p = series_p_closed(t);
    let neg = p.neg();
    let mut sum = MSeries::one(3, t);
    let mut power = MSeries::one(3, t);
    for _ in 1..=t {
        power = power.mul(&neg);
        sum = sum.add(&power);
    }
    p.add(&xyz(t)).mul(&sum)
}

/// The `X ⊔ Y` generating function, after checking both constructions agree.
pub fn series_xy(t: u32) -> Result<MSeries> {
    if t < 1 {
        return Err(Error::domain("XY needs truncation at least 1"));
    }
    let closed = series_xy_closed(t);
    if t >= 2 && closed != series_xy_from_p(t) {
        return Err(Error::Inconsistent(format!(
            "the two constructions of XY differ at truncation {t}"
        )));
    }
    Ok(closed)
}

/// Diagonal coefficient `[x^m y^m z^m]`.
pub fn diagonal(series: &MSeries, m: u32) -> Result<BigInt> {
    series.coefficient(&[m, m, m])
}
