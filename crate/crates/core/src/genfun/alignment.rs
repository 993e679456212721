//! Matching series coefficients against homology-facet enumeration.
//!
//! The diagonal of `XY` is compared with alternating counts of homology facets
//! of Δ(n) under two sign conventions: by vertex count `(−1)^r` and by
//! dimension `(−1)^{r−1}`. For each convention the offset `δ` with
//! `[x^{n+δ} y^{n+δ} z^{n+δ}] XY = count(n)` is searched over a small window.

use num_bigint::BigInt;
use serde::Serialize;

use super::generating::{diagonal, series_g, series_xy};
use super::identities::{dixon_lhs, dixon_rhs};
use super::master::{det_i_minus_xa, IntMatrix};
use crate::complex::{ComplexParams, Face};
use crate::error::{Error, Result};
use crate::facets::enumerate_facets;
use crate::shelling::{canonical_homology_facets, homology_facet_by_criterion};

/// Offset used once the search has settled it.
pub const PINNED_DELTA: i64 = 1;

/// Candidate offsets tried by the search.
pub const DELTA_WINDOW: std::ops::RangeInclusive<i64> = -1..=3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `Σ_r (−1)^r h_r` over facets with `r` vertices.
    VertexCount,
    /// `Σ_r (−1)^{r−1} h_r`, the alternating Betti sum.
    Dimension,
}

impl SignConvention {
    pub fn alternating(self, by_vertices: &[u64]) -> BigInt {
        by_vertices
            .iter()
            .enumerate()
            .map(|(r, &h)| {
                let odd = match self {
                    SignConvention::VertexCount => r % 2 == 1,
                    SignConvention::Dimension => r % 2 == 0,
                };
                if odd {
                    -BigInt::from(h)
                } else {
                    BigInt::from(h)
                }
            })
            .sum()
    }
}

/// `counts[r]` = homology facets of Δ(n) with `r` vertices.
fn tally(facets: &[Face]) -> Vec<u64> {
    let top = facets.iter().map(Face::len).max().unwrap_or(0);
    let mut counts = vec![0u64; top + 1];
    for f in facets {
        counts[f.len()] += 1;
    }
    counts
}

#[derive(Clone, Debug, Serialize)]
pub struct AlignmentRow {
    pub n: u32,
    /// Entry `r` counts homology facets with `r` vertices.
    pub homology_by_vertices: Vec<u64>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub vertex_count_sum: BigInt,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub dimension_sum: BigInt,
    /// Diagonal coefficient at `n + PINNED_DELTA`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub coefficient: BigInt,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub dixon_lhs: BigInt,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub dixon_rhs: BigInt,
    /// `[x^n y^n z^n] 1/(1 + xy + xz + yz)`.
    #[serde(serialize_with = "crate::report::ser_display")]
    pub transferred: BigInt,
    /// Coefficient, vertex-count sum, both sides of Dixon and the transferred diagonal agree.
    pub end_to_end: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlignmentReport {
    pub n_min: u32,
    pub n_max: u32,
    pub truncation: u32,
    pub window: (i64, i64),
    /// Offsets that work for every `n` under the vertex-count convention.
    pub vertex_count_offsets: Vec<i64>,
    /// Offsets that work for every `n` under the dimension convention.
    pub dimension_offsets: Vec<i64>,
    /// Unique offset found under the vertex-count convention.
    pub delta: Option<i64>,
    pub pinned_delta: i64,
    pub rows: Vec<AlignmentRow>,
}

impl AlignmentReport {
    pub fn pinned_reproduces_dixon(&self) -> bool {
        self.delta == Some(self.pinned_delta) && self.rows.iter().all(|r| r.end_to_end)
    }
}

/// Runs the offset search for `2 ≤ n ≤ n_max`.
pub fn check_alignment(n_max: u32, budget: u64) -> Result<AlignmentReport> {
    let n_min = 2;
    if n_max < n_min {
        return Err(Error::domain(format!("alignment needs n_max ≥ {n_min}, got {n_max}")));
    }
    let truncation = (i64::from(n_max) + DELTA_WINDOW.end()) as u32;
    let xy = series_xy(truncation)?;
    let transfer = det_i_minus_xa(&IntMatrix::skew_cyclic(), n_max).invert_unit()?;

    let mut tallies = Vec::new();
    for n in n_min..=n_max {
        let facets = canonical_homology_facets(&ComplexParams::delta(n)?, budget)?;
        tallies.push((n, tally(&facets)));
    }

    let offsets = |convention: SignConvention| -> Result<Vec<i64>> {
        let mut good = Vec::new();
        for delta in DELTA_WINDOW {
            let mut all = true;
            for (n, counts) in &tallies {
                let m = i64::from(*n) + delta;
                if m < 0 || diagonal(&xy, m as u32)? != convention.alternating(counts) {
                    all = false;
                    break;
                }
            }
            if all {
                good.push(delta);
            }
        }
        Ok(good)
    };
    let vertex_count_offsets = offsets(SignConvention::VertexCount)?;
    let dimension_offsets = offsets(SignConvention::Dimension)?;
    let delta = match vertex_count_offsets.as_slice() {
        [d] => Some(*d),
        _ => None,
    };

    let mut rows = Vec::new();
    for (n, counts) in tallies {
        let coefficient = diagonal(&xy, (i64::from(n) + PINNED_DELTA) as u32)?;
        let vertex_count_sum = SignConvention::VertexCount.alternating(&counts);
        let lhs = dixon_lhs(u64::from(n));
        let rhs = dixon_rhs(u64::from(n));
        let transferred = transfer.coefficient(&[n, n, n])?;
        let end_to_end =
            coefficient == vertex_count_sum && coefficient == lhs && lhs == rhs && rhs == transferred;
        rows.push(AlignmentRow {
            n,
            dimension_sum: SignConvention::Dimension.alternating(&counts),
            homology_by_vertices: counts,
            vertex_count_sum,
            coefficient,
            dixon_lhs: lhs,
            dixon_rhs: rhs,
            transferred,
            end_to_end,
        });
    }

    Ok(AlignmentReport {
        n_min,
        n_max,
        truncation,
        window: (*DELTA_WINDOW.start(), *DELTA_WINDOW.end()),
        vertex_count_offsets,
        dimension_offsets,
        delta,
        pinned_delta: PINNED_DELTA,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GCountRow {
    pub r: u32,
    pub m: u32,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub coefficient: BigInt,
    pub enumerated: u64,
    pub holds: bool,
}

/// Homology facets of Δ(n) not ending at `(n, ..., n)` whose shift vectors
/// have `columns` columns, i.e. with `columns − 1` vertices. Selected by the
/// `B_ℓ` criterion.
pub fn count_x_facets(n: u32, columns: u32, budget: u64) -> Result<u64> {
    let params = ComplexParams::delta(n)?;
    let top = vec![n; 3];
    let mut count = 0;
    for f in enumerate_facets(&params, budget)? {
        if f.len() + 1 == columns as usize
            && f.last() != Some(top.as_slice())
            && homology_facet_by_criterion(&params, &f)?
        {
            count += 1;
        }
    }
    Ok(count)
}

/// `[x^m y^m z^m] g_r` against [`count_x_facets`] on Δ(m−1), for `r ≤ r_max`, `2 ≤ m ≤ m_max`.
pub fn check_g_counts(r_max: u32, m_max: u32, budget: u64) -> Result<Vec<GCountRow>> {
    let t = m_max.max(2 * r_max);
    let mut rows = Vec::new();
    for r in 1..=r_max {
        let g = series_g(r, t)?;
        for m in 2..=m_max {
            let coefficient = diagonal(&g, m)?;
            let enumerated = count_x_facets(m - 1, r, budget)?;
            rows.push(GCountRow {
                r,
                m,
                holds: coefficient == BigInt::from(enumerated),
                coefficient,
                enumerated,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_FACE_BUDGET;

    #[test]
    fn conventions() {
        // Δ(2): six homology facets with one vertex
        let counts = [0, 6];
        assert_eq!(SignConvention::VertexCount.alternating(&counts), BigInt::from(-6));
        assert_eq!(SignConvention::Dimension.alternating(&counts), BigInt::from(6));
    }

    #[test]
    fn alignment_small() {
        let report = check_alignment(4, DEFAULT_FACE_BUDGET).unwrap();
        assert_eq!(report.delta, Some(PINNED_DELTA));
        assert!(report.pinned_reproduces_dixon());
        assert!(report.dimension_offsets.is_empty());
        assert!(check_alignment(1, DEFAULT_FACE_BUDGET).is_err());
    }

    #[test]
    fn g_counts_small() {
        let rows = check_g_counts(2, 4, DEFAULT_FACE_BUDGET).unwrap();
        assert!(rows.iter().all(|r| r.holds), "{rows:?}");
        let six = rows.iter().find(|r| r.r == 2 && r.m == 3).unwrap();
        assert_eq!(six.enumerated, 6);
    }
}
