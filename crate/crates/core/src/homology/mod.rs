//! Reduced simplicial homology over the rationals from boundary-matrix ranks.

mod boundary;
mod rank;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{f_vector_formula, reduced_euler_characteristic, ComplexParams};
use crate::error::{Error, Result};

pub use boundary::{boundary_matrix, composes_to_zero, SparseBoundaryMatrix};
pub use rank::{bareiss_rank, integer_diagonal, sparse_rank};

/// Reduced Betti numbers `(β_{-1}, β_0, ..., β_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BettiVector(Vec<u64>);

impl BettiVector {
    /// `values[0]` is `β_{-1}`.
    pub fn new(values: Vec<u64>) -> Self {
        BettiVector(values)
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    /// `β_dim`, zero outside the stored range.
    pub fn get(&self, dim: i64) -> u64 {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }

    /// `Σ (-1)^i β_i`.
    pub fn alternating_sum(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .map(|(s, &b)| if s % 2 == 1 { BigInt::from(b) } else { -BigInt::from(b) })
            .sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `rank ∂_k` for `k = 0..=d`, dimensions processed in parallel.
pub fn boundary_ranks(params: &ComplexParams, budget: u64) -> Result<Vec<usize>> {
    params.check_budget(budget, params.max_dim())?;
    (0..=params.max_dim())
        .into_par_iter()
        .map(|k| {
            let d = boundary_matrix(params, k, budget)?;
            Ok(sparse_rank(d.rows(), d.columns()))
        })
        .collect()
}

/// `β_k = f_k − rank ∂_k − rank ∂_{k+1}` with `∂_{-1} = ∂_{d+1} = 0`.
pub fn betti_numbers(params: &ComplexParams, budget: u64) -> Result<BettiVector> {
    let ranks = boundary_ranks(params, budget)?;
    let f = f_vector_formula(params);
    let rank_at = |k: i64| -> u64 {
        usize::try_from(k)
            .ok()
            .and_then(|i| ranks.get(i))
            .map_or(0, |&r| r as u64)
    };
    let values = (-1..=params.max_dim())
        .map(|k| {
            let fk = f.get(k).to_u64().expect("face count fits the budget");
            fk.checked_sub(rank_at(k) + rank_at(k + 1))
                .ok_or_else(|| Error::Inconsistent(format!("negative Betti number in dimension {k}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(BettiVector(values))
}

/// Alternating face count against alternating Betti sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerPoincare {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub euler_characteristic: BigInt,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub betti_sum: BigInt,
    pub holds: bool,
}

pub fn euler_poincare(params: &ComplexParams, betti: &BettiVector) -> EulerPoincare {
    let chi = reduced_euler_characteristic(&f_vector_formula(params));
    let sum = betti.alternating_sum();
    EulerPoincare {
        holds: chi == sum,
        euler_characteristic: chi,
        betti_sum: sum,
    }
}

pub fn verify_euler_poincare(params: &ComplexParams, budget: u64) -> Result<bool> {
    Ok(euler_poincare(params, &betti_numbers(params, budget)?).holds)
}

/// Whether every boundary map has only unit elementary divisors, so integral
/// homology is free. Dense, intended for small complexes.
pub fn torsion_free(params: &ComplexParams, budget: u64) -> Result<bool> {
    params.check_budget(budget, params.max_dim())?;
    for k in 0..=params.max_dim() {
        let d = boundary_matrix(params, k, budget)?;
        let diag = integer_diagonal(&d.to_dense());
        if diag.iter().any(|v| v.magnitude() != &BigUint::from(1u32)) {
            return Ok(false);
        }
    }
    Ok(true)
}
