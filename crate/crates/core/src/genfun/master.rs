//! Coefficient extraction on both sides of MacMahon's Master Theorem.

use num_bigint::BigInt;
use serde::Serialize;

use super::series::MSeries;
use crate::error::{Error, Result};

/// Square integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix(Vec<Vec<i64>>);

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::domain("matrix must be square and nonempty"));
        }
        Ok(IntMatrix(rows))
    }

    pub fn identity(m: usize) -> Self {
        IntMatrix((0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// Rows `(1,−1,0), (0,1,−1), (−1,0,1)`.
    pub fn cyclic_difference() -> Self {
        IntMatrix(vec![vec![1, -1, 0], vec![0, 1, -1], vec![-1, 0, 1]])
    }

    /// Rows `(0,1,−1), (−1,0,1), (1,−1,0)`.
    pub fn skew_cyclic() -> Self {
        IntMatrix(vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]])
    }
}

/// Determinant of a square matrix of series by cofactor expansion along the first row.
pub fn determinant(entries: &[Vec<MSeries>]) -> MSeries {
    let m = entries.len();
    let first = &entries[0][0];
    if m == 1 {
        return first.clone();
    }
    let mut det = MSeries::zero(first.vars(), first.truncation());
    for j in 0..m {
        let minor: Vec<Vec<MSeries>> = entries[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, s)| s.clone())
                    .collect()
            })
            .collect();
        let term = entries[0][j].mul(&determinant(&minor));
        det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    det
}

/// `det(I − XA)` with `X = diag(x_1, ..., x_m)`.
pub fn det_i_minus_xa(a: &IntMatrix, t: u32) -> MSeries {
    let m = a.size();
    let entries: Vec<Vec<MSeries>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let delta = MSeries::constant(m, t, i64::from(i == j));
                    let xa = MSeries::var(m, t, i).scale(&BigInt::from(a.0[i][j]));
                    delta.sub(&xa)
                })
                .collect()
        })
        .collect();
    determinant(&entries)
}

/// `∏_i (Σ_j a_ij x_j)^{k_i}`, truncated at `t`.
pub fn row_product(a: &IntMatrix, k: &[u32], t: u32) -> MSeries {
    let m = a.size();
    (0..m).fold(MSeries::one(m, t), |acc, i| {
        let form = (0..m).fold(MSeries::zero(m, t), |s, j| {
            s.add(&MSeries::var(m, t, j).scale(&BigInt::from(a.0[i][j])))
        });
        acc.mul(&form.pow(k[i]))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasterCheck {
    pub k: Vec<u32>,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub product_coefficient: BigInt,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub inverse_coefficient: BigInt,
    pub holds: bool,
}

/// Compares `[x^k] ∏_i (row_i · x)^{k_i}` with `[x^k] 1/det(I − XA)`.
pub fn master_theorem_check(a: &IntMatrix, k: &[u32], t: u32) -> Result<MasterCheck> {
    if k.len() != a.size() {
        return Err(Error::domain(format!(
            "exponent vector has {} entries for a {}×{} matrix",
            k.len(),
            a.size(),
            a.size()
        )));
    }
    if k.iter().any(|&e| e > t) {
        return Err(Error::domain(format!("truncation {t} is below an exponent of {k:?}")));
    }
    let product = row_product(a, k, t).coefficient(k)?;
    let inverse = det_i_minus_xa(a, t).invert_unit()?.coefficient(k)?;
    Ok(MasterCheck {
        k: k.to_vec(),
        holds: product == inverse,
        product_coefficient: product,
        inverse_coefficient: inverse,
    })
}

/// `[x^n y^n z^n] (x−y)^n (y−z)^n (x−z)^n`, expanded directly.
pub fn vandermonde_diagonal(n: u32) -> BigInt {
    let t = n;
    let x = MSeries::var(3, t, 0);
    let y = MSeries::var(3, t, 1);
    let z = MSeries::var(3, t, 2);
    x.sub(&y)
        .pow(n)
        .mul(&y.sub(&z).pow(n))
        .mul(&x.sub(&z).pow(n))
        .coefficient(&[n, n, n])
        .expect("within truncation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::generating::xy_denominator;
    use crate::genfun::identities::{dixon_lhs, dixon_rhs};

    #[test]
    fn determinants_of_the_two_matrices() {
        let t = 4;
        assert_eq!(det_i_minus_xa(&IntMatrix::cyclic_difference(), t), xy_denominator(t));
        let one = MSeries::one(3, t);
        let expected = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
            .iter()
            .fold(one, |acc, e| acc.add(&MSeries::monomial(3, t, e, 1)));
        assert_eq!(det_i_minus_xa(&IntMatrix::skew_cyclic(), t), expected);
    }

    #[test]
    fn master_theorem_small() {
        for n in 0..=3 {
            let k = [n, n, n];
            let a = master_theorem_check(&IntMatrix::cyclic_difference(), &k, 3).unwrap();
            assert!(a.holds);
            assert_eq!(a.product_coefficient, dixon_lhs(u64::from(n)));
            let b = master_theorem_check(&IntMatrix::skew_cyclic(), &k, 3).unwrap();
            assert!(b.holds);
            assert_eq!(b.inverse_coefficient, dixon_rhs(u64::from(n)));
        }
        let id = master_theorem_check(&IntMatrix::identity(2), &[2, 2], 2).unwrap();
        assert!(id.holds);
        assert_eq!(id.product_coefficient, BigInt::from(1));
    }

    #[test]
    fn bad_inputs() {
        assert!(IntMatrix::new(vec![vec![1, 2]]).is_err());
        assert!(master_theorem_check(&IntMatrix::identity(2), &[3, 1], 2).is_err());
        assert!(master_theorem_check(&IntMatrix::identity(2), &[1], 2).is_err());
    }

    #[test]
    fn vandermonde_matches_dixon() {
        for n in 0..=4 {
            assert_eq!(vandermonde_diagonal(n), dixon_lhs(u64::from(n)));
        }
    }
}
