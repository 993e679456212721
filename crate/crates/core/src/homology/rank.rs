//! Exact ranks of integer matrices.
//!
//! The main routine is a sparse fraction-free column reduction: each column is
//! reduced against stored pivot columns keyed by their lowest nonzero row,
//! combining two columns as `a·c − b·p` divided by `gcd(a, b)` and then by the
//! content of the result. Between two columns competing for the same row the
//! one with the smaller pivot magnitude is kept, so unit pivots win. Entries
//! are machine integers until an operation would overflow, at which point the
//! reduction restarts on big integers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

trait Entry: Clone + Sized {
    fn from_i64(v: i64) -> Self;
    fn vanishes(&self) -> bool;
    fn magnitude_cmp(&self, other: &Self) -> Ordering;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    /// `a·x − b·y`, `None` on overflow.
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn is_unit(&self) -> bool;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

type Column<T> = Vec<(usize, T)>;

/// `a·c − b·p` with `a`, `b` the low entries of `p`, `c`, divided by their gcd
/// and by the content of the result.
fn eliminate<T: Entry>(c: &Column<T>, p: &Column<T>) -> Option<Column<T>> {
    let a = &p.last()?.1;
    let b = &c.last()?.1;
    let g = a.gcd(b);
    let (a, b) = (a.div_exact(&g), b.div_exact(&g));
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(c.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < c.len() || j < p.len() {
        let (row, v) = match (c.get(i), p.get(j)) {
            (Some((rc, x)), Some((rp, y))) if rc == rp => {
                i += 1;
                j += 1;
                (*rc, T::lin(&a, x, &b, y)?)
            }
            (Some((rc, x)), Some((rp, _))) if rc < rp => {
                i += 1;
                (*rc, T::lin(&a, x, &zero, &zero)?)
            }
            (Some((rc, x)), None) => {
                i += 1;
                (*rc, T::lin(&a, x, &zero, &zero)?)
            }
            (_, Some((rp, y))) => {
                j += 1;
                (*rp, T::lin(&zero, &zero, &b, y)?)
            }
            (None, None) => unreachable!(),
        };
        if !v.vanishes() {
            out.push((row, v));
        }
    }
    normalize(&mut out);
    Some(out)
}

fn normalize<T: Entry>(col: &mut Column<T>) {
    let mut content: Option<T> = None;
    for (_, v) in col.iter() {
        let g = match &content {
            None => v.gcd(v),
            Some(g) => g.gcd(v),
        };
        if g.is_unit() {
            return;
        }
        content = Some(g);
    }
    if let Some(g) = content {
        for (_, v) in col.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

fn sparse_rank_in<T: Entry>(rows: usize, columns: &[Vec<(usize, i64)>]) -> Option<usize> {
    let mut pivots: Vec<Option<Column<T>>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut c: Column<T> = col
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|&(r, v)| (r, T::from_i64(v)))
            .collect();
        c.sort_by_key(|e| e.0);
        normalize(&mut c);
        while let Some((low, b)) = c.last() {
            let low = *low;
            match pivots[low].take() {
                None => {
                    pivots[low] = Some(c);
                    rank += 1;
                    break;
                }
                Some(mut p) => {
                    if b.magnitude_cmp(&p.last().unwrap().1) == Ordering::Less {
                        std::mem::swap(&mut p, &mut c);
                    }
                    c = eliminate(&c, &p)?;
                    pivots[low] = Some(p);
                }
            }
        }
    }
    Some(rank)
}

/// Rank over the rationals of the matrix with the given sparse columns.
pub fn sparse_rank(rows: usize, columns: &[Vec<(usize, i64)>]) -> usize {
    sparse_rank_in::<i64>(rows, columns)
        .or_else(|| sparse_rank_in::<BigInt>(rows, columns))
        .expect("big-integer reduction cannot overflow")
}

/// Dense fraction-free elimination with partial pivoting on magnitude.
/// Every division is exact; used as an independent check of [`sparse_rank`].
pub fn bareiss_rank(matrix: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&x, &y| a[x][col].magnitude().cmp(a[y][col].magnitude()).then(y.cmp(&x)));
        let Some(pr) = pivot else { continue };
        a.swap(rank, pr);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Diagonalizes an integer matrix by unimodular row and column operations and
/// returns the nonzero diagonal entries in absolute value. Their product is
/// `±1` exactly when the cokernel is torsion-free.
pub fn integer_diagonal(matrix: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| !a[r][c].is_zero())
            .min_by(|&(r1, c1), &(r2, c2)| a[r1][c1].magnitude().cmp(a[r2][c2].magnitude()))
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for r in t + 1..rows {
            let q = a[r][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                let (head, tail) = a.split_at_mut(r);
                for (x, p) in tail[0][t..].iter_mut().zip(&head[t][t..]) {
                    *x -= &q * p;
                }
            }
            clean &= a[r][t].is_zero();
        }
        for c in t + 1..cols {
            let q = a[t][c].div_floor(&a[t][t]);
            if !q.is_zero() {
                for row in a[t..].iter_mut() {
                    let v = &row[c] - &q * &row[t];
                    row[c] = v;
                }
            }
            clean &= a[t][c].is_zero();
        }
        if clean {
            diag.push(a[t][t].abs());
            t += 1;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn columns_of(dense: &[Vec<i64>]) -> (usize, Vec<Vec<(usize, i64)>>) {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|c| {
                (0..rows)
                    .filter(|&r| dense[r][c] != 0)
                    .map(|r| (r, dense[r][c]))
                    .collect()
            })
            .collect();
        (rows, columns)
    }

    #[test]
    fn small_ranks() {
        let cases: Vec<(Vec<Vec<i64>>, usize)> = vec![
            (vec![vec![1, 2], vec![2, 4]], 1),
            (vec![vec![2, 3], vec![4, 5]], 2),
            (vec![vec![0, 0], vec![0, 0]], 0),
            (vec![vec![6, 10, 15], vec![10, 15, 6], vec![16, 25, 21]], 2),
            (vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 3),
        ];
        for (m, expected) in cases {
            let (rows, cols) = columns_of(&m);
            assert_eq!(sparse_rank(rows, &cols), expected, "{m:?}");
            assert_eq!(bareiss_rank(&m), expected, "{m:?}");
        }
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 3;
        let m = vec![vec![big, big - 1], vec![big - 2, big - 7], vec![3, 5]];
        let (rows, cols) = columns_of(&m);
        assert_eq!(sparse_rank(rows, &cols), 2);
        assert_eq!(bareiss_rank(&m), 2);
    }

    #[test]
    fn diagonal_detects_torsion() {
        let d = integer_diagonal(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(d.iter().product::<BigInt>(), BigInt::from(6));
        let d = integer_diagonal(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(d.iter().product::<BigInt>(), BigInt::from(2));
        let d = integer_diagonal(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|v| *v == BigInt::from(1) || *v == BigInt::from(3)));
    }
}
