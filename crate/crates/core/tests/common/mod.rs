//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;

use dixon_complex::{ComplexParams, Face};

/// Binomial coefficients from Pascal's triangle.
pub fn pascal_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

/// `Σ_s (−1)^s C(n,s)^p` from Pascal's triangle.
pub fn alternating_power_sum(n: usize, p: u32) -> BigInt {
    pascal_row(n)
        .iter()
        .enumerate()
        .map(|(s, c)| {
            let term = c.pow(p);
            if s % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// Every vertex `(1..=n)^p` in lexicographic order.
pub fn all_vertices(p: usize, n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..p {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=n).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn below(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x < y)
}

/// All faces, built by extending chains one vertex at a time.
pub fn all_faces(p: usize, n: u32) -> Vec<Vec<Vec<u32>>> {
    let verts = all_vertices(p, n);
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Vec<u32>>> = vec![vec![]];
    while let Some(chain) = stack.pop() {
        for v in &verts {
            if chain.last().is_none_or(|last| below(last, v)) {
                let mut next = chain.clone();
                next.push(v.clone());
                stack.push(next);
            }
        }
        out.push(chain);
    }
    out
}

/// No vertex can be added while keeping a chain.
pub fn is_maximal(p: usize, n: u32, chain: &[Vec<u32>]) -> bool {
    !all_vertices(p, n).iter().any(|w| {
        !chain.contains(w) && chain.iter().all(|v| below(v, w) || below(w, v))
    })
}

pub fn to_face(p: usize, chain: &[Vec<u32>]) -> Face {
    Face::from_word(p, chain.iter().flatten().copied().collect())
}

pub fn delta(n: u32) -> ComplexParams {
    ComplexParams::delta(n).unwrap()
}
