//! Facets of Γ_p(n) and the local moves between them.
//!
//! A nonempty face is a facet iff
//! * P1: its last vertex has some coordinate equal to `n`,
//! * P2: its first vertex has some coordinate equal to `1`,
//! * P3: every consecutive pair differs by exactly 1 in at least one coordinate.
//!
//! The conditions are applied verbatim for every arity `p`.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{ComplexParams, Face};
use crate::error::{Error, Result};
use crate::shelling::order_o_compare;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetCertificate {
    #[serde(serialize_with = "crate::report::ser_display")]
    pub face: Face,
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
}

impl FacetCertificate {
    pub fn is_facet(&self) -> bool {
        self.p1 && self.p2 && self.p3
    }
}

fn min_step(a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).map(|(x, y)| y - x).min().unwrap_or(u32::MAX)
}

pub fn facet_certificate(params: &ComplexParams, face: &Face) -> Result<FacetCertificate> {
    params.validate_face(face)?;
    let (first, last) = match (face.first(), face.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::domain("facet-hood is undefined for the empty face")),
    };
    let n = params.n();
    let p3 = face
        .vertices()
        .zip(face.vertices().skip(1))
        .all(|(a, b)| min_step(a, b) == 1);
    Ok(FacetCertificate {
        face: face.clone(),
        p1: last.contains(&n),
        p2: first.contains(&1),
        p3,
    })
}

pub(crate) fn is_facet(params: &ComplexParams, face: &Face) -> bool {
    facet_certificate(params, face).map(|c| c.is_facet()).unwrap_or(false)
}

/// Every facet, sorted by the order 𝒪 (dimension descending, then σ-word).
///
/// Chains are grown from first vertices satisfying P2; each step adds a vertex
/// strictly above the previous one with a unit step somewhere (P3), and a chain
/// is complete exactly when its last vertex touches `n` (P1).
pub fn enumerate_facets(params: &ComplexParams, budget: u64) -> Result<Vec<Face>> {
    params.check_budget(budget, params.max_dim())?;
    let p = params.p();
    let n = params.n();
    let starts: Vec<Vec<u32>> = box_points(&vec![1; p], &vec![n; p])
        .filter(|v| v.contains(&1))
        .collect();
    let mut facets: Vec<Face> = starts
        .into_par_iter()
        .flat_map_iter(|start| {
            let mut out = Vec::new();
            let mut word = start;
            grow_facets(p, n, &mut word, &mut out);
            out
        })
        .collect();
    facets.sort_by(order_o_compare);
    Ok(facets)
}

fn grow_facets(p: usize, n: u32, word: &mut Vec<u32>, out: &mut Vec<Face>) {
    let last: Vec<u32> = word[word.len() - p..].to_vec();
    if last.contains(&n) {
        out.push(Face::from_word(p, word.clone()));
        return;
    }
    let lo: Vec<u32> = last.iter().map(|c| c + 1).collect();
    for next in box_points(&lo, &vec![n; p]) {
        if min_step(&last, &next) != 1 {
            continue;
        }
        word.extend_from_slice(&next);
        grow_facets(p, n, word, out);
        word.truncate(word.len() - p);
    }
}

/// Lattice points of the box `[lo, hi]` in lexicographic order.
pub(crate) fn box_points(lo: &[u32], hi: &[u32]) -> impl Iterator<Item = Vec<u32>> {
    let lo = lo.to_vec();
    let hi = hi.to_vec();
    let mut current = if lo.iter().zip(&hi).all(|(a, b)| a <= b) {
        Some(lo.clone())
    } else {
        None
    };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut advanced = false;
        for a in (0..next.len()).rev() {
            if next[a] < hi[a] {
                next[a] += 1;
                next[a + 1..].copy_from_slice(&lo[a + 1..]);
                advanced = true;
                break;
            }
        }
        current = advanced.then_some(next);
        Some(out)
    })
}

/// The up-twist sets `A_ℓ` and down-twist sets `B_ℓ`, as coordinate positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistSets {
    pub a_sets: Vec<Vec<usize>>,
    pub b_sets: Vec<Vec<usize>>,
}

/// For vertex `ℓ` of a face with `r` vertices:
/// `A_ℓ` holds positions whose step to vertex `ℓ+1` exceeds 1 (for the last
/// vertex, positions below `n`); `B_ℓ` holds positions whose step from vertex
/// `ℓ-1` exceeds 1 (for the first vertex, positions above 1).
pub fn twist_sets(params: &ComplexParams, face: &Face) -> Result<TwistSets> {
    params.validate_face(face)?;
    if face.is_empty() {
        return Err(Error::domain("twist sets are defined for nonempty faces"));
    }
    Ok(twist_sets_unchecked(params.n(), face))
}

pub(crate) fn twist_sets_unchecked(n: u32, face: &Face) -> TwistSets {
    let r = face.len();
    let p = face.arity();
    let mut a_sets = Vec::with_capacity(r);
    let mut b_sets = Vec::with_capacity(r);
    for l in 0..r {
        let v = face.vertex(l);
        let a: Vec<usize> = if l + 1 < r {
            let w = face.vertex(l + 1);
            (0..p).filter(|&x| w[x] - v[x] > 1).collect()
        } else {
            (0..p).filter(|&x| v[x] < n).collect()
        };
        let b: Vec<usize> = if l > 0 {
            let u = face.vertex(l - 1);
            (0..p).filter(|&x| v[x] - u[x] > 1).collect()
        } else {
            (0..p).filter(|&x| v[x] > 1).collect()
        };
        a_sets.push(a);
        b_sets.push(b);
    }
    TwistSets { a_sets, b_sets }
}

/// Positions in `B_ℓ` for every vertex `ℓ`; cheaper than the full [`TwistSets`].
pub(crate) fn down_sets(face: &Face) -> Vec<Vec<usize>> {
    let p = face.arity();
    (0..face.len())
        .map(|l| {
            let v = face.vertex(l);
            if l == 0 {
                (0..p).filter(|&x| v[x] > 1).collect()
            } else {
                let u = face.vertex(l - 1);
                (0..p).filter(|&x| v[x] - u[x] > 1).collect()
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistDirection {
    Up,
    Down,
}

/// Replaces vertex `vertex` by the copy whose coordinate `position` moves one
/// step in `direction`. The position must lie in `A_ℓ` (up) or `B_ℓ` (down).
pub fn apply_twist(
    params: &ComplexParams,
    face: &Face,
    vertex: usize,
    position: usize,
    direction: TwistDirection,
) -> Result<Face> {
    let sets = twist_sets(params, face)?;
    if vertex >= face.len() || position >= face.arity() {
        return Err(Error::precondition(format!(
            "twist at vertex {vertex}, position {position} is out of range for {face}"
        )));
    }
    let allowed = match direction {
        TwistDirection::Up => &sets.a_sets[vertex],
        TwistDirection::Down => &sets.b_sets[vertex],
    };
    if !allowed.contains(&position) {
        return Err(Error::precondition(format!(
            "position {position} is not in the {direction:?}-twist set of vertex {vertex} of {face}"
        )));
    }
    let mut moved = face.vertex(vertex).to_vec();
    match direction {
        TwistDirection::Up => moved[position] += 1,
        TwistDirection::Down => moved[position] -= 1,
    }
    Ok(face.splice(vertex, &moved))
}

/// Safety of a twist of a facet: an up-twist must keep P2 (first vertex) or
/// P3 (otherwise); a down-twist must keep P1 (last vertex) or P3 (otherwise).
pub fn is_safe_twist(
    params: &ComplexParams,
    facet: &Face,
    vertex: usize,
    position: usize,
    direction: TwistDirection,
) -> Result<bool> {
    if !facet_certificate(params, facet)?.is_facet() {
        return Err(Error::precondition(format!("{facet} is not a facet")));
    }
    let twisted = apply_twist(params, facet, vertex, position, direction)?;
    let cert = facet_certificate(params, &twisted)?;
    let last = facet.len() - 1;
    Ok(match direction {
        TwistDirection::Up if vertex == 0 => cert.p2,
        TwistDirection::Up => cert.p3,
        TwistDirection::Down if vertex == last => cert.p1,
        TwistDirection::Down => cert.p3,
    })
}

/// Per-position compositions `(c_1, c_2 - c_1, ..., c_r - c_{r-1}, n + 1 - c_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftVectors(Vec<Vec<u32>>);

impl ShiftVectors {
    pub fn new(parts: Vec<Vec<u32>>) -> Self {
        ShiftVectors(parts)
    }

    /// One composition per coordinate position.
    pub fn per_position(&self) -> &[Vec<u32>] {
        &self.0
    }

    /// Column `ℓ`: the `ℓ`-th entry of every composition.
    pub fn column(&self, l: usize) -> Vec<u32> {
        self.0.iter().map(|c| c[l]).collect()
    }

    /// Sum of each composition.
    pub fn sums(&self) -> Vec<u32> {
        self.0.iter().map(|c| c.iter().sum()).collect()
    }

    /// Inverse of [`shift_vectors`]: prefix sums, dropping the closing part.
    pub fn to_face(&self) -> Face {
        let p = self.0.len();
        let r = self.0.first().map_or(0, |c| c.len().saturating_sub(1));
        let mut word = vec![0; p * r];
        for (a, comp) in self.0.iter().enumerate() {
            let mut acc = 0;
            for l in 0..r {
                acc += comp[l];
                word[l * p + a] = acc;
            }
        }
        Face::from_word(p, word)
    }
}

pub fn shift_vectors(params: &ComplexParams, facet: &Face) -> Result<ShiftVectors> {
    if !facet_certificate(params, facet)?.is_facet() {
        return Err(Error::precondition(format!("{facet} is not a facet")));
    }
    Ok(shift_vectors_unchecked(params.n(), facet))
}

pub(crate) fn shift_vectors_unchecked(n: u32, face: &Face) -> ShiftVectors {
    let p = face.arity();
    let parts = (0..p)
        .map(|a| {
            let mut prev = 0;
            let mut comp: Vec<u32> = face
                .vertices()
                .map(|v| {
                    let step = v[a] - prev;
                    prev = v[a];
                    step
                })
                .collect();
            comp.push(n + 1 - prev);
            comp
        })
        .collect();
    ShiftVectors(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Vertex, DEFAULT_FACE_BUDGET};

    fn face(vs: &[&[u32]]) -> Face {
        let vs: Vec<Vertex> = vs.iter().map(|c| Vertex::new(c.to_vec())).collect();
        Face::from_vertices(vs[0].coords().len(), &vs)
    }

    fn delta(n: u32) -> ComplexParams {
        ComplexParams::delta(n).unwrap()
    }

    #[test]
    fn certificate_examples() {
        let c = facet_certificate(&delta(5), &face(&[&[1, 2, 1], &[3, 3, 3], &[4, 4, 5]])).unwrap();
        assert!(c.p1 && c.p2 && c.p3 && c.is_facet());

        let c = facet_certificate(&delta(5), &face(&[&[1, 2, 2], &[2, 4, 4]])).unwrap();
        assert!(!c.p1);
        assert!(!c.is_facet());

        let c = facet_certificate(&delta(2), &face(&[&[1, 1, 1]])).unwrap();
        assert!(!c.p1 && !c.is_facet());

        assert!(matches!(
            facet_certificate(&delta(2), &Face::empty(3)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn facets_of_delta_2() {
        let got: Vec<String> = enumerate_facets(&delta(2), DEFAULT_FACE_BUDGET)
            .unwrap()
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(
            got,
            vec![
                "(1,1,1) (2,2,2)",
                "(1,1,2)",
                "(1,2,1)",
                "(1,2,2)",
                "(2,1,1)",
                "(2,1,2)",
                "(2,2,1)"
            ]
        );
    }

    #[test]
    fn facets_of_delta_1() {
        let got = enumerate_facets(&delta(1), DEFAULT_FACE_BUDGET).unwrap();
        assert_eq!(got, vec![face(&[&[1, 1, 1]])]);
    }

    #[test]
    fn diagonal_is_the_unique_top_facet() {
        for n in 1..=5 {
            let facets = enumerate_facets(&delta(n), DEFAULT_FACE_BUDGET).unwrap();
            let diag: Vec<u32> = (1..=n).flat_map(|i| [i, i, i]).collect();
            assert_eq!(facets[0], Face::from_word(3, diag));
            assert_eq!(facets.iter().filter(|f| f.dim() == i64::from(n) - 1).count(), 1);
        }
    }

    #[test]
    fn twist_set_examples() {
        let f = face(&[&[1, 1, 2], &[2, 5, 5]]);
        let sets = twist_sets(&delta(5), &f).unwrap();
        assert_eq!(sets.a_sets[0], vec![1, 2]);
        assert_eq!(sets.b_sets[1], vec![1, 2]);

        for n in 1..=5 {
            let diag = Face::from_word(3, (1..=n).flat_map(|i| [i, i, i]).collect());
            let sets = twist_sets(&delta(n), &diag).unwrap();
            assert!(sets.a_sets.iter().chain(&sets.b_sets).all(|s| s.is_empty()));
        }

        let sets = twist_sets(&delta(4), &face(&[&[1, 2, 2], &[2, 4, 4]])).unwrap();
        assert_eq!(sets.b_sets, vec![vec![1, 2], vec![1, 2]]);
    }

    #[test]
    fn twist_examples() {
        let d5 = delta(5);
        let up = apply_twist(&d5, &face(&[&[1, 1, 2], &[2, 5, 5]]), 0, 1, TwistDirection::Up).unwrap();
        assert_eq!(up, face(&[&[1, 2, 2], &[2, 5, 5]]));

        let g = face(&[&[1, 2, 2], &[2, 4, 5]]);
        let safe = apply_twist(&d5, &g, 1, 1, TwistDirection::Down).unwrap();
        assert_eq!(safe, face(&[&[1, 2, 2], &[2, 3, 5]]));
        let unsafe_ = apply_twist(&d5, &g, 1, 2, TwistDirection::Down).unwrap();
        assert_eq!(unsafe_, face(&[&[1, 2, 2], &[2, 4, 4]]));

        assert!(is_safe_twist(&d5, &g, 1, 1, TwistDirection::Down).unwrap());
        assert!(!is_safe_twist(&d5, &g, 1, 2, TwistDirection::Down).unwrap());
    }

    #[test]
    fn twist_preconditions() {
        let d5 = delta(5);
        let g = face(&[&[1, 2, 2], &[2, 4, 5]]);
        // position 0 of vertex 1 steps by exactly 1, so it is not in B
        assert!(matches!(
            apply_twist(&d5, &g, 1, 0, TwistDirection::Down),
            Err(Error::Precondition(_))
        ));
        let not_facet = face(&[&[1, 2, 2], &[2, 4, 4]]);
        assert!(matches!(
            is_safe_twist(&d5, &not_facet, 1, 1, TwistDirection::Down),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn shift_vector_examples() {
        let sv = shift_vectors(&delta(4), &face(&[&[1, 2, 2], &[2, 4, 4]])).unwrap();
        assert_eq!(sv.per_position(), &[vec![1, 1, 3], vec![2, 2, 1], vec![2, 2, 1]]);

        let diag = Face::from_word(3, (1..=4).flat_map(|i| [i, i, i]).collect());
        let sv = shift_vectors(&delta(4), &diag).unwrap();
        assert!(sv.per_position().iter().all(|c| c == &vec![1; 5]));

        let sv = shift_vectors(&delta(2), &face(&[&[1, 2, 2]])).unwrap();
        assert_eq!(sv.per_position(), &[vec![1, 2], vec![2, 1], vec![2, 1]]);

        assert!(matches!(
            shift_vectors(&delta(5), &face(&[&[1, 2, 2], &[2, 4, 4]])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn box_points_lexicographic() {
        let pts: Vec<Vec<u32>> = box_points(&[1, 2], &[2, 3]).collect();
        assert_eq!(pts, vec![vec![1, 2], vec![1, 3], vec![2, 2], vec![2, 3]]);
        assert_eq!(box_points(&[3], &[2]).count(), 0);
    }
}
