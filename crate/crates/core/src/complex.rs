//! The complexes Γ_p(n): vertices are p-tuples over `[n]`, faces are chains that
//! increase strictly in every coordinate. Δ(n) is the case `p = 3`.
//!
//! Nothing is materialized up front; faces are streamed on demand in the
//! canonical order (lexicographic on the flattened coordinate word).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{Error, Result};

/// Default cap on the number of faces any single materialization may touch.
pub const DEFAULT_FACE_BUDGET: u64 = 100_000_000;

/// Identifies Γ_p(n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexParams {
    p: usize,
    n: u32,
}

impl ComplexParams {
    pub fn new(p: usize, n: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("tuple arity p must be at least 1"));
        }
        if n == 0 {
            return Err(Error::domain("index bound n must be at least 1"));
        }
        Ok(Self { p, n })
    }

    /// Δ(n) = Γ_3(n).
    pub fn delta(n: u32) -> Result<Self> {
        Self::new(3, n)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Largest face dimension, `n - 1`.
    pub fn max_dim(&self) -> i64 {
        i64::from(self.n) - 1
    }

    /// Number of faces of dimension `dim`, i.e. `C(n, dim+1)^p`.
    pub fn face_count(&self, dim: i64) -> BigUint {
        if dim < -1 || dim > self.max_dim() {
            return BigUint::zero();
        }
        binomial(u64::from(self.n), (dim + 1) as u64).pow(self.p as u32)
    }

    /// Sum of all face counts, including the empty face.
    pub fn total_faces(&self) -> BigUint {
        (-1..=self.max_dim()).map(|d| self.face_count(d)).sum()
    }

    /// Errors unless every dimension up to `max_dim` fits the budget cumulatively.
    pub(crate) fn check_budget(&self, budget: u64, max_dim: i64) -> Result<()> {
        let mut running = BigUint::zero();
        for dim in -1..=max_dim.min(self.max_dim()) {
            running += self.face_count(dim);
            if running > BigUint::from(budget) {
                return Err(Error::Budget {
                    dim,
                    required: running.to_string(),
                    budget,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn validate_vertex(&self, coords: &[u32]) -> Result<()> {
        if coords.len() != self.p {
            return Err(Error::domain(format!(
                "vertex has arity {} but the complex has p = {}",
                coords.len(),
                self.p
            )));
        }
        if let Some(bad) = coords.iter().find(|&&c| c == 0 || c > self.n) {
            return Err(Error::domain(format!(
                "coordinate {bad} outside [1, {}]",
                self.n
            )));
        }
        Ok(())
    }

    pub(crate) fn validate_face(&self, face: &Face) -> Result<()> {
        if face.arity() != self.p {
            return Err(Error::domain(format!(
                "face has arity {} but the complex has p = {}",
                face.arity(),
                self.p
            )));
        }
        for v in face.vertices() {
            self.validate_vertex(v)?;
        }
        if !face.is_chain() {
            return Err(Error::domain(format!("{face} is not a face")));
        }
        Ok(())
    }
}

impl fmt::Display for ComplexParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ_{}({})", self.p, self.n)
    }
}

/// Validated constructor.
pub fn make_complex(p: usize, n: u32) -> Result<ComplexParams> {
    ComplexParams::new(p, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(Vec<u32>);

impl Vertex {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Vertex(coords.into())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// The all-`value` vertex of arity `p`.
    pub fn constant(p: usize, value: u32) -> Self {
        Vertex(vec![value; p])
    }
}

impl From<&[u32]> for Vertex {
    fn from(coords: &[u32]) -> Self {
        Vertex(coords.to_vec())
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, coords: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (a, c) in coords.iter().enumerate() {
        if a > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

/// A face stored as its flattened coordinate word, vertices in increasing order.
///
/// Strict coordinatewise increase means any single coordinate orders the
/// vertices, so the stored order is canonical. The derived `Ord` is
/// lexicographic on the word, which is the canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    arity: usize,
    word: Vec<u32>,
}

impl Face {
    pub fn empty(arity: usize) -> Self {
        Face {
            arity,
            word: Vec::new(),
        }
    }

    /// Builds a face from vertices in any order; they are sorted by first coordinate.
    /// The chain property is not checked here, see [`is_face`].
    pub fn from_vertices(arity: usize, vertices: &[Vertex]) -> Self {
        let mut sorted: Vec<&Vertex> = vertices.iter().collect();
        sorted.sort();
        let word = sorted.iter().flat_map(|v| v.coords().iter().copied()).collect();
        Face { arity, word }
    }

    /// Rebuilds a face from a flattened word. Panics if the length is not a multiple of `arity`.
    pub fn from_word(arity: usize, word: Vec<u32>) -> Self {
        assert!(arity > 0 && word.len().is_multiple_of(arity), "word length must be a multiple of the arity");
        Face { arity, word }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.word.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.len() as i64 - 1
    }

    pub fn vertex(&self, index: usize) -> &[u32] {
        &self.word[index * self.arity..(index + 1) * self.arity]
    }

    pub fn vertices(&self) -> std::slice::ChunksExact<'_, u32> {
        self.word.chunks_exact(self.arity)
    }

    pub fn first(&self) -> Option<&[u32]> {
        (!self.is_empty()).then(|| self.vertex(0))
    }

    pub fn last(&self) -> Option<&[u32]> {
        (!self.is_empty()).then(|| self.vertex(self.len() - 1))
    }

    /// True iff consecutive vertices increase strictly in every coordinate.
    pub fn is_chain(&self) -> bool {
        self.vertices()
            .zip(self.vertices().skip(1))
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x < y))
    }

    /// Position of `vertex` in this face, if present.
    pub fn position(&self, vertex: &[u32]) -> Option<usize> {
        // vertices are sorted by first coordinate, which is strictly increasing
        let key = *vertex.first()?;
        let mut lo = 0;
        let mut hi = self.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            let v = self.vertex(mid);
            match v[0].cmp(&key) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return (v == vertex).then_some(mid),
            }
        }
        None
    }

    pub fn contains_vertex(&self, vertex: &[u32]) -> bool {
        self.position(vertex).is_some()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.vertices().all(|v| other.contains_vertex(v))
    }

    /// The face with vertex `index` removed.
    pub fn without(&self, index: usize) -> Face {
        let mut word = Vec::with_capacity(self.word.len().saturating_sub(self.arity));
        word.extend_from_slice(&self.word[..index * self.arity]);
        word.extend_from_slice(&self.word[(index + 1) * self.arity..]);
        Face {
            arity: self.arity,
            word,
        }
    }

    /// The face with vertex `index` replaced by the run `replacement` (flattened).
    pub fn splice(&self, index: usize, replacement: &[u32]) -> Face {
        debug_assert_eq!(replacement.len() % self.arity, 0);
        let mut word = Vec::with_capacity(self.word.len() + replacement.len());
        word.extend_from_slice(&self.word[..index * self.arity]);
        word.extend_from_slice(replacement);
        word.extend_from_slice(&self.word[(index + 1) * self.arity..]);
        Face {
            arity: self.arity,
            word,
        }
    }

    /// Vertices shared with `other`, in order.
    pub fn intersection(&self, other: &Face) -> Face {
        let word = self
            .vertices()
            .filter(|v| other.contains_vertex(v))
            .flat_map(|v| v.iter().copied())
            .collect();
        Face {
            arity: self.arity,
            word,
        }
    }

    /// All subfaces (every subset of the vertices), including the empty face and `self`.
    pub fn subfaces(&self) -> impl Iterator<Item = Face> + '_ {
        let r = self.len();
        assert!(r < 64, "face too large to enumerate its subfaces");
        (0u64..(1u64 << r)).map(move |mask| {
            let word = (0..r)
                .filter(|l| mask & (1 << l) != 0)
                .flat_map(|l| self.vertex(l).iter().copied())
                .collect();
            Face {
                arity: self.arity,
                word,
            }
        })
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        for (l, v) in self.vertices().enumerate() {
            if l > 0 {
                f.write_str(" ")?;
            }
            write_tuple(f, v)?;
        }
        Ok(())
    }
}

/// Whether `candidate` (in any vertex order) is a face of the complex.
pub fn is_face(params: &ComplexParams, candidate: &[Vertex]) -> Result<bool> {
    for v in candidate {
        params.validate_vertex(v.coords())?;
    }
    Ok(Face::from_vertices(params.p(), candidate).is_chain())
}

/// Streams every face of dimension `dim` in canonical order.
///
/// A dimension outside `[-1, n-1]` yields nothing.
pub fn enumerate_faces(params: &ComplexParams, dim: i64) -> Faces {
    Faces::new(*params, dim)
}

/// Odometer over chains of a fixed length. Each vertex ranges over the box
/// bounded below by its predecessor and above by what still leaves room for
/// the remaining vertices, so every state is a face and no backtracking is needed.
#[derive(Clone, Debug)]
pub struct Faces {
    p: usize,
    n: u32,
    len: usize,
    word: Vec<u32>,
    state: FacesState,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FacesState {
    Fresh,
    Running,
    Done,
}

impl Faces {
    fn new(params: ComplexParams, dim: i64) -> Self {
        let valid = dim >= -1 && dim <= params.max_dim();
        let len = if valid { (dim + 1) as usize } else { 0 };
        Faces {
            p: params.p(),
            n: params.n(),
            len,
            word: Vec::new(),
            state: if valid { FacesState::Fresh } else { FacesState::Done },
        }
    }

    fn upper(&self, l: usize) -> u32 {
        self.n - (self.len - 1 - l) as u32
    }

    fn lower(&self, l: usize, a: usize) -> u32 {
        if l == 0 {
            1
        } else {
            self.word[(l - 1) * self.p + a] + 1
        }
    }

    fn reset_from(&mut self, l: usize) {
        for m in l..self.len {
            for a in 0..self.p {
                self.word[m * self.p + a] = self.lower(m, a);
            }
        }
    }

    /// Lexicographic successor of vertex `l` inside its box.
    fn bump_vertex(&mut self, l: usize) -> bool {
        let hi = self.upper(l);
        for a in (0..self.p).rev() {
            let idx = l * self.p + a;
            if self.word[idx] < hi {
                self.word[idx] += 1;
                for b in a + 1..self.p {
                    self.word[l * self.p + b] = self.lower(l, b);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Faces {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        match self.state {
            FacesState::Done => return None,
            FacesState::Fresh => {
                self.state = FacesState::Running;
                self.word = vec![0; self.len * self.p];
                self.reset_from(0);
            }
            FacesState::Running => {
                let mut advanced = false;
                for l in (0..self.len).rev() {
                    if self.bump_vertex(l) {
                        self.reset_from(l + 1);
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    self.state = FacesState::Done;
                    return None;
                }
            }
        }
        if self.len == 0 {
            // the empty face is yielded exactly once
            self.state = FacesState::Done;
        }
        Some(Face {
            arity: self.p,
            word: self.word.clone(),
        })
    }
}

/// Reduced face counts `(f_{-1}, f_0, ..., f_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(#[serde(serialize_with = "crate::report::ser_biguints")] Vec<BigUint>);

impl FVector {
    /// `counts[0]` is `f_{-1}`.
    pub fn from_counts(counts: Vec<BigUint>) -> Result<Self> {
        match counts.first() {
            Some(c) if *c == BigUint::from(1u32) => Ok(FVector(counts)),
            _ => Err(Error::domain("reduced f-vector must start with f_{-1} = 1")),
        }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.0
    }

    /// `f_dim`, zero outside the stored range.
    pub fn get(&self, dim: i64) -> BigUint {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.0.get(i).cloned())
            .unwrap_or_default()
    }

    /// Top dimension `d`.
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 2
    }

    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|c| c.to_u64()).collect()
    }
}

/// `f_{s-1} = C(n, s)^p` for `s = 0..=n`, without enumerating anything.
pub fn f_vector_formula(params: &ComplexParams) -> FVector {
    FVector((-1..=params.max_dim()).map(|d| params.face_count(d)).collect())
}

/// Face counts obtained by streaming every face.
pub fn f_vector_enumerated(params: &ComplexParams, budget: u64) -> Result<FVector> {
    params.check_budget(budget, params.max_dim())?;
    let counts = (-1..=params.max_dim())
        .map(|d| BigUint::from(enumerate_faces(params, d).count()))
        .collect();
    Ok(FVector(counts))
}

/// `Σ_{i=-1}^{d} (-1)^i f_i`.
pub fn reduced_euler_characteristic(f: &FVector) -> BigInt {
    f.0.iter()
        .enumerate()
        .map(|(s, c)| {
            let c = BigInt::from(c.clone());
            // entry s holds dimension s - 1
            if s % 2 == 1 {
                c
            } else {
                -c
            }
        })
        .sum()
}
