//! The order 𝒪 on facets and its verification as a shelling.
//!
//! An order `F_1, ..., F_t` is a shelling iff for every `i < k` there is a
//! `j < k` and a vertex `v ∈ F_k` with `F_i ∩ F_k ⊆ F_j ∩ F_k = F_k \ {v}`.
//! Witnesses are produced either by the constructive route (a down-twist or a
//! dimension-raising replacement of the left-most private vertex with a
//! nonempty `B_ℓ`) or by scanning earlier facets.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{ComplexParams, Face, Vertex};
use crate::error::{Error, Result};
use crate::facets::{down_sets, enumerate_facets, facet_certificate, is_facet};
use crate::homology::BettiVector;

/// Number of witnesses kept verbatim in a [`ShellingReport`].
pub const REPORTED_WITNESSES: usize = 100;

/// Cap on `Σ 2^|F|` over facets when indexing subfaces.
const SUBFACE_INDEX_LIMIT: u64 = 50_000_000;

/// Flattened coordinates of a face, vertex after vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SigmaWord(Vec<u32>);

impl SigmaWord {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Chunks the word back into a face of the given arity.
    pub fn to_face(&self, arity: usize) -> Face {
        Face::from_word(arity, self.0.clone())
    }
}

pub fn sigma_word(face: &Face) -> SigmaWord {
    SigmaWord(face.word().to_vec())
}

/// 𝒪: higher dimension first, then lexicographic σ-word.
pub fn order_o_compare(a: &Face, b: &Face) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.word().cmp(b.word()))
}

/// Maximal runs of shared and private vertices of two facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPartition {
    /// Runs of `F_i ∩ F_k`, consecutive in `F_i`.
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub c_blocks: Vec<Face>,
    /// Runs of `F_i \ F_k`, consecutive in `F_i`.
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub i_blocks: Vec<Face>,
    /// Runs of `F_k \ F_i`, consecutive in `F_k`.
    #[serde(serialize_with = "crate::report::ser_display_vec")]
    pub k_blocks: Vec<Face>,
}

impl BlockPartition {
    /// The common number of private blocks, when both sides agree.
    pub fn private_block_count(&self) -> Option<usize> {
        (self.i_blocks.len() == self.k_blocks.len()).then_some(self.i_blocks.len())
    }
}

/// Walks `facet` and cuts it into maximal runs of vertices satisfying `keep`.
fn runs(facet: &Face, keep: impl Fn(&[u32]) -> bool) -> Vec<Face> {
    let p = facet.arity();
    let mut blocks = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    for v in facet.vertices() {
        if keep(v) {
            current.extend_from_slice(v);
        } else if !current.is_empty() {
            blocks.push(Face::from_word(p, std::mem::take(&mut current)));
        }
    }
    if !current.is_empty() {
        blocks.push(Face::from_word(p, current));
    }
    blocks
}

/// Splits two faces into shared and private runs. When both are facets the
/// private sides must have the same number of blocks; a mismatch is reported
/// as [`Error::Inconsistent`].
pub fn block_partition(params: &ComplexParams, fi: &Face, fk: &Face) -> Result<BlockPartition> {
    let bp = BlockPartition {
        c_blocks: runs(fi, |v| fk.contains_vertex(v)),
        i_blocks: runs(fi, |v| !fk.contains_vertex(v)),
        k_blocks: runs(fk, |v| !fi.contains_vertex(v)),
    };
    if bp.private_block_count().is_none() && is_facet(params, fi) && is_facet(params, fk) {
        return Err(Error::Inconsistent(format!(
            "facets {fi} and {fk} have {} and {} private blocks",
            bp.i_blocks.len(),
            bp.k_blocks.len()
        )));
    }
    Ok(bp)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessMode {
    /// Follow the construction; fall back to an indexed search when it does not apply.
    Constructive,
    /// Scan every earlier facet.
    Exhaustive,
    /// Run both and record whether they agree on existence.
    Both,
}

/// How a witness facet `F_j` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRoute {
    /// Safe down-twist of `F_k`: same dimension, smaller σ-word.
    DownTwist,
    /// Interior vertex replaced by two vertices: higher dimension.
    InteriorSplit,
    /// Last vertex replaced by its down-twist followed by `(n, ..., n)`.
    TerminalExtension,
    /// Found by searching earlier facets.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Position of `F_j` in the order.
    pub j: usize,
    /// Index within `F_k` of the dropped vertex `v`.
    pub dropped: usize,
    pub route: WitnessRoute,
}

/// A facet order together with the lookups verification needs.
#[derive(Debug)]
pub struct ShellingOrder {
    params: ComplexParams,
    facets: Vec<Face>,
    position: HashMap<Face, usize>,
    first_holder: HashMap<Face, usize>,
    digest: u64,
}

impl ShellingOrder {
    /// The order 𝒪 on all facets of Γ_p(n).
    pub fn canonical(params: &ComplexParams, budget: u64) -> Result<Self> {
        let facets = enumerate_facets(params, budget)?;
        Self::build(*params, facets)
    }

    /// An arbitrary order; it must list every facet exactly once.
    pub fn from_facets(params: &ComplexParams, order: Vec<Face>, budget: u64) -> Result<Self> {
        let mut expected = enumerate_facets(params, budget)?;
        let mut given = order.clone();
        expected.sort();
        given.sort();
        if given.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("facet order lists a facet more than once"));
        }
        if given != expected {
            return Err(Error::domain(format!(
                "facet order has {} entries but {} has {} facets, or lists a non-facet",
                order.len(),
                params,
                expected.len()
            )));
        }
        Self::build(*params, order)
    }

    fn build(params: ComplexParams, facets: Vec<Face>) -> Result<Self> {
        let weight: u64 = facets
            .iter()
            .map(|f| 1u64.checked_shl(f.len() as u32).unwrap_or(u64::MAX))
            .fold(0u64, |a, b| a.saturating_add(b));
        if weight > SUBFACE_INDEX_LIMIT {
            return Err(Error::Budget {
                dim: params.max_dim(),
                required: weight.to_string(),
                budget: SUBFACE_INDEX_LIMIT,
            });
        }
        let position = facets
            .iter()
            .enumerate()
            .map(|(j, f)| (f.clone(), j))
            .collect();
        let mut first_holder = HashMap::new();
        for (j, f) in facets.iter().enumerate() {
            for sub in f.subfaces() {
                first_holder.entry(sub).or_insert(j);
            }
        }
        let mut hasher = DefaultHasher::new();
        facets.hash(&mut hasher);
        Ok(ShellingOrder {
            params,
            facets,
            position,
            first_holder,
            digest: hasher.finish(),
        })
    }

    pub fn params(&self) -> &ComplexParams {
        &self.params
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn position(&self, facet: &Face) -> Option<usize> {
        self.position.get(facet).copied()
    }

    /// Earliest facet containing `face`.
    pub fn first_holder(&self, face: &Face) -> Option<usize> {
        self.first_holder.get(face).copied()
    }

    /// Same facets in reverse order.
    pub fn reversed(&self) -> Result<Self> {
        let mut facets = self.facets.clone();
        facets.reverse();
        Self::build(self.params, facets)
    }

    /// The facet `F_j` the construction produces for dropping vertex `l` of
    /// `F_k`, validated against the order. `None` when it does not apply.
    fn construct(&self, k: usize, l: usize, b_sets: &[Vec<usize>]) -> Option<Witness> {
        let fk = &self.facets[k];
        let r = fk.len();
        let n = self.params.n();
        let v = fk.vertex(l);
        // left-most position of B_ℓ
        let b = *b_sets[l].first()?;
        let mut w = v.to_vec();
        w[b] -= 1;
        let (candidate, route) = if l + 1 < r {
            let next = fk.vertex(l + 1);
            let others_min = (0..v.len())
                .filter(|&a| a != b)
                .map(|a| next[a] - v[a])
                .min()
                .unwrap_or(u32::MAX);
            if others_min == 1 {
                (fk.splice(l, &w), WitnessRoute::DownTwist)
            } else {
                let mut run = w.clone();
                run.extend(v.iter().enumerate().map(|(a, &c)| if a == b { c } else { c + 1 }));
                (fk.splice(l, &run), WitnessRoute::InteriorSplit)
            }
        } else if v.iter().enumerate().any(|(a, &c)| a != b && c == n) {
            (fk.splice(l, &w), WitnessRoute::DownTwist)
        } else {
            let mut run = w.clone();
            run.extend(std::iter::repeat_n(n, v.len()));
            (fk.splice(l, &run), WitnessRoute::TerminalExtension)
        };
        if !candidate.is_chain() || !is_facet(&self.params, &candidate) {
            return None;
        }
        let j = self.position(&candidate)?;
        if j >= k || candidate.intersection(fk) != fk.without(l) {
            return None;
        }
        Some(Witness { j, dropped: l, route })
    }

    /// Earliest facet before `k` containing `F_k \ {v_l}`, via the subface index.
    fn indexed_search(&self, k: usize, l: usize) -> Option<Witness> {
        let ridge = self.facets[k].without(l);
        let j = self.first_holder(&ridge)?;
        (j < k).then_some(Witness {
            j,
            dropped: l,
            route: WitnessRoute::Search,
        })
    }

    /// Earliest facet before `k` containing `F_k \ {v_l}`, by scanning.
    fn scan_search(&self, k: usize, l: usize) -> Option<Witness> {
        let ridge = self.facets[k].without(l);
        let fk = &self.facets[k];
        self.facets[..k]
            .iter()
            .position(|fj| ridge.is_subface_of(fj) && fj.intersection(fk) == ridge)
            .map(|j| Witness {
                j,
                dropped: l,
                route: WitnessRoute::Search,
            })
    }

    /// Witness for the pair `i < k` under the constructive route alone.
    pub fn constructive_witness(&self, i: usize, k: usize) -> Result<Option<Witness>> {
        self.check_pair(i, k)?;
        let fk = &self.facets[k];
        let private: Vec<bool> = fk.vertices().map(|v| !self.facets[i].contains_vertex(v)).collect();
        let b_sets = down_sets(fk);
        Ok(choose_vertex(&private, &b_sets).and_then(|l| self.construct(k, l, &b_sets)))
    }

    /// Witness for the pair `i < k` by scanning earlier facets.
    pub fn exhaustive_witness(&self, i: usize, k: usize) -> Result<Option<Witness>> {
        self.check_pair(i, k)?;
        let fi = &self.facets[i];
        let fk = &self.facets[k];
        Ok((0..fk.len())
            .filter(|&l| !fi.contains_vertex(fk.vertex(l)))
            .find_map(|l| self.scan_search(k, l)))
    }

    fn check_pair(&self, i: usize, k: usize) -> Result<()> {
        if i >= k || k >= self.facets.len() {
            return Err(Error::precondition(format!(
                "witness needs i < k < {}, got i = {i}, k = {k}",
                self.facets.len()
            )));
        }
        Ok(())
    }

    /// Checks every pair `i < k`.
    pub fn verify(&self, mode: WitnessMode) -> ShellingReport {
        let per_k: Vec<PerFacet> = (0..self.facets.len())
            .into_par_iter()
            .map(|k| self.verify_against(k, mode))
            .collect();

        let mut report = ShellingReport {
            params: self.params,
            mode,
            facet_count: self.facets.len(),
            total_pairs: 0,
            witnessed_pairs: 0,
            constructive_fallbacks: 0,
            witnesses: Vec::new(),
            violation_count: 0,
            violations: Vec::new(),
            disagreements: (mode == WitnessMode::Both).then(Vec::new),
            digest: self.digest,
        };
        for part in per_k {
            report.total_pairs += part.pairs;
            report.witnessed_pairs += part.witnessed;
            report.constructive_fallbacks += part.fallbacks;
            let room = REPORTED_WITNESSES.saturating_sub(report.witnesses.len());
            report.witnesses.extend(part.witnesses.into_iter().take(room));
            report.violation_count += part.violations.len() as u64;
            report.violations.extend(part.violations);
            if let Some(d) = report.disagreements.as_mut() {
                d.extend(part.disagreements);
            }
        }
        report
    }

    fn verify_against(&self, k: usize, mode: WitnessMode) -> PerFacet {
        let fk = &self.facets[k];
        let r = fk.len();
        let b_sets = down_sets(fk);
        let mut constructed: Vec<Option<Option<Witness>>> = vec![None; r];
        let mut searched: Vec<Option<Option<Witness>>> = vec![None; r];
        let mut out = PerFacet::default();

        for i in 0..k {
            out.pairs += 1;
            let fi = &self.facets[i];
            let private: Vec<bool> = fk.vertices().map(|v| !fi.contains_vertex(v)).collect();

            let mut constructive = || {
                choose_vertex(&private, &b_sets).and_then(|l| {
                    constructed[l]
                        .get_or_insert_with(|| self.construct(k, l, &b_sets))
                        .clone()
                })
            };
            let mut exhaustive = |indexed: bool| {
                (0..r).filter(|&l| private[l]).find_map(|l| {
                    searched[l]
                        .get_or_insert_with(|| {
                            if indexed {
                                self.indexed_search(k, l)
                            } else {
                                self.scan_search(k, l)
                            }
                        })
                        .clone()
                })
            };

            let found = match mode {
                WitnessMode::Constructive => match constructive() {
                    Some(w) => Some(w),
                    None => {
                        out.fallbacks += 1;
                        exhaustive(true)
                    }
                },
                WitnessMode::Exhaustive => exhaustive(false),
                WitnessMode::Both => {
                    let c = constructive();
                    let e = exhaustive(false);
                    if c.is_none() {
                        out.fallbacks += 1;
                    }
                    if c.is_some() != e.is_some() {
                        out.disagreements.push(PairIndex { i, k });
                    }
                    c.or(e)
                }
            };

            match found {
                Some(w) => {
                    out.witnessed += 1;
                    if out.witnesses.len() < REPORTED_WITNESSES {
                        out.witnesses.push(PairWitness {
                            i,
                            k,
                            j: w.j,
                            dropped: Vertex::from(fk.vertex(w.dropped)).to_string(),
                            route: w.route,
                        });
                    }
                }
                None => out.violations.push(PairIndex { i, k }),
            }
        }
        out
    }

    /// Accepts `report` as proof that this order is a shelling.
    pub fn certify(&self, report: &ShellingReport) -> Result<VerifiedShelling<'_>> {
        if report.digest != self.digest || report.facet_count != self.facets.len() {
            return Err(Error::precondition("shelling report was produced for a different order"));
        }
        if !report.is_shelling() {
            return Err(Error::precondition(format!(
                "order is not a shelling: {} violating pairs",
                report.violation_count
            )));
        }
        Ok(VerifiedShelling { order: self })
    }
}

/// Left-most private vertex with nonempty `B_ℓ`, preferring any vertex but the last.
fn choose_vertex(private: &[bool], b_sets: &[Vec<usize>]) -> Option<usize> {
    let r = private.len();
    let usable = |l: usize| private[l] && !b_sets[l].is_empty();
    (0..r.saturating_sub(1))
        .find(|&l| usable(l))
        .or_else(|| (r > 0 && usable(r - 1)).then(|| r - 1))
}

#[derive(Default)]
struct PerFacet {
    pairs: u64,
    witnessed: u64,
    fallbacks: u64,
    witnesses: Vec<PairWitness>,
    violations: Vec<PairIndex>,
    disagreements: Vec<PairIndex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairIndex {
    pub i: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub dropped: String,
    pub route: WitnessRoute,
}

/// Outcome of checking every pair of an order. Pairs are visited with `k`
/// ascending, then `i` ascending; `witnesses` keeps the first
/// [`REPORTED_WITNESSES`] in that order.
#[derive(Clone, Debug, Serialize)]
pub struct ShellingReport {
    pub params: ComplexParams,
    pub mode: WitnessMode,
    pub facet_count: usize,
    pub total_pairs: u64,
    pub witnessed_pairs: u64,
    /// Pairs where the constructive route produced nothing.
    pub constructive_fallbacks: u64,
    pub witnesses: Vec<PairWitness>,
    pub violation_count: u64,
    pub violations: Vec<PairIndex>,
    /// Only in [`WitnessMode::Both`]: pairs where the two routes disagree on existence.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disagreements: Option<Vec<PairIndex>>,
    #[serde(skip)]
    digest: u64,
}

impl ShellingReport {
    pub fn is_shelling(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn modes_agree(&self) -> Option<bool> {
        self.disagreements.as_ref().map(|d| d.is_empty())
    }
}

/// Convenience wrapper: verify an explicit order.
pub fn verify_shelling(
    params: &ComplexParams,
    order: Vec<Face>,
    mode: WitnessMode,
    budget: u64,
) -> Result<ShellingReport> {
    Ok(ShellingOrder::from_facets(params, order, budget)?.verify(mode))
}

/// Witness for `F_i`, `F_k` in the given order: constructive first, then a search.
pub fn shelling_witness(order: &ShellingOrder, i: usize, k: usize) -> Result<Option<Witness>> {
    match order.constructive_witness(i, k)? {
        Some(w) => Ok(Some(w)),
        None => order.exhaustive_witness(i, k),
    }
}

/// An order whose shelling property has been checked.
#[derive(Clone, Copy, Debug)]
pub struct VerifiedShelling<'a> {
    order: &'a ShellingOrder,
}

impl<'a> VerifiedShelling<'a> {
    pub fn order(&self) -> &'a ShellingOrder {
        self.order
    }

    /// Positions of facets whose whole boundary lies in earlier facets.
    ///
    /// A 0-dimensional facet has the empty face as its only ridge, which the
    /// first facet already contains, so it counts iff it is not first.
    pub fn homology_positions(&self) -> Vec<usize> {
        let order = self.order;
        (0..order.len())
            .into_par_iter()
            .filter(|&k| {
                let fk = &order.facets[k];
                (0..fk.len()).all(|l| {
                    order
                        .first_holder(&fk.without(l))
                        .is_some_and(|j| j < k)
                })
            })
            .collect()
    }
}

/// Homology facets by explicit attachment.
pub fn homology_facets_direct(shelling: &VerifiedShelling<'_>) -> Vec<Face> {
    shelling
        .homology_positions()
        .into_iter()
        .map(|k| shelling.order.facets[k].clone())
        .collect()
}

/// Homology facets by the criterion `B_ℓ ≠ ∅` for every vertex.
pub fn homology_facet_by_criterion(params: &ComplexParams, facet: &Face) -> Result<bool> {
    if !facet_certificate(params, facet)?.is_facet() {
        return Err(Error::precondition(format!("{facet} is not a facet")));
    }
    Ok(down_sets(facet).iter().all(|b| !b.is_empty()))
}

/// Reduced Betti numbers read off the homology facets of 𝒪.
pub fn betti_from_shelling(params: &ComplexParams, budget: u64) -> Result<BettiVector> {
    let order = ShellingOrder::canonical(params, budget)?;
    let report = order.verify(WitnessMode::Constructive);
    let verified = order.certify(&report)?;
    Ok(betti_from_verified(&verified))
}

pub fn betti_from_verified(shelling: &VerifiedShelling<'_>) -> BettiVector {
    let params = shelling.order.params;
    let mut counts = vec![0u64; params.n() as usize + 1];
    for k in shelling.homology_positions() {
        let dim = shelling.order.facets[k].dim();
        counts[(dim + 1) as usize] += 1;
    }
    BettiVector::new(counts)
}

/// Split of the homology facets of Δ(n): `x` ends below `(n, ..., n)`,
/// `y` ends at `(n, ..., n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyFamilies {
    pub x: Vec<Face>,
    pub y: Vec<Face>,
}

pub fn homology_families(params: &ComplexParams, homology: &[Face]) -> HomologyFamilies {
    let top = vec![params.n(); params.p()];
    let (y, x): (Vec<Face>, Vec<Face>) = homology
        .iter()
        .cloned()
        .partition(|f| f.last() == Some(top.as_slice()));
    HomologyFamilies { x, y }
}

/// `G ∪ {(n+1, ..., n+1)}` for a face `G` of Γ_p(n).
pub fn append_top_vertex(face: &Face, next_n: u32) -> Face {
    let mut word = face.word().to_vec();
    word.extend(std::iter::repeat_n(next_n, face.arity()));
    Face::from_word(face.arity(), word)
}

/// Homology facets of 𝒪, after verifying that 𝒪 is a shelling.
pub fn canonical_homology_facets(params: &ComplexParams, budget: u64) -> Result<Vec<Face>> {
    let order = ShellingOrder::canonical(params, budget)?;
    let report = order.verify(WitnessMode::Constructive);
    Ok(homology_facets_direct(&order.certify(&report)?))
}

/// Whether the homology facets of Δ(n) ending at `(n, ..., n)` are exactly the
/// homology facets of Δ(n−1) not ending at `(n−1, ..., n−1)`, each extended
/// by `(n, ..., n)`.
pub fn family_decomposition_holds(params: &ComplexParams, budget: u64) -> Result<bool> {
    if params.n() < 2 {
        return Err(Error::domain("the decomposition compares Δ(n) with Δ(n−1), so n ≥ 2"));
    }
    let lower = ComplexParams::new(params.p(), params.n() - 1)?;
    let here = homology_families(params, &canonical_homology_facets(params, budget)?);
    let below = homology_families(&lower, &canonical_homology_facets(&lower, budget)?);
    let mut lifted: Vec<Face> = below.x.iter().map(|g| append_top_vertex(g, params.n())).collect();
    let mut y = here.y;
    lifted.sort();
    y.sort();
    Ok(lifted == y)
}
