//! Chains of integer tuples, their shellings and homology, and the binomial
//! identities their Euler characteristics encode.
//!
//! The complex Γ_p(n) has the p-tuples over `[n]` as vertices; a set of
//! vertices is a face when it can be ordered so every coordinate strictly
//! increases. Δ(n) = Γ_3(n) has reduced Euler characteristic
//! `-Σ_s (-1)^s C(n,s)^3`, which ties its topology to Dixon's identity.

pub mod arith;
pub mod cli;
pub mod complex;
pub mod error;
pub mod facets;
pub mod formats;
pub mod genfun;
pub mod homology;
pub mod report;
pub mod shelling;

pub use complex::{
    enumerate_faces, f_vector_enumerated, f_vector_formula, is_face, make_complex,
    reduced_euler_characteristic, ComplexParams, FVector, Face, Vertex, DEFAULT_FACE_BUDGET,
};
pub use error::{Error, Result};
pub use facets::{
    apply_twist, enumerate_facets, facet_certificate, is_safe_twist, shift_vectors, twist_sets,
    FacetCertificate, ShiftVectors, TwistDirection, TwistSets,
};
pub use homology::{betti_numbers, boundary_matrix, verify_euler_poincare, BettiVector, SparseBoundaryMatrix};
pub use shelling::{
    betti_from_shelling, block_partition, homology_facet_by_criterion, homology_facets_direct,
    order_o_compare, shelling_witness, sigma_word, verify_shelling, BlockPartition, ShellingOrder,
    ShellingReport, SigmaWord, WitnessMode,
};
