//! Farey orbits, slope words and parabolic representations for Heckoid
//! groups of 2-bridge links.

pub mod contfrac;
pub mod error;
pub mod farey;
pub mod mat2;
pub mod orbifold;
pub mod orbit;
pub mod poly;
pub mod reps;
pub mod roots;
pub mod scalar;
pub mod slope;
pub mod words;

pub use contfrac::{cf_eval, cf_expand, cf_matrix, seq_transform, ContFrac, SeqTransform};
pub use error::{Error, Result};
pub use farey::{parabolic_unit, parabolic_unit_turning, reflection_at_infinity, riley_family, translation, FareyMatrix, Rotation};
pub use mat2::Mat2;
pub use orbifold::{
    even_orbifold_desc, odd_orbifold_desc, odd_slope, orbifold_desc, quotient_orbifold_desc, DescriptorCase, Edge, EdgeLabel,
    OrbifoldDescriptor, Weight,
};
pub use orbit::{
    admits_epimorphism, is_in_orbit, orbit_bfs, orbit_enumerate_pattern, relate, EpiRoute, Epimorphism, Generator, GeneratorWord, Lambda,
    Membership, OrbitSet, OrbitWitness, PatternParams, SearchBudget, Syllable,
};
pub use poly::Poly;
pub use reps::{
    all_pass, certify_epimorphism, distance_to_central, divisibility_check, divisibility_probe, elliptic_order_check, heckoid_roots,
    heckoid_trace_target, matrix_norm, riley_trace_target, trace_invariance_check, trace_poly, word_matrix_numeric, word_matrix_symbolic,
    Bound, CertificationReport, CertifyOptions, Check, EpimorphismCertificate, HeckoidRoot, TracePoly, Verdict, DEFAULT_TOL,
};
pub use roots::{poly_roots, real_poly_roots, AberthConfig};
pub use scalar::{IntScalar, RealScalar, Ring};
pub use slope::{HeckoidIndex, Slope};
pub use words::{epsilon_seq, heckoid_presentation, link_group_presentation, slope_word, GroupWord, Letter, Presentation};

/// Slopes with arbitrary-precision entries.
pub type BigSlope = Slope<num_bigint::BigInt>;
/// `Λ` over arbitrary-precision integers.
pub type BigLambda = Lambda<num_bigint::BigInt>;
