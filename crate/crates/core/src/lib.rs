//! Graph similarity and distance from vectors of topological indices.
//!
//! A graph is mapped to k index values (Harary, Sombor, degree distance,
//! Gutman, energy, Estrada, and optionally first Zagreb, Randić, resolvent
//! energy, Wiener). The values are min-max scaled into `[0, 1]`, compared
//! with a p-distance, and turned into a similarity bounded in `[0, 1]`.
//!
//! Alongside the measure the crate carries the baselines and families used to
//! evaluate it: exact graph edit distance for small graphs, Morgan-style
//! fingerprints with Tanimoto similarity, exhaustive tree and connected-graph
//! enumeration, and seeded random network models.
//!
//! ```
//! use indexsim_core::{similarity_p, Graph, SimilarityConfig};
//!
//! let cfg = SimilarityConfig::default(); // six indices, p = 2, per-graph scaling
//! let s = similarity_p(&Graph::path(3), &Graph::complete(3), &cfg).unwrap();
//! assert!((s - 0.727776).abs() < 1e-5);
//! ```

pub mod analysis;
pub mod enumeration;
pub mod error;
pub mod experiments;
pub mod fingerprint;
pub mod ged;
pub mod graph;
pub mod indices;
pub mod random;
pub mod similarity;
pub mod spectral;

pub use analysis::{extrema_pairs, pearson, CorrelationReport, ExtremaReport};
pub use enumeration::{
    canonical_certificate, enumerate_connected_graphs, enumerate_trees, load_family,
    CanonicalCertificate, FamilySpec,
};
pub use error::{Error, Result};
pub use fingerprint::{degeneracy_profile, morgan_fingerprint, tanimoto, Fingerprint};
pub use ged::{ged, ged_pairs, s_ged, EditDistanceResult};
pub use graph::graph6::{encode_graph6, parse_graph6};
pub use graph::{DegreeSequence, DistanceMatrix, Graph};
pub use indices::{compute_vector, IndexId, IndexSet, IndexVector};
pub use random::{generate, generate_batch, Model, ModelSpec};
pub use similarity::{
    distance_from_similarity, distance_p, pair_table, rescale_similarities, scale,
    similarity_from_distance, similarity_from_unbounded_distance, similarity_p,
    DegeneratePolicy, PairTable, ScaledVector, ScalingMode, SimilarityConfig,
};
pub use spectral::{eigenvalues, estrada_index, graph_energy, resolvent_energy, SpectralDecomposition};
