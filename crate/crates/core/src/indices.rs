//! The ten topological indices and their fixed vector ordering.
//!
//! Formulas (all sums over unordered pairs `u != v` unless stated):
//!
//! | index            | definition                              |
//! |------------------|-----------------------------------------|
//! | Harary           | Σ 1/d(u,v)                              |
//! | Sombor           | Σ_{uv∈E} sqrt(deg(u)² + deg(v)²)        |
//! | degree distance  | Σ (deg(u) + deg(v))·d(u,v)              |
//! | Gutman           | Σ deg(u)·deg(v)·d(u,v)                  |
//! | energy           | Σ_i \|λ_i\|                             |
//! | Estrada          | Σ_i exp(λ_i)                            |
//! | first Zagreb     | Σ_u deg(u)²                             |
//! | Randić           | Σ_{uv∈E} 1/sqrt(deg(u)·deg(v))          |
//! | resolvent energy | Σ_i 1/(n − λ_i)                         |
//! | Wiener           | Σ d(u,v)                                |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, DistanceMatrix, Graph};
use crate::spectral::{self, SpectralDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndexId {
    Harary,
    Sombor,
    DegreeDistance,
    Gutman,
    Energy,
    Estrada,
    FirstZagreb,
    Randic,
    ResolventEnergy,
    Wiener,
}

impl IndexId {
    pub const ALL: [IndexId; 10] = [
        IndexId::Harary,
        IndexId::Sombor,
        IndexId::DegreeDistance,
        IndexId::Gutman,
        IndexId::Energy,
        IndexId::Estrada,
        IndexId::FirstZagreb,
        IndexId::Randic,
        IndexId::ResolventEnergy,
        IndexId::Wiener,
    ];

    /// Column name used in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            IndexId::Harary => "harary",
            IndexId::Sombor => "sombor",
            IndexId::DegreeDistance => "degree_distance",
            IndexId::Gutman => "gutman",
            IndexId::Energy => "energy",
            IndexId::Estrada => "estrada",
            IndexId::FirstZagreb => "first_zagreb",
            IndexId::Randic => "randic",
            IndexId::ResolventEnergy => "resolvent_energy",
            IndexId::Wiener => "wiener",
        }
    }
}

impl fmt::Display for IndexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which indices make up the vector: the first six (`Core`) or all ten.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexSet {
    #[default]
    Core,
    Extended,
}

impl IndexSet {
    pub fn ids(self) -> &'static [IndexId] {
        match self {
            IndexSet::Core => &IndexId::ALL[..6],
            IndexSet::Extended => &IndexId::ALL[..],
        }
    }

    pub fn len(self) -> usize {
        self.ids().len()
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

impl FromStr for IndexSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(IndexSet::Core),
            "extended" => Ok(IndexSet::Extended),
            _ => Err(Error::InvalidParameter(format!(
                "index set must be core|extended, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexSet::Core => "core",
            IndexSet::Extended => "extended",
        })
    }
}

/// Raw index values for one graph, in `IndexId` order.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexVector {
    pub label: Option<String>,
    pub ids: Vec<IndexId>,
    pub values: Vec<f64>,
}

impl IndexVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, id: IndexId) -> Option<f64> {
        self.ids.iter().position(|&i| i == id).map(|p| self.values[p])
    }
}

/// Shared per-graph inputs: distances, degrees and spectrum, each computed once.
#[derive(Debug, Clone)]
pub struct GraphArtifacts {
    pub distances: DistanceMatrix,
    pub degrees: DegreeSequence,
    pub spectrum: SpectralDecomposition,
}

impl GraphArtifacts {
    pub fn compute(g: &Graph) -> Result<Self> {
        let distances = g.all_pairs_distances()?;
        Ok(GraphArtifacts {
            distances,
            degrees: g.degrees(),
            spectrum: spectral::eigenvalues(g)?,
        })
    }

    pub fn index(&self, g: &Graph, id: IndexId) -> Result<f64> {
        let d = &self.distances;
        let deg = self.degrees.as_slice();
        let value = match id {
            IndexId::Harary => d.pairs().map(|(_, _, x)| 1.0 / x as f64).sum(),
            IndexId::Sombor => g
                .edges()
                .map(|(u, v)| ((deg[u] * deg[u] + deg[v] * deg[v]) as f64).sqrt())
                .sum(),
            IndexId::DegreeDistance => d
                .pairs()
                .map(|(u, v, x)| ((deg[u] + deg[v]) * x as usize) as f64)
                .sum(),
            IndexId::Gutman => d
                .pairs()
                .map(|(u, v, x)| (deg[u] * deg[v] * x as usize) as f64)
                .sum(),
            IndexId::Energy => self.spectrum.energy(),
            IndexId::Estrada => self.spectrum.estrada(),
            IndexId::FirstZagreb => deg.iter().map(|&k| (k * k) as f64).sum(),
            IndexId::Randic => g
                .edges()
                .map(|(u, v)| 1.0 / ((deg[u] * deg[v]) as f64).sqrt())
                .sum(),
            IndexId::ResolventEnergy => self.spectrum.resolvent_energy()?,
            IndexId::Wiener => d.pairs().map(|(_, _, x)| x as f64).sum(),
        };
        Ok(value)
    }
}

/// Computes a single index from scratch.
pub fn index_value(g: &Graph, id: IndexId) -> Result<f64> {
    GraphArtifacts::compute(g)?.index(g, id)
}

pub fn harary(g: &Graph) -> Result<f64> {
    index_value(g, IndexId::Harary)
}

pub fn sombor(g: &Graph) -> Result<f64> {
    index_value(g, IndexId::Sombor)
}

pub fn degree_distance(g: &Graph) -> Result<f64> {
    index_value(g, IndexId::DegreeDistance)
}

pub fn gutman(g: &Graph) -> Result<f64> {
    index_value(g, IndexId::Gutman)
}

pub fn first_zagreb(g: &Graph) -> Result<f64> {
    index_value(g, IndexId::FirstZagreb)
}

pub fn randic(g: &Graph) -> Result<f64> {
    index_value(g, IndexId::Randic)
}

pub fn wiener(g: &Graph) -> Result<f64> {
    index_value(g, IndexId::Wiener)
}

pub fn compute_vector(g: &Graph, set: IndexSet) -> Result<IndexVector> {
    let artifacts = GraphArtifacts::compute(g)?;
    let ids = set.ids().to_vec();
    let values = ids
        .iter()
        .map(|&id| artifacts.index(g, id))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite index value {bad}")));
    }
    Ok(IndexVector {
        label: g.label().map(str::to_owned),
        ids,
        values,
    })
}
