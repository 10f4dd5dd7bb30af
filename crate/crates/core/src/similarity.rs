//! Index-vector similarity: min-max scaling, p-distance, and the bounded
//! similarity `s_p = (k^{1/p} − d_p) / k^{1/p}`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::indices::{compute_vector, IndexSet, IndexVector};

/// Where the min/max used for scaling come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingMode {
    /// Min and max over one graph's own k index values.
    #[default]
    PerGraph,
    /// Per-index min and max across the compared family.
    PerFamily,
}

impl FromStr for ScalingMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-graph" => Ok(ScalingMode::PerGraph),
            "per-family" => Ok(ScalingMode::PerFamily),
            _ => Err(Error::InvalidParameter(format!(
                "scaling must be per-graph|per-family, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for ScalingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalingMode::PerGraph => "per-graph",
            ScalingMode::PerFamily => "per-family",
        })
    }
}

/// What to do when max == min during scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegeneratePolicy {
    #[default]
    Strict,
    /// Map the degenerate components to 0 and flag the vector.
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityConfig {
    pub indices: IndexSet,
    pub p: f64,
    pub scaling: ScalingMode,
    pub degenerate: DegeneratePolicy,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        SimilarityConfig {
            indices: IndexSet::Core,
            p: 2.0,
            scaling: ScalingMode::PerGraph,
            degenerate: DegeneratePolicy::Strict,
        }
    }
}

impl SimilarityConfig {
    pub fn new(indices: IndexSet, p: f64, scaling: ScalingMode) -> Result<Self> {
        let cfg = SimilarityConfig {
            indices,
            p,
            scaling,
            degenerate: DegeneratePolicy::Strict,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_policy(mut self, degenerate: DegeneratePolicy) -> Self {
        self.degenerate = degenerate;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_p(self.p)?;
        if self.indices.len() < 3 {
            return Err(Error::InvalidParameter("need k >= 3 indices".into()));
        }
        Ok(())
    }

    /// Upper bound `k^{1/p}` on the p-distance between scaled vectors.
    pub fn distance_bound(&self) -> f64 {
        (self.indices.len() as f64).powf(1.0 / self.p)
    }
}

fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("p must be >= 1, got {p}")));
    }
    Ok(())
}

/// Scaled index values, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledVector {
    pub values: Vec<f64>,
    /// Set when lenient scaling hit max == min.
    pub degenerate: bool,
}

impl ScaledVector {
    pub fn new(values: Vec<f64>) -> Self {
        ScaledVector {
            values,
            degenerate: false,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Per-index extrema across a family of raw vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyStats {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl FamilyStats {
    pub fn from_vectors<'a>(vectors: impl IntoIterator<Item = &'a IndexVector>) -> Result<Self> {
        let mut iter = vectors.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidParameter("empty family".into()))?;
        let mut stats = FamilyStats {
            min: first.values.clone(),
            max: first.values.clone(),
        };
        for v in iter {
            if v.len() != stats.min.len() {
                return Err(Error::LengthMismatch {
                    left: stats.min.len(),
                    right: v.len(),
                });
            }
            for (i, &x) in v.values.iter().enumerate() {
                stats.min[i] = stats.min[i].min(x);
                stats.max[i] = stats.max[i].max(x);
            }
        }
        Ok(stats)
    }
}

/// Min-max scales a raw vector.
///
/// `PerGraph` uses the vector's own extrema; `PerFamily` needs `stats`.
pub fn scale(
    raw: &IndexVector,
    mode: ScalingMode,
    stats: Option<&FamilyStats>,
    policy: DegeneratePolicy,
) -> Result<ScaledVector> {
    if let Some(bad) = raw.values.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite index value {bad}")));
    }
    match mode {
        ScalingMode::PerGraph => {
            let lo = raw.values.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = raw.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if hi == lo {
                return match policy {
                    DegeneratePolicy::Strict => Err(Error::DegenerateScaling { value: lo }),
                    DegeneratePolicy::Lenient => Ok(ScaledVector {
                        values: vec![0.0; raw.len()],
                        degenerate: true,
                    }),
                };
            }
            let span = hi - lo;
            Ok(ScaledVector::new(
                raw.values.iter().map(|&x| (x - lo) / span).collect(),
            ))
        }
        ScalingMode::PerFamily => {
            let stats = stats.ok_or_else(|| {
                Error::InvalidParameter("per-family scaling needs family statistics".into())
            })?;
            if stats.min.len() != raw.len() {
                return Err(Error::LengthMismatch {
                    left: stats.min.len(),
                    right: raw.len(),
                });
            }
            let mut degenerate = false;
            let mut values = Vec::with_capacity(raw.len());
            for (i, &x) in raw.values.iter().enumerate() {
                let (lo, hi) = (stats.min[i], stats.max[i]);
                if hi == lo {
                    if policy == DegeneratePolicy::Strict {
                        return Err(Error::DegenerateScaling { value: lo });
                    }
                    degenerate = true;
                    values.push(0.0);
                } else {
                    values.push(((x - lo) / (hi - lo)).clamp(0.0, 1.0));
                }
            }
            Ok(ScaledVector { values, degenerate })
        }
    }
}

/// `(Σ |a_i − b_i|^p)^{1/p}`.
pub fn distance_p(a: &ScaledVector, b: &ScaledVector, p: f64) -> Result<f64> {
    check_p(p)?;
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(p_norm(&a.values, &b.values, p))
}

fn p_norm(a: &[f64], b: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum();
    }
    if p == 2.0 {
        return a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs().powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

/// `(M − d) / M` for a distance bounded by `M`.
pub fn similarity_from_distance(d: f64, bound: f64) -> Result<f64> {
    if !(bound > 0.0) {
        return Err(Error::InvalidParameter(format!("bound must be > 0, got {bound}")));
    }
    if !(0.0..=bound).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "distance {d} outside [0, {bound}]"
        )));
    }
    Ok((bound - d) / bound)
}

/// `1 / (1 + d)` for an unbounded distance.
pub fn similarity_from_unbounded_distance(d: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(Error::InvalidParameter(format!("distance {d} is negative")));
    }
    Ok(1.0 / (1.0 + d))
}

pub fn distance_from_similarity(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidParameter(format!("similarity {s} outside [0, 1]")));
    }
    Ok(1.0 - s)
}

/// d_p and s_p for two already-scaled vectors.
pub fn compare_scaled(a: &ScaledVector, b: &ScaledVector, cfg: &SimilarityConfig) -> Result<(f64, f64)> {
    let d = distance_p(a, b, cfg.p)?;
    let s = similarity_from_distance(d, cfg.distance_bound())?;
    Ok((d, s))
}

/// Scales a batch of raw vectors under `cfg`, using the batch itself as the
/// family for per-family scaling.
pub fn scale_family(raw: &[IndexVector], cfg: &SimilarityConfig) -> Result<Vec<ScaledVector>> {
    let stats = match cfg.scaling {
        ScalingMode::PerGraph => None,
        ScalingMode::PerFamily => Some(FamilyStats::from_vectors(raw)?),
    };
    raw.iter()
        .map(|v| scale(v, cfg.scaling, stats.as_ref(), cfg.degenerate))
        .collect()
}

pub fn distance_between(g1: &Graph, g2: &Graph, cfg: &SimilarityConfig) -> Result<f64> {
    Ok(compare_graphs(g1, g2, cfg)?.0)
}

/// s_p between two graphs. Per-family scaling treats `{g1, g2}` as the family.
pub fn similarity_p(g1: &Graph, g2: &Graph, cfg: &SimilarityConfig) -> Result<f64> {
    Ok(compare_graphs(g1, g2, cfg)?.1)
}

fn compare_graphs(g1: &Graph, g2: &Graph, cfg: &SimilarityConfig) -> Result<(f64, f64)> {
    cfg.validate()?;
    let raw = [compute_vector(g1, cfg.indices)?, compute_vector(g2, cfg.indices)?];
    let scaled = scale_family(&raw, cfg)?;
    compare_scaled(&scaled[0], &scaled[1], cfg)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairRow {
    pub label_a: String,
    pub label_b: String,
    /// Positions of the two graphs in the family, `index_a < index_b`.
    pub index_a: usize,
    pub index_b: usize,
    pub distance: f64,
    pub similarity: f64,
    pub rescaled: Option<f64>,
}

/// All-pairs results over a family, sorted ascending by similarity.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTable {
    pub family: String,
    pub config: SimilarityConfig,
    pub rows: Vec<PairRow>,
}

impl PairTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn similarities(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.similarity).collect()
    }

    /// Rows keyed by family positions, in `(index_a, index_b)` order.
    pub fn by_position(&self) -> Vec<&PairRow> {
        let mut rows: Vec<&PairRow> = self.rows.iter().collect();
        rows.sort_by_key(|r| (r.index_a, r.index_b));
        rows
    }

    pub fn to_csv(&self) -> String {
        let rescaled = self.rows.iter().any(|r| r.rescaled.is_some());
        let mut out = String::from("label_a,label_b,d_p,s_p");
        if rescaled {
            out.push_str(",s_prime");
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}",
                r.label_a, r.label_b, r.distance, r.similarity
            ));
            if rescaled {
                out.push(',');
                if let Some(x) = r.rescaled {
                    out.push_str(&x.to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Label for family member `i`: its own label, or `g<i>`.
pub fn member_label(g: &Graph, i: usize) -> String {
    g.label().map_or_else(|| format!("g{i}"), str::to_owned)
}

pub fn pair_table(family: &[Graph], cfg: &SimilarityConfig) -> Result<PairTable> {
    cfg.validate()?;
    let labels: Vec<String> = family
        .iter()
        .enumerate()
        .map(|(i, g)| member_label(g, i))
        .collect();
    check_unique(&labels)?;
    let raw = family
        .par_iter()
        .map(|g| compute_vector(g, cfg.indices))
        .collect::<Result<Vec<_>>>()?;
    pair_table_from_vectors(&labels, &raw, cfg)
}

/// Builds the pair table from precomputed raw index vectors.
pub fn pair_table_from_vectors(
    labels: &[String],
    raw: &[IndexVector],
    cfg: &SimilarityConfig,
) -> Result<PairTable> {
    cfg.validate()?;
    if labels.len() != raw.len() {
        return Err(Error::LengthMismatch {
            left: labels.len(),
            right: raw.len(),
        });
    }
    check_unique(labels)?;
    let scaled = if raw.is_empty() {
        Vec::new()
    } else {
        scale_family(raw, cfg)?
    };
    let m = raw.len();
    let mut rows = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let scaled = &scaled;
            (i + 1..m).map(move |j| {
                compare_scaled(&scaled[i], &scaled[j], cfg).map(|(d, s)| PairRow {
                    label_a: labels[i].clone(),
                    label_b: labels[j].clone(),
                    index_a: i,
                    index_b: j,
                    distance: d,
                    similarity: s,
                    rescaled: None,
                })
            })
        })
        .collect::<Result<Vec<_>>>()?;
    sort_rows(&mut rows);
    Ok(PairTable {
        family: "family".into(),
        config: *cfg,
        rows,
    })
}

fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn sort_rows(rows: &mut [PairRow]) {
    rows.par_sort_by(|a, b| {
        a.similarity
            .total_cmp(&b.similarity)
            .then_with(|| a.label_a.cmp(&b.label_a))
            .then_with(|| a.label_b.cmp(&b.label_b))
    });
}

/// Adds the min-max rescaled similarity column.
pub fn rescale_similarities(mut table: PairTable) -> Result<PairTable> {
    let lo = table
        .rows
        .iter()
        .map(|r| r.similarity)
        .fold(f64::INFINITY, f64::min);
    let hi = table
        .rows
        .iter()
        .map(|r| r.similarity)
        .fold(f64::NEG_INFINITY, f64::max);
    if table.rows.is_empty() || hi == lo {
        return Err(Error::DegenerateRescale {
            value: if lo.is_finite() { lo } else { f64::NAN },
        });
    }
    for r in &mut table.rows {
        r.rescaled = Some((r.similarity - lo) / (hi - lo));
    }
    Ok(table)
}
