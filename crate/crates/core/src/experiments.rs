//! Experiment runners. Each returns a typed report plus the CSV and metadata
//! files it would write; output bytes depend only on the options, never on
//! the worker count.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{extrema_pairs, pearson, CorrelationReport, ExtremaReport};
use crate::enumeration::{
    canonical_certificate, enumerate_connected_graphs, enumerate_trees, write_family,
};
use crate::error::{Error, Result};
use crate::fingerprint::{degeneracy_profile, morgan_fingerprint, tanimoto, DEFAULT_BITS, DEFAULT_RADIUS};
use crate::ged::ged_pairs;
use crate::graph::graph6::{encode_graph6, encode_graph6_any};
use crate::graph::Graph;
use crate::indices::{compute_vector, IndexSet, IndexVector};
use crate::random::{generate_batch, ModelSpec, GENERATOR_ID};
use crate::similarity::{
    member_label, pair_table_from_vectors, rescale_similarities, PairTable, ScalingMode,
    SimilarityConfig,
};

pub const DEFAULT_SEED: u64 = 20250101;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub config: SimilarityConfig,
    pub seed: u64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            config: SimilarityConfig::default(),
            seed: DEFAULT_SEED,
            jobs: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub experiment: &'static str,
    pub files: Vec<Artifact>,
}

impl ExperimentOutput {
    fn new(experiment: &'static str) -> Self {
        ExperimentOutput {
            experiment,
            files: Vec::new(),
        }
    }

    fn add(&mut self, name: impl Into<String>, contents: String) {
        self.files.push(Artifact {
            name: name.into(),
            contents,
        });
    }

    fn add_meta(&mut self, meta: &Value) {
        let text = serde_json::to_string_pretty(meta).expect("metadata serializes") + "\n";
        self.add(format!("{}.meta.json", self.experiment), text);
    }

    pub fn file(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|a| a.name == name)
            .map(|a| a.contents.as_str())
    }

    pub fn write_to(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        for a in &self.files {
            fs::write(dir.join(&a.name), &a.contents)?;
        }
        Ok(())
    }
}

/// Runs `f` on a pool with `jobs` workers.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn config_json(cfg: &SimilarityConfig) -> Value {
    json!({
        "indices": cfg.indices.to_string(),
        "p": cfg.p,
        "scaling": cfg.scaling.to_string(),
        "degenerate": format!("{:?}", cfg.degenerate).to_lowercase(),
    })
}

fn base_meta(experiment: &str, opts: &RunOptions) -> Value {
    json!({
        "experiment": experiment,
        "tool_version": TOOL_VERSION,
        "config": config_json(&opts.config),
    })
}

fn labels_of(family: &[Graph]) -> Vec<String> {
    family.iter().enumerate().map(|(i, g)| member_label(g, i)).collect()
}

fn vectors(family: &[Graph], set: IndexSet) -> Result<Vec<IndexVector>> {
    family.par_iter().map(|g| compute_vector(g, set)).collect()
}

fn other_mode(mode: ScalingMode) -> ScalingMode {
    match mode {
        ScalingMode::PerGraph => ScalingMode::PerFamily,
        ScalingMode::PerFamily => ScalingMode::PerGraph,
    }
}

/// Similarities of two tables over the same family, aligned by pair.
pub fn aligned_similarities(a: &PairTable, b: &PairTable) -> Result<(Vec<f64>, Vec<f64>)> {
    let ra = a.by_position();
    let rb = b.by_position();
    if ra.len() != rb.len() {
        return Err(Error::LengthMismatch {
            left: ra.len(),
            right: rb.len(),
        });
    }
    let mut xs = Vec::with_capacity(ra.len());
    let mut ys = Vec::with_capacity(ra.len());
    for (x, y) in ra.iter().zip(&rb) {
        if (x.index_a, x.index_b) != (y.index_a, y.index_b) {
            return Err(Error::InvalidParameter("pair tables cover different pairs".into()));
        }
        xs.push(x.similarity);
        ys.push(y.similarity);
    }
    Ok((xs, ys))
}

fn correlate_sets(
    labels: &[String],
    core: &[IndexVector],
    extended: &[IndexVector],
    cfg: &SimilarityConfig,
) -> Result<(PairTable, PairTable, CorrelationReport)> {
    let core_cfg = SimilarityConfig {
        indices: IndexSet::Core,
        ..*cfg
    };
    let ext_cfg = SimilarityConfig {
        indices: IndexSet::Extended,
        ..*cfg
    };
    let a = pair_table_from_vectors(labels, core, &core_cfg)?;
    let b = pair_table_from_vectors(labels, extended, &ext_cfg)?;
    let (xs, ys) = aligned_similarities(&a, &b)?;
    let r = pearson(&xs, &ys)?.with_configs(
        format!("core p={} {}", cfg.p, cfg.scaling),
        format!("extended p={} {}", cfg.p, cfg.scaling),
    );
    Ok((a, b, r))
}

fn extrema_json(report: &ExtremaReport, family: &[Graph], labels: &[String]) -> Result<Value> {
    let describe = |label: &str| -> Result<Value> {
        let i = labels.iter().position(|l| l == label).expect("label in family");
        Ok(json!({
            "label": label,
            "graph6": encode_graph6(&family[i])?,
            "certificate": canonical_certificate(&family[i])?.to_hex(),
        }))
    };
    let side = |e: &crate::analysis::Extremum| -> Result<Value> {
        let pairs = e
            .pairs
            .iter()
            .map(|(a, b)| Ok(json!([describe(a)?, describe(b)?])))
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({ "value": e.value, "unique": e.unique, "pairs": pairs }))
    };
    Ok(json!({ "min": side(&report.min)?, "max": side(&report.max)? }))
}

#[derive(Debug, Clone)]
pub struct T7Report {
    pub family: Vec<Graph>,
    pub core: PairTable,
    pub extended: PairTable,
    pub s1: PairTable,
    /// `(index_a, index_b, ged)` in position order.
    pub ged: Vec<(usize, usize, usize)>,
    pub correlation: CorrelationReport,
    pub correlation_other_mode: std::result::Result<CorrelationReport, String>,
    pub extrema: ExtremaReport,
    pub output: ExperimentOutput,
}

/// Trees on 7 vertices: s_2 with six vs ten indices, s_1, and exact GED.
pub fn run_t7(opts: &RunOptions) -> Result<T7Report> {
    with_jobs(opts.jobs, || run_t7_inner(opts))?
}

fn run_t7_inner(opts: &RunOptions) -> Result<T7Report> {
    let family = enumerate_trees(7, None)?;
    let labels = labels_of(&family);
    let core_raw = vectors(&family, IndexSet::Core)?;
    let ext_raw = vectors(&family, IndexSet::Extended)?;

    let (core, extended, correlation) = correlate_sets(&labels, &core_raw, &ext_raw, &opts.config)?;
    let other_cfg = SimilarityConfig {
        scaling: other_mode(opts.config.scaling),
        ..opts.config
    };
    let correlation_other_mode = correlate_sets(&labels, &core_raw, &ext_raw, &other_cfg)
        .map(|(_, _, r)| r)
        .map_err(|e| e.to_string());

    let s1_cfg = SimilarityConfig {
        indices: IndexSet::Core,
        p: 1.0,
        ..opts.config
    };
    let s1 = pair_table_from_vectors(&labels, &core_raw, &s1_cfg)?;

    let m = family.len();
    let ged_values = ged_pairs(&family)?;
    let extrema = extrema_pairs(&core)?;

    let mut out = ExperimentOutput::new("t7");
    out.add("t7_family.g6", write_family(&family)?);
    out.add("t7_core.csv", core.to_csv());
    out.add("t7_extended.csv", extended.to_csv());
    out.add("t7_s1.csv", s1.to_csv());

    let core_pos = core.by_position();
    let ext_pos = extended.by_position();
    let s1_pos = s1.by_position();
    let mut ged_csv = String::from("label_a,label_b,ged,s_ged,s_1,s_2,s_2_extended\n");
    for (k, &(i, j, d)) in ged_values.iter().enumerate() {
        ged_csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            labels[i],
            labels[j],
            d,
            1.0 / (d as f64 + 1.0),
            s1_pos[k].similarity,
            core_pos[k].similarity,
            ext_pos[k].similarity
        ));
    }
    out.add("t7_ged.csv", ged_csv);

    let mut meta = base_meta("t7", opts);
    meta["family_size"] = json!(m);
    meta["pairs"] = json!(core.len());
    meta["correlation_k6_k10"] = json!({
        opts.config.scaling.to_string(): correlation.r,
        other_cfg.scaling.to_string(): match &correlation_other_mode {
            Ok(r) => json!(r.r),
            Err(e) => json!({ "error": e }),
        },
    });
    let sged: Vec<f64> = ged_values.iter().map(|&(_, _, d)| 1.0 / (d as f64 + 1.0)).collect();
    let s2: Vec<f64> = core_pos.iter().map(|r| r.similarity).collect();
    let s1v: Vec<f64> = s1_pos.iter().map(|r| r.similarity).collect();
    meta["correlation_s1_s2"] = json!(pearson(&s1v, &s2)?.r);
    meta["correlation_s2_sged"] = json!(pearson(&s2, &sged)?.r);
    meta["extrema_s2"] = extrema_json(&extrema, &family, &labels)?;
    out.add_meta(&meta);

    Ok(T7Report {
        family,
        core,
        extended,
        s1,
        ged: ged_values,
        correlation,
        correlation_other_mode,
        extrema,
        output: out,
    })
}

#[derive(Debug, Clone)]
pub struct N7Report {
    pub family: Vec<Graph>,
    pub vectors: Vec<IndexVector>,
    pub s1: PairTable,
    pub s2: PairTable,
    pub extrema: ExtremaReport,
    pub output: ExperimentOutput,
}

/// All 853 connected graphs on 7 vertices: sorted s_1 and s_2 tables.
pub fn run_n7(opts: &RunOptions) -> Result<N7Report> {
    with_jobs(opts.jobs, || run_n7_inner(opts))?
}

fn run_n7_inner(opts: &RunOptions) -> Result<N7Report> {
    let family = enumerate_connected_graphs(7)?;
    let labels = labels_of(&family);
    let raw = vectors(&family, opts.config.indices)?;
    let s2_cfg = SimilarityConfig {
        p: 2.0,
        ..opts.config
    };
    let s1_cfg = SimilarityConfig {
        p: 1.0,
        ..opts.config
    };
    let s2 = pair_table_from_vectors(&labels, &raw, &s2_cfg)?;
    let s1 = pair_table_from_vectors(&labels, &raw, &s1_cfg)?;
    let extrema = extrema_pairs(&s2)?;

    let mut out = ExperimentOutput::new("n7");
    out.add("n7_family.g6", write_family(&family)?);
    out.add("n7_s1.csv", s1.to_csv());
    out.add("n7_s2.csv", s2.to_csv());
    let mut meta = base_meta("n7", opts);
    meta["family_size"] = json!(family.len());
    meta["pairs"] = json!(s2.len());
    meta["extrema_s2"] = extrema_json(&extrema, &family, &labels)?;
    meta["extrema_s1"] = extrema_json(&extrema_pairs(&s1)?, &family, &labels)?;
    out.add_meta(&meta);

    Ok(N7Report {
        family,
        vectors: raw,
        s1,
        s2,
        extrema,
        output: out,
    })
}

/// Mean similarities grouped by model pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockMeans {
    pub models: Vec<String>,
    /// `means[i][j]`: mean s over pairs with one graph from model i and one
    /// from model j (within-model when i == j).
    pub means: Vec<Vec<f64>>,
    pub mins: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct RandomReport {
    pub networks: Vec<Graph>,
    pub table: PairTable,
    pub s2_blocks: BlockMeans,
    pub scaled_blocks: BlockMeans,
    pub output: ExperimentOutput,
}

/// The three models with their network-science parameters.
pub fn random_model_specs() -> [ModelSpec; 3] {
    [
        ModelSpec::erdos_renyi(100, 0.1, 0),
        ModelSpec::barabasi_albert(100, 3, 0),
        ModelSpec::watts_strogatz(100, 6, 0.7, 0),
    ]
}

/// Three networks per model, all 36 pairs, min-max rescaled similarities.
pub fn run_random(opts: &RunOptions) -> Result<RandomReport> {
    with_jobs(opts.jobs, || run_random_inner(opts))?
}

fn block_means(table: &PairTable, per_model: usize, models: usize, value: impl Fn(&crate::similarity::PairRow) -> f64) -> BlockMeans {
    let mut sums = vec![vec![0.0; models]; models];
    let mut counts = vec![vec![0usize; models]; models];
    let mut mins = vec![vec![f64::INFINITY; models]; models];
    for r in table.by_position() {
        let (a, b) = (r.index_a / per_model, r.index_b / per_model);
        let (i, j) = (a.min(b), a.max(b));
        let v = value(r);
        sums[i][j] += v;
        counts[i][j] += 1;
        mins[i][j] = mins[i][j].min(v);
    }
    for i in 0..models {
        for j in 0..i {
            sums[i][j] = sums[j][i];
            counts[i][j] = counts[j][i];
            mins[i][j] = mins[j][i];
        }
    }
    let means = sums
        .iter()
        .zip(&counts)
        .map(|(s, c)| s.iter().zip(c).map(|(s, &c)| s / c as f64).collect())
        .collect();
    BlockMeans {
        models: Vec::new(),
        means,
        mins,
    }
}

fn run_random_inner(opts: &RunOptions) -> Result<RandomReport> {
    let specs = random_model_specs();
    let per_model = 3;
    let mut networks = Vec::new();
    for spec in &specs {
        networks.extend(generate_batch(spec, per_model, opts.seed)?);
    }
    let labels = labels_of(&networks);
    let raw = vectors(&networks, opts.config.indices)?;
    let table = rescale_similarities(pair_table_from_vectors(&labels, &raw, &opts.config)?)?;

    let tags: Vec<String> = specs.iter().map(|s| s.model.tag().to_owned()).collect();
    let mut s2_blocks = block_means(&table, per_model, specs.len(), |r| r.similarity);
    let mut scaled_blocks = block_means(&table, per_model, specs.len(), |r| {
        r.rescaled.expect("rescaled column")
    });
    s2_blocks.models = tags.clone();
    scaled_blocks.models = tags;

    // Lower-triangular matrix in the layout of a correlation table.
    let m = networks.len();
    let mut cell = vec![vec![None; m]; m];
    for r in &table.rows {
        cell[r.index_b][r.index_a] = r.rescaled;
    }
    let mut matrix = String::new();
    for l in &labels[..m - 1] {
        matrix.push(',');
        matrix.push_str(l);
    }
    matrix.push('\n');
    for i in 1..m {
        matrix.push_str(&labels[i]);
        for j in 0..m - 1 {
            matrix.push(',');
            if j < i {
                matrix.push_str(&format!("{:.2}", cell[i][j].expect("filled")));
            }
        }
        matrix.push('\n');
    }

    let mut family_text = String::new();
    for g in &networks {
        family_text.push_str(&encode_graph6_any(g)?);
        family_text.push('\n');
    }

    let mut out = ExperimentOutput::new("random");
    out.add("random_networks.g6", family_text);
    out.add("random_pairs.csv", table.to_csv());
    out.add("random_matrix.csv", matrix);
    let mut meta = base_meta("random", opts);
    meta["seed"] = json!(opts.seed);
    meta["generator"] = json!(GENERATOR_ID);
    meta["models"] = json!(specs
        .iter()
        .map(|s| serde_json::to_value(s.model).expect("model serializes"))
        .collect::<Vec<_>>());
    meta["nodes"] = json!(100);
    meta["per_model"] = json!(per_model);
    meta["s2_block_means"] = serde_json::to_value(&s2_blocks).expect("serializes");
    meta["scaled_block_means"] = serde_json::to_value(&scaled_blocks).expect("serializes");
    out.add_meta(&meta);

    Ok(RandomReport {
        networks,
        table,
        s2_blocks,
        scaled_blocks,
        output: out,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Degeneracy {
    pub distinct: usize,
    pub max_multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct ChemReport {
    pub skeletons: Vec<Graph>,
    /// `(index_a, index_b, s2, tanimoto)` in position order.
    pub pairs: Vec<(usize, usize, f64, f64)>,
    pub correlation: CorrelationReport,
    pub s2_profile: Degeneracy,
    pub tanimoto_profile: Degeneracy,
    pub output: ExperimentOutput,
}

/// Alkane skeletons with `carbons` atoms: s_2 vs Morgan-style Tanimoto.
pub fn run_chemsim(carbons: usize, opts: &RunOptions) -> Result<ChemReport> {
    with_jobs(opts.jobs, || run_chem_inner(carbons, opts, "chemsim"))?
}

/// The decane run: 75 skeletons, 2775 pairs.
pub fn run_decane(opts: &RunOptions) -> Result<ChemReport> {
    with_jobs(opts.jobs, || run_chem_inner(10, opts, "decane"))?
}

fn run_chem_inner(carbons: usize, opts: &RunOptions, name: &'static str) -> Result<ChemReport> {
    let mut skeletons = enumerate_trees(carbons, Some(4))?;
    let width = skeletons.len().saturating_sub(1).to_string().len();
    for (i, g) in skeletons.iter_mut().enumerate() {
        g.set_label(Some(format!("C{carbons}_{i:0width$}")));
    }
    let labels = labels_of(&skeletons);
    let raw = vectors(&skeletons, opts.config.indices)?;
    let table = pair_table_from_vectors(&labels, &raw, &opts.config)?;
    let fps = skeletons
        .par_iter()
        .map(|g| morgan_fingerprint(g, DEFAULT_RADIUS, DEFAULT_BITS))
        .collect::<Result<Vec<_>>>()?;

    let mut pairs = Vec::with_capacity(table.len());
    for r in table.by_position() {
        let t = tanimoto(&fps[r.index_a], &fps[r.index_b])?;
        pairs.push((r.index_a, r.index_b, r.similarity, t));
    }
    let s2: Vec<f64> = pairs.iter().map(|p| p.2).collect();
    let tv: Vec<f64> = pairs.iter().map(|p| p.3).collect();
    let correlation = pearson(&s2, &tv)?.with_configs(
        format!("s_{} {} {}", opts.config.p, opts.config.indices, opts.config.scaling),
        format!("tanimoto morgan r={DEFAULT_RADIUS} bits={DEFAULT_BITS}"),
    );
    let profile = |v: &[f64]| -> Result<Degeneracy> {
        let (distinct, max_multiplicity) = degeneracy_profile(v)?;
        Ok(Degeneracy {
            distinct,
            max_multiplicity,
        })
    };
    let s2_profile = profile(&s2)?;
    let tanimoto_profile = profile(&tv)?;

    let mut csv = String::from("label_a,label_b,s2,tanimoto_morgan\n");
    for &(i, j, s, t) in &pairs {
        csv.push_str(&format!("{},{},{},{}\n", labels[i], labels[j], s, t));
    }
    let mut out = ExperimentOutput::new(name);
    out.add(format!("{name}_skeletons.g6"), write_family(&skeletons)?);
    out.add(format!("{name}_pairs.csv"), csv);
    let mut meta = base_meta(name, opts);
    meta["carbons"] = json!(carbons);
    meta["skeletons"] = json!(skeletons.len());
    meta["pairs"] = json!(pairs.len());
    meta["fingerprint"] = json!({ "radius": DEFAULT_RADIUS, "bits": DEFAULT_BITS });
    meta["pearson_s2_tanimoto"] = json!(correlation.r);
    meta["degeneracy"] = json!({
        "s2": s2_profile,
        "tanimoto_morgan": tanimoto_profile,
    });
    out.add_meta(&meta);

    Ok(ChemReport {
        skeletons,
        pairs,
        correlation,
        s2_profile,
        tanimoto_profile,
        output: out,
    })
}
