use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use indexsim_core::enumeration::{load_family, write_family, FamilySpec};
use indexsim_core::experiments::{
    run_chemsim, run_decane, run_n7, run_random, run_t7, with_jobs, ExperimentOutput, RunOptions,
    DEFAULT_SEED,
};
use indexsim_core::graph::graph6::encode_graph6_any;
use indexsim_core::random::GENERATOR_ID;
use indexsim_core::similarity::member_label;
use indexsim_core::{
    compute_vector, ged_pairs, generate_batch, pair_table, rescale_similarities, Error, IndexSet,
    ModelSpec, ScalingMode, SimilarityConfig,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "indexsim", version, about = "Graph similarity from topological indices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct MeasureArgs {
    /// Index set: core (six indices) or extended (ten).
    #[arg(long, default_value = "core")]
    indices: IndexSet,
    /// Order of the p-distance.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Min-max scaling: per-graph or per-family.
    #[arg(long, default_value = "per-graph")]
    scaling: ScalingMode,
}

impl MeasureArgs {
    fn config(&self) -> Result<SimilarityConfig> {
        Ok(SimilarityConfig::new(self.indices, self.p, self.scaling)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Per-graph index table for a graph6 family file.
    Indices {
        file: PathBuf,
        #[arg(long, default_value = "core")]
        indices: IndexSet,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All-pairs d_p / s_p table for a graph6 family file.
    Simmatrix {
        file: PathBuf,
        #[command(flatten)]
        measure: MeasureArgs,
        /// Add the min-max rescaled similarity column.
        #[arg(long)]
        rescale: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact graph edit distance for every pair in a graph6 family file.
    Ged {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a non-isomorphic family as graph6.
    Enumerate {
        #[command(subcommand)]
        family: FamilyCommand,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Draw seeded random networks; writes graph6 and a JSON sidecar.
    Generate {
        #[command(subcommand)]
        model: ModelCommand,
        #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, global = true, default_value_t = 1)]
        count: usize,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run one of the built-in experiments and write its CSV and metadata files.
    Experiment {
        #[arg(value_parser = ["t7", "n7", "random", "decane"])]
        name: String,
        #[arg(long, default_value = "results")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        measure: MeasureArgs,
    },
    /// s_2 against Morgan-style Tanimoto for all alkane skeleton pairs.
    Chemsim {
        #[arg(long, default_value_t = 10)]
        carbons: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Free trees, optionally with a maximum degree.
    Trees {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Connected graphs.
    Connected {
        #[arg(long)]
        n: usize,
    },
    /// Alkane carbon skeletons (trees with maximum degree 4).
    Alkanes {
        #[arg(long)]
        carbons: usize,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Erdős–Rényi G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Barabási–Albert preferential attachment.
    Ba {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Watts–Strogatz small world.
    Ws {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Vec<indexsim_core::Graph>> {
    let family = load_family(path).with_context(|| format!("reading {}", path.display()))?;
    if family.is_empty() {
        return Err(Error::InvalidParameter(format!("{} contains no graphs", path.display())).into());
    }
    Ok(family)
}

fn write_experiment(output: &ExperimentOutput, dir: &Path) -> Result<()> {
    output
        .write_to(dir)
        .with_context(|| format!("writing {}", dir.display()))?;
    for a in &output.files {
        eprintln!("wrote {}", dir.join(&a.name).display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Indices { file, indices, out } => {
            let family = load(&file)?;
            let mut csv = String::from("label");
            for id in indices.ids() {
                csv.push(',');
                csv.push_str(id.name());
            }
            csv.push('\n');
            for (i, g) in family.iter().enumerate() {
                let v = compute_vector(g, indices)
                    .with_context(|| format!("graph {}", member_label(g, i)))?;
                csv.push_str(&member_label(g, i));
                for x in &v.values {
                    csv.push_str(&format!(",{x}"));
                }
                csv.push('\n');
            }
            emit(out.as_deref(), &csv)
        }
        Command::Simmatrix {
            file,
            measure,
            rescale,
            jobs,
            out,
        } => {
            let family = load(&file)?;
            let cfg = measure.config()?;
            let mut table = with_jobs(jobs, || pair_table(&family, &cfg))??;
            if rescale {
                table = rescale_similarities(table)?;
            }
            emit(out.as_deref(), &table.to_csv())
        }
        Command::Ged { file, jobs, out } => {
            let family = load(&file)?;
            let rows = with_jobs(jobs, || ged_pairs(&family))??;
            let mut csv = String::from("label_a,label_b,ged,s_ged\n");
            for (i, j, d) in rows {
                csv.push_str(&format!(
                    "{},{},{d},{}\n",
                    member_label(&family[i], i),
                    member_label(&family[j], j),
                    1.0 / (d as f64 + 1.0)
                ));
            }
            emit(out.as_deref(), &csv)
        }
        Command::Enumerate { family, out } => {
            let spec = match family {
                FamilyCommand::Trees { n, max_degree: None } => FamilySpec::trees(n),
                FamilyCommand::Trees { n, max_degree: Some(cap) } => FamilySpec::capped_trees(n, cap),
                FamilyCommand::Connected { n } => FamilySpec::connected(n),
                FamilyCommand::Alkanes { carbons } => FamilySpec::alkanes(carbons),
            };
            let graphs = spec.generate()?;
            eprintln!("{} graphs", graphs.len());
            emit(out.as_deref(), &write_family(&graphs)?)
        }
        Command::Generate {
            model,
            seed,
            count,
            out,
        } => {
            let spec = match model {
                ModelCommand::Er { n, p } => ModelSpec::erdos_renyi(n, p, seed),
                ModelCommand::Ba { n, m } => ModelSpec::barabasi_albert(n, m, seed),
                ModelCommand::Ws { n, k, p } => ModelSpec::watts_strogatz(n, k, p, seed),
            };
            let graphs = generate_batch(&spec, count, seed)?;
            let mut text = String::new();
            for g in &graphs {
                text.push_str(&encode_graph6_any(g)?);
                text.push('\n');
            }
            emit(out.as_deref(), &text)?;
            let meta = json!({
                "spec": spec,
                "base_seed": seed,
                "count": count,
                "seeds": (0..count as u64).map(|i| seed.wrapping_add(i)).collect::<Vec<_>>(),
                "generator": GENERATOR_ID,
                "labels": graphs.iter().map(|g| g.label()).collect::<Vec<_>>(),
            });
            let sidecar = serde_json::to_string_pretty(&meta)? + "\n";
            match out {
                Some(path) => {
                    let mut name = path.into_os_string();
                    name.push(".meta.json");
                    fs::write(&name, sidecar)
                        .with_context(|| format!("writing {}", PathBuf::from(&name).display()))?;
                }
                None => eprint!("{sidecar}"),
            }
            Ok(())
        }
        Command::Experiment {
            name,
            out_dir,
            seed,
            jobs,
            measure,
        } => {
            let opts = RunOptions {
                config: measure.config()?,
                seed,
                jobs,
            };
            let output = match name.as_str() {
                "t7" => {
                    let r = run_t7(&opts)?;
                    eprintln!("pearson r (k=6 vs k=10) = {:.6}", r.correlation.r);
                    r.output
                }
                "n7" => run_n7(&opts)?.output,
                "random" => run_random(&opts)?.output,
                "decane" => {
                    let r = run_decane(&opts)?;
                    eprintln!(
                        "distinct values: s2 {}, tanimoto {}",
                        r.s2_profile.distinct, r.tanimoto_profile.distinct
                    );
                    r.output
                }
                other => unreachable!("clap rejects {other}"),
            };
            write_experiment(&output, &out_dir)
        }
        Command::Chemsim { carbons, jobs, out } => {
            let opts = RunOptions {
                jobs,
                ..RunOptions::default()
            };
            let r = run_chemsim(carbons, &opts)?;
            let csv = r
                .output
                .files
                .iter()
                .find(|a| a.name.ends_with("_pairs.csv"))
                .map(|a| a.contents.clone())
                .expect("chemsim writes a pair table");
            emit(out.as_deref(), &csv)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let Some(e) = err.chain().find_map(|c| c.downcast_ref::<Error>()) else {
        return 1;
    };
    let e = match e {
        Error::FamilyLine { source, .. } => source.as_ref(),
        other => other,
    };
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::NoConvergence { .. } => 4,
        e if e.is_input_error() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
