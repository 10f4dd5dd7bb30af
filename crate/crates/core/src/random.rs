//! Seeded Erdős–Rényi, Barabási–Albert and Watts–Strogatz generators.
//!
//! Every draw uses a `ChaCha8Rng` seeded from a 64-bit value; graphs are
//! conditioned on connectivity by redrawing with derived sub-seeds.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Identifier of the pseudo-random source, stored alongside generated data.
pub const GENERATOR_ID: &str = "chacha8/rand_chacha-0.3/seed_from_u64";
pub const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "UPPERCASE")]
pub enum Model {
    Er { p: f64 },
    Ba { m: usize },
    Ws { k: usize, p: f64 },
}

impl Model {
    pub fn tag(&self) -> &'static str {
        match self {
            Model::Er { .. } => "ER",
            Model::Ba { .. } => "BA",
            Model::Ws { .. } => "WS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: Model,
    pub n: usize,
    pub seed: u64,
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.model {
            Model::Er { p } => write!(f, "ER(n={}, p={p}, seed={})", self.n, self.seed),
            Model::Ba { m } => write!(f, "BA(n={}, m={m}, seed={})", self.n, self.seed),
            Model::Ws { k, p } => write!(f, "WS(n={}, k={k}, p={p}, seed={})", self.n, self.seed),
        }
    }
}

impl ModelSpec {
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Self {
        ModelSpec {
            model: Model::Er { p },
            n,
            seed,
        }
    }

    pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Self {
        ModelSpec {
            model: Model::Ba { m },
            n,
            seed,
        }
    }

    pub fn watts_strogatz(n: usize, k: usize, p: f64, seed: u64) -> Self {
        ModelSpec {
            model: Model::Ws { k, p },
            n,
            seed,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n == 0 {
            return bad("n must be >= 1".into());
        }
        match self.model {
            Model::Er { p } if !(0.0..=1.0).contains(&p) => bad(format!("ER p={p} outside [0,1]")),
            Model::Ba { m } if m < 1 || m >= self.n => {
                bad(format!("BA needs 1 <= m < n, got m={m}, n={}", self.n))
            }
            Model::Ws { k, .. } if k % 2 != 0 || k < 2 || k >= self.n => {
                bad(format!("WS needs even 2 <= k < n, got k={k}, n={}", self.n))
            }
            Model::Ws { p, .. } if !(0.0..=1.0).contains(&p) => bad(format!("WS p={p} outside [0,1]")),
            _ => Ok(()),
        }
    }
}

/// Sub-seed for redraw `attempt` (attempt 0 uses the seed itself).
fn derive_seed(seed: u64, attempt: usize) -> u64 {
    if attempt == 0 {
        return seed;
    }
    // splitmix64 finaliser over seed and attempt.
    let mut z = seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A connected draw from the model. Identical specs give identical graphs.
pub fn generate(spec: &ModelSpec) -> Result<Graph> {
    spec.validate()?;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(spec.seed, attempt));
        let g = match spec.model {
            Model::Er { p } => erdos_renyi(spec.n, p, &mut rng),
            Model::Ba { m } => barabasi_albert(spec.n, m, &mut rng),
            Model::Ws { k, p } => watts_strogatz(spec.n, k, p, &mut rng),
        };
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed {
        spec: spec.to_string(),
        attempts: MAX_ATTEMPTS,
    })
}

/// `count` graphs with seeds `base_seed + i`, labeled `<MODEL>_<i>`.
pub fn generate_batch(spec: &ModelSpec, count: usize, base_seed: u64) -> Result<Vec<Graph>> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be >= 1".into()));
    }
    (0..count)
        .into_par_iter()
        .map(|i| {
            let s = spec.with_seed(base_seed.wrapping_add(i as u64));
            generate(&s).map(|g| g.with_label(format!("{}_{}", spec.model.tag(), i + 1)))
        })
        .collect()
}

/// Each pair `u < v` in lexicographic order is an edge with probability `p`.
fn erdos_renyi(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Starts from the complete graph on `m + 1` vertices; each new vertex
/// attaches to `m` distinct existing vertices drawn proportionally to degree.
fn barabasi_albert(n: usize, m: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..=m.min(n - 1) {
        for v in u + 1..=m.min(n - 1) {
            g.add_edge(u, v);
        }
    }
    // Each vertex appears once per incident edge endpoint.
    let mut endpoints: Vec<usize> = g.edges().flat_map(|(u, v)| [u, v]).collect();
    let mut targets = Vec::with_capacity(m);
    for v in m + 1..n {
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            g.add_edge(v, t);
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    g
}

/// Ring lattice with `k/2` neighbors per side; for each offset `1..=k/2` and
/// each vertex `u`, the edge `(u, u+j)` is rewired with probability `p` to a
/// uniformly chosen non-neighbor of `u`.
fn watts_strogatz(n: usize, k: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for j in 1..=k / 2 {
            g.add_edge(u, (u + j) % n);
        }
    }
    let mut pool = Vec::with_capacity(n);
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.gen_bool(p) {
                continue;
            }
            if !g.has_edge(u, v) {
                // Already rewired away from this slot.
                continue;
            }
            pool.clear();
            pool.extend((0..n).filter(|&w| w != u && !g.has_edge(u, w)));
            if let Some(&w) = pool.choose(rng) {
                g.remove_edge(u, v);
                g.add_edge(u, w);
            }
        }
    }
    g
}
