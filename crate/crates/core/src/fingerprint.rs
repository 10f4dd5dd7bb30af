//! Morgan-style circular fingerprints on unlabeled skeleton graphs, and the
//! Tanimoto coefficient.
//!
//! Identifiers start from the vertex degree. At radius `r` a vertex's
//! identifier is the hash of `(r, own identifier, sorted neighbor
//! identifiers)` from radius `r − 1`. An environment at radius `r >= 1` is
//! kept only if its bond set grew relative to radius `r − 1` and is not the
//! same bond set as an environment already kept; among equal new bond sets
//! the smallest identifier wins. Each kept identifier sets bit
//! `id mod width`.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_RADIUS: usize = 2;
pub const DEFAULT_BITS: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    words: Vec<u64>,
    width: usize,
    popcount: usize,
}

impl Fingerprint {
    pub fn new(width: usize) -> Result<Self> {
        if width == 0 || !width.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "fingerprint width {width} is not a power of two"
            )));
        }
        Ok(Fingerprint {
            words: vec![0; width.div_ceil(64)],
            width,
            popcount: 0,
        })
    }

    /// Parses a bit string like `"1100"` (bit 0 first).
    pub fn from_bit_str(bits: &str) -> Result<Self> {
        let mut fp = Fingerprint::new(bits.len())?;
        for (i, c) in bits.chars().enumerate() {
            match c {
                '1' => fp.set(i),
                '0' => {}
                _ => return Err(Error::InvalidParameter(format!("bad bit {c:?}"))),
            }
        }
        Ok(fp)
    }

    pub fn set(&mut self, bit: usize) {
        let (w, b) = (bit / 64, bit % 64);
        if self.words[w] >> b & 1 == 0 {
            self.words[w] |= 1 << b;
            self.popcount += 1;
        }
    }

    pub fn get(&self, bit: usize) -> bool {
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn popcount(&self) -> usize {
        self.popcount
    }
}

/// 64-bit mixer (splitmix64 finaliser) folded over a word sequence.
pub fn hash_words(words: &[u64]) -> u64 {
    let mut h: u64 = 0x243F_6A88_85A3_08D3;
    for &w in words {
        h ^= w;
        h = h.wrapping_add(0x9E37_79B9_7F4A_7C15);
        h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h ^= h >> 31;
    }
    h
}

pub fn morgan_fingerprint(g: &Graph, radius: usize, bits: usize) -> Result<Fingerprint> {
    let mut fp = Fingerprint::new(bits)?;
    g.require_connected()?;
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let edge_index: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let mut ids: Vec<u64> = (0..n).map(|v| hash_words(&[0, g.degree(v) as u64])).collect();
    for &id in &ids {
        fp.set(id as usize & (bits - 1));
    }

    // Bond sets as sorted edge-index lists; radius 0 covers no bonds.
    let mut envs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for r in 1..=radius {
        let mut next_ids = Vec::with_capacity(n);
        let mut next_envs = Vec::with_capacity(n);
        for v in 0..n {
            let mut nb: Vec<u64> = g.neighbors(v).iter().map(|&w| ids[w]).collect();
            nb.sort_unstable();
            let mut words = vec![r as u64, ids[v]];
            words.extend(nb);
            next_ids.push(hash_words(&words));

            // Grow by the bonds incident to every vertex of the previous ball.
            let mut env: Vec<usize> = envs[v].clone();
            let frontier: Vec<usize> = if r == 1 {
                vec![v]
            } else {
                envs[v]
                    .iter()
                    .flat_map(|&e| [edges[e].0, edges[e].1])
                    .collect()
            };
            for u in frontier {
                for &w in g.neighbors(u) {
                    env.push(edge_index[&(u.min(w), u.max(w))]);
                }
            }
            env.sort_unstable();
            env.dedup();
            next_envs.push(env);
        }

        let mut candidates: Vec<(&Vec<usize>, u64, usize)> = (0..n)
            .filter(|&v| next_envs[v].len() > envs[v].len())
            .map(|v| (&next_envs[v], next_ids[v], v))
            .collect();
        candidates.sort();
        let mut kept = Vec::new();
        for (env, id, _) in candidates {
            if seen.contains(env) {
                continue;
            }
            seen.insert(env.clone());
            kept.push(id);
        }
        for id in kept {
            fp.set(id as usize & (bits - 1));
        }
        ids = next_ids;
        envs = next_envs;
    }
    Ok(fp)
}

/// `|a ∧ b| / |a ∨ b|`.
pub fn tanimoto(a: &Fingerprint, b: &Fingerprint) -> Result<f64> {
    if a.width != b.width {
        return Err(Error::LengthMismatch {
            left: a.width,
            right: b.width,
        });
    }
    let (mut inter, mut union) = (0u32, 0u32);
    for (x, y) in a.words.iter().zip(&b.words) {
        inter += (x & y).count_ones();
        union += (x | y).count_ones();
    }
    if union == 0 {
        return Err(Error::InvalidParameter("both fingerprints are empty".into()));
    }
    Ok(inter as f64 / union as f64)
}

/// `(distinct values, largest multiplicity)` after rounding to 12 decimals.
pub fn degeneracy_profile(values: &[f64]) -> Result<(usize, usize)> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("empty value list".into()));
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for v in values {
        let mut key = format!("{v:.12}");
        if key.starts_with('-') && key.trim_start_matches(['-', '0', '.']).is_empty() {
            key.remove(0);
        }
        *counts.entry(key).or_default() += 1;
    }
    Ok((counts.len(), counts.values().copied().max().unwrap_or(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(g: &Graph) -> Fingerprint {
        morgan_fingerprint(g, DEFAULT_RADIUS, DEFAULT_BITS).unwrap()
    }

    #[test]
    fn relabeling_invariance() {
        assert_eq!(fp(&Graph::path(3)), fp(&Graph::path(3).permuted(&[2, 0, 1])));
    }

    #[test]
    fn single_vertex_sets_one_bit() {
        assert_eq!(fp(&Graph::empty(1)).popcount(), 1);
    }

    #[test]
    fn path_and_star_differ() {
        assert_ne!(fp(&Graph::path(4)), fp(&Graph::star(4)));
    }

    #[test]
    fn tanimoto_examples() {
        let a = Fingerprint::from_bit_str("1100").unwrap();
        let b = Fingerprint::from_bit_str("1010").unwrap();
        assert!((tanimoto(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(tanimoto(&a, &a).unwrap(), 1.0);
        let c = Fingerprint::from_bit_str("0011").unwrap();
        assert_eq!(tanimoto(&a, &c).unwrap(), 0.0);
        let wide = Fingerprint::new(8).unwrap();
        assert!(tanimoto(&a, &wide).is_err());
        let empty = Fingerprint::new(4).unwrap();
        assert!(tanimoto(&empty, &empty).is_err());
    }

    #[test]
    fn width_must_be_power_of_two() {
        assert!(morgan_fingerprint(&Graph::path(3), 2, 1000).is_err());
        assert!(Fingerprint::from_bit_str("110").is_err());
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_profile(&[0.5, 0.5, 0.5]).unwrap(), (1, 3));
        assert_eq!(degeneracy_profile(&[0.1, 0.2, 0.3]).unwrap(), (3, 1));
        assert_eq!(degeneracy_profile(&[1.0, 1.0, 2.0]).unwrap(), (2, 2));
        assert_eq!(degeneracy_profile(&[0.1 + 0.2, 0.3]).unwrap(), (1, 2));
        assert!(degeneracy_profile(&[]).is_err());
    }

    #[test]
    fn radius_zero_is_degree_histogram() {
        let a = morgan_fingerprint(&Graph::path(5), 0, 64).unwrap();
        // Degrees 1 and 2 only.
        assert!(a.popcount() <= 2);
    }
}
