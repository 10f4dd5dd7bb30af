use super::Graph;
use crate::error::{Error, Result};

const UNREACHABLE: u32 = u32::MAX / 2;

/// Dense matrix of shortest-path distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub(super) fn floyd_warshall(g: &Graph) -> Result<Self> {
        let n = g.order();
        let mut d = vec![UNREACHABLE; n * n];
        for v in 0..n {
            d[v * n + v] = 0;
        }
        for (u, v) in g.edges() {
            d[u * n + v] = 1;
            d[v * n + u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                let dik = d[i * n + k];
                if dik >= UNREACHABLE {
                    continue;
                }
                for j in 0..n {
                    let via = dik + d[k * n + j];
                    if via < d[i * n + j] {
                        d[i * n + j] = via;
                    }
                }
            }
        }
        if d.iter().any(|&x| x >= UNREACHABLE) {
            return Err(Error::Disconnected);
        }
        Ok(DistanceMatrix { n, d })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// Distances for unordered pairs `u < v`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v, self.get(u, v))))
    }
}
