//! Exact graph edit distance for small unlabeled graphs.
//!
//! Unit costs for vertex insertion, vertex deletion, edge insertion and edge
//! deletion. Mapping every vertex of the smaller graph is never worse than
//! deleting it and inserting a fresh one (that path pays two vertex
//! operations plus every incident edge), so the search pads the smaller graph
//! with isolated dummies and minimises the edge symmetric difference over
//! bijections, then adds `|n1 − n2|`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the exact search.
pub const MAX_ORDER: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditDistanceResult {
    pub ged: usize,
    /// `witness[u]` is the image of g1's vertex `u` in g2, or `None` if deleted.
    pub witness: Vec<Option<usize>>,
}

pub fn ged(g1: &Graph, g2: &Graph) -> Result<EditDistanceResult> {
    let n = g1.order().max(g2.order());
    if n > MAX_ORDER {
        return Err(Error::BudgetExceeded {
            what: "graph edit distance",
            n,
            max: MAX_ORDER,
        });
    }
    g1.require_connected()?;
    g2.require_connected()?;

    let swapped = g1.order() > g2.order();
    let (small, large) = if swapped { (g2, g1) } else { (g1, g2) };
    let a = padded_rows(small, n);
    let b = padded_rows(large, n);
    let (cost, perm) = Search::new(&a, &b).run(small.edge_count() + large.edge_count());
    let ged = cost + (large.order() - small.order());

    // perm maps padded-small vertices to large vertices.
    let witness = if swapped {
        let mut w = vec![None; g1.order()];
        for (s, &l) in perm.iter().enumerate().take(small.order()) {
            w[l] = Some(s);
        }
        w
    } else {
        perm[..small.order()].iter().map(|&l| Some(l)).collect()
    };
    Ok(EditDistanceResult { ged, witness })
}

/// `(i, j, ged)` for every pair `i < j` of the family, in position order.
pub fn ged_pairs(family: &[Graph]) -> Result<Vec<(usize, usize, usize)>> {
    let m = family.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| ged(&family[i], &family[j]).map(|r| (i, j, r.ged)))
        .collect()
}

/// `1 / (ged + 1)`.
pub fn s_ged(g1: &Graph, g2: &Graph) -> Result<f64> {
    Ok(1.0 / (ged(g1, g2)?.ged as f64 + 1.0))
}

/// Number of elementary operations in the edit script induced by a partial
/// injection from g1's vertices into g2's.
///
/// # Panics
/// If `mapping` is not a partial injection of the right length.
pub fn edit_cost(g1: &Graph, g2: &Graph, mapping: &[Option<usize>]) -> usize {
    assert_eq!(mapping.len(), g1.order());
    let mut hit = vec![false; g2.order()];
    for &t in mapping.iter().flatten() {
        assert!(!hit[t], "mapping is not injective");
        hit[t] = true;
    }
    let deleted = mapping.iter().filter(|m| m.is_none()).count();
    let inserted = hit.iter().filter(|&&h| !h).count();
    let mut edges = 0;
    for u in 0..g1.order() {
        for v in u + 1..g1.order() {
            match (mapping[u], mapping[v]) {
                (Some(x), Some(y)) => edges += (g1.has_edge(u, v) != g2.has_edge(x, y)) as usize,
                _ => edges += g1.has_edge(u, v) as usize,
            }
        }
    }
    for (x, y) in g2.edges() {
        if !hit[x] || !hit[y] {
            edges += 1;
        }
    }
    deleted + inserted + edges
}

fn padded_rows(g: &Graph, n: usize) -> Vec<u32> {
    let mut rows = vec![0u32; n];
    for (u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

struct Search<'a> {
    a: &'a [u32],
    b: &'a [u32],
    /// Vertices of `a` in assignment order (highest degree first).
    order: Vec<usize>,
    /// `perm[a_vertex] = b_vertex` for assigned vertices.
    perm: Vec<usize>,
    best: usize,
    best_perm: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(a: &'a [u32], b: &'a [u32]) -> Self {
        let n = a.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(a[v].count_ones()), v));
        Search {
            a,
            b,
            order,
            perm: vec![usize::MAX; n],
            best: usize::MAX,
            best_perm: Vec::new(),
        }
    }

    fn run(mut self, trivial_bound: usize) -> (usize, Vec<usize>) {
        // Deleting every edge and inserting every edge is always feasible.
        self.best = trivial_bound + 1;
        let n = self.a.len();
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        self.descend(0, 0, full, full, 0);
        (self.best, self.best_perm)
    }

    /// `free_a` / `free_b`: bitmasks of unassigned vertices.
    fn descend(&mut self, depth: usize, cost: usize, free_a: u32, free_b: u32, assigned_a: u32) {
        let n = self.a.len();
        if depth == n {
            if cost < self.best {
                self.best = cost;
                self.best_perm = self.perm.clone();
            }
            return;
        }
        if cost + self.lower_bound(free_a, free_b, assigned_a) >= self.best {
            return;
        }
        let u = self.order[depth];
        let rest_a = free_a & !(1 << u);
        let mut candidates = free_b;
        while candidates != 0 {
            let x = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;

            let mut extra = 0;
            let mut assigned = assigned_a;
            while assigned != 0 {
                let w = assigned.trailing_zeros() as usize;
                assigned &= assigned - 1;
                let ea = self.a[u] >> w & 1;
                let eb = self.b[x] >> self.perm[w] & 1;
                extra += (ea != eb) as usize;
            }
            if cost + extra >= self.best {
                continue;
            }
            self.perm[u] = x;
            self.descend(depth + 1, cost + extra, rest_a, free_b & !(1 << x), assigned_a | 1 << u);
            self.perm[u] = usize::MAX;
        }
    }

    /// Admissible bound on the cost still to be paid.
    ///
    /// Pairs inside the unassigned remainder cost at least half the L1
    /// distance between the sorted induced degree sequences. Pairs between
    /// an assigned vertex `w` and the remainder cost at least the difference
    /// between `w`'s and its image's neighbor counts in the remainders.
    fn lower_bound(&self, free_a: u32, free_b: u32, assigned_a: u32) -> usize {
        let mut da = [0u32; 32];
        let mut db = [0u32; 32];
        let mut k = 0;
        let (mut fa, mut fb) = (free_a, free_b);
        while fa != 0 {
            let u = fa.trailing_zeros() as usize;
            fa &= fa - 1;
            let x = fb.trailing_zeros() as usize;
            fb &= fb - 1;
            da[k] = (self.a[u] & free_a).count_ones();
            db[k] = (self.b[x] & free_b).count_ones();
            k += 1;
        }
        da[..k].sort_unstable();
        db[..k].sort_unstable();
        let l1: u32 = da[..k].iter().zip(&db[..k]).map(|(p, q)| p.abs_diff(*q)).sum();
        let inner = l1.div_ceil(2) as usize;

        let mut cross = 0;
        let mut assigned = assigned_a;
        while assigned != 0 {
            let w = assigned.trailing_zeros() as usize;
            assigned &= assigned - 1;
            let ca = (self.a[w] & free_a).count_ones();
            let cb = (self.b[self.perm[w]] & free_b).count_ones();
            cross += ca.abs_diff(cb) as usize;
        }
        inner + cross
    }
}
