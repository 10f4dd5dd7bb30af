//! Graph families: free trees (optionally degree-capped), connected graphs,
//! canonical certificates, and graph6 family files.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::graph6::{encode_graph6, parse_graph6, HEADER};
use crate::graph::Graph;

/// Largest order accepted by [`canonical_certificate`].
pub const CERT_MAX_ORDER: usize = 10;
pub const TREES_MAX_ORDER: usize = 12;
pub const CONNECTED_MAX_ORDER: usize = 7;

/// Byte string identifying an isomorphism class: the order followed by the
/// lexicographically largest upper-triangle adjacency code over all
/// refinement-compatible labelings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCertificate(Vec<u8>);

impl CanonicalCertificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Rebuilds the canonical representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.0[0] as usize;
        let mut raw = [0u8; 8];
        raw.copy_from_slice(&self.0[1..9]);
        let code = u64::from_be_bytes(raw);
        graph_from_code(n, code)
    }

    fn from_code(n: usize, code: u64) -> Self {
        let mut bytes = Vec::with_capacity(9);
        bytes.push(n as u8);
        bytes.extend_from_slice(&code.to_be_bytes());
        CanonicalCertificate(bytes)
    }
}

impl fmt::Display for CanonicalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn graph_from_code(n: usize, code: u64) -> Graph {
    let bits = n * (n - 1) / 2;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (bits - 1 - k) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    g
}

pub fn canonical_certificate(g: &Graph) -> Result<CanonicalCertificate> {
    let n = g.order();
    if n > CERT_MAX_ORDER {
        return Err(Error::BudgetExceeded {
            what: "canonical certificate",
            n,
            max: CERT_MAX_ORDER,
        });
    }
    let mut rows = [0u16; CERT_MAX_ORDER];
    for (u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    Ok(CanonicalCertificate::from_code(n, canonical_code(&rows[..n])))
}

/// Maximum adjacency code over the leaves of the individualization-refinement
/// tree. Cell ordering only depends on isomorphism-invariant signatures, so
/// the leaf set (and its maximum) is the same for every labeling.
fn canonical_code(rows: &[u16]) -> u64 {
    let n = rows.len();
    let mut colors = [0u8; CERT_MAX_ORDER];
    let mut best = None;
    search(rows, &mut colors[..n], &mut best);
    best.unwrap_or(0)
}

fn search(rows: &[u16], colors: &mut [u8], best: &mut Option<u64>) {
    let n = rows.len();
    let cells = refine(rows, colors);
    if cells == n {
        let code = leaf_code(rows, colors);
        if best.is_none_or(|b| code > b) {
            *best = Some(code);
        }
        return;
    }
    // First non-singleton cell.
    let mut sizes = [0u8; CERT_MAX_ORDER];
    for &c in colors.iter() {
        sizes[c as usize] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1).expect("non-discrete partition") as u8;
    for v in 0..n {
        if colors[v] != target {
            continue;
        }
        let mut child = [0u8; CERT_MAX_ORDER];
        for w in 0..n {
            let c = colors[w] as u16 * 2 + (colors[w] == target && w != v) as u16;
            child[w] = c as u8;
        }
        rank_in_place(&mut child[..n]);
        search(rows, &mut child[..n], best);
    }
}

/// Renumbers colors to dense ranks preserving order.
fn rank_in_place(colors: &mut [u8]) {
    let mut present = [false; 2 * CERT_MAX_ORDER + 2];
    for &c in colors.iter() {
        present[c as usize] = true;
    }
    let mut map = [0u8; 2 * CERT_MAX_ORDER + 2];
    let mut next = 0u8;
    for (c, &p) in present.iter().enumerate() {
        if p {
            map[c] = next;
            next += 1;
        }
    }
    for c in colors.iter_mut() {
        *c = map[*c as usize];
    }
}

/// Color refinement to the coarsest equitable partition finer than
/// `colors`. Returns the number of cells.
fn refine(rows: &[u16], colors: &mut [u8]) -> usize {
    let n = rows.len();
    let mut cells = count_cells(colors);
    loop {
        // Signature: own color, then neighbor counts per color class.
        let mut sigs: Vec<([u8; CERT_MAX_ORDER + 1], usize)> = (0..n)
            .map(|v| {
                let mut s = [0u8; CERT_MAX_ORDER + 1];
                s[0] = colors[v];
                let mut nb = rows[v];
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    s[1 + colors[w] as usize] += 1;
                }
                (s, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut rank = 0u8;
        for i in 0..n {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                rank += 1;
            }
            colors[sigs[i].1] = rank;
        }
        let now = rank as usize + 1;
        if now == cells {
            return now;
        }
        cells = now;
    }
}

fn count_cells(colors: &[u8]) -> usize {
    let mut seen = [false; 2 * CERT_MAX_ORDER + 2];
    colors.iter().filter(|&&c| !std::mem::replace(&mut seen[c as usize], true)).count()
}

fn leaf_code(rows: &[u16], colors: &[u8]) -> u64 {
    let n = rows.len();
    let mut inv = [0usize; CERT_MAX_ORDER];
    for (v, &c) in colors.iter().enumerate() {
        inv[c as usize] = v;
    }
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = code << 1 | (rows[inv[i]] >> inv[j] & 1) as u64;
        }
    }
    code
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Trees,
    ConnectedGraphs,
    DegreeCappedTrees,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub max_degree: Option<usize>,
}

impl FamilySpec {
    pub fn trees(n: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::Trees,
            n,
            max_degree: None,
        }
    }

    pub fn connected(n: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::ConnectedGraphs,
            n,
            max_degree: None,
        }
    }

    pub fn capped_trees(n: usize, cap: usize) -> Self {
        FamilySpec {
            kind: FamilyKind::DegreeCappedTrees,
            n,
            max_degree: Some(cap),
        }
    }

    /// Hydrogen-suppressed alkane skeletons: trees with carbon valence 4.
    pub fn alkanes(carbons: usize) -> Self {
        FamilySpec::capped_trees(carbons, 4)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("family needs n >= 1".into()));
        }
        match self.kind {
            FamilyKind::Trees | FamilyKind::DegreeCappedTrees if self.n > TREES_MAX_ORDER => {
                Err(Error::BudgetExceeded {
                    what: "tree enumeration",
                    n: self.n,
                    max: TREES_MAX_ORDER,
                })
            }
            FamilyKind::ConnectedGraphs if self.n > CONNECTED_MAX_ORDER => Err(Error::BudgetExceeded {
                what: "connected graph enumeration",
                n: self.n,
                max: CONNECTED_MAX_ORDER,
            }),
            FamilyKind::DegreeCappedTrees if self.max_degree.is_none_or(|c| c < 2) => Err(
                Error::InvalidParameter("degree cap must be >= 2".into()),
            ),
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Vec<Graph>> {
        self.validate()?;
        match self.kind {
            FamilyKind::ConnectedGraphs => enumerate_connected_graphs(self.n),
            _ => enumerate_trees(self.n, self.max_degree),
        }
    }
}

/// Canonical level-sequence catalogue of rooted trees.
struct RootedTree {
    /// Depth of each vertex in preorder, root at 0.
    levels: Vec<usize>,
    height: usize,
    /// Largest child count over all vertices, root included.
    max_children: usize,
}

/// All rooted trees with `1..=max_size` vertices, generated by the
/// level-sequence successor rule (Beyer–Hedetniemi).
fn rooted_catalogue(max_size: usize) -> Vec<RootedTree> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        // Levels are 1-based during generation; start from the path.
        let mut seq: Vec<usize> = (1..=size).collect();
        loop {
            out.push(rooted_from_levels(&seq));
            let Some(p) = seq.iter().rposition(|&l| l > 2) else {
                break;
            };
            let q = seq[..p]
                .iter()
                .rposition(|&l| l == seq[p] - 1)
                .expect("parent level exists");
            for i in p..size {
                seq[i] = seq[i - (p - q)];
            }
        }
    }
    out
}

fn rooted_from_levels(seq: &[usize]) -> RootedTree {
    let levels: Vec<usize> = seq.iter().map(|l| l - 1).collect();
    let mut children = vec![0usize; levels.len()];
    let mut stack: Vec<usize> = Vec::new();
    for (i, &l) in levels.iter().enumerate() {
        stack.truncate(l);
        if let Some(&parent) = stack.last() {
            children[parent] += 1;
        }
        stack.push(i);
    }
    RootedTree {
        height: levels.iter().copied().max().unwrap_or(0),
        max_children: children.iter().copied().max().unwrap_or(0),
        levels,
    }
}

/// Attaches the rooted tree below `parent` (or as a new root when `None`),
/// returning the index of its root.
fn attach(g: &mut Graph, next: &mut usize, tree: &RootedTree, parent: Option<usize>) -> usize {
    let mut stack: Vec<usize> = Vec::new();
    let root = *next;
    for &l in &tree.levels {
        let v = *next;
        *next += 1;
        stack.truncate(l);
        match stack.last() {
            Some(&p) => {
                g.add_edge(p, v);
            }
            None => {
                if let Some(p) = parent {
                    g.add_edge(p, v);
                }
            }
        }
        stack.push(v);
    }
    root
}

/// One representative per isomorphism class of free trees on `n` vertices,
/// optionally with maximum degree `max_degree`.
///
/// Trees are built rooted at their center: unicentral trees as a root with a
/// multiset of branches, at least two of which reach the full radius;
/// bicentral trees as an unordered pair of equal-height rooted halves joined
/// by the central edge. Output is sorted by certificate for `n <= 10`.
pub fn enumerate_trees(n: usize, max_degree: Option<usize>) -> Result<Vec<Graph>> {
    let spec = match max_degree {
        Some(c) => FamilySpec::capped_trees(n, c),
        None => FamilySpec::trees(n),
    };
    spec.validate()?;
    let cap = max_degree.unwrap_or(usize::MAX);

    let mut trees = Vec::new();
    if n == 1 {
        trees.push(Graph::empty(1));
    } else {
        let cat = rooted_catalogue(n - 1);
        // Branches hang from a parent, so their vertices keep one degree free.
        let branch_ok = |t: &RootedTree| t.max_children < cap;

        // Bicentral.
        for (i, a) in cat.iter().enumerate() {
            for b in &cat[i..] {
                if a.levels.len() + b.levels.len() == n
                    && a.height == b.height
                    && branch_ok(a)
                    && branch_ok(b)
                {
                    let mut g = Graph::empty(n);
                    let mut next = 0;
                    let ra = attach(&mut g, &mut next, a, None);
                    let rb = attach(&mut g, &mut next, b, None);
                    g.add_edge(ra, rb);
                    trees.push(g);
                }
            }
        }

        // Unicentral with radius h >= 1.
        for h in 1..n {
            let branches: Vec<&RootedTree> = cat
                .iter()
                .filter(|t| t.height < h && branch_ok(t))
                .collect();
            let mut chosen = Vec::new();
            choose_branches(&branches, h - 1, n - 1, cap, branches.len(), &mut chosen, &mut |pick| {
                let mut g = Graph::empty(n);
                let mut next = 1;
                for t in pick {
                    attach(&mut g, &mut next, t, Some(0));
                }
                trees.push(g);
            });
        }
    }

    let prefix = match max_degree {
        Some(c) => format!("T{n}c{c}"),
        None => format!("T{n}"),
    };
    finish_family(trees, &prefix)
}

/// Enumerates non-increasing index sequences into `branches` whose sizes sum
/// to `remaining`, with at least two branches of height `top`.
fn choose_branches<'a>(
    branches: &[&'a RootedTree],
    top: usize,
    remaining: usize,
    slots: usize,
    limit: usize,
    chosen: &mut Vec<&'a RootedTree>,
    emit: &mut dyn FnMut(&[&'a RootedTree]),
) {
    if remaining == 0 {
        if chosen.iter().filter(|t| t.height == top).count() >= 2 {
            emit(chosen);
        }
        return;
    }
    if slots == 0 {
        return;
    }
    for i in (0..limit).rev() {
        let t = branches[i];
        if t.levels.len() > remaining {
            continue;
        }
        chosen.push(t);
        choose_branches(branches, top, remaining - t.levels.len(), slots - 1, i + 1, chosen, emit);
        chosen.pop();
    }
}

/// One representative per isomorphism class of connected graphs on `n <= 7`
/// vertices, found by scanning all labeled graphs and deduplicating by
/// certificate. Representatives are the canonical forms, sorted by
/// certificate.
///
/// Only labeled graphs whose degrees are non-increasing in vertex order are
/// certified; every class has such a labeling.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    FamilySpec::connected(n).validate()?;
    if n == 1 {
        return finish_family(vec![Graph::empty(1)], "N1");
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let total: u64 = 1 << pairs.len();
    let chunk = 1u64 << 12;
    let found: BTreeMap<CanonicalCertificate, ()> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut local = BTreeMap::new();
            for mask in c * chunk..((c + 1) * chunk).min(total) {
                let mut rows = [0u16; CONNECTED_MAX_ORDER];
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        rows[i] |= 1 << j;
                        rows[j] |= 1 << i;
                    }
                }
                let rows = &rows[..n];
                if !rows.windows(2).all(|w| w[0].count_ones() >= w[1].count_ones()) {
                    continue;
                }
                if !mask_connected(rows) {
                    continue;
                }
                local.insert(CanonicalCertificate::from_code(n, canonical_code(rows)), ());
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        });
    let graphs = found.keys().map(CanonicalCertificate::to_graph).collect();
    finish_family(graphs, &format!("N{n}"))
}

fn mask_connected(rows: &[u16]) -> bool {
    let full = (1u16 << rows.len()) - 1;
    let mut seen = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = rows[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == full
}

/// Sorts by certificate (when certifiable) and assigns labels `<prefix>_<i>`.
fn finish_family(mut graphs: Vec<Graph>, prefix: &str) -> Result<Vec<Graph>> {
    if graphs.first().is_some_and(|g| g.order() <= CERT_MAX_ORDER) {
        let mut keyed: Vec<(CanonicalCertificate, Graph)> = graphs
            .into_iter()
            .map(|g| canonical_certificate(&g).map(|c| (c, g)))
            .collect::<Result<_>>()?;
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        graphs = keyed.into_iter().map(|(_, g)| g).collect();
    }
    let width = graphs.len().saturating_sub(1).to_string().len();
    for (i, g) in graphs.iter_mut().enumerate() {
        g.set_label(Some(format!("{prefix}_{i:0width$}")));
    }
    Ok(graphs)
}

/// Reads a graph6 family file: one graph per line, optional header, blank
/// lines skipped. Each graph is labeled with its graph6 text.
pub fn load_family(path: impl AsRef<Path>) -> Result<Vec<Graph>> {
    parse_family(&fs::read_to_string(path)?)
}

pub fn parse_family(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        let body = line.strip_prefix(HEADER).unwrap_or(line);
        if body.is_empty() {
            continue;
        }
        let g = parse_graph6(body).map_err(|e| Error::FamilyLine {
            line: i + 1,
            source: Box::new(e),
        })?;
        out.push(g.with_label(body));
    }
    Ok(out)
}

/// graph6 text for a family, one line per graph, LF endings.
pub fn write_family(graphs: &[Graph]) -> Result<String> {
    let mut out = String::new();
    for g in graphs {
        out.push_str(&encode_graph6(g)?);
        out.push('\n');
    }
    Ok(out)
}
