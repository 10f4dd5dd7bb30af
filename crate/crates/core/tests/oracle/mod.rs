//! Slow, independent reference implementations used only by tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use indexsim_core::Graph;
use num_rational::Ratio;
use proptest::prelude::*;

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

pub fn degree(a: &[Vec<bool>], v: usize) -> usize {
    a[v].iter().filter(|&&x| x).count()
}

/// BFS from `s`; `None` marks unreachable vertices.
pub fn bfs(a: &[Vec<bool>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; a.len()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for (v, &adj) in a[u].iter().enumerate() {
            if adj && dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                q.push_back(v);
            }
        }
    }
    dist
}

/// Shortest-path distance recomputed by a fresh BFS every call.
pub fn dist(a: &[Vec<bool>], u: usize, v: usize) -> f64 {
    bfs(a, u)[v].expect("connected graph") as f64
}

fn pair_sum(a: &[Vec<bool>], f: impl Fn(usize, usize, f64) -> f64) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for u in 0..n {
        for v in u + 1..n {
            s += f(u, v, dist(a, u, v));
        }
    }
    s
}

fn edge_sum(a: &[Vec<bool>], f: impl Fn(f64, f64) -> f64) -> f64 {
    let n = a.len();
    let mut s = 0.0;
    for u in 0..n {
        for v in u + 1..n {
            if a[u][v] {
                s += f(degree(a, u) as f64, degree(a, v) as f64);
            }
        }
    }
    s
}

pub fn harary(a: &[Vec<bool>]) -> f64 {
    pair_sum(a, |_, _, d| 1.0 / d)
}

pub fn wiener(a: &[Vec<bool>]) -> f64 {
    pair_sum(a, |_, _, d| d)
}

pub fn degree_distance(a: &[Vec<bool>]) -> f64 {
    pair_sum(a, |u, v, d| (degree(a, u) + degree(a, v)) as f64 * d)
}

pub fn gutman(a: &[Vec<bool>]) -> f64 {
    pair_sum(a, |u, v, d| (degree(a, u) * degree(a, v)) as f64 * d)
}

pub fn sombor(a: &[Vec<bool>]) -> f64 {
    edge_sum(a, |x, y| (x * x + y * y).sqrt())
}

pub fn randic(a: &[Vec<bool>]) -> f64 {
    edge_sum(a, |x, y| 1.0 / (x * y).sqrt())
}

pub fn first_zagreb(a: &[Vec<bool>]) -> f64 {
    (0..a.len()).map(|v| (degree(a, v) * degree(a, v)) as f64).sum()
}

fn to_f64(a: &[Vec<bool>]) -> Vec<Vec<f64>> {
    a.iter()
        .map(|r| r.iter().map(|&x| if x { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn matmul(x: &[Vec<f64>], y: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut z = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            if x[i][k] != 0.0 {
                for j in 0..n {
                    z[i][j] += x[i][k] * y[k][j];
                }
            }
        }
    }
    z
}

/// Σ e^λ as the power series Σ_k tr(A^k)/k!, truncated once terms vanish.
pub fn estrada_series(a: &[Vec<bool>]) -> f64 {
    let n = a.len();
    let adj = to_f64(a);
    let mut power: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let max_deg = (0..n).map(|v| degree(a, v)).max().unwrap_or(0) as f64;
    let mut fact = 1.0;
    let mut total = n as f64;
    for k in 1..200 {
        power = matmul(&power, &adj);
        fact *= k as f64;
        let tr: f64 = (0..n).map(|i| power[i][i]).sum();
        let term = tr / fact;
        total += term;
        // |tr(A^k)| <= n Δ^k bounds every later term.
        if n as f64 * max_deg.powi(k as i32) / fact < 1e-18 * total {
            break;
        }
    }
    total
}

/// tr((nI − A)^{-1}) by Gauss-Jordan elimination with partial pivoting.
pub fn resolvent_trace(a: &[Vec<bool>]) -> f64 {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n)
                .map(|j| {
                    let aij = if a[i][j] { 1.0 } else { 0.0 };
                    if i == j { n as f64 - aij } else { -aij }
                })
                .collect();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs()))
            .unwrap();
        m.swap(c, p);
        let piv = m[c][c];
        for x in m[c].iter_mut() {
            *x /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                if f != 0.0 {
                    for j in 0..2 * n {
                        m[r][j] -= f * m[c][j];
                    }
                }
            }
        }
    }
    (0..n).map(|i| m[i][n + i]).sum()
}

/// Householder reduction of a symmetric matrix to tridiagonal form:
/// `(diagonal, off-diagonal)`.
fn tridiagonalize(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k + 1][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k + 1..n).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vn = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vn == 0.0 {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vn;
        }
        let m = v.len();
        // H A H = A - 2 v qᵀ - 2 q vᵀ with p = A v, q = p - (vᵀp) v.
        let p: Vec<f64> = (0..m)
            .map(|i| (0..m).map(|j| a[k + 1 + i][k + 1 + j] * v[j]).sum())
            .collect();
        let vp: f64 = v.iter().zip(&p).map(|(x, y)| x * y).sum();
        let q: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - vp * vi).collect();
        for i in 0..m {
            for j in 0..m {
                a[k + 1 + i][k + 1 + j] -= 2.0 * (v[i] * q[j] + q[i] * v[j]);
            }
        }
        a[k + 1][k] = alpha;
        a[k][k + 1] = alpha;
        for i in k + 2..n {
            a[i][k] = 0.0;
            a[k][i] = 0.0;
        }
    }
    let d = (0..n).map(|i| a[i][i]).collect();
    let e = (0..n.saturating_sub(1)).map(|i| a[i][i + 1]).collect();
    (d, e)
}

/// Number of eigenvalues strictly below `x` from the Sturm sequence of the
/// tridiagonal matrix.
fn count_below(d: &[f64], e: &[f64], x: f64) -> usize {
    const PIVMIN: f64 = 1e-290;
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - x - off;
        if q.abs() < PIVMIN {
            q = -PIVMIN;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues (descending) by bisection on Sturm counts after
/// Householder tridiagonalisation.
pub fn bisection_spectrum(a: &[Vec<bool>]) -> Vec<f64> {
    let n = a.len();
    let (d, e) = tridiagonalize(to_f64(a));
    let (lo0, hi0) = (-(n as f64) - 1.0, n as f64 + 1.0);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        // The (k+1)-th smallest eigenvalue: smallest x with count_below(x) > k.
        let (mut lo, mut hi) = (lo0, hi0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if count_below(&d, &e, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out.reverse();
    out
}

/// Coefficients (constant term first) of det(xI − A) by Faddeev-LeVerrier
/// in exact integer arithmetic.
pub fn characteristic_polynomial(a: &[Vec<bool>]) -> Vec<i128> {
    let n = a.len();
    let adj: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut mk = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for l in 0..n {
                    s += adj[i][l] * mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += c[n - k + 1];
        }
        mk = next;
        let mut tr = 0;
        for i in 0..n {
            for l in 0..n {
                tr += adj[i][l] * mk[l][i];
            }
        }
        assert_eq!(tr % k as i128, 0);
        c[n - k] = -tr / k as i128;
    }
    c
}

type Q = Ratio<i128>;

fn trim(p: &mut Vec<Q>) {
    while p.len() > 1 && *p.last().unwrap() == Q::from_integer(0) {
        p.pop();
    }
}

fn derivative(p: &[Q]) -> Vec<Q> {
    if p.len() <= 1 {
        return vec![Q::from_integer(0)];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| *c * Q::from_integer(i as i128))
        .collect()
}

fn is_zero(p: &[Q]) -> bool {
    p.iter().all(|c| *c == Q::from_integer(0))
}

fn divmod(num: &[Q], den: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = num.to_vec();
    trim(&mut r);
    let dl = den.len();
    let lead = den[dl - 1];
    if r.len() < dl {
        return (vec![Q::from_integer(0)], r);
    }
    let mut q = vec![Q::from_integer(0); r.len() - dl + 1];
    while r.len() >= dl && !is_zero(&r) {
        let shift = r.len() - dl;
        let f = *r.last().unwrap() / lead;
        q[shift] = f;
        for (i, d) in den.iter().enumerate() {
            r[shift + i] -= f * d;
        }
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !is_zero(&y) {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    let lead = *x.last().unwrap();
    x.iter().map(|c| *c / lead).collect()
}

/// Yun's square-free factorisation: `(factor, multiplicity)` pairs.
fn square_free(p: &[Q]) -> Vec<(Vec<Q>, usize)> {
    let mut out = Vec::new();
    let dp = derivative(p);
    let mut a = gcd(p, &dp);
    let mut b = divmod(p, &a).0;
    let mut c = divmod(&dp, &a).0;
    let mut d: Vec<Q> = {
        let db = derivative(&b);
        let len = c.len().max(db.len());
        (0..len)
            .map(|i| {
                c.get(i).copied().unwrap_or(Q::from_integer(0))
                    - db.get(i).copied().unwrap_or(Q::from_integer(0))
            })
            .collect()
    };
    let mut i = 1;
    while b.len() > 1 {
        a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = divmod(&b, &a).0;
        c = divmod(&d, &a).0;
        let db = derivative(&b);
        let len = c.len().max(db.len());
        d = (0..len)
            .map(|k| {
                c.get(k).copied().unwrap_or(Q::from_integer(0))
                    - db.get(k).copied().unwrap_or(Q::from_integer(0))
            })
            .collect();
        trim(&mut d);
        i += 1;
    }
    out
}

fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Real roots of a square-free polynomial with only real roots, isolated
/// between the roots of its derivative.
fn simple_real_roots(p: &[f64], bound: f64) -> Vec<f64> {
    if p.len() == 2 {
        return vec![-p[0] / p[1]];
    }
    let dp: Vec<f64> = p.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    let mut cuts = vec![-bound];
    cuts.extend(simple_real_roots(&dp, bound));
    cuts.push(bound);
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(p, lo), eval(p, hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo * fhi > 0.0 {
            continue;
        }
        let s = flo.signum();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if eval(p, mid).signum() == s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    roots
}

fn ratio_f64(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Exact characteristic-polynomial roots (descending, with multiplicity).
pub fn characteristic_roots(a: &[Vec<bool>]) -> Vec<f64> {
    let n = a.len();
    let poly: Vec<Q> = characteristic_polynomial(a)
        .into_iter()
        .map(Q::from_integer)
        .collect();
    let mut roots = Vec::new();
    for (factor, mult) in square_free(&poly) {
        let f: Vec<f64> = factor.iter().map(ratio_f64).collect();
        for r in simple_real_roots(&f, n as f64 + 1.0) {
            roots.extend(std::iter::repeat(r).take(mult));
        }
    }
    assert_eq!(roots.len(), n, "lost roots");
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}

/// All ten indices in `IndexId` order from the reference evaluators.
pub fn all_indices(g: &Graph) -> [f64; 10] {
    let a = adjacency(g);
    let spec = bisection_spectrum(&a);
    [
        harary(&a),
        sombor(&a),
        degree_distance(&a),
        gutman(&a),
        spec.iter().map(|l| l.abs()).sum(),
        estrada_series(&a),
        first_zagreb(&a),
        randic(&a),
        resolvent_trace(&a),
        wiener(&a),
    ]
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Upper-triangle bit code of `g` with vertex `i` relabeled `perm[i]`.
fn code_under(a: &[Vec<bool>], perm: &[usize]) -> u64 {
    let n = a.len();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let mut code = 0u64;
    for v in 1..n {
        for u in 0..v {
            code = code << 1 | a[inv[u]][inv[v]] as u64;
        }
    }
    code
}

/// Maximum code over all relabelings: a brute-force canonical form.
pub fn brute_canonical(g: &Graph, perms: &[Vec<usize>]) -> (usize, u64) {
    let a = adjacency(g);
    (
        g.order(),
        perms.iter().map(|p| code_under(&a, p)).max().unwrap_or(0),
    )
}

pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return false;
    }
    let perms = permutations(g.order());
    brute_canonical(g, &perms) == brute_canonical(h, &perms)
}

/// GED under vertex bijections after padding the smaller graph with
/// isolated vertices.
pub fn bijection_ged(g: &Graph, h: &Graph) -> usize {
    let n = g.order().max(h.order());
    let pad = |x: &Graph| {
        let mut a = vec![vec![false; n]; n];
        for (u, v) in x.edges() {
            a[u][v] = true;
            a[v][u] = true;
        }
        a
    };
    let (a, b) = (pad(g), pad(h));
    let best = permutations(n)
        .iter()
        .map(|p| {
            let mut cost = 0;
            for u in 0..n {
                for v in u + 1..n {
                    cost += (a[u][v] != b[p[u]][p[v]]) as usize;
                }
            }
            cost
        })
        .min()
        .unwrap();
    best + g.order().abs_diff(h.order())
}

/// Edit distance with explicit vertex deletions and insertions: minimum over
/// all partial injections `V(g) -> V(h)`.
pub fn partial_injection_ged(g: &Graph, h: &Graph) -> usize {
    fn rec(
        g: &Graph,
        h: &Graph,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        best: &mut usize,
    ) {
        let i = map.len();
        if i == g.order() {
            let mapped = map.iter().flatten().count();
            let mut cost = (g.order() - mapped) + (h.order() - mapped);
            let mut kept = 0;
            for (u, v) in g.edges() {
                match (map[u], map[v]) {
                    (Some(x), Some(y)) if h.has_edge(x, y) => kept += 1,
                    _ => cost += 1,
                }
            }
            cost += h.edge_count() - kept;
            *best = (*best).min(cost);
            return;
        }
        map.push(None);
        rec(g, h, map, used, best);
        map.pop();
        for w in 0..h.order() {
            if !used[w] {
                used[w] = true;
                map.push(Some(w));
                rec(g, h, map, used, best);
                map.pop();
                used[w] = false;
            }
        }
    }
    let mut best = usize::MAX;
    rec(g, h, &mut Vec::new(), &mut vec![false; h.order()], &mut best);
    best
}

/// Every labeled tree on `n` vertices decoded from its Prüfer sequence.
pub fn prufer_trees(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1)];
    }
    if n == 2 {
        return vec![Graph::complete(2)];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    for mut code in 0..total {
        let mut seq = Vec::with_capacity(len);
        for _ in 0..len {
            seq.push(code % n);
            code /= n;
        }
        let mut deg = vec![1usize; n];
        for &s in &seq {
            deg[s] += 1;
        }
        let mut g = Graph::empty(n);
        for &s in &seq {
            let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
            g.add_edge(leaf, s);
            deg[leaf] -= 1;
            deg[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        g.add_edge(rest[0], rest[1]);
        out.push(g);
    }
    out
}

/// Isomorphism classes of connected graphs on `n` vertices, as brute-force
/// canonical codes.
pub fn connected_classes(n: usize) -> BTreeSet<u64> {
    let perms = permutations(n);
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let mut classes = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            classes.insert(brute_canonical(&g, &perms).1);
        }
    }
    classes
}

/// Indices of the extreme values by linear scan, within `tol`.
pub fn linear_extrema(values: &[f64], tol: f64) -> (Vec<usize>, Vec<usize>) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pick = |t: f64| {
        (0..values.len())
            .filter(|&i| (values[i] - t).abs() <= tol)
            .collect()
    };
    (pick(lo), pick(hi))
}

/// Connected graph on `1..=max_n` vertices: a random spanning tree plus
/// random extra edges.
pub fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let parents = (1..n.max(2))
                .map(|v| 0..v)
                .collect::<Vec<_>>();
            let extra = proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2);
            (Just(n), parents, extra, 0.0f64..1.0)
        })
        .prop_map(|(n, parents, extra, density)| {
            let mut g = Graph::empty(n);
            if n > 1 {
                for (i, p) in parents.into_iter().enumerate() {
                    g.add_edge(i + 1, p);
                }
            }
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    // Thin the extra edges so sparse graphs stay common.
                    if extra[k] && (k as f64 * 0.618_034).fract() < density {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
}

/// A uniformly random permutation of `0..n`.
pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}
