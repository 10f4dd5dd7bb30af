//! Adjacency spectra via cyclic Jacobi rotations, and the eigenvalue-based
//! indices (energy, Estrada index, resolvent energy).

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Sweep cap for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a graph's adjacency matrix, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Largest off-diagonal magnitude left when the iteration stopped.
    pub residual: f64,
    pub sweeps: usize,
}

impl SpectralDecomposition {
    /// |Σλ|; should vanish since the adjacency trace is zero.
    pub fn trace_error(&self) -> f64 {
        self.eigenvalues.iter().sum::<f64>().abs()
    }

    /// |Σλ² − 2|E||.
    pub fn frobenius_error(&self, edge_count: usize) -> f64 {
        (self.eigenvalues.iter().map(|l| l * l).sum::<f64>() - 2.0 * edge_count as f64).abs()
    }

    pub fn energy(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).sum()
    }

    pub fn estrada(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.exp()).sum()
    }

    /// Σ 1/(n − λ_i).
    pub fn resolvent_energy(&self) -> Result<f64> {
        let n = self.eigenvalues.len() as f64;
        let mut total = 0.0;
        for &l in &self.eigenvalues {
            let gap = n - l;
            if gap <= 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "resolvent undefined: eigenvalue {l} too close to n = {n}"
                )));
            }
            total += 1.0 / gap;
        }
        Ok(total)
    }
}

/// Eigenvalues of a dense symmetric `n × n` matrix (row-major), descending.
///
/// Cyclic Jacobi: every sweep rotates away each off-diagonal entry once.
/// Stops when the off-diagonal Frobenius norm drops below `1e-12 · n`.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<SpectralDecomposition> {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
    }
    let tol = 1e-12 * n as f64;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off < tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: max_off_diagonal(&a, n),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(SpectralDecomposition {
        eigenvalues,
        residual: max_off_diagonal(&a, n),
        sweeps,
    })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

fn max_off_diagonal(a: &[f64], n: usize) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m = m.max(a[i * n + j].abs());
            }
        }
    }
    m
}

/// Annihilates `a[p][q]` with a plane rotation.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp;
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq;
    }
}

/// Adjacency spectrum of `g`, with the trace and Frobenius identities
/// verified before returning.
pub fn eigenvalues(g: &Graph) -> Result<SpectralDecomposition> {
    let n = g.order();
    let dec = symmetric_eigenvalues(g.adjacency_f64(), n)?;
    let m = g.edge_count();
    if dec.trace_error() > 1e-8 * n as f64
        || dec.frobenius_error(m) > 1e-6 * (1.0 + 2.0 * m as f64)
    {
        return Err(Error::NoConvergence {
            sweeps: dec.sweeps,
            residual: dec.residual,
        });
    }
    Ok(dec)
}

pub fn graph_energy(g: &Graph) -> Result<f64> {
    g.require_connected()?;
    Ok(eigenvalues(g)?.energy())
}

pub fn estrada_index(g: &Graph) -> Result<f64> {
    g.require_connected()?;
    Ok(eigenvalues(g)?.estrada())
}

pub fn resolvent_energy(g: &Graph) -> Result<f64> {
    g.require_connected()?;
    eigenvalues(g)?.resolvent_energy()
}
