//! Pearson correlation and similarity extrema over pair tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::similarity::PairTable;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub r: f64,
    pub n_points: usize,
    pub config_a: String,
    pub config_b: String,
}

/// Sample Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<CorrelationReport> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::UndefinedCorrelation("need at least 3 points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("constant series"));
    }
    let r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    Ok(CorrelationReport {
        r,
        n_points: xs.len(),
        config_a: String::new(),
        config_b: String::new(),
    })
}

impl CorrelationReport {
    pub fn with_configs(mut self, a: impl Into<String>, b: impl Into<String>) -> Self {
        self.config_a = a.into();
        self.config_b = b.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extremum {
    pub value: f64,
    pub pairs: Vec<(String, String)>,
    pub unique: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremaReport {
    pub min: Extremum,
    pub max: Extremum,
}

const EXTREMUM_TOL: f64 = 1e-12;

pub fn extrema_pairs(table: &PairTable) -> Result<ExtremaReport> {
    if table.rows.is_empty() {
        return Err(Error::InvalidParameter("empty pair table".into()));
    }
    let sims = table.rows.iter().map(|r| r.similarity);
    let lo = sims.clone().fold(f64::INFINITY, f64::min);
    let hi = sims.fold(f64::NEG_INFINITY, f64::max);
    let collect = |target: f64| {
        let pairs: Vec<(String, String)> = table
            .rows
            .iter()
            .filter(|r| (r.similarity - target).abs() <= EXTREMUM_TOL)
            .map(|r| (r.label_a.clone(), r.label_b.clone()))
            .collect();
        Extremum {
            value: target,
            unique: pairs.len() == 1,
            pairs,
        }
    };
    Ok(ExtremaReport {
        min: collect(lo),
        max: collect(hi),
    })
}
