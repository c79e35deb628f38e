//! Per-stage verification of the construction's lower bounds.
//!
//! Walks the stage plan level by level. Every embedding in the frontier is
//! checked against the stage's factor. When a level would grow past
//! `frontier_budget`, a seeded uniform sample of `samples` survivors carries
//! on instead, so later stages are checked on sampled inputs.

use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::insertion::ResolvedBatch;
use super::stages::{attach_factor, base_embeddings_k23, half, stage_plan, Stage};
use crate::bounds::{double_factorial, f1};
use crate::embedding::Embedding;
use crate::error::{ClaimFailure, ConstructError};
use crate::format::serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub frontier_budget: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { frontier_budget: 5_000, samples: 100, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRow {
    pub label: String,
    pub factor: u64,
    pub inputs: usize,
    /// Inputs were a sample of the previous level.
    pub sampled: bool,
    pub min_observed: u64,
    pub max_observed: u64,
    /// One-face completions summed over the inputs.
    pub outputs: u64,
}

impl StageRow {
    pub fn pass(&self) -> bool {
        self.inputs > 0 && self.min_observed >= self.factor
    }
}

/// A product check over a group of rows: the pair stages, one x-vertex, or
/// the whole construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRow {
    pub label: String,
    pub required: BigUint,
    pub observed: BigUint,
}

impl ProductRow {
    pub fn pass(&self) -> bool {
        self.observed >= self.required
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimsReport {
    pub n: u32,
    pub stages: Vec<StageRow>,
    pub products: Vec<ProductRow>,
    /// First failing input per failing stage.
    pub failures: Vec<ClaimFailure>,
}

impl ClaimsReport {
    pub fn pass(&self) -> bool {
        self.stages.iter().all(StageRow::pass) && self.products.iter().all(ProductRow::pass)
    }

    pub fn row(&self, label: &str) -> Option<&StageRow> {
        self.stages.iter().find(|r| r.label == label)
    }

    pub fn product(&self, label: &str) -> Option<&ProductRow> {
        self.products.iter().find(|r| r.label == label)
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for ClaimsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "claim verification, n = {}", self.n)?;
        writeln!(
            f,
            "{:<12} {:>8} {:>8} {:>8} {:>8} {:>9}  verdict",
            "stage", "factor", "inputs", "min", "max", "outputs"
        )?;
        for r in &self.stages {
            let inputs = if r.sampled { format!("{}*", r.inputs) } else { r.inputs.to_string() };
            writeln!(
                f,
                "{:<12} {:>8} {:>8} {:>8} {:>8} {:>9}  {}",
                r.label,
                r.factor,
                inputs,
                r.min_observed,
                r.max_observed,
                r.outputs,
                verdict(r.pass())
            )?;
        }
        for p in &self.products {
            writeln!(f, "{:<12} required {} observed {}  {}", p.label, p.required, p.observed, verdict(p.pass()))?;
        }
        if self.stages.iter().any(|r| r.sampled) {
            writeln!(f, "* inputs sampled from the previous level")?;
        }
        let mut failures = String::new();
        for failure in &self.failures {
            let _ = writeln!(failures, "{failure}");
        }
        write!(f, "{failures}")?;
        writeln!(f, "overall {}", verdict(self.pass()))
    }
}

/// Checks every stage factor for `n`, sampling inputs where levels grow large.
pub fn verify_claims(n: u32, options: &VerifyOptions) -> Result<ClaimsReport, ConstructError> {
    let s = half(n)?;
    if n < 3 {
        return Err(ConstructError::BadSequence { n, reason: "stages start from K_{2,3}".into() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let base = base_embeddings_k23();
    let mut stages = vec![StageRow {
        label: "base".into(),
        factor: 2,
        inputs: 1,
        sampled: false,
        min_observed: base.len() as u64,
        max_observed: base.len() as u64,
        outputs: base.len() as u64,
    }];
    let mut failures = Vec::new();
    let mut frontier = base;
    let mut sampled = false;
    for stage in stage_plan(n, n)? {
        let batch = stage.batch();
        let counts: Vec<(Vec<Embedding>, u64)> = frontier
            .par_iter()
            .map(|e| {
                let resolved = ResolvedBatch::resolve(e, &batch)?;
                let outs: Vec<Embedding> = resolved.one_face_completions(e).into_iter().map(|(_, o)| o).collect();
                let count = outs.len() as u64;
                Ok((outs, count))
            })
            .collect::<Result<_, ConstructError>>()?;
        let min = counts.iter().map(|c| c.1).min().unwrap_or(0);
        let max = counts.iter().map(|c| c.1).max().unwrap_or(0);
        if min < stage.factor {
            let (index, _) = counts.iter().enumerate().find(|(_, c)| c.1 < stage.factor).expect("min below factor");
            failures.push(ClaimFailure {
                stage: stage.label(),
                required: stage.factor,
                observed: counts[index].1,
                input: serialize(&frontier[index]),
            });
        }
        let outputs: u64 = counts.iter().map(|c| c.1).sum();
        stages.push(StageRow {
            label: stage.label(),
            factor: stage.factor,
            inputs: frontier.len(),
            sampled,
            min_observed: min,
            max_observed: max,
            outputs,
        });
        let mut next: Vec<Embedding> = counts.into_iter().flat_map(|c| c.0).collect();
        if next.len() > options.frontier_budget {
            let keep = options.samples.min(next.len());
            let mut picked = rand::seq::index::sample(&mut rng, next.len(), keep).into_vec();
            picked.sort_unstable();
            next = picked.into_iter().map(|i| next[i].clone()).collect();
            sampled = true;
        }
        frontier = next;
    }

    let min_of = |label: String| stages.iter().find(|r| r.label == label).map_or(0, |r| r.min_observed);
    let mut products = Vec::new();
    let dfact = double_factorial(2 * i64::from(s) - 1).expect("s ≥ 0");
    let pairs_observed: BigUint = (2..=s).map(|k| BigUint::from(min_of(Stage::pair(k).label()))).product::<BigUint>()
        * BigUint::from(min_of("base".into()));
    products.push(ProductRow {
        label: "pairs".into(),
        required: (BigUint::from(1u32) << s) * dfact.pow(2),
        observed: pairs_observed.clone(),
    });
    let mut overall = pairs_observed;
    for k in 3..=n {
        let observed: BigUint = std::iter::once(Stage::pendant(k))
            .chain((2..=s).map(|i| Stage::single(k, i)))
            .map(|st| BigUint::from(min_of(st.label())))
            .product();
        overall *= &observed;
        products.push(ProductRow { label: format!("x{k}"), required: attach_factor(k, n), observed });
    }
    products.push(ProductRow {
        label: "overall".into(),
        required: f1(u64::from(n)).expect("odd n"),
        observed: overall,
    });
    Ok(ClaimsReport { n, stages, products, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_report() {
        let report = verify_claims(3, &VerifyOptions::default()).unwrap();
        assert!(report.pass());
        assert_eq!(report.row("base").unwrap().min_observed, 2);
        assert_eq!(report.row("x3.sub0").unwrap().min_observed, 8);
        assert_eq!(report.product("overall").unwrap().observed, BigUint::from(16u32));
        assert!(report.to_string().contains("overall PASS"));
    }

    #[test]
    fn even_rejected() {
        assert_eq!(verify_claims(4, &VerifyOptions::default()), Err(ConstructError::EvenN(4)));
    }
}
