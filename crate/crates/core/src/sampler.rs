//! Seeded samplers for G(n,p) and its clique complex X(n,p).
//!
//! The generator is ChaCha8 from `rand_chacha`, seeded from a 64-bit seed.
//! Trial seeds are derived from a master seed with splitmix64 so that a
//! trial's sample depends only on (master seed, trial index).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{CliqueComplex, DEFAULT_FACE_BUDGET};
use crate::error::{SampleError, SamplerError};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self, SamplerError> {
        let cfg = SamplerConfig { n, p, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SamplerError> {
        if self.n == 0 {
            return Err(SamplerError::EmptyGraph);
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(SamplerError::Probability(self.p));
        }
        Ok(())
    }
}

/// Pairs `(u, v)` with `u < v` are visited in lexicographic order, one
/// uniform draw each.
pub fn sample_gnp(cfg: &SamplerConfig) -> Result<Graph, SamplerError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); cfg.n];
    for u in 0..cfg.n {
        for v in u + 1..cfg.n {
            if rng.gen::<f64>() < cfg.p {
                adj[u].push(v as u32);
                adj[v].push(u as u32);
            }
        }
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

pub fn sample_xnp(cfg: &SamplerConfig, dim_cap: usize) -> Result<CliqueComplex, SampleError> {
    sample_xnp_with_budget(cfg, dim_cap, DEFAULT_FACE_BUDGET)
}

pub fn sample_xnp_with_budget(
    cfg: &SamplerConfig,
    dim_cap: usize,
    budget: usize,
) -> Result<CliqueComplex, SampleError> {
    let g = sample_gnp(cfg)?;
    Ok(CliqueComplex::with_budget(g, dim_cap, budget)?)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of trial `index` under `master`.
pub fn child_seed(master: u64, index: u64) -> u64 {
    splitmix64(splitmix64(master) ^ index)
}

/// `p = n^(-alpha)`.
pub fn p_from_alpha(n: usize, alpha: f64) -> Result<f64, SamplerError> {
    if alpha.is_nan() || alpha <= 0.0 || alpha.is_infinite() {
        return Err(SamplerError::Alpha(alpha));
    }
    if n == 0 {
        return Err(SamplerError::EmptyGraph);
    }
    Ok((n as f64).powf(-alpha))
}
