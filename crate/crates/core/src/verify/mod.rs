//! Numerical verification: normalization, Jacobians, distributional laws
//! and algebraic identities, each producing a [`VerificationReport`].

use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::samplers::{stream_rng, SampleRng};

pub mod identities;
pub mod jacobian;
pub mod laws;
pub mod linalg;
pub mod normalization;
pub mod stats;
mod suites;

pub use suites::{run_suite, Suite, VerifyConfig};

/// Number of independent RNG streams a Monte Carlo run is split into.
pub const CHUNKS: u64 = 16;

/// Environment variable fixing the worker count (`0` or unset: all cores).
pub const THREADS_ENV: &str = "RIESZ_MATVAR_THREADS";

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    pub sample_size: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
    pub detail: String,
}

impl VerificationReport {
    /// Passes when `statistic` is finite and at most `threshold`.
    pub fn new(check: &str, statistic: f64, threshold: f64, sample_size: u64, seed: Option<u64>, detail: String) -> Self {
        VerificationReport {
            check: check.to_string(),
            statistic,
            threshold,
            pass: statistic.is_finite() && statistic <= threshold,
            sample_size,
            seed,
            wall_time_s: None,
            detail,
        }
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.wall_time_s = Some(start.elapsed().as_secs_f64());
        self
    }

    pub fn without_timing(mut self) -> Self {
        self.wall_time_s = None;
        self
    }

    /// A failed report for a check that could not be carried out.
    pub fn errored(check: &str, err: &Error) -> Self {
        VerificationReport::new(check, f64::NAN, 0.0, 0, None, format!("error: {err}"))
    }
}

/// Shared worker pool sized from [`THREADS_ENV`].
pub fn thread_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("failed to build verification thread pool")
    })
}

/// Runs `f` on [`CHUNKS`] streams derived from `seed`, splitting `total`
/// draws between them. Results come back in stream order regardless of
/// the worker count.
pub fn chunked<T, F>(seed: u64, total: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut SampleRng, u64) -> Result<T> + Sync,
{
    let base = total / CHUNKS;
    let extra = total % CHUNKS;
    thread_pool().install(|| {
        (0..CHUNKS)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream_rng(seed, i);
                f(&mut rng, base + u64::from(i < extra))
            })
            .collect()
    })
}

/// Splitmix64 finalizer, used to derive per-check seeds.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed.wrapping_add(tag.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn chunked_is_deterministic_and_covers_total() {
        let run = || chunked(7, 1003, |rng, n| Ok((n, rng.random::<u64>()))).unwrap();
        let a = run();
        assert_eq!(a, run());
        assert_eq!(a.iter().map(|x| x.0).sum::<u64>(), 1003);
    }

    #[test]
    fn report_pass_rule() {
        assert!(VerificationReport::new("x", 0.5, 1.0, 1, None, String::new()).pass);
        assert!(!VerificationReport::new("x", f64::NAN, 1.0, 1, None, String::new()).pass);
        let json = serde_json::to_string(&VerificationReport::new("x", 0.5, 1.0, 1, None, String::new())).unwrap();
        assert!(!json.contains("seed") && !json.contains("wall_time_s"));
    }
}
