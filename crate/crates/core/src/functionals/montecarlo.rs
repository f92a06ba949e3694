use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_pair, finite, Element, Method, PairIntegralResult};
use crate::bodies::Body;
use crate::measures::{sample_hyperplane_pair, sample_line_pair, ZonalDensity};
use crate::{Error, Result};

/// Sample count, seed, worker count and optional reference radius.
///
/// Worker `i` draws from the ChaCha8 stream `i` of `seed`, and partial
/// statistics are merged in worker order, so the estimate is a function of
/// `(samples, seed, workers, radius)` alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub samples: usize,
    pub seed: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default)]
    pub radius: Option<f64>,
}

fn default_workers() -> usize {
    1
}

impl MonteCarloConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed, workers: 1, radius: None }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_radius(mut self, radius: f64) -> Self {
        self.radius = Some(radius);
        self
    }
}

/// Count, mean and sum of squared deviations of a batch.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.n;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if other.n == 0.0 {
            return self;
        }
        if self.n == 0.0 {
            return other;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Self {
            n,
            mean: self.mean + delta * other.n / n,
            m2: self.m2 + other.m2 + delta * delta * self.n * other.n / n,
        }
    }
}

/// Mean of `weight · 1{hit₁} · 1{hit₂}` over sampled pairs; the standard
/// error is the sample standard deviation over `√n`. The reference radius
/// defaults to the larger circumradius about the origin and must cover
/// both bodies.
pub fn montecarlo(
    k1: &Body,
    k2: &Body,
    element: Element,
    density: &ZonalDensity,
    cfg: &MonteCarloConfig,
) -> Result<PairIntegralResult> {
    let d = k1.dim();
    check_pair(k1, k2, d)?;
    if cfg.samples < 2 {
        return Err(Error::Domain("montecarlo needs at least 2 samples".into()));
    }
    if cfg.workers == 0 {
        return Err(Error::Domain("worker count must be positive".into()));
    }
    let needed = k1.enclosing_radius().max(k2.enclosing_radius());
    let radius = cfg.radius.unwrap_or(needed);
    if !(radius >= needed) {
        return Err(Error::Domain(format!(
            "reference radius {radius} does not cover the bodies (needs {needed})"
        )));
    }
    let eval = density.evaluator(d)?;
    let workers = cfg.workers.min(cfg.samples);
    let base = cfg.samples / workers;
    let extra = cfg.samples % workers;
    let parts = (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(w as u64);
            let count = base + usize::from(w < extra);
            let mut acc = Moments::default();
            for _ in 0..count {
                let x = match element {
                    Element::Hyperplanes => {
                        let p = sample_hyperplane_pair(&eval, d, radius, &mut rng)?;
                        let hit = k1.hits_hyperplane_unchecked(&p.u1, p.s1) && k2.hits_hyperplane_unchecked(&p.u2, p.s2);
                        if hit { p.weight } else { 0.0 }
                    }
                    Element::Lines => {
                        let p = sample_line_pair(&eval, d, radius, &mut rng)?;
                        let hit = k1.hits_line_unchecked(&p.u1, &p.y1) && k2.hits_line_unchecked(&p.u2, &p.y2);
                        if hit { p.weight } else { 0.0 }
                    }
                };
                acc.push(x);
            }
            Ok(acc)
        })
        .collect::<Result<Vec<Moments>>>()?;
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let variance = total.m2 / (total.n - 1.0);
    finite(PairIntegralResult {
        stderr: Some((variance / total.n).sqrt()),
        n: Some(cfg.samples),
        seed: Some(cfg.seed),
        ..PairIntegralResult::exact(total.mean, Method::Montecarlo)
    })
}
