//! Sampling estimate of the rectilinear crossing number from random induced
//! subgraphs, scaled by `n⁴/t⁴`.

use num_bigint::BigInt;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::crossings::{min_rectilinear_crossing, CrossingValue};
use crate::error::{Error, Result};
use crate::geom::Rational;
use crate::graph::{AnyGraph, Graph};
use crate::pipeline::CatalogCache;

/// Largest sample size the exact step supports.
pub const MAX_SAMPLE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub vertices: Vec<usize>,
    /// Exact minimum for the induced subgraph over the catalog.
    pub sample_value: u64,
    /// `sample_value · n⁴ / t⁴`.
    pub scaled: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Estimate {
    pub trials: Vec<Trial>,
    /// Median of the scaled values; the mean of the middle two for an even count.
    pub median: Rational,
}

/// Draws `trials` random `t`-subsets; trial `i` uses stream `i` of `seed`.
pub fn sample_estimate(g: &Graph, t: usize, trials: usize, seed: u64, catalogs: &mut CatalogCache) -> Result<Estimate> {
    let n = g.n();
    if t < 4 || t > n || t > MAX_SAMPLE {
        return Err(Error::param(format!(
            "sample size must satisfy 4 <= t <= min(n, {MAX_SAMPLE}), got t = {t}, n = {n}"
        )));
    }
    if trials == 0 {
        return Err(Error::param("need at least one trial"));
    }
    let cat = catalogs.get(t)?;
    let factor = Rational::new(BigInt::from(n).pow(4), BigInt::from(t).pow(4));
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let mut vertices = index::sample(&mut rng, n, t).into_vec();
        vertices.sort_unstable();
        let h = g.induced(&vertices);
        let sample_value = match min_rectilinear_crossing(&AnyGraph::Plain(h), cat)?.value {
            CrossingValue::Count(c) => c,
            CrossingValue::Weighted(_) => unreachable!("plain graphs yield counts"),
        };
        let scaled = Rational::from_integer(sample_value.into()) * &factor;
        out.push(Trial {
            vertices,
            sample_value,
            scaled,
        });
    }
    let mut sorted: Vec<&Rational> = out.iter().map(|t| &t.scaled).collect();
    sorted.sort();
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 {
        sorted[mid].clone()
    } else {
        (sorted[mid - 1] + sorted[mid]) / Rational::from_integer(2.into())
    };
    Ok(Estimate { trials: out, median })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_sample_is_exact() {
        let mut cache = CatalogCache::default();
        let est = sample_estimate(&Graph::complete(6), 6, 3, 1, &mut cache).unwrap();
        assert!(est.trials.iter().all(|t| t.sample_value == 3));
        assert_eq!(est.median, Rational::from_integer(3.into()));
    }

    #[test]
    fn empty_graph_estimates_zero() {
        let mut cache = CatalogCache::default();
        let est = sample_estimate(&Graph::empty(20), 5, 4, 0, &mut cache).unwrap();
        assert_eq!(est.median, Rational::from_integer(0.into()));
    }

    #[test]
    fn k12_from_six_point_samples() {
        let mut cache = CatalogCache::default();
        let est = sample_estimate(&Graph::complete(12), 6, 2, 0, &mut cache).unwrap();
        assert_eq!(est.median, Rational::from_integer(48.into()));
    }

    #[test]
    fn bad_sample_sizes() {
        let mut cache = CatalogCache::default();
        for t in [3, 9, 13] {
            assert!(matches!(
                sample_estimate(&Graph::complete(12), t, 1, 0, &mut cache),
                Err(Error::Param(_))
            ));
        }
    }
}
