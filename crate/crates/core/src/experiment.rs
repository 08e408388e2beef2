//! Quasi-random trend experiment: pipeline upper bounds for graph families of
//! density `p`, normalized by `p²` times the pipeline's own bound for `K_n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{format_rational, Rational};
use crate::graph::Graph;
use crate::pipeline::{run_pipeline_with, CatalogCache, PipelineConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Gnp {
        p: Rational,
    },
    /// Sizes are the primes `q ≡ 1 (mod 4)`.
    Paley,
    Complete,
    /// A fixed graph; its size list is ignored.
    File {
        name: String,
        graph: Graph,
    },
}

impl Family {
    pub fn name(&self) -> &str {
        match self {
            Family::Gnp { .. } => "gnp",
            Family::Paley => "paley",
            Family::Complete => "complete",
            Family::File { .. } => "file",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub pipeline: PipelineConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub family: String,
    pub n: usize,
    pub p: String,
    pub trial: usize,
    pub upper_bound: Option<u64>,
    pub normalizer: Option<String>,
    pub ratio: Option<String>,
    pub seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub rows: Vec<Row>,
}

pub const CSV_HEADER: &str = "family,n,p,trial,upper_bound,normalizer,ratio,seconds";

impl Report {
    /// Rows as CSV. Failed trials leave the numeric columns empty; `seconds`
    /// is empty unless timings were requested.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.family,
                r.n,
                r.p,
                r.trial,
                r.upper_bound.map(|x| x.to_string()).unwrap_or_default(),
                r.normalizer.clone().unwrap_or_default(),
                r.ratio.clone().unwrap_or_default(),
                r.seconds.map(|s| format!("{s:.3}")).unwrap_or_default(),
            );
        }
        out
    }
}

/// `G(n, p)` with every pair drawn from `rng`.
pub fn gnp(n: usize, p: &Rational, rng: &mut impl Rng) -> Result<Graph> {
    let (num, den) = (p.numer().to_u32(), p.denom().to_u32());
    let (Some(num), Some(den)) = (num, den) else {
        return Err(Error::param("p must have a numerator and denominator below 2^32"));
    };
    if num == 0 || num >= den {
        return Err(Error::param("p must lie in (0, 1)"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_ratio(num, den) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Vertices `0..q`, `u ~ v` when `u − v` is a nonzero square mod `q`.
pub fn paley(q: usize) -> Result<Graph> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(Error::param(format!("Paley graphs need a prime q = 1 mod 4, got {q}")));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    let edges = (0..q)
        .flat_map(|u| (u + 1..q).map(move |v| (u, v)))
        .filter(|&(u, v)| square[v - u]);
    Graph::new(q, edges.collect::<Vec<_>>())
}

fn density(g: &Graph) -> Rational {
    let n = g.n();
    if n < 2 {
        return Rational::zero();
    }
    Rational::new(BigInt::from(g.edge_count()), BigInt::from(n * (n - 1) / 2))
}

/// Seed of trial `trial` at size `n`.
fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | trial as u64);
    rng.gen::<u64>()
}

fn ratio_text(r: &Rational) -> String {
    // fixed decimals keep reports byte-stable
    let scaled = (r * Rational::from_integer(BigInt::from(1_000_000)))
        .round()
        .to_integer();
    let (q, rem) = num_integer::Integer::div_rem(&scaled, &BigInt::from(1_000_000));
    let rem = rem.to_u64().unwrap_or(0);
    format!("{q}.{rem:06}")
}

/// Runs every `(size, trial)` pair. A failing trial is reported in its row
/// and does not stop the batch.
pub fn quasirandom_experiment(spec: &ExperimentSpec, catalogs: &mut CatalogCache) -> Result<Report> {
    if spec.trials == 0 {
        return Err(Error::param("need at least one trial"));
    }
    if let Family::Gnp { p } = &spec.family {
        if *p <= Rational::zero() || *p >= Rational::one() {
            return Err(Error::param("p must lie in (0, 1)"));
        }
    }
    let sizes: Vec<usize> = match &spec.family {
        Family::File { graph, .. } => vec![graph.n()],
        _ => spec.sizes.clone(),
    };
    if sizes.is_empty() {
        return Err(Error::param("no sizes given"));
    }
    let mut normalizers: BTreeMap<usize, Result<u64>> = BTreeMap::new();
    let mut rows = Vec::new();
    for &n in &sizes {
        for trial in 0..spec.trials {
            // per-trial seeds drive graph sampling; the pipeline seed is shared
            // with the normalizing K_n run
            let seed = trial_seed(spec.seed, n, trial);
            let cfg = PipelineConfig {
                seed: spec.seed,
                ..spec.pipeline.clone()
            };
            let clock = Stopwatch::start(spec.pipeline.timings);
            let graph = match &spec.family {
                Family::Gnp { p } => gnp(n, p, &mut ChaCha8Rng::seed_from_u64(seed)),
                Family::Paley => paley(n),
                Family::Complete => Ok(Graph::complete(n)),
                Family::File { graph, .. } => Ok(graph.clone()),
            };
            let p = match (&spec.family, &graph) {
                (Family::Gnp { p }, _) => p.clone(),
                (Family::Paley, _) => Rational::new(1.into(), 2.into()),
                (Family::Complete, _) => Rational::one(),
                (Family::File { .. }, Ok(g)) => density(g),
                (Family::File { .. }, Err(_)) => Rational::zero(),
            };
            let outcome = graph.and_then(|g| {
                let upper = run_pipeline_with(&g, &cfg, catalogs)?.crossing_count;
                let base = normalizers
                    .entry(n)
                    .or_insert_with(|| run_pipeline_with(&Graph::complete(n), &cfg, catalogs).map(|r| r.crossing_count))
                    .clone()?;
                Ok((upper, base))
            });
            let seconds = clock.seconds();
            let mut row = Row {
                family: spec.family.name().to_string(),
                n,
                p: format_rational(&p),
                trial,
                upper_bound: None,
                normalizer: None,
                ratio: None,
                seconds,
                error: None,
            };
            match outcome {
                Ok((upper, base)) => {
                    let norm = &p * &p * Rational::from_integer(base.into());
                    row.upper_bound = Some(upper);
                    row.normalizer = Some(format_rational(&norm));
                    if !norm.is_zero() {
                        row.ratio = Some(ratio_text(&(Rational::from_integer(upper.into()) / norm)));
                    }
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            rows.push(row);
        }
    }
    Ok(Report { rows })
}

struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: Option<std::time::Instant>,
}

impl Stopwatch {
    fn start(enabled: bool) -> Self {
        #[cfg(target_arch = "wasm32")]
        let _ = enabled;
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: enabled.then(std::time::Instant::now),
        }
    }

    fn seconds(&self) -> Option<f64> {
        #[cfg(not(target_arch = "wasm32"))]
        return self.start.map(|s| s.elapsed().as_secs_f64());
        #[cfg(target_arch = "wasm32")]
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paley_graph_is_half_dense_and_regular() {
        let g = paley(13).unwrap();
        assert_eq!(g.edge_count(), 13 * 6 / 2);
        assert_eq!(density(&g), Rational::new(1.into(), 2.into()));
        assert!(paley(7).is_err());
        assert!(paley(21).is_err());
    }

    #[test]
    fn complete_family_has_unit_ratio() {
        let spec = ExperimentSpec {
            family: Family::Complete,
            sizes: vec![12, 20],
            trials: 2,
            seed: 4,
            pipeline: PipelineConfig::default(),
        };
        let report = quasirandom_experiment(&spec, &mut CatalogCache::default()).unwrap();
        assert_eq!(report.rows.len(), 4);
        assert!(report.rows.iter().all(|r| r.ratio.as_deref() == Some("1.000000")));
    }

    #[test]
    fn gnp_rejects_degenerate_density() {
        let spec = ExperimentSpec {
            family: Family::Gnp { p: Rational::zero() },
            sizes: vec![10],
            trials: 1,
            seed: 0,
            pipeline: PipelineConfig::default(),
        };
        assert!(matches!(
            quasirandom_experiment(&spec, &mut CatalogCache::default()),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let spec = ExperimentSpec {
            family: Family::Gnp {
                p: Rational::new(1.into(), 2.into()),
            },
            sizes: vec![10],
            trials: 1,
            seed: 0,
            pipeline: PipelineConfig::default(),
        };
        let csv = quasirandom_experiment(&spec, &mut CatalogCache::default())
            .unwrap()
            .to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1].split(',').count(), 8);
        assert!(lines[1].starts_with("gnp,10,1/2,0,"));
        assert!(lines[1].ends_with(','));
    }

    #[test]
    fn ratio_formatting() {
        assert_eq!(ratio_text(&Rational::new(1.into(), 3.into())), "0.333333");
        assert_eq!(ratio_text(&Rational::new(5.into(), 2.into())), "2.500000");
    }
}
