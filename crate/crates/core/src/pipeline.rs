//! The end-to-end drawing algorithm: partition the graph, solve the reduced
//! graph exactly over the order-type catalog, and replace each vertex of the
//! small drawing by a tight cluster holding its part.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};

use crate::catalog::{bundled_catalog, cluster_points, enumerate_grid_order_types_seeded, OrderTypeCatalog};
use crate::crossings::{count_crossings, min_rectilinear_crossing, CrossingValue, Drawing};
use crate::error::{Error, Result};
use crate::geom::{format_rational, min_point_line_distance, Configuration, ExactPoint, IntPoint, Rational};
use crate::graph::{AnyGraph, Graph};
use crate::regularity::{
    reduced_graph, weak_regular_partition_with, EquitablePartition, ReducedGraph, RegularityCertificate,
    RegularityOptions,
};

/// Largest part count the catalog can serve.
pub const MAX_PARTS: usize = 10;

/// Where order-type catalogs come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogSource {
    /// Shipped catalogs for 3 to 8 points, standard enumeration beyond.
    Bundled,
    Grid {
        side: u32,
        budget: u64,
        seed: u64,
    },
}

/// Catalogs by point count, built on first use.
#[derive(Clone, Debug)]
pub struct CatalogCache {
    source: CatalogSource,
    built: BTreeMap<usize, OrderTypeCatalog>,
}

impl CatalogCache {
    pub fn new(source: CatalogSource) -> Self {
        CatalogCache {
            source,
            built: BTreeMap::new(),
        }
    }

    /// Uses `cat` for its point count instead of building one.
    pub fn insert(&mut self, cat: OrderTypeCatalog) {
        self.built.insert(cat.n(), cat);
    }

    pub fn get(&mut self, n: usize) -> Result<&OrderTypeCatalog> {
        if !self.built.contains_key(&n) {
            let cat = match &self.source {
                CatalogSource::Bundled => match bundled_catalog(n) {
                    Some(c) => c,
                    None => crate::catalog::standard_catalog(n)?,
                },
                CatalogSource::Grid { side, budget, seed } => {
                    enumerate_grid_order_types_seeded(n, *side, *budget, *seed)?
                }
            };
            self.built.insert(n, cat);
        }
        Ok(&self.built[&n])
    }
}

impl Default for CatalogCache {
    fn default() -> Self {
        CatalogCache::new(CatalogSource::Bundled)
    }
}

/// How the vertex set is split before the exact step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionMode {
    /// Weak regular partition, then equal chunks if it has too few parts.
    Regular,
    /// Each vertex its own part; the exact step then solves `G` itself.
    PerVertex,
    /// A caller-supplied partition.
    Given(EquitablePartition),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub epsilon: Rational,
    pub k_max: usize,
    pub seed: u64,
    /// Local-search restarts per regularity round.
    pub effort: usize,
    pub mode: PartitionMode,
    /// Record wall-clock timings in the diagnostics. Off by default so
    /// results are reproducible byte for byte.
    pub timings: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            epsilon: Rational::new(1.into(), 4.into()),
            k_max: 8,
            seed: 0,
            effort: RegularityOptions::default().effort,
            mode: PartitionMode::Regular,
            timings: false,
        }
    }
}

impl PipelineConfig {
    fn validate(&self) -> Result<()> {
        if self.epsilon <= Rational::zero() || self.epsilon >= Rational::from_integer(1.into()) {
            return Err(Error::param("epsilon must lie in (0, 1)"));
        }
        if !(2..=MAX_PARTS).contains(&self.k_max) {
            return Err(Error::param(format!("K_max must be in 2..={MAX_PARTS}")));
        }
        Ok(())
    }

    /// Smallest part count the regular mode settles for:
    /// `max(3, ⌊1/ε⌋ + 1)`, capped by `n` and `K_max`.
    pub fn min_parts(&self, n: usize) -> usize {
        let inv = self
            .epsilon
            .recip()
            .floor()
            .to_integer()
            .to_usize()
            .unwrap_or(usize::MAX);
        3.max(inv.saturating_add(1)).min(self.k_max).min(n)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub partition_ms: f64,
    pub exact_ms: f64,
    pub placement_ms: f64,
    pub count_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub certificate: Option<RegularityCertificate>,
    /// Part count of the regular partition before any re-chunking.
    pub regular_parts: Option<usize>,
    /// `(n/K)⁴·small_value + n⁴/(2K)`.
    pub bound: String,
    pub bound_holds: bool,
    pub catalog_entries: usize,
    pub catalog_entry: usize,
    /// Exact optimum of `G` when `n` is small enough to compute it.
    pub exact_reference: Option<u64>,
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    pub drawing: Drawing,
    pub crossing_count: u64,
    pub partition: EquitablePartition,
    pub reduced: ReducedGraph,
    pub small_drawing: Drawing,
    pub small_value: Rational,
    pub epsilon: Rational,
    pub diagnostics: Diagnostics,
}

impl PipelineResult {
    pub fn k(&self) -> usize {
        self.partition.k()
    }

    /// The result JSON document.
    pub fn to_json(&self) -> Value {
        let points: Vec<Value> = self
            .drawing
            .placement()
            .points()
            .iter()
            .map(|p| {
                json!([
                    big_number(p.x.numer()),
                    big_number(p.x.denom()),
                    big_number(p.y.numer()),
                    big_number(p.y.denom())
                ])
            })
            .collect();
        let edges: Vec<Value> = self
            .drawing
            .graph()
            .drawn_edges()
            .iter()
            .map(|&(u, v)| json!([u, v]))
            .collect();
        json!({
            "n": self.partition.n(),
            "K": self.k(),
            "epsilon": format_rational(&self.epsilon),
            "crossing_count": self.crossing_count,
            "small_value": format_rational(&self.small_value),
            "partition": self.partition.assignment(),
            "points": points,
            "edges": edges,
            "diagnostics": self.diagnostics,
        })
    }
}

/// A JSON number of any size.
pub fn big_number(x: &BigInt) -> Value {
    let n: Number = x.to_string().parse().expect("integers are valid JSON numbers");
    Value::Number(n)
}

/// [`place_clusters_seeded`] with seed 0.
pub fn place_clusters(small: &Configuration, partition: &EquitablePartition, n: usize) -> Result<Configuration> {
    place_clusters_seeded(small, partition, n, 0)
}

/// Puts the vertices of part `i` on a small convex arc around point `i` of
/// `small`. The arc radius is at most `δ/20`, where `δ²` is
/// [`min_point_line_distance`] of `small`, and small enough that every
/// triple of points from three different parts has the orientation of the
/// corresponding centers, so any four parts have same-type transversals.
pub fn place_clusters_seeded(
    small: &Configuration,
    partition: &EquitablePartition,
    n: usize,
    seed: u64,
) -> Result<Configuration> {
    let k = small.len();
    if k < 3 {
        return Err(Error::param("need at least three parts"));
    }
    if partition.k() != k || partition.n() != n {
        return Err(Error::Size(format!(
            "partition has {} parts over {} vertices, expected {k} over {n}",
            partition.k(),
            partition.n()
        )));
    }
    small.check_general_position()?;
    let delta2 = min_point_line_distance(small)?;
    // integer centers: multiply through by the common denominator
    let lcm = common_denominator(small);
    let centers: Vec<IntPoint> = small
        .integer_scaled()
        .iter()
        .map(|(x, y)| Ok(IntPoint::new(small_int(x)?, small_int(y)?)))
        .collect::<Result<_>>()?;
    let delta2_int = &delta2 * Rational::from_integer(&lcm * &lcm);
    let sizes = partition.sizes();
    let (pts, scale) = cluster_points(&centers, &sizes, seed, |scale, radius| {
        // (radius/scale)² ≤ δ²/400 in the integer frame
        let lhs = Rational::from_integer(BigInt::from(400) * radius * radius);
        lhs <= &delta2_int * Rational::from_integer(BigInt::from(scale) * scale)
    })?;
    let denom = BigInt::from(scale) * &lcm;
    let mut next = vec![0usize; k];
    let mut offsets = vec![0usize; k];
    for i in 1..k {
        offsets[i] = offsets[i - 1] + sizes[i - 1];
    }
    let points = (0..n)
        .map(|v| {
            let part = partition.part_of(v);
            let p = pts[offsets[part] + next[part]];
            next[part] += 1;
            ExactPoint::new(
                Rational::new(p.x.into(), denom.clone()),
                Rational::new(p.y.into(), denom.clone()),
            )
        })
        .collect();
    Ok(Configuration::new(points))
}

fn common_denominator(c: &Configuration) -> BigInt {
    use num_integer::Integer;
    c.points()
        .iter()
        .fold(BigInt::from(1), |acc, p| acc.lcm(p.x.denom()).lcm(p.y.denom()))
}

fn small_int(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .filter(|v| v.unsigned_abs() < 1 << 20)
        .ok_or_else(|| Error::Size("small drawing coordinates are too large to cluster".into()))
}

/// Equal consecutive chunks of the vertices listed part by part, so each
/// chunk mostly stays inside one part of `p`.
fn rechunk(p: &EquitablePartition, k: usize) -> Result<EquitablePartition> {
    let n = p.n();
    let order: Vec<usize> = p.parts().concat();
    let chunks = EquitablePartition::contiguous(n, k)?;
    let mut assignment = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        assignment[v] = chunks.part_of(pos);
    }
    EquitablePartition::new(assignment)
}

struct Clock {
    #[cfg_attr(target_arch = "wasm32", allow(dead_code))]
    enabled: bool,
    #[cfg(not(target_arch = "wasm32"))]
    start: Option<std::time::Instant>,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Clock {
            enabled,
            #[cfg(not(target_arch = "wasm32"))]
            start: None,
        }
    }

    fn restart(&mut self) {
        #[cfg(not(target_arch = "wasm32"))]
        if self.enabled {
            self.start = Some(std::time::Instant::now());
        }
    }

    fn lap(&mut self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        if let Some(s) = self.start {
            let ms = s.elapsed().as_secs_f64() * 1000.0;
            self.restart();
            return ms;
        }
        0.0
    }
}

/// [`run_pipeline_with`] over the bundled catalogs.
pub fn run_pipeline(g: &Graph, cfg: &PipelineConfig) -> Result<PipelineResult> {
    run_pipeline_with(g, cfg, &mut CatalogCache::default())
}

pub fn run_pipeline_with(g: &Graph, cfg: &PipelineConfig, catalogs: &mut CatalogCache) -> Result<PipelineResult> {
    cfg.validate()?;
    let n = g.n();
    if n < 3 {
        return Err(Error::param("the pipeline needs at least three vertices"));
    }
    let mut clock = Clock::new(cfg.timings);
    let mut timings = Timings::default();
    clock.restart();

    let mut certificate = None;
    let mut regular_parts = None;
    let partition = match &cfg.mode {
        PartitionMode::PerVertex => {
            if n > MAX_PARTS {
                return Err(Error::param(format!("per-vertex parts need n <= {MAX_PARTS}, got {n}")));
            }
            EquitablePartition::singletons(n)
        }
        PartitionMode::Given(p) => {
            if p.n() != n || p.k() < 3 || p.k() > MAX_PARTS {
                return Err(Error::param(format!(
                    "given partition must cover {n} vertices with 3..={MAX_PARTS} parts"
                )));
            }
            p.clone()
        }
        PartitionMode::Regular => {
            let opts = RegularityOptions {
                effort: cfg.effort,
                seed: cfg.seed,
                ..RegularityOptions::default()
            };
            let reg = weak_regular_partition_with(g, &cfg.epsilon, cfg.k_max, &opts)?;
            regular_parts = Some(reg.partition.k());
            certificate = Some(reg.certificate);
            let want = cfg.min_parts(n);
            if reg.partition.k() < want {
                rechunk(&reg.partition, want)?
            } else {
                reg.partition
            }
        }
    };
    timings.partition_ms = clock.lap();

    let k = partition.k();
    let reduced = reduced_graph(&AnyGraph::Plain(g.clone()), &partition)?;
    let (catalog_entries, exact) = {
        let cat = catalogs.get(k)?;
        (
            cat.len(),
            min_rectilinear_crossing(&AnyGraph::Weighted(reduced.graph().clone()), cat)?,
        )
    };
    let small_value = exact.value.to_rational();
    timings.exact_ms = clock.lap();

    let placement = place_clusters_seeded(exact.drawing.placement(), &partition, n, cfg.seed)?;
    timings.placement_ms = clock.lap();

    let drawing = Drawing::new(g.clone(), placement)?;
    let crossing_count = match count_crossings(&drawing).value {
        CrossingValue::Count(c) => c,
        CrossingValue::Weighted(_) => unreachable!("plain graphs yield counts"),
    };
    timings.count_ms = clock.lap();

    let n_r = Rational::from_integer(BigInt::from(n));
    let k_r = Rational::from_integer(BigInt::from(k));
    let ratio = &n_r / &k_r;
    let n4 = &n_r * &n_r * &n_r * &n_r;
    let bound = &ratio * &ratio * &ratio * &ratio * &small_value + &n4 / (Rational::from_integer(2.into()) * &k_r);
    let bound_holds = Rational::from_integer(crossing_count.into()) <= bound;

    let exact_reference = if n <= 7 && k != n {
        let cat = catalogs.get(n)?;
        match min_rectilinear_crossing(&AnyGraph::Plain(g.clone()), cat)?.value {
            CrossingValue::Count(c) => Some(c),
            CrossingValue::Weighted(_) => None,
        }
    } else if k == n {
        small_value.to_integer().to_u64()
    } else {
        None
    };

    let diagnostics = Diagnostics {
        certificate,
        regular_parts,
        bound: format_rational(&bound),
        bound_holds,
        catalog_entries,
        catalog_entry: exact.entry,
        exact_reference,
        timings: cfg.timings.then_some(timings),
    };
    Ok(PipelineResult {
        drawing,
        crossing_count,
        partition,
        reduced,
        small_drawing: exact.drawing,
        small_value,
        epsilon: cfg.epsilon.clone(),
        diagnostics,
    })
}
