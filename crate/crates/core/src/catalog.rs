//! Catalogs of realizable order types for small point counts.
//!
//! A catalog maps each canonical order-type signature to one witness point
//! set with small integer coordinates. Catalogs come from exhaustive or
//! sampled enumeration of lattice subsets, from raw point-set databases, or
//! from the native binary format written by [`OrderTypeCatalog::save`].

use std::collections::BTreeMap;

use num_integer::Roots;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{canonicalize, choose3, order_type_int, orient_int, IntPoint, OrderTypeSignature};

/// Seed used for sampled enumeration unless the caller supplies one.
pub const DEFAULT_SAMPLING_SEED: u64 = 0x0DE5_C0DE;

const MAGIC: &[u8; 4] = b"RXOT";
const VERSION: u16 = 1;
const HEADER_LEN: usize = 12;

/// How a catalog was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Empty,
    Exhaustive { grid_side: u32 },
    Sampled { grid_side: u32, budget: u64, seed: u64 },
    Ingested { records: usize },
    Loaded,
    Merged,
}

#[derive(Clone, Debug)]
pub struct OrderTypeCatalog {
    n: usize,
    entries: BTreeMap<OrderTypeSignature, Vec<IntPoint>>,
    provenance: Provenance,
    tested: u64,
}

impl PartialEq for OrderTypeCatalog {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for OrderTypeCatalog {}

impl OrderTypeCatalog {
    pub fn new(n: usize) -> Self {
        OrderTypeCatalog {
            n,
            entries: BTreeMap::new(),
            provenance: Provenance::Empty,
            tested: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Number of candidate configurations examined while building.
    pub fn tested(&self) -> u64 {
        self.tested
    }

    /// Entries in canonical-key order.
    pub fn entries(&self) -> impl Iterator<Item = (&OrderTypeSignature, &[IntPoint])> {
        self.entries.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &[IntPoint]> {
        self.entries.values().map(Vec::as_slice)
    }

    pub fn get(&self, key: &OrderTypeSignature) -> Option<&[IntPoint]> {
        self.entries.get(key).map(Vec::as_slice)
    }

    pub fn keys(&self) -> impl Iterator<Item = &OrderTypeSignature> {
        self.entries.keys()
    }

    /// Adds a witness after validating general position. Returns whether the
    /// order type was new. When the key exists, the smaller witness is kept
    /// so that merging is independent of insertion order.
    pub fn insert(&mut self, witness: Vec<IntPoint>) -> Result<bool> {
        if witness.len() != self.n {
            return Err(Error::Size(format!(
                "witness has {} points, catalog holds {}",
                witness.len(),
                self.n
            )));
        }
        check_distinct(&witness)?;
        let key = canonicalize(&order_type_int(&witness)?)?;
        Ok(self.insert_keyed(key, witness))
    }

    fn insert_keyed(&mut self, key: OrderTypeSignature, witness: Vec<IntPoint>) -> bool {
        match self.entries.get_mut(&key) {
            Some(existing) => {
                if witness_order(&witness) < witness_order(existing) {
                    *existing = witness;
                }
                false
            }
            None => {
                self.entries.insert(key, witness);
                true
            }
        }
    }

    /// Union of two catalogs over the same point count.
    pub fn merge(&mut self, other: OrderTypeCatalog) -> Result<()> {
        if other.n != self.n {
            return Err(Error::Size("cannot merge catalogs of different n".into()));
        }
        for (k, w) in other.entries {
            self.insert_keyed(k, w);
        }
        self.tested += other.tested;
        self.provenance = Provenance::Merged;
        Ok(())
    }

    /// Checks that every witness is in general position and realizes its key.
    pub fn verify(&self) -> Result<()> {
        for (key, w) in &self.entries {
            check_distinct(w)?;
            let actual = canonicalize(&order_type_int(w)?)?;
            if &actual != key {
                return Err(Error::Format("witness does not realize its key".into()));
            }
        }
        Ok(())
    }

    /// Native binary form: header (magic, version, n, entry count), then per
    /// entry the packed signature followed by `2n` signed 32-bit little-endian
    /// coordinates.
    pub fn save(&self) -> Result<Vec<u8>> {
        let sig_bytes = choose3(self.n).div_ceil(8);
        let mut out = Vec::with_capacity(HEADER_LEN + self.len() * (sig_bytes + 8 * self.n));
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        let n16 = u16::try_from(self.n).map_err(|_| Error::Size("n too large".into()))?;
        out.extend_from_slice(&n16.to_le_bytes());
        out.extend_from_slice(&(self.len() as u32).to_le_bytes());
        for (key, w) in &self.entries {
            out.extend_from_slice(&key.to_packed());
            for p in w {
                for c in [p.x, p.y] {
                    let c = i32::try_from(c).map_err(|_| Error::Format("witness coordinate exceeds 32 bits".into()))?;
                    out.extend_from_slice(&c.to_le_bytes());
                }
            }
        }
        Ok(out)
    }

    pub fn load(blob: &[u8]) -> Result<Self> {
        if blob.len() < HEADER_LEN || &blob[..4] != MAGIC {
            return Err(Error::Format("not an order-type catalog".into()));
        }
        let version = u16::from_le_bytes([blob[4], blob[5]]);
        if version != VERSION {
            return Err(Error::Format(format!("unsupported catalog version {version}")));
        }
        let n = u16::from_le_bytes([blob[6], blob[7]]) as usize;
        let count = u32::from_le_bytes([blob[8], blob[9], blob[10], blob[11]]) as usize;
        let sig_bytes = choose3(n).div_ceil(8);
        let record = sig_bytes + 8 * n;
        if blob.len() != HEADER_LEN + count * record {
            return Err(Error::Format(format!(
                "catalog of {count} entries for n={n} should be {} bytes, got {}",
                HEADER_LEN + count * record,
                blob.len()
            )));
        }
        let mut cat = OrderTypeCatalog::new(n);
        for rec in blob[HEADER_LEN..].chunks_exact(record) {
            let key = OrderTypeSignature::from_packed(n, &rec[..sig_bytes])?;
            let witness: Vec<IntPoint> = rec[sig_bytes..]
                .chunks_exact(8)
                .map(|c| {
                    IntPoint::new(
                        i32::from_le_bytes([c[0], c[1], c[2], c[3]]) as i64,
                        i32::from_le_bytes([c[4], c[5], c[6], c[7]]) as i64,
                    )
                })
                .collect();
            if cat.entries.insert(key, witness).is_some() {
                return Err(Error::Format("duplicate catalog key".into()));
            }
        }
        cat.verify()?;
        cat.provenance = Provenance::Loaded;
        Ok(cat)
    }
}

fn witness_order(w: &[IntPoint]) -> (i64, &[IntPoint]) {
    let extent = w.iter().map(|p| p.x.abs().max(p.y.abs())).max().unwrap_or(0);
    (extent, w)
}

fn check_distinct(w: &[IntPoint]) -> Result<()> {
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] == w[j] {
                return Err(Error::degenerate(format!("points {i} and {j} coincide")));
            }
        }
    }
    Ok(())
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// One witness per canonical order type found among general-position
/// `n`-subsets of the `grid_side × grid_side` lattice. Exhaustive when the
/// number of subsets fits in `budget`, otherwise `budget` seeded random draws.
pub fn enumerate_grid_order_types(n: usize, grid_side: u32, budget: u64) -> Result<OrderTypeCatalog> {
    enumerate_grid_order_types_seeded(n, grid_side, budget, DEFAULT_SAMPLING_SEED)
}

pub fn enumerate_grid_order_types_seeded(n: usize, grid_side: u32, budget: u64, seed: u64) -> Result<OrderTypeCatalog> {
    if !(3..=10).contains(&n) {
        return Err(Error::param(format!("n must be in 3..=10, got {n}")));
    }
    if grid_side < 2 {
        return Err(Error::param("grid side must be at least 2"));
    }
    let cells: Vec<IntPoint> = (0..grid_side as i64)
        .flat_map(|y| (0..grid_side as i64).map(move |x| IntPoint::new(x, y)))
        .collect();
    let subsets = binomial(cells.len() as u64, n as u64);
    let mut cat = OrderTypeCatalog::new(n);
    if subsets.is_some_and(|s| s <= budget) {
        let mut chosen = Vec::with_capacity(n);
        exhaustive(&cells, n, 0, &mut chosen, &mut cat);
        cat.provenance = Provenance::Exhaustive { grid_side };
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts = Vec::with_capacity(n);
        for _ in 0..budget {
            pts.clear();
            let mut picks = index::sample(&mut rng, cells.len(), n).into_vec();
            picks.sort_unstable();
            pts.extend(picks.iter().map(|&i| cells[i]));
            cat.tested += 1;
            if let Ok(sig) = order_type_int(&pts) {
                let key = canonicalize(&sig).expect("well-formed signature");
                cat.insert_keyed(key, pts.clone());
            }
        }
        cat.provenance = Provenance::Sampled {
            grid_side,
            budget,
            seed,
        };
    }
    Ok(cat)
}

/// Catalogs shipped with the library, built once at [`standard_grid_params`]
/// (sizes 3 to 8).
pub fn bundled_catalog(n: usize) -> Option<OrderTypeCatalog> {
    let blob: &[u8] = match n {
        3 => include_bytes!("../data/catalog_n3.bin"),
        4 => include_bytes!("../data/catalog_n4.bin"),
        5 => include_bytes!("../data/catalog_n5.bin"),
        6 => include_bytes!("../data/catalog_n6.bin"),
        7 => include_bytes!("../data/catalog_n7.bin"),
        8 => include_bytes!("../data/catalog_n8.bin"),
        _ => return None,
    };
    Some(OrderTypeCatalog::load(blob).expect("bundled catalogs are valid"))
}

/// Grid side and draw budget at which the entry count has stopped growing:
/// exhaustive on the 5×5 grid up to five points, sampled on larger grids
/// beyond. Sizes 3 to 7 reach the known totals 1, 2, 3, 16, 135; for 8 and
/// more points the catalog is a large but incomplete sample.
pub fn standard_grid_params(n: usize) -> Result<(u32, u64)> {
    match n {
        3..=5 => Ok((5, 1 << 20)),
        6 => Ok((16, 500_000)),
        7 => Ok((16, 5_000_000)),
        8 => Ok((32, 5_000_000)),
        9 | 10 => Ok((64, 5_000_000)),
        _ => Err(Error::param(format!("n must be in 3..=10, got {n}"))),
    }
}

/// [`enumerate_grid_order_types`] at [`standard_grid_params`].
pub fn standard_catalog(n: usize) -> Result<OrderTypeCatalog> {
    let (side, budget) = standard_grid_params(n)?;
    enumerate_grid_order_types(n, side, budget)
}

fn exhaustive(cells: &[IntPoint], n: usize, start: usize, chosen: &mut Vec<IntPoint>, cat: &mut OrderTypeCatalog) {
    if chosen.len() == n {
        // Translates of a subset share its order type; keep only those
        // touching both axes (the first point already lies on row 0).
        if chosen.iter().all(|p| p.x != 0) {
            return;
        }
        cat.tested += 1;
        let sig = order_type_int(chosen).expect("collinear subsets are pruned");
        let key = canonicalize(&sig).expect("well-formed signature");
        cat.insert_keyed(key, chosen.clone());
        return;
    }
    let remaining = n - chosen.len();
    for idx in start..=cells.len() - remaining {
        let c = cells[idx];
        if chosen.is_empty() && c.y != 0 {
            break;
        }
        let collinear =
            (0..chosen.len()).any(|i| (i + 1..chosen.len()).any(|j| orient_int(chosen[i], chosen[j], c) == 0));
        if collinear {
            continue;
        }
        chosen.push(c);
        exhaustive(cells, n, idx + 1, chosen, cat);
        chosen.pop();
    }
}

/// Parses a raw point-set database: consecutive `n`-point records with
/// unsigned coordinates, one byte each for `n <= 8`, two bytes little-endian
/// for `n` of 9 or 10, no header.
pub fn ingest_database(n: usize, bytes: &[u8]) -> Result<OrderTypeCatalog> {
    if !(3..=10).contains(&n) {
        return Err(Error::param(format!("n must be in 3..=10, got {n}")));
    }
    let width = if n <= 8 { 1 } else { 2 };
    let record = n * 2 * width;
    if bytes.len() % record != 0 {
        return Err(Error::Format(format!(
            "database length {} is not a multiple of the {record}-byte record size",
            bytes.len()
        )));
    }
    let mut cat = OrderTypeCatalog::new(n);
    for (r, rec) in bytes.chunks_exact(record).enumerate() {
        let coord = |i: usize| -> i64 {
            if width == 1 {
                rec[i] as i64
            } else {
                u16::from_le_bytes([rec[2 * i], rec[2 * i + 1]]) as i64
            }
        };
        let pts: Vec<IntPoint> = (0..n).map(|i| IntPoint::new(coord(2 * i), coord(2 * i + 1))).collect();
        cat.tested += 1;
        cat.insert(pts).map_err(|e| match e {
            Error::Degenerate(msg) => Error::Degenerate(format!("record {r}: {msg}")),
            other => other,
        })?;
    }
    cat.provenance = Provenance::Ingested {
        records: bytes.len() / record,
    };
    Ok(cat)
}

/// Integer blow-up of a witness: each point becomes a cluster of `m` points
/// on a small sheared lattice parabola, with the base configuration scaled up
/// until clusters of distinct base points have same-type transversals. Shears
/// are redrawn from a fixed seed until the whole set is in general position.
pub fn blow_up_witness(base: &[IntPoint], m: usize) -> Result<Vec<IntPoint>> {
    order_type_int(base)?;
    check_distinct(base)?;
    if m == 0 {
        return Err(Error::param("multiplicity must be positive"));
    }
    let sizes = vec![m; base.len()];
    cluster_points(base, &sizes, DEFAULT_SAMPLING_SEED, |_, _| true).map(|(pts, _)| pts)
}

/// Replaces each center by a cluster of `sizes[i]` integer points on a small
/// sheared parabola, after scaling the centers by a power of two. The scale
/// is the least one (per attempt) at which moving centers by the cluster
/// radius cannot change any orientation and `accept(scale, radius)` holds.
/// Attempts are drawn from `seed`; returns the points and the scale.
pub(crate) fn cluster_points(
    centers: &[IntPoint],
    sizes: &[usize],
    seed: u64,
    accept: impl Fn(i64, i64) -> bool,
) -> Result<(Vec<IntPoint>, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..256 {
        let clusters: Vec<Vec<(i64, i64)>> = sizes
            .iter()
            .map(|&size| {
                let (a, b, c, d) = loop {
                    let t: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
                    if t[0] * t[3] - t[1] * t[2] != 0 {
                        break (t[0], t[1], t[2], t[3]);
                    }
                };
                let (e, f) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                (0..size as i64)
                    .map(|j| (e + a * j + b * j * j, f + c * j + d * j * j))
                    .collect()
            })
            .collect();
        let radius = clusters
            .iter()
            .flatten()
            .map(|&(x, y)| (x * x + y * y).sqrt() + 1)
            .max()
            .unwrap_or(1);
        let mut scale: i64 = 1 << (attempt / 32);
        let scaled = loop {
            let scaled: Vec<IntPoint> = centers
                .iter()
                .map(|p| IntPoint::new(p.x * scale, p.y * scale))
                .collect();
            if orientation_safe(&scaled, radius) && accept(scale, radius) {
                break scaled;
            }
            scale = scale
                .checked_mul(2)
                .filter(|s| *s < 1 << 40)
                .ok_or_else(|| Error::degenerate("cluster scale overflow"))?;
        };
        let pts: Vec<IntPoint> = scaled
            .iter()
            .zip(&clusters)
            .flat_map(|(c, offs)| offs.iter().map(move |&(dx, dy)| IntPoint::new(c.x + dx, c.y + dy)))
            .collect();
        if order_type_int(&pts).is_ok() && check_distinct(&pts).is_ok() {
            return Ok((pts, scale));
        }
    }
    Err(Error::degenerate("could not place clusters in general position"))
}

/// Whether moving each center by at most `radius` (Euclidean) preserves
/// every triple orientation: the determinant changes by at most
/// `2r(|b-a| + |c-a|) + 4r²`.
pub(crate) fn orientation_safe(centers: &[IntPoint], radius: i64) -> bool {
    let k = centers.len();
    let r = radius as i128;
    let ceil_len = |a: IntPoint, b: IntPoint| -> i128 {
        let d2 = (b.x - a.x) as i128 * (b.x - a.x) as i128 + (b.y - a.y) as i128 * (b.y - a.y) as i128;
        let s = d2.sqrt();
        if s * s == d2 {
            s
        } else {
            s + 1
        }
    };
    for i in 0..k {
        for j in 0..k {
            for l in j + 1..k {
                if i == j || i == l {
                    continue;
                }
                let (a, b, c) = (centers[i], centers[j], centers[l]);
                let det = ((b.x - a.x) as i128 * (c.y - a.y) as i128 - (b.y - a.y) as i128 * (c.x - a.x) as i128).abs();
                let slack = 2 * r * (ceil_len(a, b) + ceil_len(a, c)) + 4 * r * r;
                if det <= slack {
                    return false;
                }
            }
        }
    }
    true
}
