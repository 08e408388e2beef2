//! Weak regular partitions, cut distance, reduced graphs and blow-ups.
//!
//! `e(S, T)` sums `w(u, v)` over ordered pairs `u ∈ S`, `v ∈ T`, so an edge
//! with both ends in `S ∩ T` counts twice.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{format_rational, Rational};
use crate::graph::{AnyGraph, Graph, WeightedGraph};

/// Largest vertex count accepted by [`cut_distance_exact`].
pub const EXACT_CUT_CAP: usize = 16;

/// Partition of `0..n` into `K` nonempty parts whose sizes differ by at most one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquitablePartition {
    k: usize,
    assignment: Vec<usize>,
}

impl EquitablePartition {
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let k = assignment.iter().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0usize; k];
        for &a in &assignment {
            sizes[a] += 1;
        }
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::param(format!("part {i} is empty")));
        }
        let (lo, hi) = (sizes.iter().min(), sizes.iter().max());
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if hi - lo > 1 {
                return Err(Error::param(format!("part sizes range from {lo} to {hi}")));
            }
        }
        Ok(EquitablePartition { k, assignment })
    }

    /// Consecutive blocks of sizes `⌈n/k⌉` then `⌊n/k⌋`.
    pub fn contiguous(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::param(format!("cannot split {n} vertices into {k} parts")));
        }
        let (q, r) = (n / k, n % k);
        let mut assignment = Vec::with_capacity(n);
        for part in 0..k {
            let size = q + usize::from(part < r);
            assignment.extend(std::iter::repeat_n(part, size));
        }
        Ok(EquitablePartition { k, assignment })
    }

    pub fn singletons(n: usize) -> Self {
        EquitablePartition {
            k: n,
            assignment: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Vertices of each part in increasing order.
    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &p) in self.assignment.iter().enumerate() {
            parts[p].push(v);
        }
        parts
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &p in &self.assignment {
            sizes[p] += 1;
        }
        sizes
    }

    /// One line per vertex holding its part index.
    pub fn to_text(&self) -> String {
        self.assignment.iter().map(|p| format!("{p}\n")).collect()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut assignment = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            let p = t
                .parse::<usize>()
                .map_err(|_| Error::parse(i + 1, format!("expected a part index, got {t:?}")))?;
            assignment.push(p);
        }
        EquitablePartition::new(assignment)
    }

    fn from_parts(n: usize, parts: &[Vec<usize>]) -> Self {
        let mut assignment = vec![0; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                assignment[v] = i;
            }
        }
        EquitablePartition {
            k: parts.len(),
            assignment,
        }
    }
}

/// Weighted graph on the parts of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGraph {
    graph: WeightedGraph,
}

impl ReducedGraph {
    pub fn new(graph: WeightedGraph) -> Self {
        ReducedGraph { graph }
    }

    pub fn k(&self) -> usize {
        self.graph.n()
    }

    pub fn weight(&self, i: usize, j: usize) -> Rational {
        self.graph.weight(i, j)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn into_graph(self) -> WeightedGraph {
        self.graph
    }
}

/// Cut value with the sets attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutWitness {
    pub value: Rational,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

trait CutNum: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {}
impl<T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T> + Neg<Output = T>> CutNum for T {}

/// `D = L·(Wg − Wh)` as integers, with `L` the least common denominator.
fn scaled_difference(g: &WeightedGraph, h: &WeightedGraph) -> (Vec<Vec<BigInt>>, BigInt) {
    let (a, b) = (g.matrix(), h.matrix());
    let diff: Vec<Vec<Rational>> = a
        .iter()
        .zip(&b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect();
    scale_matrix(&diff)
}

fn scale_matrix(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut lcm = BigInt::one();
    for x in m.iter().flatten() {
        lcm = lcm.lcm(x.denom());
    }
    let scaled = m
        .iter()
        .map(|row| row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
        .collect();
    (scaled, lcm)
}

/// Calls `f` on an `i128` copy of `d` when every cut sum is sure to fit,
/// else on the `BigInt` matrix.
fn with_cut_matrix<R>(
    d: &[Vec<BigInt>],
    f_small: impl FnOnce(&[Vec<i128>]) -> R,
    f_big: impl FnOnce(&[Vec<BigInt>]) -> R,
) -> R {
    let n = d.len().max(1) as u64;
    let headroom = 126 - 2 * (64 - n.leading_zeros() as u64);
    if d.iter().flatten().all(|x| x.bits() <= headroom) {
        let small: Vec<Vec<i128>> = d
            .iter()
            .map(|r| r.iter().map(|x| x.to_i128().expect("checked width")).collect())
            .collect();
        f_small(&small)
    } else {
        f_big(d)
    }
}

fn check_same_n(g: &WeightedGraph, h: &WeightedGraph) -> Result<()> {
    if g.n() != h.n() {
        return Err(Error::Size(format!("graphs have {} and {} vertices", g.n(), h.n())));
    }
    Ok(())
}

/// Best `T` for a fixed column-sum vector and sign: the value and membership.
fn best_side<T: CutNum>(c: &[T], positive: bool) -> (T, Vec<bool>) {
    let mut total = T::zero();
    let mut side = vec![false; c.len()];
    for (v, x) in c.iter().enumerate() {
        let take = if positive { *x > T::zero() } else { *x < T::zero() };
        if take {
            side[v] = true;
            total = total + x.clone();
        }
    }
    if positive {
        (total, side)
    } else {
        (-total, side)
    }
}

fn exact_max<T: CutNum>(d: &[Vec<T>]) -> (T, Vec<bool>, Vec<bool>) {
    let n = d.len();
    let mut c = vec![T::zero(); n];
    let mut s = vec![false; n];
    let mut best = (T::zero(), vec![false; n], vec![false; n]);
    // Gray-code walk: each step toggles one vertex of S
    for step in 1u64..(1u64 << n) {
        let u = step.trailing_zeros() as usize;
        s[u] = !s[u];
        for v in 0..n {
            c[v] = if s[u] {
                c[v].clone() + d[u][v].clone()
            } else {
                c[v].clone() - d[u][v].clone()
            };
        }
        for positive in [true, false] {
            let (val, t) = best_side(&c, positive);
            if val > best.0 {
                best = (val, s.clone(), t);
            }
        }
    }
    best
}

fn members(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// Exact cut distance `max_{S,T} |e_g(S,T) − e_h(S,T)|`.
///
/// For each `S` the best `T` takes every vertex whose column sum has the
/// chosen sign, so only `2^n` sets are visited.
pub fn cut_distance_exact(g: &WeightedGraph, h: &WeightedGraph) -> Result<CutWitness> {
    check_same_n(g, h)?;
    if g.n() > EXACT_CUT_CAP {
        return Err(Error::Size(format!(
            "exact cut distance is limited to {EXACT_CUT_CAP} vertices, got {}",
            g.n()
        )));
    }
    let (d, lcm) = scaled_difference(g, h);
    let (value, s, t) = with_cut_matrix(
        &d,
        |m| {
            let (v, s, t) = exact_max(m);
            (BigInt::from(v), s, t)
        },
        exact_max,
    );
    Ok(CutWitness {
        value: Rational::new(value, lcm),
        s: members(&s),
        t: members(&t),
    })
}

fn column_sums<T: CutNum>(d: &[Vec<T>], rows: &[bool]) -> Vec<T> {
    let n = d.len();
    let mut c = vec![T::zero(); n];
    for (u, row) in d.iter().enumerate() {
        if rows[u] {
            for v in 0..n {
                c[v] = c[v].clone() + row[v].clone();
            }
        }
    }
    c
}

/// Alternating maximization with `effort` restarts. Restart 0 starts from
/// `S = V`; restart `r` from a random `S` drawn from stream `r` of the seed.
/// Only strict improvements replace the incumbent, so the lowest restart
/// wins ties.
fn local_search<T: CutNum>(d: &[Vec<T>], effort: usize, seed: u64) -> (T, Vec<bool>, Vec<bool>) {
    let n = d.len();
    let mut best = (T::zero(), vec![false; n], vec![false; n]);
    for r in 0..effort.max(1) {
        let start: Vec<bool> = if r == 0 {
            vec![true; n]
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            (0..n).map(|_| rng.gen::<bool>()).collect()
        };
        for positive in [true, false] {
            let mut s = start.clone();
            loop {
                // d is symmetric, so row sums over T equal column sums
                let (v1, t) = best_side(&column_sums(d, &s), positive);
                if v1 > best.0 {
                    best = (v1.clone(), s.clone(), t.clone());
                }
                let (v2, s2) = best_side(&column_sums(d, &t), positive);
                if v2 <= v1 {
                    break;
                }
                if v2 > best.0 {
                    best = (v2.clone(), s2.clone(), t);
                }
                s = s2;
            }
        }
    }
    best
}

/// Lower bound on the cut distance by local search; see [`cut_distance_lower_bound_seeded`].
pub fn cut_distance_lower_bound(g: &WeightedGraph, h: &WeightedGraph, effort: usize) -> Result<CutWitness> {
    cut_distance_lower_bound_seeded(g, h, effort, 0)
}

/// Never exceeds [`cut_distance_exact`]. Identical graphs give zero with
/// empty witness sets.
pub fn cut_distance_lower_bound_seeded(
    g: &WeightedGraph,
    h: &WeightedGraph,
    effort: usize,
    seed: u64,
) -> Result<CutWitness> {
    check_same_n(g, h)?;
    let (d, lcm) = scaled_difference(g, h);
    let (value, s, t) = with_cut_matrix(
        &d,
        |m| {
            let (v, s, t) = local_search(m, effort, seed);
            (BigInt::from(v), s, t)
        },
        |m| local_search(m, effort, seed),
    );
    Ok(CutWitness {
        value: Rational::new(value, lcm),
        s: members(&s),
        t: members(&t),
    })
}

/// Ordered-pair edge counts between parts; `e[i][i]` counts each inner edge twice.
fn part_edge_counts(g: &Graph, assignment: &[usize], k: usize) -> Vec<Vec<u64>> {
    let mut e = vec![vec![0u64; k]; k];
    for &(u, v) in g.edges() {
        let (a, b) = (assignment[u], assignment[v]);
        e[a][b] += 1;
        e[b][a] += 1;
    }
    e
}

/// `D = L·(A − M)` where `A` is the adjacency matrix and `M[u][v]` is the
/// density `e(V_i, V_j) / (|V_i||V_j|)` of the parts of `u` and `v`, the
/// diagonal included. `1_Sᵀ D 1_T / L` is the regularity deviation of `(S, T)`.
fn deviation_matrix(g: &Graph, p: &EquitablePartition) -> (Vec<Vec<BigInt>>, BigInt) {
    let k = p.k();
    let e = part_edge_counts(g, p.assignment(), k);
    let sizes = p.sizes();
    let mut lcm = BigInt::one();
    for &a in &sizes {
        for &b in &sizes {
            lcm = lcm.lcm(&BigInt::from(a * b));
        }
    }
    let n = g.n();
    let mut d = vec![vec![BigInt::zero(); n]; n];
    for u in 0..n {
        for v in 0..n {
            let (a, b) = (p.part_of(u), p.part_of(v));
            let model = BigInt::from(e[a][b]) * (&lcm / BigInt::from(sizes[a] * sizes[b]));
            d[u][v] = if g.has_edge(u, v) { &lcm - model } else { -model };
        }
    }
    (d, lcm)
}

/// Exact `max_{S,T} |e_G(S,T) − Σ d(V_i,V_j)|S∩V_i||T∩V_j||` for `n` up to
/// [`EXACT_CUT_CAP`].
pub fn partition_deviation_exact(g: &Graph, p: &EquitablePartition) -> Result<CutWitness> {
    check_partition(g.n(), p)?;
    if g.n() > EXACT_CUT_CAP {
        return Err(Error::Size(format!(
            "exact deviation is limited to {EXACT_CUT_CAP} vertices, got {}",
            g.n()
        )));
    }
    let (d, lcm) = deviation_matrix(g, p);
    let (value, s, t) = with_cut_matrix(
        &d,
        |m| {
            let (v, s, t) = exact_max(m);
            (BigInt::from(v), s, t)
        },
        exact_max,
    );
    Ok(CutWitness {
        value: Rational::new(value, lcm),
        s: members(&s),
        t: members(&t),
    })
}

/// Local-search lower bound on [`partition_deviation_exact`], for any `n`.
pub fn partition_deviation_lower_bound(
    g: &Graph,
    p: &EquitablePartition,
    effort: usize,
    seed: u64,
) -> Result<CutWitness> {
    check_partition(g.n(), p)?;
    let (d, lcm) = deviation_matrix(g, p);
    let (value, s, t) = with_cut_matrix(
        &d,
        |m| {
            let (v, s, t) = local_search(m, effort, seed);
            (BigInt::from(v), s, t)
        },
        |m| local_search(m, effort, seed),
    );
    Ok(CutWitness {
        value: Rational::new(value, lcm),
        s: members(&s),
        t: members(&t),
    })
}

/// Frieze–Kannan index `Σ |V_i||V_j| d(V_i,V_j)² / n²`. Never decreases
/// under refinement.
pub fn partition_index(g: &Graph, p: &EquitablePartition) -> Rational {
    let e = part_edge_counts(g, p.assignment(), p.k());
    let sizes = p.sizes();
    let n2 = BigInt::from(g.n() * g.n());
    let mut total = Rational::zero();
    for i in 0..p.k() {
        for j in 0..p.k() {
            if e[i][j] > 0 {
                let eij = BigInt::from(e[i][j]);
                total += Rational::new(&eij * &eij, BigInt::from(sizes[i] * sizes[j]) * &n2);
            }
        }
    }
    total
}

fn check_partition(n: usize, p: &EquitablePartition) -> Result<()> {
    if p.n() != n {
        return Err(Error::Size(format!(
            "partition covers {} vertices but the graph has {n}",
            p.n()
        )));
    }
    Ok(())
}

/// Knobs for [`weak_regular_partition_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityOptions {
    /// Local-search restarts per violation search.
    pub effort: usize,
    pub seed: u64,
    /// Verify the final certificate exactly when `n` is at most this.
    pub exact_cap: usize,
}

impl Default for RegularityOptions {
    fn default() -> Self {
        RegularityOptions {
            effort: 16,
            seed: 0,
            exact_cap: EXACT_CUT_CAP,
        }
    }
}

/// Serialized evidence for a partition's regularity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityCertificate {
    pub epsilon: String,
    #[serde(rename = "K")]
    pub k: usize,
    /// Largest `|e_G(S,T) − e_{G_P}(S,T)|` found for the final partition.
    pub best_deviation: String,
    #[serde(rename = "witness_S")]
    pub witness_s: Vec<usize>,
    #[serde(rename = "witness_T")]
    pub witness_t: Vec<usize>,
    pub verified_exact: bool,
    pub rounds: usize,
    /// Refinement stopped because the next partition would exceed the part cap.
    pub cap_exceeded: bool,
}

#[derive(Clone, Debug)]
pub struct RegularPartition {
    pub partition: EquitablePartition,
    pub certificate: RegularityCertificate,
    /// Index after each completed round, starting with the one-part partition.
    pub index_history: Vec<Rational>,
    /// Index of the atom refinement in each round, before re-equalizing.
    pub refined_index: Vec<Rational>,
    pub deviation: Rational,
}

/// [`weak_regular_partition_with`] under default options.
pub fn weak_regular_partition(g: &Graph, epsilon: &Rational, k_max: usize) -> Result<RegularPartition> {
    weak_regular_partition_with(g, epsilon, k_max, &RegularityOptions::default())
}

/// Round cap `⌈8/ε²⌉`.
pub fn round_cap(epsilon: &Rational) -> usize {
    let r = (Rational::from_integer(8.into()) / (epsilon * epsilon)).ceil();
    r.to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Iterative refinement: search for `(S, T)` with regularity deviation at
/// least `εn²`, split every part along `S`
/// and `T`, re-equalize, repeat. Stops when the search finds no violation,
/// when the next partition would have more than `k_max` parts, or after
/// [`round_cap`] rounds.
pub fn weak_regular_partition_with(
    g: &Graph,
    epsilon: &Rational,
    k_max: usize,
    opts: &RegularityOptions,
) -> Result<RegularPartition> {
    if !epsilon.is_positive() || *epsilon >= Rational::one() {
        return Err(Error::param("epsilon must lie in (0, 1)"));
    }
    if Rational::from_integer(k_max.into()) * epsilon < Rational::one() {
        return Err(Error::param(format!(
            "part cap {k_max} is below 1/epsilon = {}",
            format_rational(&epsilon.recip())
        )));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::param("graph has no vertices"));
    }
    let threshold = epsilon * Rational::from_integer(BigInt::from(n * n));
    let adj = g.adjacency();
    let mut partition = EquitablePartition::contiguous(n, 1)?;
    let mut index_history = vec![partition_index(g, &partition)];
    let mut refined_index = Vec::new();
    let mut rounds = 0;
    let mut cap_exceeded = false;
    let cap = round_cap(epsilon);
    let mut found = find_violation(g, &partition, opts, 0)?;
    while found.value >= threshold && rounds < cap {
        let atoms = split_atoms(&partition, &found);
        if atoms.len() > k_max {
            cap_exceeded = true;
            break;
        }
        let atom_partition = EquitablePartition::from_parts(n, &atoms);
        refined_index.push(partition_index(g, &atom_partition));
        let parts = equalize(atoms, &adj);
        partition = EquitablePartition::from_parts(n, &parts);
        rounds += 1;
        index_history.push(partition_index(g, &partition));
        found = find_violation(g, &partition, opts, rounds as u64)?;
    }
    let mut verified_exact = false;
    if n <= opts.exact_cap.min(EXACT_CUT_CAP) {
        found = partition_deviation_exact(g, &partition)?;
        verified_exact = true;
    }
    let certificate = RegularityCertificate {
        epsilon: format_rational(epsilon),
        k: partition.k(),
        best_deviation: format_rational(&found.value),
        witness_s: found.s.clone(),
        witness_t: found.t.clone(),
        verified_exact,
        rounds,
        cap_exceeded,
    };
    Ok(RegularPartition {
        partition,
        certificate,
        index_history,
        refined_index,
        deviation: found.value,
    })
}

fn find_violation(g: &Graph, p: &EquitablePartition, opts: &RegularityOptions, round: u64) -> Result<CutWitness> {
    let seed = opts.seed ^ round.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    partition_deviation_lower_bound(g, p, opts.effort, seed)
}

/// Nonempty pieces `P ∩ S ∩ T`, `P ∩ S \ T`, `P ∩ T \ S`, `P \ (S ∪ T)` of
/// every part `P`, in part order.
fn split_atoms(p: &EquitablePartition, w: &CutWitness) -> Vec<Vec<usize>> {
    let n = p.n();
    let mut in_s = vec![false; n];
    let mut in_t = vec![false; n];
    w.s.iter().for_each(|&v| in_s[v] = true);
    w.t.iter().for_each(|&v| in_t[v] = true);
    let mut atoms = Vec::new();
    for part in p.parts() {
        let mut pieces = vec![Vec::new(); 4];
        for v in part {
            let code = match (in_s[v], in_t[v]) {
                (true, true) => 0,
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => 3,
            };
            pieces[code].push(v);
        }
        atoms.extend(pieces.into_iter().filter(|x| !x.is_empty()));
    }
    atoms
}

/// How far `v`'s degree into `part` is from the part's average inner degree,
/// scaled by `|part|`: `|deg_part(v)·|part| − 2·e(part)|`.
fn density_shift(v: usize, part: &[usize], inner: u64, adj: &[Vec<bool>]) -> u64 {
    let deg = part.iter().filter(|&&u| u != v && adj[v][u]).count() as u64;
    (deg * part.len() as u64).abs_diff(2 * inner)
}

fn inner_edges(part: &[usize], adj: &[Vec<bool>]) -> u64 {
    let mut e = 0;
    for (i, &u) in part.iter().enumerate() {
        for &v in &part[i + 1..] {
            e += u64::from(adj[u][v]);
        }
    }
    e
}

/// Makes part sizes differ by at most one, keeping the part count. Surplus
/// vertices leave the parts whose densities they disturb least, and join the
/// deficient part whose density they disturb least; ties go to lower
/// indices.
fn equalize(mut parts: Vec<Vec<usize>>, adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let k = parts.len();
    let n: usize = parts.iter().map(Vec::len).sum();
    let (q, r) = (n / k, n % k);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(parts[i].len()), i));
    let mut target = vec![q; k];
    for &i in order.iter().take(r) {
        target[i] = q + 1;
    }
    let inner: Vec<u64> = parts.iter().map(|p| inner_edges(p, adj)).collect();
    let mut pool = Vec::new();
    for i in 0..k {
        let excess = parts[i].len().saturating_sub(target[i]);
        if excess == 0 {
            continue;
        }
        let mut scored: Vec<(u64, usize)> = parts[i]
            .iter()
            .map(|&v| (density_shift(v, &parts[i], inner[i], adj), v))
            .collect();
        scored.sort_unstable();
        let leaving: Vec<usize> = scored[..excess].iter().map(|&(_, v)| v).collect();
        parts[i].retain(|v| !leaving.contains(v));
        pool.extend(leaving);
    }
    pool.sort_unstable();
    let snapshot = parts.clone();
    for v in pool {
        let dest = (0..k)
            .filter(|&i| parts[i].len() < target[i])
            .min_by_key(|&i| (density_shift(v, &snapshot[i], inner[i], adj), i))
            .expect("sizes add up");
        parts[dest].push(v);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    parts
}

/// `G/P` with weights `e(V_i, V_j) / (|V_i||V_j|)` and zero diagonal.
pub fn reduced_graph(g: &AnyGraph, p: &EquitablePartition) -> Result<ReducedGraph> {
    check_partition(g.n(), p)?;
    let k = p.k();
    let sizes = p.sizes();
    let mut sums = vec![vec![Rational::zero(); k]; k];
    match g {
        AnyGraph::Plain(pg) => {
            let e = part_edge_counts(pg, p.assignment(), k);
            for i in 0..k {
                for j in 0..k {
                    sums[i][j] = Rational::from_integer(e[i][j].into());
                }
            }
        }
        AnyGraph::Weighted(wg) => {
            for ((u, v), w) in wg.entries() {
                let (a, b) = (p.part_of(u), p.part_of(v));
                sums[a][b] += w;
                if a != b {
                    sums[b][a] += w;
                }
            }
        }
    }
    let mut entries = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let w = &sums[i][j] / Rational::from_integer(BigInt::from(sizes[i] * sizes[j]));
            if !w.is_zero() {
                entries.push((i, j, w));
            }
        }
    }
    Ok(ReducedGraph::new(WeightedGraph::new(k, entries)?))
}

/// `G[m]`: vertex `i·m + c` is clone `c` of vertex `i`; clones of distinct
/// vertices inherit their weight, clones of one vertex are not adjacent.
pub fn blow_up_weights(rg: &ReducedGraph, m: usize) -> Result<WeightedGraph> {
    if m == 0 {
        return Err(Error::param("blow-up multiplicity must be at least 1"));
    }
    let mut entries = Vec::new();
    for ((i, j), w) in rg.graph().entries() {
        for a in 0..m {
            for b in 0..m {
                entries.push((i * m + a, j * m + b, w.clone()));
            }
        }
    }
    WeightedGraph::new(rg.k() * m, entries)
}

/// The partition of `G[m]` into clone classes.
pub fn blow_up_partition(k: usize, m: usize) -> Result<EquitablePartition> {
    EquitablePartition::contiguous(k * m, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn single_edge_cut_distance_doubles() {
        let g = WeightedGraph::new(2, [(0, 1, r(1, 1))]).unwrap();
        let h = WeightedGraph::new(2, []).unwrap();
        let w = cut_distance_exact(&g, &h).unwrap();
        assert_eq!(w.value, r(2, 1));
        assert_eq!((w.s, w.t), (vec![0, 1], vec![0, 1]));
        assert_eq!(cut_distance_exact(&g, &g).unwrap().value, r(0, 1));
    }

    #[test]
    fn identical_graphs_give_empty_witness() {
        let g = WeightedGraph::from_graph(&Graph::complete(5));
        let w = cut_distance_lower_bound(&g, &g, 10).unwrap();
        assert_eq!(
            w,
            CutWitness {
                value: r(0, 1),
                s: vec![],
                t: vec![]
            }
        );
    }

    #[test]
    fn exact_cut_rejects_large_inputs() {
        let g = WeightedGraph::from_graph(&Graph::empty(17));
        assert!(matches!(cut_distance_exact(&g, &g), Err(Error::Size(_))));
        let h = WeightedGraph::from_graph(&Graph::empty(3));
        assert!(matches!(cut_distance_exact(&g, &h), Err(Error::Size(_))));
    }

    #[test]
    fn equitable_partition_validation() {
        assert!(EquitablePartition::new(vec![0, 0, 0, 1]).is_err());
        assert!(EquitablePartition::new(vec![0, 2, 2]).is_err());
        let p = EquitablePartition::new(vec![1, 0, 1, 0, 2]).unwrap();
        assert_eq!(p.sizes(), vec![2, 2, 1]);
        assert_eq!(EquitablePartition::parse_text(&p.to_text()).unwrap(), p);
        assert_eq!(EquitablePartition::contiguous(7, 3).unwrap().sizes(), vec![3, 2, 2]);
    }

    #[test]
    fn complete_and_empty_graphs_are_regular_at_once() {
        for g in [Graph::complete(12), Graph::empty(12)] {
            let out = weak_regular_partition(&g, &r(1, 4), 8).unwrap();
            // only the diagonal terms remain, at most n/4
            assert_eq!(out.partition.k(), 1);
            assert!(out.deviation <= r(3, 1));
            assert!(out.certificate.verified_exact);
        }
    }

    #[test]
    fn reduced_graph_of_bipartite_sides() {
        let edges = (0..3).flat_map(|u| (3..6).map(move |v| (u, v)));
        let g = Graph::new(6, edges).unwrap();
        let p = EquitablePartition::new(vec![0, 0, 0, 1, 1, 1]).unwrap();
        let rg = reduced_graph(&g.into(), &p).unwrap();
        assert_eq!(rg.weight(0, 1), r(1, 1));
    }

    #[test]
    fn blow_up_small_cases() {
        let rg = ReducedGraph::new(WeightedGraph::new(2, [(0, 1, r(1, 3))]).unwrap());
        assert_eq!(blow_up_weights(&rg, 1).unwrap(), *rg.graph());
        let b = blow_up_weights(&rg, 2).unwrap();
        assert_eq!(b.n(), 4);
        assert_eq!(b.positive_edges(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(b.weight(1, 3), r(1, 3));
        assert_eq!(b.weight(0, 1), r(0, 1));
    }

    #[test]
    fn parameter_errors() {
        let g = Graph::complete(4);
        assert!(weak_regular_partition(&g, &r(0, 1), 8).is_err());
        assert!(weak_regular_partition(&g, &r(1, 4), 3).is_err());
        assert_eq!(round_cap(&r(1, 4)), 128);
    }
}
