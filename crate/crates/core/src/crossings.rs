//! Crossing counts of straight-line drawings and exact minimization over an
//! order-type catalog.
//!
//! Whether two segments between drawn points cross depends only on the order
//! type of the point set, so the minimum over all drawings of a `K`-vertex
//! graph is the minimum, over catalog witnesses, of the best vertex-to-point
//! assignment on that witness.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::catalog::OrderTypeCatalog;
use crate::error::{Error, Result};
use crate::geom::{orient_int, Configuration, IntPoint, Rational, TripleIndex};
use crate::graph::{AnyGraph, Graph};

/// A graph together with one point per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    graph: AnyGraph,
    placement: Configuration,
    signs: Vec<i8>,
}

impl Drawing {
    /// Validates that there is one point per vertex and that the placement
    /// is in general position.
    pub fn new(graph: impl Into<AnyGraph>, placement: Configuration) -> Result<Self> {
        let graph = graph.into();
        if graph.n() != placement.len() {
            return Err(Error::Size(format!(
                "graph has {} vertices but {} points were given",
                graph.n(),
                placement.len()
            )));
        }
        placement.check_general_position()?;
        let signs = placement.orientation_signs();
        Ok(Drawing {
            graph,
            placement,
            signs,
        })
    }

    pub fn graph(&self) -> &AnyGraph {
        &self.graph
    }

    pub fn placement(&self) -> &Configuration {
        &self.placement
    }

    /// Whether the drawn segments `ab` and `cd` properly cross.
    pub fn edges_cross(&self, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let idx = TripleIndex::new(self.placement.len());
        segments_cross_in(&idx, &self.signs, a, b, c, d)
    }
}

#[inline]
fn segments_cross_in(idx: &TripleIndex, signs: &[i8], a: usize, b: usize, c: usize, d: usize) -> bool {
    idx.signed(signs, a, b, c) != idx.signed(signs, a, b, d) && idx.signed(signs, c, d, a) != idx.signed(signs, c, d, b)
}

/// Crossing total: a plain count for unweighted graphs, a sum of weight
/// products for weighted ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingValue {
    Count(u64),
    Weighted(Rational),
}

impl CrossingValue {
    pub fn to_rational(&self) -> Rational {
        match self {
            CrossingValue::Count(c) => Rational::from_integer((*c).into()),
            CrossingValue::Weighted(r) => r.clone(),
        }
    }
}

impl fmt::Display for CrossingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingValue::Count(c) => write!(f, "{c}"),
            CrossingValue::Weighted(r) => f.write_str(&crate::geom::format_rational(r)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub value: CrossingValue,
    pub pairs: Vec<((usize, usize), (usize, usize))>,
}

/// Counts unordered pairs of drawn edges whose open segments meet. Edges
/// sharing an endpoint never count. Zero-weight edges of a weighted graph are
/// not drawn.
pub fn count_crossings(d: &Drawing) -> CrossingReport {
    let edges = d.graph.drawn_edges();
    let idx = TripleIndex::new(d.placement.len());
    let mut pairs = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[i + 1..] {
            if a == c || a == e || b == c || b == e {
                continue;
            }
            if segments_cross_in(&idx, &d.signs, a, b, c, e) {
                pairs.push(((a, b), (c, e)));
            }
        }
    }
    let value = match &d.graph {
        AnyGraph::Plain(_) => CrossingValue::Count(pairs.len() as u64),
        AnyGraph::Weighted(g) => CrossingValue::Weighted(
            pairs
                .iter()
                .map(|&((a, b), (c, e))| g.weight(a, b) * g.weight(c, e))
                .fold(Rational::zero(), |acc, x| acc + x),
        ),
    };
    CrossingReport { value, pairs }
}

/// Exact minimum over a catalog and the drawing that realizes it.
#[derive(Clone, Debug)]
pub struct ExactMinimum {
    pub value: CrossingValue,
    pub drawing: Drawing,
    /// Position of the winning witness in catalog key order.
    pub entry: usize,
}

/// Segment pairs `(a, b, c, d)` of a witness where `ab` crosses `cd`; one per
/// 4-subset in convex position.
pub(crate) fn witness_crossings(pts: &[IntPoint]) -> Vec<[usize; 4]> {
    let n = pts.len();
    let mut out = Vec::new();
    let cross = |a: usize, b: usize, c: usize, d: usize| {
        orient_int(pts[a], pts[b], pts[c]) != orient_int(pts[a], pts[b], pts[d])
            && orient_int(pts[c], pts[d], pts[a]) != orient_int(pts[c], pts[d], pts[b])
    };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if cross(a, b, c, d) {
                        out.push([a, b, c, d]);
                    } else if cross(a, c, b, d) {
                        out.push([a, c, b, d]);
                    } else if cross(a, d, b, c) {
                        out.push([a, d, b, c]);
                    }
                }
            }
        }
    }
    out
}

trait Cost: Clone + Ord + Zero + Add<Output = Self> + Mul<Output = Self> + From<u64> {}
impl<T: Clone + Ord + Zero + Add<Output = T> + Mul<Output = T> + From<u64>> Cost for T {}

/// Vertices with identical weights to all other vertices are interchangeable;
/// the search assigns points to these classes rather than to vertices.
#[derive(Clone, Debug)]
struct TwinClasses {
    members: Vec<Vec<usize>>,
}

impl TwinClasses {
    fn of<T: PartialEq>(w: &[Vec<T>]) -> Self {
        let n = w.len();
        let mut members: Vec<Vec<usize>> = Vec::new();
        'outer: for v in 0..n {
            for class in members.iter_mut() {
                let u = class[0];
                if (0..n).filter(|&x| x != u && x != v).all(|x| w[u][x] == w[v][x]) {
                    class.push(v);
                    continue 'outer;
                }
            }
            members.push(vec![v]);
        }
        TwinClasses { members }
    }

    fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// Vertex for each point given the class assigned to each point.
    fn placement(&self, point_class: &[usize]) -> Vec<usize> {
        let mut next = vec![0; self.members.len()];
        point_class
            .iter()
            .map(|&c| {
                let v = self.members[c][next[c]];
                next[c] += 1;
                v
            })
            .collect()
    }
}

struct ClassProblem<T> {
    cw: Vec<Vec<T>>,
    sizes: Vec<usize>,
}

impl<T: Cost> ClassProblem<T> {
    fn new(w: &[Vec<T>], classes: &TwinClasses) -> Self {
        let k = classes.members.len();
        let mut cw = vec![vec![T::zero(); k]; k];
        for a in 0..k {
            for b in 0..k {
                let u = classes.members[a][0];
                let v = if a == b {
                    match classes.members[a].get(1) {
                        Some(&v) => v,
                        None => continue,
                    }
                } else {
                    classes.members[b][0]
                };
                cw[a][b] = w[u][v].clone();
            }
        }
        ClassProblem {
            cw,
            sizes: classes.sizes(),
        }
    }

    fn min_pair_weight(&self) -> T {
        let k = self.sizes.len();
        let mut best: Option<T> = None;
        for a in 0..k {
            for b in a..k {
                if a == b && self.sizes[a] < 2 {
                    continue;
                }
                let w = self.cw[a][b].clone();
                if best.as_ref().is_none_or(|m| w < *m) {
                    best = Some(w);
                }
            }
        }
        best.unwrap_or_else(T::zero)
    }
}

struct Incumbent<T> {
    cost: Option<T>,
    entry: usize,
    point_class: Vec<usize>,
}

struct WitnessSearch<'a, T> {
    problem: &'a ClassProblem<T>,
    by_last: Vec<Vec<[usize; 4]>>,
    /// Lower bound on the cost of quads completed after each depth.
    tail_bound: Vec<T>,
    remaining: Vec<usize>,
    point_class: Vec<usize>,
}

impl<T: Cost> WitnessSearch<'_, T> {
    fn run(&mut self, depth: usize, cost: T, entry: usize, best: &mut Incumbent<T>) {
        let n = self.point_class.len();
        if depth == n {
            if best.cost.as_ref().is_none_or(|b| cost < *b) {
                best.cost = Some(cost);
                best.entry = entry;
                best.point_class.clone_from(&self.point_class);
            }
            return;
        }
        for c in 0..self.remaining.len() {
            if self.remaining[c] == 0 {
                continue;
            }
            self.remaining[c] -= 1;
            self.point_class[depth] = c;
            let mut next = cost.clone();
            for q in &self.by_last[depth] {
                let pc = &self.point_class;
                next = next + self.problem.cw[pc[q[0]]][pc[q[1]]].clone() * self.problem.cw[pc[q[2]]][pc[q[3]]].clone();
            }
            let bound = next.clone() + self.tail_bound[depth].clone();
            if best.cost.as_ref().is_none_or(|b| bound < *b) {
                self.run(depth + 1, next, entry, best);
            }
            self.point_class[depth] = usize::MAX;
            self.remaining[c] += 1;
        }
    }
}

fn minimize<T: Cost>(w: &[Vec<T>], cat: &OrderTypeCatalog) -> (T, usize, Vec<usize>) {
    let n = w.len();
    let classes = TwinClasses::of(w);
    let problem = ClassProblem::new(w, &classes);
    let min_w = problem.min_pair_weight();
    let min_prod = min_w.clone() * min_w;
    let mut best = Incumbent {
        cost: None,
        entry: 0,
        point_class: vec![0; n],
    };
    for (entry, witness) in cat.witnesses().enumerate() {
        let quads = witness_crossings(witness);
        let mut by_last = vec![Vec::new(); n];
        for q in quads {
            let last = *q.iter().max().expect("four points");
            by_last[last].push(q);
        }
        let mut tail_bound = vec![T::zero(); n];
        let mut later = 0u64;
        for d in (0..n).rev() {
            tail_bound[d] = min_prod.clone() * T::from(later);
            later += by_last[d].len() as u64;
        }
        let mut search = WitnessSearch {
            problem: &problem,
            by_last,
            tail_bound,
            remaining: problem.sizes.clone(),
            point_class: vec![usize::MAX; n],
        };
        search.run(0, T::zero(), entry, &mut best);
    }
    let vertex_of_point = classes.placement(&best.point_class);
    (best.cost.expect("nonempty catalog"), best.entry, vertex_of_point)
}

/// Integer weight matrix `w · D` with `D` the least common denominator.
fn scaled_weights(g: &AnyGraph) -> (Vec<Vec<BigUint>>, BigInt) {
    let n = g.n();
    let m: Vec<Vec<Rational>> = match g {
        AnyGraph::Plain(p) => p
            .adjacency()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|b| if b { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect(),
        AnyGraph::Weighted(w) => w.matrix(),
    };
    let mut lcm = BigInt::one();
    for row in &m {
        for x in row {
            lcm = lcm.lcm(x.denom());
        }
    }
    let scaled = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let x = &m[u][v];
                    (x.numer() * (&lcm / x.denom()))
                        .to_biguint()
                        .expect("weights are nonnegative")
                })
                .collect()
        })
        .collect();
    (scaled, lcm)
}

/// Exact minimum crossing value of `g` over every drawing whose point set
/// has an order type in `cat`. This equals the rectilinear crossing number
/// when the catalog is complete for `g.n()`.
pub fn min_rectilinear_crossing(g: &AnyGraph, cat: &OrderTypeCatalog) -> Result<ExactMinimum> {
    let n = g.n();
    if cat.n() != n {
        return Err(Error::Size(format!(
            "graph has {n} vertices but the catalog holds {}-point order types",
            cat.n()
        )));
    }
    if cat.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    let (w, denom) = scaled_weights(g);
    let small = w.iter().flatten().all(|x| x.bits() <= 56);
    let (cost, entry, vertex_of_point) = if small {
        let w128: Vec<Vec<u128>> = w
            .iter()
            .map(|r| r.iter().map(|x| x.to_u128().expect("fits")).collect())
            .collect();
        let (c, e, p) = minimize(&w128, cat);
        (BigUint::from(c), e, p)
    } else {
        minimize(&w, cat)
    };
    let witness = cat.witnesses().nth(entry).expect("entry index in range");
    let mut placement = vec![IntPoint::new(0, 0); n];
    for (point, &v) in vertex_of_point.iter().enumerate() {
        placement[v] = witness[point];
    }
    let drawing = Drawing::new(g.clone(), Configuration::from_int_points(&placement))?;
    let value = match g {
        AnyGraph::Plain(_) => CrossingValue::Count(cost.to_u64().expect("count fits in u64")),
        AnyGraph::Weighted(_) => CrossingValue::Weighted(Rational::new(BigInt::from(cost), &denom * &denom)),
    };
    debug_assert_eq!(count_crossings(&drawing).value, value);
    Ok(ExactMinimum { value, drawing, entry })
}

/// Default cap on `k^m` for [`min_k_colored_crossing`].
pub const DEFAULT_COLORING_CAP: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct KColoredMinimum {
    pub value: u64,
    pub drawing: Drawing,
    /// Color of each edge, in the graph's edge order.
    pub coloring: Vec<usize>,
}

/// Minimum number of monochromatic crossing pairs over catalog drawings and
/// `k`-colorings of the edges.
pub fn min_k_colored_crossing(g: &Graph, k: usize, cat: &OrderTypeCatalog, cap: u64) -> Result<KColoredMinimum> {
    if k == 0 {
        return Err(Error::param("need at least one color"));
    }
    let m = g.edge_count();
    if k == 1 {
        let exact = min_rectilinear_crossing(&AnyGraph::Plain(g.clone()), cat)?;
        let CrossingValue::Count(value) = exact.value else {
            unreachable!("plain graphs yield counts")
        };
        return Ok(KColoredMinimum {
            value,
            drawing: exact.drawing,
            coloring: vec![0; m],
        });
    }
    let colorings = (k as u64).checked_pow(m as u32);
    if colorings.is_none_or(|c| c > cap) {
        return Err(Error::Budget(format!("{k}^{m} colorings exceed the cap of {cap}")));
    }
    if cat.n() != g.n() {
        return Err(Error::Size(format!(
            "graph has {} vertices but the catalog holds {}-point order types",
            g.n(),
            cat.n()
        )));
    }
    if cat.is_empty() {
        return Err(Error::EmptyCatalog);
    }

    let n = g.n();
    let adj = g.adjacency();
    let classes = TwinClasses::of(&adj);
    let mut edge_index = vec![vec![usize::MAX; n]; n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        edge_index[u][v] = i;
        edge_index[v][u] = i;
    }

    let mut best: Option<(u64, usize, Vec<usize>, Vec<usize>)> = None;
    for (entry, witness) in cat.witnesses().enumerate() {
        let quads = witness_crossings(witness);
        let mut remaining = classes.sizes();
        let mut point_class = vec![0; n];
        let mut stop = false;
        for_each_class_assignment(&mut remaining, &mut point_class, 0, &mut |pc| {
            let vertex = classes.placement(pc);
            let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); m];
            for q in &quads {
                let e1 = edge_index[vertex[q[0]]][vertex[q[1]]];
                let e2 = edge_index[vertex[q[2]]][vertex[q[3]]];
                if e1 != usize::MAX && e2 != usize::MAX {
                    conflicts[e1.max(e2)].push(e1.min(e2));
                }
            }
            let bound = best.as_ref().map_or(u64::MAX, |b| b.0);
            if let Some((value, coloring)) = best_coloring(&conflicts, k, bound) {
                best = Some((value, entry, vertex.clone(), coloring));
                if value == 0 {
                    stop = true;
                }
            }
            !stop
        });
        if stop {
            break;
        }
    }
    let (value, entry, vertex_of_point, coloring) = best.expect("nonempty catalog");
    let witness = cat.witnesses().nth(entry).expect("entry index in range");
    let mut placement = vec![IntPoint::new(0, 0); n];
    for (point, &v) in vertex_of_point.iter().enumerate() {
        placement[v] = witness[point];
    }
    let drawing = Drawing::new(g.clone(), Configuration::from_int_points(&placement))?;
    Ok(KColoredMinimum {
        value,
        drawing,
        coloring,
    })
}

/// Calls `f` with every assignment of points to twin classes respecting
/// class sizes; stops early when `f` returns false.
fn for_each_class_assignment(
    remaining: &mut [usize],
    point_class: &mut [usize],
    depth: usize,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth == point_class.len() {
        return f(point_class);
    }
    for c in 0..remaining.len() {
        if remaining[c] == 0 {
            continue;
        }
        remaining[c] -= 1;
        point_class[depth] = c;
        let go_on = for_each_class_assignment(remaining, point_class, depth + 1, f);
        remaining[c] += 1;
        if !go_on {
            return false;
        }
    }
    true
}

/// Best coloring strictly below `bound`, if any. `conflicts[e]` lists the
/// lower-indexed edges crossing `e`. Colors are assigned in restricted-growth
/// order so permutations of the palette are visited once.
fn best_coloring(conflicts: &[Vec<usize>], k: usize, bound: u64) -> Option<(u64, Vec<usize>)> {
    struct State<'a> {
        conflicts: &'a [Vec<usize>],
        k: usize,
        colors: Vec<usize>,
        best: u64,
        best_colors: Option<Vec<usize>>,
    }
    fn go(s: &mut State<'_>, e: usize, used: usize, cost: u64) {
        if cost >= s.best {
            return;
        }
        if e == s.colors.len() {
            s.best = cost;
            s.best_colors = Some(s.colors.clone());
            return;
        }
        for c in 0..(used + 1).min(s.k) {
            let add = s.conflicts[e].iter().filter(|&&f| s.colors[f] == c).count() as u64;
            s.colors[e] = c;
            go(s, e + 1, used.max(c + 1), cost + add);
            if s.best == 0 {
                return;
            }
        }
    }
    let mut s = State {
        conflicts,
        k,
        colors: vec![0; conflicts.len()],
        best: bound,
        best_colors: None,
    };
    go(&mut s, 0, 0, 0);
    s.best_colors.map(|c| (s.best, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::enumerate_grid_order_types;
    use crate::graph::WeightedGraph;

    fn cfg(pts: &[(i64, i64)]) -> Configuration {
        Configuration::from_int_points(&pts.iter().map(|&(x, y)| IntPoint::new(x, y)).collect::<Vec<_>>())
    }

    #[test]
    fn k4_crossings() {
        let convex = Drawing::new(Graph::complete(4), cfg(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap();
        let r = count_crossings(&convex);
        assert_eq!(r.value, CrossingValue::Count(1));
        assert_eq!(r.pairs, vec![((0, 2), (1, 3))]);
        let inner = Drawing::new(Graph::complete(4), cfg(&[(0, 0), (4, 0), (0, 4), (1, 1)])).unwrap();
        assert_eq!(count_crossings(&inner).value, CrossingValue::Count(0));
    }

    #[test]
    fn drawing_rejects_degenerate_placements() {
        let err = Drawing::new(Graph::complete(3), cfg(&[(0, 0), (1, 1), (2, 2)])).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
        let err = Drawing::new(Graph::complete(3), cfg(&[(0, 0), (1, 1)])).unwrap_err();
        assert!(matches!(err, Error::Size(_)));
    }

    #[test]
    fn weighted_count_multiplies_weights() {
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        let g = WeightedGraph::new(4, [(0, 2, half.clone()), (1, 3, third.clone()), (0, 1, half.clone())]).unwrap();
        let d = Drawing::new(g, cfg(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap();
        assert_eq!(count_crossings(&d).value, CrossingValue::Weighted(half * third));
    }

    #[test]
    fn zero_weight_edges_are_not_drawn() {
        let g = WeightedGraph::new(4, [(0, 2, Rational::zero()), (1, 3, Rational::one())]).unwrap();
        let d = Drawing::new(g, cfg(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap();
        let r = count_crossings(&d);
        assert!(r.pairs.is_empty());
        assert_eq!(r.value, CrossingValue::Weighted(Rational::zero()));
    }

    #[test]
    fn exact_minimum_errors() {
        let cat4 = enumerate_grid_order_types(4, 3, 1 << 20).unwrap();
        let g5 = AnyGraph::Plain(Graph::complete(5));
        assert!(matches!(min_rectilinear_crossing(&g5, &cat4), Err(Error::Size(_))));
        let empty = OrderTypeCatalog::new(5);
        assert!(matches!(
            min_rectilinear_crossing(&g5, &empty),
            Err(Error::EmptyCatalog)
        ));
    }

    #[test]
    fn weighted_k4_avoids_the_crossing() {
        let half = Rational::new(1.into(), 2.into());
        let g = WeightedGraph::new(
            4,
            (0..4)
                .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
                .map(|(u, v)| (u, v, half.clone())),
        )
        .unwrap();
        let cat = enumerate_grid_order_types(4, 3, 1 << 20).unwrap();
        let min = min_rectilinear_crossing(&AnyGraph::Weighted(g), &cat).unwrap();
        assert_eq!(min.value, CrossingValue::Weighted(Rational::zero()));
    }

    #[test]
    fn coloring_budget_is_enforced() {
        let cat = enumerate_grid_order_types(5, 4, 1 << 20).unwrap();
        let err = min_k_colored_crossing(&Graph::complete(5), 3, &cat, 1000).unwrap_err();
        assert!(matches!(err, Error::Budget(_)));
        assert!(matches!(
            min_k_colored_crossing(&Graph::complete(5), 0, &cat, 1000),
            Err(Error::Param(_))
        ));
    }

    #[test]
    fn restricted_growth_coloring_finds_bipartition() {
        // crossing graph is a 4-cycle of edges: 2-colorable with no conflicts
        let conflicts = vec![vec![], vec![0], vec![1], vec![0, 2]];
        assert_eq!(best_coloring(&conflicts, 2, u64::MAX).unwrap().0, 0);
        // a triangle of crossings needs one conflict with two colors
        let tri = vec![vec![], vec![0], vec![0, 1]];
        assert_eq!(best_coloring(&tri, 2, u64::MAX).unwrap().0, 1);
        assert_eq!(best_coloring(&tri, 3, u64::MAX).unwrap().0, 0);
        assert!(best_coloring(&tri, 2, 1).is_none());
    }
}
