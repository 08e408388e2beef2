//! Plain and edge-weighted graphs, and their text format.
//!
//! Text format: a header line `n m`, then `m` lines `u v` or `u v w` with
//! 0-based vertex indices and `w` a rational weight in `[0, 1]`. Blank lines
//! and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geom::{format_rational, parse_rational, Rational};

/// A simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, normalizing each edge to `(min, max)` and sorting.
    /// Loops, duplicates and out-of-range indices are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            out.push(check_pair(n, u, v)?);
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::param(format!("duplicate edge {} {}", w[0].0, w[0].1)));
        }
        Ok(Graph { n, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Dense symmetric 0/1 adjacency matrix.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// Subgraph induced by `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
            .collect();
        edges.sort_unstable();
        Graph {
            n: vertices.len(),
            edges,
        }
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<(usize, usize)> {
    if u >= n || v >= n {
        return Err(Error::param(format!("edge {u} {v} out of range for n={n}")));
    }
    if u == v {
        return Err(Error::param(format!("loop at vertex {u}")));
    }
    Ok((u.min(v), u.max(v)))
}

/// A graph with symmetric edge weights in `[0, 1]`; absent pairs weigh zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    n: usize,
    weights: BTreeMap<(usize, usize), Rational>,
}

impl WeightedGraph {
    pub fn new(n: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (u, v, w) in entries {
            let key = check_pair(n, u, v)?;
            check_weight(&w)?;
            if weights.insert(key, w).is_some() {
                return Err(Error::param(format!("duplicate edge {} {}", key.0, key.1)));
            }
        }
        Ok(WeightedGraph { n, weights })
    }

    pub fn from_graph(g: &Graph) -> Self {
        WeightedGraph {
            n: g.n,
            weights: g.edges.iter().map(|&e| (e, Rational::one())).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, u: usize, v: usize) -> Rational {
        if u == v {
            return Rational::zero();
        }
        self.weights
            .get(&(u.min(v), u.max(v)))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stored entries, including explicit zeros, in sorted pair order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.weights.iter().map(|(&k, w)| (k, w))
    }

    /// Pairs with strictly positive weight; these are the edges that get drawn.
    pub fn positive_edges(&self) -> Vec<(usize, usize)> {
        self.weights
            .iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(&k, _)| k)
            .collect()
    }

    /// Dense symmetric weight matrix with zero diagonal.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.n]; self.n];
        for (&(u, v), w) in &self.weights {
            m[u][v] = w.clone();
            m[v][u] = w.clone();
        }
        m
    }

    /// Builds from a dense matrix, reading the upper triangle.
    pub fn from_matrix(m: &[Vec<Rational>]) -> Result<Self> {
        let n = m.len();
        let entries = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !m[u][v].is_zero())
            .map(|(u, v)| (u, v, m[u][v].clone()));
        WeightedGraph::new(n, entries)
    }

    /// True when every weight is 0 or 1.
    pub fn is_unweighted(&self) -> bool {
        self.weights.values().all(|w| w.is_zero() || w.is_one())
    }
}

fn check_weight(w: &Rational) -> Result<()> {
    if *w < Rational::zero() || *w > Rational::one() {
        return Err(Error::param(format!("weight {} outside [0, 1]", format_rational(w))));
    }
    Ok(())
}

/// Either kind of graph, as accepted by the drawing and crossing operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnyGraph {
    Plain(Graph),
    Weighted(WeightedGraph),
}

impl AnyGraph {
    pub fn n(&self) -> usize {
        match self {
            AnyGraph::Plain(g) => g.n(),
            AnyGraph::Weighted(g) => g.n(),
        }
    }

    /// Edges that appear in a drawing.
    pub fn drawn_edges(&self) -> Vec<(usize, usize)> {
        match self {
            AnyGraph::Plain(g) => g.edges().to_vec(),
            AnyGraph::Weighted(g) => g.positive_edges(),
        }
    }

    pub fn weight(&self, u: usize, v: usize) -> Rational {
        match self {
            AnyGraph::Plain(g) => {
                if g.has_edge(u, v) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
            AnyGraph::Weighted(g) => g.weight(u, v),
        }
    }

    pub fn is_weighted(&self) -> bool {
        matches!(self, AnyGraph::Weighted(_))
    }

    pub fn to_weighted(&self) -> WeightedGraph {
        match self {
            AnyGraph::Plain(g) => WeightedGraph::from_graph(g),
            AnyGraph::Weighted(g) => g.clone(),
        }
    }
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Plain(g)
    }
}

impl From<WeightedGraph> for AnyGraph {
    fn from(g: WeightedGraph) -> Self {
        AnyGraph::Weighted(g)
    }
}

/// Parses the graph text format. A graph with any explicit weight is
/// returned as weighted.
pub fn parse_graph(text: &str) -> Result<AnyGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header `n m`"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(Error::parse(hline, "header must be `n m`"));
    }
    let n: usize = nums[0].parse().map_err(|_| Error::parse(hline, "bad vertex count"))?;
    let m: usize = nums[1].parse().map_err(|_| Error::parse(hline, "bad edge count"))?;

    let mut entries: Vec<(usize, usize, Option<Rational>)> = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::parse(lineno, "expected `u v` or `u v w`"));
        }
        let u: usize = fields[0]
            .parse()
            .map_err(|_| Error::parse(lineno, "bad vertex index"))?;
        let v: usize = fields[1]
            .parse()
            .map_err(|_| Error::parse(lineno, "bad vertex index"))?;
        if u >= n || v >= n {
            return Err(Error::parse(lineno, format!("vertex index out of range for n={n}")));
        }
        if u == v {
            return Err(Error::parse(lineno, format!("loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(lineno, format!("duplicate edge {u} {v}")));
        }
        let w = match fields.get(2) {
            Some(s) => {
                let w = parse_rational(s).map_err(|_| Error::parse(lineno, "bad weight"))?;
                check_weight(&w).map_err(|e| Error::parse(lineno, e.to_string()))?;
                Some(w)
            }
            None => None,
        };
        entries.push((u, v, w));
    }
    if entries.len() != m {
        return Err(Error::parse(
            hline,
            format!("header announces {m} edges, found {}", entries.len()),
        ));
    }
    if entries.iter().any(|e| e.2.is_some()) {
        let g = WeightedGraph::new(
            n,
            entries
                .into_iter()
                .map(|(u, v, w)| (u, v, w.unwrap_or_else(Rational::one))),
        )?;
        Ok(AnyGraph::Weighted(g))
    } else {
        Ok(AnyGraph::Plain(Graph::new(
            n,
            entries.into_iter().map(|(u, v, _)| (u, v)),
        )?))
    }
}

/// Inverse of [`parse_graph`].
pub fn format_graph(g: &AnyGraph) -> String {
    let mut out = String::new();
    match g {
        AnyGraph::Plain(g) => {
            let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
            for &(u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        AnyGraph::Weighted(g) => {
            let _ = writeln!(out, "{} {}", g.n(), g.weights.len());
            for (&(u, v), w) in &g.weights {
                let _ = writeln!(out, "{u} {v} {}", format_rational(w));
            }
        }
    }
    out
}
