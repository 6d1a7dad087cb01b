//! Tverberg partition graphs: construction, statistics and export.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::geometry::PointConfig;
use crate::partition::{enumerate_r_partitions, stirling2, Partition};
use crate::scalar::Scalar;
use crate::tverberg::common_point;

/// Default ceiling on the number of enumerated partitions.
pub const DEFAULT_MAX_PARTITIONS: u64 = 5_000_000;

/// Partitions handed to the worker pool at a time.
const CHUNK: usize = 2048;

/// Vertices are Tverberg partitions in enumeration order; edges join
/// partitions one element move apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TverbergGraph {
    pub r: usize,
    pub n: usize,
    pub dim: usize,
    /// Scalar realization of the source configuration (`abstract` when none).
    pub scalar: String,
    /// Exact coordinates of the source configuration.
    pub points: Vec<Vec<String>>,
    pub vertices: Vec<Partition>,
    /// Sorted neighbor indices.
    pub adjacency: Vec<Vec<usize>>,
    /// Component id per vertex, numbered by first vertex.
    pub component: Vec<usize>,
}

/// Fails with [`Error::TooManyPartitions`] when `S(n, r)` exceeds `cap`.
pub fn check_partition_cap(n: usize, r: usize, cap: u64) -> Result<()> {
    let count = stirling2(n, r);
    if count.to_u64().is_none_or(|c| c > cap) {
        return Err(Error::TooManyPartitions {
            count: count.to_string(),
            cap,
        });
    }
    Ok(())
}

/// Applies `f` to every `r`-partition in parallel chunks and hands the
/// results to `sink` in enumeration order.
pub fn for_each_partition<T, F, G>(n: usize, r: usize, cap: u64, f: F, mut sink: G) -> Result<()>
where
    T: Send,
    F: Fn(&Partition) -> T + Sync,
    G: FnMut(Partition, T),
{
    check_partition_cap(n, r, cap)?;
    let mut iter = enumerate_r_partitions(n, r)?;
    loop {
        let chunk: Vec<Partition> = iter.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(());
        }
        let results: Vec<T> = chunk.par_iter().map(&f).collect();
        for (p, t) in chunk.into_iter().zip(results) {
            sink(p, t);
        }
    }
}

/// Every `r`-partition accepted by `keep`, in enumeration order.
pub fn filter_partitions<F>(n: usize, r: usize, cap: u64, keep: F) -> Result<Vec<Partition>>
where
    F: Fn(&Partition) -> bool + Sync,
{
    let mut out = Vec::new();
    for_each_partition(n, r, cap, keep, |p, ok| {
        if ok {
            out.push(p);
        }
    })?;
    Ok(out)
}

impl TverbergGraph {
    /// Connects vertices reachable by one element move. Every move target is
    /// looked up among the vertices, so no predicate is re-evaluated.
    fn from_vertices(
        r: usize,
        n: usize,
        dim: usize,
        scalar: String,
        points: Vec<Vec<String>>,
        vertices: Vec<Partition>,
    ) -> Self {
        let index: HashMap<&Partition, usize> = vertices.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let adjacency: Vec<Vec<usize>> = vertices
            .par_iter()
            .map(|p| {
                let mut nbrs: Vec<usize> = p.neighbors().iter().filter_map(|q| index.get(q).copied()).collect();
                nbrs.sort_unstable();
                nbrs.dedup();
                nbrs
            })
            .collect();
        let component = components(&adjacency);
        TverbergGraph {
            r,
            n,
            dim,
            scalar,
            points,
            vertices,
            adjacency,
            component,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn component_count(&self) -> usize {
        self.component.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// BFS distances from `source`; unreachable vertices get `None`.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// A shortest path between two vertices, if connected.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.vertices.len()];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &v in &self.adjacency[u] {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

fn components(adjacency: &[Vec<usize>]) -> Vec<usize> {
    let mut comp = vec![usize::MAX; adjacency.len()];
    let mut next = 0;
    for s in 0..adjacency.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in &adjacency[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Builds the Tverberg `r`-partition graph with the default enumeration cap.
pub fn build_graph<S: Scalar>(config: &PointConfig<S>, r: usize) -> Result<TverbergGraph> {
    build_graph_capped(config, r, DEFAULT_MAX_PARTITIONS)
}

pub fn build_graph_capped<S: Scalar>(config: &PointConfig<S>, r: usize, cap: u64) -> Result<TverbergGraph> {
    let n = config.len();
    if r < 2 || n < r {
        return Err(Error::InvalidArguments(format!("need 2 <= r <= n, got n={n}, r={r}")));
    }
    let vertices = filter_partitions(n, r, cap, |p| common_point(config, &p.parts()).is_some())?;
    let kind = config.scalar_kind();
    let points = config
        .points()
        .iter()
        .map(|p| p.iter().map(|x| x.to_exact_string_in(kind)).collect())
        .collect();
    Ok(TverbergGraph::from_vertices(
        r,
        n,
        config.dim(),
        kind.to_string(),
        points,
        vertices,
    ))
}

/// The partition graph on all `r`-partitions of `n` elements.
pub fn build_abstract_graph(n: usize, r: usize) -> Result<TverbergGraph> {
    check_partition_cap(n, r, DEFAULT_MAX_PARTITIONS)?;
    let vertices: Vec<Partition> = enumerate_r_partitions(n, r)?.collect();
    Ok(TverbergGraph::from_vertices(r, n, 0, "abstract".into(), Vec::new(), vertices))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub min_degree: Option<usize>,
    pub max_degree: Option<usize>,
    pub components: usize,
    pub largest_component: usize,
    /// `None` for the empty graph.
    pub diameter: Option<usize>,
    pub clique_number: usize,
}

pub fn graph_stats(g: &TverbergGraph) -> GraphStats {
    let mut histogram = BTreeMap::new();
    for v in 0..g.vertex_count() {
        *histogram.entry(g.degree(v)).or_insert(0) += 1;
    }
    let mut sizes = vec![0usize; g.component_count()];
    for &c in &g.component {
        sizes[c] += 1;
    }
    // Largest component, lowest id on ties.
    let largest = sizes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(c, _)| c);
    let diameter = largest.map(|c| {
        let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.component[v] == c).collect();
        members
            .par_iter()
            .map(|&s| g.distances_from(s).into_iter().flatten().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    });
    GraphStats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        min_degree: histogram.keys().next().copied(),
        max_degree: histogram.keys().next_back().copied(),
        degree_histogram: histogram,
        components: g.component_count(),
        largest_component: largest.map_or(0, |c| sizes[c]),
        diameter,
        clique_number: max_clique(&g.adjacency).len(),
    }
}

/// A maximum clique by Bron–Kerbosch with pivoting and size pruning.
pub fn max_clique(adjacency: &[Vec<usize>]) -> Vec<usize> {
    fn expand(
        adjacency: &[Vec<usize>],
        clique: &mut Vec<usize>,
        candidates: Vec<usize>,
        mut excluded: Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if candidates.is_empty() {
            if excluded.is_empty() && clique.len() > best.len() {
                *best = clique.clone();
            }
            return;
        }
        if clique.len() + candidates.len() <= best.len() {
            return;
        }
        let adjacent = |u: usize, v: usize| adjacency[u].binary_search(&v).is_ok();
        let pivot = candidates
            .iter()
            .chain(&excluded)
            .copied()
            .max_by_key(|&u| candidates.iter().filter(|&&v| adjacent(u, v)).count())
            .unwrap();
        let branch: Vec<usize> = candidates.iter().copied().filter(|&v| !adjacent(pivot, v)).collect();
        let mut candidates = candidates;
        for v in branch {
            let next_c: Vec<usize> = candidates.iter().copied().filter(|&u| adjacent(v, u)).collect();
            let next_x: Vec<usize> = excluded.iter().copied().filter(|&u| adjacent(v, u)).collect();
            clique.push(v);
            expand(adjacency, clique, next_c, next_x, best);
            clique.pop();
            candidates.retain(|&u| u != v);
            excluded.push(v);
        }
    }

    let mut best = Vec::new();
    expand(adjacency, &mut Vec::new(), (0..adjacency.len()).collect(), Vec::new(), &mut best);
    best.sort_unstable();
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            _ => Err(Error::UnsupportedFormat(s.to_string())),
        }
    }
}

/// Version of the JSON graph document.
pub const FORMAT_VERSION: u32 = 1;

pub fn export(g: &TverbergGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => to_dot(g),
        ExportFormat::Json => to_json(g),
        ExportFormat::Csv => to_csv(g),
    }
}

fn edges(g: &TverbergGraph) -> impl Iterator<Item = (usize, usize)> + '_ {
    g.adjacency
        .iter()
        .enumerate()
        .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
}

fn to_dot(g: &TverbergGraph) -> String {
    let mut out = String::from("graph tverberg {\n");
    for (i, p) in g.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{p}\"];");
    }
    for (u, v) in edges(g) {
        let _ = writeln!(out, "  v{u} -- v{v};");
    }
    out.push_str("}\n");
    out
}

fn to_json(g: &TverbergGraph) -> String {
    let doc = json!({
        "format_version": FORMAT_VERSION,
        "n": g.n,
        "r": g.r,
        "dim": g.dim,
        "scalar": g.scalar,
        "points": g.points,
        "vertices": g.vertices.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "adjacency": g.adjacency,
        "stats": graph_stats(g),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("graph document serializes");
    s.push('\n');
    s
}

fn to_csv(g: &TverbergGraph) -> String {
    let mut out = String::from("source,target\n");
    for (u, v) in edges(g) {
        let _ = writeln!(out, "\"{}\",\"{}\"", g.vertices[u], g.vertices[v]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{abstract_diameter, abstract_edge_count, partition_distance};
    use crate::scalar::Rational;

    fn cfg(dim: usize, pts: &[&[i64]]) -> PointConfig<Rational> {
        PointConfig::new(
            dim,
            pts.iter()
                .map(|p| p.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn abstract_graph_on_four_elements() {
        let g = build_abstract_graph(4, 2).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 12);
        let s = graph_stats(&g);
        assert_eq!(s.diameter, Some(abstract_diameter(4, 2).unwrap()));
        assert_eq!(s.clique_number, 2);
        assert_eq!(s.degree_histogram, BTreeMap::from([(3, 4), (4, 3)]));
    }

    #[test]
    fn abstract_graph_matches_distance_relation() {
        let g = build_abstract_graph(6, 3).unwrap();
        assert_eq!(g.edge_count() as u64, abstract_edge_count(6, 3).unwrap().to_u64().unwrap());
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                let d = partition_distance(&g.vertices[u], &g.vertices[v]).unwrap();
                assert_eq!(d == 1, g.adjacency[u].binary_search(&v).is_ok());
            }
        }
        assert_eq!(graph_stats(&g).clique_number, 3);
    }

    #[test]
    fn four_generic_points() {
        let g = build_graph(&cfg(2, &[&[0, 0], &[5, 1], &[2, 7], &[1, 2]]), 2).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        let s = graph_stats(&g);
        assert_eq!((s.components, s.diameter, s.clique_number), (1, Some(0), 1));
    }

    #[test]
    fn cap_is_enforced() {
        let c = cfg(1, &[&[0], &[1], &[2], &[3], &[4]]);
        assert!(matches!(build_graph_capped(&c, 2, 10), Err(Error::TooManyPartitions { .. })));
        assert!(build_graph_capped(&c, 2, 15).is_ok());
    }

    #[test]
    fn empty_graph_exports() {
        let g = build_graph(&cfg(2, &[&[0, 0], &[1, 0], &[0, 1]]), 2).unwrap();
        assert_eq!(g.vertex_count(), 0);
        let s = graph_stats(&g);
        assert_eq!(s.diameter, None);
        assert_eq!(export(&g, ExportFormat::Dot), "graph tverberg {\n}\n");
        let doc: serde_json::Value = serde_json::from_str(&export(&g, ExportFormat::Json)).unwrap();
        assert_eq!(doc["format_version"], 1);
        assert_eq!(export(&g, ExportFormat::Csv), "source,target\n");
        assert!(matches!("svg".parse::<ExportFormat>(), Err(Error::UnsupportedFormat(_))));
    }

    #[test]
    fn clique_of_triangle_plus_tail() {
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1, 3], vec![2]];
        assert_eq!(max_clique(&adj), vec![0, 1, 2]);
        assert!(max_clique(&[]).is_empty());
    }
}
