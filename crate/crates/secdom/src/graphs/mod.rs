//! Simple undirected graphs with the vertex set `{0, .., n-1}`.
//!
//! Vertices are 0-based in memory. Every serialized form (edge lists,
//! guard sets, variable names) uses 1-based indices, converted at the
//! boundary and nowhere else.

mod families;

pub use families::{
    gp_graph, hex_grid, queen_graph, square_grid, torus_grid, Family, FamilySpec,
};

use rand::Rng;
use std::fmt::Write as _;
use thiserror::Error;

/// Distance value marking an unreachable pair.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be at least 1")]
    Empty,
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({0}, {1}) out of range for n = {2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("edge ({0}, {1}) listed twice")]
    DuplicateEdge(usize, usize),
    #[error("line {0}: expected header `p <n> <m>`")]
    MalformedHeader(usize),
    #[error("line {0}: expected edge line `e <u> <v>`")]
    MalformedEdge(usize),
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
}

/// An undirected graph stored as sorted adjacency lists plus the edge
/// list in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from 0-based endpoint pairs. Self-loops, duplicate
    /// edges and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u + 1, v + 1));
            }
            if u >= n || v >= n {
                return Err(GraphError::EdgeOutOfRange(u + 1, v + 1, n));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0 + 1, w[0].1 + 1));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Open neighborhood, ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Closed neighborhood N[v] = N(v) plus v itself, ascending.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree(v) + 1);
        let pos = self.adj[v].partition_point(|&u| u < v);
        out.extend_from_slice(&self.adj[v][..pos]);
        out.push(v);
        out.extend_from_slice(&self.adj[v][pos..]);
        out
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// All-pairs distances by BFS from every vertex.
    pub fn distances(&self) -> DistanceTable {
        let mut rows = Vec::with_capacity(self.n);
        let mut queue = Vec::with_capacity(self.n);
        for s in 0..self.n {
            let mut dist = vec![UNREACHABLE; self.n];
            dist[s] = 0;
            queue.clear();
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                for &w in &self.adj[v] {
                    if dist[w] == UNREACHABLE {
                        dist[w] = dist[v] + 1;
                        queue.push(w);
                    }
                }
            }
            rows.push(dist);
        }
        DistanceTable { rows }
    }

    /// Ordered pairs (i, j) at distance exactly two, sorted by (i, j).
    pub fn dist2_pairs(&self) -> Vec<(usize, usize)> {
        let d = self.distances();
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if d.dist(i, j) == 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Renders the 1-based edge list format: a `p <n> <m>` header, then
    /// one `e <u> <v>` line per edge in lexicographic order.
    pub fn render_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {} {}", self.n, self.edges.len()).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

/// Parses the edge list format produced by [`Graph::render_edge_list`].
/// Blank lines and `c ...` comment lines are skipped.
pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap();
        match (tag, &header) {
            ("p", None) => {
                let n = fields.next().and_then(|t| t.parse::<usize>().ok());
                let m = fields.next().and_then(|t| t.parse::<usize>().ok());
                match (n, m, fields.next()) {
                    (Some(n), Some(m), None) if n >= 1 => header = Some((n, m)),
                    _ => return Err(GraphError::MalformedHeader(lineno + 1)),
                }
            }
            ("e", Some((n, _))) => {
                let n = *n;
                let u = fields.next().and_then(|t| t.parse::<usize>().ok());
                let v = fields.next().and_then(|t| t.parse::<usize>().ok());
                match (u, v, fields.next()) {
                    (Some(u), Some(v), None) if u >= 1 && v >= 1 => {
                        if u > n || v > n {
                            return Err(GraphError::EdgeOutOfRange(u, v, n));
                        }
                        edges.push((u - 1, v - 1));
                    }
                    _ => return Err(GraphError::MalformedEdge(lineno + 1)),
                }
            }
            _ => {
                return Err(if header.is_none() {
                    GraphError::MalformedHeader(lineno + 1)
                } else {
                    GraphError::MalformedEdge(lineno + 1)
                })
            }
        }
    }
    let (n, m) = header.ok_or(GraphError::MalformedHeader(1))?;
    if edges.len() != m {
        return Err(GraphError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Graph::new(n, &edges)
}

/// Dense all-pairs distance table; [`UNREACHABLE`] marks disconnected pairs.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    rows: Vec<Vec<u32>>,
}

impl DistanceTable {
    pub fn dist(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }
}

/// Samples a connected graph on `n` vertices: a random attachment tree
/// plus `extra` further edges drawn uniformly from the remaining pairs.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Graph {
    assert!(n >= 1);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    let mut rest: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if !edges.contains(&(u, v)) {
                rest.push((u, v));
            }
        }
    }
    for _ in 0..extra.min(rest.len()) {
        let i = rng.gen_range(0..rest.len());
        edges.push(rest.swap_remove(i));
    }
    Graph::new(n, &edges).expect("sampled edges are valid by construction")
}
