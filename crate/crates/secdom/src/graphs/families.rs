//! Generators for the benchmark graph families.
//!
//! All families index vertices deterministically. Board-shaped families
//! place cell (r, c) with r, c in 1..=k at 1-based vertex (r-1)*k + c,
//! so certificates quoted as board coordinates map stably to indices.

use super::{from_edge_list, Graph, GraphError};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("{family} requires k >= {min}, got {k}")]
    SizeTooSmall {
        family: &'static str,
        min: u32,
        k: u32,
    },
    #[error("generalized Petersen skip must be 1 or 2, got {0}")]
    BadSkip(u32),
    #[error("family `file` requires a path")]
    MissingPath,
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The k x k square grid: n = k^2, m = 2k(k-1).
pub fn square_grid(k: u32) -> Result<Graph, FamilyError> {
    require(k, 1, "square_grid")?;
    let k = k as usize;
    let idx = |r: usize, c: usize| r * k + c;
    let mut edges = Vec::new();
    for r in 0..k {
        for c in 0..k {
            if c + 1 < k {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r + 1 < k {
                edges.push((idx(r, c), idx(r + 1, c)));
            }
        }
    }
    Ok(Graph::new(k * k, &edges)?)
}

/// The k x k toroidal grid, both axes wrapping: n = k^2, m = 2k^2,
/// 4-regular. Needs k >= 3, below which the wrap-around edges collapse.
pub fn torus_grid(k: u32) -> Result<Graph, FamilyError> {
    require(k, 3, "torus_grid")?;
    let k = k as usize;
    let idx = |r: usize, c: usize| r * k + c;
    let mut edges = Vec::new();
    for r in 0..k {
        for c in 0..k {
            edges.push((idx(r, c), idx(r, (c + 1) % k)));
            edges.push((idx(r, c), idx((r + 1) % k, c)));
        }
    }
    Ok(Graph::new(k * k, &edges)?)
}

/// The k x k queen graph: squares of a board, adjacent when a queen
/// moves between them (same row, column or diagonal).
pub fn queen_graph(k: u32) -> Result<Graph, FamilyError> {
    require(k, 1, "queen_graph")?;
    let k = k as usize;
    let idx = |r: usize, c: usize| r * k + c;
    let mut edges = Vec::new();
    for r1 in 0..k {
        for c1 in 0..k {
            for r2 in r1..k {
                for c2 in 0..k {
                    if (r2, c2) <= (r1, c1) {
                        continue;
                    }
                    let dr = r2 - r1;
                    let dc = c1.abs_diff(c2);
                    if r1 == r2 || c1 == c2 || dr == dc {
                        edges.push((idx(r1, c1), idx(r2, c2)));
                    }
                }
            }
        }
    }
    Ok(Graph::new(k * k, &edges)?)
}

/// The generalized Petersen graph on 2k vertices with inner skip j in
/// {1, 2}: outer cycle 1..=k, spokes, inner vertices k+1..=2k joined at
/// offset j. n = 2k, m = 3k, cubic.
pub fn gp_graph(k: u32, j: u32) -> Result<Graph, FamilyError> {
    let min = match j {
        1 => 3,
        2 => 5,
        _ => return Err(FamilyError::BadSkip(j)),
    };
    let family: &'static str = if j == 1 { "gp1" } else { "gp2" };
    if k < min {
        return Err(FamilyError::SizeTooSmall { family, min, k });
    }
    let k = k as usize;
    let j = j as usize;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, (i + 1) % k));
        edges.push((i, k + i));
        edges.push((k + i, k + (i + j) % k));
    }
    Ok(Graph::new(2 * k, &edges)?)
}

/// The k x k hexagonal grid: a rhombus of k^2 hexagonal cells, one
/// vertex per cell, adjacent when the cells share a side. In axial cell
/// coordinates the neighbors of (r, c) are (r, c+-1), (r+-1, c),
/// (r+1, c-1) and (r-1, c+1); interior cells have degree 6.
pub fn hex_grid(k: u32) -> Result<Graph, FamilyError> {
    require(k, 1, "hex_grid")?;
    let k = k as usize;
    let idx = |r: usize, c: usize| r * k + c;
    let mut edges = Vec::new();
    for r in 0..k {
        for c in 0..k {
            if c + 1 < k {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r + 1 < k {
                edges.push((idx(r, c), idx(r + 1, c)));
                if c > 0 {
                    edges.push((idx(r, c), idx(r + 1, c - 1)));
                }
            }
        }
    }
    Ok(Graph::new(k * k, &edges)?)
}

fn require(k: u32, min: u32, family: &'static str) -> Result<(), FamilyError> {
    if k < min {
        Err(FamilyError::SizeTooSmall { family, min, k })
    } else {
        Ok(())
    }
}

/// Named graph families selectable from configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    SquareGrid,
    HexGrid,
    Queen,
    Torus,
    Gp1,
    Gp2,
    File,
}

impl Family {
    pub const ALL_GENERATED: [Family; 6] = [
        Family::SquareGrid,
        Family::HexGrid,
        Family::Queen,
        Family::Torus,
        Family::Gp1,
        Family::Gp2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SquareGrid => "grid",
            Family::HexGrid => "hex",
            Family::Queen => "queen",
            Family::Torus => "torus",
            Family::Gp1 => "gp1",
            Family::Gp2 => "gp2",
            Family::File => "file",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grid" => Ok(Family::SquareGrid),
            "hex" => Ok(Family::HexGrid),
            "queen" => Ok(Family::Queen),
            "torus" => Ok(Family::Torus),
            "gp1" => Ok(Family::Gp1),
            "gp2" => Ok(Family::Gp2),
            "file" => Ok(Family::File),
            other => Err(format!(
                "unknown family `{other}` (expected grid, hex, queen, torus, gp1, gp2 or file)"
            )),
        }
    }
}

/// A family instance: a generated family at size k, or an edge list file.
#[derive(Debug, Clone)]
pub struct FamilySpec {
    pub family: Family,
    pub k: u32,
    pub path: Option<PathBuf>,
}

impl FamilySpec {
    pub fn generated(family: Family, k: u32) -> FamilySpec {
        FamilySpec {
            family,
            k,
            path: None,
        }
    }

    pub fn build(&self) -> Result<Graph, FamilyError> {
        match self.family {
            Family::SquareGrid => square_grid(self.k),
            Family::HexGrid => hex_grid(self.k),
            Family::Queen => queen_graph(self.k),
            Family::Torus => torus_grid(self.k),
            Family::Gp1 => gp_graph(self.k, 1),
            Family::Gp2 => gp_graph(self.k, 2),
            Family::File => {
                let path = self.path.as_ref().ok_or(FamilyError::MissingPath)?;
                let text = std::fs::read_to_string(path).map_err(|source| FamilyError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                Ok(from_edge_list(&text)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts_and_degrees() {
        let g1 = square_grid(1).unwrap();
        assert_eq!((g1.n(), g1.m()), (1, 0));
        let g3 = square_grid(3).unwrap();
        assert_eq!((g3.n(), g3.m()), (9, 12));
        assert_eq!(g3.degree(4), 4);
        assert_eq!(g3.degree(0), 2);
        for k in 2..=6u32 {
            let g = square_grid(k).unwrap();
            let k = k as usize;
            assert_eq!(g.n(), k * k);
            assert_eq!(g.m(), 2 * k * (k - 1));
            assert!(g.is_connected());
        }
    }

    #[test]
    fn grid_is_bipartite() {
        let g = square_grid(5).unwrap();
        for &(u, v) in g.edges() {
            let (ru, cu) = (u / 5, u % 5);
            let (rv, cv) = (v / 5, v % 5);
            assert_ne!((ru + cu) % 2, (rv + cv) % 2);
        }
    }

    #[test]
    fn torus_counts() {
        assert!(matches!(
            torus_grid(2),
            Err(FamilyError::SizeTooSmall { min: 3, .. })
        ));
        for k in 3..=5u32 {
            let g = torus_grid(k).unwrap();
            let k = k as usize;
            assert_eq!(g.n(), k * k);
            assert_eq!(g.m(), 2 * k * k);
            for v in 0..g.n() {
                assert_eq!(g.degree(v), 4);
            }
        }
    }

    #[test]
    fn queen_small_boards() {
        let q2 = queen_graph(2).unwrap();
        assert_eq!((q2.n(), q2.m()), (4, 6));
        let q3 = queen_graph(3).unwrap();
        assert_eq!(q3.n(), 9);
        assert_eq!(q3.m(), queen_edges_by_attack_count(3));
        assert_eq!(q3.m(), 28);
        assert_eq!(queen_graph(5).unwrap().m(), queen_edges_by_attack_count(5));
    }

    // Independent count: sum attacked squares per square, halved.
    fn queen_edges_by_attack_count(k: i64) -> usize {
        let mut total = 0i64;
        for r in 0..k {
            for c in 0..k {
                let mut attacked = 0;
                for dr in -1..=1i64 {
                    for dc in -1..=1i64 {
                        if (dr, dc) == (0, 0) {
                            continue;
                        }
                        let (mut rr, mut cc) = (r + dr, c + dc);
                        while (0..k).contains(&rr) && (0..k).contains(&cc) {
                            attacked += 1;
                            rr += dr;
                            cc += dc;
                        }
                    }
                }
                total += attacked;
            }
        }
        (total / 2) as usize
    }

    #[test]
    fn petersen_family() {
        assert!(matches!(gp_graph(2, 1), Err(FamilyError::SizeTooSmall { .. })));
        assert!(matches!(gp_graph(4, 2), Err(FamilyError::SizeTooSmall { .. })));
        assert!(matches!(gp_graph(5, 3), Err(FamilyError::BadSkip(3))));
        let p = gp_graph(5, 2).unwrap();
        assert_eq!((p.n(), p.m()), (10, 15));
        for v in 0..p.n() {
            assert_eq!(p.degree(v), 3);
        }
        assert_eq!(girth(&p), 5);
        let g = gp_graph(6, 1).unwrap();
        assert_eq!((g.n(), g.m()), (12, 18));
        assert_eq!(girth(&g), 4);
    }

    fn girth(g: &Graph) -> usize {
        // shortest cycle through each edge: remove it, measure distance
        let mut best = usize::MAX;
        for &(u, v) in g.edges() {
            let others: Vec<_> = g
                .edges()
                .iter()
                .copied()
                .filter(|&e| e != (u, v))
                .collect();
            let h = Graph::new(g.n(), &others).unwrap();
            let d = h.distances().dist(u, v);
            if d != super::super::UNREACHABLE {
                best = best.min(d as usize + 1);
            }
        }
        best
    }

    #[test]
    fn hex_rhombus_shape() {
        let h1 = hex_grid(1).unwrap();
        assert_eq!((h1.n(), h1.m()), (1, 0));
        let h2 = hex_grid(2).unwrap();
        assert_eq!((h2.n(), h2.m()), (4, 5));
        assert!(!h2.has_edge(0, 3));
        assert!(h2.has_edge(1, 2));
        for k in 2..=6u32 {
            let h = hex_grid(k).unwrap();
            let k = k as usize;
            assert_eq!(h.n(), k * k);
            assert_eq!(h.m(), 3 * k * k - 4 * k + 1);
            assert!(h.is_connected());
            assert_eq!(h.max_degree(), if k >= 3 { 6 } else { 3 });
        }
    }

    #[test]
    fn family_spec_round_trip() {
        for family in Family::ALL_GENERATED {
            assert_eq!(family.name().parse::<Family>().unwrap(), family);
        }
        let spec = FamilySpec::generated(Family::Gp2, 5);
        let g = spec.build().unwrap();
        assert_eq!(g.n(), 10);
    }
}
