//! Combinatorial verification of guard placements.
//!
//! Everything here works directly on the graph with bitset arithmetic;
//! nothing depends on the models or the solver, so these routines serve
//! as the independent ground truth for both.

mod oracle;

pub use oracle::{oracle_minimum, OracleError, OracleResult};

use crate::graphs::Graph;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("line {0}: `{1}` is not a vertex index")]
    NotAnIndex(usize, String),
    #[error("vertex {0} out of range for n = {1}")]
    OutOfRange(usize, usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("guard set is over {0} vertices but the graph has {1}")]
    SizeMismatch(usize, usize),
}

/// A set of guarded vertices over a fixed vertex count, stored as a
/// bitset. Serializes as the sorted list of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardSet {
    n: usize,
    words: Vec<u64>,
}

impl GuardSet {
    pub fn empty(n: usize) -> GuardSet {
        GuardSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> GuardSet {
        let mut s = GuardSet::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Builds from 0-based indices, rejecting duplicates and overflow.
    pub fn from_indices(n: usize, members: &[usize]) -> Result<GuardSet, CertifyError> {
        let mut s = GuardSet::empty(n);
        for &v in members {
            if v >= n {
                return Err(CertifyError::OutOfRange(v + 1, n));
            }
            if s.contains(v) {
                return Err(CertifyError::DuplicateVertex(v + 1));
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    /// Members ascending, 0-based.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    /// Parses whitespace-separated 1-based indices; `#` starts a comment.
    pub fn parse_text(text: &str, n: usize) -> Result<GuardSet, CertifyError> {
        let mut members = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap();
            for tok in line.split_whitespace() {
                let v: usize = tok
                    .parse()
                    .map_err(|_| CertifyError::NotAnIndex(lineno + 1, tok.to_string()))?;
                if v == 0 {
                    return Err(CertifyError::NotAnIndex(lineno + 1, tok.to_string()));
                }
                members.push(v - 1);
            }
        }
        GuardSet::from_indices(n, &members)
    }

    /// One sorted 1-based index per line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for v in self.iter() {
            out.push_str(&(v + 1).to_string());
            out.push('\n');
        }
        out
    }
}

impl Serialize for GuardSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(self.iter().map(|v| v + 1))
    }
}

impl fmt::Display for GuardSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

/// The four placement properties the toolkit reasons about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Dominating,
    SecureDominating,
    ConnectedDominating,
    SecureConnectedDominating,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Dominating,
        Property::SecureDominating,
        Property::ConnectedDominating,
        Property::SecureConnectedDominating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Dominating => "dominating",
            Property::SecureDominating => "secure-dominating",
            Property::ConnectedDominating => "connected-dominating",
            Property::SecureConnectedDominating => "secure-connected-dominating",
        }
    }

    /// Whether the property includes the connectivity requirement.
    pub fn connected(self) -> bool {
        matches!(
            self,
            Property::ConnectedDominating | Property::SecureConnectedDominating
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a placement fails a property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Witness {
    /// No guard in the closed neighborhood (1-based vertex).
    Uncovered { vertex: usize },
    /// No adjacent guard can move here without breaking the property.
    Undefended { vertex: usize },
    /// Two guards with no connecting path inside the placement.
    DisconnectedPair { u: usize, v: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Uncovered { vertex } => write!(f, "vertex {vertex} is uncovered"),
            Witness::Undefended { vertex } => write!(f, "vertex {vertex} has no safe defender"),
            Witness::DisconnectedPair { u, v } => {
                write!(f, "guards {u} and {v} are disconnected")
            }
        }
    }
}

/// Outcome of checking one property on one placement.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Certificate {
    fn holds(property: Property) -> Certificate {
        Certificate {
            property,
            holds: true,
            witness: None,
        }
    }

    fn fails(property: Property, witness: Witness) -> Certificate {
        Certificate {
            property,
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Closed neighborhoods as bitset rows, the working representation for
/// all checks here.
pub(crate) struct NeighborMasks {
    words: usize,
    rows: Vec<u64>,
}

impl NeighborMasks {
    pub(crate) fn new(g: &Graph) -> NeighborMasks {
        let words = g.n().div_ceil(64);
        let mut rows = vec![0u64; g.n() * words];
        for v in 0..g.n() {
            rows[v * words + v / 64] |= 1 << (v % 64);
            for &w in g.neighbors(v) {
                rows[v * words + w / 64] |= 1 << (w % 64);
            }
        }
        NeighborMasks { words, rows }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// First vertex not covered by the union of closed neighborhoods
    /// over `s`, if any.
    pub(crate) fn first_uncovered(&self, n: usize, s: &GuardSet) -> Option<usize> {
        let mut cover = vec![0u64; self.words];
        for v in s.iter() {
            for (c, r) in cover.iter_mut().zip(self.row(v)) {
                *c |= r;
            }
        }
        (0..n).find(|&v| cover[v / 64] >> (v % 64) & 1 == 0)
    }
}

fn check_size(g: &Graph, s: &GuardSet) -> Result<(), CertifyError> {
    if g.n() != s.n() {
        return Err(CertifyError::SizeMismatch(s.n(), g.n()));
    }
    Ok(())
}

/// Guards with no path to the lowest guard inside the induced subgraph,
/// reported as a witness pair.
fn disconnected_witness(g: &Graph, s: &GuardSet) -> Option<Witness> {
    let first = s.iter().next()?;
    let mut seen = GuardSet::empty(g.n());
    seen.insert(first);
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if s.contains(w) && !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    s.iter()
        .find(|&v| !seen.contains(v))
        .map(|v| Witness::DisconnectedPair {
            u: first + 1,
            v: v + 1,
        })
}

fn dominates(masks: &NeighborMasks, n: usize, s: &GuardSet) -> bool {
    masks.first_uncovered(n, s).is_none()
}

/// The placement after the guard at `w` moves to `v`.
fn swapped(s: &GuardSet, w: usize, v: usize) -> GuardSet {
    let mut t = s.clone();
    t.remove(w);
    t.insert(v);
    t
}

/// Checks the secure condition given a per-configuration predicate that
/// the post-move placement must satisfy.
fn secure_witness<F>(g: &Graph, s: &GuardSet, still_ok: F) -> Option<Witness>
where
    F: Fn(&GuardSet) -> bool,
{
    for v in 0..g.n() {
        if s.contains(v) {
            continue;
        }
        let defended = g
            .neighbors(v)
            .iter()
            .any(|&w| s.contains(w) && still_ok(&swapped(s, w, v)));
        if !defended {
            return Some(Witness::Undefended { vertex: v + 1 });
        }
    }
    None
}

pub fn is_dominating(g: &Graph, s: &GuardSet) -> Result<Certificate, CertifyError> {
    check_size(g, s)?;
    let masks = NeighborMasks::new(g);
    Ok(match masks.first_uncovered(g.n(), s) {
        None => Certificate::holds(Property::Dominating),
        Some(v) => Certificate::fails(Property::Dominating, Witness::Uncovered { vertex: v + 1 }),
    })
}

pub fn is_secure_dominating(g: &Graph, s: &GuardSet) -> Result<Certificate, CertifyError> {
    check_size(g, s)?;
    let p = Property::SecureDominating;
    let masks = NeighborMasks::new(g);
    Ok(match masks.first_uncovered(g.n(), s) {
        Some(v) => Certificate::fails(p, Witness::Uncovered { vertex: v + 1 }),
        None => match secure_witness(g, s, |t| dominates(&masks, g.n(), t)) {
            Some(w) => Certificate::fails(p, w),
            None => Certificate::holds(p),
        },
    })
}

pub fn is_connected_dominating(g: &Graph, s: &GuardSet) -> Result<Certificate, CertifyError> {
    check_size(g, s)?;
    let p = Property::ConnectedDominating;
    let masks = NeighborMasks::new(g);
    Ok(match masks.first_uncovered(g.n(), s) {
        Some(v) => Certificate::fails(p, Witness::Uncovered { vertex: v + 1 }),
        None => match disconnected_witness(g, s) {
            Some(w) => Certificate::fails(p, w),
            None => Certificate::holds(p),
        },
    })
}

pub fn is_secure_connected_dominating(
    g: &Graph,
    s: &GuardSet,
) -> Result<Certificate, CertifyError> {
    check_size(g, s)?;
    let p = Property::SecureConnectedDominating;
    let masks = NeighborMasks::new(g);
    if let Some(v) = masks.first_uncovered(g.n(), s) {
        return Ok(Certificate::fails(p, Witness::Uncovered { vertex: v + 1 }));
    }
    if let Some(w) = disconnected_witness(g, s) {
        return Ok(Certificate::fails(p, w));
    }
    let ok = |t: &GuardSet| dominates(&masks, g.n(), t) && disconnected_witness(g, t).is_none();
    Ok(match secure_witness(g, s, ok) {
        Some(w) => Certificate::fails(p, w),
        None => Certificate::holds(p),
    })
}

/// Checks `property` on the placement, dispatching to the four
/// specialized verifiers.
pub fn verify(g: &Graph, s: &GuardSet, property: Property) -> Result<Certificate, CertifyError> {
    match property {
        Property::Dominating => is_dominating(g, s),
        Property::SecureDominating => is_secure_dominating(g, s),
        Property::ConnectedDominating => is_connected_dominating(g, s),
        Property::SecureConnectedDominating => is_secure_connected_dominating(g, s),
    }
}

/// The 28-guard certificate for the 9 x 9 grid, as sorted 1-based
/// indices; see `fixtures/grid9_secure28.txt` for the file form.
pub const GRID9_SECURE_28: [usize; 28] = [
    2, 4, 7, 10, 15, 18, 21, 22, 23, 26, 29, 34, 37, 40, 45, 48, 51, 52, 53, 56, 59, 63, 64, 67,
    70, 75, 78, 80,
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{self, square_grid};

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (0..leaves).map(|i| (0, i + 1)).collect();
        Graph::new(leaves + 1, &edges).unwrap()
    }

    fn set(g: &Graph, members: &[usize]) -> GuardSet {
        GuardSet::from_indices(g.n(), members).unwrap()
    }

    #[test]
    fn guard_set_basics() {
        let s = GuardSet::from_indices(5, &[3, 1]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s.render_text(), "2\n4\n");
        assert_eq!(GuardSet::parse_text("2 4 # both\n", 5).unwrap(), s);
        assert_eq!(
            GuardSet::from_indices(5, &[5]),
            Err(CertifyError::OutOfRange(6, 5))
        );
        assert_eq!(
            GuardSet::from_indices(5, &[2, 2]),
            Err(CertifyError::DuplicateVertex(3))
        );
        assert_eq!(
            GuardSet::parse_text("1 zero\n", 5),
            Err(CertifyError::NotAnIndex(1, "zero".into()))
        );
        assert_eq!(
            GuardSet::parse_text("0\n", 5),
            Err(CertifyError::NotAnIndex(1, "0".into()))
        );
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let g = path(3);
        let s = GuardSet::empty(4);
        assert_eq!(
            is_dominating(&g, &s).unwrap_err(),
            CertifyError::SizeMismatch(4, 3)
        );
    }

    #[test]
    fn domination_examples() {
        let k3 = complete(3);
        assert!(is_dominating(&k3, &set(&k3, &[0])).unwrap().holds);
        let p3 = path(3);
        let c = is_dominating(&p3, &set(&p3, &[0])).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Some(Witness::Uncovered { vertex: 3 }));
    }

    #[test]
    fn secure_domination_examples() {
        let p3 = path(3);
        let c = is_secure_dominating(&p3, &set(&p3, &[1])).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Some(Witness::Undefended { vertex: 1 }));
        assert!(is_secure_dominating(&p3, &set(&p3, &[0, 2])).unwrap().holds);
        for n in 2..6 {
            let kn = complete(n);
            assert!(is_secure_dominating(&kn, &set(&kn, &[1])).unwrap().holds);
        }
    }

    #[test]
    fn connected_domination_examples() {
        let c4 = cycle(4);
        let cert = is_connected_dominating(&c4, &set(&c4, &[0, 2])).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.witness, Some(Witness::DisconnectedPair { u: 1, v: 3 }));
        let c5 = cycle(5);
        assert!(is_connected_dominating(&c5, &set(&c5, &[0, 1, 2]))
            .unwrap()
            .holds);
        let k13 = star(3);
        assert!(is_connected_dominating(&k13, &set(&k13, &[0]))
            .unwrap()
            .holds);
    }

    #[test]
    fn secure_connected_examples() {
        let c4 = cycle(4);
        assert!(
            is_secure_connected_dominating(&c4, &set(&c4, &[0, 1, 2]))
                .unwrap()
                .holds
        );
        let cert = is_secure_connected_dominating(&c4, &set(&c4, &[0, 1])).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.witness, Some(Witness::Undefended { vertex: 3 }));
        let k13 = star(3);
        let cert = is_secure_connected_dominating(&k13, &set(&k13, &[0, 1])).unwrap();
        assert!(!cert.holds);
    }

    #[test]
    fn empty_set_fails_everything() {
        let g = path(3);
        let s = GuardSet::empty(3);
        for p in Property::ALL {
            let c = verify(&g, &s, p).unwrap();
            assert!(!c.holds);
            assert_eq!(c.witness, Some(Witness::Uncovered { vertex: 1 }));
        }
    }

    #[test]
    fn full_set_is_secure_connected_when_graph_is() {
        for g in [path(5), cycle(6), complete(4), star(4), square_grid(3).unwrap()] {
            let s = GuardSet::full(g.n());
            assert!(is_secure_connected_dominating(&g, &s).unwrap().holds);
        }
    }

    #[test]
    fn grid9_certificate_verifies() {
        let g = square_grid(9).unwrap();
        let members: Vec<_> = GRID9_SECURE_28.iter().map(|&v| v - 1).collect();
        let s = GuardSet::from_indices(81, &members).unwrap();
        assert_eq!(s.len(), 28);
        assert!(is_secure_dominating(&g, &s).unwrap().holds);
    }

    // 1,000 seeded samples: secure implies dominating, connected
    // variants imply their base properties, and domination is monotone
    // under adding guards.
    #[test]
    fn sampled_implications() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4242);
        for _ in 0..1000 {
            let n = rng.gen_range(2..11);
            let extra = rng.gen_range(0..7);
            let g = graphs::random_connected(&mut rng, n, extra);
            let members: Vec<_> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let s = GuardSet::from_indices(n, &members).unwrap();
            let dom = is_dominating(&g, &s).unwrap().holds;
            let sec = is_secure_dominating(&g, &s).unwrap().holds;
            let con = is_connected_dominating(&g, &s).unwrap().holds;
            let sc = is_secure_connected_dominating(&g, &s).unwrap().holds;
            assert!(!sec || dom);
            assert!(!con || dom);
            assert!(!sc || con);
            if dom {
                let mut bigger = s.clone();
                for v in 0..n {
                    bigger.insert(v % n);
                }
                assert!(is_dominating(&g, &bigger).unwrap().holds);
            }
        }
    }
}
