//! Exhaustive minimum-cardinality search for the placement properties.

use super::{
    is_connected_dominating, is_dominating, is_secure_connected_dominating, is_secure_dominating,
    GuardSet, Property,
};
use crate::graphs::Graph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the exhaustive-search cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("no placement satisfies {0} on this graph")]
    Unsatisfiable(Property),
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub minimum: usize,
    pub witness: GuardSet,
}

fn default_cap(property: Property) -> usize {
    if property.connected() {
        16
    } else {
        20
    }
}

/// Exact minimum cardinality of a placement satisfying `property`, by
/// enumerating subsets in increasing cardinality and, within one
/// cardinality, in lexicographic order, so the witness is the
/// lexicographically smallest optimum. Subtrees that can no longer
/// produce a dominating set are pruned.
///
/// `cap` overrides the built-in vertex-count cap (20, or 16 for the
/// connected properties).
pub fn oracle_minimum(
    g: &Graph,
    property: Property,
    cap: Option<usize>,
) -> Result<OracleResult, OracleError> {
    let cap = cap.unwrap_or_else(|| default_cap(property));
    if g.n() > cap {
        return Err(OracleError::CapExceeded { n: g.n(), cap });
    }
    let full_cover = g.n().div_ceil(64);
    let holds = |s: &GuardSet| -> bool {
        match property {
            Property::Dominating => is_dominating(g, s),
            Property::SecureDominating => is_secure_dominating(g, s),
            Property::ConnectedDominating => is_connected_dominating(g, s),
            Property::SecureConnectedDominating => is_secure_connected_dominating(g, s),
        }
        .expect("sizes agree by construction")
        .holds
    };
    let mut state = Search {
        g,
        cover: vec![0; full_cover],
        chosen: GuardSet::empty(g.n()),
        max_cover: g.max_degree() + 1,
        holds: &holds,
    };
    for c in 1..=g.n() {
        if let Some(witness) = state.descend(0, c) {
            return Ok(OracleResult {
                minimum: c,
                witness,
            });
        }
    }
    Err(OracleError::Unsatisfiable(property))
}

struct Search<'a> {
    g: &'a Graph,
    cover: Vec<u64>,
    chosen: GuardSet,
    max_cover: usize,
    holds: &'a dyn Fn(&GuardSet) -> bool,
}

impl Search<'_> {
    fn uncovered_count(&self) -> usize {
        let mut missing = 0;
        for v in 0..self.g.n() {
            if self.cover[v / 64] >> (v % 64) & 1 == 0 {
                missing += 1;
            }
        }
        missing
    }

    fn first_uncovered(&self) -> Option<usize> {
        (0..self.g.n()).find(|&v| self.cover[v / 64] >> (v % 64) & 1 == 0)
    }

    /// Extends the current choice with `remaining` vertices >= `start`,
    /// lexicographically; returns the first witness found.
    fn descend(&mut self, start: usize, remaining: usize) -> Option<GuardSet> {
        if remaining == 0 {
            if self.first_uncovered().is_some() {
                return None;
            }
            if (self.holds)(&self.chosen) {
                return Some(self.chosen.clone());
            }
            return None;
        }
        if self.uncovered_count() > remaining * self.max_cover {
            return None;
        }
        if let Some(f) = self.first_uncovered() {
            let reachable = f >= start
                || self.g.neighbors(f).iter().any(|&u| u >= start);
            if !reachable {
                return None;
            }
        }
        for u in start..self.g.n() {
            if self.g.n() - u < remaining {
                break;
            }
            let saved = self.cover.clone();
            self.chosen.insert(u);
            self.cover[u / 64] |= 1 << (u % 64);
            for &w in self.g.neighbors(u) {
                self.cover[w / 64] |= 1 << (w % 64);
            }
            let found = self.descend(u + 1, remaining - 1);
            self.chosen.remove(u);
            self.cover = saved;
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{hex_grid, queen_graph, square_grid, Graph};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn minimum(g: &Graph, p: Property) -> usize {
        oracle_minimum(g, p, None).unwrap().minimum
    }

    #[test]
    fn known_minima() {
        let grid3 = square_grid(3).unwrap();
        assert_eq!(minimum(&grid3, Property::Dominating), 3);
        assert_eq!(minimum(&grid3, Property::SecureDominating), 4);
        assert_eq!(minimum(&grid3, Property::ConnectedDominating), 3);
        assert_eq!(minimum(&grid3, Property::SecureConnectedDominating), 5);
        assert_eq!(
            minimum(&queen_graph(3).unwrap(), Property::SecureDominating),
            2
        );
        let c4 = cycle(4);
        assert_eq!(minimum(&c4, Property::SecureConnectedDominating), 3);
        assert_eq!(minimum(&c4, Property::SecureDominating), 2);
    }

    #[test]
    fn hex_calibration_values() {
        for (k, want) in [(2, 2), (3, 3), (4, 5)] {
            let h = hex_grid(k).unwrap();
            assert_eq!(minimum(&h, Property::SecureDominating), want);
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        let c4 = cycle(4);
        let r = oracle_minimum(&c4, Property::SecureDominating, None).unwrap();
        assert_eq!(r.minimum, 2);
        assert_eq!(r.witness.iter().collect::<Vec<_>>(), vec![0, 1]);
        let witness = oracle_minimum(&c4, Property::Dominating, None)
            .unwrap()
            .witness;
        assert!(is_dominating(&c4, &witness).unwrap().holds);
    }

    #[test]
    fn cap_is_enforced_and_overridable() {
        let g = square_grid(5).unwrap();
        assert_eq!(
            oracle_minimum(&g, Property::SecureDominating, None).unwrap_err(),
            OracleError::CapExceeded { n: 25, cap: 20 }
        );
        assert_eq!(
            oracle_minimum(&g, Property::SecureDominating, Some(25))
                .unwrap()
                .minimum,
            9
        );
    }

    #[test]
    fn disconnected_graph_has_no_connected_placement() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            oracle_minimum(&g, Property::ConnectedDominating, None).unwrap_err(),
            OracleError::Unsatisfiable(Property::ConnectedDominating)
        );
        assert_eq!(minimum(&g, Property::Dominating), 2);
    }

    // Sandwich: any minimum sits between the coverage lower bound
    // n / (max degree + 1) and n itself.
    #[test]
    fn oracle_bounds() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let n = rng.gen_range(2..10);
            let extra = rng.gen_range(0..4);
            let g = crate::graphs::random_connected(&mut rng, n, extra);
            let lb = g.n().div_ceil(g.max_degree() + 1);
            let dom = minimum(&g, Property::Dominating);
            let sec = minimum(&g, Property::SecureDominating);
            assert!(lb <= dom);
            assert!(dom <= sec);
            assert!(sec <= g.n());
        }
    }
}
