//! Primal start: a feasible guard set found without any LP work, used
//! to seed the search with an upper bound.

use crate::certify::{verify, GuardSet, Property};
use crate::graphs::Graph;

/// Greedy elimination from the full vertex set: repeatedly drop any
/// vertex whose removal keeps the property, visiting vertices by
/// ascending degree (ties by index). The result is feasible whenever
/// the full set is; for a connected graph that is every property
/// handled here.
pub fn greedy_guard_set(g: &Graph, property: Property) -> Option<GuardSet> {
    let mut s = GuardSet::full(g.n());
    if !verify(g, &s, property).ok()?.holds {
        return None;
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    loop {
        let mut dropped = false;
        for &v in &order {
            if !s.contains(v) || s.len() == 1 {
                continue;
            }
            s.remove(v);
            if verify(g, &s, property).expect("set size fits the graph").holds {
                dropped = true;
            } else {
                s.insert(v);
            }
        }
        if !dropped {
            return Some(s);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{queen_graph, square_grid, Graph};

    #[test]
    fn greedy_sets_are_feasible_and_modest() {
        for (g, property, optimum) in [
            (square_grid(3).unwrap(), Property::SecureDominating, 4),
            (square_grid(4).unwrap(), Property::SecureDominating, 7),
            (queen_graph(4).unwrap(), Property::SecureDominating, 3),
            (square_grid(3).unwrap(), Property::ConnectedDominating, 3),
            (
                square_grid(3).unwrap(),
                Property::SecureConnectedDominating,
                5,
            ),
        ] {
            let s = greedy_guard_set(&g, property).unwrap();
            assert!(verify(&g, &s, property).unwrap().holds);
            assert!(
                s.len() >= optimum,
                "{property:?} n={} m={}: got {} below optimum {optimum}",
                g.n(),
                g.m(),
                s.len()
            );
            // Greedy stays within a factor of three of optimal on
            // these instances; it only needs to be a sane upper bound.
            assert!(s.len() <= 3 * optimum, "{property:?}");
        }
    }

    #[test]
    fn no_set_for_impossible_property() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(greedy_guard_set(&g, Property::ConnectedDominating).is_none());
        assert!(greedy_guard_set(&g, Property::Dominating).is_some());
    }
}
