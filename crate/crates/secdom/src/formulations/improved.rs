use super::{
    append_cover_rows, model_name, ordered_adjacent_pairs, Formulation, FormulationError,
};
use crate::certify::Property;
use crate::graphs::Graph;
use crate::model::{rat, LinearModel, ModelError, Rat, Sense};
use num_traits::Zero;
use std::collections::HashMap;

/// Smaller mixed encoding: the swap choice is a continuous designation
/// `y_i_j` (the guard at i is the one that would answer an incursion at
/// j), and integrality of x alone suffices.
pub struct Improved;

/// Variable handles the secure-connected encoding reuses.
pub(super) struct ImprovedVars {
    pub x: Vec<usize>,
    /// (guard vertex, defended vertex) -> index of y_i_j.
    pub y: HashMap<(usize, usize), usize>,
}

/// Appends the full secure-domination block (variables, objective, and
/// rows) to `m`, which must be empty.
pub(super) fn append_improved(m: &mut LinearModel, g: &Graph) -> Result<ImprovedVars, ModelError> {
    let x: Vec<usize> = (0..g.n())
        .map(|i| m.add_binary(format!("x_{}", i + 1)))
        .collect::<Result<_, _>>()?;
    let pairs = ordered_adjacent_pairs(g);
    let mut y = HashMap::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        let idx = m.add_continuous(
            format!("y_{}_{}", i + 1, j + 1),
            Rat::zero(),
            Some(rat(1)),
        )?;
        y.insert((i, j), idx);
    }
    m.set_objective(x.iter().map(|&xi| (xi, rat(1))).collect())?;

    append_cover_rows(m, g, &x)?;
    // A designation needs a guard to back it.
    for &(i, j) in &pairs {
        m.add_constraint(
            format!("desig_ub_{}_{}", i + 1, j + 1),
            vec![(y[&(i, j)], rat(1)), (x[i], rat(-1))],
            Sense::Le,
            rat(0),
        )?;
    }
    // Once j's designated defender steps over to j, each vertex i two
    // steps from j must still see a guard.
    for (j, i) in g.dist2_pairs() {
        let mut terms: Vec<(usize, Rat)> = g
            .closed_neighborhood(i)
            .into_iter()
            .map(|k| (x[k], rat(1)))
            .collect();
        for k in g.neighbors(i) {
            if g.has_edge(*k, j) {
                terms.push((y[&(*k, j)], rat(-1)));
            }
        }
        m.add_constraint(
            format!("post_cover_{}_{}", i + 1, j + 1),
            terms,
            Sense::Ge,
            rat(1),
        )?;
    }
    // Every vertex is either guarded or has exactly one designated
    // defender among its neighbors.
    for j in 0..g.n() {
        let mut terms = vec![(x[j], rat(1))];
        for i in g.neighbors(j) {
            terms.push((y[&(*i, j)], rat(1)));
        }
        m.add_constraint(format!("assign_{}", j + 1), terms, Sense::Eq, rat(1))?;
    }
    Ok(ImprovedVars { x, y })
}

impl Formulation for Improved {
    fn name(&self) -> &'static str {
        "improved"
    }

    fn description(&self) -> &'static str {
        "mixed encoding with continuous defender designations and distance-two rows"
    }

    fn property(&self) -> Property {
        Property::SecureDominating
    }

    fn build(&self, g: &Graph) -> Result<LinearModel, FormulationError> {
        let mut m = LinearModel::new(model_name(self.name(), g));
        append_improved(&mut m, g)?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::VarKind;

    fn path(n: usize) -> Graph {
        Graph::new(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn path3_layout() {
        let m = Improved.build(&path(3)).unwrap();
        let names: Vec<&str> = m.vars().iter().map(|v| v.name.as_str()).collect();
        assert_eq!(
            names,
            vec!["x_1", "x_2", "x_3", "y_1_2", "y_2_1", "y_2_3", "y_3_2"]
        );
        assert_eq!(
            m.vars()
                .iter()
                .filter(|v| v.kind == VarKind::Binary)
                .count(),
            3
        );
        let rows: Vec<&str> = m.constraints().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            rows,
            vec![
                "cover_1",
                "cover_2",
                "cover_3",
                "desig_ub_1_2",
                "desig_ub_2_1",
                "desig_ub_2_3",
                "desig_ub_3_2",
                "post_cover_3_1",
                "post_cover_1_3",
                "assign_1",
                "assign_2",
                "assign_3",
            ]
        );
        // post_cover_3_1: incursion at 1 pulls y_2_1; vertex 3 retains
        // x_2 + x_3 - y_2_1 >= 1.
        let c = &m.constraints()[7];
        assert_eq!(c.terms, vec![(1, rat(1)), (2, rat(1)), (4, rat(-1))]);
        assert_eq!(c.sense, Sense::Ge);
        assert_eq!(c.rhs, rat(1));
    }

    #[test]
    fn twelve_constraint_lines_for_path3() {
        let text = Improved.build(&path(3)).unwrap().emit_lp();
        let body: Vec<&str> = text
            .lines()
            .skip_while(|l| *l != "Subject To")
            .skip(1)
            .take_while(|l| *l != "Bounds")
            .collect();
        assert_eq!(body.len(), 12);
    }

    #[test]
    fn cycle5_has_thirty_rows_and_fifteen_columns() {
        let m = Improved.build(&cycle(5)).unwrap();
        assert_eq!(m.stats().n_constraints, 30);
        assert_eq!(m.stats().n_vars, 15);
        let mps = m.emit_mps();
        let parsed = crate::model::parse_mps(&mps).unwrap();
        assert!(m.structurally_equal(&parsed));
    }

    #[test]
    fn complete_graph_has_no_distance_two_rows() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let m = Improved.build(&g).unwrap();
        assert!(m
            .constraints()
            .iter()
            .all(|c| !c.name.starts_with("post_cover")));
        assert_eq!(m.stats().n_constraints, 2 * 4 + 2 * 6);
    }
}
