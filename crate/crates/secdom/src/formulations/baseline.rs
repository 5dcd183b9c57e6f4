use super::{
    append_cover_rows, model_name, ordered_adjacent_pairs, Formulation, FormulationError,
};
use crate::certify::Property;
use crate::graphs::Graph;
use crate::model::{rat, LinearModel, Sense};

/// All-binary encoding: one `zswap_k_l` indicator per ordered adjacent
/// pair, set when the guard at l is the one that would answer an
/// incursion at k.
pub struct Baseline;

impl Formulation for Baseline {
    fn name(&self) -> &'static str {
        "burger"
    }

    fn description(&self) -> &'static str {
        "baseline all-binary encoding with one swap indicator per ordered adjacent pair"
    }

    fn property(&self) -> Property {
        Property::SecureDominating
    }

    fn build(&self, g: &Graph) -> Result<LinearModel, FormulationError> {
        let mut m = LinearModel::new(model_name(self.name(), g));
        let x: Vec<usize> = (0..g.n())
            .map(|i| m.add_binary(format!("x_{}", i + 1)))
            .collect::<Result<_, _>>()?;
        let pairs = ordered_adjacent_pairs(g);
        let mut z: Vec<Vec<usize>> = (0..g.n()).map(|k| vec![usize::MAX; g.degree(k)]).collect();
        for &(k, l) in &pairs {
            let slot = g.neighbors(k).binary_search(&l).unwrap();
            z[k][slot] = m.add_binary(format!("zswap_{}_{}", k + 1, l + 1))?;
        }
        m.set_objective(x.iter().map(|&xi| (xi, rat(1))).collect())?;

        append_cover_rows(&mut m, g, &x)?;
        // An incursion at k is answered by k's own guard or some
        // designated adjacent swap.
        for k in 0..g.n() {
            let mut terms = vec![(x[k], rat(1))];
            terms.extend(z[k].iter().map(|&zi| (zi, rat(1))));
            m.add_constraint(format!("defend_{}", k + 1), terms, Sense::Ge, rat(1))?;
        }
        // A selected swap needs a guard at l and an empty slot at k.
        for &(k, l) in &pairs {
            let slot = g.neighbors(k).binary_search(&l).unwrap();
            m.add_constraint(
                format!("swap_ub_{}_{}", k + 1, l + 1),
                vec![(x[k], rat(1)), (x[l], rat(-1)), (z[k][slot], rat(2))],
                Sense::Le,
                rat(1),
            )?;
        }
        // After l moves to k, every vertex k cannot see must still have
        // a guard in its closed neighborhood other than l.
        for &(k, l) in &pairs {
            let slot = g.neighbors(k).binary_search(&l).unwrap();
            for i in 0..g.n() {
                if i == k || g.has_edge(i, k) {
                    continue;
                }
                let mut terms = vec![(z[k][slot], rat(1))];
                for j in g.closed_neighborhood(i) {
                    if j != l {
                        terms.push((x[j], rat(-1)));
                    }
                }
                m.add_constraint(
                    format!("swap_cover_{}_{}_{}", k + 1, l + 1, i + 1),
                    terms,
                    Sense::Le,
                    rat(0),
                )?;
            }
        }
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

    #[test]
    fn path3_layout() {
        let m = Baseline.build(&path(3)).unwrap();
        let names: Vec<&str> = m.vars().iter().map(|v| v.name.as_str()).collect();
        assert_eq!(
            names,
            vec!["x_1", "x_2", "x_3", "zswap_1_2", "zswap_2_1", "zswap_2_3", "zswap_3_2"]
        );
        assert!(m.vars().iter().all(|v| v.kind == VarKind::Binary));
        let rows: Vec<&str> = m.constraints().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(
            rows,
            vec![
                "cover_1",
                "cover_2",
                "cover_3",
                "defend_1",
                "defend_2",
                "defend_3",
                "swap_ub_1_2",
                "swap_ub_2_1",
                "swap_ub_2_3",
                "swap_ub_3_2",
                "swap_cover_1_2_3",
                "swap_cover_3_2_1",
            ]
        );
        // swap_cover_1_2_3: zswap_1_2 - x_3 <= 0 (vertex 3 keeps only
        // its own guard once 2 moves to 1).
        let c = &m.constraints()[10];
        assert_eq!(c.terms, vec![(2, rat(-1)), (3, rat(1))]);
        assert_eq!(c.sense, Sense::Le);
        assert_eq!(c.rhs, rat(0));
        let c = &m.constraints()[11];
        assert_eq!(c.terms, vec![(0, rat(-1)), (6, rat(1))]);
    }

    #[test]
    fn swap_ub_ties_guard_occupancy() {
        let m = Baseline.build(&path(3)).unwrap();
        let c = &m.constraints()[6];
        assert_eq!(c.name, "swap_ub_1_2");
        assert_eq!(c.terms, vec![(0, rat(1)), (1, rat(-1)), (3, rat(2))]);
        assert_eq!(c.rhs, rat(1));
    }
}
