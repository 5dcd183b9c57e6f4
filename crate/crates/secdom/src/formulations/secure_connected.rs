use super::connected::{append_connectivity_block, ZExpr};
use super::improved::append_improved;
use super::{model_name, Formulation, FormulationError};
use crate::certify::Property;
use crate::graphs::Graph;
use crate::model::{rat, LinearModel, Rat};
use num_traits::Zero;

/// Secure connected domination: the guard set must stay connected, and
/// so must each configuration reached by answering an incursion.
///
/// The secure-domination block supplies x and the designations y; a
/// base connectivity block ties x together; then for each potential
/// incursion vertex k a fresh block (`wk_<k>_*`, `uk_<k>_*`) certifies
/// connectivity of the post-incursion occupancy, which is an affine
/// function of x and y.
pub struct SecureConnected;

impl Formulation for SecureConnected {
    fn name(&self) -> &'static str {
        "scdom"
    }

    fn description(&self) -> &'static str {
        "secure connected domination with one connectivity block per incursion vertex"
    }

    fn property(&self) -> Property {
        Property::SecureConnectedDominating
    }

    fn build(&self, g: &Graph) -> Result<LinearModel, FormulationError> {
        if !g.is_connected() {
            return Err(FormulationError::Disconnected { kind: "scdom" });
        }
        let mut m = LinearModel::new(model_name(self.name(), g));
        let iv = append_improved(&mut m, g)?;
        append_connectivity_block(&mut m, g, &mut |i| ZExpr::var(iv.x[i]), "w", "u", "")?;
        for k in 0..g.n() {
            let w_prefix = format!("wk_{}", k + 1);
            let u_prefix = format!("uk_{}", k + 1);
            let row_suffix = format!("_k{}", k + 1);
            append_connectivity_block(
                &mut m,
                g,
                &mut |i| {
                    if i == k {
                        // the incursion vertex ends up occupied
                        ZExpr {
                            terms: Vec::new(),
                            constant: rat(1),
                        }
                    } else if g.has_edge(i, k) {
                        // a neighbor keeps its guard unless designated
                        ZExpr {
                            terms: vec![(iv.x[i], rat(1)), (iv.y[&(i, k)], rat(-1))],
                            constant: Rat::zero(),
                        }
                    } else {
                        ZExpr::var(iv.x[i])
                    }
                },
                &w_prefix,
                &u_prefix,
                &row_suffix,
            )?;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sense;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn cycle4_sizes() {
        let g = cycle(4);
        let m = SecureConnected.build(&g).unwrap();
        let s = m.stats();
        let (n, mm) = (4usize, 4usize);
        let improved_rows = 2 * n + 2 * mm + g.dist2_pairs().len();
        let block_rows = 4 * n + 4 * mm + 3;
        assert_eq!(s.n_constraints, improved_rows + (n + 1) * block_rows);
        let block_w = 2 * mm + 2 * n + 1;
        assert_eq!(s.n_binary, n + (n + 1) * block_w);
        assert_eq!(s.n_continuous, 2 * mm + (n + 1) * (n + 1));
    }

    #[test]
    fn incursion_vertex_is_pinned_occupied() {
        let g = cycle(4);
        let m = SecureConnected.build(&g).unwrap();
        // At the incursion vertex itself the occupancy is the constant
        // 1, so the row collapses to wk_1_5_1 = 0.
        let c = m
            .constraints()
            .iter()
            .find(|c| c.name == "guard_link_1_k1")
            .unwrap();
        assert_eq!(c.terms, vec![(m.var_index("wk_1_5_1").unwrap(), rat(1))]);
        assert_eq!(c.sense, Sense::Eq);
        assert_eq!(c.rhs, rat(0));
        // A neighbor of the incursion vertex may lose its guard to the
        // designation: x_2 - y_2_1 + wk_1_5_2 = 1.
        let c = m
            .constraints()
            .iter()
            .find(|c| c.name == "guard_link_2_k1")
            .unwrap();
        let mut want = vec![
            (m.var_index("x_2").unwrap(), rat(1)),
            (m.var_index("y_2_1").unwrap(), rat(-1)),
            (m.var_index("wk_1_5_2").unwrap(), rat(1)),
        ];
        want.sort_by_key(|&(i, _)| i);
        assert_eq!(c.terms, want);
        assert_eq!(c.rhs, rat(1));
        // The opposite vertex keeps plain occupancy: x_3 + wk_1_5_3 = 1.
        let c = m
            .constraints()
            .iter()
            .find(|c| c.name == "guard_link_3_k1")
            .unwrap();
        assert_eq!(c.terms.len(), 2);
        assert_eq!(c.rhs, rat(1));
    }

    #[test]
    fn scdom_rejects_disconnected_input() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(
            SecureConnected.build(&g).unwrap_err(),
            FormulationError::Disconnected { kind: "scdom" }
        );
    }
}
