use super::{
    append_cover_rows, model_name, ordered_adjacent_pairs, Formulation, FormulationError,
};
use crate::certify::Property;
use crate::graphs::Graph;
use crate::model::{rat, LinearModel, ModelError, Rat, Sense};
use num_traits::Zero;
use std::collections::HashMap;

/// Occupancy of one vertex as an affine expression, so the same
/// connectivity block serves both the plain guard set and the
/// post-incursion configurations.
pub(super) struct ZExpr {
    pub terms: Vec<(usize, Rat)>,
    pub constant: Rat,
}

impl ZExpr {
    pub fn var(idx: usize) -> Self {
        ZExpr {
            terms: vec![(idx, rat(1))],
            constant: Rat::zero(),
        }
    }
}

/// Appends a rooted-spanning-tree certificate that the occupied
/// vertices induce a connected subgraph.
///
/// Two helper labels extend the vertex labels 1..=n: n+1 is an outside
/// root that adopts every unoccupied vertex directly, and n+2 is the
/// tree root through which all occupied vertices hang together. Arc
/// choice variables `<w>_<a>_<b>` pick each vertex's parent, and rank
/// variables `<u>_<a>` (the outside root's rank is the constant 0)
/// make parent links strictly rank-increasing, which rules out cycles.
pub(super) fn append_connectivity_block(
    m: &mut LinearModel,
    g: &Graph,
    z: &mut dyn FnMut(usize) -> ZExpr,
    w_prefix: &str,
    u_prefix: &str,
    row_suffix: &str,
) -> Result<(), ModelError> {
    let n = g.n();
    let r1 = n + 1;
    let r2 = n + 2;
    let big = rat(n as i64 + 1);
    let edge_arcs: Vec<(usize, usize)> = ordered_adjacent_pairs(g)
        .into_iter()
        .map(|(a, b)| (a + 1, b + 1))
        .collect();
    let mut arcs = edge_arcs.clone();
    arcs.extend((1..=n).map(|i| (r1, i)));
    arcs.extend((1..=n).map(|i| (r2, i)));
    arcs.push((r1, r2));

    let mut w: HashMap<(usize, usize), usize> = HashMap::with_capacity(arcs.len());
    for &(a, b) in &arcs {
        w.insert((a, b), m.add_binary(format!("{w_prefix}_{a}_{b}"))?);
    }
    let mut u: HashMap<usize, usize> = HashMap::with_capacity(n + 1);
    for label in (1..=n).chain([r2]) {
        u.insert(
            label,
            m.add_continuous(format!("{u_prefix}_{label}"), rat(1), Some(big))?,
        );
    }

    // The tree root adopts exactly one vertex.
    m.add_constraint(
        format!("root_degree{row_suffix}"),
        (1..=n).map(|i| (w[&(r2, i)], rat(1))).collect(),
        Sense::Eq,
        rat(1),
    )?;
    // Every vertex has exactly one parent.
    for j in 1..=n {
        let mut terms: Vec<(usize, Rat)> = g
            .neighbors(j - 1)
            .iter()
            .map(|&i| (w[&(i + 1, j)], rat(1)))
            .collect();
        terms.push((w[&(r1, j)], rat(1)));
        terms.push((w[&(r2, j)], rat(1)));
        m.add_constraint(format!("indeg_{j}{row_suffix}"), terms, Sense::Eq, rat(1))?;
    }
    // A vertex adopted by the outside root parents nobody.
    for &(a, b) in &edge_arcs {
        m.add_constraint(
            format!("wblock_{a}_{b}{row_suffix}"),
            vec![(w[&(r1, a)], rat(1)), (w[&(a, b)], rat(1))],
            Sense::Le,
            rat(1),
        )?;
    }
    // Chosen parent links climb the ranks, so no cycle can close.
    for &(a, b) in &arcs {
        let mut terms = vec![(w[&(a, b)], big)];
        if a != r1 {
            terms.push((u[&a], rat(1)));
        }
        terms.push((u[&b], rat(-1)));
        if a <= n && b <= n {
            terms.push((w[&(b, a)], rat(n as i64 - 1)));
        }
        m.add_constraint(
            format!("mtz_{a}_{b}{row_suffix}"),
            terms,
            Sense::Le,
            rat(n as i64),
        )?;
    }
    m.add_constraint(
        format!("root_link{row_suffix}"),
        vec![(w[&(r1, r2)], rat(1))],
        Sense::Eq,
        rat(1),
    )?;
    // Occupied vertices are exactly the ones the outside root does not
    // adopt.
    for i in 0..n {
        let ZExpr { mut terms, constant } = z(i);
        terms.push((w[&(r1, i + 1)], rat(1)));
        m.add_constraint(
            format!("guard_link_{}{row_suffix}", i + 1),
            terms,
            Sense::Eq,
            rat(1) - constant,
        )?;
    }
    Ok(())
}

/// Minimum connected dominating set.
pub struct Connected;

impl Formulation for Connected {
    fn name(&self) -> &'static str {
        "cdom"
    }

    fn description(&self) -> &'static str {
        "connected domination via a rooted-spanning-tree connectivity certificate"
    }

    fn property(&self) -> Property {
        Property::ConnectedDominating
    }

    fn build(&self, g: &Graph) -> Result<LinearModel, FormulationError> {
        if !g.is_connected() {
            return Err(FormulationError::Disconnected { kind: "cdom" });
        }
        let mut m = LinearModel::new(model_name(self.name(), g));
        let x: Vec<usize> = (0..g.n())
            .map(|i| m.add_binary(format!("x_{}", i + 1)))
            .collect::<Result<_, _>>()?;
        m.set_objective(x.iter().map(|&xi| (xi, rat(1))).collect())?;
        append_cover_rows(&mut m, g, &x)?;
        append_connectivity_block(&mut m, g, &mut |i| ZExpr::var(x[i]), "w", "u", "")?;
        Ok(m)
    }
}
