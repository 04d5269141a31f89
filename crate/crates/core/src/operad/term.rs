use std::collections::HashMap;
use std::fmt::Write as _;

use super::multigraph::Multigraph;
use crate::error::{Error, Result};

/// Normal form of a free-operad operation: a planar tree labelled by edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanarTerm {
    Leaf(usize),
    Node(usize, Vec<PlanarTerm>),
}

impl PlanarTerm {
    /// The one-node term `e(leaves)`.
    pub fn generator(g: &Multigraph, e: usize) -> Self {
        PlanarTerm::Node(e, g.edge(e).inputs.iter().map(|&c| PlanarTerm::Leaf(c)).collect())
    }

    pub fn output(&self, g: &Multigraph) -> usize {
        match self {
            PlanarTerm::Leaf(c) => *c,
            PlanarTerm::Node(e, _) => g.edge(*e).output,
        }
    }

    /// Leaf colors, left to right.
    pub fn inputs(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            PlanarTerm::Leaf(c) => out.push(*c),
            PlanarTerm::Node(_, ch) => ch.iter().for_each(|t| t.collect_leaves(out)),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            PlanarTerm::Leaf(_) => 1,
            PlanarTerm::Node(_, ch) => ch.iter().map(PlanarTerm::arity).sum(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PlanarTerm::Leaf(_))
    }

    /// Leaves have height 0.
    pub fn height(&self) -> usize {
        match self {
            PlanarTerm::Leaf(_) => 0,
            PlanarTerm::Node(_, ch) => 1 + ch.iter().map(PlanarTerm::height).max().unwrap_or(0),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            PlanarTerm::Leaf(_) => 0,
            PlanarTerm::Node(_, ch) => 1 + ch.iter().map(PlanarTerm::node_count).sum::<usize>(),
        }
    }

    pub fn check(&self, g: &Multigraph) -> Result<()> {
        match self {
            PlanarTerm::Leaf(c) if *c < g.colors().len() => Ok(()),
            PlanarTerm::Leaf(c) => Err(Error::OutOfRange(format!("color {c}"))),
            PlanarTerm::Node(e, ch) => {
                if *e >= g.edges().len() {
                    return Err(Error::OutOfRange(format!("edge {e}")));
                }
                let edge = g.edge(*e);
                if edge.inputs.len() != ch.len() {
                    return Err(Error::Arity(format!("{} takes {} inputs, got {}", edge.name, edge.inputs.len(), ch.len())));
                }
                for (t, &c) in ch.iter().zip(&edge.inputs) {
                    t.check(g)?;
                    if t.output(g) != c {
                        return Err(Error::IllTyped(format!("input of {} expects {}", edge.name, g.colors().label(c))));
                    }
                }
                Ok(())
            }
        }
    }

    /// Infix rendering, e.g. `g(f1(a1),b2)`.
    pub fn render(&self, g: &Multigraph) -> String {
        let mut s = String::new();
        self.render_into(g, &mut s);
        s
    }

    fn render_into(&self, g: &Multigraph, s: &mut String) {
        match self {
            PlanarTerm::Leaf(c) => s.push_str(g.colors().label(*c)),
            PlanarTerm::Node(e, ch) => {
                let _ = write!(s, "{}(", g.edge(*e).name);
                for (i, t) in ch.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    t.render_into(g, s);
                }
                s.push(')');
            }
        }
    }

    fn graft_into(&self, fs: &mut std::slice::Iter<'_, PlanarTerm>) -> PlanarTerm {
        match self {
            PlanarTerm::Leaf(_) => fs.next().expect("arity checked").clone(),
            PlanarTerm::Node(e, ch) => PlanarTerm::Node(*e, ch.iter().map(|t| t.graft_into(fs)).collect()),
        }
    }
}

/// Grafts `fs` onto the leaves of `g`.
pub fn free_compose(graph: &Multigraph, g: &PlanarTerm, fs: &[PlanarTerm]) -> Result<PlanarTerm> {
    let leaves = g.inputs();
    if leaves.len() != fs.len() {
        return Err(Error::Arity(format!("term has {} leaves, got {} arguments", leaves.len(), fs.len())));
    }
    for (i, (f, &c)) in fs.iter().zip(&leaves).enumerate() {
        if f.output(graph) != c {
            return Err(Error::IllTyped(format!(
                "argument {i} has output {}, leaf expects {}",
                graph.colors().label(f.output(graph)),
                graph.colors().label(c)
            )));
        }
    }
    Ok(g.graft_into(&mut fs.iter()))
}

/// All terms of height at most `max_height`, grouped by output color and sorted.
///
/// For an acyclic multigraph, `max_height = colors.len()` yields every term.
pub fn terms_by_height(g: &Multigraph, max_height: usize) -> Vec<Vec<PlanarTerm>> {
    let k = g.colors().len();
    let mut level: Vec<Vec<PlanarTerm>> = (0..k).map(|c| vec![PlanarTerm::Leaf(c)]).collect();
    for _ in 0..max_height {
        let mut next: Vec<Vec<PlanarTerm>> = (0..k).map(|c| vec![PlanarTerm::Leaf(c)]).collect();
        for (c, slot) in next.iter_mut().enumerate() {
            for &e in g.edges_into(c) {
                let pools: Vec<&Vec<PlanarTerm>> = g.edge(e).inputs.iter().map(|&i| &level[i]).collect();
                for choice in product(&pools) {
                    slot.push(PlanarTerm::Node(e, choice));
                }
            }
            slot.sort();
        }
        if next == level {
            break;
        }
        level = next;
    }
    level
}

/// Every term of an acyclic multigraph, sorted.
pub fn all_terms(g: &Multigraph) -> Result<Vec<PlanarTerm>> {
    if !g.is_acyclic() {
        return Err(Error::Invalid("free operad on a cyclic multigraph is infinite".into()));
    }
    let mut all: Vec<PlanarTerm> = terms_by_height(g, g.colors().len()).into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

pub(crate) fn product<T: Clone>(pools: &[&Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for pool in pools {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for prefix in &out {
            for x in pool.iter() {
                let mut v = prefix.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Index of each term in a sorted list.
pub(crate) fn term_index(terms: &[PlanarTerm]) -> HashMap<PlanarTerm, usize> {
    terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect()
}
