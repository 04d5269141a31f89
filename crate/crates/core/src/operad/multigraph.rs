use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::list::FiniteSet;
use crate::slist::TruncSList;

/// An edge with a list of input colors and one output color.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub inputs: Vec<usize>,
    pub output: usize,
}

/// A multigraph: colors and edges. Identity edges are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    colors: FiniteSet,
    edges: Vec<Edge>,
    by_output: Vec<Vec<usize>>,
}

/// An element of `M_1`: an edge or the degenerate edge at a color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Id(usize),
    Edge(usize),
}

impl Multigraph {
    pub fn new(colors: FiniteSet, edges: Vec<Edge>) -> Result<Self> {
        let mut names = HashMap::new();
        for (e, edge) in edges.iter().enumerate() {
            if edge.output >= colors.len() || edge.inputs.iter().any(|&c| c >= colors.len()) {
                return Err(Error::OutOfRange(format!("edge {} names an unknown color", edge.name)));
            }
            if names.insert(edge.name.clone(), e).is_some() {
                return Err(Error::SetMismatch(format!("edge name {} repeated", edge.name)));
            }
        }
        let mut by_output = vec![Vec::new(); colors.len()];
        for (e, edge) in edges.iter().enumerate() {
            by_output[edge.output].push(e);
        }
        Ok(Self { colors, edges, by_output })
    }

    pub fn colors(&self) -> &FiniteSet {
        &self.colors
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// Edges with the given output color.
    pub fn edges_into(&self, c: usize) -> &[usize] {
        &self.by_output[c]
    }

    pub fn inputs(&self, a: Arrow) -> Vec<usize> {
        match a {
            Arrow::Id(c) => vec![c],
            Arrow::Edge(e) => self.edges[e].inputs.clone(),
        }
    }

    pub fn arity(&self, a: Arrow) -> usize {
        match a {
            Arrow::Id(_) => 1,
            Arrow::Edge(e) => self.edges[e].inputs.len(),
        }
    }

    pub fn output(&self, a: Arrow) -> usize {
        match a {
            Arrow::Id(c) => c,
            Arrow::Edge(e) => self.edges[e].output,
        }
    }

    pub fn arrow_label(&self, a: Arrow) -> String {
        match a {
            Arrow::Id(c) => format!("1_{}", self.colors.label(c)),
            Arrow::Edge(e) => self.edges[e].name.clone(),
        }
    }

    /// No directed cycle through edges, so the free operad is finite.
    pub fn is_acyclic(&self) -> bool {
        // 0 unvisited, 1 on stack, 2 done
        fn visit(g: &Multigraph, c: usize, state: &mut [u8]) -> bool {
            match state[c] {
                1 => return false,
                2 => return true,
                _ => {}
            }
            state[c] = 1;
            for &e in &g.by_output[c] {
                for &i in &g.edges[e].inputs {
                    if !visit(g, i, state) {
                        return false;
                    }
                }
            }
            state[c] = 2;
            true
        }
        let mut state = vec![0u8; self.colors.len()];
        (0..self.colors.len()).all(|c| visit(self, c, &mut state))
    }

    /// `M_1` in order: edges, then identities.
    pub fn arrows(&self) -> Vec<Arrow> {
        (0..self.edges.len()).map(Arrow::Edge).chain((0..self.colors.len()).map(Arrow::Id)).collect()
    }

    /// The 1-truncated simplicial list `M_1 ⇉ M_0` with `d_1` a listing.
    pub fn as_slist(&self) -> TruncSList {
        let arrows = self.arrows();
        let m1 = FiniteSet::from_vec_unchecked(arrows.iter().map(|&a| self.arrow_label(a)).collect());
        let d0 = arrows.iter().map(|&a| vec![self.output(a)]).collect();
        let d1 = arrows.iter().map(|&a| self.inputs(a)).collect();
        let s0 = (0..self.colors.len()).map(|c| vec![self.edges.len() + c]).collect();
        TruncSList::from_images(vec![self.colors.clone(), m1], vec![vec![], vec![d0, d1]], vec![vec![s0]])
            .expect("well formed")
    }
}
