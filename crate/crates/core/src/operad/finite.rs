use std::collections::HashMap;

use super::multigraph::Multigraph;
use super::term::{all_terms, term_index, PlanarTerm};
use crate::error::{Error, Result};
use crate::list::FiniteSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operation {
    pub name: String,
    pub inputs: Vec<usize>,
    pub output: usize,
}

#[derive(Clone, Debug)]
enum Rule {
    /// Operations are planar terms; composition grafts.
    Free { graph: Multigraph, terms: Vec<PlanarTerm>, index: HashMap<PlanarTerm, usize> },
    /// Stored composites `(g, fs) -> h` for non-unit cases.
    Table(HashMap<(usize, Vec<usize>), usize>),
    /// At most one operation per profile; composites are looked up by profile.
    Thin,
}

/// A colored operad with finitely many (or arity-bounded) operations.
///
/// `compose` returns `Ok(None)` when the composite exceeds the bound of an
/// arity-bounded view.
#[derive(Clone, Debug)]
pub struct FiniteOperad {
    colors: FiniteSet,
    ops: Vec<Operation>,
    identities: Vec<usize>,
    rule: Rule,
    by_profile: HashMap<(usize, Vec<usize>), Vec<usize>>,
    by_arity: HashMap<(usize, usize), Vec<usize>>,
    bounded: bool,
}

impl FiniteOperad {
    fn assemble(colors: FiniteSet, ops: Vec<Operation>, identities: Vec<usize>, rule: Rule, bounded: bool) -> Self {
        let mut by_profile: HashMap<(usize, Vec<usize>), Vec<usize>> = HashMap::new();
        let mut by_arity: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, op) in ops.iter().enumerate() {
            by_profile.entry((op.output, op.inputs.clone())).or_default().push(i);
            by_arity.entry((op.output, op.inputs.len())).or_default().push(i);
        }
        Self { colors, ops, identities, rule, by_profile, by_arity, bounded }
    }

    /// The free operad on an acyclic multigraph.
    pub fn free(graph: &Multigraph) -> Result<Self> {
        let terms = all_terms(graph)?;
        let ops = terms
            .iter()
            .map(|t| Operation { name: t.render(graph), inputs: t.inputs(), output: t.output(graph) })
            .collect();
        let index = term_index(&terms);
        let identities = (0..graph.colors().len()).map(|c| index[&PlanarTerm::Leaf(c)]).collect();
        let rule = Rule::Free { graph: graph.clone(), terms, index };
        Ok(Self::assemble(graph.colors().clone(), ops, identities, rule, false))
    }

    /// A table-driven operad. Unit laws are implicit; every other composable
    /// tuple must appear in `table`. Unitality and associativity are checked.
    pub fn from_table(
        colors: FiniteSet,
        ops: Vec<Operation>,
        identities: Vec<usize>,
        table: HashMap<(usize, Vec<usize>), usize>,
    ) -> Result<Self> {
        if identities.len() != colors.len() {
            return Err(Error::Identity("one identity per color is required".into()));
        }
        for op in &ops {
            if op.output >= colors.len() || op.inputs.iter().any(|&c| c >= colors.len()) {
                return Err(Error::OutOfRange(format!("operation {} names an unknown color", op.name)));
            }
        }
        for (c, &i) in identities.iter().enumerate() {
            let op = ops.get(i).ok_or_else(|| Error::OutOfRange(format!("identity {i}")))?;
            if op.inputs != [c] || op.output != c {
                return Err(Error::Identity(format!("{} is not unary on {}", op.name, colors.label(c))));
            }
        }
        let p = Self::assemble(colors, ops, identities, Rule::Table(table), false);
        p.validate()?;
        Ok(p)
    }

    /// `Assoc` restricted to arities `0..=bound`: one color, one operation per arity.
    pub fn assoc(bound: usize) -> Self {
        let colors = FiniteSet::from_vec_unchecked(vec!["*".into()]);
        let ops = (0..=bound.max(1)).map(|k| Operation { name: format!("m{k}"), inputs: vec![0; k], output: 0 }).collect();
        Self::assemble(colors, ops, vec![1], Rule::Thin, true)
    }

    /// `Hom_S` restricted to arities `0..=bound`. Colors are pairs of `S`;
    /// the operation of a sequence `(s_0, …, s_k)` is
    /// `((s_0,s_1), …, (s_{k-1},s_k)) -> (s_0,s_k)`.
    pub fn hom_s(s: &FiniteSet, bound: usize) -> Self {
        let n = s.len();
        let pair = |a: usize, b: usize| a * n + b;
        let mut labels = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                labels.push(format!("({},{})", s.label(a), s.label(b)));
            }
        }
        let colors = FiniteSet::from_vec_unchecked(labels);
        let mut ops = Vec::new();
        let mut seq: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
        for _ in 0..=bound.max(1) {
            let mut next = Vec::new();
            for q in &seq {
                let inputs = q.windows(2).map(|w| pair(w[0], w[1])).collect();
                let name = q.iter().map(|&a| s.label(a)).collect::<Vec<_>>().join("");
                ops.push(Operation { name: format!("<{name}>"), inputs, output: pair(q[0], q[q.len() - 1]) });
                for b in 0..n {
                    let mut r = q.clone();
                    r.push(b);
                    next.push(r);
                }
            }
            seq = next;
        }
        let mut p = Self::assemble(colors, ops, Vec::new(), Rule::Thin, true);
        p.identities = (0..n * n).map(|c| p.by_profile[&(c, vec![c])][0]).collect();
        p
    }

    pub fn colors(&self) -> &FiniteSet {
        &self.colors
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn op(&self, i: usize) -> &Operation {
        &self.ops[i]
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn identity(&self, c: usize) -> usize {
        self.identities[c]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        let op = &self.ops[f];
        op.inputs.len() == 1 && self.identities[op.output] == f
    }

    /// True for arity-bounded views of infinite operads.
    pub fn is_bounded_view(&self) -> bool {
        self.bounded
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.inputs.len()).max().unwrap_or(0)
    }

    /// Operations with the given output color and arity.
    pub fn ops_with(&self, output: usize, arity: usize) -> &[usize] {
        self.by_arity.get(&(output, arity)).map_or(&[], Vec::as_slice)
    }

    /// Operations with the given profile.
    pub fn ops_profile(&self, output: usize, inputs: &[usize]) -> &[usize] {
        self.by_profile.get(&(output, inputs.to_vec())).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    /// The planar term of an operation of a free operad.
    pub fn term(&self, f: usize) -> Option<&PlanarTerm> {
        match &self.rule {
            Rule::Free { terms, .. } => terms.get(f),
            _ => None,
        }
    }

    pub fn term_position(&self, t: &PlanarTerm) -> Option<usize> {
        match &self.rule {
            Rule::Free { index, .. } => index.get(t).copied(),
            _ => None,
        }
    }

    pub fn graph(&self) -> Option<&Multigraph> {
        match &self.rule {
            Rule::Free { graph, .. } => Some(graph),
            _ => None,
        }
    }

    /// `g ∘ (f_1, …, f_k)`.
    pub fn compose(&self, g: usize, fs: &[usize]) -> Result<Option<usize>> {
        let gop = self.ops.get(g).ok_or_else(|| Error::OutOfRange(format!("operation {g}")))?;
        if gop.inputs.len() != fs.len() {
            return Err(Error::Arity(format!("{} takes {} inputs, got {}", gop.name, gop.inputs.len(), fs.len())));
        }
        for (&f, &c) in fs.iter().zip(&gop.inputs) {
            let fop = self.ops.get(f).ok_or_else(|| Error::OutOfRange(format!("operation {f}")))?;
            if fop.output != c {
                return Err(Error::IllTyped(format!("{} does not land in {}", fop.name, self.colors.label(c))));
            }
        }
        if self.is_identity(g) {
            return Ok(Some(fs[0]));
        }
        if fs.iter().all(|&f| self.is_identity(f)) {
            return Ok(Some(g));
        }
        match &self.rule {
            Rule::Free { graph, terms, index } => {
                let args: Vec<PlanarTerm> = fs.iter().map(|&f| terms[f].clone()).collect();
                let t = super::term::free_compose(graph, &terms[g], &args)?;
                Ok(Some(index[&t]))
            }
            Rule::Table(table) => table
                .get(&(g, fs.to_vec()))
                .copied()
                .map(Some)
                .ok_or_else(|| Error::NotClosed(format!("no composite for {} with {:?}", gop.name, fs))),
            Rule::Thin => {
                let inputs: Vec<usize> = fs.iter().flat_map(|&f| self.ops[f].inputs.iter().copied()).collect();
                Ok(self.ops_profile(gop.output, &inputs).first().copied())
            }
        }
    }

    /// Composable tuples `(g, fs)` in a fixed order.
    pub fn composable(&self) -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        for g in 0..self.ops.len() {
            let pools: Vec<Vec<usize>> = self.ops[g]
                .inputs
                .iter()
                .map(|&c| (0..self.ops.len()).filter(|&f| self.ops[f].output == c).collect())
                .collect();
            let refs: Vec<&Vec<usize>> = pools.iter().collect();
            for fs in super::term::product(&refs) {
                out.push((g, fs));
            }
        }
        out
    }

    /// Checks closure, unitality and associativity on all composable data.
    pub fn validate(&self) -> Result<()> {
        for (g, fs) in self.composable() {
            let Some(h) = self.compose(g, &fs)? else { continue };
            let hop = &self.ops[h];
            let want: Vec<usize> = fs.iter().flat_map(|&f| self.ops[f].inputs.iter().copied()).collect();
            if hop.output != self.ops[g].output || hop.inputs != want {
                return Err(Error::IllTyped(format!("composite of {} has the wrong profile", self.ops[g].name)));
            }
        }
        for &id in &self.identities {
            for f in 0..self.ops.len() {
                if self.ops[f].output == self.ops[id].output && self.compose(id, &[f])? != Some(f) {
                    return Err(Error::Identity(format!("left unit fails at {}", self.ops[f].name)));
                }
            }
        }
        self.check_associativity()
    }

    /// `(g ∘ fs) ∘ hs = g ∘ (f_i ∘ hs_i)` for every composable triple.
    pub fn check_associativity(&self) -> Result<()> {
        let by_output: Vec<Vec<usize>> =
            (0..self.colors.len()).map(|c| (0..self.ops.len()).filter(|&f| self.ops[f].output == c).collect()).collect();
        for (g, fs) in self.composable() {
            let Some(gf) = self.compose(g, &fs)? else { continue };
            let leaves = &self.ops[gf].inputs;
            let pools: Vec<&Vec<usize>> = leaves.iter().map(|&c| &by_output[c]).collect();
            for hs in super::term::product(&pools) {
                let Some(left) = self.compose(gf, &hs)? else { continue };
                let mut inner = Vec::with_capacity(fs.len());
                let mut rest = hs.as_slice();
                let mut bounded_out = false;
                for &f in &fs {
                    let k = self.ops[f].inputs.len();
                    match self.compose(f, &rest[..k])? {
                        Some(x) => inner.push(x),
                        None => bounded_out = true,
                    }
                    rest = &rest[k..];
                }
                if bounded_out {
                    continue;
                }
                let right = self.compose(g, &inner)?;
                if right != Some(left) {
                    return Err(Error::Invalid(format!(
                        "associativity fails for {} with {:?} and {:?}",
                        self.ops[g].name, fs, hs
                    )));
                }
            }
        }
        Ok(())
    }
}
