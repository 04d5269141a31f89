//! The monoidal envelope `L P`, restricted to color sequences of bounded length.

use std::collections::HashMap;

use super::finite::FiniteOperad;
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};

/// A morphism of `L P`: one operation per target color. The monotone map
/// of positions is read off the arities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnvMorphism {
    pub ops: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Envelope<'a> {
    p: &'a FiniteOperad,
    maxlen: usize,
    objects: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl<'a> Envelope<'a> {
    pub fn new(p: &'a FiniteOperad, maxlen: usize) -> Self {
        let k = p.colors().len();
        let mut objects = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..maxlen {
            let mut next = Vec::new();
            for s in &layer {
                for c in 0..k {
                    let mut t: Vec<usize> = s.clone();
                    t.push(c);
                    next.push(t);
                }
            }
            objects.extend(next.iter().cloned());
            layer = next;
        }
        let index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        Self { p, maxlen, objects, index }
    }

    pub fn operad(&self) -> &FiniteOperad {
        self.p
    }

    pub fn maxlen(&self) -> usize {
        self.maxlen
    }

    /// Objects by length, then lexicographically.
    pub fn objects(&self) -> &[Vec<usize>] {
        &self.objects
    }

    pub fn object_index(&self, x: &[usize]) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn source(&self, m: &EnvMorphism) -> Vec<usize> {
        m.ops.iter().flat_map(|&f| self.p.op(f).inputs.iter().copied()).collect()
    }

    pub fn target(&self, m: &EnvMorphism) -> Vec<usize> {
        m.ops.iter().map(|&f| self.p.op(f).output).collect()
    }

    /// The monotone map of positions underlying `m`.
    pub fn position_map(&self, m: &EnvMorphism) -> MonotoneMap {
        let mut vals = Vec::new();
        for (b, &f) in m.ops.iter().enumerate() {
            vals.extend(std::iter::repeat_n(b, self.p.op(f).inputs.len()));
        }
        MonotoneMap::new(vals.len(), m.ops.len(), vals).expect("monotone by construction")
    }

    pub fn identity(&self, x: &[usize]) -> EnvMorphism {
        EnvMorphism { ops: x.iter().map(|&c| self.p.identity(c)).collect() }
    }

    /// `L P(x, y)` in lexicographic order of the operation lists.
    pub fn hom(&self, x: &[usize], y: &[usize]) -> Vec<EnvMorphism> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(y.len());
        self.hom_rec(x, y, 0, &mut cur, &mut out);
        out.sort();
        out
    }

    fn hom_rec(&self, x: &[usize], y: &[usize], pos: usize, cur: &mut Vec<usize>, out: &mut Vec<EnvMorphism>) {
        let b = cur.len();
        if b == y.len() {
            if pos == x.len() {
                out.push(EnvMorphism { ops: cur.clone() });
            }
            return;
        }
        for end in pos..=x.len() {
            for &f in self.p.ops_profile(y[b], &x[pos..end]) {
                cur.push(f);
                self.hom_rec(x, y, end, cur, out);
                cur.pop();
            }
        }
    }

    /// Morphisms out of `x` into any object of the envelope.
    pub fn hom_from(&self, x: &[usize]) -> Vec<EnvMorphism> {
        let mut out = Vec::new();
        for y in &self.objects {
            out.extend(self.hom(x, y));
        }
        out
    }

    /// `|L P(x, y)|` from the coproduct over monotone maps of products of
    /// operation sets.
    pub fn hom_count_formula(&self, x: &[usize], y: &[usize]) -> u128 {
        MonotoneMap::all(x.len(), y.len())
            .iter()
            .map(|phi| {
                (0..y.len())
                    .map(|b| {
                        let block: Vec<usize> = phi.fiber(b).map(|a| x[a]).collect();
                        self.p.ops_profile(y[b], &block).len() as u128
                    })
                    .product::<u128>()
            })
            .sum()
    }

    /// `g ∘ f`; `None` if a composite leaves the arity bound of `P`.
    pub fn compose(&self, g: &EnvMorphism, f: &EnvMorphism) -> Result<Option<EnvMorphism>> {
        if self.target(f) != self.source(g) {
            return Err(Error::NonCommuting("morphisms are not composable".into()));
        }
        let mut ops = Vec::with_capacity(g.ops.len());
        let mut rest = f.ops.as_slice();
        for &h in &g.ops {
            let k = self.p.op(h).inputs.len();
            match self.p.compose(h, &rest[..k])? {
                Some(c) => ops.push(c),
                None => return Ok(None),
            }
            rest = &rest[k..];
        }
        Ok(Some(EnvMorphism { ops }))
    }

    /// All chains `x_0 → … → x_n` of objects in the envelope, as the start
    /// object and the `n` morphisms.
    pub fn chains(&self, n: usize) -> Vec<(Vec<usize>, Vec<EnvMorphism>)> {
        let outs: Vec<Vec<EnvMorphism>> = self.objects.iter().map(|x| self.hom_from(x)).collect();
        let mut out = Vec::new();
        for (i, x) in self.objects.iter().enumerate() {
            let mut stack = vec![(i, Vec::<EnvMorphism>::new())];
            while let Some((obj, chain)) = stack.pop() {
                if chain.len() == n {
                    out.push((x.clone(), chain));
                    continue;
                }
                for m in &outs[obj] {
                    let t = self.object_index(&self.target(m)).expect("target in envelope");
                    let mut c = chain.clone();
                    c.push(m.clone());
                    stack.push((t, c));
                }
            }
        }
        out
    }

    /// Number of `n`-chains, counted without materializing them.
    pub fn count_chains(&self, n: usize) -> u128 {
        let mut ways: Vec<u128> = vec![1; self.objects.len()];
        let outs: Vec<Vec<usize>> = self
            .objects
            .iter()
            .map(|x| self.hom_from(x).iter().map(|m| self.object_index(&self.target(m)).expect("in envelope")).collect())
            .collect();
        for _ in 0..n {
            ways = outs.iter().map(|ts| ts.iter().map(|&t| ways[t]).sum()).collect();
        }
        ways.iter().sum()
    }
}
