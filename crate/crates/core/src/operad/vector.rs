//! Operation vectors and matrices over a multigraph.
//!
//! An entry is a list of arrows; the empty entry is the dummy `1_∅`.
//! Entries compose left to right: the outputs of entry `i` are the inputs
//! of entry `i + 1`.

use super::multigraph::{Arrow, Multigraph};
use super::term::PlanarTerm;
use crate::error::{Error, Result};

pub type Entry = Vec<Arrow>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpVector {
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperationMatrix {
    pub rows: Vec<OpVector>,
}

/// A single legal rewrite of an operation vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rewrite {
    /// (U): insert an all-identity column before column `at`.
    InsertColumn { at: usize },
    /// (U): remove column `at`, which must be all identities.
    RemoveColumn { at: usize },
    /// (OU): write columns `start..end` as a matrix `K` with one row per
    /// output of column `end - 1`, and within row `row` move an identity
    /// entry from position `from` to position `to` (RU on `K`).
    MoveIdentity { start: usize, end: usize, row: usize, from: usize, to: usize },
}

pub fn entry_inputs(g: &Multigraph, e: &Entry) -> Vec<usize> {
    e.iter().flat_map(|&a| g.inputs(a)).collect()
}

pub fn entry_outputs(g: &Multigraph, e: &Entry) -> Vec<usize> {
    e.iter().map(|&a| g.output(a)).collect()
}

fn is_identity_entry(e: &Entry) -> bool {
    e.iter().all(|a| matches!(a, Arrow::Id(_)))
}

fn identity_entry(colors: &[usize]) -> Entry {
    colors.iter().map(|&c| Arrow::Id(c)).collect()
}

impl OpVector {
    pub fn new(entries: Vec<Entry>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries compose; the last entry is a singleton.
    pub fn check(&self, g: &Multigraph) -> Result<()> {
        self.check_row(g)?;
        match self.entries.last() {
            Some(e) if e.len() == 1 => Ok(()),
            _ => Err(Error::IllTyped("operation vector must end in a singleton entry".into())),
        }
    }

    /// Composability only; rows of a matrix block may end in any list.
    fn check_row(&self, g: &Multigraph) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::IllTyped("empty operation vector".into()));
        }
        for (i, w) in self.entries.windows(2).enumerate() {
            if entry_outputs(g, &w[0]) != entry_inputs(g, &w[1]) {
                return Err(Error::IllTyped(format!("entries {i} and {} do not compose", i + 1)));
            }
        }
        Ok(())
    }

    pub fn inputs(&self, g: &Multigraph) -> Vec<usize> {
        entry_inputs(g, &self.entries[0])
    }

    pub fn outputs(&self, g: &Multigraph) -> Vec<usize> {
        entry_outputs(g, self.entries.last().expect("non-empty"))
    }

    /// Wire colors before column `at` (`at == len` gives the outputs).
    fn wires(&self, g: &Multigraph, at: usize) -> Vec<usize> {
        if at < self.entries.len() {
            entry_inputs(g, &self.entries[at])
        } else {
            self.outputs(g)
        }
    }

    /// Identity entries on the inputs, prepended until the length is `len`.
    pub fn pad_front(&self, g: &Multigraph, len: usize) -> OpVector {
        let mut entries = vec![identity_entry(&self.inputs(g)); len.saturating_sub(self.len())];
        entries.extend(self.entries.iter().cloned());
        OpVector { entries }
    }

    pub fn render(&self, g: &Multigraph) -> String {
        let cols: Vec<String> = self
            .entries
            .iter()
            .map(|e| {
                if e.is_empty() {
                    "1_∅".to_string()
                } else if e.len() == 1 {
                    g.arrow_label(e[0])
                } else {
                    format!("({})", e.iter().map(|&a| g.arrow_label(a)).collect::<Vec<_>>().join("/"))
                }
            })
            .collect();
        format!("[{}]", cols.join(" "))
    }

    /// Applies a rewrite, checking that it is legal here.
    pub fn rewrite(&self, g: &Multigraph, r: &Rewrite) -> Result<OpVector> {
        match *r {
            Rewrite::InsertColumn { at } => {
                if at > self.len() {
                    return Err(Error::OutOfRange(format!("column {at}")));
                }
                let mut entries = self.entries.clone();
                entries.insert(at, identity_entry(&self.wires(g, at)));
                Ok(OpVector { entries })
            }
            Rewrite::RemoveColumn { at } => {
                if at >= self.len() || self.len() == 1 || !is_identity_entry(&self.entries[at]) {
                    return Err(Error::Invalid(format!("column {at} is not a removable identity column")));
                }
                let mut entries = self.entries.clone();
                entries.remove(at);
                Ok(OpVector { entries })
            }
            Rewrite::MoveIdentity { start, end, row, from, to } => {
                if start >= end || end > self.len() {
                    return Err(Error::OutOfRange(format!("block {start}..{end}")));
                }
                let width = end - start;
                let mut block = block_rows(g, &self.entries[start..end]);
                if row >= block.len() || from >= width || to >= width {
                    return Err(Error::OutOfRange("row or position outside the block".into()));
                }
                let r = &mut block[row];
                if !is_identity_entry(&r[from]) {
                    return Err(Error::Invalid(format!("entry {from} of row {row} is not an identity")));
                }
                let moved = entry_outputs(g, &r.remove(from));
                let wires = if r.is_empty() {
                    moved
                } else if to < r.len() {
                    entry_inputs(g, &r[to])
                } else {
                    entry_outputs(g, &r[r.len() - 1])
                };
                r.insert(to, identity_entry(&wires));
                let mut entries = self.entries.clone();
                for (j, col) in entries[start..end].iter_mut().enumerate() {
                    *col = block.iter().flat_map(|r| r[j].iter().copied()).collect();
                }
                Ok(OpVector { entries })
            }
        }
    }
}

/// Splits consecutive columns into rows, one per output of the last column.
/// Each row is a list of entries, one per column.
pub fn block_rows(g: &Multigraph, cols: &[Entry]) -> Vec<Vec<Entry>> {
    let w = cols.len();
    let last = &cols[w - 1];
    let mut rows: Vec<Vec<Entry>> = last.iter().map(|&a| {
        let mut r = vec![Vec::new(); w];
        r[w - 1] = vec![a];
        r
    }).collect();
    for j in (0..w - 1).rev() {
        // each arrow in column j feeds exactly one wire of column j + 1
        let mut pos = 0;
        for r in rows.iter_mut() {
            let need: usize = r[j + 1].iter().map(|&a| g.arity(a)).sum();
            r[j] = cols[j][pos..pos + need].to_vec();
            pos += need;
        }
    }
    rows
}

/// Reads a vector as a planar term.
pub fn vector_to_term(g: &Multigraph, v: &OpVector) -> Result<PlanarTerm> {
    v.check(g)?;
    let mut wires: Vec<PlanarTerm> = v.inputs(g).into_iter().map(PlanarTerm::Leaf).collect();
    for entry in &v.entries {
        let mut it = wires.into_iter();
        let mut next = Vec::with_capacity(entry.len());
        for &a in entry {
            match a {
                Arrow::Id(_) => next.push(it.next().expect("typed")),
                Arrow::Edge(e) => {
                    let ch: Vec<PlanarTerm> = it.by_ref().take(g.edge(e).inputs.len()).collect();
                    next.push(PlanarTerm::Node(e, ch));
                }
            }
        }
        wires = next;
    }
    Ok(wires.pop().expect("singleton"))
}

/// The bottom-aligned representative: a node at depth `d` sits in column
/// `H - 1 - d`, and shallower leaves are carried by identities.
pub fn term_to_vector(g: &Multigraph, t: &PlanarTerm) -> OpVector {
    let h = t.height();
    if h == 0 {
        return OpVector { entries: vec![vec![Arrow::Id(t.output(g))]] };
    }
    let entries = (0..h).map(|j| {
        let mut col = Vec::new();
        slice(t, h - 1 - j, 0, &mut col);
        col
    });
    OpVector { entries: entries.collect() }
}

fn slice(t: &PlanarTerm, target: usize, depth: usize, out: &mut Entry) {
    match t {
        PlanarTerm::Leaf(c) => out.push(Arrow::Id(*c)),
        PlanarTerm::Node(e, ch) => {
            if depth == target {
                out.push(Arrow::Edge(*e));
            } else {
                ch.iter().for_each(|c| slice(c, target, depth + 1, out));
            }
        }
    }
}

pub fn ou_equivalent(g: &Multigraph, v: &OpVector, w: &OpVector) -> Result<bool> {
    Ok(vector_to_term(g, v)? == vector_to_term(g, w)?)
}

impl OperationMatrix {
    pub fn new(g: &Multigraph, rows: Vec<OpVector>) -> Result<Self> {
        let m = Self { rows };
        m.check(g)?;
        Ok(m)
    }

    pub fn check(&self, g: &Multigraph) -> Result<()> {
        let len = self.width();
        for (i, r) in self.rows.iter().enumerate() {
            if r.len() != len {
                return Err(Error::Arity(format!("row {i} has length {}, expected {len}", r.len())));
            }
            r.check_row(g)?;
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, OpVector::len)
    }

    pub fn inputs(&self, g: &Multigraph) -> Vec<usize> {
        self.rows.iter().flat_map(|r| r.inputs(g)).collect()
    }

    pub fn outputs(&self, g: &Multigraph) -> Vec<usize> {
        self.rows.iter().flat_map(|r| r.outputs(g)).collect()
    }

    /// One term per row.
    pub fn terms(&self, g: &Multigraph) -> Result<Vec<PlanarTerm>> {
        self.rows.iter().map(|r| vector_to_term(g, r)).collect()
    }
}

/// `M ⊙ N`: the rows of `M` feeding each row of `N` are stacked column-wise
/// and followed by that row.
pub fn concat(g: &Multigraph, m: &OperationMatrix, n: &OperationMatrix) -> Result<OperationMatrix> {
    if m.outputs(g) != n.inputs(g) {
        return Err(Error::IllTyped("outputs of the first matrix differ from inputs of the second".into()));
    }
    let w = m.width();
    let mut src = m.rows.iter();
    let mut rows = Vec::with_capacity(n.rows.len());
    for r in &n.rows {
        let mut need = r.inputs(g).len();
        let mut entries: Vec<Entry> = vec![Vec::new(); w];
        while need > 0 {
            let mr = src.next().expect("outputs matched");
            let k = mr.entries[w - 1].len();
            if k > need {
                return Err(Error::IllTyped("row boundaries of the two matrices do not align".into()));
            }
            need -= k;
            for (e, me) in entries.iter_mut().zip(&mr.entries) {
                e.extend(me.iter().copied());
            }
        }
        entries.extend(r.entries.iter().cloned());
        rows.push(OpVector { entries });
    }
    // rows of M with no outputs are absorbed by nothing; they must not exist
    if src.next().is_some() {
        return Err(Error::IllTyped("a row of the first matrix has no outputs".into()));
    }
    Ok(OperationMatrix { rows })
}

pub fn split(m: &OperationMatrix) -> Vec<OpVector> {
    m.rows.clone()
}

/// Pads every vector with front identities to the common length.
pub fn pack(g: &Multigraph, vs: &[OpVector]) -> OperationMatrix {
    let len = vs.iter().map(OpVector::len).max().unwrap_or(0);
    OperationMatrix { rows: vs.iter().map(|v| v.pad_front(g, len)).collect() }
}

/// Identity padding inserted at column `at` of the shorter rows.
pub fn pack_at(g: &Multigraph, vs: &[OpVector], at: usize) -> OperationMatrix {
    let len = vs.iter().map(OpVector::len).max().unwrap_or(0);
    let rows = vs
        .iter()
        .map(|v| {
            let mut v = v.clone();
            let pos = at.min(v.len());
            while v.len() < len {
                v = v.rewrite(g, &Rewrite::InsertColumn { at: pos }).expect("in range");
            }
            v
        })
        .collect();
    OperationMatrix { rows }
}

/// Composite in the free operad computed on vectors: `Pack(fs) ⊙ [g]`.
pub fn compose_vectors(g: &Multigraph, outer: &OpVector, fs: &[OpVector]) -> Result<OpVector> {
    let m = pack(g, fs);
    let n = OperationMatrix { rows: vec![outer.clone()] };
    let mut r = concat(g, &m, &n)?;
    Ok(r.rows.pop().expect("one row"))
}
