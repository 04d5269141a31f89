//! Seeded random generators for listings, shapes, multigraphs, terms and
//! rewrites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::delta::{LeveledShape, MonotoneMap};
use crate::list::{FiniteSet, Listing};
use crate::operad::multigraph::{Edge, Multigraph};
use crate::operad::term::PlanarTerm;
use crate::operad::vector::{block_rows, OpVector, Rewrite};
use crate::operad::Arrow;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A listing `A ⇸ X` with `|A| ≤ max_a`, `|X| ≤ max_x` and image lists of
/// length at most `max_len`.
pub fn listing(rng: &mut SampleRng, max_a: usize, max_x: usize, max_len: usize) -> Listing {
    let a = rng.gen_range(0..=max_a);
    let x = rng.gen_range(0..=max_x);
    listing_between(rng, &FiniteSet::indexed("a", a), &FiniteSet::indexed("x", x), max_len)
}

pub fn listing_between(rng: &mut SampleRng, source: &FiniteSet, target: &FiniteSet, max_len: usize) -> Listing {
    let images = (0..source.len())
        .map(|_| {
            if target.is_empty() {
                Vec::new()
            } else {
                let len = rng.gen_range(0..=max_len);
                (0..len).map(|_| rng.gen_range(0..target.len())).collect()
            }
        })
        .collect();
    Listing::new(source.clone(), target.clone(), images).expect("in range")
}

pub fn monotone(rng: &mut SampleRng, domain: usize, codomain: usize) -> MonotoneMap {
    let mut v: Vec<usize> = (0..domain).map(|_| rng.gen_range(0..codomain)).collect();
    v.sort_unstable();
    MonotoneMap::new(domain, codomain, v).expect("sorted")
}

/// A shape of degree `n` with levels of size at most `max_size`; rooted if asked.
pub fn shape(rng: &mut SampleRng, n: usize, max_size: usize, rooted: bool) -> LeveledShape {
    let mut sizes = vec![0; n + 1];
    sizes[n] = if rooted { 1 } else { rng.gen_range(0..=max_size) };
    for i in (0..n).rev() {
        sizes[i] = if sizes[i + 1] == 0 { 0 } else { rng.gen_range(0..=max_size) };
    }
    let maps = (0..n).map(|i| monotone(rng, sizes[i], sizes[i + 1])).collect();
    LeveledShape::new(sizes, maps).expect("consistent")
}

/// A random acyclic multigraph: edge inputs use only colors below the output.
pub fn acyclic_multigraph(rng: &mut SampleRng, colors: usize, edges: usize, max_arity: usize) -> Multigraph {
    let colors = colors.max(1);
    let mut es = Vec::with_capacity(edges);
    for e in 0..edges {
        let output = rng.gen_range(0..colors);
        let arity = if output == 0 { 0 } else { rng.gen_range(0..=max_arity) };
        let inputs = (0..arity).map(|_| rng.gen_range(0..output)).collect();
        es.push(Edge { name: format!("e{e}"), inputs, output });
    }
    Multigraph::new(FiniteSet::indexed("c", colors), es).expect("well formed")
}

/// A random term with output `color`, at most `depth` levels of nodes.
pub fn term(rng: &mut SampleRng, g: &Multigraph, color: usize, depth: usize) -> PlanarTerm {
    let into = g.edges_into(color);
    if depth == 0 || into.is_empty() || rng.gen_bool(0.25) {
        return PlanarTerm::Leaf(color);
    }
    let e = *into.choose(rng).expect("non-empty");
    let ch = g.edge(e).inputs.iter().map(|&c| term(rng, g, c, depth - 1)).collect();
    PlanarTerm::Node(e, ch)
}

/// A term whose output color has incoming edges when possible.
pub fn any_term(rng: &mut SampleRng, g: &Multigraph, depth: usize) -> PlanarTerm {
    let with_edges: Vec<usize> = (0..g.colors().len()).filter(|&c| !g.edges_into(c).is_empty()).collect();
    let c = with_edges.choose(rng).copied().unwrap_or_else(|| rng.gen_range(0..g.colors().len()));
    term(rng, g, c, depth)
}

/// A legal (U) or (OU) rewrite of `v`, or `None` if the sampled kind does not apply.
pub fn rewrite(rng: &mut SampleRng, g: &Multigraph, v: &OpVector) -> Option<Rewrite> {
    let len = v.len();
    match rng.gen_range(0..3) {
        0 => Some(Rewrite::InsertColumn { at: rng.gen_range(0..=len) }),
        1 => {
            let cands: Vec<usize> = (0..len)
                .filter(|&j| len > 1 && v.entries[j].iter().all(|a| matches!(a, Arrow::Id(_))))
                .collect();
            cands.choose(rng).map(|&at| Rewrite::RemoveColumn { at })
        }
        _ => {
            let start = rng.gen_range(0..len);
            let end = rng.gen_range(start + 1..=len);
            let rows = block_rows(g, &v.entries[start..end]);
            if rows.is_empty() {
                return None;
            }
            let row = rng.gen_range(0..rows.len());
            let ids: Vec<usize> = (0..end - start)
                .filter(|&j| rows[row][j].iter().all(|a| matches!(a, Arrow::Id(_))))
                .collect();
            let from = *ids.choose(rng)?;
            let to = rng.gen_range(0..end - start);
            Some(Rewrite::MoveIdentity { start, end, row, from, to })
        }
    }
}
