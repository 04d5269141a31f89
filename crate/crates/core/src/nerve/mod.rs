//! List nerves of operads, the inverse construction, horn checks and the
//! comparison with the monoidal envelope.

mod envelope;
mod horn;
mod realize;

use std::collections::HashMap;

use crate::delta::{act, rooted_components, Component, LeveledShape, MonotoneMap};
use crate::error::{Error, Result};
use crate::list::FiniteSet;
use crate::operad::key::generator_index;
use crate::operad::{FiniteOperad, KeyOperad, OperadMorphism};
use crate::slist::{Representable, SListMorphism, TruncSList};

pub use envelope::{check_envelope_iso, EnvelopeReport};
pub use horn::{inner_horns, is_quasi_operad, Horn, HornReport, QuasiReport};
pub use realize::{check_nerve_iso, check_realized_iso, realize_operad, spine_simplex};

/// Bounds for a list nerve: truncation degree `D` and level-size bound `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NerveSpec {
    pub dim: usize,
    pub bound: usize,
}

/// An `n`-simplex of `Nˡ P`: a rooted shape and a morphism `T_α → P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveSimplex {
    pub shape: LeveledShape,
    pub morphism: OperadMorphism,
}

#[derive(Clone, Debug)]
pub struct Nerve {
    spec: NerveSpec,
    simplices: Vec<Vec<NerveSimplex>>,
    index: Vec<HashMap<NerveSimplex, usize>>,
    slist: TruncSList,
}

impl Nerve {
    pub fn spec(&self) -> NerveSpec {
        self.spec
    }

    pub fn slist(&self) -> &TruncSList {
        &self.slist
    }

    pub fn into_slist(self) -> TruncSList {
        self.slist
    }

    pub fn simplices(&self, n: usize) -> &[NerveSimplex] {
        &self.simplices[n]
    }

    pub fn index_of(&self, n: usize, s: &NerveSimplex) -> Option<usize> {
        self.index.get(n)?.get(s).copied()
    }
}

/// All rooted `n`-simplices with levels of size at most `bound`, sorted.
///
/// The search runs from the root down: a color for the root, then one
/// operation per element of each level, which fixes the next level.
pub fn nerve_simplices(p: &FiniteOperad, n: usize, bound: usize) -> Vec<NerveSimplex> {
    let mut by_output: Vec<Vec<usize>> = vec![Vec::new(); p.colors().len()];
    for (f, op) in p.ops().iter().enumerate() {
        if op.inputs.len() <= bound {
            by_output[op.output].push(f);
        }
    }
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    for c in 0..p.colors().len() {
        // levels from the top: (colors, ops chosen for the level above)
        let mut levels: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![c], Vec::new())];
        descend(p, &by_output, n, bound, &mut levels, &mut out);
    }
    out.sort();
    out
}

fn descend(
    p: &FiniteOperad,
    by_output: &[Vec<usize>],
    n: usize,
    bound: usize,
    levels: &mut Vec<(Vec<usize>, Vec<usize>)>,
    out: &mut Vec<NerveSimplex>,
) {
    if levels.len() == n + 1 {
        out.push(assemble(p, levels));
        return;
    }
    let colors = levels.last().expect("non-empty").0.clone();
    let mut chosen = Vec::with_capacity(colors.len());
    choose(p, by_output, n, bound, &colors, 0, &mut chosen, levels, out);
}

#[allow(clippy::too_many_arguments)]
fn choose(
    p: &FiniteOperad,
    by_output: &[Vec<usize>],
    n: usize,
    bound: usize,
    colors: &[usize],
    used: usize,
    chosen: &mut Vec<usize>,
    levels: &mut Vec<(Vec<usize>, Vec<usize>)>,
    out: &mut Vec<NerveSimplex>,
) {
    if chosen.len() == colors.len() {
        let below: Vec<usize> = chosen.iter().flat_map(|&f| p.op(f).inputs.iter().copied()).collect();
        levels.push((below, chosen.clone()));
        descend(p, by_output, n, bound, levels, out);
        levels.pop();
        return;
    }
    for &f in &by_output[colors[chosen.len()]] {
        let k = p.op(f).inputs.len();
        if used + k > bound {
            continue;
        }
        chosen.push(f);
        choose(p, by_output, n, bound, colors, used + k, chosen, levels, out);
        chosen.pop();
    }
}

fn assemble(p: &FiniteOperad, levels: &[(Vec<usize>, Vec<usize>)]) -> NerveSimplex {
    let n = levels.len() - 1;
    // levels[t] is level n - t; levels[t].1 are the generators of level n - t + 1
    let sizes: Vec<usize> = (0..=n).map(|i| levels[n - i].0.len()).collect();
    let maps = (1..=n)
        .map(|i| {
            let gens = &levels[n - i + 1].1;
            let vals = gens.iter().enumerate().flat_map(|(a, &f)| std::iter::repeat_n(a, p.op(f).inputs.len())).collect();
            MonotoneMap::new(sizes[i - 1], sizes[i], vals).expect("fibers by arity")
        })
        .collect();
    let shape = LeveledShape::new(sizes, maps).expect("consistent");
    let colors = (0..=n).flat_map(|i| levels[n - i].0.iter().copied()).collect();
    let gens = (1..=n).flat_map(|i| levels[n - i + 1].1.iter().copied()).collect();
    NerveSimplex { shape, morphism: OperadMorphism { colors, gens } }
}

fn restrict(beta: &LeveledShape, m: &OperadMorphism, comp: &Component) -> OperadMorphism {
    let n = beta.degree();
    let colors = (0..=n).flat_map(|i| comp.ranges[i].clone().map(move |x| m.colors[beta.offset(i) + x])).collect();
    let gens = (1..=n)
        .flat_map(|i| comp.ranges[i].clone().map(move |x| m.gens[generator_index(beta, i, x)]))
        .collect();
    OperadMorphism { colors, gens }
}

/// `θ*s = ((θ, a)*s)_{a ∈ A_{θ(k)}}`: rooted components of `θ*α` with the
/// morphism `s ∘ λ_θ` restricted to each.
pub fn act_simplex(p: &FiniteOperad, theta: &MonotoneMap, s: &NerveSimplex) -> Result<Vec<NerveSimplex>> {
    let beta = act(theta, &s.shape)?;
    let m = s
        .morphism
        .pull_back(theta, &s.shape, p)?
        .ok_or_else(|| Error::Invalid("a composite exceeds the arity bound of the operad".into()))?;
    Ok(rooted_components(&beta)
        .into_iter()
        .map(|c| {
            let morphism = restrict(&beta, &m, &c);
            NerveSimplex { shape: c.shape.into_shape(), morphism }
        })
        .collect())
}

/// Human-readable name: generator names level by level, or the color of a vertex.
pub fn describe(p: &FiniteOperad, s: &NerveSimplex) -> String {
    let n = s.shape.degree();
    if n == 0 {
        return p.colors().label(s.morphism.colors[0]).to_string();
    }
    if n == 1 {
        return p.op(s.morphism.gens[0]).name.clone();
    }
    (1..=n)
        .map(|i| {
            (0..s.shape.size(i)).map(|a| p.op(s.morphism.generator(&s.shape, i, a)).name.as_str()).collect::<Vec<_>>().join(" ")
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// `Nˡ P` truncated at `spec.dim`, with levels bounded by `spec.bound`.
pub fn nerve(p: &FiniteOperad, spec: NerveSpec) -> Result<Nerve> {
    if p.is_bounded_view() && p.max_arity() < spec.bound {
        return Err(Error::Invalid(format!(
            "level bound {} exceeds the arity bound {} of the operad",
            spec.bound,
            p.max_arity()
        )));
    }
    let d = spec.dim;
    let simplices: Vec<Vec<NerveSimplex>> = (0..=d).map(|n| nerve_simplices(p, n, spec.bound)).collect();
    let index: Vec<HashMap<NerveSimplex, usize>> =
        simplices.iter().map(|v| v.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let carriers = simplices
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let labels: Vec<String> = v.iter().map(|s| describe(p, s)).collect();
            FiniteSet::new(labels.clone()).or_else(|_| FiniteSet::new((0..v.len()).map(|i| format!("x{n}.{i}"))))
        })
        .collect::<Result<Vec<_>>>()?;
    let lookup = |n: usize, ss: Vec<NerveSimplex>| -> Result<Vec<usize>> {
        ss.iter()
            .map(|s| index[n].get(s).copied().ok_or_else(|| Error::NotClosed(format!("face of degree {n} outside the bound"))))
            .collect()
    };
    let mut faces = vec![Vec::new()];
    let mut degs = Vec::new();
    for n in 1..=d {
        let mut fs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let theta = MonotoneMap::coface(n, i);
            let imgs = simplices[n]
                .iter()
                .map(|s| lookup(n - 1, act_simplex(p, &theta, s)?))
                .collect::<Result<Vec<_>>>()?;
            fs.push(imgs);
        }
        faces.push(fs);
    }
    for n in 0..d {
        let mut ss = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let theta = MonotoneMap::codegeneracy(n, j);
            let imgs = simplices[n]
                .iter()
                .map(|s| lookup(n + 1, act_simplex(p, &theta, s)?))
                .collect::<Result<Vec<_>>>()?;
            ss.push(imgs);
        }
        degs.push(ss);
    }
    let slist = TruncSList::from_images(carriers, faces, degs)?;
    Ok(Nerve { spec, simplices, index, slist })
}

/// The classifying map `U_α → Nˡ T_α` of the simplex `1 : T_α → T_α`:
/// `(θ, a)` goes to the `a`-th rooted component of `θ*1`.
pub fn classify_representable(key: &KeyOperad, nerve: &Nerve, u: &Representable) -> Result<SListMorphism> {
    let p = key.operad();
    let id = NerveSimplex { shape: key.alpha().clone(), morphism: key.identity_morphism() };
    let d = nerve.spec().dim.min(u.slist.dim());
    let mut components = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut images = Vec::with_capacity(u.cells[k].len());
        let mut cache: Option<(&MonotoneMap, Vec<usize>)> = None;
        for (theta, a) in &u.cells[k] {
            if cache.as_ref().is_none_or(|(t, _)| *t != theta) {
                let parts = act_simplex(p, theta, &id)?
                    .iter()
                    .map(|s| {
                        nerve.index_of(k, s).ok_or_else(|| Error::NotClosed(format!("a face of the identity simplex in degree {k} exceeds the level bound")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                cache = Some((theta, parts));
            }
            images.push(cache.as_ref().expect("filled").1[*a]);
        }
        components.push(images);
    }
    Ok(SListMorphism { components })
}
