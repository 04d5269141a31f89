//! The thickened simplex category `ℂΔⁿ` (subset chains under union) and the
//! bigraded object `𝕌_α[k, m] = ∐_{θ : [k] → ℂΔⁿ_m} A_{θ(k)}`.
//!
//! A morphism `i → j` of `ℂΔⁿ_m` is a chain `U_0 ⊆ … ⊆ U_m` of subsets of
//! the interval `{i, …, j}`, each containing `i` and `j`. The `m`-direction
//! acts on chains by reindexing terms; the `k`-direction acts like `U_α`.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::augmented::{check_extra_at, Augmented, Witness};
use crate::delta::{act, rooted_decomposition, LeveledShape, MonotoneMap};
use crate::error::{Error, Result};
use crate::list::{is_perfect, FiniteSet, Listing};
use crate::slist::{build_u_alpha, label_operator, Representable, TruncSList};

/// A chain of subsets, stored as bitmasks over `{0, …, n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetChain {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub chain: Vec<u64>,
}

impl SubsetChain {
    pub fn new(n: usize, i: usize, j: usize, chain: Vec<u64>) -> Result<Self> {
        let c = Self { n, i, j, chain };
        c.check()?;
        Ok(c)
    }

    /// The identity at `i`: every term is `{i}`.
    pub fn identity(n: usize, i: usize, m: usize) -> Self {
        Self { n, i, j: i, chain: vec![1 << i; m + 1] }
    }

    /// The vertex `{i, j}` repeated, the image of `i → j` under `s₋₁`.
    pub fn minimal(n: usize, i: usize, j: usize, m: usize) -> Self {
        Self { n, i, j, chain: vec![(1 << i) | (1 << j); m + 1] }
    }

    pub fn dim(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn check(&self) -> Result<()> {
        if self.n >= 64 || self.i > self.j || self.j > self.n || self.chain.is_empty() {
            return Err(Error::Invalid(format!("no chain {} → {} in ℂΔ{}", self.i, self.j, self.n)));
        }
        let ends = (1u64 << self.i) | (1u64 << self.j);
        let interval = ((1u64 << (self.j + 1)) - 1) & !((1u64 << self.i) - 1);
        let mut prev = ends;
        for &u in &self.chain {
            if u & ends != ends || u & !interval != 0 || u & prev != prev {
                return Err(Error::Invalid(format!("{} is not an increasing chain over {}..{}", self.render(), self.i, self.j)));
            }
            prev = u;
        }
        Ok(())
    }

    /// Union-composition `self ∘ first` for `first : i → j`, `self : j → l`.
    pub fn after(&self, first: &SubsetChain) -> Result<Self> {
        if first.j != self.i || first.dim() != self.dim() || first.n != self.n {
            return Err(Error::IllTyped(format!("{} after {}", self.render(), first.render())));
        }
        let chain = first.chain.iter().zip(&self.chain).map(|(a, b)| a | b).collect();
        Ok(Self { n: self.n, i: first.i, j: self.j, chain })
    }

    /// `U_{ψ(0)} ⊆ … ⊆ U_{ψ(m')}` for `ψ : [m'] → [m]`.
    pub fn act(&self, psi: &MonotoneMap) -> Self {
        let chain = psi.values().iter().map(|&t| self.chain[t]).collect();
        Self { n: self.n, i: self.i, j: self.j, chain }
    }

    /// `{i, j} ⊆ U_0 ⊆ … ⊆ U_m`.
    pub fn prepend_minimal(&self) -> Self {
        let mut chain = Vec::with_capacity(self.chain.len() + 1);
        chain.push((1 << self.i) | (1 << self.j));
        chain.extend(&self.chain);
        Self { n: self.n, i: self.i, j: self.j, chain }
    }

    pub fn render(&self) -> String {
        let set = |u: u64| {
            let xs: Vec<String> = (0..=self.n).filter(|&x| u >> x & 1 == 1).map(|x| x.to_string()).collect();
            format!("{{{}}}", xs.join(","))
        };
        self.chain.iter().map(|&u| set(u)).collect::<Vec<_>>().join("⊆")
    }
}

/// The `m`-simplices of `ℂΔⁿ(i, j)`, ordered by their bitmasks.
pub fn mapping_space(n: usize, i: usize, j: usize, m: usize) -> Vec<SubsetChain> {
    if i > j || j > n {
        return Vec::new();
    }
    let interior: Vec<usize> = (i + 1..j).collect();
    // each interior point enters at some term, or never (m + 1)
    let mut entry = vec![0usize; interior.len()];
    let mut out = Vec::new();
    loop {
        let chain = (0..=m)
            .map(|t| {
                let mut u = (1u64 << i) | (1u64 << j);
                for (x, &e) in interior.iter().zip(&entry) {
                    if e <= t {
                        u |= 1 << x;
                    }
                }
                u
            })
            .collect();
        out.push(SubsetChain { n, i, j, chain });
        let mut p = 0;
        loop {
            if p == entry.len() {
                out.sort();
                return out;
            }
            entry[p] += 1;
            if entry[p] <= m + 1 {
                break;
            }
            entry[p] = 0;
            p += 1;
        }
    }
}

/// `|ℂΔⁿ(i, j)_m| = (m + 2)^{j-i-1}` for `i < j`.
pub fn mapping_space_size(i: usize, j: usize, m: usize) -> u128 {
    match j.checked_sub(i) {
        None => 0,
        Some(0) => 1,
        Some(d) => ((m + 2) as u128).pow(d as u32 - 1),
    }
}

/// A `k`-simplex of `N(ℂΔⁿ_m)`: objects `x_0 ≤ … ≤ x_k` and composable arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThickSimplex {
    pub objects: Vec<usize>,
    pub arrows: Vec<SubsetChain>,
}

impl ThickSimplex {
    pub fn last(&self) -> usize {
        *self.objects.last().expect("at least one object")
    }

    /// The composite functor `θ ∘ φ` for `φ : [k'] → [k]`.
    pub fn compose(&self, phi: &MonotoneMap, n: usize, m: usize) -> Result<Self> {
        let v = phi.values();
        let objects: Vec<usize> = v.iter().map(|&t| self.objects[t]).collect();
        let mut arrows = Vec::with_capacity(v.len().saturating_sub(1));
        for w in v.windows(2) {
            let mut c = SubsetChain::identity(n, self.objects[w[0]], m);
            for t in w[0]..w[1] {
                c = self.arrows[t].after(&c)?;
            }
            arrows.push(c);
        }
        Ok(Self { objects, arrows })
    }

    /// Applies `ψ` to every arrow.
    pub fn act_m(&self, psi: &MonotoneMap) -> Self {
        Self { objects: self.objects.clone(), arrows: self.arrows.iter().map(|c| c.act(psi)).collect() }
    }

    pub fn extra(&self) -> Self {
        Self { objects: self.objects.clone(), arrows: self.arrows.iter().map(SubsetChain::prepend_minimal).collect() }
    }

    pub fn render(&self) -> String {
        let mut s = self.objects[0].to_string();
        for (c, x) in self.arrows.iter().zip(&self.objects[1..]) {
            let _ = write!(s, " -{}-> {x}", c.render());
        }
        s
    }
}

/// All `k`-simplices of `N(ℂΔⁿ_m)` in canonical order.
pub fn thick_simplices(n: usize, k: usize, m: usize) -> Vec<ThickSimplex> {
    let mut out = Vec::new();
    for objs in MonotoneMap::operators(k, n) {
        let objects = objs.values().to_vec();
        let spaces: Vec<Vec<SubsetChain>> = objects.windows(2).map(|w| mapping_space(n, w[0], w[1], m)).collect();
        let mut pick = vec![0usize; k];
        loop {
            let arrows = pick.iter().zip(&spaces).map(|(&p, s)| s[p].clone()).collect();
            out.push(ThickSimplex { objects: objects.clone(), arrows });
            let mut t = 0;
            while t < k {
                pick[t] += 1;
                if pick[t] < spaces[t].len() {
                    break;
                }
                pick[t] = 0;
                t += 1;
            }
            if t == k {
                break;
            }
        }
    }
    out
}

/// A cell `(θ, a)` of `𝕌_α[k, m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThickCell {
    pub theta: ThickSimplex,
    pub a: usize,
}

/// `𝕌_α[k, m]` for `k ≤ K`, `m ≤ M` with both actions, `η_α` and the
/// augmentation to `U_α`.
#[derive(Clone, Debug)]
pub struct Thick {
    alpha: LeveledShape,
    k_max: usize,
    m_max: usize,
    /// `cells[m][k]`, ordered by `θ` then `a`.
    cells: Vec<Vec<Vec<ThickCell>>>,
    index: Vec<Vec<HashMap<ThickCell, usize>>>,
    /// The `k`-direction simplicial list at each fixed `m`.
    slices: Vec<TruncSList>,
    /// `η_α : N(ℂΔⁿ_m)_k ⇸ 𝕌_α[k, m]`, indexed `[m][k]`.
    eta: Vec<Vec<Listing>>,
    base: Representable,
}

impl Thick {
    pub fn alpha(&self) -> &LeveledShape {
        &self.alpha
    }

    pub fn bounds(&self) -> (usize, usize) {
        (self.k_max, self.m_max)
    }

    pub fn cells(&self, k: usize, m: usize) -> &[ThickCell] {
        &self.cells[m][k]
    }

    pub fn index_of(&self, k: usize, m: usize, c: &ThickCell) -> Option<usize> {
        self.index[m][k].get(c).copied()
    }

    pub fn slice(&self, m: usize) -> &TruncSList {
        &self.slices[m]
    }

    pub fn eta(&self, k: usize, m: usize) -> &Listing {
        &self.eta[m][k]
    }

    /// `U_α` truncated at `K`.
    pub fn base(&self) -> &Representable {
        &self.base
    }

    /// `ψ*` in the `m`-direction, a function on cells.
    pub fn act_m(&self, psi: &MonotoneMap, c: &ThickCell) -> ThickCell {
        ThickCell { theta: c.theta.act_m(psi), a: c.a }
    }

    /// `φ*` in the `k`-direction on a cell of `𝕌_α[k, m]`: `((θφ, b) : b ∈ α_{θφ(k'),θ(k)}^{-1}(a))`.
    pub fn act_k(&self, m: usize, phi: &MonotoneMap, c: &ThickCell) -> Result<Vec<ThickCell>> {
        let tp = c.theta.compose(phi, self.alpha.degree(), m)?;
        Ok(self
            .alpha
            .fiber(tp.last(), c.theta.last(), c.a)
            .map(|b| ThickCell { theta: tp.clone(), a: b })
            .collect())
    }

    /// `d₀ : 𝕌_α[k, 0] → U_α[k]` forgets the arrows.
    pub fn augment(&self, k: usize, c: &ThickCell) -> usize {
        let theta = MonotoneMap::operator(k, self.alpha.degree(), c.theta.objects.clone()).expect("monotone objects");
        self.base.index_of(&theta, c.a).expect("cell of U_α")
    }

    /// `s₋₁ : U_α[k] → 𝕌_α[k, 0]` sends `i → j` to `{i, j}`.
    pub fn section(&self, k: usize, u: usize) -> ThickCell {
        let (theta, a) = &self.base.cells[k][u];
        let n = self.alpha.degree();
        let objects = theta.values().to_vec();
        let arrows = objects.windows(2).map(|w| SubsetChain::minimal(n, w[0], w[1], 0)).collect();
        ThickCell { theta: ThickSimplex { objects, arrows }, a: *a }
    }

    fn label(c: &ThickCell) -> String {
        format!("{} / {}", c.theta.render(), c.a)
    }
}

pub fn build_thick(alpha: &LeveledShape, k_max: usize, m_max: usize) -> Result<Thick> {
    let n = alpha.degree();
    if n >= 63 {
        return Err(Error::Invalid("shapes of degree ≥ 63 are not supported".into()));
    }
    let mut cells = Vec::with_capacity(m_max + 1);
    let mut index = Vec::with_capacity(m_max + 1);
    let mut eta = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let mut cm = Vec::with_capacity(k_max + 1);
        let mut im = Vec::with_capacity(k_max + 1);
        let mut em = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let simplices = thick_simplices(n, k, m);
            let mut cs = Vec::new();
            let mut images = Vec::with_capacity(simplices.len());
            for t in &simplices {
                let top = alpha.size(t.last());
                images.push((cs.len()..cs.len() + top).collect());
                cs.extend((0..top).map(|a| ThickCell { theta: t.clone(), a }));
            }
            let source = FiniteSet::from_vec_unchecked(simplices.iter().map(ThickSimplex::render).collect());
            let target = FiniteSet::from_vec_unchecked(cs.iter().map(Thick::label).collect());
            em.push(Listing::new(source, target, images)?);
            im.push(cs.iter().cloned().enumerate().map(|(x, c)| (c, x)).collect::<HashMap<_, _>>());
            cm.push(cs);
        }
        cells.push(cm);
        index.push(im);
        eta.push(em);
    }
    let base = build_u_alpha(alpha, k_max);
    let mut thick = Thick { alpha: alpha.clone(), k_max, m_max, cells, index, slices: Vec::new(), eta, base };
    for m in 0..=m_max {
        let slice = thick.build_slice(m)?;
        thick.slices.push(slice);
    }
    Ok(thick)
}

impl Thick {
    fn build_slice(&self, m: usize) -> Result<TruncSList> {
        let kk = self.k_max;
        let carriers: Vec<FiniteSet> = (0..=kk).map(|k| self.eta[m][k].target().clone()).collect();
        let images = |k: usize, phi: &MonotoneMap, target: usize| -> Result<Vec<Vec<usize>>> {
            self.cells[m][k]
                .iter()
                .map(|c| Ok(self.act_k(m, phi, c)?.iter().map(|d| self.index[m][target][d]).collect()))
                .collect()
        };
        let mut faces = vec![Vec::new()];
        for k in 1..=kk {
            faces.push((0..=k).map(|i| images(k, &MonotoneMap::coface(k, i), k - 1)).collect::<Result<Vec<_>>>()?);
        }
        let degs = (0..kk)
            .map(|k| (0..=k).map(|j| images(k, &MonotoneMap::codegeneracy(k, j), k + 1)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        TruncSList::from_images(carriers, faces, degs)
    }
}

/// `Σ_θ |A_{θ(k)}|` computed from the closed formula for mapping spaces.
pub fn count_cells(alpha: &LeveledShape, k: usize, m: usize) -> u128 {
    MonotoneMap::operators(k, alpha.degree())
        .iter()
        .map(|theta| {
            let v = theta.values();
            let arrows: u128 = v.windows(2).map(|w| mapping_space_size(w[0], w[1], m)).product();
            arrows * alpha.size(theta.last()) as u128
        })
        .sum()
}

/// The augmented simplicial set `𝕌_α[k, •] ⇢ U_α[k]` at a fixed `k`.
pub struct ThickColumn<'a> {
    pub thick: &'a Thick,
    pub k: usize,
}

impl Augmented for ThickColumn<'_> {
    type Cell = usize;

    fn top(&self) -> usize {
        self.thick.m_max
    }

    fn face(&self, m: usize, i: usize, x: &usize) -> Vec<usize> {
        let c = &self.thick.cells[m][self.k][*x];
        if m == 0 {
            return vec![self.thick.augment(self.k, c)];
        }
        let d = self.thick.act_m(&MonotoneMap::coface(m, i), c);
        vec![self.thick.index[m - 1][self.k][&d]]
    }

    fn degeneracy(&self, m: usize, j: usize, x: &usize) -> Vec<usize> {
        let c = &self.thick.cells[m][self.k][*x];
        let s = self.thick.act_m(&MonotoneMap::codegeneracy(m, j), c);
        vec![self.thick.index[m + 1][self.k][&s]]
    }

    fn extra(&self, m: usize, x: &usize) -> Vec<usize> {
        let c = if m == 0 {
            self.thick.section(self.k, *x)
        } else {
            let c = &self.thick.cells[m - 1][self.k][*x];
            ThickCell { theta: c.theta.extra(), a: c.a }
        };
        vec![self.thick.index[m][self.k][&c]]
    }

    fn label(&self, m: isize, x: &usize) -> String {
        if m < 0 {
            self.thick.base.slist.carrier(self.k).label(*x).to_string()
        } else {
            Thick::label(&self.thick.cells[m as usize][self.k][*x])
        }
    }
}

/// Outcome of [`check_extra_degeneracies`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtraReport {
    pub k_max: usize,
    pub m_max: usize,
    /// Cells checked, over all `k ≤ K` and `-1 ≤ m < M`.
    pub cells: usize,
    pub failures: Vec<Witness>,
}

impl ExtraReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every extra-degeneracy identity of `𝕌_α ⇢ U_α` on every cell within bounds.
pub fn check_extra_degeneracies(thick: &Thick) -> ExtraReport {
    let (k_max, m_max) = thick.bounds();
    let mut cells = 0;
    let mut failures = Vec::new();
    for k in 0..=k_max {
        let col = ThickColumn { thick, k };
        for x in 0..thick.base.cells[k].len() {
            cells += 1;
            failures.extend(check_extra_at(&col, -1, &x));
        }
        for m in 0..m_max {
            for x in 0..thick.cells[m][k].len() {
                cells += 1;
                failures.extend(check_extra_at(&col, m as isize, &x));
            }
        }
    }
    ExtraReport { k_max, m_max, cells, failures }
}

/// Structural checks on a built `𝕌_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickReport {
    /// `|𝕌_α[k, m]|`, indexed `[m][k]`.
    pub sizes: Vec<Vec<usize>>,
    /// Sizes agree with [`count_cells`].
    pub counts_match: bool,
    /// Every `m`-slice validates and is operadic.
    pub slices_valid: bool,
    /// `η_α` is perfect in every bidegree.
    pub eta_perfect: bool,
    /// The `k`- and `m`-actions commute cell-wise.
    pub actions_commute: bool,
    /// `𝕌_α[0, m] ≅ ∐ A_i` with identity `m`-operations.
    pub vertices_constant: bool,
}

impl ThickReport {
    pub fn holds(&self) -> bool {
        self.counts_match && self.slices_valid && self.eta_perfect && self.actions_commute && self.vertices_constant
    }
}

pub fn check_thick(thick: &Thick) -> Result<ThickReport> {
    let (k_max, m_max) = thick.bounds();
    let alpha = thick.alpha();
    let sizes: Vec<Vec<usize>> = (0..=m_max).map(|m| (0..=k_max).map(|k| thick.cells(k, m).len()).collect()).collect();
    let counts_match = (0..=m_max).all(|m| (0..=k_max).all(|k| sizes[m][k] as u128 == count_cells(alpha, k, m)));
    let slices_valid = thick.slices.iter().all(|s| s.validate().is_empty() && s.is_operadic());
    let eta_perfect = thick.eta.iter().flatten().all(is_perfect);
    let vertices_constant = (0..=m_max).all(|m| {
        sizes[m][0] == alpha.total_size()
            && (0..=m_max).all(|m2| {
                MonotoneMap::operators(m2, m).iter().all(|psi| thick.cells(0, m).iter().all(|c| thick.act_m(psi, c) == *c))
            })
    });
    let mut actions_commute = true;
    'outer: for m in 0..=m_max {
        for k in 0..=k_max {
            let mut psis: Vec<MonotoneMap> = (0..=m).filter(|_| m > 0).map(|i| MonotoneMap::coface(m, i)).collect();
            if m < m_max {
                psis.extend((0..=m).map(|j| MonotoneMap::codegeneracy(m, j)));
            }
            let mut phis: Vec<MonotoneMap> = (0..=k).filter(|_| k > 0).map(|i| MonotoneMap::coface(k, i)).collect();
            if k < k_max {
                phis.extend((0..=k).map(|j| MonotoneMap::codegeneracy(k, j)));
            }
            for c in thick.cells(k, m) {
                for psi in &psis {
                    for phi in &phis {
                        let lhs: Vec<ThickCell> = thick.act_k(m, phi, c)?.iter().map(|d| thick.act_m(psi, d)).collect();
                        let rhs = thick.act_k(psi.domain_size() - 1, phi, &thick.act_m(psi, c))?;
                        if lhs != rhs {
                            actions_commute = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    Ok(ThickReport { sizes, counts_match, slices_valid, eta_perfect, actions_commute, vertices_constant })
}

/// `N(Δ₊)^root ⇢ ∅` with `s₋₁(α) = (∅ → A_0 → … → A_n)`, truncated at `top`.
pub struct RootedAugmentation {
    pub top: usize,
}

/// `∅ → A_0 → … → A_n`.
pub fn prepend_empty(alpha: &LeveledShape) -> LeveledShape {
    let mut sizes = vec![0];
    sizes.extend(alpha.level_sizes());
    let mut maps = vec![MonotoneMap::new(0, alpha.size(0), Vec::new()).expect("empty map")];
    maps.extend(alpha.maps().iter().cloned());
    LeveledShape::new(sizes, maps).expect("prepending keeps the shape valid")
}

fn rooted_act(theta: &MonotoneMap, alpha: &LeveledShape) -> Vec<LeveledShape> {
    let beta = act(theta, alpha).expect("operator matches the degree");
    rooted_decomposition(&beta).into_iter().map(|r| r.into_shape()).collect()
}

impl Augmented for RootedAugmentation {
    type Cell = LeveledShape;

    fn top(&self) -> usize {
        self.top
    }

    fn face(&self, n: usize, i: usize, x: &LeveledShape) -> Vec<LeveledShape> {
        if n == 0 {
            return Vec::new();
        }
        rooted_act(&MonotoneMap::coface(n, i), x)
    }

    fn degeneracy(&self, n: usize, j: usize, x: &LeveledShape) -> Vec<LeveledShape> {
        rooted_act(&MonotoneMap::codegeneracy(n, j), x)
    }

    fn extra(&self, _n: usize, x: &LeveledShape) -> Vec<LeveledShape> {
        vec![prepend_empty(x)]
    }

    fn label(&self, _n: isize, x: &LeveledShape) -> String {
        let maps: Vec<String> = x.maps().iter().map(label_operator).collect();
        format!("{:?} {}", x.level_sizes(), maps.join(" | "))
    }
}
