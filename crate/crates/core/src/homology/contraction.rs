//! Contracting homotopies `h = Z(s₋₁)` from augmentations with extra
//! degeneracies: `∂h + h∂ = 1 − [n = 0]·s₋₁ε` on the unaugmented complex.

use std::collections::HashSet;

use crate::augmented::{check_extra_at, check_homotopy_at, Augmented, Witness};
use crate::error::{Error, Result};
use crate::list::{FiniteSet, Listing};
use crate::nerve::{Nerve, NerveSimplex};
use crate::operad::{KeyOperad, OperadMorphism};
use crate::delta::{LeveledShape, MonotoneMap};
use crate::sample;
use crate::slist::TruncSList;
use crate::thicken::{RootedAugmentation, Thick, ThickColumn};

/// `X ⇢ X₋₁` with `ε : X_0 ⇸ X₋₁` and `s₋₁`, all as listings.
#[derive(Clone, Debug)]
pub struct SListAugmentation {
    pub x: TruncSList,
    pub base: FiniteSet,
    pub eps: Listing,
    /// `extra[n] : X_{n-1} ⇸ X_n`; `extra[0]` starts at `X₋₁`.
    pub extra: Vec<Listing>,
}

impl SListAugmentation {
    pub fn new(x: TruncSList, base: FiniteSet, eps: Listing, extra: Vec<Listing>) -> Result<Self> {
        let d = x.dim();
        if eps.source() != x.carrier(0) || eps.target() != &base {
            return Err(Error::SetMismatch("ε must run from X_0 to the augmentation".into()));
        }
        if extra.len() != d + 1 {
            return Err(Error::Degree(format!("{} extra degeneracies for D = {d}", extra.len())));
        }
        for (n, s) in extra.iter().enumerate() {
            let src = if n == 0 { &base } else { x.carrier(n - 1) };
            if s.source() != src || s.target() != x.carrier(n) {
                return Err(Error::SetMismatch(format!("s-1 into degree {n}")));
            }
        }
        Ok(Self { x, base, eps, extra })
    }

    /// The constant list at a point over a one-element augmentation.
    pub fn point(d: usize) -> Self {
        let x = TruncSList::point(d);
        let base = FiniteSet::from_vec_unchecked(vec!["*".into()]);
        let eps = Listing::new(x.carrier(0).clone(), base.clone(), vec![vec![0]]).expect("point");
        let extra = (0..=d)
            .map(|n| {
                let src = if n == 0 { base.clone() } else { x.carrier(n - 1).clone() };
                Listing::new(src, x.carrier(n).clone(), vec![vec![0]]).expect("point")
            })
            .collect();
        Self { x, base, eps, extra }
    }

    /// The restriction to `Q(X, Y) ⇢ ∅`: `Y`-elements are deleted from
    /// every image. Requires `ε` and `s₋₁` to stay inside `Y` on `Y`.
    pub fn quotient(&self, q: &TruncSList, y: &[Vec<usize>]) -> Result<Self> {
        let d = self.x.dim();
        let pos: Vec<Vec<Option<usize>>> = (0..=d)
            .map(|n| {
                let gone: HashSet<usize> = y[n].iter().copied().collect();
                let mut p = vec![None; self.x.carrier(n).len()];
                for (i, e) in (0..self.x.carrier(n).len()).filter(|e| !gone.contains(e)).enumerate() {
                    p[e] = Some(i);
                }
                p
            })
            .collect();
        let base = FiniteSet::empty();
        let eps = Listing::new(q.carrier(0).clone(), base.clone(), vec![Vec::new(); q.carrier(0).len()])?;
        let mut extra = vec![Listing::new(base.clone(), q.carrier(0).clone(), Vec::new())?];
        for n in 1..=d {
            let images = (0..self.x.carrier(n - 1).len())
                .filter(|&e| pos[n - 1][e].is_some())
                .map(|e| self.extra[n].image(e).iter().filter_map(|&z| pos[n][z]).collect())
                .collect();
            extra.push(Listing::new(q.carrier(n - 1).clone(), q.carrier(n).clone(), images)?);
        }
        Self::new(q.clone(), base, eps, extra)
    }
}

impl Augmented for SListAugmentation {
    type Cell = usize;

    fn top(&self) -> usize {
        self.x.dim()
    }

    fn face(&self, n: usize, i: usize, x: &usize) -> Vec<usize> {
        if n == 0 {
            self.eps.image(*x).to_vec()
        } else {
            self.x.face(n, i).image(*x).to_vec()
        }
    }

    fn degeneracy(&self, n: usize, j: usize, x: &usize) -> Vec<usize> {
        self.x.degeneracy(n, j).image(*x).to_vec()
    }

    fn extra(&self, n: usize, x: &usize) -> Vec<usize> {
        self.extra[n].image(*x).to_vec()
    }

    fn label(&self, n: isize, x: &usize) -> String {
        if n < 0 {
            self.base.label(*x).to_string()
        } else {
            self.x.carrier(n as usize).label(*x).to_string()
        }
    }
}

/// How much of the object was examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionReport {
    pub top: usize,
    pub coverage: Coverage,
    /// Cells checked for the extra-degeneracy identities, per degree from `-1`.
    pub identity_cells: Vec<usize>,
    /// Cells checked for the homotopy, per degree from `0` to `top - 1`.
    pub homotopy_cells: Vec<usize>,
    pub failures: Vec<Witness>,
}

impl ContractionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the extra-degeneracy identities and the chain homotopy on every
/// cell of a finite augmented list.
pub fn verify_contraction(aug: &SListAugmentation) -> ContractionReport {
    let top = aug.top();
    let mut identity_cells = Vec::with_capacity(top + 1);
    let mut homotopy_cells = Vec::with_capacity(top);
    let mut failures = Vec::new();
    for m in -1..top as isize {
        let size = if m < 0 { aug.base.len() } else { aug.x.carrier(m as usize).len() };
        identity_cells.push(size);
        for x in 0..size {
            failures.extend(check_extra_at(aug, m, &x));
        }
    }
    for n in 0..top {
        homotopy_cells.push(aug.x.carrier(n).len());
        for x in 0..aug.x.carrier(n).len() {
            failures.extend(check_homotopy_at(aug, n, &x));
        }
    }
    ContractionReport { top, coverage: Coverage::Exhaustive, identity_cells, homotopy_cells, failures }
}

/// The column `𝕌_α[k, •] ⇢ U_α[k]`, exhaustively up to the `m`-bound.
pub fn verify_thick_contraction(thick: &Thick, k: usize) -> ContractionReport {
    let col = ThickColumn { thick, k };
    let top = col.top();
    let mut identity_cells = vec![thick.base().slist.carrier(k).len()];
    let mut failures = Vec::new();
    for x in 0..identity_cells[0] {
        failures.extend(check_extra_at(&col, -1, &x));
    }
    let mut homotopy_cells = Vec::with_capacity(top);
    for m in 0..top {
        let size = thick.cells(k, m).len();
        identity_cells.push(size);
        homotopy_cells.push(size);
        for x in 0..size {
            failures.extend(check_extra_at(&col, m as isize, &x));
            failures.extend(check_homotopy_at(&col, m, &x));
        }
    }
    ContractionReport { top, coverage: Coverage::Exhaustive, identity_cells, homotopy_cells, failures }
}

/// `N(Δ₊)^root ⇢ ∅` on `samples` rooted shapes of degree `< top` with levels
/// of size at most `bound`, drawn from `seed`.
pub fn verify_rooted_contraction(top: usize, bound: usize, samples: usize, seed: u64) -> ContractionReport {
    let aug = RootedAugmentation { top };
    let mut rng = sample::rng(seed);
    let mut identity_cells = vec![0; top + 1];
    let mut homotopy_cells = vec![0; top];
    let mut failures = Vec::new();
    for t in 0..samples {
        let n = if top == 0 { 0 } else { t % top };
        if top == 0 {
            break;
        }
        let alpha = sample::shape(&mut rng, n, bound, true);
        identity_cells[n + 1] += 1;
        homotopy_cells[n] += 1;
        failures.extend(check_extra_at(&aug, n as isize, &alpha));
        failures.extend(check_homotopy_at(&aug, n, &alpha));
    }
    ContractionReport { top, coverage: Coverage::Sampled { samples, seed }, identity_cells, homotopy_cells, failures }
}

/// `Nˡ T_α ⇢ A_0`: `ε(x) = α_{0,i}^{-1}(x)` for `x ∈ A_i`, and `s₋₁` grows a
/// new bottom level `C_0 = ∐_b α_{0,j}^{-1}(f(b))` mapped by the chain
/// operations `p_{0,j}^{(f(b))}`.
pub fn nerve_augmentation(key: &KeyOperad, nerve: &Nerve) -> Result<SListAugmentation> {
    let alpha = key.alpha();
    let x = nerve.slist();
    let d = x.dim();
    let level_of = |c: usize| -> (usize, usize) {
        let i = (0..=alpha.degree()).rev().find(|&i| alpha.offset(i) <= c).expect("color of T_α");
        (i, c - alpha.offset(i))
    };
    let base = FiniteSet::from_vec_unchecked((0..alpha.size(0)).map(|a| format!("0:{a}")).collect());
    let eps_images = nerve
        .simplices(0)
        .iter()
        .map(|s| {
            let (i, a) = level_of(s.morphism.colors[0]);
            alpha.fiber(0, i, a).collect()
        })
        .collect();
    let eps = Listing::new(x.carrier(0).clone(), base.clone(), eps_images)?;
    let vertex = |a: usize| -> Result<usize> {
        let s = NerveSimplex {
            shape: LeveledShape::point_chain(0),
            morphism: OperadMorphism { colors: vec![alpha.offset(0) + a], gens: Vec::new() },
        };
        nerve.index_of(0, &s).ok_or_else(|| Error::NotClosed(format!("vertex 0:{a} missing from the nerve")))
    };
    let mut extra = vec![Listing::new(base.clone(), x.carrier(0).clone(), (0..alpha.size(0)).map(|a| Ok(vec![vertex(a)?])).collect::<Result<_>>()?)?];
    for n in 0..d {
        let images = nerve
            .simplices(n)
            .iter()
            .map(|s| {
                let g = grow(key, s, &level_of)?;
                let idx = nerve
                    .index_of(n + 1, &g)
                    .ok_or_else(|| Error::NotClosed(format!("s-1 of a degree-{n} simplex exceeds the level bound")))?;
                Ok(vec![idx])
            })
            .collect::<Result<Vec<_>>>()?;
        extra.push(Listing::new(x.carrier(n).clone(), x.carrier(n + 1).clone(), images)?);
    }
    SListAugmentation::new(x.clone(), base, eps, extra)
}

fn grow(key: &KeyOperad, s: &NerveSimplex, level_of: &dyn Fn(usize) -> (usize, usize)) -> Result<NerveSimplex> {
    let alpha = key.alpha();
    let beta = &s.shape;
    let mut c0 = Vec::new();
    let mut gamma1 = Vec::new();
    let mut bottom_gens = Vec::with_capacity(beta.size(0));
    for b in 0..beta.size(0) {
        let (j, x) = level_of(s.morphism.colors[beta.offset(0) + b]);
        for a in alpha.fiber(0, j, x) {
            c0.push(alpha.offset(0) + a);
            gamma1.push(b);
        }
        bottom_gens.push(key.chain_op(0, j, x));
    }
    let mut sizes = vec![c0.len()];
    sizes.extend(beta.level_sizes());
    let mut maps = vec![MonotoneMap::new(c0.len(), beta.size(0), gamma1)?];
    maps.extend(beta.maps().iter().cloned());
    let shape = LeveledShape::new(sizes, maps)?;
    let mut colors = c0;
    colors.extend(&s.morphism.colors);
    let mut gens = bottom_gens;
    gens.extend(&s.morphism.gens);
    Ok(NerveSimplex { shape, morphism: OperadMorphism { colors, gens } })
}
