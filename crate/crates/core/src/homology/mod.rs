//! Integer homology of truncated simplicial lists: the linearization `Z`,
//! the full alternating face complex, Smith normal form, relative homology
//! through the quotient `Q(X, Y)` and contraction certificates.

mod contraction;
mod matrix;

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::list::{FiniteSet, Listing};
use crate::slist::TruncSList;

pub use contraction::{
    nerve_augmentation, verify_contraction, verify_rooted_contraction, verify_thick_contraction, ContractionReport, Coverage, SListAugmentation,
};
pub use matrix::{
    determinant, invariant_factors, smith_decomposition, smith_normal_form, BigIntMatrix, IntMatrix, Matrix, Overflow,
    Scalar, SmithForm,
};

/// `Z(u)`: one column per source element, counting multiplicities in `u(a)`.
pub fn linearize(u: &Listing) -> IntMatrix {
    Matrix::from_triplets(
        u.target().len(),
        u.source().len(),
        u.images().iter().enumerate().flat_map(|(a, img)| img.iter().map(move |&x| (x, a, 1))),
    )
}

/// `C(X)` in degrees `0..=D` with `∂_n = Σ_i (-1)^i Z(d_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexZ {
    ranks: Vec<usize>,
    /// `boundaries[n - 1]` is `∂_n : C_n → C_{n-1}`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplexZ {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(Error::Degree("one boundary per positive degree".into()));
        }
        for (n, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[n] || b.cols() != ranks[n + 1] {
                return Err(Error::SetMismatch(format!("∂{} is {}×{}", n + 1, b.rows(), b.cols())));
            }
        }
        let c = Self { ranks, boundaries };
        c.check()?;
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n - 1]
    }

    /// `∂_n ∘ ∂_{n+1} = 0` for every stored pair.
    pub fn check(&self) -> Result<()> {
        for n in 1..self.boundaries.len() {
            let prod = self.boundaries[n - 1]
                .to_bigint()
                .checked_mul(&self.boundaries[n].to_bigint())
                .expect("BigInt arithmetic does not overflow");
            if !prod.is_zero() {
                return Err(Error::Invalid(format!("∂{n} ∘ ∂{} ≠ 0", n + 1)));
            }
        }
        Ok(())
    }

    /// The subcomplex spanned by the basis elements outside `removed`,
    /// i.e. `C / C(Y)` for a closed `Y`.
    pub fn quotient(&self, removed: &[Vec<usize>]) -> Result<Self> {
        let keep: Vec<Vec<usize>> = (0..=self.dim())
            .map(|n| {
                let gone: HashSet<usize> = removed.get(n).into_iter().flatten().copied().collect();
                (0..self.ranks[n]).filter(|x| !gone.contains(x)).collect()
            })
            .collect();
        let boundaries = (1..=self.dim()).map(|n| self.boundary(n).submatrix(&keep[n - 1], &keep[n])).collect();
        Self::new(keep.iter().map(Vec::len).collect(), boundaries)
    }
}

pub fn chain_complex(x: &TruncSList) -> Result<ChainComplexZ> {
    let ranks = x.carriers().iter().map(FiniteSet::len).collect();
    let boundaries = (1..=x.dim())
        .map(|n| {
            Matrix::from_triplets(
                x.carrier(n - 1).len(),
                x.carrier(n).len(),
                x.faces(n).iter().enumerate().flat_map(|(i, d)| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    d.images().iter().enumerate().flat_map(move |(a, img)| img.iter().map(move |&y| (y, a, sign)))
                }),
            )
        })
        .collect();
    ChainComplexZ::new(ranks, boundaries)
}

/// `ℤ^rank ⊕ ⊕ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self, rank: usize) -> bool {
        self.rank == rank && self.torsion.is_empty()
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Homology in degrees `0..=D-1`, the range where both adjacent boundaries
/// are known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub dim: usize,
    pub groups: Vec<HomologyGroup>,
    /// Boundaries whose elimination needed arbitrary precision.
    pub promoted: Vec<usize>,
}

impl HomologyReport {
    pub const CAVEAT: &'static str = "truncated at D; H_D and above need the missing boundary ∂_{D+1}";
}

/// `H_k(C)` for `k ≤ D - 1`.
pub fn homology(c: &ChainComplexZ, k: usize) -> Result<HomologyGroup> {
    if k + 1 > c.dim() {
        return Err(Error::Degree(format!("H{k} needs ∂{} but the complex stops at degree {}", k + 1, c.dim())));
    }
    let below = if k == 0 { 0 } else { smith_normal_form(c.boundary(k)).rank };
    let above = smith_normal_form(c.boundary(k + 1));
    Ok(HomologyGroup { rank: c.rank(k) - below - above.rank, torsion: above.torsion })
}

/// Every available degree, eliminating each boundary once.
pub fn homology_all(c: &ChainComplexZ) -> HomologyReport {
    let forms: Vec<SmithForm> = (1..=c.dim()).map(|n| smith_normal_form(c.boundary(n))).collect();
    let groups = (0..c.dim())
        .map(|k| {
            let below = if k == 0 { 0 } else { forms[k - 1].rank };
            HomologyGroup { rank: c.rank(k) - below - forms[k].rank, torsion: forms[k].torsion.clone() }
        })
        .collect();
    let promoted = forms.iter().enumerate().filter(|(_, f)| f.promoted).map(|(n, _)| n + 1).collect();
    HomologyReport { dim: c.dim(), groups, promoted }
}

/// Checks that `y[n] ⊆ X_n` is closed under every face and degeneracy.
pub fn check_closed(x: &TruncSList, y: &[Vec<usize>]) -> Result<()> {
    if y.len() != x.dim() + 1 {
        return Err(Error::Degree(format!("subobject has {} degrees, expected {}", y.len(), x.dim() + 1)));
    }
    let sets: Vec<HashSet<usize>> = y.iter().map(|v| v.iter().copied().collect()).collect();
    for (n, ys) in y.iter().enumerate() {
        if let Some(&bad) = ys.iter().find(|&&e| e >= x.carrier(n).len()) {
            return Err(Error::OutOfRange(format!("element {bad} in degree {n}")));
        }
        let maps = x.faces(n).iter().map(|f| (f, n - 1)).chain(if n < x.dim() {
            x.degeneracies(n).iter().map(|s| (s, n + 1)).collect::<Vec<_>>()
        } else {
            Vec::new()
        });
        for (f, target) in maps {
            for &e in ys {
                if let Some(&z) = f.image(e).iter().find(|z| !sets[target].contains(z)) {
                    return Err(Error::NotClosed(format!(
                        "{} maps into {} outside the subobject",
                        x.carrier(n).label(e),
                        x.carrier(target).label(z)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `Q(X, Y)`: carriers `X_n − Y_n`, images with `Y`-elements deleted.
pub fn relative_quotient(x: &TruncSList, y: &[Vec<usize>]) -> Result<TruncSList> {
    check_closed(x, y)?;
    let d = x.dim();
    let mut keep: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    let mut pos: Vec<Vec<Option<usize>>> = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let gone: HashSet<usize> = y[n].iter().copied().collect();
        let k: Vec<usize> = (0..x.carrier(n).len()).filter(|e| !gone.contains(e)).collect();
        let mut p = vec![None; x.carrier(n).len()];
        for (i, &e) in k.iter().enumerate() {
            p[e] = Some(i);
        }
        keep.push(k);
        pos.push(p);
    }
    let carriers: Vec<FiniteSet> = keep
        .iter()
        .enumerate()
        .map(|(n, k)| FiniteSet::from_vec_unchecked(k.iter().map(|&e| x.carrier(n).label(e).to_string()).collect()))
        .collect();
    let restrict = |f: &Listing, n: usize, target: usize| -> Vec<Vec<usize>> {
        keep[n].iter().map(|&e| f.image(e).iter().filter_map(|&z| pos[target][z]).collect()).collect()
    };
    let faces = (0..=d).map(|n| x.faces(n).iter().map(|f| restrict(f, n, n - 1)).collect()).collect();
    let degs = (0..d).map(|n| x.degeneracies(n).iter().map(|s| restrict(s, n, n + 1)).collect()).collect();
    TruncSList::from_images(carriers, faces, degs)
}

/// Positions in `x` of a simplicial list whose elements are named by label,
/// after checking that its structure maps are those of `x` restricted.
pub fn sub_by_labels(x: &TruncSList, y: &TruncSList) -> Result<Vec<Vec<usize>>> {
    if y.dim() != x.dim() {
        return Err(Error::Degree(format!("subobject truncated at {}, ambient at {}", y.dim(), x.dim())));
    }
    let mut pos = Vec::with_capacity(x.dim() + 1);
    for n in 0..=x.dim() {
        let idx = x.carrier(n).index();
        let p = y
            .carrier(n)
            .labels()
            .iter()
            .map(|l| idx.get(l.as_str()).copied().ok_or_else(|| Error::SetMismatch(format!("{l} is not in degree {n}"))))
            .collect::<Result<Vec<_>>>()?;
        pos.push(p);
    }
    let same = |f: &Listing, g: &Listing, n: usize, t: usize| {
        (0..y.carrier(n).len()).all(|e| {
            let mapped: Vec<usize> = g.image(e).iter().map(|&z| pos[t][z]).collect();
            f.image(pos[n][e]) == mapped.as_slice()
        })
    };
    for n in 0..=x.dim() {
        for i in 0..x.faces(n).len() {
            if !same(x.face(n, i), y.face(n, i), n, n - 1) {
                return Err(Error::NonCommuting(format!("d{i} in degree {n} differs from the ambient one")));
            }
        }
        if n < x.dim() {
            for j in 0..=n {
                if !same(x.degeneracy(n, j), y.degeneracy(n, j), n, n + 1) {
                    return Err(Error::NonCommuting(format!("s{j} in degree {n} differs from the ambient one")));
                }
            }
        }
    }
    Ok(pos)
}

#[cfg(test)]
mod tests;
