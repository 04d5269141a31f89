//! Truncated simplicial lists: validation, the general simplicial action,
//! operadicity, the representables `U_α`, classification of simplices and
//! morphism enumeration.

use std::collections::HashMap;

use crate::delta::{LeveledShape, MonotoneMap};
use crate::error::{Error, Result};
use crate::list::{induced_middle, perfect_factorize, FiniteSet, Listing};

/// A simplicial list truncated at degree `D`.
///
/// `faces[n][i]` is `d_i : X_n ⇸ X_{n-1}` for `1 ≤ n ≤ D`, `faces[0]` is
/// empty; `degeneracies[n][j]` is `s_j : X_n ⇸ X_{n+1}` for `n < D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSList {
    carriers: Vec<FiniteSet>,
    faces: Vec<Vec<Listing>>,
    degeneracies: Vec<Vec<Listing>>,
}

/// A failed simplicial identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub degree: usize,
    pub identity: String,
    pub witness: String,
}

/// Which generator to peel off first when factoring an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factoring {
    First,
    Last,
}

impl TruncSList {
    /// Checks shapes of the structure maps; identities are left to
    /// [`TruncSList::validate`].
    pub fn new(carriers: Vec<FiniteSet>, faces: Vec<Vec<Listing>>, degeneracies: Vec<Vec<Listing>>) -> Result<Self> {
        if carriers.is_empty() {
            return Err(Error::Degree("no carriers".into()));
        }
        let d = carriers.len() - 1;
        if faces.len() != d + 1 || degeneracies.len() != d {
            return Err(Error::Degree(format!(
                "{} face and {} degeneracy groups for D = {d}",
                faces.len(),
                degeneracies.len()
            )));
        }
        for n in 0..=d {
            let want = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != want {
                return Err(Error::Degree(format!("degree {n} has {} faces", faces[n].len())));
            }
            for (i, f) in faces[n].iter().enumerate() {
                if f.source() != &carriers[n] || f.target() != &carriers[n - 1] {
                    return Err(Error::SetMismatch(format!("d_{i} in degree {n}")));
                }
            }
            if n < d {
                if degeneracies[n].len() != n + 1 {
                    return Err(Error::Degree(format!("degree {n} has {} degeneracies", degeneracies[n].len())));
                }
                for (j, s) in degeneracies[n].iter().enumerate() {
                    if s.source() != &carriers[n] || s.target() != &carriers[n + 1] {
                        return Err(Error::SetMismatch(format!("s_{j} in degree {n}")));
                    }
                }
            }
        }
        Ok(Self { carriers, faces, degeneracies })
    }

    /// Builds from raw image tables indexed like the fields.
    pub fn from_images(
        carriers: Vec<FiniteSet>,
        faces: Vec<Vec<Vec<Vec<usize>>>>,
        degeneracies: Vec<Vec<Vec<Vec<usize>>>>,
    ) -> Result<Self> {
        let d = carriers.len().saturating_sub(1);
        if faces.len() != d + 1 || degeneracies.len() != d {
            return Err(Error::Degree("image tables do not match the carriers".into()));
        }
        let faces = faces
            .into_iter()
            .enumerate()
            .map(|(n, fs)| {
                fs.into_iter()
                    .map(|img| Listing::new(carriers[n].clone(), carriers[n - 1].clone(), img))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let degeneracies = degeneracies
            .into_iter()
            .enumerate()
            .map(|(n, ss)| {
                ss.into_iter()
                    .map(|img| Listing::new(carriers[n].clone(), carriers[n + 1].clone(), img))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(carriers, faces, degeneracies)
    }

    /// The simplicial set with one simplex in each degree.
    pub fn point(d: usize) -> Self {
        let carriers: Vec<FiniteSet> = (0..=d).map(|n| FiniteSet::from_vec_unchecked(vec![format!("*{n}")])).collect();
        let faces = (0..=d)
            .map(|n| if n == 0 { Vec::new() } else { vec![vec![vec![0]]; n + 1] })
            .collect();
        let degs = (0..d).map(|n| vec![vec![vec![0]]; n + 1]).collect();
        Self::from_images(carriers, faces, degs).expect("well formed")
    }

    /// The simplicial list with empty carriers.
    pub fn empty(d: usize) -> Self {
        let carriers = vec![FiniteSet::empty(); d + 1];
        let faces = (0..=d).map(|n| if n == 0 { Vec::new() } else { vec![Vec::new(); n + 1] }).collect();
        let degs = (0..d).map(|n| vec![Vec::new(); n + 1]).collect();
        Self::from_images(carriers, faces, degs).expect("well formed")
    }

    /// The standard simplex `Δⁿ` truncated at `d`; simplices are operators.
    pub fn standard_simplex(n: usize, d: usize) -> Self {
        let ops: Vec<Vec<MonotoneMap>> = (0..=d).map(|k| MonotoneMap::operators(k, n)).collect();
        build_functional(&ops, label_operator, |m, eta| m.compose(eta).expect("composable"))
    }

    pub fn dim(&self) -> usize {
        self.carriers.len() - 1
    }

    pub fn carrier(&self, n: usize) -> &FiniteSet {
        &self.carriers[n]
    }

    pub fn carriers(&self) -> &[FiniteSet] {
        &self.carriers
    }

    pub fn face(&self, n: usize, i: usize) -> &Listing {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, j: usize) -> &Listing {
        &self.degeneracies[n][j]
    }

    pub fn faces(&self, n: usize) -> &[Listing] {
        &self.faces[n]
    }

    pub fn degeneracies(&self, n: usize) -> &[Listing] {
        &self.degeneracies[n]
    }

    /// Keeps degrees `0..=d`.
    pub fn truncate(&self, d: usize) -> Result<Self> {
        if d > self.dim() {
            return Err(Error::Degree(format!("cannot extend from {} to {d}", self.dim())));
        }
        Self::new(
            self.carriers[..=d].to_vec(),
            self.faces[..=d].to_vec(),
            self.degeneracies[..d].to_vec(),
        )
    }

    /// Every simplicial identity, checked as listing equality per element.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let d = self.dim();
        let mut check = |n: usize, name: String, lhs: Vec<Vec<usize>>, rhs: Vec<Vec<usize>>, carrier: &FiniteSet| {
            for (x, (l, r)) in lhs.iter().zip(&rhs).enumerate() {
                if l != r {
                    out.push(Violation { degree: n, identity: name.clone(), witness: carrier.label(x).to_string() });
                }
            }
        };
        for n in 0..=d {
            let here = &self.carriers[n];
            let size = here.len();
            let path = |maps: &[&Listing]| -> Vec<Vec<usize>> {
                (0..size)
                    .map(|x| {
                        let mut cur = vec![x];
                        for m in maps {
                            cur = m.apply_list(&cur);
                        }
                        cur
                    })
                    .collect()
            };
            // d_i d_j = d_{j-1} d_i for i < j
            if n >= 2 {
                for j in 0..=n {
                    for i in 0..j {
                        let lhs = path(&[&self.faces[n][j], &self.faces[n - 1][i]]);
                        let rhs = path(&[&self.faces[n][i], &self.faces[n - 1][j - 1]]);
                        check(n, format!("d{i} d{j} = d{} d{i}", j - 1), lhs, rhs, here);
                    }
                }
            }
            if n < d {
                for j in 0..=n {
                    for i in 0..=n + 1 {
                        let lhs = path(&[&self.degeneracies[n][j], &self.faces[n + 1][i]]);
                        let (rhs, name) = if i == j || i == j + 1 {
                            ((0..size).map(|x| vec![x]).collect(), format!("d{i} s{j} = id"))
                        } else if i < j {
                            (
                                path(&[&self.faces[n][i], &self.degeneracies[n - 1][j - 1]]),
                                format!("d{i} s{j} = s{} d{i}", j - 1),
                            )
                        } else {
                            (
                                path(&[&self.faces[n][i - 1], &self.degeneracies[n - 1][j]]),
                                format!("d{i} s{j} = s{j} d{}", i - 1),
                            )
                        };
                        check(n, name, lhs, rhs, here);
                    }
                }
            }
            // s_i s_j = s_{j+1} s_i for i ≤ j
            if n + 2 <= d {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = path(&[&self.degeneracies[n][j], &self.degeneracies[n + 1][i]]);
                        let rhs = path(&[&self.degeneracies[n][i], &self.degeneracies[n + 1][j + 1]]);
                        check(n, format!("s{i} s{j} = s{} s{i}", j + 1), lhs, rhs, here);
                    }
                }
            }
        }
        out
    }

    /// `θ*` applied to `x ∈ X_n` for `θ : [k] → [n]`.
    pub fn act(&self, theta: &MonotoneMap, x: usize) -> Result<Vec<usize>> {
        self.act_with(theta, &[x], Factoring::Last)
    }

    /// `θ*` on a list, factoring `θ` into generators in the given manner.
    pub fn act_with(&self, theta: &MonotoneMap, xs: &[usize], how: Factoring) -> Result<Vec<usize>> {
        let (k, n) = (theta.domain_size(), theta.codomain_size());
        if k == 0 || n == 0 || k - 1 > self.dim() || n - 1 > self.dim() {
            return Err(Error::Degree(format!(
                "operator [{}] → [{}] outside truncation {}",
                k as isize - 1,
                n as isize - 1,
                self.dim()
            )));
        }
        let mut cur = xs.to_vec();
        let mut theta = theta.clone();
        // faces first, then degeneracies
        loop {
            let n = theta.codomain_size() - 1;
            let missing: Vec<usize> = (0..=n).filter(|r| theta.fiber(*r).is_empty()).collect();
            let r = match how {
                Factoring::First => missing.first(),
                Factoring::Last => missing.last(),
            };
            let Some(&r) = r else { break };
            cur = self.faces[n][r].apply_list(&cur);
            let vals = theta.values().iter().map(|&v| if v > r { v - 1 } else { v }).collect();
            theta = MonotoneMap::new_unchecked(theta.domain_size(), n, vals);
        }
        let mut steps = Vec::new();
        loop {
            let v = theta.values();
            let repeats: Vec<usize> = (0..v.len().saturating_sub(1)).filter(|&i| v[i] == v[i + 1]).collect();
            let i = match how {
                Factoring::First => repeats.first(),
                Factoring::Last => repeats.last(),
            };
            let Some(&i) = i else { break };
            let vals: Vec<usize> = v.iter().enumerate().filter(|&(t, _)| t != i + 1).map(|(_, &x)| x).collect();
            // θ = θ'' ∘ s^i, so s_i is applied after θ''*
            steps.push((vals.len() - 1, i));
            theta = MonotoneMap::new_unchecked(vals.len(), theta.codomain_size(), vals);
        }
        for &(deg, i) in steps.iter().rev() {
            cur = self.degeneracies[deg][i].apply_list(&cur);
        }
        Ok(cur)
    }

    /// True iff all faces but the last and all degeneracies are functions,
    /// which is equivalent to every last-vertex-preserving operator acting
    /// by a function.
    pub fn is_operadic(&self) -> bool {
        (1..=self.dim()).all(|n| self.faces[n][..n].iter().all(Listing::is_function))
            && self.degeneracies.iter().flatten().all(Listing::is_function)
    }

    /// True iff every operator satisfying `pred` acts by a function.
    pub fn is_type_s(&self, pred: impl Fn(&MonotoneMap) -> bool) -> bool {
        let d = self.dim();
        for k in 0..=d {
            for n in 0..=d {
                for theta in MonotoneMap::operators(k, n).iter().filter(|t| pred(t)) {
                    for x in 0..self.carriers[n].len() {
                        if self.act(theta, x).map(|v| v.len() != 1).unwrap_or(true) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `x ∈ X_n` occurs in the image of some degeneracy.
    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && self.degeneracies[n - 1].iter().any(|s| s.images().iter().any(|img| img.contains(&x)))
    }

    /// The shape of a simplex of an operadic list, read from its spine:
    /// `|A_i|` is the length of the `i`-th vertex list and `α_i` groups the
    /// `d_1`-faces of the edges `(i-1, i)`.
    pub fn shape_of(&self, n: usize, x: usize) -> Result<LeveledShape> {
        if n > self.dim() {
            return Err(Error::Degree(format!("degree {n} above {}", self.dim())));
        }
        let sizes: Vec<usize> = (0..=n)
            .map(|i| self.act(&MonotoneMap::operator(0, n, vec![i]).expect("vertex"), x).map(|v| v.len()))
            .collect::<Result<_>>()?;
        let mut maps = Vec::with_capacity(n);
        for i in 1..=n {
            let edge = MonotoneMap::operator(1, n, vec![i - 1, i]).expect("edge");
            let edges = self.act(&edge, x)?;
            if edges.len() != sizes[i] {
                return Err(Error::NotOperadic(format!("edge ({}, {i}) of {}", i - 1, self.carriers[n].label(x))));
            }
            let mut vals = Vec::with_capacity(sizes[i - 1]);
            for (b, &e) in edges.iter().enumerate() {
                vals.extend(std::iter::repeat_n(b, self.faces[1][1].image(e).len()));
            }
            maps.push(MonotoneMap::new(sizes[i - 1], sizes[i], vals).map_err(|e| {
                Error::Invalid(format!("spine of {} does not form a shape: {e}", self.carriers[n].label(x)))
            })?);
        }
        LeveledShape::new(sizes, maps)
    }
}

pub(crate) fn label_operator(m: &MonotoneMap) -> String {
    m.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// A simplicial set from explicit cells per degree and an action by
/// operators on cells.
fn build_functional<C: Clone + Eq + std::hash::Hash>(
    cells: &[Vec<C>],
    label: impl Fn(&C) -> String,
    act: impl Fn(&C, &MonotoneMap) -> C,
) -> TruncSList {
    let d = cells.len() - 1;
    let carriers: Vec<FiniteSet> =
        cells.iter().map(|cs| FiniteSet::from_vec_unchecked(cs.iter().map(&label).collect())).collect();
    let index: Vec<HashMap<C, usize>> =
        cells.iter().map(|cs| cs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect()).collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=d {
        let fs = (0..=n)
            .map(|i| {
                let eta = MonotoneMap::coface(n, i);
                let img = cells[n].iter().map(|c| vec![index[n - 1][&act(c, &eta)]]).collect();
                Listing::new_unchecked(carriers[n].clone(), carriers[n - 1].clone(), img)
            })
            .collect();
        faces.push(fs);
    }
    let degs = (0..d)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    let eta = MonotoneMap::codegeneracy(n, j);
                    let img = cells[n].iter().map(|c| vec![index[n + 1][&act(c, &eta)]]).collect();
                    Listing::new_unchecked(carriers[n].clone(), carriers[n + 1].clone(), img)
                })
                .collect()
        })
        .collect();
    TruncSList { carriers, faces, degeneracies: degs }
}

/// A morphism of simplicial lists: one function per degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SListMorphism {
    pub components: Vec<Vec<usize>>,
}

impl SListMorphism {
    /// Commutes with every face and degeneracy.
    pub fn is_valid(&self, x: &TruncSList, y: &TruncSList) -> bool {
        let d = x.dim();
        if y.dim() != d || self.components.len() != d + 1 {
            return false;
        }
        for n in 0..=d {
            let f = &self.components[n];
            if f.len() != x.carrier(n).len() || f.iter().any(|&v| v >= y.carrier(n).len()) {
                return false;
            }
            let map = |lower: usize, xs: &[usize]| xs.iter().map(|&t| self.components[lower][t]).collect::<Vec<_>>();
            for e in 0..f.len() {
                for i in 0..x.faces(n).len() {
                    if map(n - 1, x.face(n, i).image(e)) != y.face(n, i).image(f[e]) {
                        return false;
                    }
                }
                if n < d {
                    for j in 0..=n {
                        if map(n + 1, x.degeneracy(n, j).image(e)) != y.degeneracy(n, j).image(f[e]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The representable `U_α` with its cells `(θ, a)`.
#[derive(Clone, Debug)]
pub struct Representable {
    pub alpha: LeveledShape,
    pub slist: TruncSList,
    /// Cells of each degree, ordered by operator then by `a`.
    pub cells: Vec<Vec<(MonotoneMap, usize)>>,
    /// The perfect listing `u_α : Δⁿ ⇸ U_α` in each degree.
    pub perfect: Vec<Listing>,
}

impl Representable {
    /// Index of the cell `(θ, a)`.
    pub fn index_of(&self, theta: &MonotoneMap, a: usize) -> Option<usize> {
        let k = theta.domain_size().checked_sub(1)?;
        self.cells.get(k)?.iter().position(|(t, b)| t == theta && *b == a)
    }

    /// The cells `(id, a)`, present when `D ≥ n`.
    pub fn fundamental(&self) -> Vec<usize> {
        let n = self.alpha.degree();
        if n > self.slist.dim() {
            return Vec::new();
        }
        let id = MonotoneMap::identity(n + 1);
        (0..self.alpha.size(n)).map(|a| self.index_of(&id, a).expect("fundamental cell")).collect()
    }
}

/// `U_{α,k} = ∐_{θ:[k]→[n]} A_{θ(k)}` with
/// `η*(θ,a) = ((θη, b) : b ∈ α_{θη(l),θ(k)}^{-1}(a))`.
pub fn build_u_alpha(alpha: &LeveledShape, d: usize) -> Representable {
    let n = alpha.degree();
    let mut cells: Vec<Vec<(MonotoneMap, usize)>> = Vec::with_capacity(d + 1);
    let mut perfect_images: Vec<Vec<Vec<usize>>> = Vec::with_capacity(d + 1);
    let mut index: Vec<HashMap<(MonotoneMap, usize), usize>> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut cs = Vec::new();
        let mut per = Vec::new();
        for theta in MonotoneMap::operators(k, n) {
            let top = alpha.size(theta.last());
            per.push((cs.len()..cs.len() + top).collect());
            for a in 0..top {
                cs.push((theta.clone(), a));
            }
        }
        index.push(cs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect());
        cells.push(cs);
        perfect_images.push(per);
    }
    let carriers: Vec<FiniteSet> = cells
        .iter()
        .map(|cs| FiniteSet::from_vec_unchecked(cs.iter().map(|(t, a)| format!("{}/{a}", label_operator(t))).collect()))
        .collect();
    let act = |k: usize, eta: &MonotoneMap, target: usize| -> Vec<Vec<usize>> {
        cells[k]
            .iter()
            .map(|(theta, a)| {
                let te = theta.compose(eta).expect("composable");
                alpha.fiber(te.last(), theta.last(), *a).map(|b| index[target][&(te.clone(), b)]).collect()
            })
            .collect()
    };
    let mut faces = vec![Vec::new()];
    for k in 1..=d {
        faces.push(
            (0..=k)
                .map(|i| Listing::new_unchecked(carriers[k].clone(), carriers[k - 1].clone(), act(k, &MonotoneMap::coface(k, i), k - 1)))
                .collect(),
        );
    }
    let degs = (0..d)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    Listing::new_unchecked(carriers[k].clone(), carriers[k + 1].clone(), act(k, &MonotoneMap::codegeneracy(k, j), k + 1))
                })
                .collect()
        })
        .collect();
    let slist = TruncSList { carriers: carriers.clone(), faces, degeneracies: degs };
    let simplex = TruncSList::standard_simplex(n, d);
    let perfect = perfect_images
        .into_iter()
        .enumerate()
        .map(|(k, img)| Listing::new_unchecked(simplex.carrier(k).clone(), carriers[k].clone(), img))
        .collect();
    Representable { alpha: alpha.clone(), slist, cells, perfect }
}

/// Result of classifying a simplex.
#[derive(Clone, Debug)]
pub struct Classification {
    /// The shape `α` when the factorization middle is `U_α`; `None` when
    /// the middle is not of that form, which happens only for
    /// non-operadic lists.
    pub shape: Option<LeveledShape>,
    /// The middle of the degree-wise factorization of `(x) : Δⁿ ⇸ X`.
    pub middle: TruncSList,
    /// The function leg `middle → X`, which is the classifying morphism.
    pub morphism: SListMorphism,
}

/// Factors `(x) : Δⁿ ⇸ X` degree-wise as a perfect listing followed by a
/// function and recognizes the middle.
pub fn classify_simplex(x_list: &TruncSList, n: usize, x: usize) -> Result<Classification> {
    let d = x_list.dim();
    if n > d {
        return Err(Error::Degree(format!("degree {n} above {d}")));
    }
    if x >= x_list.carrier(n).len() {
        return Err(Error::OutOfRange(format!("simplex {x} in degree {n}")));
    }
    let simplex = TruncSList::standard_simplex(n, d);
    let mut legs = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let images = MonotoneMap::operators(k, n)
            .iter()
            .map(|theta| x_list.act(theta, x))
            .collect::<Result<Vec<_>>>()?;
        legs.push(Listing::new_unchecked(simplex.carrier(k).clone(), x_list.carrier(k).clone(), images));
    }
    let facts: Vec<_> = legs.iter().map(perfect_factorize).collect();
    let carriers: Vec<FiniteSet> = facts.iter().map(|f| f.middle.clone()).collect();
    let mut faces = vec![Vec::new()];
    for k in 1..=d {
        let mut fs = Vec::with_capacity(k + 1);
        for i in 0..=k {
            fs.push(induced_middle(simplex.face(k, i), x_list.face(k, i), &legs[k], &legs[k - 1])?);
        }
        faces.push(fs);
    }
    let mut degs = Vec::with_capacity(d);
    for k in 0..d {
        let mut ss = Vec::with_capacity(k + 1);
        for j in 0..=k {
            ss.push(induced_middle(simplex.degeneracy(k, j), x_list.degeneracy(k, j), &legs[k], &legs[k + 1])?);
        }
        degs.push(ss);
    }
    let middle = TruncSList::new(carriers, faces, degs)?;
    let morphism = SListMorphism {
        components: facts.iter().map(|f| f.func.as_function().expect("function leg")).collect(),
    };
    let shape = recognize(&middle, &legs, n);
    if shape.is_none() && x_list.is_operadic() {
        return Err(Error::Invalid(format!(
            "middle of {} is not a representable",
            x_list.carrier(n).label(x)
        )));
    }
    Ok(Classification { shape, middle, morphism })
}

/// Reads `α` off the middle and checks that the middle is `U_α`.
fn recognize(middle: &TruncSList, legs: &[Listing], n: usize) -> Option<LeveledShape> {
    let d = middle.dim();
    // vertex i of Δⁿ is the i-th operator [0] → [n]
    let sizes: Vec<usize> = (0..=n).map(|i| legs[0].image(i).len()).collect();
    let mut maps = Vec::with_capacity(n);
    if n > 0 {
        let edges = MonotoneMap::operators(1, n);
        let vertex_offset: Vec<usize> = sizes.iter().scan(0, |s, &z| { let o = *s; *s += z; Some(o) }).collect();
        let mut edge_offset = 0;
        let mut edge_start = HashMap::new();
        for (e, theta) in edges.iter().enumerate() {
            edge_start.insert(theta.values().to_vec(), edge_offset);
            edge_offset += legs[1].image(e).len();
        }
        for i in 1..=n {
            let start = edge_start[&vec![i - 1, i]];
            let mut vals = vec![usize::MAX; sizes[i - 1]];
            for b in 0..sizes[i] {
                for &v in middle.face(1, 1).image(start + b) {
                    let a = v.checked_sub(vertex_offset[i - 1])?;
                    if a >= sizes[i - 1] || vals[a] != usize::MAX {
                        return None;
                    }
                    vals[a] = b;
                }
            }
            if vals.contains(&usize::MAX) {
                return None;
            }
            maps.push(MonotoneMap::new(sizes[i - 1], sizes[i], vals).ok()?);
        }
    }
    let alpha = LeveledShape::new(sizes, maps).ok()?;
    let rep = build_u_alpha(&alpha, d);
    for k in 0..=d {
        if rep.slist.carrier(k).len() != middle.carrier(k).len() {
            return None;
        }
        for i in 0..middle.faces(k).len() {
            if rep.slist.face(k, i).images() != middle.face(k, i).images() {
                return None;
            }
        }
        if k < d {
            for j in 0..=k {
                if rep.slist.degeneracy(k, j).images() != middle.degeneracy(k, j).images() {
                    return None;
                }
            }
        }
    }
    Some(alpha)
}

/// Morphisms `U_α → X`, one per simplex of `X_n` of shape `α`.
pub fn hom_slist(alpha: &LeveledShape, x_list: &TruncSList) -> Result<Vec<SListMorphism>> {
    let n = alpha.degree();
    if n > x_list.dim() {
        return Err(Error::Degree(format!("shape of degree {n} above truncation {}", x_list.dim())));
    }
    let rep = build_u_alpha(alpha, x_list.dim());
    let mut out = Vec::new();
    for x in 0..x_list.carrier(n).len() {
        if &x_list.shape_of(n, x)? != alpha {
            continue;
        }
        out.push(representing_morphism(&rep, x_list, x)?);
    }
    Ok(out)
}

/// `(θ, a) ↦ (θ*x)_a`.
pub fn representing_morphism(rep: &Representable, x_list: &TruncSList, x: usize) -> Result<SListMorphism> {
    let mut components = Vec::with_capacity(rep.cells.len());
    for cells in &rep.cells {
        let mut comp = Vec::with_capacity(cells.len());
        let mut cache: Option<(MonotoneMap, Vec<usize>)> = None;
        for (theta, a) in cells {
            if cache.as_ref().is_none_or(|(t, _)| t != theta) {
                cache = Some((theta.clone(), x_list.act(theta, x)?));
            }
            let img = &cache.as_ref().expect("cached").1;
            comp.push(*img.get(*a).ok_or_else(|| {
                Error::NotOperadic(format!("operator {} on {}", label_operator(theta), x))
            })?);
        }
        components.push(comp);
    }
    Ok(SListMorphism { components })
}

/// All morphisms `X → Y` of truncated simplicial lists of equal degree.
pub fn enumerate_morphisms(x: &TruncSList, y: &TruncSList) -> Vec<SListMorphism> {
    let d = x.dim();
    if y.dim() != d {
        return Vec::new();
    }
    // occurrences of each simplex inside degeneracy images of lower ones
    let mut occurs: Vec<Vec<Vec<(usize, usize, usize)>>> =
        (0..=d).map(|n| vec![Vec::new(); x.carrier(n).len()]).collect();
    for n in 0..d {
        for j in 0..=n {
            for z in 0..x.carrier(n).len() {
                for (p, &e) in x.degeneracy(n, j).image(z).iter().enumerate() {
                    occurs[n + 1][e].push((z, j, p));
                }
            }
        }
    }
    let by_faces: Vec<HashMap<Vec<Vec<usize>>, Vec<usize>>> = (0..=d)
        .map(|n| {
            let mut m: HashMap<Vec<Vec<usize>>, Vec<usize>> = HashMap::new();
            for e in 0..y.carrier(n).len() {
                let sig = y.faces(n).iter().map(|f| f.image(e).to_vec()).collect();
                m.entry(sig).or_default().push(e);
            }
            m
        })
        .collect();
    let order: Vec<(usize, usize)> = (0..=d).flat_map(|n| (0..x.carrier(n).len()).map(move |e| (n, e))).collect();
    let mut comps: Vec<Vec<usize>> = (0..=d).map(|n| vec![usize::MAX; x.carrier(n).len()]).collect();
    let mut out = Vec::new();
    fn go(
        pos: usize,
        order: &[(usize, usize)],
        x: &TruncSList,
        y: &TruncSList,
        occurs: &[Vec<Vec<(usize, usize, usize)>>],
        by_faces: &[HashMap<Vec<Vec<usize>>, Vec<usize>>],
        comps: &mut Vec<Vec<usize>>,
        out: &mut Vec<SListMorphism>,
    ) {
        let Some(&(n, e)) = order.get(pos) else {
            out.push(SListMorphism { components: comps.clone() });
            return;
        };
        let sig: Vec<Vec<usize>> =
            x.faces(n).iter().map(|f| f.image(e).iter().map(|&t| comps[n - 1][t]).collect()).collect();
        let Some(cands) = by_faces[n].get(&sig) else { return };
        'cand: for &c in cands {
            for &(z, j, p) in &occurs[n][e] {
                let img = y.degeneracy(n - 1, j).image(comps[n - 1][z]);
                if img.len() != x.degeneracy(n - 1, j).image(z).len() || img[p] != c {
                    continue 'cand;
                }
            }
            comps[n][e] = c;
            go(pos + 1, order, x, y, occurs, by_faces, comps, out);
        }
        comps[n][e] = usize::MAX;
    }
    go(0, &order, x, y, &occurs, &by_faces, &mut comps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `X0 = {a}`, `X1 = {s', s''}`, `s0 a = (s', s'')`.
    pub(crate) fn wild() -> TruncSList {
        let x0 = FiniteSet::new(["a"]).unwrap();
        let x1 = FiniteSet::new(["s'", "s''"]).unwrap();
        TruncSList::from_images(
            vec![x0, x1],
            vec![vec![], vec![vec![vec![], vec![0]], vec![vec![0], vec![]]]],
            vec![vec![vec![vec![0, 1]]]],
        )
        .unwrap()
    }

    fn two_level() -> LeveledShape {
        LeveledShape::from_values(vec![2, 2, 1], vec![vec![0, 1], vec![0, 0]]).unwrap()
    }

    #[test]
    fn wild_example_validates_and_is_not_operadic() {
        let x = wild();
        assert!(x.validate().is_empty());
        assert!(!x.is_operadic());
        assert!(!x.is_type_s(|t| t.last() + 1 == t.codomain_size()));
    }

    #[test]
    fn mutation_is_caught() {
        let x = wild();
        let mut faces: Vec<Vec<Vec<Vec<usize>>>> =
            (0..=1).map(|n| x.faces(n).iter().map(|f| f.images().to_vec()).collect()).collect();
        faces[1][0][1] = vec![];
        let degs = vec![vec![x.degeneracy(0, 0).images().to_vec()]];
        let y = TruncSList::from_images(x.carriers().to_vec(), faces, degs).unwrap();
        let v = y.validate();
        assert!(!v.is_empty());
        assert_eq!(v[0].identity, "d0 s0 = id");
        assert_eq!(v[0].witness, "a");
    }

    #[test]
    fn standard_simplex_is_a_simplicial_set() {
        let s = TruncSList::standard_simplex(2, 3);
        assert!(s.validate().is_empty());
        assert!(s.is_operadic());
        assert_eq!(s.carrier(2).len(), 10);
        assert!(TruncSList::point(3).validate().is_empty());
        assert!(TruncSList::empty(2).validate().is_empty());
    }

    #[test]
    fn u_alpha_counts() {
        let rep = build_u_alpha(&two_level(), 3);
        let u = &rep.slist;
        assert!(u.validate().is_empty());
        assert!(u.is_operadic());
        assert_eq!(u.carrier(0).len(), 5);
        assert_eq!(u.carrier(1).len(), 9);
        assert_eq!(u.carrier(2).len(), 14);
        let nd1: Vec<&str> = (0..9).filter(|&e| !u.is_degenerate(1, e)).map(|e| u.carrier(1).label(e)).collect();
        assert_eq!(nd1, vec!["0,1/0", "0,1/1", "0,2/0", "1,2/0"]);
        let nd2 = (0..14).filter(|&e| !u.is_degenerate(2, e)).count();
        assert_eq!(nd2, 1);
        for (k, p) in rep.perfect.iter().enumerate() {
            assert!(crate::list::is_perfect(p), "degree {k}");
        }
        assert_eq!(rep.fundamental().len(), 1);
    }

    #[test]
    fn u_of_point_chain_is_the_simplex() {
        let rep = build_u_alpha(&LeveledShape::point_chain(2), 3);
        let s = TruncSList::standard_simplex(2, 3);
        for k in 0..=3 {
            assert_eq!(rep.slist.carrier(k).len(), s.carrier(k).len());
            for i in 0..rep.slist.faces(k).len() {
                assert_eq!(rep.slist.face(k, i).images(), s.face(k, i).images());
            }
        }
    }

    #[test]
    fn act_agrees_across_factorings() {
        let u = build_u_alpha(&two_level(), 3).slist;
        for k in 0..=3 {
            for n in 0..=3 {
                for theta in MonotoneMap::operators(k, n) {
                    for x in 0..u.carrier(n).len() {
                        let a = u.act_with(&theta, &[x], Factoring::First).unwrap();
                        let b = u.act_with(&theta, &[x], Factoring::Last).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
        assert!(u.act(&MonotoneMap::operators(4, 0)[0], 0).is_err());
    }

    #[test]
    fn operadic_matches_operator_definition() {
        let u = build_u_alpha(&two_level(), 3).slist;
        let lvp = |t: &MonotoneMap| t.last() + 1 == t.codomain_size();
        assert!(u.is_type_s(lvp));
        assert!(u.is_operadic());
    }

    #[test]
    fn classification_of_fundamental_simplex() {
        let alpha = two_level();
        let rep = build_u_alpha(&alpha, 3);
        let x = rep.fundamental()[0];
        let c = classify_simplex(&rep.slist, 2, x).unwrap();
        assert_eq!(c.shape.as_ref(), Some(&alpha));
        assert!(c.morphism.is_valid(&c.middle, &rep.slist));
        assert_eq!(rep.slist.shape_of(2, x).unwrap(), alpha);
        // degenerate simplex s0 x has shape s0*α
        let s0x = rep.slist.degeneracy(2, 0).image(x)[0];
        let shape = classify_simplex(&rep.slist, 3, s0x).unwrap().shape.unwrap();
        assert_eq!(shape, crate::delta::act(&MonotoneMap::codegeneracy(2, 0), &alpha).unwrap());
    }

    #[test]
    fn classification_of_wild_returns_middle() {
        let x = wild();
        let c = classify_simplex(&x, 0, 0).unwrap();
        // s0 a has two terms, so the middle is not a representable
        assert!(c.shape.is_none());
        assert_eq!(c.middle.carrier(1).len(), 2);
        assert!(c.morphism.is_valid(&c.middle, &x));
    }

    #[test]
    fn hom_into_self_contains_identity() {
        let alpha = two_level();
        let rep = build_u_alpha(&alpha, 2);
        let homs = hom_slist(&alpha, &rep.slist).unwrap();
        let id = SListMorphism { components: rep.cells.iter().map(|c| (0..c.len()).collect()).collect() };
        assert!(homs.contains(&id));
        assert!(hom_slist(&alpha, &rep.slist.truncate(1).unwrap()).is_err());
    }

    #[test]
    fn morphism_enumeration_on_simplices() {
        // maps Δ¹ → Δ¹ are the three operators [1] → [1]
        let s = TruncSList::standard_simplex(1, 2);
        let ms = enumerate_morphisms(&s, &s);
        assert_eq!(ms.len(), 3);
        assert!(ms.iter().all(|m| m.is_valid(&s, &s)));
        // the wild list maps into no operadic list
        let u = build_u_alpha(&two_level(), 1).slist;
        assert!(enumerate_morphisms(&wild(), &u).is_empty());
    }
}
