//! The simplex category, leveled shapes (simplices of the nerve of the
//! augmented simplex category) and the rooted shape category Υ.

use std::fmt::Write as _;
use std::ops::Range;

use crate::error::{Error, Result};

/// A weakly increasing map between finite ordinals, given by its values.
/// Sizes may be zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    domain_size: usize,
    codomain_size: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(domain_size: usize, codomain_size: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != domain_size {
            return Err(Error::Arity(format!(
                "{} values for a domain of size {domain_size}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= codomain_size) {
            return Err(Error::OutOfRange(format!("value {v} in a codomain of size {codomain_size}")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Arity(format!("values {values:?} are not weakly increasing")));
        }
        Ok(Self { domain_size, codomain_size, values })
    }

    pub(crate) fn new_unchecked(domain_size: usize, codomain_size: usize, values: Vec<usize>) -> Self {
        debug_assert!(values.len() == domain_size && values.windows(2).all(|w| w[0] <= w[1]));
        Self { domain_size, codomain_size, values }
    }

    pub fn identity(n: usize) -> Self {
        Self::new_unchecked(n, n, (0..n).collect())
    }

    /// The simplicial operator `[k] → [n]` with the given values.
    pub fn operator(k: usize, n: usize, values: Vec<usize>) -> Result<Self> {
        Self::new(k + 1, n + 1, values)
    }

    /// Coface `d^i : [n-1] → [n]`, skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        Self::new_unchecked(n, n + 1, (0..n).map(|t| if t < i { t } else { t + 1 }).collect())
    }

    /// Codegeneracy `s^j : [n+1] → [n]`, hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Self {
        assert!(j <= n);
        Self::new_unchecked(n + 2, n + 1, (0..n + 2).map(|t| if t <= j { t } else { t - 1 }).collect())
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// Last value, for operators `[k] → [n]`.
    pub fn last(&self) -> usize {
        *self.values.last().expect("operator on a nonempty ordinal")
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        if f.codomain_size != self.domain_size {
            return Err(Error::Arity(format!(
                "codomain {} does not meet domain {}",
                f.codomain_size, self.domain_size
            )));
        }
        Ok(Self::new_unchecked(
            f.domain_size,
            self.codomain_size,
            f.values.iter().map(|&v| self.values[v]).collect(),
        ))
    }

    /// The preimage of `b`, a contiguous range.
    pub fn fiber(&self, b: usize) -> Range<usize> {
        let start = self.values.partition_point(|&v| v < b);
        let end = self.values.partition_point(|&v| v <= b);
        start..end
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.codomain_size).all(|b| !self.fiber(b).is_empty())
    }

    /// Every monotone map between ordinals of the given sizes, in
    /// lexicographic order of values.
    pub fn all(domain_size: usize, codomain_size: usize) -> Vec<MonotoneMap> {
        fn go(pos: usize, lo: usize, d: usize, c: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
            if pos == d {
                out.push(MonotoneMap::new_unchecked(d, c, cur.clone()));
                return;
            }
            for v in lo..c {
                cur.push(v);
                go(pos + 1, v, d, c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, 0, domain_size, codomain_size, &mut Vec::new(), &mut out);
        out
    }

    /// All simplicial operators `[k] → [n]`, lexicographic.
    pub fn operators(k: usize, n: usize) -> Vec<MonotoneMap> {
        Self::all(k + 1, n + 1)
    }
}

/// A chain `A_0 → A_1 → … → A_n` of monotone maps between finite ordinals.
///
/// The derived ordering compares size vectors first and then map values,
/// which is the canonical enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeveledShape {
    level_sizes: Vec<usize>,
    maps: Vec<MonotoneMap>,
}

impl LeveledShape {
    pub fn new(level_sizes: Vec<usize>, maps: Vec<MonotoneMap>) -> Result<Self> {
        if level_sizes.is_empty() {
            return Err(Error::Arity("a shape needs at least one level".into()));
        }
        if maps.len() + 1 != level_sizes.len() {
            return Err(Error::Arity(format!(
                "{} maps for {} levels",
                maps.len(),
                level_sizes.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.domain_size != level_sizes[i] || m.codomain_size != level_sizes[i + 1] {
                return Err(Error::Arity(format!("map {} does not go from level {i} to level {}", i + 1, i + 1)));
            }
        }
        Ok(Self { level_sizes, maps })
    }

    /// Builds a shape from raw value vectors.
    pub fn from_values(level_sizes: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if maps.len() + 1 != level_sizes.len() {
            return Err(Error::Arity(format!("{} maps for {} levels", maps.len(), level_sizes.len())));
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(i, v)| MonotoneMap::new(level_sizes[i], level_sizes[i + 1], v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(level_sizes, maps)
    }

    pub(crate) fn new_unchecked(level_sizes: Vec<usize>, maps: Vec<MonotoneMap>) -> Self {
        Self { level_sizes, maps }
    }

    /// The chain `[0] → … → [0]` of singletons.
    pub fn point_chain(n: usize) -> Self {
        Self::new_unchecked(vec![1; n + 1], vec![MonotoneMap::identity(1); n])
    }

    pub fn degree(&self) -> usize {
        self.maps.len()
    }

    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    pub fn size(&self, i: usize) -> usize {
        self.level_sizes[i]
    }

    pub fn maps(&self) -> &[MonotoneMap] {
        &self.maps
    }

    /// `α_i : A_{i-1} → A_i` for `1 ≤ i ≤ n`.
    pub fn map(&self, i: usize) -> &MonotoneMap {
        &self.maps[i - 1]
    }

    /// Total number of elements across all levels.
    pub fn total_size(&self) -> usize {
        self.level_sizes.iter().sum()
    }

    /// Offset of level `i` in the level-major flattening of all elements.
    pub fn offset(&self, i: usize) -> usize {
        self.level_sizes[..i].iter().sum()
    }

    /// `α_{i,j} : A_i → A_j` for `i ≤ j`.
    pub fn composite(&self, i: usize, j: usize) -> MonotoneMap {
        assert!(i <= j && j <= self.degree());
        let mut values: Vec<usize> = (0..self.level_sizes[i]).collect();
        for t in i + 1..=j {
            let m = &self.maps[t - 1];
            for v in values.iter_mut() {
                *v = m.values[*v];
            }
        }
        MonotoneMap::new_unchecked(self.level_sizes[i], self.level_sizes[j], values)
    }

    /// `α_{i,j}^{-1}(a)` for `a ∈ A_j`, a contiguous range of `A_i`.
    pub fn fiber(&self, i: usize, j: usize, a: usize) -> Range<usize> {
        let mut r = a..a + 1;
        for t in (i + 1..=j).rev() {
            let m = &self.maps[t - 1];
            if r.is_empty() {
                let s = m.values.partition_point(|&v| v < r.start);
                r = s..s;
            } else {
                r = m.fiber(r.start).start..m.fiber(r.end - 1).end;
            }
        }
        r
    }

    pub fn is_rooted(&self) -> bool {
        self.level_sizes[self.degree()] == 1
    }

    /// Multi-line rendering, root level first, with fibers grouped.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let n = self.degree();
        let _ = writeln!(out, "A{n} | {}", (0..self.level_sizes[n]).map(|a| a.to_string()).collect::<Vec<_>>().join(" "));
        for i in (0..n).rev() {
            let m = &self.maps[i];
            let groups: Vec<String> = (0..self.level_sizes[i + 1])
                .map(|b| {
                    let f = m.fiber(b);
                    format!("({})", f.map(|a| a.to_string()).collect::<Vec<_>>().join(" "))
                })
                .collect();
            let _ = writeln!(out, "A{i} | {}", groups.concat());
        }
        out
    }
}

/// A shape with a single root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedShape(LeveledShape);

impl RootedShape {
    pub fn new(shape: LeveledShape) -> Result<Self> {
        if !shape.is_rooted() {
            return Err(Error::Arity(format!(
                "last level has {} elements, not 1",
                shape.level_sizes[shape.degree()]
            )));
        }
        Ok(Self(shape))
    }

    pub fn shape(&self) -> &LeveledShape {
        &self.0
    }

    pub fn into_shape(self) -> LeveledShape {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }
}

impl std::ops::Deref for RootedShape {
    type Target = LeveledShape;
    fn deref(&self) -> &LeveledShape {
        &self.0
    }
}

/// `θ*α` for `θ : [k] → [n]`: `B_i = A_{θ(i)}`, `β_i = α_{θ(i-1),θ(i)}`.
pub fn act(theta: &MonotoneMap, alpha: &LeveledShape) -> Result<LeveledShape> {
    if theta.codomain_size != alpha.level_sizes.len() || theta.domain_size == 0 {
        return Err(Error::Arity(format!(
            "operator into [{}] applied to a shape of degree {}",
            theta.codomain_size as isize - 1,
            alpha.degree()
        )));
    }
    let sizes = theta.values.iter().map(|&v| alpha.level_sizes[v]).collect();
    let maps = theta.values.windows(2).map(|w| alpha.composite(w[0], w[1])).collect();
    Ok(LeveledShape::new_unchecked(sizes, maps))
}

/// A rooted component together with the ranges of the original levels it
/// occupies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub shape: RootedShape,
    pub ranges: Vec<Range<usize>>,
}

/// The component over `a ∈ A_n` with its level ranges in `α`.
pub fn rooted_component(alpha: &LeveledShape, a: usize) -> Result<Component> {
    let n = alpha.degree();
    if a >= alpha.level_sizes[n] {
        return Err(Error::OutOfRange(format!(
            "root {a} in a last level of size {}",
            alpha.level_sizes[n]
        )));
    }
    let ranges: Vec<Range<usize>> = (0..=n).map(|i| alpha.fiber(i, n, a)).collect();
    let sizes = ranges.iter().map(|r| r.len()).collect();
    let maps = (1..=n)
        .map(|i| {
            let lo = ranges[i].start;
            let vals = alpha.maps[i - 1].values[ranges[i - 1].clone()].iter().map(|&v| v - lo).collect();
            MonotoneMap::new_unchecked(ranges[i - 1].len(), ranges[i].len(), vals)
        })
        .collect();
    Ok(Component { shape: RootedShape(LeveledShape::new_unchecked(sizes, maps)), ranges })
}

/// `α_a`: levels are the preimages `α_{i,n}^{-1}(a)` in inherited order.
pub fn rooted_restriction(alpha: &LeveledShape, a: usize) -> Result<RootedShape> {
    Ok(rooted_component(alpha, a)?.shape)
}

/// `(α_a)_{a ∈ A_n}` in the order of `A_n`.
pub fn rooted_decomposition(alpha: &LeveledShape) -> Vec<RootedShape> {
    rooted_components(alpha).into_iter().map(|c| c.shape).collect()
}

pub fn rooted_components(alpha: &LeveledShape) -> Vec<Component> {
    (0..alpha.level_sizes[alpha.degree()])
        .map(|a| rooted_component(alpha, a).expect("root in range"))
        .collect()
}

/// Level-wise ordinal sum of shapes of a common degree.
pub fn merge(parts: &[LeveledShape], degree: usize) -> Result<LeveledShape> {
    let mut sizes = vec![0; degree + 1];
    let mut values: Vec<Vec<usize>> = vec![Vec::new(); degree];
    for p in parts {
        if p.degree() != degree {
            return Err(Error::Arity(format!("degree {} among degree {degree}", p.degree())));
        }
        for i in 0..degree {
            let shift = sizes[i + 1];
            values[i].extend(p.maps[i].values.iter().map(|&v| v + shift));
        }
        for (s, t) in sizes.iter_mut().zip(&p.level_sizes) {
            *s += t;
        }
    }
    let maps = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| MonotoneMap::new_unchecked(sizes[i], sizes[i + 1], v))
        .collect();
    Ok(LeveledShape::new_unchecked(sizes, maps))
}

/// A morphism `(θ, a) : β → α` of Υ with `β = (θ*α)_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpsilonArrow {
    theta: MonotoneMap,
    root_choice: usize,
    source: RootedShape,
    target: RootedShape,
}

impl UpsilonArrow {
    pub fn new(theta: MonotoneMap, root_choice: usize, target: RootedShape) -> Result<Self> {
        let acted = act(&theta, &target)?;
        let source = rooted_restriction(&acted, root_choice)?;
        Ok(Self { theta, root_choice, source, target })
    }

    pub fn identity(alpha: RootedShape) -> Self {
        let theta = MonotoneMap::identity(alpha.degree() + 1);
        Self { theta, root_choice: 0, source: alpha.clone(), target: alpha }
    }

    pub fn theta(&self) -> &MonotoneMap {
        &self.theta
    }

    pub fn root_choice(&self) -> usize {
        self.root_choice
    }

    pub fn source(&self) -> &RootedShape {
        &self.source
    }

    pub fn target(&self) -> &RootedShape {
        &self.target
    }

    /// All arrows of degree `k` into `alpha`, by operator then root.
    pub fn into_shape(alpha: &RootedShape, k: usize) -> Vec<UpsilonArrow> {
        let mut out = Vec::new();
        for theta in MonotoneMap::operators(k, alpha.degree()) {
            for a in 0..alpha.size(theta.last()) {
                out.push(UpsilonArrow::new(theta.clone(), a, alpha.clone()).expect("valid arrow"));
            }
        }
        out
    }
}

/// `g ∘ f`: the root of `f` is re-indexed through the component of
/// `θ_g*α` at the root of `g`.
pub fn compose_upsilon(g: &UpsilonArrow, f: &UpsilonArrow) -> Result<UpsilonArrow> {
    if f.target != g.source {
        return Err(Error::Arity("target of the first arrow is not the source of the second".into()));
    }
    let acted = act(&g.theta, &g.target)?;
    let comp = rooted_component(&acted, g.root_choice)?;
    let theta = g.theta.compose(&f.theta)?;
    let root = comp.ranges[f.theta.last()].start + f.root_choice;
    let out = UpsilonArrow::new(theta, root, g.target.clone())?;
    debug_assert_eq!(out.source, f.source);
    Ok(out)
}

/// All rooted shapes of degree `n` with every level of size at most `bound`,
/// in canonical order.
pub fn enumerate_rooted(n: usize, bound: usize) -> Vec<RootedShape> {
    if bound == 0 {
        return Vec::new();
    }
    let mut out: Vec<RootedShape> = enumerate_with_top(n, bound, &[1]).into_iter().map(RootedShape).collect();
    out.sort();
    out
}

/// All shapes of degree `n` with every level of size at most `bound`, in
/// canonical order.
pub fn enumerate_shapes(n: usize, bound: usize) -> Vec<LeveledShape> {
    let tops: Vec<usize> = (0..=bound).collect();
    let mut out = enumerate_with_top(n, bound, &tops);
    out.sort();
    out
}

fn enumerate_with_top(n: usize, bound: usize, tops: &[usize]) -> Vec<LeveledShape> {
    let mut out = Vec::new();
    for &top in tops {
        let mut sizes = vec![0; n + 1];
        sizes[n] = top;
        fill_sizes(0, n, bound, &mut sizes, &mut out);
    }
    out
}

fn fill_sizes(pos: usize, n: usize, bound: usize, sizes: &mut Vec<usize>, out: &mut Vec<LeveledShape>) {
    if pos == n {
        let mut maps = Vec::with_capacity(n);
        fill_maps(0, sizes, &mut maps, out);
        return;
    }
    for s in 0..=bound {
        sizes[pos] = s;
        fill_sizes(pos + 1, n, bound, sizes, out);
    }
}

fn fill_maps(i: usize, sizes: &[usize], maps: &mut Vec<MonotoneMap>, out: &mut Vec<LeveledShape>) {
    if i + 1 == sizes.len() {
        out.push(LeveledShape::new_unchecked(sizes.to_vec(), maps.clone()));
        return;
    }
    for m in MonotoneMap::all(sizes[i], sizes[i + 1]) {
        maps.push(m);
        fill_maps(i + 1, sizes, maps, out);
        maps.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// `{c1,a1,a2,a3,c2} → {b1,b2,b3} → {c}`
    fn intro() -> LeveledShape {
        LeveledShape::from_values(vec![5, 3, 1], vec![vec![0, 1, 1, 1, 2], vec![0, 0, 0]]).unwrap()
    }

    pub(crate) fn arb_shape(max_n: usize, max_size: usize) -> impl Strategy<Value = LeveledShape> {
        (0..=max_n, prop::collection::vec(0..=max_size, max_n + 1)).prop_flat_map(move |(n, sizes)| {
            let sizes: Vec<usize> = sizes[..=n].to_vec();
            let mut fixed = sizes.clone();
            // a nonempty level cannot map into an empty one
            for i in (0..n).rev() {
                if fixed[i + 1] == 0 {
                    fixed[i] = 0;
                }
            }
            let strategies: Vec<_> = (0..n)
                .map(|i| {
                    let (d, c) = (fixed[i], fixed[i + 1]);
                    prop::collection::vec(0..c.max(1), d).prop_map(move |mut v| {
                        v.sort_unstable();
                        MonotoneMap::new(d, c, v).unwrap()
                    })
                })
                .collect();
            (Just(fixed), strategies).prop_map(|(s, m)| LeveledShape::new(s, m).unwrap())
        })
    }

    fn arb_operator(k: usize, n: usize) -> impl Strategy<Value = MonotoneMap> {
        prop::collection::vec(0..=n, k + 1).prop_map(move |mut v| {
            v.sort_unstable();
            MonotoneMap::operator(k, n, v).unwrap()
        })
    }

    #[test]
    fn act_identity_and_face() {
        let a = intro();
        assert_eq!(act(&MonotoneMap::identity(3), &a).unwrap(), a);
        let d2 = act(&MonotoneMap::coface(2, 2), &a).unwrap();
        assert_eq!(d2, LeveledShape::from_values(vec![5, 3], vec![vec![0, 1, 1, 1, 2]]).unwrap());
        let p = LeveledShape::from_values(vec![4], vec![]).unwrap();
        let s0 = act(&MonotoneMap::codegeneracy(0, 0), &p).unwrap();
        assert_eq!(s0, LeveledShape::from_values(vec![4, 4], vec![vec![0, 1, 2, 3]]).unwrap());
    }

    #[test]
    fn act_arity_mismatch() {
        assert!(act(&MonotoneMap::coface(3, 0), &intro()).is_err());
    }

    #[test]
    fn restriction_and_decomposition() {
        let a = intro();
        assert_eq!(rooted_restriction(&a, 0).unwrap().shape(), &a);
        let d2 = act(&MonotoneMap::coface(2, 2), &a).unwrap();
        let b2 = rooted_restriction(&d2, 1).unwrap();
        assert_eq!(b2.shape(), &LeveledShape::from_values(vec![3, 1], vec![vec![0, 0, 0]]).unwrap());
        let parts = rooted_decomposition(&d2);
        assert_eq!(parts.iter().map(|p| p.size(0)).collect::<Vec<_>>(), vec![1, 3, 1]);
        assert!(rooted_restriction(&d2, 3).is_err());
        let e = LeveledShape::from_values(vec![0, 0], vec![vec![]]).unwrap();
        assert!(rooted_decomposition(&e).is_empty());
    }

    #[test]
    fn fiber_composites() {
        let a = intro();
        assert_eq!(a.fiber(0, 2, 0), 0..5);
        assert_eq!(a.fiber(0, 1, 1), 1..4);
        assert_eq!(a.composite(0, 2).values(), &[0, 0, 0, 0, 0]);
        let e = LeveledShape::from_values(vec![1, 2, 1], vec![vec![1], vec![0, 0]]).unwrap();
        assert_eq!(e.fiber(0, 1, 0), 0..0);
        assert_eq!(e.fiber(0, 2, 0), 0..1);
    }

    #[test]
    fn upsilon_display_example() {
        // (d2, b2) applied to α, then the vertex a3 of the source
        let alpha = RootedShape::new(intro()).unwrap();
        let g = UpsilonArrow::new(MonotoneMap::coface(2, 2), 1, alpha.clone()).unwrap();
        assert_eq!(g.source().level_sizes(), &[3, 1]);
        let vertex = MonotoneMap::operator(0, 1, vec![0]).unwrap();
        let f = UpsilonArrow::new(vertex, 2, g.source().clone()).unwrap();
        let h = compose_upsilon(&g, &f).unwrap();
        assert_eq!(h.theta().values(), &[0]);
        // a3 sits at position 3 of A_0
        assert_eq!(h.root_choice(), 3);
        assert_eq!(h.source().level_sizes(), &[1]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_rooted(1, 2).len(), 3);
        assert_eq!(enumerate_rooted(0, 1).len(), 1);
        let two = enumerate_rooted(2, 1);
        assert_eq!(two.len(), 3);
        let sizes: Vec<_> = two.iter().map(|s| s.level_sizes().to_vec()).collect();
        assert_eq!(sizes, vec![vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]);
        assert_eq!(enumerate_rooted(3, 0).len(), 0);
        // n ≤ 2, sizes ≤ 3
        let total: usize = (0..=2).map(|n| enumerate_rooted(n, 3).len()).sum();
        assert_eq!(total, 1 + 4 + 35);
    }

    #[test]
    fn render_groups_fibers() {
        let text = intro().render();
        assert_eq!(text, "A2 | 0\nA1 | (0 1 2)\nA0 | (0)(1 2 3)(4)\n");
    }

    proptest! {
        #[test]
        fn act_respects_composition(
            (alpha, theta, eta) in arb_shape(3, 3).prop_flat_map(|a| {
                let n = a.degree();
                (Just(a), 0..=3usize, 0..=3usize).prop_flat_map(move |(a, k, l)| {
                    (Just(a), arb_operator(k, n), arb_operator(l, k))
                })
            })
        ) {
            let left = act(&theta.compose(&eta).unwrap(), &alpha).unwrap();
            let right = act(&eta, &act(&theta, &alpha).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn decomposition_of_action(
            (alpha, theta) in arb_shape(3, 3).prop_flat_map(|a| {
                let n = a.degree();
                (Just(a), 0..=3usize).prop_flat_map(move |(a, k)| (Just(a), arb_operator(k, n)))
            })
        ) {
            let acted = act(&theta, &alpha).unwrap();
            let parts = rooted_decomposition(&acted);
            prop_assert_eq!(parts.len(), alpha.size(theta.last()));
            for (a, p) in parts.iter().enumerate() {
                prop_assert_eq!(p, &rooted_restriction(&acted, a).unwrap());
            }
        }

        #[test]
        fn split_merge_round_trip(alpha in arb_shape(3, 4)) {
            let parts: Vec<LeveledShape> = rooted_decomposition(&alpha).into_iter().map(|r| r.into_shape()).collect();
            prop_assert_eq!(merge(&parts, alpha.degree()).unwrap(), alpha);
        }

        #[test]
        fn upsilon_associates(
            seed in any::<u64>()
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let shapes: Vec<RootedShape> = (0..=3).flat_map(|n| enumerate_rooted(n, 3)).collect();
            let alpha = shapes[rng.gen_range(0..shapes.len())].clone();
            let pick = |target: &RootedShape, rng: &mut rand_chacha::ChaCha8Rng| {
                let k = rng.gen_range(0..=3);
                let arrows = UpsilonArrow::into_shape(target, k);
                arrows[rng.gen_range(0..arrows.len())].clone()
            };
            let h = pick(&alpha, &mut rng);
            let g = pick(h.source(), &mut rng);
            let f = pick(g.source(), &mut rng);
            let left = compose_upsilon(&h, &compose_upsilon(&g, &f).unwrap()).unwrap();
            let right = compose_upsilon(&compose_upsilon(&h, &g).unwrap(), &f).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(left.source(), f.source());
            let id = UpsilonArrow::identity(alpha.clone());
            prop_assert_eq!(compose_upsilon(&id, &h).unwrap(), h.clone());
            let id_src = UpsilonArrow::identity(h.source().clone());
            prop_assert_eq!(compose_upsilon(&h, &id_src).unwrap(), h);
        }
    }
}
