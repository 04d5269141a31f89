//! Finite ordered sets, listings and the perfect-function factorization.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite set with a fixed order on its elements.
#[derive(Clone, Eq)]
pub struct FiniteSet {
    labels: Arc<[String]>,
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels.iter()).finish()
    }
}

impl FiniteSet {
    /// Builds a set from labels, rejecting duplicates.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::SetMismatch(format!(
                    "label {l:?} occurs at positions {j} and {i}"
                )));
            }
        }
        Ok(Self::from_vec_unchecked(labels))
    }

    /// Labels `prefix0`, `prefix1`, ...
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Self::from_vec_unchecked((0..n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn empty() -> Self {
        Self::from_vec_unchecked(Vec::new())
    }

    pub(crate) fn from_vec_unchecked(labels: Vec<String>) -> Self {
        Self { labels: labels.into() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Label to index map, for bulk lookups.
    pub fn index(&self) -> HashMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }
}

/// A listing `A ⇸ X`: each source element goes to an ordered sequence of
/// target elements. Entries are indices into `target`.
#[derive(Clone, PartialEq, Eq)]
pub struct Listing {
    source: FiniteSet,
    target: FiniteSet,
    images: Vec<Vec<usize>>,
}

impl fmt::Debug for Listing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (a, img) in self.images.iter().enumerate() {
            let terms: Vec<&str> = img.iter().map(|&x| self.target.label(x)).collect();
            m.entry(&self.source.label(a), &terms);
        }
        m.finish()
    }
}

impl Listing {
    pub fn new(source: FiniteSet, target: FiniteSet, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::SetMismatch(format!(
                "{} image lists for a source of size {}",
                images.len(),
                source.len()
            )));
        }
        for (a, img) in images.iter().enumerate() {
            if let Some(&x) = img.iter().find(|&&x| x >= target.len()) {
                return Err(Error::OutOfRange(format!(
                    "image of {} names element {x} of a target of size {}",
                    source.label(a),
                    target.len()
                )));
            }
        }
        Ok(Self { source, target, images })
    }

    pub(crate) fn new_unchecked(source: FiniteSet, target: FiniteSet, images: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(images.len(), source.len());
        Self { source, target, images }
    }

    /// Builds a listing from label tables.
    pub fn from_labels(source: FiniteSet, target: FiniteSet, images: &[Vec<String>]) -> Result<Self> {
        let idx = target.index();
        let images = images
            .iter()
            .map(|img| {
                img.iter()
                    .map(|l| {
                        idx.get(l.as_str())
                            .copied()
                            .ok_or_else(|| Error::OutOfRange(format!("unknown target label {l:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(set: &FiniteSet) -> Self {
        Self::new_unchecked(set.clone(), set.clone(), (0..set.len()).map(|i| vec![i]).collect())
    }

    /// The listing of a function given by its values.
    pub fn from_function(source: FiniteSet, target: FiniteSet, values: &[usize]) -> Result<Self> {
        Self::new(source, target, values.iter().map(|&x| vec![x]).collect())
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn images(&self) -> &[Vec<usize>] {
        &self.images
    }

    pub fn image(&self, a: usize) -> &[usize] {
        &self.images[a]
    }

    pub fn is_function(&self) -> bool {
        self.images.iter().all(|img| img.len() == 1)
    }

    /// The underlying function, if every image has length one.
    pub fn as_function(&self) -> Option<Vec<usize>> {
        self.images
            .iter()
            .map(|img| if img.len() == 1 { Some(img[0]) } else { None })
            .collect()
    }

    /// Applies the listing to a list, concatenating the images.
    pub fn apply_list(&self, xs: &[usize]) -> Vec<usize> {
        xs.iter().flat_map(|&x| self.images[x].iter().copied()).collect()
    }

    /// Same images over different carriers of equal size.
    pub fn with_sets(&self, source: FiniteSet, target: FiniteSet) -> Result<Self> {
        Self::new(source, target, self.images.clone())
    }
}

/// `v ∘ u`: the image of `a` is the concatenation of `v` over `u(a)`.
pub fn compose(v: &Listing, u: &Listing) -> Result<Listing> {
    if u.target != v.source {
        return Err(Error::SetMismatch(format!(
            "target {:?} is not source {:?}",
            u.target, v.source
        )));
    }
    let images = u.images.iter().map(|img| v.apply_list(img)).collect();
    Ok(Listing::new_unchecked(u.source.clone(), v.target.clone(), images))
}

/// Every target element occurs exactly once across all image lists.
pub fn is_perfect(u: &Listing) -> bool {
    let mut seen = vec![false; u.target.len()];
    for &x in u.images.iter().flatten() {
        if std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    seen.into_iter().all(|s| s)
}

/// Perfect listing followed by a function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub middle: FiniteSet,
    /// `(a, i)` for each middle element, `i` starting at 1.
    pub pairs: Vec<(usize, usize)>,
    pub perfect: Listing,
    pub func: Listing,
}

pub fn perfect_factorize(u: &Listing) -> Factorization {
    let mut pairs = Vec::new();
    let mut labels = Vec::new();
    let mut perfect = Vec::with_capacity(u.source.len());
    let mut func = Vec::new();
    for (a, img) in u.images.iter().enumerate() {
        let mut block = Vec::with_capacity(img.len());
        for (i, &x) in img.iter().enumerate() {
            block.push(pairs.len());
            pairs.push((a, i + 1));
            labels.push(format!("({},{})", u.source.label(a), i + 1));
            func.push(vec![x]);
        }
        perfect.push(block);
    }
    let middle = FiniteSet::from_vec_unchecked(labels);
    Factorization {
        perfect: Listing::new_unchecked(u.source.clone(), middle.clone(), perfect),
        func: Listing::new_unchecked(middle.clone(), u.target.clone(), func),
        middle,
        pairs,
    }
}

/// Given a commuting square `q ∘ u = v ∘ p` with `p: A ⇸ B`, `q: X ⇸ Y`,
/// `u: A ⇸ X`, `v: B ⇸ Y`, returns the listing between the factorization
/// middles of `u` and `v` that makes both triangles commute.
///
/// `r(a,i)` collects the pairs `(b,j)` whose position in `(v∘p)(a)` falls in
/// the block contributed by `q(u(a)_i)`, ordered by position of `b` in `p(a)`
/// and then by `j`.
pub fn induced_middle(p: &Listing, q: &Listing, u: &Listing, v: &Listing) -> Result<Listing> {
    if p.source != u.source || p.target != v.source || q.source != u.target || q.target != v.target {
        return Err(Error::SetMismatch("square sides do not share corners".into()));
    }
    let fu = perfect_factorize(u);
    let fv = perfect_factorize(v);
    let mut images = Vec::with_capacity(fu.middle.len());
    for a in 0..u.source.len() {
        let mut run: Vec<(usize, usize)> = Vec::new();
        for &b in p.image(a) {
            for j in 0..v.image(b).len() {
                run.push((b, j));
            }
        }
        let mut cursor = 0;
        for &x in u.image(a) {
            let block = q.image(x);
            if cursor + block.len() > run.len() {
                return Err(Error::NonCommuting(format!("at {}", u.source.label(a))));
            }
            let mut r = Vec::with_capacity(block.len());
            for (t, &y) in block.iter().enumerate() {
                let (b, j) = run[cursor + t];
                if v.image(b)[j] != y {
                    return Err(Error::NonCommuting(format!("at {}", u.source.label(a))));
                }
                r.push(fv.perfect.image(b)[j]);
            }
            cursor += block.len();
            images.push(r);
        }
        if cursor != run.len() {
            return Err(Error::NonCommuting(format!("at {}", u.source.label(a))));
        }
    }
    Ok(Listing::new_unchecked(fu.middle, fv.middle, images))
}

/// Matches the canonical middle of `u` against another perfect-function
/// factorization `func ∘ perfect = u`. Returns, for each canonical middle
/// element, its partner in the other middle.
pub fn middle_bijection(u: &Listing, perfect: &Listing, func: &Listing) -> Result<Vec<usize>> {
    if perfect.source != u.source || func.target != u.target || perfect.target != func.source {
        return Err(Error::SetMismatch("factorization legs do not match the listing".into()));
    }
    if !is_perfect(perfect) {
        return Err(Error::Identity("first leg is not perfect".into()));
    }
    let f = func
        .as_function()
        .ok_or_else(|| Error::Identity("second leg is not a function".into()))?;
    let mut map = Vec::new();
    for (a, img) in u.images.iter().enumerate() {
        let other = perfect.image(a);
        if other.len() != img.len() {
            return Err(Error::Identity(format!("length mismatch at {}", u.source.label(a))));
        }
        for (i, &x) in img.iter().enumerate() {
            if f[other[i]] != x {
                return Err(Error::Identity(format!(
                    "legs disagree at ({},{})",
                    u.source.label(a),
                    i + 1
                )));
            }
            map.push(other[i]);
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(prefix: &str, n: usize) -> FiniteSet {
        FiniteSet::indexed(prefix, n)
    }

    prop_compose! {
        fn listing(max_a: usize, max_x: usize, max_len: usize)
            (a in 0..=max_a, x in 0..=max_x)
            (images in prop::collection::vec(
                prop::collection::vec(0..x.max(1), if x == 0 { 0..=0 } else { 0..=max_len }), a),
             a in Just(a), x in Just(x))
            -> Listing
        {
            Listing::new(set("a", a), set("x", x), images).unwrap()
        }
    }

    fn listing_between(src: FiniteSet, tgt: FiniteSet, max_len: usize) -> impl Strategy<Value = Listing> {
        let n = tgt.len();
        prop::collection::vec(
            prop::collection::vec(0..n.max(1), if n == 0 { 0..=0 } else { 0..=max_len }),
            src.len(),
        )
        .prop_map(move |images| Listing::new(src.clone(), tgt.clone(), images).unwrap())
    }

    #[test]
    fn compose_unfolds() {
        let a = set("a", 1);
        let x = set("x", 2);
        let y = set("y", 1);
        let u = Listing::new(a.clone(), x.clone(), vec![vec![0, 1]]).unwrap();
        let v = Listing::new(x, y.clone(), vec![vec![0], vec![]]).unwrap();
        assert_eq!(compose(&v, &u).unwrap().image(0), &[0]);
        let e = Listing::new(a, set("x", 2), vec![vec![]]).unwrap();
        assert!(compose(&v, &e).unwrap().image(0).is_empty());
    }

    #[test]
    fn compose_rejects_mismatch() {
        let u = Listing::new(set("a", 1), set("x", 2), vec![vec![0]]).unwrap();
        let v = Listing::new(set("z", 2), set("y", 1), vec![vec![0], vec![0]]).unwrap();
        assert!(matches!(compose(&v, &u), Err(Error::SetMismatch(_))));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FiniteSet::new(["p", "q", "p"]).is_err());
    }

    #[test]
    fn perfect_examples() {
        let t = FiniteSet::new(["x", "y", "z", "w"]).unwrap();
        let u = Listing::new(set("a", 2), t, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(is_perfect(&u));
        let r = Listing::new(set("a", 1), set("x", 1), vec![vec![0, 0]]).unwrap();
        assert!(!is_perfect(&r));
        let e = Listing::new(set("a", 1), FiniteSet::empty(), vec![vec![]]).unwrap();
        assert!(is_perfect(&e));
    }

    #[test]
    fn factorize_remark_example() {
        let b = FiniteSet::new(["b1", "b2", "b3", "b4"]).unwrap();
        let a = FiniteSet::new(["a1", "a2"]).unwrap();
        let u = Listing::new(a, b, vec![vec![0, 2], vec![0, 1, 3]]).unwrap();
        let f = perfect_factorize(&u);
        assert_eq!(f.middle.len(), 5);
        assert_eq!(f.func.as_function().unwrap(), vec![0, 2, 0, 1, 3]);
        assert_eq!(f.middle.label(2), "(a2,1)");
        assert_eq!(f.pairs[4], (1, 3));
        assert!(is_perfect(&f.perfect));
        assert_eq!(compose(&f.func, &f.perfect).unwrap(), u);
    }

    #[test]
    fn factorize_bijection_is_itself() {
        let u = Listing::from_function(set("a", 3), set("x", 3), &[2, 0, 1]).unwrap();
        let f = perfect_factorize(&u);
        assert_eq!(f.middle.len(), 3);
        assert_eq!(f.perfect.as_function().unwrap(), vec![0, 1, 2]);
        assert_eq!(f.func.as_function().unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn induced_middle_trivial_squares() {
        let u = Listing::new(set("a", 2), set("x", 3), vec![vec![0, 2], vec![1]]).unwrap();
        let p = Listing::identity(u.source());
        let q = Listing::identity(u.target());
        let r = induced_middle(&p, &q, &u, &u).unwrap();
        assert_eq!(r, Listing::identity(&perfect_factorize(&u).middle));
    }

    #[test]
    fn induced_middle_rejects_non_commuting() {
        let u = Listing::new(set("a", 1), set("x", 1), vec![vec![0]]).unwrap();
        let v = Listing::new(set("a", 1), set("x", 1), vec![vec![0, 0]]).unwrap();
        let p = Listing::identity(u.source());
        let q = Listing::identity(u.target());
        assert!(matches!(induced_middle(&p, &q, &u, &v), Err(Error::NonCommuting(_))));
    }

    /// Builds `u`, `q` with `q ∘ u = v ∘ p` by cutting each `(v∘p)(a)` into
    /// consecutive blocks, one fresh element of `X` per block.
    fn square_from(p: &Listing, v: &Listing, cuts: &[Vec<bool>]) -> (Listing, Listing) {
        let w = compose(v, p).unwrap();
        let mut q_images = Vec::new();
        let mut u_images = Vec::new();
        for (a, img) in w.images().iter().enumerate() {
            let mut ua = Vec::new();
            let mut block = Vec::new();
            for (t, &y) in img.iter().enumerate() {
                block.push(y);
                let cut = cuts.get(a).and_then(|c| c.get(t)).copied().unwrap_or(true);
                if cut || t + 1 == img.len() {
                    ua.push(q_images.len());
                    q_images.push(std::mem::take(&mut block));
                }
            }
            // an occasional empty block maps to the empty list
            if cuts.get(a).is_some_and(|c| c.len() > img.len()) {
                ua.push(q_images.len());
                q_images.push(Vec::new());
            }
            u_images.push(ua);
        }
        let x = set("x", q_images.len());
        let u = Listing::new(p.source().clone(), x.clone(), u_images).unwrap();
        let q = Listing::new(x, v.target().clone(), q_images).unwrap();
        (u, q)
    }

    proptest! {
        #[test]
        fn identity_is_neutral(u in listing(6, 6, 4)) {
            let l = Listing::identity(u.source());
            let r = Listing::identity(u.target());
            prop_assert_eq!(compose(&r, &u).unwrap(), u.clone());
            prop_assert_eq!(compose(&u, &l).unwrap(), u);
        }

        #[test]
        fn composition_associates(
            (u, v, w) in (0usize..=5, 0usize..=5, 0usize..=5, 0usize..=5).prop_flat_map(|(a, b, c, d)| {
                (listing_between(set("a", a), set("b", b), 3),
                 listing_between(set("b", b), set("c", c), 3),
                 listing_between(set("c", c), set("d", d), 3))
            })
        ) {
            let left = compose(&w, &compose(&v, &u).unwrap()).unwrap();
            let right = compose(&compose(&w, &v).unwrap(), &u).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn factorization_round_trip(u in listing(6, 6, 4)) {
            let f = perfect_factorize(&u);
            prop_assert!(is_perfect(&f.perfect));
            prop_assert!(f.func.is_function());
            prop_assert_eq!(compose(&f.func, &f.perfect).unwrap(), u);
        }

        #[test]
        fn function_perfect_iff_bijection(values in prop::collection::vec(0usize..5, 0..6), n in 0usize..6) {
            let n = n.max(values.iter().map(|v| v + 1).max().unwrap_or(0));
            let u = Listing::from_function(set("a", values.len()), set("x", n), &values).unwrap();
            let mut sorted = values.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let bijective = sorted.len() == values.len() && values.len() == n;
            prop_assert_eq!(is_perfect(&u), bijective);
        }

        #[test]
        fn second_factorization_matches(u in listing(6, 6, 4), seed in any::<u64>()) {
            let f = perfect_factorize(&u);
            let m = f.middle.len();
            let mut perm: Vec<usize> = (0..m).collect();
            let mut s = seed;
            for i in (1..m).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let other = FiniteSet::indexed("m", m);
            let perfect = Listing::new(u.source().clone(), other.clone(),
                f.perfect.images().iter().map(|img| img.iter().map(|&t| perm[t]).collect()).collect()).unwrap();
            let mut fvals = vec![0; m];
            for t in 0..m { fvals[perm[t]] = f.func.image(t)[0]; }
            let func = Listing::from_function(other, u.target().clone(), &fvals).unwrap();
            prop_assert_eq!(middle_bijection(&u, &perfect, &func).unwrap(), perm);
        }

        #[test]
        fn induced_middle_triangles(
            (p, v) in (0usize..=4, 0usize..=4, 0usize..=4).prop_flat_map(|(a, b, y)| {
                (listing_between(set("a", a), set("b", b), 3), listing_between(set("b", b), set("y", y), 3))
            }),
            cuts in prop::collection::vec(prop::collection::vec(any::<bool>(), 0..12), 0..5)
        ) {
            let (u, q) = square_from(&p, &v, &cuts);
            let r = induced_middle(&p, &q, &u, &v).unwrap();
            let fu = perfect_factorize(&u);
            let fv = perfect_factorize(&v);
            // r ∘ ũ = ṽ ∘ p and f_v ∘ r = q ∘ f_u
            prop_assert_eq!(compose(&r, &fu.perfect).unwrap(), compose(&fv.perfect, &p).unwrap());
            prop_assert_eq!(compose(&fv.func, &r).unwrap(), compose(&q, &fu.func).unwrap());
        }
    }
}
