//! Augmented simplicial objects `X ⇢ X₋₁` with extra degeneracies, checked
//! cell by cell.
//!
//! All structure maps are listings; composites concatenate. Degree `-1` is
//! the augmentation target.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;

/// An augmented simplicial list truncated at [`Augmented::top`].
pub trait Augmented {
    type Cell: Clone + Eq + Hash + Ord + Debug;

    fn top(&self) -> usize;

    /// `d_i : X_n ⇸ X_{n-1}`; at `n = 0` (with `i = 0`) the augmentation.
    fn face(&self, n: usize, i: usize, x: &Self::Cell) -> Vec<Self::Cell>;

    /// `s_j : X_n ⇸ X_{n+1}` for `n < top`.
    fn degeneracy(&self, n: usize, j: usize, x: &Self::Cell) -> Vec<Self::Cell>;

    /// `s₋₁ : X_{n-1} ⇸ X_n`; at `n = 0` the source is `X₋₁`.
    fn extra(&self, n: usize, x: &Self::Cell) -> Vec<Self::Cell>;

    /// Label of a cell of degree `n` (`-1` for the augmentation target).
    fn label(&self, n: isize, x: &Self::Cell) -> String;
}

/// A failed identity at one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub degree: isize,
    pub cell: String,
    pub identity: String,
}

fn then<A: Augmented>(xs: &[A::Cell], f: impl Fn(&A::Cell) -> Vec<A::Cell>) -> Vec<A::Cell> {
    xs.iter().flat_map(f).collect()
}

/// Checks `d₀s₋₁ = 1`, `d_{i+1}s₋₁ = s₋₁d_i` and `s_{j+1}s₋₁ = s₋₁s_j` at a
/// cell `x ∈ X_m`, `-1 ≤ m < top`.
pub fn check_extra_at<A: Augmented>(aug: &A, m: isize, x: &A::Cell) -> Option<Witness> {
    let n = (m + 1) as usize;
    let fail = |identity: String| Some(Witness { degree: m, cell: aug.label(m, x), identity });
    let sx = aug.extra(n, x);
    if then::<A>(&sx, |y| aug.face(n, 0, y)) != [x.clone()] {
        return fail("d0 s-1 = 1".into());
    }
    if m < 0 {
        return None;
    }
    let m = m as usize;
    for i in 0..=m {
        let lhs = then::<A>(&sx, |y| aug.face(n, i + 1, y));
        let rhs = then::<A>(&aug.face(m, i, x), |z| aug.extra(m, z));
        if lhs != rhs {
            return fail(format!("d{} s-1 = s-1 d{i}", i + 1));
        }
    }
    if n < aug.top() {
        for j in 0..=m {
            let lhs = then::<A>(&sx, |y| aug.degeneracy(n, j + 1, y));
            let rhs = then::<A>(&aug.degeneracy(m, j, x), |z| aug.extra(m + 2, z));
            if lhs != rhs {
                return fail(format!("s{} s-1 = s-1 s{j}", j + 1));
            }
        }
    }
    None
}

fn add<C: Ord + Clone>(acc: &mut BTreeMap<C, i64>, xs: &[C], sign: i64) {
    for x in xs {
        *acc.entry(x.clone()).or_default() += sign;
    }
}

/// `(∂h + h∂)(x) − x + [n = 0]·s₋₁ε(x)` on the unaugmented complex with
/// `h = Z(s₋₁)`, for `x ∈ X_n`, `n < top`. Zero when the homotopy holds.
pub fn homotopy_defect<A: Augmented>(aug: &A, n: usize, x: &A::Cell) -> BTreeMap<A::Cell, i64> {
    let mut acc = BTreeMap::new();
    let hx = aug.extra(n + 1, x);
    for i in 0..=n + 1 {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        add(&mut acc, &then::<A>(&hx, |y| aug.face(n + 1, i, y)), sign);
    }
    if n == 0 {
        add(&mut acc, &then::<A>(&aug.face(0, 0, x), |b| aug.extra(0, b)), 1);
    } else {
        for i in 0..=n {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            add(&mut acc, &then::<A>(&aug.face(n, i, x), |z| aug.extra(n, z)), sign);
        }
    }
    add(&mut acc, std::slice::from_ref(x), -1);
    acc.retain(|_, v| *v != 0);
    acc
}

/// The homotopy identity at one cell, with a rendered defect on failure.
pub fn check_homotopy_at<A: Augmented>(aug: &A, n: usize, x: &A::Cell) -> Option<Witness> {
    let defect = homotopy_defect(aug, n, x);
    if defect.is_empty() {
        return None;
    }
    let terms: Vec<String> = defect.iter().map(|(c, k)| format!("{k:+}·{}", aug.label(n as isize, c))).collect();
    Some(Witness {
        degree: n as isize,
        cell: aug.label(n as isize, x),
        identity: format!("∂h + h∂ = 1 − s-1 ε fails by {}", terms.join(" ")),
    })
}
