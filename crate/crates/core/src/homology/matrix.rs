//! Sparse integer matrices generic over the scalar, and Smith normal form.
//!
//! Elimination runs in `i64` with checked arithmetic; on overflow the same
//! routine reruns over `BigInt`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

/// Exact integer scalars usable in elimination.
pub trait Scalar:
    Clone + Debug + Display + Eq + Ord + Zero + One + Signed + Integer + CheckedAdd + CheckedSub + CheckedMul
{
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + Eq + Ord + Zero + One + Signed + Integer + CheckedAdd + CheckedSub + CheckedMul
{
}

/// Arithmetic left the range of the scalar type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

fn mul<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}

fn sub<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_sub(b).ok_or(Overflow)
}

fn add<T: Scalar>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}

/// A matrix stored as sorted sparse rows without explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, T)>>,
}

pub type IntMatrix = Matrix<i64>;
pub type BigIntMatrix = Matrix<BigInt>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, entries: (0..n).map(|i| vec![(i, T::one())]).collect() }
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut acc: Vec<HashMap<usize, T>> = vec![HashMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}×{cols}");
            let e = acc[r].entry(c).or_insert_with(T::zero);
            *e = e.clone() + v;
        }
        let entries = acc
            .into_iter()
            .map(|row| {
                let mut v: Vec<(usize, T)> = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        Self { rows, cols, entries }
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (r, row) in self.entries.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.entries[r]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        let row = &self.entries[r];
        row.binary_search_by_key(&c, |e| e.0).map_or_else(|_| T::zero(), |i| row[i].1.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (*c, r, v.clone()))),
        )
    }

    /// `self · other`, or [`Overflow`].
    pub fn checked_mul(&self, other: &Self) -> Result<Self, Overflow> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut entries = Vec::with_capacity(self.rows);
        for row in &self.entries {
            let mut acc: HashMap<usize, T> = HashMap::new();
            for (k, a) in row {
                for (c, b) in &other.entries[*k] {
                    let e = acc.entry(*c).or_insert_with(T::zero);
                    *e = add(e, &mul(a, b)?)?;
                }
            }
            let mut v: Vec<(usize, T)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            v.sort_by_key(|e| e.0);
            entries.push(v);
        }
        Ok(Self { rows: self.rows, cols: other.cols, entries })
    }

    /// Rows and columns kept in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let cmap: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        Self::from_triplets(
            rows.len(),
            cols.len(),
            rows.iter().enumerate().flat_map(|(r, &old)| {
                let cmap = &cmap;
                self.entries[old].iter().filter_map(move |(c, v)| cmap.get(c).map(|&nc| (r, nc, v.clone())))
            }),
        )
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|row| row.iter().map(|(c, v)| (*c, f(v))).collect()).collect(),
        }
    }
}

impl IntMatrix {
    pub fn to_bigint(&self) -> BigIntMatrix {
        self.map(|&v| BigInt::from(v))
    }
}

/// Rank and invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// Elimination overflowed `i64` and was redone over `BigInt`.
    pub promoted: bool,
}

/// Smith normal form of `m`, falling back to `BigInt` on overflow.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    match invariant_factors(m) {
        Ok(d) => finish(d.into_iter().map(BigInt::from).collect(), false),
        Err(Overflow) => {
            let d = invariant_factors(&m.to_bigint()).expect("BigInt arithmetic does not overflow");
            finish(d, true)
        }
    }
}

fn finish(diag: Vec<BigInt>, promoted: bool) -> SmithForm {
    let rank = diag.len();
    let torsion = diag.into_iter().filter(|d| !d.is_one()).collect();
    SmithForm { rank, torsion, promoted }
}

/// Nonzero diagonal entries of the Smith normal form, in divisibility order.
///
/// Unit pivots are eliminated sparsely first (each contributes a factor `1`);
/// the remainder is reduced densely.
pub fn invariant_factors<T: Scalar>(m: &Matrix<T>) -> Result<Vec<T>, Overflow> {
    let (units, rest) = eliminate_units(m)?;
    let mut dense = rest;
    let mut d = vec![T::one(); units];
    d.extend(dense_smith(&mut dense, None, None)?);
    Ok(d)
}

/// Repeatedly pivots on entries `±1`, cheapest column first. Returns the
/// number of pivots and the remaining rows/columns as a dense matrix.
fn eliminate_units<T: Scalar>(m: &Matrix<T>) -> Result<(usize, Vec<Vec<T>>), Overflow> {
    let mut rows: Vec<HashMap<usize, T>> = m.entries.iter().map(|r| r.iter().cloned().collect()).collect();
    let mut cols: Vec<HashSet<usize>> = vec![HashSet::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        for c in row.keys() {
            cols[*c].insert(r);
        }
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    let mut pivots = 0;
    loop {
        let mut progress = false;
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            (0..m.cols).filter(|&c| col_alive[c] && !cols[c].is_empty()).map(|c| Reverse((cols[c].len(), c))).collect();
        while let Some(Reverse((count, c))) = heap.pop() {
            if !col_alive[c] || cols[c].is_empty() {
                continue;
            }
            if count != cols[c].len() {
                heap.push(Reverse((cols[c].len(), c)));
                continue;
            }
            let pivot = cols[c]
                .iter()
                .copied()
                .filter(|&r| rows[r][&c].abs().is_one())
                .min_by_key(|&r| (rows[r].len(), r));
            let Some(p) = pivot else { continue };
            progress = true;
            pivots += 1;
            let prow: Vec<(usize, T)> = rows[p].iter().map(|(k, v)| (*k, v.clone())).collect();
            let unit = rows[p][&c].clone();
            let mut targets: Vec<usize> = cols[c].iter().copied().filter(|&r| r != p).collect();
            targets.sort_unstable();
            for r in targets {
                // row_r -= (a_rc / a_pc) · row_p, with 1/a_pc = a_pc
                let factor = mul(&rows[r][&c], &unit)?;
                for (k, v) in &prow {
                    let delta = mul(&factor, v)?;
                    let e = rows[r].entry(*k).or_insert_with(T::zero);
                    *e = sub(e, &delta)?;
                    if e.is_zero() {
                        rows[r].remove(k);
                        cols[*k].remove(&r);
                    } else if cols[*k].insert(r) && *k != c {
                        heap.push(Reverse((cols[*k].len(), *k)));
                    }
                }
            }
            for (k, _) in &prow {
                cols[*k].remove(&p);
            }
            rows[p].clear();
            row_alive[p] = false;
            col_alive[c] = false;
            cols[c].clear();
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| row_alive[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&c| col_alive[c] && !cols[c].is_empty()).collect();
    let cpos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let dense = live_rows
        .iter()
        .map(|&r| {
            let mut v = vec![T::zero(); live_cols.len()];
            for (c, x) in &rows[r] {
                v[cpos[c]] = x.clone();
            }
            v
        })
        .collect();
    Ok((pivots, dense))
}

/// Row operations are mirrored into `u` (left) and column operations into
/// `v` (right), so that `u · a₀ · v` is the final `a`.
fn dense_smith<T: Scalar>(
    a: &mut [Vec<T>],
    mut u: Option<&mut Vec<Vec<T>>>,
    mut v: Option<&mut Vec<Vec<T>>>,
) -> Result<Vec<T>, Overflow> {
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(a, u.as_deref_mut(), t, bi);
        swap_cols(a, v.as_deref_mut(), t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    add_row(a, u.as_deref_mut(), i, t, &q)?;
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..nc {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    add_col(a, v.as_deref_mut(), j, t, &q)?;
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                let mut best = (t, t);
                for i in t + 1..nr {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..nc {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                swap_rows(a, u.as_deref_mut(), t, best.0);
                swap_cols(a, v.as_deref_mut(), t, best.1);
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => add_row(a, u.as_deref_mut(), t, i, &-T::one())?,
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            if let Some(u) = u.as_deref_mut() {
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Ok(diag)
}

fn swap_rows<T>(a: &mut [Vec<T>], u: Option<&mut Vec<Vec<T>>>, i: usize, j: usize) {
    a.swap(i, j);
    if let Some(u) = u {
        u.swap(i, j);
    }
}

fn swap_cols<T>(a: &mut [Vec<T>], v: Option<&mut Vec<Vec<T>>>, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    if let Some(v) = v {
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `row_i -= q · row_j`.
fn add_row<T: Scalar>(a: &mut [Vec<T>], u: Option<&mut Vec<Vec<T>>>, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
    fn op<T: Scalar>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        for k in 0..m[i].len() {
            let d = mul(q, &m[j][k])?;
            m[i][k] = sub(&m[i][k], &d)?;
        }
        Ok(())
    }
    op(a, i, j, q)?;
    if let Some(u) = u {
        op(u, i, j, q)?;
    }
    Ok(())
}

/// `col_i -= q · col_j`.
fn add_col<T: Scalar>(a: &mut [Vec<T>], v: Option<&mut Vec<Vec<T>>>, i: usize, j: usize, q: &T) -> Result<(), Overflow> {
    fn op<T: Scalar>(m: &mut [Vec<T>], i: usize, j: usize, q: &T) -> Result<(), Overflow> {
        for row in m.iter_mut() {
            let d = mul(q, &row[j])?;
            row[i] = sub(&row[i], &d)?;
        }
        Ok(())
    }
    op(a, i, j, q)?;
    if let Some(v) = v {
        op(v, i, j, q)?;
    }
    Ok(())
}

/// `(U, D, V)` with `U · m · V = D` diagonal and `U`, `V` unimodular.
pub fn smith_decomposition<T: Scalar>(m: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>, Matrix<T>), Overflow> {
    let mut a = m.to_dense();
    let mut u = Matrix::<T>::identity(m.rows).to_dense();
    let mut v = Matrix::<T>::identity(m.cols).to_dense();
    dense_smith(&mut a, Some(&mut u), Some(&mut v))?;
    Ok((Matrix::from_dense_sized(&u, m.rows), Matrix::from_dense_sized(&a, m.cols), Matrix::from_dense_sized(&v, m.cols)))
}

impl<T: Scalar> Matrix<T> {
    fn from_dense_sized(rows: &[Vec<T>], cols: usize) -> Self {
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))),
        )
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &BigIntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.to_dense();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}
