//! Inner horns in the envelope `LX` of an operadic simplicial list.
//!
//! An inner horn of lists splits into rooted horns, one per entry of its
//! `0`-th face: faces `y_k` (`k < n`, `k ≠ i`) are single simplices and
//! `y_n` is a list whose length is forced by `d_0 y_n = d_{n-1} y_0`. A list
//! horn has exactly one filler iff each of its rooted horns does, so only
//! rooted horns are enumerated.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::slist::TruncSList;

/// A rooted inner horn `Λⁿᵢ`: `singles[k]` is `y_k` for `k < n` (unused at
/// `k = i`), `last` is the list `y_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Horn {
    pub dim: usize,
    pub missing: usize,
    pub singles: Vec<usize>,
    pub last: Vec<usize>,
}

impl Horn {
    fn key(&self) -> (Vec<usize>, Vec<usize>) {
        let s = self.singles.iter().enumerate().filter(|&(k, _)| k != self.missing).map(|(_, &y)| y).collect();
        (s, self.last.clone())
    }

    pub fn render(&self, x: &TruncSList) -> String {
        let c = x.carrier(self.dim - 1);
        let mut parts = Vec::new();
        for (k, &y) in self.singles.iter().enumerate() {
            if k != self.missing {
                parts.push(format!("d{k}={}", c.label(y)));
            }
        }
        let last: Vec<&str> = self.last.iter().map(|&y| c.label(y)).collect();
        parts.push(format!("d{}=({})", self.dim, last.join(", ")));
        format!("Λ{}_{} [{}]", self.dim, self.missing, parts.join(" "))
    }
}

/// Fillers of `Λⁿᵢ` found in `X_n`, indexed by the horn they fill.
pub(crate) fn filler_index(x: &TruncSList, n: usize, i: usize) -> HashMap<(Vec<usize>, Vec<usize>), Vec<usize>> {
    let mut map: HashMap<(Vec<usize>, Vec<usize>), Vec<usize>> = HashMap::new();
    for s in 0..x.carrier(n).len() {
        let singles: Vec<usize> = (0..n).filter(|&k| k != i).map(|k| x.face(n, k).image(s)[0]).collect();
        map.entry((singles, x.face(n, n).image(s).to_vec())).or_default().push(s);
    }
    map
}

/// Calls `visit` on every rooted inner horn `Λⁿᵢ` with `0 < i < n`.
pub fn inner_horns(x: &TruncSList, n: usize, i: usize, mut visit: impl FnMut(&Horn)) -> Result<()> {
    if n < 2 || i == 0 || i >= n || n > x.dim() {
        return Err(Error::Degree(format!("no inner horn Λ{n}_{i} within truncation {}", x.dim())));
    }
    if !x.is_operadic() {
        return Err(Error::NotOperadic("horns are assembled over operadic lists only".into()));
    }
    let m = n - 1;
    let size = x.carrier(m).len();
    // elements of X_{n-1} by their 0-th face
    let mut by_d0: HashMap<usize, Vec<usize>> = HashMap::new();
    for z in 0..size {
        by_d0.entry(x.face(m, 0).image(z)[0]).or_default().push(z);
    }
    let single = |j: usize, z: usize| x.face(m, j).image(z)[0];
    let empty = Vec::new();
    for y0 in 0..size {
        let mut singles = vec![usize::MAX; n];
        singles[0] = y0;
        pick_singles(x, n, i, 1, &mut singles, &by_d0, &single, &empty, &mut visit);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn pick_singles(
    x: &TruncSList,
    n: usize,
    i: usize,
    k: usize,
    singles: &mut Vec<usize>,
    by_d0: &HashMap<usize, Vec<usize>>,
    single: &dyn Fn(usize, usize) -> usize,
    empty: &Vec<usize>,
    visit: &mut dyn FnMut(&Horn),
) {
    if k == n {
        pick_last(x, n, i, singles, by_d0, single, visit);
        return;
    }
    if k == i {
        pick_singles(x, n, i, k + 1, singles, by_d0, single, empty, visit);
        return;
    }
    // d_j y_k = d_{k-1} y_j for j < k, j ≠ i
    let want0 = single(k - 1, singles[0]);
    for &z in by_d0.get(&want0).unwrap_or(empty) {
        if (1..k).filter(|&j| j != i).all(|j| single(j, z) == single(k - 1, singles[j])) {
            singles[k] = z;
            pick_singles(x, n, i, k + 1, singles, by_d0, single, empty, visit);
        }
    }
}

fn pick_last(
    x: &TruncSList,
    n: usize,
    i: usize,
    singles: &[usize],
    by_d0: &HashMap<usize, Vec<usize>>,
    single: &dyn Fn(usize, usize) -> usize,
    visit: &mut dyn FnMut(&Horn),
) {
    let m = n - 1;
    let heads = x.face(m, m).image(singles[0]).to_vec();
    let len = heads.len();
    // d_j y_n = d_{n-1} y_j elementwise for 0 < j < n-1, j ≠ i
    let mut columns: Vec<(usize, Vec<usize>)> = Vec::new();
    for j in 1..m {
        if j != i {
            let col = x.face(m, m).image(singles[j]).to_vec();
            if col.len() != len {
                return;
            }
            columns.push((j, col));
        }
    }
    // d_{n-1} y_n = d_{n-1} y_{n-1} by concatenation
    let tail: Option<Vec<usize>> = if m != i { Some(x.face(m, m).image(singles[m]).to_vec()) } else { None };
    let mut last = Vec::with_capacity(len);
    let empty = Vec::new();
    backtrack(x, n, i, singles, &heads, &columns, tail.as_deref(), 0, by_d0, single, &empty, &mut last, visit);
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    x: &TruncSList,
    n: usize,
    i: usize,
    singles: &[usize],
    heads: &[usize],
    columns: &[(usize, Vec<usize>)],
    tail: Option<&[usize]>,
    pos: usize,
    by_d0: &HashMap<usize, Vec<usize>>,
    single: &dyn Fn(usize, usize) -> usize,
    empty: &Vec<usize>,
    last: &mut Vec<usize>,
    visit: &mut dyn FnMut(&Horn),
) {
    let m = n - 1;
    let t = last.len();
    if t == heads.len() {
        if tail.is_none_or(|w| pos == w.len()) {
            visit(&Horn { dim: n, missing: i, singles: singles.to_vec(), last: last.clone() });
        }
        return;
    }
    for &z in by_d0.get(&heads[t]).unwrap_or(empty) {
        if !columns.iter().all(|(j, col)| single(*j, z) == col[t]) {
            continue;
        }
        let mut next = pos;
        if let Some(w) = tail {
            let seg = x.face(m, m).image(z);
            if w.len() < pos + seg.len() || &w[pos..pos + seg.len()] != seg {
                continue;
            }
            next = pos + seg.len();
        }
        last.push(z);
        backtrack(x, n, i, singles, heads, columns, tail, next, by_d0, single, empty, last, visit);
        last.pop();
    }
}

/// Filler counts for one `(n, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornReport {
    pub dim: usize,
    pub missing: usize,
    pub horns: usize,
    pub unfilled: usize,
    pub unique: usize,
    pub multiple: usize,
    /// The first horn without a filler, rendered.
    pub first_unfilled: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiReport {
    pub reports: Vec<HornReport>,
}

impl QuasiReport {
    /// Every inner horn has a filler.
    pub fn passes(&self) -> bool {
        self.reports.iter().all(|r| r.unfilled == 0)
    }

    /// Every inner horn has exactly one filler.
    pub fn strict(&self) -> bool {
        self.reports.iter().all(|r| r.unfilled == 0 && r.multiple == 0)
    }
}

/// Counts fillers of every rooted inner horn in dimensions `dims`.
///
/// Only dimensions within the truncation are examined, so passing is
/// necessary but not sufficient for the untruncated list.
pub fn is_quasi_operad(x: &TruncSList, dims: std::ops::RangeInclusive<usize>) -> Result<QuasiReport> {
    let mut reports = Vec::new();
    for n in dims {
        if n < 2 || n > x.dim() {
            continue;
        }
        for i in 1..n {
            let fillers = filler_index(x, n, i);
            let mut r = HornReport { dim: n, missing: i, horns: 0, unfilled: 0, unique: 0, multiple: 0, first_unfilled: None };
            inner_horns(x, n, i, |h| {
                r.horns += 1;
                match fillers.get(&h.key()).map_or(0, Vec::len) {
                    0 => {
                        r.unfilled += 1;
                        if r.first_unfilled.is_none() {
                            r.first_unfilled = Some(h.render(x));
                        }
                    }
                    1 => r.unique += 1,
                    _ => r.multiple += 1,
                }
            })?;
            reports.push(r);
        }
    }
    Ok(QuasiReport { reports })
}

pub(crate) fn fillers_of<'a>(
    index: &'a HashMap<(Vec<usize>, Vec<usize>), Vec<usize>>,
    h: &Horn,
) -> &'a [usize] {
    index.get(&h.key()).map_or(&[], Vec::as_slice)
}
