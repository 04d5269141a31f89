use std::collections::{HashMap, HashSet};

use super::horn::{fillers_of, filler_index, inner_horns, is_quasi_operad};
use super::{Nerve, NerveSimplex};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::operad::{FiniteOperad, OperadMorphism, Operation};
use crate::slist::TruncSList;

/// The operad with colors `X_0`, operations `X_1` and composition read off
/// the unique fillers of inner 2-horns. When `D ≥ 3`, inner 3-horns must be
/// uniquely fillable as well.
pub fn realize_operad(x: &TruncSList) -> Result<FiniteOperad> {
    if x.dim() < 2 {
        return Err(Error::Degree("realization needs simplices up to degree 2".into()));
    }
    if !x.is_operadic() {
        return Err(Error::NotOperadic("only operadic simplicial lists are nerves".into()));
    }
    let colors = x.carrier(0).clone();
    let ops: Vec<Operation> = (0..x.carrier(1).len())
        .map(|f| Operation {
            name: x.carrier(1).label(f).to_string(),
            inputs: x.face(1, 1).image(f).to_vec(),
            output: x.face(1, 0).image(f)[0],
        })
        .collect();
    let identities: Vec<usize> = (0..colors.len()).map(|c| x.degeneracy(0, 0).image(c)[0]).collect();
    let is_id: HashSet<usize> = identities.iter().copied().collect();

    let fillers = filler_index(x, 2, 1);
    let mut table = HashMap::new();
    let mut failure: Option<Error> = None;
    inner_horns(x, 2, 1, |h| {
        if failure.is_some() {
            return;
        }
        let found = fillers_of(&fillers, h);
        let (g, fs) = (h.singles[0], h.last.clone());
        match found {
            [] => failure = Some(Error::MissingFiller(h.render(x))),
            [s] => {
                let comp = x.face(2, 1).image(*s)[0];
                let unit = if is_id.contains(&g) {
                    Some(fs[0])
                } else if fs.iter().all(|f| is_id.contains(f)) {
                    Some(g)
                } else {
                    None
                };
                match unit {
                    Some(u) if u != comp => {
                        failure = Some(Error::Identity(format!("unit law fails at {}", h.render(x))));
                    }
                    Some(_) => {}
                    None => {
                        table.insert((g, fs), comp);
                    }
                }
            }
            _ => failure = Some(Error::NonUniqueFiller(format!("{} fillers for {}", found.len(), h.render(x)))),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    if x.dim() >= 3 {
        let report = is_quasi_operad(x, 3..=3)?;
        for r in &report.reports {
            if let Some(h) = &r.first_unfilled {
                return Err(Error::MissingFiller(h.clone()));
            }
            if r.multiple > 0 {
                return Err(Error::NonUniqueFiller(format!("{} inner horns Λ3_{} fill in several ways", r.multiple, r.missing)));
            }
        }
    }
    FiniteOperad::from_table(colors, ops, identities, table)
}

/// The nerve simplex carried by `s ∈ X_n`: its shape from the spine, colors
/// from the vertex lists and generators from the edge lists `(i-1, i)`.
pub fn spine_simplex(x: &TruncSList, n: usize, s: usize) -> Result<NerveSimplex> {
    let shape = x.shape_of(n, s)?;
    if !shape.is_rooted() {
        return Err(Error::NotOperadic(format!("{} is not rooted", x.carrier(n).label(s))));
    }
    let mut colors = Vec::with_capacity(shape.total_size());
    for i in 0..=n {
        colors.extend(x.act(&MonotoneMap::operator(0, n, vec![i])?, s)?);
    }
    let mut gens = Vec::new();
    for i in 1..=n {
        gens.extend(x.act(&MonotoneMap::operator(1, n, vec![i - 1, i])?, s)?);
    }
    Ok(NerveSimplex { shape, morphism: OperadMorphism { colors, gens } })
}

/// Checks that `s ↦ spine_simplex(s)` is an isomorphism `X → Nˡ(realize X)`
/// in every degree both truncate to: a bijection commuting with all faces
/// and degeneracies.
pub fn check_nerve_iso(x: &TruncSList, nerve: &Nerve) -> Result<()> {
    let d = x.dim().min(nerve.spec().dim);
    let mut maps: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    for n in 0..=d {
        if x.carrier(n).len() != nerve.simplices(n).len() {
            return Err(Error::SetMismatch(format!(
                "degree {n}: {} simplices against {} in the nerve",
                x.carrier(n).len(),
                nerve.simplices(n).len()
            )));
        }
        let mut seen = vec![false; x.carrier(n).len()];
        let mut phi = Vec::with_capacity(seen.len());
        for s in 0..x.carrier(n).len() {
            let t = spine_simplex(x, n, s)?;
            let j = nerve
                .index_of(n, &t)
                .ok_or_else(|| Error::SetMismatch(format!("{} has no counterpart in degree {n}", x.carrier(n).label(s))))?;
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::SetMismatch(format!("two simplices of degree {n} share a spine")));
            }
            phi.push(j);
        }
        maps.push(phi);
    }
    let y = nerve.slist();
    for n in 1..=d {
        for i in 0..=n {
            for s in 0..x.carrier(n).len() {
                let lhs: Vec<usize> = x.face(n, i).image(s).iter().map(|&t| maps[n - 1][t]).collect();
                if y.face(n, i).image(maps[n][s]) != lhs.as_slice() {
                    return Err(Error::NonCommuting(format!("d{i} at {}", x.carrier(n).label(s))));
                }
            }
        }
    }
    for n in 0..d {
        for j in 0..=n {
            for s in 0..x.carrier(n).len() {
                let lhs: Vec<usize> = x.degeneracy(n, j).image(s).iter().map(|&t| maps[n + 1][t]).collect();
                if y.degeneracy(n, j).image(maps[n][s]) != lhs.as_slice() {
                    return Err(Error::NonCommuting(format!("s{j} at {}", x.carrier(n).label(s))));
                }
            }
        }
    }
    Ok(())
}

/// Checks `realize(Nˡ P) ≅ P` through the canonical matching: a vertex is
/// its color and an edge is its operation.
pub fn check_realized_iso(p: &FiniteOperad, nerve: &Nerve, realized: &FiniteOperad) -> Result<()> {
    let color_of: Vec<usize> = nerve.simplices(0).iter().map(|s| s.morphism.colors[0]).collect();
    let op_of: Vec<usize> = nerve.simplices(1).iter().map(|s| s.morphism.gens[0]).collect();
    let bijective = |v: &[usize], n: usize| {
        let mut seen = vec![false; n];
        v.len() == n && v.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    };
    if !bijective(&color_of, p.colors().len()) || !bijective(&op_of, p.len()) {
        return Err(Error::SetMismatch("colors or operations are not matched bijectively".into()));
    }
    for (f, op) in realized.ops().iter().enumerate() {
        let q = p.op(op_of[f]);
        let ins: Vec<usize> = op.inputs.iter().map(|&c| color_of[c]).collect();
        if q.output != color_of[op.output] || q.inputs != ins {
            return Err(Error::IllTyped(format!("profile of {} differs", op.name)));
        }
    }
    for c in 0..realized.colors().len() {
        if op_of[realized.identity(c)] != p.identity(color_of[c]) {
            return Err(Error::Identity(format!("identity at {}", realized.colors().label(c))));
        }
    }
    for (g, fs) in realized.composable() {
        let lhs = realized.compose(g, &fs)?.map(|h| op_of[h]);
        let mapped: Vec<usize> = fs.iter().map(|&f| op_of[f]).collect();
        if lhs != p.compose(op_of[g], &mapped)? {
            return Err(Error::NonCommuting(format!("composition at {}", realized.op(g).name)));
        }
    }
    Ok(())
}
