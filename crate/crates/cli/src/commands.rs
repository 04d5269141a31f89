use std::fs;
use std::path::{Path, PathBuf};

use listnerve::delta::{enumerate_rooted, enumerate_shapes, compose_upsilon, LeveledShape, RootedShape, UpsilonArrow};
use listnerve::format::{self, Document, OperadDoc, SListDoc};
use listnerve::homology::{
    chain_complex, homology_all, nerve_augmentation, relative_quotient, sub_by_labels, verify_contraction,
    verify_rooted_contraction, verify_thick_contraction, ContractionReport, Coverage, HomologyReport, SListAugmentation,
};
use listnerve::list::middle_bijection;
use listnerve::nerve::{
    check_envelope_iso, check_realized_iso, classify_representable, is_quasi_operad, nerve, realize_operad,
    Nerve, NerveSpec,
};
use listnerve::operad::{build_t_alpha, FiniteOperad, KeyOperad, Multigraph};
use listnerve::slist::{build_u_alpha, TruncSList};
use listnerve::thicken::{build_thick, check_extra_degeneracies, check_thick, count_cells};
use listnerve::{compose, is_perfect, perfect_factorize, Error, Listing};

use crate::report::{Report, Table};

/// A failure that stops a command, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_CHECK: u8 = 1;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_INVALID: u8 = 4;
pub const EXIT_COMPUTE: u8 = 5;

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

pub type Outcome<T> = Result<T, Failure>;

fn invalid(e: Error) -> Failure {
    match e {
        Error::Parse(m) => Failure::new(EXIT_INPUT, m),
        e => Failure::new(EXIT_INVALID, e.to_string()),
    }
}

fn compute(e: Error) -> Failure {
    Failure::new(EXIT_COMPUTE, e.to_string())
}

/// Bounds and options shared by every command.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub d: Option<usize>,
    pub b: Option<usize>,
    pub k: usize,
    pub m: usize,
    pub maxlen: usize,
    pub dims: (usize, usize),
    pub samples: usize,
    pub seed: u64,
}

pub fn load(path: &Path) -> Outcome<Document> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

pub fn require(input: &Option<PathBuf>) -> Outcome<Document> {
    match input {
        Some(p) => load(p),
        None => Err(Failure::new(EXIT_INPUT, "this command needs --input FILE")),
    }
}

fn wrong_kind(doc: &Document, want: &str) -> Failure {
    Failure::new(EXIT_INPUT, format!("expected {want}, got a {} document", doc.kind().name()))
}

pub fn write_out(out: &Option<PathBuf>, doc: Document) -> Outcome<()> {
    if let Some(p) = out {
        fs::write(p, doc.to_json()).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn shape_of(doc: &Document) -> Outcome<LeveledShape> {
    match doc {
        Document::Shape(s) => s.build().map_err(invalid),
        Document::Operad(o) => o.shape().map_err(invalid)?.ok_or_else(|| wrong_kind(doc, "a shape or key operad")),
        _ => Err(wrong_kind(doc, "a shape")),
    }
}

/// An operad and, for key operads, its shape.
struct Source {
    operad: FiniteOperad,
    key: Option<KeyOperad>,
    origin: String,
}

fn operad_of(doc: &Document) -> Outcome<Source> {
    match doc {
        Document::Shape(_) | Document::Operad(OperadDoc { family: format::Family::Key, .. }) => {
            let alpha = shape_of(doc)?;
            let key = build_t_alpha(&alpha);
            Ok(Source { operad: key.operad().clone(), key: Some(key), origin: "key".into() })
        }
        Document::Multigraph(g) => {
            let g: Multigraph = g.build().map_err(invalid)?;
            Ok(Source { operad: FiniteOperad::free(&g).map_err(compute)?, key: None, origin: "free".into() })
        }
        Document::Operad(o) => {
            let family = serde_name(&o.family);
            Ok(Source { operad: o.build().map_err(invalid)?, key: None, origin: family })
        }
        _ => Err(wrong_kind(doc, "an operad, shape or multigraph")),
    }
}

fn serde_name(f: &format::Family) -> String {
    format!("{f:?}").to_lowercase()
}

fn default_bound(p: &FiniteOperad, bounds: &Bounds) -> usize {
    bounds.b.unwrap_or_else(|| p.max_arity().max(1))
}

fn build_nerve(src: &Source, bounds: &Bounds, report: &mut Report) -> Outcome<Nerve> {
    let spec = NerveSpec { dim: bounds.d.unwrap_or(3), bound: default_bound(&src.operad, bounds) };
    report.param("operad", &src.origin);
    report.param("D", spec.dim);
    report.param("B", spec.bound);
    nerve(&src.operad, spec).map_err(compute)
}

/// A simplicial list from a file, building a nerve when given an operad.
fn slist_of(doc: &Document, bounds: &Bounds, report: &mut Report) -> Outcome<(TruncSList, Option<(Source, Nerve)>)> {
    match doc {
        Document::Slist(s) => {
            let x = s.build().map_err(invalid)?;
            report.param("D", x.dim());
            Ok((x, None))
        }
        _ => {
            let src = operad_of(doc)?;
            let n = build_nerve(&src, bounds, report)?;
            Ok((n.slist().clone(), Some((src, n))))
        }
    }
}

fn list(labels: impl IntoIterator<Item = impl AsRef<str>>) -> String {
    let v: Vec<String> = labels.into_iter().map(|s| s.as_ref().to_string()).collect();
    format!("({})", v.join(", "))
}

fn images(u: &Listing, a: usize) -> String {
    list(u.image(a).iter().map(|&x| u.target().label(x)))
}

fn values(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn levels(alpha: &LeveledShape) -> String {
    values(alpha.level_sizes())
}

fn maps(alpha: &LeveledShape) -> String {
    let ms: Vec<String> = alpha.maps().iter().map(|m| format!("[{}]", values(m.values()))).collect();
    if ms.is_empty() {
        "-".into()
    } else {
        ms.join(" ")
    }
}

pub fn factor(doc: &Document) -> Outcome<Report> {
    let Document::Listing(l) = doc else { return Err(wrong_kind(doc, "a listing")) };
    let u = l.build().map_err(invalid)?;
    let f = perfect_factorize(&u);
    let mut r = Report::new("factor");
    r.param("source", u.source().len());
    r.param("target", u.target().len());
    r.param("middle", f.middle.len());
    let mut t = Table::new("middle", &["index", "element", "source", "position", "value"]);
    for (m, &(a, i)) in f.pairs.iter().enumerate() {
        t.push([m.to_string(), f.middle.label(m).into(), u.source().label(a).into(), i.to_string(), images(&f.func, m)]);
    }
    r.tables.push(t);
    let mut t = Table::new("perfect", &["source", "image"]);
    for a in 0..u.source().len() {
        t.push([u.source().label(a).to_string(), images(&f.perfect, a)]);
    }
    r.tables.push(t);
    r.check(compose(&f.func, &f.perfect).map_err(compute)? == u);
    r.check(is_perfect(&f.perfect) && f.func.is_function());
    r.check(middle_bijection(&u, &f.perfect, &f.func).is_ok());
    Ok(r)
}

pub fn shapes(bounds: &Bounds, all: bool) -> Outcome<Report> {
    let n = bounds.d.unwrap_or(2);
    let b = bounds.b.unwrap_or(2);
    let list: Vec<LeveledShape> =
        if all { enumerate_shapes(n, b) } else { enumerate_rooted(n, b).into_iter().map(RootedShape::into_shape).collect() };
    let mut r = Report::new("shapes");
    r.param("D", n);
    r.param("B", b);
    r.param("rooted", !all);
    r.param("count", list.len());
    let mut t = Table::new("shapes", &["index", "levels", "maps"]);
    for (i, s) in list.iter().enumerate() {
        t.push([i.to_string(), levels(s), maps(s)]);
    }
    r.tables.push(t);
    Ok(r)
}

fn arrow_row(t: &mut Table, tag: String, a: &UpsilonArrow) {
    t.push([tag, values(a.theta().values()), a.root_choice().to_string(), levels(a.source()), maps(a.source())]);
}

pub fn upsilon(doc: &Document, bounds: &Bounds, compose_from: Option<usize>) -> Outcome<Report> {
    let alpha = RootedShape::new(shape_of(doc)?).map_err(invalid)?;
    let k = bounds.d.unwrap_or(alpha.degree());
    let arrows = UpsilonArrow::into_shape(&alpha, k);
    let mut r = Report::new("upsilon");
    r.param("target", format!("{} | {}", levels(&alpha), maps(&alpha)));
    r.param("D", k);
    r.param("arrows", arrows.len());
    let mut t = Table::new("arrows", &["index", "theta", "root", "levels", "maps"]);
    for (i, a) in arrows.iter().enumerate() {
        arrow_row(&mut t, i.to_string(), a);
    }
    r.tables.push(t);
    if let Some(j) = compose_from {
        r.param("compose", j);
        let mut t = Table::new("composites", &["pair", "theta", "root", "levels", "maps"]);
        let mut ok = true;
        for (gi, g) in arrows.iter().enumerate() {
            for (fi, f) in UpsilonArrow::into_shape(g.source(), j).iter().enumerate() {
                let c = compose_upsilon(g, f).map_err(compute)?;
                ok &= c.source() == f.source();
                arrow_row(&mut t, format!("{gi}.{fi}"), &c);
            }
        }
        r.tables.push(t);
        r.check(ok);
    }
    Ok(r)
}

fn operations_table(p: &FiniteOperad) -> Table {
    let mut t = Table::new("operations", &["index", "name", "inputs", "output", "unit"]);
    for (i, o) in p.ops().iter().enumerate() {
        t.push([
            i.to_string(),
            o.name.clone(),
            list(o.inputs.iter().map(|&c| p.colors().label(c))),
            p.colors().label(o.output).to_string(),
            if p.is_identity(i) { "yes".into() } else { "-".to_string() },
        ]);
    }
    t
}

pub fn free_operad(doc: &Document, out: &Option<PathBuf>) -> Outcome<Report> {
    let src = operad_of(doc)?;
    let p = &src.operad;
    let mut r = Report::new("free-operad");
    r.param("operad", &src.origin);
    r.param("colors", p.colors().len());
    r.param("operations", p.len());
    r.tables.push(operations_table(p));
    r.check(p.validate().is_ok());
    if out.is_some() {
        write_out(out, Document::Operad(OperadDoc::table(p).map_err(compute)?))?;
    }
    Ok(r)
}

pub fn nerve_cmd(doc: &Document, bounds: &Bounds, out: &Option<PathBuf>, show: bool) -> Outcome<Report> {
    let mut r = Report::new("nerve");
    let src = operad_of(doc)?;
    let n = build_nerve(&src, bounds, &mut r)?;
    let x = n.slist();
    let mut t = Table::new("carriers", &["degree", "simplices", "nondegenerate"]);
    for d in 0..=x.dim() {
        let nondeg = (0..x.carrier(d).len()).filter(|&e| !x.is_degenerate(d, e)).count();
        t.push([d, x.carrier(d).len(), nondeg]);
    }
    r.tables.push(t);
    if show {
        let mut t = Table::new("simplices", &["degree", "index", "label", "levels", "maps"]);
        for d in 0..=x.dim() {
            for (i, s) in n.simplices(d).iter().enumerate() {
                t.push([d.to_string(), i.to_string(), x.carrier(d).label(i).into(), levels(&s.shape), maps(&s.shape)]);
            }
        }
        r.tables.push(t);
    }
    r.check(x.validate().is_empty() && x.is_operadic());
    write_out(out, Document::Slist(SListDoc::of(x)))?;
    Ok(r)
}

pub fn realize(doc: &Document, bounds: &Bounds, out: &Option<PathBuf>) -> Outcome<Report> {
    let mut r = Report::new("realize");
    let (x, from) = slist_of(doc, bounds, &mut r)?;
    match realize_operad(&x) {
        Ok(q) => {
            r.param("colors", q.colors().len());
            r.param("operations", q.len());
            r.tables.push(operations_table(&q));
            r.check(true);
            if let Some((src, n)) = &from {
                let iso = check_realized_iso(&src.operad, n, &q);
                if let Err(e) = &iso {
                    r.note(format!("round trip: {e}"));
                }
                r.check(iso.is_ok());
            }
            write_out(out, Document::Operad(OperadDoc::table(&q).map_err(compute)?))?;
        }
        Err(e @ (Error::MissingFiller(_) | Error::NonUniqueFiller(_) | Error::NotOperadic(_) | Error::Degree(_))) => {
            r.note(e.to_string());
            r.check(false);
        }
        Err(e) => return Err(compute(e)),
    }
    Ok(r)
}

pub fn check_quasi(doc: &Document, bounds: &Bounds) -> Outcome<Report> {
    let mut r = Report::new("check-quasi");
    let (x, _) = slist_of(doc, bounds, &mut r)?;
    let (lo, hi) = bounds.dims;
    r.param("dims", format!("{lo}..{hi}"));
    let q = is_quasi_operad(&x, lo..=hi).map_err(compute)?;
    let mut t = Table::new("horns", &["dim", "missing", "horns", "unfilled", "unique", "multiple", "first_unfilled"]);
    for h in &q.reports {
        t.push([
            h.dim.to_string(),
            h.missing.to_string(),
            h.horns.to_string(),
            h.unfilled.to_string(),
            h.unique.to_string(),
            h.multiple.to_string(),
            h.first_unfilled.clone().unwrap_or_else(|| "-".into()),
        ]);
    }
    r.tables.push(t);
    if q.strict() {
        r.note("all inner horns uniquely filled");
    } else if q.passes() {
        r.note("all inner horns filled, some more than once");
    } else {
        r.note("some inner horn has no filler");
    }
    r.note(format!("only dimensions up to D = {} are examined; passing is necessary, not sufficient", x.dim()));
    r.check(q.passes());
    Ok(r)
}

pub fn check_envelope(doc: &Document, bounds: &Bounds) -> Outcome<Report> {
    let src = operad_of(doc)?;
    let n = bounds.d.unwrap_or(2);
    let mut r = Report::new("check-envelope");
    r.param("operad", &src.origin);
    r.param("D", n);
    r.param("maxlen", bounds.maxlen);
    let mut t = Table::new("degrees", &["degree", "nerve_lists", "envelope_chains", "bijective", "holds"]);
    for d in 0..=n {
        let e = check_envelope_iso(&src.operad, d, bounds.maxlen).map_err(compute)?;
        t.push([d.to_string(), e.nerve_lists.to_string(), e.envelope_chains.to_string(), e.bijective.to_string(), e.holds().to_string()]);
        r.check(e.holds());
    }
    r.tables.push(t);
    Ok(r)
}

fn contraction_tables(r: &mut Report, c: &ContractionReport, tag: &str) {
    match c.coverage {
        Coverage::Exhaustive => r.param(&format!("{tag}coverage"), "exhaustive"),
        Coverage::Sampled { samples, seed } => {
            r.param(&format!("{tag}coverage"), "sampled");
            r.param("samples", samples);
            r.param("seed", seed);
        }
    }
    let mut t = Table::new(&format!("{tag}cells"), &["degree", "identity_cells", "homotopy_cells"]);
    for (i, &n) in c.identity_cells.iter().enumerate() {
        let deg = i as isize - 1;
        let h = if deg >= 0 { c.homotopy_cells.get(deg as usize).map_or("-".into(), usize::to_string) } else { "-".into() };
        t.push([deg.to_string(), n.to_string(), h]);
    }
    r.tables.push(t);
    if !c.failures.is_empty() {
        let mut t = Table::new(&format!("{tag}failures"), &["degree", "cell", "identity"]);
        for w in c.failures.iter().take(20) {
            t.push([w.degree.to_string(), w.cell.clone(), w.identity.clone()]);
        }
        r.tables.push(t);
        r.note(format!("{} failures, first {} shown", c.failures.len(), c.failures.len().min(20)));
    }
    r.check(c.holds());
}

pub fn thicken(doc: &Document, bounds: &Bounds, check_aug: bool) -> Outcome<Report> {
    let alpha = shape_of(doc)?;
    let thick = build_thick(&alpha, bounds.k, bounds.m).map_err(compute)?;
    let mut r = Report::new("thicken");
    r.param("shape", format!("{} | {}", levels(&alpha), maps(&alpha)));
    r.param("K", bounds.k);
    r.param("M", bounds.m);
    let mut t = Table::new("cells", &["k", "m", "cells", "formula"]);
    for k in 0..=bounds.k {
        for m in 0..=bounds.m {
            let n = thick.cells(k, m).len();
            let f = count_cells(&alpha, k, m);
            t.push([k.to_string(), m.to_string(), n.to_string(), f.to_string()]);
            r.check(n as u128 == f);
        }
    }
    r.tables.push(t);
    let c = check_thick(&thick).map_err(compute)?;
    let mut t = Table::new("checks", &["check", "holds"]);
    for (name, ok) in [
        ("counts_match", c.counts_match),
        ("slices_valid", c.slices_valid),
        ("eta_perfect", c.eta_perfect),
        ("actions_commute", c.actions_commute),
        ("vertices_constant", c.vertices_constant),
    ] {
        t.push([name.to_string(), ok.to_string()]);
    }
    r.tables.push(t);
    r.check(c.holds());
    if check_aug {
        let e = check_extra_degeneracies(&thick);
        r.param("extra_cells", e.cells);
        r.check(e.holds());
        for w in e.failures.iter().take(20) {
            r.note(format!("extra degeneracy fails at {} in degree {}: {}", w.cell, w.degree, w.identity));
        }
        for k in 0..=bounds.k {
            contraction_tables(&mut r, &verify_thick_contraction(&thick, k), &format!("k{k}."));
        }
    }
    Ok(r)
}

fn homology_table(r: &mut Report, h: &HomologyReport) {
    let mut t = Table::new("homology", &["degree", "rank", "torsion", "group"]);
    for (k, g) in h.groups.iter().enumerate() {
        let tors = if g.torsion.is_empty() {
            "-".to_string()
        } else {
            g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        };
        t.push([k.to_string(), g.rank.to_string(), tors, g.render()]);
    }
    r.tables.push(t);
    if !h.promoted.is_empty() {
        r.param("promoted", values(&h.promoted));
    }
    r.note(HomologyReport::CAVEAT);
}

pub fn homology(doc: &Document, bounds: &Bounds, relative: &Option<PathBuf>, representable: bool) -> Outcome<Report> {
    let mut r = Report::new("homology");
    let (x, from) = slist_of(doc, bounds, &mut r)?;
    let y = if let Some(p) = relative {
        let sub = match load(p)? {
            Document::Slist(s) => s.build().map_err(invalid)?,
            other => return Err(wrong_kind(&other, "an slist")),
        };
        r.param("relative", p.display());
        Some(sub_by_labels(&x, &sub).map_err(invalid)?)
    } else if representable {
        let Some((Source { key: Some(key), .. }, n)) = &from else {
            return Err(Failure::new(EXIT_INPUT, "--relative-representable needs a shape or key operad input"));
        };
        let u = build_u_alpha(key.alpha(), x.dim());
        let f = classify_representable(key, n, &u).map_err(compute)?;
        r.param("relative", "representable");
        Some(
            f.components
                .into_iter()
                .map(|mut v| {
                    v.sort_unstable();
                    v.dedup();
                    v
                })
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    let target = match &y {
        Some(y) => relative_quotient(&x, y).map_err(invalid)?,
        None => x,
    };
    let c = chain_complex(&target).map_err(invalid)?;
    let mut t = Table::new("chains", &["degree", "rank"]);
    for d in 0..=c.dim() {
        t.push([d, c.rank(d)]);
    }
    r.tables.push(t);
    homology_table(&mut r, &homology_all(&c));
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// The nerve of `T_α` over the bottom level of `α`.
    Nerve,
    /// Rooted shapes over the empty set, sampled.
    Rooted,
    /// The thickening over the representable, column by column.
    Thick,
    /// The constant list at a point.
    Point,
}

pub fn verify(target: Target, input: &Option<PathBuf>, bounds: &Bounds) -> Outcome<Report> {
    let mut r = Report::new("verify-contraction");
    match target {
        Target::Nerve => {
            let doc = require(input)?;
            let src = operad_of(&doc)?;
            let Some(key) = &src.key else { return Err(wrong_kind(&doc, "a shape or key operad")) };
            let n = build_nerve(&src, bounds, &mut r)?;
            let aug = nerve_augmentation(key, &n).map_err(compute)?;
            contraction_tables(&mut r, &verify_contraction(&aug), "");
        }
        Target::Rooted => {
            let top = bounds.d.unwrap_or(4);
            let bound = bounds.b.unwrap_or(3);
            r.param("D", top);
            r.param("B", bound);
            contraction_tables(&mut r, &verify_rooted_contraction(top, bound, bounds.samples, bounds.seed), "");
        }
        Target::Thick => {
            let doc = require(input)?;
            let alpha = shape_of(&doc)?;
            let thick = build_thick(&alpha, bounds.k, bounds.m).map_err(compute)?;
            r.param("K", bounds.k);
            r.param("M", bounds.m);
            for k in 0..=bounds.k {
                contraction_tables(&mut r, &verify_thick_contraction(&thick, k), &format!("k{k}."));
            }
        }
        Target::Point => {
            let d = bounds.d.unwrap_or(3);
            r.param("D", d);
            contraction_tables(&mut r, &verify_contraction(&SListAugmentation::point(d)), "");
        }
    }
    Ok(r)
}
