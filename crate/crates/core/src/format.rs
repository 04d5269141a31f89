//! The declarative file format: JSON documents with a `kind`
//! discriminator and a mandatory `version`.
//!
//! ```text
//! {"kind": "listing", "version": 1,
//!  "source": ["a1", "a2"], "target": ["b1", "b2"], "images": [["b1"], ["b2", "b1"]]}
//! {"kind": "shape", "version": 1, "levels": [2, 2, 1], "maps": [[0, 1], [0, 0]]}
//! {"kind": "multigraph", "version": 1, "colors": ["a", "b"],
//!  "edges": [{"name": "f", "inputs": ["a", "a"], "output": "b"}]}
//! {"kind": "operad", "version": 1, "family": "assoc", "bound": 3}
//! {"kind": "slist", "version": 1, "carriers": [["x"], ["y"]],
//!  "faces": [[], [[["x"]], [["x"]]]], "degeneracies": [[[["y"]]]]}
//! ```
//!
//! Operad families are `free` (with `colors`/`edges`), `key` (with
//! `levels`/`maps`), `assoc` (with `bound`), `hom` (with `set`, `bound`)
//! and `table` (with `colors`, `operations`, `identities`, `composites`).
//! In a table, composites with an identity outside or only identities
//! inside are implicit.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::delta::LeveledShape;
use crate::error::{Error, Result};
use crate::list::{FiniteSet, Listing};
use crate::operad::{build_t_alpha, Edge, FiniteOperad, Multigraph, Operation};
use crate::slist::TruncSList;

pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Listing,
    Shape,
    Multigraph,
    Operad,
    Slist,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Listing => "listing",
            Kind::Shape => "shape",
            Kind::Multigraph => "multigraph",
            Kind::Operad => "operad",
            Kind::Slist => "slist",
        }
    }
}

#[derive(Deserialize)]
struct Header {
    kind: Kind,
    version: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ListingDoc {
    pub kind: Kind,
    pub version: u32,
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub images: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeDoc {
    pub kind: Kind,
    pub version: u32,
    pub levels: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub name: String,
    pub inputs: Vec<String>,
    pub output: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultigraphDoc {
    pub kind: Kind,
    pub version: u32,
    pub colors: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Free,
    Key,
    Assoc,
    Hom,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeDoc {
    pub outer: String,
    pub inner: Vec<String>,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperadDoc {
    pub kind: Kind,
    pub version: u32,
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operations: Option<Vec<EdgeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composites: Option<Vec<CompositeDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SListDoc {
    pub kind: Kind,
    pub version: u32,
    pub carriers: Vec<Vec<String>>,
    /// `faces[n][i][e]`: the image of element `e` under `d_i` in degree `n`.
    pub faces: Vec<Vec<Vec<Vec<String>>>>,
    /// `degeneracies[n][j][e]`, for `n < D`.
    pub degeneracies: Vec<Vec<Vec<Vec<String>>>>,
}

/// A parsed document of any kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Listing(ListingDoc),
    Shape(ShapeDoc),
    Multigraph(MultigraphDoc),
    Operad(OperadDoc),
    Slist(SListDoc),
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Listing(_) => Kind::Listing,
            Document::Shape(_) => Kind::Shape,
            Document::Multigraph(_) => Kind::Multigraph,
            Document::Operad(_) => Kind::Operad,
            Document::Slist(_) => Kind::Slist,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = match self {
            Document::Listing(d) => serde_json::to_string_pretty(d),
            Document::Shape(d) => serde_json::to_string_pretty(d),
            Document::Multigraph(d) => serde_json::to_string_pretty(d),
            Document::Operad(d) => serde_json::to_string_pretty(d),
            Document::Slist(d) => serde_json::to_string_pretty(d),
        }
        .expect("documents serialize");
        s.push('\n');
        s
    }
}

/// serde_json messages end in "at line L column C".
fn located(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses a document. Syntax and schema errors carry line and column.
pub fn parse(text: &str) -> Result<Document> {
    let header: Header = serde_json::from_str(text).map_err(located)?;
    if header.version != VERSION {
        return Err(Error::Parse(format!("unsupported version {} (expected {VERSION})", header.version)));
    }
    Ok(match header.kind {
        Kind::Listing => Document::Listing(serde_json::from_str(text).map_err(located)?),
        Kind::Shape => Document::Shape(serde_json::from_str(text).map_err(located)?),
        Kind::Multigraph => Document::Multigraph(serde_json::from_str(text).map_err(located)?),
        Kind::Operad => Document::Operad(serde_json::from_str(text).map_err(located)?),
        Kind::Slist => Document::Slist(serde_json::from_str(text).map_err(located)?),
    })
}

fn set(labels: &[String], what: &str) -> Result<FiniteSet> {
    FiniteSet::new(labels.iter().cloned()).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn lookup(s: &FiniteSet, label: &str, what: &str) -> Result<usize> {
    s.position(label).ok_or_else(|| Error::Parse(format!("{what}: unknown label {label:?}")))
}

fn labels(s: &FiniteSet) -> Vec<String> {
    s.labels().to_vec()
}

fn image_labels(f: &Listing) -> Vec<Vec<String>> {
    f.images().iter().map(|img| img.iter().map(|&x| f.target().label(x).to_string()).collect()).collect()
}

impl ListingDoc {
    pub fn build(&self) -> Result<Listing> {
        let source = set(&self.source, "source")?;
        let target = set(&self.target, "target")?;
        if self.images.len() != source.len() {
            return Err(Error::Parse(format!("{} images for {} source elements", self.images.len(), source.len())));
        }
        Listing::from_labels(source, target, &self.images)
    }

    pub fn of(u: &Listing) -> Self {
        Self {
            kind: Kind::Listing,
            version: VERSION,
            source: labels(u.source()),
            target: labels(u.target()),
            images: image_labels(u),
        }
    }
}

impl ShapeDoc {
    pub fn build(&self) -> Result<LeveledShape> {
        LeveledShape::from_values(self.levels.clone(), self.maps.clone())
    }

    pub fn of(alpha: &LeveledShape) -> Self {
        Self {
            kind: Kind::Shape,
            version: VERSION,
            levels: alpha.level_sizes().to_vec(),
            maps: alpha.maps().iter().map(|m| m.values().to_vec()).collect(),
        }
    }
}

fn edges_of(docs: &[EdgeDoc], colors: &FiniteSet) -> Result<Vec<Edge>> {
    docs.iter()
        .map(|e| {
            let inputs = e.inputs.iter().map(|c| lookup(colors, c, &e.name)).collect::<Result<Vec<_>>>()?;
            Ok(Edge { name: e.name.clone(), inputs, output: lookup(colors, &e.output, &e.name)? })
        })
        .collect()
}

fn edge_doc(name: &str, inputs: &[usize], output: usize, colors: &FiniteSet) -> EdgeDoc {
    EdgeDoc {
        name: name.to_string(),
        inputs: inputs.iter().map(|&c| colors.label(c).to_string()).collect(),
        output: colors.label(output).to_string(),
    }
}

impl MultigraphDoc {
    pub fn build(&self) -> Result<Multigraph> {
        let colors = set(&self.colors, "colors")?;
        let edges = edges_of(&self.edges, &colors)?;
        Multigraph::new(colors, edges)
    }

    pub fn of(g: &Multigraph) -> Self {
        Self {
            kind: Kind::Multigraph,
            version: VERSION,
            colors: labels(g.colors()),
            edges: g.edges().iter().map(|e| edge_doc(&e.name, &e.inputs, e.output, g.colors())).collect(),
        }
    }
}

fn need<'a, T>(field: &'a Option<T>, name: &str, family: &str) -> Result<&'a T> {
    field.as_ref().ok_or_else(|| Error::Parse(format!("operad family {family} needs the field {name:?}")))
}

impl OperadDoc {
    fn bare(family: Family) -> Self {
        Self {
            kind: Kind::Operad,
            version: VERSION,
            family,
            bound: None,
            set: None,
            levels: None,
            maps: None,
            colors: None,
            edges: None,
            operations: None,
            identities: None,
            composites: None,
        }
    }

    pub fn assoc(bound: usize) -> Self {
        Self { bound: Some(bound), ..Self::bare(Family::Assoc) }
    }

    pub fn key(alpha: &LeveledShape) -> Self {
        let s = ShapeDoc::of(alpha);
        Self { levels: Some(s.levels), maps: Some(s.maps), ..Self::bare(Family::Key) }
    }

    /// The shape of a `key` document.
    pub fn shape(&self) -> Result<Option<LeveledShape>> {
        if self.family != Family::Key {
            return Ok(None);
        }
        let levels = need(&self.levels, "levels", "key")?;
        let maps = need(&self.maps, "maps", "key")?;
        LeveledShape::from_values(levels.clone(), maps.clone()).map(Some)
    }

    pub fn build(&self) -> Result<FiniteOperad> {
        match self.family {
            Family::Free => {
                let colors = set(need(&self.colors, "colors", "free")?, "colors")?;
                let edges = edges_of(need(&self.edges, "edges", "free")?, &colors)?;
                FiniteOperad::free(&Multigraph::new(colors, edges)?)
            }
            Family::Key => Ok(build_t_alpha(&self.shape()?.expect("key family")).operad().clone()),
            Family::Assoc => Ok(FiniteOperad::assoc(*need(&self.bound, "bound", "assoc")?)),
            Family::Hom => {
                let s = set(need(&self.set, "set", "hom")?, "set")?;
                Ok(FiniteOperad::hom_s(&s, *need(&self.bound, "bound", "hom")?))
            }
            Family::Table => {
                let colors = set(need(&self.colors, "colors", "table")?, "colors")?;
                let ops: Vec<Operation> = edges_of(need(&self.operations, "operations", "table")?, &colors)?
                    .into_iter()
                    .map(|e| Operation { name: e.name, inputs: e.inputs, output: e.output })
                    .collect();
                let names: HashMap<&str, usize> = ops.iter().enumerate().map(|(i, o)| (o.name.as_str(), i)).collect();
                if names.len() != ops.len() {
                    return Err(Error::Parse("operation names repeat".into()));
                }
                let op = |n: &str| names.get(n).copied().ok_or_else(|| Error::Parse(format!("unknown operation {n:?}")));
                let identities =
                    need(&self.identities, "identities", "table")?.iter().map(|n| op(n)).collect::<Result<Vec<_>>>()?;
                let mut table = HashMap::new();
                for c in need(&self.composites, "composites", "table")? {
                    let inner = c.inner.iter().map(|n| op(n)).collect::<Result<Vec<_>>>()?;
                    if table.insert((op(&c.outer)?, inner), op(&c.result)?).is_some() {
                        return Err(Error::Parse(format!("composite of {} listed twice", c.outer)));
                    }
                }
                FiniteOperad::from_table(colors, ops, identities, table)
            }
        }
    }

    /// A `table` document listing every non-unit composite of `p`.
    pub fn table(p: &FiniteOperad) -> Result<Self> {
        let colors = p.colors();
        let name = |f: usize| p.op(f).name.clone();
        let mut composites = Vec::new();
        for (g, fs) in p.composable() {
            if p.is_identity(g) || fs.iter().all(|&f| p.is_identity(f)) {
                continue;
            }
            let h = p
                .compose(g, &fs)?
                .ok_or_else(|| Error::NotClosed(format!("composite of {} leaves the bounded view", name(g))))?;
            composites.push(CompositeDoc { outer: name(g), inner: fs.iter().map(|&f| name(f)).collect(), result: name(h) });
        }
        Ok(Self {
            colors: Some(labels(colors)),
            operations: Some(p.ops().iter().map(|o| edge_doc(&o.name, &o.inputs, o.output, colors)).collect()),
            identities: Some(p.identities().iter().map(|&i| name(i)).collect()),
            composites: Some(composites),
            ..Self::bare(Family::Table)
        })
    }
}

impl SListDoc {
    pub fn build(&self) -> Result<TruncSList> {
        let carriers =
            self.carriers.iter().enumerate().map(|(n, c)| set(c, &format!("carrier {n}"))).collect::<Result<Vec<_>>>()?;
        let d = carriers.len().saturating_sub(1);
        if carriers.is_empty() || self.faces.len() != d + 1 || self.degeneracies.len() != d {
            return Err(Error::Parse(format!(
                "{} carriers need {} face groups and {} degeneracy groups",
                carriers.len(),
                d + 1,
                d
            )));
        }
        let resolve = |n: usize, t: usize, maps: &[Vec<Vec<String>>], what: &str| -> Result<Vec<Vec<Vec<usize>>>> {
            maps.iter()
                .enumerate()
                .map(|(i, m)| {
                    if m.len() != carriers[n].len() {
                        return Err(Error::Parse(format!("{what}{i} in degree {n} has {} images", m.len())));
                    }
                    m.iter()
                        .map(|img| img.iter().map(|l| lookup(&carriers[t], l, &format!("{what}{i} in degree {n}"))).collect())
                        .collect()
                })
                .collect()
        };
        let mut faces = Vec::with_capacity(d + 1);
        for (n, fs) in self.faces.iter().enumerate() {
            if n == 0 && !fs.is_empty() {
                return Err(Error::Parse("degree 0 has no faces".into()));
            }
            faces.push(if n == 0 { Vec::new() } else { resolve(n, n - 1, fs, "d")? });
        }
        let degs = self.degeneracies.iter().enumerate().map(|(n, ss)| resolve(n, n + 1, ss, "s")).collect::<Result<Vec<_>>>()?;
        TruncSList::from_images(carriers, faces, degs)
    }

    pub fn of(x: &TruncSList) -> Self {
        Self {
            kind: Kind::Slist,
            version: VERSION,
            carriers: x.carriers().iter().map(labels).collect(),
            faces: (0..=x.dim()).map(|n| x.faces(n).iter().map(image_labels).collect()).collect(),
            degeneracies: (0..x.dim()).map(|n| x.degeneracies(n).iter().map(image_labels).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_round_trip() {
        let u = Listing::from_labels(
            FiniteSet::new(["a1", "a2"]).unwrap(),
            FiniteSet::new(["b1", "b2", "b3"]).unwrap(),
            &[vec!["b1".into(), "b3".into()], vec![]],
        )
        .unwrap();
        let doc = Document::Listing(ListingDoc::of(&u));
        let back = parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let Document::Listing(l) = back else { unreachable!() };
        assert_eq!(l.build().unwrap(), u);

        let x = TruncSList::standard_simplex(1, 2);
        let Document::Slist(s) = parse(&Document::Slist(SListDoc::of(&x)).to_json()).unwrap() else { unreachable!() };
        assert_eq!(s.build().unwrap(), x);
    }

    #[test]
    fn tables_rebuild_the_operad() {
        let alpha = LeveledShape::from_values(vec![2, 2, 1], vec![vec![0, 1], vec![0, 0]]).unwrap();
        let p = build_t_alpha(&alpha).operad().clone();
        let doc = OperadDoc::table(&p).unwrap();
        let q = doc.build().unwrap();
        assert_eq!(q.ops(), p.ops());
        for (g, fs) in p.composable() {
            assert_eq!(q.compose(g, &fs).unwrap(), p.compose(g, &fs).unwrap());
        }
    }

    #[test]
    fn errors_are_located() {
        let err = parse("{\"kind\": \"shape\",\n \"version\": 1,\n \"levels\": [1, 1],\n \"maps\": [[0], ]}").unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
        let err = parse("{\"kind\": \"shape\", \"levels\": [1], \"maps\": []}").unwrap_err();
        assert!(err.to_string().contains("version"), "{err}");
        let err = parse("{\"kind\": \"shape\", \"version\": 2, \"levels\": [1], \"maps\": []}").unwrap_err();
        assert!(err.to_string().contains("unsupported version"), "{err}");
        let err = parse("{\"kind\": \"tree\", \"version\": 1}").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }
}
