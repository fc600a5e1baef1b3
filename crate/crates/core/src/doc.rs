//! The JSON input document: groups, graph, optional orientation, spanning
//! tree and base vertex, named modules and a finite quotient of `π1`.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "groups": {
//!     "Z2": {"kind": "perm", "points": 2, "gens": ["(1,2)"]},
//!     "1": {"kind": "perm", "points": 1, "gens": []}
//!   },
//!   "graph": {
//!     "vertices": [{"id": "a", "group": "Z2"}, {"id": "b", "group": "Z2"}],
//!     "edges": [
//!       {"id": "e", "tail": "a", "head": "b", "bar": "e~", "group": "1", "sigma": {"()": "()"}},
//!       {"id": "e~", "tail": "b", "head": "a", "bar": "e", "group": "1", "sigma": {"()": "()"}}
//!     ]
//!   }
//! }
//! ```
//!
//! `sigma` maps element labels of the edge group to labels of the head
//! group; images of a generating set suffice. Edges between symbolic groups
//! carry `"index"` (a number or `"infinite"`) instead. Unknown keys are
//! rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fingrp::{extend_by_products, FiniteGroup, Perm};
use crate::fundgrp::{parse_word, presentation, GroupWord, Letter};
use crate::gog::{Cardinality, EdgeMap, GraphOfGroups, GroupRef, SymbolicGroup};
use crate::graph::{Graph, Orientation, SpanningTree};
use crate::linalg::Matrix;
use crate::mvcoh::ModuleSpec;
use crate::rational::{parse_q, q, Q};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub groups: BTreeMap<String, GroupDecl>,
    pub graph: GraphDecl,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spanning_tree: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_vertex: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<QuotientDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CardDecl {
    Finite(u64),
    Word(String),
}

impl CardDecl {
    fn resolve(&self) -> Result<Cardinality> {
        match self {
            CardDecl::Finite(n) => Ok(Cardinality::Finite(*n)),
            CardDecl::Word(w) if w == "infinite" => Ok(Cardinality::Infinite),
            CardDecl::Word(w) => Err(Error::Parse(format!("cardinality must be a number or \"infinite\", got `{w}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDecl {
    /// Generated by permutations of `1..=points` in cycle notation.
    Perm { points: usize, gens: Vec<String> },
    /// Labels and the multiplication table `mul[i][j] = index of e_i e_j`.
    Table { elements: Vec<String>, mul: Vec<Vec<usize>> },
    /// Known only through assertions.
    Symbolic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cardinality: Option<CardDecl>,
        #[serde(default)]
        beta1_zero: bool,
        #[serde(default)]
        amenable: bool,
        #[serde(default)]
        property_t: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        presentation: Option<String>,
        /// l2-Betti numbers by degree, as `"p/q"`.
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        betti: BTreeMap<String, String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDecl {
    pub vertices: Vec<VertexDecl>,
    pub edges: Vec<EdgeDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDecl {
    pub id: String,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDecl {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub bar: String,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<BTreeMap<String, String>>,
    /// Asserted index of `sigma` in the head group, for symbolic groups.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<CardDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn value(&self) -> Result<Q> {
        match self {
            Entry::Int(n) => Ok(q(*n)),
            Entry::Text(s) => parse_q(s),
        }
    }
}

/// `{"dim": n, "orthogonal": true, "assign": {"a:(1,2)": [[...]], "t:e": [[...]]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDecl {
    pub dim: usize,
    #[serde(default)]
    pub orthogonal: bool,
    pub assign: BTreeMap<String, Vec<Vec<Entry>>>,
}

/// Permutation images of vertex-group generators and stable letters of a
/// homomorphism onto a finite permutation group. Letters not listed map to
/// the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientDecl {
    pub points: usize,
    pub images: BTreeMap<String, String>,
}

impl Document {
    pub fn from_json(text: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(format!("schema: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Document> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    fn group(&self, name: &str) -> Result<GroupRef> {
        let decl = self.groups.get(name).ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
        build_group(name, decl)
    }

    /// Builds the graph of groups. Structural problems other than dangling
    /// names are left to [`GraphOfGroups::validate`].
    pub fn gog(&self) -> Result<GraphOfGroups> {
        let mut built: BTreeMap<&str, GroupRef> = BTreeMap::new();
        for name in self.groups.keys() {
            built.insert(name, self.group(name)?);
        }
        let lookup = |name: &str| built.get(name).cloned().ok_or_else(|| Error::UnknownGroup(name.to_string()));
        let vertices: Vec<String> = self.graph.vertices.iter().map(|v| v.id.clone()).collect();
        let edges = self
            .graph
            .edges
            .iter()
            .map(|e| (e.id.clone(), e.tail.clone(), e.head.clone(), e.bar.clone()))
            .collect();
        let graph = Graph::from_owned(vertices, edges)?;
        let mut vertex_groups = Vec::new();
        for id in graph.vertex_ids() {
            let decl = self.graph.vertices.iter().find(|v| &v.id == id).expect("declared vertex");
            vertex_groups.push(lookup(&decl.group)?);
        }
        let mut edge_groups = Vec::new();
        let mut sigma = Vec::new();
        for ed in graph.edges() {
            let decl = self.graph.edges.iter().find(|e| e.id == ed.id).expect("declared edge");
            let src = lookup(&decl.group)?;
            let dst = &vertex_groups[ed.head];
            sigma.push(edge_map(decl, &src, dst)?);
            edge_groups.push(src);
        }
        let orientation = match &self.orientation {
            Some(ids) => Some(Orientation::from_edges(&graph, &edge_indices(&graph, ids)?)),
            None => None,
        };
        let tree = match &self.spanning_tree {
            Some(ids) => Some(SpanningTree::from_edges(&graph, &edge_indices(&graph, ids)?)),
            None => None,
        };
        let base = match &self.base_vertex {
            Some(id) => Some(graph.vertex(id)?),
            None => None,
        };
        GraphOfGroups::new(graph, vertex_groups, edge_groups, sigma, orientation, tree, base)
    }

    pub fn module(&self, gog: &GraphOfGroups, name: &str) -> Result<ModuleSpec> {
        let decl = self.modules.get(name).ok_or_else(|| Error::InvalidModule(format!("no module named `{name}`")))?;
        decl.build(gog)
    }

    pub fn quotient(&self, gog: &GraphOfGroups) -> Result<Option<Quotient>> {
        self.quotient.as_ref().map(|d| d.build(gog)).transpose()
    }
}

fn edge_indices(g: &Graph, ids: &[String]) -> Result<Vec<usize>> {
    ids.iter().map(|id| g.edge_index(id)).collect()
}

fn build_group(name: &str, decl: &GroupDecl) -> Result<GroupRef> {
    match decl {
        GroupDecl::Perm { points, gens } => {
            let perms: Vec<Perm> = gens.iter().map(|s| Perm::parse_cycles(s, *points)).collect::<Result<_>>()?;
            let g = FiniteGroup::closure((*points).max(1), &perms, crate::fingrp::element_cap())?;
            Ok(GroupRef::enumerated(name, g))
        }
        GroupDecl::Table { elements, mul } => Ok(GroupRef::enumerated(name, FiniteGroup::from_table(elements.clone(), mul.clone())?)),
        GroupDecl::Symbolic { cardinality, beta1_zero, amenable, property_t, presentation, betti } => {
            let betti = betti
                .iter()
                .map(|(k, v)| {
                    let k: u32 = k.parse().map_err(|_| Error::Parse(format!("Betti degree `{k}` is not a number")))?;
                    Ok((k, parse_q(v)?))
                })
                .collect::<Result<_>>()?;
            Ok(GroupRef::symbolic(
                name,
                SymbolicGroup {
                    cardinality: cardinality.as_ref().map(CardDecl::resolve).transpose()?,
                    beta1_zero: *beta1_zero,
                    amenable: *amenable,
                    property_t: *property_t,
                    presentation: presentation.clone(),
                    betti,
                },
            ))
        }
    }
}

fn element_of(grp: &GroupRef, label: &str) -> Result<usize> {
    let g = grp.as_enumerated().ok_or_else(|| Error::SymbolicGroupInWord(grp.name.clone()))?;
    g.element(label).ok_or_else(|| Error::UnknownElement { group: grp.name.clone(), element: label.to_string() })
}

fn edge_map(decl: &EdgeDecl, src: &GroupRef, dst: &GroupRef) -> Result<EdgeMap> {
    match (&decl.sigma, &decl.index) {
        (Some(_), Some(_)) => Err(Error::Parse(format!("edge `{}` has both sigma and index", decl.id))),
        (None, index) => {
            if src.as_enumerated().is_some() && dst.as_enumerated().is_some() {
                return Err(Error::Parse(format!("edge `{}` between enumerated groups needs sigma", decl.id)));
            }
            Ok(EdgeMap::Asserted { index: index.as_ref().map(CardDecl::resolve).transpose()? })
        }
        (Some(map), None) => {
            let s = src.as_enumerated().ok_or_else(|| Error::SymbolicGroupInWord(src.name.clone()))?;
            let mut known = BTreeMap::new();
            for (x, y) in map {
                known.insert(element_of(src, x)?, element_of(dst, y)?);
            }
            let d = dst.as_enumerated().expect("checked by element_of");
            let table = extend_by_products(s, &known, d.identity(), |a, b| d.mul(*a, *b))
                .ok_or_else(|| Error::Parse(format!("sigma on `{}` is not given on a generating set", decl.id)))?;
            Ok(EdgeMap::Table(table))
        }
    }
}

/// A key of a module or quotient map: a vertex element `v:g`, or a stable
/// letter `e` (also spelled `t:e`).
fn parse_letter(gog: &GraphOfGroups, key: &str) -> Result<Letter> {
    let single = |w: GroupWord| match w.0[..] {
        [l @ Letter::Vertex { .. }] | [l @ Letter::Stable { exp: 1, .. }] => Some(l),
        _ => None,
    };
    if let Some(l) = parse_word(gog, key).ok().and_then(single) {
        return Ok(l);
    }
    if let Some(rest) = key.strip_prefix("t:") {
        if let Some(l) = parse_word(gog, rest).ok().and_then(single) {
            return Ok(l);
        }
    }
    Err(Error::Parse(format!("`{key}` is not a vertex element or an oriented stable letter")))
}

impl ModuleDecl {
    pub fn build(&self, gog: &GraphOfGroups) -> Result<ModuleSpec> {
        let mut assign = Vec::new();
        for (key, rows) in &self.assign {
            let l = parse_letter(gog, key)?;
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(Error::InvalidModule(format!("matrix for `{key}` is not {0}x{0}", self.dim)));
            }
            let rows: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(Entry::value).collect()).collect::<Result<_>>()?;
            assign.push((l, Matrix::from_rows(rows, self.dim)));
        }
        ModuleSpec::new(gog, self.dim, self.orthogonal, &assign)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ModuleDecl> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("module schema: {e}")))
    }
}

/// A homomorphism from `π1` onto a permutation group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub points: usize,
    /// `vertex[v][g]`.
    pub vertex: Vec<Vec<Perm>>,
    /// Images of the stable letters of the orientation.
    pub stable: BTreeMap<usize, Perm>,
}

impl QuotientDecl {
    /// Resolves the images and checks every defining relation of `π1`.
    pub fn build(&self, gog: &GraphOfGroups) -> Result<Quotient> {
        let n = self.points;
        let g = &gog.graph;
        let mut known: Vec<BTreeMap<usize, Perm>> = vec![BTreeMap::new(); g.vertex_count()];
        let mut stable: BTreeMap<usize, Perm> = gog.oriented_edges().into_iter().map(|e| (e, Perm::identity(n))).collect();
        for (key, img) in &self.images {
            let p = Perm::parse_cycles(img, n)?;
            match parse_letter(gog, key)? {
                Letter::Vertex { v, g } => {
                    known[v].insert(g, p);
                }
                Letter::Stable { e, .. } => {
                    stable.insert(e, p);
                }
            }
        }
        let mut vertex = Vec::new();
        for (v, k) in known.iter().enumerate() {
            let grp = gog.vertex_groups[v].as_enumerated().ok_or_else(|| Error::SymbolicGroupInWord(gog.vertex_groups[v].name.clone()))?;
            let all = extend_by_products(grp, k, Perm::identity(n), |a, b| a.compose(b))
                .ok_or_else(|| Error::Parse(format!("quotient images at `{}` do not generate", g.vertex_id(v))))?;
            for x in grp.elements() {
                for y in grp.elements() {
                    if all[x].compose(&all[y]) != all[grp.mul(x, y)] {
                        return Err(Error::Parse(format!("quotient is not a homomorphism on `{}`", g.vertex_id(v))));
                    }
                }
            }
            vertex.push(all);
        }
        let quotient = Quotient { points: n, vertex, stable };
        for r in presentation(gog)?.relations {
            if let Some(w) = r.word {
                if !quotient.image(&w).is_identity() {
                    return Err(Error::Parse(format!("quotient violates the relation {}", r.text)));
                }
            }
        }
        Ok(quotient)
    }
}

impl Quotient {
    pub fn letter(&self, l: &Letter) -> Perm {
        match *l {
            Letter::Vertex { v, g } => self.vertex[v][g].clone(),
            Letter::Stable { e, exp } if exp > 0 => self.stable[&e].clone(),
            Letter::Stable { e, .. } => self.stable[&e].inverse(),
        }
    }

    pub fn image(&self, w: &GroupWord) -> Perm {
        w.0.iter().fold(Perm::identity(self.points), |acc, l| acc.compose(&self.letter(l)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIHEDRAL: &str = r#"{
      "schema_version": 1,
      "groups": {
        "Z2": {"kind": "perm", "points": 2, "gens": ["(1,2)"]},
        "1": {"kind": "perm", "points": 1, "gens": []}
      },
      "graph": {
        "vertices": [{"id": "a", "group": "Z2"}, {"id": "b", "group": "Z2"}],
        "edges": [
          {"id": "e", "tail": "a", "head": "b", "bar": "e~", "group": "1", "sigma": {"()": "()"}},
          {"id": "e~", "tail": "b", "head": "a", "bar": "e", "group": "1", "sigma": {"()": "()"}}
        ]
      },
      "quotient": {"points": 4, "images": {"a:(1,2)": "(1,2)(3,4)", "b:(1,2)": "(2,3)"}}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let doc = Document::from_json(DIHEDRAL).unwrap();
        let again = Document::from_json(&doc.to_json()).unwrap();
        assert_eq!(doc, again);
        let gog = doc.gog().unwrap();
        assert!(gog.validate().is_valid());
        let quo = doc.quotient(&gog).unwrap().unwrap();
        let w = parse_word(&gog, "a:(1,2) * b:(1,2) * a:(1,2) * b:(1,2)").unwrap();
        assert!(!quo.image(&w).is_identity());
        let w4 = w.concat(&w);
        assert!(quo.image(&w4).is_identity());
    }

    #[test]
    fn rejects_unknown_keys_and_versions() {
        let extra = DIHEDRAL.replacen("\"schema_version\": 1,", "\"schema_version\": 1, \"colour\": 3,", 1);
        assert!(matches!(Document::from_json(&extra), Err(Error::Parse(_))));
        let v2 = DIHEDRAL.replacen("\"schema_version\": 1", "\"schema_version\": 2", 1);
        assert!(matches!(Document::from_json(&v2), Err(Error::Parse(_))));
        let bad_group = DIHEDRAL.replacen("\"points\": 2,", "\"points\": 2, \"order\": 2,", 1);
        assert!(Document::from_json(&bad_group).is_err());
    }

    #[test]
    fn quotient_must_respect_relations() {
        let bad = DIHEDRAL.replace("\"(1,2)(3,4)\"", "\"(1,2,3)\"");
        let doc = Document::from_json(&bad).unwrap();
        let gog = doc.gog().unwrap();
        assert!(doc.quotient(&gog).is_err());
    }
}
