//! The fundamental group of a graph of groups: words, presentations and the
//! word problem.
//!
//! Elements are handled as closed paths `g0 f1 g1 ... fn gn` at the base
//! vertex. A path is reduced by moving edge-group elements rightward across
//! edges and cancelling backtracks; with fixed left transversals the result
//! is unique, so it doubles as a normal form and as a name for vertices of
//! the universal cover.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fingrp::{left_transversal, FiniteGroup, Transversal};
use crate::gog::{EdgeMap, GraphOfGroups};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// An element of the vertex group `G_v`.
    Vertex { v: usize, g: usize },
    /// The stable letter `t_e` (`e` in the orientation) raised to `exp = ±1`.
    Stable { e: usize, exp: i8 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn vertex(v: usize, g: usize) -> Self {
        GroupWord(vec![Letter::Vertex { v, g }])
    }

    pub fn stable(e: usize, exp: i8) -> Self {
        GroupWord(vec![Letter::Stable { e, exp }])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    /// Formal inverse; needs the vertex groups to invert vertex letters.
    pub fn inverse(&self, gog: &GraphOfGroups) -> Result<GroupWord> {
        let mut out = Vec::with_capacity(self.0.len());
        for l in self.0.iter().rev() {
            out.push(match *l {
                Letter::Vertex { v, g } => {
                    let grp = enumerated(gog, v)?;
                    Letter::Vertex { v, g: grp.inv(g) }
                }
                Letter::Stable { e, exp } => Letter::Stable { e, exp: -exp },
            });
        }
        Ok(GroupWord(out))
    }

    pub fn pow(&self, gog: &GraphOfGroups, n: i64) -> Result<GroupWord> {
        let base = if n < 0 { self.inverse(gog)? } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..n.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Ok(GroupWord(out))
    }

    /// Text form in the `v:g * e * e^-1` syntax.
    pub fn display(&self, gog: &GraphOfGroups) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|l| letter_text(gog, l)).collect::<Vec<_>>().join(" * ")
    }
}

fn letter_text(gog: &GraphOfGroups, l: &Letter) -> String {
    match *l {
        Letter::Vertex { v, g } => {
            let label = gog.vertex_groups[v].as_enumerated().map(|grp| grp.label(g).to_string()).unwrap_or_else(|| g.to_string());
            format!("{}:{}", gog.graph.vertex_id(v), label)
        }
        Letter::Stable { e, exp } => {
            let id = &gog.graph.edge(e).id;
            if exp < 0 {
                format!("{id}^-1")
            } else {
                id.clone()
            }
        }
    }
}

fn enumerated(gog: &GraphOfGroups, v: usize) -> Result<&Arc<FiniteGroup>> {
    gog.vertex_groups[v]
        .as_enumerated()
        .ok_or_else(|| Error::SymbolicGroupInWord(gog.vertex_groups[v].name.clone()))
}

/// Parses `a:x * e1 * b:y * e1^-1`. `1` or an empty string is the identity.
/// A reverse edge `f` not in the orientation is read as `t_{bar f}^{-1}`.
pub fn parse_word(gog: &GraphOfGroups, s: &str) -> Result<GroupWord> {
    let mut letters = Vec::new();
    for tok in s.split('*') {
        let tok = tok.trim();
        if tok.is_empty() || tok == "1" {
            continue;
        }
        if let Some((v, g)) = tok.split_once(':') {
            let v = gog.graph.vertex(v.trim())?;
            let grp = enumerated(gog, v)?;
            let g = grp.element(g.trim()).ok_or_else(|| Error::UnknownElement {
                group: gog.vertex_groups[v].name.clone(),
                element: g.trim().to_string(),
            })?;
            letters.push(Letter::Vertex { v, g });
            continue;
        }
        let (id, exp) = match tok.split_once('^') {
            Some((id, p)) => {
                let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                (id.trim(), p)
            }
            None => (tok, 1),
        };
        let mut e = gog.graph.edge_index(id)?;
        let mut sign = 1i64;
        if !gog.orientation.contains(e) {
            e = gog.graph.bar(e);
            sign = -1;
        }
        let exp = exp * sign;
        for _ in 0..exp.unsigned_abs() {
            letters.push(Letter::Stable { e, exp: exp.signum() as i8 });
        }
    }
    Ok(GroupWord(letters))
}

/// One step of a reduced path: the transversal element `rep` of `G_{tail f}`
/// followed by the oriented edge `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub rep: usize,
    pub edge: usize,
}

/// A reduced path from the base vertex: steps, then a terminal element of the
/// group of the end vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathForm {
    pub steps: Vec<Step>,
    pub last: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub word: GroupWord,
    pub path: PathForm,
    pub is_identity: bool,
}

/// Precomputed data for rewriting in `π1` of an all-enumerated graph of groups.
#[derive(Clone, Debug)]
pub struct Pi1 {
    pub gog: GraphOfGroups,
    groups: Vec<Arc<FiniteGroup>>,
    /// `sigma[f]` as a table `G_f -> G_{head f}`.
    sigma: Vec<Vec<usize>>,
    /// Inverse of `sigma[f]` on its image.
    sigma_inv: Vec<Vec<Option<usize>>>,
    /// Transversal of `sigma[bar f](G_f)` in `G_{tail f}`.
    src: Vec<Transversal>,
    /// Tree paths from the base vertex to each vertex.
    down: Vec<Vec<usize>>,
}

impl Pi1 {
    pub fn new(gog: &GraphOfGroups) -> Result<Self> {
        if let Some(name) = gog.first_symbolic() {
            return Err(Error::SymbolicGroupInWord(name.to_string()));
        }
        let g = &gog.graph;
        let groups: Vec<Arc<FiniteGroup>> = gog.vertex_groups.iter().map(|r| r.as_enumerated().unwrap().clone()).collect();
        let mut sigma = Vec::new();
        let mut sigma_inv = Vec::new();
        for f in 0..g.edge_count() {
            let h = gog
                .sigma_hom(f)
                .ok_or_else(|| Error::InvalidGraphOfGroups(format!("sigma({}) is not a homomorphism", g.edge(f).id)))?;
            if !h.injective {
                return Err(Error::InvalidGraphOfGroups(format!("sigma not injective on {}", g.edge(f).id)));
            }
            sigma_inv.push(h.inverse_table());
            sigma.push(h.map.clone());
        }
        let mut src = Vec::new();
        for f in 0..g.edge_count() {
            let b = g.bar(f);
            let mut img = sigma[b].clone();
            img.sort_unstable();
            img.dedup();
            src.push(left_transversal(&groups[g.tail(f)], &img)?);
        }
        let down = (0..g.vertex_count()).map(|v| gog.tree.path(g, gog.base, v)).collect();
        Ok(Pi1 { gog: gog.clone(), groups, sigma, sigma_inv, src, down })
    }

    pub fn group(&self, v: usize) -> &Arc<FiniteGroup> {
        &self.groups[v]
    }

    pub fn base(&self) -> usize {
        self.gog.base
    }

    /// Transversal of `sigma[bar f](G_f)` in `G_{tail f}`: the branching data
    /// of the cover at a vertex of type `tail f`.
    pub fn source_transversal(&self, f: usize) -> &Transversal {
        &self.src[f]
    }

    /// Vertex type at the end of a step sequence.
    pub fn end_vertex(&self, steps: &[Step]) -> usize {
        steps.last().map_or(self.gog.base, |s| self.gog.graph.head(s.edge))
    }

    fn reducer(&self) -> Reducer<'_> {
        Reducer { pi: self, steps: Vec::new(), cur: self.groups[self.gog.base].identity(), at: self.gog.base }
    }

    fn push_letter(&self, r: &mut Reducer<'_>, l: &Letter) {
        let g = &self.gog.graph;
        match *l {
            Letter::Vertex { v, g: x } => {
                r.push_path(&self.down[v]);
                r.push_vertex(x);
                r.push_path_back(&self.down[v]);
            }
            Letter::Stable { e, exp } => {
                let f = if exp > 0 { e } else { g.bar(e) };
                r.push_path(&self.down[g.tail(f)]);
                r.push_edge(f);
                r.push_path_back(&self.down[g.head(f)]);
            }
        }
    }

    /// Steps of the lift `ṽ` of a graph vertex: the tree path from the base.
    pub fn lift_vertex(&self, v: usize) -> Vec<Step> {
        let mut r = self.reducer();
        r.push_path(&self.down[v]);
        r.steps
    }

    /// Reduced path of a word.
    pub fn path_form(&self, w: &GroupWord) -> Result<PathForm> {
        self.check_word(w)?;
        let mut r = self.reducer();
        for l in &w.0 {
            self.push_letter(&mut r, l);
        }
        Ok(PathForm { steps: r.steps, last: r.cur })
    }

    fn check_word(&self, w: &GroupWord) -> Result<()> {
        let g = &self.gog.graph;
        for l in &w.0 {
            match *l {
                Letter::Vertex { v, g: x } => {
                    if v >= g.vertex_count() {
                        return Err(Error::UnknownVertex(v.to_string()));
                    }
                    if x >= self.groups[v].order() {
                        return Err(Error::UnknownElement { group: self.gog.vertex_groups[v].name.clone(), element: x.to_string() });
                    }
                }
                Letter::Stable { e, exp } => {
                    if e >= g.edge_count() || !self.gog.orientation.contains(e) || exp.abs() != 1 {
                        return Err(Error::UnknownEdge(e.to_string()));
                    }
                }
            }
        }
        Ok(())
    }

    /// The vertex `w · v` of the universal cover, where `v` is given by its
    /// step sequence.
    pub fn act_steps(&self, w: &PathForm, v: &[Step]) -> Vec<Step> {
        let mut r = Reducer { pi: self, steps: w.steps.clone(), cur: w.last, at: self.end_vertex(&w.steps) };
        for s in v {
            r.push_vertex(s.rep);
            r.push_edge(s.edge);
        }
        r.steps
    }

    /// Rewrites a reduced path as a word in vertex and stable letters.
    pub fn path_to_word(&self, p: &PathForm) -> GroupWord {
        let g = &self.gog.graph;
        let mut letters = Vec::new();
        let mut at = self.gog.base;
        for s in &p.steps {
            if s.rep != self.groups[at].identity() {
                letters.push(Letter::Vertex { v: at, g: s.rep });
            }
            if !self.gog.tree.contains(s.edge) {
                letters.push(if self.gog.orientation.contains(s.edge) {
                    Letter::Stable { e: s.edge, exp: 1 }
                } else {
                    Letter::Stable { e: g.bar(s.edge), exp: -1 }
                });
            }
            at = g.head(s.edge);
        }
        if p.last != self.groups[at].identity() {
            letters.push(Letter::Vertex { v: at, g: p.last });
        }
        GroupWord(letters)
    }

    /// Word for the vertex `steps` of the cover: an element mapping the
    /// base lift of the end type onto it.
    pub fn vertex_word(&self, steps: &[Step]) -> GroupWord {
        let end = self.end_vertex(steps);
        self.path_to_word(&PathForm { steps: steps.to_vec(), last: self.groups[end].identity() })
    }

    pub fn britton_reduce(&self, w: &GroupWord) -> Result<NormalForm> {
        let path = self.path_form(w)?;
        let is_identity = path.steps.is_empty() && path.last == self.groups[self.gog.base].identity();
        Ok(NormalForm { word: self.path_to_word(&path), path, is_identity })
    }

    pub fn equals(&self, w1: &GroupWord, w2: &GroupWord) -> Result<bool> {
        let w = w1.concat(&w2.inverse(&self.gog)?);
        Ok(self.britton_reduce(&w)?.is_identity)
    }

    pub fn is_identity(&self, w: &GroupWord) -> Result<bool> {
        Ok(self.britton_reduce(w)?.is_identity)
    }

    pub fn inverse(&self, w: &GroupWord) -> GroupWord {
        w.inverse(&self.gog).expect("enumerated groups")
    }
}

struct Reducer<'a> {
    pi: &'a Pi1,
    steps: Vec<Step>,
    cur: usize,
    at: usize,
}

impl Reducer<'_> {
    fn push_vertex(&mut self, x: usize) {
        self.cur = self.pi.groups[self.at].mul(self.cur, x);
    }

    fn push_edge(&mut self, f: usize) {
        let pi = self.pi;
        let g = &pi.gog.graph;
        debug_assert_eq!(g.tail(f), self.at);
        if let Some(last) = self.steps.last().copied() {
            if g.bar(last.edge) == f {
                if let Some(x) = pi.sigma_inv[last.edge][self.cur] {
                    self.steps.pop();
                    let tail = g.tail(last.edge);
                    self.cur = pi.groups[tail].mul(last.rep, pi.sigma[f][x]);
                    self.at = tail;
                    return;
                }
            }
        }
        let (rep, y) = pi.src[f].decompose(&pi.groups[self.at], self.cur);
        let x = pi.sigma_inv[g.bar(f)][y].expect("element of the edge image");
        self.steps.push(Step { rep, edge: f });
        self.cur = pi.sigma[f][x];
        self.at = g.head(f);
    }

    fn push_path(&mut self, path: &[usize]) {
        for &f in path {
            self.push_edge(f);
        }
    }

    fn push_path_back(&mut self, path: &[usize]) {
        let g = &self.pi.gog.graph;
        for &f in path.iter().rev() {
            self.push_edge(g.bar(f));
        }
    }
}

/// One relation of a presentation: a relator word, or a verbatim block for
/// symbolic vertex groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub word: Option<GroupWord>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    /// Names of stable letters of tree edges, killed by a relation.
    pub tree_letters: Vec<String>,
}

impl Presentation {
    /// Display with tree stable letters eliminated.
    pub fn simplified(&self) -> String {
        let gens: Vec<&str> = self.generators.iter().filter(|g| !self.tree_letters.contains(g)).map(String::as_str).collect();
        let rels: Vec<String> = self
            .relations
            .iter()
            .filter(|r| !self.tree_letters.contains(&r.text))
            .map(|r| eliminate(&r.text, &self.tree_letters))
            .filter(|t| !t.is_empty())
            .collect();
        format!("< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

fn eliminate(text: &str, killed: &[String]) -> String {
    text.split(" * ")
        .filter(|tok| {
            let base = tok.trim_end_matches("^-1");
            !killed.iter().any(|k| k == base)
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<&str> = self.relations.iter().map(|r| r.text.as_str()).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// The presentation of `π1` as a quotient of the free product of the vertex
/// groups with the free group on the orientation. Identity elements are not
/// listed as generators.
pub fn presentation(gog: &GraphOfGroups) -> Result<Presentation> {
    let g = &gog.graph;
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    for v in 0..g.vertex_count() {
        let vg = &gog.vertex_groups[v];
        match vg.as_enumerated() {
            Some(grp) => {
                for x in grp.elements() {
                    if x != grp.identity() {
                        generators.push(letter_text(gog, &Letter::Vertex { v, g: x }));
                    }
                }
                for x in grp.elements() {
                    for y in grp.elements() {
                        if x == grp.identity() || y == grp.identity() {
                            continue;
                        }
                        let xy = grp.mul(x, y);
                        let mut w = vec![Letter::Vertex { v, g: x }, Letter::Vertex { v, g: y }];
                        if xy != grp.identity() {
                            w.push(Letter::Vertex { v, g: grp.inv(xy) });
                        }
                        let w = GroupWord(w);
                        relations.push(Relation { text: w.display(gog), word: Some(w) });
                    }
                }
            }
            None => {
                let p = vg
                    .as_symbolic()
                    .and_then(|s| s.presentation.clone())
                    .ok_or_else(|| Error::MissingPresentation(vg.name.clone()))?;
                generators.push(format!("{}:<{}>", g.vertex_id(v), vg.name));
                relations.push(Relation { word: None, text: format!("{}:{p}", g.vertex_id(v)) });
            }
        }
    }
    let a = gog.oriented_edges();
    for &e in &a {
        generators.push(g.edge(e).id.clone());
    }
    for &e in &a {
        let ge = &gog.edge_groups[e];
        let (Some(grp), EdgeMap::Table(s), EdgeMap::Table(t)) = (ge.as_enumerated(), &gog.sigma[e], gog.theta(e)) else {
            let id = &g.edge(e).id;
            relations.push(Relation { word: None, text: format!("{id} * sigma(x) * {id}^-1 = theta(x) for x in {}", ge.name) });
            continue;
        };
        let (head, tail) = (g.head(e), g.tail(e));
        let tg = gog.vertex_groups[tail].as_enumerated().unwrap();
        for x in grp.elements() {
            if x == grp.identity() {
                continue;
            }
            let w = GroupWord(vec![
                Letter::Stable { e, exp: 1 },
                Letter::Vertex { v: head, g: s[x] },
                Letter::Stable { e, exp: -1 },
                Letter::Vertex { v: tail, g: tg.inv(t[x]) },
            ]);
            relations.push(Relation { text: w.display(gog), word: Some(w) });
        }
    }
    let mut tree_letters = Vec::new();
    for &e in &a {
        if gog.tree.contains(e) {
            let w = GroupWord::stable(e, 1);
            tree_letters.push(g.edge(e).id.clone());
            relations.push(Relation { text: w.display(gog), word: Some(w) });
        }
    }
    Ok(Presentation { generators, relations, tree_letters })
}
