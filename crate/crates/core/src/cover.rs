//! The Bass-Serre tree: balls, the action, translation lengths and a
//! certificate-producing classifier for the action of a finitely generated
//! subgroup.
//!
//! A vertex is named by the reduced step sequence of the path reaching it
//! from the base lift `x0`; prefixes of that sequence are exactly the
//! vertices on the geodesic `[x0, v]`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fundgrp::{GroupWord, NormalForm, PathForm, Pi1, Step};

pub const DEFAULT_BALL_CAP: usize = 250_000;

/// Vertex cap for balls; overridable through `GOGKIT_BALL_CAP`.
pub fn ball_cap() -> usize {
    std::env::var("GOGKIT_BALL_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BALL_CAP)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverVertex {
    pub steps: Vec<Step>,
}

impl CoverVertex {
    pub fn base() -> Self {
        CoverVertex::default()
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    pub fn parent(&self) -> Option<CoverVertex> {
        let n = self.steps.len();
        (n > 0).then(|| CoverVertex { steps: self.steps[..n - 1].to_vec() })
    }

    /// Orbit type: the vertex of the graph this vertex lies over.
    pub fn kind(&self, pi: &Pi1) -> usize {
        pi.end_vertex(&self.steps)
    }

    /// Text label `type: coset word`.
    pub fn label(&self, pi: &Pi1) -> String {
        let g = &pi.gog;
        format!("{}: {}", g.graph.vertex_id(self.kind(pi)), pi.vertex_word(&self.steps).display(g))
    }
}

/// An oriented edge of the tree, with the graph edge it lies over.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverEdge {
    pub tail: CoverVertex,
    pub head: CoverVertex,
    pub edge: usize,
}

impl CoverEdge {
    pub fn reverse(&self, pi: &Pi1) -> CoverEdge {
        CoverEdge { tail: self.head.clone(), head: self.tail.clone(), edge: pi.gog.graph.bar(self.edge) }
    }
}

fn lcp(a: &[Step], b: &[Step]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Tree distance between two vertices.
pub fn tree_distance(u: &CoverVertex, v: &CoverVertex) -> usize {
    u.depth() + v.depth() - 2 * lcp(&u.steps, &v.steps)
}

/// Vertices of the geodesic from `u` to `v`, both included.
pub fn geodesic(u: &CoverVertex, v: &CoverVertex) -> Vec<CoverVertex> {
    let k = lcp(&u.steps, &v.steps);
    let mut out = Vec::new();
    for i in (k..=u.depth()).rev() {
        out.push(CoverVertex { steps: u.steps[..i].to_vec() });
    }
    for i in k + 1..=v.depth() {
        out.push(CoverVertex { steps: v.steps[..i].to_vec() });
    }
    out
}

/// The oriented edges of the geodesic from `u` to `v`.
pub fn geodesic_edges(pi: &Pi1, u: &CoverVertex, v: &CoverVertex) -> Vec<CoverEdge> {
    let g = &pi.gog.graph;
    geodesic(u, v)
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            // One of the two is the parent of the other.
            let edge = if a.depth() < b.depth() { b.steps.last().unwrap().edge } else { g.bar(a.steps.last().unwrap().edge) };
            CoverEdge { tail: a.clone(), head: b.clone(), edge }
        })
        .collect()
}

/// Steps leading from `v` to its children.
pub fn child_steps(pi: &Pi1, v: &CoverVertex) -> Vec<Step> {
    let g = &pi.gog.graph;
    let at = v.kind(pi);
    let mut out = Vec::new();
    for f in g.out_edges(at) {
        let tr = pi.source_transversal(f);
        for &rep in &tr.reps {
            if let Some(last) = v.steps.last() {
                if g.bar(last.edge) == f && tr.contains(rep) {
                    continue;
                }
            }
            out.push(Step { rep, edge: f });
        }
    }
    out
}

pub fn neighbors(pi: &Pi1, v: &CoverVertex) -> Vec<CoverVertex> {
    let mut out: Vec<CoverVertex> = v.parent().into_iter().collect();
    for s in child_steps(pi, v) {
        let mut steps = v.steps.clone();
        steps.push(s);
        out.push(CoverVertex { steps });
    }
    out
}

/// `w · v` for an element given by its reduced path.
pub fn act(pi: &Pi1, w: &PathForm, v: &CoverVertex) -> CoverVertex {
    CoverVertex { steps: pi.act_steps(w, &v.steps) }
}

/// A ball around the base vertex, built breadth first.
#[derive(Clone, Debug)]
pub struct CoverBall {
    pub radius: usize,
    vertices: Vec<CoverVertex>,
    index: HashMap<CoverVertex, usize>,
    parent: Vec<Option<usize>>,
}

pub fn build_ball(pi: &Pi1, radius: usize) -> Result<CoverBall> {
    build_ball_capped(pi, radius, ball_cap())
}

pub fn build_ball_capped(pi: &Pi1, radius: usize, cap: usize) -> Result<CoverBall> {
    let mut vertices = vec![CoverVertex::base()];
    let mut index = HashMap::from([(CoverVertex::base(), 0)]);
    let mut parent = vec![None];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if vertices[i].depth() == radius {
            continue;
        }
        for s in child_steps(pi, &vertices[i]) {
            if vertices.len() >= cap {
                return Err(Error::BallTooLarge(cap));
            }
            let mut steps = vertices[i].steps.clone();
            steps.push(s);
            let v = CoverVertex { steps };
            index.insert(v.clone(), vertices.len());
            parent.push(Some(i));
            queue.push_back(vertices.len());
            vertices.push(v);
        }
    }
    Ok(CoverBall { radius, vertices, index, parent })
}

impl CoverBall {
    pub fn base(&self) -> &CoverVertex {
        &self.vertices[0]
    }

    /// Vertices in breadth-first order.
    pub fn vertices(&self) -> &[CoverVertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: &CoverVertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &CoverVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Geometric edges as `(parent, child)` index pairs.
    pub fn tree_pairs(&self) -> Vec<(usize, usize)> {
        self.parent.iter().enumerate().filter_map(|(c, p)| p.map(|p| (p, c))).collect()
    }

    /// Edges oriented as the graph orientation, one per geometric edge.
    pub fn edges(&self, pi: &Pi1) -> Vec<CoverEdge> {
        let g = &pi.gog;
        self.tree_pairs()
            .into_iter()
            .map(|(p, c)| {
                let f = self.vertices[c].steps.last().unwrap().edge;
                let (a, b) = (self.vertices[p].clone(), self.vertices[c].clone());
                if g.orientation.contains(f) {
                    CoverEdge { tail: a, head: b, edge: f }
                } else {
                    CoverEdge { tail: b, head: a, edge: g.graph.bar(f) }
                }
            })
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.parent.iter().filter(|p| **p == Some(i)).count() + usize::from(self.parent[i].is_some())
    }

    pub fn distance(&self, u: &CoverVertex, v: &CoverVertex) -> Result<usize> {
        for x in [u, v] {
            if !self.contains(x) {
                return Err(Error::UnknownVertex(format!("{:?}", x.steps)));
            }
        }
        Ok(tree_distance(u, v))
    }

    pub fn act(&self, pi: &Pi1, w: &GroupWord, v: &CoverVertex) -> Result<CoverVertex> {
        let pf = pi.path_form(w)?;
        let image = act(pi, &pf, v);
        if image.depth() > self.radius {
            return Err(Error::OutOfBall { radius: self.radius, depth: image.depth() });
        }
        Ok(image)
    }

    pub fn to_dot(&self, pi: &Pi1) -> String {
        let mut s = String::from("graph cover {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", v.label(pi).replace('"', "\\\""));
        }
        for (p, c) in self.tree_pairs() {
            let _ = writeln!(s, "  v{p} -- v{c};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, pi: &Pi1) -> Value {
        let g = &pi.gog;
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                json!({
                    "id": i,
                    "type": g.graph.vertex_id(v.kind(pi)),
                    "word": pi.vertex_word(&v.steps).display(g),
                    "depth": v.depth(),
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges(pi)
            .iter()
            .map(|e| {
                json!({
                    "tail": self.index[&e.tail],
                    "head": self.index[&e.head],
                    "type": g.graph.edge(e.edge).id,
                })
            })
            .collect();
        json!({ "radius": self.radius, "base": 0, "vertices": vertices, "edges": edges })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryKind {
    Elliptic,
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsometryReport {
    pub element: NormalForm,
    pub displacement: usize,
    pub kind: IsometryKind,
    pub translation_length: usize,
    /// For hyperbolic elements: the geodesic from a point `p` of the axis to
    /// `w · p`.
    pub axis: Vec<CoverVertex>,
    pub fixed_vertex: Option<CoverVertex>,
}

/// Minimum of `d(w p, p)` over `p` on `[x0, w x0]`, with the first minimizer.
pub fn translation_length(pi: &Pi1, w: &PathForm) -> (usize, CoverVertex) {
    let x0 = CoverVertex::base();
    let wx0 = act(pi, w, &x0);
    let mut best: Option<(usize, CoverVertex)> = None;
    for p in geodesic(&x0, &wx0) {
        let d = tree_distance(&act(pi, w, &p), &p);
        if best.as_ref().is_none_or(|(b, _)| d < *b) {
            best = Some((d, p));
        }
    }
    best.expect("geodesic is nonempty")
}

pub fn isometry_report(pi: &Pi1, w: &GroupWord) -> Result<IsometryReport> {
    let element = pi.britton_reduce(w)?;
    let pf = &element.path;
    let displacement = pf.steps.len();
    let (ell, p) = translation_length(pi, pf);
    let (kind, axis, fixed_vertex) = if ell == 0 {
        (IsometryKind::Elliptic, Vec::new(), Some(p))
    } else {
        let wp = act(pi, pf, &p);
        (IsometryKind::Hyperbolic, geodesic(&p, &wp), None)
    };
    Ok(IsometryReport { element, displacement, kind, translation_length: ell, axis, fixed_vertex })
}

/// Translation length by the independent formula `max(0, d(w²x, x) − d(wx, x))`.
pub fn translation_length_squared_formula(pi: &Pi1, w: &PathForm) -> usize {
    let x0 = CoverVertex::base();
    let wx = act(pi, w, &x0);
    let w2x = act(pi, w, &wx);
    w2x.depth().saturating_sub(wx.depth())
}

/// How the conjugate `s h s⁻¹` relates to `h` algebraically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confirmation {
    Equal,
    Inverse,
    Commutes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overlap {
    /// The axes meet in the segment `[from, to]`.
    Segment { from: CoverVertex, to: CoverVertex },
    /// The axes are disjoint; `[from, to]` is the bridge between them.
    Bridge { from: CoverVertex, to: CoverVertex },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPong {
    pub h: GroupWord,
    pub conjugator: usize,
    pub h_conj: GroupWord,
    pub length_h: usize,
    pub length_h_conj: usize,
    pub overlap: Overlap,
    pub overlap_length: usize,
    pub power_h: usize,
    pub power_h_conj: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    FixedVertex(CoverVertex),
    ElementaryEndPair { h: GroupWord, confirmations: Vec<Confirmation>, window: usize },
    NonElementary(PingPong),
    Inconclusive { budget: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionClassification {
    pub verdict: Verdict,
    /// Translation lengths of the generators and of the pairwise products
    /// `g_i g_j` (`i < j`), in that order.
    pub lengths: Vec<usize>,
}

impl ActionClassification {
    pub fn name(&self) -> &'static str {
        match self.verdict {
            Verdict::FixedVertex(_) => "FixedVertex",
            Verdict::ElementaryEndPair { .. } => "ElementaryEndPair",
            Verdict::NonElementary(_) => "NonElementary",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

fn midpoint(u: &CoverVertex, v: &CoverVertex) -> CoverVertex {
    let path = geodesic(u, v);
    path[path.len() / 2].clone()
}

/// Common fixed vertex of elliptic generators whose pairwise products are
/// elliptic: project repeatedly onto the fixed subtrees.
pub fn common_fixed_vertex(pi: &Pi1, gens: &[PathForm]) -> Option<CoverVertex> {
    let mut p = CoverVertex::base();
    let mut rounds = 0;
    loop {
        let mut moved = false;
        for s in gens {
            let sp = act(pi, s, &p);
            if sp != p {
                p = midpoint(&p, &sp);
                moved = true;
            }
        }
        if !moved {
            return Some(p);
        }
        rounds += 1;
        if rounds > 10_000 {
            return None;
        }
    }
}

fn axis_window(pi: &Pi1, h: &PathForm, hinv: &PathForm, p: &CoverVertex, n: usize) -> Vec<CoverVertex> {
    let mut pts = vec![p.clone()];
    for _ in 0..n {
        let next = act(pi, h, pts.last().unwrap());
        pts.push(next);
        let prev = act(pi, hinv, &pts[0]);
        pts.insert(0, prev);
    }
    let mut out = vec![pts[0].clone()];
    for w in pts.windows(2) {
        out.extend(geodesic(&w[0], &w[1]).into_iter().skip(1));
    }
    out
}

enum Comparison {
    Finite(Overlap),
    Coincide,
    Undetermined,
}

fn compare_axes(pi: &Pi1, h: &PathForm, hinv: &PathForm, p: &CoverVertex, s: &PathForm, ell: usize, budget: usize) -> Comparison {
    let mut n = 1;
    loop {
        let w1 = axis_window(pi, h, hinv, p, n);
        let w2: Vec<CoverVertex> = w1.iter().map(|x| act(pi, s, x)).collect();
        let pos2: HashMap<&CoverVertex, usize> = w2.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let shared: Vec<usize> = (0..w1.len()).filter(|&i| pos2.contains_key(&w1[i])).collect();
        let last = w1.len() - 1;
        let interior2 = |x: &CoverVertex| pos2.get(x).is_some_and(|&j| j > 0 && j < last);
        let exhausted = n * ell > budget;
        if let (Some(&i), Some(&j)) = (shared.first(), shared.last()) {
            let (a, b) = (&w1[i], &w1[j]);
            let ends_a = i > 0 && interior2(a);
            let ends_b = j < last && interior2(b);
            if ends_a && ends_b {
                return Comparison::Finite(Overlap::Segment { from: a.clone(), to: b.clone() });
            }
            if exhausted {
                return if !ends_a && !ends_b { Comparison::Coincide } else { Comparison::Undetermined };
            }
        } else {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, x) in w1.iter().enumerate() {
                for (j, y) in w2.iter().enumerate() {
                    let d = tree_distance(x, y);
                    if best.is_none_or(|(b, ..)| d < b) {
                        best = Some((d, i, j));
                    }
                }
            }
            let (_, i, j) = best.unwrap();
            if i > 0 && i < last && j > 0 && j < last {
                return Comparison::Finite(Overlap::Bridge { from: w1[i].clone(), to: w2[j].clone() });
            }
            if exhausted {
                return Comparison::Undetermined;
            }
        }
        n += 1;
    }
}

fn confirm(pi: &Pi1, h: &GroupWord, hc: &GroupWord) -> Result<Option<Confirmation>> {
    if pi.equals(hc, h)? {
        return Ok(Some(Confirmation::Equal));
    }
    if pi.equals(hc, &pi.inverse(h))? {
        return Ok(Some(Confirmation::Inverse));
    }
    if pi.equals(&hc.concat(h), &h.concat(hc))? {
        return Ok(Some(Confirmation::Commutes));
    }
    Ok(None)
}

/// Decides whether the subgroup generated by `gens` fixes a vertex, preserves
/// a pair of ends, or acts non-elementarily, comparing axes up to distance
/// `budget` along them. Every positive verdict carries checkable data.
pub fn classify_action(pi: &Pi1, gens: &[GroupWord], budget: usize) -> Result<ActionClassification> {
    if gens.is_empty() {
        return Err(Error::Parse("classify_action needs at least one generator".into()));
    }
    let mut candidates: Vec<GroupWord> = gens.to_vec();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            candidates.push(gens[i].concat(&gens[j]));
        }
    }
    let forms: Vec<PathForm> = candidates.iter().map(|w| pi.path_form(w)).collect::<Result<_>>()?;
    let lengths: Vec<usize> = forms.iter().map(|f| translation_length(pi, f).0).collect();
    let Some(hi) = lengths.iter().position(|&l| l > 0) else {
        let verdict = match common_fixed_vertex(pi, &forms[..gens.len()]) {
            Some(v) => Verdict::FixedVertex(v),
            None => Verdict::Inconclusive { budget },
        };
        return Ok(ActionClassification { verdict, lengths });
    };
    let h = candidates[hi].clone();
    let hf = &forms[hi];
    let hinv = pi.path_form(&pi.inverse(&h))?;
    let (ell, p) = translation_length(pi, hf);
    let mut confirmations = Vec::new();
    let mut all_coincide = true;
    for (si, s) in gens.iter().enumerate() {
        let sf = &forms[si];
        let hc = s.concat(&h).concat(&pi.inverse(s));
        match compare_axes(pi, hf, &hinv, &p, sf, ell, budget) {
            Comparison::Finite(overlap) => {
                let overlap_length = match &overlap {
                    Overlap::Segment { from, to } => tree_distance(from, to),
                    Overlap::Bridge { .. } => 0,
                };
                let power = overlap_length / ell + 1;
                let cert = PingPong {
                    h: h.clone(),
                    conjugator: si,
                    h_conj: hc,
                    length_h: ell,
                    length_h_conj: ell,
                    overlap,
                    overlap_length,
                    power_h: power,
                    power_h_conj: power,
                };
                let verdict = Verdict::NonElementary(cert);
                let out = ActionClassification { verdict, lengths };
                if verify_classification(pi, gens, &out)? {
                    return Ok(out);
                }
                return Ok(ActionClassification { verdict: Verdict::Inconclusive { budget }, lengths: out.lengths });
            }
            Comparison::Coincide => match confirm(pi, &h, &hc)? {
                Some(c) => confirmations.push(c),
                None => all_coincide = false,
            },
            Comparison::Undetermined => all_coincide = false,
        }
    }
    let verdict = if all_coincide {
        Verdict::ElementaryEndPair { h, confirmations, window: budget }
    } else {
        Verdict::Inconclusive { budget }
    };
    Ok(ActionClassification { verdict, lengths })
}

/// Re-checks a classification from its certificate alone, using the
/// `d(w²x, x) − d(wx, x)` translation length and local branching tests
/// instead of the axis windows used by the classifier.
pub fn verify_classification(pi: &Pi1, gens: &[GroupWord], c: &ActionClassification) -> Result<bool> {
    let forms: Vec<PathForm> = gens.iter().map(|w| pi.path_form(w)).collect::<Result<_>>()?;
    match &c.verdict {
        Verdict::FixedVertex(v) => Ok(forms.iter().all(|f| act(pi, f, v) == *v)),
        Verdict::Inconclusive { .. } => Ok(true),
        Verdict::ElementaryEndPair { h, confirmations, .. } => {
            if confirmations.len() != gens.len() {
                return Ok(false);
            }
            let hf = pi.path_form(h)?;
            if translation_length_squared_formula(pi, &hf) == 0 {
                return Ok(false);
            }
            for (s, conf) in gens.iter().zip(confirmations) {
                let hc = s.concat(h).concat(&pi.inverse(s));
                let ok = match conf {
                    Confirmation::Equal => pi.equals(&hc, h)?,
                    Confirmation::Inverse => pi.equals(&hc, &pi.inverse(h))?,
                    Confirmation::Commutes => pi.equals(&hc.concat(h), &h.concat(&hc))?,
                };
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Verdict::NonElementary(cert) => verify_ping_pong(pi, gens, cert),
    }
}

fn verify_ping_pong(pi: &Pi1, gens: &[GroupWord], cert: &PingPong) -> Result<bool> {
    let Some(s) = gens.get(cert.conjugator) else { return Ok(false) };
    let expected = s.concat(&cert.h).concat(&pi.inverse(s));
    if !pi.equals(&expected, &cert.h_conj)? {
        return Ok(false);
    }
    let h1 = pi.path_form(&cert.h)?;
    let h2 = pi.path_form(&cert.h_conj)?;
    let (l1, l2) = (translation_length_squared_formula(pi, &h1), translation_length_squared_formula(pi, &h2));
    if l1 == 0 || l2 == 0 || l1 != cert.length_h || l2 != cert.length_h_conj {
        return Ok(false);
    }
    let on1 = |x: &CoverVertex| tree_distance(&act(pi, &h1, x), x) == l1;
    let on2 = |x: &CoverVertex| tree_distance(&act(pi, &h2, x), x) == l2;
    let ok = match &cert.overlap {
        Overlap::Segment { from, to } => {
            let seg = geodesic(from, to);
            if seg.len() - 1 != cert.overlap_length || !seg.iter().all(|x| on1(x) && on2(x)) {
                return Ok(false);
            }
            let inside: BTreeSet<&CoverVertex> = seg.iter().collect();
            // The intersection of the axes cannot be extended past either end.
            [from, to].iter().all(|end| neighbors(pi, end).iter().all(|n| inside.contains(n) || !(on1(n) && on2(n))))
        }
        Overlap::Bridge { from, to } => {
            if from == to || cert.overlap_length != 0 || !on1(from) || !on2(to) {
                return Ok(false);
            }
            let path = geodesic(from, to);
            !on1(&path[1]) && !on2(&path[path.len() - 2])
        }
    };
    Ok(ok && cert.power_h * l1 > cert.overlap_length && cert.power_h_conj * l2 > cert.overlap_length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::FiniteGroup;
    use crate::fundgrp::parse_word;
    use crate::gog::{EdgeMap, GraphOfGroups, GroupRef};
    use crate::graph::Graph;

    fn segment(p: usize, q: usize) -> Pi1 {
        let graph = Graph::new(&["a", "b"], &[("e", "a", "b", "e~"), ("e~", "b", "a", "e")]).unwrap();
        let one = GroupRef::enumerated("1", FiniteGroup::cyclic(1));
        let g = GraphOfGroups::new(
            graph,
            vec![GroupRef::enumerated("A", FiniteGroup::cyclic(p)), GroupRef::enumerated("B", FiniteGroup::cyclic(q))],
            vec![one.clone(), one],
            vec![EdgeMap::Table(vec![0]), EdgeMap::Table(vec![0])],
            None,
            None,
            None,
        )
        .unwrap();
        Pi1::new(&g).unwrap()
    }

    fn free2() -> Pi1 {
        let graph = Graph::new(&["v"], &[("t1", "v", "v", "t1~"), ("t1~", "v", "v", "t1"), ("t2", "v", "v", "t2~"), ("t2~", "v", "v", "t2")]).unwrap();
        let one = GroupRef::enumerated("1", FiniteGroup::cyclic(1));
        let g = GraphOfGroups::new(graph, vec![one.clone()], vec![one; 4], vec![EdgeMap::Table(vec![0]); 4], None, None, None).unwrap();
        Pi1::new(&g).unwrap()
    }

    #[test]
    fn ball_sizes() {
        let d = segment(2, 2);
        let b = build_ball(&d, 2).unwrap();
        assert_eq!(b.len(), 5);
        let f = free2();
        assert_eq!(build_ball(&f, 1).unwrap().len(), 5);
        let psl = segment(2, 3);
        let b = build_ball(&psl, 2).unwrap();
        assert_eq!(b.degree(0), 2);
        for (i, v) in b.vertices().iter().enumerate() {
            if v.depth() < 2 {
                let expect = if v.kind(&psl) == 0 { 2 } else { 3 };
                assert_eq!(b.degree(i), expect);
            }
        }
    }

    #[test]
    fn dinf_isometries() {
        let d = segment(2, 2);
        let a = parse_word(&d.gog, "a:(1,2)").unwrap();
        let ab = parse_word(&d.gog, "a:(1,2) * b:(1,2)").unwrap();
        let r = isometry_report(&d, &a).unwrap();
        assert_eq!(r.kind, IsometryKind::Elliptic);
        assert_eq!(r.fixed_vertex, Some(CoverVertex::base()));
        let r = isometry_report(&d, &ab).unwrap();
        assert_eq!((r.kind, r.translation_length), (IsometryKind::Hyperbolic, 2));
        let ball = build_ball(&d, 2).unwrap();
        let img = ball.act(&d, &ab, ball.base()).unwrap();
        assert_eq!(ball.distance(&img, ball.base()).unwrap(), 2);
        assert_eq!(ball.act(&d, &a, ball.base()).unwrap(), CoverVertex::base());
    }

    #[test]
    fn classifier_examples() {
        let d = segment(2, 2);
        let gens = vec![parse_word(&d.gog, "a:(1,2)").unwrap(), parse_word(&d.gog, "b:(1,2)").unwrap()];
        let c = classify_action(&d, &gens, 8).unwrap();
        assert_eq!(c.name(), "ElementaryEndPair");
        assert!(verify_classification(&d, &gens, &c).unwrap());

        let f = free2();
        let gens = vec![parse_word(&f.gog, "t1").unwrap(), parse_word(&f.gog, "t2").unwrap()];
        let c = classify_action(&f, &gens, 8).unwrap();
        assert_eq!(c.name(), "NonElementary");
        assert!(verify_classification(&f, &gens, &c).unwrap());

        let gens = vec![parse_word(&d.gog, "a:(1,2)").unwrap()];
        assert_eq!(classify_action(&d, &gens, 8).unwrap().name(), "FixedVertex");
    }
}
