//! Graphs of groups: data model, validation and reduction.
//!
//! Conventions: every oriented edge `e` carries a monomorphism
//! `sigma(e): G_e -> G_{head(e)}`, and `G_e = G_{bar(e)}`. For an edge `e` of
//! the orientation `A`, the map into the tail vertex group is
//! `theta(e) = sigma(bar(e))`. Note that this differs from Serre's book, which
//! identifies the edge group with its image in `G_{tail}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fingrp::{check_hom, FiniteGroup, GroupHom, HomViolation};
use crate::graph::{spanning_tree, Graph, Orientation, SpanningTree};
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

impl Cardinality {
    pub fn is_finite(self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }

    pub fn mul(self, other: Cardinality) -> Cardinality {
        match (self, other) {
            (Cardinality::Finite(a), Cardinality::Finite(b)) => Cardinality::Finite(a * b),
            _ => Cardinality::Infinite,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => f.write_str("infinite"),
        }
    }
}

/// A group known only through user assertions. None of these flags is ever
/// inferred by the toolkit.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolicGroup {
    pub cardinality: Option<Cardinality>,
    pub beta1_zero: bool,
    pub amenable: bool,
    pub property_t: bool,
    pub presentation: Option<String>,
    /// Asserted l2-Betti numbers by degree.
    pub betti: BTreeMap<u32, Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Enumerated(Arc<FiniteGroup>),
    Symbolic(Arc<SymbolicGroup>),
}

/// A named local group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRef {
    pub name: String,
    pub kind: GroupKind,
}

impl GroupRef {
    pub fn enumerated(name: &str, g: FiniteGroup) -> Self {
        GroupRef { name: name.to_string(), kind: GroupKind::Enumerated(Arc::new(g)) }
    }

    pub fn symbolic(name: &str, s: SymbolicGroup) -> Self {
        GroupRef { name: name.to_string(), kind: GroupKind::Symbolic(Arc::new(s)) }
    }

    pub fn as_enumerated(&self) -> Option<&Arc<FiniteGroup>> {
        match &self.kind {
            GroupKind::Enumerated(g) => Some(g),
            GroupKind::Symbolic(_) => None,
        }
    }

    pub fn as_symbolic(&self) -> Option<&SymbolicGroup> {
        match &self.kind {
            GroupKind::Symbolic(s) => Some(s),
            GroupKind::Enumerated(_) => None,
        }
    }

    pub fn cardinality(&self) -> Option<Cardinality> {
        match &self.kind {
            GroupKind::Enumerated(g) => Some(Cardinality::Finite(g.order() as u64)),
            GroupKind::Symbolic(s) => s.cardinality,
        }
    }
}

/// The monomorphism attached to an oriented edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeMap {
    /// Explicit element map between enumerated groups (source element order).
    Table(Vec<usize>),
    /// Asserted index of the image in the head group; `None` when unknown.
    Asserted { index: Option<Cardinality> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub graph: Graph,
    pub vertex_groups: Vec<GroupRef>,
    /// Indexed by oriented edge; equal on `e` and `bar(e)`.
    pub edge_groups: Vec<GroupRef>,
    /// `sigma[e]: G_e -> G_{head(e)}`.
    pub sigma: Vec<EdgeMap>,
    pub orientation: Orientation,
    pub tree: SpanningTree,
    pub base: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub edge: String,
    pub removed_vertex: String,
    pub merged_into: String,
}

pub type ContractionLog = Vec<Contraction>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedCheck {
    pub reduced: bool,
    pub witness: Option<usize>,
}

impl GraphOfGroups {
    /// Assembles a graph of groups with the canonical orientation, the
    /// deterministic spanning tree and the smallest vertex as base, unless
    /// given explicitly.
    pub fn new(
        graph: Graph,
        vertex_groups: Vec<GroupRef>,
        edge_groups: Vec<GroupRef>,
        sigma: Vec<EdgeMap>,
        orientation: Option<Orientation>,
        tree: Option<SpanningTree>,
        base: Option<usize>,
    ) -> Result<Self> {
        if vertex_groups.len() != graph.vertex_count() || edge_groups.len() != graph.edge_count() || sigma.len() != graph.edge_count() {
            return Err(Error::InvalidGraphOfGroups("group or map count does not match the graph".into()));
        }
        let orientation = orientation.unwrap_or_else(|| Orientation::canonical(&graph));
        let tree = match tree {
            Some(t) => t,
            None => spanning_tree(&graph)?,
        };
        Ok(GraphOfGroups { graph, vertex_groups, edge_groups, sigma, orientation, tree, base: base.unwrap_or(0) })
    }

    pub fn vertex_group(&self, v: usize) -> &GroupRef {
        &self.vertex_groups[v]
    }

    pub fn edge_group(&self, e: usize) -> &GroupRef {
        &self.edge_groups[e]
    }

    /// Edges of the orientation `A`, ascending.
    pub fn oriented_edges(&self) -> Vec<usize> {
        self.orientation.edges()
    }

    pub fn theta(&self, e: usize) -> &EdgeMap {
        &self.sigma[self.graph.bar(e)]
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.tree.contains(e)
    }

    pub fn all_enumerated(&self) -> bool {
        self.vertex_groups.iter().chain(&self.edge_groups).all(|g| g.as_enumerated().is_some())
    }

    /// First symbolic group, if any, by name.
    pub fn first_symbolic(&self) -> Option<&str> {
        self.vertex_groups
            .iter()
            .chain(&self.edge_groups)
            .find(|g| g.as_enumerated().is_none())
            .map(|g| g.name.as_str())
    }

    /// The verified homomorphism `sigma(e)`, for enumerated data.
    pub fn sigma_hom(&self, e: usize) -> Option<GroupHom> {
        let src = self.edge_groups[e].as_enumerated()?;
        let dst = self.vertex_groups[self.graph.head(e)].as_enumerated()?;
        match &self.sigma[e] {
            EdgeMap::Table(m) => check_hom(m, src, dst).ok(),
            EdgeMap::Asserted { .. } => None,
        }
    }

    /// Index `[G_{head(e)} : sigma(e)(G_e)]`.
    pub fn index(&self, e: usize) -> Result<Cardinality> {
        let id = || self.graph.edge(e).id.clone();
        match &self.sigma[e] {
            EdgeMap::Asserted { index } => index.ok_or_else(|| Error::UndecidableIndex(id())),
            EdgeMap::Table(_) => {
                let h = self.sigma_hom(e).ok_or_else(|| Error::InvalidGraphOfGroups(format!("sigma({}) is not a homomorphism", id())))?;
                Ok(Cardinality::Finite(h.index() as u64))
            }
        }
    }

    /// Checks every structural axiom and lists the violations.
    pub fn validate(&self) -> ValidationReport {
        let g = &self.graph;
        let mut v = g.violations();
        if self.base >= g.vertex_count() {
            v.push("base vertex out of range".to_string());
        }
        v.extend(self.orientation.violations(g));
        v.extend(self.tree.violations(g));
        for e in 0..g.edge_count() {
            let id = &g.edge(e).id;
            let b = g.bar(e);
            if b < g.edge_count() && self.edge_groups[e] != self.edge_groups[b] {
                v.push(format!("edge group of {id} differs from that of its reverse"));
            }
            let src = self.edge_groups[e].as_enumerated();
            let dst = self.vertex_groups[g.head(e)].as_enumerated();
            match (&self.sigma[e], src, dst) {
                (EdgeMap::Table(m), Some(s), Some(d)) => match check_hom(m, s, d) {
                    Ok(h) if !h.injective => v.push(format!("sigma not injective on {id}")),
                    Ok(_) => {}
                    Err(HomViolation::NotMultiplicative { x, y }) => v.push(format!(
                        "sigma not a homomorphism on {id} at ({}, {})",
                        s.label(x),
                        s.label(y)
                    )),
                    Err(other) => v.push(format!("sigma malformed on {id}: {other:?}")),
                },
                (EdgeMap::Table(_), _, _) => v.push(format!("explicit sigma on {id} requires enumerated groups")),
                (EdgeMap::Asserted { .. }, Some(_), Some(_)) => {
                    v.push(format!("sigma on {id} must be explicit between enumerated groups"))
                }
                (EdgeMap::Asserted { index: Some(Cardinality::Finite(0)) }, _, _) => {
                    v.push(format!("asserted index of sigma on {id} is zero"))
                }
                (EdgeMap::Asserted { .. }, _, _) => {}
            }
        }
        ValidationReport { violations: v }
    }

    /// Whether every non-loop edge has both indices at least 2.
    pub fn is_reduced(&self) -> Result<ReducedCheck> {
        for e in 0..self.graph.edge_count() {
            if self.graph.is_loop(e) {
                continue;
            }
            if self.index(e)? < Cardinality::Finite(2) {
                return Ok(ReducedCheck { reduced: false, witness: Some(e) });
            }
        }
        Ok(ReducedCheck { reduced: true, witness: None })
    }

    fn contractible(&self, e: usize) -> Result<bool> {
        if self.graph.is_loop(e) {
            return Ok(false);
        }
        match &self.sigma[e] {
            EdgeMap::Asserted { index: None } => Err(Error::UndecidableContraction(self.graph.edge(e).id.clone())),
            _ => Ok(self.index(e)? == Cardinality::Finite(1)),
        }
    }

    /// Repeatedly contracts the smallest non-loop edge whose `sigma` is onto,
    /// restarting the scan after each contraction.
    pub fn reduce(&self) -> Result<(GraphOfGroups, ContractionLog)> {
        let mut cur = self.clone();
        let mut log = Vec::new();
        'outer: loop {
            for e in 0..cur.graph.edge_count() {
                if cur.contractible(e)? {
                    let (next, entry) = cur.contract(e)?;
                    log.push(entry);
                    cur = next;
                    continue 'outer;
                }
            }
            return Ok((cur, log));
        }
    }

    /// Contracts `e` (with `sigma(e)` bijective): the head vertex disappears
    /// and its group is rewritten into the tail group through
    /// `theta(e) ∘ sigma(e)^{-1}`.
    fn contract(&self, e: usize) -> Result<(GraphOfGroups, Contraction)> {
        let g = &self.graph;
        let (u, w, be) = (g.tail(e), g.head(e), g.bar(e));
        let sigma_inv: Option<Vec<Option<usize>>> = self.sigma_hom(e).map(|h| h.inverse_table());
        let theta_map = match &self.sigma[be] {
            EdgeMap::Table(m) => Some(m.clone()),
            EdgeMap::Asserted { .. } => None,
        };
        let theta_index = self.index(be).ok();

        let mut vertices = Vec::new();
        let mut vgroups = Vec::new();
        for x in 0..g.vertex_count() {
            if x != w {
                vertices.push(g.vertex_id(x).to_string());
                vgroups.push((g.vertex_id(x).to_string(), self.vertex_groups[x].clone()));
            }
        }
        let rename = |x: usize| if x == w { g.vertex_id(u).to_string() } else { g.vertex_id(x).to_string() };
        let mut edges = Vec::new();
        let mut per_edge: Vec<(String, GroupRef, EdgeMap, bool)> = Vec::new();
        for f in 0..g.edge_count() {
            if f == e || f == be {
                continue;
            }
            let ef = g.edge(f);
            edges.push((ef.id.clone(), rename(ef.tail), rename(ef.head), g.edge(ef.bar).id.clone()));
            let map = if ef.head == w {
                match (&self.sigma[f], &sigma_inv, &theta_map) {
                    (EdgeMap::Table(m), Some(inv), Some(th)) => EdgeMap::Table(
                        m.iter()
                            .map(|&x| th[inv[x].expect("sigma(e) is onto")])
                            .collect(),
                    ),
                    _ => {
                        let idx_f = self.index(f).ok();
                        EdgeMap::Asserted { index: idx_f.zip(theta_index).map(|(a, b)| a.mul(b)) }
                    }
                }
            } else {
                self.sigma[f].clone()
            };
            per_edge.push((ef.id.clone(), self.edge_groups[f].clone(), map, self.orientation.contains(f)));
        }
        let graph = Graph::from_owned(vertices.clone(), edges)?;
        let mut vertex_groups = Vec::new();
        for id in graph.vertex_ids() {
            vertex_groups.push(vgroups.iter().find(|(n, _)| n == id).expect("kept vertex").1.clone());
        }
        let mut edge_groups = Vec::new();
        let mut sigma = Vec::new();
        let mut chosen = Vec::new();
        for (i, ed) in graph.edges().iter().enumerate() {
            let (_, grp, map, inc) = per_edge.iter().find(|(n, ..)| *n == ed.id).expect("kept edge");
            edge_groups.push(grp.clone());
            sigma.push(map.clone());
            if *inc {
                chosen.push(i);
            }
        }
        let base_id = rename(self.base);
        let base = graph.vertex(&base_id)?;
        let orientation = Orientation::from_edges(&graph, &chosen);
        let tree = spanning_tree(&graph)?;
        let out = GraphOfGroups { graph, vertex_groups, edge_groups, sigma, orientation, tree, base };
        let entry = Contraction {
            edge: g.edge(e).id.clone(),
            removed_vertex: g.vertex_id(w).to_string(),
            merged_into: g.vertex_id(u).to_string(),
        };
        Ok((out, entry))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::FiniteGroup;

    fn segment(ga: GroupRef, gb: GroupRef, ge: GroupRef, sigma: Vec<usize>, theta: Vec<usize>) -> GraphOfGroups {
        let graph = Graph::new(&["a", "b"], &[("e", "a", "b", "e~"), ("e~", "b", "a", "e")]).unwrap();
        GraphOfGroups::new(
            graph,
            vec![ga, gb],
            vec![ge.clone(), ge],
            vec![EdgeMap::Table(sigma), EdgeMap::Table(theta)],
            None,
            None,
            None,
        )
        .unwrap()
    }

    fn z2() -> GroupRef {
        GroupRef::enumerated("Z2", FiniteGroup::cyclic(2))
    }

    fn one() -> GroupRef {
        GroupRef::enumerated("1", FiniteGroup::trivial())
    }

    #[test]
    fn smallest_amalgam_is_valid() {
        let g = segment(z2(), z2(), one(), vec![0], vec![0]);
        assert!(g.validate().is_valid(), "{:?}", g.validate());
        assert!(g.is_reduced().unwrap().reduced);
        let (r, log) = g.reduce().unwrap();
        assert_eq!(r, g);
        assert!(log.is_empty());
    }

    #[test]
    fn non_injective_sigma_reported() {
        let g = segment(z2(), z2(), z2(), vec![0, 0], vec![0, 1]);
        assert!(g.validate().violations.iter().any(|v| v.contains("sigma not injective")));
    }

    #[test]
    fn contraction_merges_into_tail() {
        // G_e = G_b = Z/2 (sigma bijective), G_a = S3.
        let s3 = FiniteGroup::symmetric(3);
        let t = s3.element("(1,2)").unwrap();
        let g = segment(GroupRef::enumerated("S3", s3), z2(), z2(), vec![0, 1], vec![0, t]);
        assert!(g.validate().is_valid());
        let check = g.is_reduced().unwrap();
        assert!(!check.reduced);
        assert_eq!(check.witness, Some(0));
        let (r, log) = g.reduce().unwrap();
        assert_eq!(r.graph.vertex_count(), 1);
        assert_eq!(r.vertex_groups[0].name, "S3");
        assert_eq!(log.len(), 1);
        assert!(r.is_reduced().unwrap().reduced);
        assert_eq!(r.reduce().unwrap().0, r);
    }

    #[test]
    fn loops_are_never_contracted() {
        let graph = Graph::new(&["v"], &[("l", "v", "v", "l~"), ("l~", "v", "v", "l")]).unwrap();
        let g = GraphOfGroups::new(
            graph,
            vec![z2()],
            vec![z2(), z2()],
            vec![EdgeMap::Table(vec![0, 1]), EdgeMap::Table(vec![0, 1])],
            None,
            None,
            None,
        )
        .unwrap();
        assert!(g.is_reduced().unwrap().reduced);
        assert!(g.reduce().unwrap().1.is_empty());
    }

    #[test]
    fn symbolic_without_assertion_is_undecidable() {
        let graph = Graph::new(&["a", "b"], &[("e", "a", "b", "e~"), ("e~", "b", "a", "e")]).unwrap();
        let sym = GroupRef::symbolic("H", SymbolicGroup { cardinality: Some(Cardinality::Infinite), ..Default::default() });
        let g = GraphOfGroups::new(
            graph,
            vec![sym.clone(), sym.clone()],
            vec![sym.clone(), sym],
            vec![EdgeMap::Asserted { index: None }, EdgeMap::Asserted { index: Some(Cardinality::Infinite) }],
            None,
            None,
            None,
        )
        .unwrap();
        assert!(matches!(g.reduce(), Err(Error::UndecidableContraction(_))));
        assert!(matches!(g.is_reduced(), Err(Error::UndecidableIndex(_))));
    }
}
