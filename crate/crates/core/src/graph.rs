//! Graphs with an edge involution, orientations, spanning trees and the
//! signed path indicator `epsilon`.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// An oriented edge. `bar` is the index of the reverse edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub bar: usize,
}

/// A graph in Serre's sense: oriented edges closed under a fixed-point-free
/// involution. Vertices and edges are kept sorted by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from vertex ids and `(id, tail, head, bar_id)` tuples.
    /// Ids are sorted; nothing beyond referential integrity is checked here
    /// (see [`Graph::violations`]).
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let es: Vec<(String, String, String, String)> = edges
            .iter()
            .map(|(a, b, c, d)| (a.to_string(), b.to_string(), c.to_string(), d.to_string()))
            .collect();
        Self::from_owned(vs, es)
    }

    pub fn from_owned(mut vertices: Vec<String>, mut edges: Vec<(String, String, String, String)>) -> Result<Self> {
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse("duplicate vertex id".into()));
        }
        edges.sort_by(|a, b| a.0.cmp(&b.0));
        if edges.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse("duplicate edge id".into()));
        }
        let vidx = |v: &str| vertices.binary_search_by(|x| x.as_str().cmp(v)).map_err(|_| Error::UnknownVertex(v.to_string()));
        let eidx = |e: &str| edges.binary_search_by(|x| x.0.as_str().cmp(e)).map_err(|_| Error::UnknownEdge(e.to_string()));
        let mut out = Vec::with_capacity(edges.len());
        for (id, tail, head, bar) in &edges {
            out.push(Edge { id: id.clone(), tail: vidx(tail)?, head: vidx(head)?, bar: eidx(bar)? });
        }
        Ok(Graph { vertices, edges: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.vertices
            .binary_search_by(|x| x.as_str().cmp(id))
            .map_err(|_| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges
            .binary_search_by(|x| x.id.as_str().cmp(id))
            .map_err(|_| Error::UnknownEdge(id.to_string()))
    }

    pub fn head(&self, e: usize) -> usize {
        self.edges[e].head
    }

    pub fn tail(&self, e: usize) -> usize {
        self.edges[e].tail
    }

    pub fn bar(&self, e: usize) -> usize {
        self.edges[e].bar
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.head(e) == self.tail(e)
    }

    /// Outgoing edges of `v` in ascending id order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].tail == v)
    }

    /// Structural axiom violations: involution, incidence, connectivity.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.vertices.is_empty() {
            out.push("graph has no vertices".to_string());
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.bar == i {
                out.push(format!("involution has fixed point: bar({}) = {}", e.id, e.id));
                continue;
            }
            if self.edges[e.bar].bar != i {
                out.push(format!("bar is not an involution at {}", e.id));
            }
            if self.edges[e.bar].head != e.tail {
                out.push(format!("head(bar({})) != tail({})", e.id, e.id));
            }
        }
        if !self.vertices.is_empty() && !self.is_connected() {
            out.push("graph is disconnected".to_string());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                for (a, b) in [(e.tail, e.head), (e.head, e.tail)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// One edge from each `{e, bar(e)}` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    chosen: Vec<bool>,
}

impl Orientation {
    /// The orientation containing, from each pair, the edge with smaller id.
    pub fn canonical(g: &Graph) -> Self {
        Orientation { chosen: (0..g.edge_count()).map(|e| e <= g.bar(e)).collect() }
    }

    pub fn from_edges(g: &Graph, edges: &[usize]) -> Self {
        let mut chosen = vec![false; g.edge_count()];
        for &e in edges {
            chosen[e] = true;
        }
        Orientation { chosen }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.chosen[e]
    }

    /// Chosen edges in ascending id order.
    pub fn edges(&self) -> Vec<usize> {
        (0..self.chosen.len()).filter(|&e| self.chosen[e]).collect()
    }

    pub fn violations(&self, g: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        if self.chosen.len() != g.edge_count() {
            return vec!["orientation does not cover the edge set".to_string()];
        }
        for e in 0..g.edge_count() {
            let b = g.bar(e);
            if e < b || b == e {
                match (self.chosen[e], self.chosen[b]) {
                    (true, true) if b != e => out.push(format!("orientation contains both {} and its reverse", g.edge(e).id)),
                    (false, false) => out.push(format!("orientation contains neither {} nor its reverse", g.edge(e).id)),
                    _ => {}
                }
            }
        }
        out
    }
}

/// A spanning tree, stored as a membership flag on both orientations of
/// every tree edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    in_tree: Vec<bool>,
}

impl SpanningTree {
    pub fn from_edges(g: &Graph, edges: &[usize]) -> Self {
        let mut in_tree = vec![false; g.edge_count()];
        for &e in edges {
            in_tree[e] = true;
            in_tree[g.bar(e)] = true;
        }
        SpanningTree { in_tree }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    /// Tree edge pairs, each listed once by its smaller index.
    pub fn pairs(&self, g: &Graph) -> Vec<usize> {
        (0..g.edge_count()).filter(|&e| self.in_tree[e] && e <= g.bar(e)).collect()
    }

    pub fn violations(&self, g: &Graph) -> Vec<String> {
        let mut out = Vec::new();
        if self.in_tree.len() != g.edge_count() {
            return vec!["spanning tree does not match the edge set".to_string()];
        }
        let pairs = self.pairs(g);
        if pairs.iter().any(|&e| g.is_loop(e)) {
            out.push("spanning tree contains a loop".to_string());
        }
        if pairs.len() + 1 != g.vertex_count() {
            out.push(format!(
                "spanning tree has {} edge pairs, expected {}",
                pairs.len(),
                g.vertex_count().saturating_sub(1)
            ));
        }
        // Union-find for acyclicity and spanning.
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &e in &pairs {
            let (a, b) = (find(&mut parent, g.tail(e)), find(&mut parent, g.head(e)));
            if a == b {
                if !g.is_loop(e) {
                    out.push("spanning tree contains a cycle".to_string());
                }
            } else {
                parent[a] = b;
            }
        }
        let roots = (0..g.vertex_count()).filter(|&v| find(&mut parent, v) == v).count();
        if roots > 1 {
            out.push("spanning tree does not span".to_string());
        }
        out
    }

    /// Oriented edge path from `v` to `w` inside the tree.
    pub fn path(&self, g: &Graph, v: usize, w: usize) -> Vec<usize> {
        let mut via: Vec<Option<usize>> = vec![None; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        seen[v] = true;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            if x == w {
                break;
            }
            for e in g.out_edges(x) {
                if self.in_tree[e] && !seen[g.head(e)] {
                    seen[g.head(e)] = true;
                    via[g.head(e)] = Some(e);
                    queue.push_back(g.head(e));
                }
            }
        }
        let mut path = Vec::new();
        let mut x = w;
        while x != v {
            let e = via[x].expect("tree path exists in a spanning tree");
            path.push(e);
            x = g.tail(e);
        }
        path.reverse();
        path
    }
}

/// Deterministic spanning tree: breadth-first search from the smallest vertex
/// id, scanning outgoing edges in ascending id order.
pub fn spanning_tree(g: &Graph) -> Result<SpanningTree> {
    if !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let mut tree = Vec::new();
    if g.vertex_count() == 0 {
        return Ok(SpanningTree::from_edges(g, &tree));
    }
    let mut seen = vec![false; g.vertex_count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for e in g.out_edges(v) {
            let h = g.head(e);
            if !seen[h] {
                seen[h] = true;
                tree.push(e);
                queue.push_back(h);
            }
        }
    }
    Ok(SpanningTree::from_edges(g, &tree))
}

/// `+1` if `e` lies on the tree path from `v` to `w` pointing away from `v`,
/// `-1` if it lies on it pointing toward `v`, `0` otherwise.
pub fn epsilon(g: &Graph, tree: &SpanningTree, v: usize, w: usize, e: usize) -> Result<i8> {
    if v >= g.vertex_count() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    if w >= g.vertex_count() {
        return Err(Error::UnknownVertex(w.to_string()));
    }
    if e >= g.edge_count() {
        return Err(Error::UnknownEdge(e.to_string()));
    }
    let path = tree.path(g, v, w);
    Ok(if path.contains(&e) {
        1
    } else if path.contains(&g.bar(e)) {
        -1
    } else {
        0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_abc() -> Graph {
        Graph::new(
            &["a", "b", "c"],
            &[("e1", "a", "b", "e1~"), ("e1~", "b", "a", "e1"), ("e2", "b", "c", "e2~"), ("e2~", "c", "b", "e2")],
        )
        .unwrap()
    }

    #[test]
    fn epsilon_signs() {
        let g = path_abc();
        let t = spanning_tree(&g).unwrap();
        let (a, b, c) = (0, 1, 2);
        let e1 = g.edge_index("e1").unwrap();
        let e2 = g.edge_index("e2").unwrap();
        assert_eq!(epsilon(&g, &t, a, c, e1).unwrap(), 1);
        assert_eq!(epsilon(&g, &t, c, a, e1).unwrap(), -1);
        assert_eq!(epsilon(&g, &t, a, b, e2).unwrap(), 0);
        assert!(epsilon(&g, &t, a, 7, e2).is_err());
    }

    #[test]
    fn spanning_trees() {
        let seg = Graph::new(&["a", "b"], &[("e", "a", "b", "e~"), ("e~", "b", "a", "e")]).unwrap();
        let t = spanning_tree(&seg).unwrap();
        assert_eq!(t.pairs(&seg), vec![0]);
        let lp = Graph::new(&["v"], &[("l", "v", "v", "l~"), ("l~", "v", "v", "l")]).unwrap();
        assert!(spanning_tree(&lp).unwrap().pairs(&lp).is_empty());
        let theta = Graph::new(
            &["a", "b"],
            &[
                ("e1", "a", "b", "f1"),
                ("e2", "a", "b", "f2"),
                ("e3", "a", "b", "f3"),
                ("f1", "b", "a", "e1"),
                ("f2", "b", "a", "e2"),
                ("f3", "b", "a", "e3"),
            ],
        )
        .unwrap();
        let t = spanning_tree(&theta).unwrap();
        assert_eq!(t.pairs(&theta), vec![theta.edge_index("e1").unwrap()]);
        assert!(t.violations(&theta).is_empty());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::new(&["a", "b"], &[]).unwrap();
        assert_eq!(spanning_tree(&g).unwrap_err(), Error::DisconnectedGraph);
    }

    #[test]
    fn involution_fixed_point_reported() {
        let g = Graph::new(&["a"], &[("e", "a", "a", "e")]).unwrap();
        assert!(g.violations().iter().any(|v| v.contains("involution has fixed point")));
    }
}
