//! The Haagerup cocycle `b(g) = 1_{g x0} − 1_{x0}` on oriented edges of the
//! Bass-Serre tree, the edge family `ω_e = δ_{bar ẽ} − δ_ẽ`, and exact checks
//! that the connecting map sends `ω` to `b`.

use std::collections::BTreeMap;

use num::{Signed, Zero};
use serde_json::{json, Value};

use crate::cover::{act, common_fixed_vertex, geodesic_edges, translation_length, CoverBall, CoverEdge, CoverVertex};
use crate::error::{Error, Result};
use crate::fundgrp::{GroupWord, Letter, PathForm, Pi1};
use crate::gmodule::{connecting_on_letter, extend_cocycle, integral, GModule};
use crate::rational::{fmt_q, q, Q};

/// Finitely supported function on oriented edges; both orientations are
/// independent coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeVector(pub BTreeMap<CoverEdge, Q>);

impl EdgeVector {
    pub fn zero() -> Self {
        EdgeVector::default()
    }

    pub fn delta(e: CoverEdge) -> Self {
        EdgeVector(BTreeMap::from([(e, q(1))]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn insert_add(&mut self, e: &CoverEdge, x: &Q) {
        let entry = self.0.entry(e.clone()).or_insert_with(Q::zero);
        *entry += x;
        if entry.is_zero() {
            self.0.remove(e);
        }
    }

    pub fn add(&self, other: &EdgeVector) -> EdgeVector {
        let mut out = self.clone();
        for (e, x) in &other.0 {
            out.insert_add(e, x);
        }
        out
    }

    pub fn sub(&self, other: &EdgeVector) -> EdgeVector {
        let mut out = self.clone();
        for (e, x) in &other.0 {
            out.insert_add(e, &-x);
        }
        out
    }

    pub fn neg(&self) -> EdgeVector {
        EdgeVector(self.0.iter().map(|(e, x)| (e.clone(), -x)).collect())
    }

    pub fn norm_sq(&self) -> Q {
        self.0.values().map(|x| x * x).sum()
    }

    pub fn support(&self) -> Vec<&CoverEdge> {
        self.0.keys().collect()
    }

    pub fn max_depth(&self) -> usize {
        self.0.keys().map(|e| e.tail.depth().max(e.head.depth())).max().unwrap_or(0)
    }

    /// `(g·f)(g·h) = f(h)`.
    pub fn act(&self, pi: &Pi1, g: &PathForm) -> EdgeVector {
        EdgeVector(
            self.0
                .iter()
                .map(|(e, x)| (CoverEdge { tail: act(pi, g, &e.tail), head: act(pi, g, &e.head), edge: e.edge }, x.clone()))
                .collect(),
        )
    }

    pub fn to_json(&self, pi: &Pi1) -> Value {
        let support: Vec<Value> = self
            .0
            .iter()
            .map(|(e, x)| {
                json!({
                    "tail": e.tail.label(pi),
                    "head": e.head.label(pi),
                    "type": pi.gog.graph.edge(e.edge).id,
                    "value": fmt_q(x),
                })
            })
            .collect();
        json!({ "support": support, "norm_sq": fmt_q(&self.norm_sq()) })
    }
}

/// `ℓ²(oriented edges)` as a module, acting through the tree.
pub struct EdgeModule<'a> {
    pub pi: &'a Pi1,
}

impl GModule for EdgeModule<'_> {
    type Elem = EdgeVector;

    fn zero(&self) -> EdgeVector {
        EdgeVector::zero()
    }

    fn add(&self, a: &EdgeVector, b: &EdgeVector) -> EdgeVector {
        a.add(b)
    }

    fn sub(&self, a: &EdgeVector, b: &EdgeVector) -> EdgeVector {
        a.sub(b)
    }

    fn act_vertex(&self, v: usize, g: usize, x: &EdgeVector) -> EdgeVector {
        let pf = self.pi.path_form(&GroupWord::vertex(v, g)).expect("valid letter");
        x.act(self.pi, &pf)
    }

    fn act_stable(&self, e: usize, exp: i8, x: &EdgeVector) -> EdgeVector {
        let pf = self.pi.path_form(&GroupWord::stable(e, exp)).expect("valid letter");
        x.act(self.pi, &pf)
    }
}

/// `1_{y} − 1_{x}`: `+1` on the edges of `[x, y]` pointing toward `y`, `−1`
/// on their reverses.
pub fn two_point(pi: &Pi1, x: &CoverVertex, y: &CoverVertex) -> EdgeVector {
    let mut v = EdgeVector::zero();
    for e in geodesic_edges(pi, x, y) {
        let r = e.reverse(pi);
        v.0.insert(e, q(1));
        v.0.insert(r, q(-1));
    }
    v
}

/// `b(g)` for an element given by its reduced path, with no ball bound.
pub fn cocycle_of(pi: &Pi1, g: &PathForm) -> EdgeVector {
    let x0 = CoverVertex::base();
    two_point(pi, &x0, &act(pi, g, &x0))
}

pub fn haagerup_cocycle(pi: &Pi1, ball: &CoverBall, w: &GroupWord) -> Result<EdgeVector> {
    let pf = pi.path_form(w)?;
    let depth = pf.steps.len();
    if depth > ball.radius {
        return Err(Error::OutOfBall { radius: ball.radius, depth });
    }
    Ok(cocycle_of(pi, &pf))
}

/// The standard lift `ẽ` of `e` in the orientation: from `t_e⁻¹ ṽ_{e−}` to
/// `ṽ_{e+}`.
pub fn lift_edge(pi: &Pi1, e: usize) -> CoverEdge {
    let g = &pi.gog.graph;
    let head = CoverVertex { steps: pi.lift_vertex(g.head(e)) };
    let tinv = pi.path_form(&GroupWord::stable(e, -1)).expect("stable letter");
    let tail = act(pi, &tinv, &CoverVertex { steps: pi.lift_vertex(g.tail(e)) });
    CoverEdge { tail, head, edge: e }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaFamily {
    pub vectors: BTreeMap<usize, EdgeVector>,
    /// Whether every `ω_e` was checked fixed by every element of `G_e`.
    pub invariant: bool,
}

pub fn omega_family(pi: &Pi1, ball: &CoverBall) -> Result<OmegaFamily> {
    let g = &pi.gog;
    let mut vectors = BTreeMap::new();
    let mut invariant = true;
    for e in g.oriented_edges() {
        let lift = lift_edge(pi, e);
        let w = EdgeVector::delta(lift.reverse(pi)).sub(&EdgeVector::delta(lift));
        let depth = w.max_depth();
        if depth > ball.radius {
            return Err(Error::OutOfBall { radius: ball.radius, depth });
        }
        // G_e is the stabilizer of ẽ, embedded in G_{e+} through sigma_e.
        let ge = g.edge_groups[e].as_enumerated().expect("enumerated");
        let sigma = g.sigma_hom(e).expect("verified map");
        for x in ge.elements() {
            let pf = pi.path_form(&GroupWord::vertex(g.graph.head(e), sigma.apply(x)))?;
            if w.act(pi, &pf) != w {
                invariant = false;
            }
        }
        vectors.insert(e, w);
    }
    Ok(OmegaFamily { vectors, invariant })
}

/// All generators of the presentation: non-identity vertex elements, then
/// stable letters of the orientation.
pub fn generator_letters(pi: &Pi1) -> Vec<Letter> {
    let g = &pi.gog;
    let mut out = Vec::new();
    for v in 0..g.graph.vertex_count() {
        let grp = pi.group(v);
        for x in grp.elements() {
            if x != grp.identity() {
                out.push(Letter::Vertex { v, g: x });
            }
        }
    }
    for e in g.oriented_edges() {
        out.push(Letter::Stable { e, exp: 1 });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub item: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub generators: Vec<LemmaCheck>,
    pub words: Vec<LemmaCheck>,
    pub omega_invariant: bool,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.omega_invariant && self.generators.iter().chain(&self.words).all(|c| c.pass)
    }
}

/// Checks exactly that the connecting map applied to `ω` agrees with `b` on
/// every generator, and on the test words through the cocycle rule.
pub fn verify_lemma_omega(pi: &Pi1, ball: &CoverBall, words: &[GroupWord]) -> Result<LemmaReport> {
    let fam = omega_family(pi, ball)?;
    let m = EdgeModule { pi };
    let base = pi.base();
    let mut generators = Vec::new();
    for l in generator_letters(pi) {
        let w = GroupWord(vec![l]);
        let lhs = connecting_on_letter(&m, &pi.gog, &fam.vectors, base, &l);
        let rhs = haagerup_cocycle(pi, ball, &w)?;
        generators.push(LemmaCheck { item: w.display(&pi.gog), pass: lhs == rhs });
    }
    let mut checks = Vec::new();
    for w in words {
        let rhs = haagerup_cocycle(pi, ball, w)?;
        let lhs = extend_cocycle(&m, w, |l| connecting_on_letter(&m, &pi.gog, &fam.vectors, base, l));
        checks.push(LemmaCheck { item: w.display(&pi.gog), pass: lhs == rhs });
    }
    Ok(LemmaReport { generators, words: checks, omega_invariant: fam.invariant })
}

/// Checks on every generator that moving the base vertex of the integrals
/// from `v0` to `v1` changes the connecting map by the coboundary of
/// `∫_{v0}^{v1} ω`.
pub fn verify_base_change<M: GModule>(m: &M, pi: &Pi1, omega: &BTreeMap<usize, M::Elem>, v0: usize, v1: usize) -> bool {
    let gog = &pi.gog;
    let shift = integral(m, gog, omega, v0, v1);
    generator_letters(pi).iter().all(|l| {
        let d0 = connecting_on_letter(m, gog, omega, v0, l);
        let d1 = connecting_on_letter(m, gog, omega, v1, l);
        m.sub(&d0, &d1) == m.sub(&m.act_letter(l, &shift), &shift)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Boundedness {
    /// A vertex fixed by every generator, so `b` is bounded on the subgroup.
    FixedVertex(CoverVertex),
    /// An element with `‖b(word)‖² ≥ horizon`.
    Growth { word: GroupWord, norm_sq: Q },
}

pub fn boundedness_witness(pi: &Pi1, gens: &[GroupWord], horizon: u64) -> Result<Boundedness> {
    let mut candidates = gens.to_vec();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            candidates.push(gens[i].concat(&gens[j]));
        }
    }
    let forms: Vec<PathForm> = candidates.iter().map(|w| pi.path_form(w)).collect::<Result<_>>()?;
    let hyperbolic = forms.iter().position(|f| translation_length(pi, f).0 > 0);
    let Some(hi) = hyperbolic else {
        let v = common_fixed_vertex(pi, &forms[..gens.len()])
            .ok_or_else(|| Error::Parse("no common fixed vertex found".into()))?;
        return Ok(Boundedness::FixedVertex(v));
    };
    let target = Q::from_integer(horizon.into());
    let mut n = 1i64;
    loop {
        let word = candidates[hi].pow(&pi.gog, n)?;
        let norm_sq = cocycle_of(pi, &pi.path_form(&word)?).norm_sq();
        if norm_sq >= target || target.is_negative() {
            return Ok(Boundedness::Growth { word, norm_sq });
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::build_ball;
    use crate::fingrp::FiniteGroup;
    use crate::fundgrp::parse_word;
    use crate::gog::{EdgeMap, GraphOfGroups, GroupRef};
    use crate::graph::Graph;

    fn free2() -> Pi1 {
        let graph = Graph::new(&["v"], &[("t1", "v", "v", "t1~"), ("t1~", "v", "v", "t1"), ("t2", "v", "v", "t2~"), ("t2~", "v", "v", "t2")]).unwrap();
        let one = GroupRef::enumerated("1", FiniteGroup::cyclic(1));
        let g = GraphOfGroups::new(graph, vec![one.clone()], vec![one; 4], vec![EdgeMap::Table(vec![0]); 4], None, None, None).unwrap();
        Pi1::new(&g).unwrap()
    }

    #[test]
    fn free_group_norms() {
        let f = free2();
        let ball = build_ball(&f, 3).unwrap();
        assert!(haagerup_cocycle(&f, &ball, &GroupWord::identity()).unwrap().is_zero());
        let b = haagerup_cocycle(&f, &ball, &parse_word(&f.gog, "t1").unwrap()).unwrap();
        assert_eq!(b.norm_sq(), q(2));
        let b = haagerup_cocycle(&f, &ball, &parse_word(&f.gog, "t1 * t2").unwrap()).unwrap();
        assert_eq!((b.norm_sq(), b.0.len()), (q(4), 4));
        let rep = verify_lemma_omega(&f, &ball, &[parse_word(&f.gog, "t1 * t2^-1 * t1").unwrap()]).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        match boundedness_witness(&f, &[parse_word(&f.gog, "t1").unwrap()], 10).unwrap() {
            Boundedness::Growth { word, norm_sq } => {
                assert_eq!(word.len(), 5);
                assert_eq!(norm_sq, q(10));
            }
            other => panic!("{other:?}"),
        }
    }
}
