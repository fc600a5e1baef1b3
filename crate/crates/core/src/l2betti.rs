//! First and higher l2-Betti numbers of fundamental groups of graphs of
//! groups whose vertex groups have vanishing l2-cohomology in positive
//! degrees, and the classification of the instances with `β¹ = 0`.
//!
//! Cardinalities, amenability and Betti numbers of symbolic groups are taken
//! from assertions only. Enumerated groups are finite, hence amenable with
//! `β⁰ = 1/|G|` and `β^i = 0` for `i ≥ 1`.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::gog::{Cardinality, GraphOfGroups, GroupRef};
use crate::rational::{q, Q};

/// Asserted Betti numbers keyed by edge id or edge group name, then degree.
pub type EdgeBettiTable = BTreeMap<String, BTreeMap<u32, Q>>;

fn reciprocal(c: Cardinality) -> Q {
    match c {
        Cardinality::Finite(n) => Q::new(1.into(), n.into()),
        Cardinality::Infinite => Q::zero(),
    }
}

fn cardinality(g: &GroupRef) -> Result<Cardinality> {
    g.cardinality().ok_or_else(|| Error::UndecidableCardinality(g.name.clone()))
}

fn is_amenable(g: &GroupRef) -> bool {
    match g.as_symbolic() {
        None => true,
        Some(s) => s.amenable || s.cardinality.is_some_and(Cardinality::is_finite),
    }
}

fn has_beta1_zero(g: &GroupRef) -> bool {
    match g.as_symbolic() {
        None => true,
        Some(s) => {
            s.beta1_zero
                || s.amenable
                || s.cardinality.is_some_and(Cardinality::is_finite)
                || s.betti.get(&1).is_some_and(Zero::is_zero)
        }
    }
}

/// `β^j(G) = 0` known for every `1 ≤ j ≤ upto`.
fn has_vanishing_betti(g: &GroupRef, upto: u32) -> bool {
    if is_amenable(g) {
        return true;
    }
    let s = g.as_symbolic().expect("enumerated groups are amenable");
    has_beta1_zero(g) && (2..=upto).all(|j| s.betti.get(&j).is_some_and(Zero::is_zero))
}

fn require_beta1_hypothesis(gog: &GraphOfGroups) -> Result<()> {
    for (v, g) in gog.vertex_groups.iter().enumerate() {
        if !has_beta1_zero(g) {
            return Err(Error::HypothesisNotAsserted(format!(
                "beta1 of vertex group `{}` at `{}` is not asserted to vanish",
                g.name,
                gog.graph.vertex_id(v)
            )));
        }
    }
    Ok(())
}

/// `β⁰(π1)`: `1/|π1|` when the fundamental group is finite, else 0. The
/// group is finite exactly when the graph is a tree of finite groups that
/// reduces to a single vertex.
fn beta0(gog: &GraphOfGroups) -> Result<Q> {
    let g = &gog.graph;
    if g.edge_count() / 2 + 1 != g.vertex_count() {
        return Ok(Q::zero());
    }
    for v in &gog.vertex_groups {
        if cardinality(v)? == Cardinality::Infinite {
            return Ok(Q::zero());
        }
    }
    let (r, _) = gog.reduce()?;
    if r.graph.vertex_count() == 1 && r.graph.edge_count() == 0 {
        Ok(reciprocal(cardinality(&r.vertex_groups[0])?))
    } else {
        Ok(Q::zero())
    }
}

/// `β¹(π1) = Σ_{e∈A} 1/|G_e| − Σ_v 1/|G_v|`, with `1/∞ = 0`, plus `β⁰(π1)`
/// when the fundamental group itself is finite.
pub fn beta1(gog: &GraphOfGroups) -> Result<Q> {
    require_beta1_hypothesis(gog)?;
    let mut sum = Q::zero();
    for e in gog.oriented_edges() {
        sum += reciprocal(cardinality(gog.edge_group(e))?);
    }
    for v in &gog.vertex_groups {
        sum -= reciprocal(cardinality(v)?);
    }
    Ok(sum + beta0(gog)?)
}

/// `β^{degree}` of the group on edge `e`, from the override table, the
/// group's own assertions, or finiteness/amenability.
pub fn edge_betti(gog: &GraphOfGroups, e: usize, degree: u32, table: &EdgeBettiTable) -> Result<Q> {
    let grp = gog.edge_group(e);
    let id = &gog.graph.edge(e).id;
    for key in [id, &grp.name] {
        if let Some(x) = table.get(key).and_then(|t| t.get(&degree)) {
            return Ok(x.clone());
        }
    }
    if let Some(x) = grp.as_symbolic().and_then(|s| s.betti.get(&degree)) {
        return Ok(x.clone());
    }
    match grp.cardinality() {
        Some(Cardinality::Finite(n)) if degree == 0 => return Ok(reciprocal(Cardinality::Finite(n))),
        Some(Cardinality::Finite(_)) => return Ok(Q::zero()),
        _ => {}
    }
    if is_amenable(grp) {
        return Ok(Q::zero());
    }
    Err(Error::MissingEdgeBetti { edge: id.clone(), degree })
}

/// `β^i(π1) = Σ_{e∈A} β^{i−1}(G_e)` for `i ≥ 2`; zero outright when every
/// vertex group is amenable.
pub fn beta_higher(gog: &GraphOfGroups, i: u32, table: &EdgeBettiTable) -> Result<Q> {
    if i < 2 {
        return Err(Error::Parse(format!("degree must be at least 2, got {i}")));
    }
    for (v, g) in gog.vertex_groups.iter().enumerate() {
        if !has_vanishing_betti(g, i) {
            return Err(Error::HypothesisNotAsserted(format!(
                "l2-Betti numbers of `{}` at `{}` are not asserted to vanish in degrees 1..={i}",
                g.name,
                gog.graph.vertex_id(v)
            )));
        }
    }
    if gog.vertex_groups.iter().all(is_amenable) {
        return Ok(Q::zero());
    }
    let mut sum = q(0);
    for e in gog.oriented_edges() {
        sum += edge_betti(gog, e, i - 1, table)?;
    }
    Ok(sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// A loop with finite edge group.
    Loop,
    /// A non-loop edge with finite edge group and both indices at least 2.
    Segment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub edge: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BettiCase {
    /// A single vertex and no edges.
    SingleVertex,
    /// A single loop with both edge maps onto: `π1 = ℤ ⋉ G_v`.
    SemidirectLoop,
    /// A single segment with finite edge group of index 2 on both sides.
    IndexTwoSegment,
    /// Every edge group is infinite.
    InfiniteEdgeGroups,
    Nonzero(Witness),
}

impl BettiCase {
    pub fn is_zero(self) -> bool {
        !matches!(self, BettiCase::Nonzero(_))
    }

    pub fn name(self) -> &'static str {
        match self {
            BettiCase::SingleVertex => "Case1",
            BettiCase::SemidirectLoop => "Case2",
            BettiCase::IndexTwoSegment => "Case3",
            BettiCase::InfiniteEdgeGroups => "Case4",
            BettiCase::Nonzero(_) => "Nonzero",
        }
    }
}

/// Decides whether `β¹(π1) = 0` for a reduced graph of groups whose vertex
/// groups have `β¹ = 0`.
pub fn classify_beta1(gog: &GraphOfGroups) -> Result<BettiCase> {
    require_beta1_hypothesis(gog)?;
    let check = gog.is_reduced()?;
    if let Some(e) = check.witness {
        return Err(Error::NotReduced(gog.graph.edge(e).id.clone()));
    }
    let g = &gog.graph;
    let edges = gog.oriented_edges();
    if edges.is_empty() {
        return Ok(BettiCase::SingleVertex);
    }
    let mut finite = Vec::new();
    for &e in &edges {
        if cardinality(gog.edge_group(e))?.is_finite() {
            finite.push(e);
        }
    }
    if let [e] = edges[..] {
        let one = Cardinality::Finite(1);
        if g.is_loop(e) && gog.index(e)? == one && gog.index(g.bar(e))? == one {
            return Ok(BettiCase::SemidirectLoop);
        }
        let two = Cardinality::Finite(2);
        if !g.is_loop(e) && !finite.is_empty() && gog.index(e)? == two && gog.index(g.bar(e))? == two {
            return Ok(BettiCase::IndexTwoSegment);
        }
    }
    match finite.first() {
        None => Ok(BettiCase::InfiniteEdgeGroups),
        Some(&e) => {
            let kind = if g.is_loop(e) { WitnessKind::Loop } else { WitnessKind::Segment };
            Ok(BettiCase::Nonzero(Witness { kind, edge: e }))
        }
    }
}
