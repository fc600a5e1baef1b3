//! Modules over `π1` given by the action of the presentation generators, and
//! the connecting map `∏ M^{G_e} -> Z¹(π1, M)` evaluated on generators.

use std::collections::BTreeMap;

use crate::fundgrp::{GroupWord, Letter};
use crate::gog::GraphOfGroups;
use crate::graph::epsilon;

/// A left module over `π1`, described by how vertex elements and stable
/// letters act.
pub trait GModule {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn act_vertex(&self, v: usize, g: usize, x: &Self::Elem) -> Self::Elem;
    /// Action of `t_e^exp`, `exp = ±1`.
    fn act_stable(&self, e: usize, exp: i8, x: &Self::Elem) -> Self::Elem;

    fn act_letter(&self, l: &Letter, x: &Self::Elem) -> Self::Elem {
        match *l {
            Letter::Vertex { v, g } => self.act_vertex(v, g, x),
            Letter::Stable { e, exp } => self.act_stable(e, exp, x),
        }
    }

    fn act_word(&self, w: &GroupWord, x: &Self::Elem) -> Self::Elem {
        w.0.iter().rev().fold(x.clone(), |acc, l| self.act_letter(l, &acc))
    }
}

/// `∫_{from}^{to} ω = Σ_{e∈A} ε_{from,to}(e) ω_e`.
pub fn integral<M: GModule>(m: &M, gog: &GraphOfGroups, omega: &BTreeMap<usize, M::Elem>, from: usize, to: usize) -> M::Elem {
    let mut acc = m.zero();
    for (&e, w) in omega {
        match epsilon(&gog.graph, &gog.tree, from, to, e).expect("valid vertices") {
            1 => acc = m.add(&acc, w),
            -1 => acc = m.sub(&acc, w),
            _ => {}
        }
    }
    acc
}

/// The connecting map on a generator, for base vertex `base`:
/// `g_v ↦ (g_v − 1)∫_{base}^{v} ω` and
/// `t_e ↦ t_e∫_{base}^{e+} ω − t_e ω_e − ∫_{base}^{e−} ω`.
/// Inverse stable letters use `c(t⁻¹) = −t⁻¹ c(t)`.
pub fn connecting_on_letter<M: GModule>(m: &M, gog: &GraphOfGroups, omega: &BTreeMap<usize, M::Elem>, base: usize, l: &Letter) -> M::Elem {
    let g = &gog.graph;
    match *l {
        Letter::Vertex { v, g: x } => {
            let i = integral(m, gog, omega, base, v);
            m.sub(&m.act_vertex(v, x, &i), &i)
        }
        Letter::Stable { e, exp } => {
            let ip = integral(m, gog, omega, base, g.head(e));
            let im = integral(m, gog, omega, base, g.tail(e));
            let inner = m.sub(&ip, &omega[&e]);
            let val = m.sub(&m.act_stable(e, 1, &inner), &im);
            if exp > 0 {
                val
            } else {
                m.sub(&m.zero(), &m.act_stable(e, -1, &val))
            }
        }
    }
}

/// Extends a cocycle from letters to words with `c(xy) = c(x) + x·c(y)`.
pub fn extend_cocycle<M: GModule>(m: &M, w: &GroupWord, on_letter: impl Fn(&Letter) -> M::Elem) -> M::Elem {
    let mut acc = m.zero();
    for l in w.0.iter().rev() {
        acc = m.add(&on_letter(l), &m.act_letter(l, &acc));
    }
    acc
}
