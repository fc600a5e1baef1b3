//! Exact cohomology in degrees 0 and 1 for finite-dimensional rational
//! modules over `π1`, and the maps of the Mayer-Vietoris sequence
//!
//! `0 → M^G → ∏ M^{G_v} → ∏ M^{G_e} → H¹(G, M) → ∏ H¹(G_v, M)`.
//!
//! Cocycles are parametrized by their values on a generating set of each
//! vertex group and on the stable letters outside the tree; values on the
//! other vertex elements follow along a spanning tree of the Cayley graph.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::fingrp::{extend_by_products, FiniteGroup, Perm};
use crate::fundgrp::{GroupWord, Letter};
use crate::gmodule::{connecting_on_letter, extend_cocycle, GModule};
use crate::gog::{EdgeMap, GraphOfGroups};
use crate::linalg::{coordinates_in, free_columns, is_zero_vec, vec_add, vec_scale, vec_sub, Matrix, Span};
use crate::rational::{q, Q};

/// A representation of `π1` on `Q^dim`, given on every vertex element and
/// every stable letter of the orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub dim: usize,
    pub orthogonal: bool,
    /// `vertex[v][g]`.
    pub vertex: Vec<Vec<Matrix>>,
    /// `stable[e]` for `e` in the orientation; identity on tree edges unless given.
    pub stable: BTreeMap<usize, Matrix>,
    stable_inv: BTreeMap<usize, Matrix>,
}

impl ModuleSpec {
    /// Builds a module from matrices on some letters. Vertex elements not
    /// listed are filled in by multiplying listed ones (starting from the
    /// identity). A vertex group with no listed matrix acts trivially, and
    /// stable letters of tree edges default to the identity.
    pub fn new(gog: &GraphOfGroups, dim: usize, orthogonal: bool, assign: &[(Letter, Matrix)]) -> Result<Self> {
        let g = &gog.graph;
        let bad = |m: String| Error::InvalidModule(m);
        let mut given: Vec<BTreeMap<usize, Matrix>> = vec![BTreeMap::new(); g.vertex_count()];
        let mut stable = BTreeMap::new();
        for (l, m) in assign {
            if m.rows() != dim || m.cols() != dim {
                return Err(bad(format!("matrix for {} is not {dim}x{dim}", GroupWord(vec![*l]).display(gog))));
            }
            match *l {
                Letter::Vertex { v, g: x } => {
                    given[v].insert(x, m.clone());
                }
                Letter::Stable { e, .. } => {
                    stable.insert(e, m.clone());
                }
            }
        }
        let mut vertex = Vec::new();
        for (v, known) in given.iter().enumerate() {
            let grp = gog.vertex_groups[v]
                .as_enumerated()
                .ok_or_else(|| Error::SymbolicGroupInWord(gog.vertex_groups[v].name.clone()))?;
            if known.is_empty() {
                vertex.push(vec![Matrix::identity(dim); grp.order()]);
                continue;
            }
            vertex.push(extend_by_products(grp, known, Matrix::identity(dim), |a, b| a.mul(b)).ok_or_else(|| {
                bad(format!("matrices at vertex {} do not determine every element", g.vertex_id(v)))
            })?);
        }
        let mut stable_inv = BTreeMap::new();
        for e in gog.oriented_edges() {
            let m = match stable.get(&e) {
                Some(m) => m.clone(),
                None if gog.tree.contains(e) => Matrix::identity(dim),
                None => return Err(bad(format!("no matrix for stable letter {}", g.edge(e).id))),
            };
            let inv = m.inverse().ok_or_else(|| bad(format!("matrix for {} is singular", g.edge(e).id)))?;
            stable.insert(e, m);
            stable_inv.insert(e, inv);
        }
        Ok(ModuleSpec { dim, orthogonal, vertex, stable, stable_inv })
    }

    /// The trivial module `Q^dim`.
    pub fn trivial(gog: &GraphOfGroups, dim: usize) -> Result<Self> {
        let assign: Vec<(Letter, Matrix)> =
            gog.oriented_edges().into_iter().map(|e| (Letter::Stable { e, exp: 1 }, Matrix::identity(dim))).collect();
        Self::new(gog, dim, true, &assign)
    }

    pub fn rho_vertex(&self, v: usize, g: usize) -> &Matrix {
        &self.vertex[v][g]
    }

    pub fn rho_stable(&self, e: usize, exp: i8) -> &Matrix {
        if exp > 0 {
            &self.stable[&e]
        } else {
            &self.stable_inv[&e]
        }
    }

    pub fn rho_word(&self, w: &GroupWord) -> Matrix {
        let mut m = Matrix::identity(self.dim);
        for l in &w.0 {
            let r = match *l {
                Letter::Vertex { v, g } => self.rho_vertex(v, g),
                Letter::Stable { e, exp } => self.rho_stable(e, exp),
            };
            m = m.mul(r);
        }
        m
    }
}

impl GModule for ModuleSpec {
    type Elem = Vec<Q>;

    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim]
    }

    fn add(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_add(a, b)
    }

    fn sub(&self, a: &Vec<Q>, b: &Vec<Q>) -> Vec<Q> {
        vec_sub(a, b)
    }

    fn act_vertex(&self, v: usize, g: usize, x: &Vec<Q>) -> Vec<Q> {
        self.vertex[v][g].mul_vec(x)
    }

    fn act_stable(&self, e: usize, exp: i8, x: &Vec<Q>) -> Vec<Q> {
        self.rho_stable(e, exp).mul_vec(x)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleReport {
    pub violations: Vec<String>,
}

impl ModuleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the matrices define a representation of `π1`.
pub fn validate_module(gog: &GraphOfGroups, spec: &ModuleSpec) -> ModuleReport {
    let g = &gog.graph;
    let mut v = Vec::new();
    for (x, reps) in spec.vertex.iter().enumerate() {
        let grp = gog.vertex_groups[x].as_enumerated().expect("enumerated");
        'pairs: for a in grp.elements() {
            for b in grp.elements() {
                if reps[a].mul(&reps[b]) != reps[grp.mul(a, b)] {
                    v.push(format!(
                        "multiplication not respected at vertex {}: rho({}) rho({}) != rho({})",
                        g.vertex_id(x),
                        grp.label(a),
                        grp.label(b),
                        grp.label(grp.mul(a, b))
                    ));
                    break 'pairs;
                }
            }
        }
    }
    for e in gog.oriented_edges() {
        let id = &g.edge(e).id;
        let t = &spec.stable[&e];
        if gog.tree.contains(e) && !t.is_identity() {
            v.push(format!("tree edge letter {id} must act as the identity"));
        }
        let (EdgeMap::Table(s), EdgeMap::Table(th)) = (&gog.sigma[e], gog.theta(e)) else { continue };
        let ge = gog.edge_groups[e].as_enumerated().expect("enumerated");
        for x in ge.elements() {
            let lhs = t.mul(&spec.vertex[g.head(e)][s[x]]);
            let rhs = spec.vertex[g.tail(e)][th[x]].mul(t);
            if lhs != rhs {
                v.push(format!("conjugation relation fails for {id} at {}", ge.label(x)));
                break;
            }
        }
    }
    if spec.orthogonal {
        let all = spec.vertex.iter().flatten().chain(spec.stable.values());
        if all.into_iter().any(|m| !m.is_orthogonal()) {
            v.push("module flagged orthogonal but a matrix is not orthogonal".to_string());
        }
    }
    ModuleReport { violations: v }
}

/// Which subgroup to take fixed points of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    /// The vertex group `G_v`.
    Vertex(usize),
    /// The edge group `G_e` embedded in `G_{head e}` through `sigma(e)`.
    Edge(usize),
    /// The whole fundamental group.
    All,
}

/// Parses `all`, `v:<id>` or `e:<id>`.
pub fn parse_selector(gog: &GraphOfGroups, s: &str) -> Result<Selector> {
    let unknown = || Error::UnknownSelector(s.to_string());
    if s == "all" {
        return Ok(Selector::All);
    }
    match s.split_once(':') {
        Some(("v", id)) => gog.graph.vertex(id).map(Selector::Vertex).map_err(|_| unknown()),
        Some(("e", id)) => gog.graph.edge_index(id).map(Selector::Edge).map_err(|_| unknown()),
        _ => Err(unknown()),
    }
}

/// A canonical basis of a subspace, with the columns that give coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub vectors: Vec<Vec<Q>>,
    free: Vec<usize>,
}

impl Basis {
    fn from_nullspace(vectors: Vec<Vec<Q>>) -> Self {
        let free = free_columns(&vectors);
        Basis { vectors, free }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        coordinates_in(&self.vectors, &self.free, v)
    }

    pub fn combine(&self, coords: &[Q], width: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); width];
        for (b, c) in self.vectors.iter().zip(coords) {
            out = vec_add(&out, &vec_scale(b, c));
        }
        out
    }
}

fn fixed_of(spec: &ModuleSpec, mats: &[&Matrix]) -> Basis {
    let n = spec.dim;
    let id = Matrix::identity(n);
    let mut span = Span::new(n);
    for m in mats {
        let d = m.sub(&id);
        for r in 0..n {
            span.insert(d.row(r).to_vec());
        }
    }
    Basis::from_nullspace(span.orthogonal_complement_basis())
}

pub fn fixed_space(gog: &GraphOfGroups, spec: &ModuleSpec, sel: Selector) -> Result<Basis> {
    let g = &gog.graph;
    match sel {
        Selector::Vertex(v) if v < g.vertex_count() => Ok(fixed_of(spec, &spec.vertex[v].iter().collect::<Vec<_>>())),
        Selector::Edge(e) if e < g.edge_count() => {
            let h = gog.sigma_hom(e).ok_or_else(|| Error::UnknownSelector(g.edge(e).id.clone()))?;
            let mats: Vec<&Matrix> = h.map.iter().map(|&x| &spec.vertex[g.head(e)][x]).collect();
            Ok(fixed_of(spec, &mats))
        }
        Selector::All => {
            let mut mats: Vec<&Matrix> = spec.vertex.iter().flatten().collect();
            mats.extend(spec.stable.values());
            Ok(fixed_of(spec, &mats))
        }
        _ => Err(Error::UnknownSelector(format!("{sel:?}"))),
    }
}

/// The map `ι(f)_e = f_{e+} − ρ(t_e)⁻¹ f_{e−}` with its bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iota {
    pub matrix: Matrix,
    pub vertex_bases: Vec<Basis>,
    /// Bases of `M^{G_e}` for `e` in the orientation, ascending.
    pub edge_bases: Vec<(usize, Basis)>,
}

impl Iota {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.codomain_dim() - self.rank()
    }

    /// Splits a codomain coordinate vector into `(e, vector in M)` pairs.
    pub fn edge_family(&self, coords: &[Q], dim: usize) -> BTreeMap<usize, Vec<Q>> {
        let mut out = BTreeMap::new();
        let mut at = 0;
        for (e, b) in &self.edge_bases {
            out.insert(*e, b.combine(&coords[at..at + b.dim()], dim));
            at += b.dim();
        }
        out
    }

    /// Splits a domain coordinate vector into vectors per vertex.
    pub fn vertex_family(&self, coords: &[Q], dim: usize) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        let mut at = 0;
        for b in &self.vertex_bases {
            out.push(b.combine(&coords[at..at + b.dim()], dim));
            at += b.dim();
        }
        out
    }
}

/// `ι` applied to a family of vectors, one per vertex.
pub fn iota_apply(gog: &GraphOfGroups, spec: &ModuleSpec, f: &[Vec<Q>]) -> BTreeMap<usize, Vec<Q>> {
    let g = &gog.graph;
    gog.oriented_edges()
        .into_iter()
        .map(|e| (e, vec_sub(&f[g.head(e)], &spec.rho_stable(e, -1).mul_vec(&f[g.tail(e)]))))
        .collect()
}

pub fn iota_matrix(gog: &GraphOfGroups, spec: &ModuleSpec) -> Result<Iota> {
    let g = &gog.graph;
    let n = spec.dim;
    let vertex_bases: Vec<Basis> = (0..g.vertex_count()).map(|v| fixed_space(gog, spec, Selector::Vertex(v))).collect::<Result<_>>()?;
    let edge_bases: Vec<(usize, Basis)> =
        gog.oriented_edges().into_iter().map(|e| Ok((e, fixed_space(gog, spec, Selector::Edge(e))?))).collect::<Result<_>>()?;
    let rows: usize = edge_bases.iter().map(|(_, b)| b.dim()).sum();
    let mut cols = Vec::new();
    for (v, b) in vertex_bases.iter().enumerate() {
        for x in &b.vectors {
            let mut f = vec![vec![Q::zero(); n]; g.vertex_count()];
            f[v] = x.clone();
            let image = iota_apply(gog, spec, &f);
            let mut col = Vec::with_capacity(rows);
            for (e, eb) in &edge_bases {
                let c = eb.coordinates(&image[e]).ok_or_else(|| {
                    Error::InvalidModule(format!("ι lands outside M^{{G_e}} at {}", g.edge(*e).id))
                })?;
                col.extend(c);
            }
            cols.push(col);
        }
    }
    let matrix = if cols.is_empty() { Matrix::zeros(rows, 0) } else { Matrix::from_columns(&cols, rows) };
    Ok(Iota { matrix, vertex_bases, edge_bases })
}

/// Linear parametrization of cocycles: unknowns are the values on the
/// generators of each vertex group and on the stable letters off the tree.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    dim: usize,
    unknowns: usize,
    /// `(v, generator)` blocks, then `e` blocks.
    pub vertex_gens: Vec<Vec<usize>>,
    vertex_offset: Vec<Vec<usize>>,
    edge_offset: BTreeMap<usize, usize>,
    /// `expr[v][x]`: the value `b(x)` as a `dim x unknowns` matrix.
    expr: Vec<Vec<Matrix>>,
    constraints: Vec<Vec<Q>>,
}

impl CocycleSpace {
    pub fn new(gog: &GraphOfGroups, spec: &ModuleSpec) -> Self {
        Self::build(gog, spec, None)
    }

    /// Cocycles of the vertex group `G_v` alone.
    pub fn vertex_only(gog: &GraphOfGroups, spec: &ModuleSpec, v: usize) -> Self {
        Self::build(gog, spec, Some(v))
    }

    fn build(gog: &GraphOfGroups, spec: &ModuleSpec, only: Option<usize>) -> Self {
        let g = &gog.graph;
        let n = spec.dim;
        let mut u = 0;
        let mut vertex_gens = Vec::new();
        let mut vertex_offset: Vec<Vec<usize>> = Vec::new();
        for v in 0..g.vertex_count() {
            let grp = gog.vertex_groups[v].as_enumerated().expect("enumerated");
            let gens: Vec<usize> = if only.is_none_or(|w| w == v) { grp.generators().to_vec() } else { Vec::new() };
            let offs = (0..gens.len()).map(|k| u + k * n).collect();
            u += gens.len() * n;
            vertex_offset.push(offs);
            vertex_gens.push(gens);
        }
        let mut edge_offset = BTreeMap::new();
        if only.is_none() {
            for e in gog.oriented_edges() {
                if !gog.tree.contains(e) {
                    edge_offset.insert(e, u);
                    u += n;
                }
            }
        }
        let block = |off: usize, m: &Matrix| {
            let mut out = Matrix::zeros(n, u);
            for r in 0..n {
                for c in 0..n {
                    out[(r, off + c)] = m[(r, c)].clone();
                }
            }
            out
        };
        let mut constraints = Vec::new();
        let mut push_rows = |m: &Matrix| {
            for r in 0..m.rows() {
                if !is_zero_vec(m.row(r)) {
                    constraints.push(m.row(r).to_vec());
                }
            }
        };
        let mut expr = Vec::new();
        for v in 0..g.vertex_count() {
            let grp = gog.vertex_groups[v].as_enumerated().expect("enumerated");
            let mut e_v: Vec<Option<Matrix>> = vec![None; grp.order()];
            e_v[grp.identity()] = Some(Matrix::zeros(n, u));
            let mut queue = std::collections::VecDeque::from([grp.identity()]);
            let mut order = Vec::new();
            while let Some(a) = queue.pop_front() {
                order.push(a);
                for (k, &s) in vertex_gens[v].iter().enumerate() {
                    let cand = e_v[a].as_ref().unwrap().add(&block(vertex_offset[v][k], &spec.vertex[v][a]));
                    let p = grp.mul(a, s);
                    match &e_v[p] {
                        None => {
                            e_v[p] = Some(cand);
                            queue.push_back(p);
                        }
                        Some(old) => push_rows(&cand.sub(old)),
                    }
                }
            }
            // Elements outside the generated subgroup only occur for vertices
            // excluded from the parametrization, where every value is zero.
            expr.push(e_v.into_iter().map(|m| m.unwrap_or_else(|| Matrix::zeros(n, u))).collect::<Vec<_>>());
        }
        if only.is_none() {
            for e in gog.oriented_edges() {
                let (EdgeMap::Table(s), EdgeMap::Table(th)) = (&gog.sigma[e], gog.theta(e)) else { continue };
                let ge = gog.edge_groups[e].as_enumerated().expect("enumerated");
                let (head, tail) = (g.head(e), g.tail(e));
                let t = spec.rho_stable(e, 1);
                for &x in ge.generators() {
                    let theta_x = &spec.vertex[tail][th[x]];
                    // (I − ρ(θx)) b(t) + ρ(t) b(σx) − b(θx) = 0
                    let mut row = t.mul(&expr[head][s[x]]).sub(&expr[tail][th[x]]);
                    if let Some(&off) = edge_offset.get(&e) {
                        row = row.add(&block(off, &Matrix::identity(n).sub(theta_x)));
                    }
                    push_rows(&row);
                }
            }
        }
        CocycleSpace { dim: n, unknowns: u, vertex_gens, vertex_offset, edge_offset, expr, constraints }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Basis of `Z¹` in unknown coordinates.
    pub fn cocycles(&self) -> Vec<Vec<Q>> {
        Span::from_vectors(self.unknowns, self.constraints.iter().cloned()).orthogonal_complement_basis()
    }

    pub fn is_cocycle(&self, coords: &[Q]) -> bool {
        self.constraints.iter().all(|r| r.iter().zip(coords).map(|(a, b)| a * b).sum::<Q>().is_zero())
    }

    /// Coordinates of the coboundary of `m`, restricted to the blocks of
    /// vertex `only` when given.
    fn coboundary_of(&self, spec: &ModuleSpec, m: &[Q], only: Option<usize>) -> Vec<Q> {
        let id = Matrix::identity(self.dim);
        let mut out = vec![Q::zero(); self.unknowns];
        for (v, gens) in self.vertex_gens.iter().enumerate() {
            if only.is_some_and(|w| w != v) {
                continue;
            }
            for (k, &s) in gens.iter().enumerate() {
                let val = spec.vertex[v][s].sub(&id).mul_vec(m);
                out.splice(self.vertex_offset[v][k]..self.vertex_offset[v][k] + self.dim, val);
            }
        }
        if only.is_none() {
            for (&e, &off) in &self.edge_offset {
                let val = spec.rho_stable(e, 1).sub(&id).mul_vec(m);
                out.splice(off..off + self.dim, val);
            }
        }
        out
    }

    pub fn coboundary(&self, spec: &ModuleSpec, m: &[Q]) -> Vec<Q> {
        self.coboundary_of(spec, m, None)
    }

    fn unit_vectors(&self) -> impl Iterator<Item = Vec<Q>> + '_ {
        (0..self.dim).map(|i| {
            let mut m = vec![Q::zero(); self.dim];
            m[i] = q(1);
            m
        })
    }

    /// Spanning set of `B¹` in unknown coordinates.
    pub fn coboundaries(&self, spec: &ModuleSpec) -> Vec<Vec<Q>> {
        self.unit_vectors().map(|m| self.coboundary(spec, &m)).collect()
    }

    /// Cocycles whose restriction to `G_v` is a coboundary and which vanish
    /// on the other vertex groups: spanning set on the blocks of `v`.
    fn vertex_coboundaries(&self, spec: &ModuleSpec, v: usize) -> Vec<Vec<Q>> {
        self.unit_vectors().map(|m| self.coboundary_of(spec, &m, Some(v))).collect()
    }

    /// Unknown coordinates of a cocycle given by its values on letters.
    pub fn coordinates(&self, value: impl Fn(&Letter) -> Vec<Q>) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.unknowns];
        for (v, gens) in self.vertex_gens.iter().enumerate() {
            for (k, &s) in gens.iter().enumerate() {
                let off = self.vertex_offset[v][k];
                out.splice(off..off + self.dim, value(&Letter::Vertex { v, g: s }));
            }
        }
        for (&e, &off) in &self.edge_offset {
            out.splice(off..off + self.dim, value(&Letter::Stable { e, exp: 1 }));
        }
        out
    }

    /// Value of the cocycle with the given coordinates on a vertex element.
    pub fn vertex_value(&self, v: usize, x: usize, coords: &[Q]) -> Vec<Q> {
        self.expr[v][x].mul_vec(coords)
    }

    /// Value on a letter; tree stable letters get zero.
    pub fn letter_value(&self, l: &Letter, coords: &[Q], spec: &ModuleSpec) -> Vec<Q> {
        match *l {
            Letter::Vertex { v, g } => self.vertex_value(v, g, coords),
            Letter::Stable { e, exp } => {
                let val = match self.edge_offset.get(&e) {
                    Some(&off) => coords[off..off + self.dim].to_vec(),
                    None => vec![Q::zero(); self.dim],
                };
                if exp > 0 {
                    val
                } else {
                    spec.rho_stable(e, -1).mul_vec(&val).into_iter().map(|x| -x).collect()
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1 {
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    pub z_basis: Vec<Vec<Q>>,
    pub b_basis: Vec<Vec<Q>>,
    /// Cocycles whose classes form a basis of `H¹`.
    pub h_basis: Vec<Vec<Q>>,
}

fn h1_of(space: &CocycleSpace, spec: &ModuleSpec) -> H1 {
    let z_basis = space.cocycles();
    let b_span = Span::from_vectors(space.unknowns(), space.coboundaries(spec));
    let b_basis = b_span.basis().to_vec();
    let mut span = b_span;
    let mut h_basis = Vec::new();
    for z in &z_basis {
        if span.insert(z.clone()) {
            h_basis.push(z.clone());
        }
    }
    H1 { dim_z: z_basis.len(), dim_b: b_basis.len(), dim_h: h_basis.len(), z_basis, b_basis, h_basis }
}

pub fn h1(gog: &GraphOfGroups, spec: &ModuleSpec) -> H1 {
    h1_of(&CocycleSpace::new(gog, spec), spec)
}

/// `H¹(G_v, M)` for one vertex group.
pub fn vertex_h1(gog: &GraphOfGroups, spec: &ModuleSpec, v: usize) -> H1 {
    h1_of(&CocycleSpace::vertex_only(gog, spec, v), spec)
}

/// A cocycle given by its values on every generator of the presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub values: BTreeMap<Letter, Vec<Q>>,
    /// Coordinates in the parametrization of [`CocycleSpace`].
    pub coords: Vec<Q>,
}

impl Cocycle {
    /// Value on an arbitrary word through `b(xy) = b(x) + x·b(y)`.
    pub fn on_word(&self, spec: &ModuleSpec, w: &GroupWord) -> Vec<Q> {
        extend_cocycle(spec, w, |l| match *l {
            Letter::Stable { e, exp: -1 } => {
                let val = &self.values[&Letter::Stable { e, exp: 1 }];
                spec.rho_stable(e, -1).mul_vec(val).into_iter().map(|x| -x).collect()
            }
            other => self.values[&other].clone(),
        })
    }
}

/// The connecting map on a family `ω_e ∈ M^{G_e}`, with integrals taken from
/// `base`.
pub fn connecting_from(gog: &GraphOfGroups, spec: &ModuleSpec, fam: &BTreeMap<usize, Vec<Q>>, base: usize) -> Result<Cocycle> {
    let g = &gog.graph;
    for e in gog.oriented_edges() {
        let w = fam.get(&e).ok_or_else(|| Error::NotEdgeFixed(format!("missing component for {}", g.edge(e).id)))?;
        if w.len() != spec.dim {
            return Err(Error::NotEdgeFixed(format!("component for {} has wrong length", g.edge(e).id)));
        }
        let h = gog.sigma_hom(e).expect("verified map");
        for &x in &h.map {
            if spec.vertex[g.head(e)][x].mul_vec(w) != *w {
                return Err(Error::NotEdgeFixed(g.edge(e).id.clone()));
            }
        }
    }
    let mut values = BTreeMap::new();
    for v in 0..g.vertex_count() {
        for x in 0..spec.vertex[v].len() {
            let l = Letter::Vertex { v, g: x };
            values.insert(l, connecting_on_letter(spec, gog, fam, base, &l));
        }
    }
    for e in gog.oriented_edges() {
        let l = Letter::Stable { e, exp: 1 };
        values.insert(l, connecting_on_letter(spec, gog, fam, base, &l));
    }
    let space = CocycleSpace::new(gog, spec);
    let coords = space.coordinates(|l| values[l].clone());
    Ok(Cocycle { values, coords })
}

pub fn connecting(gog: &GraphOfGroups, spec: &ModuleSpec, fam: &BTreeMap<usize, Vec<Q>>) -> Result<Cocycle> {
    connecting_from(gog, spec, fam, gog.base)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub dim_fixed: usize,
    pub dim_vertex_fixed: usize,
    pub dim_edge_fixed: usize,
    pub rank_delta: usize,
    pub rank_iota: usize,
    pub rank_partial: usize,
    pub dim_h1: usize,
    pub dim_restriction_kernel: usize,
    pub vertex_h1: Vec<usize>,
    /// `Δ` is injective on `M^G`.
    pub delta_injective: bool,
    /// `ker ι = im Δ`.
    pub exact_at_vertices: bool,
    /// `ker ∂ = im ι`.
    pub exact_at_edges: bool,
    /// `im ∂ = ker(H¹(G) → ∏ H¹(G_v))`.
    pub exact_at_h1: bool,
    /// `dim H¹ = dim coker ι`, checked only when every `H¹(G_v, M)` vanishes.
    pub h1_equals_cokernel: Option<bool>,
}

impl ExactnessReport {
    pub fn all_pass(&self) -> bool {
        self.delta_injective && self.exact_at_vertices && self.exact_at_edges && self.exact_at_h1 && self.h1_equals_cokernel != Some(false)
    }
}

pub fn check_exactness(gog: &GraphOfGroups, spec: &ModuleSpec) -> Result<ExactnessReport> {
    let n = spec.dim;
    let fixed = fixed_space(gog, spec, Selector::All)?;
    let iota = iota_matrix(gog, spec)?;
    let space = CocycleSpace::new(gog, spec);
    let h = h1_of(&space, spec);

    // Δ: M^G → ⊕ M^{G_v}, m ↦ (m, ..., m).
    let mut delta_cols = Vec::new();
    for m in &fixed.vectors {
        let mut col = Vec::new();
        for b in &iota.vertex_bases {
            col.extend(b.coordinates(m).expect("G-fixed vectors are G_v-fixed"));
        }
        delta_cols.push(col);
    }
    let dom = iota.domain_dim();
    let rank_delta = Span::from_vectors(dom, delta_cols.iter().cloned()).dim();
    let iota_kills_delta = delta_cols.iter().all(|c| is_zero_vec(&iota.matrix.mul_vec(c)));
    let rank_iota = iota.rank();
    let exact_at_vertices = iota_kills_delta && dom - rank_iota == rank_delta;

    // ∂ on a basis of ⊕ M^{G_e}, as classes modulo B¹.
    let b_span = Span::from_vectors(space.unknowns(), h.b_basis.iter().cloned());
    let mut image = b_span.clone();
    let codim = iota.codomain_dim();
    for i in 0..codim {
        let mut c = vec![Q::zero(); codim];
        c[i] = q(1);
        let fam = iota.edge_family(&c, n);
        image.insert(connecting(gog, spec, &fam)?.coords);
    }
    let rank_partial = image.dim() - b_span.dim();
    let mut iota_in_kernel = true;
    for col in iota.matrix.columns() {
        let fam = iota.edge_family(&col, n);
        if !b_span.contains(&connecting(gog, spec, &fam)?.coords) {
            iota_in_kernel = false;
        }
    }
    let exact_at_edges = iota_in_kernel && codim - rank_partial == rank_iota;

    // Kernel of restriction to the vertex groups, inside H¹.
    let mut w_span = Span::new(space.unknowns());
    for v in 0..gog.graph.vertex_count() {
        for b in space.vertex_coboundaries(spec, v) {
            w_span.insert(b);
        }
    }
    for &off in space.edge_offset.values() {
        for i in 0..n {
            let mut x = vec![Q::zero(); space.unknowns()];
            x[off + i] = q(1);
            w_span.insert(x);
        }
    }
    let mut sum = w_span.clone();
    for z in &h.z_basis {
        sum.insert(z.clone());
    }
    let inter = h.dim_z + w_span.dim() - sum.dim();
    let dim_restriction_kernel = inter - h.dim_b;
    let exact_at_h1 = rank_partial == dim_restriction_kernel;

    let vertex_h1: Vec<usize> = (0..gog.graph.vertex_count()).map(|v| vertex_h1(gog, spec, v).dim_h).collect();
    let h1_equals_cokernel = vertex_h1.iter().all(|&d| d == 0).then_some(h.dim_h == iota.cokernel_dim());
    Ok(ExactnessReport {
        dim_fixed: fixed.dim(),
        dim_vertex_fixed: dom,
        dim_edge_fixed: codim,
        rank_delta,
        rank_iota,
        rank_partial,
        dim_h1: h.dim_h,
        dim_restriction_kernel,
        vertex_h1,
        delta_injective: rank_delta == fixed.dim(),
        exact_at_vertices,
        exact_at_edges,
        exact_at_h1,
        h1_equals_cokernel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectVerdict {
    /// Dimension of `M^Γ`.
    pub dim_fixed: usize,
    /// Matrix of `ρ(t)` on `M^Γ` in the fixed-space basis.
    pub restricted: Matrix,
    pub one_is_eigenvalue: bool,
    pub predicted_vanishing: bool,
    pub h1_dim: usize,
    pub agrees: bool,
}

/// For a single loop with both edge maps bijective (`π1 = Γ ⋊ Z`):
/// `H¹ = 0` exactly when 1 is not an eigenvalue of `ρ(t)` on `M^Γ`.
pub fn semidirect_criterion(gog: &GraphOfGroups, spec: &ModuleSpec) -> Result<SemidirectVerdict> {
    let g = &gog.graph;
    let not = |why: &str| Error::NotASemidirectInstance(why.to_string());
    if g.vertex_count() != 1 || g.edge_count() != 2 {
        return Err(not("expected one vertex and one loop"));
    }
    let e = gog.oriented_edges()[0];
    for f in [e, g.bar(e)] {
        if !gog.sigma_hom(f).is_some_and(|h| h.injective && h.is_surjective()) {
            return Err(not("edge maps must be bijective"));
        }
    }
    let fixed = fixed_space(gog, spec, Selector::Vertex(0))?;
    let t = spec.rho_stable(e, 1);
    let cols: Vec<Vec<Q>> = fixed
        .vectors
        .iter()
        .map(|x| fixed.coordinates(&t.mul_vec(x)).ok_or_else(|| Error::InvalidModule("ρ(t) does not preserve M^Γ".into())))
        .collect::<Result<_>>()?;
    let k = fixed.dim();
    let restricted = if k == 0 { Matrix::zeros(0, 0) } else { Matrix::from_columns(&cols, k) };
    let one_is_eigenvalue = k > 0 && restricted.sub(&Matrix::identity(k)).determinant().is_zero();
    let h1_dim = h1(gog, spec).dim_h;
    let predicted_vanishing = !one_is_eigenvalue;
    Ok(SemidirectVerdict {
        dim_fixed: k,
        restricted,
        one_is_eigenvalue,
        predicted_vanishing,
        h1_dim,
        agrees: predicted_vanishing == (h1_dim == 0),
    })
}

/// The permutation matrix of `p`, sending basis vector `i` to `p(i)`.
pub fn permutation_matrix(p: &Perm) -> Matrix {
    let n = p.degree();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(p.0[i] as usize, i)] = q(1);
    }
    m
}

/// Affine action `α(g)v = ρ(g)v + c(g)` of a finite group.
#[derive(Clone, Debug)]
pub struct AffineAction {
    pub group: Arc<FiniteGroup>,
    pub rho: Vec<Matrix>,
    pub cocycle: Vec<Vec<Q>>,
}

impl AffineAction {
    /// Checks that `ρ` is a homomorphism and `c(gh) = c(g) + ρ(g)c(h)`.
    pub fn new(group: Arc<FiniteGroup>, rho: Vec<Matrix>, cocycle: Vec<Vec<Q>>) -> Result<Self> {
        let bad = |m: &str| Error::InvalidModule(m.to_string());
        if rho.len() != group.order() || cocycle.len() != group.order() {
            return Err(bad("one matrix and one vector per element required"));
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                if rho[a].mul(&rho[b]) != rho[ab] {
                    return Err(bad("matrices do not form a representation"));
                }
                if vec_add(&cocycle[a], &rho[a].mul_vec(&cocycle[b])) != cocycle[ab] {
                    return Err(bad("vectors do not form a cocycle"));
                }
            }
        }
        Ok(AffineAction { group, rho, cocycle })
    }

    pub fn apply(&self, g: usize, v: &[Q]) -> Vec<Q> {
        vec_add(&self.rho[g].mul_vec(v), &self.cocycle[g])
    }

    pub fn is_fixed_by(&self, gens: &[usize], v: &[Q]) -> bool {
        gens.iter().all(|&g| self.apply(g, v) == v)
    }
}

/// `(1/N) Σ α(g_i) v` over left coset representatives `g_i` of the subgroup
/// generated by `subgroup_gens`. If `v` is fixed by the subgroup, the result
/// is fixed by the whole group.
pub fn average_transfer(action: &AffineAction, subgroup_gens: &[usize], coset_reps: &[usize], v: &[Q]) -> Result<Vec<Q>> {
    let g = &action.group;
    let h = g.generated(subgroup_gens);
    let mut seen = vec![false; g.order()];
    for &r in coset_reps {
        if r >= g.order() {
            return Err(Error::NotATransversal(format!("element {r} out of range")));
        }
        for &x in &h {
            let y = g.mul(r, x);
            if seen[y] {
                return Err(Error::NotATransversal("two representatives share a coset".into()));
            }
            seen[y] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotATransversal("representatives miss a coset".into()));
    }
    let mut acc = vec![Q::zero(); v.len()];
    for &r in coset_reps {
        acc = vec_add(&acc, &action.apply(r, v));
    }
    Ok(vec_scale(&acc, &Q::new(1.into(), (coset_reps.len() as i64).into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::GroupRef;
    use crate::graph::Graph;
    use crate::rational::frac;

    fn loop_gog() -> GraphOfGroups {
        let graph = Graph::new(&["v"], &[("t", "v", "v", "t~"), ("t~", "v", "v", "t")]).unwrap();
        let one = GroupRef::enumerated("1", FiniteGroup::trivial());
        GraphOfGroups::new(graph, vec![one.clone()], vec![one.clone(), one], vec![EdgeMap::Table(vec![0]); 2], None, None, None).unwrap()
    }

    fn stable(gog: &GraphOfGroups, m: Matrix) -> ModuleSpec {
        ModuleSpec::new(gog, m.rows(), false, &[(Letter::Stable { e: 0, exp: 1 }, m)]).unwrap()
    }

    #[test]
    fn semidirect_examples() {
        let g = loop_gog();
        let v = semidirect_criterion(&g, &stable(&g, Matrix::identity(1))).unwrap();
        assert!(v.one_is_eigenvalue && v.h1_dim == 1 && v.agrees);
        let v = semidirect_criterion(&g, &stable(&g, Matrix::identity(2).scale(&q(-1)))).unwrap();
        assert!(!v.one_is_eigenvalue && v.h1_dim == 0 && v.agrees);
        let v = semidirect_criterion(&g, &stable(&g, Matrix::from_i64(&[&[0, -1], &[1, -1]]))).unwrap();
        assert!(!v.one_is_eigenvalue && v.h1_dim == 0 && v.agrees);
    }

    #[test]
    fn trivial_module_on_loop() {
        let g = loop_gog();
        let spec = ModuleSpec::trivial(&g, 1).unwrap();
        assert!(validate_module(&g, &spec).is_valid());
        let h = h1(&g, &spec);
        assert_eq!((h.dim_z, h.dim_b, h.dim_h), (1, 0, 1));
        let rep = check_exactness(&g, &spec).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn averaging_fixes() {
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let rho: Vec<Matrix> = z2.elements().map(|x| permutation_matrix(z2.perm(x).unwrap())).collect();
        let zero = vec![vec![q(0), q(0)]; 2];
        let act = AffineAction::new(z2.clone(), rho, zero).unwrap();
        let out = average_transfer(&act, &[], &[0, 1], &[q(1), q(0)]).unwrap();
        assert_eq!(out, vec![frac(1, 2), frac(1, 2)]);
        assert!(act.is_fixed_by(&[1], &out));
        assert!(average_transfer(&act, &[], &[0], &[q(1), q(0)]).is_err());
    }
}
