//! Random instances and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use gogkit::cover::{CoverBall, CoverVertex};
use gogkit::fingrp::FiniteGroup;
use gogkit::fundgrp::{presentation, GroupWord, Letter, Pi1};
use gogkit::gog::{Cardinality, EdgeMap, GraphOfGroups, GroupRef, SymbolicGroup};
use gogkit::graph::Graph;
use gogkit::linalg::Matrix;
use gogkit::mvcoh::{validate_module, ModuleSpec};
use gogkit::rational::{frac, q, Q};
use num::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- words

/// Every letter a word may use: non-identity vertex elements and both powers
/// of every stable letter in the orientation.
pub fn alphabet(gog: &GraphOfGroups) -> Vec<Letter> {
    let mut out = Vec::new();
    for (v, g) in gog.vertex_groups.iter().enumerate() {
        let grp = g.as_enumerated().expect("enumerated");
        for x in grp.elements().filter(|&x| x != grp.identity()) {
            out.push(Letter::Vertex { v, g: x });
        }
    }
    for e in gog.oriented_edges() {
        out.push(Letter::Stable { e, exp: 1 });
        out.push(Letter::Stable { e, exp: -1 });
    }
    out
}

pub fn random_word(gog: &GraphOfGroups, rng: &mut impl Rng, max_len: usize) -> GroupWord {
    let letters = alphabet(gog);
    let n = rng.gen_range(0..=max_len);
    GroupWord((0..n).map(|_| *letters.choose(rng).unwrap()).collect())
}

fn invert(gog: &GraphOfGroups, w: &GroupWord) -> GroupWord {
    GroupWord(
        w.0.iter()
            .rev()
            .map(|l| match *l {
                Letter::Vertex { v, g } => {
                    Letter::Vertex { v, g: gog.vertex_groups[v].as_enumerated().unwrap().inv(g) }
                }
                Letter::Stable { e, exp } => Letter::Stable { e, exp: -exp },
            })
            .collect(),
    )
}

/// A product of conjugates of relators, possibly spelled with a free
/// cancellation inserted: trivial in the group by construction.
pub fn trivial_word(gog: &GraphOfGroups, rng: &mut impl Rng, max_len: usize) -> GroupWord {
    let rels: Vec<GroupWord> = presentation(gog).unwrap().relations.into_iter().filter_map(|r| r.word).collect();
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let u = random_word(gog, rng, max_len / 2);
        let mut r = rels.choose(rng).cloned().unwrap_or_default();
        if rng.gen_bool(0.5) {
            r = invert(gog, &r);
        }
        out.extend(u.0.iter().copied());
        out.extend(r.0);
        out.extend(invert(gog, &u).0);
    }
    let cut = rng.gen_range(0..=out.len());
    let c = random_word(gog, rng, 2);
    let mut w = out[..cut].to_vec();
    w.extend(c.0.iter().copied());
    w.extend(invert(gog, &c).0);
    w.extend_from_slice(&out[cut..]);
    GroupWord(w)
}

// ---------------------------------------------------------------- groups

fn vertex_pool() -> Vec<(String, FiniteGroup)> {
    let mut v: Vec<(String, FiniteGroup)> = (1..=6).map(|n| (format!("Z{n}"), FiniteGroup::cyclic(n))).collect();
    v.push(("S3".into(), FiniteGroup::symmetric(3)));
    v.push(("Z12".into(), FiniteGroup::cyclic(12)));
    v
}

fn order_of(g: &FiniteGroup, x: usize) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != g.identity() {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// Embedding of `Z/m` sending the generator to `x`, as an element table.
fn cyclic_embedding(c: &FiniteGroup, g: &FiniteGroup, x: usize) -> Vec<usize> {
    let mut table = vec![0; c.order()];
    let gen = c.generators().first().copied().unwrap_or(c.identity());
    for k in 0..c.order() as i64 {
        table[c.pow(gen, k)] = g.pow(x, k);
    }
    table
}

fn pick_of_order(g: &FiniteGroup, m: usize, rng: &mut impl Rng) -> usize {
    let xs: Vec<usize> = g.elements().filter(|&x| order_of(g, x) == m).collect();
    *xs.choose(rng).unwrap()
}

/// Sign of a permutation: a homomorphism to `±1` on any permutation group.
pub fn sign(g: &FiniteGroup, x: usize) -> i64 {
    let p = &g.perm(x).expect("permutation group").0;
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j] as usize;
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// A random connected graph of finite groups: a tree on up to `max_vertices`
/// vertices plus up to two extra edges (loops allowed), cyclic edge groups.
pub fn random_finite_gog(rng: &mut impl Rng, max_vertices: usize) -> GraphOfGroups {
    let pool = vertex_pool();
    let n = rng.gen_range(1..=max_vertices);
    let groups: Vec<(String, FiniteGroup)> = (0..n).map(|_| pool.choose(rng).unwrap().clone()).collect();
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    for _ in 0..rng.gen_range(0..=2) {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    build_finite(groups, &pairs, rng)
}

fn build_finite(groups: Vec<(String, FiniteGroup)>, pairs: &[(usize, usize)], rng: &mut impl Rng) -> GraphOfGroups {
    let names: Vec<String> = (0..groups.len()).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut egroups = Vec::new();
    let mut maps = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        let (ga, gb) = (&groups[a].1, &groups[b].1);
        let orders_a: Vec<usize> = ga.elements().map(|x| order_of(ga, x)).collect();
        let common: Vec<usize> = gb.elements().map(|x| order_of(gb, x)).filter(|m| orders_a.contains(m)).collect();
        let m = *common.choose(rng).unwrap();
        let c = FiniteGroup::cyclic(m);
        let into_b = cyclic_embedding(&c, gb, pick_of_order(gb, m, rng));
        let into_a = cyclic_embedding(&c, ga, pick_of_order(ga, m, rng));
        let (id, bar) = (format!("e{i}"), format!("e{i}~"));
        edges.push((id.clone(), names[a].clone(), names[b].clone(), bar.clone()));
        edges.push((bar, names[b].clone(), names[a].clone(), id));
        let r = GroupRef::enumerated(&format!("Z{m}"), c);
        egroups.push(r.clone());
        egroups.push(r);
        maps.push(EdgeMap::Table(into_b));
        maps.push(EdgeMap::Table(into_a));
    }
    let graph = Graph::from_owned(names, edges).unwrap();
    let vgroups = groups.into_iter().map(|(n, g)| GroupRef::enumerated(&n, g)).collect();
    let gog = GraphOfGroups::new(graph, vgroups, egroups, maps, None, None, None).unwrap();
    assert!(gog.validate().is_valid(), "{:?}", gog.validate());
    gog
}

/// Shapes chosen to land in every vanishing case as well as the generic one.
pub fn random_classifiable(rng: &mut impl Rng) -> GraphOfGroups {
    let pool = vertex_pool();
    match rng.gen_range(0..6) {
        0 => build_finite(vec![pool.choose(rng).unwrap().clone()], &[], rng),
        1 => {
            // Loop whose edge group is the whole cyclic vertex group.
            let n = rng.gen_range(1..=6);
            let units: Vec<i64> = (1..=n as i64).filter(|k| gcd(*k, n as i64) == 1).collect();
            let k = *units.choose(rng).unwrap();
            let g = FiniteGroup::cyclic(n);
            let gen = g.generators().first().copied().unwrap_or(g.identity());
            let graph = Graph::new(&["v"], &[("t", "v", "v", "t~"), ("t~", "v", "v", "t")]).unwrap();
            let id: Vec<usize> = g.elements().collect();
            let auto = cyclic_embedding(&g, &g, g.pow(gen, k));
            let r = GroupRef::enumerated(&format!("Z{n}"), g);
            GraphOfGroups::new(graph, vec![r.clone()], vec![r.clone(), r], vec![EdgeMap::Table(id), EdgeMap::Table(auto)], None, None, None)
                .unwrap()
        }
        2 => {
            // Segment of index two on both sides.
            let m = rng.gen_range(1..=6);
            let big = || GroupRef::enumerated(&format!("Z{}", 2 * m), FiniteGroup::cyclic(2 * m));
            let c = FiniteGroup::cyclic(m);
            let embed = |g: &GroupRef| {
                let g = g.as_enumerated().unwrap();
                cyclic_embedding(&c, g, g.pow(g.generators()[0], 2))
            };
            let (ga, gb) = (big(), big());
            let graph = Graph::new(&["v0", "v1"], &[("e", "v0", "v1", "e~"), ("e~", "v1", "v0", "e")]).unwrap();
            let r = GroupRef::enumerated(&format!("Z{m}"), c.clone());
            GraphOfGroups::new(
                graph,
                vec![ga.clone(), gb.clone()],
                vec![r.clone(), r],
                vec![EdgeMap::Table(embed(&gb)), EdgeMap::Table(embed(&ga))],
                None,
                None,
                None,
            )
            .unwrap()
        }
        3 => random_symbolic(rng, true),
        4 => random_symbolic(rng, false),
        _ => random_finite_gog(rng, 4),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Infinite amenable vertex groups on a random connected graph; edge groups
/// all infinite, or all trivial.
pub fn random_symbolic(rng: &mut impl Rng, infinite_edges: bool) -> GraphOfGroups {
    let n = rng.gen_range(1..=3);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    if pairs.is_empty() || rng.gen_bool(0.5) {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let vg = GroupRef::symbolic(
        "A",
        SymbolicGroup { cardinality: Some(Cardinality::Infinite), beta1_zero: true, amenable: true, ..Default::default() },
    );
    let eg = if infinite_edges {
        GroupRef::symbolic("Z", SymbolicGroup { cardinality: Some(Cardinality::Infinite), amenable: true, ..Default::default() })
    } else {
        GroupRef::enumerated("1", FiniteGroup::trivial())
    };
    let mut edges = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        let (id, bar) = (format!("e{i}"), format!("e{i}~"));
        edges.push((id.clone(), names[a].clone(), names[b].clone(), bar.clone()));
        edges.push((bar, names[b].clone(), names[a].clone(), id));
    }
    let m = edges.len();
    let graph = Graph::from_owned(names, edges).unwrap();
    let maps = vec![EdgeMap::Asserted { index: Some(Cardinality::Infinite) }; m];
    GraphOfGroups::new(graph, vec![vg; n], vec![eg; m], maps, None, None, None).unwrap()
}

// ---------------------------------------------------------------- modules

fn diag(entries: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(entries.len(), entries.len());
    for (i, &x) in entries.iter().enumerate() {
        m[(i, i)] = q(x);
    }
    m
}

/// A sum of sign characters, with stable letters acting by signs and, where
/// two coordinates carry the same character, a rational rotation.
pub fn random_character_module(gog: &GraphOfGroups, rng: &mut impl Rng, dim: usize) -> ModuleSpec {
    let nv = gog.graph.vertex_count();
    for _ in 0..200 {
        // chi[i][v]: whether coordinate i sees the sign character at v.
        let chi: Vec<Vec<bool>> = (0..dim).map(|_| (0..nv).map(|_| rng.gen_bool(0.5)).collect()).collect();
        let mut assign = Vec::new();
        for v in 0..nv {
            let grp = gog.vertex_groups[v].as_enumerated().unwrap();
            for &x in grp.generators() {
                let s = sign(grp, x);
                let entries: Vec<i64> = (0..dim).map(|i| if chi[i][v] { s } else { 1 }).collect();
                assign.push((Letter::Vertex { v, g: x }, diag(&entries)));
            }
        }
        for e in gog.oriented_edges() {
            let mut m = diag(&(0..dim).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect::<Vec<_>>());
            if gog.tree.contains(e) {
                m = Matrix::identity(dim);
            } else if dim >= 2 && chi[0] == chi[1] && rng.gen_bool(0.5) {
                m = rotation(dim, 0, 1, 3, 4, 5);
            }
            assign.push((Letter::Stable { e, exp: 1 }, m));
        }
        let Ok(spec) = ModuleSpec::new(gog, dim, true, &assign) else { continue };
        if validate_module(gog, &spec).is_valid() {
            return spec;
        }
    }
    ModuleSpec::trivial(gog, dim).unwrap()
}

/// Identity except for the rotation by the Pythagorean triple `(a, b, c)` in
/// the plane `(i, j)`.
pub fn rotation(dim: usize, i: usize, j: usize, a: i64, b: i64, c: i64) -> Matrix {
    let mut m = Matrix::identity(dim);
    m[(i, i)] = frac(a, c);
    m[(i, j)] = frac(-b, c);
    m[(j, i)] = frac(b, c);
    m[(j, j)] = frac(a, c);
    m
}

/// A random rational orthogonal matrix: a signed permutation times a few
/// rational rotations.
pub fn random_orthogonal(dim: usize, rng: &mut impl Rng) -> Matrix {
    let triples = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)];
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(dim, dim);
    for (i, &p) in perm.iter().enumerate() {
        m[(i, p)] = q(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    if dim >= 2 {
        for _ in 0..rng.gen_range(0..=2) {
            let i = rng.gen_range(0..dim);
            let j = (i + rng.gen_range(1..dim)) % dim;
            let (a, b, c) = *triples.choose(rng).unwrap();
            m = m.mul(&rotation(dim, i, j, a, b, c));
        }
    }
    m
}

// ---------------------------------------------------------------- oracles

/// Dimension of the common fixed space of a family of matrices.
pub fn fixed_dim<'a>(dim: usize, ms: impl IntoIterator<Item = &'a Matrix>) -> usize {
    let mut stacked = Matrix::zeros(0, dim);
    for m in ms {
        stacked = stacked.vstack(&m.sub(&Matrix::identity(dim)));
    }
    dim - stacked.rank()
}

/// `(dim Z¹, dim B¹, dim H¹)` from the relators of the presentation: a map on
/// generators is a cocycle exactly when it kills every relator under the
/// rule `b(xy) = b(x) + x·b(y)`.
pub fn relator_h1(gog: &GraphOfGroups, spec: &ModuleSpec) -> (usize, usize, usize) {
    let d = spec.dim;
    let mut gens: Vec<Letter> = Vec::new();
    for (v, g) in gog.vertex_groups.iter().enumerate() {
        let grp = g.as_enumerated().unwrap();
        gens.extend(grp.elements().filter(|&x| x != grp.identity()).map(|x| Letter::Vertex { v, g: x }));
    }
    gens.extend(gog.oriented_edges().into_iter().map(|e| Letter::Stable { e, exp: 1 }));
    let col = |l: &Letter| gens.iter().position(|g| g == l).map(|p| p * d);
    let width = gens.len() * d;
    let rels = presentation(gog).unwrap().relations;
    let mut eqs = Matrix::zeros(0, width);
    for r in rels.into_iter().filter_map(|r| r.word) {
        let mut block = Matrix::zeros(d, width);
        let mut prefix = Matrix::identity(d);
        for l in &r.0 {
            // Contribution prefix · b(l), with b(t⁻¹) = −ρ(t⁻¹) b(t).
            let (target, coeff) = match *l {
                Letter::Stable { e, exp: -1 } => {
                    (Letter::Stable { e, exp: 1 }, prefix.mul(spec.rho_stable(e, -1)).scale(&q(-1)))
                }
                other => (other, prefix.clone()),
            };
            if let Some(c0) = col(&target) {
                for i in 0..d {
                    for j in 0..d {
                        block[(i, c0 + j)] += &coeff[(i, j)];
                    }
                }
            }
            prefix = prefix.mul(&letter_matrix(spec, l));
        }
        eqs = eqs.vstack(&block);
    }
    let dim_z = width - eqs.rank();
    let mut cob = Matrix::zeros(width, d);
    for (k, l) in gens.iter().enumerate() {
        let m = letter_matrix(spec, l).sub(&Matrix::identity(d));
        for i in 0..d {
            for j in 0..d {
                cob[(k * d + i, j)] = m[(i, j)].clone();
            }
        }
    }
    let dim_b = cob.rank();
    (dim_z, dim_b, dim_z - dim_b)
}

fn letter_matrix(spec: &ModuleSpec, l: &Letter) -> Matrix {
    match *l {
        Letter::Vertex { v, g } => spec.rho_vertex(v, g).clone(),
        Letter::Stable { e, exp } => spec.rho_stable(e, exp).clone(),
    }
}

/// `Σ_{e∈A} dim M^{G_e} − Σ_v dim M^{G_v} + dim M^G`, which is `dim coker ι`.
pub fn euler_cokernel(gog: &GraphOfGroups, spec: &ModuleSpec) -> i64 {
    let d = spec.dim;
    let g = &gog.graph;
    let mut total = 0i64;
    for e in gog.oriented_edges() {
        let h = gog.sigma_hom(e).unwrap();
        let ms: Vec<&Matrix> = h.map.iter().map(|&x| spec.rho_vertex(g.head(e), x)).collect();
        total += fixed_dim(d, ms) as i64;
    }
    let mut all: Vec<&Matrix> = Vec::new();
    for v in 0..g.vertex_count() {
        let ms: Vec<&Matrix> = spec.vertex[v].iter().collect();
        total -= fixed_dim(d, ms.iter().copied()) as i64;
        all.extend(ms);
    }
    all.extend(spec.stable.values());
    total + fixed_dim(d, all) as i64
}

/// `β¹ = max(0, −χ)` for a graph of finite groups, with
/// `χ = Σ_v 1/|G_v| − Σ_{e∈A} 1/|G_e|`.
pub fn euler_beta1(gog: &GraphOfGroups) -> Q {
    let inv = |g: &GroupRef| frac(1, g.as_enumerated().unwrap().order() as i64);
    let mut minus_chi = Q::zero();
    for e in gog.oriented_edges() {
        minus_chi += inv(&gog.edge_groups[e]);
    }
    for g in &gog.vertex_groups {
        minus_chi -= inv(g);
    }
    if minus_chi.is_negative() {
        Q::zero()
    } else {
        minus_chi
    }
}

/// Distances from the ball centre by breadth-first search over ball edges.
pub fn bfs_depths(ball: &CoverBall) -> BTreeMap<CoverVertex, usize> {
    let mut adj = vec![Vec::new(); ball.len()];
    for (a, b) in ball.tree_pairs() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let start = ball.index_of(ball.base()).unwrap();
    let mut dist = vec![usize::MAX; ball.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    ball.vertices().iter().cloned().zip(dist).collect()
}

/// `[G_v : G_e]` summed over the edges leaving `v`, from group orders alone.
pub fn expected_degree(gog: &GraphOfGroups, v: usize) -> usize {
    let order = |g: &GroupRef| g.as_enumerated().unwrap().order();
    gog.graph.out_edges(v).map(|e| order(&gog.vertex_groups[v]) / order(&gog.edge_groups[e])).sum()
}

/// `min_v d(w v, v)` over the vertices of a ball.
pub fn brute_translation_length(pi: &Pi1, ball: &CoverBall, w: &GroupWord) -> usize {
    let pf = pi.path_form(w).unwrap();
    ball.vertices()
        .iter()
        .map(|v| gogkit::cover::tree_distance(&gogkit::cover::act(pi, &pf, v), v))
        .min()
        .unwrap()
}
